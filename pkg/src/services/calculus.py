#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Delta Calculus
Grade computacional, funções amostradas, derivada delta, integral delta e a
comparação Δ-integral x integral de Riemann da extensão
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from services.errors import (
    BadRange,
    DomainError,
    InvalidGridFunction,
    NotIncreasing,
    NotInScale,
    OutsideKappa,
    ValidationError,
)
from services.expr import Expr, ensure_expr, evaluate
from services.timescale import Interval, TimeScale, kappa, restrict

logger = logging.getLogger(__name__)

# tolerância para casar um t informado com um nó da grade
_NODE_RTOL = 1e-12


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Grid:
    """Nós ordenados sobre uma escala; μ e segmento de cada nó vêm da escala exata"""

    scale: TimeScale
    nodes: np.ndarray
    step: float
    mu: np.ndarray
    segment: np.ndarray

    def __len__(self) -> int:
        return int(self.nodes.size)

    def index_of(self, t: float) -> int:
        """Índice do nó igual a t (com tolerância relativa de arredondamento)"""
        t = float(t)
        i = int(np.searchsorted(self.nodes, t))
        for j in (i - 1, i):
            if 0 <= j < self.nodes.size:
                if abs(self.nodes[j] - t) <= _NODE_RTOL * max(1.0, abs(t)):
                    return j
        if not self.scale.contains(t):
            raise NotInScale(f"t={t!r} não pertence à escala")
        raise NotInScale(f"t={t!r} pertence à escala mas não é nó da grade (passo {self.step})")

    def segment_bounds(self, i: int) -> Tuple[int, int]:
        """Primeiro e último índice dos nós do mesmo segmento que o nó i"""
        s = self.segment[i]
        first = int(np.searchsorted(self.segment, s, side="left"))
        last = int(np.searchsorted(self.segment, s, side="right")) - 1
        return first, last

    def restrict(self, lo: float, hi: float) -> "Grid":
        """Sub-grade sobre T ∩ [lo, hi] (lo e hi precisam ser nós)"""
        if float(lo) > float(hi):
            raise BadRange(f"restrição com lo={lo} > hi={hi}")
        ilo, ihi = self.index_of(lo), self.index_of(hi)
        nodes = self.nodes[ilo:ihi + 1]
        sub = restrict(self.scale, nodes[0], nodes[-1])
        return _annotate(sub, nodes, self.step)


def _annotate(scale: TimeScale, nodes: np.ndarray, step: float) -> Grid:
    nodes = _readonly(nodes)
    los = np.array([s.lo for s in scale.segments])
    his = np.array([s.hi for s in scale.segments])
    segment = np.searchsorted(los, nodes, side="right") - 1
    next_lo = np.append(los[1:], np.nan)
    at_end = nodes == his[segment]
    has_next = segment < len(scale.segments) - 1
    mu = np.where(at_end & has_next, next_lo[segment] - nodes, 0.0)
    segment = np.array(segment, dtype=int)
    segment.setflags(write=False)
    return Grid(scale=scale, nodes=nodes, step=float(step), mu=_readonly(mu), segment=segment)


def build_grid(scale: TimeScale, step: float) -> Grid:
    """Pontos isolados e extremos de intervalos são nós; espaçamento ≤ step nos intervalos"""
    step = float(step)
    if not (step > 0 and math.isfinite(step)):
        raise ValidationError(f"passo da grade deve ser positivo e finito: {step}")
    pieces = []
    for seg in scale.segments:
        if isinstance(seg, Interval):
            n = max(1, int(math.ceil((seg.hi - seg.lo) / step * (1.0 - 1e-12))))
            k = np.arange(n + 1, dtype=float)
            cell = seg.lo + (seg.hi - seg.lo) * k / n
            cell[-1] = seg.hi
            pieces.append(cell)
        else:
            pieces.append(np.array([seg.t]))
    grid = _annotate(scale, np.concatenate(pieces), step)
    logger.debug(f"Grade construída: {len(grid)} nós, passo {step}")
    return grid


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Valores finitos amostrados nos nós de uma grade"""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != self.grid.nodes.shape:
            raise InvalidGridFunction(
                f"{values.size} valores para {self.grid.nodes.size} nós"
            )
        if not np.all(np.isfinite(values)):
            bad = int(np.argmax(~np.isfinite(values)))
            raise InvalidGridFunction(f"valor não finito no nó t={self.grid.nodes[bad]!r}")
        object.__setattr__(self, "values", _readonly(values))

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes

    def at(self, t: float) -> float:
        return float(self.values[self.grid.index_of(t)])

    def restrict(self, lo: float, hi: float) -> "GridFunction":
        sub = self.grid.restrict(lo, hi)
        start = self.grid.index_of(lo)
        return GridFunction(sub, self.values[start:start + len(sub)])

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0


def constant(grid: Grid, value: float) -> GridFunction:
    return GridFunction(grid, np.full(len(grid), float(value)))


def sample(
    scale: Union[TimeScale, Grid],
    e: Union[str, Expr],
    step: Optional[float] = None,
    off_singular: bool = False,
) -> GridFunction:
    """Amostra a expressão e(t) nos nós da grade

    Com off_singular=True, um nó onde e não é finita é amostrado no ponto médio
    da célula vizinha dentro do mesmo intervalo.
    """
    grid = scale if isinstance(scale, Grid) else build_grid(scale, step)
    e = ensure_expr(e)
    try:
        return GridFunction(grid, evaluate(e, grid.nodes, 0.0))
    except DomainError:
        if not off_singular:
            raise

    values = np.empty(len(grid))
    for i, t in enumerate(grid.nodes):
        try:
            values[i] = evaluate(e, float(t), 0.0)
            continue
        except DomainError:
            first, last = grid.segment_bounds(i)
            if first == last:
                raise
        neighbour = i + 1 if i < last else i - 1
        shifted = 0.5 * (grid.nodes[i] + grid.nodes[neighbour])
        logger.warning(f"⚠️ Nó singular t={t!r} amostrado em t={shifted!r}")
        values[i] = evaluate(e, shifted, 0.0)
    return GridFunction(grid, values)


# Derivada delta

def _derivative_at(g: GridFunction, i: int) -> float:
    grid = g.grid
    x, v = grid.nodes, g.values
    if grid.mu[i] > 0:
        # nó espalhado à direita: σ(t) é o próximo nó
        return float((v[i + 1] - v[i]) / grid.mu[i])

    first, last = grid.segment_bounds(i)
    if first == last:
        raise OutsideKappa(f"t={x[i]!r} é máximo espalhado à esquerda (fora de T^κ)")
    if first < i < last:
        return float((v[i + 1] - v[i - 1]) / (x[i + 1] - x[i - 1]))
    if i == first:
        if last - first >= 2:
            h1, h2 = x[i + 1] - x[i], x[i + 2] - x[i + 1]
            return float(
                -(2 * h1 + h2) / (h1 * (h1 + h2)) * v[i]
                + (h1 + h2) / (h1 * h2) * v[i + 1]
                - h1 / (h2 * (h1 + h2)) * v[i + 2]
            )
        return float((v[i + 1] - v[i]) / (x[i + 1] - x[i]))
    # i == last com μ = 0: máximo denso à esquerda, derivada lateral esquerda
    if last - first >= 2:
        h1, h2 = x[i] - x[i - 1], x[i - 1] - x[i - 2]
        return float(
            (2 * h1 + h2) / (h1 * (h1 + h2)) * v[i]
            - (h1 + h2) / (h1 * h2) * v[i - 1]
            + h1 / (h2 * (h1 + h2)) * v[i - 2]
        )
    return float((v[i] - v[i - 1]) / (x[i] - x[i - 1]))


def delta_derivative(g: GridFunction, t: float) -> float:
    """f^Δ(t): quociente de salto exato em nós espalhados, diferenças finitas em nós densos"""
    i = g.grid.index_of(t)
    if g.grid.nodes[i] > kappa(g.grid.scale).max:
        raise OutsideKappa(f"t={float(t)!r} não pertence a T^κ")
    return _derivative_at(g, i)


def kappa_grid(grid: Grid) -> Grid:
    top = kappa(grid.scale).max
    if top < grid.nodes[-1]:
        return grid.restrict(grid.nodes[0], top)
    return grid


def delta_derivative_grid(g: GridFunction) -> GridFunction:
    """f^Δ em todos os nós de T^κ"""
    target = kappa_grid(g.grid)
    values = np.array([_derivative_at(g, i) for i in range(len(target))])
    return GridFunction(target, values)


# Integral delta

def _check_limits(grid: Grid, a: float, b: float) -> Tuple[int, int]:
    ia, ib = grid.index_of(a), grid.index_of(b)
    if float(a) > float(b):
        raise BadRange(f"limites invertidos: a={a} > b={b}")
    return ia, ib


def _cell_terms(g: GridFunction, ia: int, ib: int) -> np.ndarray:
    x = g.grid.nodes[ia:ib + 1]
    v = g.values[ia:ib + 1]
    mu = g.grid.mu[ia:ib]
    d = np.diff(x)
    trapezoid = 0.5 * d * (v[:-1] + v[1:])
    jump = mu * v[:-1]
    return np.where(mu > 0, jump, trapezoid)


def delta_integral(g: GridFunction, a: float, b: float) -> float:
    """∫_a^b g Δt: μ(t)g(t) nos nós espalhados à direita + trapézio nos intervalos"""
    ia, ib = _check_limits(g.grid, a, b)
    if ia == ib:
        return 0.0
    return float(np.sum(_cell_terms(g, ia, ib)))


def delta_integral_grid(g: GridFunction, a: float) -> GridFunction:
    """Primitiva delta acumulada a partir de a, em todos os nós ≥ a"""
    ia = g.grid.index_of(a)
    sub = g.grid.restrict(g.grid.nodes[ia], g.grid.nodes[-1])
    terms = _cell_terms(g, ia, len(g.grid) - 1)
    return GridFunction(sub, np.concatenate(([0.0], np.cumsum(terms))))


# Comparação com a integral de Riemann

def extension_integral(g: GridFunction, a: float, b: float) -> float:
    """Integral de Riemann em [a, b] ⊂ ℝ da extensão F (constante f(t) em (t, σ(t)))"""
    ia, ib = _check_limits(g.grid, a, b)
    x, v, mu = g.grid.nodes, g.values, g.grid.mu
    pieces = []
    for j in range(ia, ib):
        width = x[j + 1] - x[j]
        if mu[j] > 0:
            pieces.append(width * v[j])
        else:
            pieces.append(width * (v[j] + v[j + 1]) / 2.0)
    return math.fsum(pieces)


@dataclass(frozen=True)
class DeltaRiemannComparison:
    delta_value: float
    extension_value: float
    holds: bool


def compare_delta_riemann(
    g: GridFunction,
    a: float,
    b: float,
    atol: float = 1e-9,
    rtol: float = 1e-9,
) -> DeltaRiemannComparison:
    """Compara ∫_a^b g Δt com ∫_a^b F dt para g crescente"""
    ia, ib = _check_limits(g.grid, a, b)
    window = g.values[ia:ib + 1]
    drops = np.diff(window) < 0
    if drops.any():
        where = g.grid.nodes[ia + int(np.argmax(drops))]
        raise NotIncreasing(f"amostras decrescem após t={where!r}")

    delta_value = delta_integral(g, a, b)
    extension_value = extension_integral(g, a, b)
    holds = delta_value <= extension_value + atol + rtol * abs(extension_value)
    return DeltaRiemannComparison(delta_value, extension_value, bool(holds))
