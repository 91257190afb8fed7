#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Fractional Operators
Integral e derivada fracionárias de Riemann–Liouville em escalas de tempo,
convenções de ordem e verificadores das identidades dos operadores
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from config import settings
from services.calculus import (
    GridFunction,
    _check_limits,
    build_grid,
    delta_derivative,
    delta_derivative_grid,
    sample,
)
from services.errors import InvalidOrder, UseIntegerCalculus
from services.expr import Expr
from services.specfun import gamma
from services.timescale import TimeScale, restrict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FracOrder:
    """Ordem α admissível: (−1, 0) ∪ (0, ∞) \\ ℕ"""

    alpha: float

    def __post_init__(self):
        alpha = float(self.alpha)
        if not math.isfinite(alpha):
            raise InvalidOrder(f"ordem não finita: {alpha}")
        if alpha == 0:
            raise InvalidOrder("ordem α = 0 não é admitida")
        if alpha <= -1:
            raise InvalidOrder(f"ordens negativas precisam estar em (−1, 0): α={alpha}")
        if alpha > 0 and alpha == math.floor(alpha):
            raise UseIntegerCalculus(f"ordem inteira α={alpha}: use a derivada/integral delta")
        object.__setattr__(self, "alpha", alpha)

    @property
    def is_negative(self) -> bool:
        return self.alpha < 0

    @property
    def integer_part(self) -> int:
        return int(math.floor(self.alpha)) if self.alpha > 0 else 0

    @property
    def fraction(self) -> float:
        """β ∈ (0, 1) com α = ⌊α⌋ + β"""
        return self.alpha - self.integer_part


OrderLike = Union[float, FracOrder]


def as_order(alpha: OrderLike) -> FracOrder:
    return alpha if isinstance(alpha, FracOrder) else FracOrder(alpha)


def _unit_order(alpha: OrderLike, what: str) -> float:
    order = as_order(alpha)
    if not 0 < order.alpha < 1:
        raise InvalidOrder(f"{what} exige ordem em (0, 1): α={order.alpha}")
    return order.alpha


# Núcleo (t − s)^{ν−1}/Γ(ν)

def _kernel_integral_at(h: GridFunction, ia: int, it: int, nu: float) -> float:
    """(1/Γ(ν)) ∫_{x[ia]}^{x[it]} (t − s)^{ν−1} h(s) Δs para qualquer ν > 0

    Nós espalhados à direita contribuem μ(s)(t − s)^{ν−1}h(s) exatamente; células
    contínuas usam integração-produto contra o interpolante linear de h.
    """
    if it <= ia:
        return 0.0
    grid = h.grid
    x = grid.nodes[ia:it + 1]
    v = h.values[ia:it + 1]
    mu = grid.mu[ia:it]
    t = x[-1]
    far = t - x[:-1]
    near = t - x[1:]
    width = x[1:] - x[:-1]

    jump = mu > 0
    total = 0.0
    if jump.any():
        total += float(np.sum(mu[jump] * far[jump] ** (nu - 1.0) * v[:-1][jump])) / gamma(nu)

    cell = ~jump
    if cell.any():
        A, B, d = far[cell], near[cell], width[cell]
        w_left = B ** (1.0 + nu) + A ** nu * (nu * d - B)
        w_right = A ** (1.0 + nu) - B ** nu * (nu * d + A)
        total += float(np.sum((w_left * v[:-1][cell] + w_right * v[1:][cell]) / d)) / gamma(nu + 2.0)
    return total


def _kernel_sweep(h: GridFunction, a: float, nu: float, threads: Optional[int] = None) -> GridFunction:
    ia = h.grid.index_of(a)
    sub = h.grid.restrict(h.grid.nodes[ia], h.grid.nodes[-1])
    count = len(sub)
    workers = max(1, int(threads if threads is not None else settings.threads))

    def _at(k: int) -> float:
        return _kernel_integral_at(h, ia, ia + k, nu)

    if workers > 1 and count > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            values = list(executor.map(_at, range(count)))
    else:
        values = [_at(k) for k in range(count)]
    return GridFunction(sub, np.array(values))


# Operadores

def frac_integral(h: GridFunction, a: float, alpha: OrderLike, t: float) -> float:
    """I^α h(t) = (1/Γ(α)) ∫_a^t (t − s)^{α−1} h(s) Δs

    Ordens em (−1, 0) são a derivada de ordem −α.
    """
    order = as_order(alpha)
    if order.is_negative:
        return frac_derivative(h, a, -order.alpha, t)
    ia, it = _check_limits(h.grid, a, t)
    return _kernel_integral_at(h, ia, it, order.alpha)


def frac_integral_grid(
    h: GridFunction, a: float, alpha: OrderLike, threads: Optional[int] = None
) -> GridFunction:
    """I^α h em todos os nós ≥ a"""
    order = as_order(alpha)
    if order.is_negative:
        return frac_derivative_grid(h, a, -order.alpha, threads=threads)
    return _kernel_sweep(h, a, order.alpha, threads=threads)


def _differentiate_times(h: GridFunction, times: int) -> GridFunction:
    for _ in range(times):
        h = delta_derivative_grid(h)
    return h


def frac_derivative(h: GridFunction, a: float, alpha: OrderLike, t: float) -> float:
    """D^α h(t) = (Δ ∘ I^{1−α}) h(t); ordem negativa é a integral de ordem −α"""
    order = as_order(alpha)
    if order.is_negative:
        return frac_integral(h, a, -order.alpha, t)
    _check_limits(h.grid, a, t)
    if order.integer_part:
        h = _differentiate_times(h, order.integer_part)
    F = frac_integral_grid(h, a, 1.0 - order.fraction)
    return delta_derivative(F, t)


def frac_derivative_grid(
    h: GridFunction, a: float, alpha: OrderLike, threads: Optional[int] = None
) -> GridFunction:
    """D^α h em todos os nós de T^κ a partir de a"""
    order = as_order(alpha)
    if order.is_negative:
        return _kernel_sweep(h, a, -order.alpha, threads=threads)
    if order.integer_part:
        h = _differentiate_times(h, order.integer_part)
    F = frac_integral_grid(h, a, 1.0 - order.fraction, threads=threads)
    return delta_derivative_grid(F)


# Verificadores

def _interior_defect(result: GridFunction, reference: GridFunction, a: float) -> float:
    """sup |result − reference| nos nós interiores de [a, max]"""
    offset = reference.grid.index_of(a)
    last = len(reference.grid) - 1
    defect = 0.0
    for k in range(1, len(result.grid)):
        j = offset + k
        if j >= last:
            break
        defect = max(defect, abs(float(result.values[k]) - float(reference.values[j])))
    return defect


def verify_semigroup(h: GridFunction, a: float, alpha: OrderLike, beta: OrderLike) -> float:
    """sup_t |I^α(I^β h)(t) − I^{α+β} h(t)|"""
    a_order = _unit_order(alpha, "semigrupo")
    b_order = _unit_order(beta, "semigrupo")
    inner = frac_integral_grid(h, a, b_order)
    outer = frac_integral_grid(inner, a, a_order)
    direct = _kernel_sweep(h, a, a_order + b_order)
    defect = float(np.max(np.abs(outer.values - direct.values)))
    logger.info(f"🧪 Semigrupo α={a_order}, β={b_order}: defeito {defect:.3e}")
    return defect


def verify_left_inverse(h: GridFunction, a: float, alpha: OrderLike) -> float:
    """sup nos nós interiores de |D^α(I^α h) − h|"""
    order = _unit_order(alpha, "inversa à esquerda")
    inner = frac_integral_grid(h, a, order)
    outer = frac_derivative_grid(inner, a, order)
    defect = _interior_defect(outer, h, a)
    logger.info(f"🧪 Inversa à esquerda α={order}: defeito {defect:.3e}")
    return defect


def verify_right_inverse(f: GridFunction, a: float, alpha: OrderLike) -> float:
    """sup nos nós interiores de |I^α(D^α f) − f|"""
    order = _unit_order(alpha, "inversa à direita")
    inner = frac_derivative_grid(f, a, order)
    outer = frac_integral_grid(inner, a, order)
    defect = _interior_defect(outer, f, a)
    logger.info(f"🧪 Inversa à direita α={order}: defeito {defect:.3e}")
    return defect


def verify_corollary(h: GridFunction, a: float, alpha: OrderLike) -> Tuple[float, float]:
    """Defeitos de D^α ∘ D^{−α} e I^{−α} ∘ I^α, compostos pelas ordens negativas"""
    order = _unit_order(alpha, "corolário")
    d_of_dneg = frac_derivative_grid(frac_derivative_grid(h, a, -order), a, order)
    ineg_of_i = frac_integral_grid(frac_integral_grid(h, a, order), a, -order)
    return _interior_defect(d_of_dneg, h, a), _interior_defect(ineg_of_i, h, a)


@dataclass(frozen=True)
class RepresentabilityReport:
    c1_ok: bool
    vanishes_at_a: bool
    member: bool
    limit_at_a: float
    derivative_ratio: float


def _first_cell_value(scale: TimeScale, f: Union[str, Expr], a: float, nu: float, step: float) -> float:
    grid = build_grid(scale, step)
    ia = grid.index_of(a)
    local = grid.restrict(grid.nodes[ia], grid.nodes[min(ia + 1, len(grid) - 1)])
    g = sample(local, f, off_singular=True)
    return _kernel_integral_at(g, 0, len(local) - 1, nu)


def _right_limit(values: Tuple[float, float, float]) -> float:
    """Extrapola lim_{t→a+} a partir de três níveis de refinamento (lei de potência)"""
    v1, v2, v3 = values
    d1, d2 = v1 - v2, v2 - v3
    scale = max(1.0, abs(v1), abs(v2), abs(v3))
    if abs(d1) <= 1e-12 * scale:
        return v3
    q = d2 / d1
    if not 0 < q < 1:
        return v3
    return v3 - d2 * q / (1.0 - q)


def check_representable(
    scale: TimeScale,
    f: Union[str, Expr],
    a: float,
    b: float,
    alpha: OrderLike,
    step: float = 1e-2,
    refine: int = 10,
    tol: float = 1e-6,
) -> RepresentabilityReport:
    """Testa numericamente as condições de f ∈ I^α([a, b])

    c1_ok: max |Δ(I^{1−α} f)| estável entre os passos step e step/refine
    (razão em [0.5, 2]). vanishes_at_a: I^{1−α} f em a e seu limite à direita
    estimado por extrapolação ficam abaixo de tol.
    """
    order = _unit_order(alpha, "representabilidade")
    nu = 1.0 - order
    sub = restrict(scale, a, b)

    maxima = []
    value_at_a = 0.0
    for s in (step, step / refine):
        grid = build_grid(sub, s)
        g = frac_integral_grid(sample(grid, f, off_singular=True), a, nu)
        value_at_a = float(g.values[0])
        maxima.append(float(np.max(np.abs(delta_derivative_grid(g).values))))

    coarse, fine = maxima
    if coarse <= 1e-14 and fine <= 1e-14:
        ratio = 1.0
    elif coarse <= 1e-14:
        ratio = math.inf
    else:
        ratio = fine / coarse
    c1_ok = 0.5 <= ratio <= 2.0

    grid = build_grid(sub, step)
    if grid.mu[grid.index_of(a)] > 0:
        limit = value_at_a
    else:
        levels = tuple(_first_cell_value(sub, f, a, nu, step / refine ** k) for k in range(3))
        limit = _right_limit(levels)
    vanishes = abs(value_at_a) <= tol and abs(limit) <= tol

    logger.info(f"🔍 Representabilidade α={order}: C¹={c1_ok} (razão {ratio:.3g}), limite em a={limit:.3e}")
    return RepresentabilityReport(
        c1_ok=bool(c1_ok),
        vanishes_at_a=bool(vanishes),
        member=bool(c1_ok and vanishes),
        limit_at_a=float(limit),
        derivative_ratio=float(ratio),
    )
