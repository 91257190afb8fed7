#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Picard Solver
Iteração de ponto fixo para o PVI fracionário

    D^α y(t) = f(t, y(t)),  t ∈ J = [t0, t0 + a] ∩ T
    I^{1−α} y(t0) = 0

via o operador integral (T y)(t) = I^α[f(·, y(·))](t), com os diagnósticos
do teorema de Banach (L, M, ρ e a constante de contração).
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from config import settings
from services.calculus import Grid, GridFunction, build_grid, constant
from services.errors import (
    DomainError,
    InvalidGridFunction,
    InvalidProblem,
    NonConverged,
    ValidationError,
)
from services.expr import Expr, ensure_expr, evaluate, to_text
from services.fractional import frac_integral_grid
from services.specfun import gamma
from services.timescale import TimeScale, restrict

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 100
LIPSCHITZ_SAMPLES = 201

# folga de arredondamento nas comparações entre resíduos sucessivos
_ROUNDING_SLACK = 10.0 * np.finfo(float).eps


@dataclass(frozen=True)
class IVProblem:
    """PVI fracionário em J = [t0, t0 + horizon] ⊆ T"""

    scale: TimeScale
    t0: float
    horizon: float
    alpha: float
    rhs: Union[str, Expr]
    step: Optional[float] = None
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    threads: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rhs", ensure_expr(self.rhs))
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "horizon", float(self.horizon))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "step", float(self.step if self.step is not None else settings.default_step))

        if not (self.step > 0 and math.isfinite(self.step)):
            raise InvalidProblem(f"passo da grade deve ser positivo: {self.step}")
        if not (self.horizon > 0 and math.isfinite(self.horizon)):
            raise InvalidProblem(f"horizonte deve ser positivo: a={self.horizon}")
        for name, t in (("t0", self.t0), ("t0 + a", self.end)):
            if not self.scale.contains(t):
                raise InvalidProblem(f"{name}={t!r} não pertence à escala")
        if not 0 < self.alpha < 1:
            raise InvalidProblem(f"α precisa estar em (0, 1): α={self.alpha}")
        if not (self.tol > 0):
            raise InvalidProblem(f"tol deve ser positiva: {self.tol}")
        if int(self.max_iter) < 1:
            raise InvalidProblem(f"max_iter deve ser ≥ 1: {self.max_iter}")
        object.__setattr__(self, "max_iter", int(self.max_iter))

    @property
    def end(self) -> float:
        return self.t0 + self.horizon

    @cached_property
    def grid(self) -> Grid:
        return build_grid(restrict(self.scale, self.t0, self.end), self.step)


@dataclass
class SolverReport:
    iterations: int = 0
    converged: bool = False
    residual_trace: List[float] = field(default_factory=list)
    contraction_c: float = 0.0
    contraction_c_gamma_alpha: float = 0.0
    effective_contraction_c: float = 0.0
    lipschitz_L: float = 0.0
    bound_M: float = 0.0
    rho: float = 0.0
    kernel_mass: float = 0.0
    kernel_mass_bound: float = 0.0
    residual_certificate: Optional[float] = None
    certificate_bound: Optional[float] = None
    warnings: List[str] = field(default_factory=list)
    problem: Dict[str, Any] = field(default_factory=dict)

    def warn(self, flag: str, message: str) -> None:
        if flag not in self.warnings:
            self.warnings.append(flag)
            logger.warning(f"⚠️ {flag}: {message}")

    def to_dict(self) -> Dict[str, Any]:
        data = {"schema": 1}
        data.update(asdict(self))
        return data


# Constantes do teorema de Banach

def contraction_constant(L: float, a: float, alpha: float) -> float:
    """c = L a^α / Γ(α+1); contração sse c < 1"""
    _check_constants(L, a, alpha, "L")
    return L * a ** alpha / gamma(alpha + 1.0)


def contraction_constant_gamma_alpha(L: float, a: float, alpha: float) -> float:
    """Variante L a^α / Γ(α), registrada apenas para comparação de critérios"""
    _check_constants(L, a, alpha, "L")
    return L * a ** alpha / gamma(alpha)


def criteria_disagree(L: float, a: float, alpha: float) -> bool:
    """Verdadeiro quando c < 1 e L a^α/Γ(α) ≤ 1 discordam"""
    return (contraction_constant(L, a, alpha) < 1) != (contraction_constant_gamma_alpha(L, a, alpha) <= 1)


def apriori_bound(M: float, a: float, alpha: float) -> float:
    """ρ = M a^α / Γ(α+1), raio da bola invariante S(ρ)"""
    _check_constants(M, a, alpha, "M")
    return M * a ** alpha / gamma(alpha + 1.0)


def _check_constants(k: float, a: float, alpha: float, name: str) -> None:
    if not k >= 0:
        raise ValidationError(f"{name} deve ser ≥ 0: {k}")
    if not a > 0:
        raise ValidationError(f"horizonte deve ser positivo: a={a}")
    if not 0 < alpha < 1:
        raise ValidationError(f"α precisa estar em (0, 1): α={alpha}")


def _y_samples(y_range: Tuple[float, float], samples: int) -> np.ndarray:
    lo, hi = float(y_range[0]), float(y_range[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ValidationError(f"faixa de y inválida: {y_range}")
    if int(samples) < 2:
        raise ValidationError(f"são necessárias ao menos 2 amostras: {samples}")
    return np.linspace(lo, hi, int(samples))


def _t_samples(t_range: Tuple[float, float], samples: int, t_values: Optional[Sequence[float]]) -> np.ndarray:
    if t_values is not None:
        return np.asarray(t_values, dtype=float)
    lo, hi = float(t_range[0]), float(t_range[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ValidationError(f"faixa de t inválida: {t_range}")
    return np.linspace(lo, hi, int(samples)) if hi > lo else np.array([lo])


def _box_values(e: Expr, ts: np.ndarray, ys: np.ndarray) -> Tuple[np.ndarray, bool]:
    """f(t, y) na caixa ts × ys; colunas y onde f sai do domínio viram NaN

    O segundo valor indica se alguma coluna foi descartada.
    """
    try:
        values = np.asarray(evaluate(e, ts[:, None], ys[None, :]), dtype=float)
        return np.array(np.broadcast_to(values, (ts.size, ys.size))), False
    except DomainError:
        pass
    values = np.full((ts.size, ys.size), np.nan)
    for j, y in enumerate(ys):
        try:
            values[:, j] = np.broadcast_to(np.asarray(evaluate(e, ts, y), dtype=float), ts.shape)
        except DomainError:
            continue
    return values, True


def _lipschitz_from_box(values: np.ndarray, ys: np.ndarray) -> float:
    quotients = np.abs(np.diff(values, axis=1)) / np.diff(ys)[None, :]
    if not np.isfinite(quotients).any():
        raise DomainError("f(t, y) indefinida em toda a faixa de y amostrada")
    return float(np.nanmax(quotients))


def estimate_lipschitz(
    rhs: Union[str, Expr],
    t_range: Tuple[float, float],
    y_range: Tuple[float, float],
    samples: int = LIPSCHITZ_SAMPLES,
    t_values: Optional[Sequence[float]] = None,
) -> float:
    """Estimativa (por baixo) de L: maior quociente |f(t,y₁) − f(t,y₂)|/|y₁ − y₂|

    Usa pares de amostras vizinhas em y; por valor médio eles dominam os
    quocientes entre pares quaisquer da mesma malha. Valores de y fora do
    domínio de f são ignorados.
    """
    e = ensure_expr(rhs)
    ts = _t_samples(t_range, samples, t_values)
    ys = _y_samples(y_range, samples)
    values, _ = _box_values(e, ts, ys)
    return _lipschitz_from_box(values, ys)


def _sup_abs(e: Expr, ts: np.ndarray, ys: np.ndarray) -> Tuple[float, bool]:
    values, partial = _box_values(e, ts, ys)
    if np.isnan(values).all():
        return 0.0, True
    return float(np.nanmax(np.abs(values))), partial


# Operador de Picard

def picard_step(p: IVProblem, y: GridFunction) -> GridFunction:
    """(T y)(t) = I^α[f(·, y(·))](t) em todos os nós de J"""
    integrand = np.asarray(evaluate(p.rhs, y.nodes, y.values), dtype=float)
    integrand = np.broadcast_to(integrand, y.nodes.shape)
    return frac_integral_grid(GridFunction(y.grid, integrand), p.t0, p.alpha, threads=p.threads)


def residual(p: IVProblem, y: GridFunction) -> float:
    """sup |y − T(y)| nos nós: o certificado da solução"""
    return float(np.max(np.abs(y.values - picard_step(p, y).values)))


def _diagnostics(p: IVProblem, report: SolverReport) -> None:
    grid = p.grid
    ts = grid.nodes
    a, alpha = p.horizon, p.alpha

    m0, partial = _sup_abs(p.rhs, ts, np.array([0.0]))
    rho_guess = apriori_bound(m0, a, alpha)
    M = m0
    if rho_guess > 0:
        box = np.linspace(-2.0 * rho_guess, 2.0 * rho_guess, LIPSCHITZ_SAMPLES)
        M, masked = _sup_abs(p.rhs, ts, box)
        partial = partial or masked
    rho = apriori_bound(M, a, alpha)

    half_width = max(2.0 * rho, 1.0)
    ys = _y_samples((-half_width, half_width), LIPSCHITZ_SAMPLES)
    values, masked = _box_values(p.rhs, ts, ys)
    partial = partial or masked
    try:
        L = _lipschitz_from_box(values, ys)
    except DomainError:
        L = math.inf

    unit = frac_integral_grid(constant(grid, 1.0), p.t0, alpha, threads=p.threads)
    peak = float(np.max(unit.values))

    report.lipschitz_L = L
    report.bound_M = M
    report.rho = rho
    report.contraction_c = contraction_constant(L, a, alpha)
    report.contraction_c_gamma_alpha = contraction_constant_gamma_alpha(L, a, alpha)
    report.kernel_mass = gamma(alpha) * peak
    report.kernel_mass_bound = a ** alpha / alpha
    report.effective_contraction_c = L * peak

    if partial:
        report.warn("diagnostics_partial", "f(t, y) indefinida em parte da caixa; L, M e ρ usam só os pontos válidos")
    if report.contraction_c >= 1:
        report.warn("not_contraction", f"c = {report.contraction_c:.6g} ≥ 1, unicidade não garantida")
    if criteria_disagree(L, a, alpha):
        report.warn(
            "gamma_criterion_disagreement",
            f"L a^α/Γ(α+1) = {report.contraction_c:.6g} e L a^α/Γ(α) = {report.contraction_c_gamma_alpha:.6g} discordam",
        )


def picard_solve(p: IVProblem, y0: Optional[GridFunction] = None) -> Tuple[GridFunction, SolverReport]:
    """Itera y_{k+1} = T(y_k) a partir de y₀ ≡ 0 até sup|y_{k+1} − y_k| ≤ tol

    NonConverged (com o último iterado e o relatório) quando max_iter se esgota
    ou a iteração diverge.
    """
    report = SolverReport(problem={
        "rhs": to_text(p.rhs),
        "alpha": p.alpha,
        "t0": p.t0,
        "horizon": p.horizon,
        "step": p.step,
        "tol": p.tol,
        "max_iter": p.max_iter,
        "nodes": len(p.grid),
    })
    _diagnostics(p, report)
    logger.info(
        f"🚀 Picard: {len(p.grid)} nós, α={p.alpha}, L≈{report.lipschitz_L:.6g}, "
        f"c={report.contraction_c:.6g}, ρ={report.rho:.6g}"
    )

    y = y0 if y0 is not None else constant(p.grid, 0.0)
    if y.grid is not p.grid and len(y) != len(p.grid):
        raise InvalidProblem(f"iterado inicial com {len(y)} nós; a grade de J tem {len(p.grid)}")

    ball = report.rho + p.tol
    diverged = False
    for k in range(p.max_iter):
        try:
            y_next = picard_step(p, y)
        except (InvalidGridFunction, DomainError) as e:
            diverged = True
            report.warn("diverged", f"iterado {k + 1} indefinido ou não finito ({e.message})")
            break

        r = float(np.max(np.abs(y_next.values - y.values)))
        if report.residual_trace:
            previous = report.residual_trace[-1]
            if r > previous + _ROUNDING_SLACK * max(1.0, previous):
                report.warn("residual_increase", f"resíduo subiu de {previous:.3e} para {r:.3e}")
        report.residual_trace.append(r)
        report.iterations = k + 1
        if y_next.sup_norm() > ball and y0 is None:
            report.warn("invariant_ball_exceeded", f"‖y_{k + 1}‖ = {y_next.sup_norm():.6g} > ρ + tol = {ball:.6g}")
        y = y_next
        logger.debug(f"Iteração {k + 1}: resíduo {r:.3e}")
        if r <= p.tol:
            report.converged = True
            break

    if not report.converged and not diverged:
        report.warn("max_iter_exhausted", f"{p.max_iter} iterações sem atingir tol={p.tol}")

    if not diverged:
        try:
            report.residual_certificate = residual(p, y)
        except (InvalidGridFunction, DomainError) as e:
            report.warn("diverged", f"resíduo final não finito ({e.message})")
        c = report.contraction_c
        if c < 1:
            report.certificate_bound = p.tol * (1.0 + c) / (1.0 - c)

    if not report.converged:
        logger.error(f"❌ Picard não convergiu após {report.iterations} iterações")
        raise NonConverged(
            f"iteração de Picard não convergiu em {report.iterations} iterações",
            solution=y,
            report=report,
        )

    logger.info(f"✅ Picard convergiu em {report.iterations} iterações")
    return y, report


def uniqueness_probe(p: IVProblem) -> float:
    """sup |y_a − y_b| entre as soluções a partir de y₀ ≡ 0 e y₀ ≡ max(ρ, 1)"""
    from_zero, report = _solve_keeping_iterate(p, None)
    start = max(report.rho, 1.0)
    from_ball, _ = _solve_keeping_iterate(p, constant(p.grid, start))
    distance = float(np.max(np.abs(from_zero.values - from_ball.values)))
    logger.info(f"🔍 Unicidade: distância {distance:.3e} entre partidas 0 e {start:.6g}")
    return distance


def _solve_keeping_iterate(p: IVProblem, y0: Optional[GridFunction]) -> Tuple[GridFunction, SolverReport]:
    try:
        return picard_solve(p, y0)
    except NonConverged as e:
        return e.solution, e.report
