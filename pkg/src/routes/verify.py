#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Comando verify
Suítes de verificação das identidades dos operadores, com tolerância por suíte
"""

import logging
from typing import Any, Callable, Dict

import click
import numpy as np

from config import settings
from services.calculus import GridFunction, build_grid, compare_delta_riemann, sample
from services.errors import InvalidOrder, ValidationError, VerificationFailed
from services.fractional import (
    as_order,
    check_representable,
    frac_integral_grid,
    verify_corollary,
    verify_left_inverse,
    verify_right_inverse,
    verify_semigroup,
)
from services.oracle import brute_force_frac_integral, classical_rl_power
from services.run_archive import save_stage
from services.timescale import Interval, TimeScale, load_scale, restrict
from utils.output_utils import dump_json, emit

logger = logging.getLogger(__name__)

SUITE_TOLERANCES = {
    "semigroup": 5e-3,
    "leftinv": 1e-2,
    "rightinv": 5e-3,
    "corollary": 1e-2,
    "prop1": 1e-9,
    "oracle": 1e-13,
    "classical": 1e-4,
}

# identidades provadas com argumentos de medida real; em escalas não contínuas
# o defeito é registrado como falha esperada
IDENTITY_SUITES = ("semigroup", "leftinv", "rightinv", "corollary")


class SuiteContext:
    def __init__(self, scale: TimeScale, fn: str, a: float, alpha: float, beta: float,
                 step: float, seed: int, power: float):
        self.scale = scale
        self.fn = fn
        self.a = a
        self.alpha = alpha
        self.beta = beta
        self.step = step
        self.seed = seed
        self.power = power

    def sampled(self, step: float) -> GridFunction:
        return sample(build_grid(self.scale, step), self.fn)


def _with_refinement(ctx: SuiteContext, compute: Callable[[float], float]) -> Dict[str, Any]:
    """Defeito no passo pedido e, em escalas contínuas, também no passo 2×"""
    fine = compute(ctx.step)
    result: Dict[str, Any] = {"defect": fine}
    if ctx.scale.is_continuous:
        coarse = compute(2.0 * ctx.step)
        result["defect_coarse"] = coarse
        result["shrinks"] = fine <= coarse
    return result


def _semigroup(ctx: SuiteContext) -> Dict[str, Any]:
    return _with_refinement(ctx, lambda s: verify_semigroup(ctx.sampled(s), ctx.a, ctx.alpha, ctx.beta))


def _left_inverse(ctx: SuiteContext) -> Dict[str, Any]:
    return _with_refinement(ctx, lambda s: verify_left_inverse(ctx.sampled(s), ctx.a, ctx.alpha))


def _right_inverse(ctx: SuiteContext) -> Dict[str, Any]:
    result = _with_refinement(ctx, lambda s: verify_right_inverse(ctx.sampled(s), ctx.a, ctx.alpha))
    representable = check_representable(ctx.scale, ctx.fn, ctx.a, ctx.scale.max, ctx.alpha)
    result["member"] = representable.member
    result["c1_ok"] = representable.c1_ok
    result["vanishes_at_a"] = representable.vanishes_at_a
    return result


def _corollary(ctx: SuiteContext) -> Dict[str, Any]:
    pairs = {}

    def compute(step: float) -> float:
        d_of_dneg, ineg_of_i = verify_corollary(ctx.sampled(step), ctx.a, ctx.alpha)
        pairs.setdefault("defect_d_dneg", d_of_dneg)
        pairs.setdefault("defect_ineg_i", ineg_of_i)
        return max(d_of_dneg, ineg_of_i)

    result = _with_refinement(ctx, compute)
    result.update(pairs)
    return result


def _prop1(ctx: SuiteContext) -> Dict[str, Any]:
    comparison = compare_delta_riemann(ctx.sampled(ctx.step), ctx.a, ctx.scale.max)
    result: Dict[str, Any] = {
        "defect": max(0.0, comparison.delta_value - comparison.extension_value),
        "delta_integral": comparison.delta_value,
        "extension_integral": comparison.extension_value,
        "holds": comparison.holds,
    }
    if len(ctx.scale.segments) == 1 and ctx.scale.is_continuous:
        gap = abs(comparison.delta_value - comparison.extension_value)
        result["equality"] = gap <= 1e-9 * (1.0 + abs(comparison.extension_value))
    return result


def _oracle(ctx: SuiteContext) -> Dict[str, Any]:
    if not ctx.scale.is_discrete:
        raise ValidationError("a suíte oracle exige escala puramente discreta")
    grid = build_grid(ctx.scale, ctx.step)
    rng = np.random.default_rng(ctx.seed)
    h = GridFunction(grid, rng.uniform(-1.0, 1.0, len(grid)))
    computed = frac_integral_grid(h, ctx.a, ctx.alpha)
    points = list(grid.nodes)
    values = list(h.values)
    defect = 0.0
    for t, value in zip(computed.nodes, computed.values):
        reference = brute_force_frac_integral(points, values, ctx.a, ctx.alpha, float(t))
        defect = max(defect, abs(float(value) - reference) / (1.0 + abs(reference)))
    return {"defect": defect, "seed": ctx.seed, "points": len(points)}


def _classical(ctx: SuiteContext) -> Dict[str, Any]:
    if len(ctx.scale.segments) != 1 or not isinstance(ctx.scale.segments[0], Interval):
        raise ValidationError("a suíte classical exige uma escala com um único intervalo")
    if ctx.power < 0:
        raise ValidationError(f"--power precisa ser ≥ 0: {ctx.power}")
    sub = restrict(ctx.scale, ctx.a, ctx.scale.max)

    def compute(step: float) -> float:
        grid = build_grid(sub, step)
        h = GridFunction(grid, (grid.nodes - ctx.a) ** ctx.power)
        computed = frac_integral_grid(h, ctx.a, ctx.alpha)
        reference = np.array([classical_rl_power(ctx.alpha, ctx.power, float(t), ctx.a) for t in computed.nodes])
        return float(np.max(np.abs(computed.values - reference)))

    result = _with_refinement(ctx, compute)
    result["power"] = ctx.power
    return result


SUITES: Dict[str, Callable[[SuiteContext], Dict[str, Any]]] = {
    "semigroup": _semigroup,
    "leftinv": _left_inverse,
    "rightinv": _right_inverse,
    "corollary": _corollary,
    "prop1": _prop1,
    "oracle": _oracle,
    "classical": _classical,
}


def suite_status(suite: str, scale: TimeScale, result: Dict[str, Any], tolerance: float) -> str:
    passed = result["defect"] <= tolerance
    if suite == "prop1":
        passed = passed and result["holds"] and result.get("equality", True)
    if passed:
        return "pass"
    if suite in IDENTITY_SUITES and not scale.is_continuous:
        return "expected-failure"
    if suite == "rightinv" and not result.get("member", True):
        return "expected-failure"
    return "fail"


@click.command("verify")
@click.argument("scale_source", metavar="SCALE")
@click.option("--suite", type=click.Choice(list(SUITES)), required=True)
@click.option("--alpha", type=float, default=0.5, show_default=True)
@click.option("--beta", type=float, default=0.5, show_default=True)
@click.option("--fn", default="t", show_default=True, help="Função de teste h(t)")
@click.option("--a", "lower", type=float, default=None, help="Limite inferior (padrão: min T)")
@click.option("--step", type=float, default=None)
@click.option("--tol", type=float, default=None, help="Substitui a tolerância da suíte")
@click.option("--seed", type=int, default=0, show_default=True, help="Semente da suíte oracle")
@click.option("--power", type=float, default=1.0, show_default=True, help="Expoente p da suíte classical")
def verify_command(scale_source, suite, alpha, beta, fn, lower, step, tol, seed, power):
    """Roda uma suíte de verificação e imprime o relatório JSON"""
    order = as_order(alpha)
    if suite == "semigroup":
        as_order(beta)
    if suite in ("oracle", "classical") and order.is_negative:
        raise InvalidOrder(f"a suíte {suite} exige α > 0: {alpha}")
    scale = load_scale(scale_source)
    step = step if step is not None else settings.default_step
    ctx = SuiteContext(
        scale=scale,
        fn=fn,
        a=scale.min if lower is None else lower,
        alpha=order.alpha,
        beta=beta,
        step=step,
        seed=seed,
        power=power,
    )
    tolerance = settings.resolve_tol(tol, SUITE_TOLERANCES[suite])

    logger.info(f"🧪 Suíte {suite} (tolerância {tolerance:g})")
    result = SUITES[suite](ctx)
    status = suite_status(suite, scale, result, tolerance)

    report: Dict[str, Any] = {
        "schema": 1,
        "suite": suite,
        "status": status,
        "tolerance": tolerance,
        "alpha": ctx.alpha,
    }
    if suite == "semigroup":
        report["beta"] = ctx.beta
    report.update({"fn": fn, "a": ctx.a, "step": step})
    report.update(result)
    emit(dump_json(report))
    save_stage("verify", report, status=status)

    if status == "fail":
        logger.warning(f"⚠️ Suíte {suite} falhou: defeito {result['defect']:.3e}")
        raise VerificationFailed(f"suíte {suite}: defeito {result['defect']:.6g} > tolerância {tolerance:.6g}")
    if status == "expected-failure":
        logger.warning(f"⚠️ Suíte {suite}: falha esperada nesta escala (defeito {result['defect']:.6g})")
