#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Comandos de Operadores
gamma, fracint e fracder: tabelas CSV (t,value) no stdout
"""

import logging
from typing import Optional

import click

from config import settings
from services.calculus import build_grid, sample
from services.errors import ValidationError
from services.fractional import (
    as_order,
    frac_derivative,
    frac_derivative_grid,
    frac_integral,
    frac_integral_grid,
)
from services.run_archive import save_stage
from services.specfun import beta, gamma
from services.timescale import load_scale
from utils.output_utils import emit, table_csv

logger = logging.getLogger(__name__)


def parse_time(raw: str, flag: str = "--t") -> float:
    try:
        return float(raw)
    except ValueError:
        raise ValidationError(f"{flag} deve ser um número ou 'all': {raw!r}")


def operator_options(command):
    """Flags comuns a fracint e fracder"""
    options = [
        click.argument("scale_source", metavar="SCALE"),
        click.option("--fn", required=True, help="Função h(t), ex.: 't^2 + 1'"),
        click.option("--alpha", type=float, required=True, help="Ordem α"),
        click.option("--a", "lower", type=float, default=None, help="Limite inferior (padrão: min T)"),
        click.option("--t", "at", default="all", show_default=True, help="Nó de avaliação ou 'all'"),
        click.option("--step", type=float, default=None, help="Passo da grade nos intervalos"),
        click.option("--threads", type=click.IntRange(min=1), default=None),
        click.option("--off-singular", is_flag=True, help="Amostra nós singulares no meio da célula vizinha"),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _run_operator(
    name: str,
    scale_source: str,
    fn: str,
    alpha: float,
    lower: Optional[float],
    at: str,
    step: Optional[float],
    threads: Optional[int],
    off_singular: bool,
) -> None:
    order = as_order(alpha)
    t = None if at.strip().lower() == "all" else parse_time(at)
    scale = load_scale(scale_source)
    step = step if step is not None else settings.default_step
    a = scale.min if lower is None else lower

    h = sample(build_grid(scale, step), fn, off_singular=off_singular)
    if name == "fracint":
        pointwise, sweep = frac_integral, frac_integral_grid
    else:
        pointwise, sweep = frac_derivative, frac_derivative_grid

    if t is None:
        result = sweep(h, a, order, threads=threads)
        ts, values = result.nodes, result.values
    else:
        ts, values = [t], [pointwise(h, a, order, t)]

    logger.info(f"📊 {name}: {len(ts)} linhas, α={order.alpha}, a={a}")
    emit(table_csv({"t": ts, "value": values}))
    save_stage(name, {
        "scale": scale_source,
        "fn": fn,
        "alpha": order.alpha,
        "a": a,
        "t": at,
        "step": step,
        "rows": len(ts),
    })


@click.command("fracint")
@operator_options
def fracint_command(scale_source, fn, alpha, lower, at, step, threads, off_singular):
    """Integral fracionária I^α h em SCALE (arquivo JSON ou JSON inline)"""
    _run_operator("fracint", scale_source, fn, alpha, lower, at, step, threads, off_singular)


@click.command("fracder")
@operator_options
def fracder_command(scale_source, fn, alpha, lower, at, step, threads, off_singular):
    """Derivada fracionária D^α h = Δ ∘ I^{1−α} h em T^κ"""
    _run_operator("fracder", scale_source, fn, alpha, lower, at, step, threads, off_singular)


@click.command("gamma")
@click.argument("x", type=float)
@click.option("--beta", "y", type=float, default=None, help="Calcula B(x, y) em vez de Γ(x)")
def gamma_command(x, y):
    """Γ(x), ou B(x, y) com --beta"""
    value = gamma(x) if y is None else beta(x, y)
    click.echo(f"{value:.15g}")
