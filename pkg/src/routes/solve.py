#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Comando solve
Resolve o PVI fracionário por Picard: trajetória CSV (t,y) e relatório JSON
"""

import logging

import click

from config import settings
from services.errors import InvalidOrder, NonConverged
from services.run_archive import save_stage
from services.solver import DEFAULT_MAX_ITER, DEFAULT_TOL, IVProblem, picard_solve, uniqueness_probe
from services.timescale import load_scale
from utils.output_utils import dump_json, emit, jsonable, table_csv

logger = logging.getLogger(__name__)


@click.command("solve")
@click.argument("scale_source", metavar="SCALE")
@click.option("--rhs", required=True, help="Lado direito f(t, y)")
@click.option("--alpha", type=float, required=True, help="Ordem α ∈ (0, 1)")
@click.option("--t0", type=float, default=None, help="Instante inicial (padrão: min T)")
@click.option("--horizon", type=float, default=None, help="a, com J = [t0, t0 + a] (padrão: até max T)")
@click.option("--step", type=float, default=None)
@click.option("--tol", type=float, default=None, help="Tolerância de parada (padrão: TSFRAC_TOL ou 1e-8)")
@click.option("--max-iter", type=click.IntRange(min=1), default=DEFAULT_MAX_ITER, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="CSV da trajetória")
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None, help="JSON do relatório")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--probe", is_flag=True, help="Inclui a distância entre partidas 0 e ρ no relatório")
@click.option("--threads", type=click.IntRange(min=1), default=None)
def solve_command(scale_source, rhs, alpha, t0, horizon, step, tol, max_iter, output, report_path, fmt, probe, threads):
    """Picard para D^α y = f(t, y), I^{1−α} y(t0) = 0 em SCALE"""
    if not 0 < alpha < 1:
        raise InvalidOrder(f"--alpha precisa estar em (0, 1): {alpha}")
    scale = load_scale(scale_source)
    t0 = scale.min if t0 is None else t0
    horizon = scale.max - t0 if horizon is None else horizon
    problem = IVProblem(
        scale=scale,
        t0=t0,
        horizon=horizon,
        alpha=alpha,
        rhs=rhs,
        step=step,
        tol=settings.resolve_tol(tol, DEFAULT_TOL),
        max_iter=max_iter,
        threads=threads,
    )

    failure = None
    try:
        y, report = picard_solve(problem)
    except NonConverged as e:
        y, report, failure = e.solution, e.report, e

    data = report.to_dict()
    if probe:
        data["uniqueness_distance"] = uniqueness_probe(problem)

    trajectory = table_csv({"t": y.nodes, "y": y.values})
    report_text = dump_json(data)
    if fmt == "csv":
        emit(trajectory, output)
        if report_path:
            emit(report_text, report_path)
    else:
        emit(report_text, report_path)
        if output:
            emit(trajectory, output)

    save_stage("solve", {"scale": scale_source, "report": jsonable(data)}, status="success" if failure is None else "non_converged")
    if failure is not None:
        raise failure
