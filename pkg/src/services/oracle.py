#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Oracles
Referências independentes: somas fracionárias por força bruta em escalas
discretas e fórmulas clássicas de Riemann–Liouville em ℝ.

Nada aqui reaproveita código de services.fractional ou services.specfun.
"""

import math
from typing import Sequence

from services.errors import DomainError, NotInScale, ValidationError


def brute_force_frac_integral(
    points: Sequence[float],
    values: Sequence[float],
    a: float,
    alpha: float,
    t: float,
) -> float:
    """Σ_{s ∈ [a, t)} (σ(s) − s)(t − s)^{α−1} h(s) / Γ(α) por laço direto"""
    points = [float(p) for p in points]
    values = [float(v) for v in values]
    if len(points) != len(values):
        raise ValidationError(f"{len(values)} valores para {len(points)} pontos")
    for left, right in zip(points, points[1:]):
        if not left < right:
            raise ValidationError("pontos precisam ser estritamente crescentes")
    if a not in points:
        raise NotInScale(f"a={a!r} não é ponto da escala")
    if t not in points:
        raise NotInScale(f"t={t!r} não é ponto da escala")

    total = 0.0
    for i in range(len(points) - 1):
        s = points[i]
        if s < a or s >= t:
            continue
        mu = points[i + 1] - s
        total += mu * (t - s) ** (alpha - 1.0) * values[i] / math.gamma(alpha)
    return total


def classical_rl_power(alpha: float, p: float, t: float, a: float = 0.0) -> float:
    """I^α[(s − a)^p](t) = Γ(p+1)/Γ(p+α+1) (t − a)^{p+α} em ℝ"""
    if p <= -1:
        raise DomainError(f"potência p={p} não integrável (p ≤ −1)")
    if t < a:
        raise DomainError(f"t={t} anterior a a={a}")
    if t == a:
        return 0.0
    return math.gamma(p + 1.0) / math.gamma(p + alpha + 1.0) * (t - a) ** (p + alpha)


def classical_rl_derivative_power(alpha: float, p: float, t: float, a: float = 0.0) -> float:
    """D^α[(s − a)^p](t) = Γ(p+1)/Γ(p−α+1) (t − a)^{p−α} em ℝ"""
    if p <= -1:
        raise DomainError(f"potência p={p} não integrável (p ≤ −1)")
    if t <= a:
        raise DomainError(f"derivada clássica avaliada em t={t} ≤ a={a}")
    shifted = p - alpha + 1.0
    if shifted <= 0 and shifted == math.floor(shifted):
        # 1/Γ no polo: a potência está no núcleo de D^α
        return 0.0
    return math.gamma(p + 1.0) / math.gamma(shifted) * (t - a) ** (p - alpha)
