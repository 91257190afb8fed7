#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Time Scales
Escalas de tempo limitadas como uniões finitas de intervalos fechados e pontos
isolados, com operadores de salto, granularidade e classificação de pontos
"""

import bisect
import json
import logging
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Tuple, Union

from services.errors import EmptyScale, InvalidSegment, NotInScale, BadRange

logger = logging.getLogger(__name__)


def _check_finite(value: float, what: str) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidSegment(f"{what} não numérico: {value!r}")
    if not math.isfinite(value):
        raise InvalidSegment(f"{what} não finito: {value}")
    return value


@dataclass(frozen=True)
class Interval:
    """Intervalo fechado [lo, hi] com lo < hi"""

    lo: float
    hi: float

    def __post_init__(self):
        lo = _check_finite(self.lo, "extremo inferior")
        hi = _check_finite(self.hi, "extremo superior")
        if not lo < hi:
            raise InvalidSegment(f"intervalo degenerado ou invertido: [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)


@dataclass(frozen=True)
class Point:
    """Ponto isolado {t}"""

    t: float

    def __post_init__(self):
        object.__setattr__(self, "t", _check_finite(self.t, "ponto"))

    @property
    def lo(self) -> float:
        return self.t

    @property
    def hi(self) -> float:
        return self.t


Segment = Union[Interval, Point]


def make_segment(lo: float, hi: float) -> Segment:
    """Intervalo, ou Point quando lo == hi"""
    lo = _check_finite(lo, "extremo inferior")
    hi = _check_finite(hi, "extremo superior")
    if lo == hi:
        return Point(lo)
    return Interval(lo, hi)


class Side(str, Enum):
    SCATTERED = "scattered"
    DENSE = "dense"


@dataclass(frozen=True)
class PointClass:
    """Classificação de t: lados direito/esquerdo e se t é extremo da escala"""

    right: Side
    left: Side
    is_max: bool = False
    is_min: bool = False

    @property
    def right_scattered(self) -> bool:
        return self.right == Side.SCATTERED

    @property
    def left_scattered(self) -> bool:
        return self.left == Side.SCATTERED

    @property
    def isolated(self) -> bool:
        return self.right_scattered and self.left_scattered

    @property
    def right_dense(self) -> bool:
        return self.right == Side.DENSE and not self.is_max

    @property
    def left_dense(self) -> bool:
        return self.left == Side.DENSE and not self.is_min

    def labels(self) -> List[str]:
        out = []
        if self.isolated:
            out.append("isolated")
        if self.right_scattered:
            out.append("right-scattered")
        if self.left_scattered:
            out.append("left-scattered")
        if self.right_dense:
            out.append("right-dense")
        if self.left_dense:
            out.append("left-dense")
        return out


@dataclass(frozen=True)
class TimeScale:
    """Escala de tempo em forma canônica (use canonicalize para construir)"""

    segments: Tuple[Segment, ...]

    @property
    def min(self) -> float:
        return self.segments[0].lo

    @property
    def max(self) -> float:
        return self.segments[-1].hi

    @property
    def is_discrete(self) -> bool:
        return all(isinstance(s, Point) for s in self.segments)

    @property
    def is_continuous(self) -> bool:
        return all(isinstance(s, Interval) for s in self.segments)

    def locate(self, t: float) -> int:
        """Índice do segmento que contém t; NotInScale se t ∉ T"""
        t = float(t)
        los = [s.lo for s in self.segments]
        i = bisect.bisect_right(los, t) - 1
        if i >= 0 and self.segments[i].lo <= t <= self.segments[i].hi:
            return i
        raise NotInScale(f"t={t!r} não pertence à escala")

    def contains(self, t: float) -> bool:
        try:
            self.locate(t)
        except NotInScale:
            return False
        return True

    def __contains__(self, t: float) -> bool:
        return self.contains(t)


def canonicalize(raw: Iterable[Segment]) -> TimeScale:
    """Ordena e funde segmentos sobrepostos ou que se tocam"""
    pairs = []
    for seg in raw:
        if not isinstance(seg, (Interval, Point)):
            raise InvalidSegment(f"segmento inválido: {seg!r}")
        pairs.append((seg.lo, seg.hi))
    if not pairs:
        raise EmptyScale("a escala de tempo precisa de ao menos um segmento")

    pairs.sort()
    merged: List[List[float]] = [list(pairs[0])]
    for lo, hi in pairs[1:]:
        current = merged[-1]
        if lo <= current[1]:
            current[1] = max(current[1], hi)
        else:
            merged.append([lo, hi])

    return TimeScale(tuple(make_segment(lo, hi) for lo, hi in merged))


def sigma(T: TimeScale, t: float) -> float:
    """Operador de salto para frente: inf{s ∈ T : s > t}, σ(max) = max"""
    t = float(t)
    i = T.locate(t)
    seg = T.segments[i]
    if isinstance(seg, Interval) and t < seg.hi:
        return t
    if i == len(T.segments) - 1:
        return t
    return T.segments[i + 1].lo


def rho(T: TimeScale, t: float) -> float:
    """Operador de salto para trás: sup{s ∈ T : s < t}, ρ(min) = min"""
    t = float(t)
    i = T.locate(t)
    seg = T.segments[i]
    if isinstance(seg, Interval) and t > seg.lo:
        return t
    if i == 0:
        return t
    return T.segments[i - 1].hi


def graininess(T: TimeScale, t: float) -> float:
    """μ(t) = σ(t) − t"""
    return sigma(T, t) - float(t)


def classify(T: TimeScale, t: float) -> PointClass:
    t = float(t)
    right = Side.SCATTERED if sigma(T, t) > t else Side.DENSE
    left = Side.SCATTERED if rho(T, t) < t else Side.DENSE
    return PointClass(right=right, left=left, is_max=(t == T.max), is_min=(t == T.min))


def kappa(T: TimeScale) -> TimeScale:
    """T^κ: remove o máximo quando ele é espalhado à esquerda"""
    if rho(T, T.max) < T.max:
        return TimeScale(T.segments[:-1])
    return T


def restrict(T: TimeScale, lo: float, hi: float) -> TimeScale:
    """T ∩ [lo, hi] com lo, hi ∈ T"""
    lo, hi = float(lo), float(hi)
    T.locate(lo)
    T.locate(hi)
    if lo > hi:
        raise BadRange(f"restrição com lo={lo} > hi={hi}")
    pieces = []
    for seg in T.segments:
        if seg.hi < lo or seg.lo > hi:
            continue
        pieces.append(make_segment(max(seg.lo, lo), min(seg.hi, hi)))
    return TimeScale(tuple(pieces))


# Construtores de conveniência

def from_points(points: Sequence[float]) -> TimeScale:
    return canonicalize([Point(p) for p in points])


def interval(lo: float, hi: float) -> TimeScale:
    return canonicalize([Interval(lo, hi)])


def integer_range(lo: int, hi: int) -> TimeScale:
    """ℤ ∩ [lo, hi]"""
    return from_points(range(int(lo), int(hi) + 1))


def uniform_points(lo: float, hi: float, h: float) -> TimeScale:
    """{lo, lo+h, ..., hi} (escala do tipo hℤ)"""
    if h <= 0:
        raise InvalidSegment(f"passo h deve ser positivo: {h}")
    n = int(round((hi - lo) / h))
    return from_points([lo + k * h for k in range(n + 1)])


# JSON

def scale_from_dict(data: Dict[str, Any]) -> TimeScale:
    segments = data.get("segments") if isinstance(data, dict) else None
    if not isinstance(segments, list):
        raise InvalidSegment("especificação sem lista 'segments'")
    raw: List[Segment] = []
    for item in segments:
        kind = item.get("type") if isinstance(item, dict) else None
        if kind == "interval":
            if "lo" not in item or "hi" not in item:
                raise InvalidSegment(f"intervalo sem 'lo'/'hi': {item}")
            raw.append(make_segment(item["lo"], item["hi"]))
        elif kind == "point":
            if "t" not in item:
                raise InvalidSegment(f"ponto sem 't': {item}")
            raw.append(Point(item["t"]))
        else:
            raise InvalidSegment(f"tipo de segmento desconhecido: {item!r}")
    return canonicalize(raw)


def scale_to_dict(T: TimeScale) -> Dict[str, Any]:
    out = []
    for seg in T.segments:
        if isinstance(seg, Interval):
            out.append({"type": "interval", "lo": seg.lo, "hi": seg.hi})
        else:
            out.append({"type": "point", "t": seg.t})
    return {"segments": out}


def load_scale(source: Union[str, Path]) -> TimeScale:
    """Carrega a escala de um arquivo JSON ou de texto JSON inline"""
    text = str(source)
    if text.lstrip().startswith("{"):
        payload = text
    else:
        path = Path(text)
        if not path.is_file():
            raise InvalidSegment(f"arquivo de escala não encontrado: {path}")
        payload = path.read_text(encoding="utf-8")
    try:
        data = json.loads(payload)
    except json.JSONDecodeError as e:
        raise InvalidSegment(f"JSON de escala inválido: {e}")
    scale = scale_from_dict(data)
    logger.info(f"📐 Escala carregada: {len(scale.segments)} segmentos em [{scale.min}, {scale.max}]")
    return scale
