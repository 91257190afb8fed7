#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Output Utilities
Formatação determinística das saídas: CSV (pandas) e JSON com 12 dígitos significativos
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import click
import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12
FLOAT_FORMAT = f"%.{SIGNIFICANT_DIGITS}g"


def round_sig(value: float) -> Optional[float]:
    """Arredonda a 12 dígitos significativos; não finitos viram None (null no JSON)"""
    value = float(value)
    if not math.isfinite(value):
        return None
    return float(FLOAT_FORMAT % value)


def jsonable(data: Any) -> Any:
    if isinstance(data, dict):
        return {str(k): jsonable(v) for k, v in data.items()}
    if isinstance(data, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in data]
    if isinstance(data, (bool, np.bool_)):
        return bool(data)
    if isinstance(data, (int, np.integer)):
        return int(data)
    if isinstance(data, (float, np.floating)):
        return round_sig(data)
    return data


def dump_json(data: Dict[str, Any]) -> str:
    """JSON com ordem de campos estável e terminador \\n"""
    return json.dumps(jsonable(data), ensure_ascii=False, indent=2) + "\n"


def table_csv(columns: Dict[str, Sequence[float]]) -> str:
    frame = pd.DataFrame({name: np.asarray(values, dtype=float) for name, values in columns.items()})
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def emit(text: str, path: Optional[str] = None) -> None:
    """Escreve em arquivo (se informado) ou no stdout"""
    if path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        logger.info(f"💾 Saída gravada: {target}")
    else:
        click.echo(text, nl=False)
