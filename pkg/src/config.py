#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Configuration
Configurações lidas do ambiente (.env carregado pelo run.py) no momento do acesso
"""

import logging
import math
import os
from typing import Optional

from services.errors import ValidationError

logger = logging.getLogger(__name__)


def _float_env(name: str) -> Optional[float]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        return float(raw)
    except ValueError:
        logger.warning(f"⚠️ {name}={raw!r} não é numérico, ignorado")
        return None


class Settings:
    """Flag da CLI > variável de ambiente > padrão"""

    DEFAULT_STEP = 1e-3
    DEFAULT_THREADS = 1
    DEFAULT_LOG_LEVEL = "WARNING"

    @property
    def tol(self) -> Optional[float]:
        """TSFRAC_TOL: substitui as tolerâncias padrão (solver e suítes de verificação)"""
        value = _float_env("TSFRAC_TOL")
        if value is not None and value <= 0:
            logger.warning(f"⚠️ TSFRAC_TOL={value} não é positivo, ignorado")
            return None
        return value

    @property
    def log_level(self) -> str:
        return os.getenv("TSFRAC_LOG_LEVEL", self.DEFAULT_LOG_LEVEL).upper()

    @property
    def threads(self) -> int:
        value = _float_env("TSFRAC_THREADS")
        if value is None or value < 1:
            return self.DEFAULT_THREADS
        return int(value)

    @property
    def default_step(self) -> float:
        value = _float_env("TSFRAC_DEFAULT_STEP")
        if value is None or value <= 0:
            return self.DEFAULT_STEP
        return value

    @property
    def archive_dir(self) -> Optional[str]:
        value = os.getenv("TSFRAC_ARCHIVE_DIR", "").strip()
        return value or None

    def resolve_tol(self, flag: Optional[float], default: float) -> float:
        if flag is not None:
            value = float(flag)
            if not (value > 0 and math.isfinite(value)):
                raise ValidationError(f"--tol deve ser positivo e finito: {flag}")
            return value
        env = self.tol
        return env if env is not None else default


settings = Settings()
