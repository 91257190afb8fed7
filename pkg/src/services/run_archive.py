#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Run Archive
Arquivamento das execuções (entradas e relatório) em JSON, por sessão
"""

import json
import logging
import time
import uuid
from datetime import datetime
from pathlib import Path
from typing import Any, Optional

from config import settings

logger = logging.getLogger(__name__)


class RunArchive:
    """Salva cada etapa como <etapa>_<timestamp>.json no diretório da sessão

    Desativado enquanto nenhum diretório estiver configurado (TSFRAC_ARCHIVE_DIR).
    Falhas de escrita são registradas e nunca interrompem o comando.
    """

    def __init__(self, base_dir: Optional[str] = None):
        self._base_dir = base_dir
        self.session_id: Optional[str] = None

    @property
    def base_dir(self) -> Optional[Path]:
        configured = self._base_dir or settings.archive_dir
        return Path(configured) if configured else None

    @property
    def enabled(self) -> bool:
        return self.base_dir is not None

    def start_session(self, session_id: Optional[str] = None) -> Optional[str]:
        if not self.enabled:
            return None
        self.session_id = session_id or f"session_{int(time.time())}_{uuid.uuid4().hex[:8]}"
        logger.info(f"🚀 Sessão de arquivo iniciada: {self.session_id}")
        return self.session_id

    def save_stage(self, stage: str, data: Any, status: str = "success") -> Optional[str]:
        """Grava a etapa e devolve o caminho do arquivo (None se desativado ou em falha)"""
        base = self.base_dir
        if base is None:
            return None
        if self.session_id is None:
            self.start_session()

        timestamp = time.time()
        stamp = datetime.fromtimestamp(timestamp).strftime("%Y%m%d_%H%M%S_%f")[:-3]
        target = base / self.session_id / f"{stage}_{stamp}.json"
        payload = {
            "stage": stage,
            "status": status,
            "data": data,
            "timestamp": timestamp,
            "timestamp_iso": datetime.fromtimestamp(timestamp).isoformat(),
            "session_id": self.session_id,
        }
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            with open(target, "w", encoding="utf-8") as f:
                json.dump(payload, f, ensure_ascii=False, indent=2, default=str)
        except OSError as e:
            logger.error(f"❌ Erro ao arquivar '{stage}': {e}")
            return None
        logger.info(f"💾 Etapa '{stage}' arquivada: {target}")
        return str(target)


run_archive = RunArchive()


def save_stage(stage: str, data: Any, status: str = "success") -> Optional[str]:
    return run_archive.save_stage(stage, data, status)
