#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Configuração dos testes
"""

import os
import sys

# Adiciona o diretório src ao path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))
