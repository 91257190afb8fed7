#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Errors
Hierarquia de exceções com código de saída para a CLI
"""

from typing import Any, Optional


class TsfracError(Exception):
    """Exceção base do tsfrac"""

    exit_code = 2
    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def cli_line(self) -> str:
        """Linha única e parseável: error:<exit>:<code>: mensagem"""
        return f"error:{self.exit_code}:{self.code}: {self.message}"


class ValidationError(TsfracError):
    """Entrada inválida (flags, arquivos, pré-condições)"""

    exit_code = 2
    code = "validation"


class EmptyScale(ValidationError):
    code = "empty_scale"


class InvalidSegment(ValidationError):
    code = "invalid_segment"


class NotInScale(ValidationError):
    code = "not_in_scale"


class BadRange(ValidationError):
    code = "bad_range"


class OutsideKappa(ValidationError):
    code = "outside_kappa"


class InvalidOrder(ValidationError):
    code = "invalid_order"


class UseIntegerCalculus(InvalidOrder):
    code = "use_integer_calculus"


class NotIncreasing(ValidationError):
    code = "not_increasing"


class InvalidProblem(ValidationError):
    code = "invalid_problem"


class InvalidGridFunction(ValidationError):
    code = "invalid_grid_function"


class ParseError(ValidationError):
    """Erro de sintaxe em uma expressão"""

    code = "parse_error"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (posição {position})")
        self.position = position


class UnknownSymbol(ParseError):
    code = "unknown_symbol"

    def __init__(self, name: str, position: int):
        super().__init__(f"símbolo desconhecido '{name}'", position)
        self.name = name


class DomainError(TsfracError, ValueError):
    """Falha numérica: polo, raiz/log de negativo, divisão por zero"""

    exit_code = 3
    code = "domain"


class NonConverged(TsfracError):
    """Iteração de Picard esgotou max_iter; iterado e relatório continuam disponíveis"""

    exit_code = 4
    code = "non_converged"

    def __init__(self, message: str, solution: Any = None, report: Optional[Any] = None):
        super().__init__(message)
        self.solution = solution
        self.report = report


class VerificationFailed(TsfracError):
    exit_code = 5
    code = "verification_failed"
