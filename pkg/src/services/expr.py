#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Expressions
Parser descendente recursivo e avaliador para f(t, y) e funções de teste h(t)

Gramática (precedência crescente):

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" unary)?          (associativa à direita)
    atom    := number | name | name "(" expr ")" | "(" expr ")"

O menos unário liga mais fraco que "^": -t^2 = -(t^2).
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from services.errors import DomainError, ParseError, UnknownSymbol

logger = logging.getLogger(__name__)

VARIABLES = ("t", "y")
CONSTANTS = {"pi": np.pi, "e": np.e}
FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt", "abs")

Number = Union[float, np.ndarray]


# AST

@dataclass(frozen=True)
class Num:
    value: float
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Const:
    name: str
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"
    pos: int = field(default=0, compare=False)


Expr = Union[Num, Var, Const, Neg, BinOp, Call]


# Tokenização

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # num | name | op | end
    text: str
    pos: int


def _tokenize(text: str) -> Iterator[_Token]:
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            offset = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"caractere inesperado '{text[offset]}'", offset)
        kind = m.lastgroup
        yield _Token(kind, m.group(kind), m.start(kind))
        pos = m.end()
    yield _Token("end", "", len(text))


class _Parser:
    """Parser descendente recursivo com um token de lookahead"""

    def __init__(self, text: str):
        self.tokens: List[_Token] = list(_tokenize(text))
        self.index = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        if tok.kind != "end":
            self.index += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.current
        if tok.kind != "op" or tok.text != text:
            found = "fim da expressão" if tok.kind == "end" else f"'{tok.text}'"
            raise ParseError(f"esperado '{text}', encontrado {found}", tok.pos)
        return self.advance()

    def parse(self) -> Expr:
        node = self.expr()
        if self.current.kind != "end":
            raise ParseError(f"token inesperado '{self.current.text}'", self.current.pos)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            tok = self.advance()
            node = BinOp(tok.text, node, self.term(), tok.pos)
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            tok = self.advance()
            node = BinOp(tok.text, node, self.unary(), tok.pos)
        return node

    def unary(self) -> Expr:
        if self.current.kind == "op" and self.current.text == "-":
            tok = self.advance()
            return Neg(self.unary(), tok.pos)
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.current.kind == "op" and self.current.text == "^":
            tok = self.advance()
            return BinOp("^", base, self.unary(), tok.pos)
        return base

    def atom(self) -> Expr:
        tok = self.current
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text), tok.pos)
        if tok.kind == "name":
            self.advance()
            if tok.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(tok.text, arg, tok.pos)
            if tok.text in VARIABLES:
                return Var(tok.text, tok.pos)
            if tok.text in CONSTANTS:
                return Const(tok.text, tok.pos)
            raise UnknownSymbol(tok.text, tok.pos)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = "fim da expressão" if tok.kind == "end" else f"'{tok.text}'"
        raise ParseError(f"operando esperado, encontrado {found}", tok.pos)


def parse(text: str) -> Expr:
    """Converte texto em AST; ParseError/UnknownSymbol com a posição do problema"""
    if not isinstance(text, str):
        raise ParseError("expressão precisa ser texto", 0)
    return _Parser(text).parse()


def ensure_expr(source: Union[str, Expr]) -> Expr:
    return parse(source) if isinstance(source, str) else source


def to_text(e: Expr) -> str:
    """Forma canônica totalmente parentizada (re-parseável)"""
    if isinstance(e, Num):
        return repr(float(e.value))
    if isinstance(e, (Var, Const)):
        return e.name
    if isinstance(e, Neg):
        return f"(-{to_text(e.operand)})"
    if isinstance(e, BinOp):
        return f"({to_text(e.left)} {e.op} {to_text(e.right)})"
    if isinstance(e, Call):
        return f"{e.func}({to_text(e.arg)})"
    raise TypeError(f"nó desconhecido: {e!r}")


def variables_used(e: Expr) -> set:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Neg):
        return variables_used(e.operand)
    if isinstance(e, BinOp):
        return variables_used(e.left) | variables_used(e.right)
    if isinstance(e, Call):
        return variables_used(e.arg)
    return set()


# Avaliação

def _fail(e: Expr, message: str, t: np.ndarray, bad: np.ndarray) -> None:
    where = ""
    if t.ndim and bad.ndim and bad.any():
        where = f" em t={float(t.flat[int(np.argmax(bad.ravel()))])!r}"
    elif t.ndim == 0:
        where = f" em t={float(t)!r}"
    raise DomainError(f"{message} (nó na posição {e.pos}){where}")


def _eval(e: Expr, t: np.ndarray, y: np.ndarray) -> np.ndarray:
    if isinstance(e, Num):
        return np.full(np.broadcast(t, y).shape, e.value, dtype=float)
    if isinstance(e, Var):
        src = t if e.name == "t" else y
        return np.broadcast_to(src, np.broadcast(t, y).shape).astype(float)
    if isinstance(e, Const):
        return np.full(np.broadcast(t, y).shape, CONSTANTS[e.name], dtype=float)
    if isinstance(e, Neg):
        return -_eval(e.operand, t, y)
    if isinstance(e, Call):
        x = _eval(e.arg, t, y)
        tb = np.broadcast_to(t, x.shape)
        if e.func in ("log", "sqrt"):
            bad = x <= 0 if e.func == "log" else x < 0
            if bad.any():
                _fail(e, f"{e.func} de argumento fora do domínio", tb, bad)
        return getattr(np, "absolute" if e.func == "abs" else e.func)(x)
    if isinstance(e, BinOp):
        left = _eval(e.left, t, y)
        right = _eval(e.right, t, y)
        tb = np.broadcast_to(t, left.shape)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        if e.op == "/":
            zero = right == 0
            if zero.any():
                _fail(e, "divisão por zero", tb, zero)
            return left / right
        if e.op == "^":
            fractional = right != np.round(right)
            bad = (left < 0) & fractional
            if bad.any():
                _fail(e, "potência não inteira de base negativa", tb, bad)
            pole = (left == 0) & (right < 0)
            if pole.any():
                _fail(e, "potência negativa de zero", tb, pole)
            return np.power(left, right)
    raise TypeError(f"nó desconhecido: {e!r}")


def evaluate(e: Union[str, Expr], t: Number, y: Number = 0.0) -> Number:
    """Avalia e em (t, y); escalares devolvem float, arrays devolvem ndarray

    DomainError quando o resultado sai do domínio ou não é finito.
    """
    e = ensure_expr(e)
    scalar = np.ndim(t) == 0 and np.ndim(y) == 0
    tt = np.asarray(t, dtype=float)
    yy = np.asarray(y, dtype=float)
    with np.errstate(all="ignore"):
        out = _eval(e, tt, yy)
    finite = np.isfinite(out)
    if not finite.all():
        _fail(e, "resultado não finito", np.broadcast_to(tt, out.shape), ~finite)
    if scalar:
        return float(out)
    return np.array(out, dtype=float)
