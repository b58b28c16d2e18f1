"""Text and JSON forms of :class:`~leviflat.poly.MixedPoly`.

Text grammar (whitespace-insensitive)::

    expr    := term (('+' | '-') term)*
    term    := unary ('*' unary)*
    unary   := ('-' | '+') unary | power
    power   := primary ('^' INT)?
    primary := INT ('/' INT)? | 'i' | 'z'K | '~' primary
             | 'conj' '(' expr ')' | '(' expr ')'

``^`` binds tighter than ``*`` and unary minus. Implicit multiplication is an
error. Exponents above ``MAX_EXPONENT`` are rejected.

JSON documents look like::

    {"schema_version": 1, "num_vars": 2,
     "terms": [{"alpha": [1, 0], "beta": [0, 1], "re": "1/1", "im": "0/1"}]}

Rationals are always strings, never floats.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .coefficient import I, Coefficient
from .errors import ParseError, SchemaError
from .poly import ComplexifiedPoly, MixedPoly

__all__ = [
    "MAX_EXPONENT",
    "SCHEMA_VERSION",
    "parse",
    "parse_point",
    "format_poly",
    "format_coefficient",
    "format_complexified",
    "to_json",
    "from_json",
    "dumps",
    "loads",
    "rational_to_str",
    "rational_from_str",
]

MAX_EXPONENT = 2 ** 16
SCHEMA_VERSION = 1

_VAR_RE = re.compile(r"^z([1-9]\d*)$")


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def __repr__(self):
        return f"{self.kind}:{self.text}@{self.line}:{self.col}"


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    line, line_start = 1, 0
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch == "\n":
            line += 1
            pos += 1
            line_start = pos
            continue
        if ch.isspace():
            pos += 1
            continue
        col = pos - line_start + 1
        if ch.isdigit():
            end = pos
            while end < n and text[end].isdigit():
                end += 1
            tokens.append(_Token("num", text[pos:end], line, col))
            pos = end
        elif ch.isalpha() or ch == "_":
            end = pos
            while end < n and (text[end].isalnum() or text[end] == "_"):
                end += 1
            tokens.append(_Token("name", text[pos:end], line, col))
            pos = end
        elif ch in "+-*^()/~":
            tokens.append(_Token("op", ch, line, col))
            pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: List[_Token], num_vars: int, names: Mapping[str, int]):
        self.tokens = tokens
        self.pos = 0
        self.k = num_vars
        self.names = names

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: Optional[_Token] = None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def parse(self) -> MixedPoly:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        result = self.expr()
        if self.tok.kind != "end":
            raise self._trailing()
        return result

    def _trailing(self):
        tok = self.tok
        if tok.kind in ("num", "name") or tok.text in ("(", "~"):
            return self.error("implicit multiplication is not allowed; use '*'")
        return self.error(f"unexpected {tok.text!r}")

    def expr(self) -> MixedPoly:
        result = self.term()
        while True:
            if self.accept("+"):
                result = result + self.term()
            elif self.accept("-"):
                result = result - self.term()
            else:
                return result

    def term(self) -> MixedPoly:
        result = self.unary()
        while self.accept("*"):
            result = result * self.unary()
        return result

    def unary(self) -> MixedPoly:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> MixedPoly:
        base = self.primary()
        if self.accept("^"):
            tok = self.tok
            if tok.kind != "num":
                raise self.error("exponent must be a nonnegative integer literal")
            self.pos += 1
            n = int(tok.text)
            if n > MAX_EXPONENT:
                raise self.error(f"exponent overflow: {n} exceeds {MAX_EXPONENT}", tok)
            if self.tok.text == "^":
                raise self.error("chained exponents are ambiguous; use parentheses")
            return base ** n
        return base

    def primary(self) -> MixedPoly:
        tok = self.tok
        if tok.kind == "num":
            self.pos += 1
            value = Fraction(int(tok.text))
            if self.accept("/"):
                den = self.tok
                if den.kind != "num":
                    raise self.error("'/' is only allowed inside a rational literal like 1/2")
                self.pos += 1
                if int(den.text) == 0:
                    raise self.error("zero denominator", den)
                value = value / int(den.text)
            return MixedPoly.constant(self.k, value)
        if tok.kind == "name":
            self.pos += 1
            if tok.text == "i":
                return MixedPoly.constant(self.k, I)
            if tok.text == "conj":
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return inner.conjugate()
            return self.variable(tok)
        if self.accept("~"):
            return self.primary().conjugate()
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        if tok.text == "/":
            raise self.error("'/' is only allowed inside a rational literal like 1/2")
        raise self.error(f"unexpected {tok.text!r}")

    def variable(self, tok: _Token) -> MixedPoly:
        if tok.text in self.names:
            return MixedPoly.var(self.k, self.names[tok.text])
        m = _VAR_RE.match(tok.text)
        if not m:
            raise self.error(f"unknown name {tok.text!r}", tok)
        idx = int(m.group(1))
        if idx > self.k:
            raise self.error(
                f"variable index {idx} exceeds the number of variables ({self.k})", tok)
        return MixedPoly.var(self.k, idx)


def parse(text: str, num_vars: Optional[int] = None, names: Optional[Mapping[str, int]] = None) -> MixedPoly:
    """Parse polynomial text into an exact :class:`MixedPoly`.

    ``num_vars`` defaults to the largest variable index that occurs. ``names``
    maps extra identifiers (e.g. a real parameter ``t``) to variable indices.
    """
    tokens = _tokenize(text)
    names = dict(names or {})
    if num_vars is None:
        num_vars = max(names.values(), default=0)
        for tok in tokens:
            m = _VAR_RE.match(tok.text) if tok.kind == "name" else None
            if m:
                num_vars = max(num_vars, int(m.group(1)))
    return _Parser(tokens, num_vars, names).parse()


def parse_point(text: str) -> Tuple[Coefficient, ...]:
    """Parse a comma-separated list of exact constants, e.g. ``"1, 1/2 + i"``."""
    if not text.strip():
        raise ParseError("empty point")
    coords = []
    offset = 0
    for piece in text.split(","):
        try:
            value = parse(piece, num_vars=0)
        except ParseError as exc:
            raise ParseError(exc.message, exc.line, exc.column + offset) from None
        coords.append(value.coefficient(()))
        offset += len(piece) + 1
    return tuple(coords)


# -- printing -------------------------------------------------------------------


def _monomial_text(exps, names) -> str:
    parts = []
    for n, name in zip(exps, names):
        if n == 1:
            parts.append(name)
        elif n > 1:
            parts.append(f"{name}^{n}")
    return "*".join(parts)


def format_coefficient(c: Coefficient) -> str:
    """Exact text for a scalar that parses back to the same value."""
    return _term_text(c, "", first=True)


def _term_text(c: Coefficient, mono: str, first: bool) -> str:
    if c.im == 0 or c.re == 0:
        value = c.re if c.im == 0 else c.im
        negative = value < 0
        mag = abs(value)
        pieces = []
        if mag != 1:
            pieces.append(str(mag))
        if c.im != 0:
            pieces.append("i")
        if mono:
            pieces.append(mono)
        body = "*".join(pieces) or "1"
    else:
        negative = False
        sign = "-" if c.im < 0 else "+"
        im = abs(c.im)
        im_text = "i" if im == 1 else f"{im}*i"
        body = f"({c.re} {sign} {im_text})"
        if mono:
            body += "*" + mono
    if first:
        return ("-" if negative else "") + body
    return (" - " if negative else " + ") + body


def _format(terms, names) -> str:
    if not terms:
        return "0"
    out = []
    for i, (exps, c) in enumerate(terms):
        out.append(_term_text(c, _monomial_text(exps, names), first=(i == 0)))
    return "".join(out)


def format_poly(p: MixedPoly) -> str:
    """Canonical text: terms in decreasing graded-lex order, ``~`` for conjugates."""
    k = p.num_vars
    names = [f"z{j}" for j in range(1, k + 1)] + [f"~z{j}" for j in range(1, k + 1)]
    return _format(p.sorted_flat_terms(), names)


def format_complexified(p: ComplexifiedPoly) -> str:
    k = p.num_vars
    names = [f"z{j}" for j in range(1, k + 1)] + [f"w{j}" for j in range(1, k + 1)]
    return _format(p.sorted_flat_terms(), names)


# -- JSON -----------------------------------------------------------------------

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def rational_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def rational_from_str(text: str) -> Fraction:
    if not isinstance(text, str):
        raise SchemaError(f"rational must be a string, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise SchemaError(f"malformed rational string {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise SchemaError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def coefficient_to_json(c: Coefficient) -> Dict[str, str]:
    return {"re": rational_to_str(c.re), "im": rational_to_str(c.im)}


def coefficient_from_json(obj) -> Coefficient:
    if not isinstance(obj, Mapping) or "re" not in obj or "im" not in obj:
        raise SchemaError("a coefficient needs 're' and 'im' fields")
    return Coefficient(rational_from_str(obj["re"]), rational_from_str(obj["im"]))


def to_json(p: MixedPoly) -> dict:
    """Lossless document form of ``p`` (a plain dict, ready for ``json.dumps``)."""
    return {
        "schema_version": SCHEMA_VERSION,
        "num_vars": p.num_vars,
        "terms": [
            {"alpha": list(a), "beta": list(b), **coefficient_to_json(c)}
            for a, b, c in p.items()
        ],
    }


def from_json(doc: Union[str, Mapping]) -> MixedPoly:
    """Inverse of :func:`to_json`; accepts a dict or a JSON string."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, Mapping):
        raise SchemaError("polynomial document must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {version!r}")
    k = doc.get("num_vars")
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise SchemaError("num_vars must be a nonnegative integer")
    terms = doc.get("terms")
    if not isinstance(terms, list):
        raise SchemaError("terms must be a list")
    flat = {}
    for rec in terms:
        if not isinstance(rec, Mapping):
            raise SchemaError("each term must be an object")
        alpha, beta = rec.get("alpha"), rec.get("beta")
        for vec in (alpha, beta):
            if (not isinstance(vec, list) or len(vec) != k
                    or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in vec)):
                raise SchemaError(f"exponent vectors must be {k} nonnegative integers")
        c = coefficient_from_json(rec)
        if not c:
            raise SchemaError("documents must not contain zero terms")
        key = tuple(alpha) + tuple(beta)
        if key in flat:
            raise SchemaError(f"duplicate term {alpha}, {beta}")
        flat[key] = c
    return MixedPoly(k, flat)


def dumps(p: MixedPoly, **kwargs) -> str:
    return json.dumps(to_json(p), **kwargs)


def loads(text: str) -> MixedPoly:
    return from_json(text)
