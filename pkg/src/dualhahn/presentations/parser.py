"""Expression syntax for relations.

Grammar (``i`` is the imaginary unit, juxtaposition multiplies)::

    expr    := unary (('+' | '-') unary)*
    unary   := '-' unary | product
    product := power ('*'? power)*
    power   := atom ('^' INT)?
    atom    := INT ('/' INT)? | 'i' | IDENT | '(' expr ')'
             | '[' expr ',' expr ']' | '{' expr ',' expr '}'

The printer emits the canonical spelling: explicit ``*``, single spaces
around binary ``+``/``-``, no spaces inside brackets. ``parse(fmt(e)) == e``
for every parsed expression ``e``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from dualhahn.opalg.scalar import GaussianRational


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Sum:
    first: object
    rest: tuple  # of (op, expr) with op in {"+", "-"}


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Comm:
    left: object
    right: object


@dataclass(frozen=True)
class Anti:
    left: object
    right: object


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1)))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()[]{},":
                raise ParseError(f"unexpected character {ch!r} in {text!r}")
            tokens.append(("op", ch))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError(f"unexpected end of {self.text!r}")
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self):
        expr = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input {self.tokens[self.pos][1]!r} in {self.text!r}")
        return expr

    def expr(self):
        first = self.unary()
        rest = []
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rest.append((op, self.unary()))
        return Sum(first, tuple(rest)) if rest else first

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.product()

    def _starts_atom(self):
        kind, value = self.peek()
        return kind in ("int", "ident") or (kind == "op" and value in "([{")

    def product(self):
        factors = [self.power()]
        while True:
            if self.peek() == ("op", "*"):
                self.take()
                factors.append(self.power())
            elif self._starts_atom():
                factors.append(self.power())
            else:
                break
        return Prod(tuple(factors)) if len(factors) > 1 else factors[0]

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, value = self.take()
            if kind != "int":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            return Pow(base, int(value))
        return base

    def atom(self):
        kind, value = self.take()
        if kind == "int":
            if self.peek() == ("op", "/"):
                self.take()
                k2, denom = self.take()
                if k2 != "int" or int(denom) == 0:
                    raise ParseError(f"bad rational literal in {self.text!r}")
                return Num(Fraction(int(value), int(denom)))
            return Num(Fraction(int(value)))
        if kind == "ident":
            return Imag() if value == "i" else Sym(value)
        if value == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if value in "[{":
            left = self.expr()
            self.take(",")
            right = self.expr()
            self.take("]" if value == "[" else "}")
            return Comm(left, right) if value == "[" else Anti(left, right)
        raise ParseError(f"unexpected {value!r} in {self.text!r}")


def parse_expression(text: str):
    if not text.strip():
        raise ParseError("empty expression")
    return _Parser(text).parse()


def _fmt_number(value: Fraction) -> str:
    return str(value)


def format_expression(e) -> str:
    if isinstance(e, Num):
        return _fmt_number(e.value)
    if isinstance(e, Imag):
        return "i"
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Neg):
        inner = e.arg
        text = format_expression(inner)
        return "-" + (f"({text})" if isinstance(inner, Sum) else text)
    if isinstance(e, Sum):
        parts = [_fmt_sum_term(e.first)]
        for op, term in e.rest:
            parts.append(f" {op} {_fmt_sum_term(term)}")
        return "".join(parts)
    if isinstance(e, Prod):
        return "*".join(_fmt_factor(f) for f in e.factors)
    if isinstance(e, Pow):
        base = format_expression(e.base)
        if not isinstance(e.base, (Num, Imag, Sym, Comm, Anti)):
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, Comm):
        return f"[{format_expression(e.left)},{format_expression(e.right)}]"
    if isinstance(e, Anti):
        return f"{{{format_expression(e.left)},{format_expression(e.right)}}}"
    raise TypeError(f"not an expression node: {e!r}")


def _fmt_sum_term(e) -> str:
    text = format_expression(e)
    return f"({text})" if isinstance(e, Sum) else text


def _fmt_factor(e) -> str:
    text = format_expression(e)
    return f"({text})" if isinstance(e, (Sum, Prod, Neg)) else text


def symbols(e) -> set[str]:
    if isinstance(e, Sym):
        return {e.name}
    if isinstance(e, (Num, Imag)):
        return set()
    if isinstance(e, Neg):
        return symbols(e.arg)
    if isinstance(e, Sum):
        out = symbols(e.first)
        for _, t in e.rest:
            out |= symbols(t)
        return out
    if isinstance(e, Prod):
        return set().union(*(symbols(f) for f in e.factors))
    if isinstance(e, Pow):
        return symbols(e.base)
    return symbols(e.left) | symbols(e.right)


# -- expansion into noncommutative polynomials --------------------------------
# A polynomial is a dict mapping a word (tuple of symbol names) to a nonzero
# GaussianRational coefficient. The empty word is the identity.

def _padd(p, q, sign=1):
    out = dict(p)
    for w, c in q.items():
        v = out.get(w, 0) + c * sign
        if GaussianRational.coerce(v).is_zero():
            out.pop(w, None)
        else:
            out[w] = GaussianRational.coerce(v)
    return out


def _pmul(p, q):
    out = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            w = w1 + w2
            v = out.get(w, GaussianRational(0)) + c1 * c2
            if v.is_zero():
                out.pop(w, None)
            else:
                out[w] = v
    return out


def expand(e) -> dict:
    if isinstance(e, Num):
        return {(): GaussianRational(e.value)} if e.value != 0 else {}
    if isinstance(e, Imag):
        return {(): GaussianRational(0, 1)}
    if isinstance(e, Sym):
        return {(e.name,): GaussianRational(1)}
    if isinstance(e, Neg):
        return {w: -c for w, c in expand(e.arg).items()}
    if isinstance(e, Sum):
        out = expand(e.first)
        for op, t in e.rest:
            out = _padd(out, expand(t), 1 if op == "+" else -1)
        return out
    if isinstance(e, Prod):
        out = {(): GaussianRational(1)}
        for f in e.factors:
            out = _pmul(out, expand(f))
        return out
    if isinstance(e, Pow):
        base = expand(e.base)
        out = {(): GaussianRational(1)}
        for _ in range(e.exponent):
            out = _pmul(out, base)
        return out
    left, right = expand(e.left), expand(e.right)
    sign = -1 if isinstance(e, Comm) else 1
    return _padd(_pmul(left, right), _pmul(right, left), sign)


def polynomial_difference(lhs, rhs) -> dict:
    return _padd(expand(lhs), expand(rhs), -1)


def parse_scalar(text: str) -> GaussianRational:
    """Evaluate a symbol-free expression such as ``-1/3`` or ``1/2 + i``."""
    poly = expand(parse_expression(text))
    if any(w for w in poly):
        raise ParseError(f"{text!r} is not a scalar literal")
    return poly.get((), GaussianRational(0))
