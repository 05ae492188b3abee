"""Exact multivariate polynomials over Q or a prime field.

Monomials are exponent tuples. Coefficients are ``Fraction`` over Q and plain
``int`` residues over F_p. Polynomials are immutable; every operation returns a
fresh value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

Monomial = tuple  # tuple[int, ...]

ORDERS = ("grevlex", "lex")


class RingMismatch(ValueError):
    pass


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def grevlex_key(e: Monomial) -> tuple:
    return (sum(e),) + tuple(-a for a in reversed(e))


def lex_key(e: Monomial) -> tuple:
    return e


def block_key(k: int):
    """Elimination order: grevlex on the first ``k`` variables, ties broken by grevlex on the rest."""

    def key(e):
        return grevlex_key(e[:k]) + grevlex_key(e[k:])

    return key


def order_key(order):
    if order == "grevlex":
        return grevlex_key
    if order == "lex":
        return lex_key
    if isinstance(order, tuple) and order[0] == "elim":
        return block_key(order[1])
    raise ValueError(f"unknown monomial order {order!r}")


@dataclass(frozen=True)
class PolyRing:
    """Graded polynomial ring k[x_1..x_d], standing in for its localization at the irrelevant ideal."""

    variables: tuple
    characteristic: int = 0
    order: str = "grevlex"
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.variables)
        object.__setattr__(self, "variables", names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for v in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"bad variable name {v!r}")
        p = self.characteristic
        if p != 0 and (not _is_prime(p) or p >= 2**31):
            raise ValueError(f"characteristic must be 0 or a prime below 2^31, got {p}")
        if self.order not in ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(names)})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def key(self):
        return order_key(self.order)

    def index(self, name: str) -> int:
        return self._index[name]

    def coerce(self, c):
        """Bring an int/Fraction/str coefficient into the ring's coefficient field."""
        if isinstance(c, str):
            c = Fraction(c)
        if self.characteristic == 0:
            return Fraction(c)
        p = self.characteristic
        c = Fraction(c)
        if c.denominator % p == 0:
            raise ZeroDivisionError(f"denominator {c.denominator} vanishes mod {p}")
        return c.numerator * pow(c.denominator, -1, p) % p

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exps, c=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): c})

    def gens(self) -> tuple:
        n = self.nvars
        return tuple(
            self.monomial(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)
        )

    def var(self, name: str) -> "Polynomial":
        return self.gens()[self.index(name)]

    def with_order(self, order: str) -> "PolyRing":
        return PolyRing(self.variables, self.characteristic, order)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __str__(self):
        f = "Q" if self.characteristic == 0 else f"F{self.characteristic}"
        return f"{f}[{','.join(self.variables)}]"


class Polynomial:
    """An immutable polynomial: a map from exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping, *, _canonical: bool = False):
        self.ring = ring
        if _canonical:
            self._terms = terms
        else:
            n = ring.nvars
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n or any(a < 0 for a in e):
                    raise ValueError(f"bad exponent vector {e} for {ring}")
                c = ring.coerce(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            if ring.characteristic:
                p = ring.characteristic
                clean = {e: c % p for e, c in clean.items() if c % p}
            else:
                clean = {e: c for e, c in clean.items() if c}
            key = ring.key
            self._terms = dict(sorted(clean.items(), key=lambda t: key(t[0]), reverse=True))
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms: dict) -> "Polynomial":
        """Build from an already-clean term dict (unsorted)."""
        key = ring.key
        return cls(ring, dict(sorted(terms.items(), key=lambda t: key(t[0]), reverse=True)), _canonical=True)

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return next(iter(self._terms))

    def leading_coefficient(self):
        return next(iter(self._terms.values())) if self._terms else 0

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e) for e in self._terms)

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        lc = self.leading_coefficient()
        return self.scale(_inverse(self.ring, lc))

    def scale(self, c) -> "Polynomial":
        c = self.ring.coerce(c)
        if not c:
            return self.ring.zero()
        p = self.ring.characteristic
        if p:
            return Polynomial(self.ring, {e: v * c % p for e, v in self._terms.items()}, _canonical=True)
        return Polynomial(self.ring, {e: v * c for e, v in self._terms.items()}, _canonical=True)

    def _check(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.constant(other)
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return _combine(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return _combine(self, other, -1)

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        other = self._check(other)
        out: dict = {}
        p = self.ring.characteristic
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_monomial(self, m: Monomial, c=1) -> "Polynomial":
        c = self.ring.coerce(c)
        p = self.ring.characteristic
        terms = {tuple(a + b for a, b in zip(e, m)): (v * c % p if p else v * c) for e, v in self._terms.items()}
        return Polynomial(self.ring, terms, _canonical=True)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, {self.ring})"

    def __str__(self):
        return format_polynomial(self)


def _inverse(ring: PolyRing, c):
    if ring.characteristic:
        return pow(c, -1, ring.characteristic)
    return 1 / Fraction(c)


def _combine(a: Polynomial, b: Polynomial, sign: int) -> Polynomial:
    out = dict(a._terms)
    p = a.ring.characteristic
    for e, c in b._terms.items():
        v = out.get(e, 0) + sign * c
        if p:
            v %= p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return Polynomial._raw(a.ring, out)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def homogeneous_degree(p: Polynomial):
    """Total degree if all terms share it, else ``None``."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no degree")
    degs = {sum(e) for e in p._terms}
    return degs.pop() if len(degs) == 1 else None


def is_homogeneous(p: Polynomial) -> bool:
    return p.is_zero() or homogeneous_degree(p) is not None


# ---------------------------------------------------------------- printing


def _format_coeff(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_monomial(ring: PolyRing, e: Monomial) -> str:
    parts = []
    for name, a in zip(ring.variables, e):
        if a == 1:
            parts.append(name)
        elif a > 1:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(p._terms.items()):
        if p.ring.characteristic:
            # print residues in the symmetric range so signs read naturally
            half = p.ring.characteristic // 2
            c = c - p.ring.characteristic if c > half else c
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(p.ring, e)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        if m.group(1) is not None:
            toks.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            toks.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _PolyParser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, tok[2], self.text)

    def parse(self) -> Polynomial:
        terms: dict = {}
        first = True
        while True:
            kind, val, pos = self.peek()
            sign = 1
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
            elif not first:
                break
            coeff, exps = self.term()
            c = sign * coeff
            terms[exps] = terms.get(exps, 0) + c
            first = False
            if self.peek()[0] == "end":
                break
            if not (self.peek()[0] == "op" and self.peek()[1] in "+-"):
                self.error(f"unexpected {self.peek()[1]!r}")
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return Polynomial(self.ring, terms)

    def term(self):
        coeff = Fraction(1)
        exps = [0] * self.ring.nvars
        kind, val, pos = self.peek()
        if kind == "int":
            coeff = self.number()
        elif kind == "name":
            self.factor(exps)
        else:
            self.error("expected a coefficient or variable")
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            if self.peek()[0] == "int":
                coeff *= self.number()
            elif self.peek()[0] == "name":
                self.factor(exps)
            else:
                self.error("expected a factor after '*'")
        return coeff, tuple(exps)

    def number(self) -> Fraction:
        num = int(self.take()[1])
        if self.peek()[0] == "op" and self.peek()[1] == "/":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.error("expected a denominator")
            den = int(self.take()[1])
            if den == 0:
                self.error("zero denominator", tok)
            return Fraction(num, den)
        return Fraction(num)

    def factor(self, exps):
        tok = self.take()
        name = tok[1]
        if name not in self.ring._index:
            self.error(f"unknown variable {name!r}", tok)
        a = 1
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            if self.peek()[0] != "int":
                self.error("expected an exponent after '^'")
            a = int(self.take()[1])
        exps[self.ring.index(name)] += a


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``"x^2 - 3/2*x*y"``-style text into a canonical polynomial over ``ring``."""
    return _PolyParser(text, ring).parse()


def polys(ring: PolyRing, texts: Iterable[str]) -> list:
    return [parse_polynomial(t, ring) for t in texts]
