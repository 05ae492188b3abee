"""Homogeneous ideals in a polynomial ring.

Every ideal caches its reduced Groebner basis. Monomial ideals take a fast path
through :mod:`mixedmult.monomial`; when :data:`CHECKS` has ``dual_path`` on, the
fast answer is recomputed on the Groebner path and compared, and when
``buchberger`` is on, every freshly computed basis is checked against the
Buchberger criterion.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

from . import groebner as gb
from . import monomial as mono
from .poly import PolyRing, Polynomial, RingMismatch, homogeneous_degree

CHECKS = {"buchberger": False, "dual_path": False}
CHECK_STATS = {"buchberger": 0, "dual_path": 0}


class NotHomogeneous(ValueError):
    pass


class VerificationFailure(AssertionError):
    pass


@contextmanager
def verification_mode(buchberger: bool = True, dual_path: bool = True):
    """Turn on the self-checks for the duration of a block."""
    old = dict(CHECKS)
    CHECKS.update(buchberger=buchberger, dual_path=dual_path)
    try:
        yield CHECK_STATS
    finally:
        CHECKS.update(old)


def _field_terms(ring: PolyRing, G_internal) -> list:
    """Monic field-coefficient polynomials from engine output."""
    key = gb.key_cache(ring.order)
    out = []
    p = ring.characteristic
    for g in G_internal:
        lm = max(g, key=key.__getitem__)
        if p:
            out.append(Polynomial(ring, g))
        else:
            lc = g[lm]
            out.append(Polynomial(ring, {e: Fraction(c, lc) for e, c in g.items()}))
    return out


class Ideal:
    """A homogeneous ideal given by generators; the zero ideal has no generators."""

    __slots__ = ("ring", "gens", "_mono", "_gb", "_reducer", "_trunc", "_dim")

    def __init__(self, ring: PolyRing, gens=(), *, check: bool = True):
        self.ring = ring
        cleaned = []
        for g in gens:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise RingMismatch(f"generator over {g.ring}, ideal over {ring}")
            if g.is_zero():
                continue
            if check and homogeneous_degree(g) is None:
                raise NotHomogeneous(f"generator {g} is not homogeneous")
            cleaned.append(g)
        self.gens = tuple(cleaned)
        self._mono = None
        if all(g.is_monomial() for g in self.gens):
            self._mono = mono.minimalize(g.leading_monomial() for g in self.gens)
        self._gb = None
        self._reducer = None
        self._trunc = None
        self._dim = None

    # -- constructors

    @classmethod
    def from_monomials(cls, ring: PolyRing, exps) -> "Ideal":
        exps = mono.minimalize(exps)
        I = cls(ring, [ring.monomial(e) for e in exps], check=False)
        return I

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [])

    @classmethod
    def maximal(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, ring.gens())

    # -- basic properties

    @property
    def is_monomial(self) -> bool:
        return self._mono is not None

    @property
    def monomial_generators(self) -> tuple:
        if self._mono is None:
            raise ValueError("not a monomial ideal")
        return self._mono

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        if self._mono is not None:
            return any(not any(e) for e in self._mono)
        return any(g.is_constant() for g in self.groebner_basis())

    def max_degree(self) -> int:
        return max((g.degree() for g in self.gens), default=0)

    def min_degree(self) -> int:
        return min((g.degree() for g in self.gens), default=0)

    def is_equigenerated(self) -> bool:
        return len({g.degree() for g in self.gens}) <= 1

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens) or '0'})"

    # -- Groebner machinery

    def _internal_basis(self):
        if self._gb is None:
            if self._mono is not None:
                self._gb = [{e: 1} for e in self._mono]
            else:
                terms = [dict(g.terms) for g in self.gens]
                G = gb.buchberger(terms, self.ring.order, self.ring.characteristic)
                if CHECKS["buchberger"]:
                    CHECK_STATS["buchberger"] += 1
                    if not gb.check_buchberger_criterion(G, self.ring.order, self.ring.characteristic):
                        raise VerificationFailure(f"Buchberger criterion fails for {self}")
                self._gb = G
        return self._gb

    def groebner_basis(self) -> list:
        return _field_terms(self.ring, self._internal_basis())

    def reducer(self) -> gb.Basis:
        if self._reducer is None:
            self._reducer = gb.make_reducer(self._internal_basis(), self.ring.order, self.ring.characteristic)
        return self._reducer

    def truncated_reducer(self, bound: int) -> gb.Basis:
        """A basis valid in degrees up to ``bound`` (homogeneous truncation)."""
        if self._gb is not None or self._mono is not None:
            return self.reducer()
        if self._trunc is not None and self._trunc[0] >= bound:
            return self._trunc[1]
        terms = [dict(g.terms) for g in self.gens]
        G = gb.buchberger(terms, self.ring.order, self.ring.characteristic, degree_bound=bound)
        R = gb.make_reducer(G, self.ring.order, self.ring.characteristic)
        self._trunc = (bound, R)
        return R

    def staircase(self) -> tuple:
        """Minimal generators of the initial ideal."""
        if self._mono is not None:
            return self._mono
        return mono.minimalize(self.reducer().lms)

    def truncated_staircase(self, bound: int) -> tuple:
        if self._mono is not None:
            return self._mono
        return mono.minimalize(lm for lm in self.truncated_reducer(bound).lms if sum(lm) <= bound)

    def contains(self, f: Polynomial) -> bool:
        if f.ring != self.ring:
            raise RingMismatch(f"{f.ring} vs {self.ring}")
        if f.is_zero():
            return True
        if self._mono is not None:
            gens = self._mono
            return all(mono.contains(gens, e) for e in f.terms)
        return gb.reduces_to_zero(dict(f.terms), self.reducer())

    def __contains__(self, f):
        return self.contains(f)

    def issubset(self, other: "Ideal") -> bool:
        _same(self, other)
        if self._mono is not None and other._mono is not None:
            return all(mono.contains(other._mono, e) for e in self._mono)
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    def __add__(self, other):
        return ideal_combine(self, other, "sum")

    def __mul__(self, other):
        return ideal_combine(self, other, "product")

    def __pow__(self, n):
        return ideal_power(self, n)


def _same(a: Ideal, b: Ideal):
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")


# ---------------------------------------------------------------- linear algebra in one degree


class LinearSpan:
    """Row-echelon span of polynomials viewed as coefficient vectors."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.key = gb.key_cache(ring.order)
        self.rows: dict = {}

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        p = self.ring.characteristic
        key = self.key.__getitem__
        while v:
            m = max(v, key=key)
            row = self.rows.get(m)
            if row is None:
                return v
            c = v[m]
            for e, a in row.items():
                w = v.get(e, 0) - c * a
                if p:
                    w %= p
                if w:
                    v[e] = w
                else:
                    v.pop(e, None)
        return v

    def add(self, v: dict) -> bool:
        """Insert ``v``; return whether it was independent of the span."""
        r = self.reduce(v)
        if not r:
            return False
        m = max(r, key=self.key.__getitem__)
        c = r[m]
        p = self.ring.characteristic
        if p:
            inv = pow(c, -1, p)
            self.rows[m] = {e: a * inv % p for e, a in r.items()}
        else:
            self.rows[m] = {e: Fraction(a) / c for e, a in r.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def minimal_generators(ring: PolyRing, polys) -> list:
    """Drop generators lying in the ideal of the others (homogeneous input).

    Works degree by degree: a generator of degree t is kept iff its normal form
    modulo the kept lower-degree generators is linearly independent of the normal
    forms of the kept generators of degree t.
    """
    polys = [g for g in polys if not g.is_zero()]
    if all(g.is_monomial() for g in polys):
        return [ring.monomial(e) for e in mono.minimalize(g.leading_monomial() for g in polys)]
    by_degree: dict = {}
    for g in polys:
        by_degree.setdefault(g.degree(), []).append(g)
    kept: list = []
    for t in sorted(by_degree):
        span = LinearSpan(ring)
        if kept:
            low = Ideal(ring, kept, check=False)
            red = low.truncated_reducer(t)
        else:
            red = None
        for g in _dedupe(by_degree[t]):
            v = dict(g.terms)
            if red is not None:
                v = gb.normal_form(v, red)
            if span.add(v):
                kept.append(g)
    return kept


def _dedupe(polys):
    seen = set()
    out = []
    for g in polys:
        m = g.monic()
        if m not in seen:
            seen.add(m)
            out.append(g)
    return out


# ---------------------------------------------------------------- operations on ideals and families


def groebner_basis(I: Ideal) -> list:
    return I.groebner_basis()


def normal_form(f: Polynomial, I: Ideal) -> Polynomial:
    if f.ring != I.ring:
        raise RingMismatch(f"{f.ring} vs {I.ring}")
    if f.is_zero():
        return f
    if I._mono is not None:
        gens = I._mono
        return Polynomial(f.ring, {e: c for e, c in f.terms.items() if not mono.contains(gens, e)})
    return Polynomial(f.ring, gb.normal_form(dict(f.terms), I.reducer()))


def ideal_equal(a: Ideal, b: Ideal) -> bool:
    _same(a, b)
    if a._mono is not None and b._mono is not None:
        return a._mono == b._mono
    return a.issubset(b) and b.issubset(a)


def ideal_combine(a: Ideal, b: Ideal, op: str) -> Ideal:
    _same(a, b)
    ring = a.ring
    if op == "sum":
        if a._mono is not None and b._mono is not None:
            return _dual(Ideal.from_monomials(ring, mono.mono_sum(a._mono, b._mono)),
                         lambda: _gb_sum(a, b))
        return _gb_sum(a, b)
    if op == "product":
        if a._mono is not None and b._mono is not None:
            return _dual(Ideal.from_monomials(ring, mono.mono_product(a._mono, b._mono)),
                         lambda: _gb_product(a, b))
        return _gb_product(a, b)
    raise ValueError(f"unknown op {op!r}")


def _gb_sum(a: Ideal, b: Ideal) -> Ideal:
    return Ideal(a.ring, minimal_generators(a.ring, list(a.gens) + list(b.gens)), check=False)


def _gb_product(a: Ideal, b: Ideal) -> Ideal:
    prods = [f * g for f in a.gens for g in b.gens]
    return Ideal(a.ring, minimal_generators(a.ring, prods), check=False)


def _dual(fast: Ideal, slow) -> Ideal:
    if CHECKS["dual_path"]:
        CHECK_STATS["dual_path"] += 1
        other = slow()
        if not (fast.issubset(other) and other.issubset(fast)):
            raise VerificationFailure(f"monomial fast path disagrees: {fast} vs {other}")
    return fast


def ideal_power(a: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("negative power")
    ring = a.ring
    if n == 0:
        return Ideal.unit(ring)
    if a._mono is not None:
        return _dual(Ideal.from_monomials(ring, mono.mono_power(a._mono, n, ring.nvars)),
                     lambda: _gb_power(a, n))
    return _gb_power(a, n)


def _gb_power(a: Ideal, n: int) -> Ideal:
    result = a
    for _ in range(n - 1):
        result = _gb_product(result, a)
    return result


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient f/g, which must be exact."""
    ring = f.ring
    q = ring.zero()
    r = f
    lg = g.leading_monomial()
    cg = g.leading_coefficient()
    while not r.is_zero():
        lr = r.leading_monomial()
        u = tuple(a - b for a, b in zip(lr, lg))
        if any(x < 0 for x in u):
            raise ValueError(f"{g} does not divide {f}")
        c = r.leading_coefficient()
        c = c * pow(cg, -1, ring.characteristic) % ring.characteristic if ring.characteristic else c / cg
        t = ring.monomial(u, c)
        q = q + t
        r = r - t * g
    return q


def _elimination_intersect(a: Ideal, b: Ideal) -> Ideal:
    ring = a.ring
    if a.is_zero() or b.is_zero():
        return Ideal.zero(ring)
    polys = []
    for f in a.gens:
        polys.append({(1,) + e: c for e, c in f.terms.items()})
    for g in b.gens:
        d = {}
        for e, c in g.terms.items():
            d[(0,) + e] = c
            d[(1,) + e] = -c
        polys.append(d)
    G = gb.buchberger(polys, ("elim", 1), ring.characteristic)
    if CHECKS["buchberger"]:
        CHECK_STATS["buchberger"] += 1
        if not gb.check_buchberger_criterion(G, ("elim", 1), ring.characteristic):
            raise VerificationFailure("Buchberger criterion fails in elimination")
    keep = [g for g in G if all(e[0] == 0 for e in g)]
    gens = [Polynomial(ring, {e[1:]: c for e, c in g.items()}) for g in keep]
    return Ideal(ring, minimal_generators(ring, gens), check=False)


def intersect(a: Ideal, b: Ideal) -> Ideal:
    _same(a, b)
    ring = a.ring
    if a._mono is not None and b._mono is not None:
        return _dual(Ideal.from_monomials(ring, mono.mono_intersect(a._mono, b._mono)),
                     lambda: _elimination_intersect(a, b))
    return _elimination_intersect(a, b)


def _gb_colon_element(I: Ideal, g: Polynomial) -> Ideal:
    ring = I.ring
    if I.contains(g):
        return Ideal.unit(ring)
    inter = _elimination_intersect(I, Ideal(ring, [g], check=False))
    return Ideal(ring, minimal_generators(ring, [divide_exact(h, g) for h in inter.gens]), check=False)


def _gb_colon(I: Ideal, J: Ideal) -> Ideal:
    ring = I.ring
    result = None
    for g in J.gens:
        c = _gb_colon_element(I, g)
        result = c if result is None else _elimination_intersect(result, c)
    return result if result is not None else Ideal.unit(ring)


def colon(I: Ideal, J: Ideal) -> Ideal:
    """I : J; the colon by the zero ideal is the whole ring."""
    _same(I, J)
    ring = I.ring
    if J.is_zero():
        return Ideal.unit(ring)
    if I._mono is not None and J._mono is not None:
        return _dual(Ideal.from_monomials(ring, mono.mono_colon(I._mono, J._mono, ring.nvars)),
                     lambda: _gb_colon(I, J))
    return _gb_colon(I, J)


def saturation(I: Ideal, J: Ideal) -> Ideal:
    """I : J^infinity by iterating colons until the chain stabilizes."""
    _same(I, J)
    K = I
    while True:
        K2 = colon(K, J)
        if K2.issubset(K):
            return K
        K = K2


def dimension(I: Ideal) -> int:
    """Krull dimension of A/I."""
    if I._dim is not None:
        return I._dim
    n = I.ring.nvars
    if I._mono is not None:
        d = mono.mono_dimension(I._mono, n)
        if CHECKS["dual_path"]:
            CHECK_STATS["dual_path"] += 1
            if mono.independent_sets_dimension(I._mono, n) != d:
                raise VerificationFailure(f"dimension paths disagree for {I}")
    else:
        st = I.staircase()
        d = mono.independent_sets_dimension(st, n)
        if CHECKS["dual_path"]:
            CHECK_STATS["dual_path"] += 1
            if mono.mono_dimension(st, n) != d:
                raise VerificationFailure(f"dimension paths disagree for {I}")
    I._dim = d
    return d


def radical_membership(f: Polynomial, I: Ideal) -> bool:
    """Whether f lies in the radical of I (Rabinowitsch: 1 in (I, 1 - t*f))."""
    if f.ring != I.ring:
        raise RingMismatch(f"{f.ring} vs {I.ring}")
    if I.contains(f):
        return True
    if I.is_unit():
        return True
    if f.is_constant():
        return False
    if I._mono is not None and f.is_monomial():
        e = f.leading_monomial()
        return any(all(b == 0 or a > 0 for a, b in zip(e, g)) for g in I._mono)
    d = homogeneous_degree(f)
    if d and dimension(I) == 0:
        # homogeneous m-primary ideal: its radical is the irrelevant ideal
        return True
    polys = [{(0,) + e: c for e, c in g.terms.items()} for g in I.gens]
    rab = {(0,) * (I.ring.nvars + 1): 1}
    for e, c in f.terms.items():
        rab[(1,) + e] = -c
    polys.append(rab)
    G = gb.buchberger(polys, "grevlex", I.ring.characteristic)
    return len(G) == 1 and not any(next(iter(G[0])))


@dataclass(frozen=True)
class IdealFamily:
    """An m-primary ideal J together with ideals I_1..I_d over one ring."""

    J: Ideal
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        for I in self.members:
            _same(self.J, I)
        if dimension(self.J) != 0:
            raise ValueError("J is not m-primary")

    @property
    def ring(self) -> PolyRing:
        return self.J.ring

    @property
    def d(self) -> int:
        return len(self.members)

    def ideal(self, i: int) -> Ideal:
        """Index 0 is J, i >= 1 is I_i."""
        return self.J if i == 0 else self.members[i - 1]

    def product(self) -> Ideal:
        """I = I_1 * ... * I_d."""
        ring = self.ring
        out = Ideal.unit(ring)
        for I in self.members:
            out = ideal_combine(out, I, "product")
        return out


class PowerCache:
    """Memoized products J^n0 * I_1^n1 * ... * I_d^nd keyed by exponent tuple."""

    def __init__(self, fam: IdealFamily):
        self.fam = fam
        self.powers: dict = {}
        self.products: dict = {}

    def power(self, i: int, n: int) -> Ideal:
        k = (i, n)
        P = self.powers.get(k)
        if P is None:
            if n == 0:
                P = Ideal.unit(self.fam.ring)
            elif n == 1:
                P = self.fam.ideal(i)
            else:
                P = ideal_combine(self.power(i, n - 1), self.fam.ideal(i), "product")
            self.powers[k] = P
        return P

    def product(self, exps: tuple) -> Ideal:
        """``exps = (n0, n1, ..., nd)``."""
        exps = tuple(exps)
        P = self.products.get(exps)
        if P is None:
            last = max((i for i, a in enumerate(exps) if a), default=None)
            if last is None:
                P = Ideal.unit(self.fam.ring)
            else:
                head = exps[:last] + (0,) * (len(exps) - last)
                base = self.product(head) if any(head) else None
                P = self.power(last, exps[last]) if base is None else ideal_combine(base, self.power(last, exps[last]), "product")
            self.products[exps] = P
        return P


def multi_power(fam: IdealFamily, n0: int, n, cache: PowerCache | None = None) -> Ideal:
    """J^n0 * I_1^n1 * ... * I_d^nd."""
    n = tuple(n)
    if len(n) != fam.d:
        raise ValueError(f"expected {fam.d} exponents, got {len(n)}")
    if cache is None:
        cache = PowerCache(fam)
    return cache.product((n0,) + n)
