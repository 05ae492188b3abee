"""Buchberger's algorithm on raw term dictionaries.

Polynomials here are plain ``{exponent_tuple: coefficient}`` dicts. Over Q the
engine works fraction-free on primitive integer polynomials; over F_p on monic
residue polynomials. The public entry points convert to and from ``Fraction``
coefficients.

Pair handling follows Gebauer-Moeller; pairs are selected by sugar, ties broken
by the monomial order of the lcm. For homogeneous input a degree bound may be
given, which yields a basis that is correct in all degrees up to the bound.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd
from operator import add, le, sub

from .poly import order_key

STATS = {"bases": 0, "spairs": 0, "zero_reductions": 0, "criterion_checks": 0}


class KeyCache(dict):
    """Memoized monomial-order keys; ``neg`` holds the negated keys for min-heaps."""

    def __init__(self, key):
        super().__init__()
        self.keyfn = key
        self.neg = _NegKeys(self)

    def __missing__(self, e):
        if len(self) > 500_000:
            self.clear()
            self.neg.clear()
        k = self[e] = self.keyfn(e)
        return k


class _NegKeys(dict):
    def __init__(self, parent):
        super().__init__()
        self.parent = parent

    def __missing__(self, e):
        k = self[e] = tuple(-x for x in self.parent[e])
        return k


_KEY_CACHES: dict = {}


def key_cache(order) -> KeyCache:
    kc = _KEY_CACHES.get(order)
    if kc is None:
        kc = _KEY_CACHES[order] = KeyCache(order_key(order))
    return kc


def divides(a, b) -> bool:
    return all(map(le, a, b))


def lcm(a, b):
    return tuple(map(max, a, b))


def coprime(a, b) -> bool:
    return not any(map(min, a, b))


# ---------------------------------------------------------------- coefficient plumbing


def to_integer(terms: dict) -> dict:
    """Clear denominators and remove content; leading sign is left alone."""
    if not terms:
        return {}
    den = 1
    for c in terms.values():
        d = c.denominator if isinstance(c, Fraction) else 1
        den = den * d // gcd(den, d)
    out = {e: int(c * den) for e, c in terms.items()}
    return primitive(out)


def primitive(f: dict) -> dict:
    g = 0
    for c in f.values():
        g = gcd(g, c)
        if g == 1:
            return f
    if g > 1:
        return {e: c // g for e, c in f.items()}
    return f


def to_modp(terms: dict, p: int) -> dict:
    out = {}
    for e, c in terms.items():
        if isinstance(c, Fraction):
            c = c.numerator * pow(c.denominator, -1, p)
        c %= p
        if c:
            out[e] = c
    return out


def make_monic_modp(f: dict, lm, p: int) -> dict:
    inv = pow(f[lm], -1, p)
    if inv == 1:
        return f
    return {e: c * inv % p for e, c in f.items()}


# ---------------------------------------------------------------- basis container


class Basis:
    """A list of polynomials with cached leading monomials, for reduction."""

    def __init__(self, key: KeyCache, p: int):
        self.key = key
        self.p = p
        self.polys: list = []
        self.lms: list = []
        self.degs: list = []
        self._active: list = []  # indices whose lm is not divisible by a later lm
        self._hit: dict = {}
        self._miss: dict = {}

    @property
    def active(self) -> list:
        return self._active

    @active.setter
    def active(self, idx):
        self._active = list(idx)
        self._hit.clear()
        self._miss.clear()

    def lead(self, f):
        return max(f, key=self.key.__getitem__)

    def add(self, f, lm=None) -> int:
        if lm is None:
            lm = self.lead(f)
        if self.p:
            f = make_monic_modp(f, lm, self.p)
        elif f[lm] < 0:
            f = {e: -c for e, c in f.items()}
        self.polys.append(f)
        self.lms.append(lm)
        self.degs.append(sum(lm))
        return len(self.polys) - 1

    def find_divisor(self, m):
        i = self._hit.get(m)
        if i is not None:
            return i
        n = len(self.polys)
        if self._miss.get(m) == n:
            return None
        lms = self.lms
        degs = self.degs
        dm = sum(m)
        for i in self._active:
            if degs[i] <= dm and all(map(le, lms[i], m)):
                self._hit[m] = i
                return i
        self._miss[m] = n
        return None

    # -- reductions

    def top_reduce(self, f: dict) -> dict:
        """Reduce leading terms until the leading term is irreducible (or f is zero)."""
        return self._reduce(f, full=False)[0]

    def full_reduce(self, f: dict):
        """Return ``(remainder, scale)`` with ``scale*f == remainder`` modulo the basis."""
        return self._reduce(f, full=True)

    def _reduce(self, f: dict, full: bool):
        neg = self.key.neg
        p = self.p
        polys, lms = self.polys, self.lms
        f = dict(f)
        heap = [(neg[e], e) for e in f]
        heapq.heapify(heap)
        rem: dict = {}
        scale = 1
        scalings = 0
        push = heapq.heappush
        pop = heapq.heappop
        while heap:
            m = pop(heap)[1]
            c = f.get(m)
            if c is None:
                continue
            i = self.find_divisor(m)
            if i is None:
                if not full:
                    return f, scale
                rem[m] = f.pop(m)
                continue
            g = polys[i]
            lg = lms[i]
            u = tuple(map(sub, m, lg))
            if p:
                for e, v in g.items():
                    e2 = tuple(map(add, e, u))
                    w = f.get(e2)
                    if w is None:
                        f[e2] = (-c * v) % p
                        push(heap, (neg[e2], e2))
                    else:
                        w = (w - c * v) % p
                        if w:
                            f[e2] = w
                        else:
                            del f[e2]
                continue
            a = g[lg]
            h = gcd(a, c)
            if h != 1:
                a //= h
                c //= h
            if a != 1:
                for e in f:
                    f[e] *= a
                if full:
                    for e in rem:
                        rem[e] *= a
                    scale *= a
                scalings += 1
            for e, v in g.items():
                e2 = tuple(map(add, e, u))
                w = f.get(e2)
                if w is None:
                    f[e2] = -c * v
                    push(heap, (neg[e2], e2))
                else:
                    w -= c * v
                    if w:
                        f[e2] = w
                    else:
                        del f[e2]
            if scalings >= 8:
                scalings = 0
                f, rem, scale = _shrink(f, rem, scale if full else 0)
        return (rem if full else f), scale


def _shrink(f, rem, scale):
    g = scale
    for c in rem.values():
        g = gcd(g, c)
        if g == 1:
            return f, rem, scale
    for c in f.values():
        g = gcd(g, c)
        if g == 1:
            return f, rem, scale
    if g <= 1:
        return f, rem, scale
    return ({e: c // g for e, c in f.items()}, {e: c // g for e, c in rem.items()}, scale // g)


def spoly(f, lf, g, lg, p):
    m = lcm(lf, lg)
    uf = tuple(map(sub, m, lf))
    ug = tuple(map(sub, m, lg))
    cf, cg = f[lf], g[lg]
    if p:
        # both monic
        out = {}
        for e, v in f.items():
            out[tuple(map(add, e, uf))] = v
        for e, v in g.items():
            e2 = tuple(map(add, e, ug))
            w = (out.get(e2, 0) - v) % p
            if w:
                out[e2] = w
            else:
                out.pop(e2, None)
        return out
    h = gcd(cf, cg)
    a, b = cg // h, cf // h
    out = {}
    for e, v in f.items():
        out[tuple(map(add, e, uf))] = v * a
    for e, v in g.items():
        e2 = tuple(map(add, e, ug))
        w = out.get(e2, 0) - v * b
        if w:
            out[e2] = w
        else:
            out.pop(e2, None)
    return primitive(out) if out else out


# ---------------------------------------------------------------- Buchberger


def _sugar(f) -> int:
    return max(sum(e) for e in f)


def buchberger(gens, order="grevlex", p: int = 0, degree_bound=None) -> list:
    """Reduced Groebner basis of ``gens`` (term dicts), returned as internal-coefficient dicts.

    Over Q the output polynomials are primitive integer polynomials with positive
    leading coefficient; over F_p they are monic.
    """
    key = key_cache(order)
    B = Basis(key, p)
    conv = (lambda t: to_modp(t, p)) if p else to_integer
    inputs = [conv(dict(g)) for g in gens]
    inputs = [f for f in inputs if f]
    if degree_bound is not None:
        inputs = [f for f in inputs if _sugar(f) <= degree_bound]
    # add inputs smallest first; each is reduced against what is already present
    inputs.sort(key=lambda f: (_sugar(f), key[B.lead(f)]))
    sugars: list = []
    pairs: list = []  # (sugar, lcm_key, i, j)

    def insert(f, s):
        f = B.top_reduce(f)
        if not f:
            return
        lm = B.lead(f)
        if not any(lm):
            # unit ideal
            B.polys.clear(), B.lms.clear(), B.degs.clear(), sugars.clear()
            B.add({lm: 1})
            B.active = [0]
            sugars.append(0)
            pairs.clear()
            raise _UnitIdeal
        h = B.add(f, lm)
        sugars.append(s)
        _update(B, pairs, sugars, h, degree_bound)

    try:
        for f in inputs:
            insert(f, _sugar(f))
        while pairs:
            s, _, i, j = heapq.heappop(pairs)
            STATS["spairs"] += 1
            f = spoly(B.polys[i], B.lms[i], B.polys[j], B.lms[j], p)
            before = len(B.polys)
            insert(f, s)
            if len(B.polys) == before:
                STATS["zero_reductions"] += 1
    except _UnitIdeal:
        pass
    STATS["bases"] += 1
    return _interreduce(B)


class _UnitIdeal(Exception):
    pass


def _update(B: Basis, pairs: list, sugars: list, h: int, degree_bound):
    lms = B.lms
    lh = lms[h]
    key = B.key
    # new pairs (g, h), pruned by the chain and product criteria
    cand = []
    for g in B.active:
        cand.append((g, lcm(lms[g], lh), coprime(lms[g], lh)))
    keep = []
    for idx, (g, L, cp) in enumerate(cand):
        if cp:
            keep.append((g, L, cp))
            continue
        dominated = False
        for jdx, (g2, L2, cp2) in enumerate(cand):
            if jdx == idx:
                continue
            if divides(L2, L) and (L2 != L or jdx < idx):
                dominated = True
                break
        if not dominated:
            keep.append((g, L, cp))
    # a group of equal lcms containing a coprime pair is dropped entirely
    coprime_lcms = {L for (_, L, cp) in keep if cp}
    new = [(g, L) for (g, L, cp) in keep if not cp and L not in coprime_lcms]
    # old pairs that h makes redundant
    kept_old = []
    for t in pairs:
        s, k, i, j = t
        L = lcm(lms[i], lms[j])
        if divides(lh, L) and lcm(lms[i], lh) != L and lcm(lms[j], lh) != L:
            continue
        kept_old.append(t)
    pairs[:] = kept_old
    heapq.heapify(pairs)
    for g, L in new:
        if degree_bound is not None and sum(L) > degree_bound:
            continue
        s = max(sugars[g] + sum(L) - sum(lms[g]), sugars[h] + sum(L) - sum(lh))
        heapq.heappush(pairs, (s, key[L], g, h))
    B.active = [g for g in B.active if not divides(lh, lms[g])] + [h]


def _interreduce(B: Basis) -> list:
    key = B.key
    idx = sorted(B.active, key=lambda i: key[B.lms[i]])
    # minimal: drop any whose lm is divisible by another's lm
    minimal = []
    for i in idx:
        if not any(divides(B.lms[j], B.lms[i]) for j in minimal):
            minimal.append(i)
    red = Basis(key, B.p)
    out = []
    for i in minimal:
        red.polys.append(B.polys[i])
        red.lms.append(B.lms[i])
        red.degs.append(B.degs[i])
    n = len(minimal)
    for k in range(n):
        f = red.polys[k]
        lm = red.lms[k]
        # tail-reduce against all the others
        red.active = [j for j in range(n) if j != k]
        head = {lm: f[lm]}
        tail = {e: c for e, c in f.items() if e != lm}
        rem, scale = red.full_reduce(tail)
        if B.p:
            g = dict(rem)
            g[lm] = head[lm]
        else:
            g = {e: c for e, c in rem.items()}
            g[lm] = head[lm] * scale
            g = primitive(g)
            if g[lm] < 0:
                g = {e: -c for e, c in g.items()}
        out.append(g)
        red.polys[k] = g
    return sorted(out, key=lambda g: key[max(g, key=key.__getitem__)], reverse=True)


# ---------------------------------------------------------------- helpers on finished bases


def make_reducer(G: list, order, p: int) -> Basis:
    key = key_cache(order)
    B = Basis(key, p)
    for g in G:
        B.add(g)
    B.active = list(range(len(G)))
    return B


def reduces_to_zero(f: dict, reducer: Basis) -> bool:
    conv = to_modp(f, reducer.p) if reducer.p else to_integer(f)
    return not reducer.top_reduce(conv)


def normal_form(f: dict, reducer: Basis) -> dict:
    """Exact remainder of ``f`` (field coefficients) modulo a reduced basis."""
    p = reducer.p
    if p:
        rem, _ = reducer.full_reduce(to_modp(f, p))
        return rem
    if not f:
        return {}
    den = 1
    for c in f.values():
        d = c.denominator if isinstance(c, Fraction) else 1
        den = den * d // gcd(den, d)
    fi = {e: int(c * den) for e, c in f.items()}
    rem, scale = reducer.full_reduce(fi)
    return {e: Fraction(c, scale * den) for e, c in rem.items()}


def check_buchberger_criterion(G: list, order, p: int) -> bool:
    """Every S-polynomial of basis pairs reduces to zero modulo the basis."""
    STATS["criterion_checks"] += 1
    R = make_reducer(G, order, p)
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            s = spoly(R.polys[i], R.lms[i], R.polys[j], R.lms[j], p)
            if s and R.top_reduce(s):
                return False
    return True
