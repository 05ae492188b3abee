"""Monomial ideals as sets of exponent vectors.

A monomial ideal is represented by its minimal generators, a tuple of exponent
tuples sorted by (degree, exponents). The unit ideal is ``((0,...,0),)`` and the
zero ideal is ``()``.
"""

from __future__ import annotations

from itertools import combinations

from .groebner import divides, lcm


def _sort(gens):
    return tuple(sorted(gens, key=lambda e: (sum(e), e)))


def minimalize(gens) -> tuple:
    """Drop every generator divisible by another one."""
    gens = _sort(set(gens))
    out = []
    for g in gens:
        dg = sum(g)
        if not any(sum(h) <= dg and divides(h, g) for h in out):
            out.append(g)
    return tuple(out)


def contains(gens, m) -> bool:
    return any(divides(g, m) for g in gens)


def mono_sum(a, b) -> tuple:
    return minimalize(tuple(a) + tuple(b))


def mono_product(a, b) -> tuple:
    prods = {tuple(x + y for x, y in zip(g, h)) for g in a for h in b}
    degs = {sum(e) for e in prods}
    if len(degs) <= 1:
        # equal-degree distinct monomials never divide one another
        return _sort(prods)
    return minimalize(prods)


def mono_power(a, n: int, nvars: int) -> tuple:
    result = ((0,) * nvars,)
    for _ in range(n):
        result = mono_product(result, a)
    return result


def mono_colon_monomial(a, m) -> tuple:
    return minimalize(tuple(max(x - y, 0) for x, y in zip(g, m)) for g in a)


def mono_intersect(a, b) -> tuple:
    return minimalize(lcm(g, h) for g in a for h in b)


def mono_colon(a, b, nvars: int) -> tuple:
    if not b:
        return ((0,) * nvars,)
    result = None
    for m in b:
        c = mono_colon_monomial(a, m)
        result = c if result is None else mono_intersect(result, c)
    return result


def mono_saturation(a, b, nvars: int) -> tuple:
    cur = minimalize(a)
    while True:
        nxt = mono_colon(cur, b, nvars)
        if nxt == cur:
            return cur
        cur = nxt


def minimal_primes(gens, nvars: int) -> list:
    """Minimal primes of a monomial ideal, each as a frozenset of variable indices.

    A monomial prime (x_S) contains the ideal iff S meets the support of every
    generator; the minimal primes are the minimal such hitting sets.
    """
    gens = minimalize(gens)
    if not gens:
        return [frozenset()]
    if any(not any(g) for g in gens):
        return []
    supports = sorted({frozenset(i for i, a in enumerate(g) if a) for g in gens}, key=len)
    # drop supports containing another support: hitting the smaller one suffices
    reduced = []
    for s in supports:
        if not any(t <= s for t in reduced):
            reduced.append(s)
    covers = _hitting_sets(tuple(reduced))
    covers = sorted(set(covers), key=len)
    minimal = []
    for c in covers:
        if not any(m <= c for m in minimal):
            minimal.append(c)
    return minimal


def _hitting_sets(supports: tuple) -> list:
    if not supports:
        return [frozenset()]
    first = supports[0]
    out = []
    for v in sorted(first):
        rest = tuple(s for s in supports if v not in s)
        for h in _hitting_sets(rest):
            out.append(h | {v})
    return out


def mono_dimension(gens, nvars: int) -> int:
    primes = minimal_primes(gens, nvars)
    if not primes:
        raise ValueError("empty module: unit ideal has no dimension")
    return nvars - min(len(p) for p in primes)


# ---------------------------------------------------------------- staircase counting


def standard_monomials_by_degree(lts, nvars: int, t_max: int):
    """Yield, for t = 0..t_max, the set of degree-t monomials outside the ideal generated by ``lts``.

    A monomial is outside the ideal iff it is not itself a generator and every
    monomial obtained by lowering one exponent is outside the ideal.
    """
    gens = set(lts)
    zero = (0,) * nvars
    cur = set() if zero in gens else {zero}
    yield cur
    for _ in range(t_max):
        nxt = set()
        for s in cur:
            for i in range(nvars):
                e = s[:i] + (s[i] + 1,) + s[i + 1 :]
                if e in nxt or e in gens:
                    continue
                ok = True
                for j in range(nvars):
                    if e[j] and j != i:
                        if e[:j] + (e[j] - 1,) + e[j + 1 :] not in cur:
                            ok = False
                            break
                if ok:
                    nxt.add(e)
        cur = nxt
        yield cur


def hilbert_values(lts, nvars: int, t_max: int) -> list:
    return [len(s) for s in standard_monomials_by_degree(lts, nvars, t_max)]


def independent_sets_dimension(lts, nvars: int) -> int:
    """Krull dimension of k[x]/in(I): largest variable set supporting no leading term."""
    lts = minimalize(lts)
    if any(not any(g) for g in lts):
        raise ValueError("empty module: unit ideal has no dimension")
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in lts]
    for size in range(nvars, -1, -1):
        for S in combinations(range(nvars), size):
            s = frozenset(S)
            if not any(sup <= s for sup in supports):
                return size
    return 0
