"""Hilbert functions, lengths and Hilbert-Samuel multiplicities of cyclic modules A/N."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from operator import add

from . import monomial as mono
from .config import DEFAULT, Config
from .graded import monomials_of_degree
from .groebner import to_integer, to_modp
from .ideal import (
    Ideal,
    LinearSpan,
    dimension,
    ideal_combine,
    saturation,
)
from .poly import PolyRing, Polynomial, homogeneous_degree


class NotContained(ValueError):
    pass


class InfiniteLength(ValueError):
    pass


class DegreeCapExceeded(RuntimeError):
    pass


class NotStabilized(RuntimeError):
    pass


class ModuleVanishes(ValueError):
    pass


class NotIdealOfDefinition(ValueError):
    pass


@dataclass(frozen=True)
class ModuleSpec:
    """The cyclic module M = A/N."""

    N: Ideal

    def __post_init__(self):
        if self.N.is_unit():
            raise ModuleVanishes("N is the unit ideal, so M = 0")

    @classmethod
    def free(cls, ring: PolyRing) -> "ModuleSpec":
        return cls(Ideal.zero(ring))

    @property
    def ring(self) -> PolyRing:
        return self.N.ring

    def dim(self) -> int:
        return dimension(self.N)

    def quotient(self, elements) -> "ModuleSpec":
        """M/(elements)M."""
        elements = list(elements)
        if not elements:
            return self
        return ModuleSpec(self.N + Ideal(self.ring, elements))

    def __repr__(self):
        return f"ModuleSpec(A/{self.N})"


# ---------------------------------------------------------------- Hilbert functions


def hilbert_function(U: Ideal, t_max: int) -> list:
    """dim_k (A/U)_t for t = 0..t_max, by counting standard monomials."""
    n = U.ring.nvars
    if U.is_unit():
        return [0] * (t_max + 1)
    st = U.staircase()
    return [len(s) for s in mono.standard_monomials_by_degree(st, n, t_max)]


def hilbert_function_linear_algebra(U: Ideal, t_max: int) -> list:
    """The same values by degree-wise rank of monomial multiples of the generators."""
    ring = U.ring
    n = ring.nvars
    out = []
    for t in range(t_max + 1):
        span = LinearSpan(ring)
        for g in U.gens:
            dg = g.degree()
            if dg > t:
                continue
            for e in monomials_of_degree(n, t - dg):
                span.add(dict(g.mul_monomial(e).terms))
        out.append(comb(t + n - 1, n - 1) - span.rank)
    return out


def quotient_length(U: Ideal, V: Ideal, *, annihilator: Ideal | None = None, cap: int = 60) -> int:
    """Length of U/V for V inside U with U/V of finite length.

    Finite length is certified either by an m-primary ``annihilator`` K with
    K*U inside V, or by U inside V : m^infinity.
    """
    if not V.issubset(U):
        raise NotContained(f"{V} is not contained in {U}")
    ring = U.ring
    if annihilator is not None:
        if dimension(annihilator) != 0:
            raise InfiniteLength("annihilator is not m-primary")
        if not all(V.contains(a * u) for a in annihilator.gens for u in U.gens):
            raise InfiniteLength("annihilator does not kill U/V")
    else:
        sat = saturation(V, Ideal.maximal(ring))
        if not U.issubset(sat):
            raise InfiniteLength(f"{U}/{V} has infinite length")
    if U.is_unit() and V.is_unit():
        return 0
    D = U.max_degree()
    n = ring.nvars
    hv = mono.standard_monomials_by_degree(V.staircase(), n, cap) if not V.is_unit() else None
    hu = mono.standard_monomials_by_degree(U.staircase(), n, cap) if not U.is_unit() else None
    total = 0
    for t in range(cap + 1):
        a = len(next(hv)) if hv is not None else 0
        b = len(next(hu)) if hu is not None else 0
        total += a - b
        if t >= D and a == b:
            return total
    raise DegreeCapExceeded(f"quotient length scan passed degree {cap}")


def length_artinian(U: Ideal, *, degree_bound: int | None = None, cap: int = 200) -> int:
    """Length of A/U for an m-primary U.

    With ``degree_bound = D`` the caller guarantees m^D inside U, so only a
    Groebner basis truncated at degree D - 1 is needed.
    """
    n = U.ring.nvars
    if degree_bound is not None:
        st = U.truncated_staircase(degree_bound - 1)
        return sum(len(s) for s in mono.standard_monomials_by_degree(st, n, degree_bound - 1))
    if U.is_unit():
        return 0
    if dimension(U) != 0:
        raise InfiniteLength(f"A/{U} has positive dimension")
    total = 0
    for t, s in enumerate(mono.standard_monomials_by_degree(U.staircase(), n, cap)):
        if not s:
            return total
        total += len(s)
    raise DegreeCapExceeded(f"length scan passed degree {cap}")


def socle_bound(U: Ideal, cap: int = 200) -> int:
    """Smallest c with m^c inside U (U m-primary)."""
    n = U.ring.nvars
    for t, s in enumerate(mono.standard_monomials_by_degree(U.staircase(), n, cap)):
        if not s:
            return t
    raise DegreeCapExceeded(f"socle scan passed degree {cap}")


# ---------------------------------------------------------------- modules and parameters


def saturate_module(M: ModuleSpec, I: Ideal):
    """M-bar = A/(N : I^infinity) and its dimension q."""
    S = saturation(M.N, I)
    if S.is_unit():
        raise ModuleVanishes("N : I^infinity is the unit ideal (I lies in the radical of Ann M)")
    Mbar = ModuleSpec(S)
    return Mbar, dimension(S)


def is_ideal_of_definition(X: Ideal, M: ModuleSpec) -> bool:
    U = M.N + X
    return U.is_unit() or dimension(U) == 0


def _check_parameters(ys, M: ModuleSpec):
    ys = list(ys)
    for y in ys:
        if y.ring != M.ring:
            raise ValueError("element over the wrong ring")
        d = homogeneous_degree(y) if not y.is_zero() else 1
        if d is None:
            raise ValueError(f"{y} is not homogeneous")
        if d == 0:
            raise ValueError(f"{y} is a unit, not an element of m")
    return ys


def is_system_of_parameters(ys, M: ModuleSpec) -> bool:
    ys = _check_parameters(ys, M)
    return len(ys) == M.dim() and is_ideal_of_definition(Ideal(M.ring, ys), M)


def _power_generators(Q: Ideal, t: int) -> list:
    """All t-fold products of generators of Q (not minimalized), as polynomials."""
    ring = Q.ring
    p = ring.characteristic
    gens = [to_modp(dict(g.terms), p) if p else to_integer(dict(g.terms)) for g in Q.gens]
    level = {(): {(0,) * ring.nvars: 1}}
    for _ in range(t):
        nxt = {}
        for combo, f in level.items():
            start = combo[-1] if combo else 0
            for i in range(start, len(gens)):
                nxt[combo + (i,)] = _mul(f, gens[i], p)
        level = nxt
    wrap = (lambda c: c) if p else Fraction
    return [Polynomial._raw(ring, {e: wrap(c) for e, c in f.items()}) for f in level.values() if f]


def _mul(f: dict, g: dict, p: int) -> dict:
    out: dict = {}
    for e, a in f.items():
        for u, b in g.items():
            m = tuple(map(add, e, u))
            out[m] = out.get(m, 0) + a * b
    if p:
        return {m: c % p for m, c in out.items() if c % p}
    return {m: c for m, c in out.items() if c}


def samuel_function(Q: Ideal, M: ModuleSpec, t: int, c: int | None = None) -> int:
    """l(M / Q^t M) = l(A/(N + Q^t))."""
    ring = Q.ring
    if t == 0:
        return 0
    if Q.is_monomial and M.N.is_monomial:
        U = M.N + Ideal.from_monomials(ring, mono.mono_power(Q.monomial_generators, t, ring.nvars))
        return length_artinian(U)
    U = Ideal(ring, list(M.N.gens) + _power_generators(Q, t), check=False)
    if c is None:
        return length_artinian(U)
    return length_artinian(U, degree_bound=c * t)


def hilbert_samuel_multiplicity(Q: Ideal, M: ModuleSpec, config: Config = DEFAULT) -> int:
    """e(Q; M) as the stabilized dim(M)-th difference of the Samuel function."""
    if not is_ideal_of_definition(Q, M):
        raise NotIdealOfDefinition(f"{Q} is not an ideal of definition of {M}")
    qd = M.dim()
    if qd == 0:
        return length_artinian(M.N)
    # m^c lies in N + Q, hence m^(c t) lies in N + Q^t
    c = socle_bound(M.N + Q)
    t0 = config.hs_t0 if config.hs_t0 is not None else qd + 2
    w = config.hs_window
    while True:
        top = t0 + qd + w
        if top > config.degree_cap:
            raise NotStabilized(f"Samuel function did not stabilize below power {config.degree_cap}")
        vals = [samuel_function(Q, M, t, c) for t in range(t0, top + 1)]
        diffs = vals
        for _ in range(qd):
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        if len(set(diffs)) == 1:
            return diffs[0]
        t0 *= 2


def multiplicity_symbol(ys, M: ModuleSpec, config: Config = DEFAULT) -> int:
    """e(y; M): zero unless y is a system of parameters, where it is e((y); M)."""
    ys = _check_parameters(ys, M)
    if not ys:
        return length_artinian(M.N)
    Y = Ideal(M.ring, ys)
    if not is_ideal_of_definition(Y, M):
        raise NotIdealOfDefinition(f"{ys} is not a multiplicity system of {M}")
    if len(ys) != M.dim():
        return 0
    return hilbert_samuel_multiplicity(Y, M, config)
