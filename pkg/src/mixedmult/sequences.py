"""Joint reductions and weak-(FC) sequences: verification and randomized search.

Axis 0 of every index box belongs to J, axes 1..d to I_1..I_d. A joint
reduction check at index n compares J^n0 I^n + N with
sum over elements x (from source s) of x * J^.. I^(n - e_s) + N.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from . import graded
from . import monomial as mono
from .config import DEFAULT, Config
from .ideal import (
    CHECK_STATS,
    CHECKS,
    Ideal,
    IdealFamily,
    VerificationFailure,
    colon,
    dimension,
    ideal_combine,
    intersect,
    radical_membership,
    saturation,
)
from .length import ModuleSpec
from .poly import Polynomial, homogeneous_degree


class NotInSource(ValueError):
    pass


class NotEquigenerated(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    pass


class PreconditionNotMet(ValueError):
    pass


@dataclass(frozen=True)
class JointReductionCandidate:
    """Ordered elements, each tagged with its source: 0 for J, i for I_i."""

    elements: tuple
    certificate: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple((p, int(s)) for p, s in self.elements))
        for p, s in self.elements:
            if s < 0:
                raise ValueError("source index must be non-negative")

    @property
    def polys(self) -> list:
        return [p for p, _ in self.elements]

    def tally(self, d: int) -> tuple:
        """(k, k0) with k0 + 1 elements from J and k_i from I_i."""
        counts = [0] * (d + 1)
        for _, s in self.elements:
            if s > d:
                raise ValueError(f"source {s} beyond family size {d}")
            counts[s] += 1
        if counts[0] == 0:
            raise ValueError("a candidate needs at least one element from J")
        return tuple(counts[1:]), counts[0] - 1

    def validate(self, fam: IdealFamily):
        for p, s in self.elements:
            if s > fam.d:
                raise NotInSource(f"source {s} beyond family size {fam.d}")
            if p.is_zero() or homogeneous_degree(p) is None:
                raise NotInSource(f"{p} is not a nonzero homogeneous element")
            if not fam.ideal(s).contains(p):
                raise NotInSource(f"{p} is not in its source ideal {_source_name(s)}")

    def __str__(self):
        return ", ".join(f"({p} : {_source_name(s)})" for p, s in self.elements)


def _source_name(s: int) -> str:
    return "J" if s == 0 else f"I{s}"


@dataclass(frozen=True)
class Verdict:
    holds: bool
    window: tuple  # ((lo, hi), ...) per axis
    witness: dict | None = None
    route: str = ""


def _box(window, axes: int) -> tuple:
    if isinstance(window, tuple) and len(window) == 2 and all(isinstance(a, int) for a in window):
        window = (window,) * axes
    window = tuple(tuple(w) for w in window)
    if len(window) != axes:
        raise ValueError(f"window has {len(window)} axes, expected {axes}")
    for lo, hi in window:
        if lo < 0 or hi < lo:
            raise ValueError(f"malformed window range {(lo, hi)}")
    return window


def _q(fam: IdealFamily, M: ModuleSpec) -> int:
    S = saturation(M.N, fam.product())
    return dimension(S) if not S.is_unit() else dimension(M.N)


def default_window(fam: IdealFamily, M: ModuleSpec, config: Config = DEFAULT) -> tuple:
    hi = config.jr_hi if config.jr_hi is not None else _q(fam, M) + 3
    return ((config.jr_lo, hi),) * (fam.d + 1)


def certification_window(fam: IdealFamily, M: ModuleSpec, config: Config = DEFAULT) -> tuple:
    """Box away from the small indices where reduction numbers make equalities fail."""
    lo = config.certify_lo if config.certify_lo is not None else _q(fam, M) + 1
    return ((lo, lo + config.certify_width),) * (fam.d + 1)


def _indices(window):
    pts = list(product(*(range(lo, hi + 1) for lo, hi in window)))
    pts.sort(key=lambda p: (sum(p), p))
    return pts


class _Axes:
    """Ideals per axis with a power cache, independent of any m-primary assumption."""

    def __init__(self, ideals):
        self.ideals = list(ideals)
        self.ring = self.ideals[0].ring
        self.cache: dict = {}

    def product(self, exps) -> Ideal:
        exps = tuple(exps)
        P = self.cache.get(exps)
        if P is None:
            last = max((i for i, a in enumerate(exps) if a), default=None)
            if last is None:
                P = Ideal.unit(self.ring)
            else:
                step = list(exps)
                step[last] -= 1
                P = ideal_combine(self.product(step), self.ideals[last], "product")
            self.cache[exps] = P
        return P


def _axes_for(fam: IdealFamily) -> _Axes:
    return _Axes([fam.ideal(i) for i in range(fam.d + 1)])


def _shift(n, s: int):
    m = list(n)
    m[s] -= 1
    return tuple(m)


def _check_index(axes: _Axes, elements, N: Ideal, n):
    """None if the ideal equality holds at index n, else a generator outside the right side."""
    if any(n[s] < 1 for _, s in elements):
        raise ValueError(f"index {n} has a zero entry on an axis that carries elements")
    P = axes.product(n)
    lhs_gens = [g for g in P.gens if not N.contains(g)]
    if not lhs_gens:
        return None
    shifted = {s: axes.product(_shift(n, s)) for _, s in elements}
    if not (P.is_monomial and N.is_monomial and all(Q.is_monomial for Q in shifted.values())):
        return _check_index_gb(P, elements, shifted, N, lhs_gens)
    g = _check_index_linear(P, elements, shifted, N, lhs_gens, n)
    if CHECKS["dual_path"]:
        CHECK_STATS["dual_path"] += 1
        if (g is None) != (_check_index_gb(P, elements, shifted, N, lhs_gens) is None):
            raise VerificationFailure(f"degree-wise and Groebner checks disagree at index {n}")
    return g


def _check_index_linear(P, elements, shifted, N, lhs_gens, n):
    nv = P.ring.nvars
    lhs = mono.mono_sum(P.monomial_generators, N.monomial_generators)
    for e in sorted({g.degree() for g in lhs_gens}):
        target = len(graded.monomial_piece(lhs, nv, e))
        rows = [{u: 1} for u in graded.monomial_piece(N.monomial_generators, nv, e)]
        for x, s in elements:
            dx = x.degree()
            xt = dict(x.terms)
            for u in graded.monomial_piece(shifted[s].monomial_generators, nv, e - dx):
                rows.append({tuple(a + b for a, b in zip(t, u)): c for t, c in xt.items()})
        for r in rows:
            for t in r:
                if not mono.contains(lhs, t):
                    raise VerificationFailure(f"right-hand side escapes the left at index {n}")
        # over F_p the rank can only drop, so full rank there is full rank over Q
        if graded.rank_modp(rows, stop=target) >= target:
            continue
        base = graded.rank_exact(rows)
        if base >= target:
            continue
        for g in lhs_gens:
            if g.degree() == e and graded.rank_exact(rows + [dict(g.terms)]) > base:
                return g
        raise VerificationFailure(f"rank deficit at index {n} without a witness")
    return None


def _check_index_gb(P, elements, shifted, N, lhs_gens):
    ring = P.ring
    gens = list(N.gens)
    for x, s in elements:
        gens.extend(x * g for g in shifted[s].gens)
    R = Ideal(ring, gens, check=False)
    if not R.issubset(P + N):
        raise VerificationFailure("right-hand side escapes the left")
    for g in lhs_gens:
        if not R.contains(g):
            return g
    return None


def _verify_equalities(axes: _Axes, elements, N: Ideal, window) -> Verdict:
    for n in _indices(window):
        g = _check_index(axes, elements, N, n)
        if g is not None:
            return Verdict(False, window, {"index": n, "generator": g}, "window")
    return Verdict(True, window, None, "window")


def verify_joint_reduction(c: JointReductionCandidate, fam: IdealFamily, M: ModuleSpec,
                           window=None, config: Config = DEFAULT) -> Verdict:
    """Check J^n0 I^n M = sum_i (x_i) J.. I^(n - e_i) M at every index of the window."""
    c.validate(fam)
    window = _box(window, fam.d + 1) if window is not None else default_window(fam, M, config)
    used = {s for _, s in c.elements}
    for s in used:
        if window[s][0] < 1:
            raise ValueError("window must start at 1 on every axis carrying elements")
    return _verify_equalities(_axes_for(fam), c.elements, M.N, window)


def verify_reduction(c, I1: Ideal, M: ModuleSpec, window=(1, 4)) -> Verdict:
    """Whether (c) is a reduction of I1 on M: I1^n M = (c) I1^(n-1) M across the window."""
    elements = [(p, 0) for p in c]
    for p, _ in elements:
        if not I1.contains(p):
            raise NotInSource(f"{p} is not in {I1}")
    window = _box(window, 1)
    if window[0][0] < 1:
        raise ValueError("window must start at 1")
    return _verify_equalities(_Axes([I1]), elements, M.N, window)


# ---------------------------------------------------------------- weak-(FC)


def verify_weak_fc_element(x: Polynomial, i: int, fam: IdealFamily, M: ModuleSpec,
                           window=None, config: Config = DEFAULT) -> Verdict:
    """FC1: ((x)+N) meets (J^n0 I^n + N) in x J.. I^(n-e_i) + N; FC2: N:x inside N:I^inf."""
    if not fam.ideal(i).contains(x):
        raise NotInSource(f"{x} is not in {_source_name(i)}")
    window = _box(window, fam.d + 1) if window is not None else default_window(fam, M, config)
    ring = fam.ring
    N = M.N
    axes = _axes_for(fam)
    X = Ideal(ring, [x])
    xN = X + N
    for n in _indices(window):
        if n[i] < 1:
            continue
        V = axes.product(n) + N
        left = intersect(xN, V)
        right = Ideal(ring, [x * g for g in axes.product(_shift(n, i)).gens], check=False) + N
        if not right.issubset(left):
            raise VerificationFailure(f"x I^(n-e_i) escapes the intersection at {n}")
        for g in left.gens:
            if not right.contains(g):
                return Verdict(False, window, {"condition": "FC1", "index": n, "generator": g}, "fc")
    torsion = saturation(N, fam.product())
    for g in colon(N, X).gens:
        if not torsion.contains(g):
            return Verdict(False, window, {"condition": "FC2", "generator": g}, "fc")
    return Verdict(True, window, None, "fc")


def verify_weak_fc_sequence(xs: JointReductionCandidate, fam: IdealFamily, M: ModuleSpec,
                            window=None, config: Config = DEFAULT) -> Verdict:
    """Check element j on M/(x_1..x_{j-1})M for each j in order."""
    window = _box(window, fam.d + 1) if window is not None else default_window(fam, M, config)
    N = M.N
    for j, (x, s) in enumerate(xs.elements):
        if N.is_unit():
            break
        v = verify_weak_fc_element(x, s, fam, ModuleSpec(N), window, config)
        if not v.holds:
            return Verdict(False, window, dict(v.witness, position=j), "fc")
        N = N + Ideal(fam.ring, [x])
    return Verdict(True, window, None, "fc")


def residual_criterion(c: JointReductionCandidate, fam: IdealFamily, M: ModuleSpec,
                       fc_verdict: Verdict | None = None, config: Config = DEFAULT) -> bool:
    """For a weak-(FC) sequence: J I kills M/(c)M up to nilpotents, i.e. J I lies in rad(N + (c))."""
    if fc_verdict is None:
        fc_verdict = verify_weak_fc_sequence(c, fam, M, config=config)
    if not fc_verdict.holds:
        raise PreconditionNotMet("candidate is not a verified weak-(FC) sequence")
    U = M.N + Ideal(fam.ring, c.polys)
    if U.is_unit() or dimension(U) == 0:
        return True
    JI = ideal_combine(fam.J, fam.product(), "product")
    return all(radical_membership(g, U) for g in JI.gens)


# ---------------------------------------------------------------- randomized search


def random_element(I: Ideal, rng: random.Random, coeff_range: int) -> Polynomial:
    pool = [c for c in range(-coeff_range, coeff_range + 1) if c]
    f = I.ring.zero()
    for g in I.gens:
        f = f + g.scale(rng.choice(pool))
    return f


def construct_candidate(fam: IdealFamily, k, k0: int, M: ModuleSpec, seed: int | None = None,
                        budget: int | None = None, config: Config = DEFAULT,
                        certify: str = "window") -> JointReductionCandidate:
    """Search for a joint reduction of type (k, k0 + 1) among random combinations of generators.

    ``certify`` is ``"window"`` (index-box equality check) or ``"fc"`` (weak-(FC)
    sequence plus the residual criterion).
    """
    k = tuple(k)
    if len(k) != fam.d or k0 < 0 or any(a < 0 for a in k):
        raise ValueError(f"bad type {(k, k0 + 1)} for a family of {fam.d} ideals")
    counts = (k0 + 1,) + k
    for s, cnt in enumerate(counts):
        if cnt and not fam.ideal(s).is_equigenerated():
            raise NotEquigenerated(f"{_source_name(s)} = {fam.ideal(s)} is not equigenerated")
    seed = config.seed if seed is None else seed
    budget = config.budget if budget is None else budget
    rng = random.Random(seed)
    window = certification_window(fam, M, config)
    for attempt in range(budget):
        elements = []
        for s in list(range(1, fam.d + 1)) + [0]:
            for _ in range(counts[s]):
                elements.append((random_element(fam.ideal(s), rng, config.coeff_range), s))
        c = JointReductionCandidate(tuple(elements))
        if certify == "fc":
            v = verify_weak_fc_sequence(c, fam, M, window, config)
            if v.holds and residual_criterion(c, fam, M, v, config):
                return JointReductionCandidate(c.elements, "weak-fc+residual")
        elif certify == "window":
            if verify_joint_reduction(c, fam, M, window, config).holds:
                lo, hi = window[0]
                return JointReductionCandidate(c.elements, f"window[{lo},{hi}]^{fam.d + 1}")
        else:
            raise ValueError(f"unknown certificate {certify!r}")
    raise BudgetExhausted(f"no verified candidate in {budget} attempts")
