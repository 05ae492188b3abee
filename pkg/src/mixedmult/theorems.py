"""Executable checks relating mixed multiplicities to multiplicities of joint reductions."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb

from . import monomial as mono
from .graded import monomials_of_degree
from .config import DEFAULT, Config
from .ideal import Ideal, IdealFamily, PowerCache, VerificationFailure, dimension, ideal_combine
from .length import (
    ModuleSpec,
    hilbert_samuel_multiplicity,
    is_ideal_of_definition,
    is_system_of_parameters,
    multiplicity_symbol,
)
from .mixed import (
    DegenerateContext,
    MixedContext,
    MultiType,
    bhattacharya_value,
    make_context,
    mixed_multiplicity,
    mixed_multiplicity_report,
    top_types,
)
from .poly import PolyRing, Polynomial
from .sequences import (
    JointReductionCandidate,
    PreconditionNotMet,
    certification_window,
    construct_candidate,
    residual_criterion,
    verify_joint_reduction,
    verify_weak_fc_element,
    verify_weak_fc_sequence,
)


@dataclass
class Instance:
    ring: PolyRing
    fam: IdealFamily
    M: ModuleSpec
    k: tuple
    k0: int
    candidate: JointReductionCandidate | None = None
    seed: int = 0
    label: str = ""

    @property
    def type(self) -> MultiType:
        return MultiType(self.k0, self.k)


@dataclass
class TheoremReport:
    name: str
    status: str = "verified"  # verified | hypotheses not met | failed
    joint_reduction: bool | None = None
    jr_route: str = ""
    dimension_hypothesis: bool | None = None
    sop: bool | None = None
    mixed: int | None = None
    symbol: int | None = None
    equal: bool | None = None
    candidate: JointReductionCandidate | None = None
    notes: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "joint_reduction": self.joint_reduction,
            "jr_route": self.jr_route,
            "dimension_hypothesis": self.dimension_hypothesis,
            "sop": self.sop,
            "mixed": None if self.mixed is None else str(self.mixed),
            "symbol": None if self.symbol is None else str(self.symbol),
            "equal": self.equal,
            "candidate": None if self.candidate is None else str(self.candidate),
            "notes": {k: str(v) for k, v in self.notes.items()},
        }


def _dim_or_empty(U: Ideal) -> int:
    return -1 if U.is_unit() else dimension(U)


def check_dimension_hypothesis(ctx: MixedContext, k) -> bool:
    """dim M/IM < dim M - |k|."""
    return _dim_or_empty(ctx.M.N + ctx.I) < dimension(ctx.M.N) - sum(k)


def _candidate(inst: Instance, config: Config) -> JointReductionCandidate:
    if inst.candidate is not None:
        return inst.candidate
    return construct_candidate(inst.fam, inst.k, inst.k0, inst.M, seed=inst.seed, config=config)


def verify_theorem_33(inst: Instance, config: Config = DEFAULT, name: str = "theorem") -> TheoremReport:
    rep = TheoremReport(name)
    t0 = time.perf_counter()
    ctx = make_context(inst.fam, inst.M)
    if inst.k0 + sum(inst.k) != ctx.q - 1:
        raise ValueError(f"type total {inst.k0 + sum(inst.k)} differs from q - 1 = {ctx.q - 1}")
    c = _candidate(inst, config)
    rep.candidate = c
    if c.tally(inst.fam.d) != (tuple(inst.k), inst.k0):
        raise ValueError("candidate does not have the instance's type")
    v = verify_joint_reduction(c, inst.fam, inst.M, certification_window(inst.fam, inst.M, config), config)
    rep.joint_reduction = v.holds
    rep.jr_route = "window" + ("+residual" if "residual" in c.certificate else "")
    rep.dimension_hypothesis = check_dimension_hypothesis(ctx, inst.k)
    rep.timings["hypotheses"] = time.perf_counter() - t0
    if not (v.holds and rep.dimension_hypothesis):
        rep.status = "hypotheses not met"
        if not v.holds:
            rep.notes["witness"] = v.witness
        return rep
    rep.sop = is_system_of_parameters(c.polys, inst.M)
    if not rep.sop:
        rep.status = "failed"
        raise VerificationFailure(f"joint reduction {c} is not a system of parameters")
    t1 = time.perf_counter()
    rep.mixed = mixed_multiplicity(ctx, inst.type, config)
    rep.timings["mixed"] = time.perf_counter() - t1
    t2 = time.perf_counter()
    rep.symbol = multiplicity_symbol(c.polys, inst.M, config)
    rep.timings["symbol"] = time.perf_counter() - t2
    rep.equal = rep.mixed == rep.symbol
    rep.status = "verified" if rep.equal else "failed"
    return rep


# ---------------------------------------------------------------- height via monomial primes


def monomial_height(I: Ideal, N: Ideal) -> int:
    """ht((I + N)/N) in A/N for monomial I and N, from minimal primes."""
    n = I.ring.nvars
    top = mono.minimal_primes(mono.mono_sum(I.monomial_generators, N.monomial_generators), n)
    if not top:
        raise ValueError("I + N is the unit ideal")
    bottom = mono.minimal_primes(N.monomial_generators, n)
    return min(max(len(P) - len(Q) for Q in bottom if Q <= P) for P in top)


def verify_corollary_34(inst: Instance, config: Config = DEFAULT, allow_fallback: bool = True) -> TheoremReport:
    I = inst.fam.product()
    N = inst.M.N
    if I.is_monomial and N.is_monomial:
        h = monomial_height(I, N)
        if h <= sum(inst.k):
            rep = TheoremReport("corollary-height", status="hypotheses not met")
            rep.notes.update(route="monomial-height", height=h)
            return rep
        rep = verify_theorem_33(inst, config, "corollary-height")
        rep.notes.update(route="monomial-height", height=h)
        return rep
    if not allow_fallback:
        raise ValueError("height needs monomial input; fallback not permitted")
    rep = verify_theorem_33(inst, config, "corollary-height")
    rep.notes["route"] = "dimension-hypothesis"
    return rep


def verify_corollary_36(inst: Instance, config: Config = DEFAULT, window=None) -> TheoremReport:
    c = _candidate(inst, config)
    window = window if window is not None else certification_window(inst.fam, inst.M, config)
    v = verify_weak_fc_sequence(c, inst.fam, inst.M, window, config)
    if not v.holds:
        raise PreconditionNotMet(f"not a weak-(FC) sequence: {v.witness}")
    if not residual_criterion(c, inst.fam, inst.M, v, config):
        raise VerificationFailure("weak-(FC) sequence of top type is not a joint reduction")
    certified = JointReductionCandidate(c.elements, "weak-fc+residual")
    inst = Instance(inst.ring, inst.fam, inst.M, inst.k, inst.k0, certified, inst.seed, inst.label)
    return verify_theorem_33(inst, config, "corollary-fc")


@dataclass
class LemmaReport:
    ideal_of_definition: bool
    mixed: int
    symbol: int
    dim_bar: int
    k0: int
    holds: bool


def verify_lemma_26iii(c: JointReductionCandidate, fam: IdealFamily, M: ModuleSpec,
                       config: Config = DEFAULT, window=None) -> LemmaReport:
    k, k0 = c.tally(fam.d)
    if any(k):
        raise ValueError("candidate must come entirely from J")
    window = window if window is not None else certification_window(fam, M, config)
    v = verify_joint_reduction(c, fam, M, window, config)
    if not v.holds:
        raise PreconditionNotMet(f"not a joint reduction: {v.witness}")
    ctx = make_context(fam, M)
    iod = is_ideal_of_definition(Ideal(fam.ring, c.polys), ctx.Mbar)
    mixed = mixed_multiplicity(ctx, MultiType(k0, k), config)
    symbol = multiplicity_symbol(c.polys, ctx.Mbar, config)
    holds = iod and mixed == symbol and ctx.q <= k0 + 1 and ((ctx.q == k0 + 1) == (mixed != 0))
    return LemmaReport(iod, mixed, symbol, ctx.q, k0, holds)


# ---------------------------------------------------------------- the counterexample


def remark_35_counterexample(config: Config = DEFAULT) -> dict:
    """x in (x), y in (x, y) on Q[x,y]: a joint reduction whose multiplicity differs from the mixed one."""
    R = PolyRing(("x", "y"))
    x, y = R.gens()
    J = Ideal(R, [x, y])
    fam = IdealFamily(J, (Ideal(R, [x]),))
    A = ModuleSpec.free(R)
    c = JointReductionCandidate(((x, 1), (y, 0)))
    jr = verify_joint_reduction(c, fam, A, window=(1, 4))
    fc = verify_weak_fc_element(x, 1, fam, A, window=((0, 4), (1, 4)))
    ctx = make_context(fam, A)
    mixed = mixed_multiplicity(ctx, MultiType(0, (1,)), config)
    symbol = multiplicity_symbol([x, y], A, config)
    return {
        "joint_reduction": jr.holds,
        "weak_fc": fc.holds,
        "dimension_hypothesis": check_dimension_hypothesis(ctx, (1,)),
        "mixed": mixed,
        "symbol": symbol,
        "equal": mixed == symbol,
    }


# ---------------------------------------------------------------- transfer along weak-(FC) elements


def transfer_check(x: Polynomial, i: int, ctx: MixedContext, t: MultiType, config: Config = DEFAULT) -> dict:
    """Compare the type-t mixed multiplicity on M with the lowered type on M/xM, and the
    length functions point by point on the stabilized window."""
    orders = list(t.orders)
    if orders[i] == 0:
        raise ValueError("the type has no room on the element's axis")
    orders[i] -= 1
    lowered = MultiType(orders[0], tuple(orders[1:]))
    Mx = ctx.M.quotient([x])
    try:
        ctx_x = make_context(ctx.fam, Mx)
        after = mixed_multiplicity(ctx_x, lowered, config) if lowered.total >= ctx_x.q - 1 else None
    except DegenerateContext:
        ctx_x, after = None, 0
    rep = mixed_multiplicity_report(ctx, t, config)
    before = rep.value
    raw = ctx_x or MixedContext(ctx.fam, Mx, ctx.I, None, 0, PowerCache(ctx.fam))
    bad = []
    w = config.grid_window
    base = rep.base or (ctx.q + 2,) * ctx.axes
    for offs in _box_offsets(ctx.axes, w):
        p = tuple(b + o for b, o in zip(base, offs))
        back = list(p)
        back[i] -= 1
        lhs = bhattacharya_value(raw, p[0], p[1:], config)
        rhs = bhattacharya_value(ctx, p[0], p[1:], config) - bhattacharya_value(ctx, back[0], back[1:], config)
        if lhs != rhs:
            bad.append((p, lhs, rhs))
    return {"before": before, "after": after, "mixed_ok": after == before, "function_ok": not bad, "violations": bad}


def _box_offsets(axes: int, w: int):
    return product(range(w + 1), repeat=axes)


# ---------------------------------------------------------------- multilinearity oracle


def _oracle_points(dp: int) -> list:
    pts = [(1, 0), (0, 1), (1, 1)]
    j = 2
    while len(pts) < dp + 1:
        pts += [(j, 1), (1, j)]
        j += 1
    return pts[: dp + 1]


def _solve(rows, rhs) -> list:
    n = len(rows)
    A = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            raise ArithmeticError("inconsistent system: singular sample points")
        A[c], A[piv] = A[piv], A[c]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [A[i][n] / A[i][i] for i in range(n)]


def multilinearity_oracle(Ia: Ideal, Ib: Ideal, M: ModuleSpec, config: Config = DEFAULT) -> dict:
    """i -> e(Ia^[i], Ib^[d'-i]; M) from Hilbert-Samuel multiplicities of products Ia^a Ib^b."""
    dp = M.dim()
    for Q in (Ia, Ib):
        if not is_ideal_of_definition(Q, M):
            raise ValueError(f"{Q} is not m-primary on the module")
    pts = _oracle_points(dp)
    rows, rhs = [], []
    for a, b in pts:
        Q = ideal_combine(_power(Ia, a), _power(Ib, b), "product")
        rhs.append(hilbert_samuel_multiplicity(Q, M, config))
        rows.append([comb(dp, i) * a**i * b ** (dp - i) for i in range(dp + 1)])
    sol = _solve(rows, rhs)
    for r, v in zip(rows, rhs):
        if sum(c * s for c, s in zip(r, sol)) != v:
            raise ArithmeticError("inconsistent system")
    if any(s.denominator != 1 for s in sol):
        raise ArithmeticError(f"non-integral solution {sol}")
    return {i: int(s) for i, s in enumerate(sol)}


def _power(I: Ideal, n: int) -> Ideal:
    out = Ideal.unit(I.ring)
    for _ in range(n):
        out = ideal_combine(out, I, "product")
    return out


# ---------------------------------------------------------------- instance generator

PROFILES = ("monomial-mprimary-2var", "monomial-mprimary-3var", "module-quotient")


def _equigenerated_mprimary(R: PolyRing, deg: int, rng: random.Random) -> Ideal:
    """Monomial m-primary ideal generated in one degree: all pure powers plus a random middle."""
    n = R.nvars
    pure = [tuple(deg if j == i else 0 for j in range(n)) for i in range(n)]
    middle = [e for e in monomials_of_degree(n, deg) if e not in pure]
    chosen = [e for e in middle if rng.random() < 0.5]
    return Ideal.from_monomials(R, pure + chosen)


def _types(d: int, total: int) -> list:
    return [(t.k, t.k0) for t in top_types(d, total)]


def instance_generator(profile: str, seed: int, count: int) -> list:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    rng = random.Random(f"{profile}:{seed}")
    out: list = []
    while len(out) < count:
        if profile == "monomial-mprimary-2var":
            R = PolyRing(("x", "y"))
            J = _equigenerated_mprimary(R, rng.choice((1, 1, 2)), rng)
            d = rng.choice((1, 1, 2))
            members = tuple(_equigenerated_mprimary(R, rng.choice((1, 2, 3)), rng) for _ in range(d))
            N = Ideal.zero(R)
        elif profile == "monomial-mprimary-3var":
            R = PolyRing(("x", "y", "z"))
            J = Ideal(R, R.gens())
            members = (_equigenerated_mprimary(R, rng.choice((1, 2)), rng),)
            N = Ideal.zero(R)
        else:
            R = PolyRing(("x", "y"))
            J = _equigenerated_mprimary(R, 1, rng)
            members = (_equigenerated_mprimary(R, rng.choice((1, 2)), rng),)
            N = _embedded_module(R, rng)
        fam = IdealFamily(J, members)
        M = ModuleSpec(N)
        try:
            ctx = make_context(fam, M)
        except DegenerateContext:
            continue
        for k, k0 in _types(fam.d, ctx.q - 1):
            if len(out) == count:
                break
            label = f"{profile}#{len(out)}"
            out.append(Instance(R, fam, M, k, k0, None, rng.randrange(1 << 30), label))
    return out


def _embedded_module(R: PolyRing, rng: random.Random) -> Ideal:
    """A monomial N with an embedded m-primary component, e.g. (x^a y, y^b)."""
    x, y = R.gens()
    a = rng.choice((1, 2))
    b = rng.choice((2, 3))
    if rng.random() < 0.5:
        return Ideal(R, [x**a * y, y**b])
    return Ideal(R, [x * y**a, x**b])
