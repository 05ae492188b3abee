"""The acceptance criteria as runnable checks, shared by ``selftest`` and the test suite."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .config import DEFAULT, Config
from .ideal import CHECK_STATS, Ideal, IdealFamily, verification_mode
from .length import (
    ModuleSpec,
    hilbert_samuel_multiplicity,
    length_artinian,
    multiplicity_symbol,
)
from .mixed import (
    DegenerateContext,
    MultiType,
    make_context,
    mixed_multiplicity,
    mixed_multiplicity_report,
    mixed_multiplicity_table,
    stabilization_evidence,
)
from .poly import PolyRing
from .sequences import construct_candidate
from .theorems import (
    instance_generator,
    multilinearity_oracle,
    remark_35_counterexample,
    transfer_check,
    verify_lemma_26iii,
    verify_theorem_33,
)

SUITE_PROFILES = (("monomial-mprimary-2var", 16), ("monomial-mprimary-3var", 9), ("module-quotient", 5))


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number} ({self.title}): {self.detail} [{self.elapsed:.1f}s]"


def _ring(names: str) -> PolyRing:
    return PolyRing(tuple(names))


def _ideal(R: PolyRing, *gens: str) -> Ideal:
    return Ideal(R, list(gens))


def suite_instances(seed: int = 0) -> list:
    out = []
    for profile, count in SUITE_PROFILES:
        out += instance_generator(profile, seed, count)
    return out


# ---------------------------------------------------------------- 1


def counterexample_reproduction(config: Config = DEFAULT):
    t0 = time.perf_counter()
    r = remark_35_counterexample(config)
    elapsed = time.perf_counter() - t0
    ok = (r["joint_reduction"] and r["weak_fc"] and r["mixed"] == 0 and r["symbol"] == 1
          and r["equal"] is False and elapsed < 5)
    detail = (f"jr={r['joint_reduction']} fc={r['weak_fc']} mixed={r['mixed']} symbol={r['symbol']} "
              f"equal={r['equal']} in {elapsed:.2f}s (limit 5s)")
    return ok, detail


# ---------------------------------------------------------------- 2


def theorem_suite(config: Config = DEFAULT, seed: int = 0):
    t0 = time.perf_counter()
    core = [i for i in suite_instances(seed) if not i.label.startswith("module-quotient")]
    extra = [i for i in suite_instances(seed) if i.label.startswith("module-quotient")]
    bad = []
    for inst in core + extra:
        rep = verify_theorem_33(inst, config, inst.label)
        if not (rep.status == "verified" and rep.sop and rep.mixed == rep.symbol):
            bad.append(f"{inst.label}: {rep.status}")
    elapsed = time.perf_counter() - t0
    ok = not bad and len(core) >= 25 and elapsed < 600
    detail = (f"{len(core)} core + {len(extra)} module-quotient instances, "
              f"{len(core) + len(extra) - len(bad)} verified, {elapsed:.1f}s (limit 600s)")
    if bad:
        detail += "; failures: " + ", ".join(bad)
    return ok, detail


# ---------------------------------------------------------------- 3


ORACLE_PAIRS = (
    # (I1, J) on Q[x,y]
    (("x", "y"), ("x", "y")),
    (("x^2", "x*y", "y^2"), ("x", "y")),
    (("x", "y"), ("x^2", "x*y", "y^2")),
    (("x^2", "y^2"), ("x", "y")),
    (("x", "y"), ("x^2", "y^2")),
    (("x^3", "y^3"), ("x", "y")),
    (("x^3", "x*y^2", "y^3"), ("x", "y")),
    (("x^2", "y^2"), ("x^2", "x*y", "y^2")),
    (("x^3", "x^2*y", "y^3"), ("x", "y")),
    (("x^2", "x*y", "y^2"), ("x^2", "y^2")),
    (("x^3", "y^3"), ("x^2", "y^2")),
)


def oracle_equivalence(config: Config = DEFAULT):
    R = _ring("xy")
    A = ModuleSpec.free(R)
    pairs = [(_ideal(R, *a), _ideal(R, *b)) for a, b in ORACLE_PAIRS]
    bad = []
    for I1, J in pairs:
        ctx = make_context(IdealFamily(J, (I1,)), A)
        table = mixed_multiplicity_table(ctx, config)
        oracle = multilinearity_oracle(I1, J, A, config)
        # the table holds J-exponents k0 + 1 >= 1, i.e. oracle entries i < d'
        for i, v in oracle.items():
            if i == len(oracle) - 1:
                continue
            if table[MultiType(1 - i, (i,))] != v:
                bad.append(f"I={I1} J={J} i={i}: table {table[MultiType(1 - i, (i,))]} oracle {v}")
    # worked value with a non-equigenerated ideal: e(I m) = 11, e(I) = 6
    I = _ideal(R, "x^2", "y^3")
    m = _ideal(R, "x", "y")
    worked_oracle = multilinearity_oracle(I, m, A, config)
    worked_delta = mixed_multiplicity(make_context(IdealFamily(m, (I,)), A), MultiType(0, (1,)), config)
    e_prod = hilbert_samuel_multiplicity(I * m, A, config)
    e_I = hilbert_samuel_multiplicity(I, A, config)
    worked = worked_oracle[1] == 2 and worked_delta == 2 and e_prod == 11 and e_I == 6
    ok = not bad and worked and len(pairs) >= 10
    detail = (f"{len(pairs)} pairs agree entrywise; worked value e(m^[1], I^[1]) = {worked_delta} "
              f"(oracle {worked_oracle[1]}, e(I m) = {e_prod}, e(I) = {e_I})")
    if bad:
        detail = "; ".join(bad)
    return ok, detail


# ---------------------------------------------------------------- 4


def hilbert_samuel_truths(config: Config = DEFAULT):
    bad = []
    for names in ("x", "xy", "xyz"):
        R = _ring(names)
        e = hilbert_samuel_multiplicity(Ideal(R, R.gens()), ModuleSpec.free(R), config)
        if e != 1:
            bad.append(f"e(m; {R}) = {e}")
    R = _ring("xy")
    A = ModuleSpec.free(R)
    checked = 0
    for a in range(1, 5):
        for b in range(1, 5):
            e = hilbert_samuel_multiplicity(_ideal(R, f"x^{a}", f"y^{b}"), A, config)
            if e != a * b:
                bad.append(f"e((x^{a}, y^{b})) = {e}")
            for t in (1, 2, 3):
                length = length_artinian(_ideal(R, f"x^{a * t}", f"y^{b * t}"))
                if length != a * b * t * t:
                    bad.append(f"staircase of (x^{a * t}, y^{b * t}) has {length} monomials")
            checked += 1
    ok = not bad
    detail = f"e(m) = 1 for 1..3 variables; {checked} pairs (x^a, y^b) give a*b with staircase cross-checks"
    return ok, "; ".join(bad) if bad else detail


# ---------------------------------------------------------------- 5


def lemma_instances() -> list:
    """(family, module) pairs for which the mixed multiplicity with no I-entries is checked."""
    R2, R3 = _ring("xy"), _ring("xyz")
    m2, m3 = Ideal(R2, R2.gens()), Ideal(R3, R3.gens())
    free2, free3 = ModuleSpec.free(R2), ModuleSpec.free(R3)
    return [
        (IdealFamily(m2, (_ideal(R2, "x"),)), free2),
        (IdealFamily(m2, (_ideal(R2, "x^2", "x*y", "y^2"),)), free2),
        (IdealFamily(_ideal(R2, "x^2", "x*y", "y^2"), (_ideal(R2, "x"),)), free2),
        (IdealFamily(_ideal(R2, "x^2", "y^2"), (m2,)), free2),
        (IdealFamily(m3, (_ideal(R3, "x"),)), free3),
        (IdealFamily(m2, (_ideal(R2, "x"),)), ModuleSpec(_ideal(R2, "x*y", "y^2"))),
    ]


def pure_J_type(config: Config = DEFAULT):
    bad, values = [], []
    for n, (fam, M) in enumerate(lemma_instances()):
        ctx = make_context(fam, M)
        c = construct_candidate(fam, (0,) * fam.d, ctx.q - 1, M, seed=n, config=config)
        rep = verify_lemma_26iii(c, fam, M, config)
        values.append(f"{rep.mixed}={rep.symbol}")
        if not rep.holds:
            bad.append(f"instance {n}: {rep}")
    R = _ring("xy")
    ctx = make_context(IdealFamily(Ideal(R, R.gens()), (_ideal(R, "x"),)), ModuleSpec(_ideal(R, "x*y", "y^2")))
    saturated = ctx.Mbar.N == _ideal(R, "y")
    ok = not bad and saturated and len(values) >= 5
    detail = f"{len(values)} instances, mixed=symbol: {' '.join(values)}; N=(xy,y^2) saturates to A/(y): {saturated}"
    return ok, "; ".join(bad) if bad else detail


# ---------------------------------------------------------------- 6


def fc_transfers(config: Config = DEFAULT, seed: int = 0, count: int = 8) -> list:
    """Transfer reports along weak-(FC) sequences built on the first 2-variable suite instances."""
    out = []
    for inst in instance_generator("monomial-mprimary-2var", seed, count):
        c = construct_candidate(inst.fam, inst.k, inst.k0, inst.M, seed=inst.seed, config=config, certify="fc")
        ctx = make_context(inst.fam, inst.M)
        t = inst.type
        for x, s in c.elements:
            if t.orders[s] == 0:
                break
            report = transfer_check(x, s, ctx, t, config)
            out.append((inst.label, str(x), s, report))
            orders = list(t.orders)
            orders[s] -= 1
            t = MultiType(orders[0], tuple(orders[1:]))
            try:
                ctx = make_context(inst.fam, ctx.M.quotient([x]))
            except DegenerateContext:
                break
            if t.total != ctx.q - 1:
                break
    return out


def transfer(config: Config = DEFAULT):
    reports = fc_transfers(config)
    bad = [f"{label} x={x}: {r}" for label, x, _, r in reports if not (r["mixed_ok"] and r["function_ok"])]
    ok = not bad and len(reports) >= 5
    detail = f"{len(reports)} weak-(FC) elements; mixed transfer and function identity hold on every window"
    return ok, "; ".join(bad) if bad else detail


# ---------------------------------------------------------------- 7


def engine_properties(config: Config = DEFAULT):
    before = dict(CHECK_STATS)
    bad = []
    grids = 0
    with verification_mode():
        r35 = remark_35_counterexample(config)
        if r35["mixed"] != 0 or r35["symbol"] != 1:
            bad.append(f"remark values changed under verification: {r35}")
        instances = instance_generator("monomial-mprimary-2var", 0, 6) + instance_generator("module-quotient", 0, 3)
        for inst in instances:
            rep = verify_theorem_33(inst, config, inst.label)
            if rep.status != "verified":
                bad.append(f"{inst.label}: {rep.status}")
        contexts = [make_context(inst.fam, inst.M) for inst in instances]
        for fam, M in lemma_instances():
            contexts.append(make_context(fam, M))
        for ctx in contexts:
            table = mixed_multiplicity_table(ctx, config)
            for t, v in table.items():
                if v < 0:
                    bad.append(f"negative entry {t} = {v}")
                rep = mixed_multiplicity_report(ctx, t, config)
                shifted = mixed_multiplicity_report(ctx, t, config, base=tuple(b + 1 for b in rep.base))
                if shifted.value != v:
                    bad.append(f"base shift changes {t} from {v} to {shifted.value}")
                grids += 1
            ev = stabilization_evidence(ctx, config)
            if not ev.passed:
                bad.append(f"order-q differences survive: {ev.violations[:3]}")
    gb_checks = CHECK_STATS["buchberger"] - before["buchberger"]
    dual_checks = CHECK_STATS["dual_path"] - before["dual_path"]
    ok = not bad and gb_checks > 0 and dual_checks > 0
    detail = (f"{gb_checks} Buchberger checks, {dual_checks} dual-path checks, {grids} table entries "
              f"non-negative and base-shift invariant, stabilization evidence on {len(contexts)} contexts")
    return ok, "; ".join(bad) if bad else detail


# ---------------------------------------------------------------- 8


def independent_reductions(fam: IdealFamily, M: ModuleSpec, config: Config = DEFAULT, seed: int = 0):
    """Two type ((1),1) joint reductions from different seeds with different elements."""
    first = construct_candidate(fam, (1,), 0, M, seed=seed, config=config)
    for s in range(seed + 1, seed + 1 + config.budget):
        second = construct_candidate(fam, (1,), 0, M, seed=s, config=config)
        if second.elements != first.elements:
            return first, second
    raise RuntimeError("no second, different joint reduction found")


def reduction_independence(config: Config = DEFAULT):
    R = _ring("xy")
    A = ModuleSpec.free(R)
    pairs = [(_ideal(R, *j), _ideal(R, *i)) for i, j in ORACLE_PAIRS[:6]]
    values, bad = [], []
    for n, (J, I1) in enumerate(pairs):
        fam = IdealFamily(J, (I1,))
        a, b = independent_reductions(fam, A, config, seed=10 * n)
        ea = multiplicity_symbol(a.polys, A, config)
        eb = multiplicity_symbol(b.polys, A, config)
        values.append(f"{ea}={eb}")
        if ea != eb:
            bad.append(f"J={J} I={I1}: {a} gives {ea}, {b} gives {eb}")
    ok = not bad and len(values) >= 5
    detail = f"{len(values)} instances, symbols of two independent reductions: {' '.join(values)}"
    return ok, "; ".join(bad) if bad else detail


CRITERIA = (
    (1, "counterexample reproduction", counterexample_reproduction),
    (2, "main theorem suite", theorem_suite),
    (3, "multilinearity oracle", oracle_equivalence),
    (4, "Hilbert-Samuel ground truths", hilbert_samuel_truths),
    (5, "pure-J type equals the saturated multiplicity", pure_J_type),
    (6, "weak-(FC) transfer", transfer),
    (7, "engine properties", engine_properties),
    (8, "independence of the joint reduction", reduction_independence),
)


def run_criterion(number: int, config: Config = DEFAULT) -> CriterionResult:
    _, title, check = next(c for c in CRITERIA if c[0] == number)
    t0 = time.perf_counter()
    try:
        ok, detail = check(config)
    except Exception as e:  # a crash is a failed criterion, reported with its cause
        ok, detail = False, f"{type(e).__name__}: {e}"
    return CriterionResult(number, title, bool(ok), detail, time.perf_counter() - t0)


def run_all(config: Config = DEFAULT) -> list:
    return [run_criterion(n, config) for n, _, _ in CRITERIA]
