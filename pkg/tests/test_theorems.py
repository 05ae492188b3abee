import pytest

from mixedmult.ideal import Ideal, IdealFamily, saturation
from mixedmult.length import ModuleSpec, multiplicity_symbol
from mixedmult.mixed import MultiType, make_context
from mixedmult.poly import PolyRing
from mixedmult.sequences import JointReductionCandidate, PreconditionNotMet, construct_candidate
from mixedmult.theorems import (
    PROFILES,
    Instance,
    check_dimension_hypothesis,
    instance_generator,
    monomial_height,
    multilinearity_oracle,
    remark_35_counterexample,
    transfer_check,
    verify_corollary_34,
    verify_corollary_36,
    verify_lemma_26iii,
    verify_theorem_33,
)

from conftest import ideal

Q2 = PolyRing(("x", "y"))
A = ModuleSpec.free(Q2)
x, y = Q2.gens()
m = ideal(Q2, "x", "y")


def inst(J, member, k, k0, N=None, candidate=None, seed=0):
    M = ModuleSpec(N) if N is not None else A
    return Instance(Q2, IdealFamily(J, (member,)), M, k, k0, candidate, seed)


def cand(*pairs):
    return JointReductionCandidate(tuple(pairs))


def test_dimension_hypothesis():
    assert check_dimension_hypothesis(make_context(IdealFamily(m, (m,)), A), (1,))
    assert not check_dimension_hypothesis(make_context(IdealFamily(m, (ideal(Q2, "x"),)), A), (1,))
    assert not check_dimension_hypothesis(make_context(IdealFamily(m, (m,)), A), (2,))


def test_theorem_on_maximal_pair():
    rep = verify_theorem_33(inst(m, m, (1,), 0))
    assert rep.status == "verified" and rep.sop and rep.mixed == rep.symbol == 1


def test_theorem_on_square_member():
    rep = verify_theorem_33(inst(m, m ** 2, (1,), 0))
    assert rep.status == "verified" and rep.mixed == rep.symbol == 2


def test_theorem_hypotheses_fail_on_counterexample():
    rep = verify_theorem_33(inst(m, ideal(Q2, "x"), (1,), 0, candidate=cand((x, 1), (y, 0))))
    assert rep.status == "hypotheses not met"
    assert rep.joint_reduction and rep.dimension_hypothesis is False
    assert rep.equal is None


def test_theorem_rejects_wrong_total():
    with pytest.raises(ValueError, match="q - 1"):
        verify_theorem_33(inst(m, m, (1,), 1))


def test_theorem_rejects_mistyped_candidate():
    with pytest.raises(ValueError, match="type"):
        verify_theorem_33(inst(m, m, (1,), 0, candidate=cand((x, 0), (y, 0))))


def test_heights():
    assert monomial_height(m, Ideal.zero(Q2)) == 2
    assert monomial_height(ideal(Q2, "x"), Ideal.zero(Q2)) == 1
    assert monomial_height(ideal(Q2, "y"), ideal(Q2, "x")) == 1


def test_height_corollary():
    assert verify_corollary_34(inst(m, m, (1,), 0)).status == "verified"
    low = verify_corollary_34(inst(m, ideal(Q2, "x"), (1,), 0))
    assert low.status == "hypotheses not met" and low.notes["height"] == 1
    pure_J = verify_corollary_34(inst(m, ideal(Q2, "y"), (0,), 0, N=ideal(Q2, "x")))
    assert pure_J.status == "verified" and pure_J.notes["height"] == 1 and pure_J.mixed == 1


def test_height_corollary_fallback_route():
    J = ideal(Q2, "x + y", "x - y")
    rep = verify_corollary_34(inst(J, ideal(Q2, "x^2 + y^2", "x*y"), (1,), 0))
    assert rep.notes["route"] == "dimension-hypothesis" and rep.status == "verified"
    with pytest.raises(ValueError):
        verify_corollary_34(inst(J, ideal(Q2, "x^2 + y^2", "x*y"), (1,), 0), allow_fallback=False)


def test_weak_fc_corollary():
    rep = verify_corollary_36(inst(m, m, (1,), 0, candidate=cand((x, 1), (y, 0))))
    assert rep.status == "verified" and rep.mixed == rep.symbol == 1


def test_weak_fc_corollary_rejects_filter_irregular_sequence():
    with pytest.raises(PreconditionNotMet):
        verify_corollary_36(inst(m, ideal(Q2, "x"), (0,), 0, N=ideal(Q2, "y^2"), candidate=cand((y, 0),)))


def test_weak_fc_corollary_pure_J_type():
    # x^3*y^3 lies in (x) and in J^3 I^3 but not in x J^2 I^3, so x from J fails FC1
    with pytest.raises(PreconditionNotMet, match="FC1"):
        verify_corollary_36(inst(m, ideal(Q2, "x"), (0,), 1, candidate=cand((x, 0), (y, 0))))
    lemma = verify_lemma_26iii(cand((x, 0), (y, 0)), IdealFamily(m, (ideal(Q2, "x"),)), A)
    assert lemma.holds and lemma.mixed == lemma.symbol == 1


@pytest.mark.parametrize("J, member, elements, value", [
    (("x", "y"), ("x",), ("x", "y"), 1),
    (("x^2", "y^2"), ("x",), ("x^2", "y^2"), 4),
])
def test_pure_J_lemma(J, member, elements, value):
    fam = IdealFamily(ideal(Q2, *J), (ideal(Q2, *member),))
    rep = verify_lemma_26iii(cand(*[(Q2.parse(e), 0) for e in elements]), fam, A)
    assert rep.holds and rep.ideal_of_definition
    assert rep.mixed == rep.symbol == value
    assert rep.dim_bar == rep.k0 + 1  # equality of dimensions goes with a nonzero value


def test_pure_J_lemma_below_dimension():
    # dim of the saturated module is 1 < 2 = k0 + 1: both sides vanish
    rep = verify_lemma_26iii(cand((x, 0), (y, 0)), IdealFamily(m, (ideal(Q2, "x"),)), ModuleSpec(ideal(Q2, "y")))
    assert rep.holds and rep.mixed == 0 and rep.symbol == 0 and rep.dim_bar < rep.k0 + 1


def test_pure_J_lemma_rejects_I_elements():
    with pytest.raises(ValueError):
        verify_lemma_26iii(cand((x, 1), (y, 0)), IdealFamily(m, (m,)), A)


def test_counterexample():
    assert remark_35_counterexample() == {
        "joint_reduction": True,
        "weak_fc": True,
        "dimension_hypothesis": False,
        "mixed": 0,
        "symbol": 1,
        "equal": False,
    }


def test_transfer_along_weak_fc_element():
    ctx = make_context(IdealFamily(m, (m,)), A)
    rep = transfer_check(x, 1, ctx, MultiType(0, (1,)))
    assert rep["before"] == rep["after"] == 1
    assert rep["mixed_ok"] and rep["function_ok"]
    with pytest.raises(ValueError):
        transfer_check(x, 1, ctx, MultiType(1, (0,)))


@pytest.mark.parametrize("Ia, Ib, expected", [
    (("x^2", "y^3"), ("x", "y"), {0: 1, 1: 2, 2: 6}),
    (("x^2", "x*y", "y^2"), ("x", "y"), {0: 1, 1: 2, 2: 4}),
    (("x", "y"), ("x", "y"), {0: 1, 1: 1, 2: 1}),
])
def test_multilinearity_oracle(Ia, Ib, expected):
    assert multilinearity_oracle(ideal(Q2, *Ia), ideal(Q2, *Ib), A) == expected


def test_oracle_needs_primary_ideals():
    with pytest.raises(ValueError, match="m-primary"):
        multilinearity_oracle(ideal(Q2, "x"), m, A)


@pytest.mark.parametrize("profile", PROFILES)
def test_instance_generator(profile):
    first = instance_generator(profile, 7, 5)
    again = instance_generator(profile, 7, 5)
    assert len(first) == 5
    for a, b in zip(first, again):
        assert (a.label, a.k, a.k0, a.seed) == (b.label, b.k, b.k0, b.seed)
        assert a.fam.J == b.fam.J and a.M.N == b.M.N
        ctx = make_context(a.fam, a.M)
        assert a.k0 + sum(a.k) == ctx.q - 1
        for I in a.fam.members:
            assert I.is_equigenerated() and I.is_monomial
    if profile == "module-quotient":
        assert all(not a.M.N.is_zero() for a in first)
        assert any(saturation(a.M.N, a.fam.product()) != a.M.N for a in first)


def test_unknown_profile():
    with pytest.raises(ValueError):
        instance_generator("cubic-surfaces", 0, 1)


@pytest.mark.parametrize("member", [("x", "y"), ("x^2", "y^2"), ("x^2", "x*y", "y^2")])
def test_two_joint_reductions_share_multiplicity(member):
    fam = IdealFamily(m, (ideal(Q2, *member),))
    a = construct_candidate(fam, (1,), 0, A, seed=1)
    b = construct_candidate(fam, (1,), 0, A, seed=2)
    assert a.elements != b.elements
    assert multiplicity_symbol(a.polys, A) == multiplicity_symbol(b.polys, A)
