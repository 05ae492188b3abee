import pytest

from mixedmult.config import Config
from mixedmult.ideal import Ideal, IdealFamily
from mixedmult.length import ModuleSpec, hilbert_samuel_multiplicity
from mixedmult.mixed import (
    DegenerateContext,
    ExtentTooSmall,
    HilbertGrid,
    MultiType,
    TypeBelowTopDegree,
    bhattacharya_value,
    difference,
    make_context,
    mixed_multiplicity,
    mixed_multiplicity_report,
    mixed_multiplicity_table,
    stabilization_evidence,
)
from mixedmult.poly import PolyRing
from mixedmult.theorems import multilinearity_oracle

from conftest import ideal

Q2 = PolyRing(("x", "y"))
A = ModuleSpec.free(Q2)


def I(*gens):
    return ideal(Q2, *gens)


M_ = ("x", "y")


def ctx_of(J, *members, N=()):
    return make_context(IdealFamily(I(*J), tuple(I(*m) for m in members)), ModuleSpec(I(*N)) if N else A)


def T(k0, *k):
    return MultiType(k0, k)


def test_context_dimensions():
    assert ctx_of(M_, M_).q == 2
    assert ctx_of(M_, ("x",)).q == 2


def test_context_rejects_torsion_family():
    with pytest.raises(DegenerateContext, match="radical of annihilator"):
        ctx_of(M_, ("x",), N=("x^2", "x*y"))


def test_context_rejects_non_primary_J():
    with pytest.raises(ValueError, match="m-primary"):
        ctx_of(("x",), M_)


def test_length_function_values():
    ctx = ctx_of(M_, M_)
    assert bhattacharya_value(ctx, 2, (3,)) == 6
    assert bhattacharya_value(ctx, 0, (0,)) == 1
    regular = ctx_of(M_, ("x",))
    for n0 in range(4):
        for n1 in range(4):
            assert bhattacharya_value(regular, n0, (n1,)) == n0 + 1


def affine(p):
    return p[0] + p[1] + 1


def test_differences_of_affine_function():
    assert {difference(affine, 1, (0,))(p) for p in [(0, 0), (3, 5)]} == {1}
    assert difference(affine, 0, (0,))((4, 7)) == affine((4, 7))
    assert {difference(affine, 1, (1,))(p) for p in [(0, 0), (3, 5)]} == {0}


def test_difference_needs_grid_room():
    grid = HilbertGrid(ctx_of(M_, M_), (2, 2), (1, 1))
    with pytest.raises(ExtentTooSmall):
        difference(grid, 2, (0,))((2, 2))


def test_mixed_values():
    assert mixed_multiplicity(ctx_of(M_, M_), T(0, 1)) == 1
    assert mixed_multiplicity(ctx_of(M_, ("x",)), T(0, 1)) == 0
    assert mixed_multiplicity(ctx_of(M_, ("x^2", "y^3")), T(0, 1)) == 2


def test_above_top_degree_is_zero():
    assert mixed_multiplicity(ctx_of(M_, M_), T(1, 1)) == 0
    assert mixed_multiplicity(ctx_of(M_, M_), T(0, 2)) == 0


def test_below_top_degree_is_rejected():
    with pytest.raises(TypeBelowTopDegree):
        mixed_multiplicity(ctx_of(M_, M_), T(0, 0))


def test_report_carries_grid_data():
    rep = mixed_multiplicity_report(ctx_of(M_, M_), T(0, 1))
    assert rep.stabilized and rep.base == (4, 4) and rep.window == 3


@pytest.mark.parametrize("member, expected", [
    (M_, {T(0, 1): 1, T(1, 0): 1}),
    (("x",), {T(0, 1): 0, T(1, 0): 1}),
])
def test_tables(member, expected):
    assert mixed_multiplicity_table(ctx_of(M_, member)) == expected


def test_table_for_non_equigenerated_member():
    # the J^[2] entry is e(m) = 1; the mixed entry comes from e(I m) = 11 and e(I) = 6
    ctx = ctx_of(M_, ("x^2", "y^3"))
    table = mixed_multiplicity_table(ctx)
    oracle = multilinearity_oracle(I("x^2", "y^3"), I(*M_), A)
    assert table == {T(0, 1): 2, T(1, 0): 1}
    assert table[T(1, 0)] == oracle[0] == hilbert_samuel_multiplicity(I(*M_), A)
    assert table[T(0, 1)] == oracle[1]


def test_non_saturated_module():
    ctx = ctx_of(M_, ("x",), N=("x*y", "y^2"))
    assert ctx.q == 1
    assert mixed_multiplicity_table(ctx) == {T(0, 0): 1}


def test_permuting_family_permutes_table():
    a = mixed_multiplicity_table(ctx_of(M_, ("x",), ("x^2", "x*y", "y^2")))
    b = mixed_multiplicity_table(ctx_of(M_, ("x^2", "x*y", "y^2"), ("x",)))
    assert a == {T(t.k0, t.k[1], t.k[0]): v for t, v in b.items()}


@pytest.mark.parametrize("member", [M_, ("x",), ("x^2", "y^2"), ("x^3", "x*y^2", "y^3")])
def test_base_shift_invariance(member):
    ctx = ctx_of(M_, member)
    for t, v in mixed_multiplicity_table(ctx).items():
        for shift in [(1, 0), (0, 1), (2, 3)]:
            base = tuple(b + s for b, s in zip((4, 4), shift))
            assert mixed_multiplicity(ctx, t, base=base) == v


def test_stabilization_evidence():
    assert stabilization_evidence(ctx_of(M_, M_)).passed
    q1 = ctx_of(M_, ("x",), N=("x*y", "y^2"))
    assert stabilization_evidence(q1).passed


def test_stabilization_evidence_flags_small_base():
    ctx = ctx_of(M_, ("x^2", "y^2"))
    early = stabilization_evidence(ctx, base=0)
    assert not early.passed and early.violations
    assert stabilization_evidence(ctx).passed


def test_doubling_recovers_from_small_base():
    ctx = ctx_of(M_, ("x^3", "y^3"))
    assert mixed_multiplicity(ctx, T(0, 1), Config(grid_base=0)) == 3
