import pytest
import sympy
from hypothesis import given, strategies as st

from mixedmult import groebner as gb
from mixedmult.ideal import (
    CHECK_STATS,
    Ideal,
    IdealFamily,
    NotHomogeneous,
    PowerCache,
    colon,
    dimension,
    groebner_basis,
    ideal_combine,
    ideal_equal,
    ideal_power,
    intersect,
    multi_power,
    normal_form,
    radical_membership,
    saturation,
    verification_mode,
)
from mixedmult.poly import PolyRing, format_polynomial

from conftest import ideal
from strategies import homogeneous_ideals, homogeneous_polynomials, monomial_ideals

Q2 = PolyRing(("x", "y"))
Q3 = PolyRing(("x", "y", "z"))


def I(*gens, ring=Q2):
    return ideal(ring, *gens)


def gb_strings(U):
    return sorted(format_polynomial(g) for g in groebner_basis(U))


def sympy_basis(U):
    syms = sympy.symbols(U.ring.variables)
    exprs = [sympy.sympify(format_polynomial(g).replace("^", "**")) for g in U.gens]
    G = sympy.groebner(exprs, *syms, order="grevlex")
    ring_polys = [U.ring.parse(str(g.as_expr()).replace("**", "^")) for g in G.exprs]
    return sorted(format_polynomial(p.monic()) for p in ring_polys)


# ---------------------------------------------------------------- Groebner bases


def test_basis_of_maximal_ideal():
    assert gb_strings(I("x", "y")) == ["x", "y"]


def test_basis_picks_up_s_polynomial():
    assert "y^3" in gb_strings(I("x^2 + y^2", "x*y"))


def test_basis_of_zero_ideal():
    assert groebner_basis(Ideal.zero(Q2)) == []


@given(homogeneous_ideals(Q3, max_gens=3, max_degree=2))
def test_basis_matches_independent_engine(U):
    assert gb_strings(U) == sympy_basis(U)


@given(homogeneous_ideals(Q3))
def test_buchberger_criterion(U):
    G = U._internal_basis()
    assert gb.check_buchberger_criterion(G, U.ring.order, 0)


@given(homogeneous_ideals(Q2))
def test_basis_generates_same_ideal(U):
    G = Ideal(Q2, groebner_basis(U))
    assert ideal_equal(G, U)


@given(homogeneous_ideals(Q3, max_gens=3, max_degree=2))
def test_order_independence(U):
    lex = Ideal(Q3.with_order("lex"), [Q3.with_order("lex").parse(format_polynomial(g)) for g in U.gens])
    if U.is_unit():
        return
    assert dimension(lex) == dimension(U)
    from mixedmult.length import hilbert_function

    assert hilbert_function(lex, 6) == hilbert_function(U, 6)


@given(homogeneous_ideals(Q2), st.randoms(use_true_random=False))
def test_generator_permutation_invariance(U, rnd):
    gens = list(U.gens)
    rnd.shuffle(gens)
    V = Ideal(Q2, gens)
    assert gb_strings(V) == gb_strings(U)


# ---------------------------------------------------------------- normal forms


def test_normal_form_of_member():
    assert normal_form(Q2.parse("y^3"), I("x^2 + y^2", "x*y")).is_zero()


def test_normal_form_of_non_member():
    assert normal_form(Q2.parse("x"), I("y")) == Q2.parse("x")


def test_normal_form_of_zero():
    assert normal_form(Q2.zero(), I("x")).is_zero()


@given(homogeneous_ideals(Q2), homogeneous_polynomials(Q2, 3))
def test_normal_form_idempotent_and_decides_membership(U, f):
    r = normal_form(f, U)
    assert normal_form(r, U) == r
    assert r.is_zero() == U.contains(f)


def test_homogeneity_enforced():
    with pytest.raises(NotHomogeneous):
        I("x + y^2")


# ---------------------------------------------------------------- sums, products, powers


def test_product_of_principal():
    assert ideal_combine(I("x"), I("y"), "product") == I("x*y")


def test_square_of_maximal():
    assert ideal_power(I("x", "y"), 2) == I("x^2", "x*y", "y^2")


def test_zeroth_power_is_unit():
    assert ideal_power(I("x^2 + y^2"), 0).is_unit()


def test_multi_power_examples():
    m = I("x", "y")
    assert multi_power(IdealFamily(m, (m,)), 1, (1,)) == I("x^2", "x*y", "y^2")
    assert multi_power(IdealFamily(m, (m,)), 0, (0,)).is_unit()
    assert multi_power(IdealFamily(m, (I("x"),)), 1, (2,)) == I("x^3", "x^2*y")


def test_multi_power_cache_agrees_with_direct_product():
    fam = IdealFamily(I("x^2", "y^2"), (I("x", "y"), I("x*y")))
    cache = PowerCache(fam)
    for n0, n in [(2, (1, 1)), (1, (2, 0)), (0, (1, 2))]:
        direct = ideal_power(fam.J, n0) * ideal_power(fam.members[0], n[0]) * ideal_power(fam.members[1], n[1])
        assert multi_power(fam, n0, n, cache) == direct
        assert multi_power(fam, n0, n) == direct


# ---------------------------------------------------------------- colon, saturation, intersection


@pytest.mark.parametrize("a, b, expected", [
    (("x^2", "x*y"), ("y",), ("x",)),
    (("x*y",), ("x",), ("y",)),
])
def test_colon_examples(a, b, expected):
    assert colon(I(*a), I(*b)) == I(*expected)


def test_colon_by_unit_and_zero():
    U = I("x^2 + y^2", "x*y")
    assert colon(U, Ideal.unit(Q2)) == U
    assert colon(U, Ideal.zero(Q2)).is_unit()


def test_saturation_examples():
    assert saturation(I("x^2", "x*y"), I("x")).is_unit()
    assert saturation(I("x^2", "x*y"), I("y")) == I("x")
    U = I("x^2 + y^2", "x*y")
    assert saturation(U, Ideal.unit(Q2)) == U


@pytest.mark.parametrize("a, b, expected", [
    (("x",), ("y",), ("x*y",)),
    (("x",), ("x", "y"), ("x",)),
    (("x^2", "y"), ("x",), ("x^2", "x*y")),
])
def test_intersection_examples(a, b, expected):
    assert intersect(I(*a), I(*b)) == I(*expected)


@given(homogeneous_ideals(Q2, max_gens=2), homogeneous_ideals(Q2, max_gens=2))
def test_colon_saturation_intersection_properties(a, b):
    assert a.issubset(colon(a, b))
    s = saturation(a, b)
    assert saturation(s, b) == s
    both = intersect(a, b)
    assert both.issubset(a) and both.issubset(b)
    assert a.issubset(a + b)


@given(monomial_ideals(Q3), monomial_ideals(Q3))
def test_monomial_fast_path_matches_groebner_path(a, b):
    before = CHECK_STATS["dual_path"]
    with verification_mode():
        a * b
        a + b
        intersect(a, b)
        colon(a, b)
        ideal_power(a, 2)
        dimension(Ideal.from_monomials(Q3, a.monomial_generators))
    assert CHECK_STATS["dual_path"] - before >= 6


# ---------------------------------------------------------------- dimension and radicals


@pytest.mark.parametrize("gens, ring, expected", [
    (("x", "y"), Q2, 0),
    (("x*y", "x*z"), Q3, 2),
    ((), Q2, 2),
])
def test_dimension_examples(gens, ring, expected):
    assert dimension(I(*gens, ring=ring)) == expected


@given(monomial_ideals(Q3))
def test_dimension_of_monomial_ideal_via_groebner_route(U):
    # a non-monomial presentation of the same ideal: add multiples of the lowest generator
    gens = sorted(U.gens, key=lambda g: g.degree())
    low = gens[0]
    mixed = [low]
    for g in gens[1:]:
        shift = [0] * 3
        shift[0] = g.degree() - low.degree()
        mixed.append(g + low.mul_monomial(tuple(shift), 2))
    V = Ideal(Q3, mixed)
    assert V == U
    assert dimension(V) == dimension(U)


@pytest.mark.parametrize("f, gens, expected", [
    ("y", ("y^3",), True),
    ("x", ("x*y",), False),
    ("x^2 + y^2", ("x", "y"), True),
    ("x + y", ("x^2", "y^2"), True),
    ("x - y", ("x^2 - y^2",), False),
])
def test_radical_membership(f, gens, expected):
    assert radical_membership(Q2.parse(f), I(*gens)) is expected


def test_radical_of_unit_ideal_contains_everything():
    assert radical_membership(Q2.parse("x"), Ideal.unit(Q2))


@pytest.mark.parametrize("a, b, expected", [
    (("x", "y"), ("y", "x"), True),
    (("x^2", "x*y", "y^2"), None, True),
    (("x",), ("x^2",), False),
])
def test_ideal_equality(a, b, expected):
    right = ideal_power(I("x", "y"), 2) if b is None else I(*b)
    assert ideal_equal(I(*a), right) is expected
