import pytest
from hypothesis import given

from mixedmult.ideal import Ideal
from mixedmult.length import (
    InfiniteLength,
    ModuleSpec,
    ModuleVanishes,
    NotContained,
    hilbert_function,
    hilbert_function_linear_algebra,
    hilbert_samuel_multiplicity,
    is_ideal_of_definition,
    is_system_of_parameters,
    length_artinian,
    multiplicity_symbol,
    quotient_length,
    samuel_function,
    saturate_module,
)
from mixedmult.poly import PolyRing

from conftest import ideal
from strategies import homogeneous_ideals

Q2 = PolyRing(("x", "y"))
Q3 = PolyRing(("x", "y", "z"))


def I(*gens, ring=Q2):
    return ideal(ring, *gens)


def polys(*texts, ring=Q2):
    return [ring.parse(t) for t in texts]


def test_hilbert_function_examples():
    assert hilbert_function(Ideal.zero(Q2), 5) == [1, 2, 3, 4, 5, 6]
    assert hilbert_function(I("x^2", "y^2"), 4) == [1, 2, 1, 0, 0]
    assert hilbert_function(I("x"), 4) == [1] * 5
    assert hilbert_function(Ideal.unit(Q2), 2) == [0, 0, 0]


@given(homogeneous_ideals(Q3, max_gens=3, max_degree=2))
def test_hilbert_function_dual_path(U):
    assert hilbert_function(U, 5) == hilbert_function_linear_algebra(U, 5)


def test_quotient_length_examples():
    assert quotient_length(I("x"), I("x^2", "x*y")) == 1
    assert quotient_length(I("x"), I("x")) == 0
    assert quotient_length(I("x", "y"), I("x^2", "x*y", "y^2")) == 2


def test_quotient_length_errors():
    with pytest.raises(NotContained):
        quotient_length(I("x^2"), I("x"))
    with pytest.raises(InfiniteLength):
        quotient_length(I("x"), I("x^2"))


@pytest.mark.parametrize("U, V", [
    (("x", "y^2"), ("x^2", "x*y", "y^3")),
    (("x^2", "y"), ("x^3", "y^2", "x*y")),
])
def test_quotient_length_consistent_with_artinian_lengths(U, V):
    assert quotient_length(I(*U), I(*V)) == length_artinian(I(*V)) - length_artinian(I(*U))


def test_length_artinian_examples():
    assert length_artinian(I("x", "y")) == 1
    assert length_artinian(I("x^2", "y^3")) == 6
    assert length_artinian(I("x^2", "x*y", "y^2")) == 3
    with pytest.raises(ValueError):
        length_artinian(I("x"))


def test_saturate_module_examples():
    Mbar, q = saturate_module(ModuleSpec.free(Q2), I("x"))
    assert Mbar.N.is_zero() and q == 2
    Mbar, q = saturate_module(ModuleSpec(I("x*y", "y^2")), I("x"))
    assert Mbar.N == I("y") and q == 1
    with pytest.raises(ModuleVanishes):
        saturate_module(ModuleSpec(I("x^2", "x*y")), I("x"))


def test_ideal_of_definition_examples():
    assert is_ideal_of_definition(I("x", "y"), ModuleSpec.free(Q2))
    assert not is_ideal_of_definition(I("x"), ModuleSpec.free(Q2))
    assert is_ideal_of_definition(I("x"), ModuleSpec(I("y^3")))


def test_system_of_parameters_examples():
    assert is_system_of_parameters(polys("x", "y"), ModuleSpec.free(Q2))
    assert not is_system_of_parameters(polys("x", "x*y"), ModuleSpec.free(Q2))
    assert is_system_of_parameters(polys("y"), ModuleSpec(I("x")))
    with pytest.raises(ValueError):
        is_system_of_parameters(polys("x + y^2"), ModuleSpec.free(Q2))


def test_hilbert_samuel_examples():
    A = ModuleSpec.free(Q2)
    assert hilbert_samuel_multiplicity(I("x", "y"), A) == 1
    assert hilbert_samuel_multiplicity(I("x^2", "y^3"), A) == 6
    assert hilbert_samuel_multiplicity(I("x", "y^2"), ModuleSpec(I("x"))) == 2


def test_samuel_function_matches_staircase():
    A = ModuleSpec.free(Q2)
    Q = I("x^2", "y^3")
    for t in range(1, 4):
        assert samuel_function(Q, A, t) == length_artinian(Q ** t)


def test_hilbert_samuel_invariances():
    A = ModuleSpec.free(Q3)
    e = hilbert_samuel_multiplicity(I("x^2", "y", "z^3", ring=Q3), A)
    assert e == 6
    assert hilbert_samuel_multiplicity(I("z^2", "x", "y^3", ring=Q3), A) == e
    assert hilbert_samuel_multiplicity(I("x^2 + x*y", "y", "z^3 + y*z^2", ring=Q3), A) == e


def test_multiplicity_symbol_examples():
    A = ModuleSpec.free(Q2)
    assert multiplicity_symbol(polys("x", "y"), A) == 1
    assert multiplicity_symbol(polys("x^2", "y^3"), A) == 6
    assert multiplicity_symbol(polys("x", "y", "y"), A) == 0


def test_multiplicity_symbol_needs_multiplicity_system():
    with pytest.raises(ValueError):
        multiplicity_symbol(polys("x"), ModuleSpec.free(Q2))


@pytest.mark.parametrize("ys, N", [
    (("x", "y"), ()),
    (("x^2", "x*y + y^2"), ()),
    (("x", "y", "x + y"), ()),
    (("y",), ("x",)),
    (("x", "y"), ("x",)),
    (("x + y",), ("x*y",)),
])
def test_symbol_nonzero_exactly_for_parameters(ys, N):
    M = ModuleSpec(I(*N)) if N else ModuleSpec.free(Q2)
    ys = polys(*ys)
    assert (multiplicity_symbol(ys, M) != 0) == is_system_of_parameters(ys, M)
