"""Hypothesis strategies for small polynomials and homogeneous ideals."""

from fractions import Fraction

from hypothesis import strategies as st

from mixedmult.graded import monomials_of_degree
from mixedmult.ideal import Ideal
from mixedmult.poly import Polynomial

coefficients = st.one_of(
    st.integers(-6, 6),
    st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4)),
)


@st.composite
def polynomials(draw, ring, max_degree=3, max_terms=4):
    n = ring.nvars
    exps = st.tuples(*[st.integers(0, max_degree) for _ in range(n)])
    terms = draw(st.dictionaries(exps, coefficients, max_size=max_terms))
    return Polynomial(ring, terms)


@st.composite
def homogeneous_polynomials(draw, ring, degree, max_terms=3):
    monos = monomials_of_degree(ring.nvars, degree)
    chosen = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=max_terms, unique=True))
    terms = {e: draw(st.integers(-4, 4).filter(bool)) for e in chosen}
    return Polynomial(ring, terms)


@st.composite
def homogeneous_ideals(draw, ring, max_gens=3, max_degree=3):
    k = draw(st.integers(1, max_gens))
    gens = [draw(homogeneous_polynomials(ring, draw(st.integers(1, max_degree)))) for _ in range(k)]
    return Ideal(ring, gens)


@st.composite
def monomial_ideals(draw, ring, max_gens=3, max_degree=4):
    k = draw(st.integers(1, max_gens))
    gens = [draw(st.sampled_from(monomials_of_degree(ring.nvars, draw(st.integers(1, max_degree)))))
            for _ in range(k)]
    return Ideal.from_monomials(ring, gens)
