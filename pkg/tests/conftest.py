from fractions import Fraction

import pytest
from hypothesis import strategies as st

from sullivan.fixtures import build_fixture
from sullivan.gca import Element, Generator, monomial_basis
from sullivan.presented import PresentedAlgebra


@pytest.fixture(scope="session")
def cp1():
    return build_fixture("cp1")


@pytest.fixture(scope="session")
def cp2_attach():
    return build_fixture("cp2-attach")


@pytest.fixture(scope="session")
def wedge3_s2():
    return build_fixture("wedge3-s2")


@pytest.fixture(scope="session")
def wedge3_e6():
    return build_fixture("wedge3-e6")


@pytest.fixture(scope="session")
def fatwedge_e6():
    return build_fixture("fatwedge-e6")


# ---------------------------------------------------------------------------
# hypothesis strategies

coefficients = st.sampled_from(
    [Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(1), Fraction(2), Fraction(3, 2)]
)


@st.composite
def small_presentations(draw):
    """A tiny presentation plus a model truncation it supports."""
    ngens = draw(st.integers(1, 2))
    degrees = [draw(st.sampled_from([2, 3])) for _ in range(ngens)]
    gens = [Generator(f"g{i}", d, 0, i) for i, d in enumerate(degrees)]
    truncation = draw(st.integers(3, 5))
    relations = []
    nrels = draw(st.integers(0, 2))
    lo, hi = 2 * min(degrees), truncation + 1
    for _ in range(nrels if lo <= hi else 0):
        degree = draw(st.integers(lo, hi))
        basis = monomial_basis(gens, degree)
        if not basis:
            continue
        terms = {}
        for mon in basis:
            c = draw(st.sampled_from([0, 0, 1, -1, 2]))
            if c:
                terms[mon] = Fraction(c)
        rel = Element(terms)
        if not rel.is_zero:
            relations.append(rel)
    return PresentedAlgebra(gens, relations, truncation + 1), truncation


@st.composite
def elements_of(draw, dgca, degree, max_terms=3):
    """A random homogeneous element of one degree of a FreeDGCA."""
    basis = dgca.basis(degree)
    if not basis:
        return Element.zero()
    picks = draw(
        st.lists(st.sampled_from(basis), min_size=0, max_size=max_terms)
    )
    out = Element.zero()
    for mon in picks:
        out = out + Element.from_monomial(mon, draw(coefficients))
    return out
