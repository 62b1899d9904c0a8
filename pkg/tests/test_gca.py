import doctest
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sullivan import gca
from sullivan.errors import InputError
from sullivan.gca import (
    Element,
    Generator,
    Monomial,
    generating_series_dimension,
    monomial_basis,
    normalize_monomial,
)

F = Fraction

a = Generator("a", 2, index=0)
a1 = Generator("a1", 2, index=1)
a2 = Generator("a2", 2, index=2)
b = Generator("b", 3, stage=1, index=3)
c = Generator("c", 3, stage=1, index=4)


def E(gen):
    return Element.from_generator(gen)


def test_doctests():
    assert doctest.testmod(gca).failed == 0


def test_degree_one_generator_rejected():
    with pytest.raises(InputError):
        Generator("t", 1)


def test_odd_square_is_zero():
    sign, mon = normalize_monomial([b, b])
    assert sign == 0 and mon is None


def test_odd_swap_flips_sign():
    sign, mon = normalize_monomial([c, b])
    assert sign == -1
    assert str(mon) == "b*c"


def test_even_square():
    sign, mon = normalize_monomial([a, a])
    assert sign == 1
    assert str(mon) == "a^2"


def test_normalize_is_stable():
    sign, mon = normalize_monomial([a, b, a1])
    again_sign, again = normalize_monomial(
        [g for g, e in mon.powers for _ in range(e)]
    )
    assert (again_sign, again) == (1, mon)


def test_multiply_distributes():
    x = E(a)
    y = E(a) + E(b)
    assert x * y == Element(
        {Monomial.of(a, 2): F(1), Monomial((((a, 1)), (b, 1))): F(1)}
    )


def test_odd_anticommute():
    assert E(b) * E(c) == -(E(c) * E(b))


def test_squares_difference():
    lhs = (E(a1) + E(a2)) * (E(a1) - E(a2))
    assert lhs == Element({Monomial.of(a1, 2): F(1), Monomial.of(a2, 2): F(-1)})


def test_monomial_basis_single_even():
    basis = monomial_basis([a], 6)
    assert [str(m) for m in basis] == ["a^3"]


def test_monomial_basis_three_evens_degree_4():
    a3 = Generator("a3", 2, index=5)
    basis = monomial_basis([a1, a2, a3], 4)
    assert len(basis) == 6


def test_monomial_basis_mixed_parity():
    basis = monomial_basis([a, b], 7)
    assert [str(m) for m in basis] == ["a^2*b"]


def test_monomial_basis_degree_zero():
    assert [str(m) for m in monomial_basis([a, b], 0)] == ["1"]


def test_word_length_split():
    x = Element({Monomial.of(a, 2): F(1), Monomial.of(b): F(1)})
    split = x.word_length_split()
    assert set(split) == {1, 2}
    assert split[1] == E(b)
    assert split[2] == Element({Monomial.of(a, 2): F(1)})
    assert Element.zero().word_length_split() == {}


def test_split_three_terms():
    m2 = Monomial(((a1, 1), (a2, 1)))
    m3 = Monomial(((a1, 1), (a2, 1), (Generator("a3", 2, index=5), 1)))
    x = Element({m2: F(1), m3: F(1)})
    split = x.word_length_split()
    assert split[2] == Element({m2: F(1)})
    assert split[3] == Element({m3: F(1)})


def test_inhomogeneous_degree_raises():
    x = E(a) + E(b)
    with pytest.raises(InputError):
        x.homogeneous_degree()


def test_rendering_grammar():
    x = Element(
        {
            Monomial(((a1, 2), (b, 1))): F(1),
            Monomial.of(c): F(-3, 2),
        }
    )
    assert str(x) == "a1^2*b - 3/2*c"
    assert str(Element.zero()) == "0"
    assert str(-E(a)) == "-a"


gens_pool = [a, a1, a2, b, c, Generator("w", 5, stage=2, index=6)]


@st.composite
def homogeneous_elements(draw, degree=None):
    if degree is None:
        degree = draw(st.integers(2, 8))
    basis = monomial_basis(gens_pool, degree)
    if not basis:
        return Element.zero(), degree
    terms = {}
    for mon in draw(st.lists(st.sampled_from(basis), max_size=3)):
        terms[mon] = F(draw(st.integers(-3, 3)) or 1)
    return Element(terms), degree


@settings(max_examples=200, deadline=None)
@given(homogeneous_elements(), homogeneous_elements())
def test_graded_commutativity(xd, yd):
    x, p = xd
    y, q = yd
    sign = -1 if (p % 2) and (q % 2) else 1
    assert x * y == sign * (y * x)


@settings(max_examples=200, deadline=None)
@given(homogeneous_elements(), homogeneous_elements(), homogeneous_elements())
def test_associativity(xd, yd, zd):
    x, y, z = xd[0], yd[0], zd[0]
    assert (x * y) * z == x * (y * z)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 9))
def test_basis_size_matches_generating_series(degree):
    assert len(monomial_basis(gens_pool, degree)) == generating_series_dimension(
        gens_pool, degree
    )
