"""Finitely presented graded-commutative cohomology rings (A, 0).

A presentation is a list of generators (degrees >= 2, all stage 0), a list of
homogeneous relation elements in the free cover, and a truncation degree N_A
beyond which no statement is made.  Graded components are computed by exact
linear algebra on the degree slices of the relation ideal: the degree-m slice
is spanned by all products monomial * relation of degree m, and the canonical
basis of A^m consists of the monomials at the non-pivot columns of its
reduced row-echelon form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import expr
from .errors import InputError, TruncationError
from .gca import Element, Generator, Monomial, monomial_basis
from .linalg import RowSpace

_ZERO = Fraction(0)


class GradedBasis:
    """Canonical basis of one graded component A^m."""

    def __init__(self, degree: int, monomials: list[Monomial], relation_space: RowSpace):
        self.degree = degree
        self._monomials = monomials
        self._index = {m: i for i, m in enumerate(monomials)}
        self._relations = relation_space
        pivots = set(relation_space.pivots())
        self.representatives: list[Monomial] = [
            m for i, m in enumerate(monomials) if i not in pivots
        ]
        self._rep_positions = [i for i in range(len(monomials)) if i not in pivots]

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def _vector(self, element: Element) -> dict[int, Fraction]:
        vec: dict[int, Fraction] = {}
        for mon, c in element.terms():
            i = self._index.get(mon)
            if i is None:
                raise InputError(
                    f"monomial {mon} does not live in degree {self.degree}"
                )
            vec[i] = c
        return vec

    def coordinates(self, element: Element) -> tuple[Fraction, ...]:
        """Coordinates of the class of ``element`` in the canonical basis."""
        if not element.is_zero and element.homogeneous_degree() != self.degree:
            raise InputError("element has the wrong degree for this component")
        reduced = self._relations.reduce(self._vector(element))
        return tuple(reduced.get(i, _ZERO) for i in self._rep_positions)

    def reduce(self, element: Element) -> Element:
        """Canonical representative of the class of ``element``."""
        coords = self.coordinates(element)
        return Element(
            {mon: c for mon, c in zip(self.representatives, coords) if c}
        )


class IndecomposableBasis:
    """Basis of A^m modulo decomposables, with chosen monomial lifts."""

    def __init__(self, degree: int, lifts: list[Monomial]):
        self.degree = degree
        self.lifts = lifts

    @property
    def dimension(self) -> int:
        return len(self.lifts)


class PresentedAlgebra:
    """A graded-commutative algebra presented by generators and relations."""

    def __init__(
        self,
        generators: Sequence[Generator],
        relations: Sequence[Element],
        truncation: int,
    ):
        self.generators = tuple(generators)
        self.relations = tuple(relations)
        self.truncation = truncation
        self._components: dict[int, GradedBasis] = {}
        self._indecomposables: dict[int, IndecomposableBasis] = {}

    @classmethod
    def from_strings(
        cls,
        generators: Sequence[tuple[str, int]],
        relations: Sequence[str],
        truncation: int,
    ) -> "PresentedAlgebra":
        """Build from (name, degree) pairs and relation expressions."""
        seen: dict[str, Generator] = {}
        gens = []
        for i, (name, degree) in enumerate(generators):
            if not expr.IDENTIFIER.match(name):
                raise InputError(f"invalid generator name {name!r}")
            if name in seen:
                raise InputError(f"duplicate generator name {name!r}")
            g = Generator(name, degree, stage=0, index=i)
            seen[name] = g
            gens.append(g)
        rels = [expr.parse_element(text, seen) for text in relations]
        return cls(gens, rels, truncation)

    def generator_named(self, name: str) -> Generator | None:
        for g in self.generators:
            if g.name == name:
                return g
        return None

    def _check_degree(self, m: int):
        if m > self.truncation:
            raise TruncationError(
                f"degree {m} exceeds the algebra truncation {self.truncation}"
            )

    def graded_component(self, m: int) -> GradedBasis:
        self._check_degree(m)
        cached = self._components.get(m)
        if cached is not None:
            return cached
        monomials = monomial_basis(self.generators, m) if m >= 0 else []
        index = {mon: i for i, mon in enumerate(monomials)}
        space = RowSpace()
        for rel in self.relations:
            d = rel.homogeneous_degree()
            if d is None or d > m:
                continue
            for cof in monomial_basis(self.generators, m - d):
                product = Element.from_monomial(cof) * rel
                if product.is_zero:
                    continue
                space.insert({index[mon]: c for mon, c in product.terms()})
        basis = GradedBasis(m, monomials, space)
        self._components[m] = basis
        return basis

    def indecomposables(self, m: int) -> IndecomposableBasis:
        self._check_degree(m)
        cached = self._indecomposables.get(m)
        if cached is not None:
            return cached
        comp = self.graded_component(m)
        rep_index = {mon: i for i, mon in enumerate(comp.representatives)}
        decomposables = RowSpace()
        for p in range(1, m // 2 + 1):
            left = self.graded_component(p)
            right = self.graded_component(m - p)
            for x in left.representatives:
                for y in right.representatives:
                    product = Element.from_monomial(x) * Element.from_monomial(y)
                    coords = comp.coordinates(product)
                    vec = {i: c for i, c in enumerate(coords) if c}
                    if vec:
                        decomposables.insert(vec)
        pivots = set(decomposables.pivots())
        lifts = [mon for i, mon in enumerate(comp.representatives) if i not in pivots]
        result = IndecomposableBasis(m, lifts)
        self._indecomposables[m] = result
        return result

    def product(self, x: Element, y: Element) -> Element:
        """Cup product: multiply in the free cover, reduce modulo relations."""
        product = x * y
        if product.is_zero:
            return product
        degree = product.homogeneous_degree()
        self._check_degree(degree)
        return self.graded_component(degree).reduce(product)

    def reduce(self, x: Element) -> Element:
        if x.is_zero:
            return x
        return self.graded_component(x.homogeneous_degree()).reduce(x)


def validate_presentation(algebra: PresentedAlgebra) -> list[str]:
    """Check the presentation; returns a list of problems (empty if valid)."""
    problems = []
    if algebra.truncation < 2:
        problems.append(f"truncation {algebra.truncation} is below 2")
    degrees = [g.degree for g in algebra.generators]
    for g in algebra.generators:
        if g.stage != 0:
            problems.append(f"generator {g.name!r} has nonzero stage {g.stage}")
        if g.degree < 2:
            problems.append(f"generator {g.name!r} has degree {g.degree} < 2")
    min_degree = min(degrees, default=0)
    for i, rel in enumerate(algebra.relations):
        label = f"relation #{i + 1} ({rel})"
        if rel.is_zero:
            problems.append(f"{label}: zero relation")
            continue
        if not rel.is_homogeneous:
            problems.append(
                f"{label}: inhomogeneous (degrees {sorted(rel.degrees())})"
            )
            continue
        d = rel.homogeneous_degree()
        if d < 2 * min_degree:
            problems.append(
                f"{label}: degree {d} lies in the indecomposable range "
                f"(below {2 * min_degree})"
            )
        if d > algebra.truncation:
            problems.append(
                f"{label}: degree {d} exceeds the truncation {algebra.truncation}"
            )
    return problems


def graded_component(algebra: PresentedAlgebra, m: int) -> GradedBasis:
    return algebra.graded_component(m)


def indecomposables(algebra: PresentedAlgebra, m: int) -> IndecomposableBasis:
    return algebra.indecomposables(m)


def product_in_A(algebra: PresentedAlgebra, x: Element, y: Element) -> Element:
    return algebra.product(x, y)
