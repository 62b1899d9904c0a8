"""The cell-attachment model: Lambda(V) plus one exterior class u.

Attaching an n-cell along a functional alpha on the degree-(n-1) generators
yields the complex whose underlying space is Lambda(V) (+) Q.u with

    u^2 = 0,   u . x = 0 for every positive-degree x,
    d(u) = 0,  d(v) = d_model(v) + alpha(v) u   on generators v.

On monomials of word length >= 2 the twisted differential agrees with the
model differential, because the u-contributions are annihilated by the
product rules.  The complex is not free, so elements are represented as an
explicit pair (body in Lambda(V), u-coefficient).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InputError, IntegrityError, TruncationError
from .gca import Element, Generator
from .linalg import RowSpace, solve_in_span
from .minimal_model import BigradedModel

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class AlphaFunctional:
    """A functional on the degree-(n-1) generators: the attaching data.

    ``coefficients`` holds the nonzero values, keyed by generator.  For
    n == 2 the zero functional is forced (the attachment is a wedge) and
    ``coerced`` records that this happened.
    """

    n: int
    coefficients: tuple[tuple[Generator, Fraction], ...]
    coerced: bool = False

    @classmethod
    def build(
        cls,
        model: BigradedModel,
        n: int,
        pairs: Sequence[tuple[str, Fraction | int | str]],
    ) -> "AlphaFunctional":
        """Resolve (generator name, coefficient) pairs against a model."""
        if n < 2:
            raise InputError(f"cell dimension {n} is below 2")
        if n == 2:
            return cls(2, (), coerced=bool(pairs))
        by_name = {g.name: g for g in model.generators}
        unknown = [name for name, _ in pairs if name not in by_name]
        if unknown:
            raise InputError(
                "alpha names not found in the model: " + ", ".join(repr(u) for u in unknown)
            )
        resolved: dict[Generator, Fraction] = {}
        for name, raw in pairs:
            g = by_name[name]
            if g.degree != n - 1:
                raise InputError(
                    f"alpha is keyed on {name!r} of degree {g.degree}; "
                    f"an {n}-cell pairs only with degree {n - 1}"
                )
            resolved[g] = resolved.get(g, _ZERO) + Fraction(raw)
        coeffs = tuple(
            sorted(
                ((g, c) for g, c in resolved.items() if c),
                key=lambda p: p[0].sort_key(),
            )
        )
        return cls(n, coeffs)

    @classmethod
    def zero(cls, n: int) -> "AlphaFunctional":
        return cls(n, ())

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def value(self, gen: Generator) -> Fraction:
        for g, c in self.coefficients:
            if g == gen:
                return c
        return _ZERO

    def support(self) -> list[Generator]:
        return [g for g, _ in self.coefficients]

    def scaled(self, c: Fraction | int) -> "AlphaFunctional":
        c = Fraction(c)
        if not c:
            return AlphaFunctional(self.n, ())
        return AlphaFunctional(
            self.n, tuple((g, c * x) for g, x in self.coefficients), self.coerced
        )

    def of_element(self, x: Element) -> Fraction:
        """Linear extension: pairs with the word-length-1 part of x."""
        total = _ZERO
        for g, c in self.coefficients:
            total += c * _generator_coefficient(x, g)
        return total


def _generator_coefficient(x: Element, g: Generator) -> Fraction:
    from .gca import Monomial

    return x.coefficient(Monomial.of(g))


@dataclass(frozen=True)
class AttachmentElement:
    """An element of the attachment complex: a body in Lambda(V) plus c.u."""

    body: Element
    u: Fraction = _ZERO

    @property
    def is_zero(self) -> bool:
        return self.body.is_zero and not self.u

    def __add__(self, other: "AttachmentElement") -> "AttachmentElement":
        return AttachmentElement(self.body + other.body, self.u + other.u)

    def __sub__(self, other: "AttachmentElement") -> "AttachmentElement":
        return AttachmentElement(self.body - other.body, self.u - other.u)

    def __mul__(self, other):
        if isinstance(other, AttachmentElement):
            # u annihilates everything of positive degree and itself; it
            # survives only against the scalar parts of the other factor.
            from .gca import Monomial

            unit = Monomial.unit()
            s_scalar = self.body.coefficient(unit)
            o_scalar = other.body.coefficient(unit)
            return AttachmentElement(
                self.body * other.body, self.u * o_scalar + other.u * s_scalar
            )
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return AttachmentElement(self.body * c, self.u * c)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return AttachmentElement(-self.body, -self.u)

    def __eq__(self, other):
        if not isinstance(other, AttachmentElement):
            return NotImplemented
        return self.body == other.body and self.u == other.u

    def __str__(self):
        if self.is_zero:
            return "0"
        if not self.u:
            return str(self.body)
        u_text = "u" if self.u == 1 else ("-u" if self.u == -1 else f"{self.u}*u")
        if self.body.is_zero:
            return u_text
        if u_text.startswith("-"):
            return f"{self.body} - {u_text[1:]}"
        return f"{self.body} + {u_text}"


@dataclass(frozen=True)
class AttachmentClass:
    """A cohomology class of the attachment complex."""

    degree: int
    representative: AttachmentElement
    coordinates: tuple[Fraction, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.coordinates)

    def __str__(self):
        return f"[{self.representative}]"


class AttachmentModel:
    """The twisted complex for one n-cell attachment on a bigraded model."""

    def __init__(self, base: BigradedModel, alpha: AlphaFunctional):
        self.base = base
        self.alpha = alpha
        self.n = alpha.n
        self.truncation = base.truncation
        if self.n > self.truncation:
            raise TruncationError(
                f"an {self.n}-cell needs the model through degree {self.n}; "
                f"it is truncated at {self.truncation}"
            )
        known = set(base.generators)
        for g in alpha.support():
            if g not in known:
                raise InputError(f"alpha references {g.name!r}, not a model generator")
        self._cohomology_cache: dict[int, AttachmentCohomology] = {}
        bad = self.verify_d_squared()
        if bad is not None:
            raise IntegrityError(f"twisted differential does not square to zero at {bad.name}")

    # --- complex structure -------------------------------------------------
    def d(self, x: AttachmentElement) -> AttachmentElement:
        """Twisted differential; the u-part of the input is closed."""
        body = x.body
        pairing = _ZERO
        for g, c in self.alpha.coefficients:
            pairing += c * _generator_coefficient(body, g)
        return AttachmentElement(self.base.dgca.d(body), pairing)

    def multiply(self, x: AttachmentElement, y: AttachmentElement) -> AttachmentElement:
        return x * y

    def verify_d_squared(self) -> Generator | None:
        for g in self.base.generators:
            dd = self.d(self.d(AttachmentElement(Element.from_generator(g))))
            if not dd.is_zero:
                return g
        return None

    # --- cohomology ---------------------------------------------------------
    def cohomology(self, m: int) -> "AttachmentCohomology":
        if m > self.truncation:
            raise TruncationError(
                f"attachment cohomology in degree {m} exceeds the truncation "
                f"{self.truncation}"
            )
        cached = self._cohomology_cache.get(m)
        if cached is None:
            cached = AttachmentCohomology(self, m)
            self._cohomology_cache[m] = cached
        return cached

    def u_class(self) -> AttachmentClass:
        """The class of u in degree n; zero exactly when u became exact."""
        return self.cohomology(self.n).class_of(
            AttachmentElement(Element.zero(), _ONE)
        )

    def u_body_representative(self) -> Element | None:
        """A representative of [u] inside Lambda(V), when one exists.

        Subtracting a coboundary that contains u trades it for body terms;
        if no coboundary touches u, the class is genuinely new and None is
        returned.
        """
        return self.cohomology(self.n).u_as_body()

    def u_decomposable(self) -> tuple[bool, list | None]:
        """Is [u] a combination of products of positive-degree classes?"""
        u = self.u_class()
        if u.is_zero:
            raise InputError("u is zero in cohomology; decomposability is undefined")
        products: list[tuple[tuple[Fraction, ...], AttachmentClass, AttachmentClass]] = []
        target_space = self.cohomology(self.n)
        for p in range(1, self.n // 2 + 1):
            left = self.cohomology(p).classes
            right = self.cohomology(self.n - p).classes
            for c1 in left:
                for c2 in right:
                    cls = target_space.class_of(c1.representative * c2.representative)
                    if not cls.is_zero:
                        products.append((cls.coordinates, c1, c2))
        if not products:
            return False, None
        coeffs = solve_in_span([vec for vec, _, _ in products], u.coordinates)
        if coeffs is None:
            return False, None
        witness = [
            (c, c1, c2) for c, (_, c1, c2) in zip(coeffs, products) if c
        ]
        return True, witness


class AttachmentCohomology:
    """H^m of the attachment complex, canonical representatives included."""

    def __init__(self, mdl: AttachmentModel, m: int):
        self.model = mdl
        self.degree = m
        dgca = mdl.base.dgca
        source = dgca.basis(m)
        self._basis = source
        self._index = {mon: i for i, mon in enumerate(source)}
        self._u_index = len(source) if m == mdl.n else None
        ncols = len(source) + (1 if self._u_index is not None else 0)

        target = dgca.basis(m + 1)
        target_index = {mon: i for i, mon in enumerate(target)}
        u_target = len(target) if m + 1 == mdl.n else None

        constraint_rows: dict[int, dict[int, Fraction]] = {}
        for j, mon in enumerate(source):
            image = mdl.d(AttachmentElement(Element.from_monomial(mon)))
            for tmon, c in image.body.terms():
                constraint_rows.setdefault(target_index[tmon], {})[j] = c
            if image.u:
                if u_target is None:
                    raise IntegrityError("u-component appeared in the wrong degree")
                constraint_rows.setdefault(u_target, {})[j] = image.u
        constraints = RowSpace()
        for row in constraint_rows.values():
            constraints.insert(row)
        cocycles = constraints.kernel(ncols)

        self._image = RowSpace()
        if m >= 1:
            for mon in dgca.basis(m - 1):
                image = mdl.d(AttachmentElement(Element.from_monomial(mon)))
                vec = {self._index[t]: c for t, c in image.body.terms()}
                if image.u:
                    if self._u_index is None:
                        raise IntegrityError("u-component appeared in the wrong degree")
                    vec[self._u_index] = image.u
                if vec:
                    self._image.insert(vec)

        classes = RowSpace()
        for z in cocycles:
            classes.insert(self._image.reduce(z))
        self._class_rows = classes.fraction_rows()
        self._class_pivots = classes.pivots()
        self.classes = [
            AttachmentClass(m, self._element(row), self._unit_coords(i))
            for i, row in enumerate(self._class_rows)
        ]

    @property
    def dimension(self) -> int:
        return len(self._class_rows)

    def _element(self, vec: Mapping[int, Fraction]) -> AttachmentElement:
        body = {}
        u = _ZERO
        for i, c in vec.items():
            if i == self._u_index:
                u = c
            else:
                body[self._basis[i]] = c
        return AttachmentElement(Element(body), u)

    def _unit_coords(self, i: int) -> tuple[Fraction, ...]:
        return tuple(
            _ONE if j == i else _ZERO for j in range(len(self._class_rows))
        )

    def _vector(self, x: AttachmentElement) -> dict[int, Fraction]:
        vec: dict[int, Fraction] = {}
        for mon, c in x.body.terms():
            i = self._index.get(mon)
            if i is None:
                raise InputError(
                    f"monomial {mon} is not a degree-{self.degree} cochain"
                )
            vec[i] = c
        if x.u:
            if self._u_index is None:
                raise InputError(f"u does not live in degree {self.degree}")
            vec[self._u_index] = x.u
        return vec

    def u_as_body(self) -> Element | None:
        if self._u_index is None:
            return None
        best: dict[int, Fraction] | None = None
        for row in self._image.fraction_rows():
            c = row.get(self._u_index)
            if not c:
                continue
            vec: dict[int, Fraction] = {self._u_index: _ONE}
            factor = _ONE / c
            for col, v in row.items():
                w = vec.get(col, _ZERO) - factor * v
                if w:
                    vec[col] = w
                else:
                    vec.pop(col, None)
            if best is None or len(vec) < len(best):
                best = vec
        if best is None:
            return None
        return self._element(best).body

    def class_of(self, x: AttachmentElement) -> AttachmentClass:
        if not self.model.d(x).is_zero:
            raise InputError("element is not a cocycle of the attachment complex")
        if not x.body.is_zero and x.body.homogeneous_degree() != self.degree:
            raise InputError("element has the wrong degree")
        reduced = self._image.reduce(self._vector(x))
        coords = [_ZERO] * len(self._class_rows)
        residual = dict(reduced)
        for i, (p, row) in enumerate(zip(self._class_pivots, self._class_rows)):
            c = residual.get(p)
            if not c:
                continue
            coords[i] = c
            for col, v in row.items():
                w = residual.get(col, _ZERO) - c * v
                if w:
                    residual[col] = w
                else:
                    residual.pop(col, None)
        if residual:
            raise IntegrityError("cocycle does not reduce into the class basis")
        return AttachmentClass(self.degree, self._element(reduced), tuple(coords))


def build_attachment(model: BigradedModel, alpha: AlphaFunctional) -> AttachmentModel:
    """Attach one cell along ``alpha``; validates the twisted differential."""
    return AttachmentModel(model, alpha)


def attachment_cohomology(
    mdl: AttachmentModel, m: int
) -> tuple[int, list[AttachmentClass]]:
    space = mdl.cohomology(m)
    return space.dimension, space.classes


def u_class(mdl: AttachmentModel) -> AttachmentClass:
    return mdl.u_class()


def is_u_decomposable(mdl: AttachmentModel) -> tuple[bool, list | None]:
    return mdl.u_decomposable()
