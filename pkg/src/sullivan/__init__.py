"""Exact-arithmetic Sullivan models and formality of cell attachments.

The package builds truncated bigraded minimal models of finitely presented
graded-commutative cohomology rings over Q, forms the twisted complex of a
cell attachment, and decides formality of the attached complex where the
cell-attachment criterion applies.  Everything is computed in exact rational
arithmetic.
"""

from .errors import (
    InputError,
    IntegrityError,
    ParseError,
    SullivanError,
    TruncationError,
)
from .gca import Element, Generator, Monomial, monomial_basis, normalize_monomial
from .presented import (
    PresentedAlgebra,
    graded_component,
    indecomposables,
    product_in_A,
    validate_presentation,
)
from .dgca import FreeDGCA, cohomology, d_extend, verify_d_squared
from .minimal_model import (
    BigradedModel,
    build_minimal_model,
    stage_slice,
    standardize,
    verify_standard,
)
from .attachment import (
    AlphaFunctional,
    AttachmentElement,
    AttachmentModel,
    attachment_cohomology,
    build_attachment,
    is_u_decomposable,
    u_class,
)
from .formality import (
    FORMAL,
    INCONCLUSIVE,
    NOT_FORMAL,
    EvenComplexResult,
    FormalityVerdict,
    even_complex_formality,
    formality_verdict,
    hurewicz_vanishes,
    is_special,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaFunctional",
    "AttachmentElement",
    "AttachmentModel",
    "BigradedModel",
    "Element",
    "EvenComplexResult",
    "FORMAL",
    "FormalityVerdict",
    "FreeDGCA",
    "Generator",
    "INCONCLUSIVE",
    "InputError",
    "IntegrityError",
    "Monomial",
    "NOT_FORMAL",
    "ParseError",
    "PresentedAlgebra",
    "SullivanError",
    "TruncationError",
    "attachment_cohomology",
    "build_attachment",
    "build_minimal_model",
    "cohomology",
    "d_extend",
    "even_complex_formality",
    "formality_verdict",
    "graded_component",
    "hurewicz_vanishes",
    "indecomposables",
    "is_special",
    "is_u_decomposable",
    "monomial_basis",
    "normalize_monomial",
    "product_in_A",
    "stage_slice",
    "standardize",
    "u_class",
    "validate_presentation",
    "verify_d_squared",
    "verify_standard",
]
