"""Exact Reshetikhin-Turaev invariants of annular tangles and the K-theory
classes of crossingless sheaves they produce."""

from .laurent import ONE, Q, ZERO, LaurentParseError, LaurentPoly
from .tensor import ArityError, LinearOperator, TensorVector, from_line_bundle, to_line_bundle_coeffs
from .tangles import Generator, Kind, TangleWord, WordParseError, instantiate_relations, rot_as_word
from .rt_rep import (
    DEFAULT,
    ConventionLedger,
    Conventions,
    apply_word,
    check_lemma_computation,
    psi_generator,
    psi_word,
    rot_matrix,
    twist_scalar,
    verify_relations,
)
from .matchings import Matching, MatchingError, decompose, enumerate_matchings, good_to_word, is_good
from .ktheory import (
    ClassResult,
    base_class,
    class_by_word,
    crossingless_class,
    good_class_formula,
    good_class_oracle,
    line_bundle_class,
)

__version__ = "0.1.0"
