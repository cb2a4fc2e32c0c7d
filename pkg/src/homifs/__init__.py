"""Exact symmetry checks for homogeneous iterated function systems on the real line."""

__version__ = "0.1.0"

from .multiset import DigitMultiset, all_distinct, multiset_equal, scale, sumset
from .laurent import LaurentPoly, genfun, poly_multiply, rescale_exponents, reversal_shift_equal
from .ifs import (
    BudgetExceeded,
    CoverReport,
    HomogeneousIFS,
    Inconclusive,
    Interval,
    check_cosc,
    check_ssc_certified,
    compose,
    cover,
    hausdorff_bounds,
    hull,
    same_attractor_test,
    similarity_dimension,
)
from .symmetry import (
    AlignmentWitness,
    SymmetryCertificate,
    attractor_symmetry_check,
    is_symmetric_multiset,
    lemma1_apply,
    lemma2_align,
    mirror_candidate,
    theorem_pipeline,
)
from .textio import format_ifs, parse_ifs
