"""Exact counts of quasi-hereditary structures on path algebras of tree quivers."""

from .formulas import (
    UnsupportedShapeError,
    catalan,
    check_catalan_identities,
    count_formula,
    dynkin_reference,
    q_closed_1tu,
    q_closed_st1,
    q_recursive,
)
from .quiver import (
    Quiver,
    ShapeDescriptor,
    ShapeKind,
    deconcatenate,
    full_deconcatenation,
    make_branch,
    make_line,
    opposite,
    parse_quiver,
    reachable_set,
    recognize_shape,
)
from .structures import (
    ClassRecord,
    Permutation,
    count_brute,
    enumerate_structures,
    is_quasi_hereditary,
    standard_tuple,
)
from .thinmod import (
    boundary_set,
    end_is_local,
    exhaustive_filtration,
    peel_filtration,
    projective,
    standard_support,
)

__version__ = "0.1.0"
