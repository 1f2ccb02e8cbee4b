"""Exact Catalan-number formulas for counting quasi-hereditary structures.

``q(s, t, u)`` is the number of structures on the path algebra of the branch
quiver ``make_branch(s, t, u)``.  Everything here is integer arithmetic.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .quiver import Quiver, ShapeKind, full_deconcatenation, recognize_shape


class UnsupportedShapeError(ValueError):
    pass


def catalan(k: int) -> int:
    if k < 0:
        raise ValueError("Catalan numbers are defined for k >= 0")
    return math.comb(2 * k, k) // (k + 1)


def check_catalan_identities(t: int) -> bool:
    """Check three Catalan identities at ``t``, scaled by 2 to stay integral:

    * ``(t + 2) c[t+1] == 2 (2t + 1) c[t]``
    * ``sum_k c[k] c[t-k] == c[t+1]``
    * ``2 sum_k k c[k] c[t-k] == t c[t+1]``
    """
    c = [catalan(k) for k in range(t + 2)]
    first = (t + 2) * c[t + 1] == 2 * (2 * t + 1) * c[t]
    second = sum(c[k] * c[t - k] for k in range(t + 1)) == c[t + 1]
    third = 2 * sum(k * c[k] * c[t - k] for k in range(t + 1)) == t * c[t + 1]
    return first and second and third


def normalize(s: int, t: int, u: int) -> tuple[int, int, int]:
    """Swap the out-arms so that ``t >= u``; the two arms are interchangeable."""
    if min(s, t, u) < 0:
        raise ValueError(f"branch parameters must be nonnegative, got {(s, t, u)}")
    return (s, t, u) if t >= u else (s, u, t)


def q_recursive(s: int, t: int, u: int) -> int:
    """``q(s, t, u)`` from the ideal-quotient recursion.

    Empty sums vanish, so ``q(0, 0, 0) = c0**3 = 1`` needs no special case.
    """
    return _q(*normalize(s, t, u))


@lru_cache(maxsize=None)
def _q(s: int, t: int, u: int) -> int:
    c = catalan
    total = c(s) * c(t) * c(u)
    total += sum(c(s - i) * _q(*normalize(i - 1, t, u)) for i in range(1, s + 1))
    total += sum(c(t - j) * _q(*normalize(s, j - 1, u)) for j in range(1, t + 1))
    total += sum(c(u - k) * _q(*normalize(s, t, k - 1)) for k in range(1, u + 1))
    total -= sum(
        c(t - j) * c(u - k) * _q(*normalize(s, j - 1, k - 1))
        for j in range(1, t + 1)
        for k in range(1, u + 1)
    )
    return total


def q_closed_1tu(t: int, u: int) -> int:
    """Closed form of ``q(1, t, u)``."""
    c = catalan
    return (c(t + 2) - c(t + 1)) * (c(u + 2) - c(u + 1)) + c(t + 1) * c(u + 1)


def q_closed_st1(s: int, t: int) -> int:
    """Closed form of ``q(s, t, 1)``."""
    c = catalan
    value = (t + 1) * c(s + t + 2) - 3 * t * c(s + t + 1)
    value -= sum((k + 1) * c(t - k - 1) * c(s + k + 2) for k in range(t - 1))
    if value < 0:
        raise ArithmeticError(f"q_closed_st1({s}, {t}) came out negative: {value}")
    return value


# Published values for the exceptional Dynkin shapes, keyed by (s, t, u).
E_SERIES = {
    (1, 2, 2): 106,
    (2, 2, 1): 130,
    (1, 3, 2): 322,
    (2, 3, 1): 416,
    (3, 2, 1): 453,
    (1, 4, 2): 1020,
    (2, 4, 1): 1368,
    (4, 2, 1): 1584,
}


def dynkin_reference(family: str, key) -> int:
    """Reference counts for Dynkin shapes.

    ``A``: line on ``key`` vertices.  ``D_branch``: ``q(key-3, 1, 1)``.
    ``D_middle``: ``q(1, key-3, 1)``.  ``E``: table lookup by ``(s, t, u)``.
    """
    c = catalan
    if family == "A":
        return c(key)
    if family in ("D_branch", "D_middle"):
        if key < 3:
            raise KeyError(f"{family} is defined for n >= 3, got {key}")
        if family == "D_branch":
            return 2 * c(key) - 3 * c(key - 1)
        return 3 * c(key - 1) - c(key - 2)
    if family == "E":
        try:
            return E_SERIES[tuple(key)]
        except (KeyError, TypeError):
            raise KeyError(f"no E-series value for {key!r}") from None
    raise KeyError(f"unknown Dynkin family {family!r}")


def count_formula(q: Quiver) -> int:
    """Count structures on ``KQ`` without enumeration.

    Deconcatenate fully, count each piece as a line or a (possibly opposite)
    branch quiver, and multiply.  Raises :class:`UnsupportedShapeError` when a
    piece is anything else.
    """
    total = 1
    for piece in full_deconcatenation(q):
        shape = recognize_shape(piece.quiver)
        if shape.kind is ShapeKind.LINE:
            total *= catalan(shape.params[0])
        elif shape.kind in (ShapeKind.BRANCH, ShapeKind.OPPOSITE_BRANCH):
            total *= q_recursive(*shape.params)
        else:
            raise UnsupportedShapeError(
                f"no formula for the piece on original vertices {list(piece.origin)}")
    return total
