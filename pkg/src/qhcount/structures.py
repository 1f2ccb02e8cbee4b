"""Quasi-hereditary structures by exhaustive enumeration of permutations."""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .quiver import Quiver
from .thinmod import (
    FiltrationTrace,
    ThinModule,
    end_is_local,
    peel_filtration,
    standard_masks,
    standard_support,
)

log = logging.getLogger(__name__)

DEFAULT_CAP = 10
MAX_CAP = 11


class EnumerationCapError(ValueError):
    pass


class Permutation(tuple):
    """A permutation in one-line notation: ``p[i - 1]`` is the image of ``i``.

    Being a tuple it hashes, compares lexicographically and can be passed
    anywhere a sequence of priorities is expected.
    """

    def __new__(cls, images: Iterable[int]) -> Permutation:
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{list(images)} is not a permutation of 1..{len(images)}")
        return super().__new__(cls, images)

    def __call__(self, i: int) -> int:
        return self[i - 1]

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(1, n + 1))

    @classmethod
    def parse(cls, text: str) -> Permutation:
        try:
            return cls(int(x) for x in text.replace(" ", "").split(","))
        except ValueError as exc:
            raise ValueError(f"bad permutation {text!r}: {exc}") from None

    def __repr__(self) -> str:
        return f"Permutation({list(self)})"


StandardTuple = tuple[frozenset[int], ...]


def standard_tuple(q: Quiver, sigma: Sequence[int]) -> StandardTuple:
    """Entry ``i - 1`` is the support of the standard module at ``i``."""
    return tuple(standard_support(q, sigma, i).support for i in q.vertices)


@dataclass(frozen=True)
class QHCertificate:
    supports: StandardTuple
    locality_ok: tuple[bool, ...]
    filtration: FiltrationTrace

    @property
    def verdict(self) -> bool:
        return all(self.locality_ok) and self.filtration.complete

    def to_dict(self) -> dict:
        return {
            "supports": [sorted(s) for s in self.supports],
            "locality_ok": list(self.locality_ok),
            "filtration": self.filtration.to_dict(),
            "verdict": self.verdict,
        }


def is_quasi_hereditary(q: Quiver, sigma: Sequence[int]) -> QHCertificate:
    supports = standard_tuple(q, sigma)
    locality = tuple(end_is_local(ThinModule(q, s)) for s in supports)
    return QHCertificate(supports, locality, peel_filtration(q, sigma))


@dataclass(frozen=True)
class ClassRecord:
    representative: Permutation
    supports: StandardTuple
    class_size: int

    def to_dict(self) -> dict:
        return {
            "representative": list(self.representative),
            "supports": [sorted(s) for s in self.supports],
            "class_size": self.class_size,
        }


def _mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(b + 1 for b in range(mask.bit_length()) if mask >> b & 1)


def _scan(q: Quiver, lead: int | None) -> dict[tuple[int, ...], list]:
    """Classes among permutations with first image ``lead`` (all if None).

    Iteration is lexicographic, so the first permutation seen in a class is its
    smallest member.
    """
    n = q.n
    if lead is None:
        perms = itertools.permutations(range(1, n + 1))
    else:
        others = [v for v in range(1, n + 1) if v != lead]
        perms = ((lead,) + p for p in itertools.permutations(others))
    classes: dict[tuple[int, ...], list] = {}
    for p in perms:
        key = standard_masks(q, p)
        entry = classes.get(key)
        if entry is None:
            classes[key] = [p, 1]
        else:
            entry[1] += 1
    return classes


def _check_cap(q: Quiver, cap: int) -> None:
    if cap > MAX_CAP:
        raise EnumerationCapError(f"cap may not exceed {MAX_CAP}")
    if q.n > cap:
        raise EnumerationCapError(
            f"brute force over {q.n}! permutations exceeds the cap n <= {cap}")
    if q.n >= DEFAULT_CAP:
        log.warning("enumerating %d permutations; this will be slow", math.factorial(q.n))


def enumerate_structures(q: Quiver, cap: int = DEFAULT_CAP, jobs: int = 1) -> list[ClassRecord]:
    """Group all ``n!`` permutations by their standard modules.

    Every permutation is quasi-hereditary for a tree path algebra, so every
    permutation lands in some class.  With ``jobs > 1`` the work is split by
    leading image; merging keeps the smallest representative, so the result
    does not depend on the split.
    """
    _check_cap(q, cap)
    if jobs > 1 and q.n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan, itertools.repeat(q), range(1, q.n + 1)))
    else:
        parts = [_scan(q, None)]
    merged: dict[tuple[int, ...], list] = {}
    for part in parts:
        for key, (rep, size) in part.items():
            if key in merged:
                merged[key][0] = min(merged[key][0], rep)
                merged[key][1] += size
            else:
                merged[key] = [rep, size]
    records = [
        ClassRecord(Permutation(rep), tuple(_mask_to_set(m) for m in key), size)
        for key, (rep, size) in merged.items()
    ]
    records.sort(key=lambda r: r.representative)
    return records


def count_brute(q: Quiver, cap: int = DEFAULT_CAP, jobs: int = 1) -> int:
    """Number of quasi-hereditary structures, by enumeration."""
    if jobs > 1:
        return len(enumerate_structures(q, cap, jobs))
    _check_cap(q, cap)
    perms = itertools.permutations(range(1, q.n + 1))
    return len({standard_masks(q, p) for p in perms})
