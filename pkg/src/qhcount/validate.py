"""Cross-validation battery behind ``qhcount cross-validate``."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterator

from . import formulas as F
from .quiver import (
    deconcatenate,
    enumerate_tree_quivers,
    make_branch,
    make_line,
    opposite,
    orientations_of,
    random_tree_quiver,
)
from .structures import count_brute, is_quasi_hereditary
from .thinmod import exhaustive_filtration, peel_filtration


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _mismatches(pairs) -> list:
    return [(key, a, b) for key, a, b in pairs if a != b]


def _result(name: str, bad: list, checked: int) -> CheckResult:
    if bad:
        return CheckResult(name, False, f"{len(bad)}/{checked} mismatches, first {bad[0]}")
    return CheckResult(name, True, f"{checked} cases")


def check_lines(max_n: int) -> CheckResult:
    pairs = [(n, count_brute(make_line(n)), F.catalan(n)) for n in range(1, max_n + 1)]
    return _result("line counts equal Catalan numbers", _mismatches(pairs), len(pairs))


def check_dynkin(max_n: int) -> CheckResult:
    pairs = []
    for n in range(4, max_n + 1):
        pairs.append((("D_branch", n), count_brute(make_branch(n - 3, 1, 1)),
                      F.dynkin_reference("D_branch", n)))
        pairs.append((("D_middle", n), count_brute(make_branch(1, n - 3, 1)),
                      F.dynkin_reference("D_middle", n)))
    for key, value in F.E_SERIES.items():
        if sum(key) + 1 <= max_n:
            pairs.append((("E", key), count_brute(make_branch(*key)), value))
    return _result("Dynkin D/E reference values", _mismatches(pairs), len(pairs))


def check_closed_forms(limit: int = 18) -> CheckResult:
    pairs = []
    for a in range(limit + 1):
        for b in range(limit + 1 - a):
            pairs.append((("1tu", a, b), F.q_closed_1tu(a, b), F.q_recursive(1, a, b)))
            pairs.append((("st1", a, b), F.q_closed_st1(a, b), F.q_recursive(a, b, 1)))
    return _result("closed forms match the recursion", _mismatches(pairs), len(pairs))


def check_recursion_vs_brute(max_n: int) -> CheckResult:
    pairs = []
    for total in range(max_n):
        for s in range(total + 1):
            for t in range(total + 1 - s):
                u = total - s - t
                pairs.append(((s, t, u), F.q_recursive(s, t, u),
                              count_brute(make_branch(s, t, u))))
    return _result("recursion matches brute force on branch quivers",
                   _mismatches(pairs), len(pairs))


def _random_quivers(max_n: int, count: int, rng: random.Random):
    for _ in range(count):
        yield random_tree_quiver(rng.randint(1, max_n), rng)


def check_opposite(max_n: int, rng: random.Random, count: int = 50) -> CheckResult:
    pairs = [(q.arrows, count_brute(q), count_brute(opposite(q)))
             for q in _random_quivers(max_n, count, rng)]
    return _result("opposite quiver has the same count", _mismatches(pairs), len(pairs))


def check_deconcatenation(max_n: int, rng: random.Random, count: int = 50) -> CheckResult:
    pairs = []
    while len(pairs) < count:
        q = random_tree_quiver(rng.randint(3, max(3, max_n)), rng)
        cuts = [v for v in q.vertices
                if q.degree(v) >= 2 and (q.is_sink(v) or q.is_source(v))]
        if not cuts:
            continue
        v = rng.choice(cuts)
        product = 1
        for piece in deconcatenate(q, v):
            product *= count_brute(piece.quiver)
        pairs.append(((q.arrows, v), count_brute(q), product))
    return _result("deconcatenation multiplies counts", _mismatches(pairs), len(pairs))


def check_universality(max_n: int) -> CheckResult:
    bad, checked = [], 0
    for n in range(1, max_n + 1):
        for q in enumerate_tree_quivers(n):
            for p in itertools.permutations(range(1, n + 1)):
                checked += 1
                if not is_quasi_hereditary(q, p).verdict:
                    bad.append((q.arrows, p, True, False))
    return _result("every permutation is quasi-hereditary", bad, checked)


def check_filtration_oracle(max_n: int) -> CheckResult:
    bad, checked = [], 0
    for n in range(1, max_n + 1):
        for q in enumerate_tree_quivers(n):
            for p in itertools.permutations(range(1, n + 1)):
                checked += 1
                peel = peel_filtration(q, p)
                oracle = exhaustive_filtration(q, p)
                if oracle is None or oracle.factor_multiset() != peel.factor_multiset():
                    bad.append((q.arrows, p, peel.factor_multiset(), oracle))
    return _result("peeling agrees with the exhaustive filtration search", bad, checked)


def check_identities(limit: int = 200) -> CheckResult:
    bad = [(t, True, False) for t in range(limit + 1) if not F.check_catalan_identities(t)]
    return _result("Catalan identities", bad, limit + 1)


def t_shaped_quivers(max_n: int) -> Iterator:
    for n in range(4, max_n + 1):
        for s in range(1, n - 2):
            for t in range(1, n - 1 - s):
                u = n - 1 - s - t
                if u >= 1:
                    yield from orientations_of(make_branch(s, t, u))


def path_quivers(max_n: int) -> Iterator:
    for n in range(1, max_n + 1):
        yield from orientations_of(make_line(n))


def check_mixed_dispatch(max_n: int) -> CheckResult:
    pairs = []
    for q in itertools.chain(path_quivers(max_n), t_shaped_quivers(max_n)):
        try:
            value = F.count_formula(q)
        except F.UnsupportedShapeError:
            continue
        pairs.append((q.arrows, value, count_brute(q)))
    return _result("formula dispatch matches brute force on all orientations",
                   _mismatches(pairs), len(pairs))


def run_battery(max_n: int, seed: int = 0,
                report: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    """Run every check scaled to ``max_n``.

    Exhaustive sweeps are capped: 6 for universality, 5 for the filtration
    oracle and 7 for the all-orientations dispatch check.
    """
    if not 1 <= max_n <= 9:
        raise ValueError("max-n must be between 1 and 9")
    rng = random.Random(seed)
    checks = [
        lambda: check_lines(max_n),
        lambda: check_dynkin(max_n),
        lambda: check_closed_forms(),
        lambda: check_recursion_vs_brute(max_n),
        lambda: check_opposite(max_n, rng),
        lambda: check_deconcatenation(max_n, rng),
        lambda: check_universality(min(max_n, 6)),
        lambda: check_filtration_oracle(min(max_n, 5)),
        lambda: check_identities(),
        lambda: check_mixed_dispatch(min(max_n, 7)),
    ]
    results = []
    for check in checks:
        res = check()
        results.append(res)
        if report is not None:
            report(res)
    return results
