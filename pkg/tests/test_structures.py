import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhcount.quiver import (
    deconcatenate,
    enumerate_tree_quivers,
    make_branch,
    make_line,
    opposite,
    random_relabeling,
)
from qhcount.structures import (
    EnumerationCapError,
    Permutation,
    count_brute,
    enumerate_structures,
    is_quasi_hereditary,
    standard_tuple,
)
from qhcount.thinmod import regular_dimension

from conftest import tree_quivers


def test_permutation_validation():
    assert Permutation([2, 1])(1) == 2
    assert Permutation.parse("3, 1,2") == (3, 1, 2)
    for bad in ([1, 1], [0, 1], [1, 3]):
        with pytest.raises(ValueError):
            Permutation(bad)
    with pytest.raises(ValueError):
        Permutation.parse("1,a")


def test_standard_tuple_line_two():
    q = make_line(2)
    assert standard_tuple(q, (1, 2)) == ({1}, {2})
    assert standard_tuple(q, (2, 1)) == ({1, 2}, {2})


def test_standard_tuple_all_projective():
    q = make_branch(1, 2, 1)
    # sources get the highest priorities
    sigma = (4, 5, 3, 1, 2)
    from qhcount.quiver import reachable_set
    assert standard_tuple(q, sigma) == tuple(reachable_set(q, i) for i in q.vertices)


def test_certificates():
    cert = is_quasi_hereditary(make_line(3), (1, 2, 3))
    assert cert.verdict and cert.supports == ({1}, {2}, {3})
    assert is_quasi_hereditary(make_line(1), (1,)).verdict
    q = make_branch(1, 1, 1)
    assert all(is_quasi_hereditary(q, p).verdict for p in itertools.permutations(range(1, 5)))


@settings(max_examples=60)
@given(tree_quivers(max_n=7), st.data())
def test_verdict_universality(q, data):
    sigma = data.draw(st.permutations(range(1, q.n + 1)))
    cert = is_quasi_hereditary(q, sigma)
    assert cert.verdict
    assert cert.filtration.total_dimension == regular_dimension(q)


def test_enumerate_small():
    recs = enumerate_structures(make_line(2))
    assert [r.class_size for r in recs] == [1, 1]
    assert [r.representative for r in recs] == [(1, 2), (2, 1)]
    assert len(enumerate_structures(make_line(1))) == 1
    recs = enumerate_structures(make_branch(1, 1, 1))
    assert len(recs) == 13
    assert sum(r.class_size for r in recs) == 24


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 5), (4, 14), (5, 42),
                                        (6, 132), (7, 429), (8, 1430)])
def test_lines_are_catalan(n, expected):
    assert count_brute(make_line(n)) == expected


@pytest.mark.parametrize("stu,expected", [((1, 2, 2), 106), ((2, 2, 1), 130)])
def test_e6_values(stu, expected):
    assert count_brute(make_branch(*stu)) == expected


def test_records_are_sorted_minimal_and_partition():
    q = make_branch(2, 1, 1)
    recs = enumerate_structures(q)
    reps = [r.representative for r in recs]
    assert reps == sorted(reps)
    assert sum(r.class_size for r in recs) == math.factorial(q.n)
    for r in recs:
        members = [p for p in itertools.permutations(range(1, q.n + 1))
                   if standard_tuple(q, p) == r.supports]
        assert len(members) == r.class_size
        assert min(members) == r.representative


def test_parallel_matches_serial():
    q = make_branch(2, 2, 1)
    assert enumerate_structures(q, jobs=3) == enumerate_structures(q)
    assert count_brute(q, jobs=2) == 130


def test_cap():
    with pytest.raises(EnumerationCapError):
        count_brute(make_line(11))
    with pytest.raises(EnumerationCapError):
        count_brute(make_line(5), cap=4)
    with pytest.raises(EnumerationCapError):
        count_brute(make_line(3), cap=12)


@settings(max_examples=40, deadline=None)
@given(tree_quivers(max_n=7))
def test_opposite_invariance(q):
    assert count_brute(q) == count_brute(opposite(q))


@settings(max_examples=40, deadline=None)
@given(tree_quivers(max_n=7), st.integers(0, 10**6))
def test_relabeling_invariance(q, seed):
    assert count_brute(random_relabeling(q, random.Random(seed))) == count_brute(q)


@settings(max_examples=40, deadline=None)
@given(tree_quivers(min_n=3, max_n=7), st.data())
def test_deconcatenation_product(q, data):
    cuts = [v for v in q.vertices if q.degree(v) >= 2 and (q.is_sink(v) or q.is_source(v))]
    if not cuts:
        return
    v = data.draw(st.sampled_from(cuts))
    product = math.prod(count_brute(p.quiver) for p in deconcatenate(q, v))
    assert count_brute(q) == product


def test_indexed_tuples_equal_unordered_sets():
    for n in range(1, 7):
        for q in enumerate_tree_quivers(n):
            by_tuple, by_set = set(), set()
            for p in itertools.permutations(range(1, n + 1)):
                tup = standard_tuple(q, p)
                by_tuple.add(tup)
                by_set.add(frozenset(tup))
            assert len(by_tuple) == len(by_set)
