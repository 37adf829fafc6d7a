"""Hilbert basis completion against brute-force enumeration."""

import random

from hypothesis import given, settings, strategies as st

from sheafflow.hilbert import (hilbert_basis, hilbert_basis_eq,
                               is_nat_combination, nonneg_solutions_up_to,
                               syzygy_pairs)


def test_equalizer_projection_pair():
    # f(a,b) = a, g(a,b) = b: solutions a = b, generated by (1,1)
    basis = hilbert_basis_eq([[1, 0]], [[0, 1]])
    assert basis == [(1, 1)]


def test_zero_map_kernel_is_everything():
    basis = hilbert_basis([[0, 0, 0]])
    assert sorted(basis) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_infeasible_positive_row():
    assert hilbert_basis([[1, 1]]) == []


def test_three_to_two_conservation():
    # x1 + x2 = x3 over N^3
    basis = hilbert_basis([[1, 1, -1]])
    assert sorted(basis) == [(0, 1, 1), (1, 0, 1)]


def _random_matrix(rng, rows, cols, lo=-3, hi=3):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def test_completeness_against_brute_force():
    rng = random.Random(7)
    for _ in range(40):
        rows = rng.randint(1, 3)
        cols = rng.randint(1, 4)
        a = _random_matrix(rng, rows, cols)
        basis = hilbert_basis(a)
        sols = nonneg_solutions_up_to(a, 6)
        for s in sols:
            assert is_nat_combination(s, basis), (a, s, basis)
        for b in basis:
            assert all(sum(r[j] * b[j] for j in range(cols)) == 0 for r in a)


def test_minimality():
    rng = random.Random(11)
    for _ in range(20):
        a = _random_matrix(rng, 2, 4)
        basis = hilbert_basis(a)
        for i, b in enumerate(basis):
            others = basis[:i] + basis[i + 1:]
            assert not is_nat_combination(b, others), (a, basis)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3),
                min_size=1, max_size=2))
def test_hypothesis_solutions_generate(rows):
    basis = hilbert_basis(rows)
    for s in nonneg_solutions_up_to(rows, 4):
        assert is_nat_combination(s, basis)


def test_syzygies_of_bifurcating_star():
    # conservation at a 2-in 2-out vertex: Hilbert basis has four pair
    # generators with the single cross relation g0+g3 = g1+g2
    basis = hilbert_basis([[1, 1, -1, -1]])
    assert len(basis) == 4
    rels = syzygy_pairs(basis)
    assert len(rels) == 1
    k, l = rels[0]
    assert sum(k) == 2 and sum(l) == 2
    lhs = tuple(sum(k[i] * basis[i][j] for i in range(4)) for j in range(4))
    rhs = tuple(sum(l[i] * basis[i][j] for i in range(4)) for j in range(4))
    assert lhs == rhs
