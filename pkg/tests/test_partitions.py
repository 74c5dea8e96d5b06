from itertools import product

import pytest
from hypothesis import given, strategies as st

from hilbdesc.algebra import ONE, T1, T2, TLaurent
from hilbdesc.partitions import (Partition, arm, b_poly, c_factors, c_lambda, dominance_leq,
                                 enumerate_partitions, hook_lengths, leg, nabla_eigenvalue,
                                 parse_partition, z_lambda)


def brute_count(n):
    # weakly decreasing tuples of positive integers summing to n
    seen = set()
    for k in range(1, n + 1):
        for parts in product(range(1, n + 1), repeat=k):
            if sum(parts) == n and list(parts) == sorted(parts, reverse=True):
                seen.add(parts)
    return len(seen)


def test_counts_match_brute_force():
    for n in range(0, 9):
        assert len(enumerate_partitions(n)) == (1 if n == 0 else brute_count(n))
    assert len(enumerate_partitions(8)) == 22


def test_order_is_reverse_lex():
    assert enumerate_partitions(4) == tuple(map(Partition, [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]))


def test_invalid_partitions():
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, 0])


def test_arm_leg_example():
    lam = Partition([3, 1])
    assert arm(lam, (0, 0)) == 2 and leg(lam, (0, 0)) == 1
    assert arm(lam, (0, 2)) == 0 and leg(lam, (0, 2)) == 0
    with pytest.raises(ValueError):
        lam.arm((1, 1))


def test_hook_sum_identity():
    # sum of hook lengths = n(lambda) + n(lambda') + |lambda|
    for n in range(1, 8):
        for lam in enumerate_partitions(n):
            assert sum(hook_lengths(lam)) == lam.n() + lam.conjugate().n() + n


def test_hook_length_formula_counts_tableaux():
    from math import factorial

    # f^lambda summed in squares gives n!
    for n in range(1, 7):
        total = 0
        for lam in enumerate_partitions(n):
            h = 1
            for x in hook_lengths(lam):
                h *= x
            total += (factorial(n) // h) ** 2
        assert total == factorial(n)


@given(st.integers(0, 9).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))))
def test_conjugate_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().size == lam.size
    assert sorted(hook_lengths(lam)) == sorted(hook_lengths(lam.conjugate()))


def test_c_lambda_swaps_under_conjugation():
    for n in range(1, 6):
        for lam in enumerate_partitions(n):
            assert c_lambda(lam.conjugate()) == c_lambda(lam).swap()
            assert len(c_factors(lam)) == 2 * n


def test_single_box_data():
    lam = Partition([1])
    assert c_lambda(lam) == (ONE - T1) * (ONE - T2)
    assert b_poly(lam) == ONE
    assert nabla_eigenvalue(lam) == -ONE
    assert nabla_eigenvalue(Partition([2, 1])) == TLaurent.monomial(1, 1, -1)


def test_dominance():
    assert dominance_leq((1, 1, 1), (3,))
    assert not dominance_leq((3,), (2, 1))
    with pytest.raises(ValueError):
        dominance_leq((2,), (1,))


def test_misc():
    assert z_lambda((2, 1, 1)) == 2 * 1 * 2
    assert parse_partition("3,1") == Partition([3, 1])
    assert parse_partition("[2,2]") == Partition([2, 2])
    assert parse_partition("") == Partition()
    assert Partition([2, 1]).cells() == [(0, 0), (0, 1), (1, 0)]
