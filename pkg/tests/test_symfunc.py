from collections import Counter
from fractions import Fraction
from itertools import product

from hilbdesc.algebra import ONE, T1, T2, Alphabet, MultiSeries, RatFunc, TLaurent, series_exp
from hilbdesc.partitions import Partition, enumerate_partitions
from hilbdesc.symfunc import (SymFunc, basis_m_to_p, basis_p_to_m, exp_minus_over_M, op_U,
                              p_to_m_matrix, pleth_eval, qt_inner, star_inner)


def _p_in_three_vars(mu):
    """p_mu(x1, x2, x3) as a Counter of exponent vectors."""
    poly = Counter({(0, 0, 0): 1})
    for part in mu:
        new = Counter()
        for e, c in poly.items():
            for i in range(3):
                f = list(e)
                f[i] += part
                new[tuple(f)] += c
        poly = new
    return poly


def test_p_to_m_against_three_variable_expansion():
    for n in range(1, 6):
        parts = enumerate_partitions(n)
        M = p_to_m_matrix(n)
        for i, mu in enumerate(parts):
            poly = _p_in_three_vars(mu)
            for j, lam in enumerate(parts):
                if len(lam) <= 3:
                    exp = tuple(list(lam) + [0] * (3 - len(lam)))
                    assert M[i][j] == poly[exp], (mu, lam)


def test_basis_roundtrip():
    F = SymFunc(3, {Partition([2, 1]): RatFunc(T1, ONE - T2), Partition([3]): RatFunc.coerce(2)})
    assert basis_m_to_p(basis_p_to_m(F), 3) == F


def test_plethysm_on_alphabet_is_adams():
    vars_ = ("x",)
    X = MultiSeries(vars_, (4,), {(1,): RatFunc.coerce(T1)})
    F = SymFunc.p([2], 4)
    assert pleth_eval(F, X) == MultiSeries(vars_, (4,), {(2,): RatFunc.coerce(T1 * T1)})
    assert pleth_eval(SymFunc.p([1, 1], 2), 1 - T2) == RatFunc.coerce((ONE - T2) ** 2)


def test_exp_minus_over_M_matches_series_exp():
    cap = 4
    E = exp_minus_over_M(cap)
    vars_ = ("x",)
    got = pleth_eval(E, MultiSeries(vars_, (cap,), {(1,): RatFunc.one()}))
    inv = RatFunc(ONE, (ONE - T1) * (ONE - T2))
    want = series_exp(MultiSeries(vars_, (cap,), {(1,): -inv}))
    assert got == want


def test_op_U_shifts_alphabet():
    F = SymFunc.p([2, 1], 3)
    vars_ = ("x",)
    X = MultiSeries(vars_, (3,), {(1,): RatFunc.one()})
    assert pleth_eval(op_U(F), X) == pleth_eval(F, X + RatFunc.one())


def test_inner_products_on_power_sums():
    p2 = SymFunc.p([2])
    assert qt_inner(p2, p2) == RatFunc(2 * (ONE - T2 ** 2), ONE - T1 ** 2)
    assert star_inner(p2, p2) == RatFunc.coerce(-2 * (ONE - T1 ** 2) * (ONE - T2 ** 2))
    assert star_inner(p2, SymFunc.p([1, 1])) == RatFunc.zero()
