"""Exact checks of the symmetric-function identities the series rest on."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .algebra.laurent import ONE, TLaurent
from .algebra.ratfunc import RatFunc
from .algebra.series import Alphabet, MultiSeries, exp_alphabet, series_exp
from .hilb_c2 import _chars, _over_M, _y_alphabet, b_poly_at, c_lambda_at
from .macdonald import MacdonaldCache, modified_H
from .partitions import Partition, partitions_up_to, z_lambda
from .symfunc import SymFunc, op_nabla, op_U, op_Ustar, pleth_eval


def exp_times(A: RatFunc, degree_cap: int) -> SymFunc:
    """Exp[X * A] for a coefficient A, in the power-sum basis."""
    coeffs = {}
    for mu in partitions_up_to(degree_cap):
        v = RatFunc(TLaurent.constant(Fraction(1, z_lambda(mu))), ONE)
        for part in mu:
            v = v * A.adams(part)
        coeffs[mu] = v
    return SymFunc(degree_cap, coeffs)


def operator_sides(lam: Sequence[int], degree_cap: int, cache: Optional[MacdonaldCache] = None):
    """(nabla U* U H_lambda, Exp[X/M] Exp[-X B_lambda]) truncated at degree_cap."""
    lam = Partition(lam)
    H = modified_H(lam, cache).with_cap(degree_cap)
    lhs = op_nabla(op_Ustar(op_U(H)))
    A = RatFunc(ONE, (ONE - TLaurent.monomial(1, 0)) * (ONE - TLaurent.monomial(0, 1))) - RatFunc.coerce(b_poly_at(lam))
    return lhs, exp_times(A, degree_cap)


def operator_identity(lam: Sequence[int], degree_cap: Optional[int] = None, cache=None) -> bool:
    lam = Partition(lam)
    lhs, rhs = operator_sides(lam, degree_cap if degree_cap is not None else lam.size + 2, cache)
    return lhs == rhs


def exchange_series(X: Alphabet, Y: Alphabet, trunc, mtotal=None, cache=None) -> MultiSeries:
    """Exp[Y/M] sum_lambda H_lambda[X]/C_lambda Exp[-Y B_lambda], truncated."""
    prefactor = series_exp(_over_M(Y, trunc, mtotal))
    Xser = X.to_series(trunc, mtotal)
    probe = MultiSeries(X.variables, trunc, None, mtotal)
    body = probe.like()
    for lam in partitions_up_to(probe.max_grade()):
        Hx = pleth_eval(modified_H(lam, cache), Xser)
        if not Hx:
            continue
        B = b_poly_at(lam)
        damp = exp_alphabet(Alphabet(Y.variables, {e: -(c * B) for e, c in Y.terms.items()}), trunc, mtotal)
        body = body + (Hx * damp).scale(RatFunc(ONE, c_lambda_at(lam)))
    return prefactor * body


@dataclass
class SymmetryReport:
    chars: List[str]
    degree: int
    ok: bool
    compared: int


def symmetry_check(classes, degree: int = 4, cache=None) -> SymmetryReport:
    """Compare the expression at (X, Y) = (q, sum m_j u_j) with its swap,
    over all coefficients of total degree <= degree."""
    chars = _chars(classes)
    variables = ("q",) + tuple(f"m{j + 1}" for j in range(len(chars)))
    trunc = (degree,) * len(variables)
    X = Alphabet.variable(variables, 0)
    Y = _y_alphabet(variables, chars)
    a = exchange_series(X, Y, trunc, degree, cache)
    b = exchange_series(Y, X, trunc, degree, cache)
    keys = [e for e in set(a.coeffs) | set(b.coeffs) if sum(e) <= degree]
    ok = all(a[e] == b[e] for e in keys)
    return SymmetryReport([str(c) for c in chars], degree, ok, len(keys))
