"""Nonequivariant series of a toric surface as a product of local C^2 factors."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import flint

from ..algebra.laurent import TLaurent
from ..algebra.ratfunc import DegenerateDirection, PoleError, RatFunc, subst_univariate
from ..algebra.series import MultiSeries
from ..hilb_c2 import series_shape, zc2_localization
from ..partitions import c_factors, partitions_up_to
from .surface import EqClassS, SurfaceError, ToricSurface

Direction = Tuple[int, int]


def nextprime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    k = max(int(n), 1) + 1
    while not flint.fmpz(k).is_prime():
        k += 1
    return k


def _max_exponent(values) -> int:
    m = 0
    for v in values:
        for e in v:
            m = max(m, abs(e))
    return m


def limit_t_one(c: RatFunc, direction: Optional[Direction] = None, second: Optional[Direction] = None) -> Fraction:
    """Exact value at t1 = t2 = 1 of a coefficient that is secretly Laurent.

    Substitutes t1 -> tau^e1, t2 -> tau^e2 and evaluates at tau = 1.  The
    denominator must become a unit monomial; a second direction re-checks.
    """
    bound = max(_max_exponent(c.num.terms()), _max_exponent(c.den.terms()))
    if direction is None:
        direction = (1, int(nextprime(bound)))
    if second is None:
        second = (1, int(nextprime(direction[1])))
    values = []
    for d in (direction, second):
        tries = 0
        while True:
            try:
                u = subst_univariate(c, *d)
                break
            except DegenerateDirection:
                tries += 1
                if tries > 8:
                    raise
                d = (d[0], int(nextprime(d[1])))
        if not u.is_laurent():
            raise PoleError(f"coefficient {c} has a pole at t = 1")
        values.append(u.value_at_one())
    if values[0] != values[1]:
        raise PoleError(f"directions {direction} and {second} disagree on {c}")
    return values[0]


def _direction_bound(S: ToricSurface, classes: Sequence[EqClassS], q_order: int) -> int:
    """Exceeds |<w, (1, 0)>| and |<w, (0, 1)>| for every exponent w that can
    appear in a denominator, so (1, P) cannot kill any of them."""
    w = max(max(abs(x) for x in fp.w1 + fp.w2) for fp in S.fixed_points)
    return 2 * (q_order + 1) * w + 1


def _local_factor(args):
    chars, weights, q_order, m_order, mtotal = args
    return zc2_localization(chars, q_order, m_order, mtotal=mtotal, weights=weights)


def _project(e: Tuple[int, int], d: Direction) -> Tuple[int, int]:
    return (e[0] * d[0] + e[1] * d[1], 0)


def _product_along(S: ToricSurface, classes: Sequence[EqClassS], q_order, m_order, mtotal,
                   d: Direction, jobs: int) -> MultiSeries:
    tasks = []
    for i, fp in enumerate(S.fixed_points):
        weights = (_project(fp.w1, d), _project(fp.w2, d))
        for lam in partitions_up_to(q_order):
            for e in c_factors(lam):
                img = (e[0] * weights[0][0] + e[1] * weights[1][0])
                if img == 0:
                    raise DegenerateDirection(f"direction {d} kills a tangent weight at fixed point {i}")
        chars = [g.chars[i].monomial_map(_project((1, 0), d), _project((0, 1), d)) for g in classes]
        tasks.append((chars, weights, q_order, m_order, mtotal))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            factors = list(pool.map(_local_factor, tasks))
    else:
        factors = [_local_factor(t) for t in tasks]
    total = factors[0]
    for f in factors[1:]:
        total = total * f
    return total


def _specialize(Z: MultiSeries) -> MultiSeries:
    out = MultiSeries(Z.variables, Z.trunc, None, Z.mtotal)
    for e, c in Z.coeffs.items():
        if not c.is_laurent():
            raise PoleError(f"coefficient at exponent {list(e)} keeps denominator {c.den}")
        v = c.laurent().value_at_one()
        if v:
            out.coeffs[e] = v
    return out


def z_surface(S: ToricSurface, classes: Sequence[EqClassS], q_order: int,
              m_order: Union[int, Sequence[int]] = 0, *, mtotal: Optional[int] = None,
              direction: Optional[Direction] = None, check: bool = True, jobs: int = 1) -> MultiSeries:
    """hat Z_S(alpha_1..alpha_l) with rational coefficients.

    Each fixed-point factor is computed with t1 -> tau^e1, t2 -> tau^e2
    already substituted into its weights and characters, so all coefficient
    arithmetic is univariate; every product coefficient must be a Laurent
    polynomial in tau, whose value at tau = 1 is the answer.  With ``check``
    a second direction must give the same series.
    """
    for g in classes:
        if g.surface is not S:
            raise SurfaceError(f"class {g.label} is not on {S.name}")
    _, _, mtotal = series_shape(len(classes), q_order, m_order, mtotal)
    if direction is None:
        direction = (1, int(nextprime(_direction_bound(S, classes, q_order))))
    directions = [direction]
    if check:
        directions.append((1, int(nextprime(direction[1]))))
    results = []
    for d in directions:
        for _ in range(8):
            try:
                Z = _product_along(S, classes, q_order, m_order, mtotal, d, jobs)
                break
            except DegenerateDirection:
                d = (d[0], int(nextprime(d[1])))
        else:
            raise DegenerateDirection("no usable substitution direction found")
        results.append(_specialize(Z))
    if check and results[0].coeffs != results[1].coeffs:
        raise PoleError(f"directions {directions} give different limits")
    return results[0]


def normalized_coefficients(Z: MultiSeries, chi_O: int = 1) -> MultiSeries:
    """(1 - q)^chi(O) * Z, whose m-coefficients are the polynomials f_a."""
    one_minus_q = MultiSeries(Z.variables, Z.trunc, {(0,) * len(Z.variables): Fraction(1),
                                                      (1,) + (0,) * (len(Z.variables) - 1): Fraction(-1)}, Z.mtotal)
    return Z * one_minus_q ** chi_O
