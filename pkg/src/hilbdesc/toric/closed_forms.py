"""Known closed forms for descendent series on surfaces, checked against z_surface.

Notation: Z(alpha | k) = sum_n q^n chi(wedge^k alpha^[n]), so it equals
(-1)^k times the m^k coefficient of hat Z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..algebra.series import MultiSeries
from .series import z_surface
from .surface import EqClassS, ToricSurface, chern_classes, euler_char


@dataclass
class FormulaCheck:
    name: str
    match: bool
    order: Tuple[int, ...]
    mismatches: List[Tuple[Tuple[int, ...], str, str]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "match": self.match, "order": list(self.order),
                "mismatches": [[list(e), a, b] for e, a, b in self.mismatches[:5]]}


def _gbinom(c: int, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out = out * (c - i) / (i + 1)
    return out


def q_series(coeffs: Dict[int, Fraction], n: int) -> MultiSeries:
    return MultiSeries(("q",), (n,), {(k,): Fraction(v) for k, v in coeffs.items() if k <= n})


def inv_one_minus_q_power(chi: int, n: int) -> MultiSeries:
    """(1 - q)^(-chi)."""
    return q_series({k: _gbinom(-chi, k) * (-1) ** k for k in range(n + 1)}, n)


def _one_minus_qm_power(c: int, n: int, m: int) -> MultiSeries:
    return MultiSeries(("q", "m1"), (n, m), {(k, k): _gbinom(c, k) * (-1) ** k for k in range(min(n, m) + 1)})


def _with_m(s: MultiSeries, m: int) -> MultiSeries:
    """Promote a q-series to the (q, m1) ring."""
    return MultiSeries(("q", "m1"), (s.trunc[0], m), {(e[0], 0): c for e, c in s.coeffs.items()})


def _compare(name: str, got: MultiSeries, want: MultiSeries) -> FormulaCheck:
    bad = []
    keys = set(got.coeffs) | set(want.coeffs)
    for e in sorted(keys):
        if not (got.in_range(e) and want.in_range(e)):
            continue
        a, b = got[e], want[e]
        if a != b:
            bad.append((e, str(a), str(b)))
    order = tuple(min(x, y) for x, y in zip(got.trunc, want.trunc))
    return FormulaCheck(name, not bad, order, bad)


def _m_line(Z: MultiSeries, k: int, sign: bool = True) -> MultiSeries:
    s = Z.m_coefficient((k,))
    return s.scale(Fraction((-1) ** k)) if sign else s


def _slice_second(Z: MultiSeries, a2: int) -> MultiSeries:
    """Coefficient of m2^a2 as a series in (q, m1)."""
    return MultiSeries(("q", "m1"), Z.trunc[:2],
                       {e[:2]: c for e, c in Z.coeffs.items() if e[2] == a2})


# individual formulas -------------------------------------------------------------

def check_empty(S: ToricSurface, n: int, jobs: int = 1) -> FormulaCheck:
    Z = z_surface(S, [], n, jobs=jobs)
    return _compare(f"Z(empty) on {S.name}", Z, inv_one_minus_q_power(S.chi_O, n))


def check_single(S: ToricSurface, alpha: EqClassS, n: int, jobs: int = 1) -> FormulaCheck:
    Z = z_surface(S, [alpha], n, 1, jobs=jobs)
    chi = euler_char(S, alpha)
    want = q_series({1: chi}, n) * inv_one_minus_q_power(S.chi_O, n)
    return _compare(f"Z({alpha.label}|1) on {S.name}", _m_line(Z, 1), want)


def check_wedge(S: ToricSurface, L: EqClassS, n: int, m: int, jobs: int = 1) -> FormulaCheck:
    Z = z_surface(S, [L], n, m, jobs=jobs)
    want = _one_minus_qm_power(euler_char(S, L), n, m) * _with_m(inv_one_minus_q_power(S.chi_O, n), m)
    return _compare(f"wedge series of {L.label} on {S.name}", Z, want)


def _descex_rhs(S: ToricSurface, L: EqClassS, alpha: EqClassS, n: int, m: int) -> MultiSeries:
    terms = {}
    for k in range(n + 1):
        terms[(k + 1, k)] = terms.get((k + 1, k), 0) + euler_char(S, L.power(k) * alpha)
        terms[(k + 1, k + 1)] = terms.get((k + 1, k + 1), 0) - euler_char(S, L.power(k + 1) * alpha)
    inner = MultiSeries(("q", "m1"), (n, m), {e: Fraction(v) for e, v in terms.items()})
    pref = _one_minus_qm_power(euler_char(S, L), n, m) * _with_m(inv_one_minus_q_power(S.chi_O, n), m)
    return pref * inner


def _descex_lhs(S, L, alpha, n, m, jobs=1) -> MultiSeries:
    Z = z_surface(S, [L, alpha], n, (m, 1), jobs=jobs)
    return _slice_second(Z, 1).scale(Fraction(-1))


def check_descex(S: ToricSurface, L: EqClassS, alpha: EqClassS, n: int, m: int, jobs: int = 1) -> FormulaCheck:
    return _compare(f"wedge of {L.label} with {alpha.label} on {S.name}",
                    _descex_lhs(S, L, alpha, n, m, jobs), _descex_rhs(S, L, alpha, n, m))


def check_minus_line_cubed(S: ToricSurface, L: EqClassS, n: int, jobs: int = 1) -> FormulaCheck:
    Z = z_surface(S, [-L], n, 3, jobs=jobs)
    chi = lambda g: euler_char(S, g)
    L2, L3 = L.power(2), L.power(3)
    a = chi(L2) * chi(L) - chi(EqClassS.cotangent(S) * L3)
    num = {1: -chi(L3), 2: chi(L3) - a, 3: a - _gbinom(chi(L) + 2, 3)}
    want = q_series(num, n) * inv_one_minus_q_power(S.chi_O, n)
    return _compare(f"Z(-{L.label}|3) on {S.name}", _m_line(Z, 3), want)


def check_rank3(S: ToricSurface, V: EqClassS, n: int, jobs: int = 1) -> FormulaCheck:
    if V.rank != 3:
        raise ValueError("rank 3 bundle expected")
    Z = z_surface(S, [V], n, 3, jobs=jobs)
    chi = lambda g: euler_char(S, g)
    w2, w3 = V.wedge(2), V.wedge(3)
    a = chi(EqClassS.cotangent(S) * w3) + chi(w2 * V) - chi(w2) * chi(V)
    b = chi(w3)
    num = {1: b, 2: -a, 3: a - b + _gbinom(chi(V), 3)}
    want = q_series(num, n) * inv_one_minus_q_power(S.chi_O, n)
    return _compare(f"Z({V.label}|3) on {S.name}", _m_line(Z, 3), want)


def check_virtual(S: ToricSurface, alpha: EqClassS, n: int, jobs: int = 1) -> FormulaCheck:
    """Set m = 1 and L = K in the two-class wedge series."""
    K = EqClassS.canonical(S)
    lhs2 = _descex_lhs(S, K, alpha, n, n, jobs)
    got = {}
    for (k, j), c in lhs2.coeffs.items():
        got[k] = got.get(k, 0) + c
    c1, _ = chern_classes(S, alpha)
    Kc1 = S.intersect(S.canonical_divisor, c1)
    r = alpha.rank
    want = {}
    for k in range(1, n + 1):
        want[k] = -Kc1 + (-r * S.K2 * (k - 1))
    return _compare(f"virtual series of {alpha.label} on {S.name}", q_series(got, n), q_series(want, n))


def closed_form_suite(S: ToricSurface, parameters: Optional[dict] = None, jobs: int = 1) -> List[FormulaCheck]:
    """Run the closed forms that apply to S with the given bundles.

    ``parameters`` keys: q_order, m_order, line (Picard coordinates),
    alpha (Picard coordinates), rank3 (list of Picard coordinates),
    virtual_alpha (list of Picard coordinates).
    """
    p = dict(parameters or {})
    n = p.get("q_order", 5)
    m = p.get("m_order", 5)
    zero = tuple(0 for _ in S.pic_basis)
    L = EqClassS.from_pic(S, p.get("line", (1,) + zero[1:]))
    alpha = EqClassS.from_pic(S, p.get("alpha", zero))
    out = [check_empty(S, n, jobs), check_single(S, L, n, jobs), check_single(S, alpha, n, jobs),
           check_wedge(S, L, n, m, jobs), check_descex(S, L, alpha, n, m, jobs),
           check_minus_line_cubed(S, L, n, jobs)]
    for coords in p.get("rank3", []):
        V = EqClassS.from_pic(S, coords[0])
        for c in coords[1:]:
            V = V + EqClassS.from_pic(S, c)
        out.append(check_rank3(S, V, n, jobs))
    for coords in p.get("virtual_alpha", []):
        out.append(check_virtual(S, EqClassS.from_pic(S, coords), n, jobs))
    return out
