"""Symmetric functions over Q(t1, t2) in the power-sum basis.

Plethysm is diagonal on power sums (``p_n[X]`` is the n-th Adams operation
of ``X``), so power sums are the only basis stored.  The monomial basis is
materialized on demand for the Macdonald construction.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import flint

from .algebra.laurent import ONE, T1, T2, TLaurent, format_laurent, parse_laurent
from .algebra.ratfunc import RatFunc, ratfunc_sum
from .algebra.series import Alphabet, MultiSeries
from .partitions import Partition, enumerate_partitions, partitions_up_to, z_lambda


class SymFunc:
    """Finite sum of c_mu p_mu with |mu| <= degree_cap."""

    __slots__ = ("degree_cap", "coeffs")

    def __init__(self, degree_cap: int, coeffs: Optional[Mapping[Sequence[int], object]] = None):
        self.degree_cap = int(degree_cap)
        self.coeffs: Dict[Partition, RatFunc] = {}
        for mu, c in (coeffs or {}).items():
            mu = mu if isinstance(mu, Partition) else Partition(mu)
            if mu.size > self.degree_cap:
                continue
            c = RatFunc.coerce(c)
            if c:
                prev = self.coeffs.get(mu)
                c = c if prev is None else prev + c
                if c:
                    self.coeffs[mu] = c
                else:
                    self.coeffs.pop(mu, None)

    @classmethod
    def p(cls, mu: Sequence[int], degree_cap: Optional[int] = None, coeff=1) -> "SymFunc":
        mu = Partition(mu)
        return cls(mu.size if degree_cap is None else degree_cap, {mu: coeff})

    @classmethod
    def one(cls, degree_cap: int) -> "SymFunc":
        return cls(degree_cap, {Partition(): 1})

    def with_cap(self, degree_cap: int) -> "SymFunc":
        return SymFunc(degree_cap, self.coeffs)

    # structure --------------------------------------------------------------

    def homogeneous_part(self, d: int) -> "SymFunc":
        return SymFunc(self.degree_cap, {mu: c for mu, c in self.coeffs.items() if mu.size == d})

    def degrees(self) -> List[int]:
        return sorted({mu.size for mu in self.coeffs})

    def is_homogeneous(self, d: int) -> bool:
        return all(mu.size == d for mu in self.coeffs)

    def __getitem__(self, mu) -> RatFunc:
        return self.coeffs.get(Partition(mu), RatFunc.zero())

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self.coeffs == other.coeffs

    def agrees_with(self, other: "SymFunc") -> bool:
        cap = min(self.degree_cap, other.degree_cap)
        return self.with_cap(cap) == other.with_cap(cap)

    # arithmetic ---------------------------------------------------------------

    def __add__(self, other: "SymFunc") -> "SymFunc":
        cap = min(self.degree_cap, other.degree_cap)
        out = SymFunc(cap, self.coeffs)
        for mu, c in other.coeffs.items():
            if mu.size > cap:
                continue
            s = out.coeffs.get(mu)
            s = c if s is None else s + c
            if s:
                out.coeffs[mu] = s
            else:
                out.coeffs.pop(mu, None)
        return out

    def __neg__(self) -> "SymFunc":
        return SymFunc(self.degree_cap, {mu: -c for mu, c in self.coeffs.items()})

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        c = RatFunc.coerce(c)
        return SymFunc(self.degree_cap, {mu: v * c for mu, v in self.coeffs.items()})

    def __mul__(self, other) -> "SymFunc":
        if not isinstance(other, SymFunc):
            return self.scale(other)
        cap = min(self.degree_cap, other.degree_cap)
        buckets: Dict[Partition, list] = {}
        for mu, a in self.coeffs.items():
            for nu, b in other.coeffs.items():
                if mu.size + nu.size > cap:
                    continue
                key = Partition(sorted(mu + nu, reverse=True))
                buckets.setdefault(key, []).append(a * b)
        return SymFunc(cap, {k: ratfunc_sum(v) for k, v in buckets.items()})

    __rmul__ = __mul__

    def map_coeffs(self, fn) -> "SymFunc":
        return SymFunc(self.degree_cap, {mu: fn(c) for mu, c in self.coeffs.items()})

    def swap_t(self) -> "SymFunc":
        return self.map_coeffs(lambda c: c.swap())

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*p{list(mu)}" for mu, c in sorted(self.coeffs.items()))
        return f"SymFunc(cap={self.degree_cap}: {body or '0'})"

    # serialization --------------------------------------------------------------

    def to_json(self) -> list:
        return [
            {"mu": list(mu), "num": format_laurent(c.num), "den": format_laurent(c.den)}
            for mu, c in sorted(self.coeffs.items(), key=lambda kv: (kv[0].size, kv[0]))
        ]

    @classmethod
    def from_json(cls, data, degree_cap: Optional[int] = None) -> "SymFunc":
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = {Partition(d["mu"]): RatFunc(parse_laurent(d["num"]), parse_laurent(d["den"]))
                  for d in data}
        if degree_cap is None:
            degree_cap = max((mu.size for mu in coeffs), default=0)
        return cls(degree_cap, coeffs)


# plethystic evaluation ----------------------------------------------------------

def pleth_eval(F: SymFunc, X, trunc: Optional[Sequence[int]] = None,
               mtotal: Optional[int] = None):
    """F[X] for an alphabet, series, or constant X.

    Constants (ints, Laurent polynomials, rational functions) give a
    :class:`RatFunc`; alphabets are converted to series with ``trunc``.
    """
    if isinstance(X, Alphabet):
        if trunc is None:
            raise ValueError("truncation needed to evaluate on an alphabet")
        X = X.to_series(trunc, mtotal)
    if isinstance(X, MultiSeries):
        return _pleth_series(F, X)
    X = RatFunc.coerce(X)
    power: Dict[int, RatFunc] = {}
    terms = []
    for mu, c in F.coeffs.items():
        v = c
        for part in mu:
            if part not in power:
                power[part] = X.adams(part)
            v = v * power[part]
        terms.append(v)
    return ratfunc_sum(terms)


def _pleth_series(F: SymFunc, X: MultiSeries) -> MultiSeries:
    adams_cache: Dict[int, MultiSeries] = {}
    prod_cache: Dict[Tuple[int, ...], MultiSeries] = {(): MultiSeries.one(X.variables, X.trunc, X.mtotal)}

    def p_of(mu: Tuple[int, ...]) -> MultiSeries:
        if mu in prod_cache:
            return prod_cache[mu]
        head, rest = mu[0], mu[1:]
        if head not in adams_cache:
            adams_cache[head] = X.adams(head)
        val = adams_cache[head] * p_of(rest)
        prod_cache[mu] = val
        return val

    total = X.like()
    for mu, c in sorted(F.coeffs.items()):
        total = total + p_of(tuple(mu)).scale(c)
    return total


# power-sum <-> monomial ------------------------------------------------------------

def _count_fillings(parts: Tuple[int, ...], bins: Tuple[int, ...]) -> int:
    """Ways to distribute labeled parts into bins with prescribed sums."""

    @lru_cache(maxsize=None)
    def go(i: int, remaining: Tuple[int, ...]) -> int:
        if i == len(parts):
            return 1 if not any(remaining) else 0
        total = 0
        for j, r in enumerate(remaining):
            if r >= parts[i]:
                nxt = remaining[:j] + (r - parts[i],) + remaining[j + 1:]
                total += go(i + 1, nxt)
        return total

    return go(0, bins)


@lru_cache(maxsize=None)
def p_to_m_matrix(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Row mu: coefficients of p_mu in the monomial basis, columns ordered
    as :func:`enumerate_partitions`."""
    parts = enumerate_partitions(n)
    return tuple(tuple(_count_fillings(tuple(mu), tuple(lam)) for lam in parts) for mu in parts)


@lru_cache(maxsize=None)
def m_to_p_matrix(n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    parts = enumerate_partitions(n)
    k = len(parts)
    mat = flint.fmpq_mat(k, k, [x for row in p_to_m_matrix(n) for x in row])
    inv = mat.inv()
    return tuple(tuple(Fraction(int(inv[i, j].numer()), int(inv[i, j].denom())) for j in range(k))
                 for i in range(k))


def basis_p_to_m(F: SymFunc) -> Dict[Partition, RatFunc]:
    """Monomial-basis coefficients of F."""
    out: Dict[Partition, list] = {}
    for mu, c in F.coeffs.items():
        n = mu.size
        parts = enumerate_partitions(n)
        row = p_to_m_matrix(n)[parts.index(mu)]
        for lam, a in zip(parts, row):
            if a:
                out.setdefault(lam, []).append(c * a)
    return {lam: s for lam, v in out.items() if (s := ratfunc_sum(v))}


def basis_m_to_p(coeffs: Mapping[Sequence[int], object], degree_cap: Optional[int] = None) -> SymFunc:
    """Inverse of :func:`basis_p_to_m`."""
    out: Dict[Partition, list] = {}
    top = 0
    for lam, c in coeffs.items():
        lam = Partition(lam)
        top = max(top, lam.size)
        c = RatFunc.coerce(c)
        n = lam.size
        parts = enumerate_partitions(n)
        # m_lam = sum_mu (M^-1)[lam, mu] p_mu  with M rows indexed by p
        inv = m_to_p_matrix(n)
        j = parts.index(lam)
        for i, mu in enumerate(parts):
            a = inv[j][i]
            if a:
                out.setdefault(mu, []).append(c * a)
    return SymFunc(top if degree_cap is None else degree_cap,
                   {mu: ratfunc_sum(v) for mu, v in out.items()})


def monomial_sym(lam: Sequence[int]) -> SymFunc:
    return basis_m_to_p({Partition(lam): 1})


# inner products ----------------------------------------------------------------------

def _one_minus(x: TLaurent, k: int) -> TLaurent:
    return ONE - x.adams(k)


@lru_cache(maxsize=None)
def qt_weight(mu: Partition, q: TLaurent, t: TLaurent) -> RatFunc:
    num = TLaurent.constant(z_lambda(mu))
    den = ONE
    for part in mu:
        num = num * _one_minus(q, part)
        den = den * _one_minus(t, part)
    return RatFunc(num, den)


def qt_inner(F: SymFunc, G: SymFunc, q: TLaurent = T2, t: TLaurent = T1) -> RatFunc:
    """Macdonald's (q,t) pairing: <p_mu, p_mu> = z_mu prod (1-q^mu_i)/(1-t^mu_i).

    The default roles (q, t) = (t2, t1) are the ones certified by
    :mod:`hilbdesc.macdonald`.
    """
    small, big = (F, G) if len(F.coeffs) <= len(G.coeffs) else (G, F)
    terms = []
    for mu, a in small.coeffs.items():
        b = big.coeffs.get(mu)
        if b is not None:
            terms.append(a * b * qt_weight(mu, q, t))
    return ratfunc_sum(terms)


@lru_cache(maxsize=None)
def star_weight(mu: Partition) -> TLaurent:
    out = TLaurent.constant((-1) ** len(mu) * z_lambda(mu))
    for part in mu:
        out = out * (ONE - TLaurent.monomial(part, 0)) * (ONE - TLaurent.monomial(0, part))
    return out


def star_inner(F: SymFunc, G: SymFunc) -> RatFunc:
    """<p_mu, p_mu>_* = (-1)^l(mu) z_mu prod (1 - t1^mu_i)(1 - t2^mu_i).

    The sign is (-1) to the number of parts.  With it the modified Macdonald
    polynomials are orthogonal with norms H_lambda[-1] C_lambda; the sign
    (-1)^|mu| agrees in degree 1 but breaks orthogonality from degree 2 on.
    """
    terms = []
    for mu, a in F.coeffs.items():
        b = G.coeffs.get(mu)
        if b is not None:
            terms.append(a * b * star_weight(mu))
    return ratfunc_sum(terms)


# operators ------------------------------------------------------------------------------

def op_U(F: SymFunc) -> SymFunc:
    """(UF)[X] = F[1 + X]: p_n -> 1 + p_n."""
    out = SymFunc(F.degree_cap)
    for mu, c in F.coeffs.items():
        term = SymFunc.one(F.degree_cap)
        for part in mu:
            term = term * SymFunc(F.degree_cap, {Partition(): 1, Partition([part]): 1})
        out = out + term.scale(c)
    return out


@lru_cache(maxsize=None)
def exp_minus_over_M(degree_cap: int) -> SymFunc:
    """Exp[-X/((1-t1)(1-t2))] = sum_mu p_mu / z_mu prod_i (-1/((1-t1^mu_i)(1-t2^mu_i)))."""
    coeffs = {}
    for mu in partitions_up_to(degree_cap):
        den = ONE
        for part in mu:
            den = den * (ONE - TLaurent.monomial(part, 0)) * (ONE - TLaurent.monomial(0, part))
        coeffs[mu] = RatFunc(TLaurent.constant(Fraction((-1) ** len(mu), z_lambda(mu))), den)
    return SymFunc(degree_cap, coeffs)


def op_Ustar(F: SymFunc) -> SymFunc:
    """(U*F)[X] = Exp[-X/M] F[X], truncated at F's degree cap."""
    return exp_minus_over_M(F.degree_cap) * F


def op_nabla(F: SymFunc) -> SymFunc:
    """Diagonal on the modified Macdonald basis with eigenvalue H_lambda[-1]."""
    from . import macdonald

    return macdonald.nabla(F)
