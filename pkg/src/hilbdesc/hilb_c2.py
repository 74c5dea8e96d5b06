"""Equivariant descendent series of the Hilbert schemes of points on C^2.

Three independent expressions for the same series in Q(t1,t2)[[q, m]]:
the fixed-point sum over Young diagrams, the Macdonald-polynomial side of
the plethystic symmetry, and its line-bundle variant.  Plus extraction of
the normalized coefficients g_a and g~_a.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra.laurent import ONE, TLaurent, parse_laurent
from .algebra.ratfunc import RatFunc, ratfunc_sum
from .algebra.series import Alphabet, MultiSeries, SeriesError, exp_alphabet, series_exp
from .macdonald import MacdonaldCache, modified_H
from .partitions import Partition, c_factors, enumerate_partitions, partitions_up_to
from .symfunc import pleth_eval

Weights = Tuple[Tuple[int, int], Tuple[int, int]]
IDENTITY: Weights = ((1, 0), (0, 1))


@dataclass(frozen=True)
class EqClassC2:
    """T-equivariant K-class on C^2, recorded by its character at the origin."""

    char0: TLaurent

    @classmethod
    def parse(cls, text: str) -> "EqClassC2":
        return cls(parse_laurent(text))

    @property
    def rank(self) -> Fraction:
        return self.char0.value_at_one()


def _chars(classes) -> List[TLaurent]:
    out = []
    for c in classes:
        if isinstance(c, EqClassC2):
            out.append(c.char0)
        elif isinstance(c, str):
            out.append(parse_laurent(c))
        else:
            out.append(TLaurent.coerce(c))
    return out


def series_shape(n_classes: int, q_order: int, m_order: Union[int, Sequence[int]],
                 mtotal: Optional[int] = None):
    """Variables, per-variable caps and total m cap.

    An integer ``m_order`` is a total-degree cap across the m-variables.
    """
    variables = ("q",) + tuple(f"m{j + 1}" for j in range(n_classes))
    if isinstance(m_order, int):
        caps = (m_order,) * n_classes
        if mtotal is None and n_classes > 1:
            mtotal = m_order
    else:
        caps = tuple(m_order)
        if len(caps) != n_classes:
            raise ValueError("one m-order per class expected")
    return variables, (q_order,) + caps, mtotal


def _m_budget(trunc, mtotal, first: int = 1) -> int:
    s = sum(trunc[first:])
    if mtotal is not None:
        s = min(s, mtotal)
    return s


# weights --------------------------------------------------------------------------

def _sub_mono(e: Tuple[int, int], w: Weights) -> Tuple[int, int]:
    (a, b), (c, d) = w
    return (e[0] * a + e[1] * c, e[0] * b + e[1] * d)


def c_lambda_at(lam: Partition, w: Weights = IDENTITY) -> TLaurent:
    out = ONE
    for e in c_factors(lam):
        out = out * (ONE - TLaurent.monomial(*_sub_mono(e, w)))
    return out


def b_poly_at(lam: Partition, w: Weights = IDENTITY) -> TLaurent:
    return TLaurent.from_terms({_sub_mono(cell, w): 1 for cell in lam.cells()})


def cell_weights(lam: Partition, w: Weights = IDENTITY) -> List[Tuple[int, int]]:
    return [_sub_mono(cell, w) for cell in lam.cells()]


def inverse_M(w: Weights = IDENTITY) -> RatFunc:
    """1 / ((1 - w1)(1 - w2))."""
    w1 = TLaurent.monomial(*w[0])
    w2 = TLaurent.monomial(*w[1])
    return RatFunc(ONE, (ONE - w1) * (ONE - w2))


# route 1: localization --------------------------------------------------------------

def _localization_terms(args):
    lams, chars, variables, trunc, mtotal, weights = args
    probe = MultiSeries(variables, trunc, None, mtotal)
    buckets: Dict[Tuple[int, ...], list] = {}
    for lam in lams:
        B = b_poly_at(lam, weights)
        terms = {}
        for j, u in enumerate(chars):
            e = [0] * len(variables)
            e[j + 1] = 1
            terms[tuple(e)] = -(u * B)
        factor = exp_alphabet(Alphabet(variables, terms), trunc, mtotal)
        C = c_lambda_at(lam, weights)
        for e, c in factor.coeffs.items():
            e = (lam.size,) + e[1:]
            if probe.in_range(e):
                buckets.setdefault(e, []).append(RatFunc(c.num, C))
    return {e: ratfunc_sum(v) for e, v in buckets.items()}


def zc2_localization(classes, q_order: int, m_order: Union[int, Sequence[int]] = 0, *,
                     mtotal: Optional[int] = None, weights: Weights = IDENTITY,
                     jobs: int = 1) -> MultiSeries:
    """sum_lambda q^|lambda| / C_lambda * Exp[-(sum_j m_j u_j) B_lambda].

    ``weights`` substitutes t1 -> t^w1, t2 -> t^w2 inside C_lambda and
    B_lambda (the class characters are taken as given).  With ``jobs > 1``
    the partitions of each size are summed in separate processes.
    """
    if q_order < 0:
        raise ValueError("q-order must be nonnegative")
    chars = _chars(classes)
    variables, trunc, mtotal = series_shape(len(chars), q_order, m_order, mtotal)
    tasks = [(enumerate_partitions(n), chars, variables, trunc, mtotal, weights) for n in range(q_order + 1)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_localization_terms, tasks))
    else:
        parts = [_localization_terms(t) for t in tasks]
    total = MultiSeries(variables, trunc, None, mtotal)
    for part in parts:
        # sizes are disjoint in q, so no exponent repeats across parts
        total.coeffs.update({e: c for e, c in part.items() if c})
    return total


# route 2: Macdonald side ----------------------------------------------------------------

def _y_alphabet(variables, chars, first: int = 0) -> Alphabet:
    terms = {}
    for j, u in enumerate(chars):
        if j < first:
            continue
        e = [0] * len(variables)
        e[j + 1] = 1
        terms[tuple(e)] = u
    return Alphabet(variables, terms)


def _over_M(alpha: Alphabet, trunc, mtotal, w: Weights = IDENTITY) -> MultiSeries:
    inv = inverse_M(w)
    return MultiSeries(alpha.variables, trunc, {e: inv * c for e, c in alpha.terms.items()}, mtotal)


def _cell_product(lam: Partition, variables, trunc, mtotal, m1_weight: Optional[TLaurent] = None):
    """prod over cells (1 - q w), divided by (1 - q m1 u1 w) when m1_weight = u1."""
    out = MultiSeries.one(variables, trunc, mtotal)
    q = [0] * len(variables)
    q[0] = 1
    q = tuple(q)
    for cell in lam.cells():
        w = TLaurent.monomial(*cell)
        out = out * MultiSeries(variables, trunc, {q: RatFunc.coerce(-w)}, mtotal).__add__(RatFunc.one())
        if m1_weight is not None:
            geo = {}
            k = 0
            x = m1_weight * w
            while True:
                e = (k, k) + (0,) * (len(variables) - 2)
                if not out.in_range(e):
                    break
                geo[e] = RatFunc.coerce(x ** k)
                k += 1
            out = out * MultiSeries(variables, trunc, geo, mtotal)
    return out


def zc2_macdonald(classes, q_order: int, m_order: Union[int, Sequence[int]] = 0, *,
                  mtotal: Optional[int] = None, cache: Optional[MacdonaldCache] = None) -> MultiSeries:
    """Exp[(q - Y)/M] sum_{|lambda| <= A} H_lambda[Y] / C_lambda prod (1 - q t^c),
    with Y = sum_j m_j u_j and A the total m-order."""
    chars = _chars(classes)
    variables, trunc, mtotal = series_shape(len(chars), q_order, m_order, mtotal)
    Y = _y_alphabet(variables, chars)
    q_alpha = Alphabet.variable(variables, 0)
    prefactor = series_exp(_over_M(q_alpha - Y, trunc, mtotal))
    Yser = Y.to_series(trunc, mtotal)
    body = MultiSeries(variables, trunc, None, mtotal)
    for lam in partitions_up_to(_m_budget(trunc, mtotal)):
        H = modified_H(lam, cache)
        term = pleth_eval(H, Yser) * _cell_product(lam, variables, trunc, mtotal)
        body = body + term.scale(RatFunc(ONE, c_lambda_at(lam)))
    return prefactor * body


# route 3: line bundle ----------------------------------------------------------------------

def zc2_linebundle(classes, q_order: int, m_order: Union[int, Sequence[int]] = 0, *,
                   mtotal: Optional[int] = None, cache: Optional[MacdonaldCache] = None) -> MultiSeries:
    """Variant with classes[0] a line bundle of character u1 (a monomial):

    Exp[(q - q m1 u1 - sum_{j>=2} m_j u_j)/M] sum_{|lambda| <= A'} H_lambda[Y'] / C_lambda
    prod (1 - q t^c)/(1 - q m1 u1 t^c).
    """
    chars = _chars(classes)
    if not chars:
        raise ValueError("the line-bundle route needs at least one class")
    u1 = chars[0]
    if not (u1.is_monomial() and next(iter(u1.terms().values())) == 1):
        raise ValueError(f"first class must be a monomial with coefficient 1, got {u1}")
    variables, trunc, mtotal = series_shape(len(chars), q_order, m_order, mtotal)
    Yrest = _y_alphabet(variables, chars, first=1)
    q_alpha = Alphabet.variable(variables, 0)
    qm1 = tuple([1, 1] + [0] * (len(variables) - 2))
    lin = q_alpha - Alphabet(variables, {qm1: u1}) - Yrest
    prefactor = series_exp(_over_M(lin, trunc, mtotal))
    Yser = Yrest.to_series(trunc, mtotal)
    budget = _m_budget(trunc, mtotal, first=2) if len(chars) > 1 else 0
    if mtotal is not None:
        budget = min(budget, mtotal)
    body = MultiSeries(variables, trunc, None, mtotal)
    for lam in partitions_up_to(budget):
        H = modified_H(lam, cache)
        term = pleth_eval(H, Yser) * _cell_product(lam, variables, trunc, mtotal, m1_weight=u1)
        body = body + term.scale(RatFunc(ONE, c_lambda_at(lam)))
    return prefactor * body


# extraction ------------------------------------------------------------------------------

def exp_q_over_M(variables, trunc, mtotal=None, w: Weights = IDENTITY) -> MultiSeries:
    return series_exp(_over_M(Alphabet.variable(variables, 0), trunc, mtotal, w))


@dataclass
class DescendentExtraction:
    a: Tuple[int, ...]
    g: MultiSeries
    degree_bound_ok: bool
    polynomiality_ok: bool
    degree: int

    def coefficients(self) -> List[RatFunc]:
        return [self.g[(k,)] for k in range(self.g.trunc[0] + 1)]


def normalized_series(Z: MultiSeries) -> MultiSeries:
    """Z / Exp[q/((1-t1)(1-t2))], by division by a unit."""
    return Z / exp_q_over_M(Z.variables, Z.trunc, Z.mtotal)


def extract_g(Z: MultiSeries, a: Sequence[int], normalized: Optional[MultiSeries] = None) -> DescendentExtraction:
    a = tuple(a)
    if len(a) != len(Z.variables) - 1:
        raise ValueError("exponent vector length must match the number of m-variables")
    need = sum(a) + 2
    if Z.trunc[0] < need:
        raise SeriesError(f"q-truncation {Z.trunc[0]} too small; need at least {need}")
    if not Z.in_range((0,) + a):
        raise SeriesError(f"m-exponent {a} outside the truncation")
    G = normalized if normalized is not None else normalized_series(Z)
    g = G.m_coefficient(a)
    degree = max((e[0] for e in g.coeffs), default=-1)
    poly_ok = all(not g[(k,)] for k in range(sum(a) + 1, Z.trunc[0] + 1))
    return DescendentExtraction(a, g, degree <= sum(a), poly_ok, degree)


# line-bundle rationality certificate ------------------------------------------------------

@dataclass
class RationalityCertificate:
    """g~ = numerator(q, m1) / (prod (1 - t^w) * prod (1 - q m1 t^w'))."""

    a_tilde: Tuple[int, ...]
    numerator: Dict[Tuple[int, int], TLaurent]
    t_weights: List[Tuple[int, int]]
    qm1_weights: List[Tuple[int, int]]
    matched_order: Tuple[int, int]
    shape_ok: bool = True
    notes: List[str] = field(default_factory=list)

    def expand(self, q_order: int, m1_order: int) -> MultiSeries:
        vars2 = ("q", "m1")
        trunc = (q_order, m1_order)
        num = MultiSeries(vars2, trunc, {e: RatFunc.coerce(c) for e, c in self.numerator.items()})
        den = ONE
        for w in self.t_weights:
            den = den * (ONE - TLaurent.monomial(*w))
        out = num.scale(RatFunc(ONE, den))
        for w in self.qm1_weights:
            x = TLaurent.monomial(*w)
            geo = {(k, k): RatFunc.coerce(x ** k) for k in range(min(trunc) + 1)}
            out = out * MultiSeries(vars2, trunc, geo)
        return out


class CertificateMismatch(ArithmeticError):
    pass


def _binomial_multiset_union(groups: List[List[Tuple[int, int]]]) -> List[Tuple[int, int]]:
    best: Dict[Tuple[int, int], int] = {}
    for g in groups:
        counts: Dict[Tuple[int, int], int] = {}
        for w in g:
            counts[w] = counts.get(w, 0) + 1
        for w, k in counts.items():
            best[w] = max(best.get(w, 0), k)
    return sorted(w for w, k in best.items() for _ in range(k))


def extract_gtilde(Z: MultiSeries, a_tilde: Sequence[int], classes,
                   cache: Optional[MacdonaldCache] = None) -> RationalityCertificate:
    """Certify g~_a as an explicit rational function in (q, m1).

    The rational expression comes from the finite sum over |lambda| <= |a~|;
    its expansion must match Z / Exp[(q - q m1 u1)/M] read at m2..ml = a~.
    """
    a_tilde = tuple(a_tilde)
    chars = _chars(classes)
    if len(chars) != len(Z.variables) - 1 or len(a_tilde) != len(chars) - 1:
        raise ValueError("a~ must index the classes after the line bundle")
    u1 = chars[0]
    if not (u1.is_monomial() and next(iter(u1.terms().values())) == 1):
        raise ValueError("first class must be a monomial character")
    variables, trunc, mtotal = Z.variables, Z.trunc, Z.mtotal
    if not Z.in_range((0, 0) + a_tilde):
        raise SeriesError(f"a~ = {a_tilde} outside the truncation")

    # extracted side
    qm1 = tuple([1, 1] + [0] * (len(variables) - 2))
    lin = Alphabet.variable(variables, 0) - Alphabet(variables, {qm1: u1})
    G = Z / series_exp(_over_M(lin, trunc, mtotal))
    q_ord = trunc[0]
    m1_ord = trunc[1]
    if mtotal is not None:
        m1_ord = min(m1_ord, mtotal - sum(a_tilde))
    extracted = MultiSeries(("q", "m1"), (q_ord, m1_ord))
    for e, c in G.coeffs.items():
        if e[2:] == a_tilde and e[1] <= m1_ord:
            extracted.coeffs[(e[0], e[1])] = c

    # rational side: sum_lambda K_lambda(t) prod (1 - q w)/(1 - q m1 u1 w)
    size = sum(a_tilde)
    rest_vars = ("q",) + variables[2:]
    rest_trunc = (0,) + tuple(a_tilde)
    Yrest = _y_alphabet(rest_vars, chars[1:])
    pref = series_exp(_over_M(-Yrest, rest_trunc, None)) if Yrest.terms else MultiSeries.one(rest_vars, rest_trunc)
    lams = partitions_up_to(size)
    all_cells = sorted({c for lam in lams for c in lam.cells()})
    u1e = next(iter(u1.terms()))
    qm1_weights = [(u1e[0] + c1, u1e[1] + c2) for c1, c2 in all_cells]
    t_groups = []
    rat_num: Dict[Tuple[int, int], list] = {}
    for lam in lams:
        H = modified_H(lam, cache)
        Hy = pleth_eval(H, Yrest.to_series(rest_trunc)) if Yrest.terms else \
            MultiSeries.constant(rest_vars, rest_trunc, pleth_eval(H, 0))
        K = (pref * Hy)[(0,) + a_tilde]
        if not K:
            continue
        K = K * RatFunc(ONE, c_lambda_at(lam))
        t_groups.append(list(c_factors(lam)))
        # polynomial in (q, m1): prod_{c in lam}(1 - q t^c) * prod_{c not in lam}(1 - q m1 u1 t^c)
        poly = {(0, 0): ONE}
        cells = set(lam.cells())
        for c in all_cells:
            if c in cells:
                step = {(1, 0): -TLaurent.monomial(*c)}
            else:
                step = {(1, 1): -TLaurent.monomial(u1e[0] + c[0], u1e[1] + c[1])}
            new: Dict[Tuple[int, int], TLaurent] = {}
            for e, v in poly.items():
                new[e] = new.get(e, TLaurent.constant(0)) + v
                for de, dv in step.items():
                    k = (e[0] + de[0], e[1] + de[1])
                    new[k] = new.get(k, TLaurent.constant(0)) + v * dv
            poly = {e: v for e, v in new.items() if v}
        for e, v in poly.items():
            rat_num.setdefault(e, []).append(K * v)
    if size:
        t_groups.append([(k, 0) for k in range(1, size + 1)] + [(0, k) for k in range(1, size + 1)])
    t_weights = _binomial_multiset_union(t_groups)
    t_den = ONE
    for w in t_weights:
        t_den = t_den * (ONE - TLaurent.monomial(*w))
    numerator: Dict[Tuple[int, int], TLaurent] = {}
    shape_ok = True
    notes = []
    for e, vals in rat_num.items():
        s = ratfunc_sum(vals) * t_den
        if not s:
            continue
        if not s.is_laurent():
            shape_ok = False
            notes.append(f"coefficient of q^{e[0]} m1^{e[1]} keeps denominator {s.den}")
            continue
        numerator[e] = s.num
    cert = RationalityCertificate(a_tilde, numerator, t_weights, qm1_weights,
                                  (q_ord, m1_ord), shape_ok, notes)
    expanded = cert.expand(q_ord, m1_ord)
    if not shape_ok or expanded.coeffs != extracted.coeffs:
        raise CertificateMismatch(
            f"rational expression for a~={a_tilde} disagrees with the extracted series; {notes}")
    return cert
