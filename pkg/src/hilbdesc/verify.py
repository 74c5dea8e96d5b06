"""Verification suites shared by the CLI and the acceptance tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence

from .algebra.laurent import TLaurent, format_laurent
from .hilb_c2 import (CertificateMismatch, extract_g, extract_gtilde, normalized_series,
                      zc2_linebundle, zc2_localization, zc2_macdonald)
from .identities import operator_identity, symmetry_check
from .macdonald import CertificationError, MacdonaldCache
from .partitions import partitions_up_to

SUITES = ("macdonald", "symmetry", "descendents", "toric", "all")


@dataclass
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class Options:
    max_size: int = 4
    degree: int = 4
    q_order: int = 5
    m_order: int = 3
    seed: int = 2024
    samples: int = 3
    jobs: int = 1
    cache: Optional[MacdonaldCache] = None


def _guard(suite: str, name: str, fn: Callable[[], object]) -> Check:
    try:
        res = fn()
    except (CertificationError, CertificateMismatch, ArithmeticError, ValueError) as exc:
        return Check(suite, name, False, f"{type(exc).__name__}: {exc}")
    if isinstance(res, tuple):
        return Check(suite, name, bool(res[0]), str(res[1]))
    return Check(suite, name, bool(res))


# random inputs ---------------------------------------------------------------------

def random_character(rng: random.Random, max_terms: int = 3, span: int = 2) -> TLaurent:
    while True:
        k = rng.randint(1, max_terms)
        terms = {}
        for _ in range(k):
            e = (rng.randint(-span, span), rng.randint(-span, span))
            terms[e] = terms.get(e, 0) + rng.choice((-2, -1, 1, 1, 2))
        c = TLaurent.from_terms(terms)
        if c:
            return c


def random_monomial(rng: random.Random, span: int = 2) -> TLaurent:
    return TLaurent.monomial(rng.randint(-span, span), rng.randint(-span, span))


def random_class_sets(seed: int, count: int, max_classes: int = 2) -> List[List[TLaurent]]:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        l = 1 + (i % max_classes)
        chars = [random_character(rng) for _ in range(l)]
        if i % 3 == 0:
            chars[0] = random_monomial(rng)
        out.append(chars)
    return out


def _is_line(c: TLaurent) -> bool:
    return c.is_monomial() and list(c.terms().values()) == [1]


# suites -------------------------------------------------------------------------------

def suite_macdonald(opts: Options) -> List[Check]:
    cache = opts.cache or MacdonaldCache()
    out = []
    for lam in partitions_up_to(opts.max_size):
        if not lam:
            continue
        def cert(lam=lam):
            c = cache.certify(lam)
            return c.passed, "; ".join(c.diagnostics)
        out.append(_guard("macdonald", f"certify H_{list(lam)}", cert))
    for lam in partitions_up_to(min(opts.max_size, 4)):
        out.append(_guard("macdonald", f"nabla U* U H_{list(lam)}",
                          lambda lam=lam: operator_identity(lam, lam.size + 2, cache)))
    return out


def suite_symmetry(opts: Options) -> List[Check]:
    out = []
    for chars in random_class_sets(opts.seed, opts.samples):
        label = ", ".join(format_laurent(c) for c in chars)
        def run(chars=chars):
            r = symmetry_check(chars, opts.degree, opts.cache)
            return r.ok, f"{r.compared} coefficients"
        out.append(_guard("symmetry", f"X<->Y swap for u = [{label}]", run))
    return out


def dual_oracle(chars, q_order: int, m_order: int, cache=None):
    A = zc2_localization(chars, q_order, m_order)
    B = zc2_macdonald(chars, q_order, m_order, cache=cache)
    ok = A == B
    detail = "localization = Macdonald side"
    if chars and _is_line(chars[0]):
        C = zc2_linebundle(chars, q_order, m_order, cache=cache)
        ok = ok and A == C
        detail += " = line-bundle side"
    return ok, detail


def exponent_vectors(l: int, total: int):
    return [a for a in product(range(total + 1), repeat=l) if sum(a) <= total]


def descendent_flags(chars, total: int = 3):
    Z = zc2_localization(chars, total + 3, total)
    G = normalized_series(Z)
    bad = []
    for a in exponent_vectors(len(chars), total):
        ex = extract_g(Z, a, G)
        if not (ex.polynomiality_ok and ex.degree_bound_ok):
            bad.append(a)
    return not bad, f"failing exponents {bad}" if bad else "all g_a polynomial with deg <= |a|"


def suite_descendents(opts: Options) -> List[Check]:
    out = []
    sets = random_class_sets(opts.seed + 1, max(opts.samples, 3))
    for chars in sets:
        label = ", ".join(format_laurent(c) for c in chars)
        out.append(_guard("descendents", f"dual oracle [{label}]",
                          lambda chars=chars: dual_oracle(chars, opts.q_order, opts.m_order, opts.cache)))
        out.append(_guard("descendents", f"g_a polynomial [{label}]",
                          lambda chars=chars: descendent_flags(chars, opts.m_order)))
    rng = random.Random(opts.seed + 2)
    for _ in range(2):
        chars = [random_monomial(rng), random_character(rng)]
        label = ", ".join(format_laurent(c) for c in chars)
        def cert(chars=chars):
            Z = zc2_localization(chars, 4, (4, 1), mtotal=None)
            c = extract_gtilde(Z, (1,), chars, opts.cache)
            return c.shape_ok, f"certified through q^{c.matched_order[0]} m1^{c.matched_order[1]}"
        out.append(_guard("descendents", f"g~ rational [{label}]", cert))
    return out


def suite_toric(opts: Options) -> List[Check]:
    from .toric import surface as ts
    from .toric.closed_forms import closed_form_suite
    from .toric.series import normalized_coefficients, z_surface

    out = []
    P2, PP, F1 = ts.surface_P2(), ts.surface_P1xP1(), ts.surface_hirzebruch(1)
    out.append(_guard("toric", "chi(P2, O(d)) for -3 <= d <= 4", lambda: all(
        ts.euler_char(P2, ts.EqClassS.from_pic(P2, [d])) == (d + 1) * (d + 2) // 2 for d in range(-3, 5))))
    out.append(_guard("toric", "chi(P1xP1, O(a,b)) for 0 <= a,b <= 3", lambda: all(
        ts.euler_char(PP, ts.EqClassS.from_pic(PP, [a, b])) == (a + 1) * (b + 1)
        for a in range(4) for b in range(4))))
    n = min(opts.q_order, 4)
    for S, alpha in ((P2, [1]), (PP, [1, 1]), (F1, [1, 1])):
        def poly(S=S, alpha=alpha):
            g = ts.EqClassS.from_pic(S, alpha)
            Z = z_surface(S, [g], opts.m_order + 3, opts.m_order, jobs=opts.jobs)
            f = normalized_coefficients(Z, S.chi_O)
            bad = [e for e in f.coeffs if e[0] > sum(e[1:])]
            return not bad, f"terms above the degree bound: {sorted(bad)[:3]}" if bad else "f_a of degree <= |a|"
        out.append(_guard("toric", f"(1-q)^chi(O) Z on {S.name} is polynomial", poly))
    params = {"q_order": n, "m_order": n, "line": (1,), "alpha": (2,), "rank3": [[(0,), (1,), (2,)]],
              "virtual_alpha": [(1,)]}
    for chk in closed_form_suite(P2, params, jobs=opts.jobs):
        out.append(Check("toric", chk.name, chk.match, "" if chk.match else str(chk.mismatches[:2])))
    return out


SUITE_FUNCS: Dict[str, Callable[[Options], List[Check]]] = {
    "macdonald": suite_macdonald,
    "symmetry": suite_symmetry,
    "descendents": suite_descendents,
    "toric": suite_toric,
}


def run_suite(name: str, opts: Optional[Options] = None) -> List[Check]:
    opts = opts or Options()
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    names = [s for s in SUITES if s != "all"] if name == "all" else [name]
    out = []
    for s in names:
        out.extend(SUITE_FUNCS[s](opts))
    return out
