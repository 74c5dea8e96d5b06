"""Acceptance criteria 1-10.  Run with pytest, or directly as a script;
either way one ``criterion N: PASS/FAIL`` line is printed per criterion."""

import sys
from itertools import product

import pytest

from hilbdesc.algebra import ONE, T1, T2, PoleError, RatFunc, TLaurent
from hilbdesc.hilb_c2 import extract_g, normalized_series, zc2_localization
from hilbdesc.identities import operator_identity, symmetry_check
from hilbdesc.macdonald import MacdonaldCache, modified_H
from hilbdesc.partitions import Partition, c_lambda, enumerate_partitions, partitions_up_to
from hilbdesc.symfunc import pleth_eval, star_inner
from hilbdesc.toric import (EqClassS, closed_form_suite, euler_char, normalized_coefficients,
                            surface_hirzebruch, surface_P1xP1, surface_P2, universal_extract, z_surface)
from hilbdesc.toric.series import _direction_bound, _product_along, nextprime
from hilbdesc.toric.universal import DEFAULT_RANK1, parse_configs
from hilbdesc.verify import dual_oracle, random_class_sets

CACHE = MacdonaldCache()
SURFACES = [surface_P2(), surface_P1xP1(), surface_hirzebruch(1)]


def criterion(number, name):
    return pytest.mark.criterion(number, name)


# 1 -------------------------------------------------------------------------------

@criterion(1, "Macdonald certification, |lambda| <= 5")
@pytest.mark.parametrize("n", range(1, 6))
def test_certification(n):
    for lam in enumerate_partitions(n):
        cert = CACHE.certify(lam)
        assert cert.checks["H[1]=1"] and cert.checks["H[1-x]"], cert.diagnostics


# 2 -------------------------------------------------------------------------------

@criterion(2, "star orthogonality, |lambda|, |mu| <= 4")
def test_star_orthogonality():
    lams = [lam for lam in partitions_up_to(4) if lam]
    for lam in lams:
        H = modified_H(lam, CACHE)
        norm = pleth_eval(H, -1) * RatFunc.coerce(c_lambda(lam))
        for mu in lams:
            got = star_inner(H, modified_H(mu, CACHE))
            assert got == (norm if lam == mu else RatFunc.zero()), (lam, mu)


# 3 -------------------------------------------------------------------------------

@criterion(3, "nabla U* U identity, |lambda| <= 4")
@pytest.mark.parametrize("lam", [tuple(l) for l in partitions_up_to(4)])
def test_operator_identity(lam):
    assert operator_identity(lam, sum(lam) + 2, CACHE)


# 4 -------------------------------------------------------------------------------

@criterion(4, "X <-> Y symmetry through total degree 4, three random u-sets")
@pytest.mark.parametrize("chars", random_class_sets(2024, 3))
def test_symmetry(chars):
    assert symmetry_check(chars, 4, CACHE).ok


# 5 -------------------------------------------------------------------------------

@criterion(5, "three C^2 routes agree through q^5, total m-order 3, 10 random inputs")
@pytest.mark.parametrize("chars", random_class_sets(11, 10))
def test_dual_oracle(chars):
    ok, detail = dual_oracle(chars, 5, 3, CACHE)
    assert ok, detail


# 6 -------------------------------------------------------------------------------

C2_INPUTS = [[T1], [ONE + T2 ** -1 - T1 * T2], [T1 * T2, T1 - T2], [T2 ** 2 + 1, T1 ** -1]]


@criterion(6, "g_a polynomial of degree <= |a| for |a| <= 3, l <= 2")
@pytest.mark.parametrize("chars", C2_INPUTS)
def test_descendent_polynomiality(chars):
    Z = zc2_localization(chars, 6, 3)
    G = normalized_series(Z)
    for a in product(range(4), repeat=len(chars)):
        if sum(a) > 3:
            continue
        # the extraction checks every q-power through the truncation, which is >= |a| + 3
        ex = extract_g(Z, a, G)
        assert ex.polynomiality_ok and ex.degree_bound_ok, a


# 7 -------------------------------------------------------------------------------

def _surface_inputs(S):
    zero = [0] * len(S.pic_basis)
    one = [1] * len(S.pic_basis)
    e1 = [1] + zero[1:]
    return [[EqClassS.from_pic(S, one)],
            [EqClassS.from_pic(S, e1) + EqClassS.from_pic(S, one)],
            [EqClassS.from_pic(S, zero), EqClassS.from_pic(S, e1)]]


@criterion(7, "(1-q)^chi(O) Z_S(k) polynomial of degree <= |k| on P2, P1xP1, F1")
@pytest.mark.parametrize("S", SURFACES, ids=lambda S: S.name)
def test_surface_polynomiality(S):
    for classes in _surface_inputs(S):
        Z = z_surface(S, classes, 6, 3)
        f = normalized_coefficients(Z, S.chi_O)
        for e in f.coeffs:
            k = sum(e[1:])
            if e[0] <= k + 3:
                assert e[0] <= k, (S.name, [g.label for g in classes], e)


# 8 -------------------------------------------------------------------------------

@criterion(8, "closed forms through q^5 (m^5) on P2")
def test_closed_forms_P2():
    params = {"q_order": 5, "m_order": 5, "line": (1,), "alpha": (2,),
              "rank3": [[(0,), (0,), (0,)], [(0,), (1,), (2,)], [(-1,), (1,), (1,)]],
              "virtual_alpha": [(0,), (1,), (2,)]}
    bad = [(c.name, c.mismatches[:2]) for c in closed_form_suite(surface_P2(), params)
           if not c.match]
    assert not bad


@criterion(8, "closed forms through q^5 (m^5) on P2")
@pytest.mark.parametrize("S", SURFACES[1:], ids=lambda S: S.name)
def test_closed_forms_other(S):
    one = (1,) * len(S.pic_basis)
    params = {"q_order": 5, "m_order": 5, "line": one, "alpha": (1,) + (0,) * (len(one) - 1)}
    bad = [(c.name, c.mismatches[:2]) for c in closed_form_suite(S, params) if not c.match]
    assert not bad


# 9 -------------------------------------------------------------------------------

@criterion(9, "universal series residual 0 through (q^3, m^3), r = (1)")
def test_universal_residual():
    configs = parse_configs([f"{s}:{b[0]}" for s, b in DEFAULT_RANK1])
    assert len(configs) >= 6
    U = universal_extract((1,), configs, 3, 3)
    assert U.residual == 0


# 10 ------------------------------------------------------------------------------

@criterion(10, "Euler characteristic gates and pole-free surface coefficients")
def test_euler_gates():
    P2, PP, _ = SURFACES
    for d in range(-3, 5):
        assert euler_char(P2, EqClassS.from_pic(P2, [d])) == (d + 1) * (d + 2) // 2
    for a in range(4):
        for b in range(4):
            assert euler_char(PP, EqClassS.from_pic(PP, [a, b])) == (a + 1) * (b + 1)


@criterion(10, "Euler characteristic gates and pole-free surface coefficients")
@pytest.mark.parametrize("S", SURFACES, ids=lambda S: S.name)
def test_pole_free(S):
    for classes in _surface_inputs(S):
        d = (1, nextprime(_direction_bound(S, classes, 4)))
        Z = _product_along(S, classes, 4, 2, 2, d, 1)
        assert all(c.is_laurent() for c in Z.coeffs.values())
        z_surface(S, classes, 4, 2)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"] + sys.argv[1:]))
