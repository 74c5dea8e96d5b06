from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hilbdesc.algebra import ONE, T1, T2, PoleError, RatFunc, TLaurent
from hilbdesc.toric import (EqClassS, RankDeficiency, SurfaceError, chern_classes, chern_data,
                            closed_form_suite, euler_char, limit_t_one, normalized_coefficients,
                            parse_bundle, parse_surface, surface_hirzebruch, surface_P1xP1, surface_P2,
                            universal_extract, z_surface)
from hilbdesc.toric.closed_forms import inv_one_minus_q_power
from hilbdesc.toric.universal import parse_configs

P2 = surface_P2()
PP = surface_P1xP1()
F1 = surface_hirzebruch(1)


@pytest.mark.parametrize("S,K2", [(P2, 9), (PP, 8), (F1, 8), (surface_hirzebruch(2), 8)])
def test_surface_invariants(S, K2):
    S.validate()
    assert S.chi_O == 1 and S.K2 == K2
    assert len(S.fixed_points) == len(S.rays)


@pytest.mark.parametrize("d", range(-3, 5))
def test_chi_projective_plane(d):
    assert euler_char(P2, EqClassS.from_pic(P2, [d])) == (d + 1) * (d + 2) // 2


def test_chi_special_bundles():
    assert euler_char(P2, EqClassS.canonical(P2)) == 1
    assert euler_char(P2, EqClassS.from_pic(P2, [-1])) == 0
    assert euler_char(P2, EqClassS.cotangent(P2)) == -1
    for a in range(4):
        for b in range(4):
            assert euler_char(PP, EqClassS.from_pic(PP, [a, b])) == (a + 1) * (b + 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_riemann_roch_on_hirzebruch(a, x, y):
    S = surface_hirzebruch(a)
    L = EqClassS.from_pic(S, [x, y])
    D = S.divisor([x, y])
    expected = 1 + Fraction(S.intersect(D, D) - S.intersect(D, S.canonical_divisor), 2)
    assert euler_char(S, L) == expected


def test_lift_does_not_matter():
    L = EqClassS.from_pic(P2, [2])
    assert euler_char(P2, L.twist((3, -1))) == euler_char(P2, L)
    Z = z_surface(P2, [L], 3, 2)
    assert z_surface(P2, [L.twist((1, 2))], 3, 2) == Z


def test_chern_data():
    c1, c2 = chern_classes(P2, parse_bundle(P2, "O(1)+O(1)-O(0)"))
    assert c2 == 1 and P2.intersect(c1, c1) == 4
    cd = chern_data(P2, [EqClassS.from_pic(P2, [1])])
    assert cd.vector() == [1, 9, -3, 0, 1]
    with pytest.raises(SurfaceError):
        chern_classes(P2, EqClassS.cotangent(P2))
    # Euler sequence: T*P2 = 3 O(-1) - O
    euler_seq = parse_bundle(P2, "3*O(-1)-O(0)")
    assert euler_char(P2, euler_seq) == euler_char(P2, EqClassS.cotangent(P2))
    c1, c2 = chern_classes(P2, euler_seq)
    assert P2.intersect(c1, c1) == 9 and c2 == 3


def test_limit_at_one():
    w1, w2 = T1, T2 * T1 ** -1
    # sum over the three fixed points of P2 of 1/((1-w1)(1-w2))
    terms = [RatFunc(ONE, (ONE - T1) * (ONE - T2)),
             RatFunc(ONE, (ONE - T1 ** -1) * (ONE - T2 * T1 ** -1)),
             RatFunc(ONE, (ONE - T2 ** -1) * (ONE - T1 * T2 ** -1))]
    total = terms[0] + terms[1] + terms[2]
    assert limit_t_one(total) == 1
    assert limit_t_one(total, (1, 5), (1, 7)) == 1
    with pytest.raises(PoleError):
        limit_t_one(terms[0])


def test_empty_series():
    for S in (P2, PP, F1):
        assert z_surface(S, [], 5) == inv_one_minus_q_power(S.chi_O, 5)


def test_hyperplane_wedges():
    Z = z_surface(P2, [EqClassS.from_pic(P2, [1])], 4, 4)
    f = normalized_coefficients(Z)
    expected = {(0, 0): 1, (1, 1): -3, (2, 2): 3, (3, 3): -1}
    assert {e: c for e, c in f.coeffs.items()} == expected


def test_parallel_matches_serial():
    g = [EqClassS.from_pic(PP, [1, 0]), EqClassS.from_pic(PP, [0, 1])]
    assert z_surface(PP, g, 3, 2, jobs=2) == z_surface(PP, g, 3, 2)


def test_class_from_other_surface_rejected():
    with pytest.raises(SurfaceError):
        z_surface(P2, [EqClassS.from_pic(PP, [1, 1])], 2, 1)


@pytest.mark.parametrize("text", ["O(1", "O(1)O(2)", "L(1)", "", "O(1,2)"])
def test_parse_bundle_errors(text):
    with pytest.raises(SurfaceError):
        parse_bundle(P2, text)


def test_parse_bundle_forms():
    a = parse_bundle(P2, "sum:O(1)+O(2)")
    assert a.rank == 2
    assert euler_char(P2, a) == 3 + 6
    assert euler_char(P2, parse_bundle(P2, "2*O(1)-K")) == 2 * 3 - 1
    assert parse_bundle(P2, "O(1)-O(1)").rank == 0


@pytest.mark.parametrize("name", ["P3", "F-1", "Fx", "P1xP2"])
def test_parse_surface_errors(name):
    with pytest.raises(SurfaceError):
        parse_surface(name)


def test_parse_surface_names():
    assert parse_surface("F0").K2 == 8
    assert len(parse_surface("F3").rays) == 4


@pytest.mark.parametrize("S,params", [
    (PP, {"q_order": 3, "m_order": 3, "line": (1, 0), "alpha": (1, 1), "rank3": [[(0, 0), (1, 0), (0, 1)]],
          "virtual_alpha": [(1, 0)]}),
    (F1, {"q_order": 3, "m_order": 3, "line": (0, 1), "alpha": (1, 0), "virtual_alpha": [(1, 1)]}),
])
def test_closed_forms_other_surfaces(S, params):
    for chk in closed_form_suite(S, params):
        assert chk.match, (chk.name, chk.mismatches[:2])


def test_universal_rank_one():
    configs = parse_configs(["P2:O(0)", "P2:O(1)", "P2:O(2)", "P2:O(1)+O(1)-O(0)", "P1xP1:O(1,1)",
                             "F1:O(1,1)"])
    U = universal_extract((1,), configs, 2, 2)
    assert U.residual == 0
    # (1 - q)^(-1) carries all of chi(O) on the m^0 line
    assert U.logs["A"][(1, 0)] == 1 and U.logs["A"][(2, 0)] == Fraction(1, 2)
    assert U.logs["B"][(1, 0)] == 0


def test_universal_rank_deficiency_names_c2():
    configs = parse_configs(["P2:O(0)", "P2:O(1)", "P2:O(2)", "P1xP1:O(1,1)", "F1:O(1,0)"])
    with pytest.raises(RankDeficiency) as err:
        universal_extract((1,), configs, 1, 1)
    assert "c2(a1)" in err.value.directions


def test_universal_rank_mismatch():
    with pytest.raises(ValueError):
        universal_extract((2,), parse_configs(["P2:O(1)"]), 1, 1)
