import json
from fractions import Fraction

import pytest

from hilbdesc.algebra import ONE, T1, T2, RatFunc, TLaurent
from hilbdesc.identities import operator_identity
from hilbdesc.macdonald import (CertificationError, Convention, MacdonaldCache, modified_H, nabla,
                                to_H_basis)
from hilbdesc.partitions import Partition, c_lambda, enumerate_partitions, nabla_eigenvalue
from hilbdesc.symfunc import SymFunc, star_inner


def _p(*mu):
    return SymFunc.p(list(mu))


def s2():
    return (_p(1, 1) + _p(2)).scale(Fraction(1, 2))


def s11():
    return (_p(1, 1) - _p(2)).scale(Fraction(1, 2))


def test_two_box_polynomials_match_schur_expansion():
    assert modified_H([2]) == s2() + s11().scale(T2)
    assert modified_H([1, 1]) == s2() + s11().scale(T1)


def test_three_box_hook():
    s3 = (_p(1, 1, 1).scale(Fraction(1, 6)) + _p(2, 1).scale(Fraction(1, 2)) + _p(3).scale(Fraction(1, 3)))
    s21 = (_p(1, 1, 1) - _p(3)).scale(Fraction(1, 3))
    s111 = (_p(1, 1, 1).scale(Fraction(1, 6)) - _p(2, 1).scale(Fraction(1, 2)) + _p(3).scale(Fraction(1, 3)))
    assert modified_H([2, 1]) == s3 + s21.scale(T1 + T2) + s111.scale(T1 * T2)


@pytest.mark.parametrize("n", range(1, 6))
def test_certification(n):
    cache = MacdonaldCache()
    for lam in enumerate_partitions(n):
        cert = cache.certify(lam)
        assert cert.passed, cert.diagnostics


def test_star_orthogonality_explicit():
    for n in (2, 3):
        for lam in enumerate_partitions(n):
            for mu in enumerate_partitions(n):
                v = star_inner(modified_H(lam), modified_H(mu))
                want = RatFunc.coerce(nabla_eigenvalue(lam) * c_lambda(lam)) if lam == mu else RatFunc.zero()
                assert v == want


def test_kernel_identity():
    # sum_lambda H_lambda (x) H_lambda / (H_lambda[-1] C_lambda) is the star kernel
    from hilbdesc.symfunc import star_weight

    for n in (2, 3):
        lams = enumerate_partitions(n)
        Hs = {lam: modified_H(lam) for lam in lams}
        for mu in lams:
            for nu in lams:
                total = RatFunc.zero()
                for lam in lams:
                    w = RatFunc(ONE, nabla_eigenvalue(lam) * c_lambda(lam))
                    total = total + Hs[lam][mu] * Hs[lam][nu] * w
                want = RatFunc(ONE, star_weight(mu)) if mu == nu else RatFunc.zero()
                assert total == want


def test_nabla_eigen():
    H = modified_H([2, 1])
    assert nabla(H) == H.scale(nabla_eigenvalue(Partition([2, 1])))
    coeffs = to_H_basis(_p(1, 1))
    assert set(coeffs) <= set(enumerate_partitions(2))


@pytest.mark.parametrize("lam", [p for n in range(0, 5) for p in enumerate_partitions(n)])
def test_operator_identity(lam):
    assert operator_identity(lam, lam.size + 2)


@pytest.mark.parametrize("conv", [Convention("t1", False), Convention("t2", True)])
def test_wrong_convention_is_rejected(conv):
    cache = MacdonaldCache(convention=conv)
    with pytest.raises(CertificationError):
        cache.get([2])


def test_swapping_roles_and_transposing_cancel():
    cache = MacdonaldCache(convention=Convention("t1", True))
    assert cache.get([2, 1]) == modified_H([2, 1])


def test_resolved_convention():
    cache = MacdonaldCache()
    assert cache.resolve_convention() == Convention("t2", False)


def test_cache_roundtrip(tmp_path):
    path = tmp_path / "mac.json"
    cache = MacdonaldCache(str(path))
    H = cache.get([2, 1])
    data = json.loads(path.read_text())
    assert data["convention"] == "q=t2,transpose=0"
    assert "2,1" in data["polynomials"]
    again = MacdonaldCache(str(path))
    assert Partition([2, 1]) in again
    assert again.get([2, 1]) == H


def test_stale_cache_version_is_ignored(tmp_path):
    path = tmp_path / "mac.json"
    MacdonaldCache(str(path)).get([2])
    data = json.loads(path.read_text())
    data["version"] = "0.0.0-old"
    path.write_text(json.dumps(data))
    assert Partition([2]) not in MacdonaldCache(str(path))


@pytest.mark.parametrize("n", range(1, 6))
def test_conjugation_swaps_t1_and_t2(n):
    for lam in enumerate_partitions(n):
        lam = Partition(lam)
        assert modified_H(lam.conjugate()) == modified_H(lam).swap_t()
