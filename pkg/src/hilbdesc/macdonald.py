"""Modified Macdonald polynomials H_lambda over Q(t1, t2).

Construction: Gram-Schmidt on the monomial basis under the (q,t) pairing
gives P_lambda; J_lambda = c_lambda P_lambda; H_lambda = J_lambda[X/(1-t)];
the modified polynomial is t^n(lambda) H_lambda(q, 1/t).  Which of t1, t2
plays q, and whether the diagram is transposed, is decided once by
certification against H_lambda[1-x] = prod (1 - x t1^c1 t2^c2).
"""

from __future__ import annotations

import json
import logging
import os
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .algebra.laurent import ONE, T1, T2, TLaurent
from .algebra.ratfunc import RatFunc, ratfunc_sum
from .algebra.series import MultiSeries
from .partitions import (Partition, b_poly, c_lambda, dominance_leq, enumerate_partitions,
                         nabla_eigenvalue)
from .symfunc import (SymFunc, basis_m_to_p, basis_p_to_m, monomial_sym, pleth_eval, qt_inner,
                      star_inner)

log = logging.getLogger(__name__)


class CertificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Convention:
    """Role assignment: ``q_var`` plays Macdonald's q; ``transpose`` builds
    from the conjugate diagram."""

    q_var: str = "t2"
    transpose: bool = False

    @property
    def q(self) -> TLaurent:
        return T2 if self.q_var == "t2" else T1

    @property
    def t(self) -> TLaurent:
        return T1 if self.q_var == "t2" else T2

    def as_flag(self) -> str:
        return f"q={self.q_var},transpose={int(self.transpose)}"


CANDIDATES = (
    Convention("t1", False),
    Convention("t2", False),
    Convention("t1", True),
    Convention("t2", True),
)


# classical construction -------------------------------------------------------------

def macdonald_P(lam: Sequence[int], q: TLaurent = T2, t: TLaurent = T1) -> SymFunc:
    """Monic, dominance-triangular, qt-orthogonal P_lambda in power sums."""
    lam = Partition(lam)
    return _gram_schmidt(lam.size, q, t)[lam]


_GS_CACHE: Dict[Tuple[int, TLaurent, TLaurent], Dict[Partition, SymFunc]] = {}


def _gram_schmidt(n: int, q: TLaurent, t: TLaurent) -> Dict[Partition, SymFunc]:
    key = (n, q, t)
    if key in _GS_CACHE:
        return _GS_CACHE[key]
    # increasing lexicographic order refines dominance
    order = list(reversed(enumerate_partitions(n)))
    done: List[Tuple[SymFunc, RatFunc]] = []
    result: Dict[Partition, SymFunc] = {}
    for lam in order:
        m = monomial_sym(lam).with_cap(n)
        vec = m
        for P, norm in done:
            coeff = qt_inner(m, P, q, t) / norm
            if coeff:
                vec = vec - P.scale(coeff)
        result[lam] = vec
        done.append((vec, qt_inner(vec, vec, q, t)))
    _GS_CACHE[key] = result
    return result


def c_integral(lam: Partition, q: TLaurent, t: TLaurent) -> TLaurent:
    """prod over cells (1 - q^arm t^(leg+1))."""
    out = ONE
    for cell in lam.cells():
        a, l = lam.arm(cell), lam.leg(cell)
        out = out * (ONE - q ** a * t ** (l + 1))
    return out


def _inversion_map(var: TLaurent):
    """Monomial map sending var -> var^-1, other variable fixed."""
    if var == T1:
        return (-1, 0), (0, 1)
    return (1, 0), (0, -1)


def _build_modified(lam: Partition, conv: Convention) -> SymFunc:
    src = lam.conjugate() if conv.transpose else lam
    q, t = conv.q, conv.t
    n = src.size
    if n == 0:
        return SymFunc.one(0)
    P = macdonald_P(src, q, t)
    J = P.scale(c_integral(src, q, t))
    # H = J[X/(1-t)]
    coeffs = {}
    for mu, c in J.coeffs.items():
        den = ONE
        for part in mu:
            den = den * (ONE - t.adams(part))
        coeffs[mu] = c * RatFunc(ONE, den)
    img1, img2 = _inversion_map(t)
    shift = t ** src.n()
    out = {mu: c.monomial_map(img1, img2) * shift for mu, c in coeffs.items()}
    return SymFunc(n, out)


# certification --------------------------------------------------------------------------

@dataclass
class Certificate:
    partition: Partition
    passed: bool
    checks: Dict[str, bool] = field(default_factory=dict)
    diagnostics: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


def principal_specialization(H: SymFunc, size: int) -> MultiSeries:
    """H[1 - x] as a polynomial in the formal variable x."""
    X = MultiSeries(("x",), (size,), {(0,): RatFunc.one(), (1,): RatFunc.coerce(-1)})
    return pleth_eval(H, X)


def expected_principal(lam: Partition) -> MultiSeries:
    out = MultiSeries.one(("x",), (lam.size,))
    for c1, c2 in lam.cells():
        out = out * MultiSeries(("x",), (lam.size,),
                                {(0,): RatFunc.one(), (1,): RatFunc.coerce(-TLaurent.monomial(c1, c2))})
    return out


def check_candidate(lam: Partition, H: SymFunc) -> Certificate:
    lam = Partition(lam)
    cert = Certificate(lam, True)
    at_one = pleth_eval(H, 1)
    cert.checks["H[1]=1"] = at_one == RatFunc.one()
    if not cert.checks["H[1]=1"]:
        cert.diagnostics.append(f"H[1] = {at_one}")
    got = principal_specialization(H, lam.size)
    want = expected_principal(lam)
    cert.checks["H[1-x]"] = got == want
    if not cert.checks["H[1-x]"]:
        cert.diagnostics.append(f"H[1-x] = {got}; expected {want}")
    cert.checks["homogeneous"] = H.is_homogeneous(lam.size)
    if not cert.checks["homogeneous"]:
        cert.diagnostics.append(f"degrees present: {H.degrees()}")
    cert.passed = all(cert.checks.values())
    return cert


class MacdonaldCache:
    """Certified H_lambda keyed by partition; role flag frozen at first use.

    Safe to share between threads: insertion is idempotent.
    """

    def __init__(self, path: Optional[str] = None, convention: Optional[Convention] = None,
                 orthogonality_bound: int = 4):
        self.path = path
        self.convention = convention
        self.orthogonality_bound = orthogonality_bound
        self._store: Dict[Partition, SymFunc] = {}
        self._certs: Dict[Partition, Certificate] = {}
        self._lock = threading.Lock()
        if path and os.path.exists(path):
            self._load(path)

    # convention -------------------------------------------------------------

    def resolve_convention(self) -> Convention:
        if self.convention is not None:
            return self.convention
        for conv in CANDIDATES:
            ok = all(check_candidate(Partition(lam), _build_modified(Partition(lam), conv)).passed
                     for lam in ((2,), (1, 1)))
            log.debug("convention %s: %s", conv.as_flag(), ok)
            if ok:
                self.convention = conv
                return conv
        raise CertificationError("no role assignment certifies H_(2) and H_(1,1)")

    # access ------------------------------------------------------------------------

    def __contains__(self, lam) -> bool:
        return Partition(lam) in self._store

    def get(self, lam: Sequence[int]) -> SymFunc:
        lam = Partition(lam)
        H = self._store.get(lam)
        if H is not None:
            return H
        conv = self.resolve_convention()
        H = _build_modified(lam, conv)
        cert = check_candidate(lam, H)
        if not cert.passed:
            raise CertificationError(f"H_{list(lam)} failed certification: {cert.diagnostics}")
        with self._lock:
            self._store.setdefault(lam, H)
            self._certs.setdefault(lam, cert)
        if self.path:
            self.save(self.path)
        return self._store[lam]

    def certify(self, lam: Sequence[int]) -> Certificate:
        """Checks (a)-(c) and, for small sizes, star orthogonality (d)."""
        lam = Partition(lam)
        H = self.get(lam)
        cert = check_candidate(lam, H)
        if lam.size <= self.orthogonality_bound:
            ok = True
            expected = RatFunc.coerce(nabla_eigenvalue(lam) * c_lambda(lam))
            for mu in enumerate_partitions(lam.size):
                val = star_inner(H, self.get(mu))
                want = expected if mu == lam else RatFunc.zero()
                if val != want:
                    ok = False
                    cert.diagnostics.append(f"<H_{list(lam)}, H_{list(mu)}>_* = {val}, expected {want}")
            cert.checks["star-orthogonality"] = ok
        cert.passed = all(cert.checks.values())
        return cert

    # persistence --------------------------------------------------------------------

    def save(self, path: str) -> None:
        data = {
            "version": __version__,
            "convention": self.convention.as_flag() if self.convention else None,
            "polynomials": {lam.key(): H.to_json() for lam, H in sorted(self._store.items())},
        }
        tmp = f"{path}.tmp"
        with open(tmp, "w") as fh:
            json.dump(data, fh, sort_keys=True, indent=1)
        os.replace(tmp, path)

    def _load(self, path: str) -> None:
        with open(path) as fh:
            data = json.load(fh)
        if data.get("version") != __version__:
            log.info("ignoring Macdonald cache %s with stale version %s", path, data.get("version"))
            return
        flag = data.get("convention")
        if flag:
            q_part, tr_part = flag.split(",")
            conv = Convention(q_part.split("=")[1], tr_part.split("=")[1] == "1")
            if self.convention is not None and self.convention != conv:
                return
            self.convention = conv
        for key, payload in data.get("polynomials", {}).items():
            lam = Partition([int(x) for x in key.split(",")] if key else [])
            H = SymFunc.from_json(payload, lam.size)
            if check_candidate(lam, H).passed:
                self._store[lam] = H


_DEFAULT = MacdonaldCache()


def default_cache() -> MacdonaldCache:
    return _DEFAULT


def set_default_cache(cache: MacdonaldCache) -> None:
    global _DEFAULT
    _DEFAULT = cache


def modified_H(lam: Sequence[int], cache: Optional[MacdonaldCache] = None) -> SymFunc:
    return (cache or _DEFAULT).get(lam)


def certify(lam: Sequence[int], cache: Optional[MacdonaldCache] = None) -> Certificate:
    return (cache or _DEFAULT).certify(lam)


# change of basis to H ----------------------------------------------------------------------

def _solve(matrix: List[List[RatFunc]], rhs: List[RatFunc]) -> List[RatFunc]:
    """Gaussian elimination over Q(t1, t2)."""
    n = len(rhs)
    a = [row[:] + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise ArithmeticError("singular system")
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def to_H_basis(F: SymFunc, cache: Optional[MacdonaldCache] = None) -> Dict[Partition, RatFunc]:
    """Coefficients of F in {H_lambda}."""
    out: Dict[Partition, RatFunc] = {}
    for d in F.degrees():
        part = F.homogeneous_part(d)
        lams = enumerate_partitions(d)
        if d == 0:
            out[Partition()] = part[()]
            continue
        Hs = [modified_H(lam, cache) for lam in lams]
        matrix = [[H[mu] for H in Hs] for mu in lams]
        rhs = [part[mu] for mu in lams]
        for lam, c in zip(lams, _solve(matrix, rhs)):
            if c:
                out[lam] = c
    return out


def from_H_basis(coeffs: Dict[Partition, RatFunc], degree_cap: int,
                 cache: Optional[MacdonaldCache] = None) -> SymFunc:
    out = SymFunc(degree_cap)
    for lam, c in coeffs.items():
        out = out + modified_H(lam, cache).with_cap(degree_cap).scale(c)
    return out


def nabla(F: SymFunc, cache: Optional[MacdonaldCache] = None) -> SymFunc:
    coeffs = to_H_basis(F, cache)
    scaled = {lam: c * nabla_eigenvalue(lam) for lam, c in coeffs.items()}
    return from_H_basis(scaled, F.degree_cap, cache)


def monomial_expansion(F: SymFunc) -> Dict[Partition, RatFunc]:
    return basis_p_to_m(F)
