"""Smooth projective toric surfaces from their fans, and classes on them.

Conventions: the cone at fixed point i is spanned by rays v_i, v_{i+1}.
The cotangent weights there are the characters t^{m_u}, t^{m_v} of the
dual basis, i.e. of the local coordinate functions.  A divisor
D = sum d_rho D_rho has local fiber character t^{m} with <m, v_rho> = -d_rho
on both rays of the cone.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..algebra.laurent import ONE, ZERO, TLaurent
from ..algebra.ratfunc import RatFunc, ratfunc_sum

Vec = Tuple[int, int]


class SurfaceError(ValueError):
    """Inconsistent toric data or a class that does not belong to the surface."""


@dataclass(frozen=True)
class FixedPoint:
    rays: Tuple[int, int]
    w1: Vec
    w2: Vec

    def weights(self) -> Tuple[Vec, Vec]:
        return (self.w1, self.w2)


def _dual_basis(u: Vec, v: Vec) -> Tuple[Vec, Vec]:
    det = u[0] * v[1] - u[1] * v[0]
    if det not in (1, -1):
        raise SurfaceError(f"cone ({u}, {v}) is not smooth")
    # rows of the inverse matrix of [u v] (columns)
    mu = (v[1] * det, -v[0] * det)
    mv = (-u[1] * det, u[0] * det)
    return mu, mv


def _dot(a: Vec, b: Vec) -> int:
    return a[0] * b[0] + a[1] * b[1]


class ToricSurface:
    """A complete smooth toric surface given by rays in cyclic order."""

    def __init__(self, name: str, rays: Sequence[Vec], pic_basis: Sequence[Sequence[int]]):
        self.name = name
        self.rays = [tuple(r) for r in rays]
        n = len(self.rays)
        if n < 3:
            raise SurfaceError("need at least three rays")
        self.pic_basis = [tuple(b) for b in pic_basis]
        if any(len(b) != n for b in self.pic_basis):
            raise SurfaceError("Picard basis vectors must have one entry per ray")
        self.fixed_points: List[FixedPoint] = []
        for i in range(n):
            j = (i + 1) % n
            mu, mv = _dual_basis(self.rays[i], self.rays[j])
            self.fixed_points.append(FixedPoint((i, j), mu, mv))
        self._self_int = []
        for i in range(n):
            prev, nxt = self.rays[i - 1], self.rays[(i + 1) % n]
            s = (prev[0] + nxt[0], prev[1] + nxt[1])
            v = self.rays[i]
            # s = b * v
            b = s[0] // v[0] if v[0] else s[1] // v[1]
            if (b * v[0], b * v[1]) != s:
                raise SurfaceError("rays are not in cyclic order of a smooth fan")
            self._self_int.append(-b)
        self.validate()

    def __repr__(self) -> str:
        return f"ToricSurface({self.name!r})"

    # divisors ---------------------------------------------------------------

    def divisor(self, coords: Sequence[int]) -> Tuple[int, ...]:
        """Ray coordinates of the divisor with Picard coordinates ``coords``."""
        coords = tuple(coords)
        if len(coords) != len(self.pic_basis):
            raise SurfaceError(f"{self.name} expects {len(self.pic_basis)} divisor coordinates, got {len(coords)}")
        n = len(self.rays)
        return tuple(sum(c * b[k] for c, b in zip(coords, self.pic_basis)) for k in range(n))

    @property
    def canonical_divisor(self) -> Tuple[int, ...]:
        return (-1,) * len(self.rays)

    def ray_intersection(self, i: int, j: int) -> int:
        n = len(self.rays)
        if i == j:
            return self._self_int[i]
        if (i - j) % n in (1, n - 1):
            return 1
        return 0

    def intersect(self, D: Sequence[int], E: Sequence[int]) -> int:
        n = len(self.rays)
        return sum(D[i] * E[j] * self.ray_intersection(i, j) for i in range(n) for j in range(n))

    def local_exponent(self, D: Sequence[int], i: int) -> Vec:
        fp = self.fixed_points[i]
        a, b = fp.rays
        # m = -d_a m_u - d_b m_v
        return (-D[a] * fp.w1[0] - D[b] * fp.w2[0], -D[a] * fp.w1[1] - D[b] * fp.w2[1])

    def line_bundle_chars(self, D: Sequence[int]) -> List[TLaurent]:
        return [TLaurent.monomial(*self.local_exponent(D, i)) for i in range(len(self.fixed_points))]

    # gates -------------------------------------------------------------------

    def inverse_M_sum(self) -> RatFunc:
        return ratfunc_sum(RatFunc(ONE, (ONE - TLaurent.monomial(*fp.w1)) * (ONE - TLaurent.monomial(*fp.w2)))
                           for fp in self.fixed_points)

    def validate(self) -> None:
        s = self.inverse_M_sum()
        if not s.is_laurent() or s.laurent().value_at_one() != 1:
            raise SurfaceError(f"{self.name}: fixed-point sum for chi(O) gives {s}, expected 1")

    @property
    def chi_O(self) -> int:
        return 1

    @property
    def K2(self) -> int:
        K = self.canonical_divisor
        return self.intersect(K, K)


def surface_P2() -> ToricSurface:
    return ToricSurface("P2", [(1, 0), (0, 1), (-1, -1)], [(1, 0, 0)])


def surface_P1xP1() -> ToricSurface:
    return ToricSurface("P1xP1", [(1, 0), (0, 1), (-1, 0), (0, -1)], [(1, 0, 0, 0), (0, 1, 0, 0)])


def surface_hirzebruch(a: int) -> ToricSurface:
    """F_a with O(x, y) = x * fiber + y * section of self-intersection a."""
    if a < 0:
        raise SurfaceError("Hirzebruch index must be nonnegative")
    return ToricSurface(f"F{a}", [(1, 0), (0, 1), (-1, a), (0, -1)], [(1, 0, 0, 0), (0, 0, 0, 1)])


def parse_surface(text: str) -> ToricSurface:
    t = text.strip()
    if t == "P2":
        return surface_P2()
    if t in ("P1xP1", "F0"):
        return surface_P1xP1() if t == "P1xP1" else surface_hirzebruch(0)
    m = re.fullmatch(r"F(\d+)", t)
    if m:
        return surface_hirzebruch(int(m.group(1)))
    raise SurfaceError(f"unknown surface {text!r}; expected P2, P1xP1 or F<a>")


# classes ----------------------------------------------------------------------

@dataclass
class EqClassS:
    """Equivariant K-class: a character at each fixed point.

    ``summands`` records (multiplicity, divisor in ray coordinates) when the
    class is an integer combination of line bundles; Chern data needs it.
    """

    surface: ToricSurface
    chars: List[TLaurent]
    summands: Optional[List[Tuple[int, Tuple[int, ...]]]] = None
    label: str = ""

    def __post_init__(self):
        if len(self.chars) != len(self.surface.fixed_points):
            raise SurfaceError("one character per fixed point expected")
        ranks = {c.value_at_one() for c in self.chars}
        if len(ranks) != 1:
            raise SurfaceError(f"fixed-point characters have different ranks {sorted(ranks)}")

    @property
    def rank(self) -> int:
        r = self.chars[0].value_at_one()
        if r.denominator != 1:
            raise SurfaceError("non-integral rank")
        return int(r)

    @classmethod
    def line_bundle(cls, S: ToricSurface, D: Sequence[int], label: str = "") -> "EqClassS":
        D = tuple(D)
        return cls(S, S.line_bundle_chars(D), [(1, D)], label)

    @classmethod
    def from_pic(cls, S: ToricSurface, coords: Sequence[int]) -> "EqClassS":
        coords = tuple(coords)
        return cls.line_bundle(S, S.divisor(coords), "O(" + ",".join(map(str, coords)) + ")")

    @classmethod
    def canonical(cls, S: ToricSurface) -> "EqClassS":
        return cls.line_bundle(S, S.canonical_divisor, "K")

    @classmethod
    def cotangent(cls, S: ToricSurface) -> "EqClassS":
        chars = [TLaurent.monomial(*fp.w1) + TLaurent.monomial(*fp.w2) for fp in S.fixed_points]
        return cls(S, chars, None, "T*S")

    @classmethod
    def zero(cls, S: ToricSurface) -> "EqClassS":
        return cls(S, [ZERO] * len(S.fixed_points), [], "0")

    def _combine(self, other: "EqClassS", sign: int) -> "EqClassS":
        if other.surface is not self.surface:
            raise SurfaceError("classes live on different surfaces")
        summands = None
        if self.summands is not None and other.summands is not None:
            summands = _merge(self.summands + [(sign * k, D) for k, D in other.summands])
        op = "+" if sign > 0 else "-"
        return EqClassS(self.surface, [a + sign * b for a, b in zip(self.chars, other.chars)],
                        summands, f"{self.label}{op}{other.label}")

    def __add__(self, other: "EqClassS") -> "EqClassS":
        return self._combine(other, 1)

    def __sub__(self, other: "EqClassS") -> "EqClassS":
        return self._combine(other, -1)

    def __neg__(self) -> "EqClassS":
        return EqClassS.zero(self.surface) - self

    def __mul__(self, other: "EqClassS") -> "EqClassS":
        summands = None
        if self.summands is not None and other.summands is not None:
            summands = _merge([(a * b, tuple(x + y for x, y in zip(D, E)))
                               for a, D in self.summands for b, E in other.summands])
        return EqClassS(self.surface, [a * b for a, b in zip(self.chars, other.chars)],
                        summands, f"({self.label})({other.label})")

    def power(self, n: int) -> "EqClassS":
        out = EqClassS(self.surface, [ONE] * len(self.chars), [(1, (0,) * len(self.surface.rays))], "O")
        for _ in range(n):
            out = out * self
        return out

    def twist(self, e: Vec) -> "EqClassS":
        """Same nonequivariant class with the lift changed by a global character."""
        x = TLaurent.monomial(*e)
        return EqClassS(self.surface, [c * x for c in self.chars], self.summands, self.label)

    def wedge(self, k: int) -> "EqClassS":
        """Exterior power of an honest sum of line bundles."""
        return EqClassS(self.surface, [_wedge_char(c, k) for c in self.chars], None,
                        f"wedge^{k}({self.label})")


def _merge(summands):
    acc: Dict[Tuple[int, ...], int] = {}
    for k, D in summands:
        acc[D] = acc.get(D, 0) + k
    return sorted((k, D) for D, k in acc.items() if k)


def _wedge_char(c: TLaurent, k: int) -> TLaurent:
    monos = []
    for e, v in sorted(c.terms().items()):
        if v < 0 or v.denominator != 1:
            raise SurfaceError("exterior powers need a character with nonnegative integer multiplicities")
        monos.extend([e] * int(v))
    # elementary symmetric polynomial e_k of the monomials
    elem = [ONE] + [ZERO] * k
    for e in monos:
        x = TLaurent.monomial(*e)
        for j in range(k, 0, -1):
            elem[j] = elem[j] + elem[j - 1] * x
    return elem[k]


_TERM = re.compile(r"\s*([+-])?\s*(\d+\s*\*)?\s*(O\(\s*-?\d+(?:\s*,\s*-?\d+)*\s*\)|K)\s*")


def parse_bundle(S: ToricSurface, text: str) -> EqClassS:
    """``O(d)``, ``O(a,b)``, ``K`` and signed sums such as ``sum:O(1)+O(2)`` or ``O(1)+O(1)-O(0)``."""
    body = text.strip()
    if body.startswith("sum:"):
        body = body[4:]
    pos = 0
    total = None
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos:
            raise SurfaceError(f"cannot parse bundle {text!r} at position {pos}")
        if total is not None and not m.group(1):
            raise SurfaceError(f"missing sign between summands in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        mult = int(m.group(2).rstrip("* ")) if m.group(2) else 1
        tok = m.group(3)
        if tok == "K":
            L = EqClassS.canonical(S)
        else:
            coords = [int(x) for x in tok[2:-1].split(",")]
            L = EqClassS.from_pic(S, coords)
        for _ in range(mult):
            total = L if total is None and sign > 0 else (total or EqClassS.zero(S))._combine(L, sign)
        pos = m.end()
    if total is None:
        raise SurfaceError(f"empty bundle specification {text!r}")
    total.label = text.strip()
    return total


# Euler characteristics and Chern data --------------------------------------------

def euler_char(S: ToricSurface, gamma: EqClassS) -> int:
    """Holomorphic Euler characteristic via localization on S."""
    terms = []
    for c, fp in zip(gamma.chars, S.fixed_points):
        den = (ONE - TLaurent.monomial(*fp.w1)) * (ONE - TLaurent.monomial(*fp.w2))
        terms.append(RatFunc(c, den))
    s = ratfunc_sum(terms)
    if not s.is_laurent():
        raise SurfaceError(f"localization sum for {gamma.label} on {S.name} is not a Laurent polynomial: {s}")
    v = s.laurent().value_at_one()
    if v.denominator != 1:
        raise SurfaceError("non-integral Euler characteristic")
    return int(v)


@dataclass
class ChernData:
    chi_O: int
    K2: int
    K_dot_c1: List[int]
    c2: List[int]
    c1_dot_c1: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def vector(self) -> List[int]:
        """Coefficients of (log A, log B, log C_i, log D_i, log E_ij) in log Z."""
        l = len(self.c2)
        out = [self.chi_O, self.K2] + list(self.K_dot_c1) + list(self.c2)
        out += [self.c1_dot_c1[(i, j)] for i in range(l) for j in range(i, l)]
        return out


def chern_classes(S: ToricSurface, gamma: EqClassS) -> Tuple[Tuple[int, ...], int]:
    """(c1 in ray coordinates, c2) of an integer combination of line bundles."""
    if gamma.summands is None:
        raise SurfaceError(f"Chern data of {gamma.label} needs a line-bundle decomposition")
    n = len(S.rays)
    c1 = tuple(sum(k * D[i] for k, D in gamma.summands) for i in range(n))
    ch2_twice = sum(k * S.intersect(D, D) for k, D in gamma.summands)
    c2_twice = S.intersect(c1, c1) - ch2_twice
    if c2_twice % 2:
        raise SurfaceError("odd c2; inconsistent data")
    return c1, c2_twice // 2


def chern_data(S: ToricSurface, classes: Sequence[EqClassS]) -> ChernData:
    K = S.canonical_divisor
    c1s, c2s = [], []
    for g in classes:
        c1, c2 = chern_classes(S, g)
        c1s.append(c1)
        c2s.append(c2)
    pair = {(i, j): S.intersect(c1s[i], c1s[j]) for i in range(len(c1s)) for j in range(i, len(c1s))}
    return ChernData(S.chi_O, S.K2, [S.intersect(K, c) for c in c1s], c2s, pair)
