"""Laurent polynomials in the torus variables t1, t2 over the rationals.

A :class:`TLaurent` is stored as a true polynomial (flint ``fmpq_mpoly``)
together with a monomial shift, normalized so the polynomial part is not
divisible by ``t1`` or ``t2``.  Values are immutable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

import flint

CTX = flint.fmpq_mpoly_ctx.get(("t1", "t2"), "lex")

TMonomial = Tuple[int, int]

_ZERO_POLY = CTX.from_dict({})
_ONE_POLY = CTX.from_dict({(0, 0): 1})


def to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, int):
        return flint.fmpq(c)
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def to_fraction(c) -> Fraction:
    if isinstance(c, flint.fmpq):
        return Fraction(int(c.numer()), int(c.denom()))
    return Fraction(c)


def _monomial_poly(e1: int, e2: int):
    return CTX.from_dict({(e1, e2): 1})


def _normalize(poly, shift: TMonomial):
    if poly.is_zero():
        return _ZERO_POLY, (0, 0)
    content = poly.term_content()
    e1, e2 = content.monoms()[0]
    if e1 or e2:
        poly = poly / content
        shift = (shift[0] + e1, shift[1] + e2)
    return poly, shift


class TLaurent:
    """Element of Q[t1^±, t2^±]."""

    __slots__ = ("poly", "shift")

    def __init__(self, poly=None, shift: TMonomial = (0, 0), *, _normal: bool = False):
        if poly is None:
            poly = _ZERO_POLY
        if not _normal:
            poly, shift = _normalize(poly, (int(shift[0]), int(shift[1])))
        self.poly = poly
        self.shift = shift

    # construction -------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Mapping[TMonomial, object]) -> "TLaurent":
        terms = {tuple(k): to_fmpq(v) for k, v in terms.items() if v}
        if not terms:
            return ZERO
        m1 = min(k[0] for k in terms)
        m2 = min(k[1] for k in terms)
        poly = CTX.from_dict({(a - m1, b - m2): v for (a, b), v in terms.items()})
        return cls(poly, (m1, m2), _normal=True)

    @classmethod
    def monomial(cls, e1: int, e2: int, coeff=1) -> "TLaurent":
        if not coeff:
            return ZERO
        return cls(CTX.from_dict({(0, 0): to_fmpq(coeff)}), (e1, e2), _normal=True)

    @classmethod
    def constant(cls, c) -> "TLaurent":
        return cls.monomial(0, 0, c)

    @classmethod
    def coerce(cls, x) -> "TLaurent":
        if isinstance(x, TLaurent):
            return x
        return cls.constant(x)

    def __reduce__(self):
        return (TLaurent.from_terms, (self.terms(),))

    # inspection ---------------------------------------------------------

    def terms(self) -> Dict[TMonomial, Fraction]:
        s1, s2 = self.shift
        return {
            (a + s1, b + s2): to_fraction(c)
            for (a, b), c in zip(self.poly.monoms(), self.poly.coeffs())
        }

    def __len__(self) -> int:
        return len(self.poly)

    def __bool__(self) -> bool:
        return not self.poly.is_zero()

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_constant(self) -> bool:
        return self.shift == (0, 0) and self.poly.is_constant()

    def is_monomial(self) -> bool:
        return len(self.poly) == 1

    def is_one(self) -> bool:
        return self.shift == (0, 0) and self.poly.is_one()

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return to_fraction(self.poly.coeffs()[0])

    def exponent_bound(self) -> int:
        """Largest absolute exponent appearing in any term."""
        if self.is_zero():
            return 0
        d1, d2 = self.poly.degrees()
        s1, s2 = self.shift
        return max(abs(s1), abs(s2), abs(s1 + d1), abs(s2 + d2))

    # arithmetic ---------------------------------------------------------

    def _aligned(self, other: "TLaurent"):
        if self.is_zero():
            return _ZERO_POLY, other.poly, other.shift
        if other.is_zero():
            return self.poly, _ZERO_POLY, self.shift
        s = (min(self.shift[0], other.shift[0]), min(self.shift[1], other.shift[1]))
        p = self.poly
        if self.shift != s:
            p = p * _monomial_poly(self.shift[0] - s[0], self.shift[1] - s[1])
        q = other.poly
        if other.shift != s:
            q = q * _monomial_poly(other.shift[0] - s[0], other.shift[1] - s[1])
        return p, q, s

    def __add__(self, other) -> "TLaurent":
        if not isinstance(other, TLaurent):
            other = TLaurent.coerce(other)
        p, q, s = self._aligned(other)
        return TLaurent(p + q, s)

    __radd__ = __add__

    def __neg__(self) -> "TLaurent":
        return TLaurent(-self.poly, self.shift, _normal=True)

    def __sub__(self, other) -> "TLaurent":
        if not isinstance(other, TLaurent):
            other = TLaurent.coerce(other)
        p, q, s = self._aligned(other)
        return TLaurent(p - q, s)

    def __rsub__(self, other) -> "TLaurent":
        return TLaurent.coerce(other) - self

    def __mul__(self, other) -> "TLaurent":
        if isinstance(other, TLaurent):
            if self.is_zero() or other.is_zero():
                return ZERO
            return TLaurent(
                self.poly * other.poly,
                (self.shift[0] + other.shift[0], self.shift[1] + other.shift[1]),
                _normal=True,
            )
        c = to_fmpq(other)
        if not c:
            return ZERO
        return TLaurent(self.poly * c, self.shift, _normal=True)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TLaurent":
        if isinstance(other, TLaurent):
            if not other.is_monomial():
                raise ValueError("TLaurent division only by monomials")
            (e1, e2), c = next(iter(other.terms().items()))
            return TLaurent(self.poly / to_fmpq(c), (self.shift[0] - e1, self.shift[1] - e2),
                            _normal=True) if self else ZERO
        return self * (1 / to_fraction(to_fmpq(other)))

    def __pow__(self, n: int) -> "TLaurent":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            return (ONE / self) ** (-n)
        if n == 0:
            return ONE
        return TLaurent(self.poly ** n, (self.shift[0] * n, self.shift[1] * n), _normal=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TLaurent):
            try:
                other = TLaurent.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.shift == other.shift and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.shift, tuple(self.poly.monoms()), tuple(str(c) for c in self.poly.coeffs())))

    # substitutions ------------------------------------------------------

    def adams(self, n: int) -> "TLaurent":
        """t_i -> t_i^n."""
        if n == 1 or self.is_zero():
            return self
        return TLaurent(self.poly.inflate([n, n]), (self.shift[0] * n, self.shift[1] * n),
                        _normal=True)

    def monomial_map(self, image1: TMonomial, image2: TMonomial) -> "TLaurent":
        """Substitute t1 -> t^image1, t2 -> t^image2 (exponent vectors)."""
        out: Dict[TMonomial, Fraction] = {}
        for (a, b), c in self.terms().items():
            key = (a * image1[0] + b * image2[0], a * image1[1] + b * image2[1])
            out[key] = out.get(key, 0) + c
        return TLaurent.from_terms(out)

    def swap(self) -> "TLaurent":
        """Exchange t1 and t2."""
        return self.monomial_map((0, 1), (1, 0))

    def evaluate(self, x1, x2) -> Fraction:
        x1, x2 = Fraction(x1), Fraction(x2)
        return sum((c * x1 ** a * x2 ** b for (a, b), c in self.terms().items()), Fraction(0))

    def value_at_one(self) -> Fraction:
        return to_fraction(sum(self.poly.coeffs(), flint.fmpq(0)))

    # text ---------------------------------------------------------------

    def __str__(self) -> str:
        return format_laurent(self)

    def __repr__(self) -> str:
        return f"TLaurent({format_laurent(self)!r})"


ZERO = TLaurent(_ZERO_POLY, (0, 0), _normal=True)
ONE = TLaurent(_ONE_POLY, (0, 0), _normal=True)
T1 = TLaurent.monomial(1, 0)
T2 = TLaurent.monomial(0, 1)


def monomial_product(monomials: Iterable[TMonomial]) -> TMonomial:
    e1 = e2 = 0
    for a, b in monomials:
        e1 += a
        e2 += b
    return e1, e2


# canonical string form ----------------------------------------------------

def _format_monomial(a: int, b: int) -> str:
    parts = []
    for name, e in (("t1", a), ("t2", b)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_laurent(f: TLaurent) -> str:
    """Canonical text, terms in increasing lexicographic exponent order."""
    terms = sorted(f.terms().items())
    if not terms:
        return "0"
    out = []
    for i, ((a, b), c) in enumerate(terms):
        mono = _format_monomial(a, b)
        neg = c < 0
        mag = -c if neg else c
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


class LaurentParseError(ValueError):
    pass


_FACTOR = re.compile(r"\s*(?:(t1|t2)(?:\s*(?:\^|\*\*)\s*(-?\d+))?|(\d+(?:/\d+)?))\s*")


def parse_laurent(text: str) -> TLaurent:
    """Parse sums of terms like ``3/2*t1^2*t2^-1 - t2 + 1``.

    The empty string parses to zero.
    """
    s = text.strip()
    if not s:
        return ZERO
    terms: Dict[TMonomial, Fraction] = {}
    pos = 0
    n = len(s)
    first = True
    while pos < n:
        while pos < n and s[pos].isspace():
            pos += 1
        sign = 1
        if pos < n and s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise LaurentParseError(f"expected '+' or '-' at position {pos} in {text!r}")
        first = False
        coeff = Fraction(sign)
        e1 = e2 = 0
        expect_factor = True
        while expect_factor:
            m = _FACTOR.match(s, pos)
            if not m or m.end() == pos:
                raise LaurentParseError(f"bad term at position {pos} in {text!r}")
            var, exp, num = m.groups()
            if num is not None:
                coeff *= Fraction(num)
            else:
                e = int(exp) if exp is not None else 1
                if var == "t1":
                    e1 += e
                else:
                    e2 += e
            pos = m.end()
            if pos < n and s[pos] == "*" and s[pos:pos + 2] != "**":
                pos += 1
            else:
                expect_factor = False
        terms[(e1, e2)] = terms.get((e1, e2), 0) + coeff
    return TLaurent.from_terms(terms)
