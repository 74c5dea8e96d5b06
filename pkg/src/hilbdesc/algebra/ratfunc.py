"""Reduced rational functions in t1, t2.

Canonical form: ``num / den`` with ``num`` a Laurent polynomial, ``den`` a
polynomial divisible by neither t1 nor t2, ``gcd(num, den) = 1`` and the
lexicographically least monomial of ``den`` carrying coefficient 1.  Two
equal rational functions therefore have identical representations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import flint

from .laurent import ONE, ZERO, TLaurent, format_laurent, parse_laurent, to_fmpq, to_fraction


class PoleError(ArithmeticError):
    """A specialization hit a pole of the rational function."""


class DegenerateDirection(ArithmeticError):
    """A monomial substitution sent the denominator to zero."""


def _normalize_den(num_poly, den_poly):
    # den's lex-least monomial is its last term in flint's lex order
    lead = den_poly.coeffs()[-1]
    if lead != 1:
        inv = 1 / lead
        num_poly = num_poly * inv
        den_poly = den_poly * inv
    return num_poly, den_poly


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num=ZERO, den=ONE, *, _reduced: bool = False):
        num = TLaurent.coerce(num)
        den = TLaurent.coerce(den)
        if _reduced:
            self.num = num
            self.den = den
            return
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _reduce(num, den)

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return cls(TLaurent.coerce(x), ONE, _reduced=True)

    def __reduce__(self):
        return (RatFunc, (self.num, self.den))

    # predicates ---------------------------------------------------------

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def laurent(self) -> TLaurent:
        if not self.den.is_one():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    # arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = RatFunc.coerce(other)
        if not other:
            return self
        if not self:
            return other
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num + other.num, ONE, _reduced=True)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        d1, d2 = self.den.poly, other.den.poly
        g = d1.gcd(d2)
        if g.is_one():
            num = self.num * TLaurent(d2, _normal=True) + other.num * TLaurent(d1, _normal=True)
            return RatFunc(num, TLaurent(d1 * d2, _normal=True))
        c1 = d1 / g
        c2 = d2 / g
        num = self.num * TLaurent(c2, _normal=True) + other.num * TLaurent(c1, _normal=True)
        return RatFunc(num, TLaurent(c1 * d2, _normal=True))

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            other = RatFunc.coerce(other)
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            if isinstance(other, TLaurent):
                other = RatFunc.coerce(other)
            else:
                c = to_fmpq(other)
                if not c:
                    return RatFunc.zero()
                return RatFunc(self.num * c, self.den, _reduced=True)
        if not self or not other:
            return RatFunc.zero()
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, ONE, _reduced=True)
        n1, d1 = self.num, self.den.poly
        n2, d2 = other.num, other.den.poly
        if not other.den.is_one():
            g = n1.poly.gcd(d2)
            if not g.is_one():
                n1 = TLaurent(n1.poly / g, n1.shift, _normal=True)
                d2 = d2 / g
        if not self.den.is_one():
            g = n2.poly.gcd(d1)
            if not g.is_one():
                n2 = TLaurent(n2.poly / g, n2.shift, _normal=True)
                d1 = d1 / g
        num = n1 * n2
        num_poly, den_poly = _normalize_den(num.poly, d1 * d2)
        return RatFunc(TLaurent(num_poly, num.shift, _normal=True), TLaurent(den_poly, _normal=True),
                       _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self:
            raise ZeroDivisionError("inverse of zero rational function")
        # num = t^s * p  =>  1/num * den = t^-s * den / p
        shift = self.num.shift
        num = TLaurent(self.den.poly, (-shift[0], -shift[1]), _normal=True)
        num_poly, den_poly = _normalize_den(num.poly, self.num.poly)
        return RatFunc(TLaurent(num_poly, num.shift, _normal=True), TLaurent(den_poly, _normal=True),
                       _reduced=True)

    def __truediv__(self, other) -> "RatFunc":
        if isinstance(other, (RatFunc, TLaurent)):
            return self * RatFunc.coerce(other).inverse()
        c = to_fraction(to_fmpq(other))
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return RatFunc.one()
        return RatFunc(self.num ** n, self.den ** n, _reduced=True) if self.den.is_one() else \
            RatFunc(self.num ** n, TLaurent(self.den.poly ** n, _normal=True), _reduced=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # substitutions ------------------------------------------------------

    def adams(self, n: int) -> "RatFunc":
        if n == 1 or self.is_constant():
            return self
        # inflation preserves coprimality; only rescaling of den may be needed
        num = self.num.adams(n)
        den = self.den.adams(n)
        return RatFunc(num, den, _reduced=True)

    def monomial_map(self, image1, image2) -> "RatFunc":
        return RatFunc(self.num.monomial_map(image1, image2), self.den.monomial_map(image1, image2))

    def swap(self) -> "RatFunc":
        return RatFunc(self.num.swap(), self.den.swap(), _reduced=True) if self.den.is_one() \
            else RatFunc(self.num.swap(), self.den.swap())

    def evaluate(self, x1, x2) -> Fraction:
        d = self.den.evaluate(x1, x2)
        if d == 0:
            raise PoleError(f"denominator of {self} vanishes at ({x1}, {x2})")
        return self.num.evaluate(x1, x2) / d

    # text ---------------------------------------------------------------

    def __str__(self) -> str:
        if self.den.is_one():
            return format_laurent(self.num)
        return f"({format_laurent(self.num)})/({format_laurent(self.den)})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    @classmethod
    def zero(cls) -> "RatFunc":
        return _RZERO

    @classmethod
    def one(cls) -> "RatFunc":
        return _RONE

    @classmethod
    def parse(cls, num: str, den: str = "1") -> "RatFunc":
        return cls(parse_laurent(num), parse_laurent(den))


def _reduce(num: TLaurent, den: TLaurent):
    if num.is_zero():
        return ZERO, ONE
    # push the denominator's monomial part into the numerator
    shift = (num.shift[0] - den.shift[0], num.shift[1] - den.shift[1])
    n, d = num.poly, den.poly
    if not d.is_constant():
        g = n.gcd(d)
        if not g.is_one():
            n = n / g
            d = d / g
    n, d = _normalize_den(n, d)
    return TLaurent(n, shift), TLaurent(d, _normal=True)


def ratfunc_reduce(f: RatFunc) -> RatFunc:
    """Return ``f`` in reduced normalized form (idempotent)."""
    return RatFunc(f.num, f.den)


def ratfunc_sum(items: Iterable[RatFunc]) -> RatFunc:
    """Sum grouping terms by denominator first; fewer gcds than a fold."""
    groups = {}
    for x in items:
        if not x:
            continue
        key = x.den
        if key in groups:
            groups[key] = groups[key] + x.num
        else:
            groups[key] = x.num
    total = RatFunc.zero()
    for den, num in groups.items():
        total = total + RatFunc(num, den)
    return total


def eval_t_one(f: RatFunc) -> Fraction:
    """Exact value at t1 = t2 = 1; raises :class:`PoleError` on a pole."""
    d = f.den.value_at_one()
    if d == 0:
        raise PoleError(f"pole at t1=t2=1: {f}")
    return f.num.value_at_one() / d


_RZERO = RatFunc(ZERO, ONE, _reduced=True)
_RONE = RatFunc(ONE, ONE, _reduced=True)


# univariate specialization --------------------------------------------------

class UnivariateRatFunc:
    """Reduced ``tau^shift * num(tau) / den(tau)`` with flint univariate polys."""

    __slots__ = ("num", "den", "shift")

    def __init__(self, num: flint.fmpq_poly, den: flint.fmpq_poly, shift: int = 0):
        if den.is_zero():
            raise DegenerateDirection("denominator vanishes identically")
        if num.is_zero():
            self.num, self.den, self.shift = num, flint.fmpq_poly([1]), 0
            return
        num, s1 = _strip_tau(num)
        den, s2 = _strip_tau(den)
        g = num.gcd(den)
        if g.degree() > 0:
            num = num // g
            den = den // g
        lead = den[0]
        self.num = num / lead
        self.den = den / lead
        self.shift = shift + s1 - s2

    def is_laurent(self) -> bool:
        return self.den.degree() == 0

    def value_at_one(self) -> Fraction:
        d = self.den(1)
        if d == 0:
            raise PoleError("pole at tau = 1")
        return to_fraction(self.num(1) / d)

    def __str__(self) -> str:
        return f"tau^{self.shift}*({self.num})/({self.den})"


def _strip_tau(p: flint.fmpq_poly):
    coeffs = p.coeffs()
    k = 0
    while k < len(coeffs) and coeffs[k] == 0:
        k += 1
    return flint.fmpq_poly(coeffs[k:]), k


def _laurent_to_univariate(f: TLaurent, e1: int, e2: int):
    terms = {}
    for (a, b), c in f.terms().items():
        k = a * e1 + b * e2
        terms[k] = terms.get(k, 0) + c
    terms = {k: v for k, v in terms.items() if v}
    if not terms:
        return flint.fmpq_poly([]), 0
    low = min(terms)
    coeffs = [flint.fmpq(0)] * (max(terms) - low + 1)
    for k, v in terms.items():
        coeffs[k - low] = to_fmpq(v)
    return flint.fmpq_poly(coeffs), low


def subst_univariate(f: RatFunc, e1: int, e2: int) -> UnivariateRatFunc:
    """Substitute t1 -> tau^e1, t2 -> tau^e2."""
    if (e1, e2) == (0, 0):
        raise ValueError("direction (0, 0) is not allowed")
    num, s_num = _laurent_to_univariate(f.num, e1, e2)
    den, s_den = _laurent_to_univariate(f.den, e1, e2)
    if den.is_zero():
        raise DegenerateDirection(f"direction ({e1}, {e2}) kills the denominator of {f}")
    return UnivariateRatFunc(num, den, s_num - s_den)
