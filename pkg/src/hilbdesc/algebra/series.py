"""Truncated power series in q, m1, ..., ml with exact coefficients.

Coefficients are :class:`RatFunc` (equivariant series) or ``Fraction``
(after specializing t1 = t2 = 1).  Truncation is a monomial ideal: a cap
per variable plus an optional cap ``mtotal`` on the summed degree of every
variable after the first.  Multiplication truncates eagerly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .laurent import ONE, TLaurent, format_laurent, parse_laurent
from .ratfunc import RatFunc, ratfunc_sum

Exp = Tuple[int, ...]


class SeriesError(ValueError):
    pass


def coeff_adams(c, n: int):
    if isinstance(c, RatFunc):
        return c.adams(n)
    return c


def _one_like(c):
    return RatFunc.one() if isinstance(c, RatFunc) else Fraction(1)


def _sum(items, like=None):
    items = list(items)
    if items and isinstance(items[0], RatFunc):
        return ratfunc_sum(items)
    return sum(items, Fraction(0))


class MultiSeries:
    __slots__ = ("variables", "trunc", "mtotal", "coeffs")

    def __init__(self, variables: Sequence[str], trunc: Sequence[int],
                 coeffs: Optional[Mapping[Exp, object]] = None, mtotal: Optional[int] = None):
        self.variables = tuple(variables)
        self.trunc = tuple(int(t) for t in trunc)
        if len(self.trunc) != len(self.variables):
            raise SeriesError("truncation length does not match variables")
        if any(t < 0 for t in self.trunc):
            raise SeriesError("negative truncation")
        self.mtotal = mtotal
        self.coeffs: Dict[Exp, object] = {}
        if coeffs:
            for e, c in coeffs.items():
                e = tuple(e)
                if c and self.in_range(e):
                    self.coeffs[e] = c

    # shape ----------------------------------------------------------------

    def in_range(self, e: Exp) -> bool:
        for a, t in zip(e, self.trunc):
            if a < 0 or a > t:
                return False
        if self.mtotal is not None and sum(e[1:]) > self.mtotal:
            return False
        return True

    def like(self, coeffs=None) -> "MultiSeries":
        return MultiSeries(self.variables, self.trunc, coeffs, self.mtotal)

    def _merged_shape(self, other: "MultiSeries"):
        if self.variables != other.variables:
            raise SeriesError(f"variable mismatch {self.variables} vs {other.variables}")
        trunc = tuple(min(a, b) for a, b in zip(self.trunc, other.trunc))
        if self.mtotal is None:
            mtot = other.mtotal
        elif other.mtotal is None:
            mtot = self.mtotal
        else:
            mtot = min(self.mtotal, other.mtotal)
        return trunc, mtot

    def retruncate(self, trunc: Sequence[int], mtotal: Optional[int] = None) -> "MultiSeries":
        return MultiSeries(self.variables, trunc, self.coeffs, mtotal)

    def max_grade(self) -> int:
        rest = sum(self.trunc[1:])
        if self.mtotal is not None:
            rest = min(rest, self.mtotal)
        return self.trunc[0] + rest

    @classmethod
    def constant(cls, variables, trunc, c, mtotal=None) -> "MultiSeries":
        return cls(variables, trunc, {(0,) * len(variables): c}, mtotal)

    @classmethod
    def one(cls, variables, trunc, mtotal=None, rational: bool = False) -> "MultiSeries":
        return cls.constant(variables, trunc, Fraction(1) if rational else RatFunc.one(), mtotal)

    @classmethod
    def monomial(cls, variables, trunc, e: Exp, c, mtotal=None) -> "MultiSeries":
        return cls(variables, trunc, {tuple(e): c}, mtotal)

    def __getitem__(self, e: Exp):
        e = tuple(e)
        c = self.coeffs.get(e)
        if c is None:
            return self._zero_coeff()
        return c

    def _zero_coeff(self):
        for c in self.coeffs.values():
            return c * 0
        return RatFunc.zero()

    def constant_term(self):
        return self[(0,) * len(self.variables)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def items(self):
        return sorted(self.coeffs.items())

    # arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "MultiSeries":
        if not isinstance(other, MultiSeries):
            return self + self.like({(0,) * len(self.variables): other})
        trunc, mtot = self._merged_shape(other)
        out = MultiSeries(self.variables, trunc, self.coeffs, mtot)
        for e, c in other.coeffs.items():
            if not out.in_range(e):
                continue
            s = out.coeffs.get(e)
            s = c if s is None else s + c
            if s:
                out.coeffs[e] = s
            else:
                out.coeffs.pop(e, None)
        return out

    __radd__ = __add__

    def __neg__(self) -> "MultiSeries":
        return self.like({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other) -> "MultiSeries":
        return self + (-other)

    def __rsub__(self, other) -> "MultiSeries":
        return (-self) + other

    def scale(self, c) -> "MultiSeries":
        if not c:
            return self.like()
        return self.like({e: v * c for e, v in self.coeffs.items()})

    def __mul__(self, other) -> "MultiSeries":
        if not isinstance(other, MultiSeries):
            return self.scale(other)
        trunc, mtot = self._merged_shape(other)
        probe = MultiSeries(self.variables, trunc, None, mtot)
        buckets: Dict[Exp, list] = {}
        a_items = [(e, c) for e, c in self.coeffs.items() if probe.in_range(e)]
        b_items = [(e, c) for e, c in other.coeffs.items() if probe.in_range(e)]
        for ea, ca in a_items:
            for eb, cb in b_items:
                e = tuple(x + y for x, y in zip(ea, eb))
                if probe.in_range(e):
                    buckets.setdefault(e, []).append(ca * cb)
        probe.coeffs = {}
        for e, vals in buckets.items():
            s = vals[0] if len(vals) == 1 else _sum(vals)
            if s:
                probe.coeffs[e] = s
        return probe

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.like({(0,) * len(self.variables): _one_like(self.constant_term())})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (self.variables == other.variables and self.trunc == other.trunc
                and self.mtotal == other.mtotal and self.coeffs == other.coeffs)

    def agrees_with(self, other: "MultiSeries") -> bool:
        """Equality on the common truncation."""
        trunc, mtot = self._merged_shape(other)
        a = self.retruncate(trunc, mtot)
        b = other.retruncate(trunc, mtot)
        return a.coeffs == b.coeffs

    def map_coeffs(self, fn: Callable) -> "MultiSeries":
        return self.like({e: fn(c) for e, c in self.coeffs.items()})

    def adams(self, n: int) -> "MultiSeries":
        """Raise every variable (including t1, t2) to the n-th power."""
        if n == 1:
            return self
        out = self.like()
        for e, c in self.coeffs.items():
            e2 = tuple(n * a for a in e)
            if out.in_range(e2):
                out.coeffs[e2] = coeff_adams(c, n)
        return out

    # graded pieces --------------------------------------------------------

    def graded(self) -> Dict[int, Dict[Exp, object]]:
        parts: Dict[int, Dict[Exp, object]] = {}
        for e, c in self.coeffs.items():
            parts.setdefault(sum(e), {})[e] = c
        return parts

    def _graded_product(self, a: Dict[Exp, object], b: Dict[Exp, object], acc: Dict[Exp, list]):
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if self.in_range(e):
                    acc.setdefault(e, []).append(ca * cb)

    def inverse(self) -> "MultiSeries":
        """Inverse of a unit (nonzero constant term)."""
        c0 = self.constant_term()
        if not c0:
            raise SeriesError("series is not a unit")
        inv0 = 1 / c0
        parts = self.graded()
        parts.pop(0, None)
        result: Dict[int, Dict[Exp, object]] = {0: {(0,) * len(self.variables): inv0}}
        for n in range(1, self.max_grade() + 1):
            acc: Dict[Exp, list] = {}
            for k, pk in parts.items():
                if k <= n and (n - k) in result:
                    self._graded_product(pk, result[n - k], acc)
            piece = {}
            for e, vals in acc.items():
                s = _sum(vals)
                if s:
                    piece[e] = -(s * inv0)
            if piece:
                result[n] = piece
        return self.like({e: c for piece in result.values() for e, c in piece.items()})

    def __truediv__(self, other) -> "MultiSeries":
        if isinstance(other, MultiSeries):
            return self * other.inverse()
        return self.scale(1 / other)

    def exp(self) -> "MultiSeries":
        """Ordinary exponential of a series with zero constant term."""
        if self.constant_term():
            raise SeriesError("exp of a series with nonzero constant term")
        parts = self.graded()
        like = next(iter(self.coeffs.values()), RatFunc.one())
        result: Dict[int, Dict[Exp, object]] = {0: {(0,) * len(self.variables): _one_like(like)}}
        for n in range(1, self.max_grade() + 1):
            acc: Dict[Exp, list] = {}
            for k, pk in parts.items():
                if k <= n and (n - k) in result:
                    weighted = {e: c * k for e, c in pk.items()}
                    self._graded_product(weighted, result[n - k], acc)
            piece = {}
            for e, vals in acc.items():
                s = _sum(vals)
                if s:
                    piece[e] = s / n
            if piece:
                result[n] = piece
        return self.like({e: c for piece in result.values() for e, c in piece.items()})

    def log(self) -> "MultiSeries":
        """Logarithm of a series with constant term 1."""
        c0 = self.constant_term()
        if c0 != 1:
            raise SeriesError("log requires constant term 1")
        parts = self.graded()
        parts.pop(0, None)
        result: Dict[int, Dict[Exp, object]] = {}
        for n in range(1, self.max_grade() + 1):
            acc: Dict[Exp, list] = {}
            if n in parts:
                for e, c in parts[n].items():
                    acc.setdefault(e, []).append(c * n)
            for k in range(1, n):
                if k in result and (n - k) in parts:
                    weighted = {e: -(c * k) for e, c in result[k].items()}
                    self._graded_product(weighted, parts[n - k], acc)
            piece = {}
            for e, vals in acc.items():
                s = _sum(vals)
                if s:
                    piece[e] = s / n
            if piece:
                result[n] = piece
        return self.like({e: c for piece in result.values() for e, c in piece.items()})

    # slicing ----------------------------------------------------------------

    def coefficient_in(self, index: int, power: int) -> Dict[Exp, object]:
        return {e: c for e, c in self.coeffs.items() if e[index] == power}

    def m_coefficient(self, a: Sequence[int]) -> "MultiSeries":
        """q-series multiplying m^a (variables after the first)."""
        a = tuple(a)
        out = MultiSeries(self.variables[:1], self.trunc[:1])
        for e, c in self.coeffs.items():
            if e[1:] == a:
                out.coeffs[(e[0],)] = c
        return out

    def q_coefficients(self, a: Sequence[int]) -> List:
        s = self.m_coefficient(a)
        zero = self._zero_coeff()
        return [s.coeffs.get((k,), zero) for k in range(self.trunc[0] + 1)]

    def set_variable(self, index: int, value) -> "MultiSeries":
        """Substitute a constant for one variable; the result drops it.

        Only meaningful when every surviving coefficient is a finite sum,
        e.g. value 0, or a polynomial dependence inside the truncation.
        """
        variables = self.variables[:index] + self.variables[index + 1:]
        trunc = self.trunc[:index] + self.trunc[index + 1:]
        mtot = self.mtotal if index > 0 else None
        buckets: Dict[Exp, list] = {}
        for e, c in self.coeffs.items():
            if value == 0 and e[index]:
                continue
            w = c * (value ** e[index]) if e[index] else c
            buckets.setdefault(e[:index] + e[index + 1:], []).append(w)
        return MultiSeries(variables, trunc, {e: _sum(v) for e, v in buckets.items()}, mtot)

    def __repr__(self) -> str:
        return f"MultiSeries({self.variables}, trunc={self.trunc}, mtotal={self.mtotal}, terms={len(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        out = []
        for e, c in self.items():
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(self.variables, e) if k)
            out.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(out)


def series_arith(a: MultiSeries, b: MultiSeries, op: str) -> MultiSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# alphabets -------------------------------------------------------------------

class Alphabet:
    """Finite sum of monomials in t1, t2, q, m_j with rational coefficients.

    Stored grouped by the (q, m) exponent: ``terms[e]`` is a Laurent
    polynomial in t1, t2.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping[Exp, TLaurent]] = None):
        self.variables = tuple(variables)
        self.terms: Dict[Exp, TLaurent] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.variables) or any(x < 0 for x in e):
                raise SeriesError(f"bad alphabet exponent {e}")
            c = TLaurent.coerce(c)
            if c:
                self.terms[e] = self.terms.get(e, TLaurent.constant(0)) + c
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def variable(cls, variables, index: int, coeff=ONE) -> "Alphabet":
        e = [0] * len(variables)
        e[index] = 1
        return cls(variables, {tuple(e): coeff})

    @classmethod
    def constant(cls, variables, c) -> "Alphabet":
        return cls(variables, {(0,) * len(variables): c})

    def __add__(self, other: "Alphabet") -> "Alphabet":
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return Alphabet(self.variables, terms)

    def __neg__(self) -> "Alphabet":
        return Alphabet(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Alphabet") -> "Alphabet":
        return self + (-other)

    def __mul__(self, other) -> "Alphabet":
        if isinstance(other, Alphabet):
            self._check(other)
            terms: Dict[Exp, TLaurent] = {}
            for ea, ca in self.terms.items():
                for eb, cb in other.terms.items():
                    e = tuple(x + y for x, y in zip(ea, eb))
                    terms[e] = terms[e] + ca * cb if e in terms else ca * cb
            return Alphabet(self.variables, terms)
        return Alphabet(self.variables, {e: c * other for e, c in self.terms.items()})

    __rmul__ = __mul__

    def _check(self, other: "Alphabet"):
        if self.variables != other.variables:
            raise SeriesError("alphabet variable mismatch")

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.variables == other.variables and self.terms == other.terms

    def adams(self, n: int) -> "Alphabet":
        return Alphabet(self.variables, {tuple(n * x for x in e): c.adams(n) for e, c in self.terms.items()})

    def constant_term(self) -> TLaurent:
        return self.terms.get((0,) * len(self.variables), TLaurent.constant(0))

    def to_series(self, trunc: Sequence[int], mtotal: Optional[int] = None) -> MultiSeries:
        return MultiSeries(self.variables, trunc,
                           {e: RatFunc.coerce(c) for e, c in self.terms.items()}, mtotal)

    def __repr__(self) -> str:
        return "Alphabet(" + " + ".join(
            f"({c})*" + "*".join(f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            for e, c in sorted(self.terms.items())) + ")"


def adams(n: int, x):
    """The n-th Adams operation p_n[-] on any supported value."""
    if n < 1:
        raise ValueError("Adams index must be positive")
    if isinstance(x, (MultiSeries, Alphabet, RatFunc, TLaurent)):
        return x.adams(n)
    return x


def plethystic_log_sum(x: MultiSeries) -> MultiSeries:
    """sum_{n>=1} p_n[x] / n, truncated."""
    total = x.like()
    min_deg = min((sum(e) for e in x.coeffs), default=0)
    if min_deg == 0 and x.coeffs:
        raise SeriesError("plethystic exponential of a series with constant term")
    n = 1
    while x.coeffs and n * min_deg <= x.max_grade():
        total = total + x.adams(n).scale(Fraction(1, n))
        n += 1
    return total


def series_exp(x, trunc: Optional[Sequence[int]] = None, mtotal: Optional[int] = None) -> MultiSeries:
    """Plethystic exponential Exp[x] = exp(sum_n p_n[x]/n), truncated."""
    if isinstance(x, Alphabet):
        if x.constant_term():
            raise SeriesError("Exp of an alphabet with nonzero constant term diverges")
        if trunc is None:
            raise SeriesError("truncation required for an alphabet")
        x = x.to_series(trunc, mtotal)
    if x.constant_term():
        raise SeriesError("Exp of a series with nonzero constant term diverges")
    if not x.coeffs:
        return MultiSeries.one(x.variables, x.trunc, x.mtotal)
    return plethystic_log_sum(x).exp()


def exp_alphabet(x: Alphabet, trunc: Sequence[int], mtotal: Optional[int] = None) -> MultiSeries:
    """Exp via the product formula: Exp[c * u] = (1 - u)^(-c) for monomials u.

    Coefficients stay Laurent polynomials; no rational-function arithmetic.
    """
    if x.constant_term():
        raise SeriesError("Exp of an alphabet with nonzero constant term diverges")
    result = MultiSeries.one(x.variables, trunc, mtotal)
    for e, coeff in sorted(x.terms.items()):
        for (a, b), c in sorted(coeff.terms().items()):
            # (1 - u)^(-c) = sum_j binom(c + j - 1, j) u^j   (generalized)
            factor = {}
            j = 0
            while True:
                ej = tuple(j * x_ for x_ in e)
                if not result.in_range(ej):
                    break
                factor[ej] = RatFunc.coerce(TLaurent.monomial(a * j, b * j, _gen_binom(c, j)))
                j += 1
            result = result * result.like(factor)
    return result


def _gen_binom(c: Fraction, j: int) -> Fraction:
    """Coefficient of u^j in (1 - u)^(-c)."""
    out = Fraction(1)
    for i in range(j):
        out = out * (c + i) / (i + 1)
    return out


# JSON ------------------------------------------------------------------------

def series_to_json(s: MultiSeries) -> dict:
    rational = any(not isinstance(c, RatFunc) for c in s.coeffs.values())
    coeffs = []
    for e, c in s.items():
        if isinstance(c, RatFunc):
            num, den = format_laurent(c.num), format_laurent(c.den)
        else:
            c = Fraction(c)
            num, den = str(c.numerator), str(c.denominator)
        coeffs.append({"exp": list(e), "num": num, "den": den})
    out = {"vars": list(s.variables), "trunc": list(s.trunc), "coeffs": coeffs}
    if s.mtotal is not None:
        out["mtotal"] = s.mtotal
    out["ring"] = "QQ" if rational else "QQ(t1,t2)"
    return out


def series_from_json(obj) -> MultiSeries:
    if isinstance(obj, str):
        obj = json.loads(obj)
    rational = obj.get("ring") == "QQ"
    coeffs = {}
    for item in obj["coeffs"]:
        if rational:
            c = Fraction(int(item["num"]), int(item["den"]))
        else:
            c = RatFunc(parse_laurent(item["num"]), parse_laurent(item["den"]))
        coeffs[tuple(item["exp"])] = c
    return MultiSeries(obj["vars"], obj["trunc"], coeffs, obj.get("mtotal"))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
