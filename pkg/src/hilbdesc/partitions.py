"""Young diagrams and the fixed-point data attached to them.

Cells are pairs ``(c1, c2)`` with ``c2 < parts[c1]``: ``c1`` indexes the
part (weight t1) and ``c2`` the position inside it (weight t2).  The leg of
a cell runs along ``c1`` and the arm along ``c2``.
"""

from __future__ import annotations

import json
from functools import lru_cache
from math import factorial
from typing import Iterator, List, Sequence, Tuple

from .algebra.laurent import ONE, TLaurent

Cell = Tuple[int, int]


class Partition(tuple):
    """Weakly decreasing tuple of positive parts."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def parts(self) -> Tuple[int, ...]:
        return tuple(self)

    @property
    def size(self) -> int:
        return sum(self)

    def cells(self) -> List[Cell]:
        return [(i, j) for i, p in enumerate(self) for j in range(p)]

    def __contains__(self, cell) -> bool:
        if not (isinstance(cell, tuple) and len(cell) == 2):
            return tuple.__contains__(self, cell)
        c1, c2 = cell
        return 0 <= c1 < len(self) and 0 <= c2 < self[c1]

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition([sum(1 for p in self if p > j) for j in range(self[0])])

    def arm(self, cell: Cell) -> int:
        _check_cell(self, cell)
        c1, c2 = cell
        return self[c1] - c2 - 1

    def leg(self, cell: Cell) -> int:
        _check_cell(self, cell)
        c1, c2 = cell
        return sum(1 for p in self[c1 + 1:] if p > c2)

    def n(self) -> int:
        """sum (i-1) lambda_i, i.e. the total c1 over all cells."""
        return sum(i * p for i, p in enumerate(self))

    def multiplicities(self):
        out = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def to_json(self) -> str:
        return json.dumps(list(self))

    def key(self) -> str:
        return ",".join(str(p) for p in self)

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


def _check_cell(lam: Partition, cell: Cell):
    if cell not in lam:
        raise ValueError(f"cell {cell} is not in {list(lam)}")


def arm(lam: Partition, cell: Cell) -> int:
    return Partition(lam).arm(cell)


def leg(lam: Partition, cell: Cell) -> int:
    return Partition(lam).leg(cell)


def _generate(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _generate(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_partitions(n: int) -> Tuple[Partition, ...]:
    """All partitions of n in reverse-lexicographic order, (n) first."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return tuple(Partition(p) for p in _generate(n, n))


def partitions_up_to(n: int) -> List[Partition]:
    return [lam for k in range(n + 1) for lam in enumerate_partitions(k)]


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text.startswith("["):
        return Partition(json.loads(text))
    if not text:
        return Partition()
    return Partition([int(x) for x in text.split(",")])


def dominance_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    if sum(mu) != sum(lam):
        raise ValueError("dominance compares partitions of equal size")
    a = b = 0
    for i in range(max(len(mu), len(lam))):
        a += mu[i] if i < len(mu) else 0
        b += lam[i] if i < len(lam) else 0
        if a > b:
            return False
    return True


def z_lambda(lam: Sequence[int]) -> int:
    out = 1
    for part, mult in Partition(lam).multiplicities().items():
        out *= part ** mult * factorial(mult)
    return out


# fixed-point data -------------------------------------------------------------

@lru_cache(maxsize=None)
def b_poly(lam: Partition) -> TLaurent:
    """Sum of t1^c1 t2^c2 over the cells."""
    return TLaurent.from_terms({cell: 1 for cell in Partition(lam).cells()})


@lru_cache(maxsize=None)
def c_factors(lam: Partition) -> Tuple[Tuple[int, int], ...]:
    """Exponent pairs w with C_lambda = prod (1 - t^w)."""
    lam = Partition(lam)
    out = []
    for cell in lam.cells():
        a, l = lam.arm(cell), lam.leg(cell)
        out.append((l + 1, -a))
        out.append((-l, a + 1))
    return tuple(out)


@lru_cache(maxsize=None)
def c_lambda(lam: Partition) -> TLaurent:
    out = ONE
    for e1, e2 in c_factors(lam):
        out = out * (ONE - TLaurent.monomial(e1, e2))
    return out


@lru_cache(maxsize=None)
def nabla_eigenvalue(lam: Partition) -> TLaurent:
    """H_lambda[-1] = (-1)^|lambda| prod t1^c1 t2^c2."""
    lam = Partition(lam)
    cells = lam.cells()
    e1 = sum(c[0] for c in cells)
    e2 = sum(c[1] for c in cells)
    return TLaurent.monomial(e1, e2, (-1) ** len(cells))


def hook_lengths(lam: Sequence[int]) -> List[int]:
    lam = Partition(lam)
    conj = lam.conjugate()
    return [lam[i] - j + conj[j] - i - 1 for i, j in lam.cells()]
