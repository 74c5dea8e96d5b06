"""Solve for the universal series from several surfaces and classes.

log hat Z_S is linear in the Chern numbers (chi(O), K^2, K.c1, c2, c1.c1)
coefficient by coefficient; with enough configurations the coefficients of
log A, log B, ... are determined by an exact linear solve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from ..algebra.laurent import to_fmpq, to_fraction
from ..algebra.series import MultiSeries
from .series import z_surface
from .surface import EqClassS, ToricSurface, chern_data, parse_bundle, parse_surface


class RankDeficiency(ValueError):
    """The configurations leave some Chern direction unprobed."""

    def __init__(self, directions: List[str]):
        self.directions = directions
        super().__init__("configurations do not determine: " + ", ".join(directions))


def unknown_names(l: int) -> List[str]:
    names = ["A", "B"] + [f"C{i + 1}" for i in range(l)] + [f"D{i + 1}" for i in range(l)]
    names += [f"E{i + 1}{j + 1}" for i in range(l) for j in range(i, l)]
    return names


def direction_names(l: int) -> List[str]:
    names = ["chi(O)", "K^2"] + [f"K.c1(a{i + 1})" for i in range(l)] + [f"c2(a{i + 1})" for i in range(l)]
    names += [f"c1(a{i + 1}).c1(a{j + 1})" for i in range(l) for j in range(i, l)]
    return names


@dataclass
class UniversalFactorization:
    ranks: Tuple[int, ...]
    logs: Dict[str, MultiSeries]
    residual: Fraction
    configs: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        from ..algebra.series import series_to_json
        return {"ranks": list(self.ranks), "residual": str(self.residual), "configs": self.configs,
                "logs": {k: series_to_json(v) for k, v in self.logs.items()}}

    def exp_series(self, name: str) -> MultiSeries:
        return self.logs[name].exp()


def _null_directions(rows: List[List[int]], names: List[str]) -> List[str]:
    M = flint.fmpq_mat(rows)
    rref, rank = M.rref()
    ncols = len(names)
    pivots = []
    r = 0
    for c in range(ncols):
        if r < rank and rref[r, c] != 0:
            pivots.append(c)
            r += 1
    free = [c for c in range(ncols) if c not in pivots]
    return [names[c] for c in free]


def universal_extract(ranks: Sequence[int], configs: Sequence[Tuple[ToricSurface, Sequence[EqClassS]]],
                      q_order: int = 3, m_order: int = 3, jobs: int = 1) -> UniversalFactorization:
    ranks = tuple(ranks)
    l = len(ranks)
    names = unknown_names(l)
    dirs = direction_names(l)
    rows, logs, labels = [], [], []
    for S, classes in configs:
        if len(classes) != l:
            raise ValueError(f"config on {S.name} has {len(classes)} classes, expected {l}")
        for g, r in zip(classes, ranks):
            if g.rank != r:
                raise ValueError(f"class {g.label} has rank {g.rank}, expected {r}")
        rows.append(chern_data(S, classes).vector())
        labels.append(S.name + ":" + "|".join(g.label for g in classes))
    free = _null_directions(rows, dirs)
    if free:
        raise RankDeficiency(free)
    for S, classes in configs:
        logs.append(z_surface(S, classes, q_order, m_order, jobs=jobs).log())
    # exact solve on a square subsystem of independent rows, residual on the rest
    chosen: List[int] = []
    for i in range(len(rows)):
        trial = flint.fmpq_mat([rows[j] for j in chosen + [i]])
        if trial.rank() > len(chosen):
            chosen.append(i)
        if len(chosen) == len(names):
            break
    Asq = flint.fmpq_mat([rows[j] for j in chosen])
    Ainv = Asq.inv()
    shape = logs[0]
    keys = sorted(set().union(*(L.coeffs for L in logs)))
    out = {n: MultiSeries(shape.variables, shape.trunc, None, shape.mtotal) for n in names}
    residual = Fraction(0)
    for e in keys:
        b = [Fraction(L[e]) if e in L.coeffs else Fraction(0) for L in logs]
        bsq = flint.fmpq_mat([[to_fmpq(b[j])] for j in chosen])
        x = Ainv * bsq
        xs = [to_fraction(x[k, 0]) for k in range(len(names))]
        for k, n in enumerate(names):
            if xs[k]:
                out[n].coeffs[e] = xs[k]
        for i, row in enumerate(rows):
            pred = sum((Fraction(a) * v for a, v in zip(row, xs)), Fraction(0))
            residual = max(residual, abs(pred - b[i]))
    return UniversalFactorization(ranks, out, residual, labels)


DEFAULT_RANK1 = [
    ("P2", ["O(0)"]), ("P2", ["O(1)"]), ("P2", ["O(2)"]), ("P2", ["O(3)"]),
    ("P2", ["O(1)+O(1)-O(0)"]), ("P1xP1", ["O(1,1)"]), ("P1xP1", ["O(1,2)"]),
    ("F1", ["O(1,1)"]), ("F1", ["O(0,1)+O(1,0)-O(0,0)"]),
]


def parse_configs(items: Sequence[str]) -> List[Tuple[ToricSurface, List[EqClassS]]]:
    """Entries ``SURFACE:BUNDLE[;BUNDLE...]``, e.g. ``P2:O(1)`` or ``F1:O(1,0);O(0,1)``."""
    cache: Dict[str, ToricSurface] = {}
    out = []
    for item in items:
        if ":" not in item:
            raise ValueError(f"config {item!r} should look like SURFACE:BUNDLE")
        name, rest = item.split(":", 1)
        name = name.strip()
        if name not in cache:
            cache[name] = parse_surface(name)
        S = cache[name]
        out.append((S, [parse_bundle(S, b) for b in rest.split(";")]))
    return out


def default_configs(ranks: Sequence[int]) -> List[str]:
    if tuple(ranks) == (1,):
        return [f"{s}:{b[0]}" for s, b in DEFAULT_RANK1]
    if tuple(ranks) == (1, 1):
        return ["P2:O(0);O(1)", "P2:O(1);O(2)", "P2:O(1)+O(1)-O(0);O(1)", "P2:O(2);O(1)+O(1)-O(0)",
                "P2:O(3);O(-1)", "P1xP1:O(1,0);O(0,1)", "P1xP1:O(1,1);O(1,2)", "F1:O(1,1);O(0,1)",
                "F1:O(1,0);O(2,1)", "P1xP1:O(2,0);O(1,0)"]
    raise ValueError(f"no default configuration set for ranks {tuple(ranks)}; pass --configs")
