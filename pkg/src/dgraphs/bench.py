"""Timing benchmark for the Hamiltonian construction on growing families."""

from __future__ import annotations

import csv
import math
import statistics
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import zoo
from .complex_core import Graph
from .hamiltonian import find_hamiltonian, verify_hamiltonian, verify_strong

CSV_HEADER = ("n", "seed", "millis", "verified", "strong")

# family name -> (size, seed) -> graph; size is the family's own parameter
FAMILIES: dict[str, Callable[[int, int], Graph]] = {
    "random_refined_sphere": lambda size, seed: zoo.random_refined_sphere(2, size, seed),
    "random_refined_sphere3": lambda size, seed: zoo.random_refined_sphere(3, size, seed),
    "cyclic": lambda size, seed: zoo.cyclic(size),
    "torus": lambda size, seed: zoo.torus(size, size),
}

# refinement steps giving n = 50 .. 2000 for the 2-sphere family
DEFAULT_SIZES = {
    "random_refined_sphere": [44, 94, 194, 394, 594, 994, 1494, 1994],
    "random_refined_sphere3": [40, 100, 200, 400],
    "cyclic": [50, 100, 200, 500, 1000, 2000],
    "torus": [4, 6, 8, 12, 16, 24],
}


class BenchError(RuntimeError):
    pass


@dataclass(frozen=True)
class Row:
    n: int
    seed: int
    millis: float
    verified: bool
    strong: bool

    def as_csv(self) -> list:
        return [self.n, self.seed, f"{self.millis:.3f}", int(self.verified), int(self.strong)]


@dataclass(frozen=True)
class Fit:
    slope: float
    intercept: float
    r2: float

    def to_json(self) -> dict:
        return {"slope": round(self.slope, 4), "intercept": round(self.intercept, 4),
                "r2": round(self.r2, 4)}


def run(family: str = "random_refined_sphere", sizes: Sequence[int] | None = None,
        repeats: int = 1, seed: int = 0, progress: Callable[[Row], None] | None = None) -> list[Row]:
    """Time ``find_hamiltonian`` (plain, not strong) on each size and seed.

    The strong column reports whether the plain cycle happens to be strong.
    Raises BenchError on any unverified cycle.
    """
    try:
        build = FAMILIES[family]
    except KeyError:
        raise BenchError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    sizes = list(sizes) if sizes else DEFAULT_SIZES[family]
    rows = []
    for size in sizes:
        for r in range(repeats):
            s = seed + r
            g = build(size, s)
            t0 = time.perf_counter()
            cyc, _ = find_hamiltonian(g, strong=False, seed=s)
            millis = (time.perf_counter() - t0) * 1000.0
            if not verify_hamiltonian(g, cyc):
                raise BenchError(f"unverified cycle at size {size}, seed {s}")
            row = Row(g.n, s, millis, True, verify_strong(g, cyc))
            rows.append(row)
            if progress:
                progress(row)
    return rows


def fit_loglog(rows: Iterable[Row]) -> Fit:
    """Least-squares line through (log n, log millis)."""
    pts = [(math.log(r.n), math.log(max(r.millis, 1e-3))) for r in rows]
    if len({x for x, _ in pts}) < 2:
        raise BenchError("need at least two distinct sizes for a fit")
    xs, ys = zip(*pts)
    slope, intercept = statistics.linear_regression(xs, ys)
    r = statistics.correlation(xs, ys)
    return Fit(slope, intercept, r * r)


def write_csv(rows: Iterable[Row], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for row in rows:
            w.writerow(row.as_csv())


def read_csv(path) -> list[Row]:
    with open(path, newline="") as fh:
        return [Row(int(d["n"]), int(d["seed"]), float(d["millis"]),
                    d["verified"] in ("1", "True"), d["strong"] in ("1", "True"))
                for d in csv.DictReader(fh)]
