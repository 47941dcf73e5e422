"""Grid certification of the inequality chains behind the main bound.

Everything is exact: big integers, or rationals where the constants e and
sqrt(e) appear.  Those enter only through hard-coded certified enclosures,
and each comparison is made against the adverse end of its enclosure, so a
reported pass at a grid point is a proof for that point.  Points whose
parameters fall outside an inequality's hypothesis are skipped with a
reason rather than evaluated.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from multiprocessing import Pool

from .formulas import binom, f_of_z, fprime3, hm_size, size_c3, thm1_bound

# e in [2718281828, 2718281829] / 10^9; sqrt(e) likewise.
E_LO = Fraction(2_718_281_828, 10**9)
E_HI = Fraction(2_718_281_829, 10**9)
SQRT_E_LO = Fraction(1_648_721_270, 10**9)
SQRT_E_HI = Fraction(1_648_721_272, 10**9)


@dataclass(frozen=True)
class FormulaParams:
    n: int | None = None
    k: int | None = None
    s: int | None = None
    m: int | None = None
    z: int | None = None
    u: int | None = None
    t: int | None = None
    j: int | None = None
    i: int | None = None

    def as_dict(self) -> dict:
        return {
            name: value
            for name, value in self.__dict__.items()
            if value is not None
        }


@dataclass(frozen=True)
class GridPoint:
    params: dict
    lhs: tuple = ()
    rhs: tuple = ()
    passed: bool = False
    skipped: str | None = None


@dataclass
class GridReport:
    name: str
    points: list = field(default_factory=list)

    @property
    def checked(self) -> list:
        return [p for p in self.points if p.skipped is None]

    @property
    def n_skipped(self) -> int:
        return len(self.points) - len(self.checked)

    @property
    def all_pass(self) -> bool:
        return all(p.passed for p in self.checked)

    def failures(self) -> list:
        return [p for p in self.checked if not p.passed]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "total": len(self.points),
            "checked": len(self.checked),
            "passed": sum(1 for p in self.checked if p.passed),
            "skipped": self.n_skipped,
            "all_pass": self.all_pass,
            "points": [
                {
                    "point": p.params,
                    "lhs": list(p.lhs),
                    "rhs": list(p.rhs),
                    "pass": p.passed,
                    **({"skipped": p.skipped} if p.skipped else {}),
                }
                for p in self.points
            ],
        }


@lru_cache(maxsize=1 << 17)
def _f(m: int, s: int, k: int, z: int) -> int:
    return f_of_z(m, s, k, z)


def _g(n: int, k: int, i: int) -> int:
    """The layer weight i^i C(n-i, k-i)."""
    return i**i * binom(n - i, k - i)


def _skip(p: FormulaParams, reason: str) -> GridPoint:
    return GridPoint(p.as_dict(), skipped=reason)


# each check maps FormulaParams -> GridPoint; lhs/rhs hold the compared
# integer tuples so a failure is diagnosable from the report alone

def _check_f_mono(p: FormulaParams) -> GridPoint:
    k, s, m, z = p.k, p.s, p.m, p.z
    if k is None or k < 4:
        return _skip(p, "needs k >= 4")
    if s is None or not 2 <= s <= k:
        return _skip(p, "needs 2 <= s <= k")
    if m is None or m < k + s:
        return _skip(p, "needs m >= k+s")
    if z is None or not 3 <= z <= s + 1:
        return _skip(p, "needs 3 <= z <= s+1")
    diff = _f(m, s, k, z - 1) - _f(m, s, k, z)
    step = binom(m - s - 2, k - 3)
    return GridPoint(p.as_dict(), (diff, step), (step, 1), diff >= step and step > 1)


def _check_f3_fprime3(p: FormulaParams) -> GridPoint:
    k, s, m = p.k, p.s, p.m
    if k is None or k < 4:
        return _skip(p, "needs k >= 4")
    if s is None or not 4 <= s <= k:
        return _skip(p, "needs 4 <= s <= k")
    if m is None or m < k + s:
        return _skip(p, "needs m >= k+s")
    diff = _f(m, s, k, 3) - fprime3(m, s, k)
    target = binom(m - s - 3, k - 3)
    return GridPoint(p.as_dict(), (diff, target), (target, 1), diff == target and target >= 1)


def _check_g_ratio(p: FormulaParams) -> GridPoint:
    n, k, i = p.n, p.k, p.i
    if k is None or k < 100:
        return _skip(p, "needs k >= 100")
    if n is None or n <= 2 * (k - 1) ** 2:
        return _skip(p, "needs n > 2(k-1)^2")
    if i is None or not 6 <= i <= k:
        return _skip(p, "needs 6 <= i <= k")
    lhs = 2 * _g(n, k, i)
    rhs = _g(n, k, i - 1)
    return GridPoint(p.as_dict(), (lhs,), (rhs,), lhs < rhs)


def _check_two_g5(p: FormulaParams) -> GridPoint:
    n, k = p.n, p.k
    if k is None or k < 100:
        return _skip(p, "needs k >= 100")
    if n is None or n <= 2 * (k - 1) ** 2:
        return _skip(p, "needs n > 2(k-1)^2")
    lhs = 2 * _g(n, k, 5)
    rhs = binom(n - 5, k - 3)
    return GridPoint(p.as_dict(), (lhs,), (rhs,), lhs < rhs)


def _check_eqc3large(p: FormulaParams) -> GridPoint:
    n, k = p.n, p.k
    if k is None or k < 100:
        return _skip(p, "needs k >= 100")
    if n is None or n <= 2 * (k - 1) ** 2:
        return _skip(p, "needs n > 2(k-1)^2")
    # |C3| >= (k^2-k+1) C(n-3,k-3) / sqrt(e); adverse end is the lower
    # enclosure endpoint, giving the largest rational right-hand side
    lhs = size_c3(n, k) * SQRT_E_LO.numerator
    rhs = (k * k - k + 1) * binom(n - 3, k - 3) * SQRT_E_LO.denominator
    return GridPoint(p.as_dict(), (lhs,), (rhs,), lhs >= rhs)


def _check_eqboundf(p: FormulaParams) -> GridPoint:
    n, k = p.n, p.k
    if k is None or k < 100:
        return _skip(p, "needs k >= 100")
    if n is None or n < 50 * (k - 1) + 1:
        return _skip(p, "needs n >= 50(k-1)+1")
    lhs1 = thm1_bound(n, k, 4)
    rhs1 = 5 * binom(n - 2, k - 2)
    lhs2 = 50 * binom(n - 2, k - 2)
    rhs2 = binom(n - 1, k - 1)
    return GridPoint(
        p.as_dict(), (lhs1, lhs2), (rhs1, rhs2), lhs1 <= rhs1 and lhs2 <= rhs2
    )


def _check_eqboundc2(p: FormulaParams) -> GridPoint:
    n, k = p.n, p.k
    if k is None or k < 4:
        return _skip(p, "needs k >= 4")
    if n is None or n <= 2 * k:
        return _skip(p, "needs n > 2k")
    lhs1 = binom(n - k - 2, k - 2) + sum(binom(n - k - i, k - 2) for i in range(2, k + 1))
    rhs1 = binom(n - k, k - 1)
    lhs2 = binom(n - 1, k - 1) - 2 * binom(n - k, k - 1)
    rhs2 = size_c3(n, k)
    return GridPoint(
        p.as_dict(), (lhs1, lhs2), (rhs1, rhs2), lhs1 <= rhs1 and lhs2 <= rhs2
    )


def _check_peel_combine(p: FormulaParams) -> GridPoint:
    n, k = p.n, p.k
    if k is None or k < 100:
        return _skip(p, "needs k >= 100")
    if n is None or n <= 2 * (k - 1) ** 2:
        return _skip(p, "needs n > 2(k-1)^2")
    lhs = 3**5 * binom(n - 3, k - 3) + 4**5 * binom(n - 4, k - 4) + 2 * _g(n, k, 5)
    rhs = 250 * binom(n - 3, k - 3)
    return GridPoint(p.as_dict(), (lhs,), (rhs,), lhs <= rhs)


def _check_final_compare(p: FormulaParams) -> GridPoint:
    k = p.k
    if k is None or k < 100:
        return _skip(p, "needs k >= 100")
    # (k^2-k+1)/sqrt(e) > 50k against the upper enclosure endpoint
    lhs1 = (k * k - k + 1) * SQRT_E_HI.denominator
    rhs1 = 50 * k * SQRT_E_HI.numerator
    lhs2 = 50 * k
    rhs2 = 4 * k + 250
    return GridPoint(
        p.as_dict(), (lhs1, lhs2), (rhs1, rhs2), lhs1 > rhs1 and lhs2 > rhs2
    )


def _big_nk(ov):
    for k in ov.get("k", (100, 120)):
        for n in ov.get("n", (2 * (k - 1) ** 2 + 1, 3 * (k - 1) ** 2)):
            yield k, n


def _grid_f_mono(ov):
    for k in ov.get("k", range(4, 41)):
        for s in ov.get("s", range(2, k + 1)):
            for m in ov.get("m", range(k + s, k + s + 41)):
                for z in ov.get("z", range(3, s + 2)):
                    yield FormulaParams(k=k, s=s, m=m, z=z)


def _grid_f3_fprime3(ov):
    for k in ov.get("k", range(4, 41)):
        for s in ov.get("s", range(4, k + 1)):
            for m in ov.get("m", range(k + s, k + s + 41)):
                yield FormulaParams(k=k, s=s, m=m)


def _grid_g_ratio(ov):
    for k, n in _big_nk(ov):
        for i in ov.get("i", range(6, k + 1)):
            yield FormulaParams(n=n, k=k, i=i)


def _grid_big_nk(ov):
    for k, n in _big_nk(ov):
        yield FormulaParams(n=n, k=k)


def _grid_eqboundf(ov):
    for k in ov.get("k", (100, 120)):
        for n in ov.get("n", (50 * (k - 1) + 1, 2 * (k - 1) ** 2)):
            yield FormulaParams(n=n, k=k)


def _grid_eqboundc2(ov):
    for k in ov.get("k", (100, 120)):
        for n in ov.get("n", (2 * k + 1, 7 * k, 50 * (k - 1))):
            yield FormulaParams(n=n, k=k)


def _grid_final_compare(ov):
    for k in ov.get("k", (100, 120)):
        yield FormulaParams(k=k)


GRID_CHECKS = {
    "f-mono": (_grid_f_mono, _check_f_mono),
    "f3-fprime3": (_grid_f3_fprime3, _check_f3_fprime3),
    "g-ratio": (_grid_g_ratio, _check_g_ratio),
    "two-g5": (_grid_big_nk, _check_two_g5),
    "eqc3large": (_grid_big_nk, _check_eqc3large),
    "eqboundf": (_grid_eqboundf, _check_eqboundf),
    "eqboundc2": (_grid_eqboundc2, _check_eqboundc2),
    "peel-combine": (_grid_big_nk, _check_peel_combine),
    "final-compare": (_grid_final_compare, _check_final_compare),
}

# the grid runs backing the acceptance gate
ACCEPTANCE_GRIDS = ("f-mono", "g-ratio", "two-g5", "eqc3large", "eqboundf")


def _run_chunk(args):
    name, chunk = args
    check = GRID_CHECKS[name][1]
    return [check(p) for p in chunk]


def certify_grid(name: str, ranges: dict | None = None, jobs: int | None = None) -> GridReport:
    """Evaluate one registered inequality over its (possibly overridden)
    parameter grid.  ranges maps dimension names to explicit value lists;
    jobs > 1 splits the grid across worker processes (default from
    KFAM_JOBS), with a deterministic merged report either way."""
    if name not in GRID_CHECKS:
        raise KeyError(f"unknown inequality id: {name}; known: {sorted(GRID_CHECKS)}")
    grid, check = GRID_CHECKS[name]
    points = list(grid(ranges or {}))
    if jobs is None:
        jobs = int(os.environ.get("KFAM_JOBS", "1") or "1")
    report = GridReport(name)
    if jobs > 1 and len(points) > 1000:
        chunk = 2000
        work = [(name, points[i : i + chunk]) for i in range(0, len(points), chunk)]
        with Pool(jobs) as pool:
            for part in pool.map(_run_chunk, work):
                report.points.extend(part)
    else:
        report.points.extend(check(p) for p in points)
    return report
