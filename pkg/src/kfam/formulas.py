"""Closed-form counts and bounds for intersecting k-uniform families.

Everything here is exact integer arithmetic.  Each nontrivial formula has a
matching enumeration oracle in the test suite that recounts it from scratch
at small parameters.
"""

from __future__ import annotations

from math import comb

from .errors import DomainError


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def ekr_bound(n: int, k: int) -> int:
    """Largest intersecting k-uniform family over [n]: all sets through one
    point."""
    if not (k >= 1 and n >= 2 * k):
        raise DomainError(f"need n >= 2k >= 2, got n={n} k={k}")
    return binom(n - 1, k - 1)


def hm_size(n: int, k: int) -> int:
    """Largest intersecting k-uniform family that is not a star (n > 2k)."""
    if not (k >= 2 and n > 2 * k):
        raise DomainError(f"need n > 2k >= 4, got n={n} k={k}")
    return binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 1


def thm1_bound(n: int, k: int, u: int) -> int:
    """Size bound for intersecting families whose covering number is at
    least 3, parameterized by a degree threshold u in [3, k].

    At u=k this degenerates to the non-star maximum.
    """
    if not (3 <= u <= k):
        raise DomainError(f"need 3 <= u <= k, got u={u} k={k}")
    if not n > 2 * k:
        raise DomainError(f"need n > 2k, got n={n} k={k}")
    return binom(n - 1, k - 1) + binom(n - u - 1, n - k - 1) - binom(n - u - 1, k - 1)


def size_c3(n: int, k: int) -> int:
    """Exact size of the three-cover construction c3(n, k).

    Counts the three base sets plus all k-sets through element 1 meeting
    each base set, partitioned by the least element above 1.
    """
    if not (k >= 3 and n >= 2 * k):
        raise DomainError(f"need k >= 3 and n >= 2k, got n={n} k={k}")
    total = 3
    # sets containing {1,2}: must still meet the third base set
    total += binom(n - 2, k - 2) - binom(n - k - 2, k - 2)
    # sets whose least element above 1 is i+1 (i = 2..k): meet the tail block
    for i in range(2, k + 1):
        total += binom(n - i - 1, k - 2) - binom(n - k - i, k - 2)
    return total


def size_f2prime(m: int, s: int, k: int) -> int:
    """Number of (k-1)-subsets of [m] meeting both blocks of the two-block
    cover {[s], [s+1, 2s]}."""
    if not (s >= 1 and m >= 2 * s and k >= 2):
        raise DomainError(f"need s >= 1, m >= 2s, k >= 2, got m={m} s={s} k={k}")
    total = 0
    for l in range(1, s + 1):
        total += binom(m - l, k - 2) - binom(m - s - l, k - 2)
    return total


def f_of_z(m: int, s: int, k: int, z: int) -> int:
    """Maximum weight profile for a z-member minimal two-cover paired with
    its cross-meeting (k-1)-sets; defined for 2 <= z <= s+1.

    At z=2 this equals size_f2prime(m, s, k).
    """
    if not (2 <= z <= s + 1):
        raise DomainError(f"need 2 <= z <= s+1, got z={z} s={s}")
    if not (m >= 2 * s and k >= 2):
        raise DomainError(f"need m >= 2s and k >= 2, got m={m} s={s} k={k}")
    total = 0
    for l in range(2, z + 1):
        total += binom(m - l + 1, k - 2) - binom(m - s - 1, k - 2)
    for l in range(1, s + 2 - z):
        total += binom(m - z - l + 1, k - 2) - binom(m - s - 1 - l, k - 2)
    return total


def fprime3(m: int, s: int, k: int) -> int:
    """Second-best weight profile at z=3; differs from f_of_z(m, s, k, 3)
    by exactly binom(m-s-3, k-3)."""
    if not (s >= 4 and m >= 2 * s and k >= 2):
        raise DomainError(f"need s >= 4 and m >= 2s, got m={m} s={s} k={k}")
    total = binom(m - 1, k - 2) - binom(m - s - 1, k - 2)
    total += binom(m - 2, k - 2) - binom(m - s - 1, k - 2)
    total += binom(m - 3, k - 2) - binom(m - s - 2, k - 2)
    total += binom(m - 4, k - 2) - binom(m - s - 2, k - 2)
    for l in range(1, s - 3):
        total += binom(m - 4 - l, k - 2) - binom(m - s - 3 - l, k - 2)
    return total


def kz_bound(n: int, a: int, b: int, j: int | None = None) -> int:
    """Size bound for the a-uniform side of a cross-intersecting pair with
    b-uniform partner over [n].

    Without j: the trivial bound C(n, a).  With a degree parameter j in
    [b-a+1, b]: the refined bound C(n,a) - C(n-j,a) + C(n-j,b-j).
    """
    if not (0 < a <= b and n > a + b):
        raise DomainError(f"need 0 < a <= b and n > a+b, got n={n} a={a} b={b}")
    if j is None:
        return binom(n, a)
    t = b - a + 1
    if not (t <= j <= b):
        raise DomainError(f"need {t} <= j <= {b}, got j={j}")
    return binom(n, a) - binom(n - j, a) + binom(n - j, b - j)
