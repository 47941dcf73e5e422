"""Compression (shifting) operators on set families.

The (i, j)-shift replaces j by i in every member where that is possible
without colliding with another member already present.  It preserves
uniformity, family size, and the intersecting property, but can change
the covering number.
"""
from __future__ import annotations

from .errors import DomainError, InvariantError
from .families import Family, elements_of, mask_of


def _shift_mask(mask: int, i: int, j: int) -> int:
    bi = 1 << (i - 1)
    bj = 1 << (j - 1)
    if mask & bi or not mask & bj:
        return mask
    return (mask & ~bj) | bi


def shift_set(a, i: int, j: int):
    """Image of a single set under the (i, j)-shift, ignoring collisions.

    Returns a frozenset.  If i is already present, or j absent, the set is
    left alone; otherwise j is swapped out for i.
    """
    if not (1 <= i < j):
        raise DomainError(f"shift needs 1 <= i < j, got i={i}, j={j}")
    return frozenset(elements_of(_shift_mask(mask_of(a), i, j)))


def shift_family(fam: Family, i: int, j: int) -> Family:
    """Apply the (i, j)-shift to every member of fam.

    A member is moved to its shifted image unless that image is already a
    member, in which case it stays put.  Size is preserved exactly.
    """
    if not (1 <= i < j <= fam.n):
        raise DomainError(f"shift pair out of range: i={i}, j={j}, n={fam.n}")
    present = fam.member_set
    out = []
    for mask in fam.members:
        img = _shift_mask(mask, i, j)
        out.append(mask if img != mask and img in present else img)
    shifted = Family.from_masks(fam.n, out)
    if len(shifted) != len(fam):
        raise InvariantError("shift collapsed two members, which should be impossible")
    return shifted
