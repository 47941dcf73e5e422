"""Spreadness, maximal reductions, and the peeling procedure.

A family F is r-spread when |F[X]| <= r^{-|X|} |F| for every set X, where
F[X] counts the members containing X.  Spreadness is checked with exact
rational arithmetic (r = p/q), never floats.

Peeling repeatedly replaces a family by a maximal intersecting one (no
member can be swapped for a proper nonempty subset without breaking the
intersecting property) and strips the layer of largest sets.  The layer
of i-sets in such a family has at most i^i members.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, InvariantError
from .families import (
    Family,
    elements_of,
    is_intersecting,
    popcount,
    restrict_contains_strip,
)


def _as_ratio(r) -> tuple[int, int]:
    f = Fraction(r)
    if f < 1:
        raise DomainError(f"spread parameter must be >= 1, got {f}")
    return f.numerator, f.denominator


def _candidate_masks(fam: Family):
    """All nonempty masks contained in at least one member, deduplicated.

    Only these can violate spreadness: any other X has F[X] empty.
    Ordered by (size, element tuple), which is not the numeric mask order.
    """
    seen = set()
    for m in fam.members:
        els = elements_of(m)
        k = len(els)
        for sub in range(1, 1 << k):
            x = 0
            for t in range(k):
                if sub >> t & 1:
                    x |= 1 << (els[t] - 1)
            seen.add(x)
    return sorted(seen, key=lambda x: (popcount(x), elements_of(x)))


def _contain_count(fam: Family, x_mask: int) -> int:
    return sum(1 for m in fam.members if m & x_mask == x_mask)


@dataclass(frozen=True)
class SpreadCheck:
    ok: bool
    violator: tuple | None  # elements of the first violating X, or None
    lhs: int  # |F[X]| * p^|X| at the violator (0 when ok)
    rhs: int  # |F| * q^|X| at the violator (0 when ok)

    def __bool__(self) -> bool:
        return self.ok


def is_r_spread(fam: Family, r) -> SpreadCheck:
    """Exact r-spread test; reports the first violating set if any.

    Violation is strict: |F[X]| p^|X| > |F| q^|X|.  The empty set never
    violates.  Candidates are scanned smallest first, ties broken by the
    lexicographic order of the element tuples.
    """
    p, q = _as_ratio(r)
    total = len(fam)
    for x in _candidate_masks(fam):
        sz = popcount(x)
        lhs = _contain_count(fam, x) * p**sz
        rhs = total * q**sz
        if lhs > rhs:
            return SpreadCheck(False, elements_of(x), lhs, rhs)
    return SpreadCheck(True, None, 0, 0)


def find_spread_restriction(fam: Family, r) -> tuple[tuple, Family]:
    """Locate X with F(X) r-spread and |F[X]| >= r^{-|X|} |F|, |X| < k.

    Takes an inclusion-maximal X among those satisfying the density lower
    bound (the empty set always does).  Requires a k-uniform family with
    |F| > r^k; under that guard no full member can qualify, so |X| < k
    and the stripped family is nonempty.
    """
    p, q = _as_ratio(r)
    k = fam.uniform_k
    if k is None or k < 1:
        raise DomainError("spread restriction needs a nonempty uniform family")
    if len(fam) * q**k <= p**k:
        raise DomainError(
            f"family too small for a spread restriction: need |F| > r^k = ({p}/{q})^{k}"
        )
    total = len(fam)
    qualifiers = [0]
    for x in _candidate_masks(fam):
        sz = popcount(x)
        if _contain_count(fam, x) * p**sz >= total * q**sz:
            qualifiers.append(x)
    maximal = [
        x
        for x in qualifiers
        if not any(y != x and y & x == x for y in qualifiers)
    ]
    best = min(maximal, key=lambda x: (popcount(x), elements_of(x)))
    if popcount(best) >= k:
        raise InvariantError("a full member qualified despite the size guard")
    stripped = restrict_contains_strip(fam, best)
    if not is_r_spread(stripped, r):
        raise InvariantError("maximal qualifier left a non-spread restriction")
    return elements_of(best), stripped


def maximal_reduction(fam: Family, rng: random.Random | None = None, log: list | None = None) -> Family:
    """Shrink members until none can lose an element and stay intersecting.

    Replacing a member by a proper nonempty subset is allowed whenever the
    family remains intersecting; single-element deletions suffice to reach
    a fully reduced family.  Deterministic schedule: members largest first,
    highest label dropped first; pass rng to randomize (the fixed point is
    schedule-dependent, its invariants are not).  Each applied replacement
    is appended to log as (old_mask, new_mask).
    """
    if not is_intersecting(fam):
        raise DomainError("maximal_reduction expects an intersecting family")
    members = list(fam.members)
    changed = True
    while changed:
        changed = False
        order = sorted(range(len(members)), key=lambda i: (-popcount(members[i]), members[i]))
        if rng is not None:
            rng.shuffle(order)
        for idx in order:
            m = members[idx]
            if popcount(m) <= 1:
                continue
            els = list(elements_of(m))
            els.sort(reverse=True)
            if rng is not None:
                rng.shuffle(els)
            for e in els:
                cand = m & ~(1 << (e - 1))
                others = [members[t] for t in range(len(members)) if t != idx]
                if all(cand & o for o in others):
                    members[idx] = cand
                    if log is not None:
                        log.append((m, cand))
                    changed = True
                    break
            if changed:
                break
    # drop members that became duplicates or proper supersets of another
    out = sorted(set(members))
    final = [m for m in out if not any(o != m and o & m == o for o in out)]
    if len(final) != len(out):
        # a strict superset surviving the sweep would mean the loop missed
        # a legal replacement; keep the antichain but flag the schedule bug
        raise InvariantError("reduction left a comparable pair")
    return Family.from_masks(fam.n, final)


@dataclass
class PeelTrace:
    layers: dict = field(default_factory=dict)  # i -> Family of the peeled i-sets
    residues: dict = field(default_factory=dict)  # i -> family entering round i
    reduction_log: list = field(default_factory=list)


def _covered_by(fam: Family, base: Family) -> set:
    """Masks of fam members containing some member of base."""
    return {
        m
        for m in fam.members
        if any(m & b == b for b in base.members)
    }


def peel(fam: Family, rng: random.Random | None = None) -> PeelTrace:
    """Iterated reduce-and-strip decomposition of an intersecting family.

    Round i (from k down to 2) reduces the current family to a maximal
    intersecting one, records its i-sets as layer W_i, and keeps the rest.
    Invariants checked along the way: every original member contains a set
    of the current residue or of some peeled layer, and |W_i| <= i^i.
    """
    k = fam.uniform_k
    if k is None or k < 1:
        raise DomainError("peel expects a nonempty uniform family")
    if not is_intersecting(fam):
        raise DomainError("peel expects an intersecting family")
    trace = PeelTrace()
    current = fam
    trace.residues[k] = current
    for i in range(k, 1, -1):
        reduced = maximal_reduction(current, rng=rng, log=trace.reduction_log)
        layer = Family.from_masks(fam.n, (m for m in reduced.members if popcount(m) == i))
        if len(layer) > i**i:
            raise InvariantError(f"layer of {i}-sets exceeds {i}^{i}")
        trace.layers[i] = layer
        current = Family.from_masks(fam.n, (m for m in reduced.members if popcount(m) != i))
        trace.residues[i - 1] = current
        covered = _covered_by(fam, current)
        for j in range(i, k + 1):
            covered |= _covered_by(fam, trace.layers[j])
        if len(covered) != len(fam):
            raise InvariantError(f"coverage identity failed entering round {i - 1}")
    return trace


@dataclass(frozen=True)
class SpreadSwitchCheck:
    """Outcome of testing the spread-based member replacement.

    Truthiness reports only the conclusion (the modified family is still
    intersecting); the precondition flags say which hypotheses held, so a
    failed conclusion can be traced to the missing one.
    """

    g_intersecting: bool
    sizes_bounded: bool
    subfamily_ok: bool
    restriction_nonempty: bool
    restriction_spread: bool
    alpha_exceeds_m: bool
    x_small: bool
    modified_intersecting: bool

    def __bool__(self) -> bool:
        return self.modified_intersecting

    @property
    def hypotheses_ok(self) -> bool:
        return (
            self.g_intersecting
            and self.sizes_bounded
            and self.subfamily_ok
            and self.restriction_nonempty
            and self.restriction_spread
            and self.alpha_exceeds_m
            and self.x_small
        )


def lemma_spread2_check(g: Family, x, gp: Family, alpha, m: int) -> SpreadSwitchCheck:
    """Check that replacing the X-containing part of g by {X} stays intersecting.

    Hypotheses: g intersecting with member sizes <= m, gp a subfamily whose
    X-restriction is nonempty and alpha-spread, alpha > m, |X| < m.  When
    they all hold the conclusion follows: any member disjoint from X would
    be hit too often by the spread restriction.  With a hypothesis dropped
    the conclusion can genuinely fail, which is what the flags expose.
    """
    from .families import mask_of

    x_mask = mask_of(x)
    if x_mask >> g.n:
        raise DomainError("X does not fit the ground set")
    alpha = Fraction(alpha)
    g_intersecting = is_intersecting(g)
    sizes_bounded = all(popcount(mm) <= m for mm in g.members)
    subfamily_ok = gp.n == g.n and set(gp.members) <= set(g.members)
    restriction = restrict_contains_strip(gp, x_mask) if subfamily_ok else gp
    restriction_nonempty = subfamily_ok and len(restriction) > 0
    restriction_spread = restriction_nonempty and (
        alpha < 1 or bool(is_r_spread(restriction, alpha))
    )
    alpha_exceeds_m = alpha > m
    x_small = 0 < popcount(x_mask) < m
    kept = [mm for mm in g.members if mm & x_mask != x_mask]
    modified = Family.from_masks(g.n, kept + [x_mask])
    return SpreadSwitchCheck(
        g_intersecting=g_intersecting,
        sizes_bounded=sizes_bounded,
        subfamily_ok=subfamily_ok,
        restriction_nonempty=restriction_nonempty,
        restriction_spread=restriction_spread,
        alpha_exceeds_m=alpha_exceeds_m,
        x_small=x_small,
        modified_intersecting=is_intersecting(modified),
    )
