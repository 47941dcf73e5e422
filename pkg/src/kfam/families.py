"""Ground sets, element sets as bitmasks, and finite set families.

Elements are labeled 1..n and an element set over [n] is stored as a plain
int with bit (e-1) standing for element e.  A Family is an immutable sorted
tuple of such masks together with its ground size.  All higher layers
(covers, constructions, compressions, search oracles) work on these masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

from .errors import DomainError

MAX_GROUND = 128

# A node budget large enough that every family this workbench enumerates
# exactly (small supports, few members) canonicalizes exactly; huge highly
# symmetric families fall back to a deterministic greedy relabeling.
CANONICAL_NODE_BUDGET = 200_000


def mask_of(elements) -> int:
    """Build a mask from an iterable of 1-based element labels."""
    m = 0
    for e in elements:
        if e < 1:
            raise DomainError(f"element labels are 1-based, got {e}")
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    """Return the sorted tuple of 1-based labels present in a mask."""
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return mask.bit_count()


def full_mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class Family:
    """An immutable family of element sets over the ground set [n].

    members is a strictly increasing tuple of masks: construction sorts and
    deduplicates.  The empty mask (the empty set) is representable; most
    operations treat it as the degenerate object it is.
    """

    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        if not (1 <= self.n <= MAX_GROUND):
            raise DomainError(f"ground size must be in [1, {MAX_GROUND}], got {self.n}")
        limit = 1 << self.n
        seen = set()
        for m in self.members:
            if not (0 <= m < limit):
                raise DomainError(f"member mask {m} does not fit ground [{self.n}]")
            if m in seen:
                raise DomainError("duplicate member after normalization")
            seen.add(m)
        if list(self.members) != sorted(self.members):
            raise DomainError("members must be sorted ascending")

    @classmethod
    def from_masks(cls, n: int, masks) -> "Family":
        return cls(n, tuple(sorted(set(masks))))

    @classmethod
    def from_sets(cls, n: int, sets) -> "Family":
        return cls.from_masks(n, (mask_of(s) for s in sets))

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    @cached_property
    def uniform_k(self):
        """Common member size if the family is uniform, else None."""
        sizes = {m.bit_count() for m in self.members}
        if len(sizes) == 1:
            return sizes.pop()
        return None

    def sets(self) -> list[tuple[int, ...]]:
        return [elements_of(m) for m in self.members]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mask):
        return mask in self.member_set


def family(n: int, sets) -> Family:
    """Shorthand constructor from iterables of labels."""
    return Family.from_sets(n, sets)


# ---------------------------------------------------------------------------
# basic functionals


def is_intersecting(fam: Family) -> bool:
    """True iff every pair of distinct members has nonempty intersection.

    Empty and one-member families count as intersecting.
    """
    ms = fam.members
    for i in range(len(ms)):
        a = ms[i]
        for j in range(i + 1, len(ms)):
            if a & ms[j] == 0:
                return False
    return True


def degree(fam: Family, element: int) -> int:
    if not (1 <= element <= fam.n):
        raise DomainError(f"element {element} outside ground [{fam.n}]")
    bit = 1 << (element - 1)
    return sum(1 for m in fam.members if m & bit)


def max_degree(fam: Family) -> int:
    if not fam.members:
        return 0
    return max(degree(fam, e) for e in range(1, fam.n + 1))


def max_degree_element(fam: Family) -> int | None:
    """Smallest element of maximum degree, or None for the empty family."""
    if not fam.members:
        return None
    best, arg = -1, None
    for e in range(1, fam.n + 1):
        d = degree(fam, e)
        if d > best:
            best, arg = d, e
    return arg


def diversity(fam: Family) -> int:
    """Member count minus the maximum degree; zero exactly for stars and the
    empty family."""
    return len(fam.members) - max_degree(fam)


# ---------------------------------------------------------------------------
# restrictions


def _check_subset_mask(fam: Family, y_mask: int):
    if not (0 <= y_mask < (1 << fam.n)):
        raise DomainError(f"restriction mask {y_mask} does not fit ground [{fam.n}]")


def restrict_contains_strip(fam: Family, y_mask: int) -> Family:
    """Members containing Y, with Y removed from each; ground unchanged."""
    _check_subset_mask(fam, y_mask)
    return Family.from_masks(
        fam.n, (m & ~y_mask for m in fam.members if m & y_mask == y_mask)
    )


def restrict_contains_keep(fam: Family, y_mask: int) -> Family:
    """Members containing Y, kept whole."""
    _check_subset_mask(fam, y_mask)
    return Family.from_masks(fam.n, (m for m in fam.members if m & y_mask == y_mask))


def restrict_avoid(fam: Family, y_mask: int) -> Family:
    """Members disjoint from Y."""
    _check_subset_mask(fam, y_mask)
    return Family.from_masks(fam.n, (m for m in fam.members if m & y_mask == 0))


def are_cross_intersecting(fam_a: Family, fam_b: Family) -> bool:
    """True iff every member of one family meets every member of the other."""
    if fam_a.n != fam_b.n:
        raise DomainError("cross-intersection needs a common ground set")
    for a in fam_a.members:
        for b in fam_b.members:
            if a & b == 0:
                return False
    return True


# ---------------------------------------------------------------------------
# isomorphism and canonical relabeling
#
# The canonical form of a family is the relabeling of [n] whose sorted
# member list is lexicographically least (masks compared numerically).  The
# search places members one at a time: the next member of the canonical list
# always takes the lowest unused labels for its not-yet-labeled elements, so
# branching is over which member comes next and over the order of its fresh
# elements.  A swap argument shows the optimum always has this shape, hence
# the search is exact whenever it completes within its node budget.


def _achievable(mask: int, assign: dict, next_label: int):
    """Least final mask a member can still reach, plus its fresh elements."""
    fixed = 0
    fresh = []
    for e in elements_of(mask):
        lbl = assign.get(e)
        if lbl is None:
            fresh.append(e)
        else:
            fixed |= 1 << (lbl - 1)
    out = fixed
    for i in range(len(fresh)):
        out |= 1 << (next_label + i - 1)
    return out, fresh


def _min_image(members, budget: int):
    """Exact minimal relabeled member tuple, or None if the budget runs out."""
    if not members:
        return ()
    nodes = [budget]
    memo: dict = {}

    def rec(remaining: frozenset, assign: dict, next_label: int):
        if not remaining:
            return ()
        relevant = 0
        for m in remaining:
            relevant |= m
        key = (
            remaining,
            tuple(sorted((o, l) for o, l in assign.items() if relevant >> (o - 1) & 1)),
        )
        hit = memo.get(key)
        if hit is not None:
            return hit
        if nodes[0] <= 0:
            return None
        nodes[0] -= 1

        best_mask = None
        cands = []
        for m in remaining:
            img, fresh = _achievable(m, assign, next_label)
            if best_mask is None or img < best_mask:
                best_mask, cands = img, [(m, fresh)]
            elif img == best_mask:
                cands.append((m, fresh))

        best_suffix = None
        for m, fresh in cands:
            rest = remaining - {m}
            for order in permutations(fresh):
                sub = dict(assign)
                for i, e in enumerate(order):
                    sub[e] = next_label + i
                suffix = rec(rest, sub, next_label + len(fresh))
                if suffix is None:
                    return None
                if best_suffix is None or suffix < best_suffix:
                    best_suffix = suffix
        result = (best_mask,) + best_suffix
        memo[key] = result
        return result

    return rec(frozenset(members), {}, 1)


def _greedy_image(members):
    """Deterministic single-descent relabeling; used past the exact budget.

    Ties between members take the smallest input mask and fresh elements in
    ascending input order, which makes the descent reproduce itself on its
    own output.
    """
    remaining = set(members)
    assign: dict = {}
    next_label = 1
    out = []
    while remaining:
        best = None
        for m in sorted(remaining):
            img, fresh = _achievable(m, assign, next_label)
            if best is None or img < best[0]:
                best = (img, m, fresh)
        img, m, fresh = best
        for i, e in enumerate(sorted(fresh)):
            assign[e] = next_label + i
        next_label += len(fresh)
        out.append(img)
        remaining.remove(m)
    return tuple(out)


def canonical_form(fam: Family, node_budget: int = CANONICAL_NODE_BUDGET) -> Family:
    """Relabel so the sorted member list is minimized over permutations of [n].

    Exact for every family whose placement search fits in the node budget
    (comfortably true at workbench scale); beyond that a deterministic greedy
    relabeling is used, which is still isomorphism-sound for deduplication
    (equal outputs imply isomorphic inputs) though not guaranteed minimal.
    """
    key = _min_image(fam.members, node_budget)
    if key is None:
        key = _greedy_image(fam.members)
    return Family.from_masks(fam.n, key)


def _wl_colors(fam: Family, rounds: int = 3):
    """Stable invariant coloring of elements refined against member structure."""
    elems = elements_of(_support(fam))
    ecolor = {e: (degree(fam, e),) for e in elems}
    for _ in range(rounds):
        mcolor = {}
        for m in fam.members:
            mcolor[m] = (popcount(m), tuple(sorted(ecolor[e] for e in elements_of(m))))
        nxt = {}
        for e in elems:
            bit = 1 << (e - 1)
            nxt[e] = (ecolor[e], tuple(sorted(mcolor[m] for m in fam.members if m & bit)))
        if nxt == ecolor:
            break
        ecolor = nxt
    return ecolor


def _support(fam: Family) -> int:
    s = 0
    for m in fam.members:
        s |= m
    return s


def iso_signature(fam: Family):
    """Cheap isomorphism invariant: sizes, degrees, pairwise meet profile."""
    ms = fam.members
    profiles = []
    for m in ms:
        profiles.append((popcount(m), tuple(sorted(popcount(m & o) for o in ms if o != m))))
    degs = sorted(degree(fam, e) for e in elements_of(_support(fam)))
    return (len(ms), tuple(sorted(profiles)), tuple(degs))


def are_isomorphic(fam_a: Family, fam_b: Family) -> bool:
    """Exact relabeling test via invariant-guided backtracking."""
    if fam_a.n != fam_b.n:
        raise DomainError("isomorphism is over relabelings of a common ground set")
    if len(fam_a.members) != len(fam_b.members):
        return False
    if fam_a.members == fam_b.members:
        return True
    if iso_signature(fam_a) != iso_signature(fam_b):
        return False

    ca = _wl_colors(fam_a)
    cb = _wl_colors(fam_b)
    if sorted(ca.values()) != sorted(cb.values()):
        return False

    by_color: dict = {}
    for e, c in cb.items():
        by_color.setdefault(c, []).append(e)
    # most constrained first: rare colors before common ones
    order = sorted(ca, key=lambda e: (len(by_color[ca[e]]), ca[e], e))

    b_members = fam_b.member_set
    a_sets = [elements_of(m) for m in fam_a.members]
    target = set(fam_b.members)

    mapping: dict = {}
    used: set = set()

    def place(idx: int) -> bool:
        if idx == len(order):
            image = set()
            for s in a_sets:
                image.add(mask_of(mapping[e] for e in s))
            return image == target
        e = order[idx]
        for cand in by_color[ca[e]]:
            if cand in used:
                continue
            mapping[e] = cand
            used.add(cand)
            # any fully-mapped member must land on a member of the target
            ok = True
            for s in a_sets:
                if all(x in mapping for x in s):
                    if mask_of(mapping[x] for x in s) not in b_members:
                        ok = False
                        break
            if ok and place(idx + 1):
                return True
            used.discard(cand)
            del mapping[e]
        return False

    return place(0)


def dedup_isomorphism_classes(fams) -> list[Family]:
    """Reduce a list of families to isomorphism class representatives.

    Buckets by the cheap invariant signature, then confirms with the exact
    backtracking test, so the result does not depend on canonical-form
    minimality.
    """
    buckets: dict = {}
    out = []
    for f in fams:
        sig = (f.n, iso_signature(f))
        reps = buckets.setdefault(sig, [])
        if not any(are_isomorphic(f, r) for r in reps):
            reps.append(f)
            out.append(f)
    return out
