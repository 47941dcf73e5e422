"""Bipartite switching for intersecting families with covering number 3.

The pipeline normalizes such a family, under the small-diversity hypothesis
|F(pivot-bar)| <= C(n-5,k-3), toward the shape where the sets avoiding the
max-degree pivot form exactly a minimal two-cover subfamily.  Each exchange
trades a batch of stray pivot-avoiding sets for a full layer of pivot-sets
and never loses size or the intersecting property; when the cross-
intersecting bound backing that guarantee is out of range the step refuses
and the pipeline reports an aborted status instead of forcing the move.

Statuses: "converged", or "aborted:<reason>" with reason one of
pass-cap, tau-drifted, tau-changed, shift-stuck, diversity-hypothesis,
corollary-hypothesis, corollary-unavailable, uniformity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

from .covers import covering_number, minimal_tau2_subfamily, representative_pools
from .errors import DomainError, ExchangeError, InvariantError
from .families import (
    Family,
    elements_of,
    full_mask,
    is_intersecting,
    mask_of,
    max_degree_element,
    popcount,
    restrict_avoid,
)
from .formulas import binom
from .shifting import shift_family

STAGE_PER_ELEMENT = "per-element"
STAGE_TRANSVERSAL = "transversal"
STAGE_EXTENDED = "extended"


@dataclass
class SwitchContext:
    pivot: int
    core: Family  # minimal two-cover subfamily of the pivot-avoiding part
    reps: tuple  # per-core-member representative pools (element tuples)
    stage: str = STAGE_PER_ELEMENT
    locked: int = 0  # mask of representatives fixed so far / the locked union
    i_prime: int | None = None

    @property
    def M(self) -> Family:
        return self.core


@dataclass
class PipelineResult:
    family: Family
    status: str
    trace: list = field(default_factory=list)
    passes: int = 0

    @property
    def converged(self) -> bool:
        return self.status == "converged"


def exchange_Gi(fam: Family, ctx: SwitchContext, i: int, m) -> Family:
    """Per-element exchange at representative i for core member m.

    Removes every pivot-avoiding set that contains all locked representatives
    but misses i (m among them), together with the pivot-sets whose trace on
    locked+{i} is exactly {i}; adds back m and the full layer of k-sets
    {pivot, i} + T with T outside locked and meeting m.  Requires the
    small-diversity hypothesis; size never drops and intersection survives.
    """
    n = fam.n
    k = fam.uniform_k
    if k is None or k < 3:
        raise DomainError("exchange needs a uniform family with k >= 3")
    pivot_bit = 1 << (ctx.pivot - 1)
    rep_bit = 1 << (i - 1)
    m_mask = m if isinstance(m, int) else mask_of(m)
    if m_mask not in set(ctx.core.members):
        raise DomainError("m must be a core member")
    if m_mask not in fam.member_set:
        raise DomainError("core member missing from the family")
    if m_mask & (pivot_bit | rep_bit):
        raise DomainError("core member must avoid the pivot and the representative")
    if ctx.locked & ~m_mask:
        raise DomainError("locked representatives must lie inside the core member")
    if ctx.locked & (rep_bit | pivot_bit):
        raise DomainError("representative or pivot already locked")

    avoid = [s for s in fam.members if not s & pivot_bit]
    bound = binom(n - 5, k - 3)
    if len(avoid) > bound:
        raise ExchangeError(
            f"diversity-hypothesis: |F(pivot-bar)| = {len(avoid)} > C({n - 5},{k - 3}) = {bound}"
        )
    want = ctx.locked
    b_side = {s for s in avoid if s & want == want and not s & rep_bit}
    removed = {
        s
        for s in fam.members
        if s & pivot_bit and (s & ~pivot_bit) & (want | rep_bit) == rep_bit
    }
    avail = full_mask(n) & ~(pivot_bit | rep_bit | want)
    layer = []
    for t in combinations(elements_of(avail), k - 2):
        tm = mask_of(t)
        if tm & m_mask:
            layer.append(pivot_bit | rep_bit | tm)
    layer_set = set(layer)
    if removed - layer_set:
        raise InvariantError("a removed pivot-set escaped the replacement layer")
    drop = b_side | removed
    out = [s for s in fam.members if s not in drop]
    out.extend(layer)
    out.append(m_mask)
    result = Family.from_masks(n, out)
    if len(result) < len(fam):
        raise InvariantError("exchange shrank the family despite the diversity hypothesis")
    if not is_intersecting(result):
        raise InvariantError("exchange broke the intersecting property")
    return result


def exchange_transversal(fam: Family, ctx: SwitchContext, i_set) -> Family:
    """Transversal exchange at the hitting set I.

    Deletes the stray pivot-avoiding sets that contain the locked elements
    and miss I, adds every k-set {pivot} + I + T with T from the leftover
    ground.  The deletion count must stay within the cross-intersecting
    bound C(|Y|-t0, a-1); otherwise the step refuses.
    """
    n = fam.n
    k = fam.uniform_k
    if k is None or k < 3:
        raise DomainError("exchange needs a uniform family with k >= 3")
    pivot_bit = 1 << (ctx.pivot - 1)
    i_mask = i_set if isinstance(i_set, int) else mask_of(i_set)
    locked = ctx.locked
    if i_mask == 0:
        raise DomainError("I must be nonempty")
    if i_mask & (locked | pivot_bit):
        raise DomainError("I must avoid the pivot and the locked elements")
    z = len(ctx.core)
    isz = popcount(i_mask)
    limit = z - 1 if ctx.stage == STAGE_TRANSVERSAL else z
    if isz > limit:
        raise DomainError(f"|I| = {isz} exceeds the stage limit {limit}")
    if ctx.stage == STAGE_TRANSVERSAL and ctx.i_prime is not None and not i_mask >> (ctx.i_prime - 1) & 1:
        raise DomainError("this stage requires i' to lie in I")
    for cm in ctx.core.members:
        if not i_mask & (cm & ~locked):
            raise DomainError("I misses a stripped core member")
    if popcount(locked) < isz + 1:
        raise ExchangeError(
            f"uniformity: need |locked| >= |I|+1, got {popcount(locked)} < {isz + 1}"
        )
    a = k - 1 - isz
    if a < 0:
        raise DomainError("I is too large to sit inside a k-set with the pivot")
    b = k - popcount(locked)
    b_side = {
        s for s in fam.members if not s & pivot_bit and s & locked == locked and not s & i_mask
    }
    if b_side & set(ctx.core.members):
        raise InvariantError("a core member matched the stray-set pattern")
    y_mask = full_mask(n) & ~(pivot_bit | locked | i_mask)
    y = popcount(y_mask)
    t0 = b + 1 - a
    if a >= 1 and b >= 1 and t0 >= 1 and y > a + b:
        threshold = binom(y - t0, a - 1)
        if len(b_side) > threshold:
            raise ExchangeError(
                f"corollary-hypothesis: |B| = {len(b_side)} > C({y - t0},{a - 1}) = {threshold}"
            )
    elif b_side:
        raise ExchangeError(
            "corollary-unavailable: cross-intersecting bound out of range with nonempty B"
        )
    removed = {
        s
        for s in fam.members
        if s & pivot_bit and s & i_mask == i_mask and not s & locked
    }
    layer = [pivot_bit | i_mask | mask_of(t) for t in combinations(elements_of(y_mask), a)]
    if removed - set(layer):
        raise InvariantError("a removed pivot-set escaped the replacement layer")
    drop = b_side | removed
    out = [s for s in fam.members if s not in drop]
    out.extend(layer)
    result = Family.from_masks(n, out)
    if len(result) < len(fam):
        raise InvariantError("transversal exchange shrank the family")
    if not is_intersecting(result):
        raise InvariantError("transversal exchange broke the intersecting property")
    return result


def _finish(f: Family, core: Family, pivot_bit: int, log: list, passes: int) -> PipelineResult:
    avoid_now = {s for s in f.members if not s & pivot_bit}
    if avoid_now != set(core.members):
        raise InvariantError("converged with a pivot-avoiding part different from the core")
    if covering_number(f).tau != 3:
        return PipelineResult(f, "aborted:tau-changed", log, passes)
    return PipelineResult(f, "converged", log, passes)


def switch_pipeline(fam: Family) -> PipelineResult:
    """Drive the family to the normalized form by repeated exchanges.

    Preconditions (domain errors): uniform k >= 3, intersecting, covering
    number exactly 3, and the small-diversity hypothesis at the max-degree
    pivot.  The core subfamily is re-derived each pass; when no element
    outside pivot+representatives lies in two stripped core members, an
    (i,j)-shift is tried before the next pass.  Passes are capped at
    C(n,z) * z.
    """
    n = fam.n
    k = fam.uniform_k
    if k is None or k < 3:
        raise DomainError("pipeline needs a uniform family with k >= 3")
    if not is_intersecting(fam):
        raise DomainError("pipeline needs an intersecting family")
    if covering_number(fam).tau != 3:
        raise DomainError("pipeline needs covering number exactly 3")
    pivot = max_degree_element(fam)
    if len(restrict_avoid(fam, 1 << (pivot - 1))) > binom(n - 5, k - 3):
        raise DomainError("small-diversity hypothesis fails at entry")

    log: list = []
    f = fam
    passes = 0
    cap = 0
    while True:
        if covering_number(f).tau != 3:
            return PipelineResult(f, "aborted:tau-drifted", log, passes)
        pivot = max_degree_element(f)
        pivot_bit = 1 << (pivot - 1)
        avoid = restrict_avoid(f, pivot_bit)
        mt = minimal_tau2_subfamily(avoid)
        if mt is None:
            raise InvariantError("covering number 3 must leave a two-cover residue")
        core = mt.subfamily
        z = len(core)
        pools = representative_pools(core)
        cap = max(cap, comb(n, z) * z)
        passes += 1
        if passes > cap:
            return PipelineResult(f, "aborted:pass-cap", log, passes)

        try:
            ctx = SwitchContext(pivot=pivot, core=core, reps=pools)
            for tup in product(*pools):
                ctx.locked = 0
                ctx.stage = STAGE_PER_ELEMENT
                for rep, member in zip(tup, core.members):
                    before = len(f)
                    f = exchange_Gi(f, ctx, rep, member)
                    log.append(
                        {
                            "pass": passes,
                            "stage": STAGE_PER_ELEMENT,
                            "rep": rep,
                            "member": list(elements_of(member)),
                            "size_before": before,
                            "size_after": len(f),
                        }
                    )
                    ctx.locked |= 1 << (rep - 1)

            iprime_union = 0
            for pool in pools:
                iprime_union |= mask_of(pool)
            core_set = set(core.members)
            u_sets = [s for s in f.members if not s & pivot_bit and s not in core_set]
            if not u_sets:
                return _finish(f, core, pivot_bit, log, passes)
            for s in u_sets:
                if s & iprime_union != iprime_union:
                    raise InvariantError("stray avoid-set missing a representative element")
            stripped = [cm & ~iprime_union for cm in core.members]
            if any(st == 0 for st in stripped):
                raise InvariantError("core member swallowed by the representative union")

            banned = iprime_union | pivot_bit
            iprime = None
            for x in range(1, n + 1):
                xb = 1 << (x - 1)
                if xb & banned:
                    continue
                if sum(1 for st in stripped if st & xb) >= 2:
                    iprime = x
                    break
            if iprime is None:
                pair_pool = sorted(
                    {
                        (min(x, y), max(x, y))
                        for ai, sa in enumerate(stripped)
                        for bi, sb in enumerate(stripped)
                        if ai < bi
                        for x in elements_of(sa)
                        for y in elements_of(sb)
                        if x != y
                    }
                )
                moved = False
                for i, j in pair_pool:
                    g = shift_family(f, i, j)
                    if g != f:
                        log.append({"pass": passes, "stage": "shift", "i": i, "j": j})
                        f = g
                        moved = True
                        break
                if not moved:
                    return PipelineResult(f, "aborted:shift-stuck", log, passes)
                continue

            ctx.stage = STAGE_TRANSVERSAL
            ctx.locked = iprime_union
            ctx.i_prime = iprime
            allowed = full_mask(n) & ~(pivot_bit | iprime_union)
            for isz in range(1, min(z - 1, k - 1) + 1):
                for combo in combinations(elements_of(allowed), isz):
                    if iprime not in combo:
                        continue
                    im = mask_of(combo)
                    if any(not im & st for st in stripped):
                        continue
                    before = len(f)
                    f = exchange_transversal(f, ctx, im)
                    log.append(
                        {
                            "pass": passes,
                            "stage": STAGE_TRANSVERSAL,
                            "I": list(combo),
                            "size_before": before,
                            "size_after": len(f),
                        }
                    )

            u_sets = [s for s in f.members if not s & pivot_bit and s not in core_set]
            if not u_sets:
                return _finish(f, core, pivot_bit, log, passes)
            ib = 1 << (iprime - 1)
            if any(not s & ib for s in u_sets):
                raise InvariantError("a stray set avoiding i' survived the transversal stage")

            locked2 = iprime_union | ib
            stripped2 = [cm & ~locked2 for cm in core.members]
            if any(st == 0 for st in stripped2):
                raise InvariantError("extended stage reached with a fully locked core member")
            ctx.stage = STAGE_EXTENDED
            ctx.locked = locked2
            allowed2 = full_mask(n) & ~(pivot_bit | locked2)
            for isz in range(1, min(z, k - 1) + 1):
                for combo in combinations(elements_of(allowed2), isz):
                    im = mask_of(combo)
                    if any(not im & st for st in stripped2):
                        continue
                    before = len(f)
                    f = exchange_transversal(f, ctx, im)
                    log.append(
                        {
                            "pass": passes,
                            "stage": STAGE_EXTENDED,
                            "I": list(combo),
                            "size_before": before,
                            "size_after": len(f),
                        }
                    )
            u_sets = [s for s in f.members if not s & pivot_bit and s not in core_set]
            if u_sets:
                raise InvariantError("stray sets survived the extended stage")
            return _finish(f, core, pivot_bit, log, passes)
        except ExchangeError as err:
            reason = str(err).split(":", 1)[0]
            return PipelineResult(f, f"aborted:{reason}", log, passes)
