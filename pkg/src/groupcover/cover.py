"""Minimum covers of a finite group by proper subgroups.

sigma(G) is computed as an exact minimum set cover.  An element x lies in a
subgroup H iff <x> <= H, so it is enough to cover one generator of each
inclusion-maximal cyclic subgroup; that reduced universe is what the search
works on.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import masks
from .errors import CapExceeded, CyclicGroupError, EmptyMaximalList, TargetMismatch
from .group import Group, is_cyclic
from .lattice import Epimorphism
from .subgroup import Subgroup, check_cover_members

ORACLE = "oracle"
THEOREM = "theorem"
GREEDY = "greedy-upper-bound"


@functools.total_ordering
class _Infinity:
    """sigma of a cyclic group.  Compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("infinity")

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "infinity"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
SigmaValue = Union[int, _Infinity]


def sigma_min(*values: SigmaValue) -> SigmaValue:
    """min() where INFINITY is the neutral element."""
    finite = [v for v in values if v is not INFINITY]
    return min(finite) if finite else INFINITY


@dataclass(frozen=True, eq=False)
class Cover:
    parent: Group
    members: tuple[Subgroup, ...]
    verified: bool

    def __len__(self):
        return len(self.members)

    @property
    def size(self) -> int:
        return len(self.members)

    def mask_set(self) -> frozenset[int]:
        return frozenset(h.members for h in self.members)

    def intersection(self) -> Subgroup:
        m = masks.full(self.parent.order)
        for h in self.members:
            m &= h.members
        return Subgroup(self.parent, m)

    def to_dict(self, label: str = "", sigma: Optional[SigmaValue] = None, method: str = "") -> dict:
        value = len(self) if sigma is None else sigma
        return {
            "group": label,
            "sigma": "infinity" if value is INFINITY else int(value),
            "members": [h.hex() for h in self.members],
            "method": method,
        }


@dataclass(frozen=True)
class SigmaResult:
    value: SigmaValue
    witness: Optional[Cover]
    method: str

    @property
    def is_infinite(self) -> bool:
        return self.value is INFINITY

    def to_dict(self, label: str = "") -> dict:
        if self.witness is None:
            return {"group": label, "sigma": str(self.value) if self.is_infinite else self.value,
                    "members": [], "method": self.method}
        return self.witness.to_dict(label, self.value, self.method)

    def to_json(self, label: str = "") -> str:
        return json.dumps(self.to_dict(label))


def make_cover(G: Group, subgroups: Sequence[Subgroup]) -> Cover:
    members = tuple(sorted(check_cover_members(G, subgroups), key=Subgroup.sort_key))
    return Cover(G, members, is_cover(G, members))


def is_cover(G: Group, subgroups: Sequence[Subgroup]) -> bool:
    subgroups = check_cover_members(G, subgroups)
    union = 0
    for h in subgroups:
        if not h.is_proper:
            return False
        union |= h.members
    return union == masks.full(G.order)


def reduced_points(G: Group) -> list[int]:
    """One generator of each inclusion-maximal cyclic subgroup, in increasing index order."""
    if "reduced_points" not in G._cache:
        orders = G.orders
        by_size = sorted(range(G.order), key=lambda g: (-int(orders[g]), g))
        kept_union = 0
        seen_masks = set()
        points = []
        for g in by_size:
            if kept_union >> g & 1:
                continue
            c = masks.from_indices(G.powers(g))
            if c in seen_masks:
                continue
            seen_masks.add(c)
            kept_union |= c
            points.append(g)
        G._cache["reduced_points"] = sorted(points)
    return G._cache["reduced_points"]


class _Instance:
    """Set-cover instance over the reduced universe."""

    def __init__(self, G: Group, pool: Sequence[Subgroup]):
        self.G = G
        self.pool = list(pool)
        self.points = reduced_points(G)
        self.sets = []
        for h in self.pool:
            m = 0
            for k, g in enumerate(self.points):
                if h.members >> g & 1:
                    m |= 1 << k
            self.sets.append(m)
        self.universe = masks.full(len(self.points))
        # containing[k] = mask over pool indices of subgroups holding point k
        self.containing = []
        for k in range(len(self.points)):
            c = 0
            for i, s in enumerate(self.sets):
                if s >> k & 1:
                    c |= 1 << i
            self.containing.append(c)

    def lower_bound(self, uncovered: int, allowed: int) -> int:
        remaining = uncovered.bit_count()
        best = 0
        for i in masks.to_indices(allowed):
            c = (self.sets[i] & uncovered).bit_count()
            if c > best:
                best = c
                if best == remaining:
                    break
        if best == 0:
            return -1
        return -(-remaining // best)

    def branch_point(self, uncovered: int, allowed: int) -> tuple[int, int]:
        """Uncovered point with fewest allowed subgroups holding it, and those subgroups."""
        best_k, best_c, best_n = -1, 0, None
        for k in masks.to_indices(uncovered):
            c = self.containing[k] & allowed
            n = c.bit_count()
            if best_n is None or n < best_n:
                best_k, best_c, best_n = k, c, n
                if n <= 1:
                    break
        return best_k, best_c

    def greedy(self) -> list[int]:
        uncovered = self.universe
        chosen = []
        while uncovered:
            best_i, best_gain = -1, 0
            for i, s in enumerate(self.sets):
                gain = (s & uncovered).bit_count()
                if gain > best_gain:
                    best_i, best_gain = i, gain
            if best_i < 0:
                raise ValueError("pool does not cover the group")
            chosen.append(best_i)
            uncovered &= ~self.sets[best_i]
        return chosen

    def minimum(self) -> list[int]:
        best = self.greedy()
        all_allowed = masks.full(len(self.sets))

        def dfs(uncovered: int, allowed: int, chosen: list[int]) -> None:
            nonlocal best
            if not uncovered:
                if len(chosen) < len(best):
                    best = list(chosen)
                return
            lb = self.lower_bound(uncovered, allowed)
            if lb < 0 or len(chosen) + lb >= len(best):
                return
            _, cands = self.branch_point(uncovered, allowed)
            for i in masks.to_indices(cands):
                chosen.append(i)
                dfs(uncovered & ~self.sets[i], allowed, chosen)
                chosen.pop()
                # covers through i have been explored
                allowed &= ~(1 << i)
                if len(chosen) + 1 >= len(best):
                    return

        dfs(self.universe, all_allowed, [])
        return best

    def all_of_size(self, size: int, cap: int) -> list[list[int]]:
        found: list[list[int]] = []

        def dfs(uncovered: int, allowed: int, chosen: list[int]) -> None:
            if not uncovered:
                if len(chosen) != size:
                    raise AssertionError(f"found a cover of size {len(chosen)} below the minimum {size}")
                found.append(sorted(chosen))
                if len(found) > cap:
                    raise CapExceeded(f"more than {cap} minimum covers")
                return
            lb = self.lower_bound(uncovered, allowed)
            if lb < 0 or len(chosen) + lb > size:
                return
            _, cands = self.branch_point(uncovered, allowed)
            for i in masks.to_indices(cands):
                chosen.append(i)
                dfs(uncovered & ~self.sets[i], allowed, chosen)
                chosen.pop()
                allowed &= ~(1 << i)

        dfs(self.universe, masks.full(len(self.sets)), [])
        return sorted(found)


def _pool_order(pool: Sequence[Subgroup]) -> list[Subgroup]:
    unique = {h.members: h for h in pool if h.is_proper}
    return sorted(unique.values(), key=Subgroup.sort_key)


def _checked_cover(G: Group, members: Sequence[Subgroup]) -> Cover:
    cover = make_cover(G, members)
    # the reduced universe must agree with the full element set
    if not cover.verified:
        raise AssertionError("reduced-universe cover does not cover every element")
    return cover


def sigma_bruteforce(G: Group, maximals: Sequence[Subgroup]) -> SigmaResult:
    """Exact sigma(G) by branch and bound over ``maximals``.

    ``maximals`` must be the complete list of maximal subgroups.  Cyclic
    groups give INFINITY with no witness.
    """
    maximals = check_cover_members(G, maximals)
    if not maximals:
        raise EmptyMaximalList("the trivial group has no maximal subgroups")
    if is_cyclic(G):
        return SigmaResult(INFINITY, None, ORACLE)
    pool = _pool_order(maximals)
    inst = _Instance(G, pool)
    chosen = inst.minimum()
    return SigmaResult(len(chosen), _checked_cover(G, [pool[i] for i in chosen]), ORACLE)


def greedy_cover(G: Group, maximals: Sequence[Subgroup]) -> Cover:
    if is_cyclic(G):
        raise CyclicGroupError("a cyclic group has no cover")
    pool = _pool_order(check_cover_members(G, maximals))
    inst = _Instance(G, pool)
    return _checked_cover(G, [pool[i] for i in inst.greedy()])


def enumerate_minimum_covers(
    G: Group,
    pool: Sequence[Subgroup],
    cap: int = 10_000,
    sigma: Optional[SigmaValue] = None,
) -> list[Cover]:
    """Every cover of size sigma(G) drawn from ``pool``.

    ``pool`` is either the maximal subgroups or all proper subgroups; sigma is
    computed from the pool when not given (both pools give the same value,
    since every proper subgroup lies in a maximal one).
    """
    if is_cyclic(G):
        raise CyclicGroupError("a cyclic group has no cover")
    ordered = _pool_order(check_cover_members(G, pool))
    inst = _Instance(G, ordered)
    if sigma is None:
        sigma = len(inst.minimum())
    return [_checked_cover(G, [ordered[i] for i in combo]) for combo in inst.all_of_size(int(sigma), cap)]


def lift_cover(cover: Cover, epi: Epimorphism) -> Cover:
    """Preimages of the members of a cover of ``epi.target``."""
    if cover.parent is not epi.target:
        raise TargetMismatch("cover does not live on the epimorphism's target")
    if not cover.verified:
        raise TargetMismatch("only verified covers can be lifted")
    return make_cover(epi.source, [epi.preimage(h) for h in cover.members])
