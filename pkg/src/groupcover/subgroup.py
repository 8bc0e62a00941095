"""Subgroups as membership bit vectors over a parent group's element indices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Optional

import numpy as np

from . import masks
from .errors import ForeignSubgroup

if TYPE_CHECKING:
    from .group import Group


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: "Group"
    members: int
    generator_hint: Optional[tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.members & 1:
            raise ValueError("subgroup mask must contain the identity")
        if self.parent.order % self.size:
            raise ValueError(f"subgroup of size {self.size} cannot live in a group of order {self.parent.order}")

    @property
    def size(self) -> int:
        return self.members.bit_count()

    @property
    def index(self) -> int:
        return self.parent.order // self.size

    @property
    def is_proper(self) -> bool:
        return self.size < self.parent.order

    @property
    def is_trivial(self) -> bool:
        return self.members == 1

    def elements(self) -> list[int]:
        return masks.to_indices(self.members)

    def element_array(self) -> np.ndarray:
        return masks.to_array(self.members, self.parent.order)

    def __contains__(self, g: int) -> bool:
        return bool(self.members >> g & 1)

    def __le__(self, other: "Subgroup") -> bool:
        _same_parent(self, other)
        return masks.is_subset(self.members, other.members)

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.members != other.members

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def sort_key(self) -> tuple[int, int]:
        return (self.size, self.members)

    def intersection(self, other: "Subgroup") -> "Subgroup":
        _same_parent(self, other)
        return Subgroup(self.parent, self.members & other.members)

    def product_size(self, other: "Subgroup") -> int:
        """|HK| = |H||K| / |H ∩ K|, valid for any two subgroups."""
        _same_parent(self, other)
        return self.size * other.size // (self.members & other.members).bit_count()

    def hex(self) -> str:
        return hex(self.members)

    def __repr__(self):
        return f"Subgroup(order={self.size}, index={self.index}, mask={self.hex()})"


def _same_parent(a: Subgroup, b: Subgroup) -> None:
    if a.parent is not b.parent:
        raise ForeignSubgroup("subgroups belong to different groups")


def generate(G: "Group", gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``gens``, by closure under right multiplication."""
    gens = sorted({int(g) for g in gens} - {0})
    if not gens:
        return Subgroup(G, 1, ())
    if G.order <= 512:
        rows = G.rows
        seen = {0}
        queue = [0]
        for x in queue:
            row = rows[x]
            for s in gens:
                y = row[s]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return Subgroup(G, masks.from_indices(seen), tuple(gens))
    table = G.table
    inside = np.zeros(G.order, dtype=bool)
    inside[0] = True
    frontier = np.array([0])
    gen_arr = np.array(gens)
    while frontier.size:
        nxt = np.unique(table[np.ix_(frontier, gen_arr)])
        nxt = nxt[~inside[nxt]]
        inside[nxt] = True
        frontier = nxt
    return Subgroup(G, masks.from_bool(inside), tuple(gens))


def join(a: Subgroup, b: Subgroup) -> Subgroup:
    _same_parent(a, b)
    if masks.is_subset(b.members, a.members):
        return a
    if masks.is_subset(a.members, b.members):
        return b
    return generate(a.parent, _hint(a) + _hint(b))


def _hint(h: Subgroup) -> tuple[int, ...]:
    if h.generator_hint is not None:
        return h.generator_hint
    return h.parent.generating_set(h.elements())


def from_mask(G: "Group", mask: int, check: bool = True) -> Subgroup:
    """Wrap a mask as a Subgroup; with ``check`` the mask must already be closed."""
    h = Subgroup(G, mask)
    if check:
        closed = generate(G, _hint(h))
        if closed.members != mask:
            raise ValueError("mask is not closed under multiplication")
    return h


def trivial(G: "Group") -> Subgroup:
    return Subgroup(G, 1, ())


def whole(G: "Group") -> Subgroup:
    return Subgroup(G, masks.full(G.order), tuple(G.generators))


def cyclic(G: "Group", g: int) -> Subgroup:
    return Subgroup(G, masks.from_indices(G.powers(g)), (g,) if g else ())


def check_cover_members(G: "Group", subgroups: Iterable[Subgroup]) -> list[Subgroup]:
    subgroups = list(subgroups)
    for h in subgroups:
        if h.parent is not G:
            raise ForeignSubgroup("cover member belongs to a different group")
    return subgroups
