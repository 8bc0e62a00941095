"""Subgroup lattices, normal subgroups and quotients of Cayley-table groups."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import masks
from .errors import LatticeCapExceeded, NotNormal
from .group import Group
from .subgroup import Subgroup, cyclic, generate, join, whole

DEFAULT_LATTICE_CAP = 400
HOMOMORPHISM_FULL_CHECK = 144


def _canonical(subgroups) -> list[Subgroup]:
    unique = {h.members: h for h in subgroups}
    return sorted(unique.values(), key=Subgroup.sort_key)


def cyclic_subgroups(G: Group) -> list[Subgroup]:
    if "cyclic" not in G._cache:
        G._cache["cyclic"] = _canonical(cyclic(G, g) for g in range(G.order))
    return G._cache["cyclic"]


def all_subgroups(G: Group, *, lattice_cap: int = DEFAULT_LATTICE_CAP) -> list[Subgroup]:
    """Every subgroup of G, sorted by (size, mask).

    Starts from the cyclic subgroups and joins each newly found subgroup with
    every cyclic subgroup until nothing new appears.  Every subgroup is a join
    of cyclic ones, so this reaches the whole lattice.
    """
    if G.order > lattice_cap:
        raise LatticeCapExceeded(f"order {G.order} exceeds lattice cap {lattice_cap}")
    if "lattice" in G._cache:
        return G._cache["lattice"]
    seeds = cyclic_subgroups(G)
    found = {h.members: h for h in seeds}
    frontier = list(seeds)
    while frontier:
        fresh = []
        for h in frontier:
            for c in seeds:
                if masks.is_subset(c.members, h.members):
                    continue
                j = join(h, c)
                if j.members not in found:
                    found[j.members] = j
                    fresh.append(j)
        frontier = fresh
    result = _canonical(found.values())
    G._cache["lattice"] = result
    return result


def _maximal_among(candidates: list[Subgroup]) -> list[Subgroup]:
    out = []
    for h in candidates:
        if not any(h.members != k.members and masks.is_subset(h.members, k.members) for k in candidates):
            out.append(h)
    return out


def maximal_subgroups(
    G: Group, *, use_product: bool = True, lattice_cap: int = DEFAULT_LATTICE_CAP
) -> list[Subgroup]:
    """Proper subgroups of G maximal under inclusion.

    Groups built by ``direct_product`` go through the standard/diagonal
    construction unless ``use_product`` is False, in which case the full
    lattice is used.
    """
    if use_product and G.structure is not None:
        from .product_maximals import all_maximals_product

        return [h for _, h in all_maximals_product(G.structure)]
    key = "maximals_lattice"
    if key not in G._cache:
        proper = [h for h in all_subgroups(G, lattice_cap=lattice_cap) if h.is_proper]
        G._cache[key] = _maximal_among(proper)
    return G._cache[key]


def is_normal(G: Group, H: Subgroup) -> bool:
    elems = H.element_array()
    inside = masks.to_bool(H.members, G.order)
    for g in G.generators:
        if not inside[G.conjugate_array(elems, g)].all():
            return False
    return True


def conjugacy_classes(G: Group) -> list[list[int]]:
    if "classes" not in G._cache:
        done = np.zeros(G.order, dtype=bool)
        every = np.arange(G.order)
        classes = []
        for x in range(G.order):
            if done[x]:
                continue
            cls = np.unique(G.table[G.table[G.inverses, x], every])
            done[cls] = True
            classes.append(cls.tolist())
        G._cache["classes"] = classes
    return G._cache["classes"]


def normal_closure(G: Group, elements) -> Subgroup:
    h = generate(G, elements)
    while True:
        elems = h.element_array()
        inside = masks.to_bool(h.members, G.order)
        extra = set()
        for g in G.generators:
            conj = G.conjugate_array(elems, g)
            extra.update(conj[~inside[conj]].tolist())
        if not extra:
            return h
        h = generate(G, list(h.generator_hint or ()) + sorted(extra))


def normal_subgroups(G: Group) -> list[Subgroup]:
    """All normal subgroups, sorted by (size, mask).

    Seeds are normal closures of conjugacy classes; joins of normal subgroups
    are normal, and every normal subgroup is such a join.
    """
    if "normal" not in G._cache:
        seeds = _canonical(normal_closure(G, [cls[0]]) for cls in conjugacy_classes(G))
        found = {h.members: h for h in seeds}
        frontier = list(seeds)
        while frontier:
            fresh = []
            for h in frontier:
                for c in seeds:
                    if masks.is_subset(c.members, h.members):
                        continue
                    j = join(h, c)
                    if j.members not in found:
                        found[j.members] = j
                        fresh.append(j)
            frontier = fresh
        G._cache["normal"] = _canonical(found.values())
    return G._cache["normal"]


def maximal_normal_subgroups(G: Group) -> list[Subgroup]:
    """Proper normal subgroups maximal among proper normal subgroups."""
    if "maximal_normal" not in G._cache:
        proper = [h for h in normal_subgroups(G) if h.is_proper]
        G._cache["maximal_normal"] = _maximal_among(proper)
    return G._cache["maximal_normal"]


@dataclass(frozen=True, eq=False)
class Epimorphism:
    source: Group
    target: Group
    map: np.ndarray
    kernel: Subgroup

    def __call__(self, g: int) -> int:
        return int(self.map[g])

    def preimage(self, h: Subgroup) -> Subgroup:
        inside = masks.to_bool(h.members, self.target.order)
        return Subgroup(self.source, masks.from_bool(inside[self.map]))

    def is_homomorphism(self, *, seed: int = 0) -> bool:
        t, f, q = self.source.table, self.map, self.target.table
        n = self.source.order
        if n <= HOMOMORPHISM_FULL_CHECK:
            return bool((f[t] == q[f[:, None], f[None, :]]).all())
        rng = np.random.default_rng(seed)
        a, b = rng.integers(0, n, size=(2, 10_000))
        return bool((f[t[a, b]] == q[f[a], f[b]]).all())


def quotient(G: Group, N: Subgroup) -> tuple[Group, Epimorphism]:
    """G/N with cosets numbered by their least element (so the identity coset is 0)."""
    if N.parent is not G or not is_normal(G, N):
        raise NotNormal("quotient requires a normal subgroup of G")
    key = ("quotient", N.members)
    if key in G._cache:
        return G._cache[key]
    n = G.order
    coset_of = np.full(n, -1, dtype=np.int64)
    reps = []
    n_elems = N.element_array()
    for g in range(n):
        if coset_of[g] >= 0:
            continue
        coset_of[G.table[g, n_elems]] = len(reps)
        reps.append(g)
    reps_arr = np.array(reps)
    qtable = coset_of[G.table[np.ix_(reps_arr, reps_arr)]]
    labels = [f"{G.labels[r]}N" if r else "N" for r in reps]
    gens = sorted({int(coset_of[g]) for g in G.generators} - {0})
    Q = Group(qtable, labels, {"kind": "quotient", "source": id(G)}, gens, check=len(reps) <= 64)
    coset_of.flags.writeable = False
    epi = Epimorphism(G, Q, coset_of, N)
    G._cache[key] = (Q, epi)
    return Q, epi


def identity_epimorphism(G: Group) -> Epimorphism:
    m = np.arange(G.order)
    m.flags.writeable = False
    return Epimorphism(G, G, m, Subgroup(G, 1))


def is_simple(G: Group) -> bool:
    return G.order > 1 and len(normal_subgroups(G)) == 2


__all__ = [
    "Epimorphism",
    "all_subgroups",
    "conjugacy_classes",
    "cyclic_subgroups",
    "identity_epimorphism",
    "is_normal",
    "is_simple",
    "maximal_normal_subgroups",
    "maximal_subgroups",
    "normal_closure",
    "normal_subgroups",
    "quotient",
    "whole",
]
