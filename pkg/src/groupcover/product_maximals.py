"""Maximal subgroups of H1 x H2 built from the factors.

A maximal subgroup of a direct product is either standard (X1 x H2 or
H1 x X2 with Xi maximal in Hi) or diagonal: for maximal normal Ni in Hi and
an isomorphism phi: H1/N1 -> H2/N2, the set of pairs with
phi(h1 N1) = h2 N2.  Enumerating those two families avoids building the
subgroup lattice of the product.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import masks
from .errors import DescriptorMismatch
from .group import Group, ProductStructure
from .lattice import Epimorphism, maximal_normal_subgroups, maximal_subgroups, quotient
from .morphisms import Isomorphism, find_isomorphisms, is_prime
from .subgroup import Subgroup

STANDARD_LEFT = "standard_left"
STANDARD_RIGHT = "standard_right"
DIAGONAL = "diagonal"


@dataclass(frozen=True, eq=False)
class MaximalDescriptor:
    kind: str
    left: Group
    right: Group
    factor_subgroup: Optional[Subgroup] = None
    factor_subgroup_index: Optional[int] = None
    n1: Optional[Subgroup] = None
    n2: Optional[Subgroup] = None
    n1_index: Optional[int] = None
    n2_index: Optional[int] = None
    phi: Optional[Isomorphism] = None
    epi1: Optional[Epimorphism] = None
    epi2: Optional[Epimorphism] = None

    @property
    def index_in_G(self) -> int:
        if self.kind == DIAGONAL:
            return self.left.order // self.n1.size
        return self.factor_subgroup.index

    @property
    def is_diagonal(self) -> bool:
        return self.kind == DIAGONAL

    def to_dict(self) -> dict:
        return {
            "type": self.kind,
            "index": self.index_in_G,
            "factor_subgroup_index": self.factor_subgroup_index,
            "n1": self.n1_index,
            "n2": self.n2_index,
            "phi": list(self.phi.map) if self.phi is not None else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def describe(self) -> str:
        if self.kind == STANDARD_LEFT:
            return f"standard  X x H2, X = maximal #{self.factor_subgroup_index} of H1 (order {self.factor_subgroup.size})"
        if self.kind == STANDARD_RIGHT:
            return f"standard  H1 x X, X = maximal #{self.factor_subgroup_index} of H2 (order {self.factor_subgroup.size})"
        return (
            f"diagonal  N1 = #{self.n1_index} (order {self.n1.size}), N2 = #{self.n2_index} "
            f"(order {self.n2.size}), phi = {list(self.phi.map)}"
        )


def standard_maximals(H1: Group, H2: Group) -> list[MaximalDescriptor]:
    out = []
    for i, x in enumerate(maximal_subgroups(H1)):
        out.append(MaximalDescriptor(STANDARD_LEFT, H1, H2, factor_subgroup=x, factor_subgroup_index=i))
    for i, x in enumerate(maximal_subgroups(H2)):
        out.append(MaximalDescriptor(STANDARD_RIGHT, H1, H2, factor_subgroup=x, factor_subgroup_index=i))
    return out


def diagonal_maximals(H1: Group, H2: Group) -> list[MaximalDescriptor]:
    out = []
    normals2 = maximal_normal_subgroups(H2)
    for i, n1 in enumerate(maximal_normal_subgroups(H1)):
        q1, e1 = quotient(H1, n1)
        for j, n2 in enumerate(normals2):
            if n1.index != n2.index:
                continue
            q2, e2 = quotient(H2, n2)
            for phi in find_isomorphisms(q1, q2):
                out.append(
                    MaximalDescriptor(
                        DIAGONAL, H1, H2, n1=n1, n2=n2, n1_index=i, n2_index=j, phi=phi, epi1=e1, epi2=e2
                    )
                )
    return out


def realize(d: MaximalDescriptor, ps: ProductStructure) -> Subgroup:
    if d.left is not ps.left or d.right is not ps.right:
        raise DescriptorMismatch("descriptor was built for a different product")
    if d.kind == STANDARD_LEFT:
        mask = ps.product_mask(d.factor_subgroup.members, masks.full(ps.right.order))
    elif d.kind == STANDARD_RIGHT:
        mask = ps.product_mask(masks.full(ps.left.order), d.factor_subgroup.members)
    elif d.kind == DIAGONAL:
        image = np.asarray(d.phi.map)[d.epi1.map]
        inside = image[:, None] == d.epi2.map[None, :]
        mask = masks.from_bool(inside.ravel())
    else:
        raise DescriptorMismatch(f"unknown descriptor type {d.kind!r}")
    return Subgroup(ps.group, mask)


def all_maximals_product(ps: ProductStructure) -> list[tuple[MaximalDescriptor, Subgroup]]:
    """Every maximal subgroup of ps.group with its descriptor, sorted by (size, mask)."""
    cache = ps.group._cache
    if "maximals_product" not in cache:
        descriptors = standard_maximals(ps.left, ps.right) + diagonal_maximals(ps.left, ps.right)
        pairs = [(d, realize(d, ps)) for d in descriptors]
        seen = {h.members for _, h in pairs}
        if len(seen) != len(pairs):
            raise AssertionError("two maximal-subgroup descriptors realized the same subgroup")
        pairs.sort(key=lambda pair: pair[1].sort_key())
        cache["maximals_product"] = pairs
    return cache["maximals_product"]


def prime_index_diagonals(ps: ProductStructure) -> list[tuple[MaximalDescriptor, Subgroup]]:
    return [(d, h) for d, h in all_maximals_product(ps) if d.is_diagonal and is_prime(d.index_in_G)]

