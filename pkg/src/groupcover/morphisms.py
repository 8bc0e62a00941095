"""Isomorphism search between small groups and common cyclic prime quotients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CapExceeded
from .group import Group, abelianization_order
from .subgroup import generate

DEFAULT_ISOMORPHISM_CAP = 120


@dataclass(frozen=True, eq=False)
class Isomorphism:
    source: Group
    target: Group
    map: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.map[g]

    def is_homomorphism(self) -> bool:
        f = np.array(self.map)
        return bool((f[self.source.table] == self.target.table[f[:, None], f[None, :]]).all())

    def is_bijection(self) -> bool:
        return sorted(self.map) == list(range(self.target.order))


def greedy_generators(G: Group) -> tuple[int, ...]:
    """Generating set built by repeatedly adding the element that grows the span most.

    Ties go to the smaller index.
    """
    if "greedy_gens" in G._cache:
        return G._cache["greedy_gens"]
    gens: list[int] = []
    span = generate(G, gens)
    while span.size < G.order:
        best, best_span = None, None
        for g in range(1, G.order):
            if g in span:
                continue
            cand = generate(G, gens + [g])
            if best_span is None or cand.size > best_span.size:
                best, best_span = g, cand
                if cand.size == G.order:
                    break
        gens.append(best)
        span = best_span
    G._cache["greedy_gens"] = tuple(gens)
    return G._cache["greedy_gens"]


def _extend(G1: Group, G2: Group, gens, images, phi: list[int]) -> Optional[list[int]]:
    """Extend a partial map to <gens> along right multiplication; None if inconsistent."""
    rows1, rows2 = G1.rows, G2.rows
    phi = list(phi)
    used = {v for v in phi if v >= 0}
    queue = [x for x in range(G1.order) if phi[x] >= 0]
    for x in queue:
        fx = phi[x]
        for s, fs in zip(gens, images):
            y = rows1[x][s]
            fy = rows2[fx][fs]
            if phi[y] < 0:
                if fy in used:
                    return None
                phi[y] = fy
                used.add(fy)
                queue.append(y)
            elif phi[y] != fy:
                return None
    return phi


def find_isomorphisms(
    G1: Group,
    G2: Group,
    limit: Optional[int] = None,
    *,
    cap: int = DEFAULT_ISOMORPHISM_CAP,
) -> list[Isomorphism]:
    """All isomorphisms G1 -> G2 (or the first ``limit``), in deterministic order.

    Backtracks over the images of a greedy generating set of G1; candidate
    images must have the same element order as the generator.
    """
    if G1.order != G2.order:
        return []
    if G1.order > cap:
        raise CapExceeded(f"isomorphism search limited to order {cap}")
    o1, o2 = G1.orders, G2.orders
    if not np.array_equal(np.sort(o1), np.sort(o2)):
        return []
    gens = list(greedy_generators(G1))
    by_order: dict[int, list[int]] = {}
    for h in range(G2.order):
        by_order.setdefault(int(o2[h]), []).append(h)

    found: list[Isomorphism] = []
    start = [-1] * G1.order
    start[0] = 0

    def search(depth: int, images: list[int], phi: list[int]) -> bool:
        if depth == len(gens):
            found.append(Isomorphism(G1, G2, tuple(phi)))
            return limit is not None and len(found) >= limit
        g = gens[depth]
        for h in by_order.get(int(o1[g]), []):
            ext = _extend(G1, G2, gens[: depth + 1], images + [h], phi)
            if ext is not None and search(depth + 1, images + [h], ext):
                return True
        return False

    search(0, [], start)
    return found


def is_isomorphic(G1: Group, G2: Group) -> bool:
    return bool(find_isomorphisms(G1, G2, limit=1))


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def common_prime_quotients(H1: Group, H2: Group) -> set[int]:
    """Primes p such that C_p is a homomorphic image of both groups."""
    return set(prime_factors(abelianization_order(H1))) & set(prime_factors(abelianization_order(H2)))
