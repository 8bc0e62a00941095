"""Finite groups as immutable Cayley tables.

Elements are the integers ``0..n-1`` with the identity at index 0.  Groups are
built from permutation generators (breadth-first closure from the identity,
generators applied in input order), as direct products, or from a plain-text
Cayley table.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from . import masks
from .errors import InvalidPermutation, InvalidTable, OrderCapExceeded
from .subgroup import Subgroup, generate

DEFAULT_ORDER_CAP = 5000
FULL_ASSOCIATIVITY_LIMIT = 64
SAMPLED_TRIPLES = 10_000

Permutation = Union[str, Sequence[int]]


class Group:
    """A finite group given by its multiplication table.

    ``table[i, j]`` is the index of ``g_i * g_j``.  Instances are treated as
    immutable; derived data (element orders, lattices, sigma values) is cached
    on the instance.
    """

    def __init__(
        self,
        table,
        labels: Optional[Sequence[str]] = None,
        origin: Optional[dict] = None,
        generators: Optional[Sequence[int]] = None,
        *,
        check: bool = True,
        seed: int = 0,
    ):
        table = np.array(table, dtype=np.uint16 if len(table) < 65536 else np.uint32)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InvalidTable("Cayley table must be a non-empty square array")
        table.flags.writeable = False
        self.table = table
        self.order = int(table.shape[0])
        if check:
            _validate_table(table, seed)
        inv = np.argmax(table == 0, axis=1).astype(table.dtype)
        inv.flags.writeable = False
        self.inverses = inv
        self.labels = list(labels) if labels is not None else [str(i) for i in range(self.order)]
        self.origin = origin or {"kind": "table"}
        self._generators = None if generators is None else tuple(sorted({int(g) for g in generators} - {0}))
        self.structure: Optional[ProductStructure] = None
        self.name: Optional[str] = None
        self._cache: dict = {}

    def __repr__(self):
        name = f" {self.name}" if self.name else ""
        return f"<Group{name} of order {self.order}>"

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    @property
    def rows(self) -> list[list[int]]:
        """Table as nested lists; faster than numpy for scalar lookups in small groups."""
        if "rows" not in self._cache:
            self._cache["rows"] = self.table.tolist()
        return self._cache["rows"]

    @property
    def orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            n = self.order
            idx = np.arange(n)
            out = np.zeros(n, dtype=np.int64)
            power = idx.copy()
            k = 1
            while True:
                hit = (power == 0) & (out == 0)
                out[hit] = k
                if out.all():
                    break
                power = self.table[power, idx].astype(np.int64)
                k += 1
            out.flags.writeable = False
            self._cache["orders"] = out
        return self._cache["orders"]

    def powers(self, g: int) -> list[int]:
        out = [0]
        x = g
        while x != 0:
            out.append(x)
            x = int(self.table[x, g])
        return out

    @property
    def generators(self) -> tuple[int, ...]:
        if self._generators is None:
            self._generators = self.generating_set(range(self.order))
        return self._generators

    def generating_set(self, elements) -> tuple[int, ...]:
        """First-fit generating set of the subgroup spanned by ``elements``."""
        gens: list[int] = []
        current = 1
        for g in elements:
            g = int(g)
            if not current >> g & 1:
                gens.append(g)
                current = generate(self, gens).members
        return tuple(gens)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def conjugate_array(self, elements: np.ndarray, g: int) -> np.ndarray:
        """``g^-1 x g`` for each x in ``elements``."""
        return self.table[self.table[int(self.inverses[g]), elements], g]


@dataclass(frozen=True, eq=False)
class ProductStructure:
    """Bookkeeping for ``G = H1 x H2`` with pair (i1, i2) stored at index ``i1*|H2| + i2``."""

    left: Group
    right: Group
    group: Group
    left_of: np.ndarray = field(repr=False)
    right_of: np.ndarray = field(repr=False)

    def pair_index(self, i1: int, i2: int) -> int:
        return i1 * self.right.order + i2

    def pair(self, g: int) -> tuple[int, int]:
        return divmod(g, self.right.order)

    def embed_left(self, h1: int) -> int:
        return h1 * self.right.order

    def embed_right(self, h2: int) -> int:
        return h2

    def project_left(self, g: int) -> int:
        return int(self.left_of[g])

    def project_right(self, g: int) -> int:
        return int(self.right_of[g])

    def product_mask(self, a: int, b: int) -> int:
        """Mask of A x B for A <= H1 and B <= H2 given as masks."""
        rows = masks.to_bool(a, self.left.order)
        cols = masks.to_bool(b, self.right.order)
        return masks.from_bool(np.outer(rows, cols).ravel())

    def product_subgroup(self, a: Subgroup, b: Subgroup) -> Subgroup:
        return Subgroup(self.group, self.product_mask(a.members, b.members))

    @property
    def left_factor(self) -> Subgroup:
        """H1 x 1 inside G."""
        return Subgroup(self.group, self.product_mask(masks.full(self.left.order), 1))

    @property
    def right_factor(self) -> Subgroup:
        """1 x H2 inside G."""
        return Subgroup(self.group, masks.full(self.right.order))

    def left_section(self, h: Subgroup) -> int:
        """Mask over H1 of {h1 : (h1, 1) in h}."""
        members = masks.to_bool(h.members, self.group.order).reshape(self.left.order, self.right.order)
        return masks.from_bool(members[:, 0])

    def right_section(self, h: Subgroup) -> int:
        members = masks.to_bool(h.members, self.group.order).reshape(self.left.order, self.right.order)
        return masks.from_bool(members[0, :])

    def left_projection(self, h: Subgroup) -> int:
        members = masks.to_bool(h.members, self.group.order).reshape(self.left.order, self.right.order)
        return masks.from_bool(members.any(axis=1))

    def right_projection(self, h: Subgroup) -> int:
        members = masks.to_bool(h.members, self.group.order).reshape(self.left.order, self.right.order)
        return masks.from_bool(members.any(axis=0))


def _validate_table(table: np.ndarray, seed: int = 0) -> None:
    n = table.shape[0]
    expected = np.arange(n)
    if table.max() >= n:
        raise InvalidTable("table entry out of range")
    if not np.array_equal(table[0], expected) or not np.array_equal(table[:, 0], expected):
        raise InvalidTable("element 0 is not a two-sided identity")
    if not (np.sort(table, axis=1) == expected).all() or not (np.sort(table, axis=0) == expected[:, None]).all():
        raise InvalidTable("table is not a Latin square")
    t = table.astype(np.int64)
    if n <= FULL_ASSOCIATIVITY_LIMIT:
        left = t[t[:, :, None], expected[None, None, :]]  # (ab)c
        right = t[expected[:, None, None], t[None, :, :]]  # a(bc)
        ok = np.array_equal(left, right)
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, SAMPLED_TRIPLES))
        ok = np.array_equal(t[t[a, b], c], t[a, t[b, c]])
    if not ok:
        raise InvalidTable("multiplication is not associative")


# -- permutations -------------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(p: Permutation, degree: int) -> tuple[int, ...]:
    """Return 0-based images of a permutation on points ``1..degree``.

    ``p`` is either cycle notation such as ``"(1 2 3)(4 5)"`` or the sequence of
    images of ``1..degree``.
    """
    if isinstance(p, str):
        images = list(range(degree))
        text = p.strip()
        if _CYCLE.sub("", text).strip():
            raise InvalidPermutation(f"cannot read cycle notation {p!r}")
        for body in _CYCLE.findall(text):
            pts = [int(x) for x in body.replace(",", " ").split()]
            if len(set(pts)) != len(pts) or any(not 1 <= x <= degree for x in pts):
                raise InvalidPermutation(f"bad cycle ({body}) on {degree} points")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a - 1] = b - 1
        if sorted(images) != list(range(degree)):
            raise InvalidPermutation(f"cycles in {p!r} overlap")
        return tuple(images)
    images = [int(x) - 1 for x in p]
    if len(images) != degree or sorted(images) != list(range(degree)):
        raise InvalidPermutation(f"{list(p)} is not a bijection on 1..{degree}")
    return tuple(images)


def cycle_notation(perm: Sequence[int]) -> str:
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(str(x + 1))
            x = perm[x]
        parts.append("(" + " ".join(cycle) + ")")
    return "".join(parts) or "()"


def from_permutations(
    generators: Sequence[Permutation],
    degree: Optional[int] = None,
    *,
    order_cap: int = DEFAULT_ORDER_CAP,
    seed: int = 0,
) -> Group:
    """Group generated by permutations of ``1..degree``.

    Elements are numbered in breadth-first order from the identity, applying
    the generators in the order given.  Products compose left to right:
    ``(x*y)(i) = y(x(i))``.
    """
    if degree is None:
        degree = _infer_degree(generators)
    gens = [parse_permutation(p, degree) for p in generators]
    identity = tuple(range(degree))
    gens = [g for g in gens if g != identity]
    elements = [identity]
    index = {identity: 0}
    # right[s][i] = index of element_i * gens[s]
    right = [[] for _ in gens]
    parent = [0]
    via = [-1]
    for i, x in enumerate(elements):
        for s, g in enumerate(gens):
            y = tuple(g[k] for k in x)
            j = index.get(y)
            if j is None:
                j = len(elements)
                if j >= order_cap:
                    raise OrderCapExceeded(f"group order exceeds cap {order_cap}")
                index[y] = j
                elements.append(y)
                parent.append(i)
                via.append(s)
            right[s].append(j)
    n = len(elements)
    dtype = np.uint16 if n < 65536 else np.uint32
    right_arr = [np.array(r, dtype=dtype) for r in right]
    table = np.empty((n, n), dtype=dtype)
    table[:, 0] = np.arange(n)
    for j in range(1, n):
        table[:, j] = right_arr[via[j]][table[:, parent[j]]]
    labels = [cycle_notation(e) for e in elements]
    gen_idx = [index[g] for g in gens]
    origin = {"kind": "permutations", "degree": degree, "generators": [cycle_notation(g) for g in gens]}
    return Group(table, labels, origin, gen_idx, seed=seed)


def _infer_degree(generators: Sequence[Permutation]) -> int:
    degree = 0
    for p in generators:
        if isinstance(p, str):
            nums = [int(x) for x in re.findall(r"\d+", p)]
            degree = max([degree, *nums])
        else:
            degree = max(degree, len(p))
    return degree


def direct_product(
    H1: Group, H2: Group, *, order_cap: int = DEFAULT_ORDER_CAP
) -> tuple[Group, ProductStructure]:
    n1, n2 = H1.order, H2.order
    n = n1 * n2
    if n > order_cap:
        raise OrderCapExceeded(f"product order {n} exceeds cap {order_cap}")
    t1 = H1.table.astype(np.int64)
    t2 = H2.table.astype(np.int64)
    table = (t1[:, None, :, None] * n2 + t2[None, :, None, :]).reshape(n, n)
    labels = [f"({a}, {b})" for a in H1.labels for b in H2.labels]
    gens = [g * n2 for g in H1.generators] + list(H2.generators)
    origin = {"kind": "product", "left": id(H1), "right": id(H2)}
    # the factors were validated, so the product is a group by construction
    G = Group(table, labels, origin, gens, check=False)
    idx = np.arange(n)
    left_of, right_of = np.divmod(idx, n2)
    left_of.flags.writeable = False
    right_of.flags.writeable = False
    ps = ProductStructure(H1, H2, G, left_of, right_of)
    G.structure = ps
    if H1.name and H2.name:
        G.name = f"{_wrap(H1.name)} x {_wrap(H2.name)}"
    return G, ps


def _wrap(name: str) -> str:
    return f"({name})" if " x " in name else name


def element_order(G: Group, g: int) -> int:
    return int(G.orders[g])


def is_cyclic(G: Group) -> bool:
    return int(G.orders.max()) == G.order


def exponent(G: Group) -> int:
    return math.lcm(*(int(x) for x in np.unique(G.orders)))


def commutator_subgroup(G: Group) -> Subgroup:
    """Subgroup generated by all ``a^-1 b^-1 a b``."""
    if "derived" not in G._cache:
        t = G.table
        inv = G.inverses
        comms = t[t[inv[:, None], inv[None, :]], t]
        G._cache["derived"] = generate(G, np.unique(comms).tolist())
    return G._cache["derived"]


def abelianization_order(G: Group) -> int:
    return G.order // commutator_subgroup(G).size


# -- plain-text Cayley tables --------------------------------------------------


def read_table(path: Union[str, Path], *, seed: int = 0) -> Group:
    """Load ``n`` followed by ``n`` rows of ``n`` 0-based indices.

    If the identity is not element 0 the elements are relabelled so that it is.
    """
    tokens = Path(path).read_text().split()
    if not tokens:
        raise InvalidTable("empty table file")
    n = int(tokens[0])
    values = [int(x) for x in tokens[1:]]
    if len(values) != n * n:
        raise InvalidTable(f"expected {n * n} entries, found {len(values)}")
    return group_from_rows(np.array(values).reshape(n, n), seed=seed)


def group_from_rows(rows, *, seed: int = 0) -> Group:
    t = np.asarray(rows, dtype=np.int64)
    n = t.shape[0]
    ident = [e for e in range(n) if np.array_equal(t[e], np.arange(n))]
    if not ident:
        raise InvalidTable("no identity element")
    e = ident[0]
    if e != 0:
        perm = np.arange(n)
        perm[[0, e]] = [e, 0]  # new index -> old index (a swap is its own inverse)
        t = perm[t[np.ix_(perm, perm)]]
    labels = [str(int(i)) for i in (np.arange(n) if e == 0 else perm)]
    return Group(t, labels, {"kind": "table"}, seed=seed)


def write_table(G: Group, path: Union[str, Path]) -> None:
    lines = [str(G.order)]
    lines += [" ".join(map(str, row)) for row in G.table.tolist()]
    Path(path).write_text("\n".join(lines) + "\n")
