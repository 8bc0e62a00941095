"""A tiny language for naming groups: ``S3 x C5``, ``(C2xC2) x C3``, ``Q8``.

Grammar::

    expr := term ('x' term)*          left associative
    term := 'C' int | 'S' int | 'A' int | 'D' int | 'Q8' | '(' expr ')'

``D n`` is the dihedral group of order n.  Letters are case-insensitive and
whitespace is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import CapError, ExprSyntaxError
from .group import DEFAULT_ORDER_CAP, Group, direct_product, from_permutations

MAX_CYCLIC = 512
MAX_SYMMETRIC = 6
MAX_DIHEDRAL = 128


@dataclass(frozen=True)
class Cyclic:
    n: int

    def __str__(self):
        return f"C{self.n}"


@dataclass(frozen=True)
class Symmetric:
    n: int

    def __str__(self):
        return f"S{self.n}"


@dataclass(frozen=True)
class Alternating:
    n: int

    def __str__(self):
        return f"A{self.n}"


@dataclass(frozen=True)
class Dihedral:
    order: int

    def __str__(self):
        return f"D{self.order}"


@dataclass(frozen=True)
class Quaternion:
    def __str__(self):
        return "Q8"


@dataclass(frozen=True)
class Product:
    left: "GroupExpr"
    right: "GroupExpr"

    def __str__(self):
        right = f"({self.right})" if isinstance(self.right, Product) else str(self.right)
        return f"{self.left} x {right}"


GroupExpr = Union[Cyclic, Symmetric, Alternating, Dihedral, Quaternion, Product]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos].lower() if self.pos < len(self.text) else ""

    def error(self, message: str) -> ExprSyntaxError:
        return ExprSyntaxError(message, self.pos)

    def parse(self) -> GroupExpr:
        e = self.expr()
        if self.peek():
            raise self.error(f"unexpected {self.text[self.pos]!r}")
        return e

    def expr(self) -> GroupExpr:
        e = self.term()
        while self.peek() == "x":
            self.pos += 1
            e = Product(e, self.term())
        return e

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def term(self) -> GroupExpr:
        c = self.peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            e = self.expr()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return e
        if c == "q":
            self.pos += 1
            if self.integer() != 8:
                raise ExprSyntaxError("only Q8 is supported", start)
            return Quaternion()
        if c in ("c", "s", "a", "d"):
            self.pos += 1
            n = self.integer()
            return _family(c, n, start)
        if not c:
            raise self.error("unexpected end of expression")
        raise self.error(f"unexpected {self.text[self.pos]!r}")


def _family(letter: str, n: int, pos: int) -> GroupExpr:
    if letter == "c":
        if not 1 <= n <= MAX_CYCLIC:
            raise CapError(f"C{n}: cyclic order must be in 1..{MAX_CYCLIC}")
        return Cyclic(n)
    if letter in ("s", "a"):
        if not 1 <= n <= MAX_SYMMETRIC:
            raise CapError(f"{letter.upper()}{n}: degree must be in 1..{MAX_SYMMETRIC}")
        return Symmetric(n) if letter == "s" else Alternating(n)
    if n % 2 or n < 4:
        raise ExprSyntaxError(f"D{n}: dihedral order must be even and at least 4", pos)
    if n > MAX_DIHEDRAL:
        raise CapError(f"D{n}: dihedral order above {MAX_DIHEDRAL}")
    return Dihedral(n)


def parse(text: str) -> GroupExpr:
    return _Parser(text).parse()


def _quaternion_generators() -> list[list[int]]:
    # elements ±1, ±i, ±j, ±k as (sign, unit); the left-regular action of i and j
    units = "1ijk"
    mult = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in units]
    point = {e: i for i, e in enumerate(elems)}
    gens = []
    for g in ("i", "j"):
        images = []
        for s, u in elems:
            sign, unit = mult[(g, u)]
            images.append(point[(s * sign, unit)] + 1)
        gens.append(images)
    return gens


def _named_group(e: GroupExpr, order_cap: int, seed: int) -> Group:
    kw = {"order_cap": order_cap, "seed": seed}
    if isinstance(e, Cyclic):
        G = from_permutations([list(range(2, e.n + 1)) + [1]], e.n, **kw)
    elif isinstance(e, Symmetric):
        gens = [] if e.n < 2 else ["(1 2)", "(" + " ".join(map(str, range(1, e.n + 1))) + ")"]
        G = from_permutations(gens, e.n, **kw)
    elif isinstance(e, Alternating):
        G = from_permutations([f"(1 2 {k})" for k in range(3, e.n + 1)], e.n, **kw)
    elif isinstance(e, Dihedral):
        m = e.order // 2
        if m == 2:
            G = from_permutations(["(1 2)(3 4)", "(1 3)(2 4)"], 4, **kw)
        else:
            rotation = "(" + " ".join(map(str, range(1, m + 1))) + ")"
            reflection = "".join(f"({i} {m + 2 - i})" for i in range(2, m + 1) if i < m + 2 - i)
            G = from_permutations([rotation, reflection], m, **kw)
    elif isinstance(e, Quaternion):
        G = from_permutations(_quaternion_generators(), 8, **kw)
    else:
        raise TypeError(f"not a named group: {e!r}")
    G.name = str(e)
    return G


def evaluate(e: GroupExpr, *, order_cap: int = DEFAULT_ORDER_CAP, seed: int = 0) -> Group:
    """Build the group an expression denotes; products carry a ProductStructure."""
    if isinstance(e, Product):
        left = evaluate(e.left, order_cap=order_cap, seed=seed)
        right = evaluate(e.right, order_cap=order_cap, seed=seed)
        if left.order * right.order > order_cap:
            raise CapError(f"{e}: order {left.order * right.order} exceeds cap {order_cap}")
        G, _ = direct_product(left, right, order_cap=order_cap)
        G.name = str(e)
        return G
    return _named_group(e, order_cap, seed)


def build(text: str, **kw) -> Group:
    return evaluate(parse(text), **kw)
