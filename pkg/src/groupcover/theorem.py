"""Covers of direct products: the sigma formula, the three cover shapes, and
instance checks of the supporting lemmas.

For G = H1 x H2 every minimum cover is one of

1. {X x H2 : X in C} for a minimum cover C of H1,
2. {H1 x X : X in C} for a minimum cover C of H2,
3. the p+1 maximal subgroups containing N1 x N2, where Hi/Ni is cyclic of
   prime order p,

so sigma(G) = min(sigma(H1), sigma(H2), p+1 over primes p with C_p a
quotient of both factors).
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field
from typing import Optional, Union

from . import masks
from .cover import (
    INFINITY,
    THEOREM,
    Cover,
    SigmaResult,
    SigmaValue,
    is_cover,
    make_cover,
    sigma_bruteforce,
    sigma_min,
)
from .errors import BadQuotients, NotMinimal, NotVerified, PreconditionViolated, WrongSize
from .group import Group, ProductStructure, direct_product, is_cyclic
from .lattice import is_normal, maximal_subgroups, normal_subgroups, quotient
from .morphisms import common_prime_quotients, find_isomorphisms, is_prime
from .product_maximals import DIAGONAL, MaximalDescriptor, prime_index_diagonals, realize
from .subgroup import Subgroup

log = logging.getLogger(__name__)


def sigma_of(G: Group) -> SigmaResult:
    """Oracle sigma(G) over the maximal subgroups (product construction when available)."""
    if "sigma" not in G._cache:
        G._cache["sigma"] = sigma_bruteforce(G, maximal_subgroups(G))
    return G._cache["sigma"]


def prime_index_normals(H: Group, p: int) -> list[Subgroup]:
    return [n for n in normal_subgroups(H) if n.index == p]


def sigma_product(H1: Group, H2: Group, ps: Optional[ProductStructure] = None) -> SigmaResult:
    """sigma(H1 x H2) from the factors, with a witness cover of the matching shape.

    The smallest common prime is used for the third shape; when p+1 ties with
    a factor sigma the third shape is preferred.
    """
    if ps is None:
        _, ps = direct_product(H1, H2)
    elif ps.left is not H1 or ps.right is not H2:
        raise ValueError("product structure does not match the factors")
    s1, s2 = sigma_of(H1), sigma_of(H2)
    primes = sorted(common_prime_quotients(H1, H2))
    via_prime = primes[0] + 1 if primes else INFINITY
    value = sigma_min(s1.value, s2.value, via_prime)
    if value is INFINITY:
        return SigmaResult(INFINITY, None, THEOREM)
    if value == via_prime:
        p = primes[0]
        witness = build_cover_case3(ps, prime_index_normals(H1, p)[0], prime_index_normals(H2, p)[0])
    elif value == s1.value:
        witness = build_cover_case1(ps, s1.witness)
    else:
        witness = build_cover_case2(ps, s2.witness)
    return SigmaResult(value, witness, THEOREM)


def _check_factor_cover(H: Group, factor_cover: Cover) -> None:
    if factor_cover is None or factor_cover.parent is not H:
        raise NotMinimal("factor cover must be a cover of the factor")
    if is_cyclic(H):
        raise NotMinimal("a cyclic factor has no minimal cover")
    if not factor_cover.verified or len(factor_cover) != sigma_of(H).value:
        raise NotMinimal(f"factor cover of size {len(factor_cover)} is not a minimum cover")


def build_cover_case1(ps: ProductStructure, factor_cover: Cover) -> Cover:
    """{X x H2 : X in factor_cover} for a minimum cover of H1."""
    _check_factor_cover(ps.left, factor_cover)
    everything = masks.full(ps.right.order)
    return make_cover(ps.group, [Subgroup(ps.group, ps.product_mask(x.members, everything)) for x in factor_cover.members])


def build_cover_case2(ps: ProductStructure, factor_cover: Cover) -> Cover:
    """{H1 x X : X in factor_cover} for a minimum cover of H2."""
    _check_factor_cover(ps.right, factor_cover)
    everything = masks.full(ps.left.order)
    return make_cover(ps.group, [Subgroup(ps.group, ps.product_mask(everything, x.members)) for x in factor_cover.members])


def build_cover_case3(ps: ProductStructure, N1: Subgroup, N2: Subgroup) -> Cover:
    """The p+1 maximal subgroups of H1 x H2 containing N1 x N2.

    These are N1 x H2, H1 x N2 and the p-1 diagonals, one per isomorphism
    between the two quotients of order p.
    """
    H1, H2 = ps.left, ps.right
    if N1.parent is not H1 or N2.parent is not H2:
        raise BadQuotients("N1 and N2 must be subgroups of the two factors")
    if not (is_normal(H1, N1) and is_normal(H2, N2)):
        raise BadQuotients("N1 and N2 must be normal")
    p = N1.index
    if p != N2.index or not is_prime(p):
        raise BadQuotients(f"quotients of orders {N1.index} and {N2.index} are not the same prime")
    key = ("case3", N1.members, N2.members)
    cache = ps.group._cache
    if key in cache:
        return cache[key]
    q1, e1 = quotient(H1, N1)
    q2, e2 = quotient(H2, N2)
    members = [
        Subgroup(ps.group, ps.product_mask(N1.members, masks.full(H2.order))),
        Subgroup(ps.group, ps.product_mask(masks.full(H1.order), N2.members)),
    ]
    for phi in find_isomorphisms(q1, q2):
        d = MaximalDescriptor(DIAGONAL, H1, H2, n1=N1, n2=N2, phi=phi, epi1=e1, epi2=e2)
        members.append(realize(d, ps))
    cover = make_cover(ps.group, members)
    if not cover.verified or len(cover) != p + 1:
        raise AssertionError("maximal subgroups over N1 x N2 failed to form a cover of size p+1")
    cache[key] = cover
    return cover


class Case(enum.IntEnum):
    UNCLASSIFIED = 0
    CASE1 = 1
    CASE2 = 2
    CASE3 = 3


@dataclass(frozen=True)
class CoverClassification:
    case: Case
    factor_cover: Optional[Cover] = field(default=None, compare=False)
    n1: Optional[Subgroup] = field(default=None, compare=False)
    n2: Optional[Subgroup] = field(default=None, compare=False)
    p: Optional[int] = None

    @property
    def classified(self) -> bool:
        return self.case is not Case.UNCLASSIFIED

    def to_dict(self) -> dict:
        return {
            "case": int(self.case) if self.classified else "unclassified",
            "p": self.p,
            "n1_order": self.n1.size if self.n1 is not None else None,
            "n2_order": self.n2.size if self.n2 is not None else None,
            "factor_cover_size": len(self.factor_cover) if self.factor_cover is not None else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _factor_cover(ps: ProductStructure, cover: Cover, side: int) -> Optional[Cover]:
    """The cover of one factor that ``cover`` is the product of, or None."""
    if side == 1:
        fixed, H, section = ps.right_factor.members, ps.left, ps.left_section
    else:
        fixed, H, section = ps.left_factor.members, ps.right, ps.right_section
    if any(not masks.is_subset(fixed, m.members) for m in cover.members):
        return None
    # a subgroup containing the other factor is (its section) x (that factor)
    xs = [Subgroup(H, section(m)) for m in cover.members]
    if len({x.members for x in xs}) != len(xs):
        return None
    fc = make_cover(H, xs)
    if not fc.verified or is_cyclic(H) or len(fc) != sigma_of(H).value:
        return None
    return fc


def _match_case3(ps: ProductStructure, cover: Cover) -> Optional[tuple[int, Subgroup, Subgroup]]:
    target = cover.mask_set()
    for p in sorted(common_prime_quotients(ps.left, ps.right)):
        if p + 1 != len(cover):
            continue
        for n1 in prime_index_normals(ps.left, p):
            for n2 in prime_index_normals(ps.right, p):
                if build_cover_case3(ps, n1, n2).mask_set() == target:
                    return p, n1, n2
    return None


def classify_cover(
    ps: ProductStructure, cover: Cover, sigma: Union[SigmaResult, SigmaValue, None] = None
) -> CoverClassification:
    """Say which of the three product shapes a minimum cover has.

    Shapes 1 and 2 are tested before shape 3; a cover matching more than one
    description keeps the first label and the overlap is logged.
    """
    if cover.parent is not ps.group or not cover.verified or not is_cover(ps.group, cover.members):
        raise NotVerified("classification needs a verified cover of the product")
    value = _sigma_value(sigma) if sigma is not None else sigma_of(ps.group).value
    if len(cover) != value:
        raise WrongSize(f"cover has {len(cover)} members but sigma is {value}")
    result = None
    for side, case in ((1, Case.CASE1), (2, Case.CASE2)):
        fc = _factor_cover(ps, cover, side)
        if fc is not None:
            if result is None:
                result = CoverClassification(case, factor_cover=fc)
            else:
                log.info("cover matches both product shapes 1 and 2")
    m3 = _match_case3(ps, cover)
    if m3 is not None:
        p, n1, n2 = m3
        if result is None:
            result = CoverClassification(Case.CASE3, n1=n1, n2=n2, p=p)
        else:
            log.info("cover matches shape %d and shape 3 with p=%d", int(result.case), p)
    return result or CoverClassification(Case.UNCLASSIFIED)


def _sigma_value(sigma: Union[SigmaResult, SigmaValue]) -> SigmaValue:
    return sigma.value if isinstance(sigma, SigmaResult) else sigma


def kernel_of_case3_shape(ps: ProductStructure, cover: Cover) -> Optional[int]:
    """Prime p if the members are the p+1 maximal subgroups over their common
    intersection N with |G:N| = p^2, whether or not N is a product N1 x N2."""
    p = len(cover) - 1
    if not is_prime(p):
        return None
    G = ps.group
    if cover.intersection().index != p * p:
        return None
    if all(x.index == p and is_normal(G, x) for x in cover.members):
        return p
    return None


# -- lemma and proposition checks ---------------------------------------------


def check_lemma_effe(Y: Group, cover: Cover, F: Subgroup) -> bool:
    """If F X != Y for every member X, then F <= X for every member.

    Vacuously true when some member already satisfies F X = Y.
    """
    if all(F.product_size(x) < Y.order for x in cover.members):
        return all(masks.is_subset(F.members, x.members) for x in cover.members)
    return True


@dataclass
class TomkinsonReport:
    applicable: bool
    holds: bool
    reason: str = ""
    u_count: int = 0
    betas: list[int] = field(default_factory=list)

    def __bool__(self):
        return self.holds


def check_tomkinson(G: Group, N: Subgroup, cover: Cover) -> TomkinsonReport:
    """Split the members into U's (containing N) and V's (with V N = G).

    When the U's alone miss part of G, the smallest V-index is at most the
    number of V's; at equality all V-indices agree and every pairwise
    intersection of V's lies inside the union of the U's.
    """
    us, vs = [], []
    for x in cover.members:
        if masks.is_subset(N.members, x.members):
            us.append(x)
        elif x.product_size(N) == G.order:
            vs.append(x)
        else:
            return TomkinsonReport(False, True, "a member neither contains N nor supplements it")
    u_union = 0
    for u in us:
        u_union |= u.members
    if u_union == masks.full(G.order):
        return TomkinsonReport(False, True, "the members containing N already cover G", len(us))
    betas = sorted(v.index for v in vs)
    k = len(vs)
    report = TomkinsonReport(True, True, "", len(us), betas)
    if k == 0 or betas[0] > k:
        report.holds = False
        report.reason = f"smallest index {betas[0] if betas else None} exceeds {k}"
        return report
    if betas[0] == k:
        if betas[-1] != k:
            report.holds = False
            report.reason = "indices differ although the smallest equals k"
            return report
        for i in range(k):
            for j in range(i + 1, k):
                if not masks.is_subset(vs[i].members & vs[j].members, u_union):
                    report.holds = False
                    report.reason = "two V's meet outside the union of the U's"
                    return report
    return report


def prime_diagonal_containing(ps: ProductStructure, cover: Cover) -> Optional[int]:
    """Prime p if some member lies in a diagonal maximal subgroup of index p."""
    diagonals = prime_index_diagonals(ps)
    for x in cover.members:
        for d, h in diagonals:
            if masks.is_subset(x.members, h.members):
                return d.index_in_G
    return None


def check_prop_diagonal(ps: ProductStructure, cover: Cover, sigma: Union[SigmaResult, SigmaValue]) -> bool:
    """A member inside a diagonal maximal of prime index p forces sigma = p+1,
    every member normal of index p, and an intersection of index p^2."""
    p = prime_diagonal_containing(ps, cover)
    if p is None:
        return True
    G = ps.group
    return (
        _sigma_value(sigma) == p + 1
        and all(x.index == p and is_normal(G, x) for x in cover.members)
        and cover.intersection().index == p * p
    )


def check_prop_nodiagonal(ps: ProductStructure, cover: Cover) -> bool:
    """Without prime-index diagonal members, H1 x 1 or 1 x H2 lies in every member."""
    if prime_diagonal_containing(ps, cover) is not None:
        raise PreconditionViolated("a member lies in a diagonal maximal subgroup of prime index")
    meet = cover.intersection().members
    return masks.is_subset(ps.left_factor.members, meet) or masks.is_subset(ps.right_factor.members, meet)
