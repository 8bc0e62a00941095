import json

import pytest

from groupcover import (
    INFINITY,
    all_subgroups,
    build,
    enumerate_minimum_covers,
    greedy_cover,
    is_cyclic,
    is_cover,
    lift_cover,
    maximal_normal_subgroups,
    maximal_subgroups,
    normal_subgroups,
    quotient,
    sigma_bruteforce,
)
from groupcover.cover import Cover, make_cover, reduced_points, sigma_min
from groupcover.errors import CapExceeded, CyclicGroupError, EmptyMaximalList, ForeignSubgroup, TargetMismatch
from groupcover.lattice import identity_epimorphism

from oracles import covers_of_size, min_cover_size


def _elem_sets(subgroups):
    return [frozenset(h.elements()) for h in subgroups]


def test_infinity_arithmetic():
    assert INFINITY > 10**9 and not INFINITY < 3
    assert sigma_min(INFINITY, 4) == 4
    assert sigma_min(INFINITY, INFINITY) is INFINITY
    assert str(INFINITY) == "infinity"


def test_is_cover_examples(groups):
    V = groups("C2 x C2")
    m = maximal_subgroups(V)
    assert is_cover(V, m)
    assert not is_cover(V, m[:2])
    S3 = groups("S3")
    assert is_cover(S3, maximal_subgroups(S3))


def test_is_cover_rejects_whole_group_and_foreign_members(groups):
    S3 = groups("S3")
    assert not is_cover(S3, all_subgroups(S3))
    with pytest.raises(ForeignSubgroup):
        is_cover(S3, maximal_subgroups(groups("C2 x C2")))


def test_sigma_examples(groups):
    C6 = groups("C6")
    r = sigma_bruteforce(C6, maximal_subgroups(C6))
    assert r.value is INFINITY and r.witness is None
    G = groups("C3 x C3")
    r = sigma_bruteforce(G, maximal_subgroups(G))
    assert r.value == 4 and r.witness.verified
    S3 = groups("S3")
    r = sigma_bruteforce(S3, maximal_subgroups(S3))
    assert r.value == 4 == min_cover_size(6, _elem_sets(maximal_subgroups(S3)))


def test_trivial_group_has_no_maximals():
    G = build("C1")
    with pytest.raises(EmptyMaximalList):
        sigma_bruteforce(G, [])


@pytest.mark.parametrize("expr", ["D8", "Q8", "A4", "D12", "C2 x C4", "S3 x C3", "D10", "C2 x Q8", "S4"])
def test_sigma_matches_exhaustive_search(groups, expr):
    G = groups(expr)
    maximals = maximal_subgroups(G)
    r = sigma_bruteforce(G, maximals)
    assert r.value == min_cover_size(G.order, _elem_sets(maximals))
    assert r.witness.verified and len(r.witness) == r.value


def test_greedy_examples(groups):
    assert len(greedy_cover(groups("C2 x C2"), maximal_subgroups(groups("C2 x C2")))) == 3
    S3 = groups("S3")
    g = greedy_cover(S3, maximal_subgroups(S3))
    assert len(g) == 4 and sorted(h.size for h in g.members) == [2, 2, 2, 3]
    C5C5 = groups("C5 x C5")
    assert len(greedy_cover(C5C5, maximal_subgroups(C5C5))) == 6
    with pytest.raises(CyclicGroupError):
        greedy_cover(groups("C6"), maximal_subgroups(groups("C6")))


def test_enumerate_examples(groups):
    V = groups("C2 x C2")
    assert len(enumerate_minimum_covers(V, maximal_subgroups(V))) == 1
    proper = [h for h in all_subgroups(V) if h.is_proper]
    assert len(enumerate_minimum_covers(V, proper)) == 1
    S3 = groups("S3")
    (cover,) = enumerate_minimum_covers(S3, maximal_subgroups(S3))
    assert len(cover) == 4


@pytest.mark.parametrize("expr,pool", [("C2 x C4", "all"), ("D8", "all"), ("C3 x C3", "all"), ("C2 x C2 x C2", "max"), ("D12", "all")])
def test_enumerate_matches_combinations(groups, expr, pool):
    G = groups(expr)
    subs = maximal_subgroups(G) if pool == "max" else [h for h in all_subgroups(G) if h.is_proper]
    covers = enumerate_minimum_covers(G, subs)
    sigma = sigma_bruteforce(G, maximal_subgroups(G)).value
    expected = covers_of_size(G.order, _elem_sets(subs), sigma)
    assert {frozenset(frozenset(h.elements()) for h in c.members) for c in covers} == {frozenset(c) for c in expected}


def test_enumerate_cap(groups):
    G = groups("C3 x C3 x C3")
    with pytest.raises(CapExceeded):
        enumerate_minimum_covers(G, maximal_subgroups(G), cap=5)


def test_enumerate_rejects_cyclic(groups):
    with pytest.raises(CyclicGroupError):
        enumerate_minimum_covers(groups("C4"), maximal_subgroups(groups("C4")))


def test_lift_through_quotient(groups):
    G = groups("C2 x C4")
    ps = G.structure
    # the order-2 subgroup inside C4, embedded as 1 x C2
    N = next(n for n in normal_subgroups(G) if n.size == 2 and n <= ps.right_factor)
    Q, epi = quotient(G, N)
    assert Q.order == 4 and not is_cyclic(Q)
    qcover = sigma_bruteforce(Q, maximal_subgroups(Q)).witness
    lifted = lift_cover(qcover, epi)
    assert lifted.verified and len(lifted) == 3
    assert all(N <= h for h in lifted.members)


def test_lift_through_identity(groups):
    S3 = groups("S3")
    cover = sigma_bruteforce(S3, maximal_subgroups(S3)).witness
    lifted = lift_cover(cover, identity_epimorphism(S3))
    assert lifted.mask_set() == cover.mask_set()


def test_lift_target_mismatch(groups):
    S3 = groups("S3")
    cover = sigma_bruteforce(S3, maximal_subgroups(S3)).witness
    A4 = groups("A4")
    _, epi = quotient(A4, maximal_normal_subgroups(A4)[0])
    with pytest.raises(TargetMismatch):
        lift_cover(cover, epi)


@pytest.mark.parametrize("expr", ["S4", "A4 x C2", "D8 x C3", "Q8 x S3", "C4 x C4"])
def test_reduced_universe_is_sound(groups, expr):
    G = groups(expr)
    points = reduced_points(G)
    maximals = maximal_subgroups(G)
    # covering the reduced points means covering everything, for every subfamily tried
    for k in range(1, min(len(maximals), 6) + 1):
        family = maximals[:k]
        on_points = all(any(h.members >> g & 1 for h in family) for g in points)
        assert on_points == is_cover(G, family)


def test_cover_json(groups):
    S3 = groups("S3")
    r = sigma_bruteforce(S3, maximal_subgroups(S3))
    data = json.loads(r.to_json("S3"))
    assert data["group"] == "S3" and data["sigma"] == 4 and data["method"] == "oracle"
    assert all(m.startswith("0x") for m in data["members"]) and len(data["members"]) == 4
    C6 = groups("C6")
    data = json.loads(sigma_bruteforce(C6, maximal_subgroups(C6)).to_json("C6"))
    assert data["sigma"] == "infinity"


def test_make_cover_flags_non_covers(groups):
    S3 = groups("S3")
    c = make_cover(S3, maximal_subgroups(S3)[:2])
    assert isinstance(c, Cover) and not c.verified
