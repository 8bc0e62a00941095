import pytest

from groupcover import (
    all_subgroups,
    is_normal,
    maximal_normal_subgroups,
    maximal_subgroups,
    normal_subgroups,
    quotient,
)
from groupcover.errors import LatticeCapExceeded, NotNormal
from groupcover.lattice import is_simple
from groupcover.subgroup import Subgroup, generate, whole

from oracles import all_subgroups_by_subsets, is_normal_by_conjugation, maximal_from


def _sets(subgroups):
    return {frozenset(h.elements()) for h in subgroups}


def test_c4_lattice(groups):
    subs = all_subgroups(groups("C4"))
    assert [h.size for h in subs] == [1, 2, 4]


@pytest.mark.parametrize("expr", ["S3", "C2 x C2", "D8", "Q8", "C3 x C3", "C2 x C4"])
def test_lattice_matches_subset_oracle(groups, expr):
    G = groups(expr)
    assert _sets(all_subgroups(G)) == set(all_subgroups_by_subsets(G.table.tolist()))


def test_lattice_counts(groups):
    assert len(all_subgroups(groups("S3"))) == 6
    assert len(all_subgroups(groups("C2 x C2"))) == 5


def test_lattice_is_sorted_and_closed(groups):
    subs = all_subgroups(groups("A4"))
    assert subs == sorted(subs, key=Subgroup.sort_key)
    for h in subs:
        assert generate(h.parent, h.elements()).members == h.members
        assert 12 % h.size == 0


def test_lattice_cap(groups):
    with pytest.raises(LatticeCapExceeded):
        all_subgroups(groups("S6"))


def test_maximal_examples(groups):
    assert [h.size for h in maximal_subgroups(groups("C4"))] == [2]
    v4 = maximal_subgroups(groups("C2 x C2"), use_product=False)
    assert [h.size for h in v4] == [2, 2, 2]
    s3 = maximal_subgroups(groups("S3"))
    assert sorted(h.size for h in s3) == [2, 2, 2, 3]
    table = groups("S3").table.tolist()
    assert _sets(s3) == set(maximal_from(all_subgroups_by_subsets(table), 6))


def test_normal_subgroups_s3(groups):
    G = groups("S3")
    assert [h.size for h in normal_subgroups(G)] == [1, 3, 6]
    assert [h.size for h in maximal_normal_subgroups(G)] == [3]


def test_maximal_normal_examples(groups):
    assert len(maximal_normal_subgroups(groups("C2 x C2"))) == 3
    assert [h.size for h in maximal_normal_subgroups(groups("A4"))] == [4]


@pytest.mark.parametrize("expr", ["S3", "A4", "D8", "Q8", "D12", "S4", "C2 x S3"])
def test_normal_subgroups_match_conjugation_oracle(groups, expr):
    G = groups(expr)
    table = G.table.tolist()
    expected = {frozenset(h.elements()) for h in all_subgroups(G) if is_normal_by_conjugation(table, set(h.elements()))}
    assert _sets(normal_subgroups(G)) == expected


def test_is_normal_examples(groups):
    G = groups("S3")
    c3 = next(h for h in all_subgroups(G) if h.size == 3)
    assert is_normal(G, c3)
    assert not any(is_normal(G, h) for h in all_subgroups(G) if h.size == 2)
    assert is_normal(G, whole(G))


def test_quotient_examples(groups):
    S3 = groups("S3")
    Q, epi = quotient(S3, maximal_normal_subgroups(S3)[0])
    assert Q.order == 2
    V = groups("C2 x C2")
    for n in maximal_normal_subgroups(V):
        assert quotient(V, n)[0].order == 2
    A4 = groups("A4")
    Q, epi = quotient(A4, maximal_normal_subgroups(A4)[0])
    assert Q.order == 3
    assert epi.is_homomorphism()
    assert epi.kernel.size * Q.order == A4.order
    assert {g for g in range(12) if epi(g) == 0} == set(epi.kernel.elements())


def test_quotient_coset_labelling(groups):
    G = groups("D8")
    N = next(h for h in normal_subgroups(G) if h.size == 2)
    Q, epi = quotient(G, N)
    reps = [min(g for g in range(8) if epi(g) == c) for c in range(Q.order)]
    assert reps == sorted(reps) and reps[0] == 0


def test_quotient_requires_normal(groups):
    G = groups("S3")
    c2 = next(h for h in all_subgroups(G) if h.size == 2)
    with pytest.raises(NotNormal):
        quotient(G, c2)


@pytest.mark.parametrize("expr", ["S3", "A4", "D8", "S4", "C2 x C2 x C3", "A5"])
def test_maximal_normal_quotients_are_simple(groups, expr):
    G = groups(expr)
    for n in maximal_normal_subgroups(G):
        assert is_simple(quotient(G, n)[0])
