import math

import numpy as np
import pytest

from groupcover import commutator_subgroup, direct_product, element_order, from_permutations, is_cyclic
from groupcover.errors import InvalidPermutation, InvalidTable, OrderCapExceeded
from groupcover.group import Group, group_from_rows, parse_permutation, read_table, write_table

from oracles import commutator_closure, element_orders, perm_closure


def test_single_involution():
    assert from_permutations(["(1 2)"]).order == 2


def test_sym3_matches_closure_oracle():
    G = from_permutations(["(1 2)", "(1 2 3)"], 3)
    oracle = perm_closure([parse_permutation("(1 2)", 3), parse_permutation("(1 2 3)", 3)], 3)
    assert G.order == len(oracle) == 6


def test_empty_generators_give_trivial_group():
    G = from_permutations([], 3)
    assert G.order == 1
    assert G.table.tolist() == [[0]]


def test_image_list_and_cycle_notation_agree():
    a = from_permutations([[2, 3, 1]])
    b = from_permutations(["(1 2 3)"])
    assert np.array_equal(a.table, b.table)


def test_invalid_permutation():
    with pytest.raises(InvalidPermutation):
        from_permutations([[1, 1, 2]])
    with pytest.raises(InvalidPermutation):
        from_permutations(["(1 2)(2 3)"], 3)


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        from_permutations(["(1 2)", "(1 2 3 4 5)"], 5, order_cap=100)


def test_identity_is_zero_and_table_invariants(groups):
    for expr in ["S4", "A4", "D12", "Q8", "C5 x S3"]:
        G = groups(expr)
        n = G.order
        t = G.table
        assert (t[0] == np.arange(n)).all() and (t[:, 0] == np.arange(n)).all()
        assert (np.sort(t, axis=1) == np.arange(n)).all()
        assert (np.sort(t, axis=0) == np.arange(n)[:, None]).all()
        assert (t[np.arange(n), G.inverses] == 0).all()


def test_deterministic_indexing():
    a = from_permutations(["(1 2)", "(1 2 3 4)"])
    b = from_permutations(["(1 2)", "(1 2 3 4)"])
    assert np.array_equal(a.table, b.table)
    assert a.labels == b.labels


def test_klein_four(groups):
    G, _ = direct_product(groups("C2"), groups("C2"))
    assert G.order == 4
    assert sum(element_order(G, g) <= 2 for g in range(4)) == 4
    assert not is_cyclic(G)


def test_c2_c3_is_cyclic(groups):
    G, _ = direct_product(groups("C2"), groups("C3"))
    assert G.order == 6
    assert max(element_orders(G.table.tolist())) == 6
    assert is_cyclic(G)


def test_s3_s3_order(groups):
    G, ps = direct_product(groups("S3"), groups("S3"))
    assert G.order == 36
    assert G.structure is ps


def test_product_structure_maps(groups):
    H1, H2 = groups("S3"), groups("C4")
    G, ps = direct_product(H1, H2)
    assert sorted(ps.pair_index(a, b) for a in range(6) for b in range(4)) == list(range(24))
    assert all(ps.project_left(ps.embed_left(h)) == h for h in range(6))
    assert all(ps.project_right(ps.embed_right(h)) == h for h in range(4))
    assert ps.left_factor.size == 6 and ps.right_factor.size == 4


def test_product_element_orders_are_lcm(groups):
    H1, H2 = groups("D8"), groups("S3")
    G, ps = direct_product(H1, H2)
    for g in range(G.order):
        a, b = ps.pair(g)
        assert element_order(G, g) == math.lcm(element_order(H1, a), element_order(H2, b))


def test_element_order_examples(groups):
    C4 = groups("C4")
    assert max(element_order(C4, g) for g in range(4)) == 4
    S3 = groups("S3")
    assert element_order(S3, 0) == 1
    transposition = S3.labels.index("(1 2)")
    assert element_order(S3, transposition) == element_orders(S3.table.tolist())[transposition] == 2


def test_is_cyclic_examples(groups):
    assert is_cyclic(groups("C6"))
    assert not is_cyclic(groups("C2 x C2"))
    assert is_cyclic(groups("C2 x C3"))


def test_commutator_subgroups(groups):
    assert commutator_subgroup(groups("C2 x C4")).is_trivial
    for expr, size in [("S3", 3), ("A4", 4)]:
        G = groups(expr)
        d = commutator_subgroup(G)
        assert d.size == size
        assert set(d.elements()) == commutator_closure(G.table.tolist())


def test_table_roundtrip(tmp_path, groups):
    G = groups("D8")
    path = tmp_path / "d8.txt"
    write_table(G, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "8" and len(lines) == 9
    H = read_table(path)
    assert np.array_equal(H.table, G.table)


def test_table_import_reroots_identity():
    # Z/3 written with the identity stored at index 2
    rows = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = group_from_rows(rows)
    assert G.order == 3
    assert G.table[0].tolist() == [0, 1, 2]


def test_bad_tables_are_rejected():
    with pytest.raises(InvalidTable):
        Group([[0, 1], [1, 1]])
    # a Latin square with identity that is not associative
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(InvalidTable):
        Group(loop)
