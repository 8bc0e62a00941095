import pytest

from groupcover import build
from groupcover.catalog import FACTORS, FULL_POOL_TIER, LATTICE_TIER
from groupcover.dsl import Alternating, Cyclic, Dihedral, Product, Quaternion, Symmetric, evaluate, parse
from groupcover.errors import CapError, ExprSyntaxError
from groupcover.group import is_cyclic


def test_parse_examples():
    assert parse("S3 x C5") == Product(Symmetric(3), Cyclic(5))
    assert parse("(C2xC2) x C3") == Product(Product(Cyclic(2), Cyclic(2)), Cyclic(3))
    assert parse("C2 x C2 x C3") == parse("(C2 x C2) x C3")
    assert parse("C2 x (C2 x C3)") == Product(Cyclic(2), Product(Cyclic(2), Cyclic(3)))
    assert parse("Q8") == Quaternion()
    assert parse("A4") == Alternating(4)
    assert parse("D12") == Dihedral(12)


def test_case_and_whitespace_insensitive():
    assert parse("  s3X c5 ") == parse("S3 x C5")
    assert parse("q8 x d8") == Product(Quaternion(), Dihedral(8))


@pytest.mark.parametrize("text,pos", [("D7", 0), ("C2 x D7", 5), ("C2 x", 4), ("C2 y", 3), ("(C2 x C3", 8), ("Q4", 0), ("C", 1)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.position == pos


def test_caps():
    with pytest.raises(CapError):
        parse("S7")
    with pytest.raises(CapError):
        parse("C513")
    with pytest.raises(CapError):
        parse("D130")
    with pytest.raises(CapError):
        build("S5 x S5", order_cap=5000)


@pytest.mark.parametrize("text", FACTORS + LATTICE_TIER + FULL_POOL_TIER + ["Q8 x (D8 x C3)"])
def test_round_trip(text):
    e = parse(text)
    assert parse(str(e)) == e


@pytest.mark.parametrize(
    "text,order,cyclic",
    [("C1", 1, True), ("C6", 6, True), ("S1", 1, True), ("S3", 6, False), ("A4", 12, False), ("A5", 60, False),
     ("D4", 4, False), ("D8", 8, False), ("D10", 10, False), ("Q8", 8, False), ("C2 x C3", 6, True),
     ("S3 x C5", 30, False), ("S4", 24, False)],
)
def test_evaluate_orders(text, order, cyclic):
    G = build(text)
    assert G.order == order
    assert is_cyclic(G) == cyclic
    assert (G.structure is not None) == isinstance(parse(text), Product)


def test_named_group_structure():
    # Q8 has a single involution, D8 has five
    q8, d8 = build("Q8"), build("D8")
    assert sum(int(o) == 2 for o in q8.orders) == 1
    assert sum(int(o) == 2 for o in d8.orders) == 5
    assert not q8.is_abelian() and not d8.is_abelian()
    assert build("D4").is_abelian() and max(build("D4").orders) == 2


def test_evaluate_accepts_ast():
    assert evaluate(Product(Cyclic(2), Symmetric(3))).order == 12
