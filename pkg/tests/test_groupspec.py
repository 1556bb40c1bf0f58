import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equivdiv.errors import ParseError, UnsupportedFamily
from equivdiv.groupspec import ElementaryAbelian, Named, Perm, Product, parse_group_spec, print_group_spec, realize


def test_named():
    assert parse_group_spec("C6") == Named("C", 6)
    assert parse_group_spec("EA(2,3)") == ElementaryAbelian(2, 3)
    assert parse_group_spec("C2xC2") == Product((Named("C", 2), Named("C", 2)))


def test_realize_examples():
    C6 = realize("C6")
    assert C6.order == 6 and C6.whole().is_cyclic()
    K = realize("C2xC2")
    assert K.order == 4 and K.exponent() == 2
    assert realize("A5").order == 60
    assert realize("D5").order == 10
    assert realize("Q8").order == 8 and realize("Q8").exponent() == 4


@pytest.mark.parametrize("p,r", [(2, 1), (2, 3), (3, 2), (5, 1), (2, 5)])
def test_elementary_abelian(p, r):
    G = realize(f"EA({p},{r})")
    assert G.order == p**r
    assert all(G.element_order(g) == p for g in range(1, G.order))


@pytest.mark.parametrize("n", range(1, 13))
def test_cyclic_and_dihedral_orders(n):
    assert realize(f"C{n}").whole().is_cyclic()
    assert realize(f"C{n}").order == n
    assert realize(f"D{n}").order == 2 * n


def test_symmetric_alternating_orders():
    assert [realize(f"S{n}").order for n in range(1, 6)] == [1, 2, 6, 24, 120]
    assert [realize(f"A{n}").order for n in range(1, 6)] == [1, 1, 3, 12, 60]


def test_products_on_disjoint_points():
    G = realize("S3xC2")
    assert G.degree == 5
    assert G.order == 12


def test_perm_spec():
    spec = parse_group_spec("perm:(1 2 3 4 5),(1 2 3)")
    assert isinstance(spec, Perm)
    assert realize(spec).order == 60


@pytest.mark.parametrize("text,pos", [("C", 1), ("C2x", 3), ("C2yC3", 2), ("", 0), ("2", 0), ("perm:(1 2", 5)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_group_spec(text)
    assert info.value.position == pos


@pytest.mark.parametrize("text", ["Q16", "B3", "V8", "EA(4,2)"])
def test_unsupported(text):
    with pytest.raises(UnsupportedFamily):
        parse_group_spec(text)


names = st.one_of(
    st.builds(Named, st.sampled_from("CDSA"), st.integers(1, 30)),
    st.just(Named("Q", 8)),
    st.just(Named("V", 4)),
    st.builds(ElementaryAbelian, st.sampled_from([2, 3, 5, 7]), st.integers(1, 6)),
)
products = st.lists(names, min_size=2, max_size=4).map(lambda fs: Product(tuple(fs)))
perm_gens = st.permutations(list(range(6))).map(lambda p: tuple(p))


@settings(max_examples=200, deadline=None)
@given(st.one_of(names, products))
def test_round_trip(spec):
    assert parse_group_spec(print_group_spec(spec)) == spec


@settings(max_examples=100, deadline=None)
@given(st.lists(perm_gens, min_size=1, max_size=3))
def test_perm_round_trip(perms):
    from equivdiv.groups import cycle_string

    spec = parse_group_spec("perm:" + ",".join(cycle_string(p) for p in perms))
    assert parse_group_spec(print_group_spec(spec)) == spec
