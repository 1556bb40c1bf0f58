from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from equivdiv.abelian import FinAbGroup
from equivdiv.errors import (
    InadmissibleC,
    InertiaNotSubgroup,
    InputError,
    NotFree,
    NotNormal,
    TameInertiaNotCyclic,
)
from equivdiv.groupspec import realize
from equivdiv.obstruction import (
    OrbitRecord,
    RamificationDatum,
    b_invariant,
    c_constraints,
    datum_from_orders,
    godown_check,
    h1_div0,
    h1_div0_bar_check,
    h1_div0_cohomology,
    obstruction_report,
    pic0_coker_order,
    pic_coker,
    scenario_from_json,
)


def test_pic_coker(a5):
    assert pic_coker(a5, 0) == FinAbGroup.cyclic(2)
    assert pic_coker(a5, 2).is_trivial
    for spec in ["S3", "D5", "C12", "C7"]:
        for char in (0, 2, 3):
            assert pic_coker(realize(spec), char).is_trivial


def test_b_a5(a5):
    assert b_invariant(a5, datum_from_orders([1, 2, 3, 5])) == 2
    assert h1_div0(a5, datum_from_orders([2, 3, 5])) == FinAbGroup.cyclic(2)


def test_b_a5_char2(a5):
    ram = RamificationDatum([OrbitRecord("A4", False), OrbitRecord("C5", True)])
    ram.resolve(a5, 2)
    assert b_invariant(a5, ram) == 1


def test_totally_ramified():
    G = realize("S3")
    ram = RamificationDatum([OrbitRecord(G.whole())])
    assert b_invariant(G, ram) == 1
    assert h1_div0(G, ram).is_trivial
    assert h1_div0_bar_check(G, ram).is_trivial
    assert c_constraints(G, 3, ram) == [1]


@pytest.mark.parametrize("r", [2, 3, 4])
def test_elementary_abelian_b(r):
    G = realize(f"EA(2,{r})")
    free = RamificationDatum([])
    assert b_invariant(G, free) == 2**r
    assert h1_div0(G, free) == FinAbGroup.cyclic(2**r)
    fixed = datum_from_orders([2])
    fixed.resolve(G, 3)
    assert b_invariant(G, fixed) == 2 ** (r - 1)
    assert c_constraints(G, 0, free) == [1, 2]


def test_bar_check_matches_formula():
    cases = [
        ("C2", []),
        ("S3", [2, 2, 3]),
        ("D4", [2, 4]),
        ("A4", [2, 3]),
        ("EA(2,3)", [2]),
        ("C6", [3]),
    ]
    for spec, orders in cases:
        G = realize(spec)
        ram = datum_from_orders(orders)
        assert h1_div0_bar_check(G, ram) == h1_div0(G, ram), spec


def test_bar_check_a5(a5):
    assert h1_div0_bar_check(a5, datum_from_orders([2, 3, 5])) == FinAbGroup.cyclic(2)


def test_div0_cohomology_matches_formula():
    for spec, orders in [("C2", []), ("V4", [2]), ("S3", [2, 3]), ("C4", [2])]:
        G = realize(spec)
        ram = datum_from_orders(orders)
        assert h1_div0_cohomology(G, ram) == h1_div0(G, ram), spec


def test_c2_free_bar_check():
    assert h1_div0_bar_check(realize("C2"), RamificationDatum([])) == FinAbGroup.cyclic(2)


def test_tame_rule():
    G = realize("V4")
    ram = RamificationDatum([OrbitRecord("V4", False)])
    with pytest.raises(TameInertiaNotCyclic):
        ram.resolve(G, 0)
    with pytest.raises(TameInertiaNotCyclic):
        ram.resolve(G, 3)
    # wild in characteristic 2, so accepted
    assert ram.resolve(G, 2)[0].order == 4


def test_flag_mismatch():
    G = realize("V4")
    with pytest.raises(InertiaNotSubgroup):
        RamificationDatum([OrbitRecord("V4", True)]).resolve(G, 2)


def test_inertia_must_divide():
    with pytest.raises(InertiaNotSubgroup):
        b_invariant(realize("S3"), datum_from_orders([4]))
    with pytest.raises(InertiaNotSubgroup):
        RamificationDatum([OrbitRecord("C4")]).resolve(realize("S3"))


def test_perm_inertia():
    G = realize("S4")
    ram = RamificationDatum([OrbitRecord("perm:(1 2 3 4)", True)])
    H = ram.resolve(G)[0]
    assert H.order == 4 and H.is_cyclic()


def test_c_constraints():
    V = realize("V4")
    assert c_constraints(V, 0, RamificationDatum([])) == [1, 2]
    assert c_constraints(realize("S3"), 0, RamificationDatum([])) == [1]
    assert c_constraints(realize("C5"), 0, RamificationDatum([])) == [1]


def test_pic0():
    V = realize("V4")
    free = RamificationDatum([])
    assert pic0_coker_order(V, 0, 2, free) == 1
    assert pic0_coker_order(V, 0, 1, free) == 2
    assert pic0_coker_order(realize("S3"), 0, 1) == 1
    with pytest.raises(InadmissibleC):
        pic0_coker_order(V, 0, 4, free)
    with pytest.raises(InadmissibleC):
        pic0_coker_order(realize("S3"), 0, 2)


def test_exactness_audit_random():
    for spec, orders in [("V4", []), ("EA(2,3)", []), ("D4", [2]), ("A4", []), ("C2xC4", [])]:
        G = realize(spec)
        ram = datum_from_orders(orders)
        h2 = pic_coker(G, 0)
        for c in c_constraints(G, 0, ram):
            assert pic0_coker_order(G, 0, c, ram) * c == h2.order()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from([1, 2, 3, 4, 6, 12]), min_size=1, max_size=4), st.sampled_from([1, 2, 3, 4, 6, 12]))
def test_b_monotone(orders, extra):
    G = realize("C12")
    ram = datum_from_orders(orders)
    b = b_invariant(G, ram)
    assert G.order % b == 0
    more = datum_from_orders(orders + [extra])
    assert b % b_invariant(G, more) == 0


def _scenario(spec, c, orbits=()):
    return scenario_from_json({"group": spec, "orbits": list(orbits), "declared_c": c})


def test_godown():
    X = _scenario("EA(2,3)", 1)
    Y = _scenario("V4", 1)
    assert godown_check(X, Y, "perm:(1 2)")
    X2, Y2 = _scenario("EA(2,3)", 2), _scenario("V4", 2)
    assert godown_check(X2, Y2, "perm:(1 2)")
    assert not godown_check(X, Y2, "perm:(1 2)")


def test_godown_errors():
    X = _scenario("S3", 1)
    Y = _scenario("C3", 1)
    with pytest.raises(NotNormal):
        godown_check(X, Y, "perm:(1 2)")
    X = _scenario("EA(2,3)", 1, [{"inertia": "perm:(1 2)", "cyclic": True}])
    with pytest.raises(NotFree):
        godown_check(X, _scenario("V4", 1), "perm:(1 2)")
    with pytest.raises(InputError):
        godown_check(_scenario("EA(2,3)", 1), _scenario("C4", 1), "perm:(1 2)")


def test_report(a5):
    rep = obstruction_report(a5, 0, datum_from_orders([2, 3, 5]), declared_c=2)
    js = rep.to_json()
    assert list(js) == [
        "group",
        "char",
        "h2_units",
        "b",
        "h1_div0",
        "c_divisors",
        "pic_coker",
        "pic0_coker_order_range",
        "declared_c",
        "pic0_coker_order",
    ]
    assert js["b"] == 2 and js["pic0_coker_order"] == 1


def test_scenario_needs_group():
    with pytest.raises(InputError):
        scenario_from_json({"orbits": []})
    with pytest.raises(InputError):
        scenario_from_json({"group": "C2", "orbits": [], "char": 4})
