import pytest

from equivdiv.errors import ClosureExceedsCap, InvalidPermutation, NotASubgroup
from equivdiv.groups import FiniteGroup, all_sylow_cyclic, cosets, cycle_string, parse_cycles, sylow_subgroup
from equivdiv.groupspec import realize


def test_empty_generators_give_trivial_group():
    G = FiniteGroup.from_permutations([])
    assert G.order == 1
    assert G.check_axioms()


def test_a5_from_cycles():
    G = FiniteGroup.from_permutations(["(1 2 3 4 5)", "(1 2 3)"])
    assert G.order == 60
    assert G.exponent() == 30
    # orbit-stabilizer: point 1 has orbit of size 5, stabilizer A4
    stab = [g for g in range(G.order) if G.labels[g][0] == 0]
    assert len(stab) == 12


def test_klein_exponent_two():
    G = FiniteGroup.from_permutations(["(1 2)", "(3 4)"])
    assert G.order == 4
    assert all(G.element_order(g) == 2 for g in range(1, 4))


def test_identity_is_zero_and_bfs_ids():
    G = realize("S4")
    assert G.labels[0] == tuple(range(4))
    assert G.gens == (1, 2)
    parent = G.bfs_parent
    assert all(h < x for x, p in parent.items() if p for h in [p[0]])


def test_axioms_exhaustive():
    for spec in ["C7", "S3", "D4", "Q8", "A4", "C2xC6", "S4", "EA(2,4)", "D8", "A5"]:
        assert realize(spec).check_axioms(), spec


def test_repeated_point_rejected():
    with pytest.raises(InvalidPermutation):
        parse_cycles("(1 2 1)")


def test_cycle_round_trip():
    p = parse_cycles("(1 3)(2 5 4)")
    assert cycle_string(p) == "(1 3)(2 5 4)"
    assert cycle_string(tuple(range(4))) == "()"


def test_cap():
    with pytest.raises(ClosureExceedsCap):
        realize("S6")
    assert realize("S6", cap=720).order == 720


def test_sylow_examples(a5):
    assert sylow_subgroup(a5, 2).order == 4
    assert sylow_subgroup(a5, 5).order == 5
    assert sylow_subgroup(realize("C6"), 3).order == 3
    V = realize("V4")
    assert sylow_subgroup(V, 2).order == 4
    assert sylow_subgroup(V, 3).order == 1


def test_sylow_orders_full_prime_part():
    for spec in ["S4", "D6", "Q8xC3", "C2xA4", "D8"]:
        G = realize(spec)
        for p in G.prime_divisors():
            P = sylow_subgroup(G, p)
            assert P.is_valid()
            n = G.order
            while n % p == 0:
                n //= p
            assert P.order == G.order // n


def test_all_sylow_cyclic():
    assert all_sylow_cyclic(realize("S3"))
    assert not all_sylow_cyclic(realize("V4"))
    assert all_sylow_cyclic(realize("C12"))
    assert all_sylow_cyclic(realize("D5"))
    assert not all_sylow_cyclic(realize("Q8"))


def test_cosets_partition():
    G = realize("S4")
    for H in G.find_subgroups():
        cs = cosets(G, H)
        assert G.order == H.order * len(cs)
        assert sorted(x for c in cs for x in c) == list(range(G.order))
        assert [c[0] for c in cs] == sorted(c[0] for c in cs)


def test_coset_examples(a5):
    assert len(cosets(a5, a5.whole())) == 1
    assert len(cosets(a5, a5.trivial_subgroup())) == 60
    assert len(cosets(a5, sylow_subgroup(a5, 5))) == 12


def test_right_cosets_are_right():
    G = realize("S3")
    H = G.subgroup([G.gens[1]])
    for c in cosets(G, H):
        x = c[0]
        assert set(c) == {int(G.mul[h, x]) for h in H.members}


def test_subgroup_from_members_checks_closure():
    G = realize("S3")
    with pytest.raises(NotASubgroup):
        G.subgroup_from_members([0, 1])


def test_normal_and_quotient():
    G = realize("EA(2,3)")
    N = G.subgroup([G.element_id("(1 2)")])
    assert N.is_normal()
    Q = G.whole().quotient_group(N)
    assert Q.order == 4
    assert Q.check_axioms()
    assert Q.abelian_invariants().invariants == (2, 2)


def test_abelian_invariants():
    assert realize("C2xC4").abelian_invariants().invariants == (2, 4)
    assert realize("C4xC6").abelian_invariants().invariants == (2, 12)
    assert realize("S4").abelian_invariants().invariants == (2,)
    assert realize("A5").abelian_invariants().is_trivial
    assert realize("Q8").abelian_invariants().invariants == (2, 2)
