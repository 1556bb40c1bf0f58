import pytest

from equivdiv.abelian import FinAbGroup
from equivdiv.errors import GroupTooLarge
from equivdiv.groupspec import realize
from equivdiv.oracle import brute_force_h2


def test_c2_mod2():
    assert brute_force_h2(realize("C2"), 2) == FinAbGroup.cyclic(2)


def test_c3_mod3():
    assert brute_force_h2(realize("C3"), 3) == FinAbGroup.cyclic(3)


def test_v4_mod4():
    # H^2(V4, Z/4) = Z/2 + Z/2 (from H^2(V4, Z)) + Z/2 (Tor of H^3 = Z/2)
    A = brute_force_h2(realize("V4"), 4)
    assert A.invariants == (2, 2, 2)
    # the Z/2 of the multiplier is the part coming from H^3(V4, Z) = Z/2
    assert A.order() // 4 == 2


def test_coprime_modulus_kills():
    assert brute_force_h2(realize("C4"), 3).is_trivial
    assert brute_force_h2(realize("S3"), 5).is_trivial


def test_trivial_group():
    assert brute_force_h2(realize("C1"), 4).is_trivial


def test_too_large():
    with pytest.raises(GroupTooLarge):
        brute_force_h2(realize("C13"), 2)
