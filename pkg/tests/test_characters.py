import random
from math import gcd

import pytest

from cubiczeta.arith import divisors
from cubiczeta.characters import (
    Character,
    RootOfUnity,
    all_characters,
    conductor,
    cubic_characters,
    get_class_group,
    induce,
    is_primitive,
    kernel_coords,
    level_map,
    level_map_direct,
    primitive_part,
    restrict,
)
from cubiczeta.cyclotomic import CycElt
from cubiczeta.quadorders import factor_prime


def test_root_of_unity_reduction_and_mul():
    z = RootOfUnity(2, 12)
    assert (z.numerator, z.denominator) == (1, 6)
    assert z.mul(z) == RootOfUnity(1, 3)
    assert z.pow(6).is_one()
    assert z.order() == 6
    assert z.mul(z.inv()).is_one()
    assert RootOfUnity(5, 3) == RootOfUnity(2, 3)


def test_root_of_unity_as_cyc():
    z = RootOfUnity(1, 3)
    assert z.as_cyc(6) == CycElt.root(6, 2)
    assert RootOfUnity.one().as_cyc(5) == CycElt.rational(5, 1)
    with pytest.raises(ValueError):
        z.as_cyc(4)


def test_roots_of_unity_sum_to_zero():
    for e in range(2, 9):
        total = CycElt.rational(e, 0)
        for k in range(e):
            total = total + RootOfUnity(k, e).as_cyc(e)
        assert total.is_zero()


CASES = [(-23, 1), (-47, 1), (-39, 1), (-3, 9), (229, 1), (1, 7), (1, 9), (-23, 6)]


def test_expected_group_shapes():
    shapes = {
        (-23, 1): (3,),
        (-47, 1): (5,),
        (-39, 1): (4,),
        (-3, 9): (3,),
        (229, 1): (3,),
        (1, 7): (3,),
        (1, 9): (3,),
        (-23, 6): (6,),
    }
    for key, want in shapes.items():
        assert get_class_group(*key).invariants == want


def test_get_class_group_is_cached():
    assert get_class_group(-23, 1) is get_class_group(-23, 1)


def test_character_multiplicative_on_random_pairs():
    rng = random.Random(20260825)
    for D, f in CASES:
        grp = get_class_group(D, f)
        elements = grp.elements()
        for chi in all_characters(grp):
            for _ in range(20):
                c1 = rng.choice(elements)
                c2 = rng.choice(elements)
                assert chi.value(grp.compose(c1, c2)) == chi.value(c1).mul(chi.value(c2))


def test_character_on_conjugate_prime_pair():
    grp = get_class_group(-23, 1)
    kind, primes = factor_prime(grp.order, 2)
    assert kind == "split"
    for chi in all_characters(grp):
        v = chi.value_on_ideal(primes[0]).mul(chi.value_on_ideal(primes[1]))
        assert v.is_one()


def test_orthogonality_sum_over_group():
    for D, f in CASES:
        grp = get_class_group(D, f)
        e = 1
        for d in grp.invariants:
            e = e * d // gcd(e, d)
        for chi in all_characters(grp):
            total = CycElt.rational(e, 0)
            for c in grp.elements():
                total = total + chi.value(c).as_cyc(e)
            if chi.is_trivial():
                assert total == CycElt.rational(e, grp.h)
            else:
                assert total.is_zero()


def test_orthogonality_sum_over_characters():
    for D, f in CASES:
        grp = get_class_group(D, f)
        e = 1
        for d in grp.invariants:
            e = e * d // gcd(e, d)
        ident = tuple(0 for _ in grp.invariants)
        for c in grp.elements():
            total = CycElt.rational(e, 0)
            for chi in all_characters(grp):
                total = total + chi.value(c).as_cyc(e)
            if c == ident:
                assert total == CycElt.rational(e, grp.h)
            else:
                assert total.is_zero()


def test_all_characters_count_and_closure():
    for D, f in CASES:
        grp = get_class_group(D, f)
        chars = all_characters(grp)
        assert len(chars) == grp.h
        assert len(set(chars)) == grp.h
        seen = set(chars)
        for a in chars[:4]:
            for b in chars[:4]:
                assert a.mul(b) in seen
                assert a.inverse() in seen


def test_cubic_characters_counts():
    want = {
        (-23, 1): 3,
        (-47, 1): 1,
        (-39, 1): 1,
        (-3, 9): 3,
        (229, 1): 3,
        (1, 7): 3,
        (1, 9): 3,
        (-23, 6): 3,
    }
    for key, n in want.items():
        grp = get_class_group(*key)
        cubics = cubic_characters(grp)
        assert len(cubics) == n
        for chi in cubics:
            assert chi.order() in (1, 3)
            assert chi.pow(3).is_trivial()
            assert chi.conjugate() in cubics
        # nothing cubic was missed
        assert sum(1 for chi in all_characters(grp) if chi.pow(3).is_trivial()) == n


def test_level_map_identity_and_direct_agree():
    for D, f in CASES:
        grp = get_class_group(D, f)
        phi = level_map(grp, grp)
        for c in grp.elements():
            assert phi(c) == c
    for D, m, mp in [(-23, 6, 2), (-23, 6, 3), (-3, 9, 3), (-4, 10, 5), (5, 12, 6)]:
        big = get_class_group(D, m)
        small = get_class_group(D, mp)
        phi = level_map(big, small)
        phi0 = level_map_direct(big, small)
        for c in big.elements():
            assert phi(c) == phi0(c)


def test_level_map_composition_and_surjectivity():
    for D in (-23, -3, 5):
        g1 = get_class_group(D, 1)
        g2 = get_class_group(D, 2)
        g6 = get_class_group(D, 6)
        step1 = level_map(g6, g2)
        step2 = level_map(g2, g1)
        whole = level_map(g6, g1)
        images = set()
        for c in g6.elements():
            assert step2(step1(c)) == whole(c)
            images.add(step1(c))
        assert len(images) == g2.h


def test_kernel_product_rule():
    # kernels multiply the way gcds of levels do
    for D in (-3, -4, 5):
        for m in range(1, 13):
            big = get_class_group(D, m)
            divs = divisors(m)
            kernels = {}
            for mp in divs:
                kernels[mp] = set(kernel_coords(big, get_class_group(D, mp)))
            for c in divs:
                for d in divs:
                    product = {
                        big.compose(a, b) for a in kernels[c] for b in kernels[d]
                    }
                    assert product == kernels[gcd(c, d)]


def test_induce_restrict_round_trip():
    for D, m, mp in [(-23, 6, 1), (-23, 6, 2), (-3, 9, 3), (1, 9, 3), (5, 12, 4)]:
        big = get_class_group(D, m)
        small = get_class_group(D, mp)
        for psi in all_characters(small):
            chi = induce(psi, big)
            assert restrict(chi, small) == psi
            assert chi.order() == psi.order()
            assert conductor(chi) == conductor(psi)


def test_restrict_rejects_characters_with_kernel_support():
    big = get_class_group(-3, 9)  # order 3; level maps to 1 and 3 kill everything
    small = get_class_group(-3, 3)
    for chi in all_characters(big):
        if chi.is_trivial():
            assert restrict(chi, small).is_trivial()
        else:
            with pytest.raises(ValueError):
                restrict(chi, small)


def test_conductor_exhaustive_at_level_nine():
    big = get_class_group(-3, 9)
    for chi in all_characters(big):
        want = 1 if chi.is_trivial() else 9
        assert conductor(chi) == want
        assert is_primitive(chi) == (want == 9)


def test_conductor_matches_brute_force_search():
    # smallest level from which the character is induced
    for D, m in [(-23, 6), (-3, 9), (1, 9), (5, 12), (-4, 10)]:
        big = get_class_group(D, m)
        for chi in all_characters(big):
            found = None
            for mp in divisors(m):
                small = get_class_group(D, mp)
                if any(induce(psi, big) == chi for psi in all_characters(small)):
                    found = mp
                    break
            assert conductor(chi) == found


def test_primitive_part_is_primitive_and_induces_back():
    for D, m in [(-23, 6), (-3, 9), (1, 9), (5, 12)]:
        big = get_class_group(D, m)
        for chi in all_characters(big):
            psi = primitive_part(chi)
            assert is_primitive(psi)
            assert psi.group.order.f == conductor(chi)
            assert induce(psi, big) == chi


def test_every_character_has_unique_primitive_source():
    for D, m in [(-23, 6), (-3, 9)]:
        big = get_class_group(D, m)
        sources = {}
        for mp in divisors(m):
            small = get_class_group(D, mp)
            for psi in all_characters(small):
                if not is_primitive(psi):
                    continue
                chi = induce(psi, big)
                assert chi not in sources
                sources[chi] = psi
        assert len(sources) == big.h


def test_trivial_character_at_higher_level_is_imprimitive():
    grp = get_class_group(-3, 2)
    (chi,) = all_characters(grp)
    assert chi.is_trivial()
    assert conductor(chi) == 1
    assert not is_primitive(chi)
    assert is_primitive(all_characters(get_class_group(-3, 1))[0])
