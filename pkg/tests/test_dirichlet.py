import random
from fractions import Fraction

import pytest

from cubiczeta.arith import divisors, mobius, primes_up_to
from cubiczeta.characters import Character, all_characters, get_class_group
from cubiczeta.cyclotomic import CycElt
from cubiczeta.dirichlet import (
    Series,
    canon_value,
    character_ap,
    class_zeta_level_mismatches,
    conductor_sum_sides,
    dilate,
    dinv,
    dmul,
    euler_factor_sides,
    index_scale,
    l_coeffs,
    l_series_direct,
    l_star_coeffs,
    l_star_from_l,
    matching_cubic_character,
    partial_zeta_direct,
    point_count_ap,
    series_add,
    series_mismatches,
    values_equal,
    verify_conductor_sum,
    verify_euler_factor,
    verify_unit_count_series,
    zeta_series,
    zeta_shifted_series,
)


def trivial_char(D, f):
    g = get_class_group(D, f)
    return Character(g, tuple(0 for _ in g.invariants))


# ---------------------------------------------------------------------------
# series plumbing


def test_series_canonicalizes_values():
    s = Series(5, {1: CycElt.rational(3, 2), 2: Fraction(4, 2), 3: Fraction(1, 2)})
    assert s.coeff(1) == 2 and isinstance(s.coeff(1), int)
    assert s.coeff(2) == 2 and isinstance(s.coeff(2), int)
    assert s.coeff(3) == Fraction(1, 2)
    assert s.coeff(5) == 0
    with pytest.raises(IndexError):
        s.coeff(6)


def test_dmul_zeta_squared_is_divisor_count():
    z = zeta_series(60)
    zz = dmul(z, z)
    for n in range(1, 61):
        assert zz.coeff(n) == len(divisors(n))


def test_dinv_zeta_is_moebius():
    z = zeta_series(60)
    mu = dinv(z)
    for n in range(1, 61):
        assert mu.coeff(n) == mobius(n)
    one = dmul(z, mu)
    assert one.coeff(1) == 1
    assert all(one.coeff(n) == 0 for n in range(2, 61))


def test_dinv_random_rational_series_round_trip():
    rng = random.Random(1105)
    coeffs = {1: Fraction(rng.randint(1, 5))}
    for n in range(2, 30):
        coeffs[n] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    A = Series(29, coeffs)
    prod = dmul(A, dinv(A))
    assert prod.coeff(1) == 1
    assert all(prod.coeff(n) == 0 for n in range(2, 30))


def test_dilate_and_index_scale():
    z = zeta_shifted_series(30)
    cube = dilate(z, 3)  # zeta(3s - 1): a_{m^3} = m
    assert cube.coeff(8) == 2
    assert cube.coeff(27) == 3
    assert cube.coeff(6) == 0 and cube.coeff(1) == 1
    shifted = index_scale(zeta_series(30), 4)
    assert shifted.coeff(4) == 1 and shifted.coeff(8) == 1
    assert shifted.coeff(2) == 0 and shifted.coeff(6) == 0


def test_series_add_and_mismatches():
    A = zeta_series(10)
    B = series_add(A, Series(10, {3: 1}), 2)
    assert B.coeff(3) == 3
    mm = series_mismatches(A, B)
    assert mm == [(3, 1, 3)]
    assert values_equal(CycElt.rational(6, 5), 5)
    assert not values_equal(CycElt.root(3, 1), 1)


# ---------------------------------------------------------------------------
# L-functions against brute-force ideal scans


def test_split_maximal_trivial_l_star_is_zeta_squared():
    Ls = l_star_coeffs(trivial_char(1, 1), 40)
    for n in range(1, 41):
        assert Ls.coeff(n) == len(divisors(n))


def test_cubic_character_l_star_frozen_values():
    chi = Character(get_class_group(-23, 1), (1,))
    Ls = l_star_coeffs(chi, 60)
    assert Ls.coeff(2) == -1  # the two primes over 2 lie in conjugate classes
    assert Ls.coeff(3) == -1
    assert Ls.coeff(4) == 0  # zeta_3^2 + 1 + zeta_3
    assert Ls.coeff(6) == 1
    # primitive character at the maximal order: L = L* = direct scan
    assert series_mismatches(Ls, l_series_direct(chi, 60)) == []
    assert series_mismatches(Ls, l_coeffs(chi, 60)) == []


@pytest.mark.parametrize(
    "D,m",
    [(-3, 2), (-23, 2), (1, 7), (1, 9), (5, 6), (-4, 5)],
)
def test_l_coeffs_matches_direct_scan(D, m):
    g = get_class_group(D, m)
    for chi in all_characters(g):
        N = 40
        assert series_mismatches(l_coeffs(chi, N), l_series_direct(chi, N)) == []


def test_imprimitive_trivial_character_level_two():
    # conductor-2 order of Q(sqrt(-3)): no invertible ideals of norm 2 or 8,
    # three of norm 4
    L = l_coeffs(trivial_char(-3, 2), 60)
    assert L.coeff(2) == 0 and L.coeff(8) == 0
    assert L.coeff(4) == 3
    assert series_mismatches(L, l_series_direct(trivial_char(-3, 2), 60)) == []


def test_l_star_prime_to_conductor_scan():
    chi = Character(get_class_group(-23, 2), (1,))
    got = l_star_coeffs(chi, 50)
    oracle = l_series_direct(chi, 50, prime_to_conductor=True)
    assert series_mismatches(got, oracle) == []


def test_moebius_round_trip_at_composite_level():
    g = get_class_group(-23, 6)
    for exps in [(0,), (1,), (2,), (3,)]:
        chi = Character(g, exps)
        assert series_mismatches(l_star_from_l(chi, 50), l_star_coeffs(chi, 50)) == []


# ---------------------------------------------------------------------------
# partial zeta functions


def test_partial_zeta_sums_to_trivial_l():
    g = get_class_group(-23, 1)
    total = Series(40)
    for cls in g.elements():
        total = series_add(total, partial_zeta_direct(g, cls, 40))
    assert series_mismatches(total, l_coeffs(trivial_char(-23, 1), 40)) == []


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_class_zeta_level_decomposition(m):
    assert class_zeta_level_mismatches(-3, m, 60) == []


def test_class_zeta_level_decomposition_other_discs():
    assert class_zeta_level_mismatches(-4, 6, 40) == []
    assert class_zeta_level_mismatches(5, 4, 40) == []
    assert class_zeta_level_mismatches(1, 6, 40) == []


# ---------------------------------------------------------------------------
# unit-count generating series


@pytest.mark.parametrize("D", [-23, -4, -3, 1, 5])
def test_unit_count_series(D):
    for d in (1, 2, 6):
        assert verify_unit_count_series(D, d, 120) == []


# ---------------------------------------------------------------------------
# local Euler-factor rearrangement


def test_euler_factor_identity_across_algebras():
    cases = [
        (Character(get_class_group(-23, 1), (1,)), 1),
        (Character(get_class_group(1, 7), (1,)), 7),
        (Character(get_class_group(-3, 9), (1,)), 9),
        (trivial_char(5, 1), 1),
        (Character(get_class_group(229, 1), (1,)), 1),
    ]
    for chi, f in cases:
        for p in primes_up_to(49):
            if f % p == 0:
                continue
            assert verify_euler_factor(chi, p), (chi, p)


def test_euler_factor_rejects_even_order_and_bad_prime():
    chi4 = Character(get_class_group(-39, 1), (1,))  # order 4
    with pytest.raises(ValueError):
        euler_factor_sides(chi4, 5)
    chi2 = Character(get_class_group(-39, 1), (2,))  # order 2
    with pytest.raises(ValueError):
        euler_factor_sides(chi2, 5)
    chi = Character(get_class_group(1, 7), (1,))
    with pytest.raises(ValueError):
        euler_factor_sides(chi, 7)


def test_character_ap_values():
    chi = Character(get_class_group(-23, 1), (1,))
    assert character_ap(chi, 2) == -1
    assert character_ap(chi, 23) == 1  # ramified, odd order
    triv = trivial_char(-23, 1)
    assert character_ap(triv, 2) == 2  # split: 1 + 1
    assert character_ap(triv, 5) == 0  # inert


def test_point_counts_and_matching_character():
    assert point_count_ap((0, 1, 1, 0), 5) == 2  # x y (x + y): three zeros
    assert point_count_ap((1, 0, -1, -1), 2) == -1  # irreducible mod 2
    chi = matching_cubic_character((1, 0, -1, -1))
    assert chi is not None
    assert chi.group.order.alg.D == -23 and chi.group.order.f == 1
    assert matching_cubic_character((1, 0, 0, 0)) is None  # zero discriminant


# ---------------------------------------------------------------------------
# the conductor-sum identity


def test_conductor_sum_identity_smoke():
    assert verify_conductor_sum(trivial_char(-3, 1), 40) == []
    assert verify_conductor_sum(Character(get_class_group(-23, 1), (1,)), 30) == []
    assert verify_conductor_sum(Character(get_class_group(1, 7), (1,)), 30) == []
    assert verify_conductor_sum(trivial_char(5, 1), 40) == []


def test_conductor_sum_rejects_bad_characters():
    with pytest.raises(ValueError):
        conductor_sum_sides(Character(get_class_group(-39, 1), (1,)), 20)
    imprimitive = trivial_char(-3, 2)
    with pytest.raises(ValueError):
        conductor_sum_sides(imprimitive, 20)
