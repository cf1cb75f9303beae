import random
from fractions import Fraction
from math import gcd

import pytest

from cubiczeta.dirichlet import Series, dmul, root_to_value, series_mismatches, vadd, vmul
from cubiczeta.quadlat import QuadAlgebra
from cubiczeta.quadorders import QuadOrder, ideals_of_norm, u_count
from cubiczeta.splitorders import (
    ProdLattice,
    SplitOrder,
    _subgroups_mod,
    brute_force_ideals,
    canon_tuple,
    class_level_mismatches,
    class_tuple,
    class_tuples,
    connecting_multiplier,
    coset_class_count,
    dirichlet_characters,
    ideal_l_series,
    inversion_mismatches,
    l_level_sum,
    l_star_mobius,
    l_star_product,
    level_identity_mismatches,
    multiplier_congruence_errors,
    prime_to_conductor_class_counts,
    product_identity_mismatches,
    rep_ideal,
    rep_isomorphism_errors,
    residue_tuple,
    tuple_char_value,
    tuple_characters,
    tuple_inv,
    tuple_mul,
    u_weight,
    u_weight_by_groups,
    unit_ideal,
    unit_index,
    unit_weight_mismatches,
)


def F(x, y=1):
    return Fraction(x, y)


# ---------------------------------------------------------------------------
# lattices in Q^r


def test_from_generators_normalizes_to_primitive_hnf():
    L = ProdLattice.from_generators(2, [(F(1, 2), F(3, 2)), (F(0), F(3))])
    assert L.q == F(1, 2)
    assert L.rows == ((1, 3), (0, 6))
    assert L.covolume() == F(3, 2)
    assert L.contains((F(1, 2), F(3, 2)))
    assert L.contains((F(0), F(3)))
    assert not L.contains((F(1, 2), F(1, 2)))


def test_lattice_operations_round_trip():
    rng = random.Random(20260825)
    for _ in range(40):
        r = rng.choice([2, 3])
        gens = [
            tuple(F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(r))
            for _ in range(r + 1)
        ]
        try:
            L = ProdLattice.from_generators(r, gens)
        except ValueError:  # degenerate random generators
            continue
        # every generator is contained, and doubling then halving is stable
        assert all(L.contains(g) for g in gens)
        assert L.scale_rational(F(2)).scale_rational(F(1, 2)) == L
        s = tuple(F(rng.choice([1, -1]) * rng.randint(1, 3)) for _ in range(r))
        assert L.scale_elt(s).scale_elt(tuple(F(1) / x for x in s)) == L


def test_order_lattice_shape():
    O = SplitOrder(1, 5, with_infinity=True)
    assert O.r == 2
    assert O.lattice.covolume() == 5
    assert O.norm_of(O.lattice) == 1
    assert SplitOrder(2, 4, with_infinity=True).lattice.covolume() == 16
    assert O.is_invertible(unit_ideal(O, (2,)))


def test_colon_inverse_is_definitional():
    O = SplitOrder(2, 3, with_infinity=True)
    for t in [(1, 1), (2, 1), (2, 2)]:
        I = unit_ideal(O, t)
        assert I.mul(O.inverse_of(I)) == O.lattice


# ---------------------------------------------------------------------------
# subgroup enumeration behind the oracle

# classical subgroup counts of (Z/m)^r
SUBGROUP_COUNTS = {
    (2, 2): 5,
    (3, 2): 6,
    (4, 2): 15,
    (5, 2): 8,
    (6, 2): 30,
    (2, 3): 16,
    (3, 3): 28,
    (6, 3): 448,
}


def test_subgroup_counts():
    for (m, r), want in SUBGROUP_COUNTS.items():
        assert len(_subgroups_mod(m, r)) == want, (m, r)


def test_subgroup_rows_are_distinct_lattices():
    seen = set()
    for size, rows in _subgroups_mod(4, 2):
        key = tuple(tuple(row) for row in rows)
        assert key not in seen
        seen.add(key)


# ---------------------------------------------------------------------------
# the brute-force oracle


def test_norm_one_ideal_is_the_order():
    for n, m in [(1, 1), (1, 4), (2, 3)]:
        O = SplitOrder(n, m, with_infinity=True)
        found = brute_force_ideals(O, 1)
        assert len(found) == 1
        nrm, L = found[0]
        assert nrm == 1 and L == O.lattice
        assert class_tuple(O, L) == class_tuples(O)[0]


def test_oracle_guard_rejects_large_inputs():
    with pytest.raises(ValueError):
        brute_force_ideals(SplitOrder(3, 2, with_infinity=True), 5)
    with pytest.raises(ValueError):
        brute_force_ideals(SplitOrder(1, 7, with_infinity=True), 5)
    with pytest.raises(ValueError):
        brute_force_ideals(SplitOrder(1, 2, with_infinity=True), 61)


# totals of invertible integral ideals of index <= 30, per conductor
QUAD_TOTALS = {1: 111, 2: 53, 3: 72, 4: 53, 5: 88, 6: 36}


def test_oracle_matches_quadratic_layer():
    alg = QuadAlgebra(1)
    for m, total in QUAD_TOTALS.items():
        O = SplitOrder(1, m, with_infinity=True)
        mine = {}
        for nrm, lat in brute_force_ideals(O, 30):
            mine[nrm] = mine.get(nrm, 0) + 1
        Q = QuadOrder(alg, m)
        theirs = {}
        for j in range(1, 31):
            c = len(ideals_of_norm(Q, j))
            if c:
                theirs[j] = c
        assert mine == theirs, m
        assert sum(mine.values()) == total


PREFILTER_COUNTS = {(1, 2): 32, (1, 3): 47, (1, 4): 34, (2, 2): 41, (2, 3): 89}


def test_oracle_residue_size_prefilter_is_lossless():
    for (n, m), count in PREFILTER_COUNTS.items():
        O = SplitOrder(n, m, with_infinity=True)
        fast = brute_force_ideals(O, 20, prefilter=True)
        full = brute_force_ideals(O, 20, prefilter=False)
        assert fast == full
        assert len(fast) == count


# ---------------------------------------------------------------------------
# class tuples


def test_class_tuple_known_lattices():
    O5n = SplitOrder(1, 5, with_infinity=True)
    O5w = SplitOrder(1, 5, with_infinity=False)
    # integral ideal of norm 2: contents (1, 2), so class ratio 2
    L = ProdLattice(2, F(1), ((1, 6), (0, 10)))
    assert O5n.norm_of(L) == 2
    assert class_tuple(O5n, L) == (2,)
    assert class_tuple(O5w, L) == (2,)

    O3n = SplitOrder(1, 3, with_infinity=True)
    O3w = SplitOrder(1, 3, with_infinity=False)
    neg = O3n.lattice.scale_elt((1, -2))
    pos = O3n.lattice.scale_elt((1, 2))
    # the sign of the scaling is part of the narrow class but not the wide
    assert class_tuple(O3n, neg) == (2,)
    assert class_tuple(O3n, pos) == (1,)
    assert class_tuple(O3w, neg) == (1,)
    assert class_tuple(O3w, pos) == (1,)


def test_class_tuple_invariances():
    rng = random.Random(1641)
    orders = [
        SplitOrder(1, 5, with_infinity=True),
        SplitOrder(1, 4, with_infinity=False),
        SplitOrder(2, 3, with_infinity=True),
    ]
    for O in orders:
        pool = [L for _, L in brute_force_ideals(O, 12)]
        for _ in range(25):
            L = rng.choice(pool)
            t = class_tuple(O, L)
            # rational rescaling never moves the class
            q = F(rng.randint(1, 9), rng.randint(1, 9))
            assert class_tuple(O, L.scale_rational(q)) == t
            # neither does an all-positive principal scaling congruent to 1
            g = tuple(1 + O.m * rng.randint(0, 3) for _ in range(O.r))
            assert class_tuple(O, L.scale_elt(g)) == t
            # a global sign flip spans the same lattice
            assert class_tuple(O, L.scale_elt(tuple(-x for x in g))) == t


def test_group_tables():
    assert class_tuples(SplitOrder(1, 1, with_infinity=True)) == [(0,)]
    assert class_tuples(SplitOrder(1, 5, with_infinity=True)) == [(1,), (2,), (3,), (4,)]
    assert class_tuples(SplitOrder(1, 5, with_infinity=False)) == [(1,), (2,)]
    assert class_tuples(SplitOrder(2, 4, with_infinity=True)) == [
        (1, 1), (1, 3), (3, 1), (3, 3),
    ]


def test_group_sizes_match_totient_formula():
    def phi(m):
        return sum(1 for a in range(1, m + 1) if gcd(a, m) == 1)

    for n in (1, 2):
        for m in range(1, 7):
            narrow = len(class_tuples(SplitOrder(n, m, with_infinity=True)))
            wide = len(class_tuples(SplitOrder(n, m, with_infinity=False)))
            assert narrow == phi(m) ** n
            half = phi(m) // 2 if m > 2 else phi(m)
            assert wide == half**n


def test_unit_signs():
    assert SplitOrder(1, 2, with_infinity=False).unit_signs() == [
        (1, 1), (1, -1), (-1, 1), (-1, -1),
    ]
    assert SplitOrder(1, 4, with_infinity=False).unit_signs() == [(1, 1), (-1, -1)]
    assert SplitOrder(1, 4, with_infinity=True).unit_signs() == [(1, 1), (-1, -1)]


def test_representatives_realize_the_group():
    for n in (1, 2):
        for m in range(1, 7):
            for wi in (True, False):
                O = SplitOrder(n, m, with_infinity=wi)
                assert rep_isomorphism_errors(O) == []


def test_tuple_arithmetic_random():
    rng = random.Random(97)
    for _ in range(200):
        n = rng.choice([1, 2])
        m = rng.randint(1, 6)
        wi = rng.choice([True, False])
        O = SplitOrder(n, m, with_infinity=wi)
        reps = class_tuples(O)
        s, t = rng.choice(reps), rng.choice(reps)
        prod = tuple_mul(O, s, t)
        assert prod in reps
        assert tuple_mul(O, prod, tuple_inv(O, t)) == s


# ---------------------------------------------------------------------------
# multiplier equivalence agrees with the class map


def test_connecting_multiplier_explicit():
    O = SplitOrder(1, 5, with_infinity=True)
    A = O.lattice
    B = O.lattice.scale_rational(F(3))
    g = connecting_multiplier(O, A, B)
    assert g == (F(3), F(3))
    # a norm-2 ideal of class (2,) is not principal
    C = ProdLattice(2, F(1), ((1, 6), (0, 10)))
    assert connecting_multiplier(O, A, C) is None


def test_multiplier_congruences():
    cases = [
        (1, 5, True, 30),
        (1, 4, False, 30),
        (2, 4, True, 24),
        (2, 3, False, 24),
    ]
    for n, m, wi, N in cases:
        O = SplitOrder(n, m, with_infinity=wi)
        assert multiplier_congruence_errors(O, N) == []


def test_direct_coset_count_matches_group_order():
    cases = [
        (1, 5, True, 30),
        (1, 5, False, 30),
        (1, 3, False, 20),
        (2, 4, True, 40),
        (2, 3, True, 30),
    ]
    for n, m, wi, N in cases:
        O = SplitOrder(n, m, with_infinity=wi)
        assert coset_class_count(O, N) == len(class_tuples(O))


# ---------------------------------------------------------------------------
# componentwise enumeration of prime-to-m ideals


def test_componentwise_counts_match_oracle():
    for n, m, wi in [(1, 5, True), (1, 6, False), (2, 4, True), (2, 3, False)]:
        O = SplitOrder(n, m, with_infinity=wi)
        slow = {}
        for nrm, L in brute_force_ideals(O, 30):
            if gcd(nrm, m) != 1:
                continue
            k = (nrm, class_tuple(O, L))
            slow[k] = slow.get(k, 0) + 1
        assert prime_to_conductor_class_counts(O, 30) == slow


def test_componentwise_counts_are_factorization_counts():
    # with m = 1 every class is trivial and the count at j is the number
    # of ordered factorizations of j into r parts
    O = SplitOrder(1, 1, with_infinity=True)
    counts = prime_to_conductor_class_counts(O, 12)
    divisor_count = {j: sum(1 for d in range(1, j + 1) if j % d == 0) for j in range(1, 13)}
    assert {j: c for (j, t), c in counts.items()} == divisor_count


# ---------------------------------------------------------------------------
# characters


CHARACTER_TABLES = {
    # m: (count, even count, sorted conductors)
    5: (4, 2, [1, 5, 5, 5]),
    6: (2, 1, [1, 3]),
    8: (4, 2, [1, 4, 8, 8]),
    9: (6, 3, [1, 3, 9, 9, 9, 9]),
    12: (4, 2, [1, 3, 4, 12]),
}


def test_character_tables():
    for m, (count, evens, conductors) in CHARACTER_TABLES.items():
        chars = dirichlet_characters(m)
        assert len(chars) == count
        assert sum(1 for c in chars if c.is_even()) == evens
        assert sorted(c.conductor() for c in chars) == conductors


def test_character_multiplicativity_random():
    rng = random.Random(5151)
    for m in (5, 8, 9, 12):
        for chi in dirichlet_characters(m):
            for _ in range(20):
                a, b = rng.randint(1, 60), rng.randint(1, 60)
                if gcd(a * b, m) != 1:
                    continue
                assert chi.value(a * b) == chi.value(a).mul(chi.value(b))


def test_character_level_change_round_trip():
    for chi in dirichlet_characters(3):
        lifted = chi.at_level(6)
        assert lifted.m == 6
        assert lifted.conductor() == chi.conductor()
        for j in range(1, 30):
            if gcd(j, 6) == 1:
                assert lifted.value(j) == chi.value(j)


def test_tuple_characters_counts():
    assert len(tuple_characters(SplitOrder(1, 5, with_infinity=True))) == 4
    assert len(tuple_characters(SplitOrder(1, 5, with_infinity=False))) == 2
    assert len(tuple_characters(SplitOrder(2, 4, with_infinity=True))) == 4
    # wide tuples pair against sign-blind classes, so components are even
    for chis in tuple_characters(SplitOrder(1, 5, with_infinity=False)):
        assert all(c.is_even() for c in chis)


def test_characters_separate_classes():
    for n, m, wi in [(1, 5, True), (1, 5, False), (2, 4, True)]:
        O = SplitOrder(n, m, with_infinity=wi)
        reps = class_tuples(O)
        chars = tuple_characters(O)
        for i, s in enumerate(reps):
            for t in reps[i + 1 :]:
                assert any(
                    tuple_char_value(chis, s) != tuple_char_value(chis, t)
                    for chis in chars
                )


# ---------------------------------------------------------------------------
# series identities


def test_trivial_product_is_squared_zeta():
    O = SplitOrder(1, 1, with_infinity=True)
    (chis,) = tuple_characters(O)
    got = l_star_product(chis, 30)
    for j in range(1, 31):
        assert got.coeff(j) == sum(1 for d in range(1, j + 1) if j % d == 0)


def test_product_identity_small_orders():
    for n, m, wi in [(1, 5, True), (1, 5, False), (1, 6, True), (2, 4, True), (2, 3, False)]:
        O = SplitOrder(n, m, with_infinity=wi)
        assert product_identity_mismatches(O, 24) == []


def test_product_identity_quartic_character_to_100():
    # the componentwise count extends the check beyond the lattice oracle
    O = SplitOrder(1, 5, with_infinity=True)
    chi = next(c for c in dirichlet_characters(5) if c.order() == 4)
    N = 100
    rhs = l_star_product((chi,), N)
    acc = {}
    for (j, t), c in prime_to_conductor_class_counts(O, N).items():
        v = root_to_value(tuple_char_value((chi,), t), 4)
        acc[j] = vadd(acc.get(j, 0), vmul(c, v))
    assert series_mismatches(Series(N, acc), rhs) == []


def test_cube_of_cubic_character_against_product():
    # for a character of order 3 the triple (chi, chi, chi) pairs with the
    # prime-to-7 zeta: the product collapses to L(chi)^3 * zeta_(7)
    chi = next(c for c in dirichlet_characters(7) if c.order() == 3)
    N = 60
    got = l_star_product((chi, chi, chi), N)
    lchi = Series(
        N, {j: root_to_value(chi.value(j), 3) for j in range(1, N + 1) if gcd(j, 7) == 1}
    )
    zeta7 = Series(N, {j: 1 for j in range(1, N + 1) if gcd(j, 7) == 1})
    want = dmul(dmul(dmul(lchi, lchi), lchi), zeta7)
    assert series_mismatches(got, want) == []


def test_level_identity_small_orders():
    for n, m, wi in [(1, 4, True), (1, 6, False), (2, 4, True)]:
        O = SplitOrder(n, m, with_infinity=wi)
        assert level_identity_mismatches(O, 30) == []


def test_level_sum_at_full_level_is_plain_product():
    # when the level equals the conductor the decomposition has one term
    chi = next(c for c in dirichlet_characters(5) if c.order() == 4)
    lhs = l_level_sum((chi,), 5, 40)
    rhs = l_star_product((chi,), 40)
    assert series_mismatches(lhs, rhs) == []


def test_level_sum_conductor_must_divide_level():
    chi = next(c for c in dirichlet_characters(5) if c.order() == 4)
    with pytest.raises(ValueError):
        l_level_sum((chi,), 3, 10)


def test_mobius_inversion_round_trip():
    for n, m, wi in [(1, 4, True), (1, 6, True), (2, 4, True)]:
        O = SplitOrder(n, m, with_infinity=wi)
        assert inversion_mismatches(O, 30) == []


def test_class_level_decomposition():
    for n, m, wi in [(1, 4, True), (1, 6, False), (2, 4, True), (1, 5, False)]:
        O = SplitOrder(n, m, with_infinity=wi)
        assert class_level_mismatches(O, 40) == []


def test_trivial_character_level_sum_counts_all_ideals():
    # full-series coefficients are plain ideal counts by index
    O = SplitOrder(1, 4, with_infinity=True)
    (trivial,) = [
        chis for chis in tuple_characters(O) if all(c.order() == 1 for c in chis)
    ]
    got = l_level_sum(trivial, 4, 40)
    counts = {}
    for nrm, L in brute_force_ideals(O, 40):
        counts[nrm] = counts.get(nrm, 0) + 1
    for j in range(1, 41):
        assert got.coeff(j) == counts.get(j, 0)


# ---------------------------------------------------------------------------
# unit weights


def test_unit_weight_values():
    assert u_weight(1, 4, 1) == 2
    assert u_weight(1, 4, 2) == 2
    assert u_weight(1, 4, 4) == 1
    assert u_weight(2, 6, 1) == 4
    assert u_weight(3, 2, 1) == 1


def test_unit_weight_matches_group_route():
    for n in (1, 2, 3):
        for m in range(1, 13):
            assert unit_weight_mismatches(n, m) == []


def test_unit_weight_matches_quadratic_layer():
    for m in range(1, 13):
        for mp in range(1, m + 1):
            if m % mp:
                continue
            assert u_weight(1, m, mp) == u_count(1, m, mp)


def test_unit_index_values():
    # wide units at level are the sign vectors congruent to a scalar mod m:
    # all 2^r of them for m <= 2, only the two scalars for m >= 3
    assert unit_index(1, 4, 1, False) == 2
    assert unit_index(1, 4, 2, False) == 2
    assert unit_index(1, 4, 4, False) == 1
    assert unit_index(2, 3, 1, False) == 4
    assert unit_index(2, 3, 1, True) == 1
