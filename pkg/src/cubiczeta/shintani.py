"""Orbit zeta series of integral binary cubic forms and their identities.

Four Dirichlet series are attached to the two lattices of integral cubic
forms (all forms, and the sublattice with middle coefficients divisible
by 3) split by discriminant sign, each orbit weighted by the reciprocal
of its stabilizer order.  The two dual series equal the two plain series
up to an explicit constant, and both sides decompose over quadratic
orders: this module computes the series directly from orbit enumeration,
checks the dualities, and assembles the primitive-character refinement
whose quotient by zeta factors runs over primitive cubic class
characters only.
"""

from fractions import Fraction
from math import gcd, isqrt

from .characters import all_characters, cubic_characters, get_class_group, is_primitive
from .cubic import enumerate_orbits
from .dirichlet import (
    Series,
    dilate,
    dinv,
    dmul,
    l_star_coeffs,
    root_to_value,
    series_add,
    series_mismatches,
    vadd,
    vmul,
    zeta_series,
    zeta_shifted_series,
)
from .eisenstein import fundamental_discriminants
from .quadorders import split_unit_ideal

# variant -> (lattice, discriminant sign, index divisor)
VARIANTS = {
    "xi1": ("L", 1, 1),
    "xi2": ("L", -1, 1),
    "xi1_dual": ("Ldual", 1, 27),
    "xi2_dual": ("Ldual", -1, 27),
}


def xi_coeffs(variant, N):
    """Orbit zeta series by direct enumeration: coefficient at |disc| (or
    |disc|/27 on the dual lattice) sums 1/|stabilizer| over orbits."""
    try:
        lattice, sign, divisor = VARIANTS[variant]
    except KeyError:
        raise ValueError(f"unknown variant {variant!r}") from None
    acc = {}
    for rec in enumerate_orbits(lattice, sign, N):
        idx = abs(rec.disc) // divisor
        w = Fraction(1, rec.stab)
        acc[idx] = acc.get(idx, 0) + w
    return Series(N, acc)


def verify_on(which, N):
    """Mismatch list for the two dualities relating plain and dual series.

    "on1": the positive-discriminant dual series equals the
    negative-discriminant plain series.  "on2": the negative-discriminant
    dual series equals three times the positive-discriminant plain one.
    """
    if which == "on1":
        return series_mismatches(xi_coeffs("xi1_dual", N), xi_coeffs("xi2", N))
    if which == "on2":
        lhs = xi_coeffs("xi2_dual", N)
        rhs = series_add(Series(N, {}), xi_coeffs("xi1", N), scale=3)
        return series_mismatches(lhs, rhs)
    raise ValueError(f"unknown identity {which!r}")


# ---------------------------------------------------------------------------
# split orders: class characters are ordinary Dirichlet characters


def split_dirichlet_values(chi):
    """t -> chi on the class of Z(1, t) + fZ^2, for t invertible mod f.

    The split class group is (Z/f)^* modulo +-1 through these ideals, so
    this table is an even Dirichlet character mod f.
    """
    group = chi.group
    order = group.order
    if order.alg.D != 1:
        raise ValueError("the dictionary is for split orders")
    f = order.f
    vals = {}
    for t in range(1, max(f, 2)):
        if gcd(t, f) != 1:
            continue
        ideal = split_unit_ideal(order, min(t, f - t) if f > 2 else 1)
        vals[t] = chi.value(group.coords(ideal))
    if f == 1:
        vals[0] = chi.value(group.coords(order.lattice))
    return vals


def split_dirichlet_series(chi, N, inverse=False):
    """The integer-indexed series with a_n = chi1(n mod f), zero when
    gcd(n, f) > 1; inverse=True takes the conjugate character."""
    group = chi.group
    f = group.order.f
    vals = split_dirichlet_values(chi)
    e = chi.order()
    acc = {}
    for n in range(1, N + 1):
        if f > 1:
            if gcd(n, f) != 1:
                continue
            ru = vals[n % f]
        else:
            ru = vals[0]
        if inverse:
            ru = ru.inv()
        acc[n] = root_to_value(ru, e)
    return Series(N, acc)


def dirichlet_conductor(chi):
    """Conductor of the Dirichlet character attached to a split class
    character: the smallest g | f such that the values only depend on the
    residue mod g (and are supported on residues invertible mod g)."""
    group = chi.group
    f = group.order.f
    vals = split_dirichlet_values(chi)
    if f == 1:
        return 1
    for g in sorted(d for d in range(1, f + 1) if f % d == 0):
        ok = True
        for t1 in vals:
            for t2 in vals:
                if (t1 - t2) % g == 0 and vals[t1] != vals[t2]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return g
    raise AssertionError("conductor scan failed")


def split_dictionary_mismatches(f, N):
    """For every class character of the split order of conductor f, compare
    the ideal-side series with the product of the two integer-side series.
    Returns [(exps, n, lhs, rhs)] for any failure."""
    group = get_class_group(1, f)
    out = []
    for chi in all_characters(group):
        lhs = l_star_coeffs(chi, N)
        rhs = dmul(split_dirichlet_series(chi, N), split_dirichlet_series(chi, N, inverse=True))
        for n, a, b in series_mismatches(lhs, rhs):
            out.append((chi.exps, n, a, b))
    return out


# ---------------------------------------------------------------------------
# the primitive-character refinement


def _primitive_blocks(variant, N):
    """(D, f, weight) for the refinement: imaginary fields for the
    negative-discriminant series; real fields plus one third of the split
    algebra for the positive-discriminant one."""
    if variant == "xi2":
        specs = [(-1, 1)]
    elif variant == "xi1":
        specs = [(1, 1), (0, Fraction(1, 3))]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    for sign, weight in specs:
        discs = fundamental_discriminants(sign, N) if sign else [1]
        for D in discs:
            f = 1
            while abs(D) * f * f <= N:
                yield D, f, weight
                f += 1


def xi_rhs_primitive(variant, N):
    """zeta(2s) zeta(6s-1) * sum over orders of |D|^-s f^-2s times
    sum over primitive cubic characters of L*(2s, chi) / L*(4s, chi).

    The trivial character counts only at conductor f = 1.
    """
    prefactor = dmul(dilate(zeta_series(N), 2), dilate(zeta_shifted_series(N), 6))
    total = Series(N, {})
    acc = {}
    for D, f, weight in _primitive_blocks(variant, N):
        block = abs(D) * f * f
        NL = N // block
        group = get_class_group(D, f)
        for chi in cubic_characters(group):
            if not is_primitive(chi):
                continue
            num = dilate(Series(NL, l_star_coeffs(chi, isqrt(NL)).a), 2)
            den = dilate(Series(NL, l_star_coeffs(chi, isqrt(isqrt(NL))).a), 4)
            for n, v in dmul(num, dinv(den)).items():
                idx = block * n
                acc[idx] = vadd(acc.get(idx, 0), vmul(weight, v))
    total = Series(N, acc)
    return dmul(prefactor, total)
