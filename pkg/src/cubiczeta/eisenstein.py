"""Dictionary between dual-lattice cubic orbits and quadratic ideal pairs.

A dual integral cubic form of discriminant -27 n corresponds to a pair
(a, beta): a an invertible ideal of the order of conductor c in the
quadratic algebra of discriminant D (where n = d^2 D, d = b c), and
beta a member of a^3 whose ideal quotient beta * a^-3 is integral of
norm b.  Two pairs are identified when one is (rho * a, rho^3 * beta)
for an invertible algebra element rho.

This module builds the map in both directions, decides pair equivalence
exactly, counts pair classes through ideal counts and unit/class-group
3-quotients, and assembles the resulting Dirichlet series for the dual
orbit zeta functions in two independent ways.
"""

from fractions import Fraction
from math import gcd, isqrt
from typing import NamedTuple

from .arith import (
    divisors,
    fundamental_discriminant_of,
    is_fundamental_discriminant,
    rational_cube_root,
    rational_roots_monic_cubic,
    rational_sqrt,
    square_scale,
)
from .characters import cubic_characters, get_class_group
from .cubic import (
    S_MAT,
    act,
    canonicalize,
    discriminant,
    enumerate_orbits,
    hessian,
    in_dual_lattice,
    jacobian,
    mat_mul,
    t_mat,
)
from .dirichlet import Series, canon_value, l_coeffs, vadd
from .quadlat import QuadAlgebra, QuadLattice
from .quadorders import QuadOrder, ideals_of_norm, torsion_unit_count


class ParamPair(NamedTuple):
    order: object  # QuadOrder of conductor c
    ideal: object  # QuadLattice, invertible fractional ideal of the order
    beta: tuple  # algebra element in ideal^3 with nonzero norm


def _sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def pair_invariants(pair):
    """(b, c) for a pair: c the conductor, b the norm of beta * ideal^-3."""
    order, a, beta = pair
    na = order.norm_of(a)
    b = abs(order.alg.norm(beta)) / na ** 3
    if b.denominator != 1:
        raise ValueError("norm of beta is not an integer multiple of Na^3")
    return int(b), order.f


def psi(pair):
    """Canonical dual cubic form attached to an ideal pair.

    With a = Z alpha1 + Z alpha2 oriented against the sign of N(beta),
    the form is  x(u, v) = Tr(beta * conj(alpha1 u + alpha2 v)^3
    / (c sqrt(D) Na^3)),  of discriminant -27 (b c)^2 D.
    """
    order, a, beta = pair
    alg, c = order.alg, order.f
    D = alg.D
    if a.multiplier_ring() != order.lattice:
        raise ValueError("ideal is not invertible over this order")
    nb = alg.norm(beta)
    if nb == 0:
        raise ValueError("beta must have nonzero norm")
    a3 = a.mul(a).mul(a)
    if not a3.contains(beta):
        raise ValueError("beta must lie in the cube of the ideal")
    na = order.norm_of(a)
    b = abs(nb) / na ** 3
    if b.denominator != 1:
        raise ValueError("norm of beta is not an integer multiple of Na^3")
    b = int(b)

    a1, a2 = a.basis()
    # z = a1 conj(a2) - a2 conj(a1) is a rational multiple r of sqrt(D)
    z = _sub(alg.mul(a1, alg.conj(a2)), alg.mul(a2, alg.conj(a1)))
    r = z[1] / 2
    assert 2 * z[0] == -D * z[1] and r != 0
    if nb * r > 0:
        a1, a2 = a2, a1
    c1, c2 = alg.conj(a1), alg.conj(a2)
    den = D * c * na ** 3  # Tr(w / sqrt(D)) = Tr(w sqrt(D)) / D
    sq = alg.sqrt_disc()
    coeffs = []
    for j, binom in enumerate((1, 3, 3, 1)):
        w = alg.mul(beta, alg.mul(alg.pow(c1, 3 - j), alg.pow(c2, j)))
        t = binom * alg.trace(alg.mul(w, sq)) / den
        if t.denominator != 1:
            raise AssertionError("pair map produced a non-integral coefficient")
        coeffs.append(int(t))
    form = tuple(coeffs)
    assert in_dual_lattice(form)
    assert discriminant(form) == -27 * (b * c) ** 2 * D
    canon, _ = canonicalize(form)
    return canon


def psi_inverse(form):
    """An ideal pair mapping to the orbit of the given dual form.

    Reads the quadratic data off the (one-ninth) Hessian H = b * h:
    conductor c from disc h = c^2 D, ideal a = Z + Z alpha with
    alpha = (h1 + c sqrt(D)) / (2 h0), and beta from the leading Jacobian
    coefficient.  Requires h0 != 0; if not, first slides the form by
    u -> u + m v followed by the swap (u, v) -> (v, -u).
    """
    if not in_dual_lattice(form):
        raise ValueError("need a dual form (middle coefficients divisible by 3)")
    disc = discriminant(form)
    if disc == 0:
        raise ValueError("need nonzero discriminant")
    n = -disc // 27
    assert -27 * n == disc
    D = fundamental_discriminant_of(n)
    assert D is not None, "dual discriminants are always d^2 * fundamental"
    d = square_scale(n, D)

    g = form
    if hessian(g, "Ldual")[0] == 0:
        for m in range(3):
            cand = act(mat_mul(S_MAT, t_mat(m)), form)
            if hessian(cand, "Ldual")[0] != 0:
                g = cand
                break
        else:
            raise AssertionError("could not move to a form with h0 != 0")

    H = hessian(g, "Ldual")
    b = gcd(gcd(H[0], H[1]), H[2])
    h0, h1, h2 = (x // b for x in H)
    c = square_scale(h1 * h1 - 4 * h0 * h2, D)
    assert b * c == d

    alg = QuadAlgebra(D)
    order = QuadOrder(alg, c)
    alpha = (Fraction(h1 - c * D, 2 * h0), Fraction(c, h0))
    a = QuadLattice.from_generators(alg, [alg.elt(1), alpha])
    C0 = jacobian(g)[0]
    x0 = g[0]
    beta = (
        Fraction(C0 - d * x0 * D, 2 * b * h0 ** 3),
        Fraction(d * x0, b * h0 ** 3),
    )

    assert a.multiplier_ring() == order.lattice
    assert order.norm_of(a) == Fraction(1, abs(h0))
    assert a.mul(a).mul(a).contains(beta)
    assert abs(alg.norm(beta)) == Fraction(b, abs(h0) ** 3)
    return ParamPair(order, a, beta)


def pairs_equivalent(p1, p2):
    """True when p2 = (rho * a1, rho^3 * beta1) for some invertible rho.

    Any such rho has N(rho) = cbrt(N(gamma)) and trace t a rational root
    of t^3 - 3 N(rho) t - Tr(gamma), gamma = beta2 / beta1, so there are
    finitely many exact candidates to test.
    """
    o1, a1, b1 = p1
    o2, a2, b2 = p2
    if o1 != o2:
        return False
    alg = o1.alg
    D = alg.D
    gamma = alg.mul(b2, alg.inv(b1))
    n0 = rational_cube_root(alg.norm(gamma))
    if n0 is None:
        return False
    tr = alg.trace(gamma)
    for t in rational_roots_monic_cubic(-3 * n0, -tr):
        r = rational_sqrt((t * t - 4 * n0) / D)
        if r is None:
            continue
        for rr in {r, -r}:
            rho = ((t - rr * D) / 2, rr)
            if alg.norm(rho) == 0:
                continue
            if alg.pow(rho, 3) == gamma and a1.scale_elt(rho) == a2:
                return True
    return False


# ---------------------------------------------------------------------------
# counting pair classes


def fiber_size(D, c):
    """Number of pair classes over one ideal image: |Cl[3]| * |O^* / O^*3|.

    The unit factor comes from the actual unit group of the order of
    conductor c: for D < 0 or D = 1 the units form a finite abelian
    group of order w, whose cube-power quotient has size 3 when 3 | w
    and 1 otherwise; for D > 1 the units are {+-1} x (free of rank 1),
    so cubing has index 3.
    """
    group = get_class_group(D, c)
    h3 = 1
    for dd in group.invariants:
        h3 *= gcd(3, dd)
    if D > 1:
        units3 = 3
    else:
        w = torsion_unit_count(group.order)
        units3 = 3 if w % 3 == 0 else 1
    return h3 * units3


def omega_count(D, b, c):
    """Invertible ideals of norm b in the order of conductor c whose class
    is a cube in the class group (coordinates divisible by gcd(3, d_i))."""
    group = get_class_group(D, c)
    count = 0
    for ideal in ideals_of_norm(group.order, b):
        coords = group.coords(ideal)
        if all(x % gcd(3, dd) == 0 for x, dd in zip(coords, group.invariants)):
            count += 1
    return count


def pair_class_count(n):
    """Number of pair classes with d^2 D = n, summed over conductors c | d."""
    D = fundamental_discriminant_of(n)
    if D is None:
        return 0
    d = square_scale(n, D)
    return sum(omega_count(D, d // c, c) * fiber_size(D, c) for c in divisors(d))


def dual_orbit_counts(bound):
    """Map n -> number of dual-form orbits of discriminant -27 n, |n| <= bound."""
    counts = {}
    for sign in (1, -1):
        for rec in enumerate_orbits("Ldual", sign, bound):
            n = -rec.disc // 27
            counts[n] = counts.get(n, 0) + 1
    return counts


def param_count_mismatches(bound):
    """[(n, orbit count, pair-class count)] wherever the two disagree."""
    counts = dual_orbit_counts(bound)
    out = []
    for n in range(-bound, bound + 1):
        if n == 0:
            continue
        lhs = counts.get(n, 0)
        rhs = pair_class_count(n)
        if lhs != rhs:
            out.append((n, lhs, rhs))
    return out


# ---------------------------------------------------------------------------
# the dual zeta series, from the quadratic side


def fundamental_discriminants(sign, bound):
    """Fundamental discriminants of quadratic fields with |D| <= bound."""
    if sign < 0:
        rng = range(-3, -bound - 1, -1)
    else:
        rng = range(5, bound + 1)
    return [D for D in rng if is_fundamental_discriminant(D)]


def _dual_blocks(variant, N):
    """(D, c, weight) triples contributing to a dual zeta series up to N.

    Positive-discriminant dual orbits come from imaginary quadratic fields;
    negative-discriminant ones from real fields (weight 3, reflecting the
    unit cube-quotient) plus the split algebra (weight 1).
    """
    if variant == "xi1_dual":
        specs = [(-1, 1)]
    elif variant == "xi2_dual":
        specs = [(1, 3), (0, 1)]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    for sign, weight in specs:
        discs = fundamental_discriminants(sign, N) if sign else [1]
        for D in discs:
            c = 1
            while abs(D) * c * c <= N:
                yield D, c, weight
                c += 1


def xi_dual_rhs(variant, N):
    """Dual orbit zeta series assembled from cubic class characters.

    Coefficient of n = |D| c^2 j^2 receives, for each order (D, c), the
    weight times the j-th coefficient of sum over chi^3 = 1 of L(s, chi)
    for the order; the character sum is always rational.
    """
    acc = {}
    for D, c, weight in _dual_blocks(variant, N):
        block = abs(D) * c * c
        M = isqrt(N // block)
        group = get_class_group(D, c)
        inner = {}
        for chi in cubic_characters(group):
            for j, v in l_coeffs(chi, M).items():
                inner[j] = vadd(inner.get(j, 0), v)
        for j, v in inner.items():
            v = canon_value(v)
            if not isinstance(v, (int, Fraction)):
                raise AssertionError("character sum failed to be rational")
            if v:
                idx = block * j * j
                acc[idx] = acc.get(idx, 0) + weight * v
    return Series(N, acc)


def xi_dual_rhs_omega(variant, N):
    """Same series, from ideal counts: the cubic-character sum over ideals
    of norm j collapses to |Cl[3]| times the cube-class ideal count."""
    acc = {}
    for D, c, weight in _dual_blocks(variant, N):
        block = abs(D) * c * c
        M = isqrt(N // block)
        group = get_class_group(D, c)
        h3 = 1
        for dd in group.invariants:
            h3 *= gcd(3, dd)
        for j in range(1, M + 1):
            v = h3 * omega_count(D, j, c)
            if v:
                idx = block * j * j
                acc[idx] = acc.get(idx, 0) + weight * v
    return Series(N, acc)
