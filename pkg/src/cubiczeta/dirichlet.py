"""Exact Dirichlet series and L-functions of class-group characters.

A Series holds the coefficients a_1..a_N of sum a_n n^{-s}, sparsely.
Values are ints, Fractions, or cyclotomic numbers; everything is exact.

The L-function of a character chi of Cl(O_{k,f}) comes in two flavours:
  * l_star_coeffs: the Euler product over primes not dividing f
    ("ideals prime to the conductor"),
  * l_coeffs: the sum over all invertible integral ideals, assembled from
    truncated series at the levels between the conductor of chi and f.
Both have brute-force oracles that scan ideals norm by norm.

The module also verifies three standalone identities used by the main
counting theorems: the unit-count generating series, the local Euler-factor
rearrangement, and the conductor-sum identity
  sum_d d^{-s} L(s, chi, O_{k, f d})
      = zeta(s) zeta(3s - 1) L*(s, chi, O_{k,f}) / L*(2s, chi, O_{k,f}).
"""

from fractions import Fraction
from math import gcd

from .arith import (
    divisors,
    fundamental_discriminant_of,
    kronecker,
    mobius,
    primes_up_to,
    square_scale,
)
from .characters import (
    all_characters,
    conductor,
    cubic_characters,
    get_class_group,
    induce,
    is_primitive,
    level_map,
    restrict,
)
from .cubic import discriminant
from .cyclotomic import CycElt
from .quadorders import factor_prime, ideals_of_norm, u_count, unit_index


# ---------------------------------------------------------------------------
# coefficient values: int | Fraction | CycElt


def canon_value(v):
    """Collapse rational cyclotomic numbers to Fractions and whole Fractions
    to ints, so that equal values have one representation."""
    if isinstance(v, CycElt):
        if not v.is_rational():
            return v
        v = v.rational_value()
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def _matched(x, y):
    if isinstance(x, CycElt) and isinstance(y, CycElt) and x.e != y.e:
        e = x.e * y.e // gcd(x.e, y.e)
        return x.promote(e), y.promote(e)
    return x, y


def vadd(x, y):
    x, y = _matched(x, y)
    return x + y


def vmul(x, y):
    x, y = _matched(x, y)
    return x * y


def values_equal(x, y):
    x, y = _matched(canon_value(x), canon_value(y))
    if isinstance(x, CycElt) != isinstance(y, CycElt):
        return False
    return x == y


def _is_zero(v):
    if isinstance(v, CycElt):
        return v.is_zero()
    return v == 0


def root_to_value(ru, e):
    """A RootOfUnity as a series value: rational when possible, else in
    Q(zeta_e)."""
    if ru.denominator == 1:
        return 1
    if ru.denominator == 2:
        return -1
    return ru.as_cyc(e)


# ---------------------------------------------------------------------------
# sparse Dirichlet series


class Series:
    """Coefficients a_1..a_N of a Dirichlet series; zeros are not stored."""

    __slots__ = ("N", "a")

    def __init__(self, N, coeffs=None):
        if N < 0:
            raise ValueError("need N >= 0")
        self.N = N
        self.a = {}
        if coeffs:
            for n, v in coeffs.items():
                if not 1 <= n <= N:
                    continue
                v = canon_value(v)
                if not _is_zero(v):
                    self.a[n] = v

    def coeff(self, n):
        if not 1 <= n <= self.N:
            raise IndexError(f"coefficient {n} outside 1..{self.N}")
        return self.a.get(n, 0)

    def items(self):
        return sorted(self.a.items())

    def __repr__(self):
        head = ", ".join(f"{n}: {v}" for n, v in self.items()[:6])
        return f"Series(N={self.N}, {{{head}{', ...' if len(self.a) > 6 else ''}}})"


def zeta_series(N):
    """zeta(s) truncated: a_n = 1."""
    return Series(N, {n: 1 for n in range(1, N + 1)})


def zeta_shifted_series(N):
    """zeta(s - 1) truncated: a_n = n."""
    return Series(N, {n: n for n in range(1, N + 1)})


def dmul(A, B):
    """Dirichlet convolution, truncated at min(A.N, B.N)."""
    N = min(A.N, B.N)
    bits = sorted(B.a.items())
    acc = {}
    for d, ad in A.a.items():
        if d > N:
            continue
        for e, be in bits:
            n = d * e
            if n > N:
                break
            prod = vmul(ad, be)
            acc[n] = vadd(acc[n], prod) if n in acc else prod
    return Series(N, acc)


def dinv(A):
    """Inverse under Dirichlet convolution; needs an invertible a_1."""
    a1 = canon_value(A.coeff(1)) if A.N >= 1 else 0
    if _is_zero(a1):
        raise ValueError("series with a_1 = 0 has no inverse")
    if isinstance(a1, CycElt):
        inv1 = a1.inv()
    else:
        inv1 = Fraction(1, 1) / Fraction(a1)
    b = {1: inv1}
    for n in range(2, A.N + 1):
        total = 0
        for d in divisors(n):
            if d == n:
                continue
            an = A.a.get(n // d)
            if an is None or d not in b:
                continue
            total = vadd(total, vmul(b[d], an))
        if not _is_zero(total):
            b[n] = vmul(-1, vmul(inv1, total))
    return Series(A.N, b)


def dilate(A, k):
    """A(s) -> A(k s): the coefficient at n moves to n**k."""
    out = {}
    for n, v in A.a.items():
        m = n**k
        if m <= A.N:
            out[m] = v
    return Series(A.N, out)


def index_scale(A, m):
    """Multiply by m^{-s}: the coefficient at n moves to m * n."""
    return Series(A.N, {m * n: v for n, v in A.a.items() if m * n <= A.N})


def series_add(A, B, scale=1):
    """A + scale * B on the common range."""
    N = min(A.N, B.N)
    acc = dict(A.a)
    for n, v in B.a.items():
        if n > N:
            continue
        sv = vmul(scale, v)
        acc[n] = vadd(acc[n], sv) if n in acc else sv
    return Series(N, acc)


def series_mismatches(A, B, upto=None):
    """[(n, a_n, b_n)] wherever the two series disagree."""
    N = min(A.N, B.N)
    if upto is not None:
        N = min(N, upto)
    out = []
    for n in range(1, N + 1):
        x = A.a.get(n, 0)
        y = B.a.get(n, 0)
        if not values_equal(x, y):
            out.append((n, canon_value(x), canon_value(y)))
    return out


# ---------------------------------------------------------------------------
# L-functions of class-group characters


def l_star_coeffs(chi, N):
    """L*(s, chi, O): Euler product over the primes p not dividing the
    conductor of the order, expanded to N coefficients."""
    order = chi.group.order
    e = chi.order()
    out = Series(N, {1: 1})
    for p in primes_up_to(N):
        if order.f % p == 0:
            continue
        kind, primes = factor_prime(order, p)
        local = {1: 1}
        if kind == "split":
            v1 = chi.value_on_ideal(primes[0])
            v2 = chi.value_on_ideal(primes[1])
            q = p
            j = 1
            while q <= N:
                total = 0
                for i in range(j + 1):
                    total = vadd(total, root_to_value(v1.pow(i).mul(v2.pow(j - i)), e))
                local[q] = total
                q *= p
                j += 1
        elif kind == "inert":
            v = chi.value_on_ideal(primes[0])  # the class of p O is trivial
            q = p * p
            j = 1
            while q <= N:
                local[q] = root_to_value(v.pow(j), e)
                q *= p * p
                j += 1
        else:  # ramified
            v = chi.value_on_ideal(primes[0])
            q = p
            j = 1
            while q <= N:
                local[q] = root_to_value(v.pow(j), e)
                q *= p
                j += 1
        out = dmul(out, Series(N, local))
    return out


def l_series_direct(chi, N, prime_to_conductor=False):
    """Brute-force L-series coefficients: a_n = sum of chi over the classes
    of the invertible integral ideals of norm n."""
    order = chi.group.order
    e = chi.order()
    acc = {}
    for n in range(1, N + 1):
        if prime_to_conductor and gcd(n, order.f) != 1:
            continue
        total = 0
        for ideal in ideals_of_norm(order, n):
            total = vadd(total, root_to_value(chi.value_on_ideal(ideal), e))
        acc[n] = total
    return Series(N, acc)


def l_coeffs(chi, N, cond=None):
    """L(s, chi, O_{k,m}) over all invertible integral ideals, assembled
    level by level:
      L = sum over f | m' | m of  #U(O_m', O_m) * (m/m')^{-2s} L*(s, chi, O_m')
    with f the conductor of chi and chi restricted to each level m'."""
    order = chi.group.order
    m, D = order.f, order.alg.D
    f = conductor(chi) if cond is None else cond
    if m % f:
        raise ValueError("conductor must divide the level")
    acc = {}
    for mp in divisors(m):
        if mp % f:
            continue
        t = (m // mp) ** 2
        if t > N:
            continue
        w = u_count(D, m, mp)
        sub = restrict(chi, get_class_group(D, mp))
        for n, v in l_star_coeffs(sub, N // t).a.items():
            idx = t * n
            wv = vmul(w, v)
            acc[idx] = vadd(acc[idx], wv) if idx in acc else wv
    return Series(N, acc)


def l_star_from_l(chi, N):
    """Moebius inversion of l_coeffs:
      L* = sum over f | m' | m of mu(m/m') #U(O_m', O_m) (m/m')^{-2s} L(s, chi, O_m')
    used as a round-trip check against l_star_coeffs."""
    order = chi.group.order
    m, D = order.f, order.alg.D
    f = conductor(chi)
    acc = {}
    for mp in divisors(m):
        if mp % f:
            continue
        mu = mobius(m // mp)
        if mu == 0:
            continue
        t = (m // mp) ** 2
        if t > N:
            continue
        w = mu * u_count(D, m, mp)
        sub = restrict(chi, get_class_group(D, mp))
        for n, v in l_coeffs(sub, N // t, cond=f).a.items():
            idx = t * n
            wv = vmul(w, v)
            acc[idx] = vadd(acc[idx], wv) if idx in acc else wv
    return Series(N, acc)


# ---------------------------------------------------------------------------
# partial zeta functions of single classes


def partial_zeta_direct(group, cls, N, prime_to_conductor=False):
    """a_n = number of invertible integral ideals of norm n in the class."""
    order = group.order
    acc = {}
    for n in range(1, N + 1):
        if prime_to_conductor and gcd(n, order.f) != 1:
            continue
        cnt = 0
        for ideal in ideals_of_norm(order, n):
            if group.coords(ideal) == cls:
                cnt += 1
        acc[n] = cnt
    return Series(N, acc)


def class_zeta_level_mismatches(D, m, N):
    """Check, class by class, that the zeta function of a class at level m
    is the unit-index-weighted sum of truncated zetas at the levels m' | m:
      zeta(s, A, O_m) = sum [O*_m' : O*_m] (m/m')^{-2s} zeta*(s, phi(A), O_m')."""
    big = get_class_group(D, m)
    out = []
    for cls in big.elements():
        lhs = partial_zeta_direct(big, cls, N)
        rhs = Series(N)
        for mp in divisors(m):
            t = (m // mp) ** 2
            if t > N:
                continue
            small = get_class_group(D, mp)
            w = unit_index(big.order) // unit_index(small.order)
            phi = level_map(big, small)
            zz = partial_zeta_direct(small, phi(cls), N // t, prime_to_conductor=True)
            rhs = series_add(rhs, Series(N, {t * n: v for n, v in zz.a.items()}), w)
        for n, x, y in series_mismatches(lhs, rhs):
            out.append((cls, n, x, y))
    return out


# ---------------------------------------------------------------------------
# the unit-count generating series


def unit_count_series_sides(D, d, N):
    """Both sides of
      sum_u #U(O_{k,d}, O_{k,ud}) u^{-s}
        = zeta(s-1) * prod_{p not dividing d} (1 - (D/p) p^{-s})."""
    lhs = Series(N, {u: u_count(D, u * d, d) for u in range(1, N + 1)})
    twist = Series(
        N,
        {
            n: mobius(n) * kronecker(D, n)
            for n in range(1, N + 1)
            if gcd(n, d) == 1
        },
    )
    rhs = dmul(zeta_shifted_series(N), twist)
    return lhs, rhs


def verify_unit_count_series(D, d, N):
    lhs, rhs = unit_count_series_sides(D, d, N)
    return series_mismatches(lhs, rhs)


# ---------------------------------------------------------------------------
# the local Euler-factor rearrangement


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if _is_zero(x):
            continue
        for j, y in enumerate(b):
            if _is_zero(y):
                continue
            out[i + j] = vadd(out[i + j], vmul(x, y))
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [
        vadd(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)
    ]


def euler_factor_sides(chi, p):
    """Both sides of the degree-<=4 polynomial identity in X = p^{-s}:
      (1 - X)(1 - (D/p) X^3) + X * prod_P (1 - chi(P) X^{deg P})
          = prod_P (1 - chi(P) X^{2 deg P})
    for chi of odd order, P running over the primes above p."""
    order = chi.group.order
    if order.f % p == 0:
        raise ValueError("p must not divide the conductor")
    if chi.order() % 2 == 0:
        raise ValueError("the identity needs a character of odd order")
    e = chi.order()
    kind, primes = factor_prime(order, p)
    deg = 2 if kind == "inert" else 1
    single = [1]
    double = [1]
    for P in primes:
        v = root_to_value(chi.value_on_ideal(P), e)
        single = _poly_mul(single, [1] + [0] * (deg - 1) + [vmul(-1, v)])
        double = _poly_mul(double, [1] + [0] * (2 * deg - 1) + [vmul(-1, v)])
    kro = kronecker(order.alg.D, p)
    lhs = _poly_add(
        _poly_mul([1, -1], [1, 0, 0, -kro]),
        _poly_mul([0, 1], single),
    )
    return lhs, double


def verify_euler_factor(chi, p):
    lhs, rhs = euler_factor_sides(chi, p)
    n = max(len(lhs), len(rhs))
    lhs = lhs + [0] * (n - len(lhs))
    rhs = rhs + [0] * (n - len(rhs))
    return all(values_equal(x, y) for x, y in zip(lhs, rhs))


def character_ap(chi, p):
    """The coefficient a_p with
      prod_P (1 - chi(P) N(P)^{-s}) = 1 - a_p p^{-s} + (D/p) p^{-2s}."""
    order = chi.group.order
    if order.f % p == 0:
        raise ValueError("p must not divide the conductor")
    e = chi.order()
    kind, primes = factor_prime(order, p)
    if kind == "inert":
        return 0
    if kind == "ramified":
        return canon_value(root_to_value(chi.value_on_ideal(primes[0]), e))
    v1 = root_to_value(chi.value_on_ideal(primes[0]), e)
    v2 = root_to_value(chi.value_on_ideal(primes[1]), e)
    return canon_value(vadd(v1, v2))


def point_count_ap(form, p):
    """Number of projective zeros mod p of the integral cubic form,
    minus one."""
    a, b, c, d = form
    cnt = sum(1 for u in range(p) if (a * u**3 + b * u**2 + c * u + d) % p == 0)
    if a % p == 0:
        cnt += 1
    return cnt - 1


def matching_cubic_character(form, pmax=50):
    """A primitive cubic class-group character whose a_p equals the
    projective point count of the form minus one, for every p < pmax prime
    to the conductor; None when no such character exists."""
    disc = discriminant(form)
    if disc == 0:
        return None
    D = fundamental_discriminant_of(disc)
    if D is None:
        return None
    f = square_scale(disc, D)
    group = get_class_group(D, f)
    for chi in cubic_characters(group):
        if chi.is_trivial() or not is_primitive(chi):
            continue
        ok = True
        for p in primes_up_to(pmax - 1):
            if f % p == 0:
                continue
            ap = character_ap(chi, p)
            if isinstance(ap, CycElt) or ap != point_count_ap(form, p):
                ok = False
                break
        if ok:
            return chi
    return None


# ---------------------------------------------------------------------------
# the conductor-sum identity


def conductor_sum_sides(chi, N):
    """Both sides of
      sum_{d >= 1} d^{-s} L(s, chi, O_{k, f d})
        = zeta(s) zeta(3s - 1) L*(s, chi, O_{k,f}) / L*(2s, chi, O_{k,f})
    for chi primitive of odd order at conductor f."""
    order = chi.group.order
    f, D = order.f, order.alg.D
    if chi.order() % 2 == 0:
        raise ValueError("the identity needs a character of odd order")
    if not is_primitive(chi):
        raise ValueError("the identity needs a primitive character")
    acc = {}
    for d in range(1, N + 1):
        sub_N = N // d
        if sub_N == 1:
            # every L-series starts with a_1 = 1
            acc[d] = vadd(acc[d], 1) if d in acc else 1
            continue
        big = get_class_group(D, f * d)
        chi_d = induce(chi, big)
        for n, v in l_coeffs(chi_d, sub_N, cond=f).a.items():
            idx = d * n
            acc[idx] = vadd(acc[idx], v) if idx in acc else v
    lhs = Series(N, acc)
    lstar = l_star_coeffs(chi, N)
    rhs = dmul(
        dmul(zeta_series(N), dilate(zeta_shifted_series(N), 3)),
        dmul(lstar, dinv(dilate(lstar, 2))),
    )
    return lhs, rhs


def verify_conductor_sum(chi, N):
    lhs, rhs = conductor_sum_sides(chi, N)
    return series_mismatches(lhs, rhs)
