"""Orders in quadratic etale algebras: ideals, units, class groups.

The order of conductor f in the algebra of fundamental discriminant D is
O_f = Z + Z f w, a lattice of discriminant f^2 D.  Ideal classes are keyed
through binary quadratic forms: positive definite reduced forms for
negative discriminants, rho-cycles of reduced indefinite forms for positive
non-square discriminants, and residues modulo the conductor for the split
algebra (square discriminant).
"""

from fractions import Fraction
from math import gcd, isqrt, log

from .arith import (
    divisors,
    factorize,
    is_square,
    kronecker,
    mat_fraction_inverse,
    primes_up_to,
    snf,
    sqrt_mod,
    xgcd,
)
from .cubic import act_quad, mat_mul, reduce_pd
from .quadlat import QuadAlgebra, QuadLattice

IDENT = ((1, 0), (0, 1))


class QuadOrder:
    """The order Z + Z f w of conductor f, as a lattice with extras."""

    def __init__(self, alg, f):
        if f < 1:
            raise ValueError("conductor must be a positive integer")
        self.alg = alg
        self.f = f
        self.disc = f * f * alg.D
        self.lattice = QuadLattice(alg, 1, 1, 0, f)

    def __repr__(self):
        return f"QuadOrder(D={self.alg.D}, f={self.f})"

    def __eq__(self, other):
        return (
            isinstance(other, QuadOrder)
            and self.alg == other.alg
            and self.f == other.f
        )

    def __hash__(self):
        return hash(("QuadOrder", self.alg.D, self.f))

    def contains(self, u):
        return self.lattice.contains(u)

    def principal(self, u):
        """The fractional principal ideal u * O_f."""
        return self.lattice.scale_elt(u)

    def norm_of(self, ideal):
        """Covolume of the ideal relative to the order (the ideal norm)."""
        return ideal.covolume() / self.f

    def inverse_of(self, ideal):
        return self.lattice.colon(ideal)

    def is_invertible(self, ideal):
        return ideal.mul(self.inverse_of(ideal)) == self.lattice


# ---------------------------------------------------------------------------
# binary quadratic forms


def bqf_disc(F):
    A, B, C = F
    return B * B - 4 * A * C


def bqf_is_primitive(F):
    A, B, C = F
    return gcd(gcd(abs(A), abs(B)), abs(C)) == 1


def reduced_pd_forms(disc):
    """All primitive reduced positive definite forms of the discriminant."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError("need a negative discriminant = 0, 1 mod 4")
    out = []
    A = 1
    while 3 * A * A <= -disc:
        for B in range(-A + 1, A + 1):
            if (B - disc) % 2:
                continue
            num = B * B - disc
            if num % (4 * A):
                continue
            C = num // (4 * A)
            if C < A or (A == C and B < 0):
                continue
            if gcd(gcd(A, abs(B)), C) == 1:
                out.append((A, B, C))
        A += 1
    return sorted(out)


def is_reduced_indef(F, disc=None):
    """Reduced test for indefinite forms of non-square discriminant."""
    A, B, C = F
    disc = bqf_disc(F) if disc is None else disc
    if B <= 0 or B * B >= disc:
        return False
    twoa = 2 * abs(A)
    if (twoa + B) ** 2 <= disc:
        return False
    return twoa - B < 0 or (twoa - B) ** 2 < disc


def rho_step(F, disc=None):
    """One reduction step on an indefinite form, with its matrix."""
    A, B, C = F
    disc = bqf_disc(F) if disc is None else disc
    s = isqrt(disc)
    cc = 2 * abs(C)
    if abs(C) > s:
        r = (-B) % cc
        if r > abs(C):
            r -= cc
    else:
        r = s - ((s + B) % cc)
    C2 = (r * r - disc) // (4 * C)
    m = (B + r) // (2 * C)
    g = ((0, 1), (-1, m))
    return (C, r, C2), g


def indef_reduce(F, disc=None):
    """Reduce an arbitrary indefinite form; returns (reduced, matrix)."""
    disc = bqf_disc(F) if disc is None else disc
    if disc <= 0 or is_square(disc):
        raise ValueError("need a positive non-square discriminant")
    g = IDENT
    for _ in range(10000):
        if is_reduced_indef(F, disc):
            return F, g
        F, step = rho_step(F, disc)
        g = mat_mul(step, g)
    raise RuntimeError("indefinite reduction did not terminate")


def rho_cycle(F):
    """The cycle of reduced forms through a reduced indefinite form."""
    disc = bqf_disc(F)
    if not is_reduced_indef(F, disc):
        raise ValueError("rho_cycle needs a reduced form")
    cyc = [F]
    cur, _ = rho_step(F, disc)
    while cur != F:
        if len(cyc) > 10000:
            raise RuntimeError("rho cycle did not close")
        cyc.append(cur)
        cur, _ = rho_step(cur, disc)
    return cyc


def indef_cycle_key(F):
    red, _ = indef_reduce(F)
    return min(rho_cycle(red))


def wide_form_key(F):
    """Canonical key of the form class up to both cycle and sign flip."""
    A, B, C = F
    return min(indef_cycle_key(F), indef_cycle_key((-A, B, -C)))


def reduced_indef_forms(disc):
    """All primitive reduced indefinite forms of the discriminant."""
    if disc <= 0 or is_square(disc) or disc % 4 not in (0, 1):
        raise ValueError("need a positive non-square discriminant = 0, 1 mod 4")
    out = []
    for B in range(1, isqrt(disc) + 1):
        if (B - disc) % 2:
            continue
        M4 = disc - B * B
        if M4 % 4:
            continue
        M = M4 // 4  # = |A C|, with A C < 0
        for d in divisors(M):
            for (A, C) in ((d, -(M // d)), (-d, M // d)):
                F = (A, B, C)
                if is_reduced_indef(F, disc) and bqf_is_primitive(F):
                    out.append(F)
    return sorted(out)


# ---------------------------------------------------------------------------
# units


def pell_fundamental(disc):
    """Fundamental unit (t + u sqrt(disc)) / 2 of the order of discriminant
    disc > 0 non-square, as (t, u, norm) with norm in {+1, -1}."""
    if disc <= 0 or is_square(disc):
        raise ValueError("need a positive non-square discriminant")
    b0 = disc % 2
    F0 = (1, b0, (b0 * b0 - disc) // 4)
    Fr, _ = indef_reduce(F0, disc)
    g = IDENT
    F = Fr
    while True:
        F, step = rho_step(F, disc)
        g = mat_mul(step, g)
        if F == Fr:
            break
    assert act_quad(g, Fr) == Fr
    t = abs(g[0][0] + g[1][1])
    A = Fr[0]
    if g[0][1] % A:
        raise RuntimeError("automorph does not match the expected shape")
    u = abs(g[0][1] // A)
    assert t * t - disc * u * u == 4
    # norm -1 refinement: the automorph is the square of the fundamental
    # unit exactly when t - 2 = a^2, a | u and disc (u/a)^2 = t + 2.
    a = isqrt(t - 2)
    if a > 0 and a * a == t - 2 and u % a == 0 and disc * (u // a) ** 2 == t + 2:
        return (a, u // a, -1)
    return (t, u, 1)


def pell_brute(disc, cap=10**7):
    """Brute-force oracle for the fundamental unit: scan u = 1, 2, ..."""
    u = 1
    while u < cap:
        for sgn in (-1, 1):
            tt = disc * u * u + 4 * sgn
            if tt >= 0 and is_square(tt):
                return (isqrt(tt), u, sgn)
        u += 1
    raise RuntimeError("no unit found below cap")


def fundamental_unit(order):
    """Fundamental unit of a real quadratic order, in (1, w) coordinates.

    Returns ((x, y), norm) with x + y w = (t + u sqrt(f^2 D)) / 2.
    """
    D, f = order.alg.D, order.f
    if D <= 1:
        raise ValueError("fundamental units live in real quadratic orders")
    t, u, nrm = pell_fundamental(order.disc)
    num = t - u * f * D
    if num % 2:
        raise RuntimeError("unit coordinates are not integral")
    eps = (Fraction(num, 2), Fraction(u * f))
    assert order.contains(eps) and order.alg.norm(eps) == nrm
    return eps, nrm


def torsion_unit_count(order):
    """Number of roots of unity in the order (D < 0), or of finite units
    in the split algebra (D = 1)."""
    alg, f = order.alg, order.f
    if alg.D > 1:
        raise ValueError("torsion count is for imaginary or split orders")
    count = 0
    for x in range(-3, 4):
        for k in range(-3, 4):
            u = (Fraction(x), Fraction(k * f))
            n = alg.norm(u)
            if n in (1, -1) and order.contains(alg.inv(u)):
                # split units may have norm -1 (e.g. components (1, -1));
                # for D < 0 only norm +1 occurs
                count += 1
    return count


def unit_index(order):
    """[O_1^* : O_f^*], the index of the unit group of the order in the
    unit group of the maximal order (modulo nothing: honest index)."""
    alg, f = order.alg, order.f
    if f == 1:
        return 1
    if alg.D < 0:
        w1 = torsion_unit_count(QuadOrder(alg, 1))
        wf = torsion_unit_count(order)
        return w1 // wf
    if alg.D == 1:
        return torsion_unit_count(QuadOrder(alg, 1)) // torsion_unit_count(order)
    eps1, _ = fundamental_unit(QuadOrder(alg, 1))
    power = (Fraction(1), Fraction(0))
    for j in range(1, 5 * f * f + 1):
        power = alg.mul(power, eps1)
        if power[1] % f == 0:
            return j
    raise RuntimeError("unit index not found within the search cap")


def u_count(D, f, fprime):
    """(f/f') prod_{p | f, p coprime to f'} (1 - (D/p)/p), as an integer.

    Counts unit-normalized classes between the conductor-f and conductor-f'
    orders; cross-checked in tests against class numbers and unit indices.
    """
    if f % fprime:
        raise ValueError("fprime must divide f")
    val = Fraction(f, fprime)
    for p in sorted(set(factorize(f))):
        if fprime % p:
            val *= Fraction(p - kronecker(D, p), p)
    assert val.denominator == 1
    return int(val)


# ---------------------------------------------------------------------------
# prime ideals


def factor_prime(order, p):
    """Factor p O_f into prime ideals; p must not divide the conductor.

    Returns (kind, primes) with kind in {"split", "inert", "ramified"}.
    """
    alg, f = order.alg, order.f
    if f % p == 0:
        raise ValueError("prime divides the conductor; the ideal is not invertible")
    D = alg.D
    m0 = alg.m0
    # minimal polynomial of W = f w is X^2 - f D X - f^2 m0, of discriminant f^2 D
    def mval(x):
        return x * x - f * D * x - f * f * m0

    chi = kronecker(D, p)
    if chi == -1:
        return "inert", [order.lattice.scale_elt((Fraction(p), Fraction(0)))]
    if p == 2:
        roots = sorted({r for r in (0, 1) if mval(r) % 2 == 0})
    elif chi == 0:
        inv2 = pow(2, -1, p)
        roots = [(f * D * inv2) % p]
    else:
        s = sqrt_mod((f * f * D) % p, p)
        inv2 = pow(2, -1, p)
        roots = sorted({((f * D + s) * inv2) % p, ((f * D - s) * inv2) % p})
    primes = [QuadLattice(alg, 1, p, (-r) % p, f) for r in roots]
    if chi == 1:
        if len(primes) != 2:
            raise RuntimeError(f"split prime {p} should have two factors")
        return "split", primes
    return "ramified", primes


# ---------------------------------------------------------------------------
# the dictionary between ideals and forms


def form_from_ideal(order, ideal):
    """The binary quadratic form x, y -> N(x e2 + y e1) / N(ideal) in the
    oriented basis (e2, e1) of the ideal."""
    alg = order.alg
    n = order.norm_of(ideal)
    e1, e2 = ideal.basis()
    A = alg.norm(e2) / n
    B = alg.trace(alg.mul(e2, alg.conj(e1))) / n
    C = alg.norm(e1) / n
    if any(v.denominator != 1 for v in (A, B, C)):
        raise ValueError("ideal is not proper for this order")
    F = (int(A), int(B), int(C))
    if bqf_disc(F) != order.disc:
        raise ValueError("ideal is not proper for this order")
    return F


def ideal_from_form(order, F):
    """The lattice Z A + Z ((-B - f D)/2 + f w) attached to the form."""
    A, B, C = F
    if bqf_disc(F) != order.disc:
        raise ValueError("form has the wrong discriminant")
    if A == 0:
        raise ValueError("form must have a nonzero leading coefficient")
    fD = order.f * order.alg.D
    if (B + fD) % 2:
        raise ValueError("form has the wrong parity")
    beta = (-B - fD) // 2
    return QuadLattice(order.alg, 1, abs(A), beta % abs(A), order.f)


def split_unit_ideal(order, t):
    """The ideal Z (1, t) + Z (0, m) of the split order of conductor m."""
    alg, m = order.alg, order.f
    if alg.D != 1:
        raise ValueError("split representatives live in the split algebra")
    if gcd(t, m) != 1 if m > 1 else False:
        raise ValueError("residue must be invertible modulo the conductor")
    return QuadLattice.from_generators(
        alg, [(Fraction(1), Fraction(t - 1)), (Fraction(0), Fraction(m))]
    )


def _split_is_principal(order, L):
    """Exact principality test in the split algebra by divisor scan."""
    alg, m = order.alg, order.f
    Lint = QuadLattice(alg, 1, L.a, L.b, L.c)
    nu = Lint.covolume() / m
    if nu.denominator != 1:
        raise ValueError("split ideal norm is not an integer")
    nu = int(nu)
    for d in divisors(nu):
        for s1 in (1, -1):
            for s2 in (1, -1):
                z = alg.from_components(s1 * d, s2 * (nu // d))
                if alg.norm(z) == 0:
                    continue
                if Lint.contains(z) and order.principal(z) == Lint:
                    return True
    return False


def _split_component_hnf(L):
    """Component-coordinate HNF (e, g, h) of an integral split lattice:
    L = Z (e, g) + Z (0, h) with e, h > 0 and 0 <= g < h."""
    rows = []
    for x, y in L.basis():
        if x.denominator != 1 or y.denominator != 1:
            raise ValueError("lattice is not integral")
        rows.append((int(x), int(x + y)))
    (x1, y1), (x2, y2) = rows
    # make the first column (e, 0) by a unimodular row operation
    gG, u, v = xgcd(x1, x2)
    e = abs(gG)
    if gG < 0:
        u, v = -u, -v
    g = u * y1 + v * y2
    h = abs(x1 // gG * y2 - x2 // gG * y1)
    if e == 0 or h == 0:
        raise ValueError("lattice is degenerate")
    return e, g % h, h


def _split_residue_prime_to_conductor(order, L):
    """Residue t with L ~ (c0 Z x c1 Z) * a_t, for an integral invertible
    ideal L prime to the conductor; its component HNF (e, g, h) has
    e = c0, h = c1 * m and g = c1 * t."""
    m = order.f
    e, g, h = _split_component_hnf(L)
    if h % m:
        raise ValueError("split ideal is not prime to the conductor")
    c1 = h // m
    if e * c1 * m != L.covolume() or g % c1:
        raise ValueError("split ideal is not prime to the conductor")
    t = (g // c1) % m
    if gcd(t, m) != 1 or gcd(e * c1, m) != 1:
        raise ValueError("split ideal is not prime to the conductor")
    return t


def class_key(order, ideal):
    """Canonical key of the wide ideal class of an invertible ideal."""
    D = order.alg.D
    if D < 0:
        F = form_from_ideal(order, ideal)
        red, _ = reduce_pd(F)
        return red
    if D > 1:
        return wide_form_key(form_from_ideal(order, ideal))
    m = order.f
    if m <= 2:
        return 1
    alg = order.alg
    L = QuadLattice(alg, 1, ideal.a, ideal.b, ideal.c)
    nu = L.covolume() / m
    if nu.denominator == 1 and gcd(int(nu), m) == 1:
        t = _split_residue_prime_to_conductor(order, L)
        return min(t, m - t)
    # not prime to the conductor: pick gamma in L whose norm-form value is
    # coprime to m (the norm form is primitive, so some pair with
    # 0 <= x, y <= m works); then gamma * L^{-1} is integral, prime to m,
    # and lies in the inverse class.
    b1, b2 = L.basis()
    Linv = order.inverse_of(L)
    for x in range(m + 1):
        for y in range(m + 1):
            gamma = (x * b1[0] + y * b2[0], x * b1[1] + y * b2[1])
            q = alg.norm(gamma) / nu
            if q.denominator == 1 and gcd(abs(int(q)), m) == 1:
                J = Linv.scale_elt(gamma)
                s = _split_residue_prime_to_conductor(order, J)
                sinv = pow(s, -1, m)
                return min(sinv, m - sinv)
    raise ValueError("split ideal class not recognized")


def rep_from_key(order, key):
    """A small canonical ideal representative of a class key."""
    if order.alg.D == 1:
        return split_unit_ideal(order, key)
    return ideal_from_form(order, key)


def is_principal(order, ideal):
    return class_key(order, ideal) == class_key(order, order.lattice)


# ---------------------------------------------------------------------------
# class numbers and class groups


def euler_phi(m):
    val = m
    for p in sorted(set(factorize(m))):
        val = val // p * (p - 1)
    return val


def expected_class_number(order):
    """Independent class number count, straight from reduced forms."""
    D = order.alg.D
    disc = order.disc
    if D < 0:
        return len(reduced_pd_forms(disc))
    if D > 1:
        keys = set()
        for F in reduced_indef_forms(disc):
            keys.add(wide_form_key(F))
        return len(keys)
    m = order.f
    return 1 if m <= 2 else euler_phi(m) // 2


class ClassGroup:
    """Wide ideal class group of a quadratic order, as an abelian group.

    invariants: tuple (d_1, ..., d_r) with d_1 | d_2 | ... and all d_i > 1.
    coords(ideal): exponent tuple in prod Z/d_i.
    rep(coords): a small representative ideal of that class.
    """

    def __init__(self, order):
        self.order = order
        self.h = expected_class_number(order)
        self.identity_key = class_key(order, order.lattice)
        self._build()

    def _closure(self, gens):
        table = {self.identity_key: (0,) * len(gens)}
        reps = {self.identity_key: self.order.lattice}
        rels = []
        frontier = [self.identity_key]
        while frontier:
            new = []
            for key in frontier:
                I = reps[key]
                vec = table[key]
                for i, P in enumerate(gens):
                    J = I.mul(P)
                    jkey = class_key(self.order, J)
                    jvec = vec[:i] + (vec[i] + 1,) + vec[i + 1 :]
                    if jkey in table:
                        rel = tuple(a - b for a, b in zip(jvec, table[jkey]))
                        if any(rel):
                            rels.append(rel)
                    else:
                        table[jkey] = jvec
                        reps[jkey] = rep_from_key(self.order, jkey)
                        new.append(jkey)
                    if len(table) > self.h:
                        raise RuntimeError(
                            "class group closure exceeded the expected order"
                        )
            frontier = new
        return table, reps, rels

    def _build(self):
        order = self.order
        disc = order.disc
        gens = []
        table = {self.identity_key: ()}
        rels = []
        if self.h > 1:
            bound = max(20, int(6 * log(abs(disc)) ** 2) + 1)
            for p in primes_up_to(bound):
                if kronecker(disc, p) != 1:
                    continue
                _, primes = factor_prime(order, p)
                P = primes[0]
                if class_key(order, P) in table and len(gens) > 0:
                    continue
                gens.append(P)
                table, reps, rels = self._closure(gens)
                if len(table) == self.h:
                    break
            if len(table) != self.h:
                raise RuntimeError(
                    f"class group generators below {bound} reached only "
                    f"{len(table)} of {self.h} classes"
                )
        self.prime_gens = gens
        self._table = table
        k = len(gens)
        if k == 0:
            self.invariants = ()
            self._d = ()
            self._V = ()
            self._Vinv = ()
            self._positions = ()
            return
        if not rels:
            raise RuntimeError("finite class group must have relations")
        diag, V = snf(rels, k)
        if any(d == 0 for d in diag):
            raise RuntimeError("relation lattice has deficient rank")
        prod = 1
        for d in diag:
            prod *= d
        if prod != self.h:
            raise RuntimeError(
                f"group order from relations {prod} != expected {self.h}"
            )
        self._d = tuple(diag)
        self._V = V
        Vinv = mat_fraction_inverse([[Fraction(x) for x in row] for row in V])
        self._Vinv = tuple(
            tuple(int(x) for x in row) for row in Vinv
        )
        assert all(
            Fraction(self._Vinv[i][j]) == Vinv[i][j]
            for i in range(k)
            for j in range(k)
        )
        self._positions = tuple(i for i, d in enumerate(diag) if d > 1)
        self.invariants = tuple(diag[i] for i in self._positions)

    def coords(self, ideal):
        key = class_key(self.order, ideal)
        if key not in self._table:
            raise ValueError("ideal class not reached by the generators")
        x = self._table[key]
        k = len(self._d)
        if k == 0:
            return ()
        y = [
            sum(x[j] * self._V[j][i] for j in range(k)) % self._d[i]
            for i in range(k)
        ]
        return tuple(y[i] for i in self._positions)

    def rep(self, coords):
        if len(coords) != len(self.invariants):
            raise ValueError("coordinate length mismatch")
        k = len(self._d)
        if k == 0:
            return self.order.lattice
        y = [0] * k
        for pos, c, d in zip(self._positions, coords, self.invariants):
            y[pos] = c % d
        x = [sum(y[j] * self._Vinv[j][i] for j in range(k)) for i in range(k)]
        exponent = self._d[-1]
        I = self.order.lattice
        for e, P in zip(x, self.prime_gens):
            e %= exponent
            for _ in range(e):
                I = I.mul(P)
        return rep_from_key(self.order, class_key(self.order, I))

    def elements(self):
        """All classes as coordinate tuples."""
        out = [()]
        for d in self.invariants:
            out = [t + (i,) for t in out for i in range(d)]
        return out

    def compose(self, c1, c2):
        return tuple((a + b) % d for a, b, d in zip(c1, c2, self.invariants))

    def inverse(self, c):
        return tuple((-a) % d for a, d in zip(c, self.invariants))

    def is_principal(self, ideal):
        return class_key(self.order, ideal) == self.identity_key


# ---------------------------------------------------------------------------
# integral ideals of a given norm


def ideals_of_norm(order, n):
    """All invertible integral ideals of the order with norm n, as lattices."""
    if n < 1:
        raise ValueError("norm must be a positive integer")
    alg, f = order.alg, order.f
    out = []
    w = (Fraction(0), Fraction(f))
    for A in divisors(n):
        C = n // A
        for B in range(A):
            lat = QuadLattice(alg, 1, A, B, C * f)
            if lat.covolume() != n * f:
                continue
            # O_f-module check: f w maps the basis into the lattice
            if not all(lat.contains(alg.mul(w, u)) for u in lat.basis()):
                continue
            if lat.multiplier_ring() == order.lattice:
                out.append(lat)
    return out
