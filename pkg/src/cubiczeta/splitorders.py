"""Ideal theory and L-series for the orders Z*1 + m Z^r inside Q^r.

The algebra is a product of r = n + 1 copies of Q with componentwise
multiplication.  Invertible ideals of the order of conductor m are
classified by residue tuples: a_t = Z (1, t_1, ..., t_n) + m Z^r with
each t_i invertible mod m, multiplying componentwise.  The class group
is ((Z/m)^*)^n when principality requires a totally positive generator
("with infinity") and ((Z/m)^*/{+-1})^n otherwise.

Characters are n-tuples of Dirichlet characters mod m.  The prime-to-m
L-series of a tuple factors as a product of n + 1 integer Dirichlet
series (the n components and the inverse of their product); the full
L-series decomposes over intermediate levels m' with integral unit-count
weights, and a Moebius sum inverts the decomposition.  Everything here
is checked against a brute-force ideal enumerator that only uses the
module axioms: an order-stable lattice is sandwiched between the direct
sum of its component projections and m times that sum.
"""

import itertools
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .arith import divisors, factorize, mat_fraction_inverse, mobius, xgcd
from .characters import RootOfUnity
from .dirichlet import Series, dmul, root_to_value, series_mismatches, vadd, vmul


# ---------------------------------------------------------------------------
# lattices in Q^r with componentwise multiplication


def _hnf_square(rows, r):
    """Hermite form (upper triangular, positive diagonal, reduced above)
    of the full-rank lattice spanned by integer rows of length r."""
    rows = [list(row) for row in rows if any(row)]
    out = []
    for j in range(r):
        pivots = [row for row in rows if row[j] != 0]
        rest = [row for row in rows if row[j] == 0]
        if not pivots:
            raise ValueError("generators do not span a full lattice")
        piv = pivots[0]
        for row in pivots[1:]:
            g, x, y = xgcd(piv[j], row[j])
            a, b = piv[j] // g, row[j] // g
            piv, row = (
                [x * u + y * v for u, v in zip(piv, row)],
                [a * v - b * u for u, v in zip(piv, row)],
            )
            if any(row):
                rest.append(row)
        if piv[j] < 0:
            piv = [-u for u in piv]
        out.append(piv)
        rows = rest
    # reduce each row left to right so that later steps cannot disturb
    # columns already brought below their pivot
    for k in range(r - 2, -1, -1):
        for i in range(k + 1, r):
            q = out[k][i] // out[i][i]
            if q:
                out[k] = [u - q * v for u, v in zip(out[k], out[i])]
    return out


class ProdLattice:
    """Full-rank lattice in Q^r: a positive rational scale times a
    primitive integer matrix in Hermite form (rows are basis vectors)."""

    __slots__ = ("r", "q", "rows")

    def __init__(self, r, q, rows):
        self.r = r
        self.q = q
        self.rows = rows

    @classmethod
    def from_generators(cls, r, gens):
        fr = [tuple(Fraction(x) for x in g) for g in gens]
        den = 1
        for g in fr:
            for x in g:
                den = lcm(den, x.denominator)
        irows = [[int(x * den) for x in g] for g in fr]
        hnf = _hnf_square(irows, r)
        content = 0
        for row in hnf:
            for x in row:
                content = gcd(content, x)
        rows = tuple(tuple(x // content for x in row) for row in hnf)
        return cls(r, Fraction(content, den), rows)

    def basis(self):
        return [tuple(self.q * x for x in row) for row in self.rows]

    def covolume(self):
        det = 1
        for i in range(self.r):
            det *= self.rows[i][i]
        return self.q**self.r * det

    def contains(self, v):
        v = [Fraction(x) / self.q for x in v]
        coeffs = []
        for j in range(self.r):
            s = v[j]
            for i, c in enumerate(coeffs):
                s -= c * self.rows[i][j]
            c = s / self.rows[j][j]
            if c.denominator != 1:
                return False
            coeffs.append(c)
        return True

    def key(self):
        return (self.r, self.q, self.rows)

    def __eq__(self, other):
        return isinstance(other, ProdLattice) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"ProdLattice({self.q} * {self.rows})"

    def add(self, other):
        return ProdLattice.from_generators(self.r, self.basis() + other.basis())

    def mul(self, other):
        gens = [
            tuple(x * y for x, y in zip(u, v))
            for u in self.basis()
            for v in other.basis()
        ]
        return ProdLattice.from_generators(self.r, gens)

    def scale_rational(self, c):
        c = Fraction(c)
        if c <= 0:
            raise ValueError("scale by a positive rational")
        return ProdLattice(self.r, self.q * c, self.rows)

    def scale_elt(self, u):
        u = tuple(Fraction(x) for x in u)
        if any(x == 0 for x in u):
            raise ZeroDivisionError("scaling by a zero divisor collapses the lattice")
        gens = [tuple(x * y for x, y in zip(u, b)) for b in self.basis()]
        return ProdLattice.from_generators(self.r, gens)

    def _inv_transpose_rows(self):
        """Rows f with f . z integral for all z exactly when z has integer
        coordinates in this basis (the columns of the inverse basis matrix)."""
        inv = mat_fraction_inverse([list(b) for b in self.basis()])
        return [tuple(inv[i][j] for i in range(self.r)) for j in range(self.r)]

    @staticmethod
    def _integral_preimage(r, rows):
        """{z : f . z in Z for every functional f in rows}."""
        den = 1
        for row in rows:
            for x in row:
                den = lcm(den, Fraction(x).denominator)
        irows = [[int(Fraction(x) * den) for x in row] for row in rows]
        hnf = _hnf_square(irows, r)
        inv = mat_fraction_inverse(hnf)
        gens = [tuple(den * inv[i][j] for i in range(r)) for j in range(r)]
        return ProdLattice.from_generators(r, gens)

    def colon(self, other):
        """{z : z * other is contained in self} under componentwise product."""
        funcs = self._inv_transpose_rows()
        rows = []
        for w in other.basis():
            for f in funcs:
                rows.append(tuple(fx * wx for fx, wx in zip(f, w)))
        return ProdLattice._integral_preimage(self.r, rows)


# ---------------------------------------------------------------------------
# the orders and their ideals


class SplitOrder:
    """The order Z*1 + m Z^(n+1) in Q^(n+1).

    with_infinity picks the flavor of principality used for classes:
    True demands a totally positive generator, False any generator.
    """

    def __init__(self, n, m, with_infinity=True):
        if n < 1 or m < 1:
            raise ValueError("need n >= 1 components and conductor m >= 1")
        self.n = n
        self.m = m
        self.r = n + 1
        self.with_infinity = with_infinity
        gens = [(1,) * self.r]
        for i in range(self.r):
            e = [0] * self.r
            e[i] = m
            gens.append(tuple(e))
        self.lattice = ProdLattice.from_generators(self.r, gens)

    def __repr__(self):
        tag = "narrow" if self.with_infinity else "wide"
        return f"SplitOrder(n={self.n}, m={self.m}, {tag})"

    def norm_of(self, L):
        return L.covolume() / self.lattice.covolume()

    def inverse_of(self, L):
        return self.lattice.colon(L)

    def is_invertible(self, L):
        return L.mul(self.inverse_of(L)) == self.lattice

    def unit_signs(self):
        """Sign vectors that are units of the order: s_i = s_0 mod m."""
        out = []
        for signs in itertools.product((1, -1), repeat=self.r):
            if all((s - signs[0]) % self.m == 0 for s in signs):
                out.append(signs)
        return out


def unit_ideal(order, t):
    """The ideal Z (1, t_1, ..., t_n) + m Z^r for a residue tuple t."""
    m, r = order.m, order.r
    if len(t) != order.n:
        raise ValueError("need one residue per non-leading component")
    if m > 1 and any(gcd(x, m) != 1 for x in t):
        raise ValueError("residues must be invertible modulo the conductor")
    gens = [(1,) + tuple(t)]
    for i in range(r):
        e = [0] * r
        e[i] = m
        gens.append(tuple(e))
    return ProdLattice.from_generators(r, gens)


def rep_ideal(order, t):
    """A fractional ideal whose class tuple is t.  The lattice
    Z (1, s) + m Z^r with s the componentwise inverse of t works: its
    integral prime-to-m representatives have content ratios t."""
    m = order.m
    if m == 1:
        return unit_ideal(order, t)
    s = tuple(pow(x % m, -1, m) for x in t)
    return unit_ideal(order, s)


def canon_tuple(order, t):
    """Canonical class tuple: residues mod m, folded by global component
    signs when principality does not look at infinity."""
    m = order.m
    if m == 1:
        return (0,) * order.n
    if order.with_infinity:
        return tuple(x % m for x in t)
    return tuple(min(x % m, (-x) % m) for x in t)


def tuple_mul(order, s, t):
    if order.m == 1:
        return canon_tuple(order, s)
    return canon_tuple(order, tuple(a * b for a, b in zip(s, t)))


def tuple_inv(order, t):
    if order.m == 1:
        return canon_tuple(order, t)
    return canon_tuple(order, tuple(pow(x, -1, order.m) for x in t))


def class_tuples(order):
    """All class tuples, canonical and sorted."""
    m = order.m
    if m == 1:
        return [(0,) * order.n]
    units = [t for t in range(1, m) if gcd(t, m) == 1]
    seen = {canon_tuple(order, t) for t in itertools.product(units, repeat=order.n)}
    return sorted(seen)


def _integral_rows(L):
    rows = []
    for b in L.basis():
        row = []
        for x in b:
            if x.denominator != 1:
                raise ValueError("lattice is not integral")
            row.append(int(x))
        rows.append(row)
    return rows


def residue_tuple(order, L):
    """(t_1, ..., t_n) with L = Z (1, t_1, ..., t_n) + m Z^r, for a lattice
    with all component contents 1 and index prime to the conductor.  Found
    by scanning L mod m for a vector with invertible leading coordinate;
    on such unit-type lattices every choice gives the same tuple."""
    m, r = order.m, order.r
    if m == 1:
        return (0,) * order.n
    rows = _integral_rows(L)
    for coeffs in itertools.product(range(m), repeat=r):
        v = [sum(c * row[i] for c, row in zip(coeffs, rows)) % m for i in range(r)]
        if gcd(v[0], m) != 1:
            continue
        inv0 = pow(v[0], -1, m)
        t = tuple(x * inv0 % m for x in v[1:])
        if any(gcd(x, m) != 1 for x in t):
            raise ValueError("ideal is not prime to the conductor")
        return t
    raise ValueError("ideal is not prime to the conductor")


def _content(vals):
    """Content of a list of rationals: gcd of numerators over lcm of
    denominators, as a positive Fraction."""
    den = 1
    for v in vals:
        den = lcm(den, v.denominator)
    num = 0
    for v in vals:
        num = gcd(num, int(v * den))
    return Fraction(num, den)


def class_tuple(order, L):
    """Canonical class tuple of an invertible fractional ideal: the mod-m
    classes of the component content ratios d_i / d_0 of an integral
    representative prime to the conductor.

    Computed by dividing out the positive content vector, reading the
    residue tuple s of the remaining unit-type lattice, and inverting:
    scaling by positive lifts of (1, 1/s_1, ..., 1/s_n) is what lands the
    lattice inside the order, so the integral representative has content
    ratios s^-1.  The positivity of the scalings carries the sign data:
    the ideals generated by (1, 2) and (1, -2) end up in different
    classes."""
    m, r = order.m, order.r
    if m == 1:
        return (0,) * order.n
    den = 1
    for b in L.basis():
        for x in b:
            den = lcm(den, x.denominator)
    Li = L.scale_rational(den)
    nrm = order.norm_of(Li)
    if nrm.denominator != 1:
        raise ValueError("integral ideal has non-integral norm")
    if gcd(int(nrm), m) == 1:
        contents = [_content([b[i] for b in Li.basis()]) for i in range(r)]
        unit_part = Li.scale_elt(tuple(Fraction(1) / c for c in contents))
        s = residue_tuple(order, unit_part)
        t = tuple(pow(x, -1, m) for x in s)
        return canon_tuple(order, t)
    # not prime to m: pick gamma in Li with norm ratio coprime to m, so
    # gamma * Li^-1 is integral, prime to m, and in the inverse class
    rows = _integral_rows(Li)
    for coeffs in itertools.product(range(m + 1), repeat=r):
        gamma = tuple(sum(c * row[i] for c, row in zip(coeffs, rows)) for i in range(r))
        ng = 1
        for x in gamma:
            ng *= x
        if ng == 0:
            continue
        q = Fraction(abs(ng)) / nrm
        if q.denominator != 1 or gcd(int(q), m) != 1:
            continue
        J = order.inverse_of(Li).scale_elt(gamma)
        tJ = class_tuple(order, J)
        cls = tuple_inv(order, tJ)
        if order.with_infinity:
            eps = tuple(1 if gamma[0] * x > 0 else m - 1 for x in gamma[1:])
            cls = tuple_mul(order, cls, eps)
        return cls
    raise ValueError("no multiplier prime to the conductor was found")


def connecting_multiplier(order, A, B):
    """An equivariant multiplier g with g * A == B, or None.

    A and B must be integral ideals of index prime to m.  Any such
    multiplier has to be a component content ratio twisted by signs:
    writing A = d * U and B = e * V with d, e the positive content
    vectors and U, V of content one, g * A == B forces (g d / e) * U = V,
    and a diagonal scaling between content-one lattices has components of
    absolute value one.  So trying g = (e/d) * s over sign vectors s is
    exhaustive.  The narrow flavor admits only positive component ratios,
    which pins s to all-ones; -g spans the same lattice, so one candidate
    suffices there and 2^(r-1) in the wide case.
    """
    r = order.r
    da = [_content([b[i] for b in A.basis()]) for i in range(r)]
    db = [_content([b[i] for b in B.basis()]) for i in range(r)]
    base = [db[i] / da[i] for i in range(r)]
    if order.with_infinity:
        signs = [(1,) * r]
    else:
        signs = [(1,) + s for s in itertools.product((1, -1), repeat=r - 1)]
    for s in signs:
        g = tuple(base[i] * s[i] for i in range(r))
        if A.scale_elt(g) == B:
            return g
    return None


def coset_class_count(order, N):
    """Number of equivariant-multiplier orbits among the integral ideals
    of index <= N prime to m, computed with no reference to class tuples."""
    m = order.m
    ideals = [
        L for nrm, L in brute_force_ideals(order, N) if gcd(int(nrm), m) == 1
    ]
    reps = []
    for L in ideals:
        if not any(connecting_multiplier(order, R, L) for R in reps):
            reps.append(L)
    return len(reps)


# ---------------------------------------------------------------------------
# brute-force enumeration of invertible ideals (the oracle)
#
# An order-stable lattice L with component contents c_i satisfies
# (+) m c_i Z e_i <= L <= (+) c_i Z e_i, so L is determined by c and a
# subgroup H of (Z/m)^r whose i-th coordinates have gcd 1 with m.  The
# enumeration walks subgroups and content vectors and keeps the lattices
# that pass the definitional invertibility test L * (O : L) == O.


_SUBGROUP_CACHE = {}


def _between_lattices_prime_power(q, r):
    """HNF bases of all lattices between q Z^r and Z^r (subgroups of (Z/q)^r)."""
    out = []
    diag_choices = [d for d in divisors(q)]
    for diag in itertools.product(diag_choices, repeat=r):
        # entries above the pivot of column j are reduced mod diag[j]
        pools = []
        for i in range(r):
            for j in range(i + 1, r):
                pools.append(range(diag[j]))
        for combo in itertools.product(*pools):
            rows = [[0] * r for _ in range(r)]
            it = iter(combo)
            for i in range(r):
                rows[i][i] = diag[i]
                for j in range(i + 1, r):
                    rows[i][j] = next(it)
            lat = ProdLattice(r, Fraction(1), tuple(tuple(row) for row in rows))
            if all(lat.contains((0,) * i + (q,) + (0,) * (r - i - 1)) for i in range(r)):
                out.append(rows)
    return out


def _subgroups_mod(m, r):
    """(size, rows) for every subgroup of (Z/m)^r, rows a generating basis."""
    if (m, r) in _SUBGROUP_CACHE:
        return _SUBGROUP_CACHE[(m, r)]
    pieces = []
    for p, e in sorted(factorize(m).items()) or []:
        q = p**e
        pieces.append((q, _between_lattices_prime_power(q, r)))
    if not pieces:  # m == 1
        result = [(1, [[1 if i == j else 0 for j in range(r)] for i in range(r)])]
        _SUBGROUP_CACHE[(m, r)] = result
        return result
    mod = 1
    current = [(1, [[1 if i == j else 0 for j in range(r)] for i in range(r)])]
    for q, lats in pieces:
        new_mod = mod * q
        # u = 1 mod `mod`, 0 mod q;  v = 1 - u does the opposite
        if mod == 1:
            u, v = 0, 1
        else:
            g, a, b = xgcd(mod, q)
            u = (b * q) % new_mod  # 1 mod `mod`, 0 mod q
            v = (a * mod) % new_mod
        merged = []
        for size1, rows1 in current:
            for rows2 in lats:
                det2 = 1
                for i in range(r):
                    det2 *= rows2[i][i]
                size2 = q**r // det2
                gens = [[u * x for x in row] for row in rows1]
                gens += [[v * x for x in row] for row in rows2]
                for i in range(r):
                    e = [0] * r
                    e[i] = new_mod
                    gens.append(e)
                hnf = _hnf_square(gens, r)
                merged.append((size1 * size2, hnf))
        current = merged
        mod = new_mod
    result = sorted(
        ((size, rows) for size, rows in current),
        key=lambda sr: (sr[0], sr[1]),
    )
    _SUBGROUP_CACHE[(m, r)] = result
    return result


def _product_tuples(P, r):
    """Ordered r-tuples of positive integers with the given product."""
    if r == 1:
        yield (P,)
        return
    for d in divisors(P):
        for rest in _product_tuples(P // d, r - 1):
            yield (d,) + rest


def brute_force_ideals(order, N, prefilter=True):
    """All invertible integral ideals of index <= N, as (norm, lattice).

    Kept deliberately dumb: enumerate content vectors and mod-m subgroups
    (every lattice between m*C and C = (+) c_i Z e_i is automatically
    order-stable), then keep the lattices inside the order that pass the
    definitional invertibility test.  With prefilter=True only subgroups
    of size exactly m are tried (locally free modules have index-m residue
    groups); prefilter=False scans every subgroup and is used at small
    scale to validate the shortcut.
    """
    m, r = order.m, order.r
    if r > 3 or m > 6 or N > 60:
        raise ValueError("oracle scope: at most 3 components, conductor 6, norm 60")
    out = []
    for size, hrows in _subgroups_mod(m, r):
        if prefilter and size != m:
            continue
        ok = True
        for i in range(r):
            g = gcd(m, 0)
            for row in hrows:
                g = gcd(g, row[i])
            if gcd(g, m) != 1:
                ok = False
                break
        if not ok:
            continue
        for nrm in range(1, N + 1):
            P, rem = divmod(nrm * size, m)
            if rem:
                continue
            for c in _product_tuples(P, r):
                gens = [tuple(c[i] * row[i] for i in range(r)) for row in hrows]
                for i in range(r):
                    e = [0] * r
                    e[i] = m * c[i]
                    gens.append(tuple(e))
                L = ProdLattice.from_generators(r, gens)
                if order.norm_of(L) != nrm:
                    continue
                if not all(order.lattice.contains(b) for b in L.basis()):
                    continue
                if order.is_invertible(L):
                    out.append((nrm, L))
    out.sort(key=lambda pair: (pair[0], pair[1].key()))
    return out


# ---------------------------------------------------------------------------
# Dirichlet characters mod m and tuple characters


_LOG_CACHE = {}


def _mult_order(g, mod):
    k, x = 1, g % mod
    while x != 1:
        x = x * g % mod
        k += 1
    return k


def _unit_logs(m):
    """(orders, table): generator orders of (Z/m)^* as a direct product and
    the discrete-log tuple of every unit."""
    if m in _LOG_CACHE:
        return _LOG_CACHE[m]
    gens = []
    for p, e in sorted(factorize(m).items()) or []:
        pe = p**e
        if p == 2:
            local = []
            if e == 2:
                local = [(3, 2)]
            elif e >= 3:
                local = [(pe - 1, 2), (5, 2 ** (e - 2))]
        else:
            phi = pe // p * (p - 1)
            g = next(
                g for g in range(2, pe) if g % p and _mult_order(g, pe) == phi
            )
            local = [(g, phi)]
        q = m // pe
        for g, d in local:
            if q == 1:
                gens.append((g % m, d))
            else:
                # lift: = g mod p^e, = 1 mod m / p^e
                _, a, b = xgcd(pe, q)
                gens.append(((g * b * q + a * pe) % m, d))
    orders = tuple(d for _, d in gens)
    table = {}
    for exps in itertools.product(*(range(d) for d in orders)):
        t = 1
        for (g, _), e in zip(gens, exps):
            t = t * pow(g, e, m) % m
        table[t] = exps
    if m == 1:
        table = {0: ()}
    _LOG_CACHE[m] = (orders, table)
    return orders, table


class DirichletChar:
    """A character of (Z/m)^*, stored as its table of root-of-unity values."""

    __slots__ = ("m", "table")

    def __init__(self, m, table):
        self.m = m
        self.table = dict(table)

    @classmethod
    def from_exponents(cls, m, exps):
        orders, logs = _unit_logs(m)
        if len(exps) != len(orders):
            raise ValueError("one exponent per unit-group generator")
        table = {}
        for t, lg in logs.items():
            fr = Fraction(0)
            for e, a, d in zip(exps, lg, orders):
                fr += Fraction(e * a, d)
            table[t] = RootOfUnity.from_fraction(fr)
        return cls(m, table)

    def value(self, j):
        if self.m == 1:
            return self.table[0]
        return self.table[j % self.m]

    def order(self):
        return lcm(1, *(v.order() for v in self.table.values()))

    def is_even(self):
        if self.m <= 2:
            return True
        return self.table[self.m - 1].is_one()

    def mul(self, other):
        if self.m != other.m:
            raise ValueError("characters live at different levels")
        return DirichletChar(
            self.m, {t: v.mul(other.table[t]) for t, v in self.table.items()}
        )

    def inv(self):
        return DirichletChar(self.m, {t: v.inv() for t, v in self.table.items()})

    def _key(self):
        return (self.m, tuple(sorted((t, v.numerator, v.denominator) for t, v in self.table.items())))

    def __eq__(self, other):
        return isinstance(other, DirichletChar) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"DirichletChar(m={self.m})"

    def conductor(self):
        if self.m == 1:
            return 1
        for g in divisors(self.m):
            ok = True
            ts = list(self.table)
            for i, t1 in enumerate(ts):
                for t2 in ts[i + 1:]:
                    if (t1 - t2) % g == 0 and self.table[t1] != self.table[t2]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return g
        raise AssertionError("conductor scan failed")

    def at_level(self, mp):
        """The character mod mp inducing or induced by this one; the new
        level must be a multiple of the conductor."""
        f = self.conductor()
        if mp % f:
            raise ValueError("level must be a multiple of the conductor")
        if mp == self.m:
            return self
        if self.m % mp == 0:
            # descend: evaluate on any lift that stays coprime to m
            if mp == 1:
                return DirichletChar(1, {0: RootOfUnity.one()})
            table = {}
            for tp in range(1, mp):
                if gcd(tp, mp) != 1:
                    continue
                t = next(
                    tp + k * mp
                    for k in range(self.m // mp + 1)
                    if gcd(tp + k * mp, self.m) == 1
                )
                table[tp] = self.table[t % self.m]
            return DirichletChar(mp, table)
        # otherwise go down to the conductor and lift: the value of the
        # primitive character only depends on the residue mod f
        prim = self.at_level(f)
        table = {tp: prim.value(tp) for tp in range(1, mp) if gcd(tp, mp) == 1}
        return DirichletChar(mp, table)


def dirichlet_characters(m):
    """All characters of (Z/m)^*, in lexicographic exponent order."""
    orders, _ = _unit_logs(m)
    return [
        DirichletChar.from_exponents(m, exps)
        for exps in itertools.product(*(range(d) for d in orders))
    ]


def tuple_characters(order):
    """All class characters of the order as n-tuples of Dirichlet
    characters mod m; without infinity only even components occur."""
    chars = dirichlet_characters(order.m)
    if not order.with_infinity:
        chars = [c for c in chars if c.is_even()]
    return list(itertools.product(chars, repeat=order.n))


def tuple_char_value(chis, t):
    ru = RootOfUnity.one()
    for chi, x in zip(chis, t):
        ru = ru.mul(chi.value(x))
    return ru


def tuple_conductor(chis):
    return lcm(1, *(chi.conductor() for chi in chis))


# ---------------------------------------------------------------------------
# L-series: product form, level decomposition, Moebius inversion, oracle


def _char_series(chi, N, e):
    acc = {}
    m = chi.m
    for j in range(1, N + 1):
        if m > 1 and gcd(j, m) != 1:
            continue
        acc[j] = root_to_value(chi.value(j), e)
    return Series(N, acc)


def l_star_product(chis, N):
    """Prime-to-m L-series of a character tuple as a product of n + 1
    integer Dirichlet series: the components and their inverse product."""
    factors = list(chis) + [reduce(lambda a, b: a.mul(b), chis).inv()]
    e = lcm(1, *(c.order() for c in factors))
    out = None
    for chi in factors:
        s = _char_series(chi, N, e)
        out = s if out is None else dmul(out, s)
    return out


_CLASSIFIED_CACHE = {}


def _classified_ideals(order, N):
    """(norm, class tuple) for every invertible integral ideal of index
    <= N, cached per order."""
    key = (order.n, order.m, order.with_infinity, N)
    if key not in _CLASSIFIED_CACHE:
        _CLASSIFIED_CACHE[key] = [
            (nrm, class_tuple(order, L)) for nrm, L in brute_force_ideals(order, N)
        ]
    return _CLASSIFIED_CACHE[key]


def ideal_l_series(order, chis, N, prime_to_level=False):
    """Oracle: sum character values of classes over brute-forced ideals."""
    if len(chis) != order.n:
        raise ValueError("need one character per non-leading component")
    if not order.with_infinity and any(not c.is_even() for c in chis):
        raise ValueError("wide classes only carry even characters")
    e = lcm(1, *(c.order() for c in chis))
    acc = {}
    for nrm, t in _classified_ideals(order, N):
        if prime_to_level and gcd(nrm, order.m) != 1:
            continue
        v = root_to_value(tuple_char_value(chis, t), e)
        acc[nrm] = vadd(acc.get(nrm, 0), v)
    return Series(N, acc)


def prime_to_conductor_class_counts(order, N):
    """Counts of invertible integral ideals prime to m by (norm, class),
    via componentwise counting instead of lattice enumeration.

    Such an ideal is d * (Z (1, s) + m Z^r) for a positive content vector
    d: integrality forces s_i = d_0 * d_i^{-1} mod m, so the ideals of
    norm j are in bijection with the ordered factorizations of j into r
    positive parts, and the class tuple is the content ratios d_i / d_0
    mod m.  No cost guard; this scales to the index bound of the product
    identity rather than the lattice oracle's.
    """
    m, n, r = order.m, order.n, order.r
    out = {}
    for j in range(1, N + 1):
        if gcd(j, m) != 1:
            continue
        for d in _product_tuples(j, r):
            if m == 1:
                t = (0,) * n
            else:
                t = tuple(d[i + 1] * pow(d[0], -1, m) % m for i in range(n))
            key = (j, canon_tuple(order, t))
            out[key] = out.get(key, 0) + 1
    return out


def u_weight(n, m, mp):
    """((m/m') * prod over p | m, p coprime to m' of (1 - 1/p))^n, the
    integral unit-count weight of the level decomposition."""
    if m % mp:
        raise ValueError("m' must divide m")
    val = Fraction(m, mp)
    for p in sorted(factorize(m)):
        if mp % p:
            val *= Fraction(p - 1, p)
    out = val**n
    assert out.denominator == 1
    return int(out)


def unit_index(n, m, mp, with_infinity):
    """Index of the equivariant units of the level-m order inside those of
    the level-m' order (m' | m, so the latter group is the larger one)."""
    if with_infinity:
        return 1  # the only equivariant sign vectors are +-(1, ..., 1)
    big = SplitOrder(n, mp, with_infinity)
    small = SplitOrder(n, m, with_infinity)
    return len(big.unit_signs()) // len(small.unit_signs())


def u_weight_by_groups(n, m, mp, with_infinity):
    """The same weight from actual groups: unit index times the ratio of
    class numbers of the two orders."""
    big = SplitOrder(n, m, with_infinity)
    small = SplitOrder(n, mp, with_infinity)
    index = unit_index(n, m, mp, with_infinity)
    return index * len(class_tuples(big)) // len(class_tuples(small))


def l_level_sum(chis, m, N):
    """Full L-series over all invertible integral ideals, assembled level
    by level: sum over cond | m' | m of u_weight * (m/m')^{-r s} times the
    prime-to-m' series of the tuple at level m'."""
    n = len(chis)
    r = n + 1
    f = tuple_conductor(chis)
    if m % f:
        raise ValueError("conductor must divide the level")
    acc = {}
    for mp in divisors(m):
        if mp % f:
            continue
        t = (m // mp) ** r
        if t > N:
            continue
        w = u_weight(n, m, mp)
        sub = [chi.at_level(mp) for chi in chis]
        for j, v in l_star_product(sub, N // t).items():
            idx = t * j
            acc[idx] = vadd(acc.get(idx, 0), vmul(w, v))
    return Series(N, acc)


def l_star_mobius(chis, m, N):
    """Moebius inversion of the level decomposition, recovering the
    prime-to-m series from the full ones at intermediate levels."""
    n = len(chis)
    r = n + 1
    f = tuple_conductor(chis)
    acc = {}
    for mp in divisors(m):
        if mp % f:
            continue
        mu = mobius(m // mp)
        if mu == 0:
            continue
        t = (m // mp) ** r
        if t > N:
            continue
        w = mu * u_weight(n, m, mp)
        sub = [chi.at_level(mp) for chi in chis]
        for j, v in l_level_sum(sub, mp, N // t).items():
            idx = t * j
            acc[idx] = vadd(acc.get(idx, 0), vmul(w, v))
    return Series(N, acc)


# ---------------------------------------------------------------------------
# bundled consistency checks (used by the command line driver and tests)


def rep_isomorphism_errors(order):
    """Exhaustive check that residue tuples classify ideal classes:
    representatives round-trip, multiply componentwise, and invert."""
    errors = []
    reps = class_tuples(order)
    for t in reps:
        got = class_tuple(order, rep_ideal(order, t))
        if got != t:
            errors.append(("rep", t, got))
    for s in reps:
        for t in reps:
            prod = class_tuple(order, rep_ideal(order, s).mul(rep_ideal(order, t)))
            if prod != tuple_mul(order, s, t):
                errors.append(("mul", s, t, prod))
    for t in reps:
        inv = class_tuple(order, order.inverse_of(rep_ideal(order, t)))
        if inv != tuple_inv(order, t):
            errors.append(("inv", t, inv))
    return errors


def product_identity_mismatches(order, N):
    """Prime-to-m series: character-sum oracle against the n+1-fold
    product of integer Dirichlet series, for every tuple character."""
    out = []
    for chis in tuple_characters(order):
        lhs = ideal_l_series(order, chis, N, prime_to_level=True)
        rhs = l_star_product(chis, N)
        for n, a, b in series_mismatches(lhs, rhs):
            out.append((chis, n, a, b))
    return out


def level_identity_mismatches(order, N):
    """Full series: oracle against the level decomposition."""
    out = []
    for chis in tuple_characters(order):
        lhs = ideal_l_series(order, chis, N)
        rhs = l_level_sum(chis, order.m, N)
        for n, a, b in series_mismatches(lhs, rhs):
            out.append((chis, n, a, b))
    return out


def inversion_mismatches(order, N):
    """Moebius round trip back to the prime-to-m series."""
    out = []
    for chis in tuple_characters(order):
        lhs = l_star_mobius(chis, order.m, N)
        rhs = l_star_product(chis, N)
        for n, a, b in series_mismatches(lhs, rhs):
            out.append((chis, n, a, b))
    return out


def unit_weight_mismatches(n, m):
    """Closed formula for the level weights against the group-order route,
    for both principality flavors and every divisor level."""
    out = []
    for mp in divisors(m):
        formula = u_weight(n, m, mp)
        for with_infinity in (True, False):
            groups = u_weight_by_groups(n, m, mp, with_infinity)
            if formula != groups:
                out.append((n, m, mp, with_infinity, formula, groups))
    return out


def multiplier_congruence_errors(order, N):
    """Pairwise check of the class map against raw multiplier equivalence.

    Over all pairs of integral ideals of index <= N prime to m: two ideals
    share a class tuple exactly when an equivariant multiplier connects
    them, and every connecting multiplier has component ratios g_i / g_0
    congruent to 1 mod m (positive as well in the narrow flavor).
    """
    m = order.m
    ideals = [
        (L, class_tuple(order, L))
        for nrm, L in brute_force_ideals(order, N)
        if gcd(int(nrm), m) == 1
    ]
    errors = []
    for i, (A, ta) in enumerate(ideals):
        for B, tb in ideals[i + 1 :]:
            g = connecting_multiplier(order, A, B)
            if (ta == tb) != (g is not None):
                errors.append(("link", A.key(), B.key(), ta, tb))
                continue
            if g is None:
                continue
            for k in range(1, order.r):
                ratio = g[k] / g[0]
                if order.with_infinity and ratio <= 0:
                    errors.append(("sign", A.key(), B.key(), k, ratio))
                diff = ratio - 1
                if diff.numerator % m or gcd(diff.denominator, m) != 1:
                    errors.append(("congruence", A.key(), B.key(), k, ratio))
    return errors


def class_level_mismatches(order, N):
    """Class-by-class refinement of the level decomposition.

    The count of invertible integral ideals of a fixed class at level m
    and index j equals, summed over factorizations c * m' = m, the unit
    index times the count of prime-to-m' ideals at level m' of index
    j / c^r whose class is the image of the fixed class.  The scalar ideal
    c O_{m'} is principal here, so no class shift appears.
    """
    m, r = order.m, order.r
    out = []
    for t in class_tuples(order):
        lhs = [0] * (N + 1)
        for nrm, cls in _classified_ideals(order, N):
            if cls == t:
                lhs[nrm] += 1
        rhs = [0] * (N + 1)
        for mp in divisors(m):
            c = m // mp
            sub = SplitOrder(order.n, mp, order.with_infinity)
            w = unit_index(order.n, m, mp, order.with_infinity)
            tt = canon_tuple(sub, t)
            shift = c**r
            if shift > N:
                continue
            for nrm, cls in _classified_ideals(sub, N // shift):
                if gcd(nrm, mp) == 1 and cls == tt:
                    rhs[nrm * shift] += w
        for j in range(1, N + 1):
            if lhs[j] != rhs[j]:
                out.append((t, j, lhs[j], rhs[j]))
    return out
