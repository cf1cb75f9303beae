"""Quadratic etale algebras over Q and their full-rank lattices.

An algebra is determined by a fundamental discriminant D (D = 1 gives the
split algebra Q x Q).  Elements are pairs (x, y) of Fractions in the basis
{1, w} with w = (D + sqrt(D)) / 2, so w^2 = D*w - D*(D - 1)/4.

A lattice is stored in Hermite normal form q * (Z*a + Z*(b + c*w)) with
q a positive rational, a, c positive integers, 0 <= b < a and gcd(a, b, c)
equal to 1.  This normal form makes equality testing trivial.
"""

from fractions import Fraction
from math import gcd

from .arith import is_fundamental_discriminant

ZERO = (Fraction(0), Fraction(0))
ONE = (Fraction(1), Fraction(0))


class QuadAlgebra:
    """Q(sqrt(D)) for a fundamental discriminant D; Q x Q when D = 1."""

    __slots__ = ("D", "m0")

    def __init__(self, D):
        if not is_fundamental_discriminant(D):
            raise ValueError(f"{D} is not a fundamental discriminant")
        self.D = D
        # w^2 = D*w + m0
        self.m0 = -D * (D - 1) // 4

    def __repr__(self):
        return f"QuadAlgebra({self.D})"

    def __eq__(self, other):
        return isinstance(other, QuadAlgebra) and self.D == other.D

    def __hash__(self):
        return hash(("QuadAlgebra", self.D))

    def elt(self, x, y=0):
        return (Fraction(x), Fraction(y))

    def omega(self):
        return (Fraction(0), Fraction(1))

    def sqrt_disc(self):
        """sqrt(D) = 2*w - D (in the split algebra: (-1, 1) componentwise)."""
        return (Fraction(-self.D), Fraction(2))

    def mul(self, u, v):
        x1, y1 = u
        x2, y2 = v
        yy = y1 * y2
        return (x1 * x2 + self.m0 * yy, x1 * y2 + y1 * x2 + self.D * yy)

    def conj(self, u):
        x, y = u
        return (x + self.D * y, -y)

    def norm(self, u):
        x, y = u
        return x * x + self.D * x * y - self.m0 * y * y

    def trace(self, u):
        x, y = u
        return 2 * x + self.D * y

    def inv(self, u):
        n = self.norm(u)
        if n == 0:
            raise ZeroDivisionError(f"{u} is a zero divisor")
        x, y = self.conj(u)
        return (x / n, y / n)

    def pow(self, u, k):
        if k < 0:
            return self.pow(self.inv(u), -k)
        r = ONE
        base = u
        while k:
            if k & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            k >>= 1
        return r

    def components(self, u):
        """Only for D = 1: image of x + y*w under Q x Q = (x, x + y)."""
        if self.D != 1:
            raise ValueError("components only make sense for the split algebra")
        x, y = u
        return (x, x + y)

    def from_components(self, u1, u2):
        if self.D != 1:
            raise ValueError("components only make sense for the split algebra")
        u1, u2 = Fraction(u1), Fraction(u2)
        return (u1, u2 - u1)


def _hnf_two_cols(rows):
    """Basis ((a, 0), (b, c)) of the lattice spanned by integer rows.

    Returns a, b, c with a, c > 0 and 0 <= b < a; raises if the rows do
    not span a rank-2 lattice.
    """
    a = 0
    b = c = 0
    for (x, y) in rows:
        if y == 0:
            a = gcd(a, x)
            continue
        if c == 0:
            b, c = x, y
            continue
        # combine (b, c) and (x, y) to reach gcd in the second coordinate
        g, s, t = _xgcd(c, y)
        nb = s * b + t * x
        # the leftover row has second coordinate 0
        a = gcd(a, (y // g) * b - (c // g) * x)
        b, c = nb, g
    if c == 0 or a == 0:
        raise ValueError("generators do not span a full lattice")
    a = abs(a)
    if c < 0:
        b, c = -b, -c
    b %= a
    return a, b, c


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class QuadLattice:
    """Full-rank lattice q * (Z*a + Z*(b + c*w)) in a quadratic algebra."""

    __slots__ = ("alg", "q", "a", "b", "c")

    def __init__(self, alg, q, a, b, c):
        q = Fraction(q)
        if q <= 0 or a <= 0 or c <= 0:
            raise ValueError("need q > 0, a > 0, c > 0")
        g = gcd(a, gcd(b % a, c))
        q, a, b, c = q * g, a // g, (b // g) % (a // g), c // g
        self.alg, self.q, self.a, self.b, self.c = alg, q, a, b % a, c

    @classmethod
    def from_generators(cls, alg, gens):
        """Smallest lattice containing the given elements."""
        fr = [(Fraction(x), Fraction(y)) for (x, y) in gens]
        den = 1
        for x, y in fr:
            den = den * x.denominator // gcd(den, x.denominator)
            den = den * y.denominator // gcd(den, y.denominator)
        rows = [(int(x * den), int(y * den)) for (x, y) in fr]
        a, b, c = _hnf_two_cols(rows)
        return cls(alg, Fraction(1, den), a, b, c)

    def basis(self):
        q = self.q
        return [(q * self.a, Fraction(0)), (q * self.b, q * self.c)]

    def covolume(self):
        """Absolute determinant of the basis in the (1, w) coordinates."""
        return self.q * self.q * self.a * self.c

    def contains(self, u):
        x, y = Fraction(u[0]), Fraction(u[1])
        n = y / (self.q * self.c)
        if n.denominator != 1:
            return False
        m = (x / self.q - n * self.b) / self.a
        return m.denominator == 1

    def key(self):
        return (self.alg.D, self.q, self.a, self.b, self.c)

    def __eq__(self, other):
        return isinstance(other, QuadLattice) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"QuadLattice(D={self.alg.D}, {self.q} * (Z*{self.a} + Z*({self.b} + {self.c}w)))"

    def add(self, other):
        return QuadLattice.from_generators(self.alg, self.basis() + other.basis())

    def mul(self, other):
        alg = self.alg
        gens = [alg.mul(u, v) for u in self.basis() for v in other.basis()]
        return QuadLattice.from_generators(alg, gens)

    def scale_rational(self, r):
        r = Fraction(r)
        if r <= 0:
            raise ValueError("scale by a positive rational")
        return QuadLattice(self.alg, self.q * r, self.a, self.b, self.c)

    def scale_elt(self, u):
        alg = self.alg
        if alg.norm(u) == 0:
            raise ZeroDivisionError("scaling by a zero divisor collapses the lattice")
        return QuadLattice.from_generators(alg, [alg.mul(u, v) for v in self.basis()])

    def _inv_basis_rows(self):
        """Rows r with r . z integral for all z in the lattice exactly when
        z has integral coordinates in this basis."""
        q, a, b, c = self.q, self.a, self.b, self.c
        return [
            (Fraction(1, 1) / (q * a), Fraction(-b, 1) / (q * a * c)),
            (Fraction(0), Fraction(1, 1) / (q * c)),
        ]

    @staticmethod
    def _integral_preimage(alg, rows):
        """{z : r . z in Z for every row r} as a QuadLattice."""
        den = 1
        for rx, ry in rows:
            den = den * rx.denominator // gcd(den, rx.denominator)
            den = den * ry.denominator // gcd(den, ry.denominator)
        irows = [(int(rx * den), int(ry * den)) for (rx, ry) in rows]
        a, b, c = _hnf_two_cols(irows)
        # row lattice basis ((a, 0), (b, c)) scaled by 1/den; its dual under
        # the dot product has basis the columns of the inverse matrix.
        g1 = (Fraction(den, a), Fraction(-den * b, a * c))
        g2 = (Fraction(0), Fraction(den, c))
        return QuadLattice.from_generators(alg, [g1, g2])

    def colon(self, other):
        """{z in the algebra : z * other is contained in self}."""
        alg = self.alg
        inv_rows = self._inv_basis_rows()
        rows = []
        for (wx, wy) in other.basis():
            # multiplication-by-w matrix, columns act on (zx, zy)
            m = ((wx, alg.m0 * wy), (wy, wx + alg.D * wy))
            for (r0, r1) in inv_rows:
                rows.append((r0 * m[0][0] + r1 * m[1][0], r0 * m[0][1] + r1 * m[1][1]))
        return QuadLattice._integral_preimage(alg, rows)

    def intersect(self, other):
        rows = self._inv_basis_rows() + other._inv_basis_rows()
        return QuadLattice._integral_preimage(self.alg, rows)

    def multiplier_ring(self):
        return self.colon(self)

    def index_in(self, other):
        """[other : self] as a positive rational (integer when self <= other)."""
        return self.covolume() / other.covolume()

    def is_sublattice_of(self, other):
        return all(other.contains(u) for u in self.basis())
