"""Exact arithmetic in cyclotomic fields Q(zeta_e).

Elements are stored as coordinate vectors over the power basis
1, z, ..., z^(d-1) where z = exp(2 pi i / e) and d = deg Phi_e.  All
coordinates are Fractions, so equality tests are exact.  The orders e we
need are tiny (dividing 12 or so), hence no attempt at asymptotic speed.
"""

from fractions import Fraction
from functools import lru_cache

from .arith import divisors, mat_fraction_inverse


@lru_cache(maxsize=None)
def cyclotomic_poly(e):
    """Coefficients (low degree first, ints) of the e-th cyclotomic polynomial."""
    # x^e - 1 = product of Phi_d over d | e; divide out the proper divisors.
    num = [-1] + [0] * (e - 1) + [1]
    for d in divisors(e):
        if d == e:
            continue
        den = cyclotomic_poly(d)
        num = _polydiv_exact(num, den)
    return tuple(num)


def _polydiv_exact(num, den):
    """Exact division of integer polynomials (low degree first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[len(den) - 1 + k]
        assert c % den[-1] == 0
        q = c // den[-1]
        out[k] = q
        for i, dc in enumerate(den):
            num[i + k] -= q * dc
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def _reduction_rows(e):
    """x^k mod Phi_e for k = 0 .. 2d-2, as tuples of Fractions (d = deg)."""
    phi = cyclotomic_poly(e)
    d = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * d
    cur[0] = Fraction(1)
    for k in range(2 * d - 1):
        rows.append(tuple(cur))
        # multiply by x, reduce via x^d = -(phi[0] + ... + phi[d-1] x^(d-1))
        top = cur[d - 1]
        cur = [Fraction(0)] + cur[: d - 1]
        if top:
            for i in range(d):
                cur[i] -= top * phi[i]
    return tuple(rows)


class CycElt:
    """An element of Q(zeta_e) with exact Fraction coordinates."""

    __slots__ = ("e", "co")

    def __init__(self, e, co):
        self.e = e
        self.co = tuple(Fraction(c) for c in co)

    # -- constructors -------------------------------------------------
    @staticmethod
    def rational(e, value):
        d = len(cyclotomic_poly(e)) - 1
        co = [Fraction(value)] + [Fraction(0)] * (d - 1)
        return CycElt(e, co)

    @staticmethod
    def root(e, k):
        """zeta_e^k as an element of Q(zeta_e)."""
        rows = _reduction_rows(e)
        k %= e
        if k < len(rows):
            return CycElt(e, rows[k])
        if len(rows) == 1:  # e = 2, k = 1: zeta_2 = -1
            return CycElt.rational(e, (-1) ** k)
        # k can exceed 2d-2 (e.g. e = 8, d = 4): square-and-multiply on elements
        out = CycElt.rational(e, 1)
        g = CycElt(e, rows[1])
        while k:
            if k & 1:
                out = out * g
            g = g * g
            k >>= 1
        return out

    # -- coercion helpers ---------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CycElt):
            if other.e != self.e:
                raise ValueError("mixed cyclotomic orders; promote first")
            return other
        if isinstance(other, (int, Fraction)):
            return CycElt.rational(self.e, other)
        return NotImplemented

    def promote(self, e2):
        """Image of self in Q(zeta_e2), where e | e2."""
        if e2 == self.e:
            return self
        assert e2 % self.e == 0
        step = e2 // self.e
        out = CycElt.rational(e2, 0)
        for i, c in enumerate(self.co):
            if c:
                out = out + CycElt.root(e2, i * step) * c
        return out

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycElt(self.e, [a + b for a, b in zip(self.co, o.co)])

    __radd__ = __add__

    def __neg__(self):
        return CycElt(self.e, [-a for a in self.co])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = len(self.co)
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.co):
            if a:
                for j, b in enumerate(o.co):
                    if b:
                        prod[i + j] += a * b
        rows = _reduction_rows(self.e)
        out = [Fraction(0)] * d
        for k, c in enumerate(prod):
            if c:
                row = rows[k]
                for i in range(d):
                    out[i] += c * row[i]
        return CycElt(self.e, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = CycElt.rational(self.e, 1)
        g = self
        while n:
            if n & 1:
                out = out * g
            g = g * g
            n >>= 1
        return out

    def inv(self):
        """Multiplicative inverse via the multiplication matrix."""
        d = len(self.co)
        cols = []
        for j in range(d):
            basis = CycElt(self.e, [Fraction(int(i == j)) for i in range(d)])
            cols.append((self * basis).co)
        M = [[cols[j][i] for j in range(d)] for i in range(d)]
        Minv = mat_fraction_inverse(M)
        return CycElt(self.e, [Minv[i][0] for i in range(d)])

    # -- predicates / extraction ---------------------------------------
    def is_zero(self):
        return all(c == 0 for c in self.co)

    def is_rational(self):
        return all(c == 0 for c in self.co[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"not rational: {self}")
        return self.co[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycElt.rational(self.e, other)
        if not isinstance(other, CycElt):
            return NotImplemented
        return self.e == other.e and self.co == other.co

    def __hash__(self):
        return hash((self.e, self.co))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.co):
            if c:
                terms.append(f"{c}" if i == 0 else (f"{c}*z^{i}" if i > 1 else f"{c}*z"))
        return "CycElt(%d: %s)" % (self.e, " + ".join(terms) if terms else "0")
