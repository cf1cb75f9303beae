"""Finite-order characters of class groups of quadratic orders.

A character of a finite abelian group G = Z/d1 x ... x Z/dk (the cyclic
decomposition computed by ClassGroup) is stored as a tuple of exponents
(e1, ..., ek); its value on the class with coordinates (c1, ..., ck) is
exp(2*pi*i * sum(ei*ci/di)).  Values are exact roots of unity and can be
promoted to cyclotomic numbers for summation.

For a pair of orders O_{k,m'} <= O_{k,m} (i.e. m' | m) the map
a |-> a*O_{k,m'} induces a surjection of class groups; `level_map` realizes
it on coordinates.  `induce` pulls a character back along that surjection,
`restrict` pushes one forward when it kills the kernel, and `conductor`
finds the smallest level m' | m through which a character factors.
"""

import threading
from fractions import Fraction
from math import gcd

from .arith import divisors
from .cyclotomic import CycElt
from .quadlat import QuadAlgebra
from .quadorders import ClassGroup, QuadOrder


class RootOfUnity:
    """exp(2*pi*i*numerator/denominator), stored in lowest terms."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator):
        if denominator <= 0:
            raise ValueError("denominator must be positive")
        numerator %= denominator
        g = gcd(numerator, denominator)
        self.numerator = numerator // g
        self.denominator = denominator // g

    @staticmethod
    def one():
        return RootOfUnity(0, 1)

    @staticmethod
    def from_fraction(fr):
        """exp(2*pi*i*fr), fr taken mod 1."""
        fr = Fraction(fr)
        return RootOfUnity(fr.numerator % fr.denominator, fr.denominator)

    def is_one(self):
        return self.numerator == 0

    def order(self):
        return self.denominator

    def mul(self, other):
        return RootOfUnity.from_fraction(
            Fraction(self.numerator, self.denominator)
            + Fraction(other.numerator, other.denominator)
        )

    def pow(self, n):
        return RootOfUnity.from_fraction(Fraction(self.numerator * n, self.denominator))

    def inv(self):
        return self.pow(-1)

    def conj(self):
        return self.inv()

    def as_cyc(self, e):
        """This root of unity as an element of Q(zeta_e); needs order() | e."""
        if e % self.denominator != 0:
            raise ValueError(f"order {self.denominator} does not divide {e}")
        return CycElt.root(e, self.numerator * (e // self.denominator))

    def __eq__(self, other):
        return (
            isinstance(other, RootOfUnity)
            and self.numerator == other.numerator
            and self.denominator == other.denominator
        )

    def __hash__(self):
        return hash(("RootOfUnity", self.numerator, self.denominator))

    def __repr__(self):
        return f"RootOfUnity({self.numerator}, {self.denominator})"


def _lcm(a, b):
    return a * b // gcd(a, b)


class Character:
    """A character of a ClassGroup, given by exponents on the cyclic factors."""

    __slots__ = ("group", "exps")

    def __init__(self, group, exps):
        d = group.invariants
        if len(exps) != len(d):
            raise ValueError("one exponent per cyclic factor")
        self.group = group
        self.exps = tuple(e % di for e, di in zip(exps, d))

    def value(self, coords):
        """Value on the class with the given coordinates, as a RootOfUnity."""
        fr = Fraction(0)
        for e, c, d in zip(self.exps, coords, self.group.invariants):
            fr += Fraction(e * c, d)
        return RootOfUnity.from_fraction(fr)

    def value_on_ideal(self, lattice):
        return self.value(self.group.coords(lattice))

    def order(self):
        n = 1
        for e, d in zip(self.exps, self.group.invariants):
            n = _lcm(n, d // gcd(d, e))
        return n

    def is_trivial(self):
        return all(e == 0 for e in self.exps)

    def mul(self, other):
        if other.group is not self.group and other.group.invariants != self.group.invariants:
            raise ValueError("characters of different groups")
        return Character(self.group, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def pow(self, n):
        return Character(self.group, tuple(e * n for e in self.exps))

    def inverse(self):
        return self.pow(-1)

    def conjugate(self):
        return self.inverse()

    def _key(self):
        o = self.group.order
        return (o.alg.D, o.f, self.exps)

    def __eq__(self, other):
        return isinstance(other, Character) and self._key() == other._key()

    def __hash__(self):
        return hash(("Character", self._key()))

    def __repr__(self):
        o = self.group.order
        return f"Character(D={o.alg.D}, f={o.f}, exps={self.exps})"


def all_characters(group):
    """Every character of the group, in lexicographic exponent order."""
    out = [()]
    for d in group.invariants:
        out = [exps + (e,) for exps in out for e in range(d)]
    return [Character(group, exps) for exps in out]


def cubic_characters(group):
    """The characters with chi^3 trivial (including the trivial one)."""
    choices = []
    for d in group.invariants:
        if d % 3 == 0:
            choices.append((0, d // 3, 2 * d // 3))
        else:
            choices.append((0,))
    out = [()]
    for ch in choices:
        out = [exps + (e,) for exps in out for e in ch]
    return [Character(group, exps) for exps in out]


# ---------------------------------------------------------------------------
# shared class-group cache


_GROUP_CACHE = {}
_GROUP_LOCK = threading.Lock()


def get_class_group(D, f):
    """ClassGroup of the order of conductor f in the algebra of discriminant D.

    Results are cached; all callers for the same (D, f) share one object.
    """
    key = (D, f)
    with _GROUP_LOCK:
        got = _GROUP_CACHE.get(key)
    if got is not None:
        return got
    grp = ClassGroup(QuadOrder(QuadAlgebra(D), f))
    with _GROUP_LOCK:
        return _GROUP_CACHE.setdefault(key, grp)


# ---------------------------------------------------------------------------
# maps between class groups at different levels


def level_map(src_group, dst_group):
    """The surjection Cl(O_{k,m}) -> Cl(O_{k,m'}) for m' | m, on coordinates.

    Sends the class of a to the class of a*O_{k,m'}.  Returns a function
    mapping src coordinates to dst coordinates.
    """
    so, do = src_group.order, dst_group.order
    if so.alg.D != do.alg.D:
        raise ValueError("orders live in different algebras")
    if so.f % do.f != 0:
        raise ValueError(f"level {do.f} does not divide level {so.f}")
    dst_lat = do.lattice
    gen_images = []
    k = len(src_group.invariants)
    for i in range(k):
        unit = tuple(1 if j == i else 0 for j in range(k))
        rep = src_group.rep(unit)
        gen_images.append(dst_group.coords(rep.mul(dst_lat)))

    d = dst_group.invariants

    def phi(coords):
        acc = [0] * len(d)
        for c, img in zip(coords, gen_images):
            for j, v in enumerate(img):
                acc[j] += c * v
        return tuple(a % dj for a, dj in zip(acc, d))

    return phi


def level_map_direct(src_group, dst_group):
    """Same map as level_map, but computed per element (slow oracle)."""
    dst_lat = dst_group.order.lattice

    def phi(coords):
        return dst_group.coords(src_group.rep(coords).mul(dst_lat))

    return phi


def kernel_coords(src_group, dst_group):
    """Coordinates of the kernel of the level map src -> dst."""
    phi = level_map(src_group, dst_group)
    ident = tuple(0 for _ in dst_group.invariants)
    return [c for c in src_group.elements() if phi(c) == ident]


def induce(chi, big_group):
    """Pull a character at level m' back to level m (m' | m): chi o phi."""
    phi = level_map(big_group, chi.group)
    d = big_group.invariants
    k = len(d)
    exps = []
    for i in range(k):
        unit = tuple(1 if j == i else 0 for j in range(k))
        v = chi.value(phi(unit))
        if d[i] % v.denominator != 0:
            raise AssertionError("induced value order must divide the factor order")
        exps.append(v.numerator * (d[i] // v.denominator))
    return Character(big_group, tuple(exps))


def restrict(chi, small_group):
    """Factor chi through the level map onto small_group, if possible.

    Requires chi to be trivial on the kernel of Cl_m -> Cl_m'; otherwise
    raises ValueError.  restrict(induce(psi, G), psi.group) == psi.
    """
    phi = level_map(chi.group, small_group)
    for c in kernel_coords(chi.group, small_group):
        if not chi.value(c).is_one():
            raise ValueError("character is not trivial on the kernel")
    d = small_group.invariants
    k = len(d)
    targets = {}
    needed = set()
    for i in range(k):
        needed.add(tuple(1 if j == i else 0 for j in range(k)))
    for c in chi.group.elements():
        img = phi(c)
        if img in needed and img not in targets:
            targets[img] = c
            if len(targets) == len(needed):
                break
    if len(targets) != len(needed):
        raise AssertionError("level map must be surjective")
    exps = []
    for i in range(k):
        unit = tuple(1 if j == i else 0 for j in range(k))
        v = chi.value(targets[unit])
        if d[i] % v.denominator != 0:
            raise ValueError("character does not factor through the smaller level")
        exps.append(v.numerator * (d[i] // v.denominator))
    psi = Character(small_group, tuple(exps))
    for c in chi.group.elements():
        if psi.value(phi(c)) != chi.value(c):
            raise ValueError("character does not factor through the smaller level")
    return psi


def conductor(chi):
    """Smallest level m' | m such that chi factors through Cl(O_{k,m'})."""
    m = chi.group.order.f
    D = chi.group.order.alg.D
    for mp in divisors(m):
        small = get_class_group(D, mp)
        if all(chi.value(c).is_one() for c in kernel_coords(chi.group, small)):
            return mp
    raise AssertionError("m itself always works")


def is_primitive(chi):
    return conductor(chi) == chi.group.order.f


def primitive_part(chi):
    """The unique primitive character inducing chi, at its conductor."""
    f = conductor(chi)
    small = get_class_group(chi.group.order.alg.D, f)
    return restrict(chi, small)
