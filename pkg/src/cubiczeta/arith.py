"""Elementary integer arithmetic helpers shared by the whole package.

Everything here is classical: extended gcd, deterministic Miller-Rabin,
trial-division factoring, Kronecker symbols, modular square roots,
fundamental discriminants, and a small Smith normal form used to put
finite abelian groups into cyclic form.  All functions are exact
(ints / Fractions only).
"""

from fractions import Fraction
from math import gcd, isqrt


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def primes_up_to(n):
    """List of primes <= n by sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(2, n + 1) if sieve[p]]


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin (valid far beyond 64-bit inputs we use)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n):
    """Prime factorization of |n| as a dict {p: e}; n must be nonzero."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n):
    """Sorted list of positive divisors of |n|."""
    ds = [1]
    for p, e in factorize(n).items():
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def mobius(n):
    """Moebius function of n >= 1."""
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    mu = 1
    for p, e in factorize(n).items() if n > 1 else []:
        if e > 1:
            return 0
        mu = -mu
    return mu


def is_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


_KRON2 = (0, 1, 0, -1, 0, -1, 0, 1)  # (2/b) depending on b mod 8


def kronecker(a, b):
    """Kronecker symbol (a/b) for arbitrary integers (so (1/b) = 1 always)."""
    if b == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and b % 2 == 0:
        return 0
    v = 0
    while b % 2 == 0:
        b //= 2
        v += 1
    k = 1 if v % 2 == 0 else _KRON2[a % 8]
    if b < 0:
        b = -b
        if a < 0:
            k = -k
    while a != 0:
        v = 0
        while a % 2 == 0:
            a //= 2
            v += 1
        if v % 2 == 1:
            k *= _KRON2[b % 8]
        if a & b & 2:  # both = 3 mod 4: quadratic reciprocity sign
            k = -k
        r = abs(a)
        a = b % r
        b = r
    return k if b == 1 else 0


def sqrt_mod(a, p):
    """A square root of a modulo prime p, or None if a is a non-residue."""
    a %= p
    if p == 2 or a == 0:
        return a % p
    if kronecker(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while kronecker(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def squarefree_kernel(n):
    """Largest squarefree divisor of n, with the sign of n (n nonzero)."""
    s = 1 if n > 0 else -1
    for p, e in factorize(n).items():
        if e % 2 == 1:
            s *= p
    return s


def is_fundamental_discriminant(d):
    """True for discriminants of quadratic etale algebras over Q.

    That means d = 1 (the split algebra Q x Q) or the discriminant of a
    quadratic field: d = 1 mod 4 squarefree, or d = 4m with m squarefree
    and m = 2 or 3 mod 4.
    """
    if d == 1:
        return True
    if d == 0:
        return False
    if d % 4 == 1:
        return squarefree_kernel(d) == d
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and squarefree_kernel(m) == m
    return False


def fundamental_discriminant_of(n):
    """The fundamental discriminant D with n = d^2 * D, or None if no such d.

    For square n this is D = 1 (split algebra).  Every nonzero n has a
    unique candidate D = squarefree kernel adjusted mod 4; if n / D is not
    a perfect square the decomposition does not exist and None is returned.
    """
    if n == 0:
        raise ValueError("need nonzero n")
    s = squarefree_kernel(n)
    if s == 1:
        return 1
    D = s if s % 4 == 1 else 4 * s
    q, r = divmod(n, D)
    if r != 0 or not is_square(q):
        return None
    return D


def square_scale(n, D):
    """The positive integer d with n = d^2 * D (assumes it exists)."""
    q = n // D
    d = isqrt(q)
    if d * d != q or d * d * D != n:
        raise ValueError(f"{n} is not d^2 * {D}")
    return d


def mat_fraction_inverse(M):
    """Inverse of a square matrix of Fractions (Gauss-Jordan)."""
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        inv = Fraction(1) / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


def snf(rows, ncols):
    """Smith normal form of the integer matrix `rows` (list of length-ncols lists).

    Returns (diag, V) where V is a unimodular ncols x ncols matrix of column
    operations such that the relation lattice spanned by the rows becomes
    diagonal with entries diag (nonnegative, diag[i] | diag[i+1], padded with
    trailing zeros up to the rank bound).  Row operations are applied but not
    tracked: they do not change the lattice spanned by the rows, and only the
    column transform is needed to turn group generators into a cyclic basis.
    """
    M = [list(r) for r in rows]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    nrows = len(M)

    def swap_cols(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def addmul_col(dst, src, q):
        for r in M:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    def negate_col(i):
        for r in M:
            r[i] = -r[i]
        for r in V:
            r[i] = -r[i]

    def eliminate():
        k = 0
        while k < min(nrows, ncols):
            piv = None
            for i in range(k, nrows):
                for j in range(k, ncols):
                    if M[i][j] != 0 and (piv is None or abs(M[i][j]) < abs(M[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            i, j = piv
            M[k], M[i] = M[i], M[k]
            if j != k:
                swap_cols(k, j)
            if M[k][k] < 0:
                negate_col(k)
            dirty = False
            for j in range(k + 1, ncols):
                q = M[k][j] // M[k][k]
                if q:
                    addmul_col(j, k, -q)
                if M[k][j] != 0:
                    dirty = True
            for i in range(k + 1, nrows):
                q = M[i][k] // M[k][k]
                if q:
                    for j in range(ncols):
                        M[i][j] -= q * M[k][j]
                if M[i][k] != 0:
                    dirty = True
            if not dirty:
                k += 1

    def diagonal():
        return [M[i][i] for i in range(min(nrows, ncols))]

    eliminate()
    for _ in range(64 * (ncols + 1)):  # safety cap; converges long before
        diag = diagonal()
        bad = next(
            (i for i in range(len(diag) - 1) if diag[i] and diag[i + 1] % diag[i] != 0),
            None,
        )
        if bad is None:
            return diag, V
        # fold column bad+1 into column bad; re-elimination splits off the gcd
        addmul_col(bad, bad + 1, 1)
        eliminate()
    raise RuntimeError("snf did not converge")


def integer_cube_root(n):
    """The integer c with c^3 = n, or None.  Works for either sign."""
    if n < 0:
        c = integer_cube_root(-n)
        return None if c is None else -c
    c = round(n ** (1 / 3)) if n else 0
    while c ** 3 > n:
        c -= 1
    while (c + 1) ** 3 <= n:
        c += 1
    return c if c ** 3 == n else None


def rational_cube_root(q):
    """The Fraction r with r^3 = q, or None.  q is a Fraction (lowest terms)."""
    q = Fraction(q)
    a = integer_cube_root(q.numerator)
    if a is None:
        return None
    b = integer_cube_root(q.denominator)
    if b is None:
        return None
    return Fraction(a, b)


def rational_sqrt(q):
    """The nonnegative Fraction r with r^2 = q, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    if not is_square(q.numerator) or not is_square(q.denominator):
        return None
    return Fraction(isqrt(q.numerator), isqrt(q.denominator))


def _monotone_integer_root(P, Q, lo, hi):
    """Integer roots of u^3 + P u + Q on [lo, hi] where the cubic is monotone.

    Binary search on the sign change; returns a list with 0 or 1 elements.
    """
    f = lambda u: u ** 3 + P * u + Q
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return [lo]
    if fhi == 0:
        return [hi]
    if flo * fhi > 0:
        return []
    up = fhi > flo  # increasing on this interval
    while hi - lo > 1:
        mid = (lo + hi) // 2
        v = f(mid)
        if v == 0:
            return [mid]
        if (v > 0) == up:
            hi = mid
        else:
            lo = mid
    return []


def integer_roots_depressed_cubic(P, Q):
    """Sorted integer roots of u^3 + P u + Q (P, Q integers), found exactly.

    The cubic is monotone outside the critical band |u| <= sqrt(-P/3) and
    monotone decreasing strictly inside it, so three binary searches plus a
    direct scan of the few integers straddling the critical points cover
    every real root.  No floating point, no factoring.
    """
    roots = set()
    M = 2 + abs(P) + abs(Q)  # Cauchy bound on real roots
    if P >= 0:
        roots.update(_monotone_integer_root(P, Q, -M, M))
    else:
        c = isqrt((-P) // 3)
        outer, inner = c + 2, max(c - 2, 0)
        roots.update(_monotone_integer_root(P, Q, -M, -outer))
        roots.update(_monotone_integer_root(P, Q, outer, M))
        if inner > 0:
            roots.update(_monotone_integer_root(P, Q, -inner, inner))
        for u in range(-outer, -inner):
            if u ** 3 + P * u + Q == 0:
                roots.add(u)
        for u in range(inner, outer + 1):
            if u ** 3 + P * u + Q == 0:
                roots.add(u)
    return sorted(roots)


def rational_roots_monic_cubic(p, q):
    """Sorted rational roots of t^3 + p t + q for Fraction coefficients p, q.

    Substituting t = u / L with L = lcm of the denominators turns the cubic
    into a monic integer one, whose rational roots are integers.
    """
    p, q = Fraction(p), Fraction(q)
    L = p.denominator * q.denominator // gcd(p.denominator, q.denominator)
    roots = integer_roots_depressed_cubic(int(p * L * L), int(q * L ** 3))
    return [Fraction(u, L) for u in roots]
