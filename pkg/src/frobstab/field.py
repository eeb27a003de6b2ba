"""Exact arithmetic for prime fields F_p and small extensions F_{p^n}.

Elements of F_p are plain ints in [0, p).  Elements of F_{p^n} are tuples
of n ints: coordinates in the power basis 1, x, ..., x^{n-1} of the
modulus.  Both field classes expose the same protocol (zero, one, add,
sub, mul, neg, inv, frobenius, ...) so the linear algebra in
:mod:`frobstab.linalg` works over either, and over the rational function
field of :mod:`frobstab.ratfun` as well.

p is limited to 31 bits so that coefficient products fit in 64-bit
machine integers, which is what the compiled kernels assume.
"""

from .errors import InputError

MAX_P = 2**31 - 1


def is_prime(n):
    """Deterministic primality test for n < 2^31 (trial division)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field F_p for a verified prime p."""

    __slots__ = ("p",)

    def __init__(self, p):
        if not isinstance(p, int) or p < 2 or p > MAX_P:
            raise InputError(f"characteristic must be an integer in [2, 2^31-1], got {p!r}")
        if not is_prime(p):
            raise InputError(f"characteristic {p} is not prime")
        self.p = p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def element(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(a, self.p - 2, self.p)

    def pow(self, a, n):
        return pow(a, n, self.p)

    def frobenius(self, a, e=1):
        # a^(p^e) = a in F_p by Fermat.
        return a % self.p

    def frobenius_inverse(self, a, e=1):
        return a % self.p

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"F_{self.p}"


# ---------------------------------------------------------------------------
# univariate polynomial helpers over F_p, used only to run ExtField
# arithmetic.  Polynomials are coefficient lists, low degree first, with a
# nonzero last entry ([] is the zero polynomial).
# ---------------------------------------------------------------------------


def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _uadd(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _trim(out)


def _uscale(a, c, p):
    return _trim([(x * c) % p for x in a])


def _umul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _udivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = list(a)
    binv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = (a[-1] * binv) % p
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] = (a[d + i] - c * y) % p
        _trim(a)
    return _trim(q), a


def _ugcd(a, b, p):
    while b:
        a, b = b, _udivmod(a, b, p)[1]
    if a:
        a = _uscale(a, pow(a[-1], p - 2, p), p)
    return a


def _upowmod(a, n, mod, p):
    result = [1]
    base = _udivmod(a, mod, p)[1]
    while n:
        if n & 1:
            result = _udivmod(_umul(result, base, p), mod, p)[1]
        base = _udivmod(_umul(base, base, p), mod, p)[1]
        n >>= 1
    return result


def _is_irreducible(modulus, p):
    # f of degree n is irreducible over F_p iff it shares no factor with
    # x^(p^k) - x for any k <= n/2: a reducible f would have an irreducible
    # factor of some degree k <= n/2, and every such factor divides
    # x^(p^k) - x.
    n = len(modulus) - 1
    if n < 1:
        return False
    for k in range(1, n // 2 + 1):
        xpk = _upowmod([0, 1], p**k, modulus, p)
        g = _uadd(xpk, _uscale([0, 1], p - 1, p), p)
        if len(_ugcd(g, modulus, p)) != 1:
            return False
    return True


class ExtField:
    """The field F_{p^n} presented as F_p[x]/(modulus)."""

    __slots__ = ("base", "degree", "modulus")

    def __init__(self, base, modulus):
        if not isinstance(base, PrimeField):
            raise InputError("ExtField base must be a PrimeField")
        modulus = tuple(c % base.p for c in modulus)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise InputError("modulus must be monic of degree >= 1")
        if not _is_irreducible(list(modulus), base.p):
            raise InputError("modulus is reducible over the base field")
        self.base = base
        self.degree = len(modulus) - 1
        self.modulus = modulus

    @classmethod
    def of_order(cls, p, n):
        """F_{p^n} with the lexicographically smallest monic irreducible modulus."""
        base = PrimeField(p)
        if n == 1:
            raise InputError("use PrimeField for n = 1")
        for tail in _counting_tuples(n, p):
            modulus = tail + (1,)
            if _is_irreducible(list(modulus), p):
                return cls(base, modulus)
        raise AssertionError("no irreducible modulus found")  # unreachable

    @property
    def p(self):
        return self.base.p

    @property
    def order(self):
        return self.base.p**self.degree

    @property
    def zero(self):
        return (0,) * self.degree

    @property
    def one(self):
        return (1,) + (0,) * (self.degree - 1)

    def element(self, coords):
        coords = tuple(c % self.p for c in coords)
        if len(coords) != self.degree:
            raise InputError("coordinate vector has the wrong length")
        return coords

    def from_base(self, a):
        return (a % self.p,) + (0,) * (self.degree - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        prod = _umul(_trim(list(a)), _trim(list(b)), self.p)
        rem = _udivmod(prod, list(self.modulus), self.p)[1]
        return tuple(rem + [0] * (self.degree - len(rem)))

    def inv(self, a):
        ap = _trim(list(a))
        if not ap:
            raise ZeroDivisionError("inverse of zero in extension field")
        # extended euclid against the modulus
        r0, r1 = list(self.modulus), ap
        t0, t1 = [], [1]
        p = self.p
        while r1:
            q, r = _udivmod(r0, r1, p)
            r0, r1 = r1, r
            t0, t1 = t1, _uadd(t0, _uscale(_umul(q, t1, p), p - 1, p), p)
        t0 = _uscale(t0, pow(r0[0], p - 2, p), p)
        return tuple(t0 + [0] * (self.degree - len(t0)))

    def pow(self, a, n):
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def frobenius(self, a, e=1):
        return self.pow(a, self.p**e)

    def frobenius_inverse(self, a, e=1):
        # x -> x^(p^e) has order dividing `degree` on F_{p^n}
        k = (-e) % self.degree
        return self.pow(a, self.p**k) if k else a

    def elements(self):
        for coords in _counting_tuples(self.degree, self.p):
            yield coords

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtField", self.p, self.modulus))

    def __repr__(self):
        return f"F_{self.p}^{self.degree}"


def _counting_tuples(length, radix):
    """All tuples in [0, radix)^length, counting order."""
    total = radix**length
    for code in range(total):
        out = []
        for _ in range(length):
            out.append(code % radix)
            code //= radix
        yield tuple(out)
