"""Non-reducedness of k^(1/p) tensor L for an inseparable extension L/k.

Works over the imperfect field k = F_p(u, v) with the finite extension
L = k[y]/(y^(2p) + u y^p - v).  A nonzero kernel vector (a_1, ..., a_h)
of the p-th power matrix with some a_i outside k^p certifies a nonzero
nilpotent sum a_i^(1/p) (x) b_i in the tensor: its p-th power collapses
to 1 (x) sum a_i b_i^p = 0, while the non-p-th-power coefficient keeps
the element itself away from zero.
"""

from dataclasses import dataclass

from .errors import InputError
from .linalg import kernel
from .ratfun import RatFunField

MAX_DEMO_P = 7


class FiniteExtension:
    """k[y]/(modulus) for a monic modulus over the rational function field.

    Elements are coordinate tuples in the power basis 1, y, ..., y^(n-1).
    The modulus is not required to be irreducible: the nilpotent witness
    is a kernel computation and certifies non-reducedness either way.
    """

    def __init__(self, base, modulus):
        if not isinstance(base, RatFunField):
            raise InputError("extension base must be a rational function field")
        modulus = tuple(modulus)
        if len(modulus) < 2 or modulus[-1] != base.one:
            raise InputError("modulus must be monic of degree >= 1")
        self.base = base
        self.modulus = modulus
        self.degree = len(modulus) - 1

    @property
    def p(self):
        return self.base.p

    @property
    def zero(self):
        return (self.base.zero,) * self.degree

    @property
    def one(self):
        if self.degree == 0:
            raise InputError("degenerate extension")
        return (self.base.one,) + (self.base.zero,) * (self.degree - 1)

    def element(self, coords):
        coords = tuple(coords)
        if len(coords) != self.degree:
            raise InputError("coordinate vector has the wrong length")
        return coords

    def y_power(self, k):
        """Coordinates of y^k, reduced against the monic modulus."""
        base = self.base
        coords = [base.zero] * self.degree
        if k < self.degree:
            coords[k] = base.one
            return tuple(coords)
        work = [base.zero] * self.degree
        work[self.degree - 1] = base.one
        for _ in range(k - (self.degree - 1)):
            spill = work[-1]
            work = [base.zero] + work[:-1]
            if spill != base.zero:
                for i in range(self.degree):
                    work[i] = base.sub(work[i], base.mul(spill, self.modulus[i]))
        return tuple(work)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def scale(self, c, a):
        return tuple(self.base.mul(c, x) for x in a)

    def mul(self, a, b):
        base = self.base
        n = self.degree
        conv = [base.zero] * (2 * n - 1)
        for i, x in enumerate(a):
            if x == base.zero:
                continue
            for j, y in enumerate(b):
                if y == base.zero:
                    continue
                conv[i + j] = base.add(conv[i + j], base.mul(x, y))
        out = [base.zero] * n
        for deg in range(len(conv)):
            coeff = conv[deg]
            if coeff == base.zero:
                continue
            ypow = self.y_power(deg)
            for i in range(n):
                out[i] = base.add(out[i], base.mul(coeff, ypow[i]))
        return tuple(out)

    def power(self, a, k):
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def is_zero(self, a):
        return all(x == self.base.zero for x in a)


def build_example_extension(p):
    """L = k[y]/(y^(2p) + u y^p - v) over k = F_p(u, v)."""
    if p > MAX_DEMO_P:
        raise InputError(f"demo extension limited to p <= {MAX_DEMO_P}")
    k = RatFunField(p)
    coeffs = [k.zero] * (2 * p + 1)
    coeffs[0] = k.neg(k.var("v"))
    coeffs[p] = k.var("u")
    coeffs[2 * p] = k.one
    return FiniteExtension(k, coeffs)


def p_power_matrix(L):
    """Rows x columns over k: column j holds the coordinates of (y^j)^p."""
    n = L.degree
    cols = [L.y_power(j * L.p) for j in range(n)]
    return [[cols[j][r] for j in range(n)] for r in range(n)]


@dataclass
class TensorNilpotentWitness:
    """A certified nilpotent in k^(1/p) tensor L.

    coefficients a_i satisfy sum a_i b_i^p = 0 in L (verified), and the
    coefficient at certificate_index is not a p-th power in k, which
    keeps sum a_i^(1/p) (x) b_i nonzero.
    """

    coefficients: list
    basis: list
    certificate_index: int

    def to_json(self):
        return {
            "relation": [str(a) for a in self.coefficients],
            "basis": list(self.basis),
            "certificate_index": self.certificate_index,
        }


def find_nilpotent_in_tensor(L, combo_cap=64):
    """Search the kernel of the p-th power matrix for a witness.

    Returns None when the kernel is trivial or every inspected kernel
    vector has all coordinates inside k^p; the search covers the
    canonical kernel basis and F_p-combinations of it up to the cap.
    """
    k = L.base
    n = L.degree
    rows = p_power_matrix(L)
    basis = kernel(rows, k, ncols=n)
    if not basis:
        return None
    candidates = list(basis)
    combos = 0
    if len(basis) > 1:
        for scalars in _nonzero_vectors(k.p, len(basis)):
            if combos >= combo_cap:
                break
            vec = [k.zero] * n
            for c, b in zip(scalars, basis):
                if c:
                    cval = k.const(c)
                    vec = [k.add(x, k.mul(cval, y)) for x, y in zip(vec, b)]
            candidates.append(tuple(vec))
            combos += 1
    basis_names = ["1"] + [f"y^{j}" if j > 1 else "y" for j in range(1, n)]
    for vec in candidates:
        cert = None
        for i, a in enumerate(vec):
            if not a.is_zero() and a.pth_root() is None:
                cert = i
                break
        if cert is None:
            continue
        total = L.zero
        for j, a in enumerate(vec):
            if a.is_zero():
                continue
            term = L.scale(a, L.power(L.y_power(j), L.p))
            total = L.add(total, term)
        if not L.is_zero(total):
            raise AssertionError("kernel vector failed the direct relation check")
        return TensorNilpotentWitness(list(vec), basis_names, cert)
    return None


def _nonzero_vectors(p, length):
    out = [()]
    for _ in range(length):
        out = [v + (c,) for v in out for c in range(p)]
    for v in out:
        if any(v):
            yield v
