"""Independent oracles shared by the test modules.

These deliberately avoid the library's fast paths: naive dict arithmetic
instead of the term kernels, and a dense Macaulay-matrix membership test
instead of Groebner normal forms.
"""

import itertools
import random

from frobstab.field import PrimeField
from frobstab.linalg import rref, in_row_space
from frobstab.poly import PolyRing


def naive_mul(f, g):
    """Schoolbook product via a coefficient dict."""
    acc = {}
    p = f.ring.p
    for c1, e1 in f.terms:
        for c2, e2 in g.terms:
            e = tuple(x + y for x, y in zip(e1, e2))
            acc[e] = (acc.get(e, 0) + c1 * c2) % p
    return f.ring.from_dict(acc)


def naive_pow(f, n):
    out = f.ring.one()
    for _ in range(n):
        out = naive_mul(out, f)
    return out


def random_poly(ring, rng, max_terms=4, max_exp=3):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = tuple(rng.randint(0, max_exp) for _ in range(ring.nvars))
        terms[e] = rng.randint(0, ring.p - 1)
    return ring.from_dict(terms)


def monomials_up_to(ring, degree):
    out = []
    for e in itertools.product(range(degree + 1), repeat=ring.nvars):
        if sum(e) <= degree:
            out.append(e)
    return out


class MacaulayOracle:
    """Dense degree-bounded ideal membership: f in I iff f is a linear
    combination of monomial multiples of the generators up to the bound."""

    def __init__(self, gens, degree):
        assert gens
        self.ring = gens[0].ring
        self.degree = degree
        rows = []
        cols = monomials_up_to(self.ring, degree)
        self.col_index = {e: i for i, e in enumerate(cols)}
        for g in gens:
            gdeg = g.degree()
            for m in monomials_up_to(self.ring, degree - gdeg):
                prod = g.shift(1, m)
                if prod.degree() > degree:
                    continue
                row = [0] * len(cols)
                for c, e in prod.terms:
                    row[self.col_index[e]] = c
                rows.append(row)
        field = self.ring.field
        self.rref_rows, self.pivots = rref(rows, field) if rows else ([], [])

    def contains(self, f):
        if f.is_zero():
            return True
        if f.degree() > self.degree:
            raise ValueError("polynomial exceeds the oracle's degree bound")
        vec = [0] * len(self.col_index)
        for c, e in f.terms:
            vec[self.col_index[e]] = c
        return in_row_space(self.rref_rows, self.pivots, vec, self.ring.field)


def small_ring(p=2, names=("a", "b")):
    return PolyRing(PrimeField(p), names)


def seeded(seed):
    return random.Random(seed)
