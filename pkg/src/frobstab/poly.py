"""Multivariate polynomials over F_p with monomial orders and a text grammar.

Monomials are plain exponent tuples.  A Polynomial holds a tuple of
(coefficient, monomial) terms, strictly descending under the ring's
monomial order; the empty tuple is zero.  Values are immutable and all
operations are pure functions, so polynomials can be shared freely.

Grammar accepted by ``PolyRing.parse``::

    expr   := ["-"] term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := atom ("^" integer)?
    atom   := integer | var | "(" expr ")"

The leading sign and parenthesized exponent bases are convenience
extensions; the canonical printer emits only "+", vars and "var^int", so
print/parse round-trips stay inside the stricter grammar.
"""

from dataclasses import dataclass

from . import _kernel
from .errors import ContextMismatchError, InputError, ParseError
from .field import PrimeField


@dataclass(frozen=True)
class MonomialOrder:
    """A total, multiplicative well-order on monomials.

    kind is one of "lex", "grevlex", "elim"; for "elim", ``block`` is the
    number of leading variables eliminated first (grevlex within each
    block).
    """

    kind: str
    block: int = 0

    def weight_matrix(self, nvars):
        """Integer rows w with key(e) = (w_0 . e, w_1 . e, ...).

        Keys are additive in e and injective on exponent vectors, which
        the term kernels rely on.
        """
        if self.kind == "lex":
            return tuple(_unit(nvars, i) for i in range(nvars))
        if self.kind == "grevlex":
            return _grevlex_rows(nvars, 0, nvars)
        if self.kind == "elim":
            k = self.block
            if not 0 < k < nvars:
                raise InputError("elimination block must be a proper prefix of the variables")
            return _grevlex_rows(nvars, 0, k) + _grevlex_rows(nvars, k, nvars)
        raise InputError(f"unknown order kind {self.kind!r}")

    def __str__(self):
        return f"elim({self.block})" if self.kind == "elim" else self.kind


def _unit(n, i):
    return tuple(1 if j == i else 0 for j in range(n))


def _grevlex_rows(n, lo, hi):
    rows = [tuple(1 if lo <= j < hi else 0 for j in range(n))]
    for i in range(hi - 1, lo - 1, -1):
        rows.append(tuple(-1 if j == i else 0 for j in range(n)))
    return tuple(rows)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elim_order(block):
    return MonomialOrder("elim", block)


# --- monomial helpers (exponent tuples) ------------------------------------


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a, weights=None):
    if weights is None:
        return sum(a)
    return sum(x * w for x, w in zip(a, weights))


class PolyRing:
    """A polynomial ring F_p[names] with a fixed monomial order."""

    __slots__ = ("field", "names", "order", "nvars", "_wm", "_index")

    def __init__(self, field, names, order=GREVLEX):
        if not isinstance(field, PrimeField):
            raise InputError("polynomial coefficients must live in a PrimeField")
        names = tuple(names)
        if len(set(names)) != len(names) or not names:
            raise InputError("variable names must be nonempty and distinct")
        self.field = field
        self.names = names
        self.order = order
        self.nvars = len(names)
        self._wm = order.weight_matrix(self.nvars)
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def p(self):
        return self.field.p

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.names == self.names
            and other.order == self.order
        )

    def __hash__(self):
        return hash((self.field, self.names, self.order))

    def __repr__(self):
        return f"F_{self.p}[{','.join(self.names)}; {self.order}]"

    def key(self, mono):
        return tuple(sum(w[i] * mono[i] for i in range(self.nvars)) for w in self._wm)

    # --- constructors -------------------------------------------------------

    def zero(self):
        return Polynomial(self, ())

    def const(self, c):
        c %= self.p
        if c == 0:
            return self.zero()
        return Polynomial(self, ((c, (0,) * self.nvars),))

    def one(self):
        return self.const(1)

    def var(self, name):
        try:
            i = self._index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r}") from None
        return self.monomial(_unit(self.nvars, i))

    def gens(self):
        return [self.var(n) for n in self.names]

    def monomial(self, exps, coeff=1):
        coeff %= self.p
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise InputError("bad exponent vector")
        if coeff == 0:
            return self.zero()
        return Polynomial(self, ((coeff, exps),))

    def from_dict(self, coeffs):
        """Polynomial from {monomial: coefficient}; reduces and sorts."""
        terms = []
        for e, c in coeffs.items():
            c %= self.p
            if c:
                terms.append((c, tuple(e)))
        terms.sort(key=lambda t: self.key(t[1]), reverse=True)
        return Polynomial(self, tuple(terms))

    def parse(self, text):
        return _parse(self, text)

    # mapping polynomials between rings with compatible variables

    def from_other(self, f, position=None):
        """Re-home f into this ring.

        ``position`` maps each variable index of f's ring to an index
        here; identity names are matched when omitted.
        """
        if position is None:
            position = [self._index[n] for n in f.ring.names]
        terms = {}
        for c, e in f.terms:
            new = [0] * self.nvars
            for i, x in enumerate(e):
                if x:
                    if position[i] < 0:
                        raise InputError("variable not present in the target ring")
                    new[position[i]] = x
            terms[tuple(new)] = (terms.get(tuple(new), 0) + c) % self.p
        return self.from_dict(terms)


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # --- structure ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def lt(self):
        """Leading (coefficient, monomial)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def lm(self):
        return self.lt()[1]

    def lc(self):
        return self.lt()[0]

    def degree(self):
        """Total degree; -1 for zero."""
        if not self.terms:
            return -1
        return max(sum(e) for _c, e in self.terms)

    def weighted_degree(self, weights):
        if not self.terms:
            return -1
        return max(mono_degree(e, weights) for _c, e in self.terms)

    def homogeneous_degree(self, weights=None):
        """Common weighted degree of all terms, or None if inhomogeneous."""
        if not self.terms:
            return 0
        if weights is None:
            weights = (1,) * self.ring.nvars
        degs = {mono_degree(e, weights) for _c, e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def monic(self):
        if not self.terms:
            return self
        c = self.lc()
        if c == 1:
            return self
        return self.scale(self.ring.field.inv(c))

    def scale(self, c):
        c %= self.ring.p
        if c == 0:
            return self.ring.zero()
        p = self.ring.p
        return Polynomial(self.ring, tuple(((a * c) % p, e) for a, e in self.terms))

    def coefficient(self, mono):
        mono = tuple(mono)
        for c, e in self.terms:
            if e == mono:
                return c
        return 0

    # --- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise ContextMismatchError(f"operands in {self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        r = self.ring
        return Polynomial(r, _kernel.add_terms(self.terms, other.terms, r.p, r._wm))

    def __sub__(self, other):
        self._check(other)
        r = self.ring
        return Polynomial(
            r, _kernel.add_terms(self.terms, other.scale(-1).terms, r.p, r._wm)
        )

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        self._check(other)
        r = self.ring
        return Polynomial(r, _kernel.mul_terms(self.terms, other.terms, r.p, r._wm))

    def __pow__(self, n):
        if n < 0:
            raise InputError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.ring, self.terms))

    def shift(self, coeff, mono):
        """coeff * x^mono * self, the division-step primitive."""
        p = self.ring.p
        coeff %= p
        if coeff == 0:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            tuple(((c * coeff) % p, mono_mul(e, mono)) for c, e in self.terms),
        )

    def frobenius(self, e=1):
        """self^(p^e), computed termwise (the coefficients are fixed by
        Fermat, so only exponents scale)."""
        if e < 0:
            raise InputError("negative Frobenius power")
        if e == 0 or not self.terms:
            return self
        q = self.ring.p**e
        return Polynomial(
            self.ring, tuple((c, tuple(x * q for x in e_)) for c, e_ in self.terms)
        )

    # --- printing ---------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for c, e in self.terms:
            factors = []
            if c != 1 or not any(e):
                factors.append(str(c))
            for name, x in zip(names, e):
                if x == 1:
                    factors.append(name)
                elif x > 1:
                    factors.append(f"{name}^{x}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self} over {self.ring}>"


# --- parser -----------------------------------------------------------------

_OPS = set("+-*^()")


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, ring, text):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        result = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self):
        result = self.factor()
        while self.peek()[0] == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            ekind, evalue, eat = self.take()
            if ekind != "int":
                raise ParseError("exponent must be an integer", eat)
            return base**evalue
        return base

    def atom(self):
        kind, value, at = self.take()
        if kind == "int":
            return self.ring.const(value)
        if kind == "name":
            if value not in self.ring._index:
                raise ParseError(f"unknown variable {value!r}", at)
            return self.ring.var(value)
        if kind == "(":
            inner = self.expr()
            ckind, _cv, cat = self.take()
            if ckind != ")":
                raise ParseError("expected ')'", cat)
            return inner
        raise ParseError(f"unexpected token {value!r}", at)


def _parse(ring, text):
    parser = _Parser(ring, text)
    result = parser.expr()
    kind, value, at = parser.peek()
    if kind != "end":
        raise ParseError(f"trailing input {value!r}", at)
    return result
