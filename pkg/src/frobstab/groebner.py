"""Buchberger engine and the ideal-theoretic toolkit.

Everything downstream (bracket powers, closures, truncation quotients,
annihilator chains) reduces to the operations here: reduced Groebner
bases, normal forms, colon ideals, intersections, elimination, radical
membership, staircase bases and socles.

The Buchberger loop uses the normal selection strategy (smallest lcm in
the monomial order first) with the coprimality and chain criteria.  It
is deterministic, and the reduced basis it returns is the unique one for
the ring's order, so ideal equality is a string comparison of canonical
forms.  Resource caps fail loudly instead of degrading the answer.
"""

import hashlib
import json
import os
from dataclasses import dataclass

from . import _kernel
from .errors import InputError, NotSupportedError, ResourceLimitError
from .poly import (
    GREVLEX,
    Polynomial,
    PolyRing,
    elim_order,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

DEFAULT_PAIR_CAP = 100_000
DEFAULT_DEGREE_CAP = 64

# --- GB cache ----------------------------------------------------------------

_memory_cache = {}
_cache_dir = None


def set_cache_dir(path):
    """Enable (or with None disable) the on-disk GB cache."""
    global _cache_dir
    _cache_dir = path
    if path:
        os.makedirs(path, exist_ok=True)


def clear_memory_cache():
    _memory_cache.clear()


def _cache_key(ring, gens):
    payload = json.dumps(
        {
            "p": ring.p,
            "vars": list(ring.names),
            "order": [ring.order.kind, ring.order.block],
            "gens": sorted(str(g) for g in gens),
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def _disk_load(ring, gens, key):
    path = os.path.join(_cache_dir, key + ".json")
    if not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            data = json.load(fh)
        if (
            data["p"] != ring.p
            or data["vars"] != list(ring.names)
            or data["order"] != [ring.order.kind, ring.order.block]
        ):
            return None
        gb = tuple(ring.parse(s) for s in data["gens"])
    except (OSError, ValueError, KeyError, InputError):
        return None
    # fast re-check before trusting the file: the cached basis must be
    # monic with matching stored leading terms, and every original
    # generator must reduce to zero against it
    if any(g.is_zero() or g.lc() != 1 for g in gb):
        return None
    if data.get("leads") != [str(Polynomial(ring, (g.lt(),))) for g in gb]:
        return None
    gb_terms = [g.terms for g in gb]
    for g in gens:
        _q, r = _kernel.divmod_terms(g.terms, gb_terms, ring.p, ring._wm, False)
        if r:
            return None
    return gb


def _disk_store(ring, gb, key):
    path = os.path.join(_cache_dir, key + ".json")
    data = {
        "p": ring.p,
        "vars": list(ring.names),
        "order": [ring.order.kind, ring.order.block],
        "gens": [str(g) for g in gb],
        "leads": [str(Polynomial(ring, (g.lt(),))) for g in gb],
    }
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(data, fh)
    os.replace(tmp, path)


# --- Buchberger ---------------------------------------------------------------


def _spoly(f, g, ring):
    lcm = mono_lcm(f.lm(), g.lm())
    return f.shift(1, mono_div(lcm, f.lm())) - g.shift(1, mono_div(lcm, g.lm()))


def _normal_form_terms(terms, basis_terms, ring):
    if not basis_terms:
        return terms
    _q, r = _kernel.divmod_terms(terms, basis_terms, ring.p, ring._wm, False)
    return r


def _interreduce(gens, ring):
    # mutual pre-reduction; hugely shrinks bracket-power inputs against
    # quotient relations before any S-pair is formed
    gens = [g.monic() for g in gens if g]
    changed = True
    while changed:
        changed = False
        for i in range(len(gens)):
            if gens[i].is_zero():
                continue
            others = [g.terms for j, g in enumerate(gens) if j != i and g]
            if not others:
                continue
            r = Polynomial(ring, _normal_form_terms(gens[i].terms, others, ring))
            r = r.monic()
            if r.terms != gens[i].terms:
                gens[i] = r
                changed = True
    return [g for g in gens if g]


def _buchberger(ring, gens, pair_cap, degree_cap):
    import heapq

    G = []
    seen = set()
    for g in sorted(_interreduce(gens, ring), key=lambda g: (ring.key(g.lm()), g.terms)):
        if g.terms not in seen:
            seen.add(g.terms)
            G.append(g)
    if not G:
        return ()
    # the cap guards against runaway growth, not against legitimately
    # large inputs such as bracket powers
    eff_cap = max(degree_cap, 2 * max(g.degree() for g in G) + 4)
    # normal selection strategy: smallest lcm in the order first, with the
    # pair index as a deterministic tie-break; keys are computed once
    pairs = set()
    heap = []

    def push(i, j):
        pairs.add((i, j))
        heapq.heappush(heap, (ring.key(mono_lcm(G[i].lm(), G[j].lm())), i, j))

    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            push(i, j)
    processed = 0
    gb_terms = [g.terms for g in G]
    while pairs:
        _key, i, j = heapq.heappop(heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        processed += 1
        if processed > pair_cap:
            raise ResourceLimitError(f"S-pair cap {pair_cap} exceeded")
        lmi, lmj = G[i].lm(), G[j].lm()
        lcm = mono_lcm(lmi, lmj)
        if lcm == mono_mul(lmi, lmj):
            continue  # coprime leading terms
        if _chain_skip(G, pairs, i, j, lcm):
            continue
        s = _spoly(G[i], G[j], ring)
        if s.degree() > eff_cap:
            raise ResourceLimitError(
                f"S-polynomial degree {s.degree()} exceeds cap {eff_cap}"
            )
        r = Polynomial(ring, _normal_form_terms(s.terms, gb_terms, ring))
        if r.is_zero():
            continue
        if r.degree() > eff_cap:
            raise ResourceLimitError(f"remainder degree {r.degree()} exceeds cap {eff_cap}")
        G.append(r.monic())
        gb_terms.append(G[-1].terms)
        t = len(G) - 1
        for k in range(t):
            push(k, t)
    return _reduce_basis(G, ring)


def _chain_skip(G, pairs, i, j, lcm):
    for k in range(len(G)):
        if k in (i, j):
            continue
        if not mono_divides(G[k].lm(), lcm):
            continue
        a = (min(i, k), max(i, k))
        b = (min(j, k), max(j, k))
        if a not in pairs and b not in pairs:
            return True
    return False


def _reduce_basis(G, ring):
    # minimalize: a divisor is strictly smaller in any monomial order, so
    # an ascending scan sees every lead before its multiples
    items = sorted(G, key=lambda g: (ring.key(g.lm()), g.terms))
    minimal = []
    for g in items:
        if not any(mono_divides(h.lm(), g.lm()) for h in minimal):
            minimal.append(g)
    # autoreduce to the unique reduced basis
    changed = True
    while changed:
        changed = False
        for i in range(len(minimal)):
            others = [g.terms for j, g in enumerate(minimal) if j != i]
            r = Polynomial(ring, _normal_form_terms(minimal[i].terms, others, ring))
            r = r.monic()
            if r.terms != minimal[i].terms:
                if r.is_zero():
                    del minimal[i]
                else:
                    minimal[i] = r
                changed = True
                break
    minimal.sort(key=lambda g: ring.key(g.lm()))
    return tuple(minimal)


# --- staircases ---------------------------------------------------------------


@dataclass(frozen=True)
class StaircaseBasis:
    """Monomials outside the leading-term ideal, ascending in the order."""

    ring: PolyRing
    monomials: tuple
    weights: tuple = None
    degree: int = None

    def __len__(self):
        return len(self.monomials)

    def index(self):
        return {m: i for i, m in enumerate(self.monomials)}

    def polynomials(self):
        return [self.ring.monomial(m) for m in self.monomials]


class Ideal:
    """An ideal with a lazily computed, cached reduced Groebner basis."""

    __slots__ = ("ring", "gens", "_gb")

    def __init__(self, ring, gens=()):
        self.ring = ring
        seen = set()
        kept = []
        for g in gens:
            if g.ring != ring:
                raise InputError("generator from a different ring")
            if g.is_zero() or g.terms in seen:
                continue
            seen.add(g.terms)
            kept.append(g)
        self.gens = tuple(kept)
        self._gb = None

    @classmethod
    def parse(cls, ring, texts):
        return cls(ring, [ring.parse(t) for t in texts])

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens)) or '0'})"

    def is_zero_ideal(self):
        return not self.groebner_basis()

    def is_unit_ideal(self):
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0] == self.ring.one()

    # --- groebner basis -------------------------------------------------------

    def groebner_basis(self, pair_cap=DEFAULT_PAIR_CAP, degree_cap=DEFAULT_DEGREE_CAP):
        if self._gb is not None:
            return self._gb
        if not self.gens:
            self._gb = ()
            return self._gb
        key = _cache_key(self.ring, self.gens)
        hit = _memory_cache.get(key)
        if hit is not None:
            self._gb = tuple(Polynomial(self.ring, t) for t in hit)
            return self._gb
        if _cache_dir:
            loaded = _disk_load(self.ring, self.gens, key)
            if loaded is not None:
                self._gb = loaded
                _memory_cache[key] = tuple(g.terms for g in loaded)
                return self._gb
        gb = _buchberger(self.ring, self.gens, pair_cap, degree_cap)
        self._gb = gb
        _memory_cache[key] = tuple(g.terms for g in gb)
        if _cache_dir:
            _disk_store(self.ring, gb, key)
        return gb

    def canonical_strings(self):
        return [str(g) for g in self.groebner_basis()]

    # --- membership and comparison --------------------------------------------

    def normal_form(self, f):
        if f.ring != self.ring:
            raise InputError("polynomial from a different ring")
        gb = self.groebner_basis()
        return Polynomial(self.ring, _normal_form_terms(f.terms, [g.terms for g in gb], self.ring))

    def contains(self, f):
        return self.normal_form(f).is_zero()

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def equals(self, other):
        return self.contains_ideal(other) and other.contains_ideal(self)

    def sum(self, other):
        return Ideal(self.ring, self.gens + other.gens)

    def radical_contains(self, f):
        """Rabinowitsch membership test: f in rad(I)."""
        if f.is_zero():
            raise InputError("radical membership of the zero polynomial")
        ring2, fresh = _extended_ring(self.ring, GREVLEX, 1)
        y = ring2.var(fresh[0])
        lifted = [ring2.from_other(g, _shifted_positions(self.ring, 1)) for g in self.gens]
        trick = ring2.one() - y * ring2.from_other(f, _shifted_positions(self.ring, 1))
        J = Ideal(ring2, lifted + [trick])
        return J.contains(ring2.one())

    # --- colon, intersection, elimination ---------------------------------------

    def intersect(self, other):
        if other.ring != self.ring:
            raise InputError("intersection across different rings")
        if not self.gens or not other.gens:
            return Ideal(self.ring, ())
        ring2, fresh = _extended_ring(self.ring, elim_order(1), 1)
        t = ring2.var(fresh[0])
        pos = _shifted_positions(self.ring, 1)
        lift = lambda g: ring2.from_other(g, pos)
        gens2 = [t * lift(g) for g in self.gens]
        gens2 += [(ring2.one() - t) * lift(g) for g in other.gens]
        J = Ideal(ring2, gens2)
        kept = [g for g in J.groebner_basis() if all(e[0] == 0 for _c, e in g.terms)]
        back = [self.ring.from_other(g, list(range(-1, self.ring.nvars))) for g in kept]
        return Ideal(self.ring, [g for g in back if g])

    def colon(self, f):
        """(I : f) = {g : g*f in I} for a nonzero polynomial f."""
        if f.is_zero():
            raise InputError("colon by zero")
        if len(f.terms) == 1 and not any(f.lm()):
            return Ideal(self.ring, self.gens)  # colon by a unit
        inter = self.intersect(Ideal(self.ring, [f]))
        out = []
        for g in inter.gens:
            q, r = _kernel.divmod_terms(g.terms, [f.terms], self.ring.p, self.ring._wm, True)
            if r:
                raise AssertionError("intersection element not divisible in colon")
            out.append(Polynomial(self.ring, q[0]))
        return Ideal(self.ring, out)

    def colon_ideal(self, other):
        """(I : J) over the generators of J."""
        result = None
        for g in other.gens:
            c = self.colon(g)
            result = c if result is None else result.intersect(c)
        if result is None:
            raise InputError("colon by the zero ideal")
        return result

    def eliminate(self, nfront):
        """Generators of I intersected with the subring without the first
        nfront variables; the ring's order must already eliminate them."""
        order = self.ring.order
        if order.kind != "elim" or order.block != nfront:
            raise InputError("eliminate requires a matching block elimination order")
        rest = self.ring.names[nfront:]
        target = PolyRing(self.ring.field, rest, GREVLEX)
        kept = [
            g
            for g in self.groebner_basis()
            if all(all(e[i] == 0 for i in range(nfront)) for _c, e in g.terms)
        ]
        pos = [-1] * nfront + list(range(len(rest)))
        return Ideal(target, [target.from_other(g, pos) for g in kept])

    # --- staircases and quotient structure ---------------------------------------

    def leading_monomials(self):
        return [g.lm() for g in self.groebner_basis()]

    def is_artinian(self):
        """True when the quotient by this ideal is finite dimensional."""
        lts = self.leading_monomials()
        if any(sum(e) == 0 for e in lts):
            return True  # unit ideal
        n = self.ring.nvars
        for i in range(n):
            if not any(e[i] > 0 and all(e[j] == 0 for j in range(n) if j != i) for e in lts):
                return False
        return True

    def staircase(self, weights=None, degree=None):
        lts = self.leading_monomials()
        if lts and not any(lts[0]):
            return StaircaseBasis(self.ring, (), weights, degree)  # unit ideal
        n = self.ring.nvars
        if degree is None:
            bounds = []
            for i in range(n):
                pure = [e[i] for e in lts if all(e[j] == 0 for j in range(n) if j != i) and e[i] > 0]
                if not pure:
                    raise NotSupportedError(
                        "quotient not finite-dimensional: no pure power of "
                        f"{self.ring.names[i]} in the leading-term ideal"
                    )
                bounds.append(min(pure))
            monos = _box_monomials(bounds)
        else:
            if weights is None:
                weights = (1,) * n
            monos = _weighted_monomials(n, weights, degree)
        out = [m for m in monos if not any(mono_divides(l, m) for l in lts)]
        out.sort(key=self.ring.key)
        return StaircaseBasis(self.ring, tuple(out), weights, degree)

    def coordinates(self, f, stair):
        """Coordinates of f's class in the staircase basis.

        Raises when the normal form leaves the basis span, which for the
        graded pieces signals a stabilization failure upstream.
        """
        idx = stair.index()
        r = self.normal_form(f)
        coords = [0] * len(stair.monomials)
        for c, e in r.terms:
            if e not in idx:
                raise NotSupportedError(f"normal form {r} leaves the staircase span")
            coords[idx[e]] = c
        return tuple(coords)


def _box_monomials(bounds):
    out = [()]
    for b in bounds:
        out = [m + (i,) for m in out for i in range(b)]
    return out


def _weighted_monomials(n, weights, degree):
    out = []

    def rec(prefix, remaining, i):
        if i == n:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        w = weights[i]
        for e in range(remaining // w + 1):
            rec(prefix + [e], remaining - w * e, i + 1)

    rec([], degree, 0)
    return out


def _extended_ring(ring, order, extra):
    """ring with `extra` fresh variables prepended, under `order`."""
    base = "t"
    names = []
    taken = set(ring.names)
    i = 0
    while len(names) < extra:
        cand = base if i == 0 else f"{base}{i}"
        if cand not in taken:
            names.append(cand)
            taken.add(cand)
        i += 1
    return PolyRing(ring.field, tuple(names) + ring.names, order), names


def _shifted_positions(ring, shift):
    return [i + shift for i in range(ring.nvars)]


def socle_basis(ideal, maximal_ideal_gens=None):
    """Representatives of a basis of (I : m)/I for an Artinian quotient.

    The socle is computed as the kernel of multiplication by the maximal
    ideal in staircase coordinates; representatives come back in normal
    form, canonically ordered.
    """
    from .linalg import kernel

    ring = ideal.ring
    if maximal_ideal_gens is None:
        maximal_ideal_gens = ring.gens()
    if not ideal.is_artinian():
        raise NotSupportedError("socle requires an Artinian quotient")
    stair = ideal.staircase()
    if not stair.monomials:
        return []
    ncols = len(stair.monomials)
    rows = []
    for v in maximal_ideal_gens:
        cols = [ideal.coordinates(v * ring.monomial(m), stair) for m in stair.monomials]
        for r in range(ncols):
            rows.append([cols[c][r] for c in range(ncols)])
    basis = kernel(rows, ring.field, ncols=ncols)
    out = []
    for vec in basis:
        terms = {m: c for m, c in zip(stair.monomials, vec) if c}
        out.append(ring.from_dict(terms))
    return out
