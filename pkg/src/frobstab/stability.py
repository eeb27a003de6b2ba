"""F-injectivity and F-stability analyses on graded rings.

Two independent routes decide F-stability of the top local cohomology
module:

* the certified route computes the Frobenius matrix on the stabilized
  degree-zero carrier and takes the dimension of its stable part;
* the socle-search route hunts for a socle class of a truncation whose
  Frobenius annihilator chain stabilizes at the maximal ideal.

A nonzero stable part and the existence of such a class are equivalent
for rings with an injective Frobenius action, so whenever both routes
finish with certified/stabilized statuses their verdicts must agree;
a certified-grade disagreement raises an inconsistency error instead of
being reconciled silently.

Annihilator chains C_e = (I^[q] + J : x^q) stop after `window`
consecutive equality comparisons.  A chain that never stabilizes (the
colon of 1 in a polynomial ring, for instance) is reported with its last
element as an explicit upper bound and no limit is claimed.
"""

import random
from dataclasses import dataclass

from .config import RunConfig
from .errors import InconsistencyError, InputError, NotSupportedError
from .frobenius import bracket_power, frobenius_closure, is_frobenius_closed
from .groebner import Ideal
from .localcoh import CM_VERIFIED, CohomologyClass

CHAIN_STABILIZED = "stabilized"
CHAIN_NOT_STABILIZED = "not-stabilized"


@dataclass
class ChainReport:
    """A colon chain C_0, C_1, ... with its stabilization verdict.

    When the chain did not stabilize, `limit` is only an upper bound for
    the true intersection and `upper_bound_only` says so explicitly.
    """

    ideals: list
    status: str
    descending_verified: bool

    @property
    def limit(self):
        return self.ideals[-1]

    @property
    def upper_bound_only(self):
        return self.status != CHAIN_STABILIZED

    def to_json(self):
        return {
            "chain": [J.canonical_strings() for J in self.ideals],
            "limit": self.limit.canonical_strings(),
            "status": self.status,
            "upper_bound_only": self.upper_bound_only,
            "descending_verified": self.descending_verified,
        }


def frobenius_colon_chain(graded, parameter_gens, x, cfg=None, expect_descending=False):
    """The chain C_e = ((I^[p^e] + J) : x^(p^e)) for e = 0, 1, ...

    `parameter_gens` generate the parameter ideal I in the quotient by
    graded.relations; the quotient is required to be Artinian.  With
    `expect_descending` a violation of C_{e+1} <= C_e is a hard error
    (it contradicts F-injectivity + CM), otherwise it is only recorded.
    """
    cfg = cfg or RunConfig()
    ring = graded.ring
    I = Ideal(ring, parameter_gens)
    stored = Ideal(ring, I.gens + graded.relations.gens)
    if not stored.is_artinian():
        raise InputError("the chain needs an ideal generated by a system of parameters")
    if x.is_zero():
        raise InputError("chain element x must be nonzero")
    chain = []
    descending = True
    equal_run = 0
    status = CHAIN_NOT_STABILIZED
    for e in range(cfg.e_max + 1):
        B = bracket_power(I, e, relations=graded.relations)
        C = B.colon(x.frobenius(e))
        if chain:
            if not chain[-1].contains_ideal(C):
                descending = False
                if expect_descending:
                    raise InconsistencyError(
                        "annihilator chain ascended on an F-injective CM ring"
                    )
            equal_run = equal_run + 1 if C.equals(chain[-1]) else 0
        chain.append(C)
        if equal_run >= cfg.window:
            status = CHAIN_STABILIZED
            break
    return ChainReport(chain, status, descending)


def frobenius_annihilator(eta, cfg=None, expect_descending=False):
    """Annihilator chain of a nonzero class at its own truncation level."""
    zero, _status = eta.is_zero()
    if zero:
        raise InputError("the zero class has no annihilator chain")
    graded = eta.graded
    params = [x ** eta.level for x in graded.sop]
    return frobenius_colon_chain(graded, params, eta.numerator, cfg, expect_descending)


def is_f_injective_cm(graded, cfg=None):
    """(verdict, status) via the parameter-ideal Frobenius closure test.

    Stated for Cohen-Macaulay rings only; the CM gate must be verified.
    """
    cfg = cfg or RunConfig()
    if graded.cm_status != CM_VERIFIED:
        raise NotSupportedError("the F-injectivity criterion requires a verified CM gate")
    I1 = Ideal(graded.ring, list(graded.sop))
    return is_frobenius_closed(I1, cfg.e_max, cfg.window, relations=graded.relations)


def f_injectivity_witness(graded, cfg=None):
    """An element of the closure of the parameter ideal that is not in
    the ideal itself, when F-injectivity fails; None otherwise."""
    cfg = cfg or RunConfig()
    I1 = Ideal(graded.ring, list(graded.sop))
    report = frobenius_closure(I1, cfg.e_max, cfg.window, relations=graded.relations)
    stored = Ideal(graded.ring, I1.gens + graded.relations.gens)
    for g in report.closure.gens:
        if not stored.contains(g):
            return g
    return None


def is_f_stable_certified(graded, cfg=None):
    """(verdict, stable_dim, status) from the degree-zero carrier route."""
    cfg = cfg or RunConfig()
    if graded.cm_status != CM_VERIFIED:
        raise NotSupportedError("the certified stability route requires the CM gate")
    piece = graded.degree_zero_piece(cfg.t_max, cfg.window)
    op = graded.frobenius_matrix(piece)
    dim = op.stable_part().dim
    status = "certified" if piece.stabilized else "heuristic"
    return dim > 0, dim, status


@dataclass
class SocleCandidate:
    level: int
    element: object
    chain: ChainReport

    def to_json(self):
        return {
            "t": self.level,
            "u": str(self.element),
            "limit": self.chain.limit.canonical_strings(),
            "status": self.chain.status,
        }


@dataclass
class SocleSearchReport:
    candidates: list
    examined: int
    exhaustive: bool
    warnings: list

    def found(self):
        return bool(self.candidates)

    def to_json(self):
        return {
            "candidates": [c.to_json() for c in self.candidates],
            "examined": self.examined,
            "exhaustive": self.exhaustive,
            "warnings": list(self.warnings),
        }


def socle_stability_search(graded, cfg=None):
    """Hunt for socle classes whose annihilator chain stabilizes at m.

    Walks truncation levels t <= socle_t_max; at each level every nonzero
    F_p-combination of the socle basis is tried when p^dim stays under
    combo_cap, otherwise the basis plus seeded random combinations with a
    stated incompleteness warning.  Candidates must stabilize at the full
    maximal ideal and stay outside the Frobenius closure of the
    truncation ideal.
    """
    cfg = cfg or RunConfig()
    ring = graded.ring
    p = ring.p
    warnings = []
    try:
        finj, _st = is_f_injective_cm(graded, cfg)
        if not finj:
            warnings.append(
                "ring is not F-injective: socle-route evidence is not certified"
            )
    except NotSupportedError:
        warnings.append("CM gate not verified: socle-route evidence is not certified")
    m = Ideal(ring, ring.gens())
    rng = random.Random(cfg.seed)
    expect_desc = False  # descent enforcement handled by callers that verified gates
    candidates = []
    examined = 0
    exhaustive = True
    for t in range(1, cfg.socle_t_max + 1):
        reps = graded.socle_of_truncation(t)
        if not reps:
            continue
        s = len(reps)
        combos = []
        if p**s <= cfg.combo_cap:
            combos = [c for c in _all_coefficient_vectors(p, s) if any(c)]
        else:
            exhaustive = False
            warnings.append(
                f"socle dimension {s} at level {t} exceeds the combination cap; "
                "testing the basis plus 64 random combinations only"
            )
            combos = [_unit_vector(s, i) for i in range(s)]
            for _ in range(64):
                combos.append(tuple(rng.randrange(p) for _ in range(s)))
            combos = [c for c in dict.fromkeys(combos) if any(c)]
        closure = frobenius_closure(
            Ideal(ring, [x**t for x in graded.sop]),
            cfg.e_max,
            cfg.window,
            relations=graded.relations,
        )
        params = [x**t for x in graded.sop]
        for coeffs in combos:
            u = ring.zero()
            for c, rep in zip(coeffs, reps):
                u = u + rep.scale(c)
            if u.is_zero():
                continue
            chain = frobenius_colon_chain(graded, params, u, cfg, expect_desc)
            examined += 1
            if (
                chain.status == CHAIN_STABILIZED
                and chain.limit.equals(m)
                and not closure.closure.contains(u)
            ):
                candidates.append(SocleCandidate(t, u, chain))
    return SocleSearchReport(candidates, examined, exhaustive, warnings)


def _all_coefficient_vectors(p, s):
    out = [()]
    for _ in range(s):
        out = [v + (c,) for v in out for c in range(p)]
    return out


def _unit_vector(s, i):
    return tuple(1 if j == i else 0 for j in range(s))


@dataclass
class StabilityReport:
    ring_name: str
    f_injective: tuple
    certified_verdict: bool
    stable_dim: int
    certified_status: str
    socle: SocleSearchReport
    agreement: bool

    def to_json(self):
        return {
            "ring": self.ring_name,
            "f_injective": {"value": self.f_injective[0], "status": self.f_injective[1]},
            "f_stable": {
                "certified": self.certified_verdict,
                "stable_dim": self.stable_dim,
                "certified_status": self.certified_status,
                "heuristic_candidates": [c.to_json() for c in self.socle.candidates],
                "agreement": self.agreement,
            },
        }


def f_stability(graded, cfg=None):
    """Run both stability routes and enforce the agreement contract.

    A certified stable part of zero together with a certified-grade
    socle candidate (stabilized chain on an F-injective CM ring) is a
    theorem violation and raises; a missing candidate under a positive
    certified verdict only flags disagreement, because the search range
    is finite.
    """
    cfg = cfg or RunConfig()
    graded.check_cm()
    finj = is_f_injective_cm(graded, cfg)
    verdict, dim, status = is_f_stable_certified(graded, cfg)
    socle = socle_stability_search(graded, cfg)
    agreement = verdict == socle.found()
    if not agreement and status == "certified" and not verdict:
        if finj[0] and any(
            c.chain.status == CHAIN_STABILIZED for c in socle.candidates
        ):
            raise InconsistencyError(
                f"{graded.name}: certified stable part is zero but a socle class "
                "with annihilator m exists; the stability equivalence is violated"
            )
    return StabilityReport(
        graded.name, finj, verdict, dim, status, socle, agreement
    )


# --- annihilator surveys -----------------------------------------------------------


@dataclass
class AnnihilatorSurvey:
    stabilized_limits: list
    witnesses: dict
    samples: int
    not_stabilized: int
    radical_checks: int

    def distinct_count(self):
        return len(self.stabilized_limits)

    def to_json(self):
        return {
            "stabilized_limits": [list(gens) for gens in self.stabilized_limits],
            "samples": self.samples,
            "not_stabilized": self.not_stabilized,
            "radical_checks": self.radical_checks,
        }


def _sample_classes(graded, cfg, rng):
    """Socle classes, staircase monomial classes and random low-degree
    numerators at small truncation levels; zero classes are skipped."""
    ring = graded.ring
    out = []
    for t in range(1, cfg.socle_t_max + 1):
        I_t = graded.truncation_ideal(t)
        for rep in graded.socle_of_truncation(t):
            out.append((t, rep))
        for mono in I_t.staircase().monomials:
            if any(mono):
                out.append((t, ring.monomial(mono)))
        deg = min(cfg.deg_bound, 4)
        for _ in range(6):
            terms = {}
            for _t in range(3):
                e = tuple(rng.randint(0, deg) for _ in ring.names)
                if sum(e) <= deg:
                    terms[e] = rng.randrange(ring.p)
            z = I_t.normal_form(ring.from_dict(terms))
            if not z.is_zero():
                out.append((t, z))
    seen = set()
    unique = []
    for t, z in out:
        key = (t, z.terms)
        if key not in seen:
            seen.add(key)
            unique.append((t, z))
    return unique


def _radical_spot_check(graded, limit_ideal, rng, samples=6):
    """Radicality evidence: sampled f in rad(J) must lie in J."""
    ring = graded.ring
    checks = 0
    for _ in range(samples):
        terms = {}
        for _t in range(2):
            e = tuple(rng.randint(0, 2) for _ in ring.names)
            terms[e] = rng.randrange(ring.p)
        f = ring.from_dict(terms)
        if f.is_zero():
            continue
        sq_member = limit_ideal.contains(f * f)
        rad_member = limit_ideal.radical_contains(f)
        if (sq_member or rad_member) and not limit_ideal.contains(f):
            raise InconsistencyError(
                f"radicality violation: {f} lies in the radical of a computed "
                "annihilator but not in the annihilator itself"
            )
        checks += 1
    return checks


def sample_frobenius_annihilators(graded, cfg=None):
    """Distinct stabilized annihilator limits over sampled classes.

    Requires verified F-injectivity (the finiteness and radicality
    statements assume an injective action).  Every distinct limit is
    spot-checked for radicality; a violation is a hard error.
    """
    cfg = cfg or RunConfig()
    graded.check_cm()
    finj, _status = is_f_injective_cm(graded, cfg)
    if not finj:
        raise NotSupportedError("annihilator surveys assume an F-injective ring")
    rng = random.Random(cfg.seed)
    limits = {}
    samples = 0
    not_stabilized = 0
    for t, z in _sample_classes(graded, cfg, rng):
        eta = CohomologyClass(graded, t, z)
        if eta.numerator.is_zero():
            continue
        chain = frobenius_annihilator(eta, cfg, expect_descending=True)
        samples += 1
        if chain.status != CHAIN_STABILIZED:
            not_stabilized += 1
            continue
        key = tuple(chain.limit.canonical_strings())
        limits.setdefault(key, (t, z, chain.limit))
    checks = 0
    for key, (_t, _z, J) in sorted(limits.items()):
        checks += _radical_spot_check(graded, J, rng)
    witnesses = {key: {"t": w[0], "u": str(w[1])} for key, w in limits.items()}
    return AnnihilatorSurvey(
        sorted(limits.keys()), witnesses, samples, not_stabilized, checks
    )


def annihilator_prime_candidates(graded, cfg=None):
    """Stabilized annihilator limits that pass a primality spot-check.

    The search is explicitly not exhaustive; candidates are labeled.
    An ideal is dropped when it is the intersection of two strictly
    larger sampled limits, and must pass the radical spot-check.
    """
    cfg = cfg or RunConfig()
    survey = sample_frobenius_annihilators(graded, cfg)
    ring = graded.ring
    pool = {}
    for key in survey.stabilized_limits:
        pool[key] = Ideal.parse(ring, list(key))
    out = []
    for key, J in pool.items():
        if J.is_unit_ideal():
            continue
        composite = False
        strictly_larger = [
            K
            for k2, K in pool.items()
            if k2 != key and K.contains_ideal(J) and not J.contains_ideal(K)
        ]
        for i, A in enumerate(strictly_larger):
            for B in strictly_larger[i + 1 :]:
                if A.intersect(B).equals(J):
                    composite = True
        if composite:
            continue
        out.append(
            {
                "ideal": list(key),
                "witness": survey.witnesses[key],
                "note": "approximation: search is not exhaustive; "
                "primality is spot-checked, not proven",
            }
        )
    return out


# --- punctured-spectrum component count ------------------------------------------------


def validate_minimal_primes(graded):
    """Containment and mutual-radical validation of user-supplied primes."""
    primes = graded.minimal_primes
    if not primes:
        raise InputError("minimal_primes are required for the component check")
    rel = graded.relations
    for P in primes:
        for g in rel.gens:
            if not P.contains(g):
                raise InputError(f"declared prime {P!r} does not contain the relations")
    inter = None
    for P in primes:
        inter = P if inter is None else inter.intersect(P)
    for g in inter.gens:
        if not rel.gens and not g.is_zero():
            raise InputError("primes intersect above the zero relations ideal")
        if rel.gens and not rel.radical_contains(g):
            raise InputError(
                "the intersection of the declared primes exceeds the radical "
                "of the relations"
            )
    return primes


def connected_components_check(graded, cfg=None):
    """Compare punctured-spectrum components with 1 + stable dimension.

    Components are computed on the graph of declared minimal primes with
    an edge when P_i + P_j is not primary to the maximal ideal.  The
    formula assumes an algebraically closed residue field; dimension
    invariance of the stable part under base change is what lets the
    F_p model stand in for that hypothesis.
    """
    cfg = cfg or RunConfig()
    if graded.dim != 1:
        raise InputError("the component count formula is stated for dimension one")
    graded.check_cm()
    if graded.cm_status != CM_VERIFIED:
        raise NotSupportedError("component check requires the CM gate")
    primes = validate_minimal_primes(graded)
    ring = graded.ring
    n = len(primes)
    adj = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            joined = Ideal(ring, primes[i].gens + primes[j].gens)
            m_primary = all(joined.radical_contains(v) for v in ring.gens())
            if not m_primary:
                adj[i].add(j)
                adj[j].add(i)
    components = 0
    seen = set()
    for start in range(n):
        if start in seen:
            continue
        components += 1
        stack = [start]
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(adj[node] - seen)
    _verdict, dim, _status = is_f_stable_certified(graded, cfg)
    formula = 1 + dim
    return {
        "components": components,
        "formula": formula,
        "agree": components == formula,
        "note": "stated over an algebraically closed residue field; the prime "
        "field model applies because stable dimensions are invariant "
        "under base change",
    }
