# Buchberger engine: reduced bases, normal forms, colon/intersection/
# elimination, radical membership, staircases, socles, caching.

import pytest

from frobstab.errors import NotSupportedError, ResourceLimitError
from frobstab.field import PrimeField
from frobstab.groebner import (
    Ideal,
    clear_memory_cache,
    set_cache_dir,
    socle_basis,
)
from frobstab.poly import PolyRing

from helpers import MacaulayOracle, random_poly, seeded


def ring(p=2, names=("a", "b")):
    return PolyRing(PrimeField(p), names)


def ideal(texts, p=2, names=("a", "b")):
    R = ring(p, names)
    return Ideal.parse(R, texts)


# --- groebner bases ------------------------------------------------------------


def test_gb_already_reduced():
    I = ideal(["a", "b"])
    assert I.canonical_strings() == ["b", "a"]


def test_gb_single_spair_reduces_to_zero():
    # the only S-polynomial of (a^2 + b, b^2) reduces to zero, so the
    # input is already the reduced basis
    I = ideal(["a^2 + b", "b^2"])
    assert sorted(I.canonical_strings()) == ["a^2 + b", "b^2"]
    oracle = MacaulayOracle(list(I.gens), 8)
    for g in I.groebner_basis():
        assert oracle.contains(g)


def test_gb_linear_row_reduction():
    I = ideal(["a+b", "a"])
    assert I.canonical_strings() == ["b", "a"]


def test_gb_uniqueness_under_generator_mixing():
    # 200 random invertible mixes of the same generators give the same
    # reduced basis
    rng = seeded(90125)
    R = ring(3, ("x", "y", "z"))
    for trial in range(200):
        gens = []
        while len([g for g in gens if g]) < 2:
            gens = [random_poly(R, rng, max_terms=3, max_exp=2) for _ in range(3)]
        base = Ideal(R, gens).canonical_strings()
        f, g, h = gens
        c = rng.randint(1, 2)
        mixed = [f.scale(c), g + f.scale(rng.randint(0, 2)), h + g.scale(rng.randint(0, 2))]
        assert Ideal(R, mixed).canonical_strings() == base


# --- normal form and membership ---------------------------------------------------


def test_normal_form_example():
    I = ideal(["a^2 + b", "b^2"])
    R = I.ring
    assert I.normal_form(R.parse("a^2")) == R.parse("b")
    assert I.normal_form(R.parse("a^2 + b")).is_zero()
    assert I.normal_form(I.normal_form(R.parse("a^2"))) == I.normal_form(R.parse("a^2"))


def test_unit_stays_out_of_proper_ideal():
    I = ideal(["a", "b"])
    assert I.normal_form(I.ring.one()) == I.ring.one()


def test_membership_basics():
    I = ideal(["a"])
    R = I.ring
    assert I.contains(R.parse("a*b"))
    assert not I.contains(R.parse("a + b"))
    assert not ideal(["a^2"]).contains(R.parse("a"))


def test_ideal_equality():
    assert ideal(["a", "b"]).equals(ideal(["a+b", "b"]))
    assert not ideal(["a"]).equals(ideal(["a", "b"]))


def test_membership_matches_macaulay_oracle():
    rng = seeded(314159)
    R = ring(2, ("x", "y", "z"))
    for _ in range(40):
        gens = [random_poly(R, rng, max_terms=3, max_exp=2) for _ in range(2)]
        gens = [g for g in gens if g]
        if not gens:
            continue
        I = Ideal(R, gens)
        oracle = MacaulayOracle(gens, 8)
        for _ in range(8):
            f = random_poly(R, rng, max_terms=3, max_exp=2)
            if f.degree() <= 8:
                assert I.contains(f) == oracle.contains(f)


# --- colon ----------------------------------------------------------------------


def test_colon_examples():
    I = ideal(["a*b"])
    R = I.ring
    assert I.colon(R.parse("b")).equals(ideal(["a"]))
    assert ideal(["a"]).colon(R.one()).equals(ideal(["a"]))
    assert ideal(["a^2"]).colon(R.parse("a")).equals(ideal(["a"]))


def test_colon_contract_both_directions():
    rng = seeded(2718)
    R = ring(3, ("x", "y"))
    for _ in range(30):
        gens = [g for g in (random_poly(R, rng, 3, 2) for _ in range(2)) if g]
        f = random_poly(R, rng, 2, 2)
        if not gens or f.is_zero():
            continue
        I = Ideal(R, gens)
        C = I.colon(f)
        for c in C.gens:
            assert I.contains(c * f)  # f * (I : f) is inside I
        for _ in range(4):
            g = random_poly(R, rng, 3, 2)
            if I.contains(g * f):
                assert C.contains(g)


# --- intersection ------------------------------------------------------------------


def test_intersect_coprime_principal():
    assert ideal(["a"]).intersect(ideal(["b"])).equals(ideal(["a*b"]))


def test_intersect_idempotent():
    I = ideal(["a^2 + b", "b^2"])
    assert I.intersect(I).equals(I)


def test_intersect_derived_example_against_oracle():
    I = ideal(["a^2", "b"])
    J = ideal(["a"])
    got = I.intersect(J)
    expected = ideal(["a^2", "a*b"])
    assert got.equals(expected)
    # brute-force degree-bounded check in both directions
    oi = MacaulayOracle(list(I.gens), 8)
    oj = MacaulayOracle(list(J.gens), 8)
    for g in got.gens:
        assert oi.contains(g) and oj.contains(g)


def test_intersect_contained_in_both_random():
    rng = seeded(161803)
    R = ring(2, ("x", "y"))
    for _ in range(20):
        gi = [g for g in (random_poly(R, rng, 2, 2) for _ in range(2)) if g]
        gj = [g for g in (random_poly(R, rng, 2, 2) for _ in range(2)) if g]
        if not gi or not gj:
            continue
        I, J = Ideal(R, gi), Ideal(R, gj)
        K = I.intersect(J)
        for g in K.gens:
            assert I.contains(g) and J.contains(g)


# --- elimination -----------------------------------------------------------------


def test_eliminate_inverse_trick():
    from frobstab.poly import elim_order

    R = PolyRing(PrimeField(2), ("t", "a", "b"), elim_order(1))
    I = Ideal.parse(R, ["t*a - 1", "b"])
    got = I.eliminate(1)
    assert got.canonical_strings() == ["b"]


def test_eliminate_variable_not_present():
    from frobstab.poly import elim_order

    R = PolyRing(PrimeField(3), ("t", "a", "b"), elim_order(1))
    I = Ideal.parse(R, ["a + b^2", "b^3"])
    got = I.eliminate(1)
    assert got.equals(Ideal.parse(got.ring, ["a + b^2", "b^3"]))


def test_eliminate_difference():
    from frobstab.poly import elim_order

    R = PolyRing(PrimeField(5), ("t", "a", "b"), elim_order(1))
    I = Ideal.parse(R, ["t - a", "t - b"])
    got = I.eliminate(1)
    assert got.equals(Ideal.parse(got.ring, ["a - b"]))


# --- radical membership ---------------------------------------------------------


def test_radical_membership_examples():
    I = ideal(["a^2"])
    R = I.ring
    assert I.radical_contains(R.parse("a"))
    assert not I.radical_contains(R.parse("b"))
    J = ideal(["a^2", "b^2"])
    assert J.radical_contains(R.parse("a + b"))  # (a+b)^2 = a^2+b^2 in char 2


def test_radical_member_matches_bounded_powers():
    rng = seeded(55)
    R = ring(3, ("x", "y"))
    for _ in range(25):
        gens = [g for g in (random_poly(R, rng, 2, 2) for _ in range(2)) if g]
        f = random_poly(R, rng, 2, 1)
        if not gens or f.is_zero():
            continue
        I = Ideal(R, gens)
        brute = False
        fk = R.one()
        for _k in range(1, 13):
            fk = fk * f
            if I.contains(fk):
                brute = True
                break
        assert I.radical_contains(f) == brute


# --- staircases -----------------------------------------------------------------


def test_staircase_full_quotient():
    I = ideal(["a^2", "b"])
    assert I.staircase().monomials == ((0, 0), (1, 0))


def test_staircase_graded_piece():
    I = ideal(["a*b", "a^3", "b^3"])
    got = I.staircase(weights=(1, 1), degree=2)
    assert set(got.monomials) == {(2, 0), (0, 2)}


def test_staircase_degree_zero():
    I = ideal(["a"])
    assert I.staircase(weights=(1, 1), degree=0).monomials == ((0, 0),)


def test_staircase_infinite_quotient_rejected():
    with pytest.raises(NotSupportedError):
        ideal(["a"]).staircase()


# --- socles ---------------------------------------------------------------------


def test_socle_examples():
    I = ideal(["a^2", "b"])
    got = socle_basis(I)
    assert [str(g) for g in got] == ["a"]
    assert [str(g) for g in socle_basis(ideal(["a", "b"]))] == ["1"]
    got3 = socle_basis(ideal(["a^2", "a*b", "b^2"]))
    assert sorted(str(g) for g in got3) == ["a", "b"]


def test_socle_contract():
    rng = seeded(808)
    R = ring(3, ("x", "y"))
    I = Ideal.parse(R, ["x^3", "y^2", "x^2*y"])
    reps = socle_basis(I)
    assert reps
    for s in reps:
        for v in R.gens():
            assert I.contains(v * s)
        assert not I.contains(s)
    # no nonzero constant combination of representatives is inside I
    import itertools

    for coeffs in itertools.product(range(3), repeat=len(reps)):
        if not any(coeffs):
            continue
        combo = R.zero()
        for c, s in zip(coeffs, reps):
            combo = combo + s.scale(c)
        assert not I.contains(combo)


def test_socle_requires_artinian():
    with pytest.raises(NotSupportedError):
        socle_basis(ideal(["a"]))


# --- caps and cache ---------------------------------------------------------------


def test_pair_cap_fails_loudly():
    R = ring(3, ("x", "y", "z"))
    I = Ideal.parse(R, ["x^2*y - z^2", "y^2*z - x^2", "z^2*x - y^2"])
    with pytest.raises(ResourceLimitError):
        I.groebner_basis(pair_cap=2)


def test_degree_cap_scales_with_input():
    # bracket-power-sized inputs must not trip the default cap
    R = ring(2, ("a", "b"))
    I = Ideal.parse(R, ["a^64", "a^3 + b^2"])
    gb = I.groebner_basis()
    assert gb  # completes


def test_disk_cache_round_trip(tmp_path):
    set_cache_dir(str(tmp_path))
    clear_memory_cache()
    try:
        I = ideal(["a^2 + b", "b^2"])
        first = I.canonical_strings()
        files = list(tmp_path.iterdir())
        assert files
        clear_memory_cache()
        J = ideal(["a^2 + b", "b^2"])
        assert J.canonical_strings() == first
    finally:
        set_cache_dir(None)
        clear_memory_cache()


def test_corrupt_disk_cache_is_ignored(tmp_path):
    set_cache_dir(str(tmp_path))
    clear_memory_cache()
    try:
        I = ideal(["a^2 + b", "b^2"])
        expected = I.canonical_strings()
        for f in tmp_path.iterdir():
            f.write_text('{"p": 2, "vars": ["a","b"], "order": ["grevlex", 0], '
                         '"gens": ["a"], "leads": ["a"]}')
        clear_memory_cache()
        J = ideal(["a^2 + b", "b^2"])
        assert J.canonical_strings() == expected
    finally:
        set_cache_dir(None)
        clear_memory_cache()
