import math
from fractions import Fraction

import pytest

from src.geometry.charge_geometry import Charge, polygon_contains
from src.representations.representation import direct_sum, semisimple_rep, simple_rep, zero_rep
from src.representations.subreps import short_exact_sequences
from src.stability.corpus import build_corpus, standard_charge_family
from src.stability.hn_engine import (
    CohomologyProfile,
    StabilityCondition,
    charge_of,
    heart_triangle_refinement,
    hn_filtration,
    hn_polygon_oracle,
    is_semistable,
    log_mass,
    log_mass_of_complex,
    mass,
    mass_of_complex,
    phase_range,
    stab_distance_sample,
    subobject_charges,
    support_constant_sample,
)
from src.utils.errors import ChargeDomainError


def test_hn_of_extension(sigma_example, extension_a2):
    hn = hn_filtration(sigma_example, extension_a2)
    assert [f.dims for f in hn.factors] == [(0, 1), (1, 0)]
    assert hn.phases == (Fraction(3, 4), Fraction(1, 2))
    assert hn.mass(0.0) == pytest.approx(1 + math.sqrt(2))
    assert hn.step_charges() == (Charge(0, 0), Charge(-1, 1), Charge(-1, 2))


def test_extension_semistable_under_sigma0(sigma0_a2, extension_a2):
    assert is_semistable(sigma0_a2, extension_a2)
    assert hn_filtration(sigma0_a2, extension_a2).length == 1


def test_simple_is_semistable(sigma_example, a2):
    hn = hn_filtration(sigma_example, simple_rep(a2, 0, 2))
    assert hn.length == 1
    assert hn.phases == (Fraction(1, 2),)


def test_zero_rep_mass(sigma_example, a2):
    rep = zero_rep(a2, 2)
    assert mass(sigma_example, rep, 1.0) == 0.0
    assert log_mass(sigma_example, rep, 1.0) == -math.inf
    with pytest.raises(ValueError):
        hn_filtration(sigma_example, rep)


def test_charge_count_must_match(a3, sigma_example):
    with pytest.raises(ValueError):
        hn_filtration(sigma_example, simple_rep(a3, 0, 2))


def test_charges_outside_upper_half_rejected():
    with pytest.raises(ChargeDomainError):
        StabilityCondition.from_pairs([(0, 1), (1, 0)])


@pytest.mark.parametrize("t", [-1.0, 0.0, 1.0])
def test_sigma0_mass_closed_form(sigma0_a2, extension_a2, t):
    assert mass(sigma0_a2, extension_a2, t) == pytest.approx(2 * math.exp(t / 2), rel=1e-12)


def test_log_mass_matches_mass(sigma_example, extension_a2):
    for t in (-2.0, 0.5):
        assert log_mass(sigma_example, extension_a2, t) == pytest.approx(math.log(mass(sigma_example, extension_a2, t)))


def test_phase_range(sigma_example, extension_a2):
    assert phase_range(sigma_example, extension_a2) == (Fraction(3, 4), Fraction(1, 2))


def test_polygon_oracle(sigma_example, extension_a2):
    polygon, agreement = hn_polygon_oracle(sigma_example, extension_a2)
    assert agreement
    assert len(polygon.extremal_points) == 3


def test_polygon_oracle_on_corpus(small_corpus):
    for rep in small_corpus:
        for sigma in standard_charge_family(rep.quiver.n):
            assert hn_polygon_oracle(sigma, rep)[1]


def test_direct_sum_of_simples_polygon(sigma_example, a2):
    rep = direct_sum(simple_rep(a2, 0, 2), simple_rep(a2, 1, 2))
    points = subobject_charges(sigma_example, rep)
    assert points == {Charge(0, 0), Charge(0, 1), Charge(-1, 1), Charge(-1, 2)}
    polygon, agreement = hn_polygon_oracle(sigma_example, rep)
    assert agreement
    assert polygon.extremal_points == (Charge(0, 0), Charge(-1, 1), Charge(-1, 2))
    assert all(polygon_contains(polygon, p) for p in points)


def test_subobject_charges_inside_polygon_on_corpus(small_corpus):
    for rep in small_corpus:
        for sigma in standard_charge_family(rep.quiver.n):
            polygon, _ = hn_polygon_oracle(sigma, rep)
            assert all(polygon_contains(polygon, p) for p in subobject_charges(sigma, rep))


def test_hn_factors_semistable_and_telescoping(small_corpus):
    for rep in small_corpus:
        for sigma in standard_charge_family(rep.quiver.n):
            hn = hn_filtration(sigma, rep)
            total = Charge(0, 0)
            for c in hn.charges:
                total = total + c
            assert total == charge_of(sigma, rep.dims)
            assert all(is_semistable(sigma, f) for f in hn.factors)
            assert all(a > b for a, b in zip(hn.phases, hn.phases[1:]))


def test_mass_triangle_inequality(sigma_example, extension_a2):
    for ses in short_exact_sequences(extension_a2):
        for t in (-1.0, 0.0, 1.0):
            lhs = mass(sigma_example, ses.total, t)
            rhs = mass(sigma_example, ses.sub_rep(), t) + mass(sigma_example, ses.quotient, t)
            assert lhs <= rhs + 1e-9


def test_heart_refinement_with_phase_one_quotient(a2):
    sigma = standard_charge_family(2)[-1]
    rep = direct_sum(simple_rep(a2, 0, 2), simple_rep(a2, 1, 2))
    ses = [s for s in short_exact_sequences(rep) if s.sub.dim_vector == (1, 0)][0]
    for t in (-1.0, 0.0, 1.0):
        refinement = heart_triangle_refinement(sigma, ses, t)
        assert refinement.quotient_in_phase_one
        assert refinement.holds


def test_cohomology_profile(a2):
    s1 = simple_rep(a2, 0, 2)
    profile = CohomologyProfile(((semisimple_rep(a2, 1, 2, 2), 2), (s1, 0)))
    assert profile.degrees() == [0, 2]
    assert profile.module(0) == s1
    assert profile.shift(1).degrees() == [-1, 1]
    assert profile.poincare_polynomial().coefficients == {0: 1, 2: 2}
    with pytest.raises(ValueError):
        CohomologyProfile(((s1, 0), (s1, 0)))


def test_mass_of_complex(sigma0_a2, a2):
    profile = CohomologyProfile(((simple_rep(a2, 0, 2), 0), (simple_rep(a2, 1, 2), 2)))
    t = -1.0
    expected = math.exp(t / 2) + math.exp(t / 2) * math.exp(-2 * t)
    assert mass_of_complex(sigma0_a2, profile, t) == pytest.approx(expected)
    assert log_mass_of_complex(sigma0_a2, profile, t) == pytest.approx(math.log(expected))


def test_rotated_condition(sigma0_a2):
    rotated = sigma0_a2.rotated(Charge(1, 1))
    assert rotated.charge.z == (Charge(-1, 1), Charge(-1, 1))
    with pytest.raises(ChargeDomainError):
        sigma0_a2.rotated(Charge(0, -1))


def test_support_constant_and_distance(sigma0_a2, sigma_example, a2):
    corpus = [simple_rep(a2, 0, 2), simple_rep(a2, 1, 2)]
    assert support_constant_sample(sigma0_a2, corpus) == pytest.approx(1.0)
    same = stab_distance_sample(sigma0_a2, sigma0_a2, corpus, 0.0)
    assert same.phase_gap == 0.0
    assert same.mass_ratio_range == (1.0, 1.0)
    moved = stab_distance_sample(sigma0_a2, sigma_example, corpus, 0.0)
    assert moved.phase_gap == pytest.approx(0.25)


def test_corpus_is_deterministic():
    assert build_corpus(3, size=12) == build_corpus(3, size=12)
    assert all(0 < rep.total_dim <= 6 for rep in build_corpus(3, size=40))
