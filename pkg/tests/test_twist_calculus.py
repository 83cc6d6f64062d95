import math

import numpy as np
import pytest

from src.algebra.laurent import LaurentPoly
from src.twists.twist_calculus import (
    GradedClass,
    closed_form_poincare,
    k_class_consistency,
    matrix_to_int,
    poincare_recursion_check,
    twist_k_matrix,
    twist_power_profile,
    twist_profiles_table,
    word_power_orbit,
    word_upper_profile,
)
from src.twists.words import SHIFT, TWIST, parse_word, shift, twist
from src.utils.errors import WordSyntaxError


def test_parse_and_format_word():
    word = parse_word("T1 T2' S[-3]")
    assert [g.kind for g in word] == [TWIST, "inverse", SHIFT]
    assert str(word) == "T1 T2' S[-3]"
    assert str(parse_word("S[+2]")) == "S[2]"
    assert len(parse_word("")) == 0


@pytest.mark.parametrize("text", ["T0", "X1", "T1''", "S[x]", "S-1"])
def test_parse_word_rejects(text):
    with pytest.raises(WordSyntaxError):
        parse_word(text)


def test_parse_word_checks_vertex_range():
    with pytest.raises(WordSyntaxError, match="out of range"):
        parse_word("T3", n=2)


def test_word_inverse_and_power():
    word = parse_word("T1 T2")
    assert str(word.inverse()) == "T2' T1'"
    assert str(word.power(2)) == "T1 T2 T1 T2"
    assert str(word.power(-1)) == "T2' T1'"
    assert word.acting_order() == (twist(1), twist(0))
    assert parse_word("S[4]").single_generator() == shift(4)
    assert word.single_generator() is None


def test_k_matrix_single_twist(a2):
    assert matrix_to_int(twist_k_matrix(a2, 3, parse_word("T1"))) == [[1, 1], [0, 1]]


def test_k_matrix_kronecker_product(k3):
    assert matrix_to_int(twist_k_matrix(k3, 3, parse_word("T1 T2"))) == [[-8, 3], [-3, 1]]


@pytest.mark.parametrize("N", [3, 4, 5])
def test_twist_times_inverse_is_identity(k3, N):
    product = twist_k_matrix(k3, N, parse_word("T1 T1' T2' T2"))
    assert matrix_to_int(product) == [[1, 0], [0, 1]]


def test_even_dimension_twist_is_reflection(a2):
    assert matrix_to_int(twist_k_matrix(a2, 4, parse_word("T1"))) == [[-1, 1], [0, 1]]
    assert matrix_to_int(twist_k_matrix(a2, 4, parse_word("T1 T1"))) == [[1, 0], [0, 1]]


def test_shift_acts_by_sign(a2):
    assert matrix_to_int(twist_k_matrix(a2, 3, parse_word("S[1]"))) == [[-1, 0], [0, -1]]
    assert matrix_to_int(twist_k_matrix(a2, 3, parse_word("S[2]"))) == [[1, 0], [0, 1]]


def test_twist_power_profiles(a2):
    extension_side = twist_power_profile(a2, 3, 0, 2, 1)
    assert extension_side.poincare.coefficients == {0: 2, 2: 1}
    assert extension_side.profile.module(0).dims == (1, 1)
    assert twist_power_profile(a2, 3, 1, 2, 0).poincare.coefficients == {0: 1, 1: 1, 3: 1}
    assert twist_power_profile(a2, 3, 0, 3, 0).poincare.coefficients == {6: 1}
    assert twist_power_profile(a2, 3, 0, 0, 1).poincare == LaurentPoly.one()
    assert twist_power_profile(a2, 3, 0, 2, 1).to_dict()['power'] == 2
    with pytest.raises(ValueError):
        twist_power_profile(a2, 3, 0, -1, 1)


@pytest.mark.parametrize("N", [3, 4, 6])
def test_closed_form_matches_recursion(k3, N):
    for k in range(6):
        for i in range(2):
            for j in range(2):
                assert poincare_recursion_check(k3, N, i, k, j)


def test_closed_form_kronecker(k3):
    assert closed_form_poincare(k3, 3, 0, 2, 1).coefficients == {0: 4, 2: 3}
    assert closed_form_poincare(k3, 3, 1, 1, 0).coefficients == {0: 1, 1: 3}


def test_profiles_table(a2):
    assert len(twist_profiles_table(a2, 3, [0, 1])) == 8


def test_upper_profile_of_single_twist_is_exact(a2):
    graded = word_upper_profile(a2, 3, parse_word("T1"), GradedClass.simple(2, 1))
    assert graded.poincare() == closed_form_poincare(a2, 3, 0, 1, 1)
    moved = word_upper_profile(a2, 3, parse_word("T1"), GradedClass.simple(2, 0))
    assert moved.entries[0] == LaurentPoly.monomial(1, 2)


def test_inverse_twist_upper_profile(a2):
    graded = word_upper_profile(a2, 3, parse_word("T1'"), GradedClass.simple(2, 1))
    assert graded.entries[0] == LaurentPoly.monomial(1, -1)
    assert graded.k_class() == (-1, 1)


def test_upper_profile_bounds_closed_form(a2):
    orbit = word_power_orbit(a2, 3, parse_word("T1"), GradedClass.simple(2, 1), 4)
    assert len(orbit) == 5
    assert orbit[2].k_class() == (2, 1)
    for k, graded in enumerate(orbit):
        exact = closed_form_poincare(a2, 3, 0, k, 1)
        for t in (-1.0, 0.0, 1.0):
            assert graded.poincare().evaluate(t) >= exact.evaluate(t) - 1e-12


@pytest.mark.parametrize("text", ["T1", "T2'", "T1 T2", "T2 T1' S[1]", "T1 T1 T2"])
def test_k_class_consistency(k3, text):
    for N in (3, 4):
        for j in range(2):
            assert k_class_consistency(k3, N, parse_word(text), j)


def test_upper_profile_rejects_bad_start(a2):
    with pytest.raises(ValueError):
        word_upper_profile(a2, 3, parse_word("T1"), GradedClass.simple(3, 0))
    negative = GradedClass((LaurentPoly({0: -1}), LaurentPoly.zero()))
    with pytest.raises(ValueError):
        word_upper_profile(a2, 3, parse_word("T1"), negative)


def test_generator_class():
    graded = GradedClass.generator(3)
    assert graded.poincare() == 3
    assert graded.to_dict()['1'] == {"0": 1}
    assert math.isclose(graded.poincare().evaluate(2.0), 3.0)
    assert np.array_equal(np.array(graded.k_class()), np.ones(3))
