import numpy as np
import pytest

from src.algebra.quiver import (
    a_n_quiver,
    cyn_euler_matrix,
    euler_form_hereditary,
    graded_hom_table,
    kronecker_quiver,
    validate_quiver,
)
from src.utils.errors import QuiverValidationError


def test_a_n_quiver_shape(a3):
    assert a3.n == 3
    assert a3.arrows == ((0, 1), (1, 2))
    assert a3.order == (0, 1, 2)
    assert a3.label() == "A3"
    assert a3.is_connected()


def test_kronecker_arrows_with_multiplicity(k3):
    assert k3.arrows == ((0, 1), (0, 1), (0, 1))
    assert k3.arrow_count(0, 1) == 3
    assert k3.predecessors(1) == [0]


def test_topological_order_is_smallest_first():
    quiver = validate_quiver([[0, 0, 0], [1, 0, 0], [1, 0, 0]])
    assert quiver.order == (1, 2, 0)


@pytest.mark.parametrize("matrix, message", [
    ([[0, 1], [1, 0]], "cycle"),
    ([[1, 0], [0, 0]], "loop"),
    ([[0, -1], [0, 0]], "negative"),
    ([[0, 1]], "length"),
    ([], "at least one vertex"),
])
def test_validate_quiver_rejects(matrix, message):
    with pytest.raises(QuiverValidationError, match=message):
        validate_quiver(matrix)


def test_disconnected_quiver():
    assert not validate_quiver([[0, 0], [0, 0]]).is_connected()


def test_graded_hom_table_a2(a2):
    table = graded_hom_table(a2, 3)
    assert table.hom(0, 0, 0) == 1
    assert table.hom(0, 0, 3) == 1
    assert table.hom(0, 1, 1) == 1
    assert table.hom(1, 0, 2) == 1
    assert table.hom(1, 0, 1) == 0
    assert table.is_cy_symmetric()
    assert table.hom_polynomial(0, 0).coefficients == {0: 1, 3: 1}


@pytest.mark.parametrize("N", [3, 4, 5])
def test_cy_symmetry_for_kronecker(k3, N):
    assert graded_hom_table(k3, N).is_cy_symmetric()


def test_cy_dimension_below_three_rejected(a2):
    with pytest.raises(QuiverValidationError):
        graded_hom_table(a2, 2)


def test_euler_matrix_symmetry(k3):
    chi3 = cyn_euler_matrix(k3, 3)
    chi4 = cyn_euler_matrix(k3, 4)
    assert np.array_equal(chi3, -chi3.T)
    assert np.array_equal(chi4, chi4.T)
    assert chi3.tolist() == [[0, -3], [3, 0]]
    assert chi4.tolist() == [[2, -3], [-3, 2]]


def test_euler_form_hereditary(a2):
    assert euler_form_hereditary(a2, [1, 0], [0, 1]) == -1
    assert euler_form_hereditary(a2, [1, 1], [1, 1]) == 1
    with pytest.raises(ValueError):
        euler_form_hereditary(a2, [1], [1, 0])


def test_standard_quiver_errors():
    with pytest.raises(QuiverValidationError):
        a_n_quiver(0)
    with pytest.raises(QuiverValidationError):
        kronecker_quiver(0)
