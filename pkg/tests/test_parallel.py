import time

import pytest

from src.utils.parallel import ordered_map


def slow_square(x):
    time.sleep(0.01 * (5 - x))
    return x * x


@pytest.mark.parametrize("workers", [1, 4])
def test_results_keep_input_order(workers):
    assert ordered_map(slow_square, [0, 1, 2, 3, 4], max_workers=workers) == [0, 1, 4, 9, 16]


def test_worker_errors_propagate():
    def fail_on_three(x):
        if x == 3:
            raise ValueError("three")
        return x

    with pytest.raises(ValueError, match="three"):
        ordered_map(fail_on_three, [1, 2, 3], max_workers=2)


def test_empty_input():
    assert ordered_map(slow_square, []) == []
