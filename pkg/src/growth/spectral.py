"""
Spectral radius of integer matrices
Exact characteristic polynomial through sympy, roots of its square-free
factors through numpy; power iteration on |A| only on request.
"""
import math
from typing import List, Optional

import numpy as np
import sympy
from loguru import logger

from src.config.settings import get_settings


def _as_int_matrix(matrix) -> List[List[int]]:
    rows = [[int(v) for v in row] for row in np.asarray(matrix, dtype=object)]
    if not rows or any(len(row) != len(rows) for row in rows):
        raise ValueError("spectral radius needs a nonempty square matrix")
    return rows


def characteristic_polynomial(matrix) -> List[int]:
    """Integer coefficients of det(lambda I - A), highest degree first"""
    rows = _as_int_matrix(matrix)
    lam = sympy.Symbol('lambda')
    poly = sympy.Matrix(rows).charpoly(lam)
    return [int(c) for c in poly.all_coeffs()]


def spectral_radius(matrix, allow_approximation: bool = False, exact_cap: Optional[int] = None) -> float:
    """max |lambda| over the eigenvalues of an integer matrix"""
    rows = _as_int_matrix(matrix)
    settings = get_settings()
    cap = exact_cap if exact_cap is not None else settings.spectral_exact_cap
    n = len(rows)

    if n <= cap:
        lam = sympy.Symbol('lambda')
        poly = sympy.Poly(sympy.Matrix(rows).charpoly(lam).as_expr(), lam)
        _, factors = poly.sqf_list()
        radius = 0.0
        for factor, _multiplicity in factors:
            coefficients = [float(c) for c in factor.all_coeffs()]
            if len(coefficients) < 2:
                continue
            roots = np.roots(coefficients)
            radius = max(radius, float(np.max(np.abs(roots))))
        logger.debug(f"Exact spectral radius of {n}x{n} matrix: {radius:.12f}")
        return radius

    if not allow_approximation:
        raise ValueError(f"matrix of size {n} exceeds the exact characteristic polynomial cap {cap}")
    estimate = _power_iteration_abs(np.abs(np.array(rows, dtype=float)),
                                    settings.power_iteration_max_steps,
                                    settings.power_iteration_tolerance)
    logger.warning(f"Spectral radius of {n}x{n} matrix approximated by power iteration on |A| "
                   f"(upper estimate {estimate:.6f})")
    return estimate


def _power_iteration_abs(matrix: np.ndarray, max_steps: int, tolerance: float) -> float:
    """Perron root of a nonnegative matrix; bounds rho(A) from above"""
    vector = np.ones(matrix.shape[0]) / math.sqrt(matrix.shape[0])
    estimate = 0.0
    for _ in range(max_steps):
        product = matrix @ vector
        norm = float(np.linalg.norm(product))
        if norm == 0.0:
            return 0.0
        vector = product / norm
        if abs(norm - estimate) <= tolerance * max(1.0, norm):
            return norm
        estimate = norm
    logger.warning(f"Power iteration did not converge in {max_steps} steps")
    return estimate


def log_spectral_radius(matrix, allow_approximation: bool = False) -> float:
    radius = spectral_radius(matrix, allow_approximation)
    if radius == 0.0:
        return -math.inf
    return math.log(radius)
