"""
Spherical twist calculus on the CY-N Ginzburg category of an acyclic quiver
K-theory matrices, exact profiles of single twist powers and no-cancellation
upper bounds for arbitrary twist words.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.algebra.laurent import LaurentPoly, geometric_sum, poly_sum
from src.algebra.quiver import Quiver, cyn_euler_matrix, graded_hom_table
from src.config.settings import get_settings
from src.representations.representation import (
    Representation,
    semisimple_rep,
    simple_rep,
    universal_extension,
)
from src.stability.hn_engine import CohomologyProfile
from src.twists.words import INVERSE, SHIFT, TWIST, Generator, TwistWord


@lru_cache(maxsize=1024)
def _module(kind: str, quiver: Quiver, i: int, other: int, p: int) -> Representation:
    """Shared cohomology modules; other is the target vertex or the multiplicity"""
    if kind == "extension":
        return universal_extension(quiver, i, other, p)
    if kind == "semisimple":
        return semisimple_rep(quiver, i, other, p)
    return simple_rep(quiver, i, p)


def _check_vertex(quiver: Quiver, *vertices: int) -> None:
    for v in vertices:
        if not 0 <= v < quiver.n:
            raise ValueError(f"vertex {v + 1} out of range 1..{quiver.n}")


# -- K-theory ----------------------------------------------------------------

def generator_matrix(quiver: Quiver, N: int, generator: Generator) -> np.ndarray:
    """Action on K(D) in the basis [S_1], ..., [S_n]; column j is the image of [S_j]"""
    n = quiver.n
    identity = np.eye(n, dtype=object)
    if generator.kind == SHIFT:
        return identity * (-1) ** (generator.value % 2)
    _check_vertex(quiver, generator.value)
    chi = cyn_euler_matrix(quiver, N)
    i = generator.value
    rank_one = np.zeros((n, n), dtype=object)
    rank_one[i, :] = [int(v) for v in chi[i]]
    if generator.kind == TWIST:
        return identity - rank_one
    # N odd: transvection, inverted by flipping the sign; N even: a reflection
    return identity + rank_one if N % 2 == 1 else identity - rank_one


def twist_k_matrix(quiver: Quiver, N: int, word: TwistWord) -> np.ndarray:
    """[word] = product of the generator matrices, left to right"""
    word.validate(quiver.n)
    graded_hom_table(quiver, N)
    result = np.eye(quiver.n, dtype=object)
    for generator in word:
        result = result.dot(generator_matrix(quiver, N, generator))
    return result


def matrix_to_int(matrix: np.ndarray) -> List[List[int]]:
    return [[int(v) for v in row] for row in matrix]


# -- exact profiles of twist powers -------------------------------------------

@dataclass(frozen=True)
class TwistPowerProfile:
    """Cohomology of Phi_i^k S_j together with its Poincare polynomial"""
    i: int
    j: int
    k: int
    profile: CohomologyProfile
    poincare: LaurentPoly

    def to_dict(self) -> Dict[str, Any]:
        return {
            'twist_vertex': self.i + 1,
            'simple': self.j + 1,
            'power': self.k,
            'cohomology': {str(k): list(d) for k, d in self.profile.dimension_classes().items()},
            'poincare': self.poincare.to_dict(),
        }


def twist_power_profile(quiver: Quiver, N: int, i: int, k: int, j: int,
                        p: Optional[int] = None) -> TwistPowerProfile:
    """H^* of Phi_i^k S_j for k >= 0"""
    _check_vertex(quiver, i, j)
    if k < 0:
        raise ValueError("negative twist powers have no closed-form profile")
    graded_hom_table(quiver, N)
    field_p = p if p is not None else get_settings().field_characteristic
    step = N - 1

    if k == 0:
        entries = [(_module("simple", quiver, j, 1, field_p), 0)]
    elif i == j:
        entries = [(_module("simple", quiver, i, 1, field_p), k * step)]
    elif quiver.q[i][j] > 0:
        q = quiver.q[i][j]
        entries = [(_module("extension", quiver, i, j, field_p), 0)]
        entries += [(_module("semisimple", quiver, i, q, field_p), l * step) for l in range(1, k)]
    elif quiver.q[j][i] > 0:
        q = quiver.q[j][i]
        entries = [(_module("simple", quiver, j, 1, field_p), 0)]
        entries += [(_module("semisimple", quiver, i, q, field_p), (N - 2) + l * step) for l in range(k)]
    else:
        entries = [(_module("simple", quiver, j, 1, field_p), 0)]

    profile = CohomologyProfile(tuple(entries))
    return TwistPowerProfile(i=i, j=j, k=k, profile=profile, poincare=profile.poincare_polynomial())


def closed_form_poincare(quiver: Quiver, N: int, i: int, k: int, j: int) -> LaurentPoly:
    """P_t(Phi_i^k S_j) in u = e^{-t}, written with geometric sums"""
    _check_vertex(quiver, i, j)
    ratio = LaurentPoly.monomial(1, N - 1)
    if k == 0:
        return LaurentPoly.one()
    if i == j:
        return LaurentPoly.monomial(1, k * (N - 1))
    if quiver.q[i][j] > 0:
        return LaurentPoly.one() + geometric_sum(ratio, k).scale(quiver.q[i][j])
    if quiver.q[j][i] > 0:
        return LaurentPoly.one() + geometric_sum(ratio, k).shift_degree(N - 2).scale(quiver.q[j][i])
    return LaurentPoly.one()


def poincare_recursion_check(quiver: Quiver, N: int, i: int, k: int, j: int) -> bool:
    """Telescope the twist triangle k times and compare with the closed form and the profile"""
    _check_vertex(quiver, i, j)
    graded_hom_table(quiver, N)
    current = LaurentPoly.one()
    for l in range(k):
        if i == j:
            current = current.shift_degree(N - 1)
        elif quiver.q[i][j] > 0:
            current = current + LaurentPoly.monomial(quiver.q[i][j], l * (N - 1))
        elif quiver.q[j][i] > 0:
            current = current + LaurentPoly.monomial(quiver.q[j][i], (N - 2) + l * (N - 1))
    closed = closed_form_poincare(quiver, N, i, k, j)
    profiled = twist_power_profile(quiver, N, i, k, j).poincare
    agrees = current == closed == profiled
    if not agrees:
        logger.error(f"Poincare mismatch for Phi_{i + 1}^{k} S_{j + 1}: recursion {current}, closed {closed}, profile {profiled}")
    return agrees


# -- graded classes and word upper bounds -----------------------------------

@dataclass(frozen=True)
class GradedClass:
    """Entry i counts copies of S_i by cohomological degree"""
    entries: Tuple[LaurentPoly, ...]

    @classmethod
    def simple(cls, n: int, j: int, degree: int = 0) -> 'GradedClass':
        return cls(tuple(LaurentPoly.monomial(1, degree) if v == j else LaurentPoly.zero() for v in range(n)))

    @classmethod
    def generator(cls, n: int) -> 'GradedClass':
        """The split generator S_1 + ... + S_n in degree 0"""
        return cls(tuple(LaurentPoly.one() for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.entries)

    def is_nonnegative(self) -> bool:
        return all(e.is_nonnegative() for e in self.entries)

    def poincare(self) -> LaurentPoly:
        return poly_sum(self.entries)

    def k_class(self) -> Tuple[int, ...]:
        return tuple(e.evaluate_at_minus_one() for e in self.entries)

    def to_dict(self) -> Dict[str, Any]:
        return {str(v + 1): e.to_dict() for v, e in enumerate(self.entries)}


def _pure_block(graded: GradedClass, i: int) -> Optional[Tuple[int, int]]:
    """(c, m) if the class is exactly c copies of S_i in degree m"""
    for v, entry in enumerate(graded.entries):
        if v != i and not entry.is_zero():
            return None
    entry = graded.entries[i]
    if not entry.is_monomial():
        return None
    (degree, coefficient), = entry.items()
    return coefficient, degree


def _apply_generator(quiver: Quiver, N: int, generator: Generator, graded: GradedClass) -> GradedClass:
    if generator.kind == SHIFT:
        return GradedClass(tuple(e.shift_degree(-generator.value) for e in graded.entries))

    i = generator.value
    # Hom(S_i, S_i[1]) = 0, so a pure block c S_i[m] is split and the twist only shifts it
    block = _pure_block(graded, i)
    if block is not None:
        c, m = block
        degree = m + (N - 1) if generator.kind == TWIST else m - (N - 1)
        return GradedClass(tuple(
            LaurentPoly.monomial(c, degree) if v == i else LaurentPoly.zero() for v in range(quiver.n)
        ))

    table = graded_hom_table(quiver, N)
    if generator.kind == TWIST:
        # Hom^*(S_i, X) (x) S_i moved into cone position
        homs = poly_sum(graded.entries[j] * table.hom_polynomial(i, j) for j in range(quiver.n))
        added = homs.shift_degree(-1)
    elif generator.kind == INVERSE:
        # S_i (x) Hom^*(X, S_i)^*: degrees reverse under the dual
        homs = poly_sum(
            graded.entries[j] * LaurentPoly({-m: c for m, c in table.hom_polynomial(j, i).items()})
            for j in range(quiver.n)
        )
        added = homs.shift_degree(1)
    else:
        raise ValueError(f"unknown generator kind {generator.kind}")
    entries = list(graded.entries)
    entries[i] = entries[i] + added
    return GradedClass(tuple(entries))


def word_upper_profile(quiver: Quiver, N: int, word: TwistWord, start: GradedClass) -> GradedClass:
    """Cone counts without cancellation, generators applied right to left.

    The Poincare polynomial of the result bounds the true one from above
    for t in R and its value at u = -1 is the exact K-theory class.
    """
    word.validate(quiver.n)
    if start.n != quiver.n:
        raise ValueError(f"graded class has {start.n} entries for {quiver.n} vertices")
    if not start.is_nonnegative():
        raise ValueError("start class must have nonnegative coefficients")
    graded = start
    for generator in word.acting_order():
        graded = _apply_generator(quiver, N, generator, graded)
    return graded


def word_power_orbit(quiver: Quiver, N: int, word: TwistWord, start: GradedClass,
                     n_max: int) -> List[GradedClass]:
    """[start, w(start), w^2(start), ..., w^{n_max}(start)] of upper profiles"""
    orbit = [start]
    for _ in range(n_max):
        orbit.append(word_upper_profile(quiver, N, word, orbit[-1]))
    return orbit


def k_class_consistency(quiver: Quiver, N: int, word: TwistWord, j: int) -> bool:
    """u = -1 evaluation of the upper profile equals the K-matrix column"""
    profile = word_upper_profile(quiver, N, word, GradedClass.simple(quiver.n, j))
    column = tuple(int(v) for v in twist_k_matrix(quiver, N, word)[:, j])
    return profile.k_class() == column


def twist_profiles_table(quiver: Quiver, N: int, k_values: Sequence[int]) -> List[TwistPowerProfile]:
    return [
        twist_power_profile(quiver, N, i, k, j)
        for k in k_values for i in range(quiver.n) for j in range(quiver.n)
    ]
