"""
Linear algebra over prime fields F_p
Subspaces of F_p^d are stored canonically as tuples of reduced row echelon rows.
"""
import itertools
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

Subspace = Tuple[Tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]], d: int) -> np.ndarray:
    """Rows as an int64 array of shape (len(rows), d), empty allowed"""
    return np.array(rows, dtype=np.int64).reshape(len(rows), d)


def rref(matrix: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form mod p with zero rows dropped, plus pivot columns"""
    m = np.array(matrix, dtype=np.int64) % p
    n_rows, n_cols = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nonzero = np.nonzero(m[r:, c])[0]
        if nonzero.size == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        for s in range(n_rows):
            if s != r and m[s, c]:
                m[s] = (m[s] - m[s, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def canonical(matrix: np.ndarray, p: int) -> Subspace:
    """Canonical form of the row space of matrix"""
    reduced, _ = rref(matrix, p)
    return tuple(tuple(int(v) for v in row) for row in reduced)


def rank(matrix: np.ndarray, p: int) -> int:
    return len(rref(matrix, p)[1])


def pivot_columns(subspace: Subspace) -> List[int]:
    """Leading column of every row of a canonical basis"""
    return [next(c for c, v in enumerate(row) if v) for row in subspace]


def nullspace(matrix: np.ndarray, d: int, p: int) -> np.ndarray:
    """Basis rows of {x in F_p^d : matrix @ x = 0}"""
    matrix = np.asarray(matrix, dtype=np.int64)
    if matrix.size == 0:
        matrix = np.zeros((0, d), dtype=np.int64)
    reduced, pivots = rref(matrix, p)
    free = [c for c in range(d) if c not in pivots]
    basis = np.zeros((len(free), d), dtype=np.int64)
    for index, f in enumerate(free):
        basis[index, f] = 1
        for r, c in enumerate(pivots):
            basis[index, c] = (-reduced[r, f]) % p
    return basis


def subspace_matrix(subspace: Subspace, d: int) -> np.ndarray:
    return as_matrix(subspace, d)


def contains(outer: Subspace, inner: Subspace, d: int, p: int) -> bool:
    """inner is a subspace of outer"""
    if not inner:
        return True
    stacked = np.vstack([subspace_matrix(outer, d), subspace_matrix(inner, d)])
    return rank(stacked, p) == len(outer)


def vector_in(subspace: Subspace, vector: np.ndarray, d: int, p: int) -> bool:
    return contains(subspace, canonical(vector.reshape(1, d), p), d, p)


def subspace_sum(a: Subspace, b: Subspace, d: int, p: int) -> Subspace:
    return canonical(np.vstack([subspace_matrix(a, d), subspace_matrix(b, d)]), p)


def subspace_intersection(a: Subspace, b: Subspace, d: int, p: int) -> Subspace:
    """a ∩ b = annihilator of (ann a + ann b)"""
    annihilators = np.vstack([nullspace(subspace_matrix(a, d), d, p), nullspace(subspace_matrix(b, d), d, p)])
    if annihilators.shape[0] == 0:
        return canonical(np.eye(d, dtype=np.int64), p)
    return canonical(nullspace(annihilators, d, p), p)


def image(subspace: Subspace, linear_map: np.ndarray, d_source: int, d_target: int, p: int) -> Subspace:
    """Canonical basis of linear_map(subspace); linear_map acts on columns"""
    if not subspace or d_target == 0:
        return ()
    rows = subspace_matrix(subspace, d_source) @ linear_map.reshape(d_target, d_source).T
    return canonical(rows, p)


@lru_cache(maxsize=None)
def all_subspaces(d: int, p: int) -> Tuple[Subspace, ...]:
    """Every subspace of F_p^d, ordered by dimension then canonical form"""
    result: List[Subspace] = []
    for k in range(d + 1):
        found: List[Subspace] = []
        for pivots in itertools.combinations(range(d), k):
            # Free slots: to the right of the row's pivot and not another pivot column
            slots = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivots]
            for values in itertools.product(range(p), repeat=len(slots)):
                rows = [[0] * d for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), v in zip(slots, values):
                    rows[r][c] = v
                found.append(tuple(tuple(row) for row in rows))
        result.extend(sorted(found))
    return tuple(result)


@lru_cache(maxsize=4096)
def subspaces_containing(inner: Subspace, d: int, p: int) -> Tuple[Subspace, ...]:
    """Every subspace of F_p^d containing inner, via subspaces of the quotient F_p^d / inner"""
    free = [c for c in range(d) if c not in pivot_columns(inner)]
    base = subspace_matrix(inner, d)
    result = []
    for quotient_space in all_subspaces(len(free), p):
        lifts = np.zeros((len(quotient_space), d), dtype=np.int64)
        for r, row in enumerate(quotient_space):
            lifts[r, free] = row
        result.append(canonical(np.vstack([base, lifts]), p))
    return tuple(sorted(result, key=lambda s: (len(s), s)))


def coordinates_in(subspace: Subspace, vector: np.ndarray) -> np.ndarray:
    """Coordinates of a vector lying in subspace with respect to its canonical basis"""
    return np.array([vector[c] for c in pivot_columns(subspace)], dtype=np.int64)


def quotient_projection(subspace: Subspace, d: int, p: int) -> np.ndarray:
    """Matrix of F_p^d -> F_p^d / subspace, quotient coordinates on the non-pivot columns"""
    pivots = pivot_columns(subspace)
    free = [c for c in range(d) if c not in pivots]
    projection = np.zeros((len(free), d), dtype=np.int64)
    for index, c in enumerate(free):
        projection[index, c] = 1
    for r, pc in enumerate(pivots):
        for index, c in enumerate(free):
            projection[index, pc] = (-subspace[r][c]) % p
    return projection


def quotient_lift(subspace: Subspace, d: int) -> np.ndarray:
    """d x (d - k) matrix sending quotient coordinates to representatives"""
    free = [c for c in range(d) if c not in pivot_columns(subspace)]
    lift = np.zeros((d, len(free)), dtype=np.int64)
    for index, c in enumerate(free):
        lift[c, index] = 1
    return lift
