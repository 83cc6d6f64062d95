"""
Quiver combinatorics for Mass Growth Lab
Acyclic quivers, the CY-N graded hom table of the Ginzburg category and Euler forms.
Vertices are 0-based internally; user-facing surfaces translate from 1-based labels.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

import numpy as np
from loguru import logger

from src.algebra.laurent import LaurentPoly
from src.utils.errors import QuiverValidationError

Arrow = Tuple[int, int]


@dataclass(frozen=True)
class Quiver:
    """An acyclic quiver encoded by its arrow-count matrix q (q[i][j] arrows i -> j)"""
    q: Tuple[Tuple[int, ...], ...]
    order: Tuple[int, ...] = field(compare=False)
    name: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return len(self.q)

    @cached_property
    def arrows(self) -> Tuple[Arrow, ...]:
        """All arrows with multiplicity, sorted by (source, target)"""
        return tuple(
            (i, j)
            for i in range(self.n)
            for j in range(self.n)
            for _ in range(self.q[i][j])
        )

    def arrow_count(self, i: int, j: int) -> int:
        return self.q[i][j]

    def predecessors(self, j: int) -> List[int]:
        return [i for i in range(self.n) if self.q[i][j] > 0]

    def is_connected(self) -> bool:
        """Connectedness of the underlying undirected graph"""
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in range(self.n):
                if w not in seen and (self.q[v][w] or self.q[w][v]):
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def to_matrix(self) -> np.ndarray:
        return np.array(self.q, dtype=np.int64).reshape(self.n, self.n)

    def label(self) -> str:
        return self.name or f"Q{self.n}"


def validate_quiver(q: Sequence[Sequence[int]], name: str = "") -> Quiver:
    """Check q is a square nonnegative integer matrix of an acyclic quiver.

    The topological order is Kahn's algorithm taking the smallest ready
    vertex first, so it is deterministic.
    """
    rows = [list(row) for row in q]
    n = len(rows)
    if n == 0:
        raise QuiverValidationError("quiver must have at least one vertex")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise QuiverValidationError(f"row {i + 1} has length {len(row)}, expected {n}")
        for j, value in enumerate(row):
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise QuiverValidationError(f"entry ({i + 1},{j + 1}) is not an integer: {value!r}")
            if value < 0:
                raise QuiverValidationError(f"negative entry at ({i + 1},{j + 1})")
        if row[i] != 0:
            raise QuiverValidationError(f"nonzero diagonal at vertex {i + 1} (loop)")

    indegree = [sum(1 for i in range(n) if rows[i][j] > 0) for j in range(n)]
    ready = sorted(j for j in range(n) if indegree[j] == 0)
    order: List[int] = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for w in range(n):
            if rows[v][w] > 0:
                indegree[w] -= 1
                if indegree[w] == 0:
                    ready.append(w)
                    ready.sort()
    if len(order) != n:
        cyclic = sorted(v + 1 for v in range(n) if v not in order)
        raise QuiverValidationError(f"cycle detected among vertices {cyclic}")

    quiver = Quiver(
        q=tuple(tuple(int(v) for v in row) for row in rows),
        order=tuple(order),
        name=name,
    )
    logger.debug(f"Validated quiver {quiver.label()}: {n} vertices, {len(quiver.arrows)} arrows")
    return quiver


def a_n_quiver(n: int) -> Quiver:
    """Linearly oriented A_n: 1 -> 2 -> ... -> n"""
    if n < 1:
        raise QuiverValidationError("A_n needs n >= 1")
    q = [[1 if j == i + 1 else 0 for j in range(n)] for i in range(n)]
    return validate_quiver(q, name=f"A{n}")


def kronecker_quiver(m: int) -> Quiver:
    """Two vertices with m parallel arrows 1 -> 2"""
    if m < 1:
        raise QuiverValidationError("Kronecker quiver needs at least one arrow")
    return validate_quiver([[0, m], [0, 0]], name=f"K{m}")


def _check_cy_dimension(N: int) -> None:
    if N < 3:
        raise QuiverValidationError(
            f"Calabi-Yau dimension must be >= 3 (got {N}); the N = 2 Ginzburg category needs a modified hom table"
        )


@dataclass(frozen=True)
class GradedHomTable:
    """dim Hom(S_i, S_j[m]) in the CY-N Ginzburg category of an acyclic quiver"""
    quiver: Quiver
    N: int

    def hom(self, i: int, j: int, m: int) -> int:
        if i == j:
            return 1 if m in (0, self.N) else 0
        if m == 1 and self.quiver.q[i][j] > 0:
            return self.quiver.q[i][j]
        if m == self.N - 1 and self.quiver.q[j][i] > 0:
            return self.quiver.q[j][i]
        return 0

    def degrees(self, i: int, j: int) -> List[int]:
        if i == j:
            return [0, self.N]
        return [m for m in (1, self.N - 1) if self.hom(i, j, m)]

    def entries(self) -> Dict[Tuple[int, int, int], int]:
        """Every nonzero (i, j, m) -> dim"""
        table: Dict[Tuple[int, int, int], int] = {}
        for i in range(self.quiver.n):
            for j in range(self.quiver.n):
                for m in self.degrees(i, j):
                    table[(i, j, m)] = self.hom(i, j, m)
        return table

    def hom_polynomial(self, i: int, j: int) -> LaurentPoly:
        """sum_m dim Hom(S_i, S_j[m]) u^m"""
        return LaurentPoly({m: self.hom(i, j, m) for m in self.degrees(i, j)})

    def is_cy_symmetric(self) -> bool:
        return all(self.hom(j, i, self.N - m) == value for (i, j, m), value in self.entries().items())


def graded_hom_table(quiver: Quiver, N: int) -> GradedHomTable:
    _check_cy_dimension(N)
    return GradedHomTable(quiver=quiver, N=N)


def cyn_euler_matrix(quiver: Quiver, N: int) -> np.ndarray:
    """chi[i][j] = chi(S_i, S_j) = sum_m (-1)^m dim Hom(S_i, S_j[m])"""
    table = graded_hom_table(quiver, N)
    n = quiver.n
    chi = np.zeros((n, n), dtype=np.int64)
    for (i, j, m), value in table.entries().items():
        chi[i, j] += value if m % 2 == 0 else -value
    return chi


def euler_form_hereditary(quiver: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """<d, e> = sum_i d_i e_i - sum_{i -> j} d_i e_j for the path algebra"""
    if len(d) != quiver.n or len(e) != quiver.n:
        raise ValueError(f"dimension vectors must have length {quiver.n}")
    diagonal = sum(int(a) * int(b) for a, b in zip(d, e))
    off = sum(quiver.q[i][j] * int(d[i]) * int(e[j]) for i in range(quiver.n) for j in range(quiver.n))
    return diagonal - off
