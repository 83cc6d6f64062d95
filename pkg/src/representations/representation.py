"""
Quiver representations over F_p
The map of an arrow i -> j is a d_j x d_i matrix acting on column vectors.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.algebra.quiver import Quiver, validate_quiver
from src.config.settings import get_settings
from src.representations import finite_field as ff
from src.representations.finite_field import Subspace
from src.utils.errors import (
    EnumerationCapError,
    FieldMismatchError,
    NotSubrepresentationError,
)

MatrixRows = Tuple[Tuple[int, ...], ...]


def _freeze(matrix: np.ndarray, p: int) -> MatrixRows:
    return tuple(tuple(int(v) % p for v in row) for row in np.asarray(matrix, dtype=np.int64))


@dataclass(frozen=True)
class Representation:
    """A finite-dimensional representation of an acyclic quiver over F_p.

    maps[a] belongs to quiver.arrows[a]; everything is stored as nested
    tuples so representations are hashable and can key caches.
    """
    quiver: Quiver
    p: int
    dims: Tuple[int, ...]
    maps: Tuple[MatrixRows, ...]

    def __post_init__(self):
        if len(self.dims) != self.quiver.n:
            raise ValueError(f"expected {self.quiver.n} dimensions, got {len(self.dims)}")
        if any(d < 0 for d in self.dims):
            raise ValueError("dimensions must be nonnegative")
        arrows = self.quiver.arrows
        if len(self.maps) != len(arrows):
            raise ValueError(f"expected {len(arrows)} arrow maps, got {len(self.maps)}")
        for index, ((i, j), rows) in enumerate(zip(arrows, self.maps)):
            if len(rows) != self.dims[j] or any(len(row) != self.dims[i] for row in rows):
                raise ValueError(
                    f"arrow {index} ({i + 1}->{j + 1}) needs a {self.dims[j]}x{self.dims[i]} matrix"
                )
        object.__setattr__(self, 'maps', tuple(tuple(tuple(v % self.p for v in row) for row in rows) for rows in self.maps))

    @classmethod
    def build(cls, quiver: Quiver, dims: Sequence[int], maps: Sequence[Any], p: Optional[int] = None) -> 'Representation':
        """Construct from array-likes; p defaults to the configured characteristic"""
        field_p = p if p is not None else get_settings().field_characteristic
        dims_t = tuple(int(d) for d in dims)
        frozen = []
        for (i, j), matrix in zip(quiver.arrows, maps):
            array = np.array(matrix, dtype=np.int64).reshape(dims_t[j], dims_t[i])
            frozen.append(_freeze(array, field_p))
        return cls(quiver=quiver, p=field_p, dims=dims_t, maps=tuple(frozen))

    @property
    def dim_vector(self) -> Tuple[int, ...]:
        return self.dims

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def matrix(self, arrow_index: int) -> np.ndarray:
        i, j = self.quiver.arrows[arrow_index]
        return ff.as_matrix(self.maps[arrow_index], self.dims[i]).reshape(self.dims[j], self.dims[i])

    def describe(self) -> str:
        return f"{self.quiver.label()} rep dim={list(self.dims)} over F_{self.p}"


@dataclass(frozen=True)
class Subrep:
    """Arrow-invariant tuple of subspaces, one canonical basis per vertex"""
    bases: Tuple[Subspace, ...]

    @property
    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(len(b) for b in self.bases)

    @property
    def total_dim(self) -> int:
        return sum(self.dim_vector)

    def sort_key(self) -> Tuple[Tuple[int, ...], Tuple[Subspace, ...]]:
        return self.dim_vector, self.bases


@dataclass(frozen=True)
class ShortExactSeq:
    """0 -> sub -> total -> quotient -> 0 with the projection matrices per vertex"""
    sub: Subrep
    total: Representation
    quotient: Representation
    projection: Tuple[MatrixRows, ...] = field(compare=False)

    def sub_rep(self) -> Representation:
        return restrict(self.total, self.sub)


@dataclass(frozen=True)
class Morphism:
    """Per-vertex linear maps source_v -> target_v (d'_v x d_v matrices)"""
    source: Representation
    target: Representation
    components: Tuple[MatrixRows, ...]

    def __post_init__(self):
        _check_compatible(self.source, self.target)
        for v, rows in enumerate(self.components):
            if len(rows) != self.target.dims[v] or any(len(row) != self.source.dims[v] for row in rows):
                raise ValueError(f"component at vertex {v + 1} has the wrong shape")

    @classmethod
    def build(cls, source: Representation, target: Representation, components: Sequence[Any]) -> 'Morphism':
        frozen = tuple(
            _freeze(np.array(c, dtype=np.int64).reshape(target.dims[v], source.dims[v]), source.p)
            for v, c in enumerate(components)
        )
        return cls(source=source, target=target, components=frozen)

    def component(self, v: int) -> np.ndarray:
        return ff.as_matrix(self.components[v], self.source.dims[v]).reshape(self.target.dims[v], self.source.dims[v])

    def commutes(self) -> bool:
        """f_j . M_a == N_a . f_i for every arrow a: i -> j"""
        p = self.source.p
        for a, (i, j) in enumerate(self.source.quiver.arrows):
            left = self.component(j) @ self.source.matrix(a)
            right = self.target.matrix(a) @ self.component(i)
            if not np.array_equal(left % p, right % p):
                return False
        return True


def _check_compatible(a: Representation, b: Representation) -> None:
    if a.p != b.p:
        raise FieldMismatchError(f"representations over F_{a.p} and F_{b.p} cannot be combined")
    if a.quiver != b.quiver:
        raise ValueError("representations of different quivers cannot be combined")


def check_cap(rep: Representation, cap: Optional[int] = None) -> int:
    settings = get_settings()
    limit = cap if cap is not None else settings.enumeration_cap
    if limit > settings.enumeration_hard_limit:
        raise EnumerationCapError(f"cap {limit} exceeds the hard limit {settings.enumeration_hard_limit}")
    if rep.total_dim > limit:
        raise EnumerationCapError(f"total dimension {rep.total_dim} exceeds the enumeration cap {limit}")
    return limit


# -- standard representations --------------------------------------------

def zero_rep(quiver: Quiver, p: Optional[int] = None) -> Representation:
    return Representation.build(quiver, [0] * quiver.n, [np.zeros((0, 0))] * len(quiver.arrows), p)


def semisimple_rep(quiver: Quiver, i: int, multiplicity: int = 1, p: Optional[int] = None) -> Representation:
    """S_i^{(+)multiplicity}"""
    if not 0 <= i < quiver.n:
        raise ValueError(f"vertex {i + 1} is not in the quiver")
    dims = [multiplicity if v == i else 0 for v in range(quiver.n)]
    maps = [np.zeros((dims[t], dims[s])) for s, t in quiver.arrows]
    return Representation.build(quiver, dims, maps, p)


def simple_rep(quiver: Quiver, i: int, p: Optional[int] = None) -> Representation:
    return semisimple_rep(quiver, i, 1, p)


def universal_extension(quiver: Quiver, i: int, j: int, p: Optional[int] = None) -> Representation:
    """Middle term of 0 -> S_j -> X -> S_i^{q_ij} -> 0 with no S_i summand.

    Copy c of the arrows i -> j maps the c-th basis vector at i onto the
    socle S_j.
    """
    q = quiver.q[i][j]
    if q == 0:
        raise ValueError(f"no arrows from vertex {i + 1} to vertex {j + 1}")
    dims = [0] * quiver.n
    dims[i] = q
    dims[j] = 1
    maps = []
    copy = 0
    for s, t in quiver.arrows:
        matrix = np.zeros((dims[t], dims[s]), dtype=np.int64)
        if (s, t) == (i, j):
            matrix[0, copy] = 1
            copy += 1
        maps.append(matrix)
    return Representation.build(quiver, dims, maps, p)


def random_rep(quiver: Quiver, dims: Sequence[int], seed: int, p: Optional[int] = None,
               cap: Optional[int] = None) -> Representation:
    """Seeded random arrow matrices; the same seed gives the same representation"""
    field_p = p if p is not None else get_settings().field_characteristic
    limit = cap if cap is not None else get_settings().enumeration_cap
    if sum(dims) > limit:
        raise EnumerationCapError(f"total dimension {sum(dims)} exceeds the enumeration cap {limit}")
    rng = np.random.default_rng(seed)
    maps = [rng.integers(0, field_p, size=(dims[t], dims[s])) for s, t in quiver.arrows]
    return Representation.build(quiver, dims, maps, field_p)


def direct_sum(a: Representation, b: Representation) -> Representation:
    _check_compatible(a, b)
    maps = []
    for index, (i, j) in enumerate(a.quiver.arrows):
        block = np.zeros((a.dims[j] + b.dims[j], a.dims[i] + b.dims[i]), dtype=np.int64)
        block[:a.dims[j], :a.dims[i]] = a.matrix(index)
        block[a.dims[j]:, a.dims[i]:] = b.matrix(index)
        maps.append(block)
    return Representation.build(a.quiver, [x + y for x, y in zip(a.dims, b.dims)], maps, a.p)


# -- subrepresentations ----------------------------------------------------

def whole(rep: Representation) -> Subrep:
    return Subrep(tuple(ff.canonical(np.eye(d, dtype=np.int64), rep.p) for d in rep.dims))


def zero_subrep(rep: Representation) -> Subrep:
    return Subrep(tuple(() for _ in rep.dims))


def make_subrep(rep: Representation, bases: Sequence[Sequence[Sequence[int]]]) -> Subrep:
    """Canonicalize spanning sets and check arrow invariance"""
    sub = Subrep(tuple(ff.canonical(ff.as_matrix(rows, d), rep.p) for rows, d in zip(bases, rep.dims)))
    if not is_subrep(rep, sub):
        raise NotSubrepresentationError(f"subspaces with dims {list(sub.dim_vector)} are not arrow-invariant")
    return sub


def is_subrep(rep: Representation, sub: Subrep) -> bool:
    """map_a(U_i) lies in U_j for every arrow a: i -> j"""
    if len(sub.bases) != rep.quiver.n:
        return False
    for a, (i, j) in enumerate(rep.quiver.arrows):
        pushed = ff.image(sub.bases[i], rep.matrix(a), rep.dims[i], rep.dims[j], rep.p)
        if not ff.contains(sub.bases[j], pushed, rep.dims[j], rep.p):
            return False
    return True


def _require_subrep(rep: Representation, sub: Subrep) -> None:
    if not is_subrep(rep, sub):
        raise NotSubrepresentationError(f"dims {list(sub.dim_vector)} do not form a subrepresentation of {rep.describe()}")


def subrep_sum(rep: Representation, a: Subrep, b: Subrep) -> Subrep:
    return Subrep(tuple(ff.subspace_sum(x, y, d, rep.p) for x, y, d in zip(a.bases, b.bases, rep.dims)))


def subrep_intersection(rep: Representation, a: Subrep, b: Subrep) -> Subrep:
    return Subrep(tuple(ff.subspace_intersection(x, y, d, rep.p) for x, y, d in zip(a.bases, b.bases, rep.dims)))


def subrep_contains(rep: Representation, outer: Subrep, inner: Subrep) -> bool:
    return all(ff.contains(o, i, d, rep.p) for o, i, d in zip(outer.bases, inner.bases, rep.dims))


def restrict(rep: Representation, sub: Subrep) -> Representation:
    """The subrepresentation as a representation in its own canonical basis"""
    _require_subrep(rep, sub)
    maps = []
    for a, (i, j) in enumerate(rep.quiver.arrows):
        matrix = rep.matrix(a)
        block = np.zeros((len(sub.bases[j]), len(sub.bases[i])), dtype=np.int64)
        for col, vector in enumerate(sub.bases[i]):
            pushed = (matrix @ np.array(vector, dtype=np.int64)) % rep.p
            block[:, col] = ff.coordinates_in(sub.bases[j], pushed)
        maps.append(block)
    return Representation.build(rep.quiver, sub.dim_vector, maps, rep.p)


def relative_subrep(rep: Representation, outer: Subrep, inner: Subrep) -> Subrep:
    """inner, contained in outer, expressed in the basis of restrict(rep, outer)"""
    bases = []
    for o, i, d in zip(outer.bases, inner.bases, rep.dims):
        if not ff.contains(o, i, d, rep.p):
            raise NotSubrepresentationError("inner subrep is not contained in outer subrep")
        coords = [ff.coordinates_in(o, np.array(v, dtype=np.int64)) for v in i]
        bases.append(ff.canonical(ff.as_matrix([c.tolist() for c in coords], len(o)), rep.p))
    return Subrep(tuple(bases))


def quotient_with_projection(rep: Representation, sub: Subrep) -> Tuple[Representation, Tuple[MatrixRows, ...]]:
    _require_subrep(rep, sub)
    projections = [ff.quotient_projection(b, d, rep.p) for b, d in zip(sub.bases, rep.dims)]
    lifts = [ff.quotient_lift(b, d) for b, d in zip(sub.bases, rep.dims)]
    maps = [
        projections[j] @ rep.matrix(a) @ lifts[i]
        for a, (i, j) in enumerate(rep.quiver.arrows)
    ]
    dims = [d - len(b) for b, d in zip(sub.bases, rep.dims)]
    quotient_rep = Representation.build(rep.quiver, dims, maps, rep.p)
    return quotient_rep, tuple(_freeze(pr, rep.p) for pr in projections)


def quotient(rep: Representation, sub: Subrep) -> Representation:
    """rep / sub in quotient coordinates on the non-pivot columns"""
    return quotient_with_projection(rep, sub)[0]


def short_exact_sequence(rep: Representation, sub: Subrep) -> ShortExactSeq:
    quotient_rep, projection = quotient_with_projection(rep, sub)
    return ShortExactSeq(sub=sub, total=rep, quotient=quotient_rep, projection=projection)


def kernel(morphism: Morphism) -> Subrep:
    if not morphism.commutes():
        raise ValueError("maps do not commute with the arrows")
    source = morphism.source
    return Subrep(tuple(
        ff.canonical(ff.nullspace(morphism.component(v), source.dims[v], source.p), source.p)
        for v in range(source.quiver.n)
    ))


def image(morphism: Morphism) -> Subrep:
    if not morphism.commutes():
        raise ValueError("maps do not commute with the arrows")
    target = morphism.target
    return Subrep(tuple(
        ff.canonical(morphism.component(v).T, target.p) if target.dims[v] else ()
        for v in range(target.quiver.n)
    ))


@dataclass(frozen=True)
class CompositionSeries:
    """0 = F_0 < F_1 < ... < F_L = E with F_k / F_{k-1} simple at vertex factors[k-1]"""
    filtration: Tuple[Subrep, ...]
    factors: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.factors)

    def multiplicities(self, n: int) -> Tuple[int, ...]:
        return tuple(self.factors.count(v) for v in range(n))


def composition_series(rep: Representation) -> CompositionSeries:
    """Sinks first: every added basis vector maps into vertices that are already full"""
    if rep.is_zero():
        raise ValueError("the zero representation has no composition series")
    bases: List[List[Tuple[int, ...]]] = [[] for _ in rep.dims]
    filtration = [zero_subrep(rep)]
    factors = []
    for v in reversed(rep.quiver.order):
        for k in range(rep.dims[v]):
            bases[v].append(tuple(1 if c == k else 0 for c in range(rep.dims[v])))
            filtration.append(Subrep(tuple(tuple(b) for b in bases)))
            factors.append(v)
    logger.debug(f"Composition series of {rep.describe()} has length {len(factors)}")
    return CompositionSeries(filtration=tuple(filtration), factors=tuple(factors))


# -- serialization -----------------------------------------------------------

def rep_to_dict(rep: Representation) -> Dict[str, Any]:
    """JSON-ready form with 1-based arrow labels"""
    return {
        'field': rep.p,
        'quiver': [list(row) for row in rep.quiver.q],
        'dims': list(rep.dims),
        'arrows': [[i + 1, j + 1] for i, j in rep.quiver.arrows],
        'maps': [[list(row) for row in rows] for rows in rep.maps],
    }


def rep_from_dict(data: Dict[str, Any], quiver: Optional[Quiver] = None) -> Representation:
    q = quiver if quiver is not None else validate_quiver(data['quiver'])
    dims = [int(d) for d in data['dims']]
    maps = data.get('maps') or [[[0] * dims[i] for _ in range(dims[j])] for i, j in q.arrows]
    return Representation.build(q, dims, maps, int(data.get('field', get_settings().field_characteristic)))
