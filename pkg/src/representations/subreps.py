"""
Exhaustive subrepresentation enumeration
The brute-force oracle behind semistability tests, HN filtrations and polygons.
"""
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger

from src.representations import finite_field as ff
from src.representations.finite_field import Subspace
from src.representations.representation import (
    Representation,
    ShortExactSeq,
    Subrep,
    check_cap,
    short_exact_sequence,
)


def subrep_enumerate(rep: Representation, cap: Optional[int] = None) -> List[Subrep]:
    """All arrow-invariant subspace tuples of rep, sorted by dim vector then canonical form.

    Raises EnumerationCapError instead of truncating when the total dimension
    is above the cap.
    """
    check_cap(rep, cap)
    return list(_enumerate_cached(rep))


@lru_cache(maxsize=2048)
def _enumerate_cached(rep: Representation) -> Tuple[Subrep, ...]:
    order = rep.quiver.order
    arrows = rep.quiver.arrows
    incoming = {v: [(a, i) for a, (i, j) in enumerate(arrows) if j == v] for v in range(rep.quiver.n)}
    matrices = [rep.matrix(a) for a in range(len(arrows))]
    found: List[Subrep] = []
    choice: List[Subspace] = [() for _ in rep.dims]

    def extend(position: int) -> None:
        if position == len(order):
            found.append(Subrep(tuple(choice)))
            return
        v = order[position]
        d = rep.dims[v]
        # Predecessors are fixed already; U_v must contain their images
        pushed = [
            ff.image(choice[i], matrices[a], rep.dims[i], d, rep.p)
            for a, i in incoming[v]
        ]
        required = ff.canonical(np.vstack([ff.subspace_matrix(s, d) for s in pushed]), rep.p) if pushed else ()
        for candidate in ff.subspaces_containing(required, d, rep.p):
            choice[v] = candidate
            extend(position + 1)
        choice[v] = ()

    extend(0)
    found.sort(key=Subrep.sort_key)
    logger.debug(f"Enumerated {len(found)} subreps of {rep.describe()}")
    return tuple(found)


def proper_nonzero_subreps(rep: Representation, cap: Optional[int] = None) -> List[Subrep]:
    total = rep.dims
    return [s for s in subrep_enumerate(rep, cap) if 0 < s.total_dim < sum(total)]


def short_exact_sequences(rep: Representation, cap: Optional[int] = None) -> List[ShortExactSeq]:
    """0 -> A -> rep -> rep/A -> 0 for every subrep A, in enumeration order"""
    return [short_exact_sequence(rep, sub) for sub in subrep_enumerate(rep, cap)]


def clear_enumeration_cache() -> None:
    _enumerate_cached.cache_clear()
