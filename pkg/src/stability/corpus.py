"""
Seeded test corpora and charge families for corpus-level checks
"""
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger

from src.algebra.quiver import Quiver, a_n_quiver
from src.config.settings import get_settings
from src.representations.representation import (
    Representation,
    direct_sum,
    random_rep,
    simple_rep,
    universal_extension,
)
from src.stability.hn_engine import StabilityCondition

DEFAULT_CORPUS_SIZE = 200
MAX_VERTEX_DIM = 3


def _seed_reps(quiver: Quiver, p: int) -> List[Representation]:
    """Simples, pairwise sums and the arrow extensions of a quiver"""
    reps = [simple_rep(quiver, i, p) for i in range(quiver.n)]
    reps += [direct_sum(reps[i], reps[j]) for i in range(quiver.n) for j in range(i, quiver.n)]
    reps += [universal_extension(quiver, i, j, p) for i, j in sorted(set(quiver.arrows))]
    return reps


def build_corpus(seed: Optional[int] = None, size: int = DEFAULT_CORPUS_SIZE,
                 quivers: Optional[Sequence[Quiver]] = None, p: int = 2,
                 max_total_dim: int = 6) -> List[Representation]:
    """Deterministic mix of structured and random reps over A_2 and A_3.

    Every vertex dimension is at most 3 and every total dimension lies in
    [1, max_total_dim]; the same seed always yields the same list.
    """
    base_seed = seed if seed is not None else get_settings().seed
    targets = list(quivers) if quivers is not None else [a_n_quiver(2), a_n_quiver(3)]
    rng = np.random.default_rng(base_seed)

    corpus: List[Representation] = []
    for quiver in targets:
        corpus.extend(_seed_reps(quiver, p))
    corpus = corpus[:size]

    index = 0
    while len(corpus) < size:
        quiver = targets[index % len(targets)]
        index += 1
        dims = [int(d) for d in rng.integers(0, MAX_VERTEX_DIM + 1, size=quiver.n)]
        if not 0 < sum(dims) <= max_total_dim:
            continue
        corpus.append(random_rep(quiver, dims, seed=int(rng.integers(0, 2**31 - 1)), p=p, cap=max_total_dim))

    logger.info(f"Built corpus of {len(corpus)} representations (seed {base_seed})")
    return corpus


def standard_charge_family(n: int) -> List[StabilityCondition]:
    """Gaussian-rational stability conditions on an n-vertex quiver"""
    family = [
        StabilityCondition.standard(n),
        StabilityCondition.from_pairs([(0, 1) if k % 2 == 0 else (-1, 1) for k in range(n)], name="alternating"),
        StabilityCondition.from_pairs([(-k, 1) for k in range(n)], name="tilting-left"),
        StabilityCondition.from_pairs([(n - 1 - k, 1 + k) for k in range(n)], name="fanned"),
        StabilityCondition.from_pairs([(1, 2) if k == 0 else (-2, 1) for k in range(n)], name="sink-heavy"),
        StabilityCondition.from_pairs([(0, 1)] * (n - 1) + [(-1, 0)], name="last-on-real-axis"),
    ]
    return family
