"""Seeded sampling of the binomial random k-uniform hypergraph H(n, p, k).

Every k-subset of {1..n} is included independently with probability p.  Two
samplers with identical distributions are provided:

* ``sample`` draws one Bernoulli decision per possible edge and is meant for
  moderate C(n, k);
* ``sample_sparse`` draws the edge count M ~ Binomial(C(n,k), p) first and
  then M distinct colex ranks, which is fast when p * C(n,k) is small.

Randomness contract (required for cross-platform reproducibility): the bit
generator is numpy's Philox4x64-10, a counter-based generator keyed directly
with the 64-bit ``seed`` (no entropy mixing).  ``sample`` consumes exactly one
uniform double per k-subset, in colex rank order.  ``sample_sparse`` consumes
one binomial variate, then raw 64-bit integers reduced modulo C(n,k) with the
standard bias-rejection threshold until M distinct ranks are accepted;
candidates already chosen are redrawn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import islice

import numpy as np

from .core import (
    CapacityError,
    HypergraphInstance,
    RangeError,
    colex_unrank,
    iter_edges_colex,
)

_CHUNK = 1 << 17


@dataclass(frozen=True)
class ModelSpec:
    """Parameters of one H(n, p, k) draw, including the 64-bit seed."""

    n: int
    k: int
    p: float
    seed: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise RangeError(f"n must be positive, got {self.n}")
        if not 1 <= self.k <= self.n:
            raise RangeError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise RangeError(f"p must lie in [0, 1], got {self.p}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 1 << 64):
            raise RangeError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))


def sample(spec: ModelSpec) -> HypergraphInstance:
    """Draw H(n, p, k) edge by edge in colex order.

    Identical specs (seed included) yield identical hypergraphs on every
    platform.  Time is O(C(n,k)); memory is proportional to the number of
    edges actually drawn.
    """
    rng = _rng(spec.seed)
    total = math.comb(spec.n, spec.k)
    edges: list[tuple[int, ...]] = []
    it = iter_edges_colex(spec.n, spec.k)
    pos = 0
    consumed = 0
    while consumed < total:
        count = min(_CHUNK, total - consumed)
        block = rng.random(count)
        for off in np.flatnonzero(block < spec.p):
            r = consumed + int(off)
            edge = next(islice(it, r - pos, r - pos + 1))
            pos = r + 1
            edges.append(edge)
        consumed += count
    return HypergraphInstance(spec.n, spec.k, frozenset(edges))


def sample_sparse(spec: ModelSpec) -> HypergraphInstance:
    """Draw H(n, p, k) via Binomial edge count plus distinct uniform ranks.

    The distribution is identical to ``sample``.  C(n, k) must fit a signed
    64-bit integer (the binomial sampler's limit); larger universes are
    rejected with CapacityError.
    """
    total = math.comb(spec.n, spec.k)
    if total >= 1 << 63:
        raise CapacityError(f"C({spec.n},{spec.k}) = {total} exceeds 64-bit capacity")
    rng = _rng(spec.seed)
    m_edges = int(rng.binomial(total, spec.p))
    threshold = ((1 << 64) // total) * total
    chosen: set[int] = set()
    while len(chosen) < m_edges:
        u = int(rng.integers(0, 1 << 64, dtype=np.uint64))
        if u >= threshold:
            continue
        r = u % total
        if r not in chosen:
            chosen.add(r)
    edges = frozenset(colex_unrank(r, spec.k, spec.n) for r in chosen)
    return HypergraphInstance(spec.n, spec.k, edges)
