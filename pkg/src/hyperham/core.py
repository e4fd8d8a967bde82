"""Domain types and primitives for overlap Hamilton cycles in k-uniform hypergraphs.

An ell-overlapping Hamilton cycle on n vertices is a cyclic vertex order whose
consecutive length-k windows, offset by k - ell, are all edges of the
hypergraph; consecutive windows share exactly ell vertices, so the cycle has
m = n / (k - ell) edges.  The tight case is ell = k - 1, the loose case
ell = 1.

Conventions used throughout the package:

* vertex labels are 1-based integers in {1, ..., n};
* an edge is a tuple of k strictly increasing labels (the canonical form);
* a permutation is a tuple containing each of 1..n exactly once, read as the
  cyclic vertex order; position indices wrap modulo n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, ...]


class HyperHamError(Exception):
    """Base class for domain errors raised by this package."""


class RangeError(HyperHamError):
    """A parameter lies outside its legal range."""


class DivisibilityError(HyperHamError):
    """(k - ell) does not divide n, so no overlap-ell Hamilton cycle can exist."""


class TooSmallError(HyperHamError):
    """n < 2k - ell: consecutive windows would overlap in more than ell vertices."""


class ParamsMismatchError(HyperHamError):
    """Objects built for different cycle parameters were combined."""


class CapacityError(HyperHamError):
    """The instance exceeds a configured exhaustive-search capacity."""


# ---------------------------------------------------------------------------
# edges and hypergraphs


def canonicalize_edge(vertices: Sequence[int], n: int) -> Edge:
    """Sort ``vertices`` into canonical ascending form.

    Raises RangeError if a label is outside 1..n or the labels are not
    pairwise distinct.
    """
    edge = tuple(sorted(vertices))
    for v in edge:
        if not (isinstance(v, int) and 1 <= v <= n):
            raise RangeError(f"vertex label {v!r} outside 1..{n}")
    for x, y in zip(edge, edge[1:]):
        if x == y:
            raise RangeError(f"duplicate vertex label {x} in edge {tuple(vertices)}")
    return edge


def _check_canonical_edge(edge: Edge, n: int, k: int) -> None:
    if len(edge) != k:
        raise RangeError(f"edge {edge} has {len(edge)} vertices, expected {k}")
    prev = 0
    for v in edge:
        if not (isinstance(v, int) and 1 <= v <= n):
            raise RangeError(f"vertex label {v!r} outside 1..{n}")
        if v <= prev:
            raise RangeError(f"edge {edge} is not strictly increasing")
        prev = v


@dataclass(frozen=True)
class HypergraphInstance:
    """A k-uniform hypergraph on vertex set {1, ..., n}.

    ``edges`` holds canonical ascending k-tuples; the frozenset guarantees
    there are no duplicates.  Instances are immutable and safe to share
    across threads.
    """

    n: int
    k: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise RangeError(f"n must be positive, got {self.n}")
        if self.k < 2:
            raise RangeError(f"k must be at least 2, got {self.k}")
        for e in self.edges:
            _check_canonical_edge(e, self.n, self.k)


def hypergraph_from_edges(n: int, k: int,
                          edges: Iterable[Sequence[int]]) -> HypergraphInstance:
    """Build a hypergraph, canonicalizing each edge.  Duplicates are an error."""
    canon: set[Edge] = set()
    for raw in edges:
        e = canonicalize_edge(raw, n)
        if e in canon:
            raise RangeError(f"duplicate edge {e}")
        canon.add(e)
    return HypergraphInstance(n, k, frozenset(canon))


def complete_hypergraph(n: int, k: int) -> HypergraphInstance:
    """The complete k-uniform hypergraph on n vertices (all C(n,k) edges)."""
    from itertools import combinations

    return HypergraphInstance(n, k, frozenset(combinations(range(1, n + 1), k)))


# ---------------------------------------------------------------------------
# cycle parameters


@dataclass(frozen=True)
class CycleParams:
    """Validated (n, k, ell) triple with the derived edge count m = n/(k-ell)."""

    n: int
    k: int
    ell: int
    m: int


def validate_params(n: int, k: int, ell: int) -> CycleParams:
    """Check that (n, k, ell) admits overlap-ell Hamilton cycles at all.

    Requires k >= 2, 1 <= ell < k, (k - ell) | n, and n >= 2k - ell.  The
    last condition makes consecutive windows overlap in exactly ell
    positions; below it the wraparound forces a larger overlap, so no
    overlap-ell Hamilton cycle exists by definition and we reject the
    parameters instead of returning vacuous answers.
    """
    for name, v in (("n", n), ("k", k), ("ell", ell)):
        if not isinstance(v, int):
            raise RangeError(f"{name} must be an integer, got {v!r}")
    if k < 2:
        raise RangeError(f"k must be at least 2, got {k}")
    if not 1 <= ell < k:
        raise RangeError(f"ell must satisfy 1 <= ell < k, got ell={ell}, k={k}")
    step = k - ell
    if n % step != 0:
        raise DivisibilityError(f"(k - ell) = {step} does not divide n = {n}")
    if n < 2 * k - ell:
        raise TooSmallError(f"n = {n} is below the minimum 2k - ell = {2 * k - ell}")
    m = n // step
    if m < 3:
        # implied by the checks above for every 1 <= ell < k; kept as a guard
        raise TooSmallError(f"cycle would have only m = {m} edges; need at least 3")
    return CycleParams(n=n, k=k, ell=ell, m=m)


# ---------------------------------------------------------------------------
# induced cycles of a permutation


def _check_permutation(pi: Sequence[int], n: int) -> None:
    if len(pi) != n or sorted(pi) != list(range(1, n + 1)):
        raise RangeError(f"not a permutation of 1..{n}: {tuple(pi)!r}")


def hamperm_edges(pi: Sequence[int], params: CycleParams) -> list[Edge]:
    """The m window edges induced by the cyclic order ``pi``.

    Window i (0-based) covers positions i*(k-ell) .. i*(k-ell)+k-1 modulo n.
    """
    _check_permutation(pi, params.n)
    n, k = params.n, params.k
    step = k - params.ell
    out: list[Edge] = []
    for i in range(params.m):
        start = i * step
        out.append(tuple(sorted(pi[(start + q) % n] for q in range(k))))
    return out


@dataclass(frozen=True)
class Hamperm:
    """A permutation of 1..n together with its induced window edges."""

    pi: tuple[int, ...]
    params: CycleParams
    induced_edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        expected = hamperm_edges(self.pi, self.params)
        if list(self.induced_edges) != expected:
            raise RangeError("induced_edges do not match the permutation")
        # consecutive windows (cyclically) must share exactly ell vertices
        m = self.params.m
        for i in range(m):
            a = set(self.induced_edges[i])
            b = set(self.induced_edges[(i + 1) % m])
            if len(a & b) != self.params.ell:
                raise RangeError("consecutive windows do not overlap in ell vertices")


def make_hamperm(pi: Sequence[int], params: CycleParams) -> Hamperm:
    return Hamperm(tuple(pi), params, tuple(hamperm_edges(pi, params)))


def is_hamperm(H: HypergraphInstance, pi: Sequence[int], ell: int) -> bool:
    """True iff every window edge induced by ``pi`` is present in ``H``."""
    params = validate_params(H.n, H.k, ell)
    _check_permutation(pi, params.n)
    n, k = params.n, params.k
    step = k - ell
    for i in range(params.m):
        start = i * step
        window = tuple(sorted(pi[(start + q) % n] for q in range(k)))
        if window not in H.edges:
            return False
    return True


# ---------------------------------------------------------------------------
# intersection profiles


@dataclass(frozen=True)
class IntersectionProfile:
    """Shared-edge count b and number a of maximal shared runs for two cycles."""

    b: int
    a: int

    def __post_init__(self) -> None:
        if self.b < 0 or self.a < 0 or self.a > self.b:
            raise RangeError(f"invalid profile (b={self.b}, a={self.a})")
        if (self.a == 0) != (self.b == 0):
            raise RangeError("a must be zero exactly when b is zero")


def intersection_profile(pi1: Hamperm, pi2: Hamperm) -> IntersectionProfile:
    """Profile of ``pi2``'s cycle against the reference cycle of ``pi1``.

    b counts the edges common to both induced cycles.  a counts the maximal
    runs of shared edges at cyclically adjacent positions of the reference
    cycle; adjacent windows always share ell >= 1 vertices, so positional
    adjacency is the run criterion.  A full intersection (b = m) counts as a
    single degenerate run.
    """
    if pi1.params != pi2.params:
        raise ParamsMismatchError("hamperms built for different cycle parameters")
    m = pi1.params.m
    other = set(pi2.induced_edges)
    shared = [e in other for e in pi1.induced_edges]
    b = sum(shared)
    if b == 0:
        return IntersectionProfile(0, 0)
    if b == m:
        return IntersectionProfile(m, 1)
    a = sum(1 for i in range(m) if shared[i] and not shared[i - 1])
    return IntersectionProfile(b, a)


def canonical_cycle_key(h: Hamperm) -> tuple[int, ...]:
    """Opaque comparable key; equal keys iff equal induced edge sets.

    The key is the sorted tuple of colex ranks of the induced edges, so two
    hamperms of the same cycle (rotations, reflections, within-block
    reorderings) collide and anything else does not.
    """
    return tuple(sorted(colex_rank(e) for e in h.induced_edges))


# ---------------------------------------------------------------------------
# colexicographic edge ranking


def colex_rank(edge: Edge) -> int:
    """0-based colex rank of a canonical edge among all k-subsets."""
    r = 0
    for i, v in enumerate(edge, start=1):
        r += math.comb(v - 1, i)
    return r


def colex_unrank(rank: int, k: int, n: int) -> Edge:
    """Inverse of ``colex_rank`` over k-subsets of {1..n}."""
    if not 0 <= rank < math.comb(n, k):
        raise RangeError(f"rank {rank} outside [0, C({n},{k}))")
    out: list[int] = []
    r = rank
    hi = n - 1
    for i in range(k, 0, -1):
        lo = i - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if math.comb(mid, i) <= r:
                lo = mid
            else:
                hi = mid - 1
        r -= math.comb(lo, i)
        out.append(lo + 1)
        hi = lo - 1
    out.reverse()
    return tuple(out)


def iter_edges_colex(n: int, k: int) -> Iterator[Edge]:
    """All k-subsets of {1..n} in colex-rank order."""

    def rec(top: int, j: int) -> Iterator[Edge]:
        if j == 0:
            yield ()
            return
        for t in range(j, top + 1):
            for rest in rec(t - 1, j - 1):
                yield rest + (t,)

    return rec(n, k)


def all_edges_colex(n: int, k: int) -> list[Edge]:
    return list(iter_edges_colex(n, k))


# ---------------------------------------------------------------------------
# text serialization


def hypergraph_to_text(H: HypergraphInstance) -> str:
    """Serialize: first line "n k", then one edge per line, ascending labels.

    Edges are written in sorted (lexicographic) order so output is
    deterministic for a given edge set.
    """
    lines = [f"{H.n} {H.k}"]
    for e in sorted(H.edges):
        lines.append(" ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"


def hypergraph_from_text(text: str) -> HypergraphInstance:
    """Parse the serialization produced by ``hypergraph_to_text``.

    Blank lines and lines starting with '#' are ignored.
    """
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [r for r in rows if r and not r.startswith("#")]
    if not rows:
        raise RangeError("empty hypergraph file")
    head = rows[0].split()
    if len(head) != 2:
        raise RangeError(f"header must be 'n k', got {rows[0]!r}")
    n, k = int(head[0]), int(head[1])
    edges = [tuple(int(tok) for tok in r.split()) for r in rows[1:]]
    return hypergraph_from_edges(n, k, edges)
