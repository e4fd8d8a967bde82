"""Exact decision, witness extraction, and counting for overlap Hamilton cycles.

Two exact procedures are provided.  The tight case (ell = k - 1) runs a
depth-first search over states (visited-set bitmask, ordered suffix of the
last k - 1 vertices) with memoized dead states, which is the Held-Karp
generalization explored lazily; vertex 1 is pinned to position 0 to break
rotational symmetry.  General ell runs block backtracking: the permutation is
extended in blocks of k - ell positions, each completed window is checked
against the edge set, and the first block must contain vertex 1.

Counting operations enumerate permutations exhaustively and are capped at
small n; decisions are capped by an estimated state-space size.  Exceeding a
cap raises CapacityError instead of thrashing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .core import (
    CapacityError,
    Edge,
    Hamperm,
    HypergraphInstance,
    RangeError,
    make_hamperm,
    validate_params,
)

# state-space budget: bitmasks times ordered (k-1)-suffixes at k=3, n=24
DEFAULT_MAX_STATES = (1 << 24) * 24 * 23


@dataclass(frozen=True)
class SearchResult:
    found: bool
    witness: Hamperm | None
    nodes_explored: int

    def __post_init__(self) -> None:
        if self.found != (self.witness is not None):
            raise RangeError("witness must be present exactly when found")


def _state_space(n: int, k: int) -> int:
    s = 1 << n
    for i in range(k - 1):
        s *= n - i
    return s


def _covers_all_vertices(H: HypergraphInstance) -> bool:
    seen: set[int] = set()
    for e in H.edges:
        seen.update(e)
    return len(seen) == H.n


def _tight_engine(edges: list[Edge], k: int, anchor: int, r: int,
                  nodes: list[int]) -> list[int] | None:
    """Find a cyclic sequence of r vertices whose r length-k windows are all edges.

    ``anchor`` is fixed at position 0.  Only vertices appearing in ``edges``
    can be used; the caller restricts ``edges`` as needed.  Returns the vertex
    sequence or None.  ``nodes[0]`` accumulates the number of search states
    expanded.
    """
    masks: set[int] = set()
    for e in edges:
        mk = 0
        for v in e:
            mk |= 1 << (v - 1)
        masks.add(mk)

    # (k-1)-subset mask -> sorted completions into an edge
    completions: dict[int, list[int]] = {}
    for mk in masks:
        rem = mk
        while rem:
            b = rem & -rem
            rem ^= b
            completions.setdefault(mk ^ b, []).append(b.bit_length())
    for key in completions:
        completions[key].sort()

    # first windows: orderings of an edge through the anchor, grouped by the
    # ordered first k-1 vertices (the closure windows depend on that prefix)
    seeds_by_prefix: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for e in sorted(edges):
        if anchor not in e:
            continue
        others = [v for v in e if v != anchor]
        for ordering in permutations(others):
            seq = (anchor, *ordering)
            seeds_by_prefix.setdefault(seq[: k - 1], []).append(seq)

    for prefix, seqs in sorted(seeds_by_prefix.items()):
        pref_masks: list[int] = []
        acc = 0
        for v in prefix:
            acc |= 1 << (v - 1)
            pref_masks.append(acc)
        dead: set[tuple[int, tuple[int, ...]]] = set()
        path: list[int] = []

        def dfs(mask: int, suffix: tuple[int, ...], smask: int) -> bool:
            nodes[0] += 1
            if len(path) == r:
                # wraparound windows j = 0..k-2: last (k-1-j) plus first (j+1)
                for j in range(k - 1):
                    wm = pref_masks[j]
                    for v in suffix[j:]:
                        wm |= 1 << (v - 1)
                    if wm not in masks:
                        return False
                return True
            key = (mask, suffix)
            if key in dead:
                return False
            drop = 1 << (suffix[0] - 1)
            for v in completions.get(smask, ()):
                b = 1 << (v - 1)
                if mask & b:
                    continue
                path.append(v)
                if dfs(mask | b, suffix[1:] + (v,), (smask ^ drop) | b):
                    return True
                path.pop()
            dead.add(key)
            return False

        for seq in seqs:
            path.clear()
            path.extend(seq)
            mask0 = 0
            for v in seq:
                mask0 |= 1 << (v - 1)
            suffix0 = seq[1:]
            smask0 = mask0 ^ (1 << (anchor - 1))
            if dfs(mask0, suffix0, smask0):
                return list(path)
    return None


def has_tight_hamilton(H: HypergraphInstance, *,
                       max_states: int = DEFAULT_MAX_STATES) -> SearchResult:
    """Decide whether H contains a tight Hamilton cycle and return a witness."""
    params = validate_params(H.n, H.k, H.k - 1)
    if _state_space(H.n, H.k) > max_states:
        raise CapacityError(
            f"state space for n={H.n}, k={H.k} exceeds the budget {max_states}")
    if not _covers_all_vertices(H):
        return SearchResult(False, None, 0)
    nodes = [0]
    path = _tight_engine(sorted(H.edges), H.k, 1, H.n, nodes)
    if path is None:
        return SearchResult(False, None, nodes[0])
    return SearchResult(True, make_hamperm(path, params), nodes[0])


def has_overlap_hamilton(H: HypergraphInstance, ell: int) -> SearchResult:
    """Decide whether H contains an overlap-ell Hamilton cycle by block backtracking.

    Blocks of k - ell positions are filled left to right with ordered tuples
    of unused vertices, tried in lexicographic order (smallest unused vertex
    first, which keeps node counts stable); every window is checked as soon
    as its last position is filled, and the wraparound windows at the end.
    """
    params = validate_params(H.n, H.k, ell)
    n, k, m = params.n, params.k, params.m
    step = k - ell
    if not _covers_all_vertices(H):
        return SearchResult(False, None, 0)
    masks: set[int] = set()
    for e in H.edges:
        mk = 0
        for v in e:
            mk |= 1 << (v - 1)
        masks.add(mk)
    bit = [0] * (n + 1)
    for v in range(1, n + 1):
        bit[v] = 1 << (v - 1)
    lead = -(-k // step)  # blocks spanned by one window
    win_pos = [tuple((i * step + q) % n for q in range(k)) for i in range(m)]
    perm = [0] * n
    nodes = [0]

    def fill(j: int, used: int) -> bool:
        nodes[0] += 1
        if j == m:
            for i in range(m - lead + 1, m):
                wm = 0
                for pos in win_pos[i]:
                    wm |= bit[perm[pos]]
                if wm not in masks:
                    return False
            return True
        base = j * step
        unused = [v for v in range(1, n + 1) if not used & bit[v]]
        want = j - lead + 1  # window completed by this block, if any
        for cand in permutations(unused, step):
            if j == 0 and 1 not in cand:
                continue
            u2 = used
            for q in range(step):
                perm[base + q] = cand[q]
                u2 |= bit[cand[q]]
            if want >= 0:
                wm = 0
                for pos in win_pos[want]:
                    wm |= bit[perm[pos]]
                if wm not in masks:
                    continue
            if fill(j + 1, u2):
                return True
        return False

    if fill(0, 0):
        return SearchResult(True, make_hamperm(perm, params), nodes[0])
    return SearchResult(False, None, nodes[0])


def find_hamilton(H: HypergraphInstance, ell: int, *,
                  max_states: int = DEFAULT_MAX_STATES) -> SearchResult:
    """Dispatch to the tight-cycle search for ell = k - 1, block backtracking otherwise."""
    if ell == H.k - 1:
        return has_tight_hamilton(H, max_states=max_states)
    return has_overlap_hamilton(H, ell)


# ---------------------------------------------------------------------------
# exhaustive counting


def _window_positions(n: int, k: int, ell: int, m: int) -> list[tuple[int, ...]]:
    step = k - ell
    return [tuple((i * step + q) % n for q in range(k)) for i in range(m)]


def count_hamperms(H: HypergraphInstance, ell: int, *, max_n: int = 10) -> int:
    """Exact number of permutations whose induced windows all lie in H."""
    params = validate_params(H.n, H.k, ell)
    if H.n > max_n:
        raise CapacityError(f"n = {H.n} exceeds the exhaustive-count cap {max_n}")
    n = H.n
    masks = frozenset(sum(1 << (v - 1) for v in e) for e in H.edges)
    bit = [0] + [1 << i for i in range(n)]
    wins = _window_positions(n, H.k, ell, params.m)
    count = 0
    for pi in permutations(range(1, n + 1)):
        for win in wins:
            wm = 0
            for pos in win:
                wm |= bit[pi[pos]]
            if wm not in masks:
                break
        else:
            count += 1
    return count


def count_distinct_cycles(H: HypergraphInstance, ell: int, *, max_n: int = 10) -> int:
    """Number of distinct induced edge sets among the hamperms of H."""
    params = validate_params(H.n, H.k, ell)
    if H.n > max_n:
        raise CapacityError(f"n = {H.n} exceeds the exhaustive-count cap {max_n}")
    n = H.n
    masks = frozenset(sum(1 << (v - 1) for v in e) for e in H.edges)
    bit = [0] + [1 << i for i in range(n)]
    wins = _window_positions(n, H.k, ell, params.m)
    keys: set[tuple[int, ...]] = set()
    for pi in permutations(range(1, n + 1)):
        wmasks: list[int] = []
        for win in wins:
            wm = 0
            for pos in win:
                wm |= bit[pi[pos]]
            if wm not in masks:
                break
            wmasks.append(wm)
        else:
            keys.add(tuple(sorted(wmasks)))
    return len(keys)


# ---------------------------------------------------------------------------
# tight cycles of prescribed length and pancyclicity


def has_tight_cycle_of_length(H: HypergraphInstance, r: int, *,
                              max_states: int = DEFAULT_MAX_STATES) -> bool:
    """True iff some r vertices carry a tight cycle (r cyclic windows of size k).

    r = k + 1 reduces to scanning for a (k+1)-set whose k+1 sub-edges are all
    present; larger r anchors the search at the smallest cycle vertex and
    reuses the tight-cycle engine on the label-restricted edge set.
    """
    n, k = H.n, H.k
    if not k + 1 <= r <= n:
        raise RangeError(f"cycle length r = {r} outside [{k + 1}, {n}]")
    if _state_space(n, k) > max_states:
        raise CapacityError(
            f"state space for n={n}, k={k} exceeds the budget {max_states}")
    if r == k + 1:
        for S in combinations(range(1, n + 1), k + 1):
            if all(S[:i] + S[i + 1:] in H.edges for i in range(k + 1)):
                return True
        return False
    all_edges = sorted(H.edges)
    for anchor in range(1, n - r + 2):
        edges = [e for e in all_edges if e[0] >= anchor]
        if len(edges) < r:
            continue
        nodes = [0]
        if _tight_engine(edges, k, anchor, r, nodes) is not None:
            return True
    return False


def is_pancyclic(H: HypergraphInstance, *,
                 max_states: int = DEFAULT_MAX_STATES) -> tuple[bool, int | None]:
    """Check for tight cycles of every length r in [k+1, n].

    Returns (True, None) when all lengths are present, otherwise
    (False, smallest missing r).
    """
    if H.n < H.k + 1:
        raise RangeError(f"need n >= k + 1, got n={H.n}, k={H.k}")
    for r in range(H.k + 1, H.n + 1):
        if not has_tight_cycle_of_length(H, r, max_states=max_states):
            return (False, r)
    return (True, None)
