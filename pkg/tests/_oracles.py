"""Independent brute-force oracles used to pin expected values in tests.

These work on frozensets and deliberately share no code with the library's
search, counting, or table implementations.
"""

from itertools import combinations, permutations


def windows(pi, k, ell):
    n = len(pi)
    step = k - ell
    return [frozenset(pi[(i * step + q) % n] for q in range(k))
            for i in range(n // step)]


def edge_sets(H):
    return {frozenset(e) for e in H.edges}


def brute_has_hamilton(H, ell):
    edges = edge_sets(H)
    for pi in permutations(range(1, H.n + 1)):
        if all(w in edges for w in windows(pi, H.k, ell)):
            return True
    return False


def brute_count_hamperms(H, ell):
    edges = edge_sets(H)
    return sum(all(w in edges for w in windows(pi, H.k, ell))
               for pi in permutations(range(1, H.n + 1)))


def brute_profile(pi_ref, pi_other, k, ell):
    """Shared-edge count and run count, grouped in the reference cycle's order."""
    ref = windows(pi_ref, k, ell)
    other = set(windows(pi_other, k, ell))
    shared = [w in other for w in ref]
    b = sum(shared)
    m = len(ref)
    if b == 0:
        return (0, 0)
    if b == m:
        return (m, 1)
    a = sum(1 for i in range(m) if shared[i] and not shared[i - 1])
    return (b, a)


def brute_has_tight_cycle(H, r):
    """Scan every r-subset and every circular ordering of it."""
    edges = edge_sets(H)
    k = H.k
    for subset in combinations(range(1, H.n + 1), r):
        first, rest = subset[0], subset[1:]
        for tail in permutations(rest):
            cyc = (first,) + tail
            if all(frozenset(cyc[(i + q) % r] for q in range(k)) in edges
                   for i in range(r)):
                return True
    return False
