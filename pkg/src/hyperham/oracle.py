"""Moment formulas in log space, exact intersection-profile tables, and bounds.

The first moment of the hamperm count is n! p^m with m = n/(k-ell); the count
of tight cycles of length r has mean C(n,r) (r-1)!/2 p^r.  Both are computed
via log-gamma so that n up to 1e9 stays exact to ~1e-10 relative error and
the sign checks at large n do not overflow.

``brute_force_nba`` enumerates all n! permutations against a fixed reference
cycle and tabulates the intersection profile (b, a); the table does not
depend on the reference, and profile cells are dominated by two closed-form
bounds (``bound_nba_basic`` for every overlap, ``bound_nba_refined`` for the
tight case).  ``exact_second_moment`` turns the table into
E(X^2)/E(X)^2 - 1, the quantity that bounds Pr(X = 0) by Chebyshev.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .core import (
    CapacityError,
    CycleParams,
    ParamsMismatchError,
    RangeError,
    _check_permutation,
    validate_params,
)

LN2 = math.log(2.0)


def _logsumexp(vals: Sequence[float]) -> float:
    mx = max(vals)
    if math.isinf(mx):
        return mx
    return mx + math.log(sum(math.exp(v - mx) for v in vals))


# ---------------------------------------------------------------------------
# first moments


def log_expected_hamperms(n: int, k: int, ell: int, p: float) -> float:
    """ln of the expected hamperm count n! p^(n/(k-ell)) in H(n, p, k).

    p = 0 returns -inf explicitly.
    """
    params = validate_params(n, k, ell)
    if p == 0:
        return float("-inf")
    if not 0.0 < p <= 1.0:
        raise RangeError(f"p must lie in (0, 1], got {p}")
    return math.lgamma(n + 1) + params.m * math.log(p)


def log_expected_tight_cycles(n: int, k: int, r: int, p: float) -> float:
    """ln of the expected number of tight cycles of length r: C(n,r) (r-1)!/2 p^r."""
    if k < 2:
        raise RangeError(f"k must be at least 2, got {k}")
    if not k + 1 <= r <= n:
        raise RangeError(f"cycle length r = {r} outside [{k + 1}, {n}]")
    if p == 0:
        return float("-inf")
    if not 0.0 < p <= 1.0:
        raise RangeError(f"p must lie in (0, 1], got {p}")
    return (math.lgamma(n + 1) - math.lgamma(r + 1) - math.lgamma(n - r + 1)
            + math.lgamma(r) - LN2 + r * math.log(p))


# ---------------------------------------------------------------------------
# exact profile tables


@dataclass(frozen=True)
class NbaTable:
    """Exact counts of permutations by intersection profile against a reference.

    ``counts[(b, a)]`` is the number of permutations whose induced cycle
    shares exactly b edges with the reference cycle, forming a maximal runs;
    ``zero_count`` collects the disjoint ones.  Together they partition all
    n! permutations (the reference itself sits in the (m, 1) cell).
    """

    params: CycleParams
    counts: dict[tuple[int, int], int]
    zero_count: int

    def __post_init__(self) -> None:
        total = self.zero_count + sum(self.counts.values())
        if total != math.factorial(self.params.n):
            raise RangeError(
                f"profile counts sum to {total}, expected {self.params.n}!")
        for (b, a), c in self.counts.items():
            if c <= 0 or not 1 <= a <= b <= self.params.m:
                raise RangeError(f"invalid table cell (b={b}, a={a}, count={c})")


def brute_force_nba(params: CycleParams,
                    reference: Sequence[int] | None = None, *,
                    max_n: int = 9) -> NbaTable:
    """Tabulate intersection profiles over all n! permutations.

    ``reference`` defaults to the identity permutation; the resulting table
    is the same for any reference hamperm.
    """
    if params.n > max_n:
        raise CapacityError(f"n = {params.n} exceeds the brute-force cap {max_n}")
    n, k, m = params.n, params.k, params.m
    step = k - params.ell
    if reference is None:
        reference = tuple(range(1, n + 1))
    _check_permutation(reference, n)
    bit = [0] + [1 << i for i in range(n)]
    wins = [tuple((i * step + q) % n for q in range(k)) for i in range(m)]
    ref_masks = []
    for win in wins:
        wm = 0
        for pos in win:
            wm |= bit[reference[pos]]
        ref_masks.append(wm)
    counts: dict[tuple[int, int], int] = {}
    zero = 0
    for pi in permutations(range(1, n + 1)):
        pset = set()
        for win in wins:
            wm = 0
            for pos in win:
                wm |= bit[pi[pos]]
            pset.add(wm)
        shared = [rm in pset for rm in ref_masks]
        b = sum(shared)
        if b == 0:
            zero += 1
            continue
        if b == m:
            a = 1
        else:
            a = sum(1 for i in range(m) if shared[i] and not shared[i - 1])
        key = (b, a)
        counts[key] = counts.get(key, 0) + 1
    return NbaTable(params, counts, zero)


# ---------------------------------------------------------------------------
# closed-form bounds on N(b, a)


def bound_nba_basic(params: CycleParams, b: int, a: int) -> float:
    """ln of n^(2a) (2 k! k)^b (n - b(k-ell) - a*ell)!.

    The three factors bound the choices of a paths totalling b edges on the
    reference cycle, their vertex orderings, and the completions to a full
    permutation.  Cells whose factorial argument is negative admit no such
    decomposition bound; they return +inf (vacuously dominating).
    """
    if not 1 <= a <= b <= params.m:
        raise RangeError(f"need 1 <= a <= b <= m, got a={a}, b={b}, m={params.m}")
    n, k, ell = params.n, params.k, params.ell
    arg = n - b * (k - ell) - a * ell
    if arg < 0:
        return math.inf
    return (2 * a * math.log(n)
            + b * math.log(2 * math.factorial(k) * k)
            + math.lgamma(arg + 1))


def bound_nba_refined(n: int, k: int, b: int, a: int) -> float:
    """Tight-case (ell = k - 1) refinement of the profile-count bound.

    ln of n^(2a) C(b-1, a-1) sum_t 2^(t+a) (n - b - a(k-1) - t)! (k!)^(a+t),
    the sum truncated where the factorial argument goes negative (all later
    terms vanish by domain).  Accumulated in log space.
    """
    if k < 2:
        raise RangeError(f"k must be at least 2, got {k}")
    if not 1 <= a <= b <= n:
        raise RangeError(f"need 1 <= a <= b <= n, got a={a}, b={b}, n={n}")
    t_max = n - b - a * (k - 1)
    if t_max < 0:
        return math.inf
    lkf = math.log(math.factorial(k))
    terms = [(t + a) * LN2 + math.lgamma(t_max - t + 1) + (a + t) * lkf
             for t in range(t_max + 1)]
    return (2 * a * math.log(n)
            + math.log(math.comb(b - 1, a - 1))
            + _logsumexp(terms))


# ---------------------------------------------------------------------------
# exact second moment and the Chebyshev ratio


@dataclass(frozen=True)
class MomentReport:
    """Log first and second moments of the hamperm count, and E(X^2)/E(X)^2 - 1."""

    log_EX: float
    log_EX2: float
    ratio_minus_one: float


def exact_second_moment(params: CycleParams, p: float, *,
                        table: NbaTable | None = None,
                        max_n: int = 9) -> MomentReport:
    """Exact E(X^2) from the brute-force profile table.

    E(X^2) = n! * [N(0,0) p^(2m) + sum_{b,a} N(b,a) p^(2m-b)], which reduces
    to the numerically benign form
        E(X^2)/E(X)^2 - 1 = sum_{b,a} N(b,a) (p^-b - 1) / n!
    whose terms are individually nonnegative for p <= 1, so the Chebyshev
    ratio is exact at p = 1 and never spuriously negative.
    """
    if not 0.0 < p <= 1.0:
        raise RangeError(f"p must lie in (0, 1], got {p}")
    if table is None:
        table = brute_force_nba(params, max_n=max_n)
    elif table.params != params:
        raise ParamsMismatchError("table was built for different parameters")
    n_fact = math.factorial(params.n)
    lp = math.log(p)
    ratio_minus_one = sum(c * math.expm1(-b * lp)
                          for (b, _a), c in table.counts.items()) / n_fact
    log_ex = log_expected_hamperms(params.n, params.k, params.ell, p)
    log_ex2 = 2.0 * log_ex + math.log1p(ratio_minus_one)
    return MomentReport(log_EX=log_ex, log_EX2=log_ex2,
                        ratio_minus_one=ratio_minus_one)


def threshold_constant(k: int) -> float:
    """The sufficient density constant 4 k! k e^k for the c/n^(k-ell) regime."""
    if k < 3:
        raise RangeError(f"k must be at least 3, got {k}")
    return 4.0 * math.factorial(k) * k * math.exp(k)


def log_end_ratio(params: CycleParams, p: float, b: int, a: int) -> float:
    """ln of bound_nba_basic * p^(m-b) / E(X): the per-cell share of the
    second-moment sum, derived from existing outputs."""
    if not 0.0 < p <= 1.0:
        raise RangeError(f"p must lie in (0, 1], got {p}")
    return (bound_nba_basic(params, b, a)
            + (params.m - b) * math.log(p)
            - log_expected_hamperms(params.n, params.k, params.ell, p))


# ---------------------------------------------------------------------------
# CSV report


NBA_REPORT_HEADER = "b,a,count,log_bound_basic,log_bound_refined,slack"


def nba_report_rows(table: NbaTable) -> list[tuple]:
    """Rows (b, a, count, log_bound_basic, log_bound_refined, slack) sorted by (b, a).

    slack = log_bound_basic - ln(count); the refined column is empty for
    non-tight parameters.
    """
    tight = table.params.ell == table.params.k - 1
    rows = []
    for (b, a) in sorted(table.counts):
        c = table.counts[(b, a)]
        basic = bound_nba_basic(table.params, b, a)
        refined = (bound_nba_refined(table.params.n, table.params.k, b, a)
                   if tight else None)
        rows.append((b, a, c, basic, refined, basic - math.log(c)))
    return rows
