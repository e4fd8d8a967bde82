"""Monte Carlo threshold experiments over H(n, p, k).

``sweep`` estimates the probability of overlap-ell Hamiltonicity along a grid
of scale factors c with p = c (log n)^b / n^e, locates where the estimated
curve crosses 1/2, and reports Wilson 95% intervals.  ``pancyclicity_sweep``
does the same for the all-cycle-lengths property, recording the first missing
length among failures.

Reproducibility contract: the per-trial stream seed is
``mix_seed(base_seed, grid_index, trial_index)``, a chain of splitmix64
steps, so results are independent of execution order and worker count.  The
default sampler is coupled: one uniform per possible edge is drawn per trial
(colex order, stream seeded with the sentinel grid index 0xFFFFFFFF) and an
edge is present at grid point c iff its uniform is below p(c).  Nested grids
therefore yield nested hypergraphs and per-trial success is exactly monotone
in c, which also lets a trial skip all grid points after its first success.
Independent per-grid-point sampling is available with ``coupled=False``.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    CapacityError,
    DivisibilityError,
    HypergraphInstance,
    RangeError,
    all_edges_colex,
    validate_params,
)
from .model import ModelSpec, sample
from .search import find_hamilton, is_pancyclic

Z95 = 1.959963984540054
MASK64 = (1 << 64) - 1
COUPLED_GRID_INDEX = 0xFFFFFFFF
_COUPLED_MAX_EDGES = 1 << 22


def splitmix64(x: int) -> int:
    """One output of the splitmix64 mixer (Steele-Lea-Flood constants)."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix_seed(base_seed: int, grid_index: int, trial_index: int) -> int:
    """64-bit per-trial seed derived by chained splitmix64 steps."""
    x = splitmix64(base_seed & MASK64)
    x = splitmix64(x ^ (grid_index & MASK64))
    x = splitmix64(x ^ (trial_index & MASK64))
    return x


def wilson_interval(successes: int, trials: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion (default 95%)."""
    if trials <= 0:
        raise RangeError("trials must be positive")
    if not 0 <= successes <= trials:
        raise RangeError(f"successes {successes} outside 0..{trials}")
    ph = successes / trials
    denom = 1.0 + z * z / trials
    center = (ph + z * z / (2.0 * trials)) / denom
    half = z * math.sqrt(ph * (1.0 - ph) / trials + z * z / (4.0 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return (lo, hi)


# ---------------------------------------------------------------------------
# specs and records


@dataclass(frozen=True)
class SweepSpec:
    """One Hamiltonicity sweep: p = c * (log n)^log_factor / n^scaling_exponent."""

    n: int
    k: int
    ell: int
    c_grid: tuple[float, ...]
    scaling_exponent: int
    log_factor: bool
    trials: int
    base_seed: int
    jobs: int = 1
    coupled: bool = True

    def __post_init__(self) -> None:
        validate_params(self.n, self.k, self.ell)
        if not self.c_grid:
            raise RangeError("c_grid must be non-empty")
        if any(b <= a for a, b in zip(self.c_grid, self.c_grid[1:])):
            raise RangeError("c_grid must be strictly increasing")
        if self.trials < 1:
            raise RangeError("trials must be at least 1")
        if self.jobs < 1:
            raise RangeError("jobs must be at least 1")
        if self.scaling_exponent < 0:
            raise RangeError("scaling exponent must be nonnegative")
        for c in self.c_grid:
            p = self.p_of(c)
            if not 0.0 < p <= 1.0:
                raise RangeError(f"c = {c} implies p = {p} outside (0, 1]")

    def p_of(self, c: float) -> float:
        scale = math.log(self.n) if self.log_factor else 1.0
        return c * scale / self.n ** self.scaling_exponent

    @property
    def p_grid(self) -> tuple[float, ...]:
        return tuple(self.p_of(c) for c in self.c_grid)


@dataclass(frozen=True)
class SweepRecord:
    """One Monte Carlo measurement row."""

    n: int
    k: int
    ell: int
    c: float
    p: float
    trials: int
    successes: int
    phat: float
    ci_low: float
    ci_high: float
    seed: int


@dataclass(frozen=True)
class CrossingEstimate:
    """Where the success curve crosses 1/2, if it does, plus a reference line."""

    crossed: bool
    c_half: float | None
    bracket: tuple[float, float] | None
    reference: float | None


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    records: tuple[SweepRecord, ...]
    crossing: CrossingEstimate


@dataclass(frozen=True)
class PancyclicityRecord:
    """Fraction of pancyclic samples at one p, with the first-missing-length
    histogram over failures as sorted (r, count) pairs."""

    n: int
    k: int
    p: float
    trials: int
    successes: int
    phat: float
    ci_low: float
    ci_high: float
    seed: int
    first_missing: tuple[tuple[int, int], ...]


# ---------------------------------------------------------------------------
# trial workers (top level so process pools can pickle them)


@lru_cache(maxsize=8)
def _edges_colex_cached(n: int, k: int) -> tuple:
    return tuple(all_edges_colex(n, k))


def _coupled_prefixes(n: int, k: int, p_grid: tuple[float, ...], seed: int):
    """Shared-uniform coupling: edges ordered by their uniform, plus per-grid
    prefix lengths.  H(p) is the prefix of edges with uniform below p."""
    total = math.comb(n, k)
    if total > _COUPLED_MAX_EDGES:
        raise CapacityError(
            f"coupled sampling needs C({n},{k}) = {total} <= {_COUPLED_MAX_EDGES}")
    rng = np.random.Generator(np.random.Philox(key=seed))
    u = rng.random(total)
    order = np.argsort(u, kind="stable")
    su = u[order]
    counts = [int(np.searchsorted(su, p, side="left")) for p in p_grid]
    return _edges_colex_cached(n, k), order, counts


def _hamilton_trial_vector(args) -> list[bool]:
    n, k, ell, p_grid, base_seed, trial, coupled = args
    out: list[bool] = []
    if coupled:
        seed = mix_seed(base_seed, COUPLED_GRID_INDEX, trial)
        edges_all, order, counts = _coupled_prefixes(n, k, p_grid, seed)
        cur: list = []
        taken = 0
        found = False
        for cnt in counts:
            if not found:
                for idx in order[taken:cnt]:
                    cur.append(edges_all[idx])
                taken = cnt
                H = HypergraphInstance(n, k, frozenset(cur))
                found = find_hamilton(H, ell).found
            out.append(found)
    else:
        for gi, p in enumerate(p_grid):
            seed = mix_seed(base_seed, gi, trial)
            H = sample(ModelSpec(n, k, p, seed))
            out.append(find_hamilton(H, ell).found)
    return out


def _pancyclic_trial_vector(args) -> list[tuple[bool, int | None]]:
    n, k, p_grid, base_seed, trial, coupled = args
    out: list[tuple[bool, int | None]] = []
    if coupled:
        seed = mix_seed(base_seed, COUPLED_GRID_INDEX, trial)
        edges_all, order, counts = _coupled_prefixes(n, k, p_grid, seed)
        cur: list = []
        taken = 0
        ok = False
        for cnt in counts:
            if ok:
                out.append((True, None))
                continue
            for idx in order[taken:cnt]:
                cur.append(edges_all[idx])
            taken = cnt
            H = HypergraphInstance(n, k, frozenset(cur))
            ok, missing = is_pancyclic(H)
            out.append((ok, missing))
    else:
        for gi, p in enumerate(p_grid):
            seed = mix_seed(base_seed, gi, trial)
            H = sample(ModelSpec(n, k, p, seed))
            out.append(is_pancyclic(H))
    return out


def _estimate_trial(args) -> bool:
    n, k, ell, p, base_seed, trial = args
    seed = mix_seed(base_seed, 0, trial)
    H = sample(ModelSpec(n, k, p, seed))
    return find_hamilton(H, ell).found


def _map_jobs(fn, argslist, jobs: int) -> list:
    if jobs <= 1:
        return [fn(a) for a in argslist]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, argslist))


# ---------------------------------------------------------------------------
# estimation entry points


def estimate_prob(n: int, k: int, ell: int, p: float, trials: int, seed: int, *,
                  jobs: int = 1, c: float | None = None) -> SweepRecord:
    """Estimate Pr(H(n,p,k) is overlap-ell Hamiltonian) over seeded trials.

    Trial i samples with stream seed mix_seed(seed, 0, i).  The record's c
    column defaults to p * n^(k-ell), the inverse of the plain scaling rule.
    """
    validate_params(n, k, ell)
    if not 0.0 <= p <= 1.0:
        raise RangeError(f"p must lie in [0, 1], got {p}")
    if trials < 1:
        raise RangeError("trials must be at least 1")
    results = _map_jobs(_estimate_trial,
                        [(n, k, ell, p, seed, t) for t in range(trials)], jobs)
    successes = sum(results)
    lo, hi = wilson_interval(successes, trials)
    if c is None:
        c = p * n ** (k - ell)
    return SweepRecord(n=n, k=k, ell=ell, c=c, p=p, trials=trials,
                       successes=successes, phat=successes / trials,
                       ci_low=lo, ci_high=hi, seed=seed)


def estimate_crossing(c_grid, phats, trials: int,
                      reference: float | None = None) -> CrossingEstimate:
    """Logit-scale interpolation of the c where phat crosses 1/2.

    Uses the first grid point with phat >= 1/2 (ties therefore resolve
    toward the smaller c) against its predecessor; phat is clamped to
    [1/(2 trials), 1 - 1/(2 trials)] before the logit.  The crossing is
    flagged as absent when the curve never reaches 1/2 or already starts
    at or above it.
    """
    j = next((i for i, ph in enumerate(phats) if ph >= 0.5), None)
    if j is None or j == 0:
        return CrossingEstimate(crossed=False, c_half=None, bracket=None,
                                reference=reference)
    eps = 1.0 / (2.0 * trials)

    def logit(ph: float) -> float:
        ph = min(max(ph, eps), 1.0 - eps)
        return math.log(ph / (1.0 - ph))

    l0, l1 = logit(phats[j - 1]), logit(phats[j])
    c0, c1 = c_grid[j - 1], c_grid[j]
    c_half = c0 + (0.0 - l0) * (c1 - c0) / (l1 - l0)
    return CrossingEstimate(crossed=True, c_half=c_half, bracket=(c0, c1),
                            reference=reference)


def sweep(spec: SweepSpec) -> SweepResult:
    """Run the full grid and estimate the crossing point."""
    p_grid = spec.p_grid
    args = [(spec.n, spec.k, spec.ell, p_grid, spec.base_seed, t, spec.coupled)
            for t in range(spec.trials)]
    vecs = _map_jobs(_hamilton_trial_vector, args, spec.jobs)
    records = []
    phats = []
    for gi, (c, p) in enumerate(zip(spec.c_grid, p_grid)):
        successes = sum(v[gi] for v in vecs)
        lo, hi = wilson_interval(successes, spec.trials)
        phat = successes / spec.trials
        phats.append(phat)
        records.append(SweepRecord(n=spec.n, k=spec.k, ell=spec.ell, c=c, p=p,
                                   trials=spec.trials, successes=successes,
                                   phat=phat, ci_low=lo, ci_high=hi,
                                   seed=spec.base_seed))
    # the tight scaling p = c/n has the asymptotic reference line c = e
    reference = (math.e if (spec.ell == spec.k - 1 and spec.scaling_exponent == 1
                            and not spec.log_factor) else None)
    crossing = estimate_crossing(spec.c_grid, phats, spec.trials, reference)
    return SweepResult(spec=spec, records=tuple(records), crossing=crossing)


def pancyclicity_sweep(n: int, k: int, p_grid, trials: int, seed: int, *,
                       jobs: int = 1, coupled: bool = True) -> list[PancyclicityRecord]:
    """Fraction of pancyclic samples per grid point, plus the histogram of the
    first missing cycle length among failures."""
    if n < k + 1:
        raise RangeError(f"need n >= k + 1, got n={n}, k={k}")
    p_grid = tuple(float(p) for p in p_grid)
    if not p_grid:
        raise RangeError("p_grid must be non-empty")
    if any(b <= a for a, b in zip(p_grid, p_grid[1:])):
        raise RangeError("p_grid must be strictly increasing")
    for p in p_grid:
        if not 0.0 <= p <= 1.0:
            raise RangeError(f"p = {p} outside [0, 1]")
    if trials < 1:
        raise RangeError("trials must be at least 1")
    args = [(n, k, p_grid, seed, t, coupled) for t in range(trials)]
    vecs = _map_jobs(_pancyclic_trial_vector, args, jobs)
    records = []
    for gi, p in enumerate(p_grid):
        successes = 0
        hist: dict[int, int] = {}
        for v in vecs:
            ok, missing = v[gi]
            if ok:
                successes += 1
            else:
                hist[missing] = hist.get(missing, 0) + 1
        lo, hi = wilson_interval(successes, trials)
        records.append(PancyclicityRecord(
            n=n, k=k, p=p, trials=trials, successes=successes,
            phat=successes / trials, ci_low=lo, ci_high=hi, seed=seed,
            first_missing=tuple(sorted(hist.items()))))
    return records


# ---------------------------------------------------------------------------
# presets


DEFAULT_C_GRID = tuple(i * 0.5 for i in range(1, 13))

PRESET_NAMES = ("loose-k3", "loose-k", "ell2", "mid-ell", "tight")


def preset(name: str, *, k: int, n: int, seed: int, ell: int | None = None,
           trials: int = 200, c_grid=None, jobs: int = 1,
           coupled: bool = True) -> SweepSpec:
    """Ready-made sweep spec for one of the standard density regimes.

    Scalings: tight p = c/n; ell2 p = c/n^(k-2); mid-ell p = c/n^(k-ell);
    loose rows p = c log(n)/n^(k-1).  Each row carries its divisibility
    requirement on n (tight has none).  The default grid is c = 0.5..6.0 in
    steps of 0.5.
    """
    if name == "loose-k3":
        if k != 3:
            raise RangeError("preset loose-k3 requires k = 3")
        row_ell, exponent, log_factor, divisor = 1, k - 1, True, 4
    elif name == "loose-k":
        if k < 4:
            raise RangeError("preset loose-k requires k >= 4")
        row_ell, exponent, log_factor, divisor = 1, k - 1, True, 2 * (k - 1)
    elif name == "ell2":
        if k < 3:
            raise RangeError("preset ell2 requires k >= 3")
        row_ell, exponent, log_factor, divisor = 2, k - 2, False, k - 2
    elif name == "mid-ell":
        if ell is None:
            raise RangeError("preset mid-ell requires an explicit ell")
        if not 3 <= ell < k:
            raise RangeError("preset mid-ell requires 3 <= ell < k")
        row_ell, exponent, log_factor, divisor = ell, k - ell, False, k - ell
    elif name == "tight":
        row_ell, exponent, log_factor, divisor = k - 1, 1, False, 1
    else:
        raise RangeError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    if ell is not None and ell != row_ell:
        raise RangeError(f"preset {name} fixes ell = {row_ell}, got {ell}")
    if divisor > 1 and n % divisor != 0:
        raise DivisibilityError(f"preset {name} requires {divisor} | n, got n = {n}")
    grid = DEFAULT_C_GRID if c_grid is None else tuple(float(c) for c in c_grid)
    return SweepSpec(n=n, k=k, ell=row_ell, c_grid=grid,
                     scaling_exponent=exponent, log_factor=log_factor,
                     trials=trials, base_seed=seed, jobs=jobs, coupled=coupled)


# ---------------------------------------------------------------------------
# output formats


SWEEP_CSV_HEADER = "n,k,ell,c,p,trials,successes,phat,ci_low,ci_high,seed"


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _config_lines(config: dict | None) -> list[str]:
    return [f"# {key}={_fmt(val)}" for key, val in (config or {}).items()]


def _crossing_line(cr: CrossingEstimate) -> str:
    c_half = _fmt(cr.c_half) if cr.c_half is not None else "none"
    bracket = (f"{_fmt(cr.bracket[0])}..{_fmt(cr.bracket[1])}"
               if cr.bracket is not None else "none")
    reference = _fmt(cr.reference) if cr.reference is not None else "none"
    return (f"# crossing crossed={str(cr.crossed).lower()} c_half={c_half} "
            f"bracket={bracket} reference={reference}")


def sweep_result_to_csv(result: SweepResult, config: dict | None = None) -> str:
    lines = _config_lines(config)
    lines.append(SWEEP_CSV_HEADER)
    for r in result.records:
        lines.append(",".join(_fmt(v) for v in (
            r.n, r.k, r.ell, r.c, r.p, r.trials, r.successes,
            r.phat, r.ci_low, r.ci_high, r.seed)))
    lines.append(_crossing_line(result.crossing))
    return "\n".join(lines) + "\n"


def sweep_result_to_json(result: SweepResult, config: dict | None = None) -> str:
    cr = result.crossing
    obj = {
        "config": config or {},
        "records": [{
            "n": r.n, "k": r.k, "ell": r.ell, "c": r.c, "p": r.p,
            "trials": r.trials, "successes": r.successes, "phat": r.phat,
            "ci_low": r.ci_low, "ci_high": r.ci_high, "seed": r.seed,
        } for r in result.records],
        "crossing": {
            "crossed": cr.crossed,
            "c_half": cr.c_half,
            "bracket": list(cr.bracket) if cr.bracket is not None else None,
            "reference": cr.reference,
        },
    }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def pancyclicity_records_to_csv(records, config: dict | None = None) -> str:
    """Pancyclicity rows use the sweep header (ell = k-1, c = p*n); the
    first-missing histograms follow as comment lines."""
    lines = _config_lines(config)
    lines.append(SWEEP_CSV_HEADER)
    for r in records:
        lines.append(",".join(_fmt(v) for v in (
            r.n, r.k, r.k - 1, r.p * r.n, r.p, r.trials, r.successes,
            r.phat, r.ci_low, r.ci_high, r.seed)))
    for r in records:
        hist = ";".join(f"{length}:{cnt}" for length, cnt in r.first_missing) or "-"
        lines.append(f"# first_missing p={_fmt(r.p)} {hist}")
    return "\n".join(lines) + "\n"


def pancyclicity_records_to_json(records, config: dict | None = None) -> str:
    obj = {
        "config": config or {},
        "records": [{
            "n": r.n, "k": r.k, "p": r.p, "trials": r.trials,
            "successes": r.successes, "phat": r.phat,
            "ci_low": r.ci_low, "ci_high": r.ci_high, "seed": r.seed,
            "first_missing": {str(length): cnt for length, cnt in r.first_missing},
        } for r in records],
    }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_text_atomic(path: str, text: str) -> None:
    """Write via a temp file in the same directory plus rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
