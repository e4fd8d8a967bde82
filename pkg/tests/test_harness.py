import json
import math

import pytest

import hyperham as hh
from hyperham.harness import (
    COUPLED_GRID_INDEX,
    SWEEP_CSV_HEADER,
    _hamilton_trial_vector,
    estimate_crossing,
    pancyclicity_records_to_csv,
    pancyclicity_records_to_json,
    splitmix64,
    sweep_result_to_csv,
    sweep_result_to_json,
    write_text_atomic,
)


# ---------------------------------------------------------------------------
# seed mixing


def test_splitmix64_reference_vector():
    # first output of the reference implementation seeded with 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF


def test_mix_seed_deterministic_and_spread():
    a = hh.mix_seed(1, 2, 3)
    assert a == hh.mix_seed(1, 2, 3)
    seen = {hh.mix_seed(5, g, t) for g in range(8) for t in range(200)}
    assert len(seen) == 8 * 200
    assert all(0 <= s < 1 << 64 for s in seen)


# ---------------------------------------------------------------------------
# Wilson interval


def test_wilson_published_value():
    lo, hi = hh.wilson_interval(8, 10)
    assert lo == pytest.approx(0.4902, abs=5e-4)
    assert hi == pytest.approx(0.9433, abs=5e-4)


def test_wilson_extremes_contain_truth():
    lo, hi = hh.wilson_interval(0, 50)
    assert lo == 0.0 and hi > 0.0
    lo, hi = hh.wilson_interval(50, 50)
    assert hi == 1.0 and lo < 1.0


def test_wilson_brackets_phat():
    for s, t in [(1, 7), (3, 9), (10, 11), (200, 400)]:
        lo, hi = hh.wilson_interval(s, t)
        assert lo <= s / t <= hi


def test_wilson_validates():
    with pytest.raises(hh.RangeError):
        hh.wilson_interval(5, 0)
    with pytest.raises(hh.RangeError):
        hh.wilson_interval(7, 5)


# ---------------------------------------------------------------------------
# estimate_prob


def test_estimate_prob_p_one():
    rec = hh.estimate_prob(6, 3, 2, 1.0, trials=20, seed=5)
    assert rec.successes == 20 and rec.phat == 1.0
    assert rec.ci_low <= 1.0 <= rec.ci_high


def test_estimate_prob_p_zero():
    rec = hh.estimate_prob(6, 3, 2, 0.0, trials=20, seed=5)
    assert rec.successes == 0 and rec.phat == 0.0
    assert rec.ci_low <= 0.0 <= rec.ci_high


def test_estimate_prob_c_backfill():
    rec = hh.estimate_prob(8, 3, 1, 0.25, trials=5, seed=1)
    assert rec.c == pytest.approx(0.25 * 8 ** 2)
    assert rec.ell == 1 and rec.seed == 1


def test_estimate_prob_jobs_equivalent():
    a = hh.estimate_prob(6, 3, 2, 0.5, trials=24, seed=11, jobs=1)
    b = hh.estimate_prob(6, 3, 2, 0.5, trials=24, seed=11, jobs=4)
    assert a == b


# ---------------------------------------------------------------------------
# coupled sampling invariants


def test_coupled_trial_monotone_per_trial():
    p_grid = (0.1, 0.3, 0.5, 0.9)
    for t in range(30):
        vec = _hamilton_trial_vector((6, 3, 2, p_grid, 17, t, True))
        assert vec == sorted(vec)


def test_coupled_uses_sentinel_grid_index():
    # the documented stream seed for trial t is mix(base, 0xFFFFFFFF, t)
    assert COUPLED_GRID_INDEX == 0xFFFFFFFF


# ---------------------------------------------------------------------------
# crossing estimator


def test_crossing_symmetric_interpolation():
    cr = estimate_crossing([1.0, 2.0], [0.2, 0.8], trials=10)
    assert cr.crossed and cr.c_half == pytest.approx(1.5)
    assert cr.bracket == (1.0, 2.0)


def test_crossing_exact_half_ties_to_smaller_c():
    cr = estimate_crossing([1.0, 2.0, 3.0], [0.1, 0.5, 0.9], trials=10)
    assert cr.crossed and cr.c_half == pytest.approx(2.0)


def test_crossing_never_reached():
    cr = estimate_crossing([1.0, 2.0], [0.0, 0.2], trials=10)
    assert not cr.crossed and cr.c_half is None and cr.bracket is None


def test_crossing_starts_above_half():
    cr = estimate_crossing([1.0, 2.0], [1.0, 1.0], trials=10)
    assert not cr.crossed


def test_crossing_clamps_extreme_phats():
    cr = estimate_crossing([1.0, 2.0], [0.0, 1.0], trials=10)
    assert cr.crossed and cr.bracket == (1.0, 2.0)
    assert cr.c_half == pytest.approx(1.5)


# ---------------------------------------------------------------------------
# sweeps


def _small_spec(jobs=1, coupled=True):
    return hh.SweepSpec(n=6, k=3, ell=2, c_grid=(0.5, 1.5, 3.0),
                        scaling_exponent=1, log_factor=False, trials=16,
                        base_seed=21, jobs=jobs, coupled=coupled)


def test_sweep_records_shape():
    res = hh.sweep(_small_spec())
    assert len(res.records) == 3
    for rec, c in zip(res.records, (0.5, 1.5, 3.0)):
        assert rec.c == c and rec.p == pytest.approx(c / 6)
        assert 0 <= rec.successes <= 16
        assert rec.ci_low <= rec.phat <= rec.ci_high
        assert rec.seed == 21
    assert res.crossing.reference == math.e  # tight scaling reference line


def test_sweep_reproducible_across_jobs():
    a = hh.sweep(_small_spec(jobs=1))
    b = hh.sweep(_small_spec(jobs=3))
    assert a.records == b.records and a.crossing == b.crossing


def test_sweep_independent_mode_runs():
    res = hh.sweep(_small_spec(coupled=False))
    assert len(res.records) == 3


def test_sweep_spec_validation():
    with pytest.raises(hh.RangeError):
        hh.SweepSpec(n=6, k=3, ell=2, c_grid=(), scaling_exponent=1,
                     log_factor=False, trials=5, base_seed=0)
    with pytest.raises(hh.RangeError):
        hh.SweepSpec(n=6, k=3, ell=2, c_grid=(1.0, 1.0), scaling_exponent=1,
                     log_factor=False, trials=5, base_seed=0)
    with pytest.raises(hh.RangeError):  # implied p > 1
        hh.SweepSpec(n=6, k=3, ell=2, c_grid=(7.0,), scaling_exponent=1,
                     log_factor=False, trials=5, base_seed=0)


# ---------------------------------------------------------------------------
# pancyclicity sweep


def test_pancyclicity_sweep_extremes():
    records = hh.pancyclicity_sweep(6, 3, (1e-9, 1.0), trials=10, seed=3)
    low, high = records
    assert low.successes == 0
    # with essentially no edges every failure misses the shortest length first
    assert low.first_missing == ((4, 10),)
    assert high.successes == 10 and high.first_missing == ()


def test_pancyclicity_sweep_reproducible_across_jobs():
    a = hh.pancyclicity_sweep(7, 3, (0.3, 0.6), trials=12, seed=9, jobs=1)
    b = hh.pancyclicity_sweep(7, 3, (0.3, 0.6), trials=12, seed=9, jobs=3)
    assert a == b


def test_pancyclicity_sweep_validates():
    with pytest.raises(hh.RangeError):
        hh.pancyclicity_sweep(3, 3, (0.5,), trials=5, seed=0)
    with pytest.raises(hh.RangeError):
        hh.pancyclicity_sweep(6, 3, (0.6, 0.4), trials=5, seed=0)


# ---------------------------------------------------------------------------
# presets


def test_preset_tight():
    spec = hh.preset("tight", k=4, n=12, seed=1)
    assert spec.ell == 3 and spec.scaling_exponent == 1 and not spec.log_factor
    assert spec.c_grid == tuple(0.5 * i for i in range(1, 13))


def test_preset_tight_no_divisibility():
    # any n works in the tight row
    assert hh.preset("tight", k=4, n=13, seed=1).n == 13


def test_preset_ell2():
    spec = hh.preset("ell2", k=5, n=12, seed=1, c_grid=(1.0, 2.0))
    assert spec.ell == 2 and spec.scaling_exponent == 3
    with pytest.raises(hh.DivisibilityError):
        hh.preset("ell2", k=5, n=13, seed=1, c_grid=(1.0, 2.0))


def test_preset_loose_k():
    spec = hh.preset("loose-k", k=4, n=12, seed=1, c_grid=(0.5, 1.0))
    assert spec.ell == 1 and spec.scaling_exponent == 3 and spec.log_factor
    with pytest.raises(hh.DivisibilityError):
        hh.preset("loose-k", k=4, n=8, seed=1, c_grid=(0.5, 1.0))


def test_preset_loose_k3():
    spec = hh.preset("loose-k3", k=3, n=12, seed=1, c_grid=(0.5, 1.0))
    assert spec.ell == 1 and spec.scaling_exponent == 2 and spec.log_factor
    with pytest.raises(hh.RangeError):
        hh.preset("loose-k3", k=4, n=12, seed=1)


def test_preset_mid_ell():
    spec = hh.preset("mid-ell", k=5, n=12, seed=1, ell=3, c_grid=(1.0, 2.0))
    assert spec.ell == 3 and spec.scaling_exponent == 2
    with pytest.raises(hh.RangeError):
        hh.preset("mid-ell", k=5, n=12, seed=1)  # ell required


def test_preset_unknown():
    with pytest.raises(hh.RangeError):
        hh.preset("nope", k=3, n=6, seed=1)


def test_preset_ell_conflict():
    with pytest.raises(hh.RangeError):
        hh.preset("tight", k=4, n=12, seed=1, ell=1)


# ---------------------------------------------------------------------------
# output formats


def test_sweep_csv_layout(tmp_path):
    res = hh.sweep(_small_spec())
    text = sweep_result_to_csv(res, {"command": "sweep", "seed": 21})
    lines = text.splitlines()
    assert lines[0] == "# command=sweep"
    assert lines[1] == "# seed=21"
    assert lines[2] == SWEEP_CSV_HEADER
    assert len([ln for ln in lines if not ln.startswith("#")]) == 1 + 3
    assert lines[-1].startswith("# crossing crossed=")


def test_sweep_json_roundtrip():
    res = hh.sweep(_small_spec())
    obj = json.loads(sweep_result_to_json(res, {"seed": 21}))
    assert len(obj["records"]) == 3
    assert obj["records"][0]["trials"] == 16
    assert obj["crossing"]["reference"] == math.e


def test_pancyclicity_csv_layout():
    records = hh.pancyclicity_sweep(6, 3, (0.2, 1.0), trials=6, seed=4)
    text = pancyclicity_records_to_csv(records, {"command": "pancyclic"})
    lines = text.splitlines()
    assert lines[1] == SWEEP_CSV_HEADER
    hist_lines = [ln for ln in lines if ln.startswith("# first_missing")]
    assert len(hist_lines) == 2
    obj = json.loads(pancyclicity_records_to_json(records))
    assert len(obj["records"]) == 2


def test_write_text_atomic(tmp_path):
    target = tmp_path / "out.csv"
    write_text_atomic(str(target), "hello\n")
    assert target.read_text() == "hello\n"
    write_text_atomic(str(target), "world\n")
    assert target.read_text() == "world\n"
    assert list(tmp_path.iterdir()) == [target]
