from __future__ import annotations

import pandas as pd
import pytest

import sweep
from decoration.weil import validate_decoration
from fixtures.catalog import FAN_NAMES, build_fan


def test_random_decorations_are_valid(rng):
    fan = build_fan("dp6")
    for _ in range(25):
        kind, dec = sweep.random_decoration(rng, fan)
        assert kind in ("split", "flag")
        assert validate_decoration(dec).valid
        assert 1 <= dec.ambient_dim <= 3


def test_random_flag_stays_in_range(rng):
    dec = sweep.random_flag(rng, 5, 3)
    lo, hi = sweep.COEFF_RANGE
    assert all(lo <= a <= hi for s in dec.strata for a in s.divisor)


def test_small_sweep_has_no_counterexamples():
    df = sweep.run_sweep(["p1", "p2", "f1"], samples=10, seed=7, progress=False)
    assert isinstance(df, pd.DataFrame)
    assert len(df) == 30
    assert not df["counterexample"].any()
    assert set(df["fixture"]) == {"p1", "p2", "f1"}
    # the Cech oracle only runs on acyclicly decorated samples
    assert df.loc[~df["acyclicly"], "acyclic"].isna().all()


def test_sweep_is_reproducible():
    a = sweep.run_sweep(["f1"], samples=5, seed=3, progress=False)
    b = sweep.run_sweep(["f1"], samples=5, seed=3, progress=False)
    pd.testing.assert_frame_equal(a, b)


def test_sweep_main_writes_csv(tmp_path, capsys):
    target = tmp_path / "sweep.csv"
    code = sweep.main(["--fixtures", "p1", "--samples", "4", "-o", str(target)])
    assert code == 0
    df = pd.read_csv(target)
    assert list(df["fixture"].unique()) == ["p1"]
    assert "counterexamples" in capsys.readouterr().out


@pytest.mark.slow
def test_full_sweep():
    df = sweep.run_sweep(samples=100, progress=False)
    assert set(df["fixture"]) == set(FAN_NAMES)
    assert df.groupby("fixture").size().min() == 100
    assert int(df["counterexample"].sum()) == 0
