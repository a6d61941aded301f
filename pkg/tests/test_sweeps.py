"""Sweep engines: grids, crossings, and column schemas."""

import numpy as np
import pytest

from twirlqkd.fiber import LinkParams
from twirlqkd.rotations import AXIS_Y, RotationSpec, su2_from_axis_angle
from twirlqkd.states import qber_exact, qber_protected_exact
from twirlqkd.sweeps import (
    MODE_UNPROTECTED,
    sweep_alpha,
    sweep_bias,
    sweep_distance,
    sweep_pguess,
    threshold_crossing,
)


class TestThresholdCrossing:
    def test_interpolates_between_points(self):
        assert threshold_crossing([0, 1, 2], [0.0, 0.2, 0.4], 0.3) == pytest.approx(1.5)

    def test_exact_grid_hit(self):
        assert threshold_crossing([0, 1, 2], [0.0, 0.3, 0.6], 0.3) == pytest.approx(1.0)

    def test_no_crossing(self):
        assert threshold_crossing([0, 1, 2], [0.0, 0.1, 0.2], 0.5) is None

    def test_starts_above(self):
        assert threshold_crossing([3, 4], [0.9, 1.0], 0.5) == pytest.approx(3.0)


class TestSweepAlpha:
    def test_exact_columns_match_pointwise_oracles(self):
        res = sweep_alpha(steps=10, samples=20, seed=5)
        for row in res.rows:
            u = su2_from_axis_angle(RotationSpec(AXIS_Y, np.radians(row[0])))
            assert row[1] == pytest.approx(qber_exact(u), abs=1e-12)
            assert row[4] == pytest.approx(qber_protected_exact(u), abs=1e-12)

    def test_zero_angle_row_is_clean(self):
        res = sweep_alpha(steps=4, samples=200, seed=6)
        first = res.rows[0]
        assert first[1] == 0.0 and first[4] == 0.0
        assert first[2] == 0.0 and first[5] == 0.0  # sampled columns, noiseless point

    def test_crossings_on_default_grid(self):
        res = sweep_alpha(samples=20, seed=7)
        assert res.crossings["unprotected_deg"] == pytest.approx(38.74, abs=0.05)
        assert res.crossings["protected_deg"] == pytest.approx(47.93, abs=0.05)

    def test_mode_selection_blanks_unused_columns(self):
        res = sweep_alpha(steps=4, samples=20, seed=8, mode=MODE_UNPROTECTED)
        assert all(row[5] == "" and row[6] == "" for row in res.rows)
        assert all(row[2] != "" for row in res.rows)

    def test_meta_records_effective_configuration(self):
        res = sweep_alpha(steps=4, samples=20, seed=9)
        for key in ("seed", "samples", "steps", "threshold", "grid_resolution_deg"):
            assert key in res.meta

    def test_rejects_degenerate_grid(self):
        with pytest.raises(ValueError):
            sweep_alpha(steps=1)


class TestSweepBias:
    def test_y_panel_tracks_closed_form(self):
        res = sweep_bias(steps=6, samples=3000, seed=10)
        biases = res.column("bias_rad")
        qu = res.column("qber_unprotected_y")
        qp = res.column("qber_protected_y")
        # jitter shifts the mean by O(sigma^2); allow that plus sampling noise
        np.testing.assert_allclose(qu, np.sin(biases / 2) ** 2, atol=5e-3)
        np.testing.assert_allclose(qp, (2 / 3) * np.sin(biases / 2) ** 2, atol=5e-3)

    def test_z_panel_stays_quiet(self):
        res = sweep_bias(steps=6, samples=3000, seed=11)
        assert res.meta["z_unprotected_max_qber"] < 0.005

    def test_crossings_present(self):
        res = sweep_bias(steps=26, samples=2000, seed=12)
        assert res.crossings["y_unprotected_rad"] == pytest.approx(0.676, abs=0.02)
        assert res.crossings["y_protected_rad"] == pytest.approx(0.837, abs=0.02)


class TestSweepPguess:
    def test_protected_equals_envelope(self):
        res = sweep_pguess(steps=16, samples=50, seed=13)
        prot = res.column("p_total_protected")
        env = res.column("p_total_envelope")
        np.testing.assert_allclose(prot, env, atol=1e-9)

    def test_turbulent_series_between_envelopes(self):
        res = sweep_pguess(steps=16, samples=400, seed=14)
        good = res.column("p_total_good_axis")
        bad = res.column("p_total_bad_axis")
        turb = res.column("p_total_turbulent_sampled")
        assert np.all(turb >= bad - 1e-12)
        assert np.all(turb <= good + 1e-12)

    def test_aligned_point_is_unity(self):
        res = sweep_pguess(steps=4, samples=50, seed=15)
        assert all(v == pytest.approx(1.0, abs=1e-12) for v in res.rows[0][1:])


class TestSweepDistance:
    def test_baseline_and_dominance(self):
        res = sweep_distance(steps=9, samples=2000, seed=16)
        lu = res.column("l_max_unprotected")
        lp = res.column("l_max_protected")
        assert lu[0] == pytest.approx(257.46, abs=0.1)
        assert lp[0] == pytest.approx(257.46, abs=0.1)
        assert np.all(lp >= lu)

    def test_collapse_points_and_ratio(self):
        res = sweep_distance(steps=33, samples=20_000, seed=17)
        lu = res.column("l_max_unprotected")
        assert lu[-1] == 0.0  # unprotected curve has collapsed by 0.8 rad
        ratio = res.crossings["sigma_zero_ratio"]
        assert 1.15 <= ratio <= 1.30

    def test_custom_link_parameters_flow_through(self):
        link = LinkParams(beta=0.3, mu=0.4, y0=2e-6, threshold=0.1)
        res = sweep_distance(steps=5, samples=2000, seed=18, link=link)
        assert res.meta["beta_db_per_km"] == 0.3
        p_sig = link.y0 * (0.5 / link.threshold - 1.0)
        expected = 10 / link.beta * np.log10(link.mu / p_sig)
        assert res.column("l_max_unprotected")[0] == pytest.approx(expected, abs=0.02)
