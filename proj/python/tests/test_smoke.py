import math

import pytest

import diploid


def test_rates_and_swap():
    r = diploid.RateSet(1, 2, 3, 4)
    assert r.swapped() == diploid.RateSet(4, 3, 2, 1)
    with pytest.raises(ValueError):
        diploid.RateSet(-1, 1, 1, 1)


def test_rhs_stays_on_simplex():
    du = diploid.rhs([0.2, 0.5, 0.3], diploid.RateSet(1, 2, 2, 1))
    assert abs(sum(du)) < 1e-12


def test_interior_point_and_regime():
    r = diploid.RateSet(1, 2, 2, 1)
    u = diploid.interior_fixed_point(r)
    assert u == pytest.approx([0.25, 0.5, 0.25])
    assert diploid.classify(r) == diploid.Regime.coexistence
    rep = diploid.stability_report(r)
    assert rep["regime"] == "coexistence"
    assert diploid.interior_fixed_point(diploid.RateSet(2, 1, 1, 2)) is not None
    assert diploid.classify(diploid.RateSet(2, 1, 1, 2)) == diploid.Regime.founder_control


def test_integrate_reaches_interior():
    traj = diploid.integrate([0.9, 0.05, 0.05], diploid.RateSet(1, 2, 2, 1), 50.0)
    assert traj["columns"][0] == "time"
    assert traj["rows"][-1][1:4] == pytest.approx([0.25, 0.5, 0.25], abs=1e-6)


def test_phase_sweep_shape():
    grid = diploid.phase_sweep([0.5, 1.5], [0.5, 1.5, 2.5], 1.0, 1.0)
    assert len(grid) == 2 and len(grid[0]) == 3
    assert grid[0][0] == "coexistence"


def test_simulate_is_deterministic():
    r = diploid.RateSet(1, 2, 2, 1)
    a = diploid.simulate(r, [100], 5.0, seed=7)
    b = diploid.simulate(r, [100], 5.0, seed=7)
    assert a == b
    assert len(a["final"]) == 100
    assert a["columns"] == ["time", "u_aa", "u_ab", "u_bb"]
    for row in a["rows"]:
        assert sum(row[1:]) == pytest.approx(1.0)


def test_pgm_levels():
    data = diploid.encode_pgm([3], [0, 1, 2])
    assert data == b"P5\n3 1\n255\n" + bytes([255, 128, 0])


def test_coupled_domination():
    res = diploid.coupled(diploid.RateSet(1, 4, 3, 2), seed=3)
    assert res["violations"] == 0 and res["checks"] > 0


def test_equivalence_coupled():
    assert diploid.equivalence_check(diploid.RateSet(1, 4, 3, 2), seed=5)["passed"]


def test_walk_closed_form():
    p = diploid.hitting_probability(1, 1.0, 1.0, 3)
    r = 6 / 7
    c = (1 - r) ** 2 / r
    assert p == pytest.approx((c - 1) / (c**4 - 1), rel=1e-12)
    res = diploid.invasion_walk(1, 1.0, 1.0, 3, 20000, seed=1)
    assert abs(res["empirical"] - res["closed_form"]) < 4 * res["stderr"] + 1e-9


def test_theory_helpers():
    assert diploid.condition4_threshold(1) == pytest.approx(6 * (1 + math.sqrt(3)))
    assert diploid.condition5_check(diploid.RateSet(10, 1, 1, 1))
    assert not diploid.condition5_check(diploid.RateSet(1, 1, 1, 1))
    assert diploid.fixation_speed_bound(diploid.RateSet(10, 1, 1, 1)) > 0
    assert diploid.path_tail_bound(1, 1, 10.0) > 0
    with pytest.raises(ValueError):
        diploid.path_tail_bound(1, 1, 1.0)


def test_config_round_trip():
    text = "command = meanfield\nphi_aa = 1\nphi_ab = 2\nphi_ba = 2\nphi_bb = 1\nt_end = 10\n"
    canon = diploid.parse_config(text)
    assert diploid.emit_config(canon) == canon
    with pytest.raises(ValueError, match="line 2"):
        diploid.parse_config("command = meanfield\nbogus = 1\n")


def test_acceptance_fast_criteria():
    results = diploid.acceptance([1, 4, 13])
    assert [r["id"] for r in results] == [1, 4, 13]
    assert all(r["passed"] for r in results)
