import math

import pytest

import icebox


def test_version():
    assert icebox.version().startswith("icebox ")


def test_geometry():
    g = icebox.geometry(2, "free")
    assert g["real_edges"] == 12
    assert g["faces"] == 9
    t = icebox.geometry(3, "periodic")
    assert t["real_edges"] == 18
    assert t["faces"] == 9
    assert not t["has_reference_states"]


def test_enumeration_counts():
    assert len(icebox.states(1, "free")) == 6
    assert len(icebox.states(2, "free")) == 82
    assert len(icebox.states(2, "free", include_near=True)) == 3318


def test_states_round_trip_and_classes():
    ref = icebox.reference_state(2, "free")
    assert ref in icebox.states(2, "free")
    assert icebox.classify(2, "free", ref) == "green_cross"
    counts = {}
    for s in icebox.states(2, "free"):
        counts[icebox.classify(2, "free", s)] = counts.get(icebox.classify(2, "free", s), 0) + 1
    assert counts == {"green_cross": 7, "red_cross": 7, "fault_line": 68}


def test_analyze_flags():
    rep = icebox.analyze(2, icebox.reference_state(2, "free"))
    assert rep["part_class"] == "green_cross"
    assert rep["green_h"] and rep["green_v"]
    assert not rep["fault_h"] and not rep["fault_v"]


def test_log_partition_uniform():
    assert math.exp(icebox.log_partition(1, "free", 1, 1, 1)) == pytest.approx(6.0)
    assert math.exp(icebox.log_partition(2, "free", 1, 1, 1)) == pytest.approx(82.0)


def test_kernel_summary():
    for chain in ("glauber", "loop"):
        k = icebox.kernel_summary(2, "free", chain, 1, 1, 3)
        assert k["detailed_balance_error"] < 1e-12
        assert k["row_sum_error"] < 1e-12
        assert k["min_diagonal"] >= 0.5 - 1e-12
        assert k["strongly_connected"]


def test_conductance_trend():
    phis = [icebox.conductance_green(2, 1, 1, c)["phi"] for c in (1.0, 2.0, 3.0)]
    assert phis[0] > phis[1] > phis[2] > 0


def test_escape_is_deterministic():
    a = icebox.escape_time(3, 3.0, seed=7, cap=200_000)
    b = icebox.escape_time(3, 3.0, seed=7, cap=200_000)
    assert a == b
    assert a["hit"]


def test_saw_counts():
    assert icebox.saw_counts(6)[:7] == [1, 4, 12, 36, 100, 284, 780]
    assert icebox.saw_counts(2, "boundary") == [1, 3, 7]


def test_peierls_bound_and_mass():
    pb0 = icebox.peierls_bound(2, 1, 1, 3, exact_cap=0)
    assert pb0["sharp"] == pb0["plain"] > 0
    big = icebox.peierls_bound(8, 1, 1, 3)
    assert 0 < big["sharp"] < big["plain"]
    assert icebox.fault_mass(2, 1, 1, 3) <= icebox.peierls_bound(2, 1, 1, 3)["sharp"]


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        icebox.geometry(2, "moebius")
    with pytest.raises(ValueError):
        icebox.classify(2, "free", "not a state")
    with pytest.raises(RuntimeError):
        icebox.states(3, "free", budget=10)
