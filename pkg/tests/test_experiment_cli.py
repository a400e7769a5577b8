import csv
import json
import math

import pytest

from main import main
from rumor_gossip.models.experiment import ExperimentConfig
from rumor_gossip.services.experiment_service import ExperimentService


def _summary(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


def _rows(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


def test_bounds_on_small_complete_graph(capsys):
    assert main(["bounds", "--nodes", "10", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["lambda2"] == pytest.approx(8 / 9, abs=1e-9)
    assert (report["n1"], report["n2"]) == (4, 6)
    assert report["epsilon"] == pytest.approx(2 / (10 * math.sqrt(10)))
    assert report["k_upper"] == pytest.approx(6 * report["k_lower"])


def test_bounds_summary_and_report_file(tmp_path, capsys):
    out = tmp_path / "bounds.json"
    assert main(["bounds", "--nodes", "1000", "--out", str(out)]) == 0
    summary = _summary(capsys.readouterr().out)
    assert float(summary["epsilon"]) == pytest.approx(200 / (1000 * math.sqrt(1000)))
    assert float(summary["lambda2_closed_form"]) == pytest.approx(1 - 1 / 999)
    assert float(summary["lambda2"]) == pytest.approx(1 - 1 / 999, abs=1e-9)
    assert json.loads(out.read_text())["n"] == 1000


def test_bounds_tie_is_an_error(capsys):
    assert main(["bounds", "--nodes", "10", "--seeds1", "5", "--seeds2", "5"]) == 1
    assert "error:" in capsys.readouterr().err


def test_fig3_counts_holders(tmp_path, capsys):
    out = tmp_path / "fig3.csv"
    assert main(["fig3", "--nodes", "50", "--rounds", "20000", "--out", str(out)]) == 0
    rows = _rows(out)
    assert rows[0] == ["k", "holders_g1", "holders_g2", "undecided"]
    assert rows[1] == ["0", "20", "30", "0"]
    for row in rows[1:]:
        assert sum(int(value) for value in row[1:]) == 50
    summary = _summary(capsys.readouterr().out)
    assert summary["stop_reason"] == "sign"
    assert summary["final_holders_g2"] == "50"


def test_fig4_default_settings(tmp_path):
    out = tmp_path / "fig4.csv"
    assert main(["fig4", "--nodes", "40", "--rounds", "2000", "--stop", "budget", "--out", str(out)]) == 0
    rows = _rows(out)[1:]
    settings = sorted({row[0] for row in rows})
    assert settings == ["12:28", "18:22", "4:36"]
    for label in settings:
        distances = [float(row[2]) for row in rows if row[0] == label]
        assert len(distances) == 51
        assert all(b <= a + 1e-12 for a, b in zip(distances, distances[1:]))


def test_unexpected_failure_is_reported(monkeypatch, capsys):
    def fail(self, cfg):
        raise RuntimeError("disk on fire")

    monkeypatch.setattr(ExperimentService, "run", fail)
    assert main(["bounds", "--nodes", "10"]) == 1
    err = capsys.readouterr().err
    assert "error: disk on fire" in err


def test_fig4_needs_three_settings():
    assert main(["fig4", "--nodes", "40", "--settings", "10:30,20:20"]) == 1


def test_fig5_histogram(tmp_path, capsys):
    out = tmp_path / "fig5.csv"
    assert main(["fig5", "--nodes", "100", "--rounds", "5000", "--out", str(out)]) == 0
    rows = _rows(out)
    assert rows[0] == ["bin_left", "bin_right", "count"]
    assert sum(int(row[2]) for row in rows[1:]) == 100
    summary = _summary(capsys.readouterr().out)
    assert float(summary["final_value"]) == pytest.approx(float(summary["initial_mean"]), abs=1e-9)
    assert summary["sign_consensus"] in ("true", "false")


def test_fig5_rejects_zero_sigma():
    assert main(["fig5", "--nodes", "20", "--sigma", "0"]) == 1


def test_fig1_small_run(tmp_path, capsys):
    out = tmp_path / "fig1.csv"
    args = ["fig1", "--nodes", "200", "--trials", "3", "--l-list", "1,2", "--seeds1", "5", "--seeds2", "5",
            "--out", str(out)]
    assert main(args) == 0
    rows = _rows(out)
    assert rows[0] == ["l", "s", "i_simulated", "i_theoretical"]
    assert {row[0] for row in rows[1:]} == {"1", "2"}
    assert all(float(row[3]) >= 0 for row in rows[1:])
    summary = _summary(capsys.readouterr().out)
    assert float(summary["l1_theory_final_s"]) == pytest.approx(0.2032, abs=1e-3)


def test_fig1_needs_enough_nodes():
    assert main(["fig1", "--nodes", "50"]) == 1


def test_fig2_sweep(tmp_path, capsys):
    out = tmp_path / "fig2.csv"
    args = ["fig2", "--nodes", "200", "--trials", "5", "--seeds1", "10", "--seeds2", "10", "--out", str(out)]
    assert main(args) == 0
    rows = _rows(out)[1:]
    assert [int(row[0]) for row in rows] == list(range(0, 21, 2))
    summary = _summary(capsys.readouterr().out)
    slope = float(summary["predicted_slope"])
    for row in rows:
        assert float(row[2]) == pytest.approx(int(row[0]) * slope)


def test_spread_summary(tmp_path, capsys):
    out = tmp_path / "spread.csv"
    assert main(["spread", "--nodes", "100", "--trials", "5", "--out", str(out)]) == 0
    rows = _rows(out)
    assert rows[0] == ["step", "k_over_n", "i1", "i2", "s", "r1", "r2"]
    assert rows[1][:2] == ["0", "0.0"]
    summary = _summary(capsys.readouterr().out)
    assert summary["truncated"] == "0"
    assert "theory_final_s" in summary and "ode_max_deviation" in summary


def test_spread_rejects_bad_threshold(capsys):
    assert main(["spread", "--nodes", "100", "--l", "0"]) == 1
    assert "error:" in capsys.readouterr().err


def test_consensus_distance_stop(tmp_path, capsys):
    out = tmp_path / "consensus.csv"
    assert main(["consensus", "--nodes", "30", "--stop", "distance", "--rounds", "100000", "--out", str(out)]) == 0
    rows = _rows(out)
    assert rows[0] == ["k", "distance", "sign_consensus", "positive_count", "negative_count"]
    summary = _summary(capsys.readouterr().out)
    assert summary["stop_reason"] == "distance"
    assert float(summary["final_distance"]) < 0.2


def test_consensus_holders_must_cover_the_graph():
    assert main(["consensus", "--nodes", "30", "--seeds1", "10", "--seeds2", "10"]) == 1


def test_same_seed_gives_identical_files(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (first, second):
        assert main(["fig3", "--nodes", "40", "--seed", "7", "--rounds", "5000", "--out", str(out)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_worker_count_does_not_change_results(tmp_path):
    serial, parallel = tmp_path / "serial.csv", tmp_path / "parallel.csv"
    base = ["fig2", "--nodes", "100", "--trials", "4", "--seeds1", "4", "--seeds2", "4", "--seed", "3"]
    assert main(base + ["--workers", "1", "--out", str(serial)]) == 0
    assert main(base + ["--workers", "2", "--out", str(parallel)]) == 0
    assert serial.read_bytes() == parallel.read_bytes()


def test_invalid_option_exits_with_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["consensus", "--stop", "never"])
    assert exc.value.code == 2


def test_missing_command():
    assert main([]) == 1


@pytest.mark.slow
def test_fig1_simulation_follows_the_closed_form():
    cfg = ExperimentConfig(command="fig1", nodes=5000, l_list=[1], trials=50)
    output = ExperimentService(master_seed=11).run(cfg)
    records = {record.metric: record.value for record in output.records}
    assert records["l1_max_deviation"] <= 0.05
    assert abs(records["l1_mean_final_s"] - records["l1_theory_final_s"]) <= 0.03


@pytest.mark.slow
def test_fig2_final_difference_is_linear():
    cfg = ExperimentConfig(command="fig2", nodes=5000, seeds1=100, seeds2=100, trials=200)
    output = ExperimentService(master_seed=11, workers=4).run(cfg)
    records = {record.metric: record.value for record in output.records}
    assert records["r_squared"] >= 0.95
    assert abs(records["slope"] - records["predicted_slope"]) <= 0.15 * records["predicted_slope"]
