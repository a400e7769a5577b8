import argparse
import math

import numpy as np
import pytest

from rumor_gossip.config.settings import SimulationConfig, config
from rumor_gossip.exceptions import ConfigurationError, DataFileError, GossipError, InvalidInputError
from rumor_gossip.models.experiment import ExperimentConfig, ExperimentOutput, RunRecord
from rumor_gossip.services.experiment_service import ExperimentService
from rumor_gossip.utils.file_utils import read_lines_file, render_csv, write_csv, write_json_file
from rumor_gossip.utils.formatters import (
    format_counts, format_key_values, format_percentage, format_records, format_value
)
from rumor_gossip.utils.seeding import experiment_key, substream
from rumor_gossip.utils.validators import (
    is_finite_number, is_int, require_int, require_number, validate_node_ids, validate_seed_counts
)


def test_defaults(monkeypatch):
    for key in ("RUMOR_GOSSIP_SEED", "RUMOR_GOSSIP_WORKERS", "RUMOR_GOSSIP_ODE_DT", "RUMOR_GOSSIP_POWER_TOL"):
        monkeypatch.delenv(key, raising=False)
    cfg = SimulationConfig()
    assert cfg.master_seed == 20240501
    assert cfg.workers == 1
    assert cfg.ode_dt == 1e-3
    assert cfg.power_tol == 1e-10


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("RUMOR_GOSSIP_SEED", "42")
    monkeypatch.setenv("RUMOR_GOSSIP_ODE_DT", "0.01")
    monkeypatch.setenv("RUMOR_GOSSIP_ORACLE_MAX_NODES", "8")
    monkeypatch.setenv("RUMOR_GOSSIP_LOG_FILE", "")
    cfg = SimulationConfig()
    assert cfg.master_seed == 42
    assert cfg.ode_dt == 0.01
    assert cfg.oracle_max_nodes == 8
    assert cfg.log_file is None


@pytest.mark.parametrize("key, raw", [
    ("RUMOR_GOSSIP_SEED", "abc"),
    ("RUMOR_GOSSIP_WORKERS", "0"),
    ("RUMOR_GOSSIP_ODE_DT", "-1"),
    ("RUMOR_GOSSIP_POWER_TOL", "nan"),
])
def test_invalid_environment(monkeypatch, key, raw):
    monkeypatch.setenv(key, raw)
    with pytest.raises(ConfigurationError):
        SimulationConfig()


def test_budgets(monkeypatch):
    monkeypatch.delenv("RUMOR_GOSSIP_SPREAD_BUDGET_FACTOR", raising=False)
    monkeypatch.setenv("RUMOR_GOSSIP_CONSENSUS_BUDGET_FACTOR", "2")
    cfg = SimulationConfig()
    assert cfg.spread_budget(10) == 100 * 100
    assert cfg.consensus_budget(100) == math.ceil(2 * 100 * math.log(100))
    assert cfg.consensus_budget(1) >= 1


def test_substreams_are_reproducible():
    first = substream(1, "fig2", 3).random(5)
    assert np.array_equal(first, substream(1, "fig2", 3).random(5))
    assert not np.array_equal(first, substream(1, "fig2", 4).random(5))
    assert not np.array_equal(first, substream(2, "fig2", 3).random(5))
    assert not np.array_equal(first, substream(1, "fig1", 3).random(5))


def test_experiment_key():
    assert experiment_key("spread") == experiment_key("spread")
    assert 0 <= experiment_key("spread") < 2 ** 32
    assert experiment_key("spread") != experiment_key("fig1")


def test_render_csv():
    text = render_csv(("a", "b", "c"), [(1, 0.1, True), (np.int64(2), np.float64(0.5), False)])
    assert text == "a,b,c\n1,0.1,1\n2,0.5,0\n"
    assert render_csv(("x",), []) == "x\n"


def test_write_files(tmp_path):
    path = tmp_path / "nested" / "out.csv"
    write_csv(str(path), ("k", "v"), [(0, 1.5)])
    assert path.read_text() == "k,v\n0,1.5\n"
    report = tmp_path / "report.json"
    write_json_file(str(report), {"n": 3})
    assert '"n": 3' in report.read_text()


def test_read_lines_file(tmp_path):
    path = tmp_path / "edges.txt"
    path.write_text("0 1\n1 2\n")
    assert read_lines_file(str(path)) == ["0 1", "1 2"]
    with pytest.raises(DataFileError):
        read_lines_file(str(tmp_path / "missing.txt"))


def test_formatters():
    assert format_value(True) == "true"
    assert format_value(0.1) == "0.1"
    assert format_value(np.float64(0.25)) == "0.25"
    assert format_value("sign") == "sign"
    assert format_percentage(0.2032) == "20.3%"
    assert format_percentage(None) == ""
    assert format_key_values([("a", 1), ("b", False)]) == "a=1\nb=false"
    assert format_counts({"s": 3, "r1": 5}) == "s=3 r1=5"


def test_format_records():
    output = ExperimentOutput(header=("k",))
    output.add("fig3", "n=10", "rounds", 12)
    output.add("fig3", "n=10", "stop_reason", "sign")
    assert format_records(output.records) == "rounds=12\nstop_reason=sign"


def test_run_record_rejects_non_finite_values():
    with pytest.raises(InvalidInputError):
        RunRecord(experiment="fig2", parameters="", metric="slope", value=float("nan"))
    assert RunRecord(experiment="fig3", parameters="", metric="stop_reason", value="sign").key == "stop_reason"


def test_validators():
    assert is_int(3) and is_int(np.int64(3)) and not is_int(True) and not is_int(3.0)
    assert is_finite_number(0.5) and not is_finite_number(float("inf")) and not is_finite_number("1")
    assert require_int(4, "x") == 4
    with pytest.raises(InvalidInputError):
        require_int(0, "x")
    assert require_number(2, "y", minimum=0.0, strict_minimum=True) == 2.0
    with pytest.raises(InvalidInputError):
        require_number(0.0, "y", minimum=0.0, strict_minimum=True)
    with pytest.raises(InvalidInputError):
        require_number(1.5, "y", maximum=1.0)
    assert validate_node_ids([0, 4], 5) == []
    assert len(validate_node_ids([5, "a", -1], 5)) == 3
    assert validate_seed_counts(10, 3, 4) == []
    assert len(validate_seed_counts(10, -1, 12)) == 2


def test_errors_carry_details():
    error = InvalidInputError("bad", details={"field": "x"})
    assert isinstance(error, GossipError)
    assert error.message == "bad"
    assert error.details == {"field": "x"}


def test_experiment_config_from_args():
    args = argparse.Namespace(
        command="fig4", nodes=40, l=2, l_list=None, seeds1=None, seeds2=None, trials=None, rounds=100,
        mu=-0.01, sigma=1.0, dt=None, seed=5, out="x.csv", graph=None, settings=[(1, 39), (2, 38), (3, 37)],
        stop="budget", workers=None, json=False,
    )
    cfg = ExperimentConfig.from_args(args)
    assert cfg.command == "fig4" and cfg.nodes == 40 and cfg.l == 2
    assert cfg.l_list == []
    assert cfg.master_seed == 5
    assert cfg.settings == [(1, 39), (2, 38), (3, 37)]
    assert cfg.graph_path is None and not cfg.json_output


def test_experiment_config_seed_defaults_to_configuration():
    assert ExperimentConfig(command="bounds").master_seed is None
    args = argparse.Namespace(
        command="bounds", nodes=10, l=1, l_list=None, seeds1=None, seeds2=None, trials=None, rounds=None,
        mu=-0.01, sigma=1.0, dt=None, seed=None, out=None, graph=None, settings=None,
        stop="sign", workers=None, json=False,
    )
    assert ExperimentConfig.from_args(args).master_seed is None
    assert ExperimentService(master_seed=None).master_seed == config.master_seed
    assert ExperimentService(master_seed=0).master_seed == 0
