# test/test_cli.py
# Sous-commandes de bout en bout: sorties, fichiers et codes de sortie

import json
import time

import pandas as pd
import pytest

from hk_consensus.core.constants import SWEEP_CSV_HEADER, ExitCodes
from hk_consensus.core.utils.seeding import cell_seed
from hk_consensus.main import run


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    monkeypatch.setenv("HK_CONSENSUS_WORKERS", "1")


class TestParser:
    def test_version(self, capsys):
        assert run(["--version"]) == ExitCodes.OK
        assert "0.1.0" in capsys.readouterr().out

    @pytest.mark.parametrize("argv", [[], ["frobnicate"], ["simulate", "--bogus"]])
    def test_usage_errors(self, argv):
        assert run(argv) == ExitCodes.USAGE


class TestSimulate:
    def test_exact_consensus(self, capsys):
        code = run(["simulate", "--opinions", "0.0,0.4,0.8", "--eps", "0.5", "--mode", "exact-rational"])
        out = capsys.readouterr().out.splitlines()
        assert code == ExitCodes.OK
        assert out == [
            "status: converged",
            "consensus: true",
            "converged_at: 2",
            "steps: 2",
            "clusters: 1",
            "  cluster 0: value=2/5 size=3 spread=0",
        ]

    def test_two_clusters(self, capsys):
        assert run(["simulate", "--opinions", "0.1,0.9", "--eps", "0.5"]) == ExitCodes.OK
        out = capsys.readouterr().out
        assert "consensus: false" in out
        assert "converged_at: 0" in out
        assert "clusters: 2" in out

    def test_random_profile(self, capsys):
        assert run(["simulate", "--n", "20", "--eps", "1.0", "--seed", "3"]) == ExitCodes.OK
        assert "consensus: true" in capsys.readouterr().out

    def test_non_convergence(self, capsys):
        code = run(["simulate", "--opinions", "0.0,0.4,0.8", "--eps", "0.5", "--max-steps", "1"])
        assert code == ExitCodes.NON_CONVERGENCE
        assert "status: non-converged" in capsys.readouterr().out

    def test_trace(self, tmp_path):
        trace = tmp_path / "trace.jsonl"
        argv = ["simulate", "--opinions", "0.0,0.4,0.8", "--eps", "0.5", "--trace", str(trace)]
        assert run(argv) == ExitCodes.OK
        lines = [json.loads(line) for line in trace.read_text(encoding="utf-8").splitlines()]
        assert lines[0]['metadata']['command'] == "simulate"
        assert [line['t'] for line in lines[1:]] == [0, 1, 2]
        assert all("opinions" not in line for line in lines[1:])
        assert lines[-1]['cluster_count'] == 1

    def test_trace_with_opinions(self, tmp_path):
        trace = tmp_path / "trace.jsonl"
        argv = ["simulate", "--opinions", "0.1,0.9", "--eps", "0.5", "--trace", str(trace), "--trace-opinions"]
        assert run(argv) == ExitCodes.OK
        lines = [json.loads(line) for line in trace.read_text(encoding="utf-8").splitlines()]
        assert lines[1]['opinions'] == [0.1, 0.9]
        assert lines[1]['connected'] is False

    def test_asynchronous(self, capsys):
        argv = ["simulate", "--opinions", "0.1,0.9", "--eps", "0.5", "--async", "--seed", "1"]
        assert run(argv) == ExitCodes.OK
        assert "converged_at: 0" in capsys.readouterr().out

    @pytest.mark.parametrize("argv", [
        ["simulate", "--opinions", "0.1,0.9"],
        ["simulate", "--opinions", "0.1,1.5", "--eps", "0.5"],
        ["simulate", "--opinions", "0.1,0.9", "--n", "3", "--eps", "0.5"],
        ["simulate", "--opinions", "0.1,0.9", "--eps", "0"],
        ["simulate", "--eps", "0.5"],
    ])
    def test_invalid_input(self, argv):
        assert run(argv) == ExitCodes.USAGE


class TestSweep:
    ARGV = ["sweep", "--n", "2,3", "--eps", "0.5:1.0:0.25", "--trials", "10", "--seed", "1"]

    def test_csv_and_metadata(self, tmp_path):
        output = tmp_path / "grid.csv"
        assert run(self.ARGV + ["--output", str(output)]) == ExitCodes.OK
        frame = pd.read_csv(output)
        assert list(frame.columns) == SWEEP_CSV_HEADER
        assert len(frame) == 6
        assert list(zip(frame['n'], frame['epsilon'])) == [
            (2, 0.5), (2, 0.75), (2, 1.0), (3, 0.5), (3, 0.75), (3, 1.0)
        ]
        assert (frame['trials'] == 10).all()
        assert (frame['master_seed'] == 1).all()
        assert frame.loc[0, 'cell_seed'] == cell_seed(1, 2, 0.5)
        assert frame['cell_seed'].nunique() == 6
        assert b"\r\n" in output.read_bytes()
        meta = json.loads((tmp_path / "grid.csv.meta.json").read_text(encoding="utf-8"))
        assert meta['config']['n'] == [2, 3]
        assert meta['master_seed'] == 1

    def test_reruns_are_identical(self, tmp_path):
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        assert run(self.ARGV + ["--output", str(first)]) == ExitCodes.OK
        assert run(self.ARGV + ["--output", str(second), "--threads", "2"]) == ExitCodes.OK
        assert first.read_bytes() == second.read_bytes()
        assert (tmp_path / "a.csv.meta.json").read_bytes() == (tmp_path / "b.csv.meta.json").read_bytes()

    def test_stdout(self, capsys):
        assert run(["sweep", "--n", "2", "--eps", "1.0", "--trials", "5"]) == ExitCodes.OK
        out = capsys.readouterr().out
        assert out.startswith(",".join(SWEEP_CSV_HEADER))

    def test_config_file(self, tmp_path, capsys):
        conf = tmp_path / "sweep.conf"
        conf.write_text("n = 2\neps = 1.0\ntrials = 4\n", encoding="utf-8")
        assert run(["sweep", "--config", str(conf)]) == ExitCodes.OK
        assert len(capsys.readouterr().out.splitlines()) == 2

    def test_missing_grid(self):
        assert run(["sweep", "--eps", "0.5"]) == ExitCodes.USAGE

    @pytest.mark.slow
    def test_two_agents_closed_form_in_time(self, tmp_path):
        output = tmp_path / "two.csv"
        started = time.perf_counter()
        code = run(["sweep", "--n", "2", "--eps", "0.5", "--trials", "100000", "--seed", "9", "--output", str(output)])
        elapsed = time.perf_counter() - started
        frame = pd.read_csv(output)
        assert code == ExitCodes.OK
        assert len(frame) == 1
        assert frame.loc[0, 'p_hat'] == pytest.approx(0.75, abs=0.01)
        assert elapsed < 10.0


class TestVerify:
    def test_unknown_suite(self):
        assert run(["verify", "--suite", "nosuch"]) == ExitCodes.USAGE

    def test_zero_cases(self, capsys):
        assert run(["verify", "--suite", "matching", "--cases", "0"]) == ExitCodes.OK
        report = json.loads(capsys.readouterr().out)
        assert report['passed'] is True
        assert report['reports'][0]['cases'] == 0

    def test_report_file(self, tmp_path):
        output = tmp_path / "report.json"
        argv = ["verify", "--suite", "matching,gap-criterion", "--cases", "50", "--seed", "7", "--output", str(output)]
        assert run(argv) == ExitCodes.OK
        report = json.loads(output.read_text(encoding="utf-8"))
        assert [r['suite'] for r in report['reports']] == ["matching", "gap-criterion"]
        assert report['metadata']['config']['cases'] == 50
        assert all(r['violation_count'] == 0 for r in report['reports'])

    @pytest.mark.slow
    def test_all_suites_at_scale(self, tmp_path):
        output = tmp_path / "all.json"
        assert run(["verify", "--suite", "all", "--cases", "10000", "--seed", "7", "--output", str(output)]) == ExitCodes.OK
        report = json.loads(output.read_text(encoding="utf-8"))
        assert report['passed'] is True
        assert len(report['reports']) == 10


class TestBound:
    def test_two_agents_pass(self, capsys):
        assert run(["bound", "--n", "2", "--eps", "0.5", "--trials", "2000", "--seed", "3"]) == ExitCodes.OK
        out = capsys.readouterr().out
        assert "bound: 1\n" in out
        assert "exact: 0.25\n" in out
        assert "verdict: PASS" in out

    def test_bound_exceeded_at_moderate_n(self, capsys):
        code = run(["bound", "--n", "10", "--eps", "0.3", "--trials", "2000", "--seed", "3"])
        out = capsys.readouterr().out
        assert code == ExitCodes.VERIFICATION_FAILED
        assert "bound: 0.05764801" in out
        assert "verdict: FAIL" in out

    def test_domain_error(self):
        assert run(["bound", "--n", "10", "--eps", "1.5"]) == ExitCodes.USAGE

    def test_csv_row(self, tmp_path):
        output = tmp_path / "bound.csv"
        argv = ["bound", "--n", "2", "--eps", "0.5", "--trials", "100", "--output", str(output)]
        assert run(argv) == ExitCodes.OK
        frame = pd.read_csv(output)
        assert frame.loc[0, 'verdict'] == "PASS"
        assert frame.loc[0, 'bound'] == 1.0
