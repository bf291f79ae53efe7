import os

import orjson
import pytest

from partlab.cli import EXIT_BUDGET, EXIT_FAILED, EXIT_OK, EXIT_USAGE, run_command
from partlab.constants import CACHE_ENV_VAR
from partlab.file_util import read_table_cache

FIXTURE_DIR = "fixtures/test-cfgs"


def run(capsys, *argv: str) -> tuple[int, list[str], str]:
    code = run_command(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.splitlines(), captured.err


@pytest.fixture(autouse=True)
def no_cache(monkeypatch):
    monkeypatch.delenv(CACHE_ENV_VAR, raising=False)


def test_seq_csv(capsys):
    code, lines, _ = run(capsys, "seq", "pa", "--to", "7", "--format", "csv")
    assert code == EXIT_OK
    assert lines[:7] == ["1,1", "2,1", "3,2", "4,2", "5,3", "6,4", "7,4"]
    assert lines[-1] == "# summary command=seq selector=pa count=7"


def test_seq_text_and_json(capsys):
    code, lines, _ = run(capsys, "seq", "pd", "--from", "100", "--to", "100")
    assert code == EXIT_OK
    assert lines[0] == "pd(100) = 444793"
    code, lines, _ = run(capsys, "seq", "d", "--from", "12", "--format", "json")
    assert code == EXIT_OK
    assert orjson.loads(lines[0]) == {"sequence": "d", "n": 12, "value": "6"}
    assert orjson.loads(lines[-1]) == {
        "summary": {"command": "seq", "selector": "d", "count": 1}
    }


def test_enumerate_and_gf(capsys):
    code, lines, _ = run(capsys, "enumerate", "almost", "--from", "7")
    assert code == EXIT_OK
    assert lines[:4] == ["7 = 1+6", "7 = 2+5", "7 = 3+4", "7 = 7"]
    code, lines, _ = run(capsys, "gf", "euler_product", "--to", "5", "--format", "csv")
    assert code == EXIT_OK
    assert lines[:6] == ["0,1", "1,-1", "2,-1", "3,0", "4,0", "5,1"]
    code, lines, _ = run(
        capsys, "gf", "uchimura", "--from", "6", "--variant", "paper", "--format", "csv"
    )
    assert lines[0] == "6,-4"


def test_verify_sylvester(capsys):
    code, lines, _ = run(
        capsys, "verify", "sylvester", "--from", "1", "--to", "1000", "--format", "csv"
    )
    assert code == EXIT_OK
    records = [line for line in lines if not line.startswith("#")]
    assert len(records) == 1000
    assert all(line.startswith("thm4,") and line.endswith(",true") for line in records)
    assert records[999] == "thm4,1000,4,4,true"


def test_verify_signed_smallest_variants(capsys):
    args = ["verify", "thm14", "--from", "3", "--to", "50", "--format", "csv"]
    code, lines, err = run(capsys, *args)
    assert code == EXIT_OK
    assert "thm14[derived]=48/48" in lines[-1]
    assert "Erratum candidate: thm14" in err
    code, lines, _ = run(capsys, *args, "--variant", "paper")
    assert code == EXIT_FAILED
    assert "thm14,7,-1,0,false" in lines


def test_verify_pa_closed_form_erratum(capsys):
    code, lines, _ = run(
        capsys, "verify", "pa_closed", "--from", "14", "--variant", "paper"
    )
    assert code == EXIT_FAILED
    assert lines[0].startswith("FAIL thm12 n=14 lhs=10 rhs[paper]=11 rhs[derived]=10")
    code, lines, _ = run(capsys, "verify", "thm12", "--from", "3", "--to", "200")
    assert code == EXIT_OK


def test_verify_json_schema(capsys):
    code, lines, _ = run(capsys, "verify", "thm14", "--from", "7", "--format", "json")
    assert code == EXIT_OK
    assert orjson.loads(lines[0]) == {
        "theorem": "thm14",
        "n": 7,
        "lhs": "-1",
        "rhs": {"paper": "0", "derived": "-1"},
        "pass": True,
    }
    code, lines, _ = run(capsys, "verify", "thm3", "--from", "6", "--format", "json")
    record = orjson.loads(lines[0])
    assert record == {"theorem": "thm3", "n": 6, "lhs": "4", "rhs": "4", "pass": True}
    summary = orjson.loads(lines[-1])["summary"]
    assert (summary["total"], summary["passed"], summary["failed"]) == (1, 1, 0)
    assert summary["seed"] == 0


def test_verify_rejections(capsys):
    code, _, err = run(capsys, "verify", "thm99")
    assert code == EXIT_USAGE
    assert "Usage" in err
    code, _, _ = run(capsys, "verify", "thm12", "--from", "1", "--to", "5")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "verify", "thm1", "--from", "9", "--to", "3")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "verify", "thm1", "--from", "1", "--to", "200")
    assert code == EXIT_BUDGET
    code, _, _ = run(capsys, "verify", "--colour", "red")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "seq", "pa", "--from", "0")
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "seq", "pa", "--from", "3", "--log-level", "chatty")
    assert code == EXIT_USAGE
    assert "Unknown log level" in err


def test_verify_all_clips_ranges(capsys):
    code, lines, _ = run(capsys, "verify", "all", "--from", "1", "--to", "16", "--weights", "4")
    assert code == EXIT_OK
    theorems = {line.split()[1].split(":")[0] for line in lines if not line.startswith("#")}
    assert {"thm1", "thm6", "thm12", "thm14", "lemmas", "h_map", "derivation"} <= theorems
    assert not any(line.startswith("PASS thm12 n=1 ") for line in lines)


def test_determinism_and_parallel(capsys):
    args = ["verify", "thm6", "--from", "3", "--to", "16", "--weights", "6", "--format", "csv"]
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first[0] == second[0] == EXIT_OK
    assert first[1] == second[1]
    reseeded = run(capsys, *args, "--seed", "1")
    assert reseeded[1] != first[1]

    args = ["verify", "thm13", "--from", "3", "--to", "60", "--format", "csv"]
    serial = run(capsys, *args)
    parallel = run(capsys, *args, "--jobs", "2")
    assert serial[0] == parallel[0] == EXIT_OK
    assert serial[1] == parallel[1]


def test_cache_from_environment(capsys, monkeypatch, tmp_path):
    path = os.path.join(tmp_path, "pd.txt")
    monkeypatch.setenv(CACHE_ENV_VAR, path)
    code, _, _ = run(capsys, "verify", "thm12", "--from", "3", "--to", "30")
    assert code == EXIT_OK
    assert read_table_cache(path).order == 31


def test_config_file(capsys):
    code, lines, _ = run(capsys, "verify", "--config", os.path.join(FIXTURE_DIR, "top.yaml"))
    assert code == EXIT_OK
    records = [line for line in lines if not line.startswith("#")]
    assert [line.split(",")[:2] for line in records] == [
        ["thm14", str(n)] for n in range(3, 11)
    ]
    assert "seed=3" in lines[-1]
    # flags beat the file
    code, lines, _ = run(
        capsys, "verify", "--config", os.path.join(FIXTURE_DIR, "top.yaml"), "--to", "4"
    )
    assert len([line for line in lines if not line.startswith("#")]) == 2


def test_asymptotic(capsys):
    code, lines, _ = run(capsys, "asymptotic", "--from", "14", "--format", "csv")
    assert code == EXIT_OK
    n, exact, formula, _, _ = lines[0].split(",")
    assert (n, exact, formula) == ("14", "10", "11")
    code, _, _ = run(capsys, "asymptotic", "pa", "--from", "2")
    assert code == EXIT_USAGE


def test_shared_flags_on_every_command(capsys, tmp_path):
    shared = ["--jobs", "2", "--seed", "5", "--cache", os.path.join(tmp_path, "pd.txt")]
    for argv in (
        ["seq", "pa", "--to", "7", "--format", "csv"],
        ["enumerate", "almost", "--from", "7"],
        ["gf", "divisor", "--to", "6", "--format", "csv"],
        ["asymptotic", "pd", "--from", "20", "--to", "22", "--format", "csv"],
    ):
        plain = run(capsys, *argv)
        flagged = run(capsys, *argv, *shared, "--variant", "derived")
        assert plain[0] == flagged[0] == EXIT_OK, argv
        assert plain[1] == flagged[1], argv
    code, lines, _ = run(
        capsys, "gf", "uchimura", "--to", "3", "--variant", "paper", "--format", "csv"
    )
    assert lines[:4] == ["0,0", "1,-1", "2,-2", "3,-2"]
