import csv
import io
import math
import subprocess
import sys

import pytest

from zenoarray.cli import CsvTable, main, parse_config, run
from zenoarray.config import ConfigError
from zenoarray.rng import DEFAULT_SEED

HEADERS = {
    "ideal": "N,p1",
    "dispersion": "N,p1_mean,stderr,p1_ideal,p1_expected",
    "thermal": "n,p1_exact,p1_approx,leaked",
    "trajectory": "n,p1",
    "mcwf": "n,p1_mcwf,stderr,p1_bernoulli,p1_eq11",
    "critical": "gamma,n_real,n_int,p1_at_max,asymptotic_eq12,asymptotic_paper",
}

SMALL = {
    "ideal": ["--n-max", "20"],
    "dispersion": ["--n-max", "30", "--n-step", "7", "--samples", "200"],
    "thermal": ["--beamsplitters", "20"],
    "trajectory": ["--beamsplitters", "50", "--gamma", "0.01"],
    "mcwf": ["--beamsplitters", "30", "--trajectories", "400"],
    "critical": [],
}


def rows_of(text):
    return list(csv.reader(io.StringIO(text)))


def run_cli(argv, capsys):
    assert main(argv) == 0
    return capsys.readouterr().out


@pytest.mark.parametrize("command", sorted(HEADERS))
def test_headers_are_stable(command, capsys):
    out = run_cli([command, *SMALL[command]], capsys)
    assert out.splitlines()[0] == HEADERS[command]
    assert out.endswith("\n") and "\r" not in out


@pytest.mark.parametrize("command", sorted(HEADERS))
def test_probabilities_in_range(command, capsys):
    rows = rows_of(run_cli([command, *SMALL[command]], capsys))
    header, body = rows[0], rows[1:]
    for row in body:
        for name, value in zip(header, row):
            if name.startswith("p1") or name == "leaked":
                assert 0.0 <= float(value) <= 1.0
            if name == "stderr":
                assert float(value) >= 0.0


def test_ideal_rows(capsys):
    rows = rows_of(run_cli(["ideal", "--n-max", "3"], capsys))[1:]
    assert [int(r[0]) for r in rows] == [1, 2, 3]
    assert float(rows[0][1]) == pytest.approx(0.0, abs=1e-30)
    assert float(rows[1][1]) == pytest.approx(0.25, abs=1e-12)
    assert float(rows[2][1]) == pytest.approx(0.421875, abs=1e-12)


def test_twelve_significant_digits():
    table = CsvTable(["x", "y"], [[1, 1 / 3], [2, 0.25]])
    assert table.to_text() == "x,y\n1,0.333333333333\n2,0.25\n"


def test_critical_single_gamma(capsys):
    rows = rows_of(run_cli(["critical", "--gamma", "0.001"], capsys))
    assert len(rows) == 2
    assert abs(int(rows[1][2]) - 50) <= 1
    assert float(rows[1][5]) == pytest.approx(0.5 * math.sqrt(math.pi / 0.001), rel=1e-10)


def test_critical_rows_sorted(capsys):
    rows = rows_of(run_cli(["critical", "--gamma", "0.001", "0.0001", "0.0005"], capsys))[1:]
    assert [float(r[0]) for r in rows] == [0.0001, 0.0005, 0.001]


def test_trajectory_matches_ensemble_member(capsys):
    rows = rows_of(run_cli(["trajectory", "--beamsplitters", "50", "--gamma", "0.02",
                            "--trajectory-index", "4", "--seed", "9"], capsys))[1:]
    from zenoarray.mcwf import McwfSpec, trajectory

    rec = trajectory(McwfSpec(50, 0.02, seed=9), 4)
    assert [int(r[1]) for r in rows] == rec.survival.tolist()


def test_parse_mcwf_flags():
    cfg = parse_config(["mcwf", "--beamsplitters", "50", "--gamma", "0.001",
                        "--trajectories", "5000", "--seed", "42"])
    assert cfg.command == "mcwf"
    assert cfg.params == {"beamsplitters": 50, "gamma": 0.001, "theta": None, "trajectories": 5000}
    assert cfg.seed == 42 and cfg.workers == 1 and cfg.output is None


def test_defaults():
    cfg = parse_config(["dispersion"])
    assert cfg.seed == DEFAULT_SEED
    assert cfg.params["sigma"] == 0.01 and cfg.params["samples"] == 5000


def test_random_seed_opt_in():
    a = parse_config(["mcwf", "--seed", "random"]).seed
    b = parse_config(["mcwf", "--seed", "random"]).seed
    assert 0 <= a < 2**64 and a != b


def test_negative_gamma_names_key(capsys):
    assert main(["critical", "--gamma", "-1"]) == 2
    assert "gamma" in capsys.readouterr().err
    with pytest.raises(ConfigError) as err:
        parse_config(["critical", "--gamma", "-1"])
    assert err.value.key == "gamma"


@pytest.mark.parametrize(
    "argv, key",
    [
        (["mcwf", "--beamsplitters", "0"], "beamsplitters"),
        (["mcwf", "--beamsplitters", "1", "--gamma", "0.1"], "gamma"),
        (["mcwf", "--trajectories", "many"], "trajectories"),
        (["dispersion", "--sigma", "-0.1"], "sigma"),
        (["ideal", "--n-min", "5", "--n-max", "2"], "n_max"),
        (["thermal", "--nbar", "-1"], "nbar"),
        (["mcwf", "--seed", "-3"], "seed"),
        (["mcwf", "--workers", "0"], "workers"),
        (["critical", "--gamma", "5"], "gamma"),
    ],
)
def test_invalid_values(argv, key):
    with pytest.raises(ConfigError) as err:
        parse_config(argv)
    assert err.value.key == key


def test_config_file_and_override(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# dispersion settings\nsigma = 0.01\nsamples = 100  # small\nn-max = 5\n\n")
    cfg = parse_config(["dispersion", "--config", str(path)])
    assert cfg.params["sigma"] == 0.01 and cfg.params["samples"] == 100 and cfg.params["n_max"] == 5
    cfg = parse_config(["dispersion", "--config", str(path), "--sigma", "0.002"])
    assert cfg.params["sigma"] == 0.002


def test_config_file_unknown_key(tmp_path, capsys):
    path = tmp_path / "bad.cfg"
    path.write_text("sigma = 0.01\ngamma = 0.3\n")
    with pytest.raises(ConfigError) as err:
        parse_config(["dispersion", "--config", str(path)])
    assert err.value.key == "gamma"
    assert main(["dispersion", "--config", str(path)]) == 2
    assert "gamma" in capsys.readouterr().err


def test_config_file_bad_line(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("sigma 0.01\n")
    with pytest.raises(ConfigError):
        parse_config(["dispersion", "--config", str(path)])


def test_config_file_booleans_and_lists(tmp_path):
    path = tmp_path / "t.cfg"
    path.write_text("renormalize = yes\nnbar = 0.02\n")
    assert parse_config(["thermal", "--config", str(path)]).params["renormalize"] is True
    path.write_text("gamma = 0.001, 0.0001\nseed = 5\nworkers = 2\n")
    cfg = parse_config(["critical", "--config", str(path)])
    assert cfg.params["gamma"] == [0.001, 0.0001] and cfg.seed == 5 and cfg.workers == 2


def test_unknown_flag_exits_nonzero():
    with pytest.raises(SystemExit) as exc:
        parse_config(["mcwf", "--sigma", "0.1"])
    assert exc.value.code != 0


def test_output_file_written(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["critical", "--output", str(out)]) == 0
    assert out.read_text().splitlines()[0] == HEADERS["critical"]
    assert [p.name for p in tmp_path.iterdir()] == ["c.csv"]


def test_unwritable_output_leaves_nothing(tmp_path, capsys):
    target = tmp_path / "missing" / "x.csv"
    assert main(["ideal", "--output", str(target)]) == 1
    assert "cannot write" in capsys.readouterr().err
    assert not target.exists()


@pytest.mark.parametrize("command", sorted(HEADERS))
def test_byte_identical_runs(command, tmp_path):
    outputs = []
    for i, workers in enumerate(["1", "1", "8"]):
        path = tmp_path / f"{i}.csv"
        assert main([command, *SMALL[command], "--seed", "123", "--workers", workers,
                     "--output", str(path)]) == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "zenoarray", "ideal", "--n-max", "2"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "N,p1\n1,3.74939945665e-33\n2,0.25\n"


def test_run_returns_table():
    table = run(parse_config(["thermal", "--beamsplitters", "4", "--nbar", "0"]))
    assert table.header == HEADERS["thermal"].split(",")
    assert [r[0] for r in table.rows] == [1, 2, 3, 4]
    assert all(r[3] == 0.0 for r in table.rows)
