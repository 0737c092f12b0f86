import json
from pathlib import Path

import numpy as np
import pytest

from signlab.cli import main, read_report_config, run_config


def run(args):
    return main([str(a) for a in args])


def read_rows(path: Path):
    lines = [l for l in path.read_text().splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    return header, [l.split(",") for l in lines[1:]]


def test_words_liouville_k3(tmp_path):
    out = tmp_path / "words.csv"
    rc = run(["words", "--model", "liouville", "--n", "1e6", "--k", "3",
              "--output", out, "--no-plot"])
    assert rc == 0
    header, rows = read_rows(out)
    assert header[:3] == ["k", "raw_count", "positive_density_count"]
    assert rows[0][0] == "3" and rows[0][1] == "8" and rows[0][2] == "8"


def test_vmv_closed_form(tmp_path):
    out = tmp_path / "vmv.csv"
    rc = run(["vmv", "--k", "10", "--s", "2", "--t", "2",
              "--output", out, "--no-plot"])
    assert rc == 0
    header, rows = read_rows(out)
    assert rows[0][3] == "190"  # 2*100 - 10
    assert rows[0][4] == "190"


def test_report_determinism(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["words", "--model", "sawin", "--degree", "1", "--seed", "7",
            "--n", "20000", "--k", "4,6", "--no-plot"]
    assert run(args + ["--output", a]) == 0
    assert run(args + ["--output", b]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_echo_roundtrip(tmp_path):
    out = tmp_path / "report.csv"
    assert run(["words", "--model", "periodic", "--pattern", "1,-1,1",
                "--n", "50000", "--k", "5", "--output", out, "--no-plot"]) == 0
    cfg = read_report_config(out)
    assert cfg["subcommand"] == "words"
    # feeding the echoed config back reproduces the report byte for byte
    configs = tmp_path / "configs.json"
    configs.write_text(json.dumps([cfg]))
    outdir = tmp_path / "batch"
    assert run(["batch", "--configs", configs, "--output-dir", outdir,
                "--no-plot"]) == 0
    assert (outdir / "run_000.csv").read_bytes() == out.read_bytes()


def test_json_mirror(tmp_path):
    out = tmp_path / "report.json"
    assert run(["vmv", "--k", "6,8", "--s", "2", "--t", "2",
                "--format", "json", "--output", out, "--no-plot"]) == 0
    doc = json.loads(out.read_text())
    assert doc["schema"][0] == "k"
    assert doc["rows"][0][3] == 2 * 36 - 6
    assert doc["config"]["subcommand"] == "vmv"


def test_batch_empty_and_failure(tmp_path):
    configs = tmp_path / "empty.json"
    configs.write_text("[]")
    outdir = tmp_path / "b1"
    assert run(["batch", "--configs", configs, "--output-dir", outdir]) == 0
    assert (outdir / "summary.csv").read_text().startswith("index,")

    configs2 = tmp_path / "bad.json"
    configs2.write_text(json.dumps([
        {"subcommand": "vmv", "ks": [4], "s": 2, "t": 2},
        {"subcommand": "nope"},
    ]))
    outdir2 = tmp_path / "b2"
    assert run(["batch", "--configs", configs2, "--output-dir", outdir2]) == 1
    text = (outdir2 / "summary.csv").read_text()
    assert "ok" in text and "error" in text


def test_batch_identical_rows(tmp_path):
    cfg = {"subcommand": "vmv", "ks": [5], "s": 2, "t": 2}
    configs = tmp_path / "two.json"
    configs.write_text(json.dumps([cfg, dict(cfg)]))
    outdir = tmp_path / "b"
    assert run(["batch", "--configs", configs, "--output-dir", outdir,
                "--no-plot"]) == 0
    assert (outdir / "run_000.csv").read_bytes() == (
        outdir / "run_001.csv"
    ).read_bytes()


def test_sieve_subcommand(tmp_path):
    out = tmp_path / "sieve.csv"
    cache = tmp_path / "sieve.bin"
    assert run(["sieve", "--n", "100000", "--cache", cache,
                "--output", out, "--no-plot"]) == 0
    header, rows = read_rows(out)
    assert header[1] == "prime_count"
    assert rows[0][1] == "9592"  # pi(1e5)
    assert cache.exists()
    from signlab import load_sieve

    assert load_sieve(cache).limit == 100000


def test_chowla_subcommand(tmp_path):
    out = tmp_path / "chowla.csv"
    assert run(["chowla", "--n", "1e5", "--shifts", "0,1",
                "--output", out, "--no-plot"]) == 0
    header, rows = read_rows(out)
    assert header == ["n", "shifts", "value_re", "value_im", "abs_value"]
    assert abs(float(rows[0][2])) < 0.2


def test_fourier_subcommand_grid_and_cantor(tmp_path):
    out = tmp_path / "fourier.csv"
    assert run(["fourier", "--model", "liouville", "--n", "20000",
                "--h", "4,8", "--freq-set", "grid",
                "--output", out, "--no-plot"]) == 0
    header, rows = read_rows(out)
    assert header == ["H", "statistic", "error_bound", "n", "set_id"]
    assert float(rows[0][1]) > float(rows[1][1])  # decreasing in H
    out2 = tmp_path / "cantor.csv"
    assert run(["fourier", "--model", "liouville", "--n", "5000",
                "--h", "8", "--freq-set", "cantor:depth=4",
                "--output", out2, "--no-plot"]) == 0
    _, rows2 = read_rows(out2)
    assert 0.0 < float(rows2[0][1]) <= 1.0
    assert float(rows2[0][2]) <= 0.02 + 0.01


def test_periodic_subcommand(tmp_path):
    out = tmp_path / "periodic.csv"
    assert run(["periodic", "--model", "liouville", "--n", "20000",
                "--h", "8,32", "--d", "4", "--output", out, "--no-plot"]) == 0
    _, rows = read_rows(out)
    assert float(rows[0][1]) > float(rows[1][1])


def test_phase_sum_subcommand(tmp_path):
    out = tmp_path / "ps.csv"
    assert run(["phase-sum", "--alpha", "1.4142135", "--beta", "0", "--d1", "0",
                "--d2", "0", "--p-limit", "1e5", "--output", out,
                "--no-plot"]) == 0
    _, rows = read_rows(out)
    assert float(rows[0][7]) == 1.0  # |mean of e(0)|


def test_entropy_subcommand(tmp_path):
    out = tmp_path / "entropy.csv"
    assert run(["entropy", "--n", "1e6", "--m", "4", "--primes", "3,5",
                "--output", out, "--no-plot"]) == 0
    header, rows = read_rows(out)
    assert header == ["p", "m", "n", "mi_nats", "window_entropy_nats"]
    assert all(float(r[3]) < 0.01 for r in rows)


def test_dilation_subcommand(tmp_path):
    out = tmp_path / "dil.csv"
    assert run(["dilation", "--n", "1e6", "--pattern", "1", "--p", "2",
                "--output", out, "--no-plot"]) == 0
    _, rows = read_rows(out)
    assert float(rows[0][3]) < 0.05


def test_model_export_csv_and_i8(tmp_path):
    out = tmp_path / "seq.csv"
    assert run(["model-export", "--model", "thuemorse", "--n", "16",
                "--output", out, "--no-plot"]) == 0
    header, rows = read_rows(out)
    assert header == ["n", "value_re", "value_im"]
    assert rows[0] == ["1", "-1", "0"]

    raw = tmp_path / "seq.i8"
    assert run(["model-export", "--model", "thuemorse", "--n", "16",
                "--data-format", "i8", "--output", raw, "--no-plot"]) == 0
    vals = np.frombuffer(raw.read_bytes(), dtype=np.int8)
    # digit sums of 1..4 are 1, 1, 2, 1
    assert list(vals[:4]) == [-1, -1, 1, -1]
    sidecar = raw.with_suffix(raw.suffix + ".config.json")
    assert json.loads(sidecar.read_text())["model"] == "thuemorse"


def test_plot_rendering(tmp_path):
    out = tmp_path / "words.csv"
    assert run(["words", "--model", "periodic", "--pattern", "1,-1",
                "--n", "10000", "--k", "2,3,4", "--output", out]) == 0
    assert out.with_suffix(".png").exists()


def test_validation_exit_code(tmp_path):
    rc = run(["words", "--model", "periodic", "--n", "1000", "--k", "3",
              "--output", tmp_path / "x.csv"])
    assert rc == 2  # missing --pattern


def test_unknown_model_rejected():
    with pytest.raises(SystemExit):
        main(["words", "--model", "wat", "--n", "100", "--k", "2"])


def test_run_config_rejects_unknown_subcommand(tmp_path):
    with pytest.raises(ValueError):
        run_config({"subcommand": "nope"}, tmp_path / "x.csv")
