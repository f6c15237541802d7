import csv
import json

import numpy as np
import pytest

import tfdenoise.cli as cli
from tfdenoise.core import Role, Signal, read_grid, read_signal_csv, write_grid, write_signal_csv
from tfdenoise.kernels import KernelSpec, sample_kernel
from tfdenoise.verify import CheckResult
from tfdenoise.wvd import wvd


@pytest.fixture
def files(tmp_path):
    clean, noisy = tmp_path / "clean.csv", tmp_path / "noisy.csv"
    assert cli.main(["gen-signal", "--kind", "LFM", "--fs", "12", "--t0", "-3", "--t1", "3", "--out", str(clean)]) == 0
    assert cli.main(["add-noise", "--in", str(clean), "--snr-db", "0", "--seed", "3", "--out", str(noisy)]) == 0
    return tmp_path, clean, noisy


def test_gen_and_noise(files):
    _, clean, noisy = files
    f, g = read_signal_csv(clean), read_signal_csv(noisy)
    assert len(f) == len(g) == 72 and f.sample_rate_hz == 12.0
    assert not np.array_equal(f.samples, g.samples)


def test_wvd_and_cctfd(files):
    tmp, clean, _ = files
    assert cli.main(["wvd", "--in", str(clean), "--out", str(tmp / "w.tfdg")]) == 0
    w = read_grid(tmp / "w.tfdg")
    assert np.allclose(w.values, wvd(read_signal_csv(clean)).values)
    assert cli.main(["cctfd", "--in", str(clean), "--kernel", "born-jordan", "--out", str(tmp / "bj.tfdg")]) == 0
    assert read_grid(tmp / "bj.tfdg").role == Role.TFD


def test_cctfd_custom_kernel_file(files):
    tmp, clean, _ = files
    f = read_signal_csv(clean)
    path = tmp / "k.tfdg"
    write_grid(path, sample_kernel(KernelSpec.named("page"), wvd(f)))
    assert cli.main(["cctfd", "--in", str(clean), "--kernel", str(path), "--out", str(tmp / "c.tfdg")]) == 0
    named = tmp / "n.tfdg"
    cli.main(["cctfd", "--in", str(clean), "--kernel", "page", "--out", str(named)])
    assert np.allclose(read_grid(tmp / "c.tfdg").values, read_grid(named).values, atol=1e-12)


def test_cctfd_non_kernel_file(files):
    tmp, clean, _ = files
    cli.main(["wvd", "--in", str(clean), "--out", str(tmp / "w.tfdg")])
    assert cli.main(["cctfd", "--in", str(clean), "--kernel", str(tmp / "w.tfdg"), "--out", str(tmp / "x")]) == 2


def test_adaptive(files):
    tmp, clean, noisy = files
    out = tmp / "a.tfdg"
    assert cli.main(["adaptive-cctfd", "--clean", str(clean), "--noisy", str(noisy), "--out", str(out)]) == 0
    assert read_grid(out).shape == wvd(read_signal_csv(clean)).shape


@pytest.mark.parametrize("method", ["page", "adaptive-cctfd", "wiener-1d"])
def test_denoise_prints_json(files, capsys, method):
    tmp, clean, noisy = files
    argv = ["denoise", "--clean", str(clean), "--noisy", str(noisy), "--method", method, "--out", str(tmp / "e.csv")]
    assert cli.main(argv) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["method"] == method and np.isfinite(out["mse_log10"]) and np.isfinite(out["psnr_db"])
    assert len(read_signal_csv(tmp / "e.csv")) == 72


def test_degenerate_input_exits_3(files):
    tmp, clean, _ = files
    f = read_signal_csv(clean)
    zero = tmp / "zero.csv"
    write_signal_csv(zero, Signal(np.zeros(len(f), complex), f.sample_rate_hz, f.t_start))
    argv = ["denoise", "--clean", str(clean), "--noisy", str(zero), "--method", "adaptive-cctfd",
            "--out", str(tmp / "e.csv")]
    assert cli.main(argv) == 3


def test_invalid_inputs_exit_2(tmp_path):
    assert cli.main(["wvd", "--in", str(tmp_path / "missing.csv"), "--out", str(tmp_path / "w")]) == 2
    assert cli.main(["gen-signal", "--kind", "LFM", "--fs", "-1", "--out", str(tmp_path / "s.csv")]) == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("not,a,signal\n")
    assert cli.main(["wvd", "--in", str(bad), "--out", str(tmp_path / "w")]) == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["gen-signal", "--kind", "AM", "--fs", "1", "--out", "x"])
    assert exc.value.code == 2


def test_experiment(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"signal_kind": "QFM", "sample_rate_hz": 12.0, "interval": [-2, 2],
                               "snr_db_list": [0], "seeds": [1, 2], "methods": ["page", "wiener-1d"]}))
    assert cli.main(["experiment", "--config", str(cfg), "--out-dir", str(tmp_path / "out")]) == 0
    with open(tmp_path / "out" / "report.csv") as fh:
        assert len(list(csv.reader(fh))) == 5
    assert "report.csv" in capsys.readouterr().out
    assert cli.main(["experiment", "--config", str(cfg), "--out-dir", str(tmp_path / "o2"), "--threads", "0"]) == 2
    cfg.write_text("{}")
    assert cli.main(["experiment", "--config", str(cfg), "--out-dir", str(tmp_path / "o3")]) == 2


def test_verify_exit_codes(monkeypatch, capsys):
    monkeypatch.setattr(cli, "run_all", lambda: [CheckResult("a", True, "ok")])
    assert cli.main(["verify"]) == 0
    monkeypatch.setattr(cli, "run_all", lambda: [CheckResult("a", True, "ok"), CheckResult("b", False, "bad")])
    assert cli.main(["verify"]) == 3
    out = capsys.readouterr().out
    assert "PASS  a" in out and "FAIL  b" in out
