import json

import pytest

from lowsnr.cli import main
from lowsnr.constellation import constellation_from_json


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def body(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


def test_gen_then_metrics(tmp_path, capsys):
    path = tmp_path / "c.json"
    code, _, _ = run(["gen", "--T", "4", "--Nt", "2", "--zeta", "2", "--P", "0.1",
                      "--out", str(path)], capsys)
    assert code == 0
    c = constellation_from_json(path.read_text())
    assert c.L == 5
    code, out, _ = run(["metrics", "--in", str(path)], capsys)
    rows = body(out)
    assert rows[0].startswith("T,Nt,Nr,P,K,i_low")
    assert float(rows[1].split(",")[5]) == pytest.approx(7.5)


def test_invalid_parameters_single_line_error(capsys):
    code, out, err = run(["metrics", "--zeta", "0.1"], capsys)
    assert code == 2 and out == ""
    assert err.count("\n") == 1 and err.startswith("error code=Infeasible message=")


def test_usage_error_is_machine_parsable(capsys):
    code, _, err = run(["metrics", "--T", "x"], capsys)
    assert code == 2 and err.startswith("error code=UsageError")
    code, _, err = run(["metrics", "--T", "3", "--family", "hadamard"], capsys)
    assert code == 2 and "NotPowerOfTwo" in err


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"T": 4, "Nt": 2, "zeta": 2.0, "P": 0.1, "kind": "ook"}))
    _, out, _ = run(["metrics", "--config", str(cfg)], capsys)
    assert body(out)[1].startswith("4,2,1,")
    _, out, _ = run(["metrics", "--config", str(cfg), "--T", "8"], capsys)
    assert body(out)[1].startswith("8,2,1,")
    cfg.write_text(json.dumps({"bogus": 1}))
    code, _, err = run(["metrics", "--config", str(cfg)], capsys)
    assert code == 2 and "ConfigError" in err


def test_mc_mi_and_decode_sim_reproducible(capsys):
    outs = [run(["mc-mi", "--samples", "4000", "--seed", "5"], capsys)[1] for _ in range(2)]
    assert outs[0] == outs[1]
    assert body(outs[0])[0] == "P,value_nats_per_dim,std_error,samples,seed"
    sims = [run(["decode-sim", "--T", "4", "--P", "0.5", "--zeta", "4", "--trials", "3000",
                 "--perm", "random"], capsys)[1] for _ in range(2)]
    assert sims[0] == sims[1]


def test_figures_byte_identical(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("LOWSNR_OUTPUT_DIR", str(tmp_path))
    assert run(["figures", "--out", "a"], capsys)[0] == 0
    assert run(["figures", "--out", "b"], capsys)[0] == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == [f"fig{k}.csv" for k in range(1, 8)]
    for n in names:
        assert (tmp_path / "a" / n).read_bytes() == (tmp_path / "b" / n).read_bytes()
    assert "timestamp" not in (tmp_path / "a" / "fig1.csv").read_text()


def test_timestamp_only_on_request(capsys):
    _, out, _ = run(["metrics", "--timestamp"], capsys)
    assert "# timestamp:" in out


def test_verify_defaults(tmp_path, capsys):
    out = tmp_path / "report.txt"
    code, _, _ = run(["verify", "--trials", "1000", "--out", str(out)], capsys)
    assert code == 0
    text = out.read_text()
    assert "FAIL" not in text and "passed = 6/6" in text
