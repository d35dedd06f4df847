import hashlib
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from jacobi_edge import __version__
from jacobi_edge.cli import main, parse_grid, read_manifest, CliError

BASE = ["--N", "30", "--beta", "1", "--alpha1", "0", "--alpha2", "3"]


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def csv_rows(text):
    lines = text.splitlines()
    assert lines[0].startswith("# manifest ")
    header = lines[1].split(",")
    rows = [[float(v) if v else None for v in ln.split(",")] for ln in lines[2:]]
    return header, rows


def test_cdf_two_term_csv(capsys):
    code, out, _ = run(["cdf", *BASE, "--mode", "two-term"], capsys)
    assert code == 0
    header, rows = csv_rows(out)
    assert header == ["x_or_xi", "leading", "correction", "total", "exact"]
    assert len(rows) == 201
    for x, lead, corr, total, exact in rows[1:]:
        assert lead == pytest.approx(1 - math.exp(-x / 2), abs=1e-14)
        assert total == pytest.approx(min(1.0, lead + 3.5 / 30 * x * math.exp(-x / 2)), abs=1e-14)
        assert exact is None


def test_manifest_checksum_and_fields(capsys, monkeypatch):
    monkeypatch.delenv("SOURCE_DATE_EPOCH", raising=False)
    _, out, _ = run(["cdf", *BASE, "--grid", "0:2:5"], capsys)
    man = read_manifest(out)
    body = out.split("\n", 1)[1]
    assert man["checksums"]["data_sha256"] == hashlib.sha256(body.encode()).hexdigest()
    assert man["command"] == "cdf" and man["version"] == __version__ and man["timestamp"] is None
    assert man["args"]["N"] == 30 and man["args"]["grid"] == "0:2:5"


def test_timestamp_from_source_date_epoch(capsys, monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    _, out, _ = run(["cdf", *BASE, "--grid", "1"], capsys)
    assert read_manifest(out)["timestamp"] == "1970-01-01T00:00:00+00:00"


def test_json_schema(capsys):
    code, out, _ = run(["cdf", "--N", "8", "--beta", "2", "--alpha1", "2", "--alpha2", "1",
                        "--mode", "exact", "--grid", "0.5,1,2", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["columns"][4] == "exact" and len(doc["rows"]) == 3
    assert all(0 <= r[4] <= 1 for r in doc["rows"])
    data = {"columns": doc["columns"], "rows": doc["rows"]}
    sha = hashlib.sha256(json.dumps(data, sort_keys=True, separators=(",", ":")).encode()).hexdigest()
    assert doc["manifest"]["checksums"]["data_sha256"] == sha


def test_limit_mode_is_exponential(capsys):
    _, out, _ = run(["cdf", "--N", "10", "--beta", "2", "--alpha1", "0", "--alpha2", "1",
                     "--mode", "limit", "--grid", "0:5:11"], capsys)
    _, rows = csv_rows(out)
    for x, _, _, total, _ in rows:
        assert total == pytest.approx(-math.expm1(-x), abs=1e-15)


def test_exit_codes(capsys):
    code, _, err = run(["cdf", "--N", "10", "--beta", "1", "--alpha1", "0.5", "--alpha2", "1", "--mode", "exact"], capsys)
    assert code == 3 and "alpha1 must be a nonnegative integer for exact mode" in err
    code, _, err = run(["cdf", "--N", "10", "--beta", "1", "--alpha1", "1", "--alpha2", "-3"], capsys)
    assert code == 2 and "alpha2" in err
    code, _, err = run(["cdf", "--N", "10", "--beta", "1", "--alpha1", "1", "--alpha2", "1", "--mode", "jue-det"], capsys)
    assert code == 3 and "beta = 2" in err
    code, _, err = run(["cdf", "--N", "70", "--beta", "1", "--alpha1", "1", "--alpha2", "1", "--mode", "exact"], capsys)
    assert code == 3 and "two-term" in err
    code, _, _ = run(["cdf", *BASE, "--grid", "a:b"], capsys)
    assert code == 2
    code, _, _ = run(["sample", "--method", "double-wishart", "--N", "5", "--beta", "3",
                      "--alpha1", "1", "--alpha2", "1", "--count", "3"], capsys)
    assert code == 3
    code, _, _ = run(["sample", *BASE, "--count", "0"], capsys)
    assert code == 2


def test_parse_grid():
    np.testing.assert_allclose(parse_grid("0:1:3"), [0, 0.5, 1])
    np.testing.assert_allclose(parse_grid("2, 3"), [2, 3])
    for bad in ("", "1:2", "-1,2", "0:1:0", "nan"):
        with pytest.raises(CliError):
            parse_grid(bad)


def test_sample_is_reproducible(tmp_path, capsys):
    argv = ["sample", "--N", "20", "--beta", "3", "--alpha1", "2", "--alpha2", "1.7", "--count", "50", "--seed", "9"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    header, rows = csv_rows(a.read_text())
    assert header == ["draw", "smallest"] and len(rows) == 50
    assert main(argv + ["--want", "all", "--count", "3", "--format", "json", "--out", str(a)]) == 0
    doc = json.loads(a.read_text())
    assert doc["columns"][-1] == "e19" and len(doc["rows"][0]) == 21


def test_replay_round_trip(tmp_path):
    src, again = tmp_path / "orig.json", tmp_path / "again.json"
    assert main(["sample", "--method", "double-wishart", "--N", "6", "--beta", "1", "--alpha1", "0.5",
                 "--alpha2", "2", "--count", "20", "--seed", "3", "--format", "json", "--out", str(src)]) == 0
    assert main(["replay", str(src), "--out", str(again)]) == 0
    assert src.read_bytes() == again.read_bytes()
    c1, c2 = tmp_path / "c1.csv", tmp_path / "c2.csv"
    assert main(["cdf", *BASE, "--edge", "largest", "--mode", "recentred", "--out", str(c1)]) == 0
    assert main(["replay", str(c1), "--out", str(c2)]) == 0
    assert c1.read_bytes() == c2.read_bytes()


def test_sample_budget():
    t = time.perf_counter()
    assert main(["sample", "--N", "20", "--beta", "3", "--alpha1", "2", "--alpha2", "1.7",
                 "--count", "1000", "--out", "/dev/null"]) == 0
    assert time.perf_counter() - t < 60


def test_validate_identities(tmp_path):
    rep = tmp_path / "rep.json"
    assert main(["validate", "--suite", "identities", "--report", str(rep)]) == 0
    doc = json.loads(rep.read_text())
    assert doc["passed"] and doc["suite"] == "identities"
    assert all(c["passed"] for c in doc["checks"])


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "jacobi_edge.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == __version__
