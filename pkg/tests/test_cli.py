import json

import pytest

from cxqt.cli import main, _resolve, _build_parser


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_count_h3(capsys):
    code, out, _ = run(capsys, "count", "H3")
    assert code == 0
    assert "Q(H3) = 4" in out
    assert "group order: 120" in out
    assert "conjugacy classes: 10" in out


def test_count_closed_method(capsys):
    code, out, _ = run(capsys, "count", "A", "4", "--method", "closed")
    assert code == 0
    assert "Q(A4) = 3" in out
    assert "method: closed" in out


def test_count_e8_brute_refused(capsys):
    code, _, err = run(capsys, "count", "E8", "--method", "brute")
    assert code == 3
    assert "696729600" in err


def test_count_e7_needs_slow(capsys):
    code, _, err = run(capsys, "count", "E7", "--method", "brute")
    assert code == 3


def test_count_invalid_type(capsys):
    code, _, err = run(capsys, "count", "Q5")
    assert code == 2


def test_count_missing_rank(capsys):
    code, _, err = run(capsys, "count", "A")
    assert code == 2


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "H3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["q"] == 4
    assert doc["group_order"] == 120
    assert len(doc["classes"]) == 10


def test_count_symbolic_i2(capsys):
    code, out, _ = run(capsys, "count", "I2", "7")
    assert code == 0
    assert "Q(I2(7)) = 4" in out
    code, _, err = run(capsys, "count", "I2", "7", "--method", "brute")
    assert code == 2


def test_classes_h3_json(capsys):
    code, out, _ = run(capsys, "classes", "H3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["classes"]) == 10
    assert sum(1 for c in doc["classes"] if c["e_grade"] == 0) == 4


def test_classes_f4(capsys):
    code, out, _ = run(capsys, "classes", "F4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert sum(1 for c in doc["classes"] if c["e_grade"] == 0) == 9


def test_classes_csv_columns(capsys):
    code, out, _ = run(capsys, "classes", "A", "2", "--format", "csv")
    assert code == 0
    header = out.splitlines()[0]
    assert header == "size,order,det,trace,charpoly,e_grade,rep_word"


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--n-max", "3", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "type,rank,q_closed,q_brute,match"
    cells = {line.split(",")[0]: line.split(",") for line in lines[1:]}
    assert cells["E8"][2] == "30"
    assert cells["E7"][2] == "12"
    assert cells["H4"][2] == "20" and cells["H4"][3] == "20"
    assert cells["G2"][4] == "yes"
    # series rows expanded up to n-max
    assert "B3" in cells and "B4" not in cells


def test_table_json_matches(capsys):
    code, out, _ = run(capsys, "table", "--n-max", "2", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    h3 = [r for r in rows if r["type"] == "H3"][0]
    assert h3["q_closed"] == h3["q_brute"] == 4
    assert h3["match"] == "yes"


def test_output_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "count", "B", "2", "--format", "json", "--out", str(out_path)
    )
    assert code == 0
    assert out == ""
    doc = json.loads(out_path.read_text())
    assert doc["q"] == 2


def test_json_deterministic_across_threads(capsys):
    outputs = []
    for threads in ("1", "4", "8"):
        code, out, _ = run(
            capsys, "count", "B", "3", "--format", "json",
            "--method", "brute", "--threads", threads,
        )
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1] == outputs[2]


def test_cache_dir_roundtrip(tmp_path, capsys):
    cache = tmp_path / "cache"
    code, out1, _ = run(
        capsys, "count", "H3", "--method", "brute",
        "--cache-dir", str(cache), "--format", "json",
    )
    assert code == 0
    assert (cache / "H3.cxq").exists()
    code, out2, err = run(
        capsys, "count", "H3", "--method", "brute",
        "--cache-dir", str(cache), "--format", "json",
    )
    assert code == 0
    assert out1 == out2
    # corrupt cache falls back to regeneration with a warning
    blob = bytearray((cache / "H3.cxq").read_bytes())
    blob[len(blob) // 2] ^= 0xFF
    (cache / "H3.cxq").write_bytes(bytes(blob))
    code, out3, err = run(
        capsys, "count", "H3", "--method", "brute",
        "--cache-dir", str(cache), "--format", "json",
    )
    assert code == 0
    assert out3 == out1
    assert "ignoring cache" in err


def test_env_fallbacks(monkeypatch):
    monkeypatch.setenv("CXQT_THREADS", "6")
    monkeypatch.setenv("CXQT_CACHE_DIR", "/tmp/somewhere")
    ns = _build_parser().parse_args(["count", "H3"])
    cfg = _resolve(ns)
    assert cfg.threads == 6
    assert cfg.cache_dir == "/tmp/somewhere"
    ns = _build_parser().parse_args(
        ["count", "H3", "--threads", "2", "--cache-dir", "/explicit"]
    )
    cfg = _resolve(ns)
    assert cfg.threads == 2
    assert cfg.cache_dir == "/explicit"


def test_verify_product_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "product")
    assert code == 0
    assert "PASS [product] multiplicativity for A2 + B2" in out
    assert "0 failed" in out
