import csv
import json

import pytest

from kahlercert.cli import main

C4 = {"dimension": 2, "generators": [[[0, -1], [1, 0]]], "name": "C4"}
C3 = {"dimension": 2, "generators": [[[0, -1], [1, -1]]]}
S3 = {"dimension": 2, "generators": [[[0, -1], [1, -1]], [[0, 1], [1, 0]]]}
BAD = {"dimension": 2, "generators": [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]]}
INFINITE = {"dimension": 2, "generators": [[[1, 1], [0, 1]]]}


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        p = tmp_path / name
        p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
        return str(p)

    return write


def test_decide_exit_codes(files, tmp_path):
    out = tmp_path / "c4.cert.json"
    assert main(["decide", files("c4.json", C4), "--output", str(out)]) == 0
    assert json.loads(out.read_text())["decision"] == "kahler"
    out = tmp_path / "s3.cert.json"
    assert main(["decide", files("s3.json", S3), "--output", str(out)]) == 1
    assert json.loads(out.read_text())["nonexistence_witness"]["kind"] == "zero_invariant_space"
    assert main(["decide", files("bad.json", BAD)]) == 2
    assert main(["decide", files("inf.json", INFINITE), "--max-order", "100"]) == 2
    assert main(["decide", files("junk.json", "{not json")]) == 2
    assert main(["decide", str(tmp_path / "missing.json")]) == 2


def test_decide_is_byte_identical(files, tmp_path):
    src = files("c3.json", C3)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["decide", src, "--seed", "7", "--output", str(a)])
    main(["decide", src, "--seed", "7", "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_verify(files, tmp_path, capsys):
    c3 = files("c3.json", C3)
    cert = tmp_path / "c3.cert.json"
    main(["decide", c3, "--output", str(cert)])
    capsys.readouterr()
    assert main(["verify", str(cert), c3]) == 0
    table = capsys.readouterr().out
    assert "J.square" in table and "FAIL" not in table
    assert main(["verify", str(cert), files("c4.json", C4)]) != 0
    assert main(["verify", str(cert), c3, "--tol", "0"]) == 1
    table = capsys.readouterr().out
    rows = {line.split()[0]: line.split()[-1] for line in table.splitlines()[1:]}
    assert rows["J.square"] == "FAIL"
    assert all(rows[k] == "pass" for k in ("omega.invariant", "omega.integral", "S.positive", "conjugator.normal_form"))
    assert main(["verify", files("junk.json", {"decision": "kahler"}), c3]) == 2


def test_deform(files, tmp_path):
    c4 = files("c4.json", C4)
    path, out = tmp_path / "p.csv", tmp_path / "e.json"
    assert main(["deform", c4, "--steps", "16", "--csv", str(path), "--output", str(out)]) == 0
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t", "step_distance", "compat_residual", "min_gram_eigenvalue"]
    assert len(rows) == 18
    ts = [float(r[0]) for r in rows[1:]]
    assert ts == sorted(ts) and ts[0] == 0.0 and ts[-1] == 1.0
    assert json.loads(out.read_text())["decision"] == "kahler"
    assert main(["deform", files("s3.json", S3)]) == 1
    zero = tmp_path / "z.csv"
    assert main(["deform", c4, "--steps", "0", "--csv", str(zero), "--output", str(out)]) == 0
    assert len(zero.read_text().splitlines()) == 2


def test_cm(tmp_path):
    out = tmp_path / "cm4.json"
    assert main(["cm", "--order", "4", "--output", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["J"]["coefficients"] == [[str(x) for x in r] for r in doc["group"]["generators"][0]]
    out = tmp_path / "cm3.json"
    assert main(["cm", "--order", "3", "--output", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["J"]["surd"] == 3 and doc["cross_check"]["signatures_agree"]
    assert main(["cm", "--order", "2"]) == 2
