import json
import math
import subprocess
import sys

import pytest

from polyent.cli import SweepGrid, main, parse_document, to_document
from polyent import FactoredSystem, JointTable, Pmf, SynergyReport


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


COINS2 = {"marginals": [[0.5, 0.5], [0.5, 0.5]]}
COINS3 = {"marginals": [[0.5, 0.5]] * 3}


def test_entropy_fair_coin_bits(tmp_path, capsys):
    code, out, _ = run(capsys, "entropy", write(tmp_path, "c.json", [0.5, 0.5]), "--q", 1, "--r", 1, "--base", 2)
    assert code == 0
    doc = json.loads(out)
    assert doc["entropy"] == 1.0
    assert doc["units"] == "bit"


def test_entropy_degenerate(tmp_path, capsys):
    code, out, _ = run(capsys, "entropy", write(tmp_path, "d.json", [1.0]), "--q", 2, "--r", 0.5)
    assert code == 0
    assert json.loads(out)["entropy"] == 0.0


def test_entropy_factored_and_table(tmp_path, capsys):
    code, out, _ = run(capsys, "entropy", write(tmp_path, "f.json", COINS2), "--q", 2, "--r", 1)
    assert code == 0
    assert json.loads(out)["entropy"] == pytest.approx(0.75, abs=1e-15)
    table = {"shape": [2, 2], "probs": [0.25] * 4}
    code, out, _ = run(capsys, "entropy", write(tmp_path, "t.json", table), "--base", "e")
    assert json.loads(out)["entropy"] == pytest.approx(math.log(4), rel=1e-15)
    assert json.loads(out)["units"] == "nat"


@pytest.mark.parametrize(
    "doc",
    ["not json", {"foo": 1}, [0.5, "x"], [0.5, 0.6], {"shape": [2], "probs": [1.0]}, {"marginals": [[1.2, -0.2]]}],
)
def test_malformed_input_exit_2(tmp_path, capsys, doc):
    code, _, err = run(capsys, "entropy", write(tmp_path, "bad.json", doc))
    assert code == 2
    assert err.startswith("polyent:")


def test_domain_error_exit_3(tmp_path, capsys):
    path = write(tmp_path, "c.json", [0.5, 0.5])
    assert run(capsys, "entropy", path, "--q", 0)[0] == 3
    assert run(capsys, "entropy", path, "--base", 1)[0] == 3
    assert run(capsys, "synergy", path)[0] == 3
    assert run(capsys, "synergy", write(tmp_path, "one.json", {"marginals": [[1.0]]}))[0] == 3


def test_missing_input_exit_6(tmp_path, capsys):
    assert run(capsys, "entropy", tmp_path / "nope.json")[0] == 6


def test_synergy_reports(tmp_path, capsys):
    code, out, _ = run(capsys, "synergy", write(tmp_path, "c2.json", COINS2), "--q", 2, "--r", 1)
    assert code == 0
    rep = SynergyReport.from_dict(json.loads(out))
    assert rep.value == pytest.approx(-0.25, abs=1e-15)
    assert rep.classification == "redundant"
    assert rep.term("expanded") == pytest.approx(-0.25, abs=1e-15)

    code, out, _ = run(capsys, "synergy", write(tmp_path, "c2.json", COINS2))
    doc = json.loads(out)
    assert doc["value"] == 0.0 and doc["classification"] == "additive"

    code, out, _ = run(capsys, "synergy", write(tmp_path, "c3.json", COINS3), "--q", 2, "--r", 1)
    rep = SynergyReport.from_dict(json.loads(out))
    assert rep.value == pytest.approx(-0.625, abs=1e-15)
    assert rep.term("derived") == pytest.approx(-0.625, abs=1e-15)


def test_synergy_joint_table_input(tmp_path, capsys):
    independent = {"shape": [2, 2], "probs": [0.15, 0.35, 0.15, 0.35]}
    code, out, _ = run(capsys, "synergy", write(tmp_path, "i.json", independent), "--q", 2, "--r", 1)
    assert code == 0
    dependent = {"shape": [2, 2], "probs": [0.4, 0.1, 0.1, 0.4]}
    code, _, err = run(capsys, "synergy", write(tmp_path, "d.json", dependent), "--q", 2, "--r", 1)
    assert code == 4
    assert "not a product" in err


def test_verify_dyadic_grid(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", write(tmp_path, "c2.json", COINS2), "--grid", "0.5:2:3,0.5:2:3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "q,r,direct,derived,printed,abs_printed_minus_direct,printed_mismatch"
    assert len(lines) == 10
    for line in lines[1:]:
        fields = line.split(",")
        assert float(fields[5]) <= 1e-9
        assert fields[6] == "0"


def test_verify_triadic(tmp_path, capsys):
    path = write(tmp_path, "c3.json", COINS3)
    code, out, _ = run(capsys, "verify", path, "--grid", "1:1:1,1:1:1")
    assert code == 0
    row = out.splitlines()[1].split(",")
    assert float(row[2]) == pytest.approx(float(row[3]), abs=1e-12)
    assert float(row[2]) == pytest.approx(float(row[4]), abs=1e-12)

    out_path = tmp_path / "audit.csv"
    code, _, _ = run(capsys, "verify", path, "--q", 2, "--r", 0.5, "--out", out_path)
    assert code == 0
    row = out_path.read_text().splitlines()[1].split(",")
    direct, derived, printed = map(float, row[2:5])
    assert derived == pytest.approx(direct, abs=1e-9)
    assert row[6] == "1"  # finding, not failure


def test_verify_arity(tmp_path, capsys):
    four = {"marginals": [[0.5, 0.5]] * 4}
    assert run(capsys, "verify", write(tmp_path, "c4.json", four))[0] == 3


def test_verify_identity_failure_exit_5(tmp_path, capsys, monkeypatch):
    import polyent.composition as composition

    monkeypatch.setattr(composition.ExpansionReport, "derived_ok", property(lambda self: False))
    assert run(capsys, "verify", write(tmp_path, "c2.json", COINS2), "--q", 2)[0] == 5


def test_sweep_signs(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sweep", write(tmp_path, "c2.json", COINS2), "--grid", "0.5:2:4,0.5:2:4", "--out", out)
    assert code == 0
    text = out.read_text()
    lines = text.splitlines()
    assert lines[0] == "q,r,synergy,classification"
    assert len(lines) == 17
    rows = {(float(q), float(r)): (float(s), c) for q, r, s, c in (l.split(",") for l in lines[1:])}
    assert rows[(0.5, 1.0)][0] > 0
    assert rows[(2.0, 1.0)][0] < 0
    assert "\r" not in text
    assert all(math.isfinite(s) for s, _ in rows.values())


def test_sweep_single_point_and_triad(tmp_path, capsys):
    out = tmp_path / "s.csv"
    run(capsys, "sweep", write(tmp_path, "c2.json", COINS2), "--grid", "1:1:1,1:1:1", "--out", out)
    assert out.read_text().splitlines()[1:] == ["1.0,1.0,0.0,additive"]
    run(capsys, "sweep", write(tmp_path, "c3.json", COINS3), "--grid", "2:2:1,1:1:1", "--out", out)
    q, r, s, c = out.read_text().splitlines()[1].split(",")
    assert float(s) == pytest.approx(-0.625, abs=1e-15)


def test_sweep_seam_never_nan(tmp_path, capsys):
    out = tmp_path / "s.csv"
    doc = {"marginals": [[0.1, 0.2, 0.7], [0.0, 0.4, 0.6]]}
    run(capsys, "sweep", write(tmp_path, "m.json", doc), "--grid", "0.1:3:30,0.1:3:30", "--out", out)
    for line in out.read_text().splitlines()[1:]:
        assert math.isfinite(float(line.split(",")[2]))


def test_sweep_unwritable(tmp_path, capsys):
    code, _, _ = run(
        capsys, "sweep", write(tmp_path, "c2.json", COINS2), "--grid", "1:2:2,1:2:2", "--out", tmp_path / "no" / "x.csv"
    )
    assert code == 6


def test_sweep_bad_grid(tmp_path, capsys):
    path = write(tmp_path, "c2.json", COINS2)
    with pytest.raises(SystemExit) as exc:
        main(["sweep", path, "--grid", "1:2,1:2:2", "--out", str(tmp_path / "x.csv")])
    assert exc.value.code == 2
    assert run(capsys, "sweep", path, "--grid", "0:2:3,1:2:2", "--out", tmp_path / "x.csv")[0] == 3


def test_grid_points_row_major():
    grid = SweepGrid.parse("0.5:2:4,1:3:2")
    assert grid.points()[:3] == [(0.5, 1.0), (0.5, 3.0), (1.0, 1.0)]
    assert len(grid.points()) == 8


def test_info_measures(tmp_path, capsys):
    product = {"marginals": [[0.3, 0.7], [0.2, 0.5, 0.3]]}
    code, out, _ = run(capsys, "info", write(tmp_path, "p.json", product), "--measure", "mi", "--base", 2)
    assert code == 0
    assert abs(json.loads(out)["value"]) <= 1e-12

    table = {"shape": [2, 2], "probs": [0.4, 0.1, 0.1, 0.4]}
    code, out, _ = run(capsys, "info", write(tmp_path, "t.json", table), "--base", 2)
    assert json.loads(out)["value"] == pytest.approx(0.278072, abs=1e-6)

    xor = {"shape": [2, 2, 2], "probs": [0.25, 0, 0, 0.25, 0, 0.25, 0.25, 0]}
    code, out, _ = run(capsys, "info", write(tmp_path, "x.json", xor), "--measure", "interaction", "--base", 2)
    doc = json.loads(out)
    assert doc["value"] == pytest.approx(1.0, abs=1e-12)
    assert doc["measure"] == "interaction_information"


def test_info_respects_max_cells(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("POLYENT_MAX_CELLS", "3")
    path = write(tmp_path, "c2.json", COINS2)
    assert run(capsys, "info", path)[0] == 3
    monkeypatch.setenv("POLYENT_MAX_CELLS", "4")
    assert run(capsys, "info", path)[0] == 0


@pytest.mark.parametrize(
    "doc",
    [[0.2, 0.8], {"marginals": [[1.0], [0.25, 0.75]]}, {"shape": [1, 2], "probs": [0.5, 0.5]}],
)
def test_document_round_trip(doc):
    obj = parse_document(doc)
    assert json.loads(json.dumps(to_document(obj))) == doc
    assert isinstance(obj, (Pmf, FactoredSystem, JointTable))


def test_module_entry_point(tmp_path):
    path = write(tmp_path, "c.json", [0.5, 0.5])
    proc = subprocess.run(
        [sys.executable, "-m", "polyent", "entropy", path, "--base", "2"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["entropy"] == 1.0
