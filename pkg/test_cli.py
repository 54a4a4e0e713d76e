"""
CLI Test Suite

Drives src.cli.main(argv) in-process and reads the emitted documents.

Tests:
1. solve-volumes / solve-line / solve-pressures documents and --verify
2. Exit codes for rejected input
3. scan CSV, infer, bulge-boundary, oracle-check, exit 4 on failed checks
4. svg output and --config files

Run: pytest test_cli.py
"""
import importlib
import json
import math
import xml.etree.ElementTree as ET

import pytest

from src.cli.main import main
from src.scan import CSV_COLUMNS


def run(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv: str) -> tuple[int, dict]:
    code, out = run(capsys, *argv)
    return code, json.loads(out)


# ============================================
# SOLVE
# ============================================


def test_solve_volumes_symmetric(capsys):
    code, doc = run_json(capsys, "solve-volumes", "--t", "1", "1", "1", "--w", "0.5", "0.5")
    assert code == 0
    assert doc["regime"] == "interior"
    assert doc["global"] == "interior"
    assert doc["geometry"]["phi_deg"] == pytest.approx([120.0, 120.0, 120.0], abs=1e-9)
    assert doc["geometry"]["x"][2] == pytest.approx(0.0, abs=1e-12)
    assert doc["volumes"] == {"w1": 0.5, "w2": 0.5}


def test_solve_volumes_degenerate_regime(capsys):
    code, doc = run_json(capsys, "solve-volumes", "--t", "3", "1", "1", "--w", "0.75", "0.25")
    assert code == 0
    assert doc["global"] == "u1"
    assert doc["boundary"]["u"] == 1
    assert "geometry" not in doc


def test_solve_volumes_verify(capsys):
    code, _ = run(capsys, "solve-volumes", "--t", "3", "4", "5", "--w", "0.75", "0.25", "--verify")
    assert code == 0


def test_solve_line_verify(capsys):
    code, doc = run_json(
        capsys,
        "solve-line", "--t", "5", "6", "4", "--kappa", "1", "--w", "0.75", "0.25", "--verify",
    )
    assert code == 0
    assert sum(p["classification"] == "LocalMin" for p in doc["critical_points"]) == 1
    assert set(doc["boundary_energies"]) == {"u1", "u2", "u3"}


def test_solve_line_needs_line_tension(capsys):
    code, out = run(capsys, "solve-line", "--t", "1", "1", "1", "--w", "0.5", "0.5")
    assert code == 2
    assert out == ""


def test_solve_pressures(capsys):
    code, doc = run_json(capsys, "solve-pressures", "--t", "1", "1", "1", "--P", "1", "1", "--verify")
    assert code == 0
    assert doc["geometry"]["h"] == pytest.approx(math.sqrt(3.0))
    assert doc["geometry"]["x"] == pytest.approx([-3.0, 3.0, 0.0], abs=1e-12)
    assert doc["pressures"]["P3"] == pytest.approx(0.0)
    assert doc["volumes"]["w1"] == pytest.approx(54.0)


# ============================================
# EXIT CODES
# ============================================


@pytest.mark.parametrize(
    "argv",
    [
        ("solve-volumes", "--t", "1", "1", "1"),
        ("solve-pressures", "--t", "3", "1", "1", "--P", "1", "1"),
        ("solve-volumes", "--t", "-1", "1", "1", "--w", "0.5", "0.5"),
        ("solve-volumes", "--t", "1", "1", "1", "--w", "0.5", "0.5", "--P", "1", "1"),
        ("scan", "--t3", "1", "--w", "0.5", "0.5", "--n", "1"),
        ("infer", "--phi", "190", "90", "80"),
    ],
)
def test_invalid_input_exits_2(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 2
    assert out == ""


# ============================================
# SCAN, INFER, BULGE, ORACLE
# ============================================


def test_scan_writes_csv(capsys, tmp_path):
    target = tmp_path / "scan.csv"
    code, out = run(
        capsys, "scan", "--t3", "1", "--kappa", "0.5", "--w", "0.5", "0.5", "--n", "16",
        "-o", str(target),
    )
    assert code == 0
    assert out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) > 1
    assert all(len(line.split(",")) == len(CSV_COLUMNS) for line in lines[1:])


def test_infer_all_laws_from_angles(capsys):
    code, doc = run_json(capsys, "infer", "--phi", "120", "120", "120", "--law", "all")
    assert code == 0
    assert len(doc["results"]) == 5
    for result in doc["results"]:
        assert result["tensions"] == pytest.approx([1 / 3, 1 / 3, 1 / 3])


def test_infer_from_radii_with_flat_interface(capsys):
    code, doc = run_json(
        capsys,
        "infer", "--radii", "-2", "2", "flat", "--centers", "-1", "1", "none",
        "--h", "1.7320508075688772",
    )
    assert code == 0
    (result,) = doc["results"]
    assert result["normalization"] == "t2"
    assert result["tensions"][0] == pytest.approx(1.0, rel=1e-9)
    assert result["tensions"][2] is None


def test_bulge_boundary_lists_the_exact_point(capsys):
    code, doc = run_json(
        capsys, "bulge-boundary", "--t2", "1.25", "--t3", "1", "--kappa", "0.1",
        "--w", "0.5", "0.5",
    )
    assert code == 0
    assert any(abs(p["t1"] - 0.271244499897851) < 1e-9 for p in doc["points"])


def test_oracle_check_single_case(capsys):
    code, doc = run_json(
        capsys, "oracle-check", "--t", "1", "1", "1", "--w", "0.5", "0.5", "--oracle-grid", "60",
    )
    assert code == 0
    assert doc["failures"] == 0
    (case,) = doc["cases"]
    assert case["solver"]["global"] == case["oracle"]["global"] == "interior"


def test_failed_verify_exits_4_and_still_writes_the_document(capsys, monkeypatch):
    monkeypatch.setattr(importlib.import_module("src.cli.main"), "_verify_volumes", lambda *args: 1.0)
    code, doc = run_json(
        capsys, "solve-volumes", "--t", "1", "1", "1", "--w", "0.5", "0.5", "--verify"
    )
    assert code == 4
    assert doc["global"] == "interior"


def test_oracle_disagreement_exits_4(capsys, monkeypatch):
    monkeypatch.setattr(importlib.import_module("src.cli.main"), "ORACLE_AGREEMENT", -1.0)
    code, doc = run_json(
        capsys, "oracle-check", "--t", "1", "1", "1", "--w", "0.5", "0.5", "--oracle-grid", "40",
    )
    assert code == 4
    assert doc["failures"] == 1


# ============================================
# SVG AND CONFIG FILES
# ============================================


def _cap_ids(svg_text: str) -> dict[str, str]:
    root = ET.fromstring(svg_text)
    return {el.get("id"): el.tag.rsplit("}", 1)[-1] for el in root.iter() if el.get("id")}


def test_svg_of_interior_doublet(capsys):
    code, out = run(capsys, "svg", "--t", "1", "1", "1", "--w", "0.5", "0.5")
    assert code == 0
    assert _cap_ids(out) == {"cap1": "path", "cap2": "path", "cap3": "path"}


def test_svg_of_internalized_cell(capsys):
    code, out = run(capsys, "svg", "--t", "3", "1", "1", "--w", "0.75", "0.25")
    assert code == 0
    # cap 1 has vanished; cells 1 and 2 are nested circles
    assert _cap_ids(out) == {"cap2": "circle", "cap3": "circle"}


def test_svg_needs_volumes_or_pressures(capsys):
    code, out = run(capsys, "svg", "--t", "1", "1", "1")
    assert code == 2
    assert out == ""


def test_config_file_supplies_options(capsys, tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"t1": 3, "t2": 4, "t3": 5, "w1": 0.75, "w2": 0.25}))
    code, from_file = run_json(capsys, "solve-volumes", "--config", str(config))
    assert code == 0
    code, from_flags = run_json(
        capsys, "solve-volumes", "--t", "3", "4", "5", "--w", "0.75", "0.25"
    )
    assert from_file == from_flags


def test_flags_override_config_file(capsys, tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"t1": 3, "t2": 1, "t3": 1, "w1": 0.5, "w2": 0.5}))
    code, doc = run_json(capsys, "solve-volumes", "--config", str(config), "--t1", "1")
    assert code == 0
    assert doc["global"] == "interior"


def test_unknown_config_keys_are_rejected(capsys, tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"tension": 1}))
    code, _ = run(capsys, "solve-volumes", "--config", str(config))
    assert code == 2
