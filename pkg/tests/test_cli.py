import json
import subprocess
import sys

import pytest
import yaml

from beaconrqz.cli import CSV_HEADER, fmt9, main


def write_config(tmp_path, **sections):
    doc = {
        "scenario": {"n_satellites": 400},
        "sweep": {
            "n_trials": 60,
            "master_seed": 7,
            "n_workers": 1,
            "chunk_size": 20,
            "policies": {
                "fixed_qz": {"sky_radius_m": [0.0, 1.0e6, 5.5e6]},
                "dynamic_qz": {"tau_w": {"start": 1e-17, "stop": 1e-14, "num": 4, "spacing": "log"}},
                "beacon": {"sense_duration_s": [0.0, 0.05, 1.0]},
                "genie": {},
            },
        },
    }
    for k, v in sections.items():
        doc.setdefault(k, {}).update(v)
    path = tmp_path / "run.yaml"
    path.write_text(yaml.safe_dump(doc))
    return path


def test_fmt9():
    assert fmt9(None) == ""
    assert float(fmt9(0.0)) == 0.0
    assert fmt9(1 / 3) == "0.333333333"
    assert fmt9(1.5e-14) == "0.000000000000015"


def test_snapshot_output(tmp_path, capsys):
    out = tmp_path / "o"
    assert main(["snapshot", "--seed", "3", "--out", str(out)]) == 0
    path = out / "snapshot_seed3.tsv"
    assert capsys.readouterr().out.strip() == str(path)
    text = path.read_text()
    assert "# config_hash = " in text and "# master_seed = 3" in text
    rfi_line = next(l for l in text.splitlines() if l.startswith("# rfi_max_w"))
    assert float(rfi_line.split("=")[1]) == pytest.approx(1.58e-14, rel=0.01)
    header = next(l for l in text.splitlines() if not l.startswith("#"))
    assert header.split("\t")[:2] == ["index", "x_m"] and "gamma_beacon" in header


def test_snapshot_rerun_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["snapshot", "--seed", "11", "--out", str(a)]) == 0
    assert main(["snapshot", "--seed", "11", "--out", str(b)]) == 0
    assert (a / "snapshot_seed11.tsv").read_bytes() == (b / "snapshot_seed11.tsv").read_bytes()


def test_invalid_config_exit_code(tmp_path):
    bad = write_config(tmp_path, scenario={"n_satellites": 0})
    assert main(["snapshot", "--config", str(bad), "--out", str(tmp_path)]) == 1
    unknown = tmp_path / "u.yaml"
    unknown.write_text("scenario:\n  n_sats: 3\n")
    assert main(["sweep", "--config", str(unknown)]) == 1
    assert main(["sweep", "--config", str(tmp_path / "missing.yaml")]) == 1
    assert main(["sweep", "--trials", "0", "--out", str(tmp_path)]) == 1


def test_sweep_outputs(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "s"
    assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
    for name, rows in (("fixed_qz", 3), ("dynamic_qz", 4), ("beacon", 3), ("genie", 1)):
        lines = (out / f"{name}.csv").read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == rows + 1
        assert all(l.split(",")[-2:] == ["60", "7"] for l in lines[1:])
    genie = (out / "genie.csv").read_text().splitlines()[1].split(",")
    assert float(genie[1]) == 0.0
    meta = json.loads((out / "sweep_meta.json").read_text())
    assert meta["master_seed"] == 7 and len(meta["config_hash"]) == 64
    assert meta["budget"]["rfi_max_w"] == pytest.approx(1.58e-14, rel=0.01)


def test_sweep_rerun_is_byte_identical(tmp_path):
    cfg = write_config(tmp_path)
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["sweep", "--config", str(cfg), "--out", str(a)]) == 0
    assert main(["sweep", "--config", str(cfg), "--out", str(b), "--workers", "2"]) == 0
    for name in ("fixed_qz", "dynamic_qz", "beacon", "genie"):
        assert (a / f"{name}.csv").read_bytes() == (b / f"{name}.csv").read_bytes()


def test_seed_changes_results(tmp_path):
    cfg = write_config(tmp_path)
    a, b = tmp_path / "a", tmp_path / "b"
    main(["sweep", "--config", str(cfg), "--out", str(a)])
    main(["sweep", "--config", str(cfg), "--out", str(b), "--seed", "8"])
    assert (a / "beacon.csv").read_text() != (b / "beacon.csv").read_text()


def _rows(path):
    return {l.split()[0]: float(l.split()[1]) for l in path.read_text().splitlines() if not l.startswith("#")}


def test_pattern_tables(tmp_path):
    for pid in ("telescope", "beacon", "satellite"):
        assert main(["pattern", pid, "--out", str(tmp_path)]) == 0
    tel = _rows(tmp_path / "pattern_telescope.txt")
    bea = _rows(tmp_path / "pattern_beacon.txt")
    sat = _rows(tmp_path / "pattern_satellite.txt")
    assert len(tel) == 18001
    assert tel["0.00"] == 64.0 and bea["0.00"] == 32.0 and sat["0.00"] == 30.0
    assert "64.000000" in (tmp_path / "pattern_telescope.txt").read_text().splitlines()[4]
    for k in tel:
        if float(k) >= 6.5:
            assert tel[k] - bea[k] == 0.0


def test_pattern_unknown_id(tmp_path, capsys):
    assert main(["pattern", "feed", "--out", str(tmp_path)]) == 1
    assert "unknown pattern" in capsys.readouterr().err


def test_selfcheck():
    assert main(["selfcheck"]) == 0


def test_console_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "beaconrqz", "pattern", "beacon", "--out", str(tmp_path)],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert (tmp_path / "pattern_beacon.txt").exists()
