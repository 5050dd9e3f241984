import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from netshort.cli import RunResult, main

SVG = "{http://www.w3.org/2000/svg}"
H = 1.0938363213560545 / math.sqrt(2)
V_SEGMENT = f"{-H!r},{H!r},{H!r},{H!r}"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for name in ("square", "vpath", "upath", "spikes"):
        p = tmp_path / f"{name}.json"
        assert run(capsys, "fixture", "--name", name, "--out", str(p))[0] == 0
        paths[name] = str(p)
    return paths


def result(out):
    return RunResult.from_json(out)


def test_diam(capsys, files, tmp_path):
    code, out, _ = run(capsys, "diam", files["square"])
    r = result(out)
    assert code == 0 and r.diameter == pytest.approx(2.0)
    assert r.details["kind"] == "edge-edge"
    r = result(run(capsys, "diam", files["vpath"])[1])
    assert r.diameter == pytest.approx(2 * math.sqrt(2))
    assert r.details["kind"] == "vertex-vertex"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "diam", str(bad))
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "diam", str(tmp_path / "missing.json"))
    assert code in (2, 5)


def test_augment(capsys, files):
    r = result(run(capsys, "augment", files["square"], "--segment", "0,0,1,1")[1])
    assert r.diameter == pytest.approx(2.0)
    code, out, _ = run(capsys, "augment", files["vpath"], "--segment", V_SEGMENT)
    r = result(out)
    assert code == 0 and r.diameter == pytest.approx(2.187672642712109, abs=1e-9)
    # coordinates a hair off the network snap onto it
    nudged = f"{-H + 5e-7!r},{H!r},{H!r},{H!r}"
    assert result(run(capsys, "augment", files["vpath"], "--segment", nudged)[1]).diameter == pytest.approx(
        2.187672642712109, abs=1e-5)
    code, _, _ = run(capsys, "augment", files["square"], "--segment", "0,0,5,5")
    assert code == 3
    code, _, _ = run(capsys, "augment", files["square"], "--segment", "0,0,1")
    assert code == 2


def test_augment_path_fast(capsys, files):
    r = result(run(capsys, "augment", files["upath"], "--segment", "1,0,1,2", "--path-fast")[1])
    assert r.method == "path-fast"
    q = result(run(capsys, "augment", files["upath"], "--segment", "1,0,1,2")[1])
    assert r.diameter == pytest.approx(q.diameter, abs=1e-9)
    code, _, _ = run(capsys, "augment", files["square"], "--segment", "0,0,1,1", "--path-fast")
    assert code == 4


def test_shortcut_methods(capsys, files):
    r = result(run(capsys, "shortcut", files["vpath"], "--method", "path-simple")[1])
    assert r.details["exists"] is True
    assert r.diameter == pytest.approx(2.187672642712109, abs=1e-9)
    r = result(run(capsys, "shortcut", files["square"], "--method", "approx")[1])
    assert r.candidate is None and r.guarantee["basis"] == "4rho"
    code, _, err = run(capsys, "shortcut", files["square"], "--method", "path-simple")
    assert code == 4 and "path" in err
    r = result(run(capsys, "shortcut", files["vpath"], "--method", "path-fixed", "--angle", "0")[1])
    assert r.diameter == pytest.approx(2.187672642712109, abs=1e-9)
    r = result(run(capsys, "shortcut", files["vpath"], "--method", "approx", "--epsilon", "0.2",
                   "--check-oracle", "--oracle-samples", "8")[1])
    assert r.oracle["consistent"] is True
    assert r.diameter <= r.base_diameter
    code, _, _ = run(capsys, "shortcut", files["vpath"], "--method", "approx", "--epsilon", "5")
    assert code == 2


def test_quiet_and_threads(capsys, files, monkeypatch):
    code, out, _ = run(capsys, "diam", files["square"], "--quiet")
    assert code == 0 and float(out) == pytest.approx(2.0)
    monkeypatch.setenv("NETSHORT_THREADS", "2")
    assert run(capsys, "shortcut", files["vpath"], "--quiet")[0] == 0
    monkeypatch.setenv("NETSHORT_THREADS", "lots")
    assert run(capsys, "shortcut", files["vpath"], "--quiet")[0] == 2


def test_round_trip(capsys, files):
    for argv in (("diam", files["square"]),
                 ("shortcut", files["vpath"], "--method", "path-simple"),
                 ("augment", files["vpath"], "--segment", V_SEGMENT)):
        out = run(capsys, *argv)[1]
        assert result(out).to_json() + "\n" == out
        json.loads(out)


def test_render(capsys, files, tmp_path):
    svg = tmp_path / "sq.svg"
    assert run(capsys, "render", files["square"], "--out", str(svg))[0] == 0
    root = ET.parse(svg).getroot()
    assert root.get("version") == "1.1"
    assert len(root.findall(f".//{SVG}g[@id='edges']/{SVG}line")) == 4
    assert len(root.findall(f".//{SVG}circle")) == 2

    svg = tmp_path / "v.svg"
    assert run(capsys, "render", files["vpath"], "--segment", V_SEGMENT, "--out", str(svg))[0] == 0
    root = ET.parse(svg).getroot()
    assert len(root.findall(f".//{SVG}g[@id='edges']/{SVG}line")) == 2
    dashed = root.findall(f".//{SVG}line[@class='candidate']")
    assert len(dashed) == 1 and dashed[0].get("stroke-dasharray")
    assert len(root.findall(f".//{SVG}circle[@class='diametral']")) == 2

    code, _, _ = run(capsys, "render", files["square"], "--out", str(tmp_path / "no" / "such" / "dir.svg"))
    assert code == 5


def test_fixture_command(capsys):
    code, out, _ = run(capsys, "fixture", "--spikes", "4", "--span", "12")
    obj = json.loads(out)
    assert code == 0 and obj["meta"]["spikes"] == 4
    code, _, _ = run(capsys, "fixture", "--spikes", "3")
    assert code == 3


def test_console_script(files):
    proc = subprocess.run([sys.executable, "-m", "netshort.cli", "diam", files["square"], "--quiet"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and float(proc.stdout) == pytest.approx(2.0)
    proc = subprocess.run([sys.executable, "-m", "netshort.cli", "frobnicate"], capture_output=True, text=True)
    assert proc.returncode == 2
