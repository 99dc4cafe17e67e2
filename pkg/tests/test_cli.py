"""CLI surface: kernel printing, exit codes, reports, reproducibility."""

import json
import math
import os
from pathlib import Path

import pytest

from hspot.cli import main, parse_scenario


def run(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_kernel_plane_fifteen_digits(capsys):
    rc, out, _ = run(capsys, ["kernel", "plane", "--z", "0,1", "--t", "0"])
    assert rc == 0
    assert out.strip() == "0.318309886183791"


def test_kernel_space(capsys):
    rc, out, _ = run(capsys, ["kernel", "space", "--n", "3", "--x", "0,0,1",
                              "--yp", "0,0"])
    assert rc == 0
    assert out.strip() == "0.159154943091895"


def test_kernel_plane_mod_branch(capsys):
    rc, out, _ = run(capsys, ["kernel", "plane-mod", "--m", "0", "--z", "0,1",
                              "--t", "0.5"])
    rc2, out2, _ = run(capsys, ["kernel", "plane", "--z", "0,1", "--t", "0.5"])
    assert rc == rc2 == 0 and out == out2


def test_kernel_green_families(capsys):
    rc, out, _ = run(capsys, ["kernel", "green", "--z", "0,1", "--zeta", "0,2"])
    assert rc == 0
    assert float(out) == pytest.approx(-math.log(3.0) / (2.0 * math.pi))
    rc, out, _ = run(capsys, ["kernel", "space-green-mod", "--n", "3", "--m", "1",
                              "--x", "0,0,1", "--y", "0,0,2"])
    assert rc == 0 and math.isfinite(float(out))


def test_kernel_usage_errors(capsys):
    rc, _, err = run(capsys, ["kernel", "plane", "--z", "junk", "--t", "0"])
    assert rc == 2 and "error" in err
    rc, _, err = run(capsys, ["kernel", "nosuch", "--z", "0,1"])
    assert rc == 2
    rc, _, err = run(capsys, ["kernel", "plane", "--z", "0,-1", "--t", "0"])
    assert rc == 2


def test_gegenbauer_command(capsys):
    rc, out, _ = run(capsys, ["gegenbauer", "--lam", "1.5", "--k", "2", "--at-one"])
    assert rc == 0 and out.strip() == "6"
    rc, _, err = run(capsys, ["gegenbauer", "--lam", "1.0", "--k", "99"])
    assert rc == 2


def test_verify_writes_reports(tmp_path, capsys):
    rc, out, _ = run(capsys, ["verify", "gegenbauer", "--seed", "5",
                              "--out", str(tmp_path)])
    assert rc == 0
    csv_text = (tmp_path / "gegenbauer.csv").read_text()
    assert csv_text.splitlines()[0] == "check,lhs,rhs,abs_err,rel_err,pass"
    payload = json.loads((tmp_path / "gegenbauer.report.json").read_text())
    assert payload["overall_pass"] is True
    assert payload["version"]
    assert all(c["pass"] for c in payload["checks"])


def test_verify_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, ["verify", "limits", "--seed", "9", "--out", str(a)])[0] == 0
    assert run(capsys, ["verify", "limits", "--seed", "9", "--out", str(b)])[0] == 0
    assert (a / "limits.csv").read_bytes() == (b / "limits.csv").read_bytes()
    assert (a / "limits.report.json").read_bytes() == (b / "limits.report.json").read_bytes()


def test_verify_unknown_suite(capsys):
    rc, _, err = run(capsys, ["verify", "bogus"])
    assert rc == 2


def test_hspot_out_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("HSPOT_OUT", str(tmp_path / "envdir"))
    rc, _, _ = run(capsys, ["verify", "mobius", "--seed", "1"])
    assert rc == 0
    assert (tmp_path / "envdir" / "mobius.csv").exists()


SCENARIO = """
[scenario]
name = demo
kind = growth
seed = 7

[boundary]
family = abs_power
exponent = 1

[probe]
geometry = plane
m = 1
alpha = 1.0
radii = 4, 16, 64, 256, 1024
"""


def test_probe_scenario(tmp_path, capsys):
    scn = tmp_path / "demo.scn"
    scn.write_text(SCENARIO)
    rc, out, _ = run(capsys, ["probe", "growth", str(scn), "--out", str(tmp_path)])
    assert rc == 0
    ratios = (tmp_path / "demo.ratios.csv").read_text().splitlines()
    assert ratios[0] == "R,ratio"
    values = [float(line.split(",")[1]) for line in ratios[1:]]
    assert values[-1] < values[0]
    # reproducibility of the ratio table
    rc2, _, _ = run(capsys, ["probe", "growth", str(scn), "--out", str(tmp_path / "b")])
    assert (tmp_path / "demo.ratios.csv").read_bytes() == \
        (tmp_path / "b" / "demo.ratios.csv").read_bytes()


def test_probe_membership_gate(tmp_path, capsys):
    scn = tmp_path / "bad.scn"
    scn.write_text(SCENARIO.replace("exponent = 1", "exponent = 3")
                   .replace("name = demo", "name = bad"))
    rc, _, err = run(capsys, ["probe", "growth", str(scn), "--out", str(tmp_path)])
    assert rc == 1
    assert "membership" in err


def test_probe_lower_bound(tmp_path, capsys):
    scn = tmp_path / "lb.scn"
    scn.write_text("""
[scenario]
name = lb
kind = lower-bound

[lower-bound]
K = 1.0
rho = RlogR
u = exp_cos
grid_R = 2, 4, 8
grid_theta = 0.4, 0.9, 1.4
""")
    rc, out, _ = run(capsys, ["probe", "lower-bound", str(scn), "--out", str(tmp_path)])
    assert rc == 0
    assert "fitted c" in out


def test_scenario_parser(tmp_path):
    scn = tmp_path / "p.scn"
    scn.write_text("[scenario]\nname = x  # comment\n[measure]\natom = 1, 2, 3\natom = 4, 5, 6\n")
    sections = parse_scenario(str(scn))
    assert sections["scenario"]["name"] == "x"
    assert len(sections["measure"]["atoms"]) == 2
