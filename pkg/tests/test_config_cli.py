"""Scene loading, CLI subcommands, exit codes, output determinism."""

import json
import math

import pytest

from tpcurves import cli
from tpcurves.checks import Check
from tpcurves.errors import ConfigError
from tpcurves.scene import load_scene, load_scene_text

GOOD_SCENE = """\
[surface disc]
components = (u, v, 0)
u_range = -2, 2
v_range = -2, 2

[curve loop]
surface = disc
u = cos(t)
v = sin(t)
t_range = 0, 2*pi

[pair same]
source = disc
target = disc
kind = intrinsic

[options]
grid = 8x8
samples = 20
h = 0.02
max_steps = 500
"""


def test_load_scene_text():
    scene = load_scene_text(GOOD_SCENE, "mem.ini")
    assert scene.surface("disc").u_range == (-2.0, 2.0)
    assert scene.curve("loop").surface == "disc"
    assert scene.options.grid == (8, 8)
    assert scene.options.h == 0.02
    pair = scene.pair("same")
    assert pair.kind == "intrinsic"


def test_builtin_scene_complete(scene):
    for name in ("plane", "cone", "sphere", "offset_sphere", "catenoid",
                 "helicoid", "cylinder", "paraboloid"):
        assert scene.surface(name) is not None
    assert scene.pairs.keys() >= {"catenoid_helicoid", "plane_cylinder",
                                  "offset_rotation"}


def test_unknown_surface_message(scene):
    with pytest.raises(ConfigError, match="surface not found: nope"):
        scene.surface("nope")


def test_unresolved_curve_reference_is_load_error(tmp_path):
    bad = GOOD_SCENE.replace("surface = disc\nu = cos(t)",
                             "surface = missing\nu = cos(t)")
    path = tmp_path / "bad.ini"
    path.write_text(bad)
    with pytest.raises(ConfigError, match=r"bad\.ini:\d+.*surface not found"):
        load_scene(path)


def test_curve_leaving_domain_is_load_error():
    bad = GOOD_SCENE.replace("u = cos(t)", "u = 3*cos(t)")
    with pytest.raises(ConfigError):
        load_scene_text(bad, "mem.ini")


def test_missing_key_reports_section_line():
    bad = GOOD_SCENE.replace("u_range = -2, 2\n", "")
    with pytest.raises(ConfigError, match=r"mem2\.ini:1"):
        load_scene_text(bad, "mem2.ini")


def test_cli_forms_json(capsys):
    rc = cli.main(["forms", "cone", "0", "1", "--format", "json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["E"] == 1.0
    assert payload["G"] == 2.0
    assert payload["Gamma1_12"] == 1.0
    assert payload["Gamma2_11"] == -0.5


def test_cli_forms_unknown_surface_exit_1(capsys):
    rc = cli.main(["forms", "nope", "0", "1"])
    assert rc == 1
    assert "surface not found: nope" in capsys.readouterr().err


def test_cli_trace_writes_outputs(tmp_path, capsys):
    out = tmp_path / "run"
    rc = cli.main(["trace", "offset_sphere", "--seed", "2.0,0.0",
                   "--out", str(out)])
    assert rc == 0
    csv_text = (out / "trace.csv").read_text()
    header, first = csv_text.splitlines()[:2]
    assert header == "index,s,u,v,g,lambda,mu,rho"
    row = first.split(",")
    assert float(row[4]) < 1e-8  # g
    assert float(row[7]) == pytest.approx(3.0, abs=1e-6)  # rho
    svg = (out / "trace.svg").read_text()
    assert svg.startswith("<svg") and "polyline" in svg


def test_cli_trace_no_seed_exit_2(capsys):
    rc = cli.main(["trace", "sphere", "--seed", "2.0,0.0"])
    assert rc == 2
    assert "no tangent-position locus" in capsys.readouterr().err


def test_cli_trace_singular_exit_2(capsys):
    rc = cli.main(["trace", "paraboloid", "--seed", "0.1,0.1"])
    assert rc == 2


def test_cli_report_components(tmp_path, capsys):
    out = tmp_path / "rep"
    rc = cli.main(["report-thm31", "offset_latitude", "--samples", "12",
                   "--out", str(out), "--format", "json"])
    assert rc == 0
    payload = json.loads((out / "components.json").read_text())
    assert payload["max_residual"] < 1e-7
    assert len(payload["samples"]) == 12
    sample = payload["samples"][0]
    assert sample["rho"] == pytest.approx(3.0, abs=1e-9)


def test_cli_verify_gauss(capsys):
    rc = cli.main(["verify", "--target", "gauss", "--format", "json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["all_asserted_pass"]
    names = {c["name"] for c in payload["checks"]}
    assert any(n.startswith("gauss-residual/") for n in names)


def test_cli_verify_thm32_counterexample_flagged(capsys):
    rc = cli.main(["verify", "--target", "thm32", "--format", "json"])
    assert rc == 0  # empirical failures do not affect the exit code
    payload = json.loads(capsys.readouterr().out)
    by_name = {c["name"]: c for c in payload["checks"]}
    flagged = by_name["tangent-position-preserved/plane_cylinder"]
    assert flagged["kind"] == "empirical"
    assert flagged["verdict"] == "empirical: fails"
    assert by_name["kappa-g-invariance/plane_cylinder"]["passed"]


def test_cli_verify_exit_3_on_asserted_failure(monkeypatch, capsys):
    failing = Check(name="broken", target="gauss", kind="asserted",
                    value=1.0, threshold=1e-8, passed=False)
    monkeypatch.setattr(cli, "run_checks", lambda scene, target: [failing])
    rc = cli.main(["verify", "--target", "gauss"])
    assert rc == 3


def test_cli_isometry(capsys):
    rc = cli.main(["isometry", "plane_cylinder", "--curve", "plane_circle",
                   "--format", "json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["metric_residuals"]["E"] < 1e-10
    inv = payload["invariance"]
    assert inv["source_tangent_position"] is True
    assert inv["tangent_position_preserved"] is False
    assert inv["max_kappa_g_residual"] < 1e-7


def test_cli_custom_config(tmp_path, capsys):
    path = tmp_path / "scene.ini"
    path.write_text(GOOD_SCENE)
    rc = cli.main(["forms", "disc", "0.5", "0.5", "--config", str(path),
                   "--format", "json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["E"] == 1.0


def test_outputs_byte_identical(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    argv = ["trace", "offset_sphere", "--seed", "2.0,0.0"]
    assert cli.main(argv + ["--out", str(out1)]) == 0
    assert cli.main(argv + ["--out", str(out2)]) == 0
    assert (out1 / "trace.csv").read_bytes() == (out2 / "trace.csv").read_bytes()
    assert (out1 / "trace.svg").read_bytes() == (out2 / "trace.svg").read_bytes()

    outj1, outj2 = tmp_path / "j1", tmp_path / "j2"
    argv = ["verify", "--target", "thm32"]
    assert cli.main(argv + ["--out", str(outj1)]) == 0
    assert cli.main(argv + ["--out", str(outj2)]) == 0
    assert ((outj1 / "verify.json").read_bytes()
            == (outj2 / "verify.json").read_bytes())


def test_csv_uses_lf_and_17_digits(tmp_path):
    out = tmp_path / "fmt"
    cli.main(["trace", "offset_sphere", "--seed", "2.0,0.0",
              "--out", str(out)])
    raw = (out / "trace.csv").read_bytes()
    assert b"\r" not in raw
    text = raw.decode("utf-8")
    # u stays at the traced latitude: full-precision repr appears.
    assert format(2 * math.pi / 3, ".17g")[:12] in text
