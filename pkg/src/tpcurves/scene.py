"""Scene configuration: named surfaces, curves and pairs from INI text.

The format is flat key-value with named sections:

    [surface cone]
    components = (v*cos(u), v*sin(u), v)
    u_range = 0, 2*pi
    v_range = 0.25, 3

    [curve cone_circle]
    surface = cone
    u = t
    v = 1
    t_range = 0, 2*pi

    [pair catenoid_helicoid]
    source = catenoid
    target = helicoid
    kind = intrinsic

    [options]
    grid = 20x20
    samples = 50
    h = 0.01
    max_steps = 4000

Numeric values go through the same expression grammar as the surfaces
(constants only; ``pi`` is available).  All cross-references are resolved
at load time; unresolved names are load errors.
"""

import configparser
import io
from dataclasses import dataclass, field

from .errors import ConfigError, DomainError, ExpressionError
from .expr import parse_constant
from .isometry import register_pair
from .surface import parse_curve, parse_surface

__all__ = ["SceneConfig", "RunOptions", "load_scene", "builtin_scene",
           "BUILTIN_SCENE_TEXT"]


@dataclass(frozen=True)
class RunOptions:
    grid: tuple = (20, 20)
    samples: int = 50
    h: float = 0.01
    max_steps: int = 4000


@dataclass(frozen=True)
class PairDef:
    source: str
    target: str
    kind: str


@dataclass
class SceneConfig:
    surfaces: dict = field(default_factory=dict)
    curves: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)
    options: RunOptions = RunOptions()
    path: str = "<builtin>"

    def surface(self, name):
        try:
            return self.surfaces[name]
        except KeyError:
            raise ConfigError(f"surface not found: {name}") from None

    def curve(self, name):
        try:
            return self.curves[name]
        except KeyError:
            raise ConfigError(f"curve not found: {name}") from None

    def curve_host(self, name):
        curve = self.curve(name)
        return self.surface(curve.surface), curve

    def pair(self, name, grid=None):
        try:
            pdef = self.pairs[name]
        except KeyError:
            raise ConfigError(f"pair not found: {name}") from None
        return register_pair(self.surface(pdef.source),
                             self.surface(pdef.target),
                             pdef.kind, grid=grid or self.options.grid)


def _section_line(text, section):
    header = f"[{section}]"
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.strip() == header:
            return lineno
    return 0


def _fail(path, text, section, message):
    raise ConfigError(f"{path}:{_section_line(text, section)}: {message}")


def _number(raw):
    return parse_constant(raw)


def _number_pair(raw):
    parts = [p.strip() for p in raw.split(",")]
    if len(parts) != 2:
        raise ExpressionError(f"expected two comma-separated values: {raw!r}")
    return _number(parts[0]), _number(parts[1])


def _grid(raw):
    parts = raw.lower().split("x")
    if len(parts) != 2:
        raise ExpressionError(f"expected MxN grid spec: {raw!r}")
    return int(parts[0]), int(parts[1])


def load_scene_text(text, path="<string>"):
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_file(io.StringIO(text), source=path)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc

    scene = SceneConfig(path=path)
    options = {}
    for section in parser.sections():
        body = parser[section]
        try:
            if section.startswith("surface "):
                name = section.split(None, 1)[1]
                scene.surfaces[name] = parse_surface(
                    body["components"],
                    _number_pair(body["u_range"]),
                    _number_pair(body["v_range"]),
                    name=name)
            elif section.startswith("curve "):
                name = section.split(None, 1)[1]
                scene.curves[name] = parse_curve(
                    body["u"], body["v"],
                    _number_pair(body["t_range"]),
                    name=name, surface=body["surface"])
            elif section.startswith("pair "):
                name = section.split(None, 1)[1]
                kind = body["kind"].strip()
                scene.pairs[name] = PairDef(
                    source=body["source"].strip(),
                    target=body["target"].strip(), kind=kind)
            elif section == "options":
                if "grid" in body:
                    options["grid"] = _grid(body["grid"])
                if "samples" in body:
                    options["samples"] = int(body["samples"])
                if "h" in body:
                    options["h"] = _number(body["h"])
                if "max_steps" in body:
                    options["max_steps"] = int(body["max_steps"])
            else:
                _fail(path, text, section, f"unknown section kind: {section!r}")
        except KeyError as exc:
            _fail(path, text, section, f"missing key {exc.args[0]!r}")
        except ExpressionError as exc:
            _fail(path, text, section, str(exc))
    scene.options = RunOptions(**options)

    # Resolve cross-references and check curve domains now, not at use time.
    for name, curve in scene.curves.items():
        if curve.surface not in scene.surfaces:
            _fail(path, text, f"curve {name}",
                  f"surface not found: {curve.surface}")
        try:
            curve.check_on(scene.surfaces[curve.surface])
        except DomainError as exc:
            _fail(path, text, f"curve {name}", str(exc))
    for name, pdef in scene.pairs.items():
        for ref in (pdef.source, pdef.target):
            if ref not in scene.surfaces:
                _fail(path, text, f"pair {name}", f"surface not found: {ref}")
    return scene


def load_scene(path=None):
    """Load a scene file, or the built-in scene when no path is given."""
    if path is None:
        return load_scene_text(BUILTIN_SCENE_TEXT, "<builtin>")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return load_scene_text(text, str(path))


def builtin_scene():
    return load_scene(None)


BUILTIN_SCENE_TEXT = """\
# Built-in verification scene: the standard test surfaces, curves and
# isometric pairs used by the check suite.

[surface plane]
components = (u, v, 0)
u_range = -5, 5
v_range = -5, 5

[surface cone]
components = (v*cos(u), v*sin(u), v)
u_range = 0, 2*pi
v_range = 0.25, 3

[surface sphere]
components = (sin(u)*cos(v), sin(u)*sin(v), cos(u))
u_range = 0.15, pi - 0.15
v_range = 0, 2*pi

[surface offset_sphere]
components = (sin(u)*cos(v), sin(u)*sin(v), 2 + cos(u))
u_range = 0.15, pi - 0.15
v_range = -7, 7

[surface offset_sphere_rot]
components = (sin(u)*cos(v + 0.7), sin(u)*sin(v + 0.7), 2 + cos(u))
u_range = 0.15, pi - 0.15
v_range = -7, 7

[surface catenoid]
components = (cosh(v)*cos(u), cosh(v)*sin(u), v)
u_range = 0, 2*pi
v_range = -1.5, 1.5

[surface helicoid]
components = (sinh(v)*cos(u), sinh(v)*sin(u), u)
u_range = 0, 2*pi
v_range = -1.5, 1.5

[surface cylinder]
components = (cos(u), sin(u), v)
u_range = -5, 5
v_range = -5, 5

[surface paraboloid]
components = (u, v, u^2 + v^2)
u_range = -2, 2
v_range = -2, 2

[curve plane_circle]
surface = plane
u = 2*cos(t)
v = 2*sin(t)
t_range = 0, 2*pi

[curve cone_circle]
surface = cone
u = t
v = 1
t_range = 0, 2*pi

[curve cone_circle_v2]
surface = cone
u = t
v = 2
t_range = 0, 2*pi

[curve cone_ruling]
surface = cone
u = 1
v = t
t_range = 1, 2

[curve sphere_latitude]
surface = sphere
u = 2*pi/3
v = t
t_range = 0, 2*pi

[curve sphere_meridian]
surface = sphere
u = t
v = 0
t_range = 0.2, 2.9

[curve offset_latitude]
surface = offset_sphere
u = 2*pi/3
v = t
t_range = 0, 2*pi

[curve catenoid_line]
surface = catenoid
u = t
v = 0.3
t_range = 0, 2*pi

[curve cylinder_helix]
surface = cylinder
u = t
v = t
t_range = 0, 4

[pair catenoid_helicoid]
source = catenoid
target = helicoid
kind = intrinsic

[pair plane_cylinder]
source = plane
target = cylinder
kind = intrinsic

[pair offset_rotation]
source = offset_sphere
target = offset_sphere_rot
kind = rigid-origin-fixing

[pair identity_catenoid]
source = catenoid
target = catenoid
kind = intrinsic

[options]
grid = 20x20
samples = 50
h = 0.01
max_steps = 4000
"""
