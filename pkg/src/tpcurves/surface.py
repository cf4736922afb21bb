"""Surface patches and parameter curves backed by exact jet evaluation.

A :class:`SurfacePatch` is an analytic map (u, v) -> R^3 parsed from
expression text; :meth:`SurfacePatch.jet` returns all partial derivatives
through order 3 computed by forward-mode jets, with no finite differencing
anywhere.  A :class:`CurvePath` is a pair u(t), v(t) over one parameter.

Patches and paths are immutable after construction and all evaluation is
pure, so they are safe to use concurrently.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import expr
from .errors import DomainError
from .jets import Jet1, Jet2

__all__ = ["SurfaceJet", "SurfacePatch", "CurveJet", "CurvePath",
           "parse_surface", "eval_jet", "parse_curve", "eval_curve_jet"]

_DOMAIN_SLACK = 1e-9


@dataclass(frozen=True)
class SurfaceJet:
    """Position and partial derivatives of a patch at one parameter point."""

    u: float
    v: float
    value: np.ndarray
    du: np.ndarray
    dv: np.ndarray
    duu: np.ndarray
    duv: np.ndarray
    dvv: np.ndarray
    duuu: np.ndarray
    duuv: np.ndarray
    duvv: np.ndarray
    dvvv: np.ndarray
    components: tuple = field(repr=False)  # raw per-component Jet2 triple


@dataclass(frozen=True)
class SurfacePatch:
    """Analytic surface patch with a rectangular parameter domain."""

    name: str
    components: tuple  # three expression trees over (u, v)
    u_range: tuple
    v_range: tuple

    def contains(self, u, v):
        (u0, u1), (v0, v1) = self.u_range, self.v_range
        su = _DOMAIN_SLACK * max(1.0, abs(u0), abs(u1))
        sv = _DOMAIN_SLACK * max(1.0, abs(v0), abs(v1))
        return (u0 - su <= u <= u1 + su) and (v0 - sv <= v <= v1 + sv)

    def _require_inside(self, u, v):
        if not self.contains(u, v):
            raise DomainError(
                f"({u}, {v}) outside domain "
                f"[{self.u_range[0]}, {self.u_range[1]}] x "
                f"[{self.v_range[0]}, {self.v_range[1]}] of '{self.name}'")

    def value(self, u, v):
        """Position only, evaluated over plain floats."""
        self._require_inside(u, v)
        env = {"u": float(u), "v": float(v)}
        return np.array([expr.evaluate(c, env, float) for c in self.components])

    def jet(self, u, v):
        """All partials through order 3 at (u, v)."""
        self._require_inside(u, v)
        env = {"u": Jet2.var_u(u), "v": Jet2.var_v(v)}
        comps = tuple(expr.evaluate(c, env, Jet2.const) for c in self.components)
        arr = lambda attr: np.array([getattr(c, attr) for c in comps])
        return SurfaceJet(
            u=float(u), v=float(v),
            value=arr("f"), du=arr("fu"), dv=arr("fv"),
            duu=arr("fuu"), duv=arr("fuv"), dvv=arr("fvv"),
            duuu=arr("fuuu"), duuv=arr("fuuv"), duvv=arr("fuvv"),
            dvvv=arr("fvvv"),
            components=comps,
        )

    def text(self):
        return "(" + ", ".join(expr.to_text(c) for c in self.components) + ")"


def parse_surface(text, u_range, v_range, name="surface"):
    """Parse three comma-separated component expressions into a patch."""
    components = expr.parse_components(text, ("u", "v"), 3)
    return SurfacePatch(name=name, components=components,
                        u_range=(float(u_range[0]), float(u_range[1])),
                        v_range=(float(v_range[0]), float(v_range[1])))


def eval_jet(patch, u, v):
    return patch.jet(u, v)


@dataclass(frozen=True)
class CurveJet:
    """Parameter point of a curve with t-derivatives through order 3."""

    t: float
    u: Jet1
    v: Jet1


@dataclass(frozen=True)
class CurvePath:
    """Parameter curve t -> (u(t), v(t)) on some patch's domain."""

    name: str
    u_component: object  # expression tree over t
    v_component: object
    t_range: tuple
    surface: Optional[str] = None  # host patch name, resolved by the scene

    def _require_inside(self, t):
        t0, t1 = self.t_range
        slack = _DOMAIN_SLACK * max(1.0, abs(t0), abs(t1))
        if not (t0 - slack <= t <= t1 + slack):
            raise DomainError(f"t={t} outside [{t0}, {t1}] of curve '{self.name}'")

    def point(self, t):
        self._require_inside(t)
        env = {"t": float(t)}
        return (expr.evaluate(self.u_component, env, float),
                expr.evaluate(self.v_component, env, float))

    def jet(self, t):
        self._require_inside(t)
        env = {"t": Jet1.var(t)}
        return CurveJet(
            t=float(t),
            u=expr.evaluate(self.u_component, env, Jet1.const),
            v=expr.evaluate(self.v_component, env, Jet1.const),
        )

    def check_on(self, patch, samples=129):
        """Verify by sampling that the path stays inside the patch domain."""
        t0, t1 = self.t_range
        for i in range(samples):
            t = t0 + (t1 - t0) * i / (samples - 1)
            u, v = self.point(t)
            if not patch.contains(u, v):
                raise DomainError(
                    f"curve '{self.name}' leaves domain of '{patch.name}' "
                    f"at t={t}: (u, v)=({u}, {v})")


def parse_curve(u_text, v_text, t_range, name="curve", surface=None):
    return CurvePath(
        name=name,
        u_component=expr.parse_expression(u_text, ("t",)),
        v_component=expr.parse_expression(v_text, ("t",)),
        t_range=(float(t_range[0]), float(t_range[1])),
        surface=surface,
    )


def eval_curve_jet(curve, t):
    return curve.jet(t)


def ambient_jet(patch, curve, t):
    """Ambient position jet gamma(t) with t-derivatives through order 3.

    Evaluates the patch expressions over univariate jets of u(t), v(t);
    the chain rule is exact by construction.
    """
    cj = curve.jet(t)
    if not patch.contains(cj.u.f, cj.v.f):
        raise DomainError(
            f"curve point ({cj.u.f}, {cj.v.f}) at t={t} outside domain of "
            f"'{patch.name}'")
    env = {"u": cj.u, "v": cj.v}
    comps = tuple(expr.evaluate(c, env, Jet1.const) for c in patch.components)
    gamma = np.array([c.f for c in comps])
    d1 = np.array([c.d1 for c in comps])
    d2 = np.array([c.d2 for c in comps])
    d3 = np.array([c.d3 for c in comps])
    return cj, gamma, d1, d2, d3
