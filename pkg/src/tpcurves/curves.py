"""Arc-length parametrization, Frenet frames, geodesic and normal curvature.

Every downstream identity assumes unit speed, so curves enter the rest of
the library only through :func:`reparametrize_arclength`.  Total length is
an adaptive-Simpson integral of |dgamma/dt| (tolerance 1e-10); the map
s -> t is inverted by Newton with a bisection safeguard (tolerance 1e-12
in t).  Derivatives of (u, v) and of gamma with respect to s come from the
exact inverse-function chain rule through order 3; torsion is too noise
sensitive for finite differences.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import FrameUndefined, IrregularCurve
from .surface import ambient_jet

__all__ = [
    "CurveSample", "FrenetData", "CurvatureReport",
    "reparametrize_arclength", "frenet", "surface_curvatures",
    "transfer_sample", "KAPPA_MIN",
]

# Below this curvature the principal normal is numerically meaningless.
KAPPA_MIN = 1e-9

_SPEED_FLOOR = 1e-10
_LENGTH_TOL = 1e-10
_INVERT_TOL = 1e-12


@dataclass(frozen=True)
class CurveSample:
    """One arc-length point of a unit-speed surface curve.

    ``du``/``ddu``/``dddu`` are derivatives of u with respect to arc
    length.  Third-derivative fields are None for samples produced by the
    tangency-locus tracer, which carries only second-order data.
    """

    s: float
    t: float
    u: float
    v: float
    du: float
    dv: float
    ddu: float
    ddv: float
    dddu: Optional[float]
    dddv: Optional[float]
    gamma: np.ndarray
    dgamma: np.ndarray
    ddgamma: np.ndarray
    dddgamma: Optional[np.ndarray]


@dataclass(frozen=True)
class FrenetData:
    """Orthonormal moving frame of a unit-speed space curve.

    ``tau`` is NaN when the sample lacks third-derivative data.
    """

    t: np.ndarray
    n: np.ndarray
    b: np.ndarray
    kappa: float
    tau: float


@dataclass(frozen=True)
class CurvatureReport:
    kappa_g: float
    kappa_n: float


def _adaptive_simpson(f, a, b, tol):
    """Classic adaptive Simpson with Richardson acceptance."""

    def simpson(lo, flo, hi, fhi, fmid):
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    def recurse(lo, flo, hi, fhi, fmid, whole, eps, depth):
        mid = 0.5 * (lo + hi)
        lmid = 0.5 * (lo + mid)
        rmid = 0.5 * (mid + hi)
        flmid = f(lmid)
        frmid = f(rmid)
        left = simpson(lo, flo, mid, fmid, flmid)
        right = simpson(mid, fmid, hi, fhi, frmid)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return (recurse(lo, flo, mid, fmid, flmid, left, 0.5 * eps, depth - 1)
                + recurse(mid, fmid, hi, fhi, frmid, right, 0.5 * eps, depth - 1))

    if a == b:
        return 0.0
    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    whole = simpson(a, fa, b, fb, fm)
    return recurse(a, fa, b, fb, fm, whole, tol, 48)


class _ArcLength:
    """Cumulative arc length of the ambient image of a parameter curve."""

    def __init__(self, patch, curve):
        self.patch = patch
        self.curve = curve

    def speed(self, t):
        _, _, d1, _, _ = ambient_jet(self.patch, self.curve, t)
        value = float(np.linalg.norm(d1))
        if value <= _SPEED_FLOOR:
            raise IrregularCurve(
                f"curve '{self.curve.name}' speed {value} at t={t}")
        return value

    def length(self, a, b):
        return _adaptive_simpson(self.speed, a, b, _LENGTH_TOL)


def reparametrize_arclength(patch, curve, samples=50):
    """Sample a curve at equally spaced arc-length values.

    Returns ``samples`` CurveSamples covering [t0, t1], endpoints included.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    curve.check_on(patch)
    arc = _ArcLength(patch, curve)
    t0, t1 = curve.t_range
    total = arc.length(t0, t1)
    targets = [total * i / (samples - 1) for i in range(samples)]

    out = []
    t_prev, s_prev = t0, 0.0
    for s_target in targets:
        t = _invert(arc, t_prev, s_prev, t1, s_target)
        out.append(_sample_at(patch, curve, t, s_target))
        t_prev, s_prev = t, s_target
    return out


def _invert(arc, t_prev, s_prev, t_max, s_target):
    """Solve s(t) = s_target by Newton from the last accepted point,
    falling back to bisection; s is strictly increasing."""
    if s_target <= s_prev:
        return t_prev
    lo, hi = t_prev, t_max
    # F(t) = s(t) - s_target measured incrementally from t_prev.
    t = min(t_max, t_prev + (s_target - s_prev) / arc.speed(t_prev))
    for _ in range(100):
        F = s_prev + arc.length(t_prev, t) - s_target
        if F > 0.0:
            hi = t
        else:
            lo = t
        step = F / arc.speed(t)
        t_new = t - step
        if not (lo <= t_new <= hi):
            t_new = 0.5 * (lo + hi)
        if abs(t_new - t) <= _INVERT_TOL * max(1.0, abs(t)):
            return min(max(t_new, t_prev), t_max)
        t = t_new
    return t


def _sample_at(patch, curve, t, s):
    """Build a CurveSample via the exact inverse-function chain rule."""
    cj, gamma, g1, g2, g3 = ambient_jet(patch, curve, t)
    sd1 = float(np.linalg.norm(g1))  # ds/dt
    if sd1 <= _SPEED_FLOOR:
        raise IrregularCurve(f"curve '{curve.name}' speed {sd1} at t={t}")
    sd2 = float(np.dot(g1, g2)) / sd1
    sd3 = (float(np.dot(g2, g2)) + float(np.dot(g1, g3))) / sd1 \
        - sd2 * sd2 / sd1
    # Derivatives of the inverse map t(s).
    ts1 = 1.0 / sd1
    ts2 = -sd2 / sd1 ** 3
    ts3 = (3.0 * sd2 * sd2 - sd1 * sd3) / sd1 ** 5

    def by_s(d1, d2, d3):
        return (d1 * ts1,
                d2 * ts1 * ts1 + d1 * ts2,
                d3 * ts1 ** 3 + 3.0 * d2 * ts1 * ts2 + d1 * ts3)

    du, ddu, dddu = by_s(cj.u.d1, cj.u.d2, cj.u.d3)
    dv, ddv, dddv = by_s(cj.v.d1, cj.v.d2, cj.v.d3)
    dg, ddg, dddg = by_s(g1, g2, g3)
    return CurveSample(
        s=s, t=t, u=cj.u.f, v=cj.v.f,
        du=du, dv=dv, ddu=ddu, ddv=ddv, dddu=dddu, dddv=dddv,
        gamma=gamma, dgamma=dg, ddgamma=ddg, dddgamma=dddg,
    )


def frenet(sample):
    """Frenet frame of a unit-speed sample; requires positive curvature."""
    kappa = float(np.linalg.norm(sample.ddgamma))
    if kappa <= KAPPA_MIN:
        raise FrameUndefined(f"curvature {kappa} at s={sample.s}")
    t = sample.dgamma
    n = sample.ddgamma / kappa
    b = np.cross(t, n)
    if sample.dddgamma is None:
        tau = math.nan
    else:
        tau = float(np.dot(np.cross(sample.dgamma, sample.ddgamma),
                           sample.dddgamma)) / (kappa * kappa)
    return FrenetData(t=t, n=n, b=b, kappa=kappa, tau=tau)


def surface_curvatures(patch, sample):
    """Geodesic and normal curvature of a unit-speed sample.

    kappa_g = gamma'' . (N x gamma'), kappa_n = gamma'' . N, with N the
    patch unit normal at the sample's parameter point.
    """
    from .forms import second_form  # local import avoids a cycle

    jet = patch.jet(sample.u, sample.v)
    normal = second_form(jet).unit_normal
    kappa_g = float(np.dot(sample.ddgamma, np.cross(normal, sample.dgamma)))
    kappa_n = float(np.dot(sample.ddgamma, normal))
    return CurvatureReport(kappa_g=kappa_g, kappa_n=kappa_n)


def transfer_sample(patch, sample):
    """Recompute a sample's ambient data through another patch.

    The parameter data (u, v and its s-derivatives) is intrinsic and kept;
    gamma and its derivatives are rebuilt by the chain rule through the
    target patch's jets.  Used to push a curve across a coordinate-matched
    surface pair.
    """
    jet = patch.jet(sample.u, sample.v)
    du, dv, ddu, ddv = sample.du, sample.dv, sample.ddu, sample.ddv
    gamma = jet.value
    dgamma = jet.du * du + jet.dv * dv
    ddgamma = (jet.duu * du * du + 2.0 * jet.duv * du * dv
               + jet.dvv * dv * dv + jet.du * ddu + jet.dv * ddv)
    if sample.dddu is None or sample.dddv is None:
        dddgamma = None
    else:
        dddu, dddv = sample.dddu, sample.dddv
        dddgamma = (
            jet.duuu * du ** 3 + 3.0 * jet.duuv * du * du * dv
            + 3.0 * jet.duvv * du * dv * dv + jet.dvvv * dv ** 3
            + 3.0 * (jet.duu * du * ddu + jet.duv * (du * ddv + dv * ddu)
                     + jet.dvv * dv * ddv)
            + jet.du * dddu + jet.dv * dddv)
    return CurveSample(
        s=sample.s, t=sample.t, u=sample.u, v=sample.v,
        du=du, dv=dv, ddu=ddu, ddv=ddv,
        dddu=sample.dddu, dddv=sample.dddv,
        gamma=gamma, dgamma=dgamma, ddgamma=ddgamma, dddgamma=dddgamma,
    )
