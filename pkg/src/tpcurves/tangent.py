"""Tangent-plane decomposition of the position vector and its consequences.

A point of a patch lies on the *tangent-position locus* when the position
vector phi(u, v) lies in the tangent plane there, i.e. when the tangency
residual g(u, v) = phi . N vanishes.  Curves inside that locus satisfy a
family of closed-form identities relating the decomposition coordinates
(lam, mu) of the position vector, the moving-basis coefficients of gamma'
and gamma'', the fundamental forms and the Frenet frame.  This module
computes every ingredient exactly from jet data and provides the ambient
dot products the closed forms are checked against.

Conventions, fixed once:

* The decomposition solves the Gram system [E F; F G](lam, mu)^T =
  (phi . phi_u, phi . phi_v)^T by direct 2x2 elimination.
* ``rho`` is the squared length <gamma, gamma>, matching the closed form
  lam^2 E + 2 lam mu F + mu^2 G; the report carries both it and the
  ambient value.
* The tangency condition is always checked in the product form
  lam(u'L + v'M) + mu(u'M + v'N) = 0, never as a ratio of the two factors
  (the denominator vanishes on flat directions).
* The binormal and binormal-component identities carry a 1/sqrt(EG - F^2)
  normalization on their B3 terms; that factor converts the unnormalized
  cross products phi_u x N, phi_v x N to the unit-normal convention used
  everywhere else, and with it both identities are exact.
* lam', mu', lam'', mu'' come from analytic differentiation of the Gram
  solution (order-2 jet fields), never finite differences: the B
  coefficients are second-order quantities and difference noise would
  dominate every stated tolerance.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .curves import KAPPA_MIN, CurveSample
from .errors import (
    DegeneratePoint,
    FrameUndefined,
    IdenticallyTangent,
    NoSeed,
    SingularLocus,
)
from .forms import (
    REGULARITY_THRESHOLD,
    FirstForm,
    christoffel_fields,
    metric_fields,
    second_form,
)
from .jets import Field2, cross3, dot3

__all__ = [
    "TangentDecomposition", "FrameCoefficients", "PositionComponentReport",
    "GeodesicCurvature", "TracedCurve",
    "tangency_residual", "decompose_position", "frame_coefficients",
    "velocity_coefficients", "ratio_identity_check",
    "position_component_report", "binormal_formula_check",
    "geodesic_curvature_formula", "trace_tangent_curve",
    "sample_from_parameter_data",
]

# Tracer defaults: corrector keeps |g| two orders below the 1e-8 vertex
# assertion; gradients below the floor mean the locus is not a regular curve.
TRACE_TOL = 1e-10
GRAD_FLOOR = 1e-8
LOCUS_TOL = 1e-8
_NEWTON_MAX = 25
_CORRECTOR_MAX = 10


@dataclass(frozen=True)
class TangentDecomposition:
    """Position vector in the basis {phi_u, phi_v, N}."""

    lam: float
    mu: float
    normal_component: float  # gamma . N; zero on the tangent-position locus
    residual: float  # | gamma - lam phi_u - mu phi_v - (gamma.N) N |


@dataclass(frozen=True)
class FrameCoefficients:
    """Moving-basis coefficients of gamma' and gamma'' along a curve.

    gamma'  = a1 phi_u + a2 phi_v + a3 N
    gamma'' = b1 phi_u + b2 phi_v + b3 N   (valid where a3 vanishes)

    ``a1_s``/``a2_s`` are arc-length derivatives of a1/a2.
    """

    a1: float
    a2: float
    a3: float
    a1_s: float
    a2_s: float
    b1: float
    b2: float
    b3: float


@dataclass(frozen=True)
class GeodesicCurvature:
    """Geodesic curvature from the coefficient formula.

    ``raw`` is (b1 a2 - b2 a1)(F^2 - GE) = kappa_g * sqrt(EG - F^2);
    ``normalized`` is kappa_g itself, (a1 b2 - a2 b1) sqrt(EG - F^2).
    """

    raw: float
    normalized: float


@dataclass(frozen=True)
class PositionComponentReport:
    """Closed-form position-vector components versus ambient dot products.

    ``n_comp``/``b_comp`` and their residuals are None when the curvature
    is below the frame threshold; the first two parts survive.
    """

    rho: float
    t_comp: float
    n_comp: Optional[float]
    b_comp: Optional[float]
    rho_direct: float
    t_direct: float
    n_direct: Optional[float]
    b_direct: Optional[float]
    rho_residual: float
    t_residual: float
    n_residual: Optional[float]
    b_residual: Optional[float]
    kappa: float
    lam: float
    mu: float
    normal_component: float

    def max_residual(self):
        vals = [self.rho_residual, self.t_residual]
        if self.n_residual is not None:
            vals.append(self.n_residual)
        if self.b_residual is not None:
            vals.append(self.b_residual)
        return max(vals)


class _PointBundle:
    """Everything the identities need at one parameter point."""

    __slots__ = ("jet", "E", "F", "G", "det", "area", "lam", "mu", "g",
                 "form", "second", "chris")

    def __init__(self, patch, u, v):
        jet = patch.jet(u, v)
        E, F, G = metric_fields(jet)
        det = E * G - F * F
        if det.f <= REGULARITY_THRESHOLD:
            raise DegeneratePoint(f"EG - F^2 = {det.f} at ({u}, {v})")
        p = [Field2.of_jet(c) for c in jet.components]
        pu = [Field2.of_jet_du(c) for c in jet.components]
        pv = [Field2.of_jet_dv(c) for c in jet.components]
        w = cross3(pu, pv)
        area = det.sqrt()
        self.jet = jet
        self.E, self.F, self.G, self.det, self.area = E, F, G, det, area
        self.g = dot3(p, w) / area
        p_dot_u = dot3(p, pu)
        p_dot_v = dot3(p, pv)
        self.lam = (G * p_dot_u - F * p_dot_v) / det
        self.mu = (E * p_dot_v - F * p_dot_u) / det
        self.form = None
        self.second = None
        self.chris = None

    def with_forms(self):
        if self.form is None:
            E, F, G = self.E, self.F, self.G
            self.form = FirstForm(
                E=E.f, F=F.f, G=G.f,
                E_u=E.fu, E_v=E.fv, F_u=F.fu, F_v=F.fv, G_u=G.fu, G_v=G.fv,
                E_uu=E.fuu, E_uv=E.fuv, E_vv=E.fvv,
                F_uu=F.fuu, F_uv=F.fuv, F_vv=F.fvv,
                G_uu=G.fuu, G_uv=G.fuv, G_vv=G.fvv)
            self.second = second_form(self.jet)
            self.chris = christoffel_fields(self.form)
        return self


def _along2(field, sample):
    """Value and first two s-derivatives of a parameter-plane field along a
    unit-speed curve (chain rule through u(s), v(s))."""
    du, dv, ddu, ddv = sample.du, sample.dv, sample.ddu, sample.ddv
    d1 = field.fu * du + field.fv * dv
    d2 = (field.fuu * du * du + 2.0 * field.fuv * du * dv
          + field.fvv * dv * dv + field.fu * ddu + field.fv * ddv)
    return field.f, d1, d2


def _along1(field, sample):
    return field.f, field.fu * sample.du + field.fv * sample.dv


def tangency_residual(patch, u, v):
    """g(u, v) = phi . N; the point is on the locus iff this vanishes."""
    return _PointBundle(patch, u, v).g.f


def decompose_position(patch, u, v):
    """Coordinates of the position vector in {phi_u, phi_v, N}."""
    b = _PointBundle(patch, u, v)
    normal = np.cross(b.jet.du, b.jet.dv) / b.area.f
    recon = b.lam.f * b.jet.du + b.mu.f * b.jet.dv + b.g.f * normal
    return TangentDecomposition(
        lam=b.lam.f, mu=b.mu.f, normal_component=b.g.f,
        residual=float(np.linalg.norm(b.jet.value - recon)))


def frame_coefficients(patch, sample):
    """Moving-basis coefficients along the decomposition path lam(s), mu(s).

    All derivatives are analytic: lam'' and the connection-symbol
    derivatives come from order-3 jet data through the chain rule.
    """
    b = _PointBundle(patch, sample.u, sample.v).with_forms()
    lam, lam_s, lam_ss = _along2(b.lam, sample)
    mu, mu_s, mu_ss = _along2(b.mu, sample)
    return _coefficients(b, sample, lam, lam_s, lam_ss, mu, mu_s, mu_ss)


def velocity_coefficients(patch, sample):
    """Moving-basis coefficients of gamma', gamma'' for an arbitrary
    unit-speed surface curve: a1 = u', a2 = v' identically.

    Use this route for quantities (like geodesic curvature) that are
    defined off the tangent-position locus.
    """
    b = _PointBundle(patch, sample.u, sample.v).with_forms()
    du, dv, ddu, ddv = sample.du, sample.dv, sample.ddu, sample.ddv
    g111, g112, g121, g122, g221, g222 = (f.f for f in b.chris)
    L, M, N = b.second.L, b.second.M, b.second.N
    b1 = ddu + du * du * g111 + 2.0 * du * dv * g121 + dv * dv * g221
    b2 = ddv + du * du * g112 + 2.0 * du * dv * g122 + dv * dv * g222
    b3 = L * du * du + 2.0 * M * du * dv + N * dv * dv
    return FrameCoefficients(a1=du, a2=dv, a3=0.0, a1_s=ddu, a2_s=ddv,
                             b1=b1, b2=b2, b3=b3)


def _coefficients(b, sample, lam, lam_s, lam_ss, mu, mu_s, mu_ss):
    du, dv, ddu, ddv = sample.du, sample.dv, sample.ddu, sample.ddv
    (g111, dg111), (g112, dg112), (g121, dg121), (g122, dg122), \
        (g221, dg221), (g222, dg222) = (_along1(f, sample) for f in b.chris)
    L, M, N = b.second.L, b.second.M, b.second.N

    a1 = lam_s + du * lam * g111 + (dv * lam + du * mu) * g121 + dv * mu * g221
    a2 = mu_s + du * lam * g112 + (dv * lam + du * mu) * g122 + dv * mu * g222
    a3 = du * lam * L + dv * lam * M + du * mu * M + dv * mu * N

    a1_s = (lam_ss
            + (ddu * lam + du * lam_s) * g111 + du * lam * dg111
            + (ddv * lam + dv * lam_s + ddu * mu + du * mu_s) * g121
            + (dv * lam + du * mu) * dg121
            + (ddv * mu + dv * mu_s) * g221 + dv * mu * dg221)
    a2_s = (mu_ss
            + (ddu * lam + du * lam_s) * g112 + du * lam * dg112
            + (ddv * lam + dv * lam_s + ddu * mu + du * mu_s) * g122
            + (dv * lam + du * mu) * dg122
            + (ddv * mu + dv * mu_s) * g222 + dv * mu * dg222)

    b1 = a1_s + du * a1 * g111 + (dv * a1 + du * a2) * g121 + dv * g221 * a2
    b2 = a2_s + du * a1 * g112 + (dv * a1 + du * a2) * g122 + dv * g222 * a2
    b3 = du * a1 * L + (dv * a1 + du * a2) * M + dv * a2 * N
    return FrameCoefficients(a1=a1, a2=a2, a3=a3, a1_s=a1_s, a2_s=a2_s,
                             b1=b1, b2=b2, b3=b3)


def ratio_identity_check(patch, sample, decomp=None):
    """Tangency condition in product form: lam(u'L + v'M) + mu(u'M + v'N).

    Total where the ratio form lam/mu = -(u'L + v'M)/(u'M + v'N) divides
    by a quantity that vanishes on flat directions.
    """
    if decomp is None:
        decomp = decompose_position(patch, sample.u, sample.v)
    sec = second_form(patch.jet(sample.u, sample.v))
    return (decomp.lam * (sample.du * sec.L + sample.dv * sec.M)
            + decomp.mu * (sample.du * sec.M + sample.dv * sec.N))


def geodesic_curvature_formula(coeffs, form):
    """Geodesic curvature from moving-basis coefficients.

    The normalized value (a1 b2 - a2 b1) sqrt(EG - F^2) equals the ambient
    definition gamma'' . (N x gamma'); ``raw`` keeps the unnormalized
    coefficient combination, which is kappa_g scaled by sqrt(EG - F^2).
    """
    det = form.det
    if det <= REGULARITY_THRESHOLD:
        raise DegeneratePoint(f"EG - F^2 = {det}")
    raw = (coeffs.b1 * coeffs.a2 - coeffs.b2 * coeffs.a1) * (-det)
    normalized = (coeffs.a1 * coeffs.b2 - coeffs.a2 * coeffs.b1) * math.sqrt(det)
    return GeodesicCurvature(raw=raw, normalized=normalized)


def position_component_report(patch, sample):
    """Closed-form distance/tangential/normal/binormal components of the
    position vector against their ambient dot products.

    Meaningful on the tangent-position locus, where the closed forms are
    exact identities.  The binormal component includes the
    1/sqrt(EG - F^2) normalization (see module docstring).
    """
    b = _PointBundle(patch, sample.u, sample.v).with_forms()
    lam, lam_s, lam_ss = _along2(b.lam, sample)
    mu, mu_s, mu_ss = _along2(b.mu, sample)
    coeffs = _coefficients(b, sample, lam, lam_s, lam_ss, mu, mu_s, mu_ss)
    E, F, G = b.form.E, b.form.F, b.form.G
    det = b.form.det
    gamma = sample.gamma

    rho = lam * lam * E + 2.0 * lam * mu * F + mu * mu * G
    rho_direct = float(np.dot(gamma, gamma))
    t_comp = (lam * coeffs.a1 * E + (lam * coeffs.a2 + mu * coeffs.a1) * F
              + mu * coeffs.a2 * G)
    t_direct = float(np.dot(sample.dgamma, gamma))

    kappa = float(np.linalg.norm(sample.ddgamma))
    if kappa > KAPPA_MIN:
        n_comp = (lam * coeffs.b1 * E + (lam * coeffs.b2 + mu * coeffs.b1) * F
                  + mu * coeffs.b2 * G) / kappa
        b_comp = (coeffs.a1 * coeffs.b3 * mu * (-det)
                  + coeffs.a2 * coeffs.b3 * lam * det) \
            / (kappa * math.sqrt(det))
        n_vec = sample.ddgamma / kappa
        b_vec = np.cross(sample.dgamma, n_vec)
        n_direct = float(np.dot(n_vec, gamma))
        b_direct = float(np.dot(b_vec, gamma))
        n_residual = abs(n_comp - n_direct)
        b_residual = abs(b_comp - b_direct)
    else:
        n_comp = b_comp = n_direct = b_direct = None
        n_residual = b_residual = None

    return PositionComponentReport(
        rho=rho, t_comp=t_comp, n_comp=n_comp, b_comp=b_comp,
        rho_direct=rho_direct, t_direct=t_direct,
        n_direct=n_direct, b_direct=b_direct,
        rho_residual=abs(rho - rho_direct),
        t_residual=abs(t_comp - t_direct),
        n_residual=n_residual, b_residual=b_residual,
        kappa=kappa, lam=lam, mu=mu, normal_component=b.g.f)


def binormal_formula_check(patch, sample):
    """Distance between b = t x n and its moving-basis expansion.

    The expansion is (a1 b2 - a2 b1)(phi_u x phi_v) plus the B3 terms
    a1 b3 (F phi_u - E phi_v) + a2 b3 (G phi_u - F phi_v) divided by
    sqrt(EG - F^2); the whole vector is normalized to unit length and the
    difference norm is returned after sign alignment.
    """
    kappa = float(np.linalg.norm(sample.ddgamma))
    if kappa <= KAPPA_MIN:
        raise FrameUndefined(f"curvature {kappa} at s={sample.s}")
    coeffs = frame_coefficients(patch, sample)
    b = _PointBundle(patch, sample.u, sample.v).with_forms()
    E, F, G = b.form.E, b.form.F, b.form.G
    jet = b.jet
    w = np.cross(jet.du, jet.dv)
    area = math.sqrt(b.form.det)
    rhs = ((coeffs.a1 * coeffs.b2 - coeffs.a2 * coeffs.b1) * w
           + (coeffs.a1 * coeffs.b3 * (F * jet.du - E * jet.dv)
              + coeffs.a2 * coeffs.b3 * (G * jet.du - F * jet.dv)) / area)
    norm = float(np.linalg.norm(rhs))
    if norm == 0.0:
        return math.inf
    rhs_unit = rhs / norm
    b_vec = np.cross(sample.dgamma, sample.ddgamma / kappa)
    return min(float(np.linalg.norm(rhs_unit - b_vec)),
               float(np.linalg.norm(rhs_unit + b_vec)))


# --- constructive tracing of the tangency locus -------------------------


@dataclass(frozen=True)
class TracedCurve:
    """Polyline approximation of one connected tangency-locus component."""

    vertices: np.ndarray  # (n, 2) parameter points, |g| <= LOCUS_TOL each
    residuals: np.ndarray  # g at each vertex
    closed: bool
    status: str  # "closed" | "domain_exit" | "max_steps" | "corrector_stalled"
    seed: tuple
    h: float
    arc_length: float  # ambient length of the polyline
    samples: tuple  # arc-length resampled CurveSamples (second-order data)


def _g_bundle(patch, u, v):
    """Tangency residual as an order-2 field, plus metric fields."""
    return _PointBundle(patch, u, v)


def _newton_correct(patch, u, v, max_iter, tol):
    """Newton along grad g toward the zero set.  Returns (u, v, bundle)."""
    b = _g_bundle(patch, u, v)
    for _ in range(max_iter):
        g = b.g.f
        if abs(g) <= tol:
            return u, v, b
        gu, gv = b.g.fu, b.g.fv
        norm2 = gu * gu + gv * gv
        if norm2 <= GRAD_FLOOR * GRAD_FLOOR:
            return u, v, b
        u -= g * gu / norm2
        v -= g * gv / norm2
        if not patch.contains(u, v):
            return u, v, None
        b = _g_bundle(patch, u, v)
    return u, v, b


def _probe_identically_tangent(patch, u, v, radius):
    """True when g vanishes on a ring around (u, v) (locus is a region)."""
    hits = 0
    total = 0
    for k in range(8):
        ang = 2.0 * math.pi * k / 8.0
        pu = u + radius * math.cos(ang)
        pv = v + radius * math.sin(ang)
        if not patch.contains(pu, pv):
            continue
        total += 1
        if abs(tangency_residual(patch, pu, pv)) <= LOCUS_TOL:
            hits += 1
    return total >= 3 and hits == total


def _isolated_zero(patch, b, u, v, h):
    """Hessian test: a nearby critical point of g that is itself a zero
    means the locus degenerates to a point."""
    hess = np.array([[b.g.fuu, b.g.fuv], [b.g.fuv, b.g.fvv]])
    grad = np.array([b.g.fu, b.g.fv])
    try:
        step = np.linalg.solve(hess, grad)
    except np.linalg.LinAlgError:
        return False
    if float(np.linalg.norm(step)) > 5.0 * h:
        return False
    uc, vc = u - step[0], v - step[1]
    if not patch.contains(uc, vc):
        return False
    bc = _g_bundle(patch, uc, vc)
    grad_c = math.hypot(bc.g.fu, bc.g.fv)
    return abs(bc.g.f) <= LOCUS_TOL and grad_c <= GRAD_FLOOR


def _correct_seed(patch, seed, h):
    u, v = float(seed[0]), float(seed[1])
    if not patch.contains(u, v):
        raise NoSeed(f"seed {seed} outside the parameter domain")
    u, v, b = _newton_correct(patch, u, v, _NEWTON_MAX, TRACE_TOL)
    if b is None:
        raise NoSeed("seed correction left the parameter domain")
    g = b.g.f
    grad = math.hypot(b.g.fu, b.g.fv)
    if abs(g) > LOCUS_TOL:
        # A stall with both |g| and the gradient collapsing together means
        # Newton is sliding into a degenerate zero; a stall with |g| still
        # large means there is no zero to reach.
        if abs(g) <= 1e-4 and grad <= 1e-4 and grad * grad <= 100.0 * abs(g):
            raise SingularLocus(
                f"gradient {grad} collapsing while |g| = {abs(g)} near seed")
        raise NoSeed("no tangent-position locus reachable from seed")
    if grad <= GRAD_FLOOR:
        if _probe_identically_tangent(patch, u, v, max(10.0 * h, 1e-3)):
            raise IdenticallyTangent(
                "tangency residual vanishes identically around the seed")
        raise SingularLocus(f"gradient {grad} at the corrected seed")
    if _isolated_zero(patch, b, u, v, h):
        raise SingularLocus("tangency locus degenerates to a point near seed")
    return u, v, b


def _tangent_dir(b):
    tu, tv = -b.g.fv, b.g.fu
    norm = math.hypot(tu, tv)
    if norm <= GRAD_FLOOR:
        raise SingularLocus("gradient vanished during trace")
    return tu / norm, tv / norm


def trace_tangent_curve(patch, seed, h=0.01, max_steps=4000, resample=100):
    """Predictor-corrector continuation of the tangency locus from a seed.

    The predictor steps h (parameter units) along the level-set tangent;
    the corrector is Newton along grad g to |g| <= 1e-10.  Stops on
    closure (return within half a step of the start after at least 10
    steps, in parameter or ambient distance), on domain exit, or at
    ``max_steps``.  The result carries the vertex polyline and a list of
    unit-speed samples resampled at equal arc length.
    """
    u, v, b = _correct_seed(patch, seed, h)
    verts = [(u, v)]
    resid = [b.g.f]
    ambient = [patch.value(u, v)]
    tu, tv = _tangent_dir(b)
    # Canonical initial orientation: dominant component positive.
    if (abs(tu) >= abs(tv) and tu < 0.0) or (abs(tu) < abs(tv) and tv < 0.0):
        tu, tv = -tu, -tv

    closed = False
    status = "max_steps"
    chord_sum = 0.0
    for step in range(1, max_steps + 1):
        pu, pv = u + h * tu, v + h * tv
        if not patch.contains(pu, pv):
            status = "domain_exit"
            break
        cu, cv, cb = _newton_correct(patch, pu, pv, _CORRECTOR_MAX, TRACE_TOL)
        if cb is None:
            status = "domain_exit"
            break
        if abs(cb.g.f) > LOCUS_TOL:
            grad = math.hypot(cb.g.fu, cb.g.fv)
            if grad <= GRAD_FLOOR:
                raise SingularLocus("gradient vanished during trace")
            status = "corrector_stalled"
            break
        u, v, b = cu, cv, cb
        pos = patch.value(u, v)
        chord_sum += float(np.linalg.norm(pos - ambient[-1]))
        verts.append((u, v))
        resid.append(b.g.f)
        ambient.append(pos)
        ntu, ntv = _tangent_dir(b)
        if ntu * tu + ntv * tv < 0.0:
            ntu, ntv = -ntu, -ntv
        tu, tv = ntu, ntv
        if step >= 10:
            mean_chord = chord_sum / step
            param_dist = math.hypot(u - verts[0][0], v - verts[0][1])
            amb_dist = float(np.linalg.norm(pos - ambient[0]))
            if param_dist < 0.5 * h or amb_dist < 0.5 * mean_chord:
                closed = True
                status = "closed"
                break

    vertices = np.array(verts)
    ambient = np.array(ambient)
    samples, length = _resample_locus(patch, vertices, ambient, closed, resample)
    return TracedCurve(
        vertices=vertices, residuals=np.array(resid), closed=closed,
        status=status, seed=(float(seed[0]), float(seed[1])), h=h,
        arc_length=length, samples=tuple(samples))


def _locus_sample(patch, u, v, s, sign):
    """Exact second-order unit-speed data of the level curve through (u, v).

    The unit tangent field w solves I(w, w) = 1 with w proportional to
    (-g_v, g_u); its derivative along itself gives (u'', v'').  All of it
    is pointwise-exact, independent of the polyline discretization.
    """
    b = _PointBundle(patch, u, v)
    gu, gv = b.g.du(), b.g.dv()
    t_u, t_v = -gv, gu
    E1, F1, G1 = b.E.lower(), b.F.lower(), b.G.lower()
    quad = E1 * t_u * t_u + 2.0 * F1 * t_u * t_v + G1 * t_v * t_v
    den = quad.sqrt()
    wu = t_u / den
    wv = t_v / den
    du = sign * wu.f
    dv = sign * wv.f
    ddu = wu.f * wu.fu + wv.f * wu.fv
    ddv = wu.f * wv.fu + wv.f * wv.fv
    return sample_from_parameter_data(
        patch, s=s, t=math.nan, u=u, v=v, du=du, dv=dv, ddu=ddu, ddv=ddv,
        dddu=None, dddv=None)


def sample_from_parameter_data(patch, s, t, u, v, du, dv, ddu, ddv,
                               dddu=None, dddv=None):
    """CurveSample with ambient data rebuilt from parameter derivatives."""
    from .curves import transfer_sample

    skeleton = CurveSample(
        s=s, t=t, u=u, v=v, du=du, dv=dv, ddu=ddu, ddv=ddv,
        dddu=dddu, dddv=dddv,
        gamma=None, dgamma=None, ddgamma=None, dddgamma=None)
    return transfer_sample(patch, skeleton)


def _resample_locus(patch, vertices, ambient, closed, count):
    """Equal-arc-length samples along the traced polyline, corrected back
    onto the locus before the per-point data is evaluated."""
    if len(vertices) < 2 or count < 2:
        return [], 0.0
    pts = ambient
    segs = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    cum = np.concatenate([[0.0], np.cumsum(segs)])
    total = float(cum[-1])
    if closed:
        total += float(np.linalg.norm(pts[0] - pts[-1]))
    if total <= 0.0:
        return [], 0.0

    # Marching direction sign relative to the tangent field at the start.
    b0 = _g_bundle(patch, vertices[0][0], vertices[0][1])
    tu, tv = _tangent_dir(b0)
    step_u = vertices[1][0] - vertices[0][0]
    step_v = vertices[1][1] - vertices[0][1]
    sign = 1.0 if (tu * step_u + tv * step_v) >= 0.0 else -1.0

    samples = []
    targets = [total * i / (count - 1) for i in range(count)]
    for s in targets:
        if not closed:
            s = min(s, float(cum[-1]))
        idx = int(np.searchsorted(cum, s, side="right")) - 1
        if idx >= len(segs):
            if closed:
                # Inside the closing chord.
                frac = (s - cum[-1]) / max(total - cum[-1], 1e-300)
                base, nxt = vertices[-1], vertices[0]
            else:
                frac = 1.0
                base, nxt = vertices[-2], vertices[-1]
        else:
            idx = max(idx, 0)
            den = segs[idx] if segs[idx] > 0.0 else 1.0
            frac = (s - cum[idx]) / den
            base, nxt = vertices[idx], vertices[min(idx + 1, len(vertices) - 1)]
        u = float(base[0] + frac * (nxt[0] - base[0]))
        v = float(base[1] + frac * (nxt[1] - base[1]))
        u, v, b = _newton_correct(patch, u, v, _CORRECTOR_MAX, TRACE_TOL)
        if b is None or abs(b.g.f) > LOCUS_TOL:
            continue
        samples.append(_locus_sample(patch, u, v, s, sign))
    return samples, total
