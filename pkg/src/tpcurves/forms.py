"""First/second fundamental forms and Christoffel symbols at a surface point.

Metric coefficients are E = phi_u . phi_u, F = phi_u . phi_v,
G = phi_v . phi_v; their first and second parameter derivatives come from
order-3 jet data, so connection symbols and their first derivatives are
exact to roundoff.

The unit normal is always phi_u x phi_v normalized, never flipped: the
signs of L, M, N and of the derived curvatures depend on it, and a fixed
convention beats guessing.

Christoffel symbols are computed twice: from the standard explicit E,F,G
formulas and from the general metric formula

    Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij),

and the two routes are required to agree to 1e-10.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePoint
from .jets import Field1, Field2

__all__ = [
    "FirstForm", "SecondForm", "Christoffel",
    "first_form", "second_form", "christoffel", "christoffel_from_metric",
    "gauss_equation_residual", "REGULARITY_THRESHOLD",
]

# Below this EG - F^2, normalization amplifies noise past every stated
# tolerance; fail loudly instead.
REGULARITY_THRESHOLD = 1e-14

_ORACLE_TOLERANCE = 1e-10


@dataclass(frozen=True)
class FirstForm:
    """Metric coefficients with first and second parameter derivatives."""

    E: float
    F: float
    G: float
    E_u: float
    E_v: float
    F_u: float
    F_v: float
    G_u: float
    G_v: float
    E_uu: float
    E_uv: float
    E_vv: float
    F_uu: float
    F_uv: float
    F_vv: float
    G_uu: float
    G_uv: float
    G_vv: float

    @property
    def det(self):
        return self.E * self.G - self.F * self.F

    @property
    def area_element(self):
        return math.sqrt(self.det)


@dataclass(frozen=True)
class SecondForm:
    """Normal components of the second partials, plus the unit normal."""

    L: float
    M: float
    N: float
    unit_normal: np.ndarray
    area_element: float  # |phi_u x phi_v| = sqrt(EG - F^2)


@dataclass(frozen=True)
class Christoffel:
    """Connection symbols g<ij><k> = Gamma^k_ij and their u, v derivatives."""

    g111: float
    g112: float  # Gamma^2_11
    g121: float  # Gamma^1_12
    g122: float  # Gamma^2_12
    g221: float  # Gamma^1_22
    g222: float  # Gamma^2_22
    g111_u: float
    g111_v: float
    g112_u: float
    g112_v: float
    g121_u: float
    g121_v: float
    g122_u: float
    g122_v: float
    g221_u: float
    g221_v: float
    g222_u: float
    g222_v: float


def metric_fields(jet):
    """E, F, G as order-2 scalar fields (value, gradient, Hessian)."""
    pu = [Field2.of_jet_du(c) for c in jet.components]
    pv = [Field2.of_jet_dv(c) for c in jet.components]
    E = pu[0] * pu[0] + pu[1] * pu[1] + pu[2] * pu[2]
    F = pu[0] * pv[0] + pu[1] * pv[1] + pu[2] * pv[2]
    G = pv[0] * pv[0] + pv[1] * pv[1] + pv[2] * pv[2]
    return E, F, G


def first_form(jet):
    """First fundamental form at a regular point."""
    E, F, G = metric_fields(jet)
    det = E.f * G.f - F.f * F.f
    if det <= REGULARITY_THRESHOLD:
        raise DegeneratePoint(
            f"EG - F^2 = {det} at (u, v) = ({jet.u}, {jet.v})")
    return FirstForm(
        E=E.f, F=F.f, G=G.f,
        E_u=E.fu, E_v=E.fv, F_u=F.fu, F_v=F.fv, G_u=G.fu, G_v=G.fv,
        E_uu=E.fuu, E_uv=E.fuv, E_vv=E.fvv,
        F_uu=F.fuu, F_uv=F.fuv, F_vv=F.fvv,
        G_uu=G.fuu, G_uv=G.fuv, G_vv=G.fvv,
    )


def second_form(jet):
    """Second fundamental form, oriented by phi_u x phi_v."""
    w = np.cross(jet.du, jet.dv)
    norm = float(np.linalg.norm(w))
    if norm * norm <= REGULARITY_THRESHOLD:
        raise DegeneratePoint(
            f"|phi_u x phi_v|^2 = {norm * norm} at (u, v) = ({jet.u}, {jet.v})")
    normal = w / norm
    return SecondForm(
        L=float(np.dot(jet.duu, normal)),
        M=float(np.dot(jet.duv, normal)),
        N=float(np.dot(jet.dvv, normal)),
        unit_normal=normal,
        area_element=norm,
    )


def christoffel_from_metric(E, F, G, E_u, E_v, F_u, F_v, G_u, G_v):
    """Independent oracle: Gamma^k_ij from the general metric formula.

    Returns (g111, g112, g121, g122, g221, g222) with the same index
    convention as :class:`Christoffel`.
    """
    g = np.array([[E, F], [F, G]])
    det = E * G - F * F
    if det <= REGULARITY_THRESHOLD:
        raise DegeneratePoint(f"EG - F^2 = {det}")
    g_inv = np.array([[G, -F], [-F, E]]) / det
    # dg[a][i][j] = d_a g_ij
    dg = np.array([[[E_u, F_u], [F_u, G_u]],
                   [[E_v, F_v], [F_v, G_v]]])
    gamma = np.zeros((2, 2, 2))  # gamma[k][i][j]
    for k in range(2):
        for i in range(2):
            for j in range(2):
                total = 0.0
                for l in range(2):
                    total += g_inv[k, l] * (dg[i, j, l] + dg[j, i, l] - dg[l, i, j])
                gamma[k, i, j] = 0.5 * total
    return (gamma[0, 0, 0], gamma[1, 0, 0], gamma[0, 0, 1],
            gamma[1, 0, 1], gamma[0, 1, 1], gamma[1, 1, 1])


def christoffel_fields(form):
    """The six symbols as order-1 fields (value plus u, v derivatives)."""
    E, F, G = (Field1(form.E, form.E_u, form.E_v),
               Field1(form.F, form.F_u, form.F_v),
               Field1(form.G, form.G_u, form.G_v))
    E_u = Field1(form.E_u, form.E_uu, form.E_uv)
    E_v = Field1(form.E_v, form.E_uv, form.E_vv)
    F_u = Field1(form.F_u, form.F_uu, form.F_uv)
    F_v = Field1(form.F_v, form.F_uv, form.F_vv)
    G_u = Field1(form.G_u, form.G_uu, form.G_uv)
    G_v = Field1(form.G_v, form.G_uv, form.G_vv)
    den = (E * G - F * F) * 2.0
    g111 = (G * E_u - F * F_u * 2.0 + F * E_v) / den
    g112 = (E * F_u * 2.0 - E * E_v - F * E_u) / den
    g121 = (G * E_v - F * G_u) / den
    g122 = (E * G_u - F * E_v) / den
    g221 = (G * F_v * 2.0 - G * G_u - F * G_v) / den
    g222 = (E * G_v - F * F_v * 2.0 + F * G_u) / den
    return g111, g112, g121, g122, g221, g222


def christoffel(form):
    """Connection symbols at a regular point, cross-checked against the
    metric-formula oracle."""
    if form.det <= REGULARITY_THRESHOLD:
        raise DegeneratePoint(f"EG - F^2 = {form.det}")
    g111, g112, g121, g122, g221, g222 = christoffel_fields(form)
    oracle = christoffel_from_metric(
        form.E, form.F, form.G, form.E_u, form.E_v,
        form.F_u, form.F_v, form.G_u, form.G_v)
    explicit = (g111.f, g112.f, g121.f, g122.f, g221.f, g222.f)
    scale = max(1.0, max(abs(x) for x in explicit))
    worst = max(abs(a - b) for a, b in zip(explicit, oracle))
    assert worst <= _ORACLE_TOLERANCE * scale, (
        f"Christoffel routes disagree by {worst}")
    return Christoffel(
        g111=g111.f, g112=g112.f, g121=g121.f,
        g122=g122.f, g221=g221.f, g222=g222.f,
        g111_u=g111.fu, g111_v=g111.fv,
        g112_u=g112.fu, g112_v=g112.fv,
        g121_u=g121.fu, g121_v=g121.fv,
        g122_u=g122.fu, g122_v=g122.fv,
        g221_u=g221.fu, g221_v=g221.fv,
        g222_u=g222.fu, g222_v=g222.fv,
    )


def gauss_equation_residual(jet, second, chris):
    """Residuals of the moving-frame expansion of the second partials.

    r_uu = phi_uu - Gamma^1_11 phi_u - Gamma^2_11 phi_v - L N, and the
    uv/vv analogues; each is an exact identity, so the residuals measure
    implementation error only.
    """
    n = second.unit_normal
    r_uu = jet.duu - chris.g111 * jet.du - chris.g112 * jet.dv - second.L * n
    r_uv = jet.duv - chris.g121 * jet.du - chris.g122 * jet.dv - second.M * n
    r_vv = jet.dvv - chris.g221 * jet.du - chris.g222 * jet.dv - second.N * n
    return r_uu, r_uv, r_vv
