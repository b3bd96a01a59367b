"""Pointwise residuals of the elliptic identities, Gateaux criticality of the
Lyapunov functionals, and the quadratic forms of their second variation.

Every residual is normalized by max|B_xxxx| + n|B| so tolerances mean the
same thing across families and parameter draws, and is measured over the
interior window |x| <= L/2: the fourth spectral derivative rings at the
periodization seam with amplitude set by the truncated tail (e^{-beta L}, or
1/L^2 for Peregrine), which measures the domain, not the identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import functionals as fn
from .breathers import (BreatherSpec, q_profile_derivatives, sample,
                        ss_q_beta, sy_two_soliton)
from .grid import ComplexField, Grid1D, sobolev_norm, spectral_derivative

#: models whose elliptic equation subtracts the Stokes background
_STOKES_MODELS = ("km", "p")


#: fraction of the half-domain kept when reporting residual norms
INTERIOR_FRACTION = 0.5


@dataclass(frozen=True)
class ResidualReport:
    equation: str
    max_abs: float          # normalized sup norm over |x| <= L/2
    l2: float               # normalized L2 norm over the same window
    location_of_max: int
    scale: float            # normalization constant max|B_xxxx| + n|B|


def _report(equation: str, residual: np.ndarray, grid: Grid1D,
            scale: float) -> ResidualReport:
    mask = np.abs(grid.x) <= INTERIOR_FRACTION * grid.L
    r = np.where(mask, np.abs(residual), 0.0)
    i = int(np.argmax(r))
    l2 = float(np.sqrt(grid.h * np.sum(r**2)))
    return ResidualReport(equation=equation, max_abs=float(r[i] / scale),
                          l2=l2 / scale, location_of_max=i, scale=scale)


def _derivatives(field: ComplexField, orders=(1, 2, 3, 4)):
    return {j: spectral_derivative(field, j).values for j in orders}


def elliptic_coefficients(model: str, spec: BreatherSpec) -> tuple[float, float]:
    """(m, n) as they appear inside the printed fourth-order equations."""
    if model == "ss":
        return 2.0 * (spec.beta**2 - spec.alpha**2), (spec.alpha**2 + spec.beta**2) ** 2
    if model == "sy":
        return spec.c2**2 + spec.c1**2, spec.c1**2 * spec.c2**2
    if model == "km":
        return spec.km_beta**2, 0.0
    if model == "p":
        return 0.0, 0.0
    raise ValueError(model)


def elliptic_expression(model: str, spec: BreatherSpec,
                        field: ComplexField) -> np.ndarray:
    """G[B]: the left-hand side of the model's fourth-order equation."""
    B = field.values
    d = _derivatives(field)
    Bx, Bxx, B4 = d[1], d[2], d[4]
    Bb = np.conj(B)
    m2 = np.abs(B) ** 2
    m, n = elliptic_coefficients(model, spec)
    if model == "ss":
        return (B4 + 8.0 * Bx**2 * Bb + 14.0 * m2 * Bxx + 6.0 * B**2 * np.conj(Bxx)
                + 12.0 * np.abs(Bx) ** 2 * B + 24.0 * m2**2 * B
                - m * (Bxx + 4.0 * m2 * B) + n * B)
    if model == "sy":
        return (B4 + 3.0 * Bx**2 * Bb + 4.0 * m2 * Bxx + B**2 * np.conj(Bxx)
                + 2.0 * np.abs(Bx) ** 2 * B + 1.5 * m2**2 * B
                - m * (Bxx + m2 * B) + n * B)
    if model in _STOKES_MODELS:
        g = (B4 + 3.0 * Bx**2 * Bb + (4.0 * m2 - 3.0) * Bxx + B**2 * np.conj(Bxx)
             + 2.0 * np.abs(Bx) ** 2 * B + 1.5 * (m2 - 1.0) ** 2 * B)
        if model == "km":
            g = g - m * (Bxx + (m2 - 1.0) * B)
        return g
    raise ValueError(model)


def _elliptic_scale(model: str, spec: BreatherSpec, field: ComplexField) -> float:
    b4 = spectral_derivative(field, 4).values
    _, n = elliptic_coefficients(model, spec)
    return float(np.max(np.abs(b4)) + n * np.max(np.abs(field.values)))


def elliptic_residual(model: str, field: ComplexField,
                      spec: BreatherSpec) -> ResidualReport:
    """Residual of the model's fourth-order elliptic equation on a sampled field."""
    if model in _STOKES_MODELS and field.stokes_time is None:
        raise ValueError(f"model {model!r} expects a Stokes-tagged field")
    if model in ("ss", "sy") and field.stokes_time is not None:
        raise ValueError(f"model {model!r} expects a zero-background field")
    g = elliptic_expression(model, spec, field)
    return _report(f"elliptic[{model}]", g, field.grid,
                   _elliptic_scale(model, spec, field))


def ss_third_order_residual(spec: BreatherSpec, t: float = 0.0,
                            grid: Grid1D | None = None,
                            drop_beta_term: bool = False) -> ResidualReport:
    """Residual of the third-order profile equation

    Q''' + 9 Q Qb Q' + 3 Q^2 Qb' - beta^2 Q' + 3 i alpha (Q'' - beta^2 Q + 2 Q^2 Qb) = 0.

    ``drop_beta_term`` removes -beta^2 Q' (negative control for the checker).
    """
    grid = grid or Grid1D(1024, 30.0)
    a, b = spec.alpha, spec.beta
    q = ComplexField(grid, ss_q_beta(spec, grid.x + spec.gamma * t + spec.x2))
    d = _derivatives(q, (1, 2, 3))
    Q, Q1, Q2, Q3 = q.values, d[1], d[2], d[3]
    Qb = np.conj(Q)
    res = (Q3 + 9.0 * Q * Qb * Q1 + 3.0 * Q**2 * np.conj(Q1)
           + 3j * a * (Q2 - b**2 * Q + 2.0 * Q**2 * Qb))
    if not drop_beta_term:
        res = res - b**2 * Q1
    scale = float(np.max(np.abs(Q3)) + b**2 * np.max(np.abs(Q)))
    return _report("ss-third-order", res, grid, scale)


def ss_fourth_order_profile_residual(spec: BreatherSpec,
                                     grid: Grid1D | None = None) -> ResidualReport:
    """Residual of the phase-stripped fourth-order profile equation.

    Pointwise equal in modulus to the full elliptic expression: the two are
    related by the factor e^{i Theta}.
    """
    grid = grid or Grid1D(1024, 30.0)
    a, _ = spec.alpha, spec.beta
    m, n = elliptic_coefficients("ss", spec)
    q = ComplexField(grid, ss_q_beta(spec, grid.x))
    d = _derivatives(q)
    Q, Q1, Q2, Q3, Q4 = q.values, d[1], d[2], d[3], d[4]
    Qb = np.conj(Q)
    res = (Q4 + 4j * a * Q3 - 6.0 * a**2 * Q2 - 4j * a**3 * Q1 + a**4 * Q
           + 8.0 * Qb * Q1**2 + 14.0 * Q * Qb * Q2 + 12.0 * Q1 * np.conj(Q1) * Q
           + 32j * a * Q * Qb * Q1 - 16.0 * a**2 * Q**2 * Qb
           + 6.0 * Q**2 * np.conj(Q2) + 24.0 * Q**3 * Qb**2
           - m * (Q2 + 2j * a * Q1 - a**2 * Q + 4.0 * Q**2 * Qb) + n * Q)
    scale = float(np.max(np.abs(Q4)) + n * np.max(np.abs(Q)))
    return _report("ss-profile-fourth-order", res, grid, scale)


def nonlinear_identity_residual_ss(spec: BreatherSpec,
                                   grid: Grid1D | None = None,
                                   perturb: float = 0.0) -> ResidualReport:
    """Residual of the pointwise nonlinear identity satisfied by Q_beta.

    Stands in for the symbolic vanishing of all the exponential-expansion
    coefficients. ``perturb`` adds perturb*sech(x) to the profile (negative
    control).
    """
    grid = grid or Grid1D(1024, 30.0)
    a, b = spec.alpha, spec.beta
    vals = ss_q_beta(spec, grid.x)
    if perturb:
        vals = vals + perturb / np.cosh(grid.x)
    q = ComplexField(grid, vals)
    d = _derivatives(q, (1, 2))
    Q, Q1, Q2 = q.values, d[1], d[2]
    Qb, Q1b, Q2b = np.conj(Q), np.conj(Q1), np.conj(Q2)
    s2 = a**2 + b**2
    res = (-s2 * Q2 + b**2 * s2 * Q - 2.0 * (a**2 + 4.0 * b**2) * Q**2 * Qb
           + 11j * a * Q * Q1 * Qb - 9j * a * Q**2 * Q1b
           - Qb * Q1**2 - 3.0 * Q * Q1b * Q1 + 3.0 * Q**2 * Q2b
           + 5.0 * Q * Qb * Q2 + 24.0 * Q**3 * Qb**2)
    scale = float(s2 * np.max(np.abs(Q2)) + b**2 * s2 * np.max(np.abs(Q)))
    return _report("ss-nonlinear-identity", res, grid, scale)


def two_soliton_coefficients(spec: BreatherSpec) -> tuple[float, float, float, float]:
    """(m, n, p, l) of the extended 2-soliton elliptic equation."""
    c1, c2, a1, a2 = spec.c1, spec.c2, spec.alpha1, spec.alpha2
    m = c2**2 + c1**2 + (a1 + a2) ** 2 + 2.0 * a1 * a2
    n = (c1**2 + a1**2) * (c2**2 + a2**2)
    p = -2.0 * (c2**2 * a1 + c1**2 * a2 + a1 * a2 * (a1 + a2))
    l = 2.0 * (a1 + a2)
    return m, n, p, l


def two_soliton_residual(spec: BreatherSpec, t: float = 0.0,
                         grid: Grid1D | None = None,
                         m_offset: float = 0.0) -> ResidualReport:
    """Residual of the extended fourth-order equation of the general 2-soliton.

    ``m_offset`` shifts the m coefficient (negative control).
    """
    grid = grid or Grid1D(1024, 30.0)
    m, n, p, l = two_soliton_coefficients(spec)
    m = m + m_offset
    f = ComplexField(grid, sy_two_soliton(spec, t, grid.x))
    d = _derivatives(f, (1, 2, 3, 4))
    B, Bx, Bxx, B3, B4 = f.values, d[1], d[2], d[3], d[4]
    Bb = np.conj(B)
    m2 = np.abs(B) ** 2
    res = (B4 + 3.0 * Bx**2 * Bb + 4.0 * m2 * Bxx + 2.0 * np.abs(Bx) ** 2 * B
           + B**2 * np.conj(Bxx) + 1.5 * m2**2 * B
           - m * (Bxx + m2 * B) + n * B
           + 1j * p * Bx + 1j * l * (B3 + 3.0 * m2 * Bx))
    scale = float(np.max(np.abs(B4)) + n * np.max(np.abs(B)))
    return _report("sy2-extended", res, grid, scale)


# ---------------------------------------------------------------------------
# Linearized operators applied to fields

def linearized_apply(model: str, B: ComplexField, spec: BreatherSpec,
                     z: ComplexField) -> ComplexField:
    """L_X[z]: second variation of H_X at the sampled breather B."""
    dB = _derivatives(B, (1, 2))
    Bv, Bx, Bxx = B.values, dB[1], dB[2]
    Bb, Bxb, Bxxb = np.conj(Bv), np.conj(Bx), np.conj(Bxx)
    m2 = np.abs(Bv) ** 2
    dz = _derivatives(z, (1, 2, 4))
    zv, zx, zxx, z4 = z.values, dz[1], dz[2], dz[4]
    zb, zxb, zxxb = np.conj(zv), np.conj(zx), np.conj(zxx)
    m, n = elliptic_coefficients(model, spec)

    if model == "ss":
        out = (z4 + 14.0 * m2 * zxx + 6.0 * Bv**2 * zxxb
               + (12.0 * Bv * Bxb + 16.0 * Bb * Bx) * zx + 12.0 * Bv * Bx * zxb
               + (14.0 * Bb * Bxx + 12.0 * np.abs(Bx) ** 2 + 12.0 * Bv * Bxxb
                  + 72.0 * m2**2) * zv
               + (14.0 * Bv * Bxx + 8.0 * Bx**2 + 48.0 * m2 * Bv**2) * zb
               - m * (zxx + 8.0 * m2 * zv + 4.0 * Bv**2 * zb) + n * zv)
    elif model == "sy":
        out = (z4 + 4.0 * m2 * zxx + Bv**2 * zxxb
               + (2.0 * Bv * Bxb + 6.0 * Bb * Bx) * zx + 2.0 * Bv * Bx * zxb
               + (2.0 * np.abs(Bx) ** 2 + 2.0 * Bv * Bxxb + 4.0 * Bb * Bxx
                  + 4.5 * m2**2) * zv
               + (3.0 * Bx**2 + 4.0 * Bv * Bxx + 3.0 * m2 * Bv**2) * zb
               - m * (zxx + Bv**2 * zb + 2.0 * m2 * zv) + n * zv)
    elif model in _STOKES_MODELS:
        out = (z4 + (4.0 * m2 - 3.0) * zxx + Bv**2 * zxxb
               + (2.0 * Bv * Bxb + 6.0 * Bb * Bx) * zx + 2.0 * Bv * Bx * zxb
               + (2.0 * np.abs(Bx) ** 2 + 2.0 * Bv * Bxxb + 4.0 * Bb * Bxx) * zv
               + (3.0 * Bx**2 + 4.0 * Bv * Bxx) * zb
               + 1.5 * (m2 - 1.0) ** 2 * zv
               + 6.0 * (m2 - 1.0) * Bv * np.real(Bv * zb))
        if model == "km":
            out = out - m * (zxx + Bv**2 * zb + (2.0 * m2 - 1.0) * zv)
    else:
        raise ValueError(model)
    return ComplexField(z.grid, out, None)


def quadratic_form(model: str, spec: BreatherSpec, z: ComplexField,
                   t: float = 0.0, B: ComplexField | None = None) -> float:
    """Q_X[z] = Re int conj(z) L_X[z] dx with the breather sampled at t.

    This is the s^2 Taylor coefficient of s -> H_X[B + s z].
    """
    if B is None:
        B = sample(spec, t, z.grid)
    lz = linearized_apply(model, B, spec, z)
    g = z.grid
    return float(np.real(g.h * np.sum(np.conj(z.values) * lz.values)))


# ---------------------------------------------------------------------------
# Gateaux criticality

def default_directions(grid: Grid1D, width: float = 2.0) -> list[ComplexField]:
    """Six smooth decaying test directions: Gaussians times 1, i, x, ix, sin x, i sin x."""
    g = np.exp(-(grid.x / width) ** 2 / 2.0)
    shapes = [g, 1j * g, grid.x * g, 1j * grid.x * g,
              np.sin(grid.x) * g, 1j * np.sin(grid.x) * g]
    return [ComplexField(grid, s) for s in shapes]


def gateaux_derivative(model: str, spec: BreatherSpec, z: ComplexField,
                       t: float = 0.0,
                       coeffs: fn.LyapunovCoefficients | None = None) -> float:
    """|H'_X[B](z)| by Richardson-combined central differences (s = 1e-4, 1e-5).

    Fixed step sizes keep the golden values reproducible.
    """
    if coeffs is None:
        coeffs = fn.lyapunov_coefficients(model, spec, fn.RESOLVED)
    B = sample(spec, t, z.grid)

    def h_at(s: float) -> float:
        u = ComplexField(B.grid, B.values + s * z.values, B.stokes_time)
        return fn.lyapunov(model, u, coeffs)

    def central(s: float) -> float:
        return (h_at(s) - h_at(-s)) / (2.0 * s)

    s1, s2 = 1e-4, 1e-5
    d1, d2 = central(s1), central(s2)
    return float(abs((s1**2 * d2 - s2**2 * d1) / (s1**2 - s2**2)))


def gateaux_check(model: str, spec: BreatherSpec,
                  directions: list[ComplexField] | None = None,
                  t: float = 0.0, grid: Grid1D | None = None,
                  coeffs: fn.LyapunovCoefficients | None = None) -> list[float]:
    """|H'| over a basket of directions, each scaled by 1/||z||_H2."""
    if directions is None:
        grid = grid or Grid1D(1024, 30.0)
        directions = default_directions(grid)
    return [gateaux_derivative(model, spec, z, t, coeffs) / sobolev_norm(z, 2)
            for z in directions]
