"""Closed-form breather and soliton profiles.

Families
--------
ss        Sasa-Satsuma breather (complex mKdV flow), parameters alpha, beta
sy        Satsuma-Yajima breather of focusing NLS, parameters c1 != c2
km        Kuznetsov-Ma breather on the Stokes background, parameter a > 1/2
p         Peregrine breather on the Stokes background
sy2       general NLS 2-soliton extending sy with velocities alpha1, alpha2
soliton   standard NLS soliton sqrt(c) sech
stokes    the uniform Stokes wave e^{it}
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .grid import ComplexField, Grid1D

FAMILIES = ("ss", "sy", "km", "p", "sy2", "soliton", "stokes")

#: Families whose fields decay to the Stokes wave rather than to zero.
STOKES_FAMILIES = ("km", "p", "stokes")


@dataclass(frozen=True)
class BreatherSpec:
    """Family tag plus parameters; only the fields of the family are used."""

    family: str
    alpha: float = 1.0       # ss phase frequency
    beta: float = 1.0        # ss scaling
    c1: float = 1.0          # sy / sy2
    c2: float = 3.0          # sy / sy2
    a: float = 1.0           # km, must exceed 1/2
    alpha1: float = 0.0      # sy2 velocity
    alpha2: float = 0.0      # sy2 velocity
    c: float = 1.0           # soliton scaling
    v: float = 0.0           # soliton velocity
    x1: float = 0.0          # ss phase shift
    x2: float = 0.0          # ss envelope shift
    t0: float = 0.0          # km / p time shift
    x0: float = 0.0          # spatial shift (km / p / soliton)
    gamma0: float = 0.0      # soliton phase

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        if self.family == "ss":
            if self.alpha <= 0 or self.beta <= 0:
                raise ValueError("ss breather requires alpha > 0 and beta > 0")
        elif self.family in ("sy", "sy2"):
            if self.c1 <= 0 or self.c2 <= 0:
                raise ValueError("sy breather requires c1 > 0 and c2 > 0")
            if self.family == "sy" and self.c1 == self.c2:
                raise ValueError("sy breather requires c1 != c2 (gamma_- would vanish)")
        elif self.family == "km":
            if self.a <= 0.5:
                raise ValueError("km breather requires a > 1/2")
        elif self.family == "soliton":
            if self.c <= 0:
                raise ValueError("soliton requires c > 0")

    # -- derived ss parameters -------------------------------------------------
    @property
    def eta(self) -> complex:
        return self.alpha / (self.alpha + 1j * self.beta)

    @property
    def gamma(self) -> float:
        """Envelope speed parameter 3*alpha^2 - beta^2."""
        return 3.0 * self.alpha**2 - self.beta**2

    @property
    def delta(self) -> float:
        """Phase speed parameter alpha^2 - 3*beta^2."""
        return self.alpha**2 - 3.0 * self.beta**2

    # -- derived km parameters -------------------------------------------------
    @property
    def km_alpha(self) -> float:
        return float(np.sqrt(8.0 * self.a * (2.0 * self.a - 1.0)))

    @property
    def km_beta(self) -> float:
        return float(np.sqrt(2.0 * (2.0 * self.a - 1.0)))

    # -- derived sy parameters -------------------------------------------------
    @property
    def gamma_plus(self) -> float:
        return self.c2 + self.c1

    @property
    def gamma_minus(self) -> float:
        return self.c2 - self.c1

    @property
    def sy_period(self) -> float:
        """Envelope period 2*pi / (gamma_+ * gamma_-) of the sy breather."""
        return 2.0 * np.pi / abs(self.gamma_plus * self.gamma_minus)

    def with_shifts(self, **kw) -> "BreatherSpec":
        return replace(self, **kw)


@dataclass(frozen=True)
class HumpClass:
    """Shape regime of |Q_eta|: single iff |eta| > 1/2, equivalently gamma > 0."""

    kind: str  # "single" | "double"
    eta_abs: float
    gamma: float


def q_profile(eta: complex, y) -> np.ndarray:
    """Q_eta(y) = 2(e^y + eta e^{-y}) / (e^{2y} + 2 + |eta|^2 e^{-2y}).

    Evaluated with the dominant exponential factored out of numerator and
    denominator on each half line, so |y| up to ~700 stays finite.
    """
    y = np.asarray(y, dtype=np.float64)
    eta2 = abs(eta) ** 2
    pos = y >= 0
    out = np.empty(y.shape, dtype=np.complex128)
    # y >= 0: multiply through by e^{-2y}
    yp = np.where(pos, y, 0.0)
    out_p = 2.0 * (np.exp(-yp) + eta * np.exp(-3.0 * yp)) / (
        1.0 + 2.0 * np.exp(-2.0 * yp) + eta2 * np.exp(-4.0 * yp))
    # y < 0: multiply through by e^{2y}
    yn = np.where(pos, 0.0, y)
    out_n = 2.0 * (np.exp(3.0 * yn) + eta * np.exp(yn)) / (
        np.exp(4.0 * yn) + 2.0 * np.exp(2.0 * yn) + eta2)
    out = np.where(pos, out_p, out_n)
    return out


def q_profile_derivatives(eta: complex, y):
    """(Q, Q', Q'') of the eta-profile from the closed-form quotient rule."""
    y = np.asarray(y, dtype=np.float64)
    eta2 = abs(eta) ** 2
    ep, em = np.exp(y), np.exp(-y)
    num = 2.0 * (ep + eta * em)
    num1 = 2.0 * (ep - eta * em)
    num2 = num
    den = ep**2 + 2.0 + eta2 * em**2
    den1 = 2.0 * (ep**2 - eta2 * em**2)
    den2 = 4.0 * (ep**2 + eta2 * em**2)
    q = num / den
    q1 = (num1 * den - num * den1) / den**2
    q2 = (num2 * den**2 - 2.0 * num1 * den1 * den - num * den2 * den
          + 2.0 * num * den1**2) / den**3
    return q, q1, q2


def ss_q_beta(spec: BreatherSpec, y) -> np.ndarray:
    """Scaled profile Q_beta(y) = beta * Q_eta(beta * y)."""
    return spec.beta * q_profile(spec.eta, spec.beta * np.asarray(y, dtype=np.float64))


def ss_profile(spec: BreatherSpec, t: float, x) -> np.ndarray:
    """Sasa-Satsuma breather Q_beta(x + gamma t + x2) e^{i alpha (x + delta t + x1)}."""
    _require(spec, "ss")
    x = np.asarray(x, dtype=np.float64)
    envelope = ss_q_beta(spec, x + spec.gamma * t + spec.x2)
    theta = spec.alpha * (x + spec.delta * t + spec.x1)
    return envelope * np.exp(1j * theta)


def hump_classification(spec: BreatherSpec) -> HumpClass:
    _require(spec, "ss")
    eta_abs = abs(spec.eta)
    kind = "single" if eta_abs > 0.5 else "double"
    return HumpClass(kind=kind, eta_abs=eta_abs, gamma=spec.gamma)


def _scaled_cosh(a: float, x: np.ndarray, damp: np.ndarray) -> np.ndarray:
    """cosh(a*x) * e^{-damp} for damp >= a|x|, without overflow."""
    ax = abs(a) * np.abs(x)
    return 0.5 * (np.exp(ax - damp) + np.exp(-ax - damp))


def sy_breather(spec: BreatherSpec, t: float, x) -> np.ndarray:
    """Satsuma-Yajima breather of NLS with zero background."""
    _require(spec, "sy")
    x = np.asarray(x, dtype=np.float64)
    gp, gm = spec.gamma_plus, spec.gamma_minus
    c1, c2 = spec.c1, spec.c2
    damp = gp * np.abs(x)  # gamma_+ dominates every cosh below
    num = 2.0 * np.sqrt(2.0) * gp * gm * np.exp(1j * c1**2 * t) * (
        c1 * _scaled_cosh(c2, x, damp)
        + c2 * np.exp(1j * gp * gm * t) * _scaled_cosh(c1, x, damp))
    den = (gm**2 * _scaled_cosh(gp, x, damp)
           + gp**2 * _scaled_cosh(gm, x, damp)
           + 4.0 * c1 * c2 * np.cos(gp * gm * t) * np.exp(-damp))
    return num / den


def km_breather(spec: BreatherSpec, t: float, x) -> np.ndarray:
    """Kuznetsov-Ma breather; denominator positive since alpha > sqrt(2) beta."""
    _require(spec, "km")
    x = np.asarray(x, dtype=np.float64) - spec.x0
    tt = t - spec.t0
    al, be = spec.km_alpha, spec.km_beta
    num = np.sqrt(2.0) * be * (be**2 * np.cos(al * tt) + 1j * al * np.sin(al * tt))
    den = al * np.cosh(be * x) - np.sqrt(2.0) * be * np.cos(al * tt)
    return np.exp(1j * t) * (1.0 - num / den)


def peregrine(t: float, x, t0: float = 0.0, x0: float = 0.0) -> np.ndarray:
    """Peregrine breather e^{it}(1 - 4(1+2it)/(1+4t^2+2x^2)), shifted arguments."""
    x = np.asarray(x, dtype=np.float64) - x0
    tt = t - t0
    return np.exp(1j * t) * (1.0 - 4.0 * (1.0 + 2j * tt) / (1.0 + 4.0 * tt**2 + 2.0 * x**2))


def stokes(t: float) -> complex:
    return complex(np.exp(1j * t))


def nls_soliton(spec: BreatherSpec, t: float, x) -> np.ndarray:
    """sqrt(c) e^{i(ct + xv/2 - v^2 t/4 + gamma0)} sech(sqrt(c)(x - vt - x0))."""
    _require(spec, "soliton")
    x = np.asarray(x, dtype=np.float64)
    c, v = spec.c, spec.v
    sc = np.sqrt(c)
    phase = c * t + 0.5 * x * v - 0.25 * v**2 * t + spec.gamma0
    return sc * np.exp(1j * phase) / np.cosh(sc * (x - v * t - spec.x0))


def sy_two_soliton(spec: BreatherSpec, t: float, x) -> np.ndarray:
    """General NLS 2-soliton; reduces to the sy breather as alpha1, alpha2 -> 0."""
    _require(spec, "sy2")
    x = np.asarray(x, dtype=np.float64)
    c1, c2, a1, a2 = spec.c1, spec.c2, spec.alpha1, spec.alpha2
    y1 = c1 * (x + 2.0 * a1 * t)
    y2 = c2 * (x + 2.0 * a2 * t)
    th1 = a1 * x + (a1**2 - c1**2) * t
    th2 = a2 * x + (a2**2 - c2**2) * t

    q1 = -np.sqrt(2.0) * c1 * np.exp(-1j * th1) / np.cosh(y1)

    # r and s may be rescaled by any common positive factor; damp the largest
    # exponentials so |y| up to the full domain stays representable.
    damp = np.abs(y1) + 0.5 * np.abs(y2)
    mu = a2 - a1 + 1j * c2
    cosh_d = _scaled_cosh(1.0, y1, damp)          # cosh(y1) e^{-damp}
    sinh_d = 0.5 * (np.exp(np.abs(y1) - damp) - np.exp(-np.abs(y1) - damp)) * np.sign(y1)
    r = np.exp(-0.5 * y2 - damp + 0.5j * th2) * 1j * c1 * np.exp(y2 + 1j * (th1 - th2)) \
        + np.exp(-0.5 * y2 + 0.5j * th2) * (mu * cosh_d + 1j * c1 * sinh_d)
    s = np.exp(0.5 * y2 - damp - 0.5j * th2) * 1j * c1 * np.exp(-(y2 + 1j * (th1 - th2))) \
        + np.exp(0.5 * y2 - 0.5j * th2) * (mu * cosh_d - 1j * c1 * sinh_d)
    norm2 = np.abs(r) ** 2 + np.abs(s) ** 2
    if np.any(norm2 < 1e-280):
        raise FloatingPointError("2-soliton denominator |r|^2+|s|^2 underflowed")
    return q1 + 2.0 * np.sqrt(2.0) * c2 * s * np.conj(r) / norm2


def evaluate(spec: BreatherSpec, t: float, x) -> np.ndarray:
    """Dispatch to the family's closed form."""
    if spec.family == "ss":
        return ss_profile(spec, t, x)
    if spec.family == "sy":
        return sy_breather(spec, t, x)
    if spec.family == "km":
        return km_breather(spec, t, x)
    if spec.family == "p":
        return peregrine(t, x, spec.t0, spec.x0)
    if spec.family == "sy2":
        return sy_two_soliton(spec, t, x)
    if spec.family == "soliton":
        return nls_soliton(spec, t, x)
    if spec.family == "stokes":
        return np.full(np.shape(x), stokes(t), dtype=np.complex128)
    raise ValueError(spec.family)


def sample(spec: BreatherSpec, t: float, grid: Grid1D) -> ComplexField:
    """Sample the solution on a grid with the correct background tag."""
    values = evaluate(spec, t, grid.x)
    stokes_t = t if spec.family in STOKES_FAMILIES else None
    return ComplexField(grid, values, stokes_t)


def time_derivative(spec: BreatherSpec, t: float, x, dt: float | None = None) -> np.ndarray:
    """4th-order central difference of the exact solution in t.

    Closed-form d/dt expressions are long; differencing the exact formula at
    step ~1e-3 (scaled by the fastest internal frequency) gives ~1e-12.
    """
    if dt is None:
        rate = {"ss": max(abs(spec.gamma), abs(spec.delta) * spec.alpha, 1.0),
                "km": spec.km_alpha,
                "sy": abs(spec.gamma_plus * spec.gamma_minus),
                "sy2": spec.c2**2}.get(spec.family, 1.0)
        dt = 1e-3 * min(1.0, 1.0 / max(rate, 1e-3))
    f = lambda s: evaluate(spec, s, x)
    return (-f(t + 2 * dt) + 8 * f(t + dt) - 8 * f(t - dt) + f(t - 2 * dt)) / (12.0 * dt)


def _require(spec: BreatherSpec, family: str):
    if spec.family != family:
        raise ValueError(f"expected family {family!r}, got {spec.family!r}")
