"""Periodic grid, spectral differentiation, quadrature and Sobolev norms.

Everything downstream (profiles, functionals, operators, time stepping)
works on fields sampled on a uniform periodic grid over [-L, L).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

#: Boundary-decay tolerance for exponentially localized fields.
DECAY_TOL = 1e-8
#: Relaxed tolerance for algebraically decaying fields (Peregrine).
DECAY_TOL_ALGEBRAIC = 1e-3

MAX_DERIVATIVE_ORDER = 6


class DecayWarning(UserWarning):
    """Field does not reach its background at the domain edge."""


@dataclass(frozen=True)
class Grid1D:
    """Uniform periodic grid on [-L, L) with FFT wavenumbers pi*j/L.

    N must be a power of two (>= 8); h*N = 2L exactly.
    """

    N: int
    L: float
    h: float = field(init=False)
    x: np.ndarray = field(init=False, repr=False)
    k: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.N < 8 or (self.N & (self.N - 1)) != 0:
            raise ValueError(f"N must be a power of two >= 8, got {self.N}")
        if self.L <= 0:
            raise ValueError(f"L must be positive, got {self.L}")
        h = 2.0 * self.L / self.N
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "x", -self.L + h * np.arange(self.N))
        object.__setattr__(self, "k", 2.0 * np.pi * np.fft.fftfreq(self.N, d=h))

    @property
    def nyquist_index(self) -> int:
        return self.N // 2


@dataclass(frozen=True)
class ComplexField:
    """Complex samples of u(t, .) on a grid.

    ``stokes_time`` is None for fields decaying to zero and carries the phase
    time t for fields decaying to the Stokes wave e^{it}.
    """

    grid: Grid1D
    values: np.ndarray
    stokes_time: float | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != (self.grid.N,):
            raise ValueError(f"values shape {v.shape} does not match grid N={self.grid.N}")
        if not np.all(np.isfinite(v.view(np.float64))):
            raise ValueError("field contains non-finite samples")
        object.__setattr__(self, "values", v)

    @property
    def background_values(self) -> complex:
        if self.stokes_time is None:
            return 0.0 + 0.0j
        return np.exp(1j * self.stokes_time)

    def boundary_magnitude(self) -> float:
        """Max |u - background| over the outermost 1% of samples on each side."""
        m = max(1, self.grid.N // 100)
        edge = np.concatenate([self.values[:m], self.values[-m:]])
        return float(np.max(np.abs(edge - self.background_values)))

    def check_decay(self, tol: float = DECAY_TOL) -> float:
        mag = self.boundary_magnitude()
        if mag > tol:
            warnings.warn(
                f"boundary magnitude {mag:.3e} exceeds decay tolerance {tol:.1e}",
                DecayWarning,
                stacklevel=2,
            )
        return mag

    def shifted_to_zero_background(self) -> "ComplexField":
        """Subtract the Stokes background, returning a decaying field."""
        if self.stokes_time is None:
            return self
        return ComplexField(self.grid, self.values - self.background_values, None)


def spectral_derivative(f: ComplexField, order: int = 1) -> ComplexField:
    """d^order f / dx^order by Fourier multiplication with (ik)^order.

    The Nyquist mode is zeroed for odd orders (its sign is ambiguous and
    keeping it breaks the antisymmetry of odd derivatives).
    """
    if order < 1 or order > MAX_DERIVATIVE_ORDER:
        raise ValueError(f"order must be in 1..{MAX_DERIVATIVE_ORDER}, got {order}")
    g = f.grid
    mult = (1j * g.k) ** order
    if order % 2 == 1:
        mult[g.nyquist_index] = 0.0
    out = np.fft.ifft(mult * np.fft.fft(f.values))
    return ComplexField(g, out, None)


def quadrature(f: ComplexField, decay_tol: float = DECAY_TOL) -> complex:
    """Trapezoid rule h * sum(f); spectrally accurate for smooth decaying f.

    Warns (does not fail) when the integrand has not decayed at the edges,
    which happens for algebraic tails such as the Peregrine family.
    """
    f.check_decay(decay_tol)
    return complex(f.grid.h * np.sum(f.values))


def sobolev_norm(f: ComplexField, s: int = 0) -> float:
    """Discrete H^s norm, s in {0, 1, 2}.

    Uses the derivative-sum convention sum_{j<=s} |d^j f|_{L2}^2 so the result
    matches direct quadrature of |f|^2 + ... + |f^{(s)}|^2 exactly (Parseval).
    """
    if s not in (0, 1, 2):
        raise ValueError(f"s must be in {{0, 1, 2}}, got {s}")
    g = f.grid
    fhat2 = np.abs(np.fft.fft(f.values)) ** 2
    mult = np.zeros_like(g.k)
    for j in range(s + 1):
        mult += g.k ** (2 * j)
    return float(np.sqrt(g.h / g.N * np.sum(mult * fhat2)))


def field_from_values(grid: Grid1D, values: np.ndarray,
                      stokes_time: float | None = None) -> ComplexField:
    return ComplexField(grid, np.asarray(values, dtype=np.complex128), stokes_time)
