"""Exact analytic entropy and kernel formulas.

Complete-graph heat and random-walk entropy, circulant kernel rows via the
discrete Fourier sum, the mean-field approximation for Erdos-Renyi graphs,
and the Lambert-W giant-component fraction.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .graphs import StepSet
from .spectral import spectrum_circulant

# Below this value of e^{-nt} the kernel is uniform to double precision.
_UNDERFLOW = 1e-300

# Direct O(n^2) Fourier sum below this size; FFT above.
_FFT_THRESHOLD = 512


def _two_level_entropy(a: float, b: float, n: int) -> float:
    # Entropy of a row with one diagonal entry a and n-1 off-diagonal entries b.
    ha = a * math.log(a) if a > 0.0 else 0.0
    hb = b * math.log(b) if b > 0.0 else 0.0
    return -(ha + (n - 1) * hb)


def complete_heat_entropy(n: int, t: float) -> float:
    """Conditional entropy of heat diffusion on K_n; independent of the initial condition.

    Evaluated through the kernel entries a = 1/n + (n-1)/n e^{-nt} and
    b = (1 - e^{-nt})/n, which is algebraically identical to the four-term
    log form but stable at both ends of the time axis.
    """
    if n < 2:
        raise ValueError(f"complete-graph entropy needs n >= 2, got {n}")
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    if t == 0.0:
        return 0.0
    e = math.exp(-n * t)
    if e < _UNDERFLOW:
        return math.log(n)
    a = (1.0 + (n - 1) * e) / n
    b = -math.expm1(-n * t) / n
    return _two_level_entropy(a, b, n)


def complete_rw_entropy(n: int, t: float) -> float:
    """Random-walk counterpart on K_n: heat slowed down by the constant degree n-1."""
    if n < 2:
        raise ValueError(f"complete-graph entropy needs n >= 2, got {n}")
    return complete_heat_entropy(n, t / (n - 1))


def circulant_kernel_row(
    n: int, steps: StepSet | Sequence[int], t: float, use_fft: bool | None = None
) -> np.ndarray:
    """First row h_t(r) of exp(-t L) on C_n(S) via the discrete Fourier sum.

    The full kernel follows by circulant shifting: T_ij = h_t((j - i) mod n).
    Direct O(n^2) sum by default, FFT above n=512 (or as forced by use_fft).
    """
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    spec = spectrum_circulant(n, steps)
    decay = np.exp(-t * spec.freq_eigenvalues)
    if use_fft is None:
        use_fft = n > _FFT_THRESHOLD
    if use_fft:
        h_complex = np.fft.fft(decay) / n
    else:
        kr = np.outer(np.arange(n), np.arange(n))
        h_complex = decay @ np.exp(-2j * np.pi * kr / n) / n
    if np.abs(h_complex.imag).max() > 1e-10:
        raise ArithmeticError("circulant kernel row has non-negligible imaginary part")
    h = h_complex.real
    if h.min() < -1e-10:
        raise ArithmeticError(f"circulant kernel entry {h.min()} below tolerance")
    return np.where(h < 0.0, 0.0, h)


def circulant_kernel(n: int, steps: StepSet | Sequence[int], t: float) -> np.ndarray:
    """Full circulant transition matrix reconstructed from its first row."""
    h = circulant_kernel_row(n, steps, t)
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return h[idx]


def circulant_entropy(n: int, steps: StepSet | Sequence[int], t: float) -> float:
    """Conditional entropy on C_n(S); all rows are shifts of h_t, so it is
    independent of the initial distribution."""
    h = circulant_kernel_row(n, steps, t)
    mask = h > 0.0
    return float(-(h[mask] * np.log(h[mask])).sum())


def meanfield_er_kernel_entries(n: int, p: float, t: float) -> tuple[float, float]:
    """Diagonal and off-diagonal entries (a, b) of the mean-field ER kernel."""
    if n < 2:
        raise ValueError(f"mean-field needs n >= 2, got {n}")
    if p <= 0.0 or p > 1.0:
        raise ValueError(f"edge probability must be in (0, 1], got {p}")
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    e = math.exp(-p * n * t)
    if e < _UNDERFLOW:
        return 1.0 / n, 1.0 / n
    b = -math.expm1(-p * n * t) / n
    return e + b, b


def meanfield_er_entropy(n: int, p: float, t: float) -> float:
    """Mean-field conditional entropy -(a log a + (n-1) b log b) for ER graphs."""
    a, b = meanfield_er_kernel_entries(n, p, t)
    return _two_level_entropy(a, b, n)


def lambert_w_principal(x: float, tol: float = 1e-12, max_iter: int = 100) -> float:
    """Principal branch W_0(x) for x >= -1/e, by Halley iteration."""
    if x < -1.0 / math.e - 1e-15:
        raise ValueError(f"W_0 undefined for x={x} < -1/e")
    if x == 0.0:
        return 0.0
    if x < 0.0:
        # series start near the branch point, good on (-1/e, 0)
        w = -1.0 + math.sqrt(max(0.0, 2.0 * (1.0 + math.e * x)))
    else:
        w = math.log1p(x)
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - x
        if abs(f) <= tol:
            return w
        denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * (w + 1.0))
        w -= f / denom
    raise ArithmeticError(f"Lambert W iteration did not converge for x={x}")


def giant_component_fraction(c: float) -> float:
    """Fraction of nodes in the giant component of a supercritical ER graph.

    S = 1 + W(-c e^{-c})/c, principal branch; equivalently the positive fixed
    point of S = 1 - e^{-cS}.
    """
    if c <= 1.0:
        raise ValueError(f"subcritical mean degree c={c}; need c > 1")
    s = 1.0 + lambert_w_principal(-c * math.exp(-c)) / c
    return min(s, 1.0)
