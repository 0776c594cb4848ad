"""Heat and random-walk transition kernels T(t) = exp(-t L) and probability propagation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import DisconnectedGraphError, Graph
from .spectral import (
    LaplacianKind,
    SpectralDecomposition,
    eig_symmetric,
    laplacian,
    spectral_gap,
)

# Kernel entries more negative than this indicate a genuine numerical failure;
# anything in (-NEGATIVE_TOL, 0) is floating-point noise and gets clipped.
NEGATIVE_TOL = 1e-10


class NumericFailure(ArithmeticError):
    """Raised when a kernel evaluation falls outside numerical tolerances."""


@dataclass(frozen=True)
class Distribution:
    """Probability vector over nodes; entries >= 0, sum 1 within 1e-12."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.probs, dtype=float)
        object.__setattr__(self, "probs", p)
        if p.ndim != 1:
            raise ValueError("distribution must be a vector")
        if np.any(p < 0):
            raise ValueError("distribution entries must be non-negative")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"distribution sums to {p.sum()!r}, not 1")

    @property
    def n(self) -> int:
        return self.probs.shape[0]

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def delta(cls, n: int, i: int) -> "Distribution":
        if not 0 <= i < n:
            raise ValueError(f"delta index {i} out of range for n={n}")
        p = np.zeros(n)
        p[i] = 1.0
        return cls(p)

    @classmethod
    def random_simplex(cls, n: int, rng: np.random.Generator) -> "Distribution":
        x = rng.random(n) + 1e-12
        return cls(x / x.sum())


@dataclass(frozen=True)
class HeatKernel:
    """Evaluator for T(t) = exp(-t L_kind); diffusion rate fixed at 1.

    The combinatorial kind carries a symmetric eigendecomposition; the
    random-walk kind carries the dense generator -L_RW and is evaluated
    through the scaling-and-squaring exponential.
    """

    n: int
    kind: LaplacianKind
    decomposition: SpectralDecomposition | None
    generator: np.ndarray | None  # Q = -L_RW for the random-walk kind

    @property
    def rate(self) -> float:
        return 1.0


def rescaled_time(t: float, rate: float) -> float:
    """Map a time under diffusion rate `rate` to the equivalent unit-rate time."""
    if rate <= 0:
        raise ValueError(f"rate must be positive, got {rate}")
    return rate * t


def heat_kernel(g: Graph, kind: LaplacianKind = LaplacianKind.COMBINATORIAL) -> HeatKernel:
    """Build a kernel for a graph, using the spectral path for the combinatorial Laplacian."""
    if kind is LaplacianKind.COMBINATORIAL:
        dec = eig_symmetric(laplacian(g, kind))
        return HeatKernel(n=g.n, kind=kind, decomposition=dec, generator=None)
    q = -laplacian(g, LaplacianKind.RANDOM_WALK)
    return HeatKernel(n=g.n, kind=kind, decomposition=None, generator=q)


def kernel_from_decomposition(dec: SpectralDecomposition) -> HeatKernel:
    """Wrap an existing (combinatorial) decomposition, e.g. an exact analytic one."""
    return HeatKernel(
        n=dec.n, kind=LaplacianKind.COMBINATORIAL, decomposition=dec, generator=None
    )


def expm_oracle(M: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a truncated Taylor series.

    Independent of the spectral kernel path; serves as a verification oracle
    and as the default route for the non-symmetric random-walk generator.
    """
    M = np.asarray(M, dtype=float)
    if not np.isfinite(M).all():
        raise NumericFailure("non-finite entries in matrix exponential input")
    n = M.shape[0]
    norm1 = float(np.abs(M).sum(axis=0).max())
    s = max(0, int(math.ceil(math.log2(norm1))) + 1) if norm1 > 0.5 else 0
    a = M / (2.0**s)
    out = np.eye(n)
    term = np.eye(n)
    for k in range(1, 60):
        term = term @ a / k
        out = out + term
        if np.abs(term).max() <= 1e-18 * max(1.0, np.abs(out).max()):
            break
    for _ in range(s):
        out = out @ out
    if not np.isfinite(out).all():
        raise NumericFailure("overflow in matrix exponential")
    return out


def _clip_rows(T: np.ndarray) -> np.ndarray:
    low = float(T.min())
    if low < -NEGATIVE_TOL:
        raise NumericFailure(f"kernel entry {low} below tolerance {-NEGATIVE_TOL}")
    if low < 0.0:
        T = np.where(T < 0.0, 0.0, T)
        T = T / T.sum(axis=1, keepdims=True)
    return np.minimum(T, 1.0)


def kernel_at(k: HeatKernel, t: float) -> np.ndarray:
    """Row-stochastic transition matrix at time t >= 0."""
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    if k.kind is LaplacianKind.COMBINATORIAL:
        dec = k.decomposition
        assert dec is not None
        decay = np.exp(-dec.eigenvalues * t)
        T = (dec.eigenvectors * decay) @ dec.eigenvectors.T
    else:
        assert k.generator is not None
        T = expm_oracle(k.generator * t)
    return _clip_rows(T)


def propagate(k: HeatKernel, p0: Distribution, t: float) -> Distribution:
    """Evolve an initial distribution: p(t)^T = p(0)^T T(t)."""
    if p0.n != k.n:
        raise ValueError(f"distribution size {p0.n} does not match kernel size {k.n}")
    pt = p0.probs @ kernel_at(k, t)
    # kernel rows sum to 1, so mass is conserved up to roundoff
    return Distribution(pt / pt.sum())


@dataclass(frozen=True)
class MixingEstimate:
    """Spectral-gap estimate of the time to reach stationarity."""

    gap: float
    leading_coefficient: float  # |p0 . v2| * ||v2||_inf
    t_eps: float


def mixing_estimate(k: HeatKernel, p0: Distribution, eps: float) -> MixingEstimate:
    """Estimate t_eps with deviation decaying as e^{-lambda_2 t} times the leading coefficient."""
    if k.kind is not LaplacianKind.COMBINATORIAL:
        raise ValueError("mixing estimate requires the combinatorial kind")
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    dec = k.decomposition
    assert dec is not None
    gap = spectral_gap(dec)
    if gap <= 1e-10:
        raise DisconnectedGraphError("no mixing: spectral gap is zero")
    v2 = dec.eigenvectors[:, 1]
    c = abs(float(p0.probs @ v2)) * float(np.abs(v2).max())
    t_eps = math.log(c / eps) / gap if c > eps else 0.0
    return MixingEstimate(gap=gap, leading_coefficient=c, t_eps=t_eps)


def stationarity_deviation(k: HeatKernel, t: float) -> float:
    """Max-norm distance of any kernel row from the uniform distribution."""
    T = kernel_at(k, t)
    return float(np.abs(T - 1.0 / k.n).max())


def log_time_grid(t_min: float, t_max: float, points: int) -> np.ndarray:
    """Logarithmically spaced time grid."""
    if not (0 < t_min < t_max):
        raise ValueError(f"need 0 < t_min < t_max, got {t_min}, {t_max}")
    if points < 2:
        raise ValueError("grid needs at least 2 points")
    return np.geomspace(t_min, t_max, points)


def default_time_grid(gap: float | None, points: int = 60, t_min: float = 1e-3) -> np.ndarray:
    """Default log grid; t_max = 50/gap reaches within ~1e-6 of the asymptote."""
    t_max = 50.0 / gap if gap is not None and gap > 1e-10 else 1e3
    return log_time_grid(t_min, t_max, points)
