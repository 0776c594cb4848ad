"""Information-theoretic measures for graph diffusion.

Shannon entropy, KL divergence, the conditional entropy H(X(t)|X(0)) of a
diffusion kernel, asymptotic values, the Pinsker lower bound on the entropy
gap, and the non-monotone counterexample chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .diffusion import Distribution, HeatKernel, kernel_at
from .graphs import Graph, connected_components
from .spectral import LaplacianKind

MONOTONICITY_SLACK = -1e-9


def _xlogx(p: np.ndarray) -> np.ndarray:
    # 0 * log(0) := 0
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(p > 0.0, p * np.log(np.where(p > 0.0, p, 1.0)), 0.0)
    return out


def shannon_entropy(p: Distribution | np.ndarray) -> float:
    """Shannon entropy in nats, with the 0 log 0 = 0 convention."""
    probs = p.probs if isinstance(p, Distribution) else np.asarray(p, dtype=float)
    return float(-_xlogx(probs).sum())


def kl_divergence(p: Distribution | np.ndarray, q: Distribution | np.ndarray) -> float:
    """KL divergence D(p || q); support(p) must lie inside support(q)."""
    pa = p.probs if isinstance(p, Distribution) else np.asarray(p, dtype=float)
    qa = q.probs if isinstance(q, Distribution) else np.asarray(q, dtype=float)
    if pa.shape != qa.shape:
        raise ValueError("distributions must share a state space")
    if np.any((pa > 0.0) & (qa == 0.0)):
        raise ValueError("support violation: p puts mass where q is zero")
    mask = pa > 0.0
    return float(np.sum(pa[mask] * np.log(pa[mask] / qa[mask])))


def row_entropies(T: np.ndarray) -> np.ndarray:
    """Shannon entropy of each kernel row."""
    return -_xlogx(T).sum(axis=1)


def conditional_entropy(k: HeatKernel, p0: Distribution, t: float) -> float:
    """H(X(t)|X(0)) = sum_i p_i(0) H_i(t|0) for the kernel's diffusion dynamic."""
    if p0.n != k.n:
        raise ValueError(f"distribution size {p0.n} does not match kernel size {k.n}")
    T = kernel_at(k, t)
    return float(p0.probs @ row_entropies(T))


@dataclass(frozen=True)
class EntropyCurve:
    """Sampled (t, H) pairs plus the settings that produced them."""

    times: np.ndarray
    values: np.ndarray
    dynamic: LaplacianKind
    initial_label: str
    graph_meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.shape != v.shape or t.ndim != 1:
            raise ValueError("times and values must be matching vectors")
        if np.any(np.diff(t) <= 0) or np.any(t < 0):
            raise ValueError("times must be ascending and non-negative")
        n = self.graph_meta.get("n")
        if n is not None and np.any(v > math.log(n) + 1e-9):
            raise ValueError("entropy value above log(n) bound")
        if t[0] == 0.0 and abs(v[0]) > 1e-12:
            raise ValueError("entropy at t=0 must be 0")
        if self.dynamic is LaplacianKind.COMBINATORIAL and np.any(
            np.diff(v) < MONOTONICITY_SLACK
        ):
            raise ValueError("heat entropy curve decreased beyond tolerance")


def entropy_curve(
    k: HeatKernel,
    p0: Distribution,
    grid: np.ndarray,
    initial_label: str = "custom",
    graph_meta: dict | None = None,
) -> EntropyCurve:
    """Evaluate the conditional entropy on an ascending time grid."""
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("empty time grid")
    values = np.array([conditional_entropy(k, p0, t) for t in grid])
    meta = dict(graph_meta or {})
    meta.setdefault("n", k.n)
    return EntropyCurve(
        times=grid,
        values=values,
        dynamic=k.kind,
        initial_label=initial_label,
        graph_meta=meta,
    )


def asymptotic_value_heat(g: Graph, p0: Distribution) -> float:
    """Large-t limit of heat conditional entropy.

    log(n) for connected graphs; on disconnected graphs each component of
    size |V_k| contributes log|V_k| weighted by the initial mass it holds.
    """
    if p0.n != g.n:
        raise ValueError("distribution size does not match graph")
    parts = connected_components(g)
    if len(parts) == 1:
        return math.log(g.n)
    return float(
        sum(math.log(len(part)) * p0.probs[part].sum() for part in parts)
    )


def asymptotic_value_rw(g: Graph) -> float:
    """Large-t limit of random-walk conditional entropy: log(2M) - <d log d>/<d>."""
    deg = np.array(g.degrees, dtype=float)
    if np.any(deg == 0):
        raise ValueError("isolated nodes have no random-walk dynamic")
    two_m = deg.sum()
    return float(math.log(two_m) - (deg * np.log(deg)).sum() / two_m)


@dataclass(frozen=True)
class EntropyGapReport:
    """Entropy gap log(n) - H(t) with its Pinsker lower bound."""

    t: float
    gap: float
    pinsker_bound: float

    @property
    def slack(self) -> float:
        return self.gap - self.pinsker_bound


def pinsker_report(k: HeatKernel, p0: Distribution, t: float) -> EntropyGapReport:
    """Gap and bound from one kernel evaluation; slack must be >= -1e-10."""
    if k.kind is not LaplacianKind.COMBINATORIAL:
        raise ValueError("Pinsker report is defined for the heat dynamic")
    T = kernel_at(k, t)
    gap = math.log(k.n) - float(p0.probs @ row_entropies(T))
    tv = np.abs(T - 1.0 / k.n).sum(axis=1)
    bound = float(p0.probs @ (0.5 * tv**2))
    report = EntropyGapReport(t=t, gap=gap, pinsker_bound=bound)
    if report.slack < -1e-10:
        raise ValueError(f"Pinsker bound violated: slack {report.slack}")
    return report


def counterexample_entropy(t: float, n: int = 2) -> float:
    """Closed-form conditional entropy of the non-monotone reference chain.

    (e^{-t} - 1) log(1 - e^{-t}) + t e^{-t}; independent of the number of
    states n >= 2.
    """
    if t <= 0:
        raise ValueError(f"time must be positive, got {t}")
    if n < 2:
        raise ValueError(f"chain needs at least 2 states, got {n}")
    e = math.exp(-t)
    return (e - 1.0) * math.log1p(-e) + t * e


def counterexample_kernel(t: float, n: int) -> np.ndarray:
    """Explicit transition matrix of the counterexample chain.

    State 0 is absorbing; every other state decays to it at unit rate.
    """
    if t <= 0:
        raise ValueError(f"time must be positive, got {t}")
    if n < 2:
        raise ValueError(f"chain needs at least 2 states, got {n}")
    e = math.exp(-t)
    T = np.zeros((n, n))
    T[0, 0] = 1.0
    for i in range(1, n):
        T[i, 0] = 1.0 - e
        T[i, i] = e
    return T


def counterexample_entropy_matrix(t: float, n: int) -> float:
    """Matrix-route evaluation of the counterexample, for cross-validation.

    Uses the explicit kernel with initial condition [0, 1/(n-1), ...].
    """
    T = counterexample_kernel(t, n)
    p0 = np.zeros(n)
    p0[1:] = 1.0 / (n - 1)
    return float(p0 @ row_entropies(T))
