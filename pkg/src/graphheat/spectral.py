"""Laplacian operators and their spectra.

Combinatorial (L = D - A) and random-walk (I - D^-1 A) Laplacians, dense
symmetric eigendecomposition, analytic spectra for complete, path, and
circulant graphs, and spectral structure checks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphs import Graph, StepSet


class IsolatedNodeError(ValueError):
    """Raised when a graph with an isolated node reaches a spectral operation.

    An isolated node makes the negated Laplacian fail the zero-row-sum
    property required of an intensity matrix, so such graphs are rejected
    rather than silently producing a non-stochastic kernel.
    """


class NumericInputError(ValueError):
    """Raised on non-finite matrix entries."""


class LaplacianKind(enum.Enum):
    COMBINATORIAL = "combinatorial"
    RANDOM_WALK = "random_walk"


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and paired orthonormal eigenvector columns.

    `exact` marks analytic closed-form bases as opposed to numerically
    computed ones.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    kind: LaplacianKind
    exact: bool

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


def laplacian(g: Graph, kind: LaplacianKind = LaplacianKind.COMBINATORIAL) -> np.ndarray:
    """Dense Laplacian matrix of the requested kind.

    Graphs with isolated nodes are rejected for both kinds: the convention
    L_ii = -1 at degree zero would break row-stochasticity of exp(-tL).
    """
    deg = np.array(g.degrees, dtype=float)
    if np.any(deg == 0):
        isolated = [i for i, d in enumerate(g.degrees) if d == 0]
        raise IsolatedNodeError(f"isolated node(s) {isolated} not supported")
    a = g.adjacency_matrix()
    if kind is LaplacianKind.COMBINATORIAL:
        return np.diag(deg) - a
    return np.eye(g.n) - a / deg[:, None]


def eig_symmetric(L: np.ndarray) -> SpectralDecomposition:
    """Eigendecomposition of a symmetric matrix, ascending eigenvalues."""
    L = np.asarray(L, dtype=float)
    if not np.isfinite(L).all():
        raise NumericInputError("matrix has non-finite entries")
    sym = 0.5 * (L + L.T)
    if np.abs(L - sym).max() > 1e-12 * max(1.0, np.abs(L).max()):
        raise NumericInputError("matrix is not symmetric within tolerance")
    w, u = np.linalg.eigh(sym)
    return SpectralDecomposition(
        eigenvalues=w, eigenvectors=u, kind=LaplacianKind.COMBINATORIAL, exact=False
    )


def spectrum_complete(n: int) -> SpectralDecomposition:
    """Exact spectrum of K_n: eigenvalue 0 with the constant eigenvector, n with multiplicity n-1.

    The non-constant columns are a deterministic orthonormal completion
    obtained from the Householder reflection mapping e_1 to the normalized
    all-ones vector.
    """
    if n < 1:
        raise ValueError(f"invalid size n={n}")
    w = np.full(n, float(n))
    w[0] = 0.0
    ones = np.full(n, 1.0 / math.sqrt(n))
    if n == 1:
        u = np.ones((1, 1))
    else:
        v = np.zeros(n)
        v[0] = 1.0
        v -= ones
        u = np.eye(n) - 2.0 * np.outer(v, v) / (v @ v)
    return SpectralDecomposition(
        eigenvalues=w, eigenvectors=u, kind=LaplacianKind.COMBINATORIAL, exact=True
    )


def spectrum_path(n: int) -> SpectralDecomposition:
    """Exact spectrum of P_n: eigenvalues 2(1 - cos(pi k / n)) with the DCT-II cosine basis."""
    if n < 1:
        raise ValueError(f"invalid size n={n}")
    k = np.arange(n)
    w = 2.0 * (1.0 - np.cos(np.pi * k / n))
    j = np.arange(1, n + 1)
    # column k-1 has entries sqrt((2 - delta_k1)/n) cos(pi (k-1)(j - 1/2)/n)
    u = np.cos(np.pi * np.outer(j - 0.5, k) / n) * np.sqrt(2.0 / n)
    u[:, 0] = 1.0 / math.sqrt(n)
    return SpectralDecomposition(
        eigenvalues=w, eigenvectors=u, kind=LaplacianKind.COMBINATORIAL, exact=True
    )


@dataclass(frozen=True)
class CirculantSpectrum:
    """Laplacian spectrum of a circulant graph in discrete-Fourier frequency order."""

    n: int
    steps: StepSet
    degree: int
    freq_eigenvalues: np.ndarray  # lambda_{k+1}, k = 0..n-1, unordered by magnitude

    @property
    def sorted_eigenvalues(self) -> np.ndarray:
        return np.sort(self.freq_eigenvalues)

    def dft_matrix(self) -> np.ndarray:
        """Unitary discrete Fourier matrix F = (1/sqrt(n)) [omega^{jk}], omega = e^{-2 pi i / n}."""
        jk = np.outer(np.arange(self.n), np.arange(self.n))
        return np.exp(-2j * np.pi * jk / self.n) / math.sqrt(self.n)


def circulant_symbol(n: int, steps: StepSet | Sequence[int]) -> np.ndarray:
    """First adjacency row c of C_n(S): c_j = 1 iff j or n-j is a step."""
    s = steps if isinstance(steps, StepSet) else StepSet.of(*steps)
    s.validate_for(n)
    c = np.zeros(n)
    for step in s.steps:
        c[step] = 1.0
        c[n - step] = 1.0  # coincides with c[step] when step == n/2
    return c


def spectrum_circulant(n: int, steps: StepSet | Sequence[int]) -> CirculantSpectrum:
    """Exact circulant Laplacian spectrum via the adjacency symbol.

    lambda_{k+1} = d - sum_j c_j cos(2 pi j k / n); handles the degree
    2|S| - 1 case (n even, n/2 in S) through the symbol rather than the
    doubled-cosine shortcut.
    """
    if n < 2:
        raise ValueError(f"invalid size n={n}")
    s = steps if isinstance(steps, StepSet) else StepSet.of(*steps)
    c = circulant_symbol(n, s)
    d = c.sum()
    k = np.arange(n)
    mu = np.cos(2.0 * np.pi * np.outer(k, np.arange(n)) / n) @ c
    return CirculantSpectrum(
        n=n, steps=s, degree=int(round(d)), freq_eigenvalues=d - mu
    )


def spectral_gap(dec: SpectralDecomposition) -> float:
    """Second-smallest eigenvalue (algebraic connectivity); > 0 iff connected."""
    if dec.n < 2:
        raise ValueError("spectral gap needs at least two nodes")
    return float(dec.eigenvalues[1])


@dataclass(frozen=True)
class WeylReport:
    """Per-index comparison of sorted spectra before/after adding one edge."""

    eigenvalues_before: np.ndarray
    eigenvalues_after: np.ndarray
    per_index: np.ndarray  # bool, lambda_i(G) <= lambda_i(G') within tolerance
    all_hold: bool


def check_weyl_monotonicity(
    g: Graph, extra_edge: tuple[int, int], tol: float = 1e-9
) -> WeylReport:
    """Check that all sorted Laplacian eigenvalues are non-decreasing when an edge is added."""
    u, v = extra_edge
    if u == v:
        raise ValueError("extra edge must not be a self-loop")
    if g.has_edge(u, v):
        raise ValueError(f"edge ({u},{v}) already present")
    g2 = Graph.from_edges(g.n, list(g.edges) + [(u, v)])
    w1 = np.linalg.eigvalsh(_laplacian_allow_isolated(g))
    w2 = np.linalg.eigvalsh(_laplacian_allow_isolated(g2))
    per = w1 <= w2 + tol
    return WeylReport(
        eigenvalues_before=w1,
        eigenvalues_after=w2,
        per_index=per,
        all_hold=bool(per.all()),
    )


def _laplacian_allow_isolated(g: Graph) -> np.ndarray:
    # Weyl monotonicity is a pure matrix statement about D - A; isolated
    # nodes are fine here (zero row), unlike in diffusion.
    a = g.adjacency_matrix()
    return np.diag(np.array(g.degrees, dtype=float)) - a
