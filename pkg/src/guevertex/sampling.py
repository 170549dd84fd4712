"""Monte Carlo sampling of the Gaussian unitary ensemble with a source.

Samples are drawn in fixed-size chunks, each chunk from its own
counter-based RNG stream seeded by (seed, chunk index).  The estimate for a
given (seed, chunk) configuration is therefore bitwise reproducible no
matter how the chunks are scheduled.

Normalization: M = H/sqrt(N) - A with H_ii real standard normal, H_ij
(i < j) standard complex normal, so <M_ij M_kl> = delta_il delta_jk / N at
A = 0, and a source A = diag(a) shifts the mean by -A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UsageError


@dataclass(frozen=True)
class SampleConfig:
    n: int
    samples: int
    seed: int = 7
    chunk: int = 100
    source: tuple | None = None

    def __post_init__(self):
        if self.n < 1:
            raise UsageError(f"matrix size must be >= 1, got {self.n}")
        if self.samples < 1:
            raise UsageError(f"samples must be >= 1, got {self.samples}")
        if self.chunk < 1:
            raise UsageError(f"chunk must be >= 1, got {self.chunk}")
        if self.source is not None:
            src = tuple(float(a) for a in self.source)
            if len(src) != self.n:
                raise UsageError(
                    f"source length {len(src)} != matrix size {self.n}"
                )
            object.__setattr__(self, "source", src)

    def chunk_count(self) -> int:
        return (self.samples + self.chunk - 1) // self.chunk

    def chunk_size(self, index: int) -> int:
        if index < self.chunk_count() - 1:
            return self.chunk
        return self.samples - self.chunk * (self.chunk_count() - 1)


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    samples: int


def sample_gue_chunk(cfg: SampleConfig, index: int) -> np.ndarray:
    """One chunk of Hermitian samples, shape (chunk_size, N, N)."""
    if not 0 <= index < cfg.chunk_count():
        raise UsageError(f"chunk index {index} out of range")
    m = cfg.chunk_size(index)
    n = cfg.n
    rng = np.random.default_rng([cfg.seed, index])
    x = rng.standard_normal((m, n, n))
    y = rng.standard_normal((m, n, n))
    xt = np.swapaxes(x, -1, -2)
    yt = np.swapaxes(y, -1, -2)
    h = (x + xt) / 2 + 1j * (y - yt) / 2
    mat = h / math.sqrt(n)
    if cfg.source is not None:
        mat = mat - np.diag(np.asarray(cfg.source))
    return mat


def _chunk_eigenvalues(cfg: SampleConfig, index: int) -> np.ndarray:
    return np.linalg.eigvalsh(sample_gue_chunk(cfg, index))


def _normalized_traces(evals: np.ndarray, k_list) -> np.ndarray:
    """Per-sample product of (1/N) tr M^k over k_list; shape (chunk,)."""
    n = evals.shape[-1]
    out = np.ones(evals.shape[0])
    for k in k_list:
        out = out * (evals**k).sum(axis=-1) / n
    return out


def mc_vertex_estimate(k_list, cfg: SampleConfig, connected: bool = False) -> McEstimate:
    """Sample mean of prod (1/N) tr M^{k_i}, or the connected pair estimate.

    Connected mode is the two-factor sample covariance; its stderr comes
    from batch means over the chunks, so it needs a decent chunk count.
    """
    k_list = [int(k) for k in k_list]
    if not k_list or any(k < 0 for k in k_list):
        raise UsageError(f"k_list must be nonempty with k >= 0, got {k_list}")
    if connected and len(k_list) != 2:
        raise UsageError("connected mode compares exactly two trace factors")
    if connected and cfg.chunk_count() < 8:
        raise UsageError(
            "connected mode needs >= 8 chunks for a batch-means stderr; "
            "lower the chunk size or raise the sample count"
        )
    if not connected:
        values = np.concatenate(
            [
                _normalized_traces(_chunk_eigenvalues(cfg, i), k_list)
                for i in range(cfg.chunk_count())
            ]
        )
        mean = float(values.mean())
        stderr = float(values.std(ddof=1) / math.sqrt(values.size)) if values.size > 1 else 0.0
        return McEstimate(mean=mean, stderr=stderr, samples=int(values.size))
    k1, k2 = k_list
    firsts, seconds, batch_covs = [], [], []
    for i in range(cfg.chunk_count()):
        evals = _chunk_eigenvalues(cfg, i)
        t1 = _normalized_traces(evals, [k1])
        t2 = _normalized_traces(evals, [k2])
        firsts.append(t1)
        seconds.append(t2)
        if t1.size > 1:
            batch_covs.append(float(np.cov(t1, t2, ddof=1)[0, 1]))
    t1 = np.concatenate(firsts)
    t2 = np.concatenate(seconds)
    cov = float(np.cov(t1, t2, ddof=1)[0, 1])
    nb = len(batch_covs)
    stderr = float(np.std(batch_covs, ddof=1) / math.sqrt(nb)) if nb > 1 else 0.0
    return McEstimate(mean=cov, stderr=stderr, samples=int(t1.size))


@dataclass(frozen=True)
class DensityResult:
    bin_edges: tuple
    density: tuple
    semicircle: tuple
    bulk_max_abs_dev: float
    outside_fraction: float
    edge_cut: float
    total_mass: float
    samples: int

    def csv_rows(self) -> list:
        """Rows of (bin_center, density, semicircle, abs_dev)."""
        rows = []
        for i, d in enumerate(self.density):
            center = (self.bin_edges[i] + self.bin_edges[i + 1]) / 2
            rows.append((center, d, self.semicircle[i], abs(d - self.semicircle[i])))
        return rows


def density_histogram(cfg: SampleConfig, bins: int, bulk_limit: float = 1.8) -> DensityResult:
    """Eigenvalue histogram against the semicircle sqrt(4-x^2)/(2 pi).

    The histogram range adapts to the sampled eigenvalues so the total
    mass is exactly 1; the semicircle comparison is restricted to bins
    whose centers lie within |x| < bulk_limit.
    """
    if bins < 4:
        raise UsageError(f"bins must be >= 4, got {bins}")
    evals = np.concatenate(
        [_chunk_eigenvalues(cfg, i).ravel() for i in range(cfg.chunk_count())]
    )
    lo = min(-2.2, float(evals.min()))
    hi = max(2.2, float(evals.max()))
    density, edges = np.histogram(evals, bins=bins, range=(lo, hi), density=True)
    centers = (edges[:-1] + edges[1:]) / 2
    sc = np.where(np.abs(centers) < 2, np.sqrt(np.maximum(4 - centers**2, 0)) / (2 * np.pi), 0.0)
    bulk = np.abs(centers) < bulk_limit
    bulk_dev = float(np.max(np.abs(density[bulk] - sc[bulk]))) if bulk.any() else 0.0
    edge_cut = 2 + 5 * cfg.n ** (-2 / 3)
    outside = float(np.mean(np.abs(evals) > edge_cut))
    mass = float(np.sum(density * np.diff(edges)))
    return DensityResult(
        bin_edges=tuple(float(e) for e in edges),
        density=tuple(float(d) for d in density),
        semicircle=tuple(float(s) for s in sc),
        bulk_max_abs_dev=bulk_dev,
        outside_fraction=outside,
        edge_cut=float(edge_cut),
        total_mass=mass,
        samples=int(evals.size // cfg.n),
    )


def eigen_residual_check(cfg: SampleConfig) -> float:
    """Max ||Mv - lambda v|| / ||M|| over one sampled matrix's eigenpairs."""
    mat = sample_gue_chunk(cfg, 0)[0]
    evals, vecs = np.linalg.eigh(mat)
    resid = mat @ vecs - vecs * evals
    return float(np.linalg.norm(resid) / np.linalg.norm(mat))
