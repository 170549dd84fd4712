import numpy as np
import pytest

from guevertex.errors import UsageError
from guevertex.sampling import (
    SampleConfig,
    density_histogram,
    eigen_residual_check,
    mc_vertex_estimate,
    sample_gue_chunk,
)


def test_samples_are_hermitian():
    cfg = SampleConfig(n=12, samples=40, seed=3, chunk=20)
    batch = sample_gue_chunk(cfg, 0)
    assert batch.shape == (20, 12, 12)
    assert np.array_equal(batch, batch.conj().transpose(0, 2, 1))


def test_reproducible_bitwise():
    cfg = SampleConfig(n=10, samples=60, seed=11, chunk=20)
    a = mc_vertex_estimate([4], cfg)
    b = mc_vertex_estimate([4], cfg)
    assert a.mean == b.mean
    assert a.stderr == b.stderr
    assert a.samples == 60


def test_chunks_differ():
    cfg = SampleConfig(n=8, samples=40, seed=11, chunk=20)
    assert not np.array_equal(sample_gue_chunk(cfg, 0), sample_gue_chunk(cfg, 1))


def test_uniform_shift_moves_trace():
    shift = 0.7
    cfg = SampleConfig(n=20, samples=2000, seed=5, chunk=250, source=(shift,) * 20)
    est = mc_vertex_estimate([1], cfg)
    assert abs(est.mean + shift) < 4 * est.stderr


def test_quartic_moment_near_planar_value():
    cfg = SampleConfig(n=60, samples=2000, seed=9, chunk=250)
    est = mc_vertex_estimate([4], cfg)
    # 2 + 1/N^2 at N=60
    assert abs(est.mean - (2 + 1 / 3600)) < 4 * est.stderr


def test_connected_estimate_requirements():
    cfg = SampleConfig(n=10, samples=400, seed=2, chunk=50)
    est = mc_vertex_estimate([2, 2], cfg, connected=True)
    assert est.stderr > 0
    with pytest.raises(UsageError):
        mc_vertex_estimate([2], cfg, connected=True)
    few_chunks = SampleConfig(n=10, samples=400, seed=2, chunk=200)
    with pytest.raises(UsageError):
        mc_vertex_estimate([2, 2], few_chunks, connected=True)


def test_config_validation():
    with pytest.raises(UsageError):
        SampleConfig(n=0, samples=10)
    with pytest.raises(UsageError):
        SampleConfig(n=5, samples=0)
    with pytest.raises(UsageError):
        SampleConfig(n=5, samples=10, source=(1.0, 2.0))
    with pytest.raises(UsageError):
        mc_vertex_estimate([], SampleConfig(n=5, samples=10))
    with pytest.raises(UsageError):
        mc_vertex_estimate([-2], SampleConfig(n=5, samples=10))


def test_density_histogram_mass_and_shape():
    cfg = SampleConfig(n=50, samples=400, seed=7, chunk=100)
    result = density_histogram(cfg, bins=40)
    edges = np.asarray(result.bin_edges)
    widths = np.diff(edges)
    assert result.total_mass == pytest.approx(1.0, abs=1e-12)
    assert (widths > 0).all()
    assert result.outside_fraction < 0.01
    assert result.bulk_max_abs_dev < 0.05
    rows = result.csv_rows()
    assert len(rows) == 40
    centers = 0.5 * (edges[1:] + edges[:-1])
    semicircle = np.where(
        np.abs(centers) < 2, np.sqrt(np.maximum(4 - centers**2, 0)) / (2 * np.pi), 0.0
    )
    assert result.semicircle == pytest.approx(semicircle)


def test_eigensolver_residual_small():
    cfg = SampleConfig(n=30, samples=4, seed=1, chunk=4)
    assert eigen_residual_check(cfg) < 1e-12
