"""Eigensolver checks against closed forms, numpy, and matrix identities."""
import math

import numpy as np
import pytest

from arithcycle.spectra import (
    JACOBI_REL_TOL,
    EigenPair,
    NoConvergence,
    Spectrum,
    ZeroVector,
    adjacency_matrix,
    build_l,
    build_l_from_d,
    eigenvalues,
    laplacian_mu1_exact,
    laplacian_spectrum_exact,
    rayleigh_quotient,
    spectral_radius,
    spectral_radius_batch,
    top_eigenpair,
)
from arithcycle.structures import GraphFamily, laplacian_structure, structure_from_d


def random_symmetric(rng, n, lo=-9, hi=9):
    m = np.array([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)], dtype=float)
    return (m + m.T) / 2.0


def test_adjacency_cycle4():
    a = adjacency_matrix(GraphFamily.cycle(4))
    expected = np.array([
        [0, 1, 0, 1],
        [1, 0, 1, 0],
        [0, 1, 0, 1],
        [1, 0, 1, 0],
    ], dtype=float)
    assert np.array_equal(a, expected)


def test_adjacency_path4():
    a = adjacency_matrix(GraphFamily.path(4))
    assert a[0, 1] == 1 and a[1, 2] == 1 and a[2, 3] == 1
    assert a[0, 3] == 0 and a[0, 2] == 0
    assert np.array_equal(a, a.T)
    assert a.sum() == 6


def test_build_l_structure():
    s = structure_from_d(GraphFamily.cycle(3), (1, 5, 2))
    m = build_l(s)
    expected = np.array([[1, -1, -1], [-1, 5, -1], [-1, -1, 2]], dtype=float)
    assert np.array_equal(m, expected)


def test_build_l_from_d_accepts_any_diagonal():
    m = build_l_from_d(GraphFamily.path(3), (3, 1, 3))
    assert np.array_equal(np.diag(m), [3.0, 1.0, 3.0])
    assert m[0, 2] == 0.0


def test_eigenvalues_descending_and_radius():
    spec = eigenvalues(np.diag([3.0, 7.0, 5.0]))
    assert isinstance(spec, Spectrum)
    assert list(spec.values) == [7.0, 5.0, 3.0]
    assert spec.radius == 7.0
    assert spec.offdiag_residual <= JACOBI_REL_TOL * math.sqrt(83.0)


def test_one_by_one():
    spec = eigenvalues([[5.0]])
    assert spec.values.shape == (1,)
    assert spec.radius == 5.0


def test_known_radius_is_four_plus_sqrt_two():
    # char poly of diag(1,5,2) - A on C_3 is x(x^2 - 8x + 14)
    mu = spectral_radius(structure_from_d(GraphFamily.cycle(3), (1, 5, 2)))
    assert math.isclose(mu, 4.0 + math.sqrt(2.0), abs_tol=1e-12)


def test_known_spectrum_c4_laplacian():
    spec = eigenvalues(build_l(laplacian_structure(GraphFamily.cycle(4))))
    assert np.allclose(spec.values, [4.0, 2.0, 2.0, 0.0], atol=1e-9)


def test_regression_radius_n6():
    s = structure_from_d(GraphFamily.cycle(6), (1, 8, 2, 2, 2, 2))
    assert math.isclose(spectral_radius(s), 8.303103065620226, abs_tol=1e-9)


def test_spectral_radius_accepts_matrix_or_structure():
    s = structure_from_d(GraphFamily.cycle(3), (1, 2, 5))
    assert spectral_radius(s) == spectral_radius(build_l(s))


def test_matches_numpy_on_random_symmetric(rng):
    for _ in range(60):
        n = rng.randint(2, 12)
        m = random_symmetric(rng, n)
        ours = eigenvalues(m).values
        ref = np.linalg.eigvalsh(m)[::-1]
        assert np.max(np.abs(ours - ref)) <= 1e-9


def test_trace_identity(rng):
    for _ in range(40):
        m = random_symmetric(rng, rng.randint(2, 10))
        spec = eigenvalues(m)
        assert math.isclose(spec.values.sum(), np.trace(m), abs_tol=1e-8)


def test_cycle_laplacian_closed_form():
    for n in range(3, 25):
        got = eigenvalues(build_l(laplacian_structure(GraphFamily.cycle(n))))
        assert np.allclose(got.values, laplacian_spectrum_exact(n), atol=1e-9)
        assert math.isclose(got.radius, laplacian_mu1_exact(n), abs_tol=1e-9)


def test_laplacian_mu1_exact_values():
    assert laplacian_mu1_exact(4) == 4.0
    assert laplacian_mu1_exact(6) == pytest.approx(4.0)
    assert laplacian_mu1_exact(3) == pytest.approx(3.0)
    for n in (3, 5, 7, 9, 101):
        assert laplacian_mu1_exact(n) < 4.0
    with pytest.raises(ValueError):
        laplacian_mu1_exact(2)


def test_laplacian_spectrum_exact_shape():
    for n in (3, 6, 11):
        vals = laplacian_spectrum_exact(n)
        assert vals.shape == (n,)
        assert all(vals[i] >= vals[i + 1] for i in range(n - 1))
        assert math.isclose(vals[0], laplacian_mu1_exact(n), abs_tol=1e-12)
        assert math.isclose(vals.sum(), 2.0 * n, abs_tol=1e-9)
    with pytest.raises(ValueError):
        laplacian_spectrum_exact(1)


def test_structure_laplacians_are_psd_with_kernel(catalogs):
    # diag(d) - A annihilates r > 0, so it is a singular M-matrix: the
    # smallest eigenvalue is 0 and nothing dips below it.
    for s in catalogs[6].structures():
        vals = eigenvalues(build_l(s)).values
        assert abs(vals[-1]) <= 1e-9
        assert vals[-2] >= -1e-9


def test_radius_bounds_from_rows(catalogs):
    for s in catalogs[5].structures():
        mu = spectral_radius(s)
        top = max(s.d)
        assert mu >= top - 1e-9
        assert mu <= top + 2.0 + 1e-9


def test_batch_matches_singles(catalogs):
    cat = catalogs[5]
    ds = list(cat.d_vectors())
    batch = spectral_radius_batch(cat.family, ds)
    singles = np.array([spectral_radius(structure_from_d(cat.family, d)) for d in ds])
    assert np.max(np.abs(batch - singles)) <= 1e-9


def test_batch_preserves_input_order(catalogs):
    cat = catalogs[4]
    ds = list(cat.d_vectors())
    fwd = spectral_radius_batch(cat.family, ds)
    rev = spectral_radius_batch(cat.family, ds[::-1])
    assert np.allclose(fwd, rev[::-1], atol=1e-12)


def test_top_eigenpair_contract():
    s = structure_from_d(GraphFamily.cycle(3), (1, 5, 2))
    m = build_l(s)
    pair = top_eigenpair(m)
    assert isinstance(pair, EigenPair)
    assert math.isclose(pair.value, 4.0 + math.sqrt(2.0), abs_tol=1e-10)
    peak = int(np.argmax(np.abs(pair.vector)))
    assert pair.vector[peak] == 1.0
    assert np.max(np.abs(pair.vector)) == 1.0
    assert pair.residual <= 1e-8
    assert np.max(np.abs(m @ pair.vector - pair.value * pair.vector)) <= 1e-8


def test_top_eigenpair_random(rng):
    for _ in range(20):
        m = random_symmetric(rng, rng.randint(2, 9))
        pair = top_eigenpair(m)
        assert math.isclose(pair.value, float(np.linalg.eigvalsh(m)[-1]), abs_tol=1e-9)
        assert pair.residual <= 1e-8


def test_rayleigh_never_exceeds_radius(rng):
    for _ in range(40):
        n = rng.randint(2, 8)
        m = random_symmetric(rng, n)
        x = [rng.randint(-5, 5) for _ in range(n)]
        if not any(x):
            x[0] = 1
        assert rayleigh_quotient(m, x) <= eigenvalues(m).radius + 1e-9


def test_rayleigh_at_eigenvector():
    m = build_l(structure_from_d(GraphFamily.cycle(4), (2, 2, 2, 2)))
    pair = top_eigenpair(m)
    assert math.isclose(rayleigh_quotient(m, pair.vector), pair.value, abs_tol=1e-9)


def test_rayleigh_zero_vector():
    with pytest.raises(ZeroVector):
        rayleigh_quotient(np.eye(2), [0, 0])


def test_interlacing_with_principal_minor(catalogs):
    # Cauchy interlacing: eigenvalues of the trailing principal minor sit
    # between consecutive eigenvalues of the full matrix.
    for d in ((1, 8, 2, 2, 2, 2), (2, 2, 2, 2, 2, 2), (1, 2, 3, 1, 7, 2)):
        if d not in catalogs[6]:
            continue
        m = build_l(structure_from_d(GraphFamily.cycle(6), d))
        lam = eigenvalues(m).values
        mu = eigenvalues(m[1:, 1:]).values
        for k in range(5):
            assert lam[k] + 1e-9 >= mu[k] >= lam[k + 1] - 1e-9


def test_input_validation():
    with pytest.raises(ValueError):
        eigenvalues(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        eigenvalues(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(ValueError):
        eigenvalues(np.array([[np.nan, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        eigenvalues(np.ones(4))


def test_no_convergence_surface():
    # A generous matrix with an impossible sweep budget still reports the
    # residual it reached.
    m = random_symmetric(__import__("random").Random(7), 8)
    with pytest.raises(NoConvergence) as exc:
        eigenvalues(m, rel_tol=1e-300, max_sweeps=1)
    assert exc.value.offdiag >= 0.0
