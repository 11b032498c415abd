"""Spectra of generalized Laplacians diag(d) - A via cyclic Jacobi sweeps.

The eigensolver is the two-sided Jacobi rotation scheme on symmetric
matrices; convergence is declared when the off-diagonal Frobenius norm
drops below JACOBI_REL_TOL times the Frobenius norm of the input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .structures import ArithmeticalStructure, GraphFamily

JACOBI_REL_TOL = 1e-12
MAX_SWEEPS = 60

# Strict inequalities are asserted with this safety margin, equalities
# within EQUALITY_TOL.
STRICT_MARGIN = 1e-9
EQUALITY_TOL = 1e-9

_CHUNK_ELEMENTS = 1 << 24


class NoConvergence(RuntimeError):
    """Jacobi sweeps hit the sweep cap before reaching tolerance."""

    def __init__(self, message: str, offdiag: float):
        super().__init__(f"{message} (offdiag residual {offdiag:.3e})")
        self.offdiag = offdiag


class ZeroVector(ValueError):
    """Rayleigh quotients need a nonzero vector."""


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order plus the solver's final residual."""

    values: np.ndarray
    offdiag_residual: float

    @property
    def radius(self) -> float:
        return float(self.values[0])


@dataclass(frozen=True)
class EigenPair:
    """One eigenvalue with an infinity-norm-1 eigenvector.

    The largest-magnitude vector entry is scaled to exactly +1;
    residual is ||Mx - value*x||_inf.
    """

    value: float
    vector: np.ndarray
    residual: float


def adjacency_matrix(family: GraphFamily) -> np.ndarray:
    n = family.n
    a = np.zeros((n, n))
    for i, j in family.edges():
        a[i, j] = 1.0
        a[j, i] = 1.0
    return a


def build_l_from_d(family: GraphFamily, d) -> np.ndarray:
    """diag(d) - A as float64. d may be any positive diagonal; it does not
    need to come from an arithmetical structure."""
    m = -adjacency_matrix(family)
    np.fill_diagonal(m, np.asarray(d, dtype=np.float64))
    return m


def build_l(s: ArithmeticalStructure) -> np.ndarray:
    """Generalized Laplacian of a structure."""
    return build_l_from_d(s.family, s.d)


def _check_symmetric(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix must be exactly symmetric")
    return m


def eigenvalues(m, rel_tol: float = JACOBI_REL_TOL, max_sweeps: int = MAX_SWEEPS) -> Spectrum:
    """Full spectrum of a symmetric matrix, descending."""
    m = _check_symmetric(m)
    w, _, off, converged = backend.jacobi(m, rel_tol, max_sweeps, False)
    if not converged:
        raise NoConvergence(f"no convergence after {max_sweeps} sweeps", off)
    order = np.argsort(-w, kind="stable")
    return Spectrum(w[order], float(off))


def spectral_radius(obj) -> float:
    """Largest eigenvalue of a symmetric matrix or of a structure's Laplacian."""
    if isinstance(obj, ArithmeticalStructure):
        obj = build_l(obj)
    return eigenvalues(obj).radius


def spectral_radius_batch(family: GraphFamily, d_vectors,
                          rel_tol: float = JACOBI_REL_TOL,
                          max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """mu_1 of diag(d) - A for many d-vectors on one graph, in input order.

    Matrices are stacked and swept in chunks; a convergence certificate is
    enforced on every member.
    """
    n = family.n
    blobs = [bytes(d) for d in d_vectors]
    result = np.empty(len(blobs))
    base = -adjacency_matrix(family)
    idx = np.arange(n)
    chunk = max(1, _CHUNK_ELEMENTS // (n * n))
    for start in range(0, len(blobs), chunk):
        part = blobs[start : start + chunk]
        diag = np.frombuffer(b"".join(part), dtype=np.uint8).reshape(len(part), n)
        mats = np.broadcast_to(base, (len(part), n, n)).copy()
        mats[:, idx, idx] = diag
        diags, offs, done = backend.jacobi_batch(mats, rel_tol, max_sweeps)
        if not done.all():
            bad = int(np.argmin(done))
            raise NoConvergence(
                f"matrix {start + bad} failed to converge in {max_sweeps} sweeps",
                float(offs[bad]),
            )
        result[start : start + len(part)] = diags.max(axis=1)
    return result


def top_eigenpair(m, rel_tol: float = JACOBI_REL_TOL, max_sweeps: int = MAX_SWEEPS) -> EigenPair:
    """Largest eigenvalue and an eigenvector, inf-norm 1, peak entry +1."""
    m = _check_symmetric(m)
    w, v, off, converged = backend.jacobi(m, rel_tol, max_sweeps, True)
    if not converged:
        raise NoConvergence(f"no convergence after {max_sweeps} sweeps", off)
    i = int(np.argmax(w))
    x = v[:, i].copy()
    j = int(np.argmax(np.abs(x)))
    x = x / x[j]
    value = float(w[i])
    residual = float(np.max(np.abs(m @ x - value * x)))
    return EigenPair(value, x, residual)


def rayleigh_quotient(m, x) -> float:
    """x'Mx / x'x. Never exceeds the spectral radius of a symmetric M."""
    m = np.asarray(m, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if not np.any(x):
        raise ZeroVector("rayleigh quotient of the zero vector")
    return float(x @ m @ x / (x @ x))


def laplacian_mu1_exact(n: int) -> float:
    """Spectral radius of the ordinary cycle Laplacian: 2 - 2cos(2*pi*floor(n/2)/n).

    Exactly 4 for even n, strictly below 4 for odd n.
    """
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return 2.0 - 2.0 * math.cos(2.0 * math.pi * (n // 2) / n)


def laplacian_spectrum_exact(n: int) -> np.ndarray:
    """All cycle-Laplacian eigenvalues 2 - 2cos(2*pi*j/n), descending."""
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    j = np.arange(n)
    vals = 2.0 - 2.0 * np.cos(2.0 * np.pi * j / n)
    return np.sort(vals)[::-1].copy()
