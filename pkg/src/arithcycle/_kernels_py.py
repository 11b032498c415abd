"""Pure-Python backend: Jacobi eigensolver sweeps and the exhaustive cycle scan.

Mirrors the compiled module ``arithcycle._kernels`` operation for
operation; the batched Jacobi is vectorized across matrices so full
catalogs stay tractable without the extension.
"""
from __future__ import annotations

import math
from math import gcd

import numpy as np

NAME = "pure"


def _offdiag_norm(a: np.ndarray) -> float:
    # Summed directly off the diagonal; the subtraction trick
    # fro(a)^2 - fro(diag)^2 cancels catastrophically near convergence.
    b = a.copy()
    np.fill_diagonal(b, 0.0)
    return float(np.sqrt((b * b).sum()))


def jacobi(a, rel_tol: float, max_sweeps: int, want_vectors: bool):
    """Cyclic Jacobi diagonalization of one symmetric matrix.

    Returns (diagonal, vectors or None, offdiag_norm, converged). The
    diagonal is unsorted; column j of vectors approximates the
    eigenvector of diagonal[j].
    """
    a = np.array(a, dtype=np.float64, copy=True)
    n = a.shape[0]
    tol = rel_tol * float(np.sqrt((a * a).sum()))
    v = np.eye(n) if want_vectors else None
    off = _offdiag_norm(a)
    sweeps = 0
    while off > tol and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                th = (a[q, q] - a[p, p]) / (2.0 * apq)
                if th >= 0.0:
                    t = 1.0 / (th + math.sqrt(th * th + 1.0))
                else:
                    t = 1.0 / (th - math.sqrt(th * th + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                if v is not None:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - s * vq
                    v[:, q] = s * vp + c * vq
        off = _offdiag_norm(a)
        sweeps += 1
    return np.diagonal(a).copy(), v, off, off <= tol


def jacobi_batch(a, rel_tol: float, max_sweeps: int):
    """Diagonalize a stack of symmetric matrices, shape (B, n, n).

    Returns (diagonals (B, n), offdiag norms (B,), converged mask (B,)).
    Converged matrices are frozen so later sweeps cannot disturb them.
    """
    a = np.array(a, dtype=np.float64, copy=True)
    nb, n, _ = a.shape
    tol = rel_tol * np.sqrt((a * a).sum(axis=(1, 2)))
    offmask = ~np.eye(n, dtype=bool)

    def off_all() -> np.ndarray:
        return np.sqrt(((a * a) * offmask).sum(axis=(1, 2)))

    off = off_all()
    done = off <= tol
    sweeps = 0
    while not done.all() and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                active = (apq != 0.0) & ~done
                if not active.any():
                    continue
                den = np.where(active, 2.0 * apq, 1.0)
                th = (a[:, q, q] - a[:, p, p]) / den
                # Both where-branches are evaluated; the discarded one can
                # hit th + root == 0 for large |th|.
                with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
                    root = np.sqrt(th * th + 1.0)
                    t = np.where(th >= 0.0, 1.0 / (th + root), 1.0 / (th - root))
                t = np.where(active, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp = a[:, p, :].copy()
                rq = a[:, q, :].copy()
                a[:, p, :] = c[:, None] * rp - s[:, None] * rq
                a[:, q, :] = s[:, None] * rp + c[:, None] * rq
                cp = a[:, :, p].copy()
                cq = a[:, :, q].copy()
                a[:, :, p] = c[:, None] * cp - s[:, None] * cq
                a[:, :, q] = s[:, None] * cp + c[:, None] * cq
                a[active, p, q] = 0.0
                a[active, q, p] = 0.0
        off = off_all()
        done |= off <= tol
        sweeps += 1
    idx = np.arange(n)
    return a[:, idx, idx].copy(), off, done


def _scan_guard(n: int, cap: int) -> None:
    if n < 3:
        raise ValueError("cycle scan needs n >= 3")
    if cap < 1:
        raise ValueError("cap must be positive")
    # Keep coefficient growth inside 62 bits so the compiled twin, which
    # runs the same search on int64, explores the identical space.
    if 2 * (n - 2) * math.log2(cap + 1) >= 62:
        raise ValueError(f"cap {cap} too large for an exact 64-bit scan at n={n}")


def cycle_scan(n: int, cap: int) -> list[bytes]:
    """All cycle d-vectors with entries in [1, cap] admitting positive labels.

    Exhaustive bounded search. Labels are propagated as integer linear
    forms r[k] = alpha[k]*r0 + beta[k]*r1; a branch dies when the forms
    admit no positive real (r0, r1), tracked as an open interval on the
    ratio r0/r1. The true ratio of any valid completion lies in every
    prefix window, so no structure is ever pruned away.
    """
    _scan_guard(n, cap)
    out: list[bytes] = []
    alpha = [0] * n
    beta = [0] * n
    alpha[0], beta[0] = 1, 0
    alpha[1], beta[1] = 0, 1
    dvals = [0] * n

    def leaf() -> None:
        an, bn = alpha[n - 1], beta[n - 1]
        a_base = 1 + bn
        if a_base <= 0:
            return
        for d1 in range(1, cap + 1):
            b0 = d1 - an
            if b0 <= 0:
                continue
            g = gcd(a_base, b0)
            av, bv = a_base // g, b0 // g
            r = [alpha[k] * av + beta[k] * bv for k in range(n)]
            if any(v < 1 for v in r):
                continue
            q, rem = divmod(r[n - 2] + r[0], r[n - 1])
            if rem or q < 1 or q > cap:
                continue
            dvals[0], dvals[n - 1] = d1, q
            if all(dvals[i] * r[i] == r[i - 1] + r[(i + 1) % n] for i in range(n)):
                out.append(bytes(dvals))

    def rec(j: int, lo_n: int, lo_d: int, hi_n: int, hi_d: int, has_hi: bool) -> None:
        if j == n - 1:
            leaf()
            return
        aj, bj = alpha[j], beta[j]
        ajm, bjm = alpha[j - 1], beta[j - 1]
        for dv in range(1, cap + 1):
            na = dv * aj - ajm
            nb = dv * bj - bjm
            if na <= 0 and nb <= 0:
                continue
            nlo_n, nlo_d, nhi_n, nhi_d, nhas = lo_n, lo_d, hi_n, hi_d, has_hi
            if na > 0 and nb < 0:
                if -nb * nlo_d > nlo_n * na:
                    nlo_n, nlo_d = -nb, na
            elif na < 0 and nb > 0:
                if not nhas or nb * nhi_d < nhi_n * -na:
                    nhi_n, nhi_d, nhas = nb, -na, True
            if nhas and nlo_n * nhi_d >= nhi_n * nlo_d:
                continue
            alpha[j + 1], beta[j + 1] = na, nb
            dvals[j] = dv
            rec(j + 1, nlo_n, nlo_d, nhi_n, nhi_d, nhas)

    rec(1, 0, 1, 0, 1, False)
    out.sort()
    return out
