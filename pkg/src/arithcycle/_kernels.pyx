# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend: Jacobi eigensolver sweeps and the exhaustive cycle scan.

Same contracts as arithcycle._kernels_py; the scan runs on C int64, which
the cap guard keeps overflow-free.
"""
import math

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

NAME = "compiled"


cdef double _offdiag_norm(double[:, ::1] a, Py_ssize_t n) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(n):
            if i != j:
                s += a[i, j] * a[i, j]
    return sqrt(s)


cdef void _sweep(double[:, ::1] a, double[:, ::1] v, bint want_v, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t p, q, k
    cdef double apq, th, t, c, s, xp, xq
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = a[p, q]
            if apq == 0.0:
                continue
            th = (a[q, q] - a[p, p]) / (2.0 * apq)
            if th >= 0.0:
                t = 1.0 / (th + sqrt(th * th + 1.0))
            else:
                t = 1.0 / (th - sqrt(th * th + 1.0))
            c = 1.0 / sqrt(t * t + 1.0)
            s = t * c
            for k in range(n):
                xp = a[p, k]
                xq = a[q, k]
                a[p, k] = c * xp - s * xq
                a[q, k] = s * xp + c * xq
            for k in range(n):
                xp = a[k, p]
                xq = a[k, q]
                a[k, p] = c * xp - s * xq
                a[k, q] = s * xp + c * xq
            a[p, q] = 0.0
            a[q, p] = 0.0
            if want_v:
                for k in range(n):
                    xp = v[k, p]
                    xq = v[k, q]
                    v[k, p] = c * xp - s * xq
                    v[k, q] = s * xp + c * xq


cdef double _fro(double[:, ::1] a, Py_ssize_t n) noexcept nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(n):
            s += a[i, j] * a[i, j]
    return sqrt(s)


def jacobi(a_in, double rel_tol, int max_sweeps, bint want_vectors):
    """Cyclic Jacobi diagonalization of one symmetric matrix.

    Returns (diagonal, vectors or None, offdiag_norm, converged).
    """
    a = np.array(a_in, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] A = a
    cdef Py_ssize_t n = A.shape[0]
    v_arr = np.eye(n) if want_vectors else np.zeros((1, 1))
    cdef double[:, ::1] V = v_arr
    cdef double tol = rel_tol * _fro(A, n)
    cdef double off = _offdiag_norm(A, n)
    cdef int sweeps = 0
    while off > tol and sweeps < max_sweeps:
        _sweep(A, V, want_vectors, n)
        off = _offdiag_norm(A, n)
        sweeps += 1
    w = np.diagonal(a).copy()
    return w, (v_arr if want_vectors else None), off, off <= tol


def jacobi_batch(a_in, double rel_tol, int max_sweeps):
    """Diagonalize a stack of symmetric matrices, shape (B, n, n).

    Returns (diagonals (B, n), offdiag norms (B,), converged mask (B,)).
    """
    a = np.array(a_in, dtype=np.float64, order="C", copy=True)
    cdef double[:, :, ::1] A = a
    cdef Py_ssize_t nb = A.shape[0]
    cdef Py_ssize_t n = A.shape[1]
    diags = np.empty((nb, n))
    offs = np.empty(nb)
    done = np.empty(nb, dtype=bool)
    cdef double[:, ::1] D = diags
    cdef double[::1] O = offs
    cdef cnp.uint8_t[::1] C = done.view(np.uint8)
    cdef double[:, ::1] dummy = np.zeros((1, 1))
    cdef double tol, off
    cdef int sweeps
    cdef Py_ssize_t b, i
    for b in range(nb):
        tol = rel_tol * _fro(A[b], n)
        off = _offdiag_norm(A[b], n)
        sweeps = 0
        while off > tol and sweeps < max_sweeps:
            _sweep(A[b], dummy, False, n)
            off = _offdiag_norm(A[b], n)
            sweeps += 1
        for i in range(n):
            D[b, i] = A[b, i, i]
        O[b] = off
        C[b] = off <= tol
    return diags, offs, done


cdef cnp.int64_t _gcd_ll(cnp.int64_t a, cnp.int64_t b) noexcept nogil:
    cdef cnp.int64_t t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef void _cycle_leaf(Py_ssize_t n, int cap, cnp.int64_t* alpha, cnp.int64_t* beta,
                      cnp.int32_t* dvals, cnp.int64_t* rbuf, list out):
    cdef cnp.int64_t an = alpha[n - 1]
    cdef cnp.int64_t bn = beta[n - 1]
    cdef cnp.int64_t a_base = 1 + bn
    cdef cnp.int64_t b0, g, av, bv, num, q
    cdef Py_ssize_t k
    cdef int d1
    cdef bint ok
    if a_base <= 0:
        return
    for d1 in range(1, cap + 1):
        b0 = d1 - an
        if b0 <= 0:
            continue
        g = _gcd_ll(a_base, b0)
        av = a_base / g
        bv = b0 / g
        ok = True
        for k in range(n):
            rbuf[k] = alpha[k] * av + beta[k] * bv
            if rbuf[k] < 1:
                ok = False
                break
        if not ok:
            continue
        num = rbuf[n - 2] + rbuf[0]
        if num % rbuf[n - 1]:
            continue
        q = num / rbuf[n - 1]
        if q < 1 or q > cap:
            continue
        dvals[0] = d1
        dvals[n - 1] = <cnp.int32_t> q
        ok = True
        for k in range(n):
            num = rbuf[n - 1] if k == 0 else rbuf[k - 1]
            num = num + (rbuf[0] if k == n - 1 else rbuf[k + 1])
            if dvals[k] * rbuf[k] != num:
                ok = False
                break
        if ok:
            out.append(bytes([dvals[k] for k in range(n)]))


cdef void _cycle_rec(Py_ssize_t j, Py_ssize_t n, int cap,
                     cnp.int64_t* alpha, cnp.int64_t* beta, cnp.int32_t* dvals, cnp.int64_t* rbuf,
                     cnp.int64_t lo_n, cnp.int64_t lo_d, cnp.int64_t hi_n, cnp.int64_t hi_d,
                     bint has_hi, list out):
    if j == n - 1:
        _cycle_leaf(n, cap, alpha, beta, dvals, rbuf, out)
        return
    cdef cnp.int64_t aj = alpha[j]
    cdef cnp.int64_t bj = beta[j]
    cdef cnp.int64_t ajm = alpha[j - 1]
    cdef cnp.int64_t bjm = beta[j - 1]
    cdef cnp.int64_t na, nb, nlo_n, nlo_d, nhi_n, nhi_d
    cdef bint nhas
    cdef int dv
    for dv in range(1, cap + 1):
        na = dv * aj - ajm
        nb = dv * bj - bjm
        if na <= 0 and nb <= 0:
            continue
        nlo_n = lo_n
        nlo_d = lo_d
        nhi_n = hi_n
        nhi_d = hi_d
        nhas = has_hi
        if na > 0 and nb < 0:
            if -nb * nlo_d > nlo_n * na:
                nlo_n = -nb
                nlo_d = na
        elif na < 0 and nb > 0:
            if not nhas or nb * nhi_d < nhi_n * (-na):
                nhi_n = nb
                nhi_d = -na
                nhas = True
        if nhas and nlo_n * nhi_d >= nhi_n * nlo_d:
            continue
        alpha[j + 1] = na
        beta[j + 1] = nb
        dvals[j] = dv
        _cycle_rec(j + 1, n, cap, alpha, beta, dvals, rbuf,
                   nlo_n, nlo_d, nhi_n, nhi_d, nhas, out)


def cycle_scan(int n, int cap):
    """All cycle d-vectors with entries in [1, cap] admitting positive labels."""
    if n < 3:
        raise ValueError("cycle scan needs n >= 3")
    if cap < 1:
        raise ValueError("cap must be positive")
    if 2 * (n - 2) * math.log2(cap + 1) >= 62:
        raise ValueError(f"cap {cap} too large for an exact 64-bit scan at n={n}")
    alpha_arr = np.zeros(n, dtype=np.int64)
    beta_arr = np.zeros(n, dtype=np.int64)
    dvals_arr = np.zeros(n, dtype=np.int32)
    rbuf_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] alpha = alpha_arr
    cdef cnp.int64_t[::1] beta = beta_arr
    cdef cnp.int32_t[::1] dvals = dvals_arr
    cdef cnp.int64_t[::1] rbuf = rbuf_arr
    alpha[0], beta[0] = 1, 0
    alpha[1], beta[1] = 0, 1
    out: list = []
    _cycle_rec(1, n, cap, &alpha[0], &beta[0], &dvals[0], &rbuf[0],
               0, 1, 0, 1, False, out)
    out.sort()
    return out
