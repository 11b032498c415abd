"""Compiled and pure kernels must agree on every exported operation."""
import os
import subprocess
import sys

import numpy as np
import pytest

from arithcycle import backend
from arithcycle import _kernels_py as pure

compiled = pytest.importorskip(
    "arithcycle._kernels", reason="compiled extension not built")


def sym(rng, n):
    m = np.array([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)], dtype=float)
    return (m + m.T) / 2.0


def test_backend_names():
    assert pure.NAME == "pure"
    assert compiled.NAME == "compiled"
    assert backend.NAME in ("pure", "compiled")


def test_default_selection_prefers_compiled():
    if os.environ.get(backend.FORCE_PURE_ENV, "") in ("", "0"):
        assert backend.NAME == "compiled"


def test_jacobi_parity(rng):
    for _ in range(40):
        m = sym(rng, rng.randint(2, 14))
        wc, _, offc, okc = compiled.jacobi(m, 1e-12, 60, False)
        wp, _, offp, okp = pure.jacobi(m, 1e-12, 60, False)
        assert okc and okp
        assert np.max(np.abs(np.sort(wc) - np.sort(wp))) <= 1e-9


def test_jacobi_vectors_parity(rng):
    m = sym(rng, 8)
    wc, vc, _, _ = compiled.jacobi(m, 1e-12, 60, True)
    wp, vp, _, _ = pure.jacobi(m, 1e-12, 60, True)
    # Columns are eigenvectors up to sign and ordering; compare the
    # reconstructed matrices instead of raw factors.
    mc = (vc * wc) @ vc.T
    mp = (vp * wp) @ vp.T
    assert np.max(np.abs(mc - m)) <= 1e-9
    assert np.max(np.abs(mp - m)) <= 1e-9


def test_jacobi_batch_parity(rng):
    mats = np.stack([sym(rng, 6) for _ in range(25)])
    dc, offc, okc = compiled.jacobi_batch(mats.copy(), 1e-12, 60)
    dp, offp, okp = pure.jacobi_batch(mats.copy(), 1e-12, 60)
    assert okc.all() and okp.all()
    assert np.max(np.abs(np.sort(dc, axis=1) - np.sort(dp, axis=1))) <= 1e-9


def test_batch_agrees_with_singles(rng):
    mats = np.stack([sym(rng, 5) for _ in range(10)])
    diags, _, ok = backend.jacobi_batch(mats.copy(), 1e-12, 60)
    assert ok.all()
    for i in range(10):
        w, _, _, converged = backend.jacobi(mats[i], 1e-12, 60, False)
        assert converged
        assert np.max(np.abs(np.sort(diags[i]) - np.sort(w))) <= 1e-9


def test_cycle_scan_parity():
    for n in (3, 4, 5, 6):
        assert sorted(compiled.cycle_scan(n, n + 4)) == sorted(pure.cycle_scan(n, n + 4))


def test_cycle_scan_known_counts():
    assert len(compiled.cycle_scan(3, 7)) == 10
    assert len(compiled.cycle_scan(4, 8)) == 35


def test_scan_overflow_guard():
    # Wide scans could overflow the 64-bit recurrence forms; both kernels
    # must refuse instead of wrapping.
    for impl in (compiled, pure):
        with pytest.raises(ValueError):
            impl.cycle_scan(9, 300)


def test_force_pure_env_selects_fallback():
    proc = subprocess.run(
        [sys.executable, "-c",
         "from arithcycle import backend; print(backend.NAME)"],
        capture_output=True, text=True,
        env={**os.environ, backend.FORCE_PURE_ENV: "1"},
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "pure"
