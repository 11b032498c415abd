"""Exact integer kernel computations for generalized Laplacians of cycles and paths.

Everything here runs on arbitrary-precision integers (plus Fraction for
back-substitution); no floating point enters any routine in this module.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence


def gcd_all(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def cycle_matrix_int(d: Sequence[int]) -> list[list[int]]:
    """diag(d) - A for the n-cycle, as integer rows. Requires n >= 3."""
    n = len(d)
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = d[i]
        m[i][(i + 1) % n] = -1
        m[i][(i - 1) % n] = -1
    return m


def path_matrix_int(d: Sequence[int]) -> list[list[int]]:
    """diag(d) - A for the n-path, as integer rows."""
    n = len(d)
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = d[i]
        if i + 1 < n:
            m[i][i + 1] = -1
            m[i + 1][i] = -1
    return m


def check_cycle_equations(d: Sequence[int], r: Sequence[int]) -> bool:
    n = len(d)
    return all(d[i] * r[i] == r[i - 1] + r[(i + 1) % n] for i in range(n))


def check_path_equations(d: Sequence[int], r: Sequence[int]) -> bool:
    n = len(d)
    for i in range(n):
        s = (r[i - 1] if i > 0 else 0) + (r[i + 1] if i + 1 < n else 0)
        if d[i] * r[i] != s:
            return False
    return True


def _cycle_forms(d: Sequence[int]) -> tuple[list[int], list[int]]:
    # Writing r[k] = alpha[k]*r0 + beta[k]*r1, the vertex equations at
    # positions 1..n-2 propagate the coefficients by
    # form[k+1] = d[k]*form[k] - form[k-1].
    n = len(d)
    alpha = [0] * n
    beta = [0] * n
    alpha[0], beta[0] = 1, 0
    alpha[1], beta[1] = 0, 1
    for k in range(1, n - 1):
        alpha[k + 1] = d[k] * alpha[k] - alpha[k - 1]
        beta[k + 1] = d[k] * beta[k] - beta[k - 1]
    return alpha, beta


def positive_window_exists(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """Whether some real x, y > 0 makes every form alpha[k]*x + beta[k]*y positive.

    Reduces to an open interval condition on the ratio t = x/y.
    """
    lo = Fraction(0)
    hi: Optional[Fraction] = None
    for a, b in zip(alpha, beta):
        if a <= 0 and b <= 0:
            return False
        if a > 0 and b < 0:
            cand = Fraction(-b, a)
            if cand > lo:
                lo = cand
        elif a < 0 and b > 0:
            cand = Fraction(b, -a)
            if hi is None or cand < hi:
                hi = cand
    return hi is None or lo < hi


def cycle_kernel(d: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Positive gcd-1 integer kernel vector of diag(d) - A on the cycle, or None.

    Propagates the label recurrence symbolically in the two unknowns
    (r0, r1), then imposes the wrap-around equations at vertices 1 and n.
    """
    n = len(d)
    alpha, beta = _cycle_forms(d)
    an, bn = alpha[n - 1], beta[n - 1]
    # vertex-1 equation: d0*r0 = r1 + r[n-1]
    e1 = (d[0] - an, -(1 + bn))
    # vertex-n equation: d[n-1]*r[n-1] = r[n-2] + r0
    e2 = (d[n - 1] * an - alpha[n - 2] - 1, d[n - 1] * bn - beta[n - 2])
    rows = [e for e in (e1, e2) if e != (0, 0)]
    if not rows:
        # Both wrap equations vanished: the kernel is two-dimensional.
        # Connected-graph generalized Laplacians have nullity at most 1
        # whenever a positive kernel direction exists, so a feasible
        # positivity window here means the solver itself is broken.
        if positive_window_exists(alpha, beta):
            raise RuntimeError(
                "two-dimensional kernel admitting positive vectors; "
                "this contradicts the rank bound for connected graphs"
            )
        return None
    a_coef, b_coef = rows[0]
    x, y = -b_coef, a_coef
    for a2, b2 in rows[1:]:
        if a2 * x + b2 * y != 0:
            return None
    if x < 0 and y < 0:
        x, y = -x, -y
    if x <= 0 or y <= 0:
        return None
    g = gcd(x, y)
    x //= g
    y //= g
    r = [alpha[k] * x + beta[k] * y for k in range(n)]
    if any(v < 1 for v in r):
        return None
    g = gcd_all(r)
    if g > 1:
        r = [v // g for v in r]
    if not check_cycle_equations(d, r):
        return None
    return tuple(r)


def bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form. Returns (rows, pivot column indices).

    One-step Bareiss: every interior division is exact, entries stay integral.
    """
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    prev = 1
    piv_cols: list[int] = []
    pr = 0
    for pc in range(ncols):
        if pr == m:
            break
        pivot_row = next((i for i in range(pr, m) if rows[i][pc] != 0), None)
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        piv = rows[pr][pc]
        for i in range(pr + 1, m):
            factor = rows[i][pc]
            for j in range(pc, ncols):
                rows[i][j] = (piv * rows[i][j] - factor * rows[pr][j]) // prev
        prev = piv
        piv_cols.append(pc)
        pr += 1
    return rows, piv_cols


def integer_nullspace(mat: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Primitive integer basis of the right nullspace of an integer matrix.

    Each basis vector has gcd 1 and positive first nonzero entry.
    """
    rows = [list(r) for r in mat]
    if not rows:
        return []
    ncols = len(rows[0])
    rows, piv_cols = bareiss_echelon(rows)
    piv_set = set(piv_cols)
    basis: list[tuple[int, ...]] = []
    for fc in (c for c in range(ncols) if c not in piv_set):
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for idx in reversed(range(len(piv_cols))):
            pc = piv_cols[idx]
            row = rows[idx]
            s = sum((row[c] * x[c] for c in range(pc + 1, ncols)), Fraction(0))
            x[pc] = -s / row[pc]
        denom_lcm = 1
        for v in x:
            denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
        ints = [int(v * denom_lcm) for v in x]
        g = gcd_all(ints)
        if g > 1:
            ints = [v // g for v in ints]
        first = next(v for v in ints if v != 0)
        if first < 0:
            ints = [-v for v in ints]
        basis.append(tuple(ints))
    return basis


def _normalize_positive(vec: Sequence[int]) -> Optional[tuple[int, ...]]:
    v = list(vec)
    if all(x < 0 for x in v):
        v = [-x for x in v]
    if any(x <= 0 for x in v):
        return None
    g = gcd_all(v)
    if g > 1:
        v = [x // g for x in v]
    return tuple(v)


def path_kernel(d: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Positive gcd-1 integer kernel vector of diag(d) - A on the path, or None."""
    basis = integer_nullspace(path_matrix_int(d))
    if not basis:
        return None
    if len(basis) > 1:
        # The first entry of any path kernel vector determines the rest,
        # so the nullity never exceeds 1; reaching this is a solver bug.
        raise RuntimeError("path kernel dimension exceeds 1")
    return _normalize_positive(basis[0])


def cycle_kernel_nullspace(d: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Elimination-route cross-check for cycle_kernel."""
    basis = integer_nullspace(cycle_matrix_int(d))
    if not basis:
        return None
    if len(basis) == 1:
        return _normalize_positive(basis[0])
    alpha, beta = _cycle_forms(d)
    if positive_window_exists(alpha, beta):
        raise RuntimeError(
            "two-dimensional kernel admitting positive vectors; "
            "this contradicts the rank bound for connected graphs"
        )
    return None
