"""Machine checks of the extremal spectral-radius facts at desk scale.

Each check returns a VerificationReport with one outcome per n. Strict
inequalities must clear STRICT_MARGIN, equalities must land within
EQUALITY_TOL, and a failing outcome always carries a concrete witness.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

import numpy as np

from .enumeration import (
    MAX_SCAN_N,
    StructureCatalog,
    brute_force_cycle,
    enumerate_cycle,
    has_isolated_unit_entry,
)
from .spectra import (
    EQUALITY_TOL,
    JACOBI_REL_TOL,
    MAX_SWEEPS,
    STRICT_MARGIN,
    build_l_from_d,
    laplacian_mu1_exact,
    spectral_radius,
    spectral_radius_batch,
    top_eigenpair,
)
from .structures import GraphFamily, laplacian_d, r_from_d
from .transforms import canonical_key, dihedral_elements

EXHAUSTIVE_CAP = 10
SCAN_DEFAULT_CAP = 8
ANCHOR_TOL = 1e-5
TABLE_ROUND_TOL = 5e-3

TOLERANCES = {
    "jacobi_rel_tol": JACOBI_REL_TOL,
    "max_sweeps": MAX_SWEEPS,
    "strict_margin": STRICT_MARGIN,
    "equality_tol": EQUALITY_TOL,
    "anchor_tol": ANCHOR_TOL,
    "table_round_tol": TABLE_ROUND_TOL,
}


class CatalogMissing(Exception):
    """A full catalog is required but none was supplied and n is beyond the cap."""


@dataclass
class CheckOutcome:
    n: int
    passed: bool
    margin: Optional[float] = None
    witness: Optional[dict] = None
    notes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "verdict": "pass" if self.passed else "fail",
            "margin": self.margin,
            "witness": self.witness,
            "notes": self.notes,
        }


@dataclass
class VerificationReport:
    theorem_id: str
    outcomes: list[CheckOutcome]

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    @property
    def n_range(self) -> tuple[int, int]:
        ns = [o.n for o in self.outcomes]
        return (min(ns), max(ns))

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "n_range": list(self.n_range),
            "verdict": "pass" if self.passed else "fail",
            "tolerances": TOLERANCES,
            "per_n": [o.to_dict() for o in self.outcomes],
        }


def merge_reports(reports: list[VerificationReport]) -> VerificationReport:
    if not reports:
        raise ValueError("nothing to merge")
    names = {r.theorem_id for r in reports}
    if len(names) != 1:
        raise ValueError(f"cannot merge reports for different theorems {names}")
    outcomes = sorted((o for r in reports for o in r.outcomes), key=lambda o: o.n)
    return VerificationReport(reports[0].theorem_id, outcomes)


def _single(theorem_id: str, outcome: CheckOutcome) -> VerificationReport:
    return VerificationReport(theorem_id, [outcome])


def _skip(theorem_id: str, n: int, reason: str) -> VerificationReport:
    return _single(theorem_id, CheckOutcome(n, True, None, None, {"skipped": reason}))


def _need_catalog(n: int, catalog: Optional[StructureCatalog]) -> StructureCatalog:
    if catalog is not None:
        if not catalog.family.is_cycle or catalog.family.n != n:
            raise ValueError(f"catalog is for {catalog.family}, not the cycle on {n}")
        return catalog
    if n > EXHAUSTIVE_CAP:
        raise CatalogMissing(
            f"n={n} is beyond the exhaustive cap {EXHAUSTIVE_CAP}; pass a catalog explicitly"
        )
    return enumerate_cycle(n)


def max_family_d(n: int) -> tuple[int, ...]:
    """The d-vector (1, n+2, 2, ..., 2) whose orbit maximizes mu_1."""
    if n < 3:
        raise ValueError("cycles need n >= 3")
    return (1, n + 2) + (2,) * (n - 2)


def dk_family_d(n: int, k: int) -> tuple[int, ...]:
    """The runner-up family (1, n+2, 1, 2 x k, 3, 2 x (n-4-k)); 0 <= k <= n-4."""
    if n < 4:
        raise ValueError("the runner-up family needs n >= 4")
    if not 0 <= k <= n - 4:
        raise ValueError(f"k={k} out of range 0..{n - 4}")
    return (1, n + 2, 1) + (2,) * k + (3,) + (2,) * (n - 4 - k)


def d313(n: int) -> tuple[int, ...]:
    """The d-vector (3, 1, 3, 2, ..., 2)."""
    if n < 3:
        raise ValueError("needs n >= 3")
    return (3, 1, 3) + (2,) * (n - 3)


def _catalog_mu1(catalog: StructureCatalog) -> np.ndarray:
    return spectral_radius_batch(catalog.family, catalog.sorted_bytes)


def _lemma_m_matrix(n: int) -> np.ndarray:
    return build_l_from_d(GraphFamily.path(n), d313(n))


def check_min(n: int, catalog: Optional[StructureCatalog] = None) -> VerificationReport:
    """The ordinary Laplacian uniquely minimizes mu_1, at its closed-form value."""
    cat = _need_catalog(n, catalog)
    mus = _catalog_mu1(cat)
    lap = bytes(laplacian_d(cat.family))
    lap_idx = cat.sorted_bytes.index(lap)
    mu_lap = float(mus[lap_idx])
    exact = laplacian_mu1_exact(n)
    others = np.delete(mus, lap_idx)
    other_bytes = [b for i, b in enumerate(cat.sorted_bytes) if i != lap_idx]
    runner_idx = int(np.argmin(others))
    min_other = float(others[runner_idx])
    margin = min_other - mu_lap
    exact_err = abs(mu_lap - exact)
    passed = exact_err <= EQUALITY_TOL and margin >= STRICT_MARGIN
    witness = None
    if not passed:
        witness = {
            "laplacian_mu1": mu_lap,
            "exact": exact,
            "closest_other_d": list(other_bytes[runner_idx]),
            "closest_other_mu1": min_other,
        }
    notes = {
        "laplacian_mu1": mu_lap,
        "exact_formula": exact,
        "closest_other_mu1": min_other,
        "catalog_size": len(cat),
    }
    return _single("min", CheckOutcome(n, passed, margin, witness, notes))


def check_nonlap_gt4(n: int, catalog: Optional[StructureCatalog] = None) -> VerificationReport:
    """Every non-Laplacian structure has mu_1 strictly above 4 (n >= 6)."""
    if n < 6:
        return _skip("nonlap-gt4", n, f"hypothesis needs n >= 6, got {n}")
    cat = _need_catalog(n, catalog)
    mus = _catalog_mu1(cat)
    lap = bytes(laplacian_d(cat.family))
    lap_idx = cat.sorted_bytes.index(lap)
    others = np.delete(mus, lap_idx)
    other_bytes = [b for i, b in enumerate(cat.sorted_bytes) if i != lap_idx]
    worst = int(np.argmin(others))
    margin = float(others[worst]) - 4.0
    passed = margin >= STRICT_MARGIN
    witness = None
    if not passed:
        witness = {"d": list(other_bytes[worst]), "mu1": float(others[worst])}
    notes = {"min_nonlaplacian_mu1": float(others[worst]), "catalog_size": len(cat)}
    return _single("nonlap-gt4", CheckOutcome(n, passed, margin, witness, notes))


def check_lemma_m(n: int) -> VerificationReport:
    """The path matrix with diagonal (3, 1, 3, 2, ..., 2) has mu_1 above 4, and
    mu_1 does not decrease when the path grows (n >= 5)."""
    if n < 5:
        raise ValueError(f"the path matrix bound needs n >= 5, got {n}")
    mu = spectral_radius(_lemma_m_matrix(n))
    mu_next = spectral_radius(_lemma_m_matrix(n + 1))
    margin = mu - 4.0
    mono_slack = mu_next - mu
    passed = margin >= STRICT_MARGIN and mono_slack >= -EQUALITY_TOL
    witness = None
    if not passed:
        witness = {"diag": list(d313(n)), "mu1": mu, "mu1_next": mu_next}
    notes = {"mu1": mu, "mu1_next": mu_next}
    return _single("lemma-M", CheckOutcome(n, passed, margin, witness, notes))


def check_313(n: int) -> VerificationReport:
    """mu_1 of the cycle structure (3, 1, 3, 2, ..., 2): exactly 4 at n in {3, 5},
    3 + sqrt(2) at n = 4, strictly above 4 for n = 4 and n >= 6."""
    d = d313(n)
    fam = GraphFamily.cycle(n)
    sol = r_from_d(fam, d)
    if not sol.ok:
        return _single("d313", CheckOutcome(
            n, False, None, {"d": list(d), "reason": "not an arithmetical structure"}, {}))
    mu = spectral_radius(build_l_from_d(fam, d))
    notes = {"mu1": mu, "r": [str(v) for v in sol.r]}
    if n in (3, 5):
        margin = EQUALITY_TOL - abs(mu - 4.0)
        passed = abs(mu - 4.0) <= EQUALITY_TOL
    elif n == 4:
        anchor = 4.41421
        margin = mu - 4.0
        passed = abs(mu - anchor) <= ANCHOR_TOL and margin >= STRICT_MARGIN
        notes["anchor"] = anchor
    else:
        margin = mu - 4.0
        passed = margin >= STRICT_MARGIN
    witness = None if passed else {"d": list(d), "mu1": mu}
    return _single("d313", CheckOutcome(n, passed, margin, witness, notes))


def check_d_bound(n: int, catalog: Optional[StructureCatalog] = None,
                  scan: Optional[bool] = None) -> VerificationReport:
    """Catalog entries never exceed n+2, the bound is attained, and (for
    n <= 8 by default) the closure equals the widened exhaustive scan."""
    cat = _need_catalog(n, catalog)
    if scan is None:
        scan = n <= SCAN_DEFAULT_CAP
    max_entry = cat.max_entry()
    passed = max_entry == n + 2
    witness = None
    notes: dict = {"max_entry": max_entry, "catalog_size": len(cat), "scan_ran": bool(scan)}
    if not passed:
        offender = max(cat.sorted_bytes, key=max)
        witness = {"d": list(offender), "max_entry": max_entry, "expected": n + 2}
    if scan and passed:
        if n > MAX_SCAN_N:
            raise ValueError(f"the scan oracle supports n <= {MAX_SCAN_N}")
        oracle = brute_force_cycle(n)
        same = set(oracle.sorted_bytes) == set(cat.sorted_bytes)
        notes["scan_size"] = len(oracle)
        notes["scan_info"] = oracle.search_info
        if not same:
            passed = False
            only_scan = next(iter(set(oracle.sorted_bytes) - set(cat.sorted_bytes)), None)
            only_cat = next(iter(set(cat.sorted_bytes) - set(oracle.sorted_bytes)), None)
            witness = {
                "only_in_scan": list(only_scan) if only_scan else None,
                "only_in_catalog": list(only_cat) if only_cat else None,
            }
    return _single("d-bound", CheckOutcome(n, passed, None, witness, notes))


def check_families(n: int, catalog: Optional[StructureCatalog] = None) -> VerificationReport:
    """The structures attaining the entry bound n+2 are exactly the orbit of
    (1, n+2, 2, ..., 2) plus the runner-up family orbits."""
    cat = _need_catalog(n, catalog)
    fam = cat.family
    expected: set[tuple[int, ...]] = set()
    family_vectors = [max_family_d(n)] + [dk_family_d(n, k) for k in range(0, max(0, n - 3))]
    for d in family_vectors:
        if not r_from_d(fam, d).ok:
            return _single("families", CheckOutcome(
                n, False, None, {"d": list(d), "reason": "family vector does not validate"}, {}))
        expected.add(canonical_key(fam, d))
    actual = {canonical_key(fam, tuple(b)) for b in cat.sorted_bytes if max(b) == n + 2}
    passed = actual == expected
    witness = None
    if not passed:
        witness = {
            "unexpected": sorted(list(t) for t in actual - expected),
            "missing": sorted(list(t) for t in expected - actual),
        }
    notes = {
        "orbits_at_bound": len(actual),
        "family_orbits": len(expected),
        "paired_symmetric": all(
            canonical_key(fam, dk_family_d(n, k)) == canonical_key(fam, dk_family_d(n, n - 4 - k))
            for k in range(0, max(0, n - 3))
        ),
    }
    return _single("families", CheckOutcome(n, passed, None, witness, notes))


def check_dstar(n: int, catalog: Optional[StructureCatalog] = None) -> VerificationReport:
    """Structures with largest entry exactly n+1, aligned so that entry sits at
    position 1, stay entrywise below (n+2) - (3, 1, 3, 2, ..., 2), with the
    sharper per-position bounds from the proof (n >= 6)."""
    if n < 6:
        return _skip("d-star", n, f"hypothesis needs n >= 6, got {n}")
    cat = _need_catalog(n, catalog)
    dstar = d313(n)
    checked = 0
    structures_seen = 0
    witness = None
    passed = True
    for b in cat.sorted_bytes:
        if max(b) != n + 1:
            continue
        structures_seen += 1
        d = tuple(b)
        for g in dihedral_elements(n):
            img = g.permute(d)
            if img[1] != n + 1:
                continue
            checked += 1
            ok = (
                all(img[j] + dstar[j] <= n + 2 for j in range(n))
                and img[0] <= 3
                and img[2] <= 3
                and all(img[j] <= 4 for j in range(3, n))
            )
            if not ok:
                passed = False
                witness = {"d": list(d), "aligned": list(img)}
                break
        if not passed:
            break
    notes = {"structures_with_entry_n_plus_1": structures_seen, "alignments_checked": checked}
    return _single("d-star", CheckOutcome(n, passed, None, witness, notes))


def check_discard(n: int, catalog: Optional[StructureCatalog] = None) -> VerificationReport:
    """Every structure with all entries at most n+1 has mu_1 at most n+2."""
    cat = _need_catalog(n, catalog)
    bounded = [b for b in cat.sorted_bytes if max(b) <= n + 1]
    mus = spectral_radius_batch(cat.family, bounded)
    worst = int(np.argmax(mus))
    mu_worst = float(mus[worst])
    margin = (n + 2) - mu_worst
    passed = margin >= -EQUALITY_TOL
    witness = None
    if not passed:
        witness = {"d": list(bounded[worst]), "mu1": mu_worst}
    notes = {
        "bounded_structures": len(bounded),
        "largest_mu1": mu_worst,
        "largest_d": list(bounded[worst]),
    }
    return _single("discard", CheckOutcome(n, passed, margin, witness, notes))


def check_max(n: int, catalog: Optional[StructureCatalog] = None,
              families_only: Optional[bool] = None) -> VerificationReport:
    """(1, n+2, 2, ..., 2) and its orbit uniquely maximize mu_1, with
    n+2 < mu_1 <= n+2+24/n <= n+4 (in families-only mode just the window and
    the dominance over the runner-up family are checked)."""
    if families_only is None:
        families_only = catalog is None and n > EXHAUSTIVE_CAP
    fam = GraphFamily.cycle(n)
    d_max = max_family_d(n)
    mu_m = spectral_radius(build_l_from_d(fam, d_max))
    lower_margin = mu_m - (n + 2)
    upper_margin = (n + 2 + 24.0 / n) - mu_m
    crude_margin = (n + 4) - mu_m
    passed = (
        lower_margin >= STRICT_MARGIN
        and upper_margin >= -EQUALITY_TOL
        and crude_margin >= -EQUALITY_TOL
    )
    margin = min(lower_margin, upper_margin + EQUALITY_TOL, crude_margin + EQUALITY_TOL)
    witness = None if passed else {"d": list(d_max), "mu1": mu_m}
    notes: dict = {"mu1_max_family": mu_m, "window": [n + 2, n + 2 + 24.0 / n],
                   "mode": "families-only" if families_only else "exhaustive"}
    if not families_only:
        if n >= 4:
            dk_mus = [spectral_radius(build_l_from_d(fam, dk_family_d(n, k)))
                      for k in range(0, n - 3)]
            gap_to_dk = mu_m - max(dk_mus)
            dk_floor = min(dk_mus) - (n + 2)
            notes["gap_to_runner_family"] = gap_to_dk
            notes["runner_family_floor"] = dk_floor
            if gap_to_dk < STRICT_MARGIN or dk_floor < -EQUALITY_TOL:
                passed = False
                witness = witness or {"d": list(d_max), "mu1": mu_m, "dk_mus": dk_mus}
        cat = _need_catalog(n, catalog)
        mus = _catalog_mu1(cat)
        mu_best = float(mus.max())
        at_top = [b for b, v in zip(cat.sorted_bytes, mus) if v >= mu_best - EQUALITY_TOL]
        top_keys = {canonical_key(fam, tuple(b)) for b in at_top}
        expected_key = {canonical_key(fam, d_max)}
        below = [float(v) for v in mus if v < mu_best - EQUALITY_TOL]
        runner_gap = mu_best - max(below) if below else None
        orbit_members = cat.orbit_index.get(bytes(canonical_key(fam, d_max)), [])
        unique_top = top_keys == expected_key and len(at_top) == len(orbit_members)
        if not unique_top or (runner_gap is not None and runner_gap < STRICT_MARGIN):
            passed = False
            witness = {
                "top_orbits": sorted(list(t) for t in top_keys),
                "expected_orbit": sorted(list(t) for t in expected_key),
                "runner_gap": runner_gap,
            }
        notes["catalog_max_mu1"] = mu_best
        notes["runner_gap"] = runner_gap
        if passed and runner_gap is not None:
            margin = min(margin, runner_gap)
    return _single("max", CheckOutcome(n, passed, margin, witness, notes))


def check_eigvec_bounds(n: int, k: int) -> VerificationReport:
    """Entry bounds for the top eigenvector of the runner-up family matrix
    (peak entry at the n+2 position; position k+3 pinched; n >= 7)."""
    if n < 7:
        return _skip("eigvec", n, f"hypothesis needs n >= 7, got {n}")
    d = dk_family_d(n, k)
    fam = GraphFamily.cycle(n)
    pair = top_eigenpair(build_l_from_d(fam, d))
    x = pair.vector
    mu = pair.value
    peak = int(np.argmax(np.abs(x)))
    special = {1, k + 3}
    generic_slack = min(2.0 / n - abs(x[j]) for j in range(n) if j not in special)
    pinch_slack = 4.0 / (n * (n - 1)) - abs(x[k + 3])
    floor_slack = abs(x[2]) - (1.0 / (n + 1) - 2.0 / (n * (n + 3)))
    dominance = abs(x[2]) - abs(x[k + 3])
    mu_lo = mu - (n + 2)
    mu_hi = (n + 4) - mu
    passed = (
        peak == 1
        and x[1] == 1.0
        and generic_slack >= -EQUALITY_TOL
        and pinch_slack >= -EQUALITY_TOL
        and floor_slack >= -EQUALITY_TOL
        and dominance >= STRICT_MARGIN
        and mu_lo >= -EQUALITY_TOL
        and mu_hi >= -EQUALITY_TOL
    )
    margin = min(generic_slack, pinch_slack, floor_slack, dominance, mu_lo, mu_hi)
    witness = None
    if not passed:
        witness = {"d": list(d), "k": k, "peak_position": peak,
                   "x": [float(v) for v in x], "mu1": mu}
    notes = {"k": k, "mu1": mu, "x3_abs": float(abs(x[2])),
             "x_k4_abs": float(abs(x[k + 3])), "residual": pair.residual}
    return _single("eigvec", CheckOutcome(n, passed, float(margin), witness, notes))


def check_eigvec_all(n: int) -> VerificationReport:
    """check_eigvec_bounds over every k in 0..n-4, folded into one outcome."""
    if n < 7:
        return _skip("eigvec", n, f"hypothesis needs n >= 7, got {n}")
    merged = merge_reports([check_eigvec_bounds(n, k) for k in range(0, n - 3)])
    combined = CheckOutcome(
        n,
        all(o.passed for o in merged.outcomes),
        min((o.margin for o in merged.outcomes if o.margin is not None), default=None),
        next((o.witness for o in merged.outcomes if o.witness), None),
        {"k_values": list(range(0, n - 3))},
    )
    return _single("eigvec", combined)


def check_unit_vertex(n: int, catalog: Optional[StructureCatalog] = None) -> VerificationReport:
    """Every non-Laplacian structure has a d=1 vertex whose neighbors exceed 1.

    This is the property that makes the one-step subdivision closure complete;
    it backs the enumeration internally and is exposed for tests.
    """
    cat = _need_catalog(n, catalog)
    lap = bytes(laplacian_d(cat.family))
    witness = None
    passed = True
    for b in cat.sorted_bytes:
        if b == lap:
            continue
        if not has_isolated_unit_entry(tuple(b)):
            passed = False
            witness = {"d": list(b)}
            break
    notes = {"catalog_size": len(cat)}
    return _single("unit-vertex", CheckOutcome(n, passed, None, witness, notes))


@dataclass(frozen=True)
class CheckSpec:
    fn: Callable[..., VerificationReport]
    needs_catalog: bool
    min_n: int


CHECKS: Mapping[str, CheckSpec] = {
    "min": CheckSpec(check_min, True, 3),
    "nonlap-gt4": CheckSpec(check_nonlap_gt4, True, 6),
    "lemma-M": CheckSpec(check_lemma_m, False, 5),
    "d313": CheckSpec(check_313, False, 3),
    "d-bound": CheckSpec(check_d_bound, True, 3),
    "families": CheckSpec(check_families, True, 3),
    "d-star": CheckSpec(check_dstar, True, 6),
    "discard": CheckSpec(check_discard, True, 3),
    "max": CheckSpec(check_max, True, 3),
    "eigvec": CheckSpec(check_eigvec_all, False, 7),
}


def run_check(name: str, n: int, catalog: Optional[StructureCatalog] = None) -> VerificationReport:
    """Dispatch one named check, skipping gracefully below its hypothesis floor."""
    spec = CHECKS[name]
    if n < spec.min_n:
        return _skip(name, n, f"hypothesis needs n >= {spec.min_n}, got {n}")
    if spec.needs_catalog:
        return spec.fn(n, catalog)
    return spec.fn(n)
