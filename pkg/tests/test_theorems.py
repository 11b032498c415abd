"""Theorem checks: registry dispatch, pass margins, failure witnesses."""
import json
import math

import pytest

from arithcycle.enumeration import StructureCatalog
from arithcycle.spectra import spectral_radius
from arithcycle.structures import GraphFamily, r_from_d
from arithcycle.theorems import (
    CHECKS,
    EXHAUSTIVE_CAP,
    TOLERANCES,
    CatalogMissing,
    CheckOutcome,
    VerificationReport,
    check_313,
    check_d_bound,
    check_discard,
    check_dstar,
    check_eigvec_all,
    check_eigvec_bounds,
    check_lemma_m,
    check_max,
    check_min,
    check_unit_vertex,
    d313,
    dk_family_d,
    max_family_d,
    merge_reports,
    run_check,
)


def test_registry_names_and_floors():
    assert set(CHECKS) == {
        "min", "nonlap-gt4", "lemma-M", "d313", "d-bound",
        "families", "d-star", "discard", "max", "eigvec",
    }
    floors = {name: spec.min_n for name, spec in CHECKS.items()}
    assert floors["nonlap-gt4"] == 6
    assert floors["lemma-M"] == 5
    assert floors["d-star"] == 6
    assert floors["eigvec"] == 7
    assert all(spec.min_n == 3 for name, spec in CHECKS.items()
               if name in ("min", "d313", "d-bound", "families", "discard", "max"))


def test_all_checks_pass_at_desk_scale(catalogs):
    for name, spec in CHECKS.items():
        for n in range(3, 9):
            rep = run_check(name, n, catalogs[n] if spec.needs_catalog else None)
            assert rep.passed, f"{name} failed at n={n}: {rep.to_dict()}"
            if n < spec.min_n:
                assert "skipped" in rep.outcomes[0].notes


def test_family_vector_constructors():
    assert max_family_d(6) == (1, 8, 2, 2, 2, 2)
    assert dk_family_d(6, 0) == (1, 8, 1, 3, 2, 2)
    assert dk_family_d(6, 2) == (1, 8, 1, 2, 2, 3)
    assert d313(5) == (3, 1, 3, 2, 2)
    with pytest.raises(ValueError):
        max_family_d(2)


def test_family_vectors_are_structures():
    for n in (4, 6, 9):
        fam = GraphFamily.cycle(n)
        assert r_from_d(fam, max_family_d(n)).ok
        for k in range(0, n - 3):
            assert r_from_d(fam, dk_family_d(n, k)).ok


def test_dk_families_are_spectrally_paired():
    fam = GraphFamily.cycle(8)
    from arithcycle.spectra import build_l_from_d
    for k in range(0, 5):
        a = spectral_radius(build_l_from_d(fam, dk_family_d(8, k)))
        b = spectral_radius(build_l_from_d(fam, dk_family_d(8, 4 - k)))
        assert math.isclose(a, b, abs_tol=1e-9)


def test_check_313_values():
    three = check_313(3)
    assert three.passed
    assert math.isclose(three.outcomes[0].notes["mu1"], 4.0, abs_tol=1e-9)
    four = check_313(4)
    assert four.passed
    assert four.outcomes[0].notes["anchor"] == 4.41421
    assert math.isclose(four.outcomes[0].notes["mu1"], 3.0 + math.sqrt(2.0), abs_tol=1e-5)
    five = check_313(5)
    assert five.passed
    assert math.isclose(five.outcomes[0].notes["mu1"], 4.0, abs_tol=1e-9)
    seven = check_313(7)
    assert seven.passed
    assert seven.outcomes[0].margin > 0.1


def test_check_lemma_m_floor_and_values():
    with pytest.raises(ValueError):
        check_lemma_m(4)
    skipped = run_check("lemma-M", 4)
    assert skipped.passed and "skipped" in skipped.outcomes[0].notes
    rep = check_lemma_m(5)
    assert rep.passed
    notes = rep.outcomes[0].notes
    assert math.isclose(notes["mu1"], 4.085081, abs_tol=1e-5)
    assert notes["mu1_next"] >= notes["mu1"]


def test_check_min_notes(catalogs):
    rep = check_min(6, catalogs[6])
    assert rep.passed
    out = rep.outcomes[0]
    assert out.notes["catalog_size"] == 462
    assert math.isclose(out.notes["laplacian_mu1"], 4.0, abs_tol=1e-9)
    assert out.margin > 0


def test_wrong_catalog_is_rejected(catalogs):
    with pytest.raises(ValueError):
        check_min(5, catalogs[6])


def test_catalog_required_beyond_cap():
    with pytest.raises(CatalogMissing):
        check_min(EXHAUSTIVE_CAP + 1)


def test_doctored_catalog_fails_with_witness(catalogs):
    bogus = bytes((9, 9, 9, 9, 9))
    doctored = StructureCatalog(
        GraphFamily.cycle(5), set(catalogs[5].sorted_bytes) | {bogus})
    rep = check_d_bound(5, doctored, scan=False)
    assert not rep.passed
    out = rep.outcomes[0]
    assert out.witness["max_entry"] == 9
    assert out.witness["expected"] == 7
    assert rep.to_dict()["verdict"] == "fail"


def test_min_detects_fake_low_structure(catalogs):
    fake = bytes((1, 1, 1, 1, 1))
    doctored = StructureCatalog(
        GraphFamily.cycle(5), set(catalogs[5].sorted_bytes) | {fake})
    rep = check_min(5, doctored)
    assert not rep.passed
    assert rep.outcomes[0].witness["closest_other_d"] == [1, 1, 1, 1, 1]


def test_scan_toggle(catalogs):
    with_scan = check_d_bound(5, catalogs[5], scan=True)
    assert with_scan.passed
    notes = with_scan.outcomes[0].notes
    assert notes["scan_ran"] is True
    assert notes["scan_size"] == 126
    without = check_d_bound(5, catalogs[5], scan=False)
    assert without.passed
    assert "scan_size" not in without.outcomes[0].notes


def test_dstar_skip_and_counts(catalogs):
    skipped = run_check("d-star", 5, catalogs[5])
    assert skipped.passed and "skipped" in skipped.outcomes[0].notes
    rep = check_dstar(7, catalogs[7])
    assert rep.passed
    notes = rep.outcomes[0].notes
    assert notes["structures_with_entry_n_plus_1"] > 0
    assert notes["alignments_checked"] >= notes["structures_with_entry_n_plus_1"]


def test_discard_headroom(catalogs):
    rep = check_discard(6, catalogs[6])
    assert rep.passed
    out = rep.outcomes[0]
    assert out.margin > 0
    assert out.notes["largest_mu1"] < 8.0
    assert out.notes["bounded_structures"] < len(catalogs[6])


def test_max_exhaustive_mode(catalogs):
    rep = check_max(6, catalogs[6])
    assert rep.passed
    notes = rep.outcomes[0].notes
    assert notes["mode"] == "exhaustive"
    assert math.isclose(notes["mu1_max_family"], 8.303103065620226, abs_tol=1e-9)
    assert notes["window"] == [8, 8 + 4.0]
    assert notes["runner_gap"] > 0
    assert notes["gap_to_runner_family"] > 0


def test_max_families_only_mode():
    rep = check_max(20)
    assert rep.passed
    notes = rep.outcomes[0].notes
    assert notes["mode"] == "families-only"
    assert math.isclose(notes["mu1_max_family"], 22.097393, abs_tol=1e-5)
    assert "catalog_max_mu1" not in notes


def test_max_explicit_flag_overrides():
    rep = check_max(6, families_only=True)
    assert rep.passed
    assert rep.outcomes[0].notes["mode"] == "families-only"


def test_max_exceeds_discard_ceiling(catalogs):
    # Cross-theorem consistency: the overall maximum lives strictly above
    # everything the discard bound covers.
    top = check_max(7, catalogs[7]).outcomes[0].notes["catalog_max_mu1"]
    ceiling = check_discard(7, catalogs[7]).outcomes[0].notes["largest_mu1"]
    assert top > ceiling + 0.1


def test_eigvec_bounds_single():
    rep = check_eigvec_bounds(10, 0)
    assert rep.passed
    out = rep.outcomes[0]
    assert out.margin > 0
    assert out.notes["x3_abs"] > out.notes["x_k4_abs"]
    assert out.notes["residual"] <= 1e-8


def test_eigvec_all_folds_every_k():
    rep = check_eigvec_all(10)
    assert rep.passed
    assert rep.outcomes[0].notes["k_values"] == list(range(7))
    skipped = run_check("eigvec", 6)
    assert skipped.passed and "skipped" in skipped.outcomes[0].notes


def test_unit_vertex_check(catalogs):
    rep = check_unit_vertex(7, catalogs[7])
    assert rep.passed
    assert rep.theorem_id == "unit-vertex"


def test_merge_reports_contract():
    merged = merge_reports([check_313(5), check_313(3)])
    assert merged.theorem_id == "d313"
    assert merged.n_range == (3, 5)
    assert [o.n for o in merged.outcomes] == [3, 5]
    with pytest.raises(ValueError):
        merge_reports([])
    with pytest.raises(ValueError):
        merge_reports([check_313(3), check_lemma_m(5)])


def test_report_serialization_roundtrip():
    doc = check_313(4).to_dict()
    assert doc["theorem_id"] == "d313"
    assert doc["verdict"] == "pass"
    assert doc["n_range"] == [4, 4]
    assert doc["tolerances"] == TOLERANCES
    assert doc["per_n"][0]["verdict"] == "pass"
    json.dumps(doc)


def test_failed_outcome_serializes_as_fail():
    out = CheckOutcome(3, False, -1.0, {"d": [9, 9, 9]})
    rep = VerificationReport("d-bound", [out])
    doc = rep.to_dict()
    assert doc["verdict"] == "fail"
    assert doc["per_n"][0]["witness"] == {"d": [9, 9, 9]}


def test_unknown_check_name():
    with pytest.raises(KeyError):
        run_check("nope", 5)
