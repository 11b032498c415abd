"""Command-line frontend.

Subcommands: enumerate (catalog records), spectra (one structure's spectrum),
table (per-orbit summary in the style of the reference table), verify
(theorem campaigns as a JSON report), count (totals and orbit counts).

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 cap exceeded,
4 invalid structure input. Standard output carries only data; diagnostics go
to standard error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Iterator, Optional

from . import backend
from .enumeration import (
    MAX_ENUM_N,
    MAX_PATH_N,
    MAX_SCAN_N,
    CapExceeded,
    StructureCatalog,
    count_orbits,
    enumerate_cycle,
    enumerate_path,
    expected_cycle_count,
    extend_catalog,
)
from .records import (
    SCHEMA_VERSION,
    cache_filename,
    csv_line,
    CSV_HEADER,
    iter_jsonl,
    markdown_header,
    markdown_row,
    markdown_table,
    structure_record,
    write_jsonl,
)
from .spectra import build_l, eigenvalues, spectral_radius, top_eigenpair
from .structures import GraphFamily, r_from_d, structure_from_d, ArithmeticalStructure
from .theorems import (
    CHECKS,
    EXHAUSTIVE_CAP,
    TOLERANCES,
    CatalogMissing,
    merge_reports,
    run_check,
)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_INVALID = 4

CACHE_ENV = "ARITH_CACHE_DIR"


class UsageError(Exception):
    pass


class InvalidStructure(Exception):
    pass


def _parse_n_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad n range {text!r}; expected N or A..B")
    if hi < lo:
        raise UsageError(f"empty n range {text!r}")
    return lo, hi


def _parse_d(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"bad d vector {text!r}; expected comma-separated integers")


def _check_n(kind: str, n: int) -> None:
    floor = 3 if kind == "cycle" else 2
    if n < floor:
        raise UsageError(f"{kind} graphs need n >= {floor}, got {n}")
    cap = MAX_ENUM_N if kind == "cycle" else MAX_PATH_N
    if n > cap:
        raise CapExceeded(f"{kind} enumeration supports n <= {cap}, got {n}")


def _cache_dir(args) -> Optional[str]:
    if getattr(args, "cache", None):
        return args.cache
    return os.environ.get(CACHE_ENV) or None


def _load_cached_catalog(family: GraphFamily, cache_dir: str) -> Optional[StructureCatalog]:
    path = os.path.join(cache_dir, cache_filename(family))
    if not os.path.exists(path):
        return None
    dset = set()
    try:
        for rec in iter_jsonl(path):
            if rec.get("graph") != family.kind or int(rec.get("n", -1)) != family.n:
                raise ValueError(f"record for wrong graph in {path}")
            dset.add(bytes(int(v) for v in rec["d"]))
        if family.is_cycle and len(dset) != expected_cycle_count(family.n):
            raise ValueError(
                f"{path} holds {len(dset)} records, expected {expected_cycle_count(family.n)}"
            )
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"ignoring unusable cache file {path}: {exc}", file=sys.stderr)
        return None
    return StructureCatalog(family, dset)


def _write_catalog_cache(catalog: StructureCatalog, cache_dir: str) -> None:
    path = os.path.join(cache_dir, cache_filename(catalog.family))
    write_jsonl(path, (structure_record(s) for s in catalog.structures()))


def _cycle_catalogs(ns: list[int], cache_dir: Optional[str]) -> Iterator[tuple[int, StructureCatalog]]:
    """Catalogs for the given ns (ascending), reusing cache files and chaining
    consecutive levels instead of recomputing from scratch."""
    prev: Optional[StructureCatalog] = None
    for n in sorted(set(ns)):
        cat = _load_cached_catalog(GraphFamily.cycle(n), cache_dir) if cache_dir else None
        if cat is None:
            if prev is not None and prev.family.n == n - 1:
                cat = extend_catalog(prev)
            else:
                cat = enumerate_cycle(n)
            if cache_dir:
                _write_catalog_cache(cat, cache_dir)
        prev = cat
        yield n, cat


def _catalog_records(catalog: StructureCatalog, up_to_symmetry: bool) -> Iterator[dict]:
    if up_to_symmetry:
        for canon in sorted(catalog.orbit_index):
            members = catalog.orbit_index[canon]
            s = structure_from_d(catalog.family, tuple(canon))
            yield structure_record(s, orbit_size=len(members))
    else:
        for s in catalog.structures():
            yield structure_record(s)


def _path_catalog(n: int, cache_dir: Optional[str]) -> StructureCatalog:
    cat = _load_cached_catalog(GraphFamily.path(n), cache_dir) if cache_dir else None
    if cat is None:
        cat = enumerate_path(n)
        if cache_dir:
            _write_catalog_cache(cat, cache_dir)
    return cat


def cmd_enumerate(args) -> int:
    lo, hi = _parse_n_range(args.n_range) if args.n_range else (args.n, args.n)
    for n in range(lo, hi + 1):
        _check_n(args.graph, n)
    cache_dir = _cache_dir(args)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    wrote_header = False
    try:
        if args.graph == "cycle":
            source = _cycle_catalogs(list(range(lo, hi + 1)), cache_dir)
        else:
            source = ((n, _path_catalog(n, cache_dir)) for n in range(lo, hi + 1))
        for n, catalog in source:
            if args.format == "csv" and not wrote_header:
                print(CSV_HEADER, file=out)
                wrote_header = True
            elif args.format == "md" and not wrote_header:
                for line in markdown_header():
                    print(line, file=out)
                wrote_header = True
            for rec in _catalog_records(catalog, args.up_to_symmetry):
                if args.format == "csv":
                    print(csv_line(rec), file=out)
                elif args.format == "md":
                    print(markdown_row(rec), file=out)
                else:
                    print(json.dumps(rec, separators=(",", ":")), file=out)
            orbits = len(catalog.orbit_index)
            print(f"{args.graph} n={n}: {len(catalog)} structures, {orbits} orbits",
                  file=sys.stderr)
            if catalog.search_info:
                print(f"{args.graph} n={n}: search {catalog.search_info}", file=sys.stderr)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_spectra(args) -> int:
    d = _parse_d(args.d)
    try:
        family = GraphFamily(args.graph, len(d))
    except ValueError as exc:
        raise UsageError(str(exc))
    try:
        sol = r_from_d(family, d)
    except ValueError as exc:
        raise InvalidStructure(f"not an arithmetical structure: {exc}")
    if not sol.ok:
        raise InvalidStructure(f"not an arithmetical structure: d={list(d)} has no positive kernel")
    s = ArithmeticalStructure(family, d, sol.r)
    payload: dict = {
        "graph": family.kind,
        "n": family.n,
        "d": list(d),
        "r": [str(v) for v in s.r],
    }
    matrix = build_l(s)
    if args.full:
        spectrum = eigenvalues(matrix)
        payload["mu1"] = float(spectrum.values[0])
        payload["eigenvalues"] = [float(v) for v in spectrum.values]
    else:
        payload["mu1"] = spectral_radius(matrix)
    if args.eigvec:
        pair = top_eigenpair(matrix)
        payload["eigenpair"] = {
            "value": pair.value,
            "vector": [float(v) for v in pair.vector],
            "residual": pair.residual,
        }
    print(json.dumps(payload))
    return EXIT_OK


def _table_rows(catalog: StructureCatalog) -> list[dict]:
    rows = []
    for canon in catalog.orbit_index:
        members = catalog.orbit_index[canon]
        s = structure_from_d(catalog.family, tuple(canon))
        mu = spectral_radius(build_l(s))
        rows.append(structure_record(s, mu1=mu, orbit_size=len(members)))
    rows.sort(key=lambda rec: (rec["mu1"], tuple(rec["canonical"])))
    return rows


def cmd_table(args) -> int:
    if args.n < 3:
        raise UsageError(f"cycle graphs need n >= 3, got {args.n}")
    if args.n > EXHAUSTIVE_CAP:
        raise CapExceeded(f"table supports n <= {EXHAUSTIVE_CAP}, got {args.n}")
    cache_dir = _cache_dir(args)
    catalog = next(cat for _, cat in _cycle_catalogs([args.n], cache_dir))
    rows = _table_rows(catalog)
    if args.format == "csv":
        print(CSV_HEADER)
        for rec in rows:
            print(csv_line(rec, mu_decimals=2))
    else:
        print(markdown_table(rows, bold_max=True))
    top = rows[-1]
    print(
        f"n={args.n}: {len(rows)} orbits; max d={tuple(top['d'])} mu1={top['mu1']:.2f}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    lo, hi = _parse_n_range(args.n_range)
    if lo < 3:
        raise UsageError(f"cycle theorems need n >= 3, got {lo}")
    names = list(CHECKS) if args.theorem == "all" else [args.theorem]
    cache_dir = _cache_dir(args)
    catalog_ns = [
        n for n in range(lo, hi + 1)
        if n <= EXHAUSTIVE_CAP
        and any(CHECKS[nm].needs_catalog and n >= CHECKS[nm].min_n for nm in names)
    ]
    catalogs = dict(_cycle_catalogs(catalog_ns, cache_dir)) if catalog_ns else {}
    per_name = {name: [] for name in names}
    for n in range(lo, hi + 1):
        for name in names:
            spec = CHECKS[name]
            if spec.needs_catalog and n > EXHAUSTIVE_CAP and name != "max":
                raise CapExceeded(
                    f"{name} needs the full catalog, capped at n <= {EXHAUSTIVE_CAP}; got {n}"
                )
            per_name[name].append(run_check(name, n, catalogs.get(n)))
    reports = [merge_reports(per_name[name]) for name in names]
    document = {
        "schema_version": SCHEMA_VERSION,
        "command": f"verify --theorem {args.theorem} --n-range {args.n_range}",
        "reports": [rep.to_dict() for rep in reports],
        "environment": {
            "backend": backend.NAME,
            "tolerances": TOLERANCES,
            "caps": {
                "exhaustive_catalog": EXHAUSTIVE_CAP,
                "enumerate": MAX_ENUM_N,
                "scan": MAX_SCAN_N,
                "path": MAX_PATH_N,
            },
        },
    }
    all_passed = all(rep.passed for rep in reports)
    print(json.dumps(document, indent=2))
    for rep in reports:
        verdict = "pass" if rep.passed else "FAIL"
        print(f"{rep.theorem_id}: {verdict} over n={lo}..{hi}", file=sys.stderr)
    return EXIT_OK if all_passed else EXIT_VERIFY_FAIL


def cmd_count(args) -> int:
    if args.n_range:
        lo, hi = _parse_n_range(args.n_range)
    else:
        lo, hi = (3, 10) if args.graph == "cycle" else (2, MAX_PATH_N)
    for n in range(lo, hi + 1):
        _check_n(args.graph, n)
    if args.graph == "cycle":
        for n, catalog in _cycle_catalogs(list(range(lo, hi + 1)), _cache_dir(args)):
            if args.up_to_symmetry:
                print(f"{n}\t{count_orbits(catalog).up_to_symmetry}")
            else:
                print(f"{n}\t{len(catalog)}")
    else:
        for n in range(lo, hi + 1):
            catalog = enumerate_path(n)
            if args.up_to_symmetry:
                value = len(catalog.orbit_index)
            else:
                value = len(catalog)
            print(f"{n}\t{value}")
            print(f"path n={n}: search {catalog.search_info}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arithcycle",
        description="Arithmetical structures on cycle graphs and their spectral radii.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="emit catalog records")
    p_enum.add_argument("--graph", choices=["cycle", "path"], default="cycle")
    group = p_enum.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int)
    group.add_argument("--n-range", dest="n_range")
    p_enum.add_argument("--up-to-symmetry", action="store_true")
    p_enum.add_argument("--format", choices=["jsonl", "csv", "md"], default="jsonl")
    p_enum.add_argument("--out")
    p_enum.add_argument("--cache", help=f"cache directory (default ${CACHE_ENV})")
    p_enum.set_defaults(fn=cmd_enumerate)

    p_spec = sub.add_parser("spectra", help="spectrum of one structure")
    p_spec.add_argument("--d", required=True, help="comma-separated d vector")
    p_spec.add_argument("--graph", choices=["cycle", "path"], default="cycle")
    p_spec.add_argument("--full", action="store_true", help="all eigenvalues")
    p_spec.add_argument("--eigvec", action="store_true", help="top eigenpair")
    p_spec.set_defaults(fn=cmd_spectra)

    p_table = sub.add_parser("table", help="per-orbit summary table")
    p_table.add_argument("--n", type=int, required=True)
    p_table.add_argument("--format", choices=["md", "csv"], default="md")
    p_table.add_argument("--cache", help=f"cache directory (default ${CACHE_ENV})")
    p_table.set_defaults(fn=cmd_table)

    p_verify = sub.add_parser("verify", help="run theorem checks")
    p_verify.add_argument(
        "--theorem",
        choices=list(CHECKS) + ["all"],
        default="all",
    )
    p_verify.add_argument("--n-range", dest="n_range", default="3..8")
    p_verify.add_argument("--cache", help=f"cache directory (default ${CACHE_ENV})")
    p_verify.set_defaults(fn=cmd_verify)

    p_count = sub.add_parser("count", help="structure counts per n")
    p_count.add_argument("--graph", choices=["cycle", "path"], default="cycle")
    p_count.add_argument("--n-range", dest="n_range")
    p_count.add_argument("--up-to-symmetry", action="store_true")
    p_count.add_argument("--cache", help=f"cache directory (default ${CACHE_ENV})")
    p_count.set_defaults(fn=cmd_count)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, CatalogMissing) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InvalidStructure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
