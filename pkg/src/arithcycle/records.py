"""Serialization of structures and reports: JSONL catalog caches, CSV, markdown.

r entries can exceed 2**53 well before d entries get large, so r is written
as decimal strings while d stays a plain int array.
"""
from __future__ import annotations

import json
import os
import tempfile
from typing import Iterable, Iterator, Optional

from .structures import ArithmeticalStructure, GraphFamily, structure_from_d
from .transforms import canonical_key

SCHEMA_VERSION = "1"

CSV_HEADER = "n,d,r,mu1,orbit_size"


def structure_record(s: ArithmeticalStructure, mu1: Optional[float] = None,
                     orbit_size: Optional[int] = None) -> dict:
    rec = {
        "schema_version": SCHEMA_VERSION,
        "graph": s.family.kind,
        "n": s.n,
        "d": list(s.d),
        "r": [str(v) for v in s.r],
        "canonical": list(canonical_key(s.family, s.d)),
    }
    if mu1 is not None:
        rec["mu1"] = float(mu1)
    if orbit_size is not None:
        rec["orbit_size"] = int(orbit_size)
    return rec


def record_to_structure(rec: dict) -> ArithmeticalStructure:
    family = GraphFamily(rec["graph"], int(rec["n"]))
    s = structure_from_d(family, tuple(int(v) for v in rec["d"]))
    stored_r = tuple(int(v) for v in rec["r"])
    if stored_r != s.r:
        raise ValueError(f"stored r {stored_r} disagrees with the kernel of d={rec['d']}")
    return s


def cache_filename(family: GraphFamily) -> str:
    return f"{family.kind}_n{family.n}.jsonl"


def write_jsonl(path: str, records: Iterable[dict]) -> int:
    """Write records atomically (temp file in the same directory, then replace)."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    count = 0
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(json.dumps(rec, separators=(",", ":")) + "\n")
                count += 1
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return count


def iter_jsonl(path: str) -> Iterator[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield json.loads(line)


def csv_line(rec: dict, mu_decimals: int = 6) -> str:
    d = ";".join(str(v) for v in rec["d"])
    r = ";".join(str(v) for v in rec["r"])
    mu = f"{rec['mu1']:.{mu_decimals}f}" if "mu1" in rec else ""
    orbit = str(rec["orbit_size"]) if "orbit_size" in rec else ""
    return f'{rec["n"]},"{d}","{r}",{mu},{orbit}'


def markdown_header() -> list[str]:
    return ["| n | d | r | mu1 | orbit size |", "| - | - | - | - | - |"]


def markdown_row(rec: dict, bold: bool = False) -> str:
    d = "(" + ", ".join(str(v) for v in rec["d"]) + ")"
    r = "(" + ", ".join(str(v) for v in rec["r"]) + ")"
    mu = f"{rec['mu1']:.2f}" if "mu1" in rec else ""
    orbit = str(rec.get("orbit_size", ""))
    if bold:
        d, r, mu = f"**{d}**", f"**{r}**", f"**{mu}**"
    return f"| {rec['n']} | {d} | {r} | {mu} | {orbit} |"


def markdown_table(rows: list[dict], bold_max: bool = True) -> str:
    """Render records as a markdown table; the largest-mu1 row is bolded."""
    lines = markdown_header()
    max_idx = -1
    if bold_max and any("mu1" in rec for rec in rows):
        max_idx = max(range(len(rows)), key=lambda i: rows[i].get("mu1", float("-inf")))
    for i, rec in enumerate(rows):
        lines.append(markdown_row(rec, bold=(i == max_idx)))
    return "\n".join(lines)
