"""Complete catalogs of arithmetical structures on cycles and paths.

Cycle catalogs are built by subdivision closure: every structure on C_n
other than the Laplacian smooths (at a degree-1 vertex) to a structure on
C_{n-1}, so the catalog of size n is generated from the catalog of size
n-1. Subdivision as implemented inserts the new vertex after its edge,
which can never place the new unit entry at position 0; the closure
therefore also adds, for each parent, the right-rotation of the wrapping
edge's subdivision, and this provably completes the labeled catalog.

Exhaustive bounded scans over d-vectors serve as independent oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional

from . import backend
from .structures import (
    ArithmeticalStructure,
    GraphFamily,
    laplacian_d,
    r_from_d,
    structure_from_d,
)
from .transforms import canonical_cycle_bytes, canonical_path_bytes

MAX_ENUM_N = 12
MAX_SCAN_N = 9
MAX_PATH_N = 9


class CapExceeded(Exception):
    """The requested size is beyond the configured enumeration cap."""


@dataclass(frozen=True)
class OrbitCount:
    n: int
    total: int
    up_to_symmetry: int


class StructureCatalog:
    """Every structure on one graph, stored as a set of d-vector byte strings."""

    def __init__(self, family: GraphFamily, d_bytes: Iterable[bytes],
                 search_info: Optional[dict] = None):
        self.family = family
        self._dset = frozenset(d_bytes)
        self.search_info = dict(search_info) if search_info else None

    def __len__(self) -> int:
        return len(self._dset)

    def __contains__(self, d) -> bool:
        return (d if isinstance(d, bytes) else bytes(d)) in self._dset

    @cached_property
    def sorted_bytes(self) -> list[bytes]:
        return sorted(self._dset)

    def d_vectors(self) -> Iterator[tuple[int, ...]]:
        for b in self.sorted_bytes:
            yield tuple(b)

    def structures(self) -> Iterator[ArithmeticalStructure]:
        for b in self.sorted_bytes:
            yield structure_from_d(self.family, tuple(b))

    @cached_property
    def orbit_index(self) -> dict[bytes, list[bytes]]:
        """Canonical d-vector -> sorted orbit members present in the catalog."""
        canon = canonical_cycle_bytes if self.family.is_cycle else canonical_path_bytes
        index: dict[bytes, list[bytes]] = {}
        for b in self.sorted_bytes:
            index.setdefault(canon(b), []).append(b)
        return index

    def max_entry(self) -> int:
        return max(max(b) for b in self._dset)


def _closure_children(parent: bytes) -> Iterator[bytes]:
    # One subdivision per edge, plus the rotated wrap-edge image that
    # restores structures whose only unit entry sits at position 0.
    m = len(parent)
    for i in range(m - 1):
        c = bytearray(parent)
        c[i] += 1
        c[i + 1] += 1
        c.insert(i + 1, 1)
        yield bytes(c)
    c = bytearray(parent)
    c[0] += 1
    c[m - 1] += 1
    c.append(1)
    wrapped = bytes(c)
    yield wrapped
    yield wrapped[-1:] + wrapped[:-1]


def _base_cycle_bytes() -> set[bytes]:
    found = set(backend.cycle_scan(3, 7))
    if len(found) != math.comb(5, 2):
        raise RuntimeError(f"C_3 base scan found {len(found)} structures, expected 10")
    return found


def expected_cycle_count(n: int) -> int:
    """The number of labeled structures on C_n: binom(2n-1, n-1)."""
    return math.comb(2 * n - 1, n - 1)


def extend_catalog(catalog: StructureCatalog) -> StructureCatalog:
    """One inductive step: the complete catalog on C_{n+1} from the one on C_n."""
    if not catalog.family.is_cycle:
        raise ValueError("only cycle catalogs extend")
    n = catalog.family.n + 1
    nxt: set[bytes] = {bytes([2]) * n}
    for parent in catalog._dset:
        nxt.update(_closure_children(parent))
    if len(nxt) != expected_cycle_count(n):
        raise RuntimeError(
            f"closure produced {len(nxt)} structures at n={n}, "
            f"expected {expected_cycle_count(n)}"
        )
    return StructureCatalog(GraphFamily.cycle(n), nxt)


def iter_cycle_catalogs(lo: int = 3, hi: int = MAX_ENUM_N) -> Iterator[tuple[int, StructureCatalog]]:
    """Yield (n, catalog) for n = lo..hi, reusing each level to build the next.

    Only two levels are held in memory at a time.
    """
    if lo < 3 or hi < lo:
        raise ValueError(f"bad range {lo}..{hi}")
    current = StructureCatalog(GraphFamily.cycle(3), _base_cycle_bytes())
    if lo == 3:
        yield 3, current
    while current.family.n < hi:
        current = extend_catalog(current)
        if current.family.n >= lo:
            yield current.family.n, current


def enumerate_cycle(n: int, cap: int = MAX_ENUM_N) -> StructureCatalog:
    """The complete labeled catalog on C_n (subdivision closure route)."""
    if n < 3:
        raise ValueError("cycles need n >= 3")
    if n > cap:
        raise CapExceeded(f"n={n} beyond enumeration cap {cap}")
    for _, catalog in iter_cycle_catalogs(n, n):
        return catalog
    raise AssertionError("unreachable")


def brute_force_cycle(n: int, d_cap: Optional[int] = None) -> StructureCatalog:
    """Independent oracle: exhaustive scan of d-vectors in [1, d_cap]^n.

    The default cap n+4 exceeds the proven entry bound n+2, so the scan
    provably sees every structure.
    """
    if n < 3:
        raise ValueError("cycles need n >= 3")
    if n > MAX_SCAN_N:
        raise CapExceeded(f"brute-force scan supports n <= {MAX_SCAN_N}, got {n}")
    cap = n + 4 if d_cap is None else d_cap
    if cap < n + 4:
        raise ValueError(f"scan cap {cap} below n+4; the scan could miss structures")
    found = backend.cycle_scan(n, cap)
    max_entry = max(max(b) for b in found)
    info = {"d_cap": cap, "max_entry": max_entry, "bound_hit": max_entry == cap}
    return StructureCatalog(GraphFamily.cycle(n), found, search_info=info)


def enumerate_path(n: int, d_cap: Optional[int] = None) -> StructureCatalog:
    """Every structure on the path P_n with entries bounded by d_cap (default 2n).

    Exhaustive over the box [1, d_cap]^n: every valid label vector has
    r[0] = r[n-1] = 1 (the first entry divides all the others through the
    recurrence, and gcd is 1), so searching label prefixes from both ends
    and joining at a middle vertex covers the whole box. search_info
    records the bound, whether any accepted entry sits on it, and how
    many joins were rejected only because the middle entry exceeded it.
    """
    if n < 2:
        raise ValueError("paths need n >= 2")
    if n > MAX_PATH_N:
        raise CapExceeded(f"path enumeration supports n <= {MAX_PATH_N}, got {n}")
    cap = 2 * n if d_cap is None else d_cap
    if cap < 2:
        raise ValueError("cap must be at least 2")
    family = GraphFamily.path(n)
    found: set[bytes] = set()
    beyond = 0
    if n == 2:
        # r = (1, d0); the far endpoint needs d1 = 1/d0 to be integral.
        for d0 in range(1, cap + 1):
            q, rem = divmod(1, d0)
            if rem == 0 and 1 <= q <= cap:
                found.add(bytes((d0, q)))
    else:
        mm = (n - 1) // 2  # meet vertex
        forward: list[tuple[tuple[int, ...], int, int]] = []

        def frec(j: int, prefix: tuple[int, ...], r_prev: int, r_cur: int) -> None:
            if j == mm:
                forward.append((prefix, r_prev, r_cur))
                return
            for dv in range(1, cap + 1):
                r_next = dv * r_cur - r_prev
                if r_next >= 1:
                    frec(j + 1, prefix + (dv,), r_cur, r_next)

        for d0 in range(1, cap + 1):
            frec(1, (d0,), 1, d0)

        backward: dict[int, list[tuple[tuple[int, ...], int]]] = {}

        def brec(j: int, suffix: tuple[int, ...], r_cur: int, r_next: int) -> None:
            if j == mm:
                backward.setdefault(r_cur, []).append((suffix, r_next))
                return
            for dv in range(1, cap + 1):
                r_prev = dv * r_cur - r_next
                if r_prev >= 1:
                    brec(j - 1, (dv,) + suffix, r_prev, r_cur)

        for dn in range(1, cap + 1):
            brec(n - 2, (dn,), dn, 1)

        for prefix, r_pm, r_m in forward:
            for suffix, r_p1 in backward.get(r_m, ()):
                q, rem = divmod(r_pm + r_p1, r_m)
                if rem or q < 1:
                    continue
                if q > cap:
                    beyond += 1
                    continue
                found.add(bytes(prefix + (q,) + suffix))

    for b in found:
        if not r_from_d(family, tuple(b)).ok:
            raise RuntimeError(f"path scan emitted a non-structure {tuple(b)}")
    max_entry = max(max(b) for b in found) if found else 0
    info = {
        "d_cap": cap,
        "max_entry": max_entry,
        "bound_hit": max_entry == cap,
        "rejected_beyond_cap": beyond,
    }
    return StructureCatalog(family, found, search_info=info)


def count_orbits(catalog: StructureCatalog) -> OrbitCount:
    """Totals and orbit counts, with internal consistency enforced."""
    index = catalog.orbit_index
    total = len(catalog)
    if sum(len(v) for v in index.values()) != total:
        raise RuntimeError("orbit index does not partition the catalog")
    group_order = 2 * catalog.family.n if catalog.family.is_cycle else 2
    for members in index.values():
        if group_order % len(members):
            raise RuntimeError(
                f"orbit size {len(members)} does not divide group order {group_order}"
            )
    return OrbitCount(catalog.family.n, total, len(index))


def has_isolated_unit_entry(d) -> bool:
    """Whether some entry equals 1 with both cyclic neighbors above 1."""
    n = len(d)
    return any(d[i] == 1 and d[i - 1] != 1 and d[(i + 1) % n] != 1 for i in range(n))
