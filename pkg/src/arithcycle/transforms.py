"""Symmetries and local moves on arithmetical structures.

Vertices and edges are 0-based throughout: edge i joins vertices i and
i+1 (edge n-1 of a cycle wraps around to vertex 0).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .structures import ArithmeticalStructure, GraphFamily


class SmoothAtNonUnit(ValueError):
    """Smoothing requires the removed vertex to carry d = 1."""


class SizeTooSmall(ValueError):
    """Smoothing would shrink the graph below its minimum order."""


@dataclass(frozen=True)
class DihedralElement:
    """One symmetry of the n-cycle: rotation by k, optionally reflected.

    Acting on a sequence x: (g x)[j] = x[(j + k) mod n] for a rotation and
    x[(k - j) mod n] for a reflection.
    """

    n: int
    rotation: int
    reflected: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotation", self.rotation % self.n)

    @classmethod
    def identity(cls, n: int) -> "DihedralElement":
        return cls(n, 0, False)

    def permute(self, seq: Sequence) -> tuple:
        n, k = self.n, self.rotation
        if len(seq) != n:
            raise ValueError(f"sequence length {len(seq)} != {n}")
        if self.reflected:
            return tuple(seq[(k - j) % n] for j in range(n))
        return tuple(seq[(j + k) % n] for j in range(n))

    def compose(self, other: "DihedralElement") -> "DihedralElement":
        """The element acting as: apply `other` first, then `self`."""
        if self.n != other.n:
            raise ValueError("mismatched group orders")
        eps_o = -1 if other.reflected else 1
        k = (eps_o * self.rotation + other.rotation) % self.n
        return DihedralElement(self.n, k, self.reflected ^ other.reflected)

    def inverse(self) -> "DihedralElement":
        if self.reflected:
            return self
        return DihedralElement(self.n, -self.rotation, False)


def dihedral_elements(n: int) -> Iterator[DihedralElement]:
    """All 2n symmetries of the n-cycle."""
    for reflected in (False, True):
        for k in range(n):
            yield DihedralElement(n, k, reflected)


def apply_symmetry(s: ArithmeticalStructure, g: DihedralElement) -> ArithmeticalStructure:
    """Relabel a cycle structure by a dihedral symmetry."""
    if not s.family.is_cycle:
        raise ValueError("dihedral symmetries act on cycle structures")
    if g.n != s.n:
        raise ValueError("symmetry order does not match structure size")
    return ArithmeticalStructure(s.family, g.permute(s.d), g.permute(s.r))


def canonical_cycle_bytes(b: bytes) -> bytes:
    """Lexicographically least byte string over all rotations and reflections."""
    n = len(b)
    doubled = b + b
    best = min(doubled[i : i + n] for i in range(n))
    rb = b[::-1]
    doubled = rb + rb
    best_r = min(doubled[i : i + n] for i in range(n))
    return min(best, best_r)


def canonical_path_bytes(b: bytes) -> bytes:
    """Least of a path d-vector and its reversal."""
    return min(b, b[::-1])


def canonical_key(family: GraphFamily, d: Sequence[int]) -> tuple[int, ...]:
    """Orbit representative of d under the graph's symmetry group.

    Cycles use the full dihedral group (2n elements), paths the order-2
    reflection. Entries must fit in a byte, which covers every valid
    structure (cycle entries are bounded by n + 2).
    """
    b = bytes(d)
    if family.is_cycle:
        return tuple(canonical_cycle_bytes(b))
    return tuple(canonical_path_bytes(b))


def orbit(s: ArithmeticalStructure) -> set[tuple[int, ...]]:
    """All distinct d-vectors in the symmetry orbit of a cycle structure."""
    return {apply_symmetry(s, g).d for g in dihedral_elements(s.n)}


def subdivide(s: ArithmeticalStructure, edge: int) -> ArithmeticalStructure:
    """Insert a degree-2 vertex into edge (i, i+1).

    The new vertex lands at position i+1 with d = 1 and r the sum of the
    labels it sits between; both old endpoints get d incremented.
    """
    family = s.family
    n = family.n
    max_edge = n - 1 if family.is_cycle else n - 2
    if not 0 <= edge <= max_edge:
        raise ValueError(f"edge index {edge} out of range 0..{max_edge}")
    i, j = edge, (edge + 1) % n
    d = list(s.d)
    r = list(s.r)
    d[i] += 1
    d[j] += 1
    new_r = s.r[i] + s.r[j]
    d.insert(edge + 1, 1)
    r.insert(edge + 1, new_r)
    out_family = GraphFamily(family.kind, n + 1)
    return ArithmeticalStructure(out_family, tuple(d), tuple(r))


def smooth(s: ArithmeticalStructure, vertex: int) -> ArithmeticalStructure:
    """Remove a d = 1 vertex of degree 2, reconnecting its neighbors.

    Inverse of subdivide. Cycles need n >= 4 so the result is still a
    cycle; on paths only interior vertices can be smoothed.
    """
    family = s.family
    n = family.n
    if not 0 <= vertex < n:
        raise ValueError(f"vertex index {vertex} out of range 0..{n - 1}")
    if family.is_cycle:
        if n < 4:
            raise SizeTooSmall("smoothing a 3-cycle would leave a multigraph")
    else:
        if vertex in (0, n - 1):
            raise ValueError("cannot smooth a path endpoint")
        if n < 3:
            raise SizeTooSmall("path too small to smooth")
    if s.d[vertex] != 1:
        raise SmoothAtNonUnit(f"d[{vertex}] = {s.d[vertex]}, need 1")
    left, right = (vertex - 1) % n, (vertex + 1) % n
    d = list(s.d)
    r = list(s.r)
    d[left] -= 1
    d[right] -= 1
    del d[vertex]
    del r[vertex]
    out_family = GraphFamily(family.kind, n - 1)
    return ArithmeticalStructure(out_family, tuple(d), tuple(r))
