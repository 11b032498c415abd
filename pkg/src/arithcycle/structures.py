"""Arithmetical structures on cycle and path graphs.

An arithmetical structure on a graph G is a pair of positive integer
vectors (d, r) with gcd(r) = 1 such that (diag(d) - A)r = 0, where A is
the adjacency matrix. Either vector determines the other: r spans the
kernel of the generalized Laplacian, and d is recovered entrywise as the
neighbor-label sum divided by the vertex label.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, Sequence

from . import exact

CYCLE = "cycle"
PATH = "path"

VALID = "valid"
NO_POSITIVE_KERNEL = "no_positive_kernel"


class NonIntegralQuotient(ValueError):
    """A neighbor-label sum was not divisible by the vertex label."""


@dataclass(frozen=True)
class GraphFamily:
    """A cycle C_n (n >= 3) or path P_n (n >= 2) with vertices 0..n-1."""

    kind: str
    n: int

    def __post_init__(self) -> None:
        if self.kind not in (CYCLE, PATH):
            raise ValueError(f"unknown graph kind {self.kind!r}")
        minimum = 3 if self.kind == CYCLE else 2
        if self.n < minimum:
            raise ValueError(f"{self.kind} needs at least {minimum} vertices, got {self.n}")

    @classmethod
    def cycle(cls, n: int) -> "GraphFamily":
        return cls(CYCLE, n)

    @classmethod
    def path(cls, n: int) -> "GraphFamily":
        return cls(PATH, n)

    @property
    def is_cycle(self) -> bool:
        return self.kind == CYCLE

    def neighbors(self, i: int) -> tuple[int, ...]:
        n = self.n
        if self.is_cycle:
            return ((i - 1) % n, (i + 1) % n)
        if i == 0:
            return (1,)
        if i == n - 1:
            return (n - 2,)
        return (i - 1, i + 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for i in range(self.n - 1):
            yield (i, i + 1)
        if self.is_cycle:
            yield (self.n - 1, 0)


@dataclass(frozen=True)
class KernelSolution:
    """Outcome of a kernel solve: either a label vector or a definite no."""

    status: str
    r: tuple[int, ...] | None = None

    @property
    def ok(self) -> bool:
        return self.status == VALID


@dataclass(frozen=True)
class ArithmeticalStructure:
    family: GraphFamily
    d: tuple[int, ...]
    r: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.family.n

    @property
    def is_laplacian(self) -> bool:
        return self.d == laplacian_d(self.family)


def laplacian_d(family: GraphFamily) -> tuple[int, ...]:
    if family.is_cycle:
        return (2,) * family.n
    if family.n == 2:
        return (1, 1)
    return (1,) + (2,) * (family.n - 2) + (1,)


def laplacian_structure(family: GraphFamily) -> ArithmeticalStructure:
    """The structure with d the degree sequence and r all ones."""
    return ArithmeticalStructure(family, laplacian_d(family), (1,) * family.n)


def _check_d_input(family: GraphFamily, d: Sequence[int]) -> tuple[int, ...]:
    d = tuple(d)
    if len(d) != family.n:
        raise ValueError(f"d has length {len(d)}, expected {family.n}")
    if any(not isinstance(v, int) or v < 1 for v in d):
        raise ValueError("d entries must be integers >= 1")
    return d


def r_from_d(family: GraphFamily, d: Sequence[int]) -> KernelSolution:
    """Solve for the label vector of a candidate d-vector.

    Returns KernelSolution(VALID, r) when diag(d) - A has a positive
    kernel vector (normalized to gcd 1), else
    KernelSolution(NO_POSITIVE_KERNEL). Malformed input raises ValueError.
    """
    d = _check_d_input(family, d)
    r = exact.cycle_kernel(d) if family.is_cycle else exact.path_kernel(d)
    if r is None:
        return KernelSolution(NO_POSITIVE_KERNEL)
    return KernelSolution(VALID, r)


def d_from_r(family: GraphFamily, r: Sequence[int]) -> tuple[int, ...]:
    """Recover d from a label vector, or raise NonIntegralQuotient.

    Requires positive entries with gcd 1.
    """
    r = tuple(r)
    if len(r) != family.n:
        raise ValueError(f"r has length {len(r)}, expected {family.n}")
    if any(not isinstance(v, int) or v < 1 for v in r):
        raise ValueError("r entries must be integers >= 1")
    g = 0
    for v in r:
        g = gcd(g, v)
    if g != 1:
        raise ValueError("r entries must have gcd 1")
    d = []
    for i in range(family.n):
        s = sum(r[j] for j in family.neighbors(i))
        q, rem = divmod(s, r[i])
        if rem:
            raise NonIntegralQuotient(
                f"neighbor sum {s} at position {i} is not a multiple of {r[i]}"
            )
        if q < 1:
            raise NonIntegralQuotient(f"quotient at position {i} is {q}, not positive")
        d.append(q)
    return tuple(d)


def structure_from_d(family: GraphFamily, d: Sequence[int]) -> ArithmeticalStructure:
    """Build a validated structure from d; ValueError if d admits no labels."""
    sol = r_from_d(family, d)
    if not sol.ok:
        raise ValueError(f"{tuple(d)} is not an arithmetical structure on {family.kind} n={family.n}")
    return ArithmeticalStructure(family, tuple(d), sol.r)


def validate(s: ArithmeticalStructure) -> bool:
    """Exact integer check of every defining invariant."""
    family = s.family
    if len(s.d) != family.n or len(s.r) != family.n:
        return False
    if any(v < 1 for v in s.d) or any(v < 1 for v in s.r):
        return False
    if exact.gcd_all(s.r) != 1:
        return False
    if family.is_cycle:
        return exact.check_cycle_equations(s.d, s.r)
    return exact.check_path_equations(s.d, s.r)
