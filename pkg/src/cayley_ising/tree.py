"""Cayley-tree geometry: spheres, balls, parity counts and vertex addressing.

Two rootings are first class citizens.  The half tree roots the lattice so
the root has k children; the full tree keeps all k+1 neighbours of the root.
Alternating boundary conditions live on the half tree while the in-field
(translation-invariant and two-periodic) results count vertices on the full
tree, so mixing the rootings silently is the main correctness hazard here.
Every counting routine therefore takes the rooting from the TreeSpec.

Vertices are addressed by their root path, a tuple of child indices, which
gives O(level) navigation with no global allocation.  Level enumeration is
lazy and prefix stable: the order of level m never depends on the depth.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

VertexId = tuple[int, ...]


class Rooting(Enum):
    HALF = "half"  # root has k children
    FULL = "full"  # root has k+1 children


@dataclass(frozen=True)
class TreeSpec:
    k: int
    rooting: Rooting
    depth: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"branching number k must be >= 2, got {self.k}")
        if self.depth < 0:
            raise ValueError(f"depth must be >= 0, got {self.depth}")

    @property
    def root_arity(self) -> int:
        return self.k + 1 if self.rooting is Rooting.FULL else self.k

    def arity_at(self, level: int) -> int:
        """Number of children of a vertex sitting at the given level."""
        return self.root_arity if level == 0 else self.k


def _check_range(spec: TreeSpec, m: int, what: str) -> None:
    if not 0 <= m <= spec.depth:
        raise ValueError(f"{what}={m} out of range [0, {spec.depth}]")


def sphere_size(spec: TreeSpec, m: int) -> int:
    """|W_m|, the number of vertices at distance exactly m from the root."""
    _check_range(spec, m, "m")
    if m == 0:
        return 1
    if spec.rooting is Rooting.HALF:
        return spec.k**m
    return (spec.k + 1) * spec.k ** (m - 1)


def ball_size(spec: TreeSpec, n: int) -> int:
    """|V_n|, the number of vertices at distance at most n from the root."""
    _check_range(spec, n, "n")
    k = spec.k
    if spec.rooting is Rooting.HALF:
        return (k ** (n + 1) - 1) // (k - 1)
    return ((k + 1) * k**n - 2) // (k - 1)


def parity_counts(spec: TreeSpec, n: int) -> tuple[int, int]:
    """(even, odd) vertex counts of the ball V_n, split by level parity.

    Computed by direct level summation.  On the full tree the closed forms
    1 + k(k^{2m}-1)/(k-1) for |V_even,2m| and (k^{2m+2}-1)/(k-1) for
    |V_odd,2m+1| are recovered exactly; they drive the two-periodic free
    energy weights.
    """
    _check_range(spec, n, "n")
    even = sum(sphere_size(spec, m) for m in range(0, n + 1, 2))
    odd = sum(sphere_size(spec, m) for m in range(1, n + 1, 2))
    return even, odd


def children(spec: TreeSpec, v: VertexId) -> Iterator[VertexId]:
    """Children of v in canonical (child-index) order."""
    if len(v) >= spec.depth:
        return iter(())
    arity = spec.arity_at(len(v))
    return (v + (j,) for j in range(arity))


def parent(v: VertexId) -> VertexId:
    if not v:
        raise ValueError("the root has no parent")
    return v[:-1]


def iterate_level(spec: TreeSpec, m: int) -> Iterator[VertexId]:
    """All vertices of level m in lexicographic order, lazily.

    The enumeration is a generator holding O(m) state and is prefix stable:
    iterating level m of a deeper tree yields the identical sequence.
    """
    _check_range(spec, m, "m")
    if m == 0:
        yield ()
        return
    head = range(spec.root_arity)
    rest = [range(spec.k)] * (m - 1)
    for path in itertools.product(head, *rest):
        yield path
