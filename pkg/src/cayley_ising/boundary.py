"""Boundary-condition families as explicit per-vertex field assignments.

Three families are constructed:

* alternating fields taking values {0, +-h1, +-h2}, propagated from parent to
  children by the (q, r) branching rules below,
* translation-invariant (constant) fields, and
* two-periodic fields depending only on the level parity.

An assignment never stores per-vertex data.  The label of a vertex is a pure
function of its parent's label and its child slot, so labels are generated
lazily along root paths and whole levels are expanded by iterated table
lookup.  Depth-18 trees (about 5e5 vertices) therefore cost one small array
per level, nothing more.

Alternating propagation rules, for a vertex with exactly k children:

  zero vertex   -> r zero children, (k-r)/2 children +h1, (k-r)/2 children -h1
  +-h1 vertex   -> q children +-h2, k-q children zero
  +-h2 vertex   -> all k children +-h1

with 1 <= q <= k-1, 0 <= r <= k and r of the same parity as k.  The order of
the slots within a sibling set is an arbitrary determinisation; all counting
and thermodynamic outputs are invariant under slot permutations, which the
test suite checks explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping

import numpy as np

from .model import ModelParams, f_theta
from .tree import Rooting, TreeSpec, VertexId


class Label(Enum):
    ZERO = "0"
    PLUS_H1 = "+h1"
    MINUS_H1 = "-h1"
    PLUS_H2 = "+h2"
    MINUS_H2 = "-h2"
    CONST = "h"
    CONST_EVEN = "h_even"
    CONST_ODD = "h_odd"


_MIRROR = {
    Label.ZERO: Label.ZERO,
    Label.PLUS_H1: Label.MINUS_H1,
    Label.MINUS_H1: Label.PLUS_H1,
    Label.PLUS_H2: Label.MINUS_H2,
    Label.MINUS_H2: Label.PLUS_H2,
}

ALT_ROOT_LABELS = (Label.ZERO, Label.PLUS_H1, Label.MINUS_H1, Label.PLUS_H2, Label.MINUS_H2)


@dataclass(frozen=True)
class AltParams:
    """Branching parameters (q, r) and root class of an alternating assignment."""

    q: int
    r: int
    root_label: Label = Label.ZERO

    def validate(self, k: int) -> None:
        if not 1 <= self.q <= k - 1:
            raise ValueError(f"q must satisfy 1 <= q <= k-1, got q={self.q}, k={k}")
        if not 0 <= self.r <= k:
            raise ValueError(f"r must satisfy 0 <= r <= k, got r={self.r}")
        if (self.r - k) % 2 != 0:
            raise ValueError(f"r must have the same parity as k, got r={self.r}, k={k}")
        if self.root_label not in ALT_ROOT_LABELS:
            raise ValueError(f"invalid alternating root label {self.root_label}")


def _alternating_tables(k: int, q: int, r: int) -> dict[Label, tuple[Label, ...]]:
    half = (k - r) // 2
    return {
        Label.ZERO: (Label.ZERO,) * r + (Label.PLUS_H1,) * half + (Label.MINUS_H1,) * half,
        Label.PLUS_H1: (Label.PLUS_H2,) * q + (Label.ZERO,) * (k - q),
        Label.MINUS_H1: (Label.MINUS_H2,) * q + (Label.ZERO,) * (k - q),
        Label.PLUS_H2: (Label.PLUS_H1,) * k,
        Label.MINUS_H2: (Label.MINUS_H1,) * k,
    }


@dataclass(frozen=True, eq=False)
class BoundaryAssignment:
    """Label-driven field assignment on a rooted Cayley tree.

    ``values`` maps every reachable label to its field value; ``tables`` maps
    a parent label to the k child labels in slot order.  For the constant and
    periodic families the child label does not depend on the slot, so the
    k-slot table is simply repeated to cover the full-tree root of arity k+1.
    Alternating assignments require the half tree and reject anything else.
    """

    tree: TreeSpec
    family: str  # "alternating" | "translation_invariant" | "periodic"
    values: Mapping[Label, float]
    root_label: Label
    tables: Mapping[Label, tuple[Label, ...]]

    def child_labels(self, parent_label: Label, arity: int) -> tuple[Label, ...]:
        row = self.tables[parent_label]
        if len(row) == arity:
            return row
        if len(set(row)) == 1:  # slot independent rule, stretch to any arity
            return (row[0],) * arity
        raise ValueError(
            f"label rule for {parent_label} fixes {len(row)} slots but the vertex has {arity} children"
        )

    def label_of(self, v: VertexId) -> Label:
        lab = self.root_label
        for level, slot in enumerate(v):
            lab = self.child_labels(lab, self.tree.arity_at(level))[slot]
        return lab

    def value_of(self, v: VertexId) -> float:
        return self.values[self.label_of(v)]

    # -- vectorised level expansion ------------------------------------

    def _codec(self):
        labels = list(self.values.keys())
        code = {lab: i for i, lab in enumerate(labels)}
        table = np.array(
            [[code[c] for c in self.child_labels(lab, self.tree.k)] for lab in labels],
            dtype=np.int64,
        )
        vals = np.array([self.values[lab] for lab in labels], dtype=float)
        return labels, code, table, vals

    def sphere_label_codes(self, m: int) -> tuple[list[Label], np.ndarray]:
        """Labels of sphere W_m in canonical order, as codes into a label list."""
        labels, code, table, _ = self._codec()
        codes = np.array([code[self.root_label]], dtype=np.int64)
        for level in range(m):
            if level == 0:
                row = self.child_labels(self.root_label, self.tree.root_arity)
                codes = np.array([code[c] for c in row], dtype=np.int64)
            else:
                codes = table[codes].reshape(-1)
        return labels, codes

    def sphere_values(self, m: int) -> np.ndarray:
        """Field values on sphere W_m in canonical vertex order."""
        labels, codes = self.sphere_label_codes(m)
        vals = np.array([self.values[lab] for lab in labels], dtype=float)
        return vals[codes]

    def sphere_counts(self, m: int) -> dict[Label, int]:
        """Exact per-label occupancy of sphere W_m (integer arithmetic)."""
        return self.level_counts(m)[m]

    def level_counts(self, n: int) -> list[dict[Label, int]]:
        """Per-label occupancies of spheres W_0 .. W_n, by table iteration."""
        out = [{self.root_label: 1}]
        for level in range(n):
            arity = self.tree.arity_at(level)
            nxt: dict[Label, int] = {}
            for lab, cnt in out[-1].items():
                for c in self.child_labels(lab, arity):
                    nxt[c] = nxt.get(c, 0) + cnt
            out.append(nxt)
        return out


def build_alternating(
    tree: TreeSpec,
    alt: AltParams,
    h1: float,
    h2: float,
    tables: Mapping[Label, tuple[Label, ...]] | None = None,
) -> BoundaryAssignment:
    """Alternating assignment on the half tree.

    ``tables`` overrides the canonical slot order (used to check permutation
    invariance); it must preserve the per-label child multisets.
    """
    if tree.rooting is not Rooting.HALF:
        raise ValueError("alternating boundary conditions are defined on the half tree")
    alt.validate(tree.k)
    values = {
        Label.ZERO: 0.0,
        Label.PLUS_H1: float(h1),
        Label.MINUS_H1: -float(h1),
        Label.PLUS_H2: float(h2),
        Label.MINUS_H2: -float(h2),
    }
    if tables is None:
        tables = _alternating_tables(tree.k, alt.q, alt.r)
    return BoundaryAssignment(tree, "alternating", values, alt.root_label, tables)


def build_translation_invariant(tree: TreeSpec, h: float) -> BoundaryAssignment:
    """Constant field h at every vertex; h = 0 is the free boundary condition."""
    return BoundaryAssignment(
        tree,
        "translation_invariant",
        {Label.CONST: float(h)},
        Label.CONST,
        {Label.CONST: (Label.CONST,) * tree.k},
    )


def build_periodic(tree: TreeSpec, h: float, h_prime: float) -> BoundaryAssignment:
    """Two-periodic field: h on even levels (the root is even), h_prime on odd."""
    return BoundaryAssignment(
        tree,
        "periodic",
        {Label.CONST_EVEN: float(h), Label.CONST_ODD: float(h_prime)},
        Label.CONST_EVEN,
        {
            Label.CONST_EVEN: (Label.CONST_ODD,) * tree.k,
            Label.CONST_ODD: (Label.CONST_EVEN,) * tree.k,
        },
    )


def label_counts(alt: AltParams, k: int, n: int) -> tuple[int, int, int, int, int]:
    """Occupancies (alpha, beta, gamma, delta, xi) of {0, +h1, -h1, +h2, -h2}
    on sphere W_n of the half tree, by iterating the branching recurrence

        alpha' = r alpha + (k-q)(beta + gamma)
        beta'  = (k-r)/2 alpha + k delta
        gamma' = (k-r)/2 alpha + k xi
        delta' = q beta
        xi'    = q gamma

    from the root indicator.  Exact integer arithmetic throughout.
    """
    alt.validate(k)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    start = {
        Label.ZERO: (1, 0, 0, 0, 0),
        Label.PLUS_H1: (0, 1, 0, 0, 0),
        Label.MINUS_H1: (0, 0, 1, 0, 0),
        Label.PLUS_H2: (0, 0, 0, 1, 0),
        Label.MINUS_H2: (0, 0, 0, 0, 1),
    }
    a, b, g, d, x = start[alt.root_label]
    q, r = alt.q, alt.r
    half = (k - r) // 2
    for _ in range(n):
        a, b, g, d, x = (
            r * a + (k - q) * (b + g),
            half * a + k * d,
            half * a + k * x,
            q * b,
            q * g,
        )
    return a, b, g, d, x


def compatibility_residual(assignment: BoundaryAssignment, params: ModelParams, n: int) -> float:
    """Worst violation of the consistency equation up to level n.

    Returns max over vertices x with level < n of
    |h_x - sum_{y in S(x)} f_theta(h_y + beta B)|.  Since the child multiset
    of a vertex is a function of its label alone, the maximum over vertices
    equals the maximum over labels that occur below level n, which is what is
    actually evaluated; the result is the exact vertex maximum.
    """
    if n < 1:
        return 0.0
    theta = params.theta
    bb = params.beta * params.B
    levels = assignment.level_counts(n - 1)
    worst = 0.0
    for level, occupancy in enumerate(levels):
        arity = assignment.tree.arity_at(level)
        for lab, cnt in occupancy.items():
            if cnt == 0:
                continue
            total = math.fsum(
                f_theta(assignment.values[c] + bb, theta)
                for c in assignment.child_labels(lab, arity)
            )
            worst = max(worst, abs(assignment.values[lab] - total))
    return worst


def iterate_labels(assignment: BoundaryAssignment, m: int) -> Iterator[tuple[VertexId, Label]]:
    """(vertex, label) pairs of sphere W_m in canonical order, lazily."""

    def rec(v: VertexId, lab: Label) -> Iterator[tuple[VertexId, Label]]:
        if len(v) == m:
            yield v, lab
            return
        arity = assignment.tree.arity_at(len(v))
        row = assignment.child_labels(lab, arity)
        for slot in range(arity):
            yield from rec(v + (slot,), row[slot])

    if m > assignment.tree.depth:
        raise ValueError(f"m={m} exceeds tree depth {assignment.tree.depth}")
    yield from rec((), assignment.root_label)
