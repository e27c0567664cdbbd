"""Closed-form free energies of the boundary-condition families.

The free energy of a compatible boundary condition is the limit of
-(1/(beta |V_n|)) ln Z_n.  For the constant and in-field families the limit
exists; for the alternating family with r = 0 (and for two-periodic fields
with h != h') the even-depth and odd-depth subsequences converge to two
different accumulation points, which is the phase-transition signature this
package exists to compute.  Results therefore carry a kind tag:
LIMIT (one value) or ACCUMULATION (an even/odd pair).

Sign conventions, fixed once and pinned against the exact oracle by the
level-sum identity below: F = -(1/(beta |V_n|)) ln Z_n always, the zero-field
site term is a(t) = -(1/(2 beta)) ln[4 cosh(t+beta J) cosh(t-beta J)] and the
in-field site term d(t) enters with F = -lim (1/|V_n|) sum d(h_x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .boundary import AltParams, BoundaryAssignment, Label
from .model import ModelParams, site_free_energy, site_log_weight, edge_log_norm, log_cosh, LN2
from .solver import solve_alternating, solve_alternating_scaled, solve_ti, solve_ti_scaled


@dataclass(frozen=True)
class FreeEnergyResult:
    """Either a true limit or an (even, odd) pair of accumulation points."""

    kind: str  # "limit" | "accumulation"
    values: tuple[float, ...]
    formula: str

    @property
    def value(self) -> float:
        if self.kind != "limit":
            raise ValueError(f"{self.formula} has accumulation points, not a limit")
        return self.values[0]

    @property
    def even(self) -> float:
        return self.values[0]

    @property
    def odd(self) -> float:
        return self.values[-1]

    @property
    def mean(self) -> float:
        """Parity-averaged value; the physically meaningful scalar for
        zero-temperature limits when the plain limit does not exist."""
        return 0.5 * (self.even + self.odd)

    def for_depth(self, n: int) -> float:
        """The accumulation point matched to the parity of depth n."""
        return self.even if n % 2 == 0 else self.odd


def label_recurrence_roots(k: int, q: int, r: int) -> tuple[float, float, float]:
    """Characteristic roots of the sphere-count recurrence.

    lambda^3 - r lambda^2 - (k^2 - r k + r q) lambda + r k q = 0, solved by
    lambda_1 = k and lambda_{2,3} = (-(k-r) +- sqrt((k-r)^2 + 4 r q)) / 2.
    """
    disc = math.sqrt((k - r) ** 2 + 4.0 * r * q)
    return float(k), (-(k - r) + disc) / 2.0, (-(k - r) - disc) / 2.0


def zero_label_fraction(k: int, q: int, r: int) -> float:
    """Asymptotic fraction of zero-field vertices, (k^2 - k q)/(2k^2 - r k - r q).

    This is the coefficient of the k^n mode in the zero-label sphere counts
    and is independent of the root class.
    """
    return (k * k - k * q) / (2.0 * k * k - r * k - r * q)


def alt_weights(
    k: int, q: int, r: int, root_label: Label = Label.ZERO
) -> tuple[tuple[float, float, float], ...]:
    """Mixing weights of (a(0), a(h1), a(h2)) in the alternating free energy.

    r != 0: a single weight triple, root independent,
        c1 * (1, (k-r)/(k-q), q(k-r)/(k(k-q))).
    r == 0: an (even, odd) pair of triples obtained from the general
        two-seed solution of the count recurrence with (w0, w1) = (0, k) for
        root classes {0, +-h2} and (1, 0) for +-h1:
        even: ((k-q)(w0+w1), k^2 w0 + w1, q(w0+w1)) / (k(k+1))
        odd:  ((k-q)(k^2 w0+w1)/k, k(w0+w1), q(k^2 w0+w1)/k) / (k(k+1))
    Every triple sums to 1 exactly.
    """
    AltParams(q, r, root_label).validate(k)
    if r != 0:
        c1 = zero_label_fraction(k, q, r)
        return (
            (c1, c1 * (k - r) / (k - q), c1 * q * (k - r) / (k * (k - q))),
        )
    w0, w1 = (1.0, 0.0) if root_label in (Label.PLUS_H1, Label.MINUS_H1) else (0.0, float(k))
    denom = k * (k + 1.0)
    even = (
        (k - q) * (w0 + w1) / denom,
        (k * k * w0 + w1) / denom,
        q * (w0 + w1) / denom,
    )
    odd = (
        (k - q) * (k * k * w0 + w1) / (k * denom),
        k * (w0 + w1) / denom,
        q * (k * k * w0 + w1) / (k * denom),
    )
    return even, odd


def alternating_free_energy(
    k: int,
    q: int,
    r: int,
    h1: float,
    h2: float,
    beta: float,
    J: float,
    root_label: Label = Label.ZERO,
) -> FreeEnergyResult:
    """Free energy of an alternating assignment at a pair-system solution.

    Defined at B = 0 only.  For r != 0 the limit exists and is independent
    of the root class; for r = 0 the even/odd accumulation pair is returned,
    and the +-h1 root class carries the parity-swapped pair of the other
    root classes.
    """
    params = ModelParams(k, J, 0.0, beta)
    a = (
        site_free_energy(0.0, params),
        site_free_energy(h1, params),
        site_free_energy(h2, params),
    )
    weights = alt_weights(k, q, r, root_label)
    vals = tuple(sum(w * av for w, av in zip(triple, a)) for triple in weights)
    if r != 0:
        return FreeEnergyResult("limit", vals, "alt")
    return FreeEnergyResult("accumulation", vals, "alt-accumulation")


def ti_free_energy(h: float, params: ModelParams) -> FreeEnergyResult:
    """-(1/(2 beta)) ln[4 cosh(h + beta(B+J)) cosh(h + beta(B-J))]."""
    return FreeEnergyResult("limit", (-site_log_weight(h, params),), "ti")


def periodic_free_energy(h: float, h_prime: float, params: ModelParams) -> FreeEnergyResult:
    """Accumulation pair of a two-periodic assignment.

    even depths:  -(k d(h) + d(h')) / (k+1)
    odd depths:   -(d(h) + k d(h')) / (k+1)
    where d is the in-field site term; h = h' collapses both to the
    translation-invariant value.
    """
    k = params.k
    dh = site_log_weight(h, params)
    dhp = site_log_weight(h_prime, params)
    even = -(k * dh + dhp) / (k + 1.0)
    odd = -(dh + k * dhp) / (k + 1.0)
    return FreeEnergyResult("accumulation", (even, odd), "periodic")


# ---------------------------------------------------------------------------
# finite-volume partial averages and the level-sum identity


def _site_term(params: ModelParams) -> Callable[[float], float]:
    if params.B == 0.0:
        return lambda t: site_free_energy(t, params)
    return lambda t: -site_log_weight(t, params)


def site_average(assignment: BoundaryAssignment, params: ModelParams, n: int) -> float:
    """Partial average (1/|V_n|) sum_{x in V_n} a(h_x), or -d(h_x) in a field.

    For compatible assignments this converges to the matching closed form as
    n grows; the per-level label occupancies make the sum exact in the count
    arithmetic.
    """
    term = _site_term(params)
    per_label = {lab: term(val) for lab, val in assignment.values.items()}
    total = 0.0
    volume = 0
    for occupancy in assignment.level_counts(n):
        for lab, cnt in occupancy.items():
            total += per_label[lab] * cnt
            volume += cnt
    return total / volume


def log_partition_level_sum(assignment: BoundaryAssignment, params: ModelParams, n: int) -> float:
    """Exact ln Z_n of a compatible assignment, telescoped level by level.

    Summing the boundary spins out of the ball one sphere at a time turns
    each boundary vertex carrying field h into the constant
    (1/2) ln[4 cosh(h + beta B + beta J) cosh(h + beta B - beta J)] while its
    parent inherits exactly the parent's own assigned field, by compatibility.
    Iterating down to the root:

        ln Z_n = sum_{m=1..n} sum_{y in W_m} edge_log_norm(h_y + beta B)
                 + ln 2 cosh(h_root + beta B).

    Valid only when compatibility_residual vanishes; used as the independent
    closed expression against the message-passing oracle.
    """
    beta, J, bb = params.beta, params.J, params.beta * params.B
    per_label = {lab: edge_log_norm(val + bb, beta, J) for lab, val in assignment.values.items()}
    total = 0.0
    for m, occupancy in enumerate(assignment.level_counts(n)):
        if m == 0:
            continue
        for lab, cnt in occupancy.items():
            total += per_label[lab] * cnt
    h_root = assignment.values[assignment.root_label]
    return total + LN2 + log_cosh(h_root + bb)


# ---------------------------------------------------------------------------
# residual entropy


def residual_entropy_estimate(
    fe_of_beta: Callable[[float], float], beta_sequence: Sequence[float]
) -> list[float]:
    """beta * (F(beta) - F_inf_estimate) along an increasing beta sequence.

    F_inf is estimated by Richardson extrapolation, linear in 1/beta through
    the two largest betas.  For boundary conditions that select a definite
    ground state the estimates decay to zero; a surviving constant reveals a
    residual entropy of that size.
    """
    betas = [float(b) for b in beta_sequence]
    if len(betas) < 2 or any(b2 <= b1 for b1, b2 in zip(betas, betas[1:])):
        raise ValueError("beta_sequence must be increasing with at least two entries")
    fes = [fe_of_beta(b) for b in betas]
    x1, x2 = 1.0 / betas[-2], 1.0 / betas[-1]
    slope = (fes[-2] - fes[-1]) / (x1 - x2)
    fe_inf = fes[-1] - x2 * slope
    return [b * (fe - fe_inf) for b, fe in zip(betas, fes)]


def free_boundary_family(k: int, J: float) -> Callable[[float], float]:
    """F(beta) of the all-zero assignment: a(0) at the given coupling."""

    def fe(beta: float) -> float:
        return site_free_energy(0.0, ModelParams(k, J, 0.0, beta))

    return fe


def ti_positive_family(k: int, J: float) -> Callable[[float], float]:
    """F(beta) of the positive translation-invariant branch, B = 0, J > 0."""

    def fe(beta: float) -> float:
        params = ModelParams(k, J, 0.0, beta)
        if beta * J <= 12.0:
            h = solve_ti(params).branch("h_max").fields[0]
        else:
            h = solve_ti_scaled(k, beta, J)
        return ti_free_energy(h, params).value

    return fe


def alternating_family(
    k: int,
    q: int,
    r: int,
    J: float,
    root_label: Label = Label.ZERO,
    component: str = "mean",
) -> Callable[[float], float]:
    """F(beta) of the positive alternating branch, re-solved at every beta.

    ``component`` selects the scalar handed to zero-temperature limits:
    "even" / "odd" pick one accumulation point (r = 0 only), "mean" their
    average, which is the parity-free value whose low-temperature expansion
    has no 1/beta term; for r != 0 all three coincide with the limit.
    """
    if component not in ("even", "odd", "mean"):
        raise ValueError(f"unknown component {component!r}")

    def fe(beta: float) -> float:
        if beta * J <= 12.0:
            sols = solve_alternating(k, q, math.tanh(beta * J))
            h1, h2 = sols.branch("plus").fields
        else:
            h1, h2 = solve_alternating_scaled(k, q, beta, J)
        result = alternating_free_energy(k, q, r, h1, h2, beta, J, root_label)
        if result.kind == "limit":
            return result.value
        return {"even": result.even, "odd": result.odd, "mean": result.mean}[component]

    return fe
