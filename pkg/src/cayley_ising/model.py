"""Scalar building blocks of the nearest-neighbour Ising model on a Cayley tree.

Every thermodynamic quantity in this package reduces to a handful of
elementary functions of the inverse temperature ``beta``, the coupling ``J``
and the external field ``B``:

* ``theta = tanh(beta J)``, the edge interaction weight,
* ``f_theta(h) = arctanh(theta tanh h)``, the cavity-field recursion kernel
  obtained by summing one spin out of an edge,
* the per-site log weight ``(1/2 beta) ln[4 cosh(t+beta(B+J)) cosh(t+beta(B-J))]``
  produced by that same summation, and its zero-field negative.

All functions are pure and overflow safe: hyperbolic logarithms are taken in
log domain so that fields of order 1e3 still evaluate to finite doubles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LN2 = math.log(2.0)


@dataclass(frozen=True)
class ModelParams:
    """Physical configuration shared by every computation.

    k     branching number: each vertex of the infinite tree has k+1 neighbours
    J     coupling energy, either sign
    B     external magnetic field
    beta  inverse temperature, strictly positive (zero-temperature quantities
          are computed as explicit beta sequences, never as beta = inf)
    """

    k: int
    J: float
    B: float
    beta: float

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"branching number k must be >= 2, got {self.k}")
        if not (math.isfinite(self.beta) and self.beta > 0.0):
            raise ValueError(f"beta must be finite and positive, got {self.beta}")
        if not (math.isfinite(self.J) and math.isfinite(self.B)):
            raise ValueError("J and B must be finite")

    @property
    def theta(self) -> float:
        """tanh(beta J).

        Strictly inside (-1, 1) in exact arithmetic. In double precision the
        value rounds to +-1.0 once beta*|J| exceeds ~18; solvers that need
        arctanh(theta) reject that regime and use the scaled low-temperature
        forms instead.
        """
        return math.tanh(self.beta * self.J)

    def with_field(self, B: float) -> "ModelParams":
        return ModelParams(self.k, self.J, B, self.beta)


def f_theta(h: float, theta: float) -> float:
    """Cavity recursion kernel arctanh(theta * tanh(h)).

    Odd and strictly increasing in h for theta > 0, bounded by
    arctanh(|theta|). The arctanh argument is strictly inside (-1, 1)
    whenever |theta| < 1, so no clamping is performed; out-of-range theta
    is rejected rather than masked.
    """
    if not -1.0 < theta < 1.0:
        raise ValueError(f"theta must lie strictly inside (-1, 1), got {theta}")
    return math.atanh(theta * math.tanh(h))


def f_theta_prime(h: float, theta: float) -> float:
    """d/dh of f_theta, equal to theta (1 - t^2) / (1 - theta^2 t^2) with t = tanh h."""
    t = math.tanh(h)
    return theta * (1.0 - t * t) / (1.0 - (theta * t) ** 2)


def log_cosh(x: float) -> float:
    """ln cosh x, evaluated as |x| + log1p(e^{-2|x|}) - ln 2 to avoid overflow."""
    ax = abs(x)
    return ax + math.log1p(math.exp(-2.0 * ax)) - LN2


def edge_log_norm(h: float, beta: float, J: float) -> float:
    """Log normalisation (1/2) ln[4 cosh(h + beta J) cosh(h - beta J)].

    This is the constant produced when a boundary spin carrying total local
    field h is summed out of the edge attaching it to its parent; the parent
    simultaneously acquires the extra field f_theta(h).
    """
    return LN2 + 0.5 * (log_cosh(h + beta * J) + log_cosh(h - beta * J))


def site_free_energy(t: float, params: ModelParams) -> float:
    """Per-site free energy of a frozen boundary field t at zero external field.

    -(1/(2 beta)) ln[4 cosh(t + beta J) cosh(t - beta J)]; even in t and in J.
    The field B of ``params`` is ignored by construction.
    """
    return -edge_log_norm(t, params.beta, params.J) / params.beta


def site_log_weight(t: float, params: ModelParams) -> float:
    """Per-site log-partition density of a frozen boundary field t.

    (1/(2 beta)) ln[4 cosh(t + beta(B+J)) cosh(t + beta(B-J))].
    At B = 0 this is exactly -site_free_energy(t, params).
    """
    return edge_log_norm(t + params.beta * params.B, params.beta, params.J) / params.beta
