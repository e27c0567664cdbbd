"""Fixed-point solvers for the compatibility systems and their thresholds.

Three scalar systems are solved:

* alternating pair:   h1 = q f_theta(h2),  h2 = k f_theta(h1)
* translation invariant: h = k f_theta(h + beta B)
* two-periodic:       h = k f_theta(h' + beta B),  h' = k f_theta(h + beta B)

All maps are smooth, bounded and have at most three fixed points in the
regimes of interest, so root finding is a derivative-free sign-change scan
(2048 cells over the a-priori bracket) followed by bisection and a short
Newton polish.  Near-degenerate roots closer than 1e-9 are merged: exactly
at a spinodal the double root is numerically indistinguishable from two.
Every returned solution is re-substituted into its system and must leave a
residual below 1e-12, otherwise the solver raises instead of returning junk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .model import ModelParams, f_theta, f_theta_prime

SCAN_CELLS = 2048
MERGE_TOL = 1e-9
RESIDUAL_BOUND = 1e-12


@dataclass(frozen=True)
class Solution:
    branch: str
    fields: tuple[float, ...]
    residual: float
    iterations: int


@dataclass(frozen=True)
class SolutionSet:
    system: str  # "alt" | "ti" | "per"
    solutions: tuple[Solution, ...]

    def __len__(self) -> int:
        return len(self.solutions)

    def branch(self, name: str) -> Solution:
        for sol in self.solutions:
            if sol.branch == name:
                return sol
        raise KeyError(f"no branch {name!r} in {self.system} solution set")

    @property
    def branches(self) -> tuple[str, ...]:
        return tuple(s.branch for s in self.solutions)


def theta_c(k: int, q: int) -> float:
    """Bifurcation threshold 1/sqrt(q k) of the alternating pair system."""
    if not 1 <= q <= k - 1:
        raise ValueError(f"q must satisfy 1 <= q <= k-1, got q={q}, k={k}")
    return 1.0 / math.sqrt(q * k)


def _check_theta(theta: float) -> None:
    if not -1.0 < theta < 1.0:
        raise ValueError(
            f"theta must lie strictly inside (-1, 1), got {theta}; "
            "for beta*|J| beyond double precision use the *_scaled solvers"
        )


def _bisect_newton(
    phi: Callable[[float], float],
    dphi: Callable[[float], float],
    lo: float,
    hi: float,
) -> tuple[float, int]:
    """Root of phi in [lo, hi] with phi(lo) and phi(hi) of opposite sign."""
    flo = phi(lo)
    iters = 0
    for _ in range(200):
        iters += 1
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = phi(mid)
        if fm == 0.0:
            lo = hi = mid
            break
        if (flo < 0) == (fm < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    best, best_val = x, abs(phi(x))
    for _ in range(8):
        iters += 1
        d = dphi(x)
        if d == 0.0:
            break
        step = phi(x) / d
        x -= step
        val = abs(phi(x))
        if val < best_val:
            best, best_val = x, val
        if abs(step) <= 1e-17 * max(1.0, abs(x)):
            break
    return best, iters


def _scan_roots(
    phi: Callable[[float], float],
    dphi: Callable[[float], float],
    lo: float,
    hi: float,
    cells: int = SCAN_CELLS,
) -> list[tuple[float, int]]:
    """All sign-change roots of phi on [lo, hi], grid-scanned then refined."""
    xs = [lo + (hi - lo) * i / cells for i in range(cells + 1)]
    vs = [phi(x) for x in xs]
    roots: list[tuple[float, int]] = []
    for i in range(cells + 1):
        if vs[i] == 0.0:
            roots.append((xs[i], 0))
    for i in range(cells):
        if vs[i] == 0.0 or vs[i + 1] == 0.0:
            continue
        if (vs[i] < 0) != (vs[i + 1] < 0):
            roots.append(_bisect_newton(phi, dphi, xs[i], xs[i + 1]))
    roots.sort(key=lambda t: t[0])
    merged: list[tuple[float, int]] = []
    for x, it in roots:
        if merged and abs(x - merged[-1][0]) <= MERGE_TOL:
            continue
        merged.append((x, it))
    return merged


def _require_residual(system: str, residual: float) -> None:
    if not residual <= RESIDUAL_BOUND:
        raise RuntimeError(f"{system} solver left residual {residual:.3e} > {RESIDUAL_BOUND}")


# ---------------------------------------------------------------------------
# alternating pair system


def _alt_residual(h1: float, h2: float, k: int, q: int, theta: float) -> float:
    return max(
        abs(h1 - q * f_theta(h2, theta)),
        abs(h2 - k * f_theta(h1, theta)),
    )


def solve_alternating(k: int, q: int, theta: float) -> SolutionSet:
    """All solutions of the alternating pair system at the given theta.

    For |theta| <= 1/sqrt(qk) only (0, 0) exists.  Beyond the threshold the
    scalar reduction u = k f_theta(q f_theta(u)) in u = h2 has exactly one
    positive root (the map is odd, bounded, increasing and concave for
    u > 0), found by bisection on [eps, k arctanh|theta|] and polished by
    Newton; the negated pair completes the set.
    """
    if not 1 <= q <= k - 1:
        raise ValueError(f"q must satisfy 1 <= q <= k-1, got q={q}, k={k}")
    _check_theta(theta)

    zero = Solution("zero", (0.0, 0.0), 0.0, 0)
    if abs(theta) <= theta_c(k, q):
        return SolutionSet("alt", (zero,))

    cap = k * math.atanh(abs(theta))

    def g(u: float) -> float:
        return k * f_theta(q * f_theta(u, theta), theta)

    def phi(u: float) -> float:
        return g(u) - u

    def dphi(u: float) -> float:
        inner = q * f_theta(u, theta)
        return k * f_theta_prime(inner, theta) * q * f_theta_prime(u, theta) - 1.0

    lo = 1e-12 * cap
    u_star, iters = _bisect_newton(phi, dphi, lo, cap)
    h1 = q * f_theta(u_star, theta)
    res = _alt_residual(h1, u_star, k, q, theta)
    _require_residual("alternating", res)
    plus = Solution("plus", (h1, u_star), res, iters)
    minus = Solution("minus", (-h1, -u_star), res, iters)
    return SolutionSet("alt", (zero, plus, minus))


def closed_form_k2q1(theta: float) -> tuple[float, float]:
    """Explicit positive solution of the pair system at k = 2, q = 1.

    h1 = (1/2) ln[ (1+theta)/(1-theta)
                   * (theta s + theta^2 + theta - 1)/(theta s - theta^2 + theta + 1) ]
    h2 = (1/2) ln[ (2 theta^2 s + theta^4 + 2 theta^2 - 1) / (1-theta^2)^2 ]

    with s = sqrt(2 theta^2 - 1); defined for theta > 1/sqrt(2).
    """
    disc = 2.0 * theta * theta - 1.0
    if disc <= 0.0:
        raise ValueError(f"closed form requires 2 theta^2 > 1, got theta={theta}")
    s = math.sqrt(disc)
    t2 = theta * theta
    h1 = 0.5 * math.log(
        (1.0 + theta)
        / (1.0 - theta)
        * (theta * s + t2 + theta - 1.0)
        / (theta * s - t2 + theta + 1.0)
    )
    h2 = 0.5 * math.log((2.0 * t2 * s + t2 * t2 + 2.0 * t2 - 1.0) / (1.0 - t2) ** 2)
    return h1, h2


def solve_alternating_scaled(k: int, q: int, beta: float, J: float) -> tuple[float, float]:
    """Positive alternating branch deep in the ordered phase, any beta.

    Works in the exponential variables u_i = exp(-2 h_i) and
    s = exp(-2 beta J), for which one recursion step reads
    u1 = [(s+u2)/(1+s u2)]^q, u2 = [(s+u1)/(1+s u1)]^k.  The composed map is
    a contraction of rate O(s), so a few fixed-point sweeps from u2 = 0
    converge to machine precision even where tanh(beta J) rounds to 1.0.
    Requires J > 0 and beta J large enough that the branch exists.
    """
    if J <= 0:
        raise ValueError("scaled alternating solve requires J > 0")
    s = math.exp(-2.0 * beta * J)
    if k * q * math.tanh(beta * J) ** 2 <= 1.0:
        raise ValueError("no positive branch: theta below the pair threshold")
    u2 = 0.0
    for _ in range(200):
        u1 = ((s + u2) / (1.0 + s * u2)) ** q
        nxt = ((s + u1) / (1.0 + s * u1)) ** k
        if nxt == u2:
            break
        u2 = nxt
    u1 = ((s + u2) / (1.0 + s * u2)) ** q
    return -0.5 * math.log(u1), -0.5 * math.log(u2)


def solve_ti_scaled(k: int, beta: float, J: float) -> float:
    """Positive translation-invariant branch at B = 0, stable for large beta."""
    if J <= 0:
        raise ValueError("scaled TI solve requires J > 0")
    if k * math.tanh(beta * J) <= 1.0:
        raise ValueError("no positive branch: theta below 1/k")
    s = math.exp(-2.0 * beta * J)
    u = 0.0
    for _ in range(200):
        nxt = ((s + u) / (1.0 + s * u)) ** k
        if nxt == u:
            break
        u = nxt
    return -0.5 * math.log(u)


# ---------------------------------------------------------------------------
# translation-invariant system


def _ti_scan_interval(params: ModelParams) -> tuple[float, float]:
    cap = params.k * math.atanh(abs(params.theta))
    shift = params.k * params.beta * params.B
    return -cap + min(0.0, shift), cap + max(0.0, shift)


def _snap_odd_zero(roots: list[tuple[float, int]], B: float) -> list[tuple[float, int]]:
    # at B = 0 the map is odd and 0 is a root exactly; do not let grid noise move it
    if B != 0.0:
        return roots
    return [(0.0, it) if abs(x) <= MERGE_TOL else (x, it) for x, it in roots]


def solve_ti(params: ModelParams) -> SolutionSet:
    """All real solutions of h = k f_theta(h + beta B).

    Solutions are confined to |h| <= k arctanh|theta|; the scan interval is
    widened by k beta B on the appropriate side anyway.  With three roots the
    branches are labelled h_min <= h_0 <= h_max, with two (exactly at a
    spinodal) h_min and h_max, with one "unique".
    """
    theta = params.theta
    _check_theta(theta)
    k, beta, B = params.k, params.beta, params.B

    def phi(h: float) -> float:
        return h - k * f_theta(h + beta * B, theta)

    def dphi(h: float) -> float:
        return 1.0 - k * f_theta_prime(h + beta * B, theta)

    lo, hi = _ti_scan_interval(params)
    roots = _snap_odd_zero(_scan_roots(phi, dphi, lo, hi), B)

    names = {1: ("unique",), 2: ("h_min", "h_max"), 3: ("h_min", "h_0", "h_max")}
    if len(roots) not in names:
        raise RuntimeError(f"TI scan found {len(roots)} roots, expected 1, 2 or 3")
    sols = []
    for name, (x, it) in zip(names[len(roots)], roots):
        res = abs(phi(x))
        _require_residual("TI", res)
        sols.append(Solution(name, (x,), res, it))
    return SolutionSet("ti", tuple(sols))


# ---------------------------------------------------------------------------
# two-periodic system


def solve_periodic(params: ModelParams) -> SolutionSet:
    """All solutions of the two-cycle system via the composed map.

    Fixed points h of T(h) = k f_theta(k f_theta(h + beta B) + beta B) are in
    one-to-one correspondence with periodic solutions (h, h') where
    h' = k f_theta(h + beta B).  Diagonal fixed points (h = h') are exactly
    the translation-invariant solutions and keep their labels with a "diag_"
    prefix; genuine two-cycles are reported as ordered pairs both ways.
    """
    theta = params.theta
    _check_theta(theta)
    k, beta, B = params.k, params.beta, params.B

    def step(h: float) -> float:
        return k * f_theta(h + beta * B, theta)

    def phi(h: float) -> float:
        return step(step(h)) - h

    def dphi(h: float) -> float:
        inner = step(h)
        return (
            k * f_theta_prime(inner + beta * B, theta) * k * f_theta_prime(h + beta * B, theta)
            - 1.0
        )

    lo, hi = _ti_scan_interval(params)
    roots = _snap_odd_zero(_scan_roots(phi, dphi, lo, hi), B)

    diag: list[tuple[float, int]] = []
    cycles: list[tuple[float, float, int]] = []
    for x, it in roots:
        hp = step(x)
        if abs(hp - x) <= 1e-8 * (1.0 + abs(x)):
            diag.append((x, it))
        elif x < hp:  # keep one representative per unordered pair
            cycles.append((x, hp, it))

    diag_names = {1: ("diag_unique",), 2: ("diag_min", "diag_max"), 3: ("diag_min", "diag_0", "diag_max")}
    sols = []
    for name, (x, it) in zip(diag_names.get(len(diag), tuple(f"diag_{i}" for i in range(len(diag)))), diag):
        res = max(abs(x - step(x)), abs(x - step(step(x))))
        _require_residual("periodic", res)
        sols.append(Solution(name, (x, x), res, it))
    for x, hp, it in cycles:
        res = max(abs(hp - step(x)), abs(x - step(hp)))
        _require_residual("periodic", res)
        sols.append(Solution("pair_low_high", (x, hp), res, it))
        sols.append(Solution("pair_high_low", (hp, x), res, it))
    return SolutionSet("per", tuple(sols))


# ---------------------------------------------------------------------------
# spinodal fields and the parametric inverse


def _spinodal_terms(k: int, t: float) -> tuple[float, float]:
    if not k * t > 1.0:
        raise ValueError(f"spinodal requires k|theta| > 1, got k={k}, |theta|={t}")
    first = math.sqrt((k * t - 1.0) / (k / t - 1.0))
    second = math.sqrt((k - 1.0 / t) / (k - t))
    if not (0.0 <= first < 1.0 and 0.0 <= second < 1.0):
        raise ValueError("spinodal arctanh argument left [0, 1)")
    return k * math.atanh(first), math.atanh(second)


def spinodal_b_ferro(params: ModelParams) -> float:
    """Field strength B^F at which the TI solution count drops from 3 to 1.

    (1/beta) [ k arctanh sqrt((k theta - 1)/(k/theta - 1))
               - arctanh sqrt((k - 1/theta)/(k - theta)) ],  J > 0, k theta > 1.
    """
    if params.J <= 0:
        raise ValueError("ferromagnetic spinodal requires J > 0")
    a, b = _spinodal_terms(params.k, params.theta)
    return (a - b) / params.beta


def spinodal_b_antiferro(params: ModelParams) -> float:
    """Field strength B^AF bounding the two-cycle region for J < 0.

    Same two terms as the ferromagnetic spinodal, taken at |theta| and added:
    (1/beta) [ k arctanh sqrt((k|theta| - 1)/(k/|theta| - 1))
               + arctanh sqrt((k - 1/|theta|)/(k - |theta|)) ],  k|theta| > 1.
    """
    if params.J >= 0:
        raise ValueError("antiferromagnetic spinodal requires J < 0")
    a, b = _spinodal_terms(params.k, abs(params.theta))
    return (a + b) / params.beta


def b_of_h(h: float, params: ModelParams) -> float:
    """External field that makes h a translation-invariant fixed point.

    B(h) = -h/beta + (1/(2 beta)) ln[ sinh(J beta + h/k) / sinh(J beta - h/k) ],
    defined for |h/k| < beta J (J > 0).  Inverse of the fixed-point relation:
    substituting back gives h = k f_theta(h + beta B(h)) identically.
    """
    beta, J, k = params.beta, params.J, params.k
    if abs(h / k) >= beta * J:
        raise ValueError(f"|h/k| must stay below beta*J = {beta * J}, got h = {h}")
    if h == 0.0:
        return 0.0
    return -h / beta + 0.5 / beta * math.log(
        math.sinh(J * beta + h / k) / math.sinh(J * beta - h / k)
    )
