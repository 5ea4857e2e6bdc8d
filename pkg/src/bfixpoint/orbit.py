"""Orbit construction, geometric-decay certificates, fixed-point checks.

An orbit picks x_{n+1} inside T(x_n), always taking the closest image
element. Under a certified contraction the step distances obey
d_n <= gamma*d_{n-1} with

    gamma = max(beta, q*s*beta / (2 - q*s*beta)),  beta in (alpha, min(1, 1/(q*s))),

and any sequence with that decay is Cauchy even when s*gamma >= 1: the
computable tail bound is

    d(x_{m+1}, x_{m+k}) <= gamma**m * d(x_0,x_1) * S / (1 - gamma),

where S sums the doubly-exponentially decaying terms s**(2n) * gamma**(2**(n-1)).
A dyadic chaining bound d(x_0,x_k) <= s**ceil(log2 k) * sum(d_i) covers
arbitrary finite stretches of any sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .bspace import BMetricSpace, Point
from .quasicontraction import SetValuedMap, image_of, n_functional
from .setops import dist_point_set


class RatioViolation(RuntimeError):
    """Raised when a selected step breaks the certified contraction bound."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


@dataclass(frozen=True)
class OrbitTrace:
    points: tuple
    steps: tuple  # steps[n] = d(points[n], points[n+1])
    beta: float
    gamma: float
    status: str  # "converged" | "max_iter" | "ratio_violation"
    fixed_point: Point | None
    residual: float  # d(u, T(u)) at the final point
    violation_step: int | None = None


@dataclass(frozen=True)
class CauchyCertificate:
    gamma: float
    s: float
    series_sum: float
    first_step: float | None  # d(x_0, x_1); required by cauchy_bound
    terms_used: int


class FixedPointCheck(NamedTuple):
    residual: float
    ok: bool


def gamma_of(beta: float, q: float, s: float) -> float:
    """Per-step decay ratio max(beta, q*s*beta/(2 - q*s*beta)); always < 1.

    beta must lie in (0, min(1, 1/(q*s))) (just (0,1) when q = 0), which
    makes the second branch well-defined and keeps the max below 1.
    """
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must be in [0,1], got {q}")
    if not s >= 1.0:
        raise ValueError(f"s must be >= 1, got {s}")
    hi = 1.0 if q * s == 0.0 else min(1.0, 1.0 / (q * s))
    if not 0.0 < beta < hi:
        raise ValueError(f"beta must lie in (0, {hi}), got {beta}")
    if q == 0.0:
        return beta
    return max(beta, q * s * beta / (2.0 - q * s * beta))


def select_next(
    space: BMetricSpace,
    tmap: SetValuedMap,
    x_prev: Point,
    x_cur: Point,
    beta: float,
    c: float,
    q: float,
) -> Point:
    """The element of T(x_cur) closest to x_cur (smallest index on ties).

    Enforces the selection inequality d(x_cur, next) < beta * N(x_prev, x_cur)
    unless the step is zero; a violation means the contraction hypothesis
    fails at this pair and raises RatioViolation.
    """
    img = image_of(space, tmap, x_cur)
    d, idx = dist_point_set(space, x_cur, img)
    if d > 0.0:
        bound = beta * n_functional(space, tmap, c, q, x_prev, x_cur)
        if not d < bound:
            raise RatioViolation(
                f"step {d} not below beta*N = {bound} at ({x_prev!r} -> {x_cur!r})"
            )
    return img.elements[idx]


def run_orbit(
    space: BMetricSpace,
    tmap: SetValuedMap,
    c: float,
    q: float,
    alpha: float,
    x0: Point,
    x1: Point | None = None,
    beta: float | None = None,
    tol: float = 1e-9,
    max_iter: int = 1000,
) -> OrbitTrace:
    """Iterate x_{n+1} in T(x_n) until the residual d(x_n, T(x_n)) drops to tol.

    Requires alpha in [0,1) with alpha*q*s < 1. beta defaults to the midpoint
    of the admissible interval (alpha, min(1, 1/(q*s))); x1 defaults to the
    closest element of T(x0). Every step is checked against the certified
    decay d_n <= gamma*d_{n-1} (slack 1e-12 relative); a failed check ends
    the trace with status "ratio_violation" and the offending step index.

    Stopping is by residual, not step size: a small step does not certify a
    fixed point, the residual is exactly what the fixed-point theorems bound.
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must be in [0,1), got {alpha}")
    if not 0.0 <= c <= 1.0 or not 0.0 <= q <= 1.0:
        raise ValueError(f"coefficients must be in [0,1], got c={c}, q={q}")
    s = space.s
    if not alpha * q * s < 1.0:
        raise ValueError(f"need alpha*q*s < 1, got {alpha * q * s}")
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")

    hi = 1.0 if q * s == 0.0 else min(1.0, 1.0 / (q * s))
    if beta is None:
        beta = 0.5 * (alpha + hi)  # midpoint of the admissible interval
    elif not alpha < beta < hi:
        raise ValueError(f"beta must lie in ({alpha}, {hi}), got {beta}")
    gamma = gamma_of(beta, q, s)

    space.check_point(x0)
    img = image_of(space, tmap, x0)
    residual, idx = dist_point_set(space, x0, img)
    if residual <= tol:
        return OrbitTrace((x0,), (), beta, gamma, "converged", x0, residual)

    if x1 is None:
        x1 = img.elements[idx]
    else:
        x1 = tuple(x1) if isinstance(x1, (list, tuple)) else x1
        space.check_point(x1)
        if all(space.dist(x1, w) != 0.0 for w in img.elements):
            raise ValueError(f"x1 {x1!r} is not an element of T(x0)")

    points = [x0, x1]
    steps = [space.dist(x0, x1)]

    while True:
        x_prev, x_cur = points[-2], points[-1]
        residual = dist_point_set(space, x_cur, image_of(space, tmap, x_cur)).value
        if residual <= tol:
            return OrbitTrace(
                tuple(points), tuple(steps), beta, gamma, "converged", x_cur, residual
            )
        if len(steps) >= max_iter:
            return OrbitTrace(
                tuple(points), tuple(steps), beta, gamma, "max_iter", None, residual
            )

        # the attained min is the next step distance; residual > tol > 0 here
        d_prev = steps[-1]
        try:
            if residual > gamma * d_prev + 1e-12 * d_prev:
                raise RatioViolation(
                    f"step {residual} above gamma*previous = {gamma * d_prev}"
                )
            nxt = select_next(space, tmap, x_prev, x_cur, beta, c, q)
        except RatioViolation:
            return OrbitTrace(
                tuple(points),
                tuple(steps),
                beta,
                gamma,
                "ratio_violation",
                None,
                residual,
                violation_step=len(steps),
            )
        points.append(nxt)
        steps.append(residual)


def chaining_bound(steps, s: float) -> float:
    """Dyadic upper bound on d(x_0, x_k) from the k step distances:
    s**ceil(log2 k) * sum(steps), the tightest admissible exponent."""
    steps = list(steps)
    k = len(steps)
    if k == 0:
        raise ValueError("steps must be nonempty")
    if not s >= 1.0:
        raise ValueError(f"s must be >= 1, got {s}")
    if any(d < 0 for d in steps):
        raise ValueError("step distances must be non-negative")
    return (s ** (k - 1).bit_length()) * math.fsum(steps)


def cauchy_series(gamma: float, s: float, first_step: float | None = None) -> CauchyCertificate:
    """Sum of s**(2n) * gamma**(2**(n-1)) for n >= 1.

    Terms decay doubly exponentially once the gamma factor takes over, so
    summation stops at relative 1e-16 or after 64 terms, far beyond what
    64-bit floats can distinguish.
    """
    if not 0.0 <= gamma < 1.0:
        raise ValueError(f"gamma must be in [0,1), got {gamma}")
    if not s >= 1.0:
        raise ValueError(f"s must be >= 1, got {s}")
    if first_step is not None and not first_step >= 0.0:
        raise ValueError(f"first_step must be non-negative, got {first_step}")
    total = 0.0
    terms = 0
    for n in range(1, 65):
        t = (s ** (2 * n)) * (gamma ** (2 ** (n - 1)))
        if terms >= 1 and (t == 0.0 or t < 1e-16 * total):
            break
        total += t
        terms += 1
    return CauchyCertificate(gamma, s, total, first_step, terms)


def cauchy_bound(m: int, cert: CauchyCertificate) -> float:
    """Tail bound gamma**m * first_step * series_sum / (1 - gamma) on
    d(x_{m+1}, x_{m+k}) for every k; monotone non-increasing in m.

    The power is accumulated multiplicatively so consecutive bounds satisfy
    bound(m+1) = gamma * bound(m) exactly (and underflow cleanly to 0).
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if cert.first_step is None:
        raise ValueError("certificate has no first_step; rebuild with cauchy_series(gamma, s, d01)")
    b = cert.first_step * cert.series_sum / (1.0 - cert.gamma)
    for _ in range(m):
        if b == 0.0:
            break
        b *= cert.gamma
    return b


def verify_fixed_point(space: BMetricSpace, tmap: SetValuedMap, u: Point, tol: float) -> FixedPointCheck:
    """Residual d(u, T(u)) and whether it clears tol."""
    space.check_point(u)
    residual = dist_point_set(space, u, image_of(space, tmap, u)).value
    return FixedPointCheck(residual, residual <= tol)
