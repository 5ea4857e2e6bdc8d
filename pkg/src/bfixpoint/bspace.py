"""b-metric spaces: distance carriers, axiom verification, relaxation estimation.

A b-metric relaxes the triangle inequality to d(x,y) <= s*(d(x,z) + d(z,y))
for a fixed coefficient s >= 1; s = 1 recovers ordinary metric spaces. Two
carriers are supported:

* power spaces: R^k with d(x,y) = (euclidean distance)**p, declared
  s = max(1, 2**(p-1));
* matrix spaces: a finite point list with distances read from an explicit
  symmetric matrix (axioms are the caller's claim, checkable exhaustively).

Points are coordinate tuples in power spaces and integer ids in matrix
spaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

Point = Union[tuple, int]

COORD_TOL = 1e-12  # coordinate tolerance for treating continuous points as equal


@dataclass(frozen=True, eq=False)
class BMetricSpace:
    kind: str  # "power" | "matrix"
    s: float
    dim: int | None = None
    p: float | None = None
    matrix: np.ndarray | None = None

    @property
    def n_points(self) -> int:
        """Domain size for matrix spaces."""
        if self.matrix is None:
            raise ValueError("continuous space has no finite point list")
        return self.matrix.shape[0]

    @property
    def is_finite(self) -> bool:
        return self.kind == "matrix"

    def points(self) -> list[int]:
        return list(range(self.n_points))

    def dist(self, x: Point, y: Point) -> float:
        if self.kind == "matrix":
            return float(self.matrix[x, y])
        # math.dist is exactly symmetric under argument swap, so d(x,y) and
        # d(y,x) agree bit for bit without canonical ordering.
        return math.dist(x, y) ** self.p

    def check_point(self, x: Point) -> None:
        """Reject points outside the domain (bad ids, wrong arity, non-finite coords)."""
        if self.kind == "matrix":
            if not isinstance(x, int) or isinstance(x, bool):
                raise ValueError(f"matrix-space point must be an integer id, got {x!r}")
            if not 0 <= x < self.n_points:
                raise ValueError(f"point id {x} out of range [0, {self.n_points})")
            return
        if not isinstance(x, tuple) or len(x) != self.dim:
            raise ValueError(f"expected a coordinate tuple of length {self.dim}, got {x!r}")
        for c in x:
            if not math.isfinite(c):
                raise ValueError(f"non-finite coordinate in point {x!r}")


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str  # "identity" | "symmetry" | "relaxed-triangle"
    witness: tuple  # offending points, (x, y) or (x, y, z) with z the via point
    lhs: float
    rhs: float


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    violations: tuple[AxiomViolation, ...] = field(default_factory=tuple)


def make_power_space(dimension: int, p: float) -> BMetricSpace:
    """R^dimension under d(x,y) = |x-y|_2**p with s = max(1, 2**(p-1)).

    For p >= 1 the relaxed triangle inequality holds with s = 2**(p-1); for
    p in (0,1) the p-th power of a metric is again a metric, so s = 1.
    """
    if dimension < 1:
        raise ValueError(f"dimension must be >= 1, got {dimension}")
    if not (p > 0) or not math.isfinite(p):
        raise ValueError(f"exponent p must be a positive finite real, got {p}")
    return BMetricSpace(kind="power", s=max(1.0, 2.0 ** (p - 1.0)), dim=int(dimension), p=float(p))


def make_matrix_space(n: int, matrix, s: float) -> BMetricSpace:
    """Finite space whose distances are read from an explicit n x n matrix.

    Requires exact symmetry, a zero diagonal, and strictly positive
    off-diagonal entries (so distance zero is equivalent to identity).
    The b-metric axioms are NOT assumed; run verify_axioms for that.
    """
    m = np.asarray(matrix, dtype=float)
    if m.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        i, j = map(int, np.argwhere(~np.isfinite(m))[0])
        raise ValueError(f"non-finite entry at ({i},{j})")
    neg = np.argwhere(m < 0)
    if len(neg):
        i, j = map(int, neg[0])
        raise ValueError(f"negative entry at ({i},{j}): {m[i, j]}")
    asym = np.argwhere(m != m.T)
    if len(asym):
        i, j = map(int, asym[0])
        raise ValueError(f"asymmetry at ({i},{j}): {m[i, j]} != {m[j, i]}")
    bad_diag = np.argwhere(np.diag(m) != 0.0)
    if len(bad_diag):
        i = int(bad_diag[0][0])
        raise ValueError(f"nonzero diagonal at ({i},{i}): {m[i, i]}")
    off = m + np.eye(n)  # mask the diagonal before the positivity scan
    zero_off = np.argwhere(off == 0.0)
    if len(zero_off):
        i, j = map(int, zero_off[0])
        raise ValueError(f"zero off-diagonal entry at ({i},{j}): distinct points must have positive distance")
    if not s >= 1.0:
        raise ValueError(f"relaxation coefficient s must be >= 1, got {s}")
    m.setflags(write=False)
    return BMetricSpace(kind="matrix", s=float(s), matrix=m)


def matrix_space_from_json(obj: dict) -> BMetricSpace:
    """Build a matrix space from {"n": int, "s": float, "d": [[...]]} (row-major)."""
    for key in ("n", "s", "d"):
        if key not in obj:
            raise ValueError(f"missing field: {key}")
    return make_matrix_space(int(obj["n"]), obj["d"], float(obj["s"]))


def _distance_table(space: BMetricSpace, sample: list) -> np.ndarray:
    if space.kind == "matrix":
        ids = np.asarray(sample, dtype=int)
        return space.matrix[np.ix_(ids, ids)].astype(float)
    n = len(sample)
    dmat = np.empty((n, n))
    for i, x in enumerate(sample):
        for j, y in enumerate(sample):
            dmat[i, j] = space.dist(x, y)
    return dmat


def _points_equal(space: BMetricSpace, x: Point, y: Point) -> bool:
    if space.kind == "matrix":
        return x == y
    return all(abs(a - b) <= COORD_TOL for a, b in zip(x, y))


def verify_axioms(space: BMetricSpace, sample: list, tol: float = 0.0) -> AxiomReport:
    """Check the b-metric axioms on every ordered pair/triple of the sample.

    identity:         d(x,y) = 0 exactly when the points coincide (zero is
                      read up to tol on formula-backed spaces, and point
                      coincidence up to coordinate tolerance 1e-12);
    symmetry:         |d(x,y) - d(y,x)| <= tol;
    relaxed-triangle: d(x,y) <= s*(d(x,z) + d(z,y)) + tol.

    Violations are data, not errors; each carries its witnesses and both
    sides of the failed inequality, ordered by smallest index tuple first.
    """
    if not sample:
        raise ValueError("sample must be nonempty")
    if tol < 0:
        raise ValueError("tol must be >= 0")
    for x in sample:
        space.check_point(x)

    violations: list[AxiomViolation] = []
    n = len(sample)
    dmat = _distance_table(space, sample)

    for i, x in enumerate(sample):
        for j, y in enumerate(sample):
            d_xy = dmat[i, j]
            zero_d = (d_xy == 0.0) if space.kind == "matrix" else (d_xy <= tol)
            if x == y and d_xy != 0.0:
                violations.append(AxiomViolation("identity", (x, y), float(d_xy), 0.0))
            elif zero_d and not _points_equal(space, x, y):
                violations.append(AxiomViolation("identity", (x, y), float(d_xy), 0.0))
            if abs(d_xy - dmat[j, i]) > tol:
                violations.append(AxiomViolation("symmetry", (x, y), float(d_xy), float(dmat[j, i])))

    # Triangle scan vectorized over (i,j) per via-point k; n**3 scalar loops
    # would be too slow for the few-hundred-point samples this is run on.
    tri: list[tuple[int, int, int]] = []
    s = space.s
    for k in range(n):
        rhs = s * (dmat[:, [k]] + dmat[[k], :]) + tol
        for i, j in np.argwhere(dmat > rhs):
            tri.append((int(i), int(j), int(k)))
    for i, j, k in sorted(tri):
        rhs = s * (dmat[i, k] + dmat[k, j]) + tol
        violations.append(
            AxiomViolation("relaxed-triangle", (sample[i], sample[j], sample[k]), float(dmat[i, j]), float(rhs))
        )

    return AxiomReport(passed=not violations, violations=tuple(violations))


def estimate_min_s(space: BMetricSpace, sample: list) -> float:
    """Tightest relaxation coefficient on the sample: the largest ratio
    d(x,y) / (d(x,z) + d(z,y)) over triples with x != y, clamped below at 1.

    Zero denominators are skipped (they force x = z = y, where the numerator
    vanishes too). Requires at least two points at positive distance.
    """
    for x in sample:
        space.check_point(x)
    dmat = _distance_table(space, sample)
    if not np.any(dmat > 0.0):
        raise ValueError("sample needs at least 2 distinct points")

    best = 1.0
    n = len(sample)
    for k in range(n):
        den = dmat[:, [k]] + dmat[[k], :]
        mask = (den > 0.0) & (dmat > 0.0)
        if mask.any():
            best = max(best, float((dmat[mask] / den[mask]).max()))
    return best
