"""Regular n-gon triangle combinatorics and exact maximum-subset search.

A ground set is a finite point configuration given either by exact
coordinates, by an exact squared-distance matrix (regular 5-/10-gons have no
quadratic-field coordinates but their squared chords live in Q(sqrt(5))), or
by float coordinates compared under a tolerance after normalizing the
diameter to 1.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CostGuardExceeded, PreconditionError
from .geometry import QPoint, sq_dist
from .qscalar import QScalar

DEFAULT_TOLERANCE = 1e-9
GROUND_SET_LIMIT = 64

# Square chord lengths 4 sin^2(pi k / n) of the unit-circle regular n-gon,
# for the n whose chords live in a single quadratic field.
_EXACT_NGON = {3, 4, 5, 6, 8, 10, 12}


def _chord_sq(n: int, k: int) -> QScalar:
    """Exact squared distance between n-gon vertices k steps apart."""
    half = Fraction(1, 2)
    table = {
        (3, 1): QScalar(3),
        (4, 1): QScalar(2), (4, 2): QScalar(4),
        (5, 1): QScalar(Fraction(5, 2), -half, 5),
        (5, 2): QScalar(Fraction(5, 2), half, 5),
        (6, 1): QScalar(1), (6, 2): QScalar(3), (6, 3): QScalar(4),
        (8, 1): QScalar(2, -1, 2), (8, 2): QScalar(2),
        (8, 3): QScalar(2, 1, 2), (8, 4): QScalar(4),
        (10, 1): QScalar(Fraction(3, 2), -half, 5),
        (10, 2): QScalar(Fraction(5, 2), -half, 5),
        (10, 3): QScalar(Fraction(3, 2), half, 5),
        (10, 4): QScalar(Fraction(5, 2), half, 5),
        (10, 5): QScalar(4),
        (12, 1): QScalar(2, -1, 3), (12, 2): QScalar(1), (12, 3): QScalar(2),
        (12, 4): QScalar(3), (12, 5): QScalar(2, 1, 3), (12, 6): QScalar(4),
    }
    return table[(n, min(k % n, n - k % n))]


def ngon_distinct_triangles(n: int) -> int:
    """Distinct triangles of the regular n-gon: multisets {i,j,k} of positive
    arc lengths with i + j + k = n."""
    if n < 3:
        raise PreconditionError("n-gon needs n >= 3")
    count = 0
    for i in range(1, n // 3 + 1):
        for j in range(i, (n - i) // 2 + 1):
            if n - i - j >= j:
                count += 1
    return count


def ngon_asymptotic_check(n_values: Sequence[int]) -> list[tuple[int, int, float]]:
    """Rows (n, count, count/n^2); the ratio tends to 1/12."""
    rows = []
    for n in n_values:
        c = ngon_distinct_triangles(n)
        rows.append((n, c, c / n**2))
    return rows


# ---------------------------------------------------------------------------
# Ground sets


@dataclass(frozen=True)
class GroundSet:
    """A fixed finite point configuration with a shape-key oracle per triple."""

    label: str
    mode: str  # "coordinates" | "distance-matrix" | "float"
    size: int
    _dist: tuple  # upper-triangle squared distances, row-major, canonicalized

    def sq_distance(self, i: int, j: int):
        if i == j:
            raise PreconditionError("squared distance needs distinct indices")
        if i > j:
            i, j = j, i
        return self._dist[i * (2 * self.size - i - 1) // 2 + (j - i - 1)]

    def shape_key(self, i: int, j: int, k: int):
        return tuple(
            sorted((self.sq_distance(i, j), self.sq_distance(i, k), self.sq_distance(j, k)))
        )

    def distinct_shapes(self, indices: Sequence[int]) -> set:
        idx = list(indices)
        shapes = set()
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                for c in range(b + 1, len(idx)):
                    shapes.add(self.shape_key(idx[a], idx[b], idx[c]))
        return shapes


def ground_set_from_points(points: Sequence[QPoint], label: str = "points") -> GroundSet:
    dist = []
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            d = sq_dist(points[i], points[j])
            if d.is_zero():
                raise PreconditionError(f"duplicate points at indices {i}, {j}")
            dist.append(d)
    return GroundSet(label, "coordinates", n, tuple(dist))


def ground_set_from_matrix(
    n: int, entries: Sequence[QScalar], label: str = "matrix"
) -> GroundSet:
    if len(entries) != n * (n - 1) // 2:
        raise PreconditionError(
            f"expected {n * (n - 1) // 2} upper-triangle entries, got {len(entries)}"
        )
    for e in entries:
        if e.sign() <= 0:
            raise PreconditionError("squared distances must be positive")
    return GroundSet(label, "distance-matrix", n, tuple(entries))


def ground_set_from_floats(
    points: Sequence[tuple[float, float]],
    tolerance: float = DEFAULT_TOLERANCE,
    label: str = "float",
) -> GroundSet:
    """Tolerance path: squared distances are normalized by the squared
    diameter and bucketed to a grid of width `tolerance`. Two true values
    closer than the tolerance collapse into one bucket by design."""
    n = len(points)
    raw = []
    for i in range(n):
        for j in range(i + 1, n):
            dx = points[i][0] - points[j][0]
            dy = points[i][1] - points[j][1]
            raw.append(dx * dx + dy * dy)
    diam = max(raw)
    if diam <= 0:
        raise PreconditionError("degenerate float point set")
    buckets = tuple(round(d / diam / tolerance) for d in raw)
    return GroundSet(label, "float", n, buckets)


def make_ngon_ground_set(n: int, tolerance: float = DEFAULT_TOLERANCE) -> GroundSet:
    """Regular n-gon on the unit circle: exact distance matrix when the
    chords fit one quadratic field, float mode otherwise."""
    if n < 3:
        raise PreconditionError("n-gon needs n >= 3")
    if n in _EXACT_NGON:
        entries = [
            _chord_sq(n, j - i) for i in range(n) for j in range(i + 1, n)
        ]
        return ground_set_from_matrix(n, entries, label=f"ngon:{n}")
    pts = [
        (math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))
        for k in range(n)
    ]
    return ground_set_from_floats(pts, tolerance, label=f"ngon:{n}")


def grid_ground_set(n: int) -> GroundSet:
    pts = [QPoint(u, v) for u in range(n) for v in range(n)]
    return ground_set_from_points(pts, label=f"grid:{n}")


# ---------------------------------------------------------------------------
# Branch and bound


@dataclass
class SearchResult:
    k: int
    max_size: int
    witnesses: list[tuple[int, ...]]
    nodes_explored: int
    elapsed_ms: float


def max_subset_with_k_shapes(
    ground: GroundSet, k: int, size_cap: Optional[int] = None
) -> SearchResult:
    """Exact maximum-cardinality subsets spanning at most k distinct shapes.

    Depth-first over candidate indices in ascending order with an incremental
    shape set; branches are cut when the shape budget is blown or when the
    remaining candidates cannot reach the incumbent. All maximum witnesses
    are returned, in index order; geometric symmetry is not quotiented.
    """
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if ground.size > GROUND_SET_LIMIT:
        raise CostGuardExceeded(
            f"ground set of size {ground.size} exceeds limit {GROUND_SET_LIMIT}"
        )
    t0 = time.monotonic()
    n = ground.size
    cap = min(size_cap, n) if size_cap is not None else n

    # Greedy pass seeds the incumbent bound (witnesses come from the DFS).
    greedy: list[int] = []
    gshapes: set = set()
    for i in range(n):
        added = _new_shapes(ground, greedy, i, gshapes)
        if len(gshapes | added) <= k and len(greedy) + 1 <= cap:
            gshapes |= added
            greedy.append(i)
    best = len(greedy)
    witnesses: list[tuple[int, ...]] = []
    nodes = 0

    chosen: list[int] = []
    shapes: set = set()

    def dfs(start: int) -> None:
        nonlocal best, witnesses, nodes
        size = len(chosen)
        if size > best:
            best, witnesses = size, [tuple(chosen)]
        elif size == best and chosen:
            witnesses.append(tuple(chosen))
        if size >= cap:
            return
        for i in range(start, n):
            if size + (n - i) < best:
                break  # even taking everything left cannot beat the incumbent
            added = _new_shapes(ground, chosen, i, shapes)
            if len(shapes) + len(added) > k:
                continue
            nodes += 1
            chosen.append(i)
            shapes.update(added)
            dfs(i + 1)
            chosen.pop()
            shapes.difference_update(added)

    dfs(0)
    witnesses = [w for w in witnesses if len(w) == best]
    return SearchResult(k, best, witnesses, nodes, (time.monotonic() - t0) * 1000.0)


def _new_shapes(ground: GroundSet, chosen: list[int], i: int, have: set) -> set:
    added = set()
    for a in range(len(chosen)):
        for b in range(a + 1, len(chosen)):
            s = ground.shape_key(chosen[a], chosen[b], i)
            if s not in have:
                added.add(s)
    return added


def verify_subset(ground: GroundSet, indices: Sequence[int], k: int) -> bool:
    """Post-hoc witness check, independent of search internals."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        raise PreconditionError("indices must be distinct")
    for i in idx:
        if not 0 <= i < ground.size:
            raise PreconditionError(f"index {i} out of range")
    return len(ground.distinct_shapes(idx)) <= k
