"""Primitive Pythagorean triples, rotatable lattice points and triangles,
minimal congruency classes, and the tail-bounded constant sum.

Convention: a triple (p, q, r) encodes the rotation angle with cos = q/r and
sin = p/r, so the image of (a, b) is ((a*q - b*p)/r, (a*p + b*q)/r). A point
is rotatable by that angle iff both coordinates of the image are integers,
which collapses to the single congruence a = c*b (mod r) with c = p * q^-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt

from .errors import CostGuardExceeded, PreconditionError
from .lattice import BoundingBoxClass, bounding_box_class

Point = tuple[int, int]
Triangle = frozenset  # of Point, always containing the origin

ORIGIN: Point = (0, 0)
ROTATABLE_TRIANGLE_LIMIT = 64
MINIMALITY_LIMIT = 12


@dataclass(frozen=True, order=True)
class PythTriple:
    p: int
    q: int
    r: int

    def __post_init__(self):
        if self.p <= 0 or self.q <= 0:
            raise PreconditionError("legs must be positive")
        if self.p * self.p + self.q * self.q != self.r * self.r:
            raise PreconditionError(f"({self.p},{self.q},{self.r}) is not a Pythagorean triple")
        if gcd(self.p, self.q) != 1:
            raise PreconditionError(f"({self.p},{self.q},{self.r}) is not primitive")

    def swapped(self) -> "PythTriple":
        return PythTriple(self.q, self.p, self.r)


def enum_primitive_triples(max_r: int) -> list[PythTriple]:
    """All primitive triples with hypotenuse <= max_r, both leg orders,
    sorted by (r, p). Generated from coprime m > n >= 1 of opposite parity
    via (m^2 - n^2, 2mn, m^2 + n^2)."""
    if max_r < 5:
        raise PreconditionError("max_r must be at least 5")
    out = []
    m = 2
    while m * m + 1 <= max_r:
        for n in range(1 + (m % 2), m, 2):
            r = m * m + n * n
            if r > max_r:
                break
            if gcd(m, n) != 1:
                continue
            p, q = m * m - n * n, 2 * m * n
            out.append(PythTriple(p, q, r))
            out.append(PythTriple(q, p, r))
        m += 1
    out.sort(key=lambda t: (t.r, t.p))
    return out


@lru_cache(maxsize=32)
def _triples_upto(max_r: int) -> tuple[PythTriple, ...]:
    return tuple(enum_primitive_triples(max_r)) if max_r >= 5 else ()


@dataclass(frozen=True)
class RotationCongruence:
    """Membership test a = c*b (mod r) for rotatability by the triple's angle."""

    triple: PythTriple
    c: int = field(init=False)

    def __post_init__(self):
        t = self.triple
        object.__setattr__(self, "c", t.p * pow(t.q, -1, t.r) % t.r)

    def member(self, pt: Point) -> bool:
        a, b = pt
        return (a - self.c * b) % self.triple.r == 0


def rotate_exact(pt: Point, t: PythTriple) -> Point | None:
    """Exact image of pt under the triple's rotation, or None when the image
    leaves the lattice."""
    a, b = pt
    nx = a * t.q - b * t.p
    ny = a * t.p + b * t.q
    if nx % t.r or ny % t.r:
        return None
    return (nx // t.r, ny // t.r)


def is_rotatable_by(pt: Point, t: PythTriple) -> bool:
    return rotate_exact(pt, t) is not None


def is_rotatable_point(pt: Point) -> bool:
    """True iff some rotation by an angle not a multiple of 90 degrees keeps
    pt on the lattice. Triple search up to r <= |pt|^2 is definitional."""
    if pt == ORIGIN:
        raise PreconditionError("rotatability of the origin is vacuous")
    norm = pt[0] * pt[0] + pt[1] * pt[1]
    return any(is_rotatable_by(pt, t) for t in _triples_upto(norm))


def has_split_prime_factor(n: int) -> bool:
    """Fast-path predicate: n has a prime factor congruent to 1 mod 4."""
    for p in _prime_factors(n):
        if p % 4 == 1:
            return True
    return False


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def rotatable_points(n: int, t: PythTriple) -> list[Point]:
    """All points of [n] x [n] rotatable by the triple's angle, the origin
    included (it is fixed by every rotation)."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    cong = RotationCongruence(t)
    r = t.r
    pts = []
    for b in range(n):
        a = (cong.c * b) % r
        while a < n:
            pts.append((a, b))
            a += r
    return pts


def count_rotatable_points(n: int, t: PythTriple) -> int:
    return len(rotatable_points(n, t))


def _triples_with_points(n: int) -> list[tuple[PythTriple, frozenset[Point]]]:
    """Triples that rotate at least one non-origin point of [n] x [n],
    paired with their full rotatable point sets."""
    max_r = 2 * (n - 1) * (n - 1)
    out = []
    for t in _triples_upto(max_r):
        pts = frozenset(rotatable_points(n, t))
        if len(pts) > 1:
            out.append((t, pts))
    return out


def is_rotatable_triangle(a: Point, b: Point) -> bool:
    """True iff some single angle rotates both non-origin vertices."""
    if a == ORIGIN or b == ORIGIN or a == b:
        raise PreconditionError("O, a, b must be pairwise distinct")
    bound = min(a[0] * a[0] + a[1] * a[1], b[0] * b[0] + b[1] * b[1])
    return any(
        is_rotatable_by(a, t) and is_rotatable_by(b, t) for t in _triples_upto(bound)
    )


@dataclass(frozen=True)
class RotatableBreakdown:
    total: int
    three_on_box: int  # the count A in the grid theorem's bookkeeping
    two_on_box: int  # the count B

    def __post_init__(self):
        assert self.total == self.three_on_box + self.two_on_box


def count_rotatable_triangles(n: int, workers: int = 1,
                              limit: int = ROTATABLE_TRIANGLE_LIMIT) -> RotatableBreakdown:
    """Exact count of rotatable origin-vertex triangles in [n] x [n], broken
    down by bounding-box class. Desk-scale: refuses n above `limit`."""
    if n < 2:
        raise PreconditionError("n must be >= 2")
    if n > limit:
        raise CostGuardExceeded(f"rotatable-triangle count refused for n={n} > {limit}")
    pairs: set[tuple[Point, Point]] = set()
    for _, pts in _triples_with_points(n):
        non_origin = sorted(pts - {ORIGIN})
        for i, a in enumerate(non_origin):
            for b in non_origin[i + 1 :]:
                pairs.add((a, b))
    three = sum(
        1 for a, b in pairs if bounding_box_class(a, b) is BoundingBoxClass.THREE_ON_BOX
    )
    return RotatableBreakdown(len(pairs), three, len(pairs) - three)


def rotatable_pair_sum_bound(n: int) -> int:
    """Sum over triples of C(f, 2) with f the rotatable-point count (origin
    excluded): an upper bound on the rotatable-triangle count."""
    total = 0
    for _, pts in _triples_with_points(n):
        f = len(pts) - 1
        total += f * (f - 1) // 2
    return total


# ---------------------------------------------------------------------------
# The constant sum with integral tail bound


@dataclass(frozen=True)
class ConstantSum:
    cutoff: int
    partial: float  # sum of 1/(2 r^2) over both-order primitive triples, r <= cutoff
    tail_bound: float  # integral bound on the r > cutoff remainder
    total_bound: float


def constant_sum(cutoff: int = 10**5) -> ConstantSum:
    """Bound the full series sum of 1/(2 r^2) over primitive triples.

    At most 2*sqrt(r) triples share a hypotenuse r, so the tail beyond the
    cutoff is at most the integral of x^(-3/2), i.e. 2/sqrt(cutoff - 1).
    Summation runs in descending r with exact accumulation (math.fsum).
    """
    if cutoff < 10**3:
        raise PreconditionError("cutoff must be at least 10^3")
    rs = sorted((t.r for t in enum_primitive_triples(cutoff)), reverse=True)
    partial = math.fsum(1.0 / (2.0 * r * r) for r in rs)
    tail = 2.0 / math.sqrt(cutoff - 1)
    return ConstantSum(cutoff, partial, tail, partial + tail)


# ---------------------------------------------------------------------------
# Minimal congruency sets (origin-vertex triangles in the first quadrant)


def _sq(p: Point) -> int:
    return p[0] * p[0] + p[1] * p[1]


def _shape_key(a: Point, b: Point) -> tuple[int, int, int]:
    d = (a[0] - b[0], a[1] - b[1])
    return tuple(sorted((_sq(a), _sq(b), _sq(d))))


def _check_minimal_preconditions(a: Point, b: Point) -> None:
    if a == ORIGIN or b == ORIGIN or a == b:
        raise PreconditionError("degenerate: O, a, b must be pairwise distinct")
    if min(a + b) < 0:
        raise PreconditionError("triangle must lie in the first quadrant")
    s1, s2, s3 = _shape_key(a, b)
    if s1 == s2 or s2 == s3:
        raise PreconditionError("isosceles triangle has no minimal congruency set")
    if s1 + s2 == s3:
        raise PreconditionError("right triangle has no minimal congruency set")
    if 2 * (s1 * s2 + s2 * s3 + s3 * s1) - s1 * s1 - s2 * s2 - s3 * s3 == 0:
        raise PreconditionError("degenerate triangle has no minimal congruency set")
    if 0 in (a[0], a[1], b[0], b[1]) or a[0] == b[0] or a[1] == b[1]:
        raise PreconditionError("axis-parallel side: minimal congruency set undefined")


def minimal_congruency_set(a: Point, b: Point) -> set[Triangle]:
    """The 2- or 4-element set of origin-vertex triangles forced congruent to
    {O, a, b} by grid symmetry (transpose, and vertex-difference for the
    two-on-box type)."""
    _check_minimal_preconditions(a, b)
    t = lambda p: (p[1], p[0])
    if bounding_box_class(a, b) is BoundingBoxClass.THREE_ON_BOX:
        tris = [(a, b), (t(a), t(b))]
    else:
        # One vertex is strictly inside the box; normalize so it is b.
        if not (a[0] > b[0] and a[1] > b[1]):
            a, b = b, a
        diff = (a[0] - b[0], a[1] - b[1])
        tris = [(a, b), (t(a), t(b)), (a, diff), (t(a), t(diff))]
    return {frozenset((ORIGIN, u, v)) for u, v in tris}


def congruency_class_at_origin(a: Point, b: Point, n: int) -> set[Triangle]:
    """All origin-vertex triangles inside [n] x [n] with the same shape key as
    {O, a, b}; brute-force scan over all pairs."""
    for p in (a, b):
        if not (0 <= p[0] < n and 0 <= p[1] < n):
            raise PreconditionError(f"point {p} outside [{n}] x [{n}]")
    if a == ORIGIN or b == ORIGIN or a == b:
        raise PreconditionError("O, a, b must be pairwise distinct")
    target = _shape_key(a, b)
    pts = [(u, v) for u in range(n) for v in range(n) if (u, v) != ORIGIN]
    out = set()
    for i, c in enumerate(pts):
        for d in pts[i + 1 :]:
            if _shape_key(c, d) == target:
                out.add(frozenset((ORIGIN, c, d)))
    return out


@dataclass
class MinimalityReport:
    n: int
    checked: int
    skipped_axis_parallel: int
    violations: list[tuple[Point, Point]]


def verify_minimality(n: int, limit: int = MINIMALITY_LIMIT) -> MinimalityReport:
    """For every scalene, non-right, non-degenerate, non-axis-parallel and
    NON-rotatable origin-vertex triangle in [n] x [n], assert that its full
    congruency class equals its minimal congruency set."""
    if n > limit:
        raise CostGuardExceeded(f"minimality scan refused for n={n} > {limit}")
    pts = [(u, v) for u in range(n) for v in range(n) if (u, v) != ORIGIN]
    by_shape: dict[tuple[int, int, int], set[Triangle]] = {}
    for i, c in enumerate(pts):
        for d in pts[i + 1 :]:
            by_shape.setdefault(_shape_key(c, d), set()).add(frozenset((ORIGIN, c, d)))
    triple_sets = _triples_with_points(n)
    checked = 0
    skipped_axis = 0
    violations = []
    for i, a in enumerate(pts):
        for b in pts[i + 1 :]:
            try:
                _check_minimal_preconditions(a, b)
            except PreconditionError as e:
                if "axis-parallel" in str(e):
                    skipped_axis += 1
                continue
            if any(a in s and b in s for _, s in triple_sets):
                continue  # rotatable: the lemma says nothing about these
            if by_shape[_shape_key(a, b)] != minimal_congruency_set(a, b):
                violations.append((a, b))
            checked += 1
    return MinimalityReport(n, checked, skipped_axis, violations)


# ---------------------------------------------------------------------------
# Lemma bound checks


@dataclass
class BoundCheckCase:
    triple: PythTriple
    n: int
    count: int
    bound: int
    ok: bool


@dataclass
class BoundCheckReport:
    cases: list[BoundCheckCase]

    @property
    def violations(self) -> list[BoundCheckCase]:
        return [c for c in self.cases if not c.ok]


def rotatable_point_bound(n: int, r: int) -> int:
    """The per-angle bound on rotatable-point counts in [n] x [n].

    The covering argument bounds non-origin rotatable points; the origin is
    trivially rotatable and is part of every covering subrow, so the large-r
    case allows exactly the origin.
    """
    if r > 2 * n * n:
        return 1  # origin only
    if r >= n:
        return n
    return r * math.ceil(n / r) ** 2


def lemma32_bound_check(max_r: int, max_n: int) -> BoundCheckReport:
    if max_r > 100 or max_n > 50:
        raise CostGuardExceeded("bound check limited to max_r <= 100, max_n <= 50")
    cases = []
    for t in _triples_upto(max_r):
        for n in range(1, max_n + 1):
            count = count_rotatable_points(n, t)
            bound = rotatable_point_bound(n, t.r)
            cases.append(BoundCheckCase(t, n, count, bound, count <= bound))
    return BoundCheckReport(cases)


@dataclass
class SpotCheckReport:
    m: int
    n: int
    triple: PythTriple
    count: int
    bound: int
    ok: bool


def smallest_triple_with_r_at_least(r_min: int) -> PythTriple:
    """The primitive triple (smaller leg first) with minimal hypotenuse >= r_min."""
    best = None
    m = max(2, isqrt(max(r_min // 2 - 1, 0)))
    # Scan m upward; stop once m^2 + 1 alone exceeds the best hypotenuse found.
    while best is None or m * m + 1 <= best.r:
        for n in range(1 + (m % 2), m, 2):
            r = m * m + n * n
            if r < r_min or gcd(m, n) != 1:
                continue
            p, q = sorted((m * m - n * n, 2 * m * n))
            t = PythTriple(p, q, r)
            if best is None or (t.r, t.p) < (best.r, best.p):
                best = t
        m += 1
    return best


def lemma33_spot_check(m: int, n: int, t: PythTriple) -> SpotCheckReport:
    """Refined bound for large hypotenuses: with m > 4, n >= m^5 and
    r >= 2 m^4 n, at most n/m points of [n] x [n] are rotatable."""
    if m <= 4:
        raise PreconditionError("hypothesis violated: m > 4 required")
    if n < m**5:
        raise PreconditionError(f"hypothesis violated: n >= m^5 = {m**5} required")
    if t.r < 2 * m**4 * n:
        raise PreconditionError(
            f"hypothesis violated: r >= 2 m^4 n = {2 * m**4 * n} required"
        )
    count = count_rotatable_points(n, t)
    bound = n // m
    return SpotCheckReport(m, n, t, count, bound, count <= bound)
