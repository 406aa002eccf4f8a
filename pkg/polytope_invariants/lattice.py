"""
Exact integral polytope geometry.

Polytopes live in the integer lattice Z^n and are stored by their vertices:
for n <= 2 in canonical order (sorted for n = 1, counter-clockwise from the
lexicographically smallest vertex for n = 2), for n >= 3 as a sorted
generating set from which every non-vertex has been pruned by an exact
rational feasibility test. Nothing in this module uses floating point.

Operations:
- hull, minkowski_sum, mirror, translate, dilate, canonical
- support, thickness, min_face over integral covectors (Direction)
- translation_eq (comparison of canonical translates)
- erode (Minkowski difference, n <= 2)
- contains_point, halfplanes
- normal_arcs (normal fan of a planar polytope)
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Rational
from sympy.solvers.simplex import InfeasibleLPError, linprog

from .errors import InputError, UnsupportedError

logger = logging.getLogger("polytope_invariants.lattice")

Point = Tuple[int, ...]
Coordinate = Union[int, Fraction]


# ============================================================================
# Vector helpers
# ============================================================================

def _as_int(value) -> int:
    if isinstance(value, bool):
        raise InputError(f"non-integral coordinate {value!r}", code="non_integral")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    raise InputError(f"non-integral coordinate {value!r}", code="non_integral")


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise InputError(f"floating point coordinate {value!r} not accepted", code="non_exact")
    try:
        return Fraction(value)
    except (TypeError, ValueError) as e:
        raise InputError(f"not a rational number: {value!r}", code="non_exact") from e


def _dot(u: Sequence[Coordinate], v: Sequence[Coordinate]):
    return sum(a * b for a, b in zip(u, v))


def _add(u: Point, v: Point) -> Point:
    return tuple(a + b for a, b in zip(u, v))


def _sub(u: Point, v: Point) -> Point:
    return tuple(a - b for a, b in zip(u, v))


def _neg(u: Point) -> Point:
    return tuple(-a for a in u)


def _cross(o: Point, a: Point, b: Point) -> int:
    """Orientation of the turn o -> a -> b (positive = counter-clockwise)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _det(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _primitive(v: Sequence[int]) -> Point:
    g = gcd(*v)
    return tuple(a // g for a in v) if g else tuple(v)


# ============================================================================
# Directions
# ============================================================================

@dataclass(frozen=True)
class Direction:
    """A nonzero integral covector.

    The raw covector is kept for evaluation (thickness is linear in it);
    ``ray()`` and ``canonical()`` give the normal forms.
    """

    covector: Tuple[int, ...]

    def __post_init__(self):
        cov = tuple(_as_int(c) for c in self.covector)
        if not cov:
            raise InputError("empty covector", code="zero_covector")
        if not any(cov):
            raise InputError("covector must be nonzero", code="zero_covector")
        object.__setattr__(self, "covector", cov)

    @classmethod
    def of(cls, value: Union["Direction", Sequence[int]]) -> "Direction":
        if isinstance(value, Direction):
            return value
        return cls(tuple(value))

    @classmethod
    def checked(cls, value: Union["Direction", Sequence[int]], dim: int) -> "Direction":
        """Direction.of(value), rejecting a covector whose length is not ``dim``."""
        d = cls.of(value)
        if d.dim != dim:
            raise InputError(
                f"covector of length {d.dim} does not match dimension {dim}",
                code="dimension_mismatch",
            )
        return d

    @classmethod
    def from_rational(cls, values: Sequence[Union[int, str, Fraction]]) -> "Direction":
        """Scale a rational covector to an integral one on the same ray."""
        fracs = [_as_fraction(v) for v in values]
        lcm = 1
        for f in fracs:
            lcm = lcm * f.denominator // gcd(lcm, f.denominator)
        return cls(tuple(int(f * lcm) for f in fracs))

    @property
    def dim(self) -> int:
        return len(self.covector)

    def ray(self) -> "Direction":
        """Primitive covector on the same positive ray."""
        return Direction(_primitive(self.covector))

    def canonical(self) -> "Direction":
        """Primitive covector with first nonzero entry positive."""
        prim = _primitive(self.covector)
        first = next(c for c in prim if c)
        return Direction(prim if first > 0 else _neg(prim))

    def is_primitive(self) -> bool:
        return gcd(*self.covector) == 1

    def __call__(self, point: Sequence[Coordinate]):
        return _dot(self.covector, point)

    def __neg__(self) -> "Direction":
        return Direction(_neg(self.covector))


# ============================================================================
# Polytopes
# ============================================================================

@dataclass(frozen=True)
class IntegralPolytope:
    """Convex hull of finitely many lattice points; build it with ``hull``."""

    dim: int
    points: Tuple[Point, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise InputError("ambient dimension must be at least 1", code="dimension_mismatch")
        if not self.points:
            raise InputError("a polytope needs at least one point", code="empty_input")
        if any(len(p) != self.dim for p in self.points):
            raise InputError("point of wrong dimension", code="dimension_mismatch")

    @property
    def vertices(self) -> Tuple[Point, ...]:
        return self.points

    @property
    def is_point(self) -> bool:
        return len(self.points) == 1

    def __add__(self, other: "IntegralPolytope") -> "IntegralPolytope":
        return minkowski_sum(self, other)


def _require_same_dim(P: IntegralPolytope, Q: IntegralPolytope) -> None:
    if P.dim != Q.dim:
        raise InputError(
            f"dimension mismatch: {P.dim} vs {Q.dim}", code="dimension_mismatch"
        )


def _hull_2d(pts: List[Point]) -> List[Point]:
    """Monotone chain over sorted distinct points; collinear points dropped."""
    if len(pts) <= 2:
        return pts
    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _feasible_combination(target: Sequence[Coordinate], generators: Sequence[Point]) -> bool:
    """Exact test whether ``target`` is a convex combination of ``generators``."""
    if not generators:
        return False
    m = len(generators)
    n = len(target)
    a_eq = [[Rational(g[i]) for g in generators] for i in range(n)]
    a_eq.append([Rational(1)] * m)
    b_eq = [Rational(f.numerator, f.denominator) for f in map(_as_fraction, target)]
    b_eq.append(Rational(1))
    # linprog wants an inequality block: -w0 <= 0 is implied by w >= 0
    a_ub = [[Rational(-1)] + [Rational(0)] * (m - 1)]
    try:
        linprog([0] * m, A=a_ub, b=[Rational(0)], A_eq=a_eq, b_eq=b_eq)
    except InfeasibleLPError:
        return False
    return True


def _certified_vertices(pts: List[Point]) -> set:
    """Points that uniquely maximise one of a few fixed covectors are vertices."""
    n = len(pts[0])
    covectors = []
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        covectors.extend([e, _neg(e)])
    for mask in range(1 << n):
        covectors.append(tuple(1 if mask >> j & 1 else -1 for j in range(n)))
    found = set()
    for u in covectors:
        values = [_dot(u, p) for p in pts]
        top = max(values)
        winners = [p for p, val in zip(pts, values) if val == top]
        if len(winners) == 1:
            found.add(winners[0])
    return found


def _prune_nd(pts: List[Point]) -> List[Point]:
    if len(pts) <= 2:
        return pts
    certified = _certified_vertices(pts)
    kept = list(pts)
    for p in pts:
        if p in certified:
            continue
        others = [q for q in kept if q != p]
        if _feasible_combination(p, others):
            kept = others
    logger.debug("pruned %d generators to %d vertices", len(pts), len(kept))
    return kept


def hull(points: Iterable[Sequence[int]]) -> IntegralPolytope:
    """Convex hull of a nonempty set of lattice points, in canonical form."""
    pts = {tuple(_as_int(c) for c in p) for p in points}
    if not pts:
        raise InputError("hull of an empty point set", code="empty_input")
    dims = {len(p) for p in pts}
    if len(dims) != 1:
        raise InputError(f"mixed dimensions {sorted(dims)}", code="dimension_mismatch")
    n = dims.pop()
    ordered = sorted(pts)
    if n == 1:
        verts = [ordered[0]] if len(ordered) == 1 else [ordered[0], ordered[-1]]
    elif n == 2:
        verts = _hull_2d(ordered)
    else:
        verts = _prune_nd(ordered)
    return IntegralPolytope(n, tuple(verts))


def point(*coords: int) -> IntegralPolytope:
    return hull([coords])


def segment(a: Sequence[int], b: Sequence[int]) -> IntegralPolytope:
    return hull([a, b])


def minkowski_sum(P: IntegralPolytope, Q: IntegralPolytope) -> IntegralPolytope:
    _require_same_dim(P, Q)
    return hull(_add(p, q) for p in P.points for q in Q.points)


def mirror(P: IntegralPolytope) -> IntegralPolytope:
    return hull(_neg(p) for p in P.points)


def translate(P: IntegralPolytope, v: Sequence[int]) -> IntegralPolytope:
    shift = tuple(_as_int(c) for c in v)
    if len(shift) != P.dim:
        raise InputError("translation vector of wrong dimension", code="dimension_mismatch")
    # translation preserves both the lexicographic and the cyclic order
    return IntegralPolytope(P.dim, tuple(_add(p, shift) for p in P.points))


def canonical(P: IntegralPolytope) -> IntegralPolytope:
    """Translate of P with its lexicographically smallest vertex at the origin."""
    return translate(P, _neg(P.points[0]))


def dilate(P: IntegralPolytope, k: int) -> IntegralPolytope:
    k = _as_int(k)
    if k < 0:
        raise InputError("dilation factor must be nonnegative", code="negative_factor")
    return hull(tuple(k * c for c in p) for p in P.points)


def translation_eq(P: IntegralPolytope, Q: IntegralPolytope) -> bool:
    _require_same_dim(P, Q)
    return canonical(P).points == canonical(Q).points


def support(P: IntegralPolytope, phi: Union[Direction, Sequence[int]]) -> int:
    d = Direction.checked(phi, P.dim)
    return max(d(p) for p in P.points)


def thickness(P: IntegralPolytope, phi: Union[Direction, Sequence[int]]) -> int:
    d = Direction.checked(phi, P.dim)
    values = [d(p) for p in P.points]
    return max(values) - min(values)


def min_face(P: IntegralPolytope, phi: Union[Direction, Sequence[int]]) -> Tuple[Point, ...]:
    """Vertices of the face on which phi is minimal, in stored order."""
    d = Direction.checked(phi, P.dim)
    low = min(d(p) for p in P.points)
    return tuple(p for p in P.points if d(p) == low)


def halfplanes(P: IntegralPolytope) -> List[Tuple[Point, int]]:
    """Exact H-representation [(u, h)] with P = {z : u.z <= h} (dim <= 2).

    Points and segments get extra normals so that the system pins them down.
    """
    if P.dim > 2:
        raise UnsupportedError(
            "half-plane description only for dimension <= 2",
            detail={"dim": P.dim}, code="unsupported_dimension",
        )
    pts = P.points
    if P.dim == 1:
        return [((1,), pts[-1][0]), ((-1,), -pts[0][0])]
    if len(pts) == 1:
        (x, y), = pts
        return [((1, 0), x), ((-1, 0), -x), ((0, 1), y), ((0, -1), -y)]
    if len(pts) == 2:
        a, b = pts
        d = _primitive(_sub(b, a))
        n = (-d[1], d[0])
        return [
            (n, _dot(n, a)), (_neg(n), -_dot(n, a)),
            (d, _dot(d, b)), (_neg(d), -_dot(d, a)),
        ]
    planes = []
    for i, v in enumerate(pts):
        w = pts[(i + 1) % len(pts)]
        u = _edge_normal(v, w)
        planes.append((u, _dot(u, v)))
    return planes


def _edge_normal(v: Point, w: Point) -> Point:
    """Primitive outward normal of the counter-clockwise edge v -> w."""
    dx, dy = _sub(w, v)
    return _primitive((dy, -dx))


def contains_point(P: IntegralPolytope, pt: Sequence[Coordinate]) -> bool:
    """Exact membership of a rational point in P."""
    target = tuple(_as_fraction(c) for c in pt)
    if len(target) != P.dim:
        raise InputError("point of wrong dimension", code="dimension_mismatch")
    if P.dim <= 2:
        return all(_dot(u, target) <= h for u, h in halfplanes(P))
    if target in P.points:
        return True
    return _feasible_combination(target, P.points)


def erode(P: IntegralPolytope, Q: IntegralPolytope) -> Optional[IntegralPolytope]:
    """The polytope R with R + Q = P, or None when no such R exists (dim <= 2).

    {x : x + Q inside P} is cut out by P's half-planes shifted by the support
    of Q; when R exists it equals that region and its vertices are among the
    differences of vertices of P and Q, so the region is sampled there and the
    answer verified by summing back.
    """
    _require_same_dim(P, Q)
    if P.dim > 2:
        raise UnsupportedError(
            "erosion is only supported in dimension <= 2",
            detail={"dim": P.dim}, code="unsupported_dimension",
        )
    slack = [(u, h - support(Q, u)) for u, h in halfplanes(P)]
    candidates = {_sub(p, q) for p in P.points for q in Q.points}
    inside = [c for c in candidates if all(_dot(u, c) <= s for u, s in slack)]
    if not inside:
        return None
    R = hull(inside)
    if minkowski_sum(R, Q) != P:
        logger.debug("erosion candidate failed re-summation")
        return None
    return R


def vertex_decomposition(P: IntegralPolytope, Q: IntegralPolytope, s: Sequence[int]) -> Tuple[Point, Point]:
    """The unique vertices p of P and q of Q with p + q = s, s a vertex of P + Q."""
    target = tuple(s)
    pairs = [(p, q) for p in P.points for q in Q.points if _add(p, q) == target]
    if len(pairs) != 1:
        raise InputError(
            f"{target} is not a vertex of the sum",
            detail={"decompositions": len(pairs)}, code="not_a_vertex",
        )
    return pairs[0]


# ============================================================================
# Normal fans (dim 2)
# ============================================================================

@dataclass(frozen=True)
class NormalArc:
    """Open cone of covectors for which ``vertex`` is the unique maximiser.

    The cone runs counter-clockwise from ``start`` to ``end``; both are
    primitive outward edge normals. ``start is None`` means the full circle.
    """

    vertex: Point
    start: Optional[Point]
    end: Optional[Point]

    @property
    def is_full_circle(self) -> bool:
        return self.start is None

    def contains(self, phi: Union[Direction, Sequence[int]]) -> bool:
        d = Direction.checked(phi, 2).covector
        if self.is_full_circle:
            return True
        return _det(self.start, d) > 0 and _det(d, self.end) > 0


def normal_arcs(P: IntegralPolytope) -> List[NormalArc]:
    if P.dim != 2:
        raise UnsupportedError(
            "normal arcs are only defined in dimension 2",
            detail={"dim": P.dim}, code="unsupported_dimension",
        )
    pts = P.points
    if len(pts) == 1:
        return [NormalArc(pts[0], None, None)]
    # a segment is walked as the degenerate polygon a -> b -> a
    normals = [_edge_normal(v, pts[(i + 1) % len(pts)]) for i, v in enumerate(pts)]
    return [NormalArc(v, normals[i - 1], normals[i]) for i, v in enumerate(pts)]


def interior_direction(arc: NormalArc) -> Direction:
    """Some integral covector strictly inside the arc."""
    if arc.is_full_circle:
        return Direction((1, 0))
    a, b = arc.start, arc.end
    if _det(a, b) > 0:
        return Direction(_add(a, b))
    return Direction((-a[1], a[0]))
