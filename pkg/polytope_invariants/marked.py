"""
Marked polytopes and the invariant of a two-generator one-relator presentation.

Two constructions of the polytope of a nice presentation <x, y | r>:

- the walk route: read r as a lattice walk, take the hull C of the trace and
  subtract the unit square, C = S + square;
- the Fox route: the marked Newton polytope of dr/dx, deconvolved by the
  marked segment of y - 1 (or dr/dy by x - 1).

The walk route is authoritative for the polytope, the Fox route supplies the
marking; any disagreement is raised as a DiscrepancyError. For b1 = 1 only
the unmarked interval is produced.
"""

import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import DiscrepancyError, ErosionError, InputError, MarkingError, UnsupportedError, ValidationError
from .grothendieck import GrothElement, difference, g_equal
from .lattice import (
    IntegralPolytope,
    Point,
    erode,
    hull,
    minkowski_sum,
    translate,
    translation_eq,
    vertex_decomposition,
)
from .words import (
    GENERATORS,
    FreeWordSum,
    Presentation,
    abelianize_fibers,
    fox_derivative,
    generator_minus_one,
    newton_polytope,
    walk_trace,
)

logger = logging.getLogger("polytope_invariants.marked")

UNIT_SQUARE = hull([(0, 0), (1, 0), (0, 1), (1, 1)])


@dataclass(frozen=True)
class MarkedPolytope:
    """A polytope (ambient dim <= 2) with a set of marked vertex indices."""

    polytope: IntegralPolytope
    marked: FrozenSet[int] = frozenset()

    def __post_init__(self):
        if self.polytope.dim > 2:
            raise UnsupportedError(
                "marked polytopes are only supported in dimension <= 2",
                detail={"dim": self.polytope.dim}, code="unsupported_dimension",
            )
        marked = frozenset(int(i) for i in self.marked)
        bad = [i for i in marked if not 0 <= i < len(self.polytope.points)]
        if bad:
            raise InputError(f"marked indices {sorted(bad)} are not vertices", code="bad_marking")
        object.__setattr__(self, "marked", marked)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], marked_points: Iterable[Sequence[int]] = ()) -> "MarkedPolytope":
        P = hull(points)
        index = {v: i for i, v in enumerate(P.points)}
        marked = set()
        for m in marked_points:
            key = tuple(m)
            if key not in index:
                raise InputError(f"marked point {key} is not a vertex", code="bad_marking")
            marked.add(index[key])
        return cls(P, frozenset(marked))

    @property
    def dim(self) -> int:
        return self.polytope.dim

    @property
    def marked_vertices(self) -> Tuple[Point, ...]:
        return tuple(v for i, v in enumerate(self.polytope.points) if i in self.marked)

    def is_marked(self, vertex: Sequence[int]) -> bool:
        return tuple(vertex) in self.marked_vertices

    def translate(self, v: Sequence[int]) -> "MarkedPolytope":
        return MarkedPolytope(translate(self.polytope, v), self.marked)

    def __add__(self, other: "MarkedPolytope") -> "MarkedPolytope":
        return marked_sum(self, other)


def unmarked(M: MarkedPolytope) -> IntegralPolytope:
    return M.polytope


def _is_unit_fiber(fiber: FreeWordSum) -> bool:
    return len(fiber.terms) == 1 and abs(fiber.terms[0][1]) == 1


def marked_from_fibers(fibers: Mapping[Point, FreeWordSum]) -> MarkedPolytope:
    """Hull of the nonzero fibers; a vertex is marked when its fiber is +-(one word)."""
    support = {h: f for h, f in fibers.items() if f}
    if not support:
        raise InputError("marked polytope of the zero element", code="zero_element")
    P = hull(support)
    marked = frozenset(i for i, v in enumerate(P.points) if _is_unit_fiber(support[v]))
    return MarkedPolytope(P, marked)


def marked_sum(M: MarkedPolytope, N: MarkedPolytope) -> MarkedPolytope:
    """Minkowski sum; a vertex is marked iff both of its summands are."""
    P = minkowski_sum(M.polytope, N.polytope)
    marked = set()
    for i, s in enumerate(P.points):
        p, q = vertex_decomposition(M.polytope, N.polytope, s)
        if M.is_marked(p) and N.is_marked(q):
            marked.add(i)
    return MarkedPolytope(P, frozenset(marked))


def marked_deconvolve_segment(S: MarkedPolytope, seg: MarkedPolytope) -> MarkedPolytope:
    """The unique M with marked_sum(M, seg) == S, seg a fully marked segment."""
    if len(seg.polytope.points) != 2 or len(seg.marked) != 2:
        raise ValidationError(
            "deconvolution needs a segment with both endpoints marked",
            detail={"points": [list(v) for v in seg.polytope.points], "marked": sorted(seg.marked)},
            code="segment_not_marked",
        )
    R = erode(S.polytope, seg.polytope)
    if R is None:
        raise ErosionError(
            "polytope is not a Minkowski sum with the segment",
            detail={"polytope": [list(v) for v in S.polytope.points],
                    "segment": [list(v) for v in seg.polytope.points]},
        )
    marks: Dict[Point, bool] = {}
    witness: Dict[Point, Point] = {}
    for s in S.polytope.points:
        r, _ = vertex_decomposition(R, seg.polytope, s)
        flag = S.is_marked(s)
        if r in marks and marks[r] != flag:
            raise MarkingError(
                f"vertex {list(r)} would need conflicting marks",
                detail={"vertex": list(r), "images": [list(witness[r]), list(s)]},
            )
        marks[r] = flag
        witness[r] = s
    return MarkedPolytope(R, frozenset(i for i, r in enumerate(R.points) if marks.get(r)))


# ============================================================================
# Presentations, b1 = 2
# ============================================================================

def walk_hull(p: Presentation) -> IntegralPolytope:
    return hull(walk_trace(p.relator))


def walk_polytope(p: Presentation) -> IntegralPolytope:
    """S with S + unit square = hull of the walk of the relator."""
    p.require_nice()
    C = walk_hull(p)
    S = erode(C, UNIT_SQUARE)
    if S is None:
        raise ErosionError(
            "walk hull is not a sum with the unit square",
            detail={"relator": str(p.relator), "hull": [list(v) for v in C.points]},
        )
    logger.debug("walk of %s: hull %d vertices, S %d vertices", p.relator, len(C.points), len(S.points))
    return S


def _other(gen: str) -> str:
    if gen not in GENERATORS:
        raise InputError(f"route must be one of {GENERATORS}, got {gen!r}", code="bad_route")
    return GENERATORS[1] if gen == GENERATORS[0] else GENERATORS[0]


def _fox_marked(p: Presentation, route: str) -> MarkedPolytope:
    A = p.abelianization
    derivative = marked_from_fibers(abelianize_fibers(fox_derivative(p.relator, route), A))
    seg = marked_from_fibers(abelianize_fibers(generator_minus_one(_other(route)), A))
    try:
        return marked_deconvolve_segment(derivative, seg)
    except ErosionError as e:
        raise DiscrepancyError(
            "Fox route does not erode although the walk route does",
            detail={"route": route, **e.detail},
        ) from e


def marked_invariant(p: Presentation, route: str = "x") -> MarkedPolytope:
    """Marked polytope of a nice presentation, placed on the walk polytope."""
    p.require_nice()
    if p.proper_power:
        logger.warning("relator %s is a proper power; the group has torsion", p.relator)
    walk = walk_polytope(p)
    M = _fox_marked(p, route)
    if not translation_eq(M.polytope, walk):
        raise DiscrepancyError(
            "Fox route and walk route give different polytopes",
            detail={
                "route": route,
                "relator": str(p.relator),
                "fox": [list(v) for v in M.polytope.points],
                "walk": [list(v) for v in walk.points],
            },
        )
    shift = tuple(b - a for a, b in zip(M.polytope.points[0], walk.points[0]))
    return M.translate(shift)


def route_report(p: Presentation) -> Dict[str, object]:
    """Both Fox routes; raises DiscrepancyError when their markings differ."""
    results = {route: marked_invariant(p, route) for route in GENERATORS}
    x_route, y_route = results[GENERATORS[0]], results[GENERATORS[1]]
    if x_route != y_route:
        raise DiscrepancyError(
            "x-route and y-route markings differ",
            detail={
                "relator": str(p.relator),
                "x": sorted(list(v) for v in x_route.marked_vertices),
                "y": sorted(list(v) for v in y_route.marked_vertices),
            },
        )
    return results


# ============================================================================
# Presentations, b1 = 1
# ============================================================================

def _interval_route(p: Presentation, route: str) -> Optional[GrothElement]:
    other = _other(route)
    A = p.abelianization
    if not any(A.generator_image(other)):
        logger.debug("route %s degenerate: %s maps to zero", route, other)
        return None
    derivative = fox_derivative(p.relator, route)
    if not abelianize_fibers(derivative, A):
        logger.debug("route %s degenerate: zero derivative", route)
        return None
    return difference(newton_polytope(derivative, A), newton_polytope(generator_minus_one(other), A))


def interval_routes(p: Presentation) -> Dict[str, GrothElement]:
    p.require_cyclically_reduced()
    if p.b1 != 1:
        raise ValidationError(
            "interval invariant needs b1 = 1", detail={"b1": p.b1}, code="wrong_b1",
        )
    routes = {}
    for route in GENERATORS:
        element = _interval_route(p, route)
        if element is not None:
            routes[route] = element
    if not routes:
        raise UnsupportedError("both routes are degenerate", detail={"relator": str(p.relator)}, code="degenerate_routes")
    if len(routes) == 2 and not g_equal(*routes.values()):
        raise DiscrepancyError(
            "x-route and y-route intervals differ",
            detail={route: [[list(v) for v in e.pos.points], [list(v) for v in e.neg.points]]
                    for route, e in routes.items()},
        )
    return routes


def interval_invariant(p: Presentation) -> GrothElement:
    """Newton interval of dr/dg minus that of (g' - 1), as a difference in dim 1."""
    routes = interval_routes(p)
    route = GENERATORS[0] if GENERATORS[0] in routes else GENERATORS[1]
    logger.info("interval invariant of %s via route %s", p.relator, route)
    return routes[route]


# ============================================================================
# Non-cancellation
# ============================================================================

def _grid_polytopes(coords: Sequence[int]) -> List[IntegralPolytope]:
    pts = list(product(coords, repeat=2))
    found: Dict[Tuple[Point, ...], IntegralPolytope] = {}
    for k in range(1, len(pts) + 1):
        for subset in combinations(pts, k):
            P = hull(subset)
            found.setdefault(P.points, P)
    return sorted(found.values(), key=lambda P: (len(P.points), P.points))


def _markings(P: IntegralPolytope) -> List[MarkedPolytope]:
    idx = range(len(P.points))
    return [MarkedPolytope(P, frozenset(c)) for k in range(len(P.points) + 1) for c in combinations(idx, k)]


def find_noncancellation_witness(
    coords: Sequence[int] = (0, 1, 2), require_mixed: bool = True,
) -> Optional[Tuple[MarkedPolytope, MarkedPolytope, MarkedPolytope]]:
    """First (M, N, N') with N != N' and M + N == M + N' over a grid.

    With ``require_mixed`` M carries both marked and unmarked vertices: an
    unmarked M erases every marking and a fully marked M always cancels.
    """
    polytopes = _grid_polytopes(coords)
    for P in polytopes:
        for M in _markings(P):
            if require_mixed and not 0 < len(M.marked) < len(P.points):
                continue
            for Q in polytopes:
                seen: Dict[MarkedPolytope, MarkedPolytope] = {}
                for N in _markings(Q):
                    total = marked_sum(M, N)
                    if total in seen:
                        return M, seen[total], N
                    seen[total] = N
    return None
