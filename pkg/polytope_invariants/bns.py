"""
BNS-invariant queries, thickness and splitting complexity.

Everything here reads off the marked polytope of a nice presentation
(b1 = 2) or the interval invariant (b1 = 1). A character phi lies in the
BNS invariant exactly when it pairs maximally with a marked vertex, so the
invariant is the union of the open normal cones of the marked vertices.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import List, Sequence, Union

from .errors import UnsupportedError, ValidationError
from .grothendieck import GrothElement, from_polytope, g_scale, g_thickness
from .lattice import Direction, NormalArc, dilate, normal_arcs, thickness
from .marked import MarkedPolytope, interval_invariant, marked_invariant, walk_polytope
from .words import GENERATORS, Presentation

logger = logging.getLogger("polytope_invariants.bns")

Covector = Union[Direction, Sequence[int]]


class BnsKind(str, Enum):
    FULL_CIRCLE = "full_circle"
    EMPTY = "empty"
    ARCS = "arcs"


@dataclass(frozen=True)
class BnsReport:
    """Sigma as a union of open arcs; each arc runs CCW from start to end."""

    kind: BnsKind
    arcs: List[NormalArc] = field(default_factory=list)

    def contains(self, phi: Covector) -> bool:
        if self.kind == BnsKind.FULL_CIRCLE:
            return True
        return any(arc.contains(phi) for arc in self.arcs)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "arcs": [[list(arc.start), list(arc.end)] for arc in self.arcs],
        }


def pairs_maximally(M: MarkedPolytope, phi: Covector) -> bool:
    """True iff the phi-maximal vertex of M is unique and marked."""
    d = Direction.checked(phi, M.dim)
    values = [d(v) for v in M.polytope.points]
    top = max(values)
    winners = [i for i, value in enumerate(values) if value == top]
    return len(winners) == 1 and winners[0] in M.marked


def _require_b1_two(p: Presentation, what: str) -> None:
    if p.b1 != 2:
        raise UnsupportedError(
            f"{what} is only supported for b1 = 2",
            detail={"b1": p.b1, "relator": str(p.relator)}, code="unsupported_b1",
        )


def bns_member(p: Presentation, phi: Covector, route: str = "x") -> bool:
    _require_b1_two(p, "BNS membership")
    return pairs_maximally(marked_invariant(p, route), phi)


def bns_arcs(p: Presentation, route: str = "x") -> BnsReport:
    _require_b1_two(p, "BNS invariant")
    M = marked_invariant(p, route)
    if M.polytope.is_point:
        kind = BnsKind.FULL_CIRCLE if M.marked else BnsKind.EMPTY
        return BnsReport(kind)
    arcs = [arc for i, arc in enumerate(normal_arcs(M.polytope)) if i in M.marked]
    logger.debug("%d of %d vertices marked", len(arcs), len(M.polytope.points))
    return BnsReport(BnsKind.ARCS if arcs else BnsKind.EMPTY, arcs)


def kernel_finitely_generated(p: Presentation, phi: Covector, route: str = "x") -> bool:
    """ker(phi) is finitely generated iff both phi and -phi lie in Sigma."""
    _require_b1_two(p, "kernel finite generation")
    M = marked_invariant(p, route)
    d = Direction.checked(phi, 2)
    return pairs_maximally(M, d) and pairs_maximally(M, -d)


def thickness_of(p: Presentation, phi: Covector) -> int:
    """Thickness of the polytope invariant (walk polytope or interval)."""
    if p.b1 == 2:
        value = thickness(walk_polytope(p), Direction.checked(phi, 2))
    else:
        value = g_thickness(interval_invariant(p), Direction.checked(phi, 1))
    if value < 0:
        logger.warning("negative thickness %d for %s; invariant is not a polytope", value, p.relator)
    return value


def thurston_polytope(p: Presentation) -> GrothElement:
    """Twice the polytope invariant, the Thurston norm ball dual for 3-manifold groups."""
    if p.b1 == 2:
        return from_polytope(dilate(walk_polytope(p), 2))
    return g_scale(interval_invariant(p), 2)


def _check_epimorphism(p: Presentation, d: Direction) -> None:
    if not d.is_primitive():
        raise ValidationError(
            "splitting complexity needs a primitive covector",
            detail={"phi": list(d.covector)}, code="not_primitive",
        )
    values = [d(p.abelianization.generator_image(g)) for g in GENERATORS]
    if gcd(*values) != 1:
        raise ValidationError(
            "covector does not induce an epimorphism onto Z",
            detail={"phi": list(d.covector), "generator_values": values}, code="not_epimorphism",
        )


def splitting_complexity(p: Presentation, phi: Covector) -> int:
    d = Direction.checked(phi, p.b1)
    _check_epimorphism(p, d)
    return thickness_of(p, d) + 1
