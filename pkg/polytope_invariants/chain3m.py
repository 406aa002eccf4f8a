"""
Thurston polytope of a closed 3-manifold from a cell structure with one
0-cell, two 1-cells, two 2-cells and one 3-cell.

The cellular chain complex of the universal cover is

    Z[G] --(c1 c2)--> Z[G]^2 --(b_ij)--> Z[G]^2 --(a1 a2)^T--> Z[G]

and for any i, j with c_i and a_j nonvanishing the Thurston polytope is
P(b_{3-i,3-j}) - P(c_i) - P(a_j). Indices below are 1-based in reports and
0-based internally.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DiscrepancyError, InputError, UnsupportedError, ValidationError
from .grothendieck import GrothElement, difference, duality_holds, g_equal, polytope_representative
from .lattice import IntegralPolytope, minkowski_sum
from .words import AbelianizationMap, FreeWordSum, abelianize_fibers, newton_polytope

logger = logging.getLogger("polytope_invariants.chain3m")

FREE_FIBER_CAVEAT = (
    "nonvanishing is tested on free-word fibers; cancellation that only "
    "happens in the group ring of the manifold group is not detected"
)


def _augmentation(f: FreeWordSum) -> int:
    return sum(coef for _, coef in f.terms)


@dataclass(frozen=True)
class ChainComplexData:
    a: Tuple[FreeWordSum, FreeWordSum]
    b: Tuple[Tuple[FreeWordSum, FreeWordSum], Tuple[FreeWordSum, FreeWordSum]]
    c: Tuple[FreeWordSum, FreeWordSum]
    abelianization: Optional[AbelianizationMap] = None

    def __post_init__(self):
        if len(self.a) != 2 or len(self.c) != 2 or len(self.b) != 2 or any(len(row) != 2 for row in self.b):
            raise InputError("chain complex needs a: 2, b: 2x2, c: 2 entries", code="shape_mismatch")
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "c", tuple(self.c))
        object.__setattr__(self, "b", tuple(tuple(row) for row in self.b))
        if self.abelianization is None:
            object.__setattr__(self, "abelianization", AbelianizationMap.from_relations(self.relation_rows()))

    def relation_rows(self) -> List[Tuple[int, int]]:
        """Augmented boundary matrix: row i is the exponent-sum vector of relator i."""
        return [tuple(_augmentation(entry) for entry in row) for row in self.b]

    @property
    def b1(self) -> int:
        return self.abelianization.rank

    def check_b1(self, expected: int) -> None:
        if expected != self.b1:
            raise ValidationError(
                f"declared b1 = {expected} but the boundary matrix gives {self.b1}",
                detail={"declared": expected, "computed": self.b1, "relations": [list(r) for r in self.relation_rows()]},
                code="b1_mismatch",
            )

    def nonvanishing(self, f: FreeWordSum) -> bool:
        return bool(abelianize_fibers(f, self.abelianization))


@dataclass
class ChainResult:
    element: GrothElement
    indices: Tuple[int, int]
    representative: Optional[IntegralPolytope]
    all_indices: List[Tuple[int, int]] = field(default_factory=list)
    skipped: List[Tuple[int, int]] = field(default_factory=list)
    duality: Optional[bool] = None

    @property
    def is_polytope(self) -> bool:
        return self.representative is not None


def _evaluate(d: ChainComplexData, i: int, j: int) -> GrothElement:
    A = d.abelianization
    b = d.b[1 - i][1 - j]
    if not d.nonvanishing(b):
        raise ValidationError(
            f"b_{2 - i}{2 - j} vanishes; the data cannot come from a 3-manifold",
            detail={"indices": [i + 1, j + 1], "caveat": FREE_FIBER_CAVEAT},
            code="boundary_vanishes",
        )
    top = newton_polytope(b, A)
    bottom = minkowski_sum(newton_polytope(d.c[i], A), newton_polytope(d.a[j], A))
    return difference(top, bottom)


def admissible_indices(d: ChainComplexData) -> List[Tuple[int, int]]:
    if d.b1 == 0:
        raise UnsupportedError("first Betti number is zero; there is no lattice", code="b1_zero")
    cs = [i for i in range(2) if d.nonvanishing(d.c[i])]
    as_ = [j for j in range(2) if d.nonvanishing(d.a[j])]
    if not cs or not as_:
        raise UnsupportedError(
            "theorem inapplicable: every c entry or every a entry vanishes",
            detail={"c_nonvanishing": [i + 1 for i in cs], "a_nonvanishing": [j + 1 for j in as_],
                    "caveat": FREE_FIBER_CAVEAT},
            code="theorem_inapplicable",
        )
    return list(product(cs, as_))


def thurston_from_chain(d: ChainComplexData, strict: bool = False) -> ChainResult:
    """P(b_{3-i,3-j}) - P(c_i) - P(a_j) for the smallest admissible (i, j).

    In strict mode every admissible pair with nonvanishing b entry is
    evaluated and the results must agree.
    """
    pairs = admissible_indices(d)
    i, j = pairs[0]
    logger.debug("chain complex: admissible pairs %s, using (%d, %d)", pairs, i + 1, j + 1)
    element = _evaluate(d, i, j)
    result = ChainResult(
        element=element,
        indices=(i + 1, j + 1),
        representative=polytope_representative(element) if element.dim <= 2 else None,
        all_indices=[(i + 1, j + 1)],
    )
    if strict:
        for pi, pj in pairs[1:]:
            if not d.nonvanishing(d.b[1 - pi][1 - pj]):
                logger.info("strict mode: skipping (%d, %d), boundary entry vanishes", pi + 1, pj + 1)
                result.skipped.append((pi + 1, pj + 1))
                continue
            other = _evaluate(d, pi, pj)
            if not g_equal(element, other):
                raise DiscrepancyError(
                    "index choices give different polytopes",
                    detail={
                        "first": [i + 1, j + 1],
                        "second": [pi + 1, pj + 1],
                        "caveat": FREE_FIBER_CAVEAT,
                    },
                )
            result.all_indices.append((pi + 1, pj + 1))
    return result


def check_duality(element: GrothElement) -> bool:
    """Closed 3-manifold polytopes are centrally symmetric; warn when not."""
    holds = duality_holds(element, 3)
    if not holds:
        logger.warning("duality check failed: polytope is not symmetric under x -> -x")
    return holds


def chain_from_entries(
    a: Sequence[FreeWordSum],
    b: Sequence[Sequence[FreeWordSum]],
    c: Sequence[FreeWordSum],
    b1: Optional[int] = None,
) -> ChainComplexData:
    d = ChainComplexData(tuple(a), tuple(tuple(row) for row in b), tuple(c))
    if b1 is not None:
        d.check_b1(b1)
    return d


def summary(result: ChainResult) -> Dict[str, object]:
    return {
        "indices": list(result.indices),
        "is_polytope": result.is_polytope,
        "checked_indices": [list(p) for p in result.all_indices],
        "skipped_indices": [list(p) for p in result.skipped],
    }
