"""
The Grothendieck group of integral polytopes.

An element is a formal difference ``pos - neg`` of two polytopes. Minkowski
addition is cancellative, so two differences are equal exactly when their
cross sums are translates of each other; no canonical representative is ever
computed.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from .errors import InputError, UnsupportedError
from .lattice import (
    Direction,
    IntegralPolytope,
    dilate,
    erode,
    hull,
    min_face,
    minkowski_sum,
    mirror,
    thickness,
    translation_eq,
)

logger = logging.getLogger("polytope_invariants.grothendieck")

Matrix = Sequence[Sequence[int]]


@dataclass(frozen=True, eq=False)
class GrothElement:
    """The class of ``pos - neg``; ``==`` is the group equality."""

    pos: IntegralPolytope
    neg: IntegralPolytope

    def __post_init__(self):
        if self.pos.dim != self.neg.dim:
            raise InputError(
                f"components of different dimension: {self.pos.dim} vs {self.neg.dim}",
                code="dimension_mismatch",
            )

    @property
    def dim(self) -> int:
        return self.pos.dim

    def __eq__(self, other):
        if not isinstance(other, GrothElement):
            return NotImplemented
        return g_equal(self, other)

    __hash__ = None

    def __add__(self, other: "GrothElement") -> "GrothElement":
        return g_add(self, other)

    def __sub__(self, other: "GrothElement") -> "GrothElement":
        return g_add(self, g_neg(other))

    def __neg__(self) -> "GrothElement":
        return g_neg(self)

    def __mul__(self, k: int) -> "GrothElement":
        return g_scale(self, k)

    __rmul__ = __mul__


def _origin(dim: int) -> IntegralPolytope:
    return hull([(0,) * dim])


def zero(dim: int) -> GrothElement:
    origin = _origin(dim)
    return GrothElement(origin, origin)


def from_polytope(P: IntegralPolytope) -> GrothElement:
    return GrothElement(P, _origin(P.dim))


def difference(P: IntegralPolytope, Q: IntegralPolytope) -> GrothElement:
    return GrothElement(P, Q)


def _require_same_dim(E: GrothElement, F: GrothElement) -> None:
    if E.dim != F.dim:
        raise InputError(f"dimension mismatch: {E.dim} vs {F.dim}", code="dimension_mismatch")


def g_equal(E: GrothElement, F: GrothElement) -> bool:
    _require_same_dim(E, F)
    return translation_eq(minkowski_sum(E.pos, F.neg), minkowski_sum(F.pos, E.neg))


def g_add(E: GrothElement, F: GrothElement) -> GrothElement:
    _require_same_dim(E, F)
    return GrothElement(minkowski_sum(E.pos, F.pos), minkowski_sum(E.neg, F.neg))


def g_neg(E: GrothElement) -> GrothElement:
    return GrothElement(E.neg, E.pos)


def g_scale(E: GrothElement, k: int) -> GrothElement:
    scaled = GrothElement(dilate(E.pos, abs(k)), dilate(E.neg, abs(k)))
    return scaled if k >= 0 else g_neg(scaled)


def g_mirror(E: GrothElement) -> GrothElement:
    return GrothElement(mirror(E.pos), mirror(E.neg))


def symmetrize_double(E: GrothElement) -> GrothElement:
    """E + mirror(E), i.e. twice the symmetrization, kept integral."""
    return g_add(E, g_mirror(E))


def g_thickness(E: GrothElement, phi: Union[Direction, Sequence[int]]) -> int:
    return thickness(E.pos, phi) - thickness(E.neg, phi)


def polytope_representative(E: GrothElement) -> Optional[IntegralPolytope]:
    """The polytope R with E == R - point, or None (dim <= 2)."""
    if E.dim > 2:
        raise UnsupportedError(
            "polytope test is only supported in dimension <= 2",
            detail={"dim": E.dim}, code="unsupported_dimension",
        )
    return erode(E.pos, E.neg)


def is_polytope(E: GrothElement) -> bool:
    return polytope_representative(E) is not None


def _apply(L: Matrix, p: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, p)) for row in L)


def _check_matrix(L: Matrix, n: int) -> Tuple[Tuple[int, ...], ...]:
    rows = tuple(tuple(int(a) for a in row) for row in L)
    if not rows or any(len(row) != n for row in rows):
        raise InputError(
            f"linear map must have {n} columns and at least one row",
            detail={"shape": [len(rows), [len(r) for r in rows]]}, code="shape_mismatch",
        )
    return rows


def push(E: GrothElement, L: Matrix) -> GrothElement:
    """Image of E under the integral linear map L (m x n)."""
    rows = _check_matrix(L, E.dim)
    return GrothElement(
        hull(_apply(rows, p) for p in E.pos.points),
        hull(_apply(rows, p) for p in E.neg.points),
    )


def amalgam(
    EA: GrothElement, EB: GrothElement, EC: GrothElement,
    La: Matrix, Lb: Matrix, Lc: Matrix,
) -> GrothElement:
    """a_*(EA) + b_*(EB) - c_*(EC) for an amalgamated product A *_C B."""
    return g_add(g_add(push(EA, La), push(EB, Lb)), g_neg(push(EC, Lc)))


def fibration_scale(EK: GrothElement, L: Matrix, chi: int) -> GrothElement:
    """i_*(EK) scaled by the Euler characteristic of the base."""
    return g_scale(push(EK, L), chi)


def duality_holds(E: GrothElement, n: int) -> bool:
    sign = 1 if (n + 1) % 2 == 0 else -1
    return g_equal(E, g_scale(g_mirror(E), sign))


def s_equivalent(
    E: GrothElement,
    phi: Union[Direction, Sequence[int]],
    psi: Union[Direction, Sequence[int]],
) -> bool:
    """phi and psi pick out the same minimal faces of both components."""
    return all(
        frozenset(min_face(P, phi)) == frozenset(min_face(P, psi))
        for P in (E.pos, E.neg)
    )


def s_equivalence_witness(
    E: GrothElement,
    F: GrothElement,
    phi: Union[Direction, Sequence[int]],
    psi: Union[Direction, Sequence[int]],
) -> Optional[dict]:
    """Report when two representatives of one class disagree on s_equivalent."""
    if not g_equal(E, F):
        raise InputError("representatives of different classes", code="not_equivalent")
    left, right = s_equivalent(E, phi, psi), s_equivalent(F, phi, psi)
    if left == right:
        return None
    logger.warning("S-equivalence depends on the representative (%s vs %s)", left, right)
    return {"first": left, "second": right}
