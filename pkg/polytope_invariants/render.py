"""
Deterministic SVG pictures of (marked) polytopes on the integer lattice.

The view box is the bounding box of everything drawn plus a margin of one
lattice unit, at SCALE pixels per unit, with y pointing up. Marked vertices
are filled dots, unmarked vertices hollow ones. Identical input gives
byte-identical output.
"""

import logging
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from .errors import UnsupportedError
from .lattice import IntegralPolytope, Point
from .marked import MarkedPolytope

logger = logging.getLogger("polytope_invariants.render")

SCALE = 32
MARGIN = 1
DOT_RADIUS = 4
GRID_STROKE = "#d0d0d0"
HULL_STROKE = "#000000"
HULL_FILL = "#e8eef8"
WALK_STROKE = "#c03030"

Drawable = Union[MarkedPolytope, IntegralPolytope]


def _plane(p: Sequence[int]) -> Point:
    return (p[0], 0) if len(p) == 1 else (p[0], p[1])


class _Canvas:
    def __init__(self, points: List[Point]):
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        self.x0 = min(xs) - MARGIN
        self.y1 = max(ys) + MARGIN
        self.cols = max(xs) - min(xs) + 2 * MARGIN
        self.rows = max(ys) - min(ys) + 2 * MARGIN
        w, h = self.cols * SCALE, self.rows * SCALE
        self.root = ET.Element(
            "svg",
            xmlns="http://www.w3.org/2000/svg",
            version="1.1",
            width=f"{w}px",
            height=f"{h}px",
            viewBox=f"0 0 {w} {h}",
        )

    def xy(self, p: Point) -> Tuple[int, int]:
        return (p[0] - self.x0) * SCALE, (self.y1 - p[1]) * SCALE

    def grid(self) -> None:
        g = ET.SubElement(self.root, "g", stroke=GRID_STROKE)
        for c in range(self.cols + 1):
            x = c * SCALE
            ET.SubElement(g, "line", x1=str(x), y1="0", x2=str(x), y2=str(self.rows * SCALE))
        for r in range(self.rows + 1):
            y = r * SCALE
            ET.SubElement(g, "line", x1="0", y1=str(y), x2=str(self.cols * SCALE), y2=str(y))

    def path(self, pts: Sequence[Point], closed: bool, **attrs) -> None:
        coords = [self.xy(p) for p in pts]
        d = "M{} {}".format(*coords[0]) + "".join("L{} {}".format(*c) for c in coords[1:])
        if closed:
            d += "z"
        ET.SubElement(self.root, "path", d=d, **attrs)

    def dot(self, p: Point, filled: bool) -> None:
        cx, cy = self.xy(p)
        ET.SubElement(
            self.root, "circle",
            cx=str(cx), cy=str(cy), r=str(DOT_RADIUS),
            fill=HULL_STROKE if filled else "#ffffff",
            stroke=HULL_STROKE,
        )


def render_svg(
    obj: Drawable,
    path: Optional[Union[str, Path]] = None,
    walk: Optional[Sequence[Sequence[int]]] = None,
) -> str:
    """SVG text for a polytope or marked polytope; written to ``path`` if given.

    An unmarked polytope draws every vertex hollow. ``walk`` overlays a
    lattice walk (e.g. the trace of a relator).
    """
    M = obj if isinstance(obj, MarkedPolytope) else None
    P = obj.polytope if M is not None else obj
    if P.dim > 2:
        raise UnsupportedError(
            "SVG rendering is only supported in dimension <= 2",
            detail={"dim": P.dim}, code="unsupported_dimension",
        )
    verts = [_plane(v) for v in P.points]
    trace = [_plane(p) for p in walk] if walk else []
    canvas = _Canvas(verts + trace)
    canvas.grid()
    if len(verts) > 1:
        canvas.path(verts, closed=len(verts) > 2, fill=HULL_FILL, stroke=HULL_STROKE)
    if trace:
        canvas.path(trace, closed=False, fill="none", stroke=WALK_STROKE)
    for i, v in enumerate(verts):
        canvas.dot(v, filled=M is not None and i in M.marked)
    text = ET.tostring(canvas.root, encoding="unicode") + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        logger.info("wrote %s (%d bytes)", path, len(text))
    return text
