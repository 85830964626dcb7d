"""Closed-form geometric constructions for circle packing.

Hats (corner-rounded triangles), incircles, twincircles, split keys and
critical densities, plus the low-level convex-distance primitives that the
independent verifier builds on.

All lengths and areas are plain double precision; tolerances elsewhere in the
package are expressed relative to the container scale.
"""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence, Union

from .errors import InvalidParameterError, UnsupportedContainerError

SQRT2 = math.sqrt(2.0)

# Fraction of a square's area that can always be packed: pi / (3 + 2*sqrt(2)).
PHI_SQUARE = math.pi / (3.0 + 2.0 * SQRT2)

# Apex angles at least pi/2 minus this slack classify as non-acute, so right
# triangles built from floating-point side lengths (3, 4, 5, ...) qualify.
RIGHT_ANGLE_SLACK = 1e-9


class Point(NamedTuple):
    x: float
    y: float


class SplitKey(NamedTuple):
    """Target area pair (f1, f2) for weighted splitting; both positive."""

    f1: float
    f2: float


class HatDimensions(NamedTuple):
    """Measurements of a right isosceles hat with incircle area a, rounding b.

    h         -- height of the underlying triangle (apex above the base)
    w         -- width along the base, both base corners rounded
    d         -- extent along a leg from the apex to a rounded base corner
    w_corner  -- width when one base corner is left sharp
    d_corner  -- leg extent when the base corner is left sharp (= d at b=0)
    """

    h: float
    w: float
    d: float
    w_corner: float
    d_corner: float


def _as_point(p) -> Point:
    if type(p) is Point:
        return p
    return Point(float(p[0]), float(p[1]))


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        center = _as_point(self.center)
        r = float(self.radius)
        if not (math.isfinite(r) and r > 0.0):
            raise InvalidParameterError(f"circle radius must be positive, got {r!r}")
        if not all(math.isfinite(c) for c in center):
            raise InvalidParameterError("circle center must be finite")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", r)

    @property
    def area(self) -> float:
        return math.pi * self.radius * self.radius


@dataclass(frozen=True)
class Square:
    """Axis-aligned square with its lower-left corner at the origin."""

    side: float

    def __post_init__(self):
        s = float(self.side)
        if not (math.isfinite(s) and s > 0.0):
            raise InvalidParameterError(f"square side must be positive, got {s!r}")
        object.__setattr__(self, "side", s)

    @property
    def area(self) -> float:
        return self.side * self.side

    def corners(self) -> tuple[Point, Point, Point, Point]:
        s = self.side
        return (Point(0.0, 0.0), Point(s, 0.0), Point(s, s), Point(0.0, s))


@dataclass(frozen=True)
class Triangle:
    """Triangle with counterclockwise vertices (clockwise input is flipped).

    The canonical decomposition used throughout treats the longest side as the
    base; for non-acute triangles the apex then carries the largest angle and
    the foot of its altitude lies strictly inside the base.
    """

    vertices: tuple[Point, Point, Point]

    def __post_init__(self):
        if len(self.vertices) != 3:
            raise InvalidParameterError("a triangle needs exactly three vertices")
        pts = tuple(_as_point(p) for p in self.vertices)
        if not all(math.isfinite(c) for p in pts for c in p):
            raise InvalidParameterError("triangle vertices must be finite")
        (ax, ay), (bx, by), (cx, cy) = pts
        doubled = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        if doubled < 0.0:
            pts = (pts[0], pts[2], pts[1])
            doubled = -doubled
        if doubled <= 0.0:
            raise InvalidParameterError("degenerate triangle")
        object.__setattr__(self, "vertices", pts)

    @classmethod
    def from_sides(cls, x: float, y: float, z: float) -> "Triangle":
        """Canonical-frame triangle: longest side on the x-axis from the origin.

        The lengths are read cyclically and rotated so that the longest one
        becomes the base; the first remaining length is the left side |AC|,
        the second the right side |BC|. All cyclic rotations of the same
        tuple therefore produce the same triangle.
        """
        sides = (float(x), float(y), float(z))
        if not all(math.isfinite(s) and s > 0.0 for s in sides):
            raise InvalidParameterError(f"side lengths must be positive, got {sides}")
        k = max(range(3), key=lambda i: sides[i])
        left, right, base = sides[(k + 1) % 3], sides[(k + 2) % 3], sides[k]
        if left + right <= base:
            raise InvalidParameterError(f"side lengths {sides} violate the triangle inequality")
        cx = (base * base + left * left - right * right) / (2.0 * base)
        cy_sq = left * left - cx * cx
        if cy_sq <= 0.0:
            raise InvalidParameterError(f"side lengths {sides} give a degenerate triangle")
        return cls((Point(0.0, 0.0), Point(base, 0.0), Point(cx, math.sqrt(cy_sq))))

    @cached_property
    def side_lengths(self) -> tuple[float, float, float]:
        """(|v0 v1|, |v1 v2|, |v2 v0|)."""
        v = self.vertices
        return (
            math.dist(v[0], v[1]),
            math.dist(v[1], v[2]),
            math.dist(v[2], v[0]),
        )

    @cached_property
    def area(self) -> float:
        (ax, ay), (bx, by), (cx, cy) = self.vertices
        return 0.5 * abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))

    @cached_property
    def _base_index(self) -> int:
        sides = self.side_lengths
        return max(range(3), key=lambda i: sides[i])

    @property
    def base_length(self) -> float:
        return self.side_lengths[self._base_index]

    @cached_property
    def base_split(self) -> tuple[Point, Point, Point]:
        """(left base vertex, right base vertex, apex); base = longest side.

        "Left" and "right" follow the counterclockwise traversal of the base
        edge, so the apex lies to the left of the directed base.
        """
        i = self._base_index
        v = self.vertices
        return (v[i], v[(i + 1) % 3], v[(i + 2) % 3])

    @staticmethod
    def _angle(at: Point, p: Point, q: Point) -> float:
        ux, uy = p.x - at.x, p.y - at.y
        vx, vy = q.x - at.x, q.y - at.y
        return math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)

    @cached_property
    def alpha(self) -> float:
        """Base angle at the left base vertex."""
        left, right, apex = self.base_split
        return self._angle(left, right, apex)

    @cached_property
    def beta(self) -> float:
        """Base angle at the right base vertex."""
        left, right, apex = self.base_split
        return self._angle(right, left, apex)

    @cached_property
    def apex_angle(self) -> float:
        left, right, apex = self.base_split
        return self._angle(apex, left, right)

    @property
    def is_non_acute(self) -> bool:
        return self.apex_angle >= math.pi / 2.0 - RIGHT_ANGLE_SLACK

    @cached_property
    def altitude_foot(self) -> Point:
        """Foot of the apex altitude on the base line."""
        left, right, apex = self.base_split
        bx, by = right.x - left.x, right.y - left.y
        t = ((apex.x - left.x) * bx + (apex.y - left.y) * by) / (bx * bx + by * by)
        return Point(left.x + t * bx, left.y + t * by)

    def scaled_about(self, anchor, factor: float) -> "Triangle":
        """Similar copy scaled by ``factor`` about the fixed point ``anchor``."""
        ax, ay = _as_point(anchor)
        return Triangle(
            tuple(Point(ax + factor * (p.x - ax), ay + factor * (p.y - ay)) for p in self.vertices)
        )


def _inradius(t: Triangle) -> float:
    return 2.0 * t.area / sum(t.side_lengths)


def _triangle_fast(v0: Point, v1: Point, v2: Point, base_split=None) -> Triangle:
    """Trusted constructor: vertices must already be CCW and non-degenerate.

    Used on the packer's hot path where the triangles are built from an
    already-validated parent; optionally seeds the base decomposition cache.
    """
    t = object.__new__(Triangle)
    object.__setattr__(t, "vertices", (v0, v1, v2))
    if base_split is not None:
        t.__dict__["base_split"] = base_split
    return t


def _hat_fast(triangle: Triangle, rounding_radius: float) -> "Hat":
    """Trusted constructor: the triangle must be non-acute and the rounding
    radius within [0, inradius]."""
    h = object.__new__(Hat)
    object.__setattr__(h, "triangle", triangle)
    object.__setattr__(h, "rounding_radius", rounding_radius)
    return h


def _circle_fast(center: Point, radius: float) -> "Circle":
    """Trusted constructor: center must be a finite Point, radius positive."""
    c = object.__new__(Circle)
    object.__setattr__(c, "center", center)
    object.__setattr__(c, "radius", radius)
    return c


@dataclass(frozen=True)
class Hat:
    """A non-acute triangle whose three corners are rounded to a given radius.

    The shape is the morphological opening of the triangle: equivalently the
    convex hull of three disks of the rounding radius centered on the corners
    of the triangle shrunk inward by that radius along both adjacent sides.
    Rounding zero gives the bare triangle; rounding equal to the inradius
    degenerates the hat to its incircle.
    """

    triangle: Triangle
    rounding_radius: float = 0.0

    def __post_init__(self):
        if not self.triangle.is_non_acute:
            raise InvalidParameterError("hat triangles must be right or obtuse")
        s = float(self.rounding_radius)
        if not (math.isfinite(s) and s >= 0.0):
            raise InvalidParameterError(f"rounding radius must be non-negative, got {s!r}")
        r = _inradius(self.triangle)
        if s > r * (1.0 + 1e-9):
            raise InvalidParameterError("rounding radius exceeds the triangle's inradius")
        object.__setattr__(self, "rounding_radius", min(s, r))

    @classmethod
    def from_rounding_area(cls, triangle: Triangle, rounding_area: float) -> "Hat":
        if rounding_area < 0.0:
            raise InvalidParameterError("rounding area must be non-negative")
        return cls(triangle, math.sqrt(rounding_area / math.pi))

    @property
    def rounding_area(self) -> float:
        s = self.rounding_radius
        return math.pi * s * s

    @cached_property
    def incircle(self) -> Circle:
        return triangle_incircle(self.triangle)

    @property
    def incircle_area(self) -> float:
        r = self.incircle.radius
        return math.pi * r * r

    def eroded_corners(self) -> tuple[Point, Point, Point]:
        """Corners of the triangle shrunk inward by the rounding radius.

        Shrinking all sides inward by s is the homothety about the incenter
        with ratio (R - s) / R, so the result stays exactly similar.
        """
        s = self.rounding_radius
        if s == 0.0:
            return self.triangle.vertices
        center = self.incircle.center
        k = (self.incircle.radius - s) / self.incircle.radius
        return tuple(
            Point(center.x + k * (p.x - center.x), center.y + k * (p.y - center.y))
            for p in self.triangle.vertices
        )

    def boundary_polyline(self, arc_steps: int = 16) -> list[Point]:
        """Counterclockwise polygonization of the hat boundary (convex)."""
        s = self.rounding_radius
        corners = self.eroded_corners()
        if s == 0.0:
            return list(corners)
        verts = self.triangle.vertices
        normals = []
        for i in range(3):
            (x1, y1), (x2, y2) = verts[i], verts[(i + 1) % 3]
            ln = math.hypot(x2 - x1, y2 - y1)
            normals.append(((y2 - y1) / ln, -(x2 - x1) / ln))  # outward for CCW
        points: list[Point] = []
        for i in range(3):
            n_in = normals[(i + 2) % 3]  # normal of the edge arriving at corner i
            n_out = normals[i]           # normal of the edge leaving corner i
            a0 = math.atan2(n_in[1], n_in[0])
            a1 = math.atan2(n_out[1], n_out[0])
            while a1 < a0:
                a1 += 2.0 * math.pi
            cx, cy = corners[i]
            for k in range(arc_steps + 1):
                ang = a0 + (a1 - a0) * k / arc_steps
                points.append(Point(cx + s * math.cos(ang), cy + s * math.sin(ang)))
        return points


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def hat_dimensions(a: float, b: float = 0.0) -> HatDimensions:
    """Measurements of a right isosceles hat with incircle area a, rounding b.

    With r, s the radii of circles of areas a and b:

        h        = r (1 + sqrt 2)
        w        = r (2 + 2 sqrt 2) - s * 2 sqrt 2
        d        = r (2 + sqrt 2) - s * sqrt 2
        w_corner = w + s * sqrt 2
        d_corner = r (2 + sqrt 2)
    """
    if not (math.isfinite(a) and a > 0.0):
        raise InvalidParameterError(f"incircle area must be positive, got {a!r}")
    if not (math.isfinite(b) and 0.0 <= b <= a):
        raise InvalidParameterError(f"rounding area must lie in [0, a], got {b!r}")
    r = math.sqrt(a / math.pi)
    s = math.sqrt(b / math.pi)
    h = r * (1.0 + SQRT2)
    w = r * (2.0 + 2.0 * SQRT2) - s * 2.0 * SQRT2
    d = r * (2.0 + SQRT2) - s * SQRT2
    w_corner = w + s * SQRT2
    d_corner = r * (2.0 + SQRT2)
    return HatDimensions(h, w, d, w_corner, d_corner)


def triangle_incircle(t: Triangle) -> Circle:
    """Largest inscribed circle: radius area/semiperimeter, center the incenter."""
    s01, s12, s20 = t.side_lengths
    v0, v1, v2 = t.vertices
    # incenter weights are the lengths of the opposite sides
    w0, w1, w2 = s12, s20, s01
    perimeter = s01 + s12 + s20
    cx = (w0 * v0.x + w1 * v1.x + w2 * v2.x) / perimeter
    cy = (w0 * v0.y + w1 * v1.y + w2 * v2.y) / perimeter
    return Circle(Point(cx, cy), 2.0 * t.area / perimeter)


def square_twincircles(side: float) -> tuple[Circle, Circle]:
    """The two largest equal circles packable into the square.

    They sit on the main diagonal, tangent to each other and to two sides
    each, with radius side / (2 + sqrt 2); their combined area is
    PHI_SQUARE * side^2.
    """
    if not (math.isfinite(side) and side > 0.0):
        raise InvalidParameterError(f"square side must be positive, got {side!r}")
    r = side / (2.0 + SQRT2)
    return (
        Circle(Point(r, r), r),
        Circle(Point(side - r, side - r), r),
    )


def critical_density(container: Union[Square, Triangle]) -> float:
    """Fraction of the container's area that is guaranteed packable.

    Squares: pi / (3 + 2 sqrt 2). Non-acute triangles with side lengths
    x, y, z: the incircle-to-triangle area ratio

        pi * sqrt((x+y-z)(z+x-y)(y+z-x) / (x+y+z)^3).

    Acute triangles are not supported.
    """
    if isinstance(container, Square):
        return PHI_SQUARE
    if isinstance(container, Triangle):
        if not container.is_non_acute:
            raise UnsupportedContainerError("acute triangle containers are not supported")
        x, y, z = container.side_lengths
        numerator = (x + y - z) * (z + x - y) * (y + z - x)
        return math.pi * math.sqrt(numerator / (x + y + z) ** 3)
    raise UnsupportedContainerError(f"unsupported container type: {type(container).__name__}")


def altitude_halves(t: Triangle) -> tuple[Triangle, Triangle]:
    """Split a non-acute triangle through the apex, orthogonal to the base.

    Returns the two right triangles (left half, right half); each has its
    right angle at the altitude foot.
    """
    left, right, apex = t.base_split
    foot = t.altitude_foot
    bx, by = right.x - left.x, right.y - left.y
    t_param = ((foot.x - left.x) * bx + (foot.y - left.y) * by) / (bx * bx + by * by)
    if not (0.0 < t_param < 1.0):
        raise InvalidParameterError(
            "altitude foot lies outside the base; the triangle must be non-acute"
        )
    return (Triangle((left, foot, apex)), Triangle((foot, right, apex)))


def hat_split_key(h: Union[Hat, Triangle]) -> SplitKey:
    """Incircle areas (f1, f2) of the two altitude halves of the underlying triangle."""
    t = h.triangle if isinstance(h, Hat) else h
    half1, half2 = altitude_halves(t)
    r1 = _inradius(half1)
    r2 = _inradius(half2)
    return SplitKey(math.pi * r1 * r1, math.pi * r2 * r2)


# ---------------------------------------------------------------------------
# Distance primitives
# ---------------------------------------------------------------------------

def signed_distance(p, t: Triangle) -> float:
    """Minimum inward distance from p to the triangle's side lines.

    Positive inside, zero on the boundary, negative outside (relative to the
    nearest side line, which for convex containment checks errs on the safe
    side beyond a vertex).
    """
    px, py = float(p[0]), float(p[1])
    v = t.vertices
    best = math.inf
    for i in range(3):
        x1, y1 = v[i]
        x2, y2 = v[(i + 1) % 3]
        dx, dy = x2 - x1, y2 - y1
        d = ((px - x1) * (-dy) + (py - y1) * dx) / math.hypot(dx, dy)
        if d < best:
            best = d
    return best


def point_segment_distance(p, a, b) -> float:
    """Euclidean distance from point p to the segment a-b."""
    px, py = float(p[0]), float(p[1])
    ax, ay = float(a[0]), float(a[1])
    bx, by = float(b[0]), float(b[1])
    dx, dy = bx - ax, by - ay
    denom = dx * dx + dy * dy
    if denom == 0.0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / denom
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def segment_segment_distance(p1, p2, q1, q2) -> float:
    """Euclidean distance between two segments (0 if they intersect).

    Crossings are detected parametrically; for (near-)parallel segments the
    endpoint distances are exact, so collinear but disjoint segments never
    report a spurious intersection.
    """
    rpx, rpy = p2[0] - p1[0], p2[1] - p1[1]
    rqx, rqy = q2[0] - q1[0], q2[1] - q1[1]
    denom = rpx * rqy - rpy * rqx
    if abs(denom) > 1e-12 * math.hypot(rpx, rpy) * math.hypot(rqx, rqy):
        wx, wy = q1[0] - p1[0], q1[1] - p1[1]
        t = (wx * rqy - wy * rqx) / denom
        u = (wx * rpy - wy * rpx) / denom
        if 0.0 <= t <= 1.0 and 0.0 <= u <= 1.0:
            return 0.0
    return min(
        point_segment_distance(p1, q1, q2),
        point_segment_distance(p2, q1, q2),
        point_segment_distance(q1, p1, p2),
        point_segment_distance(q2, p1, p2),
    )


def _polygon_area2(pts: Sequence[Point]) -> float:
    total = 0.0
    n = len(pts)
    for i in range(n):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % n]
        total += x1 * y2 - y1 * x2
    return total


def _contains_any(poly: Sequence[Point], pts: Sequence[Point]) -> bool:
    if len(poly) < 3 or _polygon_area2(poly) <= 0.0:
        return False
    n = len(poly)
    for px, py in pts:
        inside = True
        for i in range(n):
            x1, y1 = poly[i]
            x2, y2 = poly[(i + 1) % n]
            if (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1) < 0.0:
                inside = False
                break
        if inside:
            return True
    return False


def convex_polygon_distance(pa: Sequence, pb: Sequence) -> float:
    """Minimum Euclidean distance between two convex CCW point sets.

    Returns 0 when the convex hulls intersect or touch. Degenerate inputs
    (segments, single points) are accepted.
    """
    a = [_as_point(p) for p in pa]
    b = [_as_point(p) for p in pb]
    if not a or not b:
        raise InvalidParameterError("point lists must be non-empty")
    if _contains_any(a, b) or _contains_any(b, a):
        return 0.0

    def edges(pts):
        if len(pts) == 1:
            return [(pts[0], pts[0])]
        return [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]

    best = math.inf
    for ea in edges(a):
        for eb in edges(b):
            d = segment_segment_distance(ea[0], ea[1], eb[0], eb[1])
            if d < best:
                best = d
                if best == 0.0:
                    return 0.0
    return best
