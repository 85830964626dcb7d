"""Recursive worst-case-optimal packing into squares and non-acute triangles.

The construction subdivides the container into "hats" (corner-rounded
triangles). A square with guaranteed-packable (twincircle) area a is covered
by two right isosceles half-square hats anchored in opposite corners, with
split key (a/2, a/2); the half-square's incircle area equals half the
twincircle area, so this is the same anchored-scaled-half construction used
for general hats. A hat container is split through its apex into two right
altitude halves: each subset of circles gets the matching half scaled about
the shared base vertex by sqrt(subset_area / half_incircle_area) and rounded
by its minimum-size guarantee. Recursion bottoms out by placing a lone circle
concentric with its hat's incircle.

All placements are produced directly in world coordinates.
"""

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .errors import (
    ConjugacyError,
    InvalidParameterError,
    OverCapacityError,
    UnsupportedContainerError,
)
from .geometry import (
    PHI_SQUARE,
    Circle,
    Hat,
    Point,
    SplitKey,
    Square,
    Triangle,
    altitude_halves,
    triangle_incircle,
    _circle_fast,
    _hat_fast,
    _inradius,
    _triangle_fast,
)
from .splitting import CircleSet, min_guarantee, split, weighted_split

# Closed capacity bound: instances sitting exactly on the worst case must pass.
FEASIBILITY_REL_SLACK = 1e-12

# Scale factors this close to 1 snap to exactly 1, so self-similar
# power-of-two instances reproduce the exact subdivision.
_SNAP_REL_TOL = 1e-12

# Preconditions of the placement operations are checked with this relative
# slack; the verifier is the actual oracle for the produced geometry.
_PLACEMENT_REL_TOL = 1e-9

Shape = Union[Square, Hat, Circle]


@dataclass
class PackingNode:
    """Node of a packing tree.

    The root carries the user's container. A hat node has either two hat
    children or a single circle child (its incircle); circle nodes are leaves
    and remember the originating input area and position.
    """

    shape: Shape
    children: list["PackingNode"] = field(default_factory=list)
    payload: Optional[float] = None
    input_index: Optional[int] = None

    def walk(self) -> Iterator[tuple["PackingNode", int]]:
        """Iterative preorder traversal yielding (node, depth)."""
        stack: list[tuple[PackingNode, int]] = [(self, 0)]
        while stack:
            node, depth = stack.pop()
            yield node, depth
            for child in reversed(node.children):
                stack.append((child, depth + 1))

    def circle_leaves(self) -> list["PackingNode"]:
        return [n for n, _ in self.walk() if isinstance(n.shape, Circle)]

    def hat_nodes(self) -> list["PackingNode"]:
        return [n for n, _ in self.walk() if isinstance(n.shape, Hat)]


@dataclass(frozen=True)
class PackRequest:
    """A container, the circle areas to pack, and an optional minimum size.

    The request is feasible when the combined area does not exceed the
    container's guaranteed-packable area (twincircle area for squares,
    incircle area for triangles) and every circle is at least ``min_size``.
    """

    container: Union[Square, Triangle]
    circles: CircleSet
    min_size: float = 0.0


@dataclass
class PackStats:
    """Counters filled in by :func:`pack` when passed as its ``stats`` argument."""

    split_calls: int = 0
    element_moves: int = 0
    hat_count: int = 0
    scale_factors: list[float] = field(default_factory=list)
    max_depth: int = 0


def packable_area(container: Union[Square, Triangle]) -> float:
    """Largest combined circle area the container is guaranteed to pack."""
    if isinstance(container, Square):
        return PHI_SQUARE * container.side * container.side
    if isinstance(container, Triangle):
        if not container.is_non_acute:
            raise UnsupportedContainerError("acute triangle containers are not supported")
        r = _inradius(container)
        return math.pi * r * r
    raise UnsupportedContainerError(f"unsupported container type: {type(container).__name__}")


def _check_tuples(
    a_total: float,
    b_floor: float,
    key: SplitKey,
    first: tuple[float, float],
    second: tuple[float, float],
) -> None:
    (a1, b1), (a2, b2) = first, second
    f1, f2 = key
    tol = _PLACEMENT_REL_TOL * max(a_total, 1e-300)
    if a1 < -tol or a2 < -tol:
        raise ConjugacyError("conjugatedness violation: negative subset area")
    if a1 + a2 > a_total + tol:
        raise ConjugacyError(
            f"conjugatedness violation: a1 + a2 = {a1 + a2!r} exceeds packable area {a_total!r}"
        )
    if b1 < b_floor - tol or b2 < b_floor - tol:
        raise ConjugacyError("conjugatedness violation: rounding below the inherited minimum size")
    if b1 < a1 - f1 * a2 / f2 - tol or b2 < a2 - f2 * a1 / f1 - tol:
        raise ConjugacyError("conjugatedness violation: rounding below the overshoot bound")


def _scaled_hat(
    half: Triangle,
    anchor: Point,
    a_i: float,
    b_i: float,
    f_i: float,
    stats: Optional[PackStats],
) -> Optional[Hat]:
    """Half triangle scaled about its anchor to incircle area a_i, rounded by b_i."""
    if a_i <= 0.0:
        return None
    t = math.sqrt(a_i / f_i)
    if abs(a_i - f_i) <= _SNAP_REL_TOL * f_i:
        t = 1.0
    tri = half if t == 1.0 else half.scaled_about(anchor, t)
    if stats is not None:
        stats.scale_factors.append(t)
        stats.hat_count += 1
    r = _inradius(tri)
    rounding = min(b_i, math.pi * r * r)
    return Hat(tri, math.sqrt(rounding / math.pi))


def place_hats_in_square(
    side: float,
    first: tuple[float, float],
    second: tuple[float, float],
    *,
    stats: Optional[PackStats] = None,
) -> tuple[Optional[Hat], Optional[Hat]]:
    """Two right isosceles hats anchored in opposite corners of the square.

    Hat i is the half-square triangle (legs along the square's sides, right
    angle at (0, 0) for i=1 and at (side, side) for i=2) scaled about its
    corner by sqrt(a_i / (a/2)) with a the square's twincircle area, then
    rounded by b_i. The tuples must be conjugated for the key (a/2, a/2).
    An a_i of zero yields ``None`` in that slot.
    """
    square = Square(side)
    a_total = PHI_SQUARE * side * side
    f = a_total / 2.0
    key = SplitKey(f, f)
    _check_tuples(a_total, 0.0, key, first, second)
    s = square.side
    half1 = Triangle((Point(0.0, 0.0), Point(s, 0.0), Point(0.0, s)))
    half2 = Triangle((Point(s, s), Point(0.0, s), Point(s, 0.0)))
    hat1 = _scaled_hat(half1, Point(0.0, 0.0), first[0], first[1], f, stats)
    hat2 = _scaled_hat(half2, Point(s, s), second[0], second[1], f, stats)
    return hat1, hat2


def place_subhats_in_hat(
    container: Hat,
    key: SplitKey,
    first: tuple[float, float],
    second: tuple[float, float],
    *,
    stats: Optional[PackStats] = None,
) -> tuple[Optional[Hat], Optional[Hat]]:
    """Two right hats along the legs of a container hat.

    ``key`` must be the container's associated split key. Child i is the
    altitude-half right triangle scaled about the shared base vertex (left
    vertex for i=1, right vertex for i=2) by sqrt(a_i / f_i) and rounded by
    b_i, so child 1's hypotenuse lies along the container's left leg and
    child 2's along the right leg. The tuples must be conjugated for the
    container's parameters; an a_i of zero yields ``None`` in that slot.
    """
    tri = container.triangle
    if not tri.is_non_acute:
        raise UnsupportedContainerError("container hat must be right or obtuse")
    _check_tuples(container.incircle_area, container.rounding_area, key, first, second)
    left_vertex, right_vertex, _apex = tri.base_split
    half1, half2 = altitude_halves(tri)
    hat1 = _scaled_hat(half1, left_vertex, first[0], first[1], key.f1, stats)
    hat2 = _scaled_hat(half2, right_vertex, second[0], second[1], key.f2, stats)
    return hat1, hat2


def place_circle_in_hat(container: Hat, area: float) -> Circle:
    """Circle of the given area concentric with the container hat's incircle."""
    if area <= 0.0:
        raise InvalidParameterError("circle area must be positive")
    incircle = container.incircle
    if area > container.incircle_area * (1.0 + _PLACEMENT_REL_TOL):
        raise InvalidParameterError(
            f"circle of area {area!r} exceeds the hat's incircle area {container.incircle_area!r}"
        )
    return Circle(incircle.center, math.sqrt(area / math.pi))


def _leaf(circle: Circle, area: float, index: int) -> PackingNode:
    return PackingNode(circle, payload=area, input_index=index)


def _pack_into_hat(
    hat: Hat,
    circles: CircleSet,
    b_floor: float,
    stats: Optional[PackStats],
) -> PackingNode:
    """Pack a non-empty circle set into a hat; returns the hat's subtree.

    This is :func:`place_subhats_in_hat` and :func:`place_circle_in_hat`
    inlined on plain floats (the equivalence is covered by tests): each level
    splits the triangle through the apex, runs the weighted split against the
    altitude halves' incircle areas, and scales each half about its base
    vertex to the subset's combined area.
    """
    pi = math.pi
    sqrt = math.sqrt
    hypot = math.hypot
    root = PackingNode(hat)
    left, right, apex = hat.triangle.base_split
    r_in = _inradius(hat.triangle)
    # (node, Lx, Ly, Rx, Ry, Cx, Cy, inradius, subset, inherited min size, depth)
    stack = [(root, left.x, left.y, right.x, right.y, apex.x, apex.y, r_in, circles, b_floor, 1)]
    while stack:
        node, lx, ly, rx, ry, cx, cy, r_in, subset, b_min, depth = stack.pop()
        if stats is not None and depth > stats.max_depth:
            stats.max_depth = depth

        if len(subset) == 1:
            # lone circle: concentric with the hat's incircle
            area = subset.areas[0]
            if area > pi * r_in * r_in * (1.0 + _PLACEMENT_REL_TOL):
                raise InvalidParameterError(
                    f"circle of area {area!r} exceeds the hat's incircle area {pi * r_in * r_in!r}"
                )
            w_l = hypot(cx - rx, cy - ry)
            w_r = hypot(cx - lx, cy - ly)
            w_c = hypot(rx - lx, ry - ly)
            perimeter = w_l + w_r + w_c
            center = Point(
                (w_l * lx + w_r * rx + w_c * cx) / perimeter,
                (w_l * ly + w_r * ry + w_c * cy) / perimeter,
            )
            node.children.append(_leaf(_circle_fast(center, sqrt(area / pi)), area, subset.indices[0]))
            continue

        # altitude foot and the two right altitude halves
        bx, by = rx - lx, ry - ly
        t_foot = ((cx - lx) * bx + (cy - ly) * by) / (bx * bx + by * by)
        fx, fy = lx + t_foot * bx, ly + t_foot * by
        leg_left = hypot(fx - lx, fy - ly)
        leg_right = hypot(rx - fx, ry - fy)
        altitude = hypot(cx - fx, cy - fy)
        hyp_left = hypot(cx - lx, cy - ly)
        hyp_right = hypot(cx - rx, cy - ry)
        r1 = leg_left * altitude / (leg_left + altitude + hyp_left)
        r2 = leg_right * altitude / (leg_right + altitude + hyp_right)
        f1 = pi * r1 * r1
        f2 = pi * r2 * r2
        key = SplitKey(f1, f2)

        part1, part2 = weighted_split(subset, key)
        if stats is not None:
            stats.split_calls += 1
            stats.element_moves += len(subset)
        a1, a2 = part1.combined, part2.combined
        b1 = max(b_min, a1 - f1 * a2 / f2, 0.0)
        b2 = max(b_min, a2 - f2 * a1 / f1, 0.0)
        _check_tuples(pi * r_in * r_in, b_min, key, (a1, b1), (a2, b2))

        t1 = sqrt(a1 / f1)
        if abs(a1 - f1) <= _SNAP_REL_TOL * f1:
            t1 = 1.0
        t2 = sqrt(a2 / f2)
        if abs(a2 - f2) <= _SNAP_REL_TOL * f2:
            t2 = 1.0
        if stats is not None:
            stats.scale_factors += (t1, t2)
            stats.hat_count += 2

        # child 1: left half scaled about the left base vertex; its hypotenuse
        # (the next base) runs from the scaled apex back to that vertex
        x1x, x1y = lx + t1 * (fx - lx), ly + t1 * (fy - ly)
        c1x, c1y = lx + t1 * (cx - lx), ly + t1 * (cy - ly)
        r1c = t1 * r1
        p_l, p_f, p_c = Point(lx, ly), Point(x1x, x1y), Point(c1x, c1y)
        tri1 = _triangle_fast(p_l, p_f, p_c, base_split=(p_c, p_l, p_f))
        hat1 = _hat_fast(tri1, min(sqrt(b1 / pi), r1c))
        # child 2: right half scaled about the right base vertex
        x2x, x2y = rx + t2 * (fx - rx), ry + t2 * (fy - ry)
        c2x, c2y = rx + t2 * (cx - rx), ry + t2 * (cy - ry)
        r2c = t2 * r2
        q_f, q_r, q_c = Point(x2x, x2y), Point(rx, ry), Point(c2x, c2y)
        tri2 = _triangle_fast(q_f, q_r, q_c, base_split=(q_r, q_c, q_f))
        hat2 = _hat_fast(tri2, min(sqrt(b2 / pi), r2c))

        child1 = PackingNode(hat1)
        child2 = PackingNode(hat2)
        node.children = [child1, child2]
        stack.append((child1, c1x, c1y, lx, ly, x1x, x1y, r1c, part1, b1, depth + 1))
        stack.append((child2, rx, ry, c2x, c2y, x2x, x2y, r2c, part2, b2, depth + 1))
    return root


def _validate_request(request: PackRequest) -> float:
    circles = request.circles
    for area in circles.areas:
        if not (math.isfinite(area) and area > 0.0):
            raise InvalidParameterError(f"circle areas must be positive, got {area!r}")
    if request.min_size < 0.0:
        raise InvalidParameterError("min_size must be non-negative")
    if len(circles) and request.min_size > 0.0:
        if circles.minimum < request.min_size * (1.0 - FEASIBILITY_REL_SLACK):
            raise InvalidParameterError(
                f"min-size violation: smallest circle {circles.minimum!r} "
                f"is below the declared minimum {request.min_size!r}"
            )
    capacity = packable_area(request.container)
    if circles.combined > capacity * (1.0 + FEASIBILITY_REL_SLACK):
        ratio = circles.combined / capacity
        raise OverCapacityError(
            f"over-capacity: combined area {circles.combined!r} exceeds the "
            f"guaranteed packable area {capacity!r} (ratio {ratio:.6g})",
            ratio=ratio,
        )
    return capacity


def pack(request: PackRequest, stats: Optional[PackStats] = None) -> PackingNode:
    """Pack the requested circle set, returning the subdivision tree.

    The tree's circle leaves are a multiset-exact copy of the input areas,
    placed without overlap inside the container (checkable with
    :func:`splitpack.verifier.verify`). An empty input yields a bare root.
    """
    capacity = _validate_request(request)
    circles = request.circles
    container = request.container
    b0 = request.min_size

    if isinstance(container, Square):
        root = PackingNode(container)
        n = len(circles)
        if n == 0:
            return root
        if n == 1:
            # Degenerate corner-anchored hat: the circle ends up tangent to
            # the two sides meeting at the far corner.
            area = circles.areas[0]
            r = math.sqrt(area / math.pi)
            s = container.side
            circle = Circle(Point(s - r, s - r), r)
            root.children.append(_leaf(circle, area, circles.indices[0]))
            return root
        part1, part2 = split(circles)
        if stats is not None:
            stats.split_calls += 1
            stats.element_moves += n
        f = capacity / 2.0
        b1 = min_guarantee(part1.combined, part2.combined, f, f, b0)
        b2 = min_guarantee(part2.combined, part1.combined, f, f, b0)
        hat1, hat2 = place_hats_in_square(
            container.side, (part1.combined, b1), (part2.combined, b2), stats=stats
        )
        root.children.append(_pack_into_hat(hat1, part1, b1, stats))
        root.children.append(_pack_into_hat(hat2, part2, b2, stats))
        return root

    # Triangle container: the root is the bare triangle (a hat with zero
    # rounding); the caller's min_size only sharpens the guarantees below.
    root_hat = Hat(container, 0.0)
    if len(circles) == 0:
        return PackingNode(root_hat)
    return _pack_into_hat(root_hat, circles, b0, stats)


def min_container(
    circles: CircleSet, family: Union[str, Square, Triangle]
) -> Union[Square, Triangle]:
    """Smallest container of the family whose guaranteed-packable area is the set's sum.

    ``family`` is either ``"square"`` (or any Square) or a non-acute Triangle
    taken up to similarity. The result always packs the set, and its area is
    at most 1/critical_density times the area of any feasible container.
    """
    if len(circles) == 0:
        raise InvalidParameterError("min_container needs at least one circle")
    total = circles.combined
    if family == "square" or isinstance(family, Square):
        return Square(math.sqrt(total / PHI_SQUARE))
    if isinstance(family, Triangle):
        if not family.is_non_acute:
            raise UnsupportedContainerError("acute triangle containers are not supported")
        incircle = triangle_incircle(family)
        factor = math.sqrt(total / (math.pi * incircle.radius * incircle.radius))
        return family.scaled_about(family.vertices[0], factor)
    raise InvalidParameterError(f"unknown container family: {family!r}")
