"""Independent numeric validation of packing trees.

Containment and disjointness are established from primitive geometry only:
point/segment/polygon distances and inward erosions of triangles. None of the
packer's placement formulas or hat measurements are reused, so a passing
report is an independent certificate. Checks are evaluated in bulk with
numpy; the scalar primitives in :mod:`splitpack.geometry` define the
reference semantics.

A hat equals the convex hull of three disks of its rounding radius centered
on its eroded corners, so

* hat-in-convex-parent containment is exact via the three corner disks, and
* two hats are disjoint iff their eroded triangles are at least the sum of
  the rounding radii apart.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import MalformedTreeError
from .geometry import Circle, Hat, Square

# Reports keep at most this many individual check entries; failures are
# always retained.
MAX_RECORDED_CHECKS = 2_000_000

DEFAULT_REL_TOLERANCE = 1e-9


class CheckKind(str, Enum):
    CIRCLE_CIRCLE = "circle-circle"
    CIRCLE_IN_CONTAINER = "circle-in-container"
    HAT_IN_PARENT = "hat-in-parent"
    HAT_HAT_DISJOINT = "hat-hat-disjoint"
    LEAF_MULTISET = "leaf-multiset"


@dataclass(frozen=True)
class Check:
    kind: CheckKind
    ids: tuple[str, ...]
    slack: float


@dataclass
class VerificationReport:
    """Outcome of :func:`verify`.

    ``passed`` holds iff every evaluated check has slack >= -tolerance.
    Slack is signed, so exactly tangent configurations report ~0. ``checks``
    materializes lazily (sorted by kind and ids) and is truncated to
    MAX_RECORDED_CHECKS entries for very large packings; ``failures`` always
    lists every violated check.
    """

    passed: bool
    worst_slack: float
    tolerance: float
    check_count: int
    failures: list[Check] = field(default_factory=list)
    _groups: list = field(default_factory=list, repr=False)

    @cached_property
    def checks(self) -> list[Check]:
        out: list[Check] = []
        for kind, ids_fn, slacks in self._groups:
            if len(out) >= MAX_RECORDED_CHECKS:
                break
            ids = ids_fn()
            out.extend(
                Check(kind, tuple(i), float(s))
                for i, s in zip(ids, slacks[: MAX_RECORDED_CHECKS - len(out)])
            )
        out.sort(key=lambda c: (c.kind.value, c.ids))
        return out

    def summary(self) -> str:
        lines = [
            f"{'PASS' if self.passed else 'FAIL'}: {self.check_count} checks, "
            f"worst slack {self.worst_slack:.3e}, tolerance {self.tolerance:.3e}"
        ]
        for check in self.failures:
            lines.append(f"  {check.kind.value} {' '.join(check.ids)}: slack {check.slack:.3e}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# numpy primitives
# ---------------------------------------------------------------------------

def _point_segment_np(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distances from points to segments, all arrays shaped (..., 2)."""
    ab = b - a
    denom = np.einsum("...i,...i->...", ab, ab)
    t = np.einsum("...i,...i->...", p - a, ab) / np.where(denom == 0.0, 1.0, denom)
    t = np.where(denom == 0.0, 0.0, np.clip(t, 0.0, 1.0))
    proj = a + t[..., None] * ab
    return np.linalg.norm(p - proj, axis=-1)


def _cross_np(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def _segment_segment_np(
    p1: np.ndarray, p2: np.ndarray, q1: np.ndarray, q2: np.ndarray
) -> np.ndarray:
    """Distances between segment pairs (0 where they cross).

    Crossings are detected parametrically; (near-)parallel pairs fall back to
    the exact endpoint distances, so collinear but disjoint segments never
    report a spurious intersection.
    """
    rp = p2 - p1
    rq = q2 - q1
    denom = _cross_np(rp, rq)
    lengths = np.linalg.norm(rp, axis=-1) * np.linalg.norm(rq, axis=-1)
    skew = np.abs(denom) > 1e-12 * lengths
    safe = np.where(skew, denom, 1.0)
    w = q1 - p1
    t = _cross_np(w, rq) / safe
    u = _cross_np(w, rp) / safe
    crossing = skew & (t >= 0.0) & (t <= 1.0) & (u >= 0.0) & (u <= 1.0)
    dist = np.minimum.reduce(
        [
            _point_segment_np(p1, q1, q2),
            _point_segment_np(p2, q1, q2),
            _point_segment_np(q1, p1, p2),
            _point_segment_np(q2, p1, p2),
        ]
    )
    return np.where(crossing, 0.0, dist)


def _tri_edges(tris: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Edge start/end arrays (..., 3, 2) for triangle arrays (..., 3, 2)."""
    return tris, np.roll(tris, -1, axis=-2)


def _tri_line_signed_np(points: np.ndarray, tris: np.ndarray) -> np.ndarray:
    """Min inward side-line distance of points (k,2) to CCW triangles (k,3,2)."""
    a, b = _tri_edges(tris)
    edge = b - a
    length = np.linalg.norm(edge, axis=-1)
    rel = points[:, None, :] - a
    d = _cross_np(edge, rel) / length
    return d.min(axis=-1)


def _point_tri_set_distance_np(points: np.ndarray, tris: np.ndarray) -> np.ndarray:
    """Signed set distance: inward depth inside, minus Euclidean distance outside."""
    line = _tri_line_signed_np(points, tris)
    a, b = _tri_edges(tris)
    outside = _point_segment_np(points[:, None, :], a, b).min(axis=-1)
    return np.where(line >= 0.0, line, -outside)


def _point_in_tri_np(points: np.ndarray, tris: np.ndarray) -> np.ndarray:
    """Containment of points (k,2) in CCW, non-degenerate triangles (k,3,2)."""
    a, b = _tri_edges(tris)
    rel = points[:, None, :] - a
    crosses = _cross_np(b - a, rel)
    area2 = _cross_np(tris[:, 1] - tris[:, 0], tris[:, 2] - tris[:, 0])
    return (crosses >= 0.0).all(axis=-1) & (area2 > 0.0)


def _sat_separation_np(ea: np.ndarray, eb: np.ndarray) -> np.ndarray:
    """Signed separation of CCW triangle pairs along their edge-normal axes.

    For intersecting convex polygons the maximum signed gap over both
    polygons' edge normals equals minus the penetration depth exactly (the
    minimal translation vector is normal to an edge); for disjoint ones it is
    a lower bound of the distance. Degenerate (zero-length) edges contribute
    no axis; 0 is returned when no axis exists.
    """
    best = np.full(len(ea), -np.inf)
    for first, second in ((ea, eb), (eb, ea)):
        a1 = first
        edges = np.roll(first, -1, axis=1) - first  # (m, 3, 2)
        lengths = np.linalg.norm(edges, axis=-1)
        valid = lengths > 0.0
        inv = np.where(valid, 1.0 / np.where(valid, lengths, 1.0), 0.0)
        nx = edges[..., 1] * inv  # outward normal for CCW
        ny = -edges[..., 0] * inv
        proj = nx[..., None] * (second[:, None, :, 0] - a1[..., 0:1]) + ny[..., None] * (
            second[:, None, :, 1] - a1[..., 1:2]
        )  # (m, 3 axes, 3 vertices)
        gap = np.where(valid, proj.min(axis=-1), -np.inf)
        best = np.maximum(best, gap.max(axis=1))
    return np.where(np.isfinite(best), best, 0.0)


def _square_signed_np(points: np.ndarray, side: float) -> np.ndarray:
    """Signed set distance to the square [0, side]^2 (positive inside)."""
    ax = np.maximum(-points[:, 0], points[:, 0] - side)
    ay = np.maximum(-points[:, 1], points[:, 1] - side)
    inside_depth = -np.maximum(ax, ay)
    outside = np.hypot(np.maximum(ax, 0.0), np.maximum(ay, 0.0))
    return np.where((ax <= 0.0) & (ay <= 0.0), inside_depth, -outside)


def _erode_tris(tris: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """Triangles shrunk inward by their radii: homothety about the incenter."""
    sides = np.linalg.norm(np.roll(tris, -1, axis=1) - tris, axis=-1)  # (m, 3)
    perimeter = sides.sum(axis=1)
    area2 = np.abs(_cross_np(tris[:, 1] - tris[:, 0], tris[:, 2] - tris[:, 0]))
    inradius = area2 / perimeter
    weights = np.roll(sides, -1, axis=1)  # opposite side length per vertex
    incenter = (weights[..., None] * tris).sum(axis=1) / perimeter[:, None]
    k = (inradius - radii) / inradius
    return incenter[:, None, :] + k[:, None, None] * (tris - incenter[:, None, :])


# ---------------------------------------------------------------------------
# Tree walk
# ---------------------------------------------------------------------------

class _TreeIndex:
    """Flat arrays extracted from a packing tree.

    Check ids are derived lazily: hats know their parent index and child
    position, circles their input index.
    """

    def __init__(self, root):
        self.root_shape = root.shape
        if not isinstance(self.root_shape, (Square, Hat)):
            raise MalformedTreeError("the root must be a square or hat container")

        circle_flat: list[float] = []  # x, y, radius triples
        circle_labels: list = []
        circle_payloads: list[Optional[float]] = []
        hat_flat: list[float] = []  # three vertices per hat
        hat_radii: list[float] = []
        hat_parent: list[int] = []  # hat index, -1 root container, -2 the root hat itself
        hat_pos: list[int] = []  # child position under the parent node
        sibling_pairs: list[tuple[int, int]] = []

        root_hat_idx = -1
        if isinstance(self.root_shape, Hat):
            v = self.root_shape.triangle.vertices
            hat_flat += (v[0][0], v[0][1], v[1][0], v[1][1], v[2][0], v[2][1])
            hat_radii.append(self.root_shape.rounding_radius)
            hat_parent.append(-2)
            hat_pos.append(-1)
            root_hat_idx = 0
        stack = [(root, root_hat_idx)]
        while stack:
            node, parent_idx = stack.pop()
            child_hats: list[int] = []
            for k, child in enumerate(node.children):
                cshape = child.shape
                tshape = type(cshape)
                if tshape is Circle:
                    if child.children:
                        raise MalformedTreeError("circle nodes cannot have children")
                    center = cshape.center
                    circle_flat += (center[0], center[1], cshape.radius)
                    circle_labels.append(child.input_index)
                    circle_payloads.append(child.payload)
                elif tshape is Hat:
                    idx = len(hat_radii)
                    v = cshape.triangle.vertices
                    hat_flat += (v[0][0], v[0][1], v[1][0], v[1][1], v[2][0], v[2][1])
                    hat_radii.append(cshape.rounding_radius)
                    hat_parent.append(parent_idx)
                    hat_pos.append(k)
                    child_hats.append(idx)
                    stack.append((child, idx))
                elif tshape is Square:
                    raise MalformedTreeError("square nodes are only allowed at the root")
                else:
                    raise MalformedTreeError(f"unknown shape type {tshape.__name__} in tree")
            if len(child_hats) > 1:
                for i in range(len(child_hats)):
                    for j in range(i + 1, len(child_hats)):
                        sibling_pairs.append((child_hats[i], child_hats[j]))

        self.circle_payloads = circle_payloads
        self._circle_labels = circle_labels
        centers_radii = np.array(circle_flat, dtype=float).reshape(-1, 3)
        self.centers = centers_radii[:, :2]
        self.radii = centers_radii[:, 2]
        self.hat_tris = np.array(hat_flat, dtype=float).reshape(-1, 3, 2)
        self.hat_radii = np.array(hat_radii, dtype=float)
        self.hat_parent = hat_parent
        self._hat_pos = hat_pos
        self.sibling_pairs = sibling_pairs
        self.eroded = (
            _erode_tris(self.hat_tris, self.hat_radii)
            if len(hat_radii)
            else np.empty((0, 3, 2))
        )

    @cached_property
    def circle_ids(self) -> list[str]:
        return [
            f"circle:{label if label is not None else '@' + str(pos)}"
            for pos, label in enumerate(self._circle_labels)
        ]

    @cached_property
    def hat_ids(self) -> list[str]:
        ids: list[str] = []
        for i in range(len(self.hat_radii)):
            parts: list[str] = []
            j = i
            while j >= 0 and self._hat_pos[j] >= 0:
                parts.append(str(self._hat_pos[j]))
                j = self.hat_parent[j]
            parts.append("0")
            ids.append("hat:" + ".".join(reversed(parts)))
        return ids

    def container_signed_distance(self, points: np.ndarray) -> np.ndarray:
        if isinstance(self.root_shape, Square):
            return _square_signed_np(points, self.root_shape.side)
        # the root hat's depth is its rounding radius plus the signed set
        # distance to its eroded triangle (index 0 when the root is a hat)
        eroded = np.broadcast_to(self.eroded[0], (len(points), 3, 2))
        depth = _point_tri_set_distance_np(points, eroded)
        return depth + self.root_shape.rounding_radius


def _default_tolerance(root_shape) -> float:
    if isinstance(root_shape, Square):
        diameter = root_shape.side * math.sqrt(2.0)
    else:
        diameter = max(root_shape.triangle.side_lengths)
    return DEFAULT_REL_TOLERANCE * diameter


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def verify(
    root,
    tolerance: Optional[float] = None,
    expected_areas: Optional[Sequence[float]] = None,
) -> VerificationReport:
    """Check a packing tree for containment and pairwise disjointness.

    Evaluates, with signed slack per check:

    * circle-circle: center distance minus the radius sum, all leaf pairs;
    * circle-in-container: containment depth of each leaf in the root;
    * hat-in-parent: for each hat, the worst of its three corner disks
      against the parent shape (exact, since a hat is the convex hull of its
      corner disks);
    * hat-hat-disjoint: distance between sibling hats' eroded triangles
      minus the sum of their rounding radii;
    * leaf-multiset: leaf payload areas versus ``expected_areas`` when given.

    ``tolerance`` defaults to 1e-9 times the container diameter. The report
    passes iff every slack is at least -tolerance.
    """
    index = _TreeIndex(root)
    if tolerance is None:
        tolerance = _default_tolerance(index.root_shape)

    groups: list[tuple[CheckKind, Callable[[], list], np.ndarray]] = []

    # circle-circle
    n = len(index.circle_ids)
    if n >= 2:
        iu, ju = np.triu_indices(n, k=1)
        dists = np.linalg.norm(index.centers[iu] - index.centers[ju], axis=-1)
        slacks = dists - (index.radii[iu] + index.radii[ju])
        ids = index.circle_ids

        def pair_ids(iu=iu, ju=ju, ids=ids):
            return [tuple(sorted((ids[i], ids[j]))) for i, j in zip(iu, ju)]

        groups.append((CheckKind.CIRCLE_CIRCLE, pair_ids, slacks))

    # circle-in-container
    if n >= 1:
        depth = index.container_signed_distance(index.centers)
        slacks = depth - index.radii
        ids = index.circle_ids
        groups.append(
            (
                CheckKind.CIRCLE_IN_CONTAINER,
                lambda ids=ids: [(i, "container") for i in ids],
                slacks,
            )
        )

    # hat-in-parent
    checked = [i for i, p in enumerate(index.hat_parent) if p != -2]
    if checked:
        child_idx = np.array(checked, dtype=int)
        corners = index.eroded[child_idx].reshape(-1, 2)  # (3k, 2)
        child_s = np.repeat(index.hat_radii[child_idx], 3)
        parent_of = np.array([index.hat_parent[i] for i in checked], dtype=int)
        depths = np.empty(len(corners))
        in_root = np.repeat(parent_of < 0, 3)
        if in_root.any():
            depths[in_root] = index.container_signed_distance(corners[in_root])
        in_hat = ~in_root
        if in_hat.any():
            pidx = np.repeat(parent_of, 3)[in_hat]
            depths[in_hat] = (
                _point_tri_set_distance_np(corners[in_hat], index.eroded[pidx])
                + index.hat_radii[pidx]
            )
        slacks = (depths - child_s).reshape(-1, 3).min(axis=1)

        def hat_ids(child_idx=child_idx, parent_of=parent_of, index=index):
            out = []
            for c, p in zip(child_idx, parent_of):
                out.append((index.hat_ids[c], index.hat_ids[p] if p >= 0 else "container"))
            return out

        groups.append((CheckKind.HAT_IN_PARENT, hat_ids, slacks))

    # hat-hat-disjoint (siblings)
    if index.sibling_pairs:
        pa = np.array([i for i, _ in index.sibling_pairs], dtype=int)
        pb = np.array([j for _, j in index.sibling_pairs], dtype=int)
        ea, eb = index.eroded[pa], index.eroded[pb]
        a1, a2 = _tri_edges(ea)
        b1, b2 = _tri_edges(eb)
        # all 9 edge pair combinations per sibling pair
        p1 = np.repeat(a1, 3, axis=1)
        p2 = np.repeat(a2, 3, axis=1)
        q1 = np.tile(b1, (1, 3, 1))
        q2 = np.tile(b2, (1, 3, 1))
        dist = _segment_segment_np(p1, p2, q1, q2).min(axis=1)
        contained = np.zeros(len(pa), dtype=bool)
        for verts, tris in ((eb, ea), (ea, eb)):
            for k in range(3):
                contained |= _point_in_tri_np(verts[:, k, :], tris)
        dist = np.where(contained, 0.0, dist)
        # intersecting eroded triangles report their penetration depth, so
        # overlap is caught even when both rounding radii are zero
        touching = dist <= 0.0
        if touching.any():
            sat = _sat_separation_np(ea, eb)
            dist = np.where(touching, np.minimum(sat, 0.0), dist)
        slacks = dist - (index.hat_radii[pa] + index.hat_radii[pb])

        def sib_ids(pa=pa, pb=pb, index=index):
            return [(index.hat_ids[i], index.hat_ids[j]) for i, j in zip(pa, pb)]

        groups.append((CheckKind.HAT_HAT_DISJOINT, sib_ids, slacks))

    # leaf-multiset
    if expected_areas is not None:
        got = sorted(p for p in index.circle_payloads if p is not None)
        want = sorted(float(a) for a in expected_areas)
        matched = len(index.circle_payloads) == len(want) and got == want
        slacks = np.array([0.0 if matched else -math.inf])
        groups.append(
            (CheckKind.LEAF_MULTISET, lambda: [("leaves", "declared-input")], slacks)
        )

    check_count = sum(len(s) for _, _, s in groups)
    worst = math.inf
    failures: list[Check] = []
    for kind, ids_fn, slacks in groups:
        if len(slacks) == 0:
            continue
        worst = min(worst, float(slacks.min()))
        bad = np.nonzero(slacks < -tolerance)[0]
        if len(bad):
            ids = ids_fn()
            failures.extend(Check(kind, tuple(ids[i]), float(slacks[i])) for i in bad)
    failures.sort(key=lambda c: (c.kind.value, c.ids))

    return VerificationReport(
        passed=worst >= -tolerance,
        worst_slack=worst,
        tolerance=tolerance,
        check_count=check_count,
        failures=failures,
        _groups=groups,
    )


def projection_widths(circle1: Circle, circle2: Circle, base: tuple) -> tuple[float, float]:
    """Extents of two corner circles projected onto the base segment.

    The first extent is measured from the base's start point to the far edge
    of circle1's projection, the second from the base's end point back to the
    far edge of circle2's projection. The projections are disjoint iff the
    extents sum to at most the base length.
    """
    (p, q) = base
    px, py = float(p[0]), float(p[1])
    qx, qy = float(q[0]), float(q[1])
    length = math.hypot(qx - px, qy - py)
    ux, uy = (qx - px) / length, (qy - py) / length
    e1 = (circle1.center.x - px) * ux + (circle1.center.y - py) * uy + circle1.radius
    e2 = (qx - circle2.center.x) * ux + (qy - circle2.center.y) * uy + circle2.radius
    return (e1, e2)
