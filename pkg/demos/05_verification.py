"""The independent verifier: certifying packings, catching broken ones.

The verifier never reuses the packer's placement formulas. It checks circle
pairs, containment in the root container, each subcontainer against its
parent via the three corner disks (exact, because a hat is the convex hull of
its corner disks), and sibling disjointness via eroded-triangle distances.
Slack is signed: a tangent configuration reports ~0, a violation < 0.

Run:  python demos/05_verification.py
"""

import numpy as np

from splitpack import (
    PHI_SQUARE,
    Circle,
    CircleSet,
    PackRequest,
    Point,
    Square,
    pack,
    verify,
)

square = Square(1.0)
rng = np.random.default_rng(5)
weights = rng.random(12) + 0.1
areas = list(weights * (0.97 * PHI_SQUARE / weights.sum()))
root = pack(PackRequest(square, CircleSet.from_areas(areas)))

report = verify(root, expected_areas=areas)
print("fresh packing:")
print(f"  {report.summary()}")
by_kind = {}
for check in report.checks:
    by_kind.setdefault(check.kind.value, []).append(check.slack)
for kind, slacks in sorted(by_kind.items()):
    print(f"  {kind:<22} {len(slacks):>4} checks, tightest slack {min(slacks):.3e}")

print()
print("now nudge one circle onto its neighbour...")
leaf = root.circle_leaves()[0]
c = leaf.shape
leaf.shape = Circle(Point(c.center.x + 0.02, c.center.y), c.radius)
report = verify(root, expected_areas=areas)
print(f"  {report.summary()}")

print()
print("...and inflate a radius past the container instead")
leaf.shape = Circle(c.center, c.radius * 1.5)
report = verify(root, expected_areas=areas)
print(f"  {report.summary()}")
