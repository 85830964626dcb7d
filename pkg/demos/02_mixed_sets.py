"""How the recursion subdivides: mixed circle sets and self-similar halving.

Pack a mixed 24-circle set at full capacity into a square and look at the
subdivision tree. Then pack 16 equal circles whose total is exactly the
critical area: every subcontainer is an exact half of its parent (all scale
factors are 1), reproducing the self-similar subdivision that motivates the
split-in-half strategy.

Run:  python demos/02_mixed_sets.py
"""

import pathlib

import numpy as np

from splitpack import (
    PHI_SQUARE,
    CircleSet,
    Hat,
    PackRequest,
    PackStats,
    PackingDocument,
    Square,
    pack,
    render_packing_svg,
    verify,
)

OUT = pathlib.Path("demo_output")
OUT.mkdir(exist_ok=True)

square = Square(1.0)

rng = np.random.default_rng(2024)
weights = rng.random(24) ** 2 + 0.05  # a few large, many small
areas = list(weights * (PHI_SQUARE / weights.sum()))

stats = PackStats()
root = pack(PackRequest(square, CircleSet.from_areas(areas)), stats)
report = verify(root, expected_areas=areas)
print("mixed 24-circle set at 100% of the packable area")
print(f"  {report.summary()}")
print(f"  subcontainers: {stats.hat_count} (bound 2n-2 = {2 * len(areas) - 2})")
print(f"  splits: {stats.split_calls}, element moves: {stats.element_moves}, "
      f"depth: {stats.max_depth}")
roundings = [n.shape.rounding_radius for n, _ in root.walk() if isinstance(n.shape, Hat)]
print(f"  rounded subcontainers: {sum(1 for s in roundings if s > 0)} of {len(roundings)}")
doc = PackingDocument.from_tree(root, square)
(OUT / "02_mixed_set.svg").write_text(render_packing_svg(doc))
print(f"  figure written to {OUT / '02_mixed_set.svg'}")

print()
print("16 equal circles summing exactly to the packable area")
areas = [PHI_SQUARE / 16.0] * 16
stats = PackStats()
root = pack(PackRequest(square, CircleSet.from_areas(areas)), stats)
print(f"  {verify(root, expected_areas=areas).summary()}")
unique_scales = sorted(set(stats.scale_factors))
print(f"  scale factors used: {unique_scales}  (self-similar halving)")
doc = PackingDocument.from_tree(root, square)
(OUT / "02_power_of_two.svg").write_text(render_packing_svg(doc))
print(f"  figure written to {OUT / '02_power_of_two.svg'}")
