"""Watch the image curve f(C_r) evolve as the circle radius grows.

For small r the curve is a small near-circle around the constant coefficient
-1. As r grows, lobes develop and sweep across the real axis: each sweep
births an upcrossing/downcrossing pair. At large r the curve is a giant
near-circle around the origin traversed N times. Roots live exactly where a
crossing passes the origin.

Writes demos/output/curve_evolution.png.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from polycross import CrossingKind, find_crossings, from_roots, sample_curve

ROOTS = [1.6 + 1.6j, -1.7 + 1.7j, -1.5 - 1.5j]
lead = 1.0 / np.prod(ROOTS)
poly = from_roots(ROOTS, leading=lead)

radii = [0.3, 1.0, 1.6, 1.75, 1.9, 2.12, 2.4, 3.2]

fig, axes = plt.subplots(2, 4, figsize=(16, 8))
for ax, r in zip(axes.ravel(), radii):
    pts = np.array(sample_curve(poly, r, 800))
    ax.plot(pts.real, pts.imag, lw=1.0, color="0.3")
    ax.axhline(0.0, color="0.8", lw=0.8, zorder=0)
    ax.plot([0], [0], marker="+", ms=10, color="green")
    for c in find_crossings(poly, r):
        if c.kind is CrossingKind.UP:
            ax.plot([c.x], [0], "o", color="tab:blue", ms=7)
        elif c.kind is CrossingKind.DOWN:
            ax.plot([c.x], [0], "o", mfc="none", mec="tab:red", ms=7)
        else:
            ax.plot([c.x], [0], "s", color="tab:purple", ms=7)
    ax.set_title(f"r = {r:g}")
    ax.set_aspect("equal")
fig.suptitle(
    "f(C_r) for a cubic: solid blue = upcrossing (moves right), "
    "hollow red = downcrossing (moves left)"
)
out = pathlib.Path(__file__).parent / "output"
out.mkdir(exist_ok=True)
fig.savefig(out / "curve_evolution.png", dpi=110, bbox_inches="tight")
print(f"wrote {out / 'curve_evolution.png'}")

for r in radii:
    cs = find_crossings(poly, r)
    ups = sum(1 for c in cs if c.kind is CrossingKind.UP)
    downs = sum(1 for c in cs if c.kind is CrossingKind.DOWN)
    print(f"r = {r:5g}: {ups} upcrossings, {downs} downcrossings")
