"""Find every root at once from the 2N large-radius crossings.

Once the leading term dominates, the image of C_r crosses the positive axis
at least N times going up and the negative axis at least N times going down.
Following every upcrossing leftward and every downcrossing rightward drives
the crossings toward the origin; collectively they deliver all N roots (some
tracks die at the radius floor instead, which is expected and recorded).

Writes demos/output/all_roots_parallel.png.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from polycross import RootFound, from_roots, solve_parallel

rng = np.random.default_rng(11)
deg = 7
ROOTS = [
    complex(z)
    for z in np.sqrt(rng.uniform(0.3**2, 2.5**2, deg))
    * np.exp(1j * rng.uniform(0, 2 * np.pi, deg))
]
prod = np.prod([-g for g in ROOTS])
poly = from_roots(ROOTS, leading=-1.0 / prod)

sink = []
report = solve_parallel(poly, trajectory_sink=sink)

print(f"degree {deg}: {len(report.tracks)} tracks launched")
for i, t in enumerate(report.tracks):
    tail = ""
    if isinstance(t.event, RootFound):
        tail = f"-> root {t.event.root:.6f}"
    print(
        f"  track {i:2d} {t.start.kind.value:4s} at theta={t.start.theta:6.3f} "
        f"({t.steps:3d} steps): {type(t.event).__name__} {tail}"
    )
print("\nroots (multiplicity, residual):")
for e in report.roots:
    print(f"  {e.root:+.12f}   x{e.multiplicity}   |f| = {e.residual:.2e}")
print(f"\nVieta check: sum error {report.vieta.sum_error:.2e}, "
      f"product error {report.vieta.product_error:.2e}")

fig, ax = plt.subplots(figsize=(7.5, 7.5))
for q, start, traj in sink:
    zs = np.array([s.r * np.exp(1j * s.theta) for s in traj.states])
    color = "tab:blue" if start.kind.value == "up" else "tab:red"
    ax.plot(zs.real, zs.imag, lw=0.8, alpha=0.65, color=color)
for g in ROOTS:
    ax.plot([g.real], [g.imag], "k*", ms=12)
ax.set_aspect("equal")
ax.set_title("preimage trajectories of all 2N tracks (stars = roots)")
out = pathlib.Path(__file__).parent / "output"
out.mkdir(exist_ok=True)
fig.savefig(out / "all_roots_parallel.png", dpi=110, bbox_inches="tight")
print(f"wrote {out / 'all_roots_parallel.png'}")
