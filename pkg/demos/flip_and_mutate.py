"""Flip a diagonal of the (7, 2) quadrangulation and mutate its quiver.

Run: python3 demos/flip_and_mutate.py [outdir]
"""

import pathlib
import sys

from dtilde import angulation as an
from dtilde import colored_quiver as cq
from dtilde import render
from dtilde.surface import SurfaceSpec, arc_str

out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)

ang = an.initial_angulation(SurfaceSpec(7, 2))
for lab, arc in ang.diagonals().items():
    print(f"{lab}: {arc_str(arc)}")

Q = an.colored_quiver(ang)
flipped = an.flip(ang, "3")
print("\nflip at 3 gives", arc_str(flipped.diagonals()["3"]))

geo = an.colored_quiver(flipped)
alg = cq.mutate(Q, "3")
print("quiver of the flip equals the mutated quiver:", geo == alg)
for (i, j, c), x in alg.arrows.items():
    if c != 0 and c != alg.m:
        print(f"  {i} ->({c}) {j}")

(out / "before.svg").write_text(render.render_angulation_svg(ang))
(out / "after.svg").write_text(render.render_angulation_svg(flipped))
(out / "mutated.dot").write_text(render.render_quiver_dot(alg))
print(f"\npictures in {out}/")
