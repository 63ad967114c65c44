"""Print part of the transjective component and one tube for (6, 2)."""

from dtilde import category as cat
from dtilde.surface import SurfaceSpec, arc_str, coord_str

spec = SurfaceSpec(6, 2)
w = cat.transjective_window(spec, 1, 0, 2)
print(f"transjective window: {len(w.vertices)} vertices, {len(w.arrows)} arrows")
for rel in cat.mesh_relations(w)[:7]:
    mids = " + ".join(coord_str(y) for y, _ in rel.terms)
    print(f"  mesh {coord_str(rel.source)} -> {mids} -> {coord_str(rel.target)}")
print("oracle:", "ok" if cat.ar_oracle_check(spec, 1, 0, 4) else "mismatch")

tube = cat.tube_window(spec, "big", 1, spec.n - 1)
print(f"\nbig tube, rank {cat.tube_rank(spec, 'big')}")
for c in tube.vertices:
    if c.rim == 0:
        arc = cat.coord_to_arc(spec, c)
        tag = "rigid" if cat.is_rigid(spec, c) else "crosses itself"
        print(f"  level {c.level}: {arc_str(arc)}  {tag}")
