"""Translation quivers of m-diagonals.

Vertices of a window are Auslander-Reiten coordinates; each coordinate
names an arc, and arrows are computed from elementary moves between
those arcs.  The AR translation moves both ends of an arc ``m`` steps
counterclockwise, which is ``surface.tau_inv``.

``ar_oracle_check`` compares a transjective window against the
repetition quiver of the fixed orientation, built by knitting alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import surface as sf
from .angulation import initial_angulation
from .surface import SurfaceSpec, Transjective, TubeBig, TubeSmall


class CategoryError(ValueError):
    pass


# --- coordinates <-> arcs -------------------------------------------------

def _slots(spec: SurfaceSpec) -> dict:
    classes = initial_angulation(spec).diagonals()
    return {int(lab): arc for lab, arc in classes.items()}


def coord_to_arc(spec: SurfaceSpec, c, slots=None):
    m = spec.m
    if not 1 <= c.d <= m:
        raise CategoryError(f"shift index {c.d} outside 1..{m}")
    if isinstance(c, Transjective):
        slots = slots or _slots(spec)
        if c.slot not in slots:
            raise CategoryError(f"slot {c.slot} outside 1..{spec.n + 1}")
        return sf._step(spec, slots[c.slot], (c.d - 1) - c.t * m)
    if c.level < 1:
        raise CategoryError("tube levels start at 1")
    if isinstance(c, TubeBig):
        rim = c.rim % (spec.n - 2)
        return sf.BoundaryPath(c.d + rim * m, c.level * m + 1)
    if isinstance(c, TubeSmall):
        return sf.Bridge(c.family, c.level, c.rim % 2, c.d)
    raise CategoryError(f"not a coordinate: {c!r}")


def arc_to_coord(spec: SurfaceSpec, a, slots=None):
    m = spec.m
    if isinstance(a, sf.Bridge):
        return TubeSmall(a.family, a.d, a.rim, a.level)
    if isinstance(a, sf.BoundaryPath):
        if (a.s - 1) % m or a.s <= 1:
            raise CategoryError(f"{sf.arc_str(a)} is not admissible")
        d = (a.a - 1) % m + 1
        return TubeBig(d, ((a.a - d) // m) % (spec.n - 2), (a.s - 1) // m)
    slots = slots or _slots(spec)
    lo, hi = sf.lifts(spec, a)
    d = (lo - 1) % m + 1
    for slot, base in slots.items():
        x, y = sf.lifts(spec, sf._step(spec, base, d - 1))
        if lo - x != hi - y or (x - lo) % m:
            continue
        t = (x - lo) // m
        c = Transjective(d, t, slot)
        if coord_to_arc(spec, c, slots) == a:
            return c
    raise CategoryError(f"{sf.arc_str(a)} is not admissible")


def tau_coord(spec: SurfaceSpec, c):
    """AR translate of a coordinate."""
    if isinstance(c, Transjective):
        return Transjective(c.d, c.t + 1, c.slot)
    if isinstance(c, TubeBig):
        return TubeBig(c.d, (c.rim - 1) % (spec.n - 2), c.level)
    return TubeSmall(c.family, c.d, (c.rim + 1) % 2, c.level)


def is_rigid(spec: SurfaceSpec, c) -> bool:
    if isinstance(c, Transjective):
        return True
    rank = spec.n - 2 if isinstance(c, TubeBig) else 2
    return c.level <= rank - 1


# --- windows ----------------------------------------------------------------

@dataclass(frozen=True)
class Window:
    spec: SurfaceSpec
    kind: str
    vertices: tuple
    arrows: tuple
    tau: dict = field(default_factory=dict)
    exempt: tuple = ()      # vertices whose mesh leaves the window


@dataclass(frozen=True)
class MeshRelation:
    target: object
    source: object          # tau of the target
    terms: tuple            # (middle vertex, companion arrow present)


@dataclass
class Report:
    ok: bool
    problems: list
    exempt: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _build(spec, kind, coords, tau_rule, exempt):
    slots = _slots(spec)
    arcs = {c: coord_to_arc(spec, c, slots) for c in coords}
    arrows = tuple((u, v) for u in coords for v in coords
                   if u != v and sf.elementary_move_exists(spec, arcs[u], arcs[v]))
    back = {a: c for c, a in arcs.items()}
    tau = {}
    for c in coords:
        img = back.get(tau_rule(spec, arcs[c]))
        if img is not None:
            tau[c] = img
    return Window(spec, kind, tuple(coords), arrows, tau, tuple(exempt))


def transjective_window(spec: SurfaceSpec, d: int, t_min: int, t_max: int,
                        tau_rule=None) -> Window:
    if not 1 <= d <= spec.m:
        raise CategoryError(f"shift index {d} outside 1..{spec.m}")
    if t_min > t_max:
        raise CategoryError("empty t-range")
    coords = [Transjective(d, t, s) for t in range(t_min, t_max + 1)
              for s in range(1, spec.n + 2)]
    exempt = [c for c in coords if c.t == t_max]
    return _build(spec, "transjective", coords, tau_rule or sf.tau_inv, exempt)


def _family(family):
    names = {"big": "big", "small0": 0, "small1": 1, 0: 0, 1: 1}
    if family not in names:
        raise CategoryError(f"unknown tube family {family!r}")
    return names[family]


def tube_rank(spec: SurfaceSpec, family) -> int:
    return spec.n - 2 if _family(family) == "big" else 2


def tube_window(spec: SurfaceSpec, family, d: int, max_level: int) -> Window:
    fam = _family(family)
    if not 1 <= d <= spec.m:
        raise CategoryError(f"shift index {d} outside 1..{spec.m}")
    if max_level < 1:
        raise CategoryError("max_level must be at least 1")
    rank = tube_rank(spec, fam)
    if fam == "big":
        coords = [TubeBig(d, r, lv) for lv in range(1, max_level + 1) for r in range(rank)]
        kind = "big"
    else:
        coords = [TubeSmall(fam, d, r, lv) for lv in range(1, max_level + 1) for r in range(rank)]
        kind = f"small{fam}"
    exempt = [c for c in coords if c.level == max_level]
    return _build(spec, kind, coords, sf.tau_inv, exempt)


def mesh_relations(w: Window) -> list:
    arrows = set(w.arrows)
    incoming: dict = {}
    for u, v in w.arrows:
        incoming.setdefault(v, []).append(u)
    out = []
    for x in w.vertices:
        tx = w.tau.get(x)
        if tx is None:
            continue
        terms = tuple((y, (tx, y) in arrows) for y in incoming.get(x, []))
        out.append(MeshRelation(x, tx, terms))
    return out


def is_stable_translation_quiver(w: Window) -> Report:
    problems = []
    arrows = set(w.arrows)
    vset = set(w.vertices)
    exempt = set(w.exempt)
    images = list(w.tau.values())
    if len(set(images)) != len(images):
        problems.append("tau is not injective")
    for x in w.vertices:
        if x not in w.tau and x not in exempt:
            problems.append(f"tau undefined at interior vertex {x}")
    for x, tx in w.tau.items():
        for y in vset:
            if (y, x) in arrows and (tx, y) not in arrows:
                problems.append(f"arrow {y}->{x} has no companion {tx}->{y}")
            if (tx, y) in arrows and (y, x) not in arrows:
                problems.append(f"arrow {tx}->{y} has no companion {y}->{x}")
    return Report(not problems, problems, sorted(exempt))


# --- knitting oracle --------------------------------------------------------

def orientation(n: int) -> list:
    """Arrows of the fixed orientation on slots ``1..n+1``."""
    if n == 4:
        return [(j, 1) for j in (2, 3, 4, 5)]
    arrows = [(n, n - 1), (n + 1, n - 1), (n - 1, 1)]
    arrows += [(k, k + 1) for k in range(1, n - 4)]
    arrows += [(n - 4, n - 3), (n - 4, n - 2)]
    return arrows


def knit(n: int, t_min: int, t_max: int) -> set:
    """Arrows of the repetition quiver on ``(t, slot)``; ``t`` counts tau."""
    out = set()
    for i, j in orientation(n):
        for t in range(t_min, t_max + 1):
            out.add(((t, i), (t, j)))
            if t - 1 >= t_min:
                out.add(((t, j), (t - 1, i)))
    return out


def ar_oracle_check(spec: SurfaceSpec, d: int, t_min: int, t_max: int,
                    tau_rule=None) -> Report:
    w = transjective_window(spec, d, t_min, t_max, tau_rule)
    got = {((u.t, u.slot), (v.t, v.slot)) for u, v in w.arrows}
    want = knit(spec.n, t_min, t_max)
    problems = []
    for a in sorted(want - got):
        problems.append(f"missing arrow {a[0]}->{a[1]}")
    for a in sorted(got - want):
        problems.append(f"extra arrow {a[0]}->{a[1]}")
    for c in w.vertices:
        if c.t < t_max and w.tau.get(c) != Transjective(d, c.t + 1, c.slot):
            problems.append(f"tau of {sf.coord_str(c)} is {w.tau.get(c)}")
    return Report(not problems, problems[:20])


# --- export -----------------------------------------------------------------

def window_to_dict(w: Window) -> dict:
    order = {c: k for k, c in enumerate(w.vertices)}
    return {
        "spec": {"n": w.spec.n, "m": w.spec.m},
        "kind": w.kind,
        "vertices": [sf.coord_to_dict(c) for c in w.vertices],
        "arrows": [[order[u], order[v]] for u, v in w.arrows],
        "tau": [[order[c], order[t]] for c, t in w.tau.items()],
        "exempt": [order[c] for c in w.exempt],
    }


def window_to_json(w: Window) -> str:
    return json.dumps(window_to_dict(w), indent=2) + "\n"


def window_to_dot(w: Window, name: str = "W") -> str:
    lines = [f"digraph {name} {{"]
    for rel in mesh_relations(w):
        mids = " + ".join(sf.coord_str(y) for y, _ in rel.terms) or "0"
        lines.append(f"  // mesh at {sf.coord_str(rel.target)}: {mids}")
    for c in w.vertices:
        lines.append(f'  "{sf.coord_str(c)}";')
    for u, v in w.arrows:
        lines.append(f'  "{sf.coord_str(u)}" -> "{sf.coord_str(v)}";')
    for c, t in w.tau.items():
        lines.append(f'  "{sf.coord_str(c)}" -> "{sf.coord_str(t)}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
