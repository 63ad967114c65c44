"""(m+2)-angulations as combinatorial maps.

An angulation is stored by its interior faces.  Each face is a closed
walk of darts ``(key, +1 | -1)`` over three kinds of edges:

* ``("b", v)``: boundary edge ``v -> v+1``, walked forwards by faces;
* ``("h", X, j)``: side ``X_j -> X_{j+1}`` of inner polygon ``X``,
  walked backwards by faces (for ``m = 1`` a single zero-weight side);
* ``("d", label)``: a diagonal.

Every edge carries the word of the cuts it crosses, so the class of a
diagonal can be read off its word.  The vertex rotation, the face
permutation and the dart involution are derived from the faces.

A pole that carries radii has a tag ``left`` or ``right``: every radius
to that pole is tangent on that side, and a loop around the pole is the
representative of the other side.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Mapping

from . import colored_quiver as cq
from . import surface as sf
from .surface import LEFT, RIGHT, R, S, SurfaceSpec


class AngulationError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    u: tuple
    v: tuple
    word: tuple = ()


@dataclass(frozen=True)
class Angulation:
    spec: SurfaceSpec
    arcs: Mapping           # label -> Edge
    faces: tuple            # tuple of tuples of darts
    tags: Mapping = field(default_factory=lambda: {R: RIGHT, S: RIGHT})

    @property
    def labels(self) -> list:
        return sorted(self.arcs, key=_label_key)

    def edge(self, key) -> Edge:
        if key[0] == "d":
            return self.arcs[key[1]]
        return fixed_edge(self.spec, key)

    def diagonals(self) -> dict:
        return {lab: arc_class(self, lab) for lab in self.labels}


def _label_key(lab):
    return (0, int(lab), "") if str(lab).isdigit() else (1, 0, str(lab))


def fixed_edge(spec: SurfaceSpec, key) -> Edge:
    if key[0] == "b":
        v = key[1]
        return Edge(("P", v), ("P", v % spec.N + 1), sf.G if v == spec.N else ())
    if key[0] == "h":
        _, pole, j = key
        h = spec.thick
        letter = 1 if pole == R else 2
        return Edge((pole, j), (pole, (j + 1) % h), (letter,) if j == 0 else ())
    raise AngulationError(f"unknown edge key {key!r}")


def weight(spec: SurfaceSpec, dart) -> int:
    return 0 if (spec.m == 1 and dart[0][0] == "h") else 1


def source(ang: Angulation, dart):
    e = ang.edge(dart[0])
    return e.u if dart[1] > 0 else e.v


def target(ang: Angulation, dart):
    e = ang.edge(dart[0])
    return e.v if dart[1] > 0 else e.u


def dart_word(ang: Angulation, dart) -> tuple:
    w = ang.edge(dart[0]).word
    return w if dart[1] > 0 else sf.inv(w)


def walk_word(ang: Angulation, darts) -> tuple:
    return sf.mul(*(dart_word(ang, d) for d in darts))


def _boundary(start: int, stop: int):
    return [(("b", v), 1) for v in range(start, stop)]


def _sides_ccw(spec: SurfaceSpec, pole: str):
    return [(("h", pole, j), -1) for j in reversed(range(spec.thick))]


def initial_angulation(spec: SurfaceSpec) -> Angulation:
    n, m, N = spec.n, spec.m, spec.N
    P1 = ("P", 1)
    arcs = {}
    faces = []
    if n == 4:
        hang = ("P", m + 1)
        arcs["1"] = Edge(P1, hang, (-1,))
        arcs["5"] = Edge(P1, P1, (-1,))
        arcs["4"] = Edge(P1, (R, 0))
        arcs["2"] = Edge(hang, hang, (-2,))
        arcs["3"] = Edge(hang, (S, 0))
        faces.append(_boundary(1, m + 1) + [(("d", "1"), -1), (("d", "5"), 1)])
        faces.append(_boundary(m + 1, N + 1) + [(("d", "1"), 1), (("d", "2"), 1)])
        r_pair, s_pair = ("5", "4"), ("2", "3")
    else:
        split = {1: str(n - 1)}
        for k in range(2, n - 2):
            split[k] = str(k - 1)
        for k, lab in split.items():
            arcs[lab] = Edge(P1, ("P", k * m + 1), (-1,))
        r_pair = (str(n + 1), str(n))
        s_pair = (str(n - 3), str(n - 2))
        arcs[r_pair[0]] = Edge(P1, P1, (-1,))
        arcs[r_pair[1]] = Edge(P1, (R, 0))
        arcs[s_pair[0]] = Edge(P1, P1, (-1, -2, 1))
        arcs[s_pair[1]] = Edge(P1, (S, 0), (-1,))
        faces.append(_boundary(1, m + 1) + [(("d", split[1]), -1), (("d", r_pair[0]), 1)])
        for k in range(1, n - 3):
            faces.append(_boundary(k * m + 1, (k + 1) * m + 1)
                         + [(("d", split[k + 1]), -1), (("d", split[k]), 1)])
        faces.append(_boundary((n - 3) * m + 1, N + 1)
                     + [(("d", s_pair[0]), 1), (("d", split[n - 3]), 1)])
    for pole, (loop, rad) in ((R, r_pair), (S, s_pair)):
        faces.append([(("d", loop), -1), (("d", rad), 1)]
                     + _sides_ccw(spec, pole) + [(("d", rad), -1)])
    return orient(Angulation(spec, arcs, tuple(tuple(f) for f in faces), {R: RIGHT, S: RIGHT}))


# --- structure --------------------------------------------------------------

def face_weight(ang: Angulation, face) -> int:
    return sum(weight(ang.spec, d) for d in face)


def faces(ang: Angulation) -> list:
    return [list(f) for f in ang.faces]


def is_closed(ang: Angulation, face) -> bool:
    return all(target(ang, face[i]) == source(ang, face[(i + 1) % len(face)])
               for i in range(len(face)))


def self_folded(ang: Angulation) -> dict:
    """Map loop label -> (radius label, pole) for every self-folded face."""
    out = {}
    for face in ang.faces:
        labs = Counter(d[0][1] for d in face if d[0][0] == "d")
        doubled = [lab for lab, c in labs.items() if c == 2]
        single = [lab for lab, c in labs.items() if c == 1]
        if len(doubled) == 1 and len(single) == 1:
            rad, loop = doubled[0], single[0]
            e = ang.arcs[rad]
            ends = {e.u[0], e.v[0]} - {"P"}
            # a loop based on one pole encloses the other
            ends.discard(ang.arcs[loop].u[0])
            out[loop] = (rad, ends.pop())
    return out


def validate(ang: Angulation) -> list:
    """Diagnostic list of problems; empty means a valid angulation."""
    spec = ang.spec
    out = []
    if len(ang.arcs) != spec.n + 1:
        out.append(f"diagonal count {len(ang.arcs)} != {spec.n + 1}")
    known = set(_fixed_darts(spec)) | {(("d", lab), s) for lab in ang.arcs for s in (1, -1)}
    known |= {(d[0], -d[1]) for d in known}
    stray = [d for face in ang.faces for d in face if d not in known]
    if stray:
        return out + [f"unknown dart {d}" for d in stray]
    seen = Counter()
    for idx, face in enumerate(ang.faces):
        size = face_weight(ang, face)
        if size != spec.m + 2:
            out.append(f"face {idx} has {size} sides, expected {spec.m + 2}")
        if not is_closed(ang, face):
            out.append(f"face {idx} is not a closed walk")
        elif walk_word(ang, face):
            out.append(f"face {idx} is not contractible")
        seen.update(face)
    expected = set(_fixed_darts(spec))
    for lab in ang.arcs:
        expected |= {(("d", lab), 1), (("d", lab), -1)}
    for d in expected:
        if seen[d] != 1:
            out.append(f"dart {d} used {seen[d]} times")
    for d in seen:
        if d not in expected:
            out.append(f"stray dart {d}")
    return out


def _fixed_darts(spec: SurfaceSpec):
    for v in range(1, spec.N + 1):
        yield (("b", v), 1)
    for pole in (R, S):
        for j in range(spec.thick):
            yield (("h", pole, j), -1)


def rotation_system(ang: Angulation) -> dict:
    """Cyclic order of outgoing darts at each vertex."""
    spec = ang.spec
    cycles = [list(f) for f in ang.faces]
    cycles.append([(("b", v), -1) for v in range(spec.N, 0, -1)])
    for pole in (R, S):
        cycles.append([(("h", pole, j), 1) for j in range(spec.thick)])
    nxt = {}
    for c in cycles:
        for i, d in enumerate(c):
            nxt[d] = c[(i + 1) % len(c)]
    rot = defaultdict(list)
    done = set()
    for d in sorted(nxt, key=repr):
        if d in done:
            continue
        x = source(ang, d)
        cyc, cur = [], d
        while cur not in done:
            done.add(cur)
            cyc.append(cur)
            cur = nxt[(cur[0], -cur[1])]
        rot[x].append(cyc)
    return dict(rot)


# --- classes ------------------------------------------------------------------

def arc_class(ang: Angulation, label) -> sf.MDiagonal:
    spec = ang.spec
    e = ang.arcs[label]
    u, v, word = e.u, e.v, e.word
    if u[0] != "P" and v[0] == "P":
        u, v, word = v, u, sf.inv(word)
    if u[0] == "P" and v[0] == "P":
        loop_sides = {p: sf.other_side(t) for p, t in ang.tags.items()}
        return sf.classify_chord(spec, u[1], v[1], word, loop_sides)
    if u[0] == "P":
        return sf.classify_radius(spec, u[1], v[0], word, ang.tags[v[0]])
    if {u[0], v[0]} == {R, S}:
        return sf.bridge_class(ang.tags[R], ang.tags[S])
    folded = self_folded(ang)
    if u[0] == v[0] and label in folded:
        # loop on a thick vertex: the partner bridge with the enclosed side toggled
        tags = dict(ang.tags)
        pole = folded[label][1]
        tags[pole] = sf.other_side(tags[pole])
        return sf.bridge_class(tags[R], tags[S])
    raise sf.OutOfRange(f"arc {label} joins {u} and {v}")


# --- flips ------------------------------------------------------------------

def relabel(ang: Angulation, mapping: Mapping, tags=None) -> Angulation:
    """Rename diagonals; labels missing from ``mapping`` are kept."""
    ren = {str(k): str(v) for k, v in mapping.items()}
    new = [ren.get(k, k) for k in ang.arcs]
    if len(set(new)) != len(new):
        raise AngulationError("relabelling is not injective")
    arcs = {ren.get(k, k): e for k, e in ang.arcs.items()}
    fs = tuple(tuple(((("d", ren.get(d[0][1], d[0][1])) if d[0][0] == "d" else d[0]), d[1])
                     for d in f) for f in ang.faces)
    return Angulation(ang.spec, arcs, fs, dict(tags or ang.tags))


def _swap_labels(ang: Angulation, a, b, tags) -> Angulation:
    return relabel(ang, {a: b, b: a}, tags)


def _edge_key(e: Edge) -> tuple:
    return (_vname(e.u), _vname(e.v), sf.word_str(e.word))


def orient(ang: Angulation) -> Angulation:
    """Point every diagonal the way with the smaller (from, to, word) key."""
    flipped = set()
    arcs = {}
    for lab, e in ang.arcs.items():
        back = Edge(e.v, e.u, sf.inv(e.word))
        if _edge_key(back) < _edge_key(e):
            flipped.add(lab)
            e = back
        arcs[lab] = e
    if not flipped:
        return ang
    fs = tuple(tuple((d[0], -d[1]) if d[0][0] == "d" and d[0][1] in flipped else d for d in f)
               for f in ang.faces)
    return Angulation(ang.spec, arcs, fs, dict(ang.tags))


def canonical(ang: Angulation) -> Angulation:
    """Orient diagonals and give every pole carrying a self-folded pair the tag ``right``."""
    ang = orient(ang)
    for loop, (rad, pole) in sorted(self_folded(ang).items()):
        if pole in (R, S) and ang.tags[pole] == LEFT:
            tags = dict(ang.tags)
            tags[pole] = RIGHT
            ang = _swap_labels(ang, loop, rad, tags)
    return ang


def normalize_for_flip(ang: Angulation, label) -> Angulation:
    """Make ``label`` sit on a flippable edge.

    A radius inside a self-folded face trades places with its loop, and
    the pole tag toggles so that every label keeps its class.
    """
    label = str(label)
    if label not in ang.arcs:
        raise AngulationError(f"no diagonal labelled {label}")
    for loop, (rad, pole) in self_folded(ang).items():
        if rad == label:
            tags = dict(ang.tags)
            tags[pole] = sf.other_side(tags[pole])
            return _swap_labels(ang, loop, rad, tags)
    return ang


def _cyc(seq, a: int, b: int) -> list:
    return list(seq[a:b]) if a < b else list(seq[a:]) + list(seq[:b])


def _flip(ang: Angulation, label, step: int) -> Angulation:
    label = str(label)
    ang = normalize_for_flip(ang, label)
    key = ("d", label)
    f1 = f2 = None
    for idx, face in enumerate(ang.faces):
        if (key, 1) in face:
            f1 = idx
        if (key, -1) in face:
            f2 = idx
    if f1 == f2:
        raise AngulationError(f"diagonal {label} bounds a single face")
    a, b = list(ang.faces[f1]), list(ang.faces[f2])
    i, j = a.index((key, 1)), b.index((key, -1))
    merged = a[i + 1:] + a[:i] + b[j + 1:] + b[:j]
    real = [k for k, d in enumerate(merged) if weight(ang.spec, d)]
    m = ang.spec.m
    if len(real) != 2 * m + 2:
        raise AngulationError("faces around the diagonal are not (m+2)-gons")
    if step > 0:
        pa, pb = real[1], real[m + 2]
    else:
        pa, pb = real[2 * m + 1], real[m]
    g1 = _cyc(merged, pa, pb)
    g2 = _cyc(merged, pb, pa)
    new = Edge(source(ang, merged[pa]), source(ang, merged[pb]), walk_word(ang, g1))
    arcs = dict(ang.arcs)
    arcs[label] = new
    rest = [f for k, f in enumerate(ang.faces) if k not in (f1, f2)]
    fs = rest + [tuple(g1 + [(key, -1)]), tuple(g2 + [(key, 1)])]
    return canonical(Angulation(ang.spec, arcs, tuple(fs), dict(ang.tags)))


def flip(ang: Angulation, label) -> Angulation:
    return _flip(ang, label, 1)


def flip_inverse(ang: Angulation, label) -> Angulation:
    return _flip(ang, label, -1)


def twist(ang: Angulation, label) -> sf.MDiagonal:
    return arc_class(flip(ang, label), str(label))


def remove_arc(ang: Angulation, label) -> Angulation:
    """Drop a diagonal, gluing its two sides; used for diagnostics."""
    label = str(label)
    key = ("d", label)
    hit = [k for k, f in enumerate(ang.faces) if (key, 1) in f or (key, -1) in f]
    glued = []
    for k in hit:
        glued += [d for d in ang.faces[k] if d[0] != key]
    arcs = {k: e for k, e in ang.arcs.items() if k != label}
    fs = [f for k, f in enumerate(ang.faces) if k not in hit] + [tuple(glued)]
    return Angulation(ang.spec, arcs, tuple(fs), dict(ang.tags))


# --- quivers ----------------------------------------------------------------

def colored_quiver(ang: Angulation) -> cq.ColoredQuiver:
    spec = ang.spec
    size = spec.m + 2
    folded = self_folded(ang)
    radii = {rad for rad, _ in folded.values()}
    table: dict = defaultdict(Counter)
    for face in ang.faces:
        occ, pos = [], 0
        for d in face:
            if d[0][0] == "d":
                occ.append((pos, d[0][1]))
            pos += weight(spec, d)
        labs = [lab for _, lab in occ]
        if any(lab in radii for lab in labs):
            continue
        if len(set(labs)) != len(labs):
            raise AngulationError(f"diagonal repeated in face {face}")
        for p, x in occ:
            for q, y in occ:
                if x == y:
                    continue
                c = (q - p - 1) % size
                for x2 in _expand(x, folded):
                    for y2 in _expand(y, folded):
                        table[(x2, y2)][c] += 1
    arrows = {}
    for (x, y), cols in table.items():
        live = {c: k for c, k in cols.items() if k}
        while len(live) > 1:
            low = min(live.values())
            live = {c: k - low for c, k in live.items() if k > low}
        for c, k in live.items():
            arrows[(x, y, c)] = k
    return cq.ColoredQuiver(spec.m, tuple(ang.labels), arrows)


def _expand(lab, folded) -> tuple:
    if lab in folded:
        return (lab, folded[lab][0])
    return (lab,)


def plain_quiver(ang: Angulation) -> list:
    """Arrows ``(i, j, mult)``: the color-0 arrows of the colored quiver, reversed."""
    return sorted((j, i, k) for i, j, k in cq.gabriel_subquiver(colored_quiver(ang)))


# --- comparison and persistence --------------------------------------------

def signature(ang: Angulation) -> tuple:
    """Label-respecting structural key: classes, tags and face label cycles."""
    def face_key(face):
        labs = tuple((d[0][0], d[0][1] if d[0][0] != "h" else d[0][1:], d[1]) for d in face)
        rots = [labs[i:] + labs[:i] for i in range(len(labs))]
        return min(rots, key=repr)
    try:
        classes = tuple(sorted((lab, repr(c)) for lab, c in ang.diagonals().items()))
    except sf.SurfaceError:
        classes = ()
    fs = tuple(sorted((face_key(f) for f in ang.faces), key=repr))
    return (ang.spec, classes, tuple(sorted(ang.tags.items())), fs)


def same(a: Angulation, b: Angulation) -> bool:
    return signature(a) == signature(b)


def same_classes(a: Angulation, b: Angulation) -> bool:
    """Equal as labelled sets of m-diagonals with equal pole tags.

    Two maps can differ by a twist around a pole and still carry the
    same classes; this is the equality that flips respect.
    """
    return a.spec == b.spec and dict(a.tags) == dict(b.tags) and a.diagonals() == b.diagonals()


def _vname(x) -> str:
    return f"{x[0]}{x[1]}"


def _vparse(s: str) -> tuple:
    return (s[0], int(s[1:]))


def _dname(d) -> str:
    key, sgn = d
    sign = "+" if sgn > 0 else "-"
    return ":".join(str(x) for x in key) + sign


def _dparse(s: str):
    body, sign = s[:-1], s[-1]
    parts = body.split(":")
    if parts[0] == "d":
        key = ("d", ":".join(parts[1:]))
    elif parts[0] == "b":
        key = ("b", int(parts[1]))
    else:
        key = ("h", parts[1], int(parts[2]))
    return (key, 1 if sign == "+" else -1)


def _wparse(s: str) -> tuple:
    names = {"r": 1, "R": -1, "s": 2, "S": -2}
    return sf.reduce(names[c] for c in s if c != "1")


def to_dict(ang: Angulation) -> dict:
    diags = []
    for lab in ang.labels:
        try:
            arc = sf.arc_to_dict(arc_class(ang, lab))
        except sf.SurfaceError:
            arc = None
        diags.append({"label": lab, "arc": arc})
    return {
        "spec": {"n": ang.spec.n, "m": ang.spec.m},
        "diagonals": diags,
        "rotations": {
            "tags": {p: ang.tags[p] for p in (R, S)},
            "edges": {lab: {"from": _vname(e.u), "to": _vname(e.v), "word": sf.word_str(e.word)}
                      for lab, e in ((lab, ang.arcs[lab]) for lab in ang.labels)},
            "faces": _canonical_faces(ang),
        },
    }


def _canonical_faces(ang: Angulation) -> list:
    # each face starts at its least dart name; faces sorted
    out = []
    for f in ang.faces:
        names = [_dname(d) for d in f]
        k = min(range(len(names)), key=lambda i: names[i:] + names[:i])
        out.append(names[k:] + names[:k])
    return sorted(out)


def to_json(ang: Angulation) -> str:
    return json.dumps(to_dict(ang), indent=2) + "\n"


def from_dict(data: dict) -> Angulation:
    try:
        spec = SurfaceSpec(int(data["spec"]["n"]), int(data["spec"]["m"]))
        rot = data.get("rotations")
        if rot is None:
            wanted = {d["label"]: sf.arc_from_dict(d["arc"]) for d in data["diagonals"]}
            return reconstruct(spec, wanted)
        arcs = {lab: Edge(_vparse(e["from"]), _vparse(e["to"]), _wparse(e["word"]))
                for lab, e in rot["edges"].items()}
        fs = tuple(tuple(_dparse(x) for x in f) for f in rot["faces"])
        tags = {R: rot["tags"][R], S: rot["tags"][S]}
    except (KeyError, TypeError, ValueError, IndexError, AttributeError) as exc:
        raise AngulationError(f"malformed angulation JSON: {exc}") from exc
    return Angulation(spec, arcs, fs, tags)


def from_json(text: str) -> Angulation:
    return from_dict(json.loads(text))


def reconstruct(spec: SurfaceSpec, wanted: dict, depth: int = 6) -> Angulation:
    """Find an angulation with the given labelled classes by flip search."""
    target_set = {(str(k), v) for k, v in wanted.items()}
    start = initial_angulation(spec)
    frontier = [start]
    seen = {signature(start)}
    for _ in range(depth + 1):
        nxt = []
        for ang in frontier:
            try:
                if set(ang.diagonals().items()) == target_set:
                    return ang
            except sf.SurfaceError:
                pass
            for lab in ang.labels:
                for op in (flip, flip_inverse):
                    b = op(ang, lab)
                    key = signature(b)
                    if key not in seen:
                        seen.add(key)
                        nxt.append(b)
        frontier = nxt
    raise AngulationError("no angulation with these classes within search depth")
