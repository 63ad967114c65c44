"""Colored quivers and their mutation.

A colored quiver with color bound ``m`` stores a multiplicity ``q[i][j][c]``
for every ordered pair of distinct vertices and every color ``c`` in
``0..m``.  Mutation is implemented twice: once as the three-step
procedure and once as the closed formula, so the two can be checked
against each other.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    i: str
    j: str
    c: int
    condition: str

    def __str__(self) -> str:
        return f"{self.condition} at ({self.i},{self.j},{self.c})"


@dataclass(frozen=True)
class ColoredQuiver:
    """Immutable colored quiver.

    ``arrows`` maps ``(i, j, c)`` to a positive multiplicity.  Entries
    with multiplicity zero are dropped on construction.
    """

    m: int
    vertices: tuple
    arrows: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise QuiverError("m must be a positive integer")
        verts = tuple(str(v) for v in self.vertices)
        if len(set(verts)) != len(verts):
            raise QuiverError("duplicate vertex labels")
        vset = set(verts)
        clean = {}
        for key, mult in dict(self.arrows).items():
            i, j, c = str(key[0]), str(key[1]), int(key[2])
            if i not in vset or j not in vset:
                raise QuiverError(f"arrow {i}->{j} uses an unknown vertex")
            if not 0 <= c <= self.m:
                raise QuiverError(f"color {c} outside 0..{self.m}")
            mult = int(mult)
            if mult < 0:
                raise QuiverError("negative multiplicity")
            if mult:
                clean[(i, j, c)] = clean.get((i, j, c), 0) + mult
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", dict(sorted(clean.items(), key=_arrow_key(verts))))

    def q(self, i, j, c: int) -> int:
        return self.arrows.get((str(i), str(j), c % (self.m + 1)), 0)

    def colors(self, i, j) -> dict:
        """Nonzero colors on the ordered pair (i, j)."""
        i, j = str(i), str(j)
        return {c: self.q(i, j, c) for c in range(self.m + 1) if self.q(i, j, c)}

    @property
    def size(self) -> int:
        return sum(self.arrows.values())

    def __hash__(self):
        return hash(canonical_form(self))

    def __eq__(self, other):
        if not isinstance(other, ColoredQuiver):
            return NotImplemented
        return equals(self, other)


def _arrow_key(verts):
    pos = {v: n for n, v in enumerate(verts)}
    return lambda item: (pos[item[0][0]], pos[item[0][1]], item[0][2])


def from_arrows(m: int, vertices: Iterable, arrows: Iterable) -> ColoredQuiver:
    """Build a quiver from ``(i, j, c)`` or ``(i, j, c, mult)`` tuples."""
    table: dict = defaultdict(int)
    for a in arrows:
        i, j, c = a[:3]
        table[(str(i), str(j), int(c))] += a[3] if len(a) > 3 else 1
    return ColoredQuiver(m, tuple(vertices), dict(table))


def from_plain(m: int, vertices: Iterable, edges: Iterable) -> ColoredQuiver:
    # each plain arrow i->j becomes i->(0)j plus its partner j->(m)i
    arrows = []
    for i, j in edges:
        arrows.append((i, j, 0))
        arrows.append((j, i, m))
    return from_arrows(m, vertices, arrows)


def validate(Q: ColoredQuiver) -> list:
    """Return the list of violations; an empty list means the quiver is valid."""
    out = []
    for (i, j, c), mult in Q.arrows.items():
        if i == j:
            out.append(Violation(i, j, c, "loop"))
    seen = set()
    for (i, j, c) in Q.arrows:
        if (i, j) in seen or i == j:
            continue
        seen.add((i, j))
        cols = sorted(Q.colors(i, j))
        if len(cols) > 1:
            for c in cols:
                out.append(Violation(i, j, c, "monochromaticity"))
    for (i, j, c), mult in Q.arrows.items():
        if Q.q(j, i, Q.m - c) != mult:
            out.append(Violation(j, i, Q.m - c, "symmetry"))
    return out


def is_valid(Q: ColoredQuiver) -> bool:
    return not validate(Q)


def _check_vertex(Q: ColoredQuiver, k) -> str:
    k = str(k)
    if k not in Q.vertices:
        raise QuiverError(f"no such vertex: {k}")
    return k


def mutate(Q: ColoredQuiver, k) -> ColoredQuiver:
    """Mutation at ``k`` by the composite / cancel / recolor procedure."""
    k = _check_vertex(Q, k)
    m = Q.m
    table: dict = defaultdict(lambda: defaultdict(int))
    for (i, j, c), mult in Q.arrows.items():
        table[(i, j)][c] += mult

    into = [(i, c, a) for (i, j, c), a in Q.arrows.items() if j == k]
    out0 = [(j, b) for (i, j, c), b in Q.arrows.items() if i == k and c == 0]
    for i, c, a in into:
        for j, b in out0:
            if i != j:
                table[(i, j)][c] += a * b
                table[(j, i)][m - c] += a * b

    # cancellation only after all composites are in place
    for pair, cols in table.items():
        live = {c: x for c, x in cols.items() if x > 0}
        while len(live) > 1:
            low = min(live.values())
            live = {c: x - low for c, x in live.items() if x > low}
        table[pair] = live

    arrows = {}
    for (i, j), cols in table.items():
        for c, x in cols.items():
            if j == k:
                c = (c + 1) % (m + 1)
            elif i == k:
                c = (c - 1) % (m + 1)
            arrows[(i, j, c)] = x
    return ColoredQuiver(m, Q.vertices, arrows)


def mutate_formula(Q: ColoredQuiver, k, uncorrected: bool = False) -> ColoredQuiver:
    """Mutation at ``k`` by the closed piecewise formula.

    Colors are read mod ``m + 1``.  With ``uncorrected=True`` the two
    cases at ``k`` are swapped, giving the formula exactly as printed,
    which disagrees with the procedure.
    """
    k = _check_vertex(Q, k)
    m = Q.m
    q = Q.q
    into, out = 1, -1
    if uncorrected:
        into, out = -1, 1
    arrows = {}
    for i in Q.vertices:
        for j in Q.vertices:
            if i == j:
                continue
            for c in range(m + 1):
                if j == k:
                    v = q(i, j, c - into)
                elif i == k:
                    v = q(i, j, c - out)
                else:
                    v = q(i, j, c) - sum(q(i, j, t) for t in range(m + 1) if t != c)
                    v += (q(i, k, c) - q(i, k, c - 1)) * q(k, j, 0)
                    v += q(i, k, m) * (q(k, j, c) - q(k, j, c + 1))
                    v = max(0, v)
                if v:
                    arrows[(i, j, c)] = v
    return ColoredQuiver(m, Q.vertices, arrows)


def is_regular_at(Q: ColoredQuiver, k) -> bool:
    """True when the closed formula is known to agree with the procedure.

    Every composite ``i ->(c) k ->(0) j`` must land on a pair ``(i, j)``
    that is empty or already carries color ``c`` or ``c + 1`` (``0`` or
    ``m`` when ``c = m``).
    """
    k = _check_vertex(Q, k)
    m = Q.m
    for i in Q.vertices:
        for j in Q.vertices:
            if k in (i, j) or i == j or not Q.q(k, j, 0):
                continue
            old = Q.colors(i, j)
            if not old:
                continue
            c0 = next(iter(old))
            for c in Q.colors(i, k):
                allowed = (0, m) if c == m else (c, c + 1)
                if c0 not in allowed:
                    return False
    return True


def gabriel_subquiver(Q: ColoredQuiver) -> list:
    """Color-0 arrows as a sorted list of ``(i, j, mult)``."""
    return [(i, j, x) for (i, j, c), x in Q.arrows.items() if c == 0]


def to_dict(Q: ColoredQuiver) -> dict:
    return {
        "m": Q.m,
        "vertices": list(Q.vertices),
        "arrows": [
            {"from": i, "to": j, "color": c, "mult": x}
            for (i, j, c), x in Q.arrows.items()
        ],
    }


def from_dict(data: dict) -> ColoredQuiver:
    try:
        arrows = [
            (a["from"], a["to"], a["color"], a.get("mult", 1)) for a in data["arrows"]
        ]
        return from_arrows(int(data["m"]), data["vertices"], arrows)
    except (KeyError, TypeError) as exc:
        raise QuiverError(f"malformed quiver JSON: {exc}") from exc


def to_json(Q: ColoredQuiver) -> str:
    return json.dumps(to_dict(Q), indent=2) + "\n"


def from_json(text: str) -> ColoredQuiver:
    return from_dict(json.loads(text))


def canonical_form(Q: ColoredQuiver) -> bytes:
    """Compact, order-free byte encoding."""
    body = {
        "m": Q.m,
        "vertices": list(Q.vertices),
        "arrows": sorted([i, j, c, x] for (i, j, c), x in Q.arrows.items()),
    }
    return json.dumps(body, separators=(",", ":"), sort_keys=True).encode()


def equals(a: ColoredQuiver, b: ColoredQuiver) -> bool:
    return canonical_form(a) == canonical_form(b)


def to_dot(Q: ColoredQuiver, name: str = "Q") -> str:
    lines = [f"digraph {name} {{"]
    for v in Q.vertices:
        lines.append(f'  "{v}";')
    for (i, j, c), x in Q.arrows.items():
        for _ in range(x):
            lines.append(f'  "{i}" -> "{j}" [label="({c})"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def random_quiver(rng, n: int, m: int, max_mult: int = 2, density: float = 0.5) -> ColoredQuiver:
    """Random valid quiver on vertices ``1..n`` drawn from ``rng``."""
    verts = [str(v) for v in range(1, n + 1)]
    arrows = {}
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() >= density:
                continue
            c = rng.randrange(m + 1)
            x = rng.randint(1, max_mult)
            arrows[(verts[a], verts[b], c)] = x
            arrows[(verts[b], verts[a], m - c)] = x
    return ColoredQuiver(m, tuple(verts), arrows)
