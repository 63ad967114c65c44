"""SVG pictures of angulations and DOT output for quivers and windows."""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from . import category as cat
from . import colored_quiver as cq
from .angulation import Angulation, fixed_edge
from .surface import R, S, arc_str


@dataclass(frozen=True)
class RenderConfig:
    size: int = 480
    radius: float = 200.0
    pole_offset: float = 0.45      # fraction of the radius
    pole_radius: float = 16.0
    palette: tuple = ("#1f4e9c", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#117a65")
    labels: bool = True
    max_word: int = 6              # longer words get a dashed placeholder


def _f(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class _Layout:
    def __init__(self, ang: Angulation, cfg: RenderConfig):
        self.spec = ang.spec
        self.cfg = cfg
        self.c = cfg.size / 2

    def boundary(self, v: int) -> tuple:
        # vertex 1 at the bottom, numbered clockwise on screen
        N = self.spec.N
        phi = math.pi / 2 + (v - 1) * 2 * math.pi / N
        return (self.c + self.cfg.radius * math.cos(phi), self.c + self.cfg.radius * math.sin(phi))

    def pole(self, X: str) -> tuple:
        dx = self.cfg.radius * self.cfg.pole_offset
        return (self.c - dx, self.c) if X == R else (self.c + dx, self.c)

    def thick(self, X: str, j: int) -> tuple:
        h = self.spec.thick
        px, py = self.pole(X)
        if h == 1:
            return px, py - self.cfg.pole_radius
        phi = -math.pi / 2 + j * 2 * math.pi / h
        return (px + self.cfg.pole_radius * math.cos(phi), py + self.cfg.pole_radius * math.sin(phi))

    def point(self, vert) -> tuple:
        if vert[0] == "P":
            return self.boundary(vert[1])
        return self.thick(vert[0], vert[1])

    def waypoint(self, letter: int) -> tuple:
        # cuts run from the bottom gap to the poles; pass just beside them
        px, py = self.pole(R if abs(letter) == 1 else S)
        return px, py + 2.2 * self.cfg.pole_radius


def _path_d(lay: _Layout, edge) -> str:
    p0, p1 = lay.point(edge.u), lay.point(edge.v)
    if edge.u == edge.v:
        # loop: swing around the pole the word names, or the nearer one
        letter = edge.word[0] if edge.word else (1 if p0[0] < lay.c else 2)
        px, py = lay.pole(R if abs(letter) == 1 else S)
        k = 2.6 * lay.cfg.pole_radius
        c1 = (px - k, py - k)
        c2 = (px + k, py - k)
    elif edge.word:
        c1 = lay.waypoint(edge.word[0])
        c2 = lay.waypoint(edge.word[-1])
        if len(edge.word) == 1:
            c1 = ((p0[0] + c1[0]) / 2, (p0[1] + c1[1]) / 2)
            c2 = ((p1[0] + c2[0]) / 2, (p1[1] + c2[1]) / 2)
    else:
        mid = ((p0[0] + p1[0]) / 2, (p0[1] + p1[1]) / 2)
        pull = 0.25
        cm = (mid[0] + (lay.c - mid[0]) * pull, mid[1] + (lay.c - mid[1]) * pull)
        c1 = c2 = cm
    pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in (c1, c2, p1))
    return f"M {_f(p0[0])},{_f(p0[1])} C {pts}"


def render_angulation_svg(ang: Angulation, cfg: RenderConfig | None = None) -> str:
    cfg = cfg or RenderConfig()
    lay = _Layout(ang, cfg)
    spec = ang.spec
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{cfg.size}" '
        f'height="{cfg.size}" viewBox="0 0 {cfg.size} {cfg.size}">',
        f"<title>angulation n={spec.n} m={spec.m}</title>",
        '<g id="boundary" fill="none" stroke="#000" stroke-width="1.5">',
    ]
    for v in range(1, spec.N + 1):
        a, b = lay.boundary(v), lay.boundary(v % spec.N + 1)
        out.append(f'<path id="b{v}" d="M {_f(a[0])},{_f(a[1])} L {_f(b[0])},{_f(b[1])}"/>')
    out.append("</g>")
    out.append('<g id="poles" fill="#ddd" stroke="#000" stroke-width="1">')
    for X in (R, S):
        for j in range(spec.thick):
            e = fixed_edge(spec, ("h", X, j))
            a, b = lay.point(e.u), lay.point(e.v)
            r = _f(cfg.pole_radius)
            if a == b:
                d = (f"M {_f(a[0])},{_f(a[1])} A {r} {r} 0 1 1 {_f(a[0])},{_f(a[1] + 2 * cfg.pole_radius)}"
                     f" A {r} {r} 0 1 1 {_f(a[0])},{_f(a[1])}")
            else:
                d = f"M {_f(a[0])},{_f(a[1])} A {r} {r} 0 0 1 {_f(b[0])},{_f(b[1])}"
            out.append(f'<path id="h{X}{j}" d="{d}"/>')
    out.append("</g>")
    out.append('<g id="diagonals" fill="none" stroke-width="2">')
    try:
        names = {lab: arc_str(a) for lab, a in ang.diagonals().items()}
    except ValueError:
        names = {}
    warnings = []
    for k, lab in enumerate(ang.labels):
        e = ang.arcs[lab]
        colour = cfg.palette[k % len(cfg.palette)]
        extra = ""
        if len(e.word) > cfg.max_word:
            extra = ' stroke-dasharray="6,4"'
            warnings.append(f"arc {lab}: winding beyond drawable bound, placeholder drawn")
        title = escape(names.get(lab, lab))
        out.append(f'<path id="d{escape(lab)}" stroke="{colour}"{extra} d="{_path_d(lay, e)}">'
                   f"<title>{title}</title></path>")
    out.append("</g>")
    if cfg.labels:
        out.append('<g id="labels" font-family="sans-serif" font-size="11">')
        for v in range(1, spec.N + 1):
            x, y = lay.boundary(v)
            lx, ly = lay.c + (x - lay.c) * 1.07, lay.c + (y - lay.c) * 1.07
            out.append(f'<text x="{_f(lx)}" y="{_f(ly)}" text-anchor="middle">{v}</text>')
        for X in (R, S):
            x, y = lay.pole(X)
            out.append(f'<text x="{_f(x)}" y="{_f(y + 4)}" text-anchor="middle">{X}</text>')
        out.append("</g>")
    for k, msg in enumerate(warnings):
        out.append(f'<text class="warning" x="8" y="{16 + 14 * k}" font-size="11" '
                   f'fill="#b03a2e">{escape(msg)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_quiver_dot(obj, name: str = "Q") -> str:
    if isinstance(obj, cq.ColoredQuiver):
        return cq.to_dot(obj, name)
    if isinstance(obj, cat.Window):
        return cat.window_to_dot(obj, name)
    raise TypeError(f"cannot render {type(obj).__name__} as DOT")
