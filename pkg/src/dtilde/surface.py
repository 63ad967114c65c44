"""The marked surface and its m-diagonal classes.

Boundary vertices are ``1..N`` clockwise with ``N = (n-2)m``.  The two
inner polygons ``R`` and ``S`` are joined to the boundary by cuts that
land in the gap between ``N`` and ``1``; a path is recorded by the cuts
it crosses, as a reduced word in the free group on ``r`` and ``s``.
Crossing from west to east gives the letter itself, east to west its
inverse.  The boundary edge ``N -> 1`` crosses both cuts and has word
``g = s r``.

Lifts to the cyclic cover unroll the boundary: a lift of vertex ``a`` is
``a + kN``.  Splits and tangents are described by lifted intervals,
which is what ``tau``, ``shift`` and the elementary moves act on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

LEFT, RIGHT = "left", "right"
R, S = "R", "S"

# letters: r = 1, s = 2, inverses negative
Word = tuple
G = (2, 1)


class SurfaceError(ValueError):
    pass


class OutOfRange(SurfaceError):
    pass


@dataclass(frozen=True)
class SurfaceSpec:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 4 or self.m < 1:
            raise SurfaceError("need n >= 4 and m >= 1")

    @property
    def N(self) -> int:
        return (self.n - 2) * self.m

    @property
    def thick(self) -> int:
        return max(self.m - 1, 1)

    def vertex(self, x: int) -> int:
        return (x - 1) % self.N + 1

    def wrap(self, x: int) -> tuple:
        """Split a lift into ``(vertex, winding)``."""
        return self.vertex(x), (x - 1) // self.N


def boundary_length(spec: SurfaceSpec, a: int, b: int) -> int:
    for v in (a, b):
        if not 1 <= v <= spec.N:
            raise SurfaceError(f"vertex {v} out of range 1..{spec.N}")
    return (b - a) % spec.N


# --- free group -----------------------------------------------------------

def reduce(w) -> Word:
    out: list = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def mul(*ws) -> Word:
    return reduce(x for w in ws for x in w)


def inv(w) -> Word:
    return tuple(-x for x in reversed(w))


def power(w, k: int) -> Word:
    base = w if k >= 0 else inv(w)
    return reduce(base * abs(k))


def g_power(k: int) -> Word:
    return power(G, k)


def letter_power(w, x: int):
    """Return k if ``w`` is ``x**k``, else None."""
    if all(y == x for y in w):
        return len(w)
    if all(y == -x for y in w):
        return -len(w)
    return None


def which_g_power(w):
    k = len(w) // 2
    for cand in (k, -k):
        if power(G, cand) == tuple(w):
            return cand
    return None


def word_str(w) -> str:
    names = {1: "r", -1: "R", 2: "s", -2: "S"}
    return "".join(names[x] for x in w) or "1"


# --- arc classes ------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Split:
    a: int
    b: int
    w: int = 0
    kind = "split"


@dataclass(frozen=True, order=True)
class BoundaryPath:
    a: int
    s: int
    kind = "boundary"


@dataclass(frozen=True, order=True)
class Tangent:
    p: int
    pole: str
    side: str
    w: int = 0
    kind = "tangent"


@dataclass(frozen=True, order=True)
class Bridge:
    family: int
    level: int
    rim: int
    d: int = 1
    kind = "bridge"


MDiagonal = Union[Split, BoundaryPath, Tangent, Bridge]


def other_side(side: str) -> str:
    return RIGHT if side == LEFT else LEFT


def arc_to_dict(a: MDiagonal) -> dict:
    if isinstance(a, Split):
        return {"kind": "split", "a": a.a, "b": a.b, "w": a.w}
    if isinstance(a, BoundaryPath):
        return {"kind": "boundary", "a": a.a, "s": a.s}
    if isinstance(a, Tangent):
        return {"kind": "tangent", "p": a.p, "pole": a.pole, "side": a.side, "w": a.w}
    return {"kind": "bridge", "family": a.family, "level": a.level, "rim": a.rim, "d": a.d}


def arc_from_dict(d: dict) -> MDiagonal:
    try:
        kind = d["kind"]
        if kind == "split":
            return Split(int(d["a"]), int(d["b"]), int(d.get("w", 0)))
        if kind == "boundary":
            return BoundaryPath(int(d["a"]), int(d["s"]))
        if kind == "tangent":
            if d["pole"] not in (R, S) or d["side"] not in (LEFT, RIGHT):
                raise SurfaceError(f"bad tangent {d}")
            return Tangent(int(d["p"]), d["pole"], d["side"], int(d.get("w", 0)))
        if kind == "bridge":
            return Bridge(int(d["family"]), int(d["level"]), int(d["rim"]), int(d.get("d", 1)))
    except (KeyError, TypeError, ValueError) as exc:
        raise SurfaceError(f"malformed arc {d}") from exc
    raise SurfaceError(f"unknown arc kind {d.get('kind')!r}")


def arc_str(a: MDiagonal) -> str:
    if isinstance(a, Split):
        return f"Split({a.a},{a.b};w={a.w})"
    if isinstance(a, BoundaryPath):
        return f"Boundary({a.a},+{a.s})"
    if isinstance(a, Tangent):
        return f"Tangent({a.p},{a.pole},{a.side};w={a.w})"
    return f"Bridge(f{a.family},l{a.level},rim{a.rim},d{a.d})"


def make_split(spec: SurfaceSpec, lo: int, hi: int) -> Split:
    """Split from lifted endpoints with ``0 < hi - lo < N``."""
    if not 0 < hi - lo < spec.N:
        raise SurfaceError("split lifts must satisfy 0 < hi - lo < N")
    b, w = spec.wrap(hi)
    return Split(spec.vertex(lo), b, w)


def make_tangent(spec: SurfaceSpec, lift: int, pole: str, side: str) -> Tangent:
    p, w = spec.wrap(lift)
    return Tangent(p, pole, side, w)


def lifts(spec: SurfaceSpec, a: MDiagonal) -> tuple:
    """Lifted interval of a transjective arc."""
    N = spec.N
    if isinstance(a, Split):
        hi = a.b + a.w * N
        lo = a.a + (a.w - (1 if a.b < a.a else 0)) * N
        return lo, hi
    if isinstance(a, Tangent):
        lo = a.p + a.w * N
        return (lo, lo) if a.pole == R else (lo, lo + N)
    raise SurfaceError(f"{arc_str(a)} has no lifted interval")


# --- classification of words ----------------------------------------------

def _search(limit: int):
    for k in range(limit + 1):
        yield k
        if k:
            yield -k


def classify_chord(spec: SurfaceSpec, a: int, b: int, word, loop_sides=None):
    """Class of an arc between boundary vertices ``a`` and ``b``.

    ``loop_sides`` maps a pole to the side carried by loops around it.
    """
    N = spec.N
    word = reduce(word)
    k = which_g_power(word)
    if k is not None:
        span = b - a + k * N
        if span >= 1:
            return BoundaryPath(a, span)
        if span <= -1:
            return BoundaryPath(b, -span)
        raise SurfaceError("contractible arc")
    limit = len(word) + 2
    for x, y, w in ((a, b, word), (b, a, inv(word))):
        for i in _search(limit):
            rest = mul(g_power(i), w)
            if not rest or rest[0] != -1:
                continue
            j = which_g_power(rest[1:])
            if j is None:
                continue
            lo, hi = x + i * N, y + j * N
            delta = hi - lo
            if delta == 0 or delta == N:
                pole = R if delta == 0 else S
                side = (loop_sides or {}).get(pole, LEFT)
                return make_tangent(spec, lo, pole, side)
            if 0 < delta < N:
                return make_split(spec, lo, hi)
    raise OutOfRange(f"unsupported arc word {word_str(word)} from {a} to {b}")


def radius_winding(spec: SurfaceSpec, pole: str, word):
    """Winding ``w`` of a radius from the boundary to ``pole``."""
    word = reduce(word)
    for w in _search(len(word) + 2):
        t = mul(g_power(w), word)
        if pole == R and letter_power(t, 1) is not None:
            return w
        if pole == S and letter_power(mul((1,), t), 2) is not None:
            return w
    raise OutOfRange(f"unsupported radius word {word_str(word)} to {pole}")


def classify_radius(spec: SurfaceSpec, v: int, pole: str, word, side: str) -> Tangent:
    return Tangent(v, pole, side, radius_winding(spec, pole, word))


def bridge_class(t_r: str, t_s: str) -> Bridge:
    return Bridge(int(t_r != t_s), 1, 0 if t_r == RIGHT else 1, 1)


# --- translation and shift ------------------------------------------------

def _step(spec: SurfaceSpec, a: MDiagonal, k: int) -> MDiagonal:
    """Move both ends ``k`` unit steps clockwise."""
    m = spec.m
    if isinstance(a, Split):
        lo, hi = lifts(spec, a)
        return make_split(spec, lo + k, hi + k)
    if isinstance(a, BoundaryPath):
        return BoundaryPath(spec.vertex(a.a + k), a.s)
    if isinstance(a, Tangent):
        lo, _ = lifts(spec, a)
        side = other_side(a.side) if (m % 2 and k % 2) else a.side
        return make_tangent(spec, lo + k, a.pole, side)
    if isinstance(a, Bridge):
        # d carries into the rim, so m unit steps make one tau
        t = (a.d - 1 + a.rim * m + k) % (2 * m)
        return Bridge(a.family, a.level, t // m, t % m + 1)
    raise SurfaceError(f"not an arc: {a!r}")


def tau(spec: SurfaceSpec, a: MDiagonal) -> MDiagonal:
    return _step(spec, a, spec.m)


def tau_inv(spec: SurfaceSpec, a: MDiagonal) -> MDiagonal:
    return _step(spec, a, -spec.m)


def shift(spec: SurfaceSpec, a: MDiagonal) -> MDiagonal:
    return _step(spec, a, 1)


def shift_inv(spec: SurfaceSpec, a: MDiagonal) -> MDiagonal:
    return _step(spec, a, -1)


# --- elementary moves, components, coordinates -----------------------------

def _interval(spec: SurfaceSpec, a: MDiagonal):
    """Lifted interval for transjective and boundary arcs, else None."""
    if isinstance(a, (Split, Tangent)):
        return lifts(spec, a)
    if isinstance(a, BoundaryPath):
        return a.a, a.a + a.s
    return None


def elementary_move_exists(spec: SurfaceSpec, a: MDiagonal, b: MDiagonal) -> bool:
    """Is there an elementary move from ``a`` to ``b``?"""
    m = spec.m
    if isinstance(a, Bridge) or isinstance(b, Bridge):
        if not (isinstance(a, Bridge) and isinstance(b, Bridge)):
            return False
        if a.family != b.family or a.d != b.d:
            return False
        up = (b.level == a.level + 1 and b.rim == a.rim)
        down = (b.level == a.level - 1 and b.rim == (a.rim + 1) % 2)
        return up or down
    if isinstance(a, BoundaryPath) != isinstance(b, BoundaryPath):
        return False
    if isinstance(a, Tangent) and isinstance(b, Tangent):
        return False
    x, y = _interval(spec, a)
    u, v = _interval(spec, b)
    if isinstance(a, BoundaryPath):
        # boundary paths live on a tube: compare modulo full turns
        if (u - x) % spec.N == 0 and v - u == y - x + m:
            return True
        return (u - x - m) % spec.N == 0 and v - u == y - x - m
    return (u == x and v == y + m) or (v == y and u == x + m)


def is_self_crossing(spec: SurfaceSpec, a: MDiagonal) -> bool:
    if isinstance(a, BoundaryPath):
        return a.s > spec.N
    if isinstance(a, Bridge):
        return a.level >= 2
    return False


@dataclass(frozen=True, order=True)
class Transjective:
    d: int
    t: int
    slot: int
    kind = "transjective"


@dataclass(frozen=True, order=True)
class TubeBig:
    d: int
    rim: int
    level: int
    kind = "big"


@dataclass(frozen=True, order=True)
class TubeSmall:
    family: int
    d: int
    rim: int
    level: int
    kind = "small"


ArCoord = Union[Transjective, TubeBig, TubeSmall]


def _residue(spec: SurfaceSpec, x: int) -> int:
    return (x - 1) % spec.m + 1


def component_of(spec: SurfaceSpec, a: MDiagonal) -> tuple:
    """``("transjective", d)``, ``("big", d)`` or ``("small", family, d)``."""
    if isinstance(a, Bridge):
        return ("small", a.family, a.d)
    if isinstance(a, BoundaryPath):
        return ("big", _residue(spec, a.a))
    lo, _ = lifts(spec, a)
    return ("transjective", _residue(spec, lo))


def coord_to_dict(c: ArCoord) -> dict:
    out = {"kind": c.kind}
    out.update(c.__dict__)
    return out


def coord_from_dict(d: dict) -> ArCoord:
    kinds = {"transjective": Transjective, "big": TubeBig, "small": TubeSmall}
    try:
        cls = kinds[d["kind"]]
        return cls(**{k: int(v) for k, v in d.items() if k != "kind"})
    except (KeyError, TypeError, ValueError) as exc:
        raise SurfaceError(f"malformed coordinate {d}") from exc


def coord_str(c: ArCoord) -> str:
    if isinstance(c, Transjective):
        return f"({c.d},{c.t},{c.slot})"
    if isinstance(c, TubeBig):
        return f"(big{c.d},{c.rim},{c.level})"
    return f"(small{c.family}.{c.d},{c.rim},{c.level})"


# --- crossing numbers -------------------------------------------------------
#
# The poles are treated as punctures.  Cutting along the two cuts gives a
# disk D; the universal cover is a tree of copies of D indexed by words.
# Points on its ideal boundary are keyed by the exits taken from the base
# copy, so two lifts cross exactly when their endpoints interleave.

_LETTER = {R: 1, S: 2}


def _positions(spec: SurfaceSpec) -> dict:
    N = spec.N
    pos = {v: v - 1 for v in range(1, N + 1)}
    pos.update({("W", S): N, ("tip", S): N + 1, ("E", S): N + 2,
                ("W", R): N + 3, ("tip", R): N + 4, ("E", R): N + 5})
    return pos


def _pole_of(x: int) -> str:
    return R if abs(x) == 1 else S


def _point_key(pos: dict, copy, where) -> tuple:
    size = len(pos)
    key = []
    entry = None
    for y in copy:
        pole = _pole_of(y)
        exit_ = ("W", pole) if y > 0 else ("E", pole)
        key.append((pos[exit_] - entry) % size if entry is not None else pos[exit_])
        entry = pos[("E", pole) if y > 0 else ("W", pole)]
    key.append((pos[where] - entry) % size if entry is not None else pos[where])
    return tuple(key)


def _strip(copy, pole: str) -> tuple:
    x = _LETTER[pole]
    copy = list(copy)
    while copy and abs(copy[-1]) == x:
        copy.pop()
    return tuple(copy)


@dataclass(frozen=True)
class _Lift:
    start: tuple        # ("P", v) or ("X", pole)
    end: tuple
    word: tuple
    tags: tuple         # tag at start, tag at end (None on the boundary)


def _point(end, copy):
    if end[0] == "P":
        return (copy, end[1])
    return (_strip(copy, end[1]), ("tip", end[1]))


def _endpoints(lift: _Lift, h=()):
    p = _point(lift.start, reduce(h))
    q = _point(lift.end, mul(h, lift.word))
    return p, q


def _prefixes(lift: _Lift) -> list:
    w = lift.word
    out = [w[:i] for i in range(len(w) + 1)]
    for end, base in ((lift.start, ()), (lift.end, w)):
        if end[0] != "P":
            # copies around a puncture all touch it
            x = _LETTER[end[1]]
            stem = _strip(base, end[1])
            out += [mul(stem, power((x,), k)) for k in range(-2, 3)]
    return out


def _representative(spec: SurfaceSpec, a: MDiagonal, bound: int) -> _Lift:
    N = spec.N
    if isinstance(a, Split):
        if abs(a.w) > bound:
            raise OutOfRange(f"winding {a.w} beyond supported bound {bound}")
        lo, hi = lifts(spec, a)
        i, j = (lo - a.a) // N, (hi - a.b) // N
        word = mul(g_power(-i), (-1,), g_power(j))
        return _Lift(("P", a.a), ("P", a.b), word, (None, None))
    if isinstance(a, BoundaryPath):
        b = spec.vertex(a.a + a.s)
        k = (a.s - (b - a.a)) // N
        if abs(k) > bound:
            raise OutOfRange(f"span {a.s} beyond supported bound {bound}")
        return _Lift(("P", a.a), ("P", b), g_power(k), (None, None))
    if isinstance(a, Tangent):
        if abs(a.w) > bound:
            raise OutOfRange(f"winding {a.w} beyond supported bound {bound}")
        word = g_power(-a.w) if a.pole == R else mul(g_power(-a.w), (-1,))
        return _Lift(("P", a.p), ("X", a.pole), word, (None, a.side))
    if isinstance(a, Bridge):
        if a.level != 1:
            raise OutOfRange("only level-1 bridges have a geometric representative")
        t_r = RIGHT if a.rim == 0 else LEFT
        t_s = t_r if a.family == 0 else other_side(t_r)
        return _Lift(("X", R), ("X", S), (), (t_r, t_s))
    raise SurfaceError(f"not an arc: {a!r}")


def _linked(pos, p, q, u, v) -> bool:
    keys = [_point_key(pos, *z) for z in (p, q, u, v)]
    if len(set(keys)) < 4:
        return False
    lo, hi = sorted(keys[:2])
    return (lo < keys[2] < hi) != (lo < keys[3] < hi)


def _interior_crossings(spec: SurfaceSpec, A: _Lift, B: _Lift, same: bool) -> int:
    pos = _positions(spec)
    p, q = _endpoints(A)
    cands = {mul(x, inv(y)) for x in _prefixes(A) for y in _prefixes(B)}
    count = 0
    for h in cands:
        if same and not h:
            continue
        u, v = _endpoints(B, h)
        if _linked(pos, p, q, u, v):
            count += 1
    return count // 2 if same else count


def _tag_conflicts(spec: SurfaceSpec, A: _Lift, B: _Lift) -> int:
    # ends meet on the surface whenever they reach the same pole
    ends_a = {e[1]: t for e, t in zip((A.start, A.end), A.tags) if t}
    ends_b = {e[1]: t for e, t in zip((B.start, B.end), B.tags) if t}
    differ = sum(ends_a[x] != ends_b[x] for x in ends_a.keys() & ends_b.keys())
    pos = _positions(spec)
    same_arc = (A.start[0], A.end[0]) == (B.start[0], B.end[0]) and \
        sorted(_point_key(pos, *z) for z in _endpoints(A)) == \
        sorted(_point_key(pos, *z) for z in _endpoints(B))
    if same_arc and differ == 1:
        # same underlying arc, one end notched: compatible
        return 0
    return differ


def crossing_number(spec: SurfaceSpec, a: MDiagonal, b: MDiagonal, bound: int = 3) -> int:
    """Minimal number of crossings between the classes ``a`` and ``b``.

    Ends meeting at a pole with different sides count once, except for
    two representatives of one arc that differ at a single pole, which
    are compatible (one of them may be drawn as a loop).  Raises
    ``OutOfRange`` past the winding ``bound``.
    """
    A = _representative(spec, a, bound)
    B = _representative(spec, b, bound)
    if a == b:
        return _interior_crossings(spec, A, A, same=True)
    return _interior_crossings(spec, A, B, same=False) + _tag_conflicts(spec, A, B)
