"""(m+2)-angulations of the annulus: validation, faces, mutation,
factoring, extension and canonical forms up to rotation and flip."""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .faces import Face, dissect
from .geometry import (
    AnnulusConfig,
    Diagonal,
    InnerPeripheral,
    OuterPeripheral,
    Spanning,
    crosses_itself,
    crossing_number,
    diagonal_from_json,
    diagonal_to_json,
    flip,
    is_m_diagonal,
    rotate_inner,
    rotate_outer,
    sort_key,
    swap_boundaries,
)
from .quiver import ColouredQuiver, is_isomorphic

__all__ = [
    "Angulation",
    "AngulationError",
    "FaceMap",
    "PolygonDissection",
    "ValidationReport",
    "apply_symmetry",
    "canonical_form",
    "canonical_representative",
    "check",
    "delta0",
    "extend",
    "factor_out",
    "faces",
    "is_close_to_border",
    "is_reflection_symmetric",
    "mutate",
    "quiver_of",
    "validate",
]

# Mutation moves both ends of the diameter of the merged (2m+2)-gon one
# corner forward in counterclockwise corner order.  This is the direction
# for which angulation mutation matches coloured quiver mutation; the
# opposite turn is the inverse mutation.
MUTATION_STEP = 1


class AngulationError(ValueError):
    """Raised by :func:`validate`; ``report`` lists every violation found."""

    def __init__(self, report: "ValidationReport"):
        super().__init__(report.summary())
        self.report = report


@dataclass
class ValidationReport:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> str | None:
        return self.violations[0][0] if self.violations else None

    def add(self, reason: str, detail: str) -> None:
        self.violations.append((reason, detail))

    def summary(self) -> str:
        return "; ".join(f"{r}: {d}" for r, d in self.violations) or "ok"


@dataclass(frozen=True)
class FaceMap:
    cut: int
    polygon_size: int
    faces: tuple[Face, ...]

    @cached_property
    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        """Diagonal index -> ``(face number, side position)`` occurrences."""
        adj = defaultdict(list)
        for f, face in enumerate(self.faces):
            for t, idx in face.diagonal_positions():
                adj[idx].append((f, t))
        return dict(adj)

    def to_json(self) -> dict:
        return {
            "cut": self.cut,
            "polygon_size": self.polygon_size,
            "faces": [
                {"corners": [list(c) for c in f.corners], "sides": [list(s) for s in f.sides]}
                for f in self.faces
            ],
        }


@dataclass(frozen=True)
class Angulation:
    cfg: AnnulusConfig
    diagonals: tuple
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "diagonals", tuple(self.diagonals))

    def __len__(self):
        return len(self.diagonals)

    @cached_property
    def facemap(self) -> FaceMap:
        return _facemap(self.cfg, self.diagonals)

    def to_json(self) -> dict:
        c = self.cfg
        return {
            "p": c.p,
            "q": c.q,
            "m": c.m,
            "strict": self.strict,
            "diagonals": [diagonal_to_json(d) for d in self.diagonals],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict, check_valid: bool = True) -> "Angulation":
        cfg = AnnulusConfig(int(obj["p"]), int(obj["q"]), int(obj["m"]))
        diags = [diagonal_from_json(d, cfg) for d in obj["diagonals"]]
        strict = bool(obj.get("strict", True))
        if check_valid:
            return validate(diags, cfg, strict)
        return cls(cfg, tuple(diags), strict)


# -- cutting open --------------------------------------------------------------


def _corner_shift(corner, t: int, cfg: AnnulusConfig):
    side, x = corner
    return (side, x + t * cfg.n_out) if side == "O" else (side, x - t * cfg.n_in)


def _lift_into(d: Diagonal, cut: Spanning, cfg: AnnulusConfig):
    """Endpoints of the lift of ``d`` lying in the fundamental domain between
    the lift of ``cut`` and its deck translate, or ``None``."""
    no, ni = cfg.n_out, cfg.n_in
    u0, v0 = cut.u, cut.v

    def inside(c):
        side, x = c
        return u0 <= x <= u0 + no if side == "O" else v0 - ni <= x <= v0

    if isinstance(d, Spanning):
        ends = (("O", d.u), ("I", d.v))
        base = (u0 - d.u) // no
    elif isinstance(d, OuterPeripheral):
        ends = (("O", d.i), ("O", d.i + d.k - 1))
        base = (u0 - d.i) // no
    else:
        ends = (("I", d.i), ("I", d.i + d.k - 1))
        base = -((v0 - d.i - d.k + 1) // ni)
    for t in (base - 1, base, base + 1, base + 2):
        moved = tuple(_corner_shift(c, t, cfg) for c in ends)
        if all(inside(c) for c in moved):
            return moved
    return None


def _cut_polygon(cfg: AnnulusConfig, cut: Spanning):
    no, ni = cfg.n_out, cfg.n_in
    corners = [("O", cut.u + j) for j in range(no + 1)]
    corners += [("I", cut.v - ni + j) for j in range(ni + 1)]
    index = {c: t for t, c in enumerate(corners)}
    return corners, index


def _facemap(cfg: AnnulusConfig, diagonals: Sequence[Diagonal]) -> FaceMap:
    spanning = [t for t, d in enumerate(diagonals) if isinstance(d, Spanning)]
    if not spanning:
        raise ValueError("no spanning diagonal to cut along")
    cut_idx = min(spanning, key=lambda t: sort_key(diagonals[t]))
    cut = diagonals[cut_idx]
    corners, index = _cut_polygon(cfg, cut)
    no, ni = cfg.n_out, cfg.n_in
    n = len(corners)

    side_labels = []
    for t in range(n):
        if t < no:
            side_labels.append(("E", "O", (cut.u + t) % no))
        elif t == no:
            side_labels.append(("D", cut_idx))
        elif t < n - 1:
            side_labels.append(("E", "I", (corners[t][1]) % ni))
        else:
            side_labels.append(("D", cut_idx))

    chords = []
    for t, d in enumerate(diagonals):
        if t == cut_idx:
            continue
        ends = _lift_into(d, cut, cfg)
        if ends is None:
            raise ValueError(f"diagonal {d!r} crosses the cut {cut!r}")
        chords.append((index[ends[0]], index[ends[1]], ("D", t)))

    out = []
    for verts, labels in dissect(n, side_labels, chords):
        out.append(Face(tuple(corners[v] for v in verts), tuple(labels)))
    return FaceMap(cut_idx, n, tuple(out))


def faces(a: Angulation) -> FaceMap:
    return a.facemap


# -- validation ----------------------------------------------------------------


def check(candidate: Sequence[Diagonal], cfg: AnnulusConfig, strict_m: bool = True) -> ValidationReport:
    """Collect every violated angulation invariant, in a fixed order."""
    report = ValidationReport()
    diags = list(candidate)
    for d in diags:
        if (d.n_out, d.n_in) != (cfg.n_out, cfg.n_in):
            report.add("config", f"{d!r} belongs to a different annulus")
            return report
    if len(diags) != cfg.rank:
        report.add("count", f"{len(diags)} diagonals, expected {cfg.rank}")
    if len(set(diags)) != len(diags):
        report.add("duplicate", "a diagonal is listed twice")
    if strict_m:
        for d in diags:
            if not is_m_diagonal(d, cfg.m):
                report.add("m-diagonal", f"{d!r} is not an m-diagonal")
    selfx = [d for d in diags if crosses_itself(d)]
    for d in selfx:
        report.add("self-crossing", f"{d!r} crosses itself")
    crossing = False
    for a, b in itertools.combinations(range(len(diags)), 2):
        if crossing_number(diags[a], diags[b]):
            report.add("crossing", f"diagonals {a} and {b} cross")
            crossing = True
    if not any(isinstance(d, Spanning) for d in diags):
        report.add("spanning", "no diagonal joins the two boundaries")
    elif not crossing and not selfx:
        fm = _facemap(cfg, diags)
        for f, face in enumerate(fm.faces):
            if len(face) != cfg.m + 2:
                report.add("face", f"face {f} has {len(face)} sides, expected {cfg.m + 2}")
        if len(fm.faces) != cfg.rank and len(diags) == cfg.rank:
            report.add("face", f"{len(fm.faces)} faces, expected {cfg.rank}")
    return report


def validate(candidate: Sequence[Diagonal], cfg: AnnulusConfig, strict_m: bool = True) -> Angulation:
    report = check(candidate, cfg, strict_m)
    if not report.ok:
        raise AngulationError(report)
    return Angulation(cfg, tuple(candidate), strict_m)


# -- the distinguished angulation ----------------------------------------------


def delta0(cfg: AnnulusConfig) -> Angulation:
    """All-spanning angulation made of two fans, numbered so that its
    colour-0 arrows are ``0 -> 1 -> ... -> p-1 -> p+q-1`` and
    ``0 -> p -> ... -> p+q-2 -> p+q-1``.

    The fan at ``I_0`` reaches ``O_0, O_m, .., O_{mp}``; the fan at
    ``O_{mp}`` covers the remaining inner vertices.
    """
    p, q, m = cfg.p, cfg.q, cfg.m
    diags = [cfg.S(0, m * q)]
    diags += [cfg.S(m * t, 0) for t in range(p - 1, 0, -1)]
    diags += [cfg.S(0, m * s) for s in range(q - 1, 0, -1)]
    diags.append(cfg.S(0, 0))
    return Angulation(cfg, tuple(diags), True)


# -- quiver --------------------------------------------------------------------


def _quiver_from_faces(n: int, m: int, face_list) -> ColouredQuiver:
    counts: dict = defaultdict(lambda: defaultdict(int))
    for face in face_list:
        pos = face.diagonal_positions()
        size = len(face)
        for (ta, a), (tb, b) in itertools.permutations(pos, 2):
            if a == b:
                raise ValueError(f"diagonal {a} borders the same face twice")
            counts[(a, b)][(tb - ta - 1) % size] += 1
    return ColouredQuiver.from_multiset(n, m, counts)


def quiver_of(a) -> ColouredQuiver:
    """One vertex per diagonal; inside each face, the arrow from ``i`` to
    ``j`` has colour equal to the number of sides met going
    counterclockwise from ``i`` to ``j``."""
    if isinstance(a, PolygonDissection):
        return _quiver_from_faces(len(a.chords), a.m, a.faces())
    return _quiver_from_faces(len(a), a.cfg.m, a.facemap.faces)


# -- mutation ------------------------------------------------------------------


def _corners_to_diagonal(x, y, cfg: AnnulusConfig) -> Diagonal:
    (sx, a), (sy, b) = sorted([x, y])
    if sx != sy:
        # sorted puts ("I", v) before ("O", u)
        return cfg.S(b, a)
    lo, hi = min(a, b), max(a, b)
    if sx == "O":
        return cfg.O(lo, hi - lo + 1)
    return cfg.I(lo, hi - lo + 1)


def merged_polygon(a: Angulation, idx: int) -> list:
    """Corners, counterclockwise, of the (2m+2)-gon left when diagonal
    ``idx`` is removed; the removed diagonal joins corners ``0`` and
    ``m + 1``."""
    fm = a.facemap
    occ = fm.adjacency.get(idx, [])
    if len(occ) != 2 or occ[0][0] == occ[1][0]:
        raise ValueError(f"diagonal {idx} does not separate two distinct faces")
    (f1, s1), (f2, s2) = occ
    F1, F2 = fm.faces[f1], fm.faces[f2]
    n1, n2 = len(F1), len(F2)
    c = F1.corners
    d = F2.corners
    start1, end1 = c[s1], c[(s1 + 1) % n1]
    start2 = d[s2]
    # translate F2 so that its copy of the diagonal runs end1 -> start1
    side, x = start2
    if side != end1[0]:
        raise ValueError("faces do not glue along the diagonal")
    span = a.cfg.n_out if side == "O" else -a.cfg.n_in
    t, rem = divmod(end1[1] - x, span)
    if rem:
        raise ValueError("faces do not glue along the diagonal")
    d = tuple(_corner_shift(y, t, a.cfg) for y in d)
    if d[(s2 + 1) % n2] != start1:
        raise ValueError("faces do not glue along the diagonal")
    merged = [c[(s1 + 1 + j) % n1] for j in range(n1)]
    merged += [d[(s2 + 2 + j) % n2] for j in range(n2 - 2)]
    return merged


def diameters(a: Angulation, idx: int) -> list[Diagonal]:
    """The m+1 diameters of the merged (2m+2)-gon, starting with
    diagonal ``idx`` and turning in the mutation direction."""
    poly = merged_polygon(a, idx)
    size = len(poly)
    half = size // 2
    out = []
    for r in range(half):
        s = (MUTATION_STEP * r) % size
        out.append(_corners_to_diagonal(poly[s], poly[(s + half) % size], a.cfg))
    return out


def mutate(a: Angulation, idx: int, times: int = 1) -> Angulation:
    """Replace diagonal ``idx`` by the next diameter of its (2m+2)-gon."""
    for _ in range(times % (a.cfg.m + 1)):
        poly = merged_polygon(a, idx)
        size = len(poly)
        s = MUTATION_STEP % size
        new = _corners_to_diagonal(poly[s], poly[(s + size // 2) % size], a.cfg)
        diags = list(a.diagonals)
        diags[idx] = new
        a = Angulation(a.cfg, tuple(diags), a.strict)
    return a


# -- symmetries and canonical forms ----------------------------------------------


def apply_symmetry(
    a: Angulation, i: int, j: int, use_flip: bool = False, swap: bool = False
) -> Angulation:
    """``r_O^i r_I^j`` applied after an optional exchange of the boundaries:
    the arrow-reversing flip (``use_flip``) or the quiver-preserving half
    turn (``swap``)."""
    if use_flip and swap:
        raise ValueError("choose at most one of use_flip and swap")
    cfg = a.cfg
    diags = a.diagonals
    if use_flip or swap:
        cfg = cfg.flipped()
        diags = tuple((flip if use_flip else swap_boundaries)(d) for d in diags)
    moved = tuple(rotate_outer(rotate_inner(d, j), i) for d in diags)
    return Angulation(cfg, moved, all(is_m_diagonal(d, cfg.m) for d in moved))


def _serialize_set(diags) -> bytes:
    parts = []
    for d in sorted(diags, key=sort_key):
        if isinstance(d, Spanning):
            parts.append(f"S{d.u},{d.v}")
        elif isinstance(d, OuterPeripheral):
            parts.append(f"O{d.i},{d.k}")
        else:
            parts.append(f"I{d.i},{d.k}")
    return ";".join(parts).encode()


def orbit_normal_forms(a: Angulation, use_flip: bool = True):
    """Yield ``(swapped, i, j, diagonals)`` for each orbit element in which a
    spanning diagonal is carried to ``Spanning(0, 0)``.

    With ``use_flip`` and ``p == q`` the orbit also contains the boundary
    swap of ``a``.  The swap preserves the quiver; this is the
    identification under which angulation classes match quiver classes.
    """
    sources = [(False, a.diagonals)]
    if use_flip and a.cfg.p == a.cfg.q:
        sources.append((True, tuple(swap_boundaries(d) for d in a.diagonals)))
    for swapped, diags in sources:
        for d in diags:
            if isinstance(d, Spanning):
                moved = tuple(rotate_outer(rotate_inner(x, d.v), d.u) for x in diags)
                yield swapped, d.u, d.v, moved


def canonical_representative(a: Angulation, use_flip: bool = True) -> tuple[bytes, Angulation]:
    """Least serialization over the orbit of ``a`` under rotations of the two
    polygons (plus the boundary swap when ``p == q``), and the angulation
    realising it with its diagonals sorted."""
    best = None
    for _, _, _, moved in orbit_normal_forms(a, use_flip):
        ser = _serialize_set(moved)
        if best is None or ser < best[0]:
            best = (ser, moved)
    diags = tuple(sorted(best[1], key=sort_key))
    strict = all(is_m_diagonal(d, a.cfg.m) for d in diags)
    return best[0], Angulation(a.cfg, diags, strict)


def canonical_form(a: Angulation, use_flip: bool = True) -> bytes:
    return canonical_representative(a, use_flip)[0]


def is_reflection_symmetric(a: Angulation) -> bool:
    if a.cfg.p != a.cfg.q:
        raise ValueError("reflection symmetry needs p == q")
    Q = quiver_of(a)
    return is_isomorphic(Q, Q.reversed())


# -- factoring and extension -------------------------------------------------------


def is_close_to_border(d: Diagonal, m: int) -> bool:
    return isinstance(d, (OuterPeripheral, InnerPeripheral)) and d.k == m + 2


@dataclass(frozen=True)
class PolygonDissection:
    """A dissection of a convex polygon with vertices ``0 .. size-1``
    (counterclockwise) by noncrossing chords."""

    size: int
    chords: tuple
    m: int

    def faces(self) -> list[Face]:
        sides = [("E", "P", t) for t in range(self.size)]
        chords = [(a, b, ("D", t)) for t, (a, b) in enumerate(self.chords)]
        return [Face(tuple(v), tuple(s)) for v, s in dissect(self.size, sides, chords)]

    def is_angulation(self) -> bool:
        fs = self.faces()
        return all(len(f) == self.m + 2 for f in fs) and len(fs) == len(self.chords) + 1


def _remap_outer(d: Diagonal, cfg: AnnulusConfig, new: AnnulusConfig, fn) -> Diagonal:
    if isinstance(d, Spanning):
        return new.S(fn(d.u), d.v)
    if isinstance(d, OuterPeripheral):
        lo = fn(d.i)
        hi = fn(d.i + d.k - 1)
        return new.O(lo, hi - lo + 1)
    return new.I(d.i, d.k)


def _remap_inner(d: Diagonal, cfg: AnnulusConfig, new: AnnulusConfig, fn) -> Diagonal:
    if isinstance(d, Spanning):
        return new.S(d.u, fn(d.v))
    if isinstance(d, InnerPeripheral):
        lo = fn(d.i)
        hi = fn(d.i + d.k - 1)
        return new.I(lo, hi - lo + 1)
    return new.O(d.i, d.k)


def _collapse(base: int, m: int, period: int, new_period: int):
    """Lift map contracting the ``m`` vertices strictly inside
    ``[base, base + m + 1]`` (and all translates) to nothing."""

    def fn(x: int) -> int:
        t, r = divmod(x - base, period)
        if 0 < r <= m:
            raise ValueError(f"vertex {x} is cut off by the border diagonal")
        r = r - m if r > m else r
        return base + r + t * new_period

    return fn


def _expand(base: int, m: int, period: int, new_period: int):
    """Lift map opening ``m`` new vertices inside the edge ``[base, base+1]``."""

    def fn(x: int) -> int:
        t, r = divmod(x - base, period)
        r = r + m if r > 0 else r
        return base + r + t * new_period

    return fn


def factor_out(a: Angulation, idx: int):
    """Factor out diagonal ``idx``.

    A diagonal close to the border becomes a boundary edge, giving an
    angulation of the annulus with one fewer block of ``m`` vertices on
    that boundary.  A spanning diagonal is cut open, giving a
    :class:`PolygonDissection` of the ``(mp + mq + 2)``-gon.  In both cases
    the remaining diagonals keep their order.
    """
    cfg = a.cfg
    d = a.diagonals[idx]
    rest = [x for t, x in enumerate(a.diagonals) if t != idx]
    if isinstance(d, Spanning):
        corners, index = _cut_polygon(cfg, d)
        chords = []
        for x in rest:
            ends = _lift_into(x, d, cfg)
            if ends is None:
                raise ValueError(f"{x!r} crosses {d!r}")
            chords.append(tuple(index[e] for e in ends))
        return PolygonDissection(len(corners), tuple(chords), cfg.m)
    if not is_close_to_border(d, cfg.m):
        raise ValueError(
            f"diagonal {idx} is neither spanning nor close to the border; "
            "factoring it out disconnects the quiver"
        )
    m = cfg.m
    if isinstance(d, OuterPeripheral):
        new = AnnulusConfig(cfg.p - 1, cfg.q, m)
        fn = _collapse(d.i, m, cfg.n_out, new.n_out)
        diags = [_remap_outer(x, cfg, new, fn) for x in rest]
    else:
        new = AnnulusConfig(cfg.p, cfg.q - 1, m)
        fn = _collapse(d.i, m, cfg.n_in, new.n_in)
        diags = [_remap_inner(x, cfg, new, fn) for x in rest]
    strict = a.strict and all(is_m_diagonal(x, m) for x in diags)
    return Angulation(new, tuple(diags), strict)


def boundary_edges(cfg: AnnulusConfig) -> list[tuple[str, int]]:
    """Boundary edges as ``("O", i)`` for ``O_i O_{i+1}`` and ``("I", j)``
    for ``I_j I_{j+1}``."""
    return [("O", i) for i in range(cfg.n_out)] + [("I", j) for j in range(cfg.n_in)]


def extend(a: Angulation, edge: tuple[str, int]) -> Angulation:
    """Open ``m`` new vertices inside a boundary edge and keep the old edge
    as a diagonal close to the border, appended last."""
    cfg = a.cfg
    m = cfg.m
    side, i = edge
    if side == "O":
        new = AnnulusConfig(cfg.p + 1, cfg.q, m)
        fn = _expand(i, m, cfg.n_out, new.n_out)
        diags = [_remap_outer(x, cfg, new, fn) for x in a.diagonals]
        diags.append(new.O(i, m + 2))
    elif side == "I":
        new = AnnulusConfig(cfg.p, cfg.q + 1, m)
        fn = _expand(i, m, cfg.n_in, new.n_in)
        diags = [_remap_inner(x, cfg, new, fn) for x in a.diagonals]
        diags.append(new.I(i, m + 2))
    else:
        raise ValueError(f"unknown boundary {side!r}")
    return Angulation(new, tuple(diags), a.strict)
