"""Diagonals of the annulus P(p, q, m) and their crossing numbers.

Diagonals are homotopy classes of arcs, stored through coordinates in the
universal cover.  The cover is the strip ``R x [0, 1]``: the outer boundary
is the bottom line, the inner boundary the top line, and the deck
transformation translates by one full turn.

Labels follow the usual picture of the annulus: outer vertices
``O_0 .. O_{mp-1}`` counterclockwise, inner vertices ``I_0 .. I_{mq-1}``
clockwise.  In the strip the outer vertex with lift index ``u`` sits at
position ``u / (mp)`` and the inner vertex with lift index ``v`` at
``-v / (mq)``.  A spanning diagonal is therefore the pair ``(u, v)`` modulo
the deck identification ``(u, v) ~ (u + mp, v - mq)``.

All positions are handled as integers scaled by ``mp * mq`` so that every
comparison is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

__all__ = [
    "AnnulusConfig",
    "Spanning",
    "OuterPeripheral",
    "InnerPeripheral",
    "Diagonal",
    "crossing_number",
    "crosses_itself",
    "shift",
    "tau",
    "rotate_outer",
    "rotate_inner",
    "flip",
    "swap_boundaries",
    "is_m_diagonal",
    "level",
    "twist",
    "diagonal_to_json",
    "diagonal_from_json",
    "sort_key",
]


@dataclass(frozen=True)
class AnnulusConfig:
    """The annulus with ``m*p`` outer and ``m*q`` inner marked points."""

    p: int
    q: int
    m: int

    def __post_init__(self):
        if self.p < 2 or self.q < 2 or self.m < 1:
            raise ValueError(
                f"need p >= 2, q >= 2, m >= 1; got p={self.p}, q={self.q}, m={self.m}"
            )

    @property
    def n_out(self) -> int:
        return self.m * self.p

    @property
    def n_in(self) -> int:
        return self.m * self.q

    @property
    def rank(self) -> int:
        """Number of diagonals in an (m+2)-angulation."""
        return self.p + self.q

    def flipped(self) -> "AnnulusConfig":
        return AnnulusConfig(self.q, self.p, self.m)

    def S(self, u: int, v: int) -> "Spanning":
        return Spanning(u, v, self.n_out, self.n_in)

    def O(self, i: int, k: int) -> "OuterPeripheral":
        return OuterPeripheral(i, k, self.n_out, self.n_in)

    def I(self, i: int, k: int) -> "InnerPeripheral":
        return InnerPeripheral(i, k, self.n_out, self.n_in)


@dataclass(frozen=True)
class Spanning:
    """Arc from outer lift index ``u`` to inner lift index ``v``.

    Stored with the canonical deck representative ``0 <= u < n_out``.
    """

    u: int
    v: int
    n_out: int = field(repr=False)
    n_in: int = field(repr=False)

    def __post_init__(self):
        t = self.u // self.n_out
        if t:
            object.__setattr__(self, "u", self.u - t * self.n_out)
            object.__setattr__(self, "v", self.v + t * self.n_in)


@dataclass(frozen=True)
class OuterPeripheral:
    """Arc homotopic to the counterclockwise outer boundary path from
    ``O_i`` through ``k`` vertices."""

    i: int
    k: int
    n_out: int = field(repr=False)
    n_in: int = field(repr=False)

    def __post_init__(self):
        if self.k < 3:
            raise ValueError(f"peripheral diagonal needs k >= 3, got {self.k}")
        object.__setattr__(self, "i", self.i % self.n_out)


@dataclass(frozen=True)
class InnerPeripheral:
    """Arc homotopic to the clockwise inner boundary path from ``I_i``
    through ``k`` vertices."""

    i: int
    k: int
    n_out: int = field(repr=False)
    n_in: int = field(repr=False)

    def __post_init__(self):
        if self.k < 3:
            raise ValueError(f"peripheral diagonal needs k >= 3, got {self.k}")
        object.__setattr__(self, "i", self.i % self.n_in)


Diagonal = Union[Spanning, OuterPeripheral, InnerPeripheral]

_TAG_ORDER = {"S": 0, "O": 1, "I": 2}


def tag(a: Diagonal) -> str:
    if isinstance(a, Spanning):
        return "S"
    if isinstance(a, OuterPeripheral):
        return "O"
    return "I"


def sort_key(a: Diagonal) -> tuple[int, int, int]:
    if isinstance(a, Spanning):
        return (0, a.u, a.v)
    return (_TAG_ORDER[tag(a)], a.i, a.k)


# -- lifts -------------------------------------------------------------------
#
# A lift endpoint is a point on the boundary of the strip, encoded so that
# the lexicographic order of the tuples is the cyclic order of the strip
# boundary cut at the point at -infinity: the bottom line left to right,
# then the top line right to left.  Bottom point at scaled position x is
# (0, x); top point at scaled position y is (1, -y).


def _lift(a: Diagonal) -> tuple[tuple[int, int], tuple[int, int]]:
    n_out, n_in = a.n_out, a.n_in
    if isinstance(a, Spanning):
        return (0, a.u * n_in), (1, a.v * n_out)
    if isinstance(a, OuterPeripheral):
        return (0, a.i * n_in), (0, (a.i + a.k - 1) * n_in)
    return (1, a.i * n_out), (1, (a.i + a.k - 1) * n_out)


def _translate(pt: tuple[int, int], t: int, period: int) -> tuple[int, int]:
    side, key = pt
    return (side, key + t * period) if side == 0 else (side, key - t * period)


def _position(pt: tuple[int, int]) -> int:
    side, key = pt
    return key if side == 0 else -key


def _interleave(a, b) -> bool:
    lo, hi = sorted(a)
    if any(x == lo or x == hi for x in b):
        return False
    return (lo < b[0] < hi) != (lo < b[1] < hi)


def crossing_number(a: Diagonal, b: Diagonal) -> int:
    """Minimal number of interior intersections of ``a`` and ``b``.

    Counts the translates of a lift of ``b`` whose endpoints interleave with
    a fixed lift of ``a`` on the boundary of the strip.  Translates whose
    horizontal extent misses that of the lift of ``a`` cannot interleave, so
    only the finitely many overlapping ones are inspected.
    """
    if (a.n_out, a.n_in) != (b.n_out, b.n_in):
        raise ValueError("diagonals live on different annuli")
    period = a.n_out * a.n_in
    la, lb = _lift(a), _lift(b)
    pa = [_position(x) for x in la]
    pb = [_position(x) for x in lb]
    t_lo = -((max(pb) - min(pa)) // period)
    t_hi = (max(pa) - min(pb)) // period
    count = 0
    for t in range(t_lo, t_hi + 1):
        moved = tuple(_translate(x, t, period) for x in lb)
        if _interleave(la, moved):
            count += 1
    return count


def crosses_itself(a: Diagonal) -> bool:
    if isinstance(a, Spanning):
        return False
    if isinstance(a, OuterPeripheral):
        return a.k > a.n_out + 1
    return a.k > a.n_in + 1


# -- symmetries ----------------------------------------------------------------


def rotate_outer(a: Diagonal, s: int = 1) -> Diagonal:
    """Rotate the outer polygon ``s`` steps clockwise (``r_O^s``)."""
    if isinstance(a, Spanning):
        return Spanning(a.u - s, a.v, a.n_out, a.n_in)
    if isinstance(a, OuterPeripheral):
        return OuterPeripheral(a.i - s, a.k, a.n_out, a.n_in)
    return a


def rotate_inner(a: Diagonal, s: int = 1) -> Diagonal:
    """Rotate the inner polygon ``s`` steps counterclockwise (``r_I^s``)."""
    if isinstance(a, Spanning):
        return Spanning(a.u, a.v - s, a.n_out, a.n_in)
    if isinstance(a, InnerPeripheral):
        return InnerPeripheral(a.i - s, a.k, a.n_out, a.n_in)
    return a


def shift(a: Diagonal, s: int) -> Diagonal:
    """The shift ``a[s]``: both polygons rotated ``s`` steps at once."""
    return rotate_outer(rotate_inner(a, s), s)


def tau(a: Diagonal, m: int, power: int = 1) -> Diagonal:
    return shift(a, m * power)


def flip(a: Diagonal) -> Diagonal:
    """Exchange the roles of the two boundaries.

    Realised in the strip by the reflection ``(x, y) -> (x, 1 - y)``, which
    reverses orientation; the result lives on the annulus with ``p`` and
    ``q`` swapped.  The map is an involution.
    """
    n_out, n_in = a.n_in, a.n_out
    if isinstance(a, Spanning):
        return Spanning(-a.v, -a.u, n_out, n_in)
    if isinstance(a, OuterPeripheral):
        return InnerPeripheral(-(a.i + a.k - 1), a.k, n_out, n_in)
    return OuterPeripheral(-(a.i + a.k - 1), a.k, n_out, n_in)


def swap_boundaries(a: Diagonal) -> Diagonal:
    """Exchange the two boundaries by the half turn ``(x, y) -> (-x, 1 - y)``.

    Unlike :func:`flip` this keeps the orientation, so every face keeps its
    counterclockwise side order and the quiver is unchanged.  It is
    :func:`flip` followed by a mirror reflection.
    """
    n_out, n_in = a.n_in, a.n_out
    if isinstance(a, Spanning):
        return Spanning(a.v, a.u, n_out, n_in)
    if isinstance(a, OuterPeripheral):
        return InnerPeripheral(a.i, a.k, n_out, n_in)
    return OuterPeripheral(a.i, a.k, n_out, n_in)


# -- m-diagonals ---------------------------------------------------------------


def is_m_diagonal(a: Diagonal, m: int) -> bool:
    if isinstance(a, Spanning):
        return (a.u - a.v) % m == 0
    return (a.k - 2) % m == 0


def level(a: Diagonal, m: int) -> int:
    if not is_m_diagonal(a, m):
        raise ValueError(f"{a!r} is not an m-diagonal for m={m}")
    if isinstance(a, Spanning):
        return a.u % m
    return a.i % m


def twist(a: Spanning) -> int:
    """Integer part of the horizontal displacement of the straight lift,
    measured in full turns.  Deck invariant."""
    return math.floor((a.u * a.n_in + a.v * a.n_out) / (a.n_out * a.n_in))


# -- serialization -------------------------------------------------------------


def diagonal_to_json(a: Diagonal) -> dict:
    if isinstance(a, Spanning):
        return {"t": "S", "u": a.u, "v": a.v}
    return {"t": tag(a), "i": a.i, "k": a.k}


def diagonal_from_json(obj: dict, cfg: AnnulusConfig) -> Diagonal:
    t = obj["t"]
    if t == "S":
        return cfg.S(int(obj["u"]), int(obj["v"]))
    if t == "O":
        return cfg.O(int(obj["i"]), int(obj["k"]))
    if t == "I":
        return cfg.I(int(obj["i"]), int(obj["k"]))
    raise ValueError(f"unknown diagonal tag {t!r}")
