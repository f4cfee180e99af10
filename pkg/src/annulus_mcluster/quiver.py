"""Coloured quivers with arrow colours in ``0..m`` and their mutation."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "ColouredQuiver",
    "QuiverAxiomError",
    "mutate_quiver",
    "quiver_canonical",
    "is_isomorphic",
    "delete_vertex",
    "is_connected",
]


class QuiverAxiomError(ValueError):
    """Raised when arrow data breaks the coloured quiver axioms."""


@dataclass(frozen=True)
class ColouredQuiver:
    """``arrows`` maps an ordered pair ``(i, j)`` to ``(colour, multiplicity)``.

    Both an arrow and its dual ``(j, i) -> (m - colour, multiplicity)`` are
    stored; :meth:`axiom_violations` checks that they agree.
    """

    n: int
    m: int
    arrows: Mapping[tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "arrows", dict(sorted(self.arrows.items())))

    def __eq__(self, other):
        if not isinstance(other, ColouredQuiver):
            return NotImplemented
        return (self.n, self.m, self.arrows) == (other.n, other.m, other.arrows)

    def __hash__(self):
        return hash((self.n, self.m, tuple(self.arrows.items())))

    @classmethod
    def from_multiset(cls, n: int, m: int, counts) -> "ColouredQuiver":
        """Build from ``{(i, j): {colour: count}}``, requiring one colour per pair."""
        arrows = {}
        for (i, j), by_colour in counts.items():
            live = {c: r for c, r in by_colour.items() if r}
            if not live:
                continue
            if len(live) > 1:
                raise QuiverAxiomError(f"pair {(i, j)} carries colours {sorted(live)}")
            ((c, r),) = live.items()
            arrows[(i, j)] = (c, r)
        return cls(n, m, arrows)

    @classmethod
    def from_colour0(cls, n: int, m: int, edges: Iterable[tuple[int, int]]) -> "ColouredQuiver":
        """Quiver whose colour-0 arrows are ``edges`` (with multiplicity)
        and whose only other arrows are their colour-m duals."""
        arrows: dict = {}
        for i, j in edges:
            c, r = arrows.get((i, j), (0, 0))
            arrows[(i, j)] = (0, r + 1)
            arrows[(j, i)] = (m, r + 1)
        return cls(n, m, arrows)

    def axiom_violations(self) -> list[str]:
        problems = []
        for (i, j), (c, r) in self.arrows.items():
            if i == j:
                problems.append(f"loop at {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                problems.append(f"arrow {(i, j)} outside vertex range")
            if not 0 <= c <= self.m:
                problems.append(f"arrow {(i, j)} has colour {c}")
            if r < 1:
                problems.append(f"arrow {(i, j)} has multiplicity {r}")
            if self.arrows.get((j, i)) != (self.m - c, r):
                problems.append(
                    f"arrow {(i, j)} colour {c} x{r} lacks dual, found {self.arrows.get((j, i))}"
                )
        return problems

    def check(self) -> "ColouredQuiver":
        problems = self.axiom_violations()
        if problems:
            raise QuiverAxiomError("; ".join(problems))
        return self

    def colour0_edges(self) -> list[tuple[int, int, int]]:
        return [(i, j, r) for (i, j), (c, r) in self.arrows.items() if c == 0]

    def reversed(self) -> "ColouredQuiver":
        return ColouredQuiver(self.n, self.m, {(j, i): cr for (i, j), cr in self.arrows.items()})

    def relabel(self, perm) -> "ColouredQuiver":
        """Vertex ``v`` becomes ``perm[v]``."""
        return ColouredQuiver(
            self.n, self.m, {(perm[i], perm[j]): cr for (i, j), cr in self.arrows.items()}
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "arrows": [
                {"from": i, "to": j, "colour": c, "mult": r}
                for (i, j), (c, r) in self.arrows.items()
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ColouredQuiver":
        arrows = {(a["from"], a["to"]): (a["colour"], a["mult"]) for a in obj["arrows"]}
        return cls(int(obj["n"]), int(obj["m"]), arrows)

    def to_dot(self, full: bool = False, name: str = "Q") -> str:
        """DOT text; by default only colours up to ``m // 2`` are drawn since
        the dual arrows are implied."""
        lines = [f"digraph {name} {{"]
        for v in range(self.n):
            lines.append(f"  {v};")
        for (i, j), (c, r) in self.arrows.items():
            if not full and c > self.m // 2:
                continue
            if not full and 2 * c == self.m and i > j:
                continue
            label = f"({c})" if r == 1 else f"({c}) x{r}"
            lines.append(f'  {i} -> {j} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def mutate_quiver(Q: ColouredQuiver, j: int) -> ColouredQuiver:
    """Coloured mutation at vertex ``j``.

    1. every path ``i -(c)-> j -(0)-> k`` with ``i != k`` adds an arrow
       ``i -> k`` of colour ``c`` and its dual ``k -> i`` of colour ``m - c``;
    2. opposite colours on the same ordered pair cancel pairwise;
    3. colours of arrows into ``j`` go up by one, out of ``j`` down by one,
       modulo ``m + 1``.
    """
    m = Q.m
    counts: dict = defaultdict(lambda: defaultdict(int))
    for pair, (c, r) in Q.arrows.items():
        counts[pair][c] += r

    into_j = [(i, c, r) for (i, t), (c, r) in Q.arrows.items() if t == j]
    out0 = [(k, r) for (s, k), (c, r) in Q.arrows.items() if s == j and c == 0]
    for i, c, r1 in into_j:
        for k, r2 in out0:
            if i == k:
                continue
            counts[(i, k)][c] += r1 * r2
            counts[(k, i)][m - c] += r1 * r2

    for pair, by_colour in counts.items():
        live = {c: r for c, r in by_colour.items() if r}
        if len(live) > 2:
            raise QuiverAxiomError(
                f"mutation at {j} left colours {sorted(live)} on pair {pair}"
            )
        if len(live) == 2:
            (c1, r1), (c2, r2) = live.items()
            cut = min(r1, r2)
            live = {c1: r1 - cut, c2: r2 - cut}
        counts[pair] = live

    shifted: dict = {}
    for (a, b), by_colour in counts.items():
        for c, r in by_colour.items():
            if not r:
                continue
            if b == j:
                c = (c + 1) % (m + 1)
            elif a == j:
                c = (c - 1) % (m + 1)
            shifted[(a, b)] = {c: r}
    return ColouredQuiver.from_multiset(Q.n, m, shifted)


def delete_vertex(Q: ColouredQuiver, v: int) -> ColouredQuiver:
    """Remove ``v``; vertices above ``v`` move down by one."""

    def lab(x):
        return x - 1 if x > v else x

    arrows = {(lab(i), lab(j)): cr for (i, j), cr in Q.arrows.items() if v not in (i, j)}
    return ColouredQuiver(Q.n - 1, Q.m, arrows)


def is_connected(Q: ColouredQuiver) -> bool:
    if Q.n == 0:
        return True
    adj = defaultdict(set)
    for i, j in Q.arrows:
        adj[i].add(j)
        adj[j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x] - seen:
            seen.add(y)
            stack.append(y)
    return len(seen) == Q.n


# -- canonical form ------------------------------------------------------------


def _refine(Q: ColouredQuiver, out_adj, cells: list[list[int]]) -> list[list[int]]:
    """Colour refinement to an equitable ordered partition.

    Cells are split by the multiset of ``(colour, mult, target cell)`` over
    outgoing arrows; split pieces keep the position of their parent cell and
    are ordered by signature, so the result depends only on the isomorphism
    type of ``(Q, cells)``.
    """
    while True:
        where = {v: idx for idx, cell in enumerate(cells) for v in cell}
        new_cells = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups = defaultdict(list)
            for v in cell:
                sig = tuple(sorted((c, r, where[w]) for w, c, r in out_adj[v]))
                groups[sig].append(v)
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        if len(new_cells) == len(cells):
            return new_cells
        cells = new_cells


def _serialize(Q: ColouredQuiver, label: dict[int, int]) -> bytes:
    items = sorted((label[i], label[j], c, r) for (i, j), (c, r) in Q.arrows.items())
    body = ";".join(f"{a},{b},{c},{r}" for a, b, c, r in items)
    return f"{Q.n}|{Q.m}|{body}".encode()


def canonical_labelling(Q: ColouredQuiver) -> tuple[bytes, dict[int, int]]:
    """Minimal serialization over the leaves of an individualization-refinement
    search, together with the vertex relabelling that realises it."""
    out_adj = defaultdict(list)
    for (i, j), (c, r) in Q.arrows.items():
        out_adj[i].append((j, c, r))

    best: list = [None, None]

    def search(cells):
        cells = _refine(Q, out_adj, cells)
        if all(len(c) == 1 for c in cells):
            label = {cell[0]: idx for idx, cell in enumerate(cells)}
            ser = _serialize(Q, label)
            if best[0] is None or ser < best[0]:
                best[0], best[1] = ser, label
            return
        pos = next(idx for idx, c in enumerate(cells) if len(c) > 1)
        for v in cells[pos]:
            rest = [w for w in cells[pos] if w != v]
            search(cells[:pos] + [[v], rest] + cells[pos + 1:])

    search([list(range(Q.n))])
    return best[0], best[1]


def quiver_canonical(Q: ColouredQuiver) -> bytes:
    return canonical_labelling(Q)[0]


def canonical_quiver(Q: ColouredQuiver) -> ColouredQuiver:
    _, label = canonical_labelling(Q)
    return Q.relabel(label)


def is_isomorphic(Q1: ColouredQuiver, Q2: ColouredQuiver) -> bool:
    if (Q1.n, Q1.m, len(Q1.arrows)) != (Q2.n, Q2.m, len(Q2.arrows)):
        return False
    return quiver_canonical(Q1) == quiver_canonical(Q2)


def dumps(Q: ColouredQuiver) -> str:
    return json.dumps(Q.to_json(), sort_keys=True)
