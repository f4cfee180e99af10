"""The quiver of m-diagonals: elementary moves, the translation, and the
labelling of its components by transjective and tube components."""

from __future__ import annotations

import json
from dataclasses import dataclass

import networkx as nx

from .angulation import delta0
from .geometry import (
    AnnulusConfig,
    Diagonal,
    OuterPeripheral,
    Spanning,
    is_m_diagonal,
    level,
    sort_key,
    tag,
    tau,
    twist,
)

__all__ = [
    "ARLabel",
    "ARQuiver",
    "elementary_moves",
    "translate_dual_check",
    "functor_label",
    "label_shift",
    "label_tau",
    "build_ar_quiver",
    "tube_pattern",
]


@dataclass(frozen=True, order=True)
class ARLabel:
    """``Transjective``: ``(i, s, d)`` stands for ``tau^s P_i [d]``.
    ``TubeP`` / ``TubeQ``: ``(i, s, d)`` stands for ``Q_i^s [d]``, the object
    of quasi-length ``s`` on the ray starting at the ``i``-th quasi-simple."""

    kind: str
    i: int
    s: int
    d: int

    def component(self) -> str:
        head = {"Transjective": "S", "TubeP": "Tp", "TubeQ": "Tq"}[self.kind]
        return f"{head}^{self.d}"

    def __str__(self) -> str:
        if self.kind == "Transjective":
            return f"{self.component()}:tau^{self.s} P_{self.i}"
        return f"{self.component()}:Q({self.i},{self.s})"


def _require_m(a: Diagonal, m: int) -> None:
    if not is_m_diagonal(a, m):
        raise ValueError(f"{a!r} is not an m-diagonal for m={m}")


def elementary_moves(a: Diagonal, cfg: AnnulusConfig) -> list[Diagonal]:
    """Targets of the elementary moves out of ``a``.

    A spanning diagonal moves one endpoint ``m`` steps along its boundary
    (outer counterclockwise, inner clockwise).  A peripheral diagonal
    grows by ``m``, or, when longer than ``m + 2``, gives up its first ``m``
    vertices.
    """
    m = cfg.m
    _require_m(a, m)
    if isinstance(a, Spanning):
        return [cfg.S(a.u + m, a.v), cfg.S(a.u, a.v + m)]
    make = cfg.O if isinstance(a, OuterPeripheral) else cfg.I
    out = [make(a.i, a.k + m)]
    if a.k > m + 2:
        out.append(make(a.i + m, a.k - m))
    return out


def translate_dual_check(a: Diagonal, b: Diagonal, cfg: AnnulusConfig) -> bool:
    """Whether ``a -> b`` is a move exactly when ``tau b -> a`` is."""
    forward = b in elementary_moves(a, cfg)
    backward = a in elementary_moves(tau(b, cfg.m), cfg)
    return forward == backward


def functor_label(a: Diagonal, cfg: AnnulusConfig) -> ARLabel:
    """Position of ``a`` in its component.

    Peripheral ``O_{im - d, jm + 2}`` is ``Q_i^j [d]`` in the outer tube of
    degree ``d`` (likewise for inner ones); a spanning diagonal is written
    as ``tau^s alpha_i [d]`` with ``alpha_i`` the ``i``-th diagonal of the
    distinguished angulation.
    """
    m = cfg.m
    _require_m(a, m)
    if not isinstance(a, Spanning):
        j, r = divmod(a.k - 2, m)
        d = (-a.i) % m
        period = cfg.p if isinstance(a, OuterPeripheral) else cfg.q
        kind = "TubeP" if isinstance(a, OuterPeripheral) else "TubeQ"
        return ARLabel(kind, ((a.i + d) // m) % period, j, d)
    width = m * (cfg.p + cfg.q)
    found = []
    for i, base in enumerate(delta0(cfg).diagonals):
        n, r = divmod((a.u - a.v) - (base.u - base.v), width)
        if r:
            continue
        t = base.u + n * cfg.n_out - a.u
        d = t % m
        found.append(ARLabel("Transjective", i, (t - d) // m, d))
    if len(found) != 1:
        raise ValueError(f"{a!r} has {len(found)} decompositions as tau^s alpha_i [d]")
    return found[0]


def label_shift(label: ARLabel, s: int, cfg: AnnulusConfig) -> ARLabel:
    """The label of ``a[s]`` computed from the label of ``a``."""
    m = cfg.m
    if label.kind == "Transjective":
        total = label.d + m * label.s + s
        d = total % m
        return ARLabel(label.kind, label.i, (total - d) // m, d)
    period = cfg.p if label.kind == "TubeP" else cfg.q
    start = label.i * m - label.d - s
    d = (-start) % m
    return ARLabel(label.kind, ((start + d) // m) % period, label.s, d)


def label_tau(label: ARLabel, cfg: AnnulusConfig) -> ARLabel:
    return label_shift(label, cfg.m, cfg)


@dataclass
class ARQuiver:
    cfg: AnnulusConfig
    window: int
    quasi_length: int
    graph: nx.DiGraph

    def move_graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.graph.nodes(data=True))
        g.add_edges_from(
            (a, b) for a, b, kind in self.graph.edges(data="kind") if kind == "move"
        )
        return g

    def _inner(self, v) -> bool:
        data = self.graph.nodes[v]
        if data["type"] == "S":
            return 2 * abs(data["twist"]) <= self.window
        return 2 * data["label"].s <= self.quasi_length

    def components(self) -> list[dict]:
        """Weakly connected components of the move graph that reach the
        inner half of the window, each with its component name."""
        out = []
        for comp in nx.weakly_connected_components(self.move_graph()):
            if not any(self._inner(v) for v in comp):
                continue
            names = sorted({self.graph.nodes[v]["label"].component() for v in comp})
            out.append({"names": names, "size": len(comp), "nodes": comp})
        out.sort(key=lambda c: (c["names"], c["size"]))
        return out

    def summary(self) -> dict:
        comps = self.components()
        by_kind = {"S": 0, "Tp": 0, "Tq": 0}
        for c in comps:
            for name in c["names"]:
                by_kind[name.split("^")[0]] += 1
        return {
            "p": self.cfg.p,
            "q": self.cfg.q,
            "m": self.cfg.m,
            "window": self.window,
            "quasi_length": self.quasi_length,
            "vertices": self.graph.number_of_nodes(),
            "moves": sum(1 for *_, k in self.graph.edges(data="kind") if k == "move"),
            "components": len(comps),
            "expected_components": 3 * self.cfg.m,
            "by_kind": by_kind,
            "names": [", ".join(c["names"]) for c in comps],
        }

    def to_json(self) -> dict:
        nodes = sorted(self.graph.nodes, key=_node_order)
        index = {v: t for t, v in enumerate(nodes)}
        return {
            "summary": self.summary(),
            "nodes": [
                {"id": index[v], "diagonal": _name(v), "label": str(self.graph.nodes[v]["label"])}
                for v in nodes
            ],
            "edges": sorted(
                [index[a], index[b], kind] for a, b, kind in self.graph.edges(data="kind")
            ),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    def to_dot(self) -> str:
        nodes = sorted(self.graph.nodes, key=_node_order)
        lines = ["digraph AR {"]
        for v in nodes:
            lines.append(f'  "{_name(v)}" [label="{self.graph.nodes[v]["label"]}"];')
        for a, b, kind in sorted(
            self.graph.edges(data="kind"), key=lambda e: (_node_order(e[0]), _node_order(e[1]))
        ):
            style = " [style=dashed]" if kind == "tau" else ""
            lines.append(f'  "{_name(a)}" -> "{_name(b)}"{style};')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _node_order(v):
    return sort_key(v)


def _name(v: Diagonal) -> str:
    if isinstance(v, Spanning):
        return f"S({v.u},{v.v})"
    return f"{tag(v)}({v.i},{v.k})"


def _window_vertices(cfg: AnnulusConfig, window: int, quasi_length: int) -> list[Diagonal]:
    m = cfg.m
    out: list[Diagonal] = []
    for u in range(cfg.n_out):
        for v in range(-(window + 1) * cfg.n_in, (window + 1) * cfg.n_in + 1):
            if (u - v) % m:
                continue
            a = cfg.S(u, v)
            if -window <= twist(a) <= window:
                out.append(a)
    for j in range(1, quasi_length + 1):
        out += [cfg.O(i, j * m + 2) for i in range(cfg.n_out)]
        out += [cfg.I(i, j * m + 2) for i in range(cfg.n_in)]
    return out


def build_ar_quiver(cfg: AnnulusConfig, window: int = 6, quasi_length: int = 6) -> ARQuiver:
    """m-diagonals with twist in ``[-window, window]`` and peripheral ones
    of quasi-length at most ``quasi_length``; edges are the elementary
    moves (``kind="move"``) and the translation ``a -> tau a``
    (``kind="tau"``), both kept only inside the window."""
    g = nx.DiGraph()
    verts = _window_vertices(cfg, window, quasi_length)
    for a in verts:
        g.add_node(
            a,
            type=tag(a),
            level=level(a, cfg.m),
            twist=twist(a) if isinstance(a, Spanning) else None,
            label=functor_label(a, cfg),
        )
    present = set(verts)
    for a in verts:
        for b in elementary_moves(a, cfg):
            if b in present:
                g.add_edge(a, b, kind="move")
        t = tau(a, cfg.m)
        if t in present and not g.has_edge(a, t):
            g.add_edge(a, t, kind="tau")
    return ARQuiver(cfg, window, quasi_length, g)


def tube_pattern(rank: int, length: int) -> nx.DiGraph:
    """Tube of the given rank truncated at quasi-length ``length``: vertex
    ``(i, j)`` has arrows to ``(i, j + 1)`` and, for ``j > 1``, to
    ``(i + 1, j - 1)``."""
    g = nx.DiGraph()
    for i in range(rank):
        for j in range(1, length + 1):
            g.add_node((i, j))
            if j < length:
                g.add_edge((i, j), (i, j + 1))
            if j > 1:
                g.add_edge((i, j), ((i + 1) % rank, j - 1))
    return g

