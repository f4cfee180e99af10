"""Property suites shared by the ``verify`` command and the test suite.

Each suite returns a :class:`CheckResult` holding the number of cases it
looked at and a list of counterexamples as JSON-ready dicts.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .angulation import (
    Angulation,
    PolygonDissection,
    apply_symmetry,
    check,
    delta0,
    factor_out,
    is_close_to_border,
    mutate,
    quiver_of,
)
from .diagcat import build_ar_quiver, functor_label, label_tau, translate_dual_check
from .geometry import (
    AnnulusConfig,
    InnerPeripheral,
    OuterPeripheral,
    Spanning,
    crossing_number,
    diagonal_to_json,
    flip,
    rotate_inner,
    rotate_outer,
    shift,
    tau,
    twist,
)
from .quiver import ColouredQuiver, delete_vertex, is_connected, mutate_quiver

__all__ = [
    "CheckResult",
    "random_walks",
    "window_diagonals",
    "check_crossings",
    "check_walks",
    "check_flip_reversal",
    "check_factoring",
    "check_ar_quiver",
    "expected_delta0_quiver",
    "run_all",
]

MAX_EXAMPLES = 5


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    total_violations: int = 0

    @property
    def ok(self) -> bool:
        return self.total_violations == 0

    def fail(self, example: dict) -> None:
        self.total_violations += 1
        if len(self.violations) < MAX_EXAMPLES:
            self.violations.append(example)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "violations": self.total_violations,
            "examples": self.violations,
            "result": "pass" if self.ok else "fail",
        }


def random_walks(cfg: AnnulusConfig, count: int, max_length: int, rng: random.Random):
    """``count`` lists of ``(angulation, position)`` steps starting at the
    distinguished angulation; each walk has between 1 and ``max_length``
    steps."""
    walks = []
    for _ in range(count):
        a = delta0(cfg)
        steps = []
        for _ in range(rng.randint(1, max_length)):
            j = rng.randrange(cfg.rank)
            steps.append((a, j))
            a = mutate(a, j)
        walks.append(steps)
    return walks


def walk_states(walks) -> list[Angulation]:
    """Every angulation reached along the walks, final states included."""
    out = []
    for steps in walks:
        out += [a for a, _ in steps]
        last, j = steps[-1]
        out.append(mutate(last, j))
    return out


def window_diagonals(cfg: AnnulusConfig, max_twist: int, max_out: int, max_in: int):
    """Spanning diagonals with ``|twist| <= max_twist`` and peripheral ones
    with ``k`` up to the given bounds."""
    out = []
    for u in range(cfg.n_out):
        for v in range(-(max_twist + 1) * cfg.n_in, (max_twist + 1) * cfg.n_in + 1):
            a = cfg.S(u, v)
            if abs(twist(a)) <= max_twist:
                out.append(a)
    out += [cfg.O(i, k) for i in range(cfg.n_out) for k in range(3, max_out + 1)]
    out += [cfg.I(i, k) for i in range(cfg.n_in) for k in range(3, max_in + 1)]
    return out


def check_crossings(cfg: AnnulusConfig, max_twist: int = 3) -> CheckResult:
    """Symmetry, invariance under [1], r_O and r_I, and flip invariance over
    every pair in the window; opposite peripheral arcs never cross."""
    res = CheckResult("crossing properties")
    m = cfg.m
    diags = window_diagonals(
        cfg, max_twist, cfg.n_out + 1 + 2 * m, cfg.n_in + 1 + 2 * m
    )
    for a, b in itertools.combinations_with_replacement(diags, 2):
        res.checked += 1
        e = crossing_number(a, b)
        others = {
            "swapped": crossing_number(b, a),
            "shift": crossing_number(shift(a, 1), shift(b, 1)),
            "rotate_outer": crossing_number(rotate_outer(a, 1), rotate_outer(b, 1)),
            "rotate_inner": crossing_number(rotate_inner(a, 1), rotate_inner(b, 1)),
            "flip": crossing_number(flip(a), flip(b)),
        }
        bad = {k: v for k, v in others.items() if v != e}
        if isinstance(a, OuterPeripheral) and isinstance(b, InnerPeripheral) and e:
            bad["opposite peripherals"] = e
        if isinstance(a, InnerPeripheral) and isinstance(b, OuterPeripheral) and e:
            bad["opposite peripherals"] = e
        if bad:
            res.fail(
                {"a": diagonal_to_json(a), "b": diagonal_to_json(b), "crossing": e, "mismatch": bad}
            )
    return res


def check_walks(cfg: AnnulusConfig, walks) -> list[CheckResult]:
    """Commutation of the two mutations, (m+1)-periodicity on both sides,
    and the quiver axioms after every step."""
    commute = CheckResult("mutation commutes with quiver mutation")
    period = CheckResult("mutation has period m+1")
    axioms = CheckResult("quiver axioms after mutation")
    for steps in walks:
        for a, j in steps:
            Q = quiver_of(a)
            b = mutate(a, j)
            Qb = quiver_of(b)
            Qm = mutate_quiver(Q, j)
            commute.checked += 1
            if Qb != Qm:
                commute.fail(
                    {"angulation": a.to_json(), "position": j, "geometric": Qb.to_json(), "algebraic": Qm.to_json()}
                )
            axioms.checked += 1
            problems = Qm.axiom_violations() + check(b.diagonals, cfg, b.strict).violations
            if problems:
                axioms.fail({"angulation": a.to_json(), "position": j, "problems": [str(x) for x in problems]})
            period.checked += 1
            c, R = a, Q
            for _ in range(cfg.m + 1):
                c = mutate(c, j)
                R = mutate_quiver(R, j)
            if c.diagonals != a.diagonals or R != Q:
                period.fail({"angulation": a.to_json(), "position": j})
    return [commute, period, axioms]


def check_flip_reversal(cfg: AnnulusConfig, states) -> CheckResult:
    """The flipped angulation is valid and its quiver is the reversal."""
    res = CheckResult("flip reverses the quiver")
    for a in states:
        res.checked += 1
        b = apply_symmetry(a, 0, 0, use_flip=True)
        rep = check(b.diagonals, b.cfg, b.strict)
        if not rep.ok or quiver_of(b) != quiver_of(a).reversed():
            res.fail({"angulation": a.to_json(), "report": rep.summary()})
    return res


def check_factoring(cfg: AnnulusConfig, states) -> list[CheckResult]:
    """Factoring out a spanning or close-to-border diagonal deletes its
    vertex from the quiver; deleting any other peripheral vertex leaves
    the quiver disconnected."""
    spanning = CheckResult("factoring a spanning diagonal")
    border = CheckResult("factoring a diagonal close to the border")
    other = CheckResult("other peripheral vertices disconnect")
    for a in states:
        Q = quiver_of(a)
        for idx, d in enumerate(a.diagonals):
            target = delete_vertex(Q, idx)
            if isinstance(d, Spanning):
                spanning.checked += 1
                poly = factor_out(a, idx)
                ok = (
                    isinstance(poly, PolygonDissection)
                    and len(poly.chords) == cfg.rank - 1
                    and poly.size == cfg.n_out + cfg.n_in + 2
                    and poly.is_angulation()
                    and quiver_of(poly) == target
                )
                if not ok:
                    spanning.fail({"angulation": a.to_json(), "index": idx})
            elif is_close_to_border(d, cfg.m):
                side = cfg.p if isinstance(d, OuterPeripheral) else cfg.q
                if side < 3:
                    continue
                border.checked += 1
                smaller = factor_out(a, idx)
                rep = check(smaller.diagonals, smaller.cfg, smaller.strict)
                if not rep.ok or quiver_of(smaller) != target or not is_connected(target):
                    border.fail({"angulation": a.to_json(), "index": idx, "report": rep.summary()})
            else:
                other.checked += 1
                if is_connected(target):
                    other.fail({"angulation": a.to_json(), "index": idx})
    return [spanning, border, other]


def expected_delta0_quiver(cfg: AnnulusConfig) -> ColouredQuiver:
    """Two colour-0 paths ``0 -> 1 -> .. -> p-1 -> p+q-1`` and
    ``0 -> p -> .. -> p+q-2 -> p+q-1``, plus the colour-m duals."""
    p, q = cfg.p, cfg.q
    top = list(range(p)) + [p + q - 1]
    bottom = [0] + list(range(p, p + q))
    edges = list(zip(top, top[1:])) + list(zip(bottom, bottom[1:]))
    return ColouredQuiver.from_colour0(p + q, cfg.m, edges)


def check_ar_quiver(cfg: AnnulusConfig, window: int = 6, quasi_length: int = 6) -> list[CheckResult]:
    ar = build_ar_quiver(cfg, window, quasi_length)
    g = ar.graph
    moves = ar.move_graph()
    comps = CheckResult("3m components")
    comps.checked = 1
    summary = ar.summary()
    if summary["components"] != 3 * cfg.m or any("," in n for n in summary["names"]):
        comps.fail(summary)

    period = CheckResult("tube translation periods")
    simple = CheckResult("quasi-simples have one arrow in and one out")
    labels = CheckResult("tau acts on labels")
    for a in g:
        lab = g.nodes[a]["label"]
        labels.checked += 1
        if functor_label(tau(a, cfg.m), cfg) != label_tau(lab, cfg):
            labels.fail({"diagonal": diagonal_to_json(a), "label": str(lab)})
        if isinstance(a, Spanning):
            continue
        period.checked += 1
        expected = cfg.p if isinstance(a, OuterPeripheral) else cfg.q
        b, n = tau(a, cfg.m), 1
        while b != a:
            b, n = tau(b, cfg.m), n + 1
        if n != expected:
            period.fail({"diagonal": diagonal_to_json(a), "period": n, "expected": expected})
        if lab.s == 1:
            simple.checked += 1
            if moves.in_degree(a) != 1 or moves.out_degree(a) != 1:
                simple.fail(
                    {"diagonal": diagonal_to_json(a), "in": moves.in_degree(a), "out": moves.out_degree(a)}
                )

    dual = CheckResult("move and translate duality")
    nodes = list(g)
    for a in nodes:
        for b in nodes:
            dual.checked += 1
            if not translate_dual_check(a, b, cfg):
                dual.fail({"a": diagonal_to_json(a), "b": diagonal_to_json(b)})
    return [comps, period, simple, labels, dual]


def run_all(cfg: AnnulusConfig, samples: int, seed: int, window: int = 3) -> list[CheckResult]:
    """The full verification suite; ``samples`` random walks of length at
    most 12 drive the mutation checks."""
    rng = random.Random(seed)
    walks = random_walks(cfg, samples, 12, rng)
    states = walk_states(walks)
    picked = rng.sample(states, min(len(states), samples))
    d0 = CheckResult("distinguished quiver")
    d0.checked = 1
    if quiver_of(delta0(cfg)) != expected_delta0_quiver(cfg):
        d0.fail({"quiver": quiver_of(delta0(cfg)).to_json()})
    results = [check_crossings(cfg, window), d0]
    results += check_walks(cfg, walks)
    results.append(check_flip_reversal(cfg, picked))
    results += check_factoring(cfg, picked)
    results += check_ar_quiver(cfg, window, window)
    return results
