"""Mutation classes on the angulation side and the quiver side, the map
between them, and the closed-form counts for ``m = 1``."""

from __future__ import annotations

import json
import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .angulation import Angulation, apply_symmetry, canonical_representative, delta0, mutate, quiver_of
from .geometry import AnnulusConfig
from .quiver import ColouredQuiver, canonical_quiver, mutate_quiver, quiver_canonical

__all__ = [
    "ClassDatabase",
    "ResourceLimitExceeded",
    "FormulaError",
    "BijectionReport",
    "enumerate_angulation_classes",
    "enumerate_quiver_classes",
    "verify_bijection",
    "closed_form_count",
    "summary_report",
    "DEFAULT_MAX_CLASSES",
]

DEFAULT_MAX_CLASSES = 10**6


class ResourceLimitExceeded(RuntimeError):
    pass


class FormulaError(ArithmeticError):
    """The closed form did not evaluate to an integer."""


@dataclass
class ClassDatabase:
    """Canonical form -> witness, plus the mutation edges between classes."""

    cfg: AnnulusConfig
    side: str
    witnesses: dict = field(default_factory=dict)
    edges: set = field(default_factory=set)

    @property
    def classes(self) -> set:
        return set(self.witnesses)

    def __len__(self) -> int:
        return len(self.witnesses)

    def __contains__(self, key) -> bool:
        return key in self.witnesses

    def save_jsonl(self, path) -> None:
        with open(path, "w") as fh:
            header = {"p": self.cfg.p, "q": self.cfg.q, "m": self.cfg.m, "side": self.side}
            fh.write(json.dumps(header) + "\n")
            for key in sorted(self.witnesses):
                w = self.witnesses[key]
                fh.write(json.dumps({"canonical": key.decode(), "witness": w.to_json()}) + "\n")

    @classmethod
    def load_jsonl(cls, path) -> "ClassDatabase":
        lines = Path(path).read_text().splitlines()
        header = json.loads(lines[0])
        cfg = AnnulusConfig(header["p"], header["q"], header["m"])
        db = cls(cfg, header["side"])
        for line in lines[1:]:
            if not line.strip():
                continue
            rec = json.loads(line)
            if db.side == "angulation":
                w = Angulation.from_json(rec["witness"], check_valid=False)
            else:
                w = ColouredQuiver.from_json(rec["witness"])
            db.witnesses[rec["canonical"].encode()] = w
        return db


def _bfs(cfg, side, start, canon, successors, max_classes, record_edges):
    db = ClassDatabase(cfg, side)
    key, w = canon(start)
    db.witnesses[key] = w
    queue = deque([key])
    while queue:
        key = queue.popleft()
        for nxt in successors(db.witnesses[key]):
            k2, w2 = canon(nxt)
            if record_edges:
                db.edges.add((key, k2))
            if k2 in db.witnesses:
                continue
            if len(db.witnesses) >= max_classes:
                raise ResourceLimitExceeded(
                    f"more than {max_classes} {side} classes for {cfg}; raise the limit "
                    "if the parameters are intended"
                )
            db.witnesses[k2] = w2
            queue.append(k2)
    return db


def enumerate_angulation_classes(
    cfg: AnnulusConfig,
    use_flip: bool = True,
    max_classes: int = DEFAULT_MAX_CLASSES,
    record_edges: bool = False,
) -> ClassDatabase:
    """Breadth-first search from the distinguished angulation, mutating at
    every position and identifying angulations up to rotation (and the
    boundary swap when ``use_flip`` and ``p == q``)."""
    return _bfs(
        cfg,
        "angulation",
        delta0(cfg),
        lambda a: canonical_representative(a, use_flip),
        lambda a: (mutate(a, j) for j in range(len(a))),
        max_classes,
        record_edges,
    )


def _quiver_canon(Q: ColouredQuiver):
    return quiver_canonical(Q), canonical_quiver(Q)


def enumerate_quiver_classes(
    cfg: AnnulusConfig, max_classes: int = DEFAULT_MAX_CLASSES, record_edges: bool = False
) -> ClassDatabase:
    return _bfs(
        cfg,
        "quiver",
        quiver_of(delta0(cfg)),
        _quiver_canon,
        lambda Q: (mutate_quiver(Q, j) for j in range(Q.n)),
        max_classes,
        record_edges,
    )


@dataclass
class BijectionReport:
    cfg: AnnulusConfig
    angulation_count: int
    quiver_count: int
    orbit_failures: list = field(default_factory=list)
    collisions: list = field(default_factory=list)
    missing: list = field(default_factory=list)
    outside: list = field(default_factory=list)

    @property
    def well_defined(self) -> bool:
        return not self.orbit_failures

    @property
    def injective(self) -> bool:
        return not self.collisions

    @property
    def surjective(self) -> bool:
        return not self.missing and not self.outside

    @property
    def passed(self) -> bool:
        return self.well_defined and self.injective and self.surjective

    def to_json(self) -> dict:
        return {
            "angulation_classes": self.angulation_count,
            "quiver_classes": self.quiver_count,
            "well_defined": self.well_defined,
            "injective": self.injective,
            "surjective": self.surjective,
            "orbit_failures": self.orbit_failures,
            "collisions": self.collisions,
            "missing": [k.decode() for k in self.missing],
            "outside": [k.decode() for k in self.outside],
            "result": "pass" if self.passed else "fail",
        }


def verify_bijection(
    cfg: AnnulusConfig,
    samples: int = 10,
    seed: int = 0,
    angulations: ClassDatabase | None = None,
    quivers: ClassDatabase | None = None,
) -> BijectionReport:
    """Check that angulation class -> quiver class is well defined,
    injective and onto the quiver classes reachable by mutation."""
    if angulations is None:
        angulations = enumerate_angulation_classes(cfg, use_flip=True)
    if quivers is None:
        quivers = enumerate_quiver_classes(cfg)
    rng = random.Random(seed)
    swap_ok = cfg.p == cfg.q
    report = BijectionReport(cfg, len(angulations), len(quivers))
    image: dict[bytes, bytes] = {}
    for key in sorted(angulations.witnesses):
        a = angulations.witnesses[key]
        qkey = quiver_canonical(quiver_of(a))
        for _ in range(samples):
            i = rng.randrange(cfg.n_out)
            j = rng.randrange(cfg.n_in)
            swap = swap_ok and rng.random() < 0.5
            b = apply_symmetry(a, i, j, swap=swap)
            if quiver_canonical(quiver_of(b)) != qkey:
                report.orbit_failures.append(
                    {"witness": a.to_json(), "rotation": [i, j], "swap": swap}
                )
        if qkey in image:
            report.collisions.append(
                {
                    "first": angulations.witnesses[image[qkey]].to_json(),
                    "second": a.to_json(),
                }
            )
        else:
            image[qkey] = key
        if qkey not in quivers:
            report.outside.append(qkey)
    report.missing = sorted(set(quivers.witnesses) - set(image))
    return report


def _phi(k: int) -> int:
    return sum(1 for t in range(1, k + 1) if math.gcd(t, k) == 1)


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def closed_form_count(p: int, q: int, with_flip: bool) -> int:
    """Number of mutation classes of 3-angulations (``m = 1``) of the
    annulus, up to rotation and, when ``with_flip``, the boundary swap.

    The swap only matters for ``p == q``; otherwise it maps to the annulus
    with ``p`` and ``q`` exchanged and the rotation-only count applies.
    """
    if p < 2 or q < 2:
        raise ValueError("need p, q >= 2")
    if with_flip and p == q:
        total = Fraction(math.comb(2 * p, p), 2)
        for k in _divisors(p):
            total += Fraction(_phi(k), 4 * p) * math.comb(2 * p // k, p // k) ** 2
    else:
        total = Fraction(0)
        for k in _divisors(math.gcd(p, q)):
            total += (
                Fraction(_phi(k), p + q)
                * math.comb(2 * p // k, p // k)
                * math.comb(2 * q // k, q // k)
            )
    total /= 2
    if total.denominator != 1:
        raise FormulaError(f"closed form gives {total} for p={p}, q={q}, with_flip={with_flip}")
    return int(total)


def summary_report(
    cfg: AnnulusConfig,
    use_flip: bool = True,
    samples: int = 10,
    seed: int = 0,
    max_classes: int = DEFAULT_MAX_CLASSES,
    angulations: ClassDatabase | None = None,
    quivers: ClassDatabase | None = None,
) -> dict:
    """``{counts, bijection, formula}`` for one annulus."""
    angs = angulations if angulations is not None else enumerate_angulation_classes(cfg, use_flip, max_classes)
    if quivers is None:
        quivers = enumerate_quiver_classes(cfg, max_classes)
    counts = {"angulation": len(angs), "quiver": len(quivers)}
    if use_flip:
        rep = verify_bijection(cfg, samples, seed, angs, quivers)
        bijection = rep.to_json()
    else:
        bijection = {"result": "skipped", "reason": "rotation-only classes are not matched to quivers"}
    out = {
        "p": cfg.p,
        "q": cfg.q,
        "m": cfg.m,
        "use_flip": use_flip,
        "counts": counts,
        "bijection": bijection,
    }
    if cfg.m == 1:
        try:
            value = closed_form_count(cfg.p, cfg.q, use_flip)
            out["formula"] = {"value": value, "matches": value == len(angs)}
        except FormulaError as exc:
            out["formula"] = {"value": None, "matches": False, "error": str(exc)}
    else:
        out["formula"] = {"value": None, "matches": None}
    return out
