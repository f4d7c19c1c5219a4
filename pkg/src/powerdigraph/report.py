"""Full analysis of one G(n, k) and its JSON and text renderings.

Big integers (automorphism orders) are written as decimal strings so the JSON
never passes through floating point.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

from . import aut, canon, spectral, structure
from .aut import AutClass, AutReport
from .canon import CanonicalCert
from .numtheory import CoprimeSplit
from .spectral import FactoredPoly
from .structure import CycleOrderRecord, CycleStructure, GraphFacts, Predicates, TreeProfile


@dataclass(frozen=True)
class AnalysisReport:
    facts: GraphFacts
    char_poly: FactoredPoly
    min_poly: FactoredPoly
    aut: AutReport
    certificate: CanonicalCert

    @property
    def n(self) -> int:
        return self.facts.split.n

    @property
    def k(self) -> int:
        return self.facts.split.k

    def components(self) -> list[tuple[int, int, int]]:
        """``(cycle length, vertex count, number of such components)``."""
        w = self.facts.split.w
        return [(r, r * w, m) for r, m in self.facts.cycles.by_length]

    def to_dict(self) -> dict:
        f = self.facts
        return {
            "n": f.split.n,
            "k": f.split.k,
            "gcd_nk": math.gcd(f.split.n, f.split.k),
            "split": {"t": f.split.t, "w": f.split.w},
            "cycles": {
                "per_order": [{"order": r.order, "length": r.length, "count": r.count} for r in f.cycles.per_order],
                "by_length": [{"length": r, "multiplicity": m} for r, m in f.cycles.by_length],
                "total_cycles": f.cycles.total_cycles,
                "longest": f.cycles.longest,
            },
            "trees": {
                "h0": f.trees.h0,
                "per_tree_levels": list(f.trees.per_tree_levels),
                "total_levels": list(f.trees.total_levels),
                "tree_size": f.trees.tree_size,
            },
            "components": [
                {"cycle_length": r, "size": size, "count": m} for r, size, m in self.components()
            ],
            "indegree_zero": f.indegree_zero,
            "predicates": f.predicates._asdict(),
            "char_poly": _poly_dict(self.char_poly),
            "min_poly": _poly_dict(self.min_poly),
            "spectrum": [
                {"order": ev.order, "index": ev.index, "value": str(ev), "multiplicity": mult}
                for ev, mult in spectral.spectrum(self.char_poly)
            ],
            "aut": aut_dict(self.aut),
            "certificate": {
                "vertex_count": self.certificate.vertex_count,
                "tree_code": self.certificate.tree_code,
                "cycle_multiset": [list(p) for p in self.certificate.cycle_multiset],
                "text": str(self.certificate),
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> AnalysisReport:
        split = CoprimeSplit(d["n"], d["k"], d["split"]["t"], d["split"]["w"])
        cyc = d["cycles"]
        cycles = CycleStructure(
            per_order=tuple(CycleOrderRecord(r["order"], r["length"], r["count"]) for r in cyc["per_order"]),
            by_length=tuple((r["length"], r["multiplicity"]) for r in cyc["by_length"]),
            total_cycles=cyc["total_cycles"],
            longest=cyc["longest"],
        )
        tr = d["trees"]
        trees = TreeProfile(tr["h0"], tuple(tr["per_tree_levels"]), tuple(tr["total_levels"]), tr["tree_size"])
        facts = GraphFacts(split, cycles, trees, d["indegree_zero"], Predicates(**d["predicates"]))
        a = d["aut"]
        aut_report = AutReport(
            tree_aut_order=int(a["tree_aut_order"]),
            per_class=tuple(
                AutClass(c["cycle_length"], c["multiplicity"], int(c["component_order"])) for c in a["per_class"]
            ),
            total_order=int(a["total_order"]),
            structure_string=a["structure"],
        )
        cert = d["certificate"]
        return cls(
            facts=facts,
            char_poly=_poly_from_dict(d["char_poly"]),
            min_poly=_poly_from_dict(d["min_poly"]),
            aut=aut_report,
            certificate=CanonicalCert(
                cert["vertex_count"], cert["tree_code"], tuple(tuple(p) for p in cert["cycle_multiset"])
            ),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _poly_dict(p: FactoredPoly) -> dict:
    return {
        "lambda_power": p.lambda_power,
        "cycle_factors": [list(f) for f in p.cycle_factors],
        "degree": p.degree,
        "text": str(p),
    }


def _poly_from_dict(d: dict) -> FactoredPoly:
    return FactoredPoly(d["lambda_power"], tuple(tuple(f) for f in d["cycle_factors"]))


def aut_dict(r: AutReport) -> dict:
    return {
        "tree_aut_order": str(r.tree_aut_order),
        "per_class": [
            {"cycle_length": c.cycle_length, "multiplicity": c.multiplicity, "component_order": str(c.component_order)}
            for c in r.per_class
        ],
        "total_order": str(r.total_order),
        "structure": r.structure_string,
    }


def analyze(n: int, k: int) -> AnalysisReport:
    return AnalysisReport(
        facts=structure.graph_facts(n, k),
        char_poly=spectral.char_poly(n, k),
        min_poly=spectral.min_poly(n, k),
        aut=aut.aut_order(n, k),
        certificate=canon.certificate(n, k),
    )


def load_schema(name: str = "analysis") -> dict:
    text = resources.files("powerdigraph").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def _table(header: list[str], rows: list[list]) -> list[str]:
    cells = [header] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return ["  " + "  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def render_text(r: AnalysisReport) -> str:
    f = r.facts
    sp = f.split
    p = f.predicates
    lines = [
        f"G({sp.n}, {sp.k})",
        f"  n = {sp.n}  k = {sp.k}  gcd(n, k) = {math.gcd(sp.n, sp.k)}",
        f"  t = {sp.t}  w = {sp.w}  h0 = {f.trees.h0}  ell(t) = {f.cycles.longest}",
        f"  cycles = {f.cycles.total_cycles}  indegree-0 vertices = {f.indegree_zero}",
        f"  connected: {_yes(p.connected)}  regular: {_yes(p.regular)}  transitive: {_yes(p.vertex_transitive)}",
        "cycles by vertex order",
        *_table(["order", "length", "count"], [list(x) for x in f.cycles.per_order]),
        "components",
        *_table(["cycle length", "size", "count"], [list(c) for c in r.components()]),
        "levels",
        *_table(
            ["height", "per tree", "total"],
            [[m, a, b] for m, (a, b) in enumerate(zip(f.trees.per_tree_levels, f.trees.total_levels))],
        ),
        f"characteristic polynomial: {r.char_poly}",
        f"minimal polynomial: {r.min_poly}",
        f"|Aut| = {r.aut.total_order}  (|Aut(T1)| = {r.aut.tree_aut_order})",
        f"Aut structure: {r.aut.structure_string}",
        f"certificate: {r.certificate}",
    ]
    return "\n".join(lines) + "\n"
