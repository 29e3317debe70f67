"""Analysis reports: build, render as text, round-trip through JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

from .algebra import EvolutionAlgebra
from .field import FieldSpec
from .graph import Graph, is_connected, twin_partition
from .solver import DerivationSpace, derivation_space
from .theory import PreconditionError, predict, run_checks

Entry = Union[int, str]


@dataclass
class Report:
    n: int
    m: int
    connected: bool
    char: int
    twin_classes: List[List[int]]
    prediction: Dict[str, object]
    dimension: int
    basis: List[List[List[Entry]]]
    checks: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "graph": {"n": self.n, "m": self.m, "connected": self.connected},
            "char": self.char,
            "twin_classes": self.twin_classes,
            "prediction": self.prediction,
            "dimension": self.dimension,
            "basis": self.basis,
            "checks": self.checks,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        g = data["graph"]
        return cls(
            n=g["n"],
            m=g["m"],
            connected=g["connected"],
            char=data["char"],
            twin_classes=[list(c) for c in data["twin_classes"]],
            prediction=dict(data["prediction"]),
            dimension=data["dimension"],
            basis=[[list(r) for r in b] for b in data["basis"]],
            checks=dict(data["checks"]),
        )

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def render_text(self) -> str:
        field_name = "Q" if self.char == 0 else f"GF({self.char})"
        pred = self.prediction
        lines = [
            f"graph: n={self.n} m={self.m} connected={'yes' if self.connected else 'no'}",
            f"field: {field_name} (char {self.char})",
            "twin classes: " + " ".join("{" + ",".join(map(str, c)) + "}" for c in self.twin_classes),
            f"prediction: {pred['kind']} dim={pred['dim'] if pred['dim'] is not None else '-'} ({pred['justification']})",
            f"dimension: {self.dimension}",
        ]
        for idx, b in enumerate(self.basis, 1):
            lines.append(f"basis[{idx}]:")
            width = max(len(str(x)) for r in b for x in r)
            for r in b:
                lines.append("  " + " ".join(str(x).rjust(width) for x in r))
        lines.append("checks:")
        for name, verdict in self.checks.items():
            lines.append(f"  {name}: {verdict}")
        return "\n".join(lines)


def build_report(g: Graph, fld: FieldSpec, max_n: Optional[int] = None) -> Report:
    ds: DerivationSpace = derivation_space(EvolutionAlgebra.of_graph(g, fld), max_n)
    tp = twin_partition(g)
    try:
        pr = predict(g, fld, tp)
        prediction = {"kind": pr.kind.value, "dim": pr.dimension, "justification": pr.justification}
    except PreconditionError as exc:
        pr = None
        prediction = {"kind": "no_prediction", "dim": None, "justification": str(exc)}
    return Report(
        n=g.n,
        m=g.m,
        connected=is_connected(g),
        char=fld.characteristic,
        twin_classes=[list(c) for c in tp.classes],
        prediction=prediction,
        dimension=ds.dimension,
        basis=[[[fld.to_json(x) for x in b.row(i)] for i in range(b.rows)] for b in ds.basis],
        checks=run_checks(ds, tp, pr),
    )
