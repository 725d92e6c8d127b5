"""Run reports: structured records, JSON round-trip, console rendering."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

RULE = "=" * 80


@dataclass
class ClusterSummary:
    dim: int
    weights: list[list[int]]
    sigma_dim: int
    gl_dim: Optional[int] = None


@dataclass
class InvariantReport:
    k: int
    n: int
    basis_size: int
    clusters: list[ClusterSummary]
    sigma_dim: int
    gl_dim: Optional[int]
    sigma_generators: list[str]
    gl_generators: list[str]
    timings: dict[str, float] = field(default_factory=dict)
    cache_hit: bool = False

    def to_dict(self, timings: bool = True) -> dict:
        d = asdict(self)
        if not timings:
            d.pop("timings")
        return d

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "InvariantReport":
        d = dict(d)
        d["clusters"] = [ClusterSummary(**c) for c in d["clusters"]]
        d.setdefault("timings", {})
        return cls(**d)

    def render(self) -> str:
        k, n = self.k, self.n
        lines = [RULE, f"FINAL RESULTS for (QP_{k})_{n}", RULE]
        lines.append(f"Dimension of (QP_{{{k}}})_{{{n}}}: {self.basis_size}")
        lines.append(f"Dimension of (QP_{{{k}}})_{{{n}}}^Sigma_{k}: {self.sigma_dim}")
        if self.gl_dim is not None:
            lines.append(f"Dimension of (QP_{{{k}}})_{{{n}}}^GL_{k}: {self.gl_dim}")
        lines.append("")
        lines.append(f"Sigma_{k}-invariants:")
        for i, g in enumerate(self.sigma_generators, start=1):
            lines.append(f"  Sigma_{k}[{i}] = [{g}]")
        if self.gl_dim is not None:
            lines.append("")
            lines.append(f"GL_{k}-invariants:")
            for i, g in enumerate(self.gl_generators, start=1):
                lines.append(f"  GL_{k}[{i}] = [{g}]")
        lines.append(RULE)
        return "\n".join(lines)


@dataclass
class OrbitSummary:
    params: list[list[int]]  # one tuple, or several analysed jointly
    l: int
    dim_W: int
    dim_D: int
    coinvariant_dim: int
    difference_count: int = 0


@dataclass
class BoardmanReport:
    k: int
    n: int
    params: list[list[int]]
    orbits: list[OrbitSummary]
    total: int
    note: str = ""
    timings: dict[str, float] = field(default_factory=dict)

    def to_dict(self, timings: bool = True) -> dict:
        d = asdict(self)
        if not timings:
            d.pop("timings")
        return d

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "BoardmanReport":
        d = dict(d)
        d["orbits"] = [OrbitSummary(**o) for o in d["orbits"]]
        d.setdefault("timings", {})
        return cls(**d)

    def render(self) -> str:
        lines = [f"Starting computation for k={self.k}, n={self.n}..."]
        if not self.params:
            lines.append(f"-> No h-orbits: {self.note or 'invalid degree'}")
        else:
            shown = ", ".join("(" + ", ".join(map(str, p)) + ")" for p in self.params)
            lines.append(f"-> Found {len(self.params)} h-orbit(s) with parameters: [{shown}]")
        for num, o in enumerate(self.orbits, start=1):
            p = ", ".join("(" + ", ".join(map(str, q)) + ")" for q in o.params)
            lines.append("")
            lines.append(f"--- Processing h-orbit #{num} with parameters {p} (l={o.l}) ---")
            lines.append(f"-> Space W has dimension: dim(W) = {o.dim_W}")
            lines.append(f"-> Generated {o.difference_count} difference polynomials")
            lines.append(f"-> Constraint space D has dimension: dim(D) = {o.dim_D}")
            lines.append(f"-> Coinvariant dimension for this orbit: {o.dim_W} - {o.dim_D} = {o.coinvariant_dim}")
        lines.append("")
        lines.append(f"Conclusion: dim [(P_A H_*(BV_{self.k}))_{self.n}]_GL_{self.k} = {self.total}.")
        return "\n".join(lines)
