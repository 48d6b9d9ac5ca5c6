"""Per-graph property records, campaign reports, and the results cache.

Records serialize to canonical JSON (sorted keys, no whitespace), so a
report is byte-identical across runs and worker counts.  The cache is an
append-only JSON-lines file per order: a header, one record per
non-hamiltonian class, and a completion line carrying the totals, keyed
by canonical graph6.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .graphs import Graph, is_bipartite, parse_graph6
from .hamilton import (
    BipartiteOddWitness,
    ExhaustedWitness,
    HamiltonVerdict,
    SeparatorWitness,
    verify_cycle,
)
from .minors import MinorModel, parse_minor_model, serialize_minor_model, verify_minor_model
from .structure import CutWitness, validate_cut_witness

CACHE_VERSION = 1
TOOLKIT_VERSION = "0.1.0"


def witness_to_json(verdict: HamiltonVerdict) -> dict:
    if verdict.status == "hamiltonian":
        return {"kind": "cycle", "cycle": list(verdict.cycle)}
    w = verdict.witness
    if isinstance(w, BipartiteOddWitness):
        return {
            "kind": "bipartite_odd",
            "side_a": list(w.bipartition.side_a),
            "side_b": list(w.bipartition.side_b),
        }
    if isinstance(w, SeparatorWitness):
        return {
            "kind": "separator",
            "cut": list(w.cut_witness.cut),
            "components": [list(c) for c in w.cut_witness.components],
        }
    if isinstance(w, ExhaustedWitness):
        return {"kind": "exhausted"}
    return {"kind": "exhausted"}


@dataclass
class PropertyRecord:
    """Everything the campaigns know about one graph."""

    graph6: str
    n: int
    m: int
    polyhedral: bool
    hamiltonian: bool
    ham_witness: dict
    minor_flags: dict[str, bool] = field(default_factory=dict)
    certificates: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "graph6": self.graph6,
            "n": self.n,
            "m": self.m,
            "polyhedral": self.polyhedral,
            "hamiltonian": self.hamiltonian,
            "ham_witness": self.ham_witness,
            "minor_flags": self.minor_flags,
            "certificates": self.certificates,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "PropertyRecord":
        d = json.loads(line)
        return cls(
            graph6=d["graph6"],
            n=d["n"],
            m=d["m"],
            polyhedral=d["polyhedral"],
            hamiltonian=d["hamiltonian"],
            ham_witness=d["ham_witness"],
            minor_flags=d.get("minor_flags", {}),
            certificates=d.get("certificates", {}),
        )


@dataclass
class CampaignReport:
    """Summary of one verification campaign."""

    campaign: str
    n_range: tuple[int, int]
    totals: dict[int, dict[str, int]]
    counterexamples: list[str]
    elapsed: float
    version: str = TOOLKIT_VERSION

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def summary_json(self) -> str:
        # elapsed stays off the wire so reports are byte-identical across
        # runs and worker counts; it is reported on the console instead
        payload = {
            "campaign": self.campaign,
            "n_range": list(self.n_range),
            "totals": {str(k): v for k, v in sorted(self.totals.items())},
            "counterexamples": self.counterexamples,
            "version": self.version,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    def totals_csv(self) -> str:
        lines = ["n,polyhedra,non_hamiltonian,k26_free_non_hamiltonian"]
        for k in sorted(self.totals):
            t = self.totals[k]
            lines.append(
                f"{k},{t.get('polyhedra', 0)},{t.get('non_hamiltonian', 0)},"
                f"{t.get('k26_free_non_hamiltonian', 0)}"
            )
        return "\n".join(lines) + "\n"


def write_report(report: CampaignReport, records: list[PropertyRecord], path) -> None:
    """JSON-lines report: one line per interesting record, then the
    summary object."""
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")
        fh.write(report.summary_json() + "\n")


def cert_verify_record(record: PropertyRecord) -> bool:
    """Re-check every certificate stored on a record against its graph."""
    from .catalog import pattern_or_fixture

    try:
        g = parse_graph6(record.graph6)
    except ValueError:
        return False
    if g.n != record.n or g.size != record.m:
        return False
    w = record.ham_witness
    kind = w.get("kind")
    if record.hamiltonian:
        if kind != "cycle" or not verify_cycle(g, w.get("cycle", ())):
            return False
    elif kind == "cycle":
        return False
    elif kind == "bipartite_odd":
        bp = is_bipartite(g)
        if bp is None:
            return False
        sides = {tuple(sorted(w.get("side_a", ()))), tuple(sorted(w.get("side_b", ())))}
        if sides != {tuple(bp.side_a), tuple(bp.side_b)}:
            return False
        if len(w["side_a"]) == len(w["side_b"]):
            return False
    elif kind == "separator":
        cw = CutWitness(
            tuple(w.get("cut", ())),
            tuple(tuple(c) for c in w.get("components", ())),
        )
        if len(cw.components) <= len(cw.cut):
            return False
        if not validate_cut_witness(g, cw):
            return False
    elif kind != "exhausted":
        return False
    for pid, flagged in record.minor_flags.items():
        cert = record.certificates.get(pid)
        if cert is None:
            continue
        if not flagged:
            return False
        try:
            model = parse_minor_model(cert)
            pat = pattern_or_fixture(pid)
        except ValueError:
            return False
        if not verify_minor_model(g, pat, model):
            return False
    return True


# ---------------------------------------------------------------------------
# per-order cache
# ---------------------------------------------------------------------------


def cache_path(cache_dir: str, n: int) -> str:
    return os.path.join(cache_dir, f"records-n{n}.jsonl")


def load_cache(cache_dir: str, n: int):
    """Return (totals, records) for a completed order, else None."""
    path = cache_path(cache_dir, n)
    if not os.path.exists(path):
        return None
    records = []
    header = None
    footer = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            d = json.loads(line)
            if d.get("_header"):
                header = d
            elif d.get("_complete"):
                footer = d
            else:
                records.append(PropertyRecord.from_json(line))
    if header is None or footer is None:
        return None
    if header.get("version") != CACHE_VERSION or header.get("n") != n:
        return None
    totals = {k: int(v) for k, v in footer["totals"].items()}
    return totals, records


def write_cache(cache_dir: str, n: int, totals: dict, records: list[PropertyRecord]) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    path = cache_path(cache_dir, n)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"_header": True, "version": CACHE_VERSION, "n": n}) + "\n")
        for rec in records:
            fh.write(rec.to_json() + "\n")
        fh.write(json.dumps({"_complete": True, "totals": totals}, sort_keys=True) + "\n")
    os.replace(tmp, path)
