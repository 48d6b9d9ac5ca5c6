"""Theorem-level verification campaigns over enumerated polyhedra.

Each campaign surveys one order: enumerate every polyhedral class, decide
hamiltonicity, and work out minor flags with certificates for the
non-hamiltonian classes.  Surveys are cached per order (keyed by
canonical graph6), so the theorem, cross-check, tally, and family
campaigns share the expensive per-graph work.  Campaigns collect all
counterexamples rather than stopping at the first.
"""

from __future__ import annotations

import time
from multiprocessing import get_context

from .catalog import FamilySpec, family_member, herschel, pattern, pattern_or_fixture
from .generation import enumerate_polyhedra
from .graphs import Graph, canonical_form, parse_graph6, to_graph6
from .hamilton import HAMILTONIAN, find_hamilton_cycle
from .minors import find_minor_model, find_spanning_subgraph, serialize_minor_model
from .records import (
    CampaignReport,
    PropertyRecord,
    load_cache,
    witness_to_json,
    write_cache,
)
from .structure import is_k_connected_quick, is_polyhedral

STANDARD_PATTERNS = ("K25", "K26", "K115", "herschel")


def _ham_status_chunk(g6s: list[str]) -> list[bool]:
    out = []
    for g6 in g6s:
        g = parse_graph6(g6)
        out.append(find_hamilton_cycle(g, use_witnesses=False).status == HAMILTONIAN)
    return out


def _detail_chunk(g6s: list[str]) -> list[str]:
    return [compute_record(g6).to_json() for g6 in g6s]


def compute_record(g6: str, pattern_ids=STANDARD_PATTERNS) -> PropertyRecord:
    """Full property record for one graph6 line."""
    g = parse_graph6(g6)
    verdict = find_hamilton_cycle(g)
    flags: dict[str, bool] = {}
    certs: dict[str, str] = {}
    for pid in pattern_ids:
        model = find_minor_model(g, pattern_or_fixture(pid))
        flags[pid] = model is not None
        if model is not None:
            certs[pid] = serialize_minor_model(model)
    return PropertyRecord(
        graph6=g6,
        n=g.n,
        m=g.size,
        polyhedral=is_polyhedral(g),
        hamiltonian=verdict.status == HAMILTONIAN,
        ham_witness=witness_to_json(verdict),
        minor_flags=flags,
        certificates=certs,
    )


def _pool_map(jobs: int, fn, items: list, chunk: int):
    if jobs <= 1 or len(items) <= chunk:
        return [fn(items)]
    tasks = [items[i : i + chunk] for i in range(0, len(items), chunk)]
    with get_context("fork").Pool(jobs) as pool:
        return pool.map(fn, tasks)


def survey_order(
    n: int, cache_dir: str | None = None, jobs: int = 1, resume: bool = True
):
    """Totals and non-hamiltonian records for order n, cached when asked.

    Returns (totals, records) with records sorted by canonical graph6.
    """
    if cache_dir and resume:
        hit = load_cache(cache_dir, n)
        if hit is not None:
            return hit
    collected: list[str] = []
    enumerate_polyhedra(n, sink=lambda g: collected.append(to_graph6(g)), jobs=jobs)
    statuses: list[bool] = []
    for part in _pool_map(jobs, _ham_status_chunk, collected, 4096):
        statuses.extend(part)
    non_ham = [g6 for g6, ham in zip(collected, statuses) if not ham]
    non_ham.sort()
    records: list[PropertyRecord] = []
    for part in _pool_map(jobs, _detail_chunk, non_ham, 16):
        records.extend(PropertyRecord.from_json(line) for line in part)
    totals = {
        "polyhedra": len(collected),
        "non_hamiltonian": len(records),
        "k26_free_non_hamiltonian": sum(
            1 for r in records if not r.minor_flags.get("K26", True)
        ),
    }
    if cache_dir:
        write_cache(cache_dir, n, totals, records)
    return totals, records


def check_theorem1(
    n: int, cache_dir: str | None = None, jobs: int = 1, resume: bool = True
) -> tuple[CampaignReport, list[PropertyRecord]]:
    """Every non-hamiltonian polyhedron on n vertices must contain the
    Herschel graph as a minor; counterexamples would falsify it."""
    if not 4 <= n <= 14:
        raise ValueError("theorem-1 campaigns cover 4 <= n <= 14")
    t0 = time.monotonic()
    totals, records = survey_order(n, cache_dir, jobs, resume)
    bad = [r.graph6 for r in records if not r.minor_flags.get("herschel", False)]
    report = CampaignReport(
        campaign="theorem1",
        n_range=(n, n),
        totals={n: totals},
        counterexamples=bad,
        elapsed=time.monotonic() - t0,
    )
    return report, records


def cross_check_known(
    n: int, cache_dir: str | None = None, jobs: int = 1, resume: bool = True
) -> tuple[CampaignReport, list[PropertyRecord]]:
    """Prior results as cross-checks: non-hamiltonian implies a K25 minor;
    non-hamiltonian and not Herschel implies a K115 minor; 4-connected
    implies hamiltonian."""
    if not 4 <= n <= 14:
        raise ValueError("cross-check campaigns cover 4 <= n <= 14")
    t0 = time.monotonic()
    totals, records = survey_order(n, cache_dir, jobs, resume)
    herschel_g6 = canonical_form(herschel()).canonical_string
    bad: list[str] = []
    for r in records:
        if not r.minor_flags.get("K25", False):
            bad.append(r.graph6)
            continue
        if r.graph6 != herschel_g6 and not r.minor_flags.get("K115", False):
            bad.append(r.graph6)
            continue
        g = parse_graph6(r.graph6)
        if is_k_connected_quick(g, 4):
            bad.append(r.graph6)  # Tutte: 4-connected yet non-hamiltonian
    report = CampaignReport(
        campaign="cross_check",
        n_range=(n, n),
        totals={n: totals},
        counterexamples=bad,
        elapsed=time.monotonic() - t0,
    )
    return report, records


def family_candidates(n: int) -> list[tuple[str, Graph]]:
    """Family skeletons (no dashed edges) available at order n."""
    out: list[tuple[str, Graph]] = []
    if n >= 11:
        out.append((f"bullet:{n}:0", family_member(FamilySpec("bullet", n, 0))))
    if n >= 13:
        out.append((f"circ:{n}:0", family_member(FamilySpec("circ", n, 0))))
    if n == 13:
        out.append(("h13:13:0", family_member(FamilySpec("h13", 13, 0))))
    if n == 15:
        out.append(("h15:15:0", family_member(FamilySpec("h15", 15, 0))))
    return out


def check_family_theorem(
    n: int, cache_dir: str | None = None, jobs: int = 1, resume: bool = True
) -> tuple[CampaignReport, list[PropertyRecord]]:
    """Every non-hamiltonian K26-minor-free polyhedron on n vertices must
    contain a family skeleton of order n as a spanning subgraph."""
    if not 11 <= n <= 14:
        raise ValueError("family-theorem campaigns cover 11 <= n <= 14")
    t0 = time.monotonic()
    totals, records = survey_order(n, cache_dir, jobs, resume)
    candidates = family_candidates(n)
    bad: list[str] = []
    for r in records:
        if r.minor_flags.get("K26", True):
            continue
        g = parse_graph6(r.graph6)
        if not any(
            find_spanning_subgraph(g, skel) is not None for _, skel in candidates
        ):
            bad.append(r.graph6)
    report = CampaignReport(
        campaign="family_theorem",
        n_range=(n, n),
        totals={n: totals},
        counterexamples=bad,
        elapsed=time.monotonic() - t0,
    )
    return report, records


def count_family_forty(n: int) -> tuple[int, list[str]]:
    """Count isomorphism classes among the 64 dashed-mask variants that
    are polyhedral, non-hamiltonian, and K26-minor-free."""
    if n < 16:
        raise ValueError("the exactly-40 count starts at n = 16")
    k26 = pattern("K26")
    classes: dict[str, str] = {}
    for kind in ("bullet", "circ"):
        for mask in range(32):
            g = family_member(FamilySpec(kind, n, mask))
            if not is_polyhedral(g):
                continue
            if find_hamilton_cycle(g).status == HAMILTONIAN:
                continue
            if find_minor_model(g, k26) is not None:
                continue
            key = canonical_form(g).canonical_string
            classes.setdefault(key, f"{kind}:{n}:{mask}")
    return len(classes), sorted(classes)


def tally_k26free(
    n_max: int, cache_dir: str | None = None, jobs: int = 1, resume: bool = True
) -> tuple[CampaignReport, dict[int, int]]:
    """Per-order counts of non-hamiltonian K26-minor-free polyhedral
    classes, with the running total printed against the known 206."""
    if n_max > 14:
        raise ValueError("tally campaigns cover orders up to 14")
    t0 = time.monotonic()
    totals: dict[int, dict[str, int]] = {}
    per_n: dict[int, int] = {}
    for n in range(4, n_max + 1):
        tot, _ = survey_order(n, cache_dir, jobs, resume)
        totals[n] = tot
        per_n[n] = tot["k26_free_non_hamiltonian"]
    report = CampaignReport(
        campaign="tally_k26free",
        n_range=(4, n_max),
        totals=totals,
        counterexamples=[],
        elapsed=time.monotonic() - t0,
    )
    return report, per_n


def edge_minimality_report(n: int) -> tuple[CampaignReport, list[str]]:
    """Deleting any single edge of a family skeleton must leave the class:
    deletion preserves planarity, non-hamiltonicity, and K26-freeness, so
    the check reduces to losing 3-connectivity."""
    candidates = family_candidates(n)
    if not candidates:
        raise ValueError(f"no family member is constructible at order {n}")
    t0 = time.monotonic()
    bad: list[str] = []
    checked: list[str] = []
    for name, g in candidates:
        for u, v in g.edges():
            reduced = g.delete_edge(u, v)
            if is_k_connected_quick(reduced, 3):
                bad.append(f"{name} minus edge {u}-{v} stays 3-connected")
            else:
                checked.append(f"{name}:{u}-{v}")
    report = CampaignReport(
        campaign="edge_minimality(delete any edge exits the class)",
        n_range=(n, n),
        totals={n: {"edges_checked": len(checked) + len(bad)}},
        counterexamples=bad,
        elapsed=time.monotonic() - t0,
    )
    return report, checked
