"""Independent reference implementations the test suite checks against.

Everything here recomputes results by brute force: exhaustive labeled
filters, permutation searches, and direct definition checks.  None of it
shares search logic with the package's algorithms.
"""

from __future__ import annotations

from itertools import combinations, permutations

from polyminor.graphs import Graph, canonical_form
from polyminor.structure import is_planar


def brute_force_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Permutation search for an isomorphism."""
    if g1.n != g2.n or g1.size != g2.size:
        return False
    if g1.degree_sequence() != g2.degree_sequence():
        return False
    return any(g1.relabel(list(p)) == g2 for p in permutations(range(g1.n)))


def all_graphs_of_order(n: int):
    """Every labeled graph on n vertices."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def isomorph_free_graphs(max_n: int) -> list[Graph]:
    """One representative per isomorphism class, orders 1..max_n, via
    exhaustive labeled enumeration plus canonical dedup."""
    out = []
    for n in range(1, max_n + 1):
        seen = set()
        for g in all_graphs_of_order(n):
            key = canonical_form(g).canonical_string
            if key not in seen:
                seen.add(key)
                out.append(g)
    return out


def permutation_hamiltonian(g: Graph) -> bool:
    """Fix vertex 0, try every ordering of the rest."""
    n = g.n
    rows = g.rows
    for perm in permutations(range(1, n)):
        seq = (0,) + perm
        if all(rows[seq[i]] >> seq[(i + 1) % n] & 1 for i in range(n)):
            return True
    return False


def definition_internally_4_connected(g: Graph) -> bool:
    """Directly quantify the definition over all vertex triples."""
    n = g.n
    if n < 5:
        return False
    rows = g.rows
    full = (1 << n) - 1
    # 3-connected: no cut of size < 3
    for k in (0, 1, 2):
        for cut in combinations(range(n), k):
            removed = 0
            for v in cut:
                removed |= 1 << v
            rest = full & ~removed
            if _component_of(rows, rest) != rest:
                return False
    for cut in combinations(range(n), 3):
        removed = 0
        for v in cut:
            removed |= 1 << v
        rest = full & ~removed
        comp = _component_of(rows, rest)
        if comp == rest:
            continue  # not a cut
        # must be independent
        a, b, c = cut
        if rows[a] >> b & 1 or rows[a] >> c & 1 or rows[b] >> c & 1:
            return False
        # exactly two components, one of them a single vertex
        comps = []
        left = rest
        while left:
            piece = _component_of(rows, left)
            comps.append(piece)
            left &= ~piece
        if len(comps) != 2 or min(p.bit_count() for p in comps) != 1:
            return False
    return True


def _component_of(rows, mask: int) -> int:
    if mask == 0:
        return 0
    comp = mask & -mask
    while True:
        grow = comp
        m = comp
        while m:
            low = m & -m
            grow |= rows[low.bit_length() - 1]
            m ^= low
        grow &= mask
        if grow == comp:
            return comp
        comp = grow


def count_polyhedra_by_filter(n: int) -> int:
    """Exhaustive labeled-graph filter plus canonical dedup: the count of
    3-connected planar classes of order n.  Pure Python; fine to n = 7.
    """
    pairs = list(combinations(range(n), 2))
    np_ = len(pairs)
    incident = [0] * n
    for i, (u, v) in enumerate(pairs):
        incident[u] |= 1 << i
        incident[v] |= 1 << i
    lo = (3 * n + 1) // 2
    hi = 3 * n - 6
    full = (1 << n) - 1
    seen = set()
    for mask in range(1 << np_):
        m = mask.bit_count()
        if not lo <= m <= hi:
            continue
        if any((mask & incident[v]).bit_count() < 3 for v in range(n)):
            continue
        rows = [0] * n
        for i in range(np_):
            if mask >> i & 1:
                u, v = pairs[i]
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        if _component_of(rows, full) != full:
            continue
        three_connected = True
        for cut in combinations(range(n), 2):
            removed = 1 << cut[0] | 1 << cut[1]
            rest = full & ~removed
            if _component_of(rows, rest) != rest:
                three_connected = False
                break
        if not three_connected:
            continue
        g = Graph.from_rows(n, rows)
        if not is_planar(g):
            continue
        seen.add(canonical_form(g).canonical_string)
    return len(seen)
