"""Connectivity, planarity, polyhedrality, and internal 4-connectivity.

Planarity has two independent routes: the primary path-addition embedder
(Demoucron style, run per biconnected component) and a forbidden-minor
oracle (no K5 and no K33 minor).  Campaign code uses the primary route;
tests require the two to agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graphs import Graph, bits_to_list


@dataclass(frozen=True)
class CutWitness:
    """A vertex cut together with the components its removal leaves."""

    cut: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]


def _component_masks(rows, n: int, removed: int) -> list[int]:
    """Connected components of the graph restricted to ~removed, as masks."""
    alive = ((1 << n) - 1) & ~removed
    comps = []
    while alive:
        seed = alive & -alive
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= rows[low.bit_length() - 1]
                f ^= low
            nxt &= alive & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        alive &= ~comp
    return comps


def components_after_removal(g: Graph, cut) -> list[list[int]]:
    """Vertex lists of the components of g minus the cut, sorted."""
    removed = 0
    for v in cut:
        removed |= 1 << v
    return [bits_to_list(m) for m in _component_masks(g.rows, g.n, removed)]


def _is_connected(rows, n: int, removed: int = 0) -> bool:
    alive = ((1 << n) - 1) & ~removed
    if alive == 0:
        return True
    comp = alive & -alive
    frontier = comp
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= rows[low.bit_length() - 1]
            f ^= low
        nxt &= alive & ~comp
        comp |= nxt
        frontier = nxt
    return comp == alive


def validate_cut_witness(g: Graph, w: CutWitness) -> bool:
    """Re-remove the cut and compare against the recorded components."""
    if len(w.components) < 2:
        return False
    cut_set = set(w.cut)
    if len(cut_set) != len(w.cut) or any(not 0 <= v < g.n for v in cut_set):
        return False
    actual = components_after_removal(g, w.cut)
    return sorted(map(tuple, actual)) == sorted(map(tuple, w.components))


def is_k_connected_quick(g: Graph, k: int) -> bool:
    """True iff g has no cut of size < k (k <= 3; subset scan)."""
    rows, n = g.rows, g.n
    if n <= k:
        return False
    if not _is_connected(rows, n):
        return False
    for size in range(1, k):
        for cut in combinations(range(n), size):
            removed = 0
            for v in cut:
                removed |= 1 << v
            if not _is_connected(rows, n, removed):
                return False
    return True


def _st_vertex_flow(rows, n: int, s: int, t: int):
    """Max internally disjoint s-t paths for non-adjacent s, t, plus the
    min separating vertex set extracted from the final residual graph."""
    # split nodes: in(v) = 2v, out(v) = 2v + 1; source = out(s), sink = in(t)
    size = 2 * n
    cap = [dict() for _ in range(size)]
    for v in range(n):
        if v != s and v != t:
            cap[2 * v][2 * v + 1] = 1
    for v in range(n):
        r = rows[v]
        while r:
            low = r & -r
            u = low.bit_length() - 1
            r ^= low
            cap[2 * v + 1][2 * u] = 1
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while True:
        parent = {source: None}
        queue = [source]
        qi = 0
        while qi < len(queue) and sink not in parent:
            x = queue[qi]
            qi += 1
            for y, c in cap[x].items():
                if c > 0 and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if sink not in parent:
            break
        y = sink
        while parent[y] is not None:
            x = parent[y]
            cap[x][y] -= 1
            cap[y].setdefault(x, 0)
            cap[y][x] += 1
            y = x
        flow += 1
    # residual reachability from source gives the min vertex cut
    seen = {source}
    queue = [source]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for y, c in cap[x].items():
            if c > 0 and y not in seen:
                seen.add(y)
                queue.append(y)
    cut = tuple(
        v for v in range(n) if v != s and v != t and 2 * v in seen and 2 * v + 1 not in seen
    )
    return flow, cut


def vertex_connectivity(g: Graph) -> tuple[int, CutWitness | None]:
    """Exact vertex connectivity with a minimum-cut witness.

    Complete graphs return (n-1, None) by convention.  Cuts of size at
    most three come from a lexicographic subset scan (so small witnesses
    are reproducible); beyond that a max-flow sweep over a minimum-degree
    pivot settles the exact value.
    """
    rows, n = g.rows, g.n
    if n < 2:
        raise ValueError("vertex connectivity needs at least 2 vertices")
    if all(r.bit_count() == n - 1 for r in rows):
        return n - 1, None
    full = (1 << n) - 1
    for size in range(0, min(4, n - 1)):
        for cut in combinations(range(n), size):
            removed = 0
            for v in cut:
                removed |= 1 << v
            comps = _component_masks(rows, n, removed)
            if len(comps) >= 2:
                return size, CutWitness(
                    tuple(cut), tuple(tuple(bits_to_list(m)) for m in comps)
                )
    # connectivity is at least 4: flow-based exact value
    pivot = min(range(n), key=lambda v: (rows[v].bit_count(), v))
    best = n - 1
    best_cut: tuple[int, ...] | None = None
    targets = [v for v in range(n) if v != pivot and not rows[pivot] >> v & 1]
    pairs = [(pivot, t) for t in targets]
    nbrs = bits_to_list(rows[pivot])
    pairs += [
        (x, y) for x, y in combinations(nbrs, 2) if not rows[x] >> y & 1
    ]
    for s, t in pairs:
        k, cut = _st_vertex_flow(rows, n, s, t)
        if k < best:
            best, best_cut = k, cut
    if best_cut is None:
        # no non-adjacent pair anywhere: complete graph, handled above
        raise AssertionError("unreachable: incomplete graph without flow pairs")
    removed = 0
    for v in best_cut:
        removed |= 1 << v
    comps = _component_masks(rows, n, removed)
    return best, CutWitness(
        tuple(best_cut), tuple(tuple(bits_to_list(m)) for m in comps)
    )


# ---------------------------------------------------------------------------
# planarity: path addition over biconnected components
# ---------------------------------------------------------------------------


def _biconnected_components(rows, n: int) -> list[list[tuple[int, int]]]:
    """Edge lists of the biconnected components (Hopcroft-Tarjan).

    Recursion depth is bounded by the 64-vertex cap.
    """
    disc = [-1] * n
    low = [0] * n
    stack: list[tuple[int, int]] = []
    comps: list[list[tuple[int, int]]] = []
    timer = [0]

    def dfs(v: int, parent: int) -> None:
        disc[v] = low[v] = timer[0]
        timer[0] += 1
        for u in bits_to_list(rows[v]):
            if u == parent:
                continue
            if disc[u] < 0:
                stack.append((v, u))
                dfs(u, v)
                if low[u] < low[v]:
                    low[v] = low[u]
                if low[u] >= disc[v]:
                    comp = []
                    while True:
                        e = stack.pop()
                        comp.append(e)
                        if e == (v, u):
                            break
                    comps.append(comp)
            elif disc[u] < disc[v]:
                stack.append((v, u))
                if disc[u] < low[v]:
                    low[v] = disc[u]

    for root in range(n):
        if disc[root] < 0:
            dfs(root, -1)
    return comps


def _demoucron(rows, n: int, vertices: list[int], edges: list[tuple[int, int]],
                want_faces: bool = False):
    """Path-addition planarity test of one biconnected subgraph.

    Returns a face list (vertex cycles) if planar, else None.  With
    ``want_faces`` the faces describe a genuine embedding; for a
    3-connected input that embedding is the unique one.
    """
    nv = len(vertices)
    m = len(edges)
    if m > 3 * nv - 6 and nv >= 3:
        return None
    # local adjacency restricted to this component
    local = {v: 0 for v in vertices}
    for u, v in edges:
        local[u] |= 1 << v
        local[v] |= 1 << u

    # find a cycle by walking from the lowest vertex
    start = vertices[0]
    prev, cur = -1, start
    seen_path = {start: None}
    while True:
        r = local[cur]
        nxt = -1
        while r:
            low = r & -r
            u = low.bit_length() - 1
            r ^= low
            if u != prev:
                nxt = u
                break
        if nxt in seen_path:
            cycle = [nxt]
            w = cur
            while w != nxt:
                cycle.append(w)
                w = seen_path[w]
            break
        seen_path[nxt] = cur
        prev, cur = cur, nxt

    emb_rows = {v: 0 for v in vertices}
    in_h = 0
    for i, v in enumerate(cycle):
        u = cycle[(i + 1) % len(cycle)]
        emb_rows[v] |= 1 << u
        emb_rows[u] |= 1 << v
        in_h |= 1 << v
    faces = [list(cycle), list(reversed(cycle))]
    remaining = m - len(cycle)

    while remaining:
        # fragments: chords, then free components with their attachments
        frags = []
        for u, v in edges:
            if in_h >> u & 1 and in_h >> v & 1 and not emb_rows[u] >> v & 1:
                frags.append(((u, v), None))
        free = [v for v in vertices if not in_h >> v & 1]
        free_mask = 0
        for v in free:
            free_mask |= 1 << v
        comp_seen = 0
        for v in free:
            if comp_seen >> v & 1:
                continue
            comp = 1 << v
            frontier = comp
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= local[low.bit_length() - 1]
                    f ^= low
                nxt &= free_mask & ~comp
                comp |= nxt
                frontier = nxt
            comp_seen |= comp
            att = 0
            f = comp
            while f:
                low = f & -f
                att |= local[low.bit_length() - 1]
                f ^= low
            att &= in_h
            frags.append((None, (comp, att)))

        # admissible faces per fragment
        face_masks = []
        for fc in faces:
            fm = 0
            for v in fc:
                fm |= 1 << v
            face_masks.append(fm)
        chosen = None
        chosen_faces = None
        for frag in frags:
            if frag[0] is not None:
                att = 1 << frag[0][0] | 1 << frag[0][1]
            else:
                att = frag[1][1]
            adm = [i for i, fm in enumerate(face_masks) if fm & att == att]
            if not adm:
                return None
            if len(adm) == 1:
                chosen, chosen_faces = frag, adm
                break
            if chosen is None:
                chosen, chosen_faces = frag, adm
        frag = chosen
        face_idx = chosen_faces[0]

        # alpha path between two attachments through the fragment
        if frag[0] is not None:
            a, b = frag[0]
            path = [a, b]
        else:
            comp, att = frag[1]
            att_list = bits_to_list(att)
            a = att_list[0]
            inner_start = local[a] & comp
            parent_of = {}
            frontier = inner_start
            f = inner_start
            while f:
                low = f & -f
                parent_of[low.bit_length() - 1] = a
                f ^= low
            visited = inner_start
            b = -1
            # BFS inside the component until some other attachment is hit
            while b < 0:
                hit = 0
                f = frontier
                while f:
                    low = f & -f
                    w = low.bit_length() - 1
                    f ^= low
                    reach = local[w] & att & ~(1 << a)
                    if reach:
                        b = (reach & -reach).bit_length() - 1
                        tail = w
                        break
                else:
                    nxt = 0
                    f = frontier
                    while f:
                        low = f & -f
                        w = low.bit_length() - 1
                        f ^= low
                        r = local[w] & comp & ~visited
                        rr = r
                        while rr:
                            lw = rr & -rr
                            parent_of[lw.bit_length() - 1] = w
                            rr ^= lw
                        nxt |= r
                    visited |= nxt
                    frontier = nxt
                    if not frontier:
                        raise AssertionError("fragment with one attachment in biconnected input")
            interior = []
            w = tail
            while w != a:
                interior.append(w)
                w = parent_of[w]
            interior.reverse()
            path = [a] + interior + [b]

        # embed the path and split the face
        for u, v in zip(path, path[1:]):
            emb_rows[u] |= 1 << v
            emb_rows[v] |= 1 << u
            in_h |= 1 << u | 1 << v
        remaining -= len(path) - 1
        fc = faces[face_idx]
        ia, ib = fc.index(path[0]), fc.index(path[-1])
        if ia <= ib:
            arc_ab = fc[ia : ib + 1]
            arc_ba = fc[ib:] + fc[: ia + 1]
        else:
            arc_ab = fc[ia:] + fc[: ib + 1]
            arc_ba = fc[ib : ia + 1]
        interior = path[1:-1]
        new1 = arc_ab + list(reversed(interior))
        new2 = arc_ba + interior
        faces[face_idx] = new1
        faces.append(new2)

    return faces


def is_planar(g: Graph) -> bool:
    """Primary planarity predicate: path addition per biconnected component."""
    rows, n = g.rows, g.n
    if n <= 4:
        return True
    if g.size > 3 * n - 6:
        return False
    for comp in _biconnected_components(rows, n):
        if len(comp) < 3:
            continue
        verts = sorted({v for e in comp for v in e})
        if _demoucron(rows, n, verts, comp) is None:
            return False
    return True


def planar_faces_3connected(g: Graph) -> list[list[int]] | None:
    """Faces of the unique embedding of a 3-connected graph, or None if
    nonplanar.  Callers must guarantee 3-connectivity."""
    rows, n = g.rows, g.n
    edges = g.edges()
    faces = _demoucron(rows, n, list(range(n)), edges, want_faces=True)
    return faces


def is_planar_wagner(g: Graph) -> bool:
    """Forbidden-minor planarity oracle: no K5 minor and no K33 minor."""
    from .minors import find_minor_model
    from .catalog import pattern

    if g.n < 5:
        return True
    if find_minor_model(g, pattern("K5")) is not None:
        return False
    if g.n >= 6 and find_minor_model(g, pattern("K33")) is not None:
        return False
    return True


def is_polyhedral(g: Graph) -> bool:
    """Steinitz test: planar, 3-connected, at least 4 vertices."""
    return g.n >= 4 and is_k_connected_quick(g, 3) and is_planar(g)


def is_internally_4_connected(g: Graph) -> bool:
    """3-connected, order >= 5, and every 3-cut is an independent set
    splitting off exactly one single vertex from one other component."""
    if g.n < 5 or not is_k_connected_quick(g, 3):
        return False
    rows, n = g.rows, g.n
    for cut in combinations(range(n), 3):
        removed = 1 << cut[0] | 1 << cut[1] | 1 << cut[2]
        comps = _component_masks(rows, n, removed)
        if len(comps) == 1:
            continue
        if len(comps) != 2:
            return False
        sizes = sorted(m.bit_count() for m in comps)
        if sizes[0] != 1:
            return False
        a, b, c = cut
        if rows[a] >> b & 1 or rows[a] >> c & 1 or rows[b] >> c & 1:
            return False
    return True
