"""Isomorph-free enumeration of polyhedral graphs.

Every 3-connected graph arises from a wheel through edge additions and
vertex splits, and the inverse operations produce minors, so pruning to
planar intermediates loses nothing.  Wheels are seeded at every order,
levels are processed in (order, size) order with one canonical-key set
per level, and children come straight off the unique embedding of each
parent: planar edge additions are face chords and planar splits are the
rotation-contiguous ones, so no planarity test runs in the hot loop.
The slower spec-level route (``expansions`` with an explicit planarity
filter) is kept as the reference the fast path is tested against.
"""

from __future__ import annotations

import pickle
from multiprocessing import get_context

from .graphs import Graph, bits_to_list, to_graph6, _canonical_search
from .structure import _demoucron, is_planar

MAX_ENUM_ORDER = 14
# one canonical key per class is held in memory; at the order-14 cap the
# seen sets reach roughly 1.5e9 keys, far beyond desk-scale RAM, which is
# why the guard stops there (n = 12 needs ~7e6 keys, about a gigabyte)


def split_vertex(g: Graph, v: int, part_a) -> Graph:
    """Split v into an adjacent pair: the new vertex takes the neighbours
    outside ``part_a``, v keeps ``part_a``; order and size grow by one."""
    deg = g.degree(v)
    if deg < 4:
        raise ValueError(f"vertex {v} has degree {deg} < 4")
    mask = 0
    for u in part_a:
        if not g.has_edge(u, v):
            raise ValueError(f"part_a member {u} is not a neighbour of {v}")
        mask |= 1 << u
    ka = mask.bit_count()
    if not 2 <= ka <= deg - 2:
        raise ValueError(f"part_a must keep 2..deg-2 neighbours, got {ka}")
    n = g.n
    rows = list(g.rows)
    old = rows[v]
    rows[v] = mask | 1 << n
    rows.append((old & ~mask) | 1 << v)
    rest = old & ~mask
    while rest:
        low = rest & -rest
        u = low.bit_length() - 1
        rest ^= low
        rows[u] = (rows[u] & ~(1 << v)) | 1 << n
    labels = None
    if g.labels:
        labels = {u: t for u, t in g.labels.items() if u != v}
    return Graph.from_rows(n + 1, rows, labels)


def expansions(g: Graph) -> list[Graph]:
    """All planar one-step expansions of a 3-connected planar graph:
    single-edge additions between non-adjacent pairs and vertex splits
    (one representative per complementary part pair), planarity-filtered
    with the path-addition test.  Every result is 3-connected."""
    out = []
    n = g.n
    for u in range(n):
        for v in range(u + 1, n):
            if not g.has_edge(u, v):
                cand = g.add_edge(u, v)
                if cand.size <= 3 * n - 6 and is_planar(cand):
                    out.append(cand)
    for v in range(n):
        deg = g.degree(v)
        if deg < 4:
            continue
        nbrs = g.neighbors(v)
        anchor = nbrs[0]
        rest = nbrs[1:]
        for mask in range(1 << len(rest)):
            part = [anchor] + [rest[i] for i in range(len(rest)) if mask >> i & 1]
            if not 2 <= len(part) <= deg - 2:
                continue
            cand = split_vertex(g, v, part)
            if is_planar(cand):
                out.append(cand)
    return out


# ---------------------------------------------------------------------------
# fast expansion off the unique embedding
# ---------------------------------------------------------------------------


def _rotation(faces_at, v: int, deg: int) -> list[int]:
    """Cyclic neighbour order around v recovered from its face corners."""
    partners: dict[int, list[int]] = {}
    for prev, nxt in faces_at:
        partners.setdefault(prev, []).append(nxt)
        partners.setdefault(nxt, []).append(prev)
    start = min(partners)
    rot = [start]
    prev = -1
    cur = start
    while len(rot) < deg:
        a, b = partners[cur]
        cur, prev = (b, cur) if a == prev else (a, cur)
        rot.append(cur)
    return rot


def _fast_children(rows, n: int, want_splits: bool):
    """Child adjacency rows from the embedding: face chords, then
    rotation-contiguous splits.  Yields (child_rows, child_n)."""
    edges = []
    for u in range(n):
        r = rows[u] >> (u + 1)
        v = u + 1
        while r:
            if r & 1:
                edges.append((u, v))
            r >>= 1
            v += 1
    faces = _demoucron(rows, n, list(range(n)), edges, want_faces=True)
    if faces is None:
        raise AssertionError("non-planar graph reached the enumeration frontier")

    chords = set()
    for fc in faces:
        k = len(fc)
        for i in range(k):
            u = fc[i]
            for j in range(i + 2, k):
                v = fc[j]
                if not rows[u] >> v & 1:
                    chords.add((u, v) if u < v else (v, u))
    for u, v in chords:
        child = list(rows)
        child[u] |= 1 << v
        child[v] |= 1 << u
        yield child, n

    if not want_splits:
        return
    corners: dict[int, list[tuple[int, int]]] = {}
    for fc in faces:
        k = len(fc)
        for i, v in enumerate(fc):
            corners.setdefault(v, []).append((fc[i - 1], fc[(i + 1) % k]))
    for v in range(n):
        deg = rows[v].bit_count()
        if deg < 4:
            continue
        rot = _rotation(corners[v], v, deg)
        head = rot[0]
        for length in range(2, deg - 1):
            for s in range(deg):
                arc = [rot[(s + i) % deg] for i in range(length)]
                if head not in arc:
                    continue  # complement arc carries the representative
                mask = 0
                for u in arc:
                    mask |= 1 << u
                child = list(rows)
                old = child[v]
                child[v] = mask | 1 << n
                child.append((old & ~mask) | 1 << v)
                rest = old & ~mask
                while rest:
                    low = rest & -rest
                    u = low.bit_length() - 1
                    rest ^= low
                    child[u] = (child[u] & ~(1 << v)) | 1 << n
                yield child, n + 1


def _fold_key(key_rows, n: int) -> int:
    acc = 0
    for rr in key_rows:
        acc = acc << n | rr
    return acc


def _unfold_key(key: int, n: int) -> tuple[int, ...]:
    mask = (1 << n) - 1
    top = n - 1
    rows = [0] * n
    for i in range(n - 1, -1, -1):
        rr = key & mask
        key >>= n
        acc = 0
        while rr:
            low = rr & -rr
            acc |= 1 << (top - (low.bit_length() - 1))
            rr ^= low
        rows[i] = acc
    return tuple(rows)


def graph_from_key(key: int, n: int) -> Graph:
    """Decode a canonical key back into its (canonically labeled) graph."""
    return Graph.from_rows(n, _unfold_key(key, n))


def _canonical_key_int(rows, n: int) -> int:
    key_rows, _, _ = _canonical_search(rows, n)
    return _fold_key(key_rows, n)


def _wheel_rows(n: int) -> list[int]:
    rows = [0] * n
    for v in range(1, n):
        rows[0] |= 1 << v
        rows[v] |= 1
        u = v + 1 if v < n - 1 else 1
        rows[v] |= 1 << u
        rows[u] |= 1 << v
    return rows


def _expand_chunk(args):
    """Worker task: expand a chunk of canonical keys one level."""
    order, size, keys, want_splits, target = args
    child_size = size + 1  # both expansion ops add exactly one edge
    buckets: dict[tuple[int, int], set[int]] = {}
    for key in keys:
        rows = _unfold_key(key, order)
        for child_rows, child_n in _fast_children(rows, order, want_splits):
            if child_n > target:
                continue
            ckey = _canonical_key_int(child_rows, child_n)
            buckets.setdefault((child_n, child_size), set()).add(ckey)
    return buckets


def save_checkpoint(path: str, target: int, levels, count: int) -> None:
    state = {
        "target": target,
        "count": count,
        "levels": {lvl: sorted(keys) for lvl, keys in levels.items()},
    }
    with open(path, "wb") as fh:
        pickle.dump(state, fh)


def load_checkpoint(path: str):
    with open(path, "rb") as fh:
        state = pickle.load(fh)
    levels = {tuple(lvl): set(keys) for lvl, keys in state["levels"].items()}
    return state["target"], levels, state["count"]


def enumerate_polyhedra(
    n: int,
    sink=None,
    jobs: int = 1,
    checkpoint: str | None = None,
    resume: bool = False,
    progress=None,
) -> int:
    """Stream one representative per isomorphism class of 3-connected
    planar graphs on n vertices into ``sink``; returns the class count.

    Levels are (order, size) batches; the sink sees each batch sorted by
    canonical graph6 string, so output order is reproducible and
    independent of the worker count.
    """
    if not 4 <= n <= MAX_ENUM_ORDER:
        raise ValueError(f"order must be in 4..{MAX_ENUM_ORDER}, got {n}")
    levels: dict[tuple[int, int], set[int]] = {}
    count = 0
    if resume and checkpoint:
        target, levels, count = load_checkpoint(checkpoint)
        if target != n:
            raise ValueError(f"checkpoint targets n={target}, requested n={n}")
    else:
        for k in range(4, n + 1):
            rows = _wheel_rows(k)
            key = _canonical_key_int(rows, k)
            levels.setdefault((k, 2 * (k - 1)), set()).add(key)

    pool = None
    if jobs > 1:
        pool = get_context("fork").Pool(jobs)
    try:
        while levels:
            lvl = min(levels)
            order, size = lvl
            keys = sorted(levels.pop(lvl))
            if order == n:
                count += len(keys)
                if sink is not None:
                    batch = sorted(
                        (to_graph6(graph_from_key(k, order)), k) for k in keys
                    )
                    for g6, k in batch:
                        sink(graph_from_key(k, order))
            want_splits = order < n
            if order == n and size >= 3 * n - 6:
                continue
            if pool is not None and len(keys) > 256:
                chunk = max(64, len(keys) // (jobs * 8))
                tasks = [
                    (order, size, keys[i : i + chunk], want_splits, n)
                    for i in range(0, len(keys), chunk)
                ]
                results = pool.map(_expand_chunk, tasks)
            else:
                results = [_expand_chunk((order, size, keys, want_splits, n))]
            for buckets in results:
                for child_lvl, child_keys in buckets.items():
                    if child_lvl[0] <= n:
                        levels.setdefault(child_lvl, set()).update(child_keys)
            if progress is not None:
                progress(lvl, len(keys))
            if checkpoint:
                save_checkpoint(checkpoint, n, levels, count)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return count
