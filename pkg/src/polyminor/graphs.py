"""Immutable bitset graphs, the graph6 wire format, and canonical labeling.

Vertices are dense indices 0..n-1 with n <= 64, so every adjacency row fits
in one machine word and neighborhood intersections are single ``&`` ops.
Graphs are values: all operations return new graphs, and equality ignores
the optional vertex-label side map.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heapify, heappop, heappush

MAX_ORDER = 64


class GraphFormatError(ValueError):
    """Raised for malformed graph6 input; ``offset`` is the offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class Graph:
    """Simple undirected graph on vertices 0..n-1 with bitset adjacency rows.

    ``rows[v]`` has bit ``u`` set iff ``uv`` is an edge.  Instances are
    immutable and hashable; ``labels`` is an optional vertex -> role-tag map
    that never takes part in equality.
    """

    __slots__ = ("n", "rows", "labels")

    def __init__(self, n: int, edges=(), labels: dict[int, str] | None = None):
        if not 1 <= n <= MAX_ORDER:
            raise ValueError(f"order must be in 1..{MAX_ORDER}, got {n}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for order {n}")
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "labels", dict(labels) if labels else None)

    @classmethod
    def from_rows(cls, n: int, rows, labels: dict[int, str] | None = None) -> "Graph":
        """Wrap prevalidated adjacency rows without re-deriving them."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", tuple(rows))
        object.__setattr__(g, "labels", dict(labels) if labels else None)
        return g

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    # -- basic queries ----------------------------------------------------

    @property
    def size(self) -> int:
        """Number of edges."""
        return sum(r.bit_count() for r in self.rows) // 2

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits_to_list(self.rows[v])

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, sorted."""
        out = []
        for u in range(self.n):
            r = self.rows[u] >> (u + 1)
            v = u + 1
            while r:
                if r & 1:
                    out.append((u, v))
                r >>= 1
                v += 1
        return out

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted((r.bit_count() for r in self.rows), reverse=True))

    def relabel(self, perm) -> "Graph":
        """Return the graph with vertex v renamed to perm[v]."""
        n = self.n
        rows = [0] * n
        for v in range(n):
            r = self.rows[v]
            nv = perm[v]
            acc = 0
            while r:
                low = r & -r
                acc |= 1 << perm[low.bit_length() - 1]
                r ^= low
            rows[nv] = acc
        labels = None
        if self.labels:
            labels = {perm[v]: tag for v, tag in self.labels.items()}
        return Graph.from_rows(n, rows, labels)

    def with_labels(self, labels: dict[int, str] | None) -> "Graph":
        return Graph.from_rows(self.n, self.rows, labels)

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise ValueError("loop not allowed")
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph.from_rows(self.n, rows, self.labels)

    def delete_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise ValueError(f"edge ({u},{v}) not in graph")
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph.from_rows(self.n, rows, self.labels)

    def delete_vertex(self, v: int) -> "Graph":
        """Remove v and shift higher indices down by one."""
        if self.n == 1:
            raise ValueError("cannot delete the last vertex")
        keep = [u for u in range(self.n) if u != v]
        pos = {u: i for i, u in enumerate(keep)}
        rows = [0] * (self.n - 1)
        for u in keep:
            r = self.rows[u] & ~(1 << v)
            acc = 0
            while r:
                low = r & -r
                acc |= 1 << pos[low.bit_length() - 1]
                r ^= low
            rows[pos[u]] = acc
        labels = None
        if self.labels:
            labels = {pos[u]: t for u, t in self.labels.items() if u != v}
        return Graph.from_rows(self.n - 1, rows, labels)

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.size})"


def bits_to_list(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def neighbor_expander(rows, n: int):
    """Precompute chunked union tables; the returned ``expand(mask)`` is
    the union of adjacency rows over the mask's bits.  Worth building
    whenever one graph sees many reachability queries."""
    tables = []
    for base in range(0, n, 8):
        width = min(8, n - base)
        tab = [0] * (1 << width)
        for val in range(1, 1 << width):
            low = val & -val
            tab[val] = tab[val ^ low] | rows[base + low.bit_length() - 1]
        tables.append((base, tab))

    def expand(mask: int) -> int:
        acc = 0
        for base, tab in tables:
            part = mask >> base & 255
            if part:
                acc |= tab[part]
        return acc

    return expand


@dataclass(frozen=True)
class Bipartition:
    """Two disjoint vertex sets covering the graph, one per color class."""

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical relabeling of a graph together with its automorphism count.

    ``canonical_labels[v]`` is the canonical index of vertex v; relabeling by
    it and serializing yields ``canonical_string``.  Equal strings identify
    isomorphic graphs.
    """

    canonical_labels: tuple[int, ...]
    canonical_string: str
    automorphism_count: int


# ---------------------------------------------------------------------------
# graph6 wire format
# ---------------------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    """Encode a graph as a single graph6 record.

    Header byte is chr(63+n) for n <= 62 and the three-byte extended form
    for 63..64; the body packs the upper-triangle bits x(0,1), x(0,2),
    x(1,2), x(0,3), ... six per byte, zero padded, each chunk offset by 63.
    """
    n = g.n
    if n <= 62:
        out = [chr(63 + n)]
    else:
        out = [
            "~",
            chr(63 + (n >> 12 & 63)),
            chr(63 + (n >> 6 & 63)),
            chr(63 + (n & 63)),
        ]
    acc = 0
    nbits = 0
    rows = g.rows
    for v in range(1, n):
        rv = rows[v]
        for u in range(v):
            acc = acc << 1 | (rv >> u & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 record; raises GraphFormatError naming the bad byte."""
    s = text.rstrip("\r\n")
    if not s:
        raise GraphFormatError("empty graph6 record", 0)
    for i, ch in enumerate(s):
        o = ord(ch)
        if o < 63 or o > 126:
            raise GraphFormatError(f"non-printable or out-of-range byte {o!r}", i)
    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            raise GraphFormatError("graphs over 258047 vertices unsupported", 1)
        if len(s) < 4:
            raise GraphFormatError("truncated extended length header", len(s))
        n = (
            (ord(s[1]) - 63) << 12
            | (ord(s[2]) - 63) << 6
            | (ord(s[3]) - 63)
        )
        body_at = 4
    else:
        n = ord(s[0]) - 63
        body_at = 1
    if n < 1:
        raise GraphFormatError(f"order {n} out of range", 0)
    if n > MAX_ORDER:
        raise GraphFormatError(f"order {n} exceeds the {MAX_ORDER}-vertex cap", 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(s) - body_at < nbytes:
        raise GraphFormatError("truncated body: missing adjacency bytes", len(s))
    if len(s) - body_at > nbytes:
        raise GraphFormatError("trailing garbage after graph6 body", body_at + nbytes)
    rows = [0] * n
    bit = 0
    for k in range(nbytes):
        chunk = ord(s[body_at + k]) - 63
        for shift in (5, 4, 3, 2, 1, 0):
            if bit >= nbits:
                break
            if chunk >> shift & 1:
                # bit index -> (u, v) in column order
                v = _col_of(bit)
                u = bit - v * (v - 1) // 2
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            bit += 1
    return Graph.from_rows(n, rows)


def _col_of(bit: int) -> int:
    # Smallest v with v(v-1)/2 > bit, minus 1.
    v = int((2 * bit) ** 0.5) + 2
    while v * (v - 1) // 2 > bit:
        v -= 1
    return v


# ---------------------------------------------------------------------------
# elementary mutations
# ---------------------------------------------------------------------------


def contract_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Contract edge e, merging its ends and simplifying the result.

    The merged vertex keeps index min(e); higher indices shift down.  Order
    drops by exactly one; parallel edges collapse and the loop is dropped.
    """
    u, v = e
    if not g.has_edge(u, v):
        raise ValueError(f"edge ({u},{v}) not in graph")
    lo, hi = (u, v) if u < v else (v, u)
    merged = (g.rows[lo] | g.rows[hi]) & ~(1 << lo) & ~(1 << hi)
    rows = list(g.rows)
    rows[lo] = merged
    for w in range(g.n):
        if w != lo and merged >> w & 1:
            rows[w] |= 1 << lo
        rows[w] &= ~(1 << hi)
    out = Graph.from_rows(g.n, rows)
    return out.delete_vertex(hi)


# ---------------------------------------------------------------------------
# bipartiteness
# ---------------------------------------------------------------------------


def is_bipartite(g: Graph) -> Bipartition | None:
    """Two-color the graph; returns the bipartition or None on an odd cycle."""
    n = g.n
    rows = g.rows
    color = [-1] * n
    for root in range(n):
        if color[root] >= 0:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            cv = color[v]
            r = rows[v]
            while r:
                low = r & -r
                u = low.bit_length() - 1
                r ^= low
                if color[u] < 0:
                    color[u] = 1 - cv
                    stack.append(u)
                elif color[u] == cv:
                    return None
    side_a = tuple(v for v in range(n) if color[v] == 0)
    side_b = tuple(v for v in range(n) if color[v] == 1)
    return Bipartition(side_a, side_b)


# ---------------------------------------------------------------------------
# canonical labeling: equitable refinement + backtracking over cells
# ---------------------------------------------------------------------------


def _refine(rows, n: int, colors: list[int], cells: dict[int, int], active: list[int]) -> None:
    """Worklist partition refinement to the coarsest equitable coloring.

    Colors are position-coded (a cell's color is the index of its first
    slot), so they are relabeling-invariant; ``cells`` maps each color to
    its member mask.  The worklist is processed smallest color first,
    which makes the trajectory (and the position coding) invariant; on a
    split all fragments but the largest are queued (the parent's pending
    entry, if any, keeps covering the fragment that inherits its color).
    Mutates ``colors`` and ``cells`` in place.
    """
    heapify(active)
    queued = set(active)
    while active:
        ac = heappop(active)
        queued.discard(ac)
        m = cells.get(ac, 0)
        if m == 0:
            continue
        if m & (m - 1) == 0:
            # singleton splitter: every cell splits by one adjacency bit
            nm = rows[m.bit_length() - 1]
            updates = []
            for c, cm in cells.items():
                inter = cm & nm
                if inter and inter != cm and cm & (cm - 1):
                    updates.append((c, cm & ~inter, inter))
            for c, f0, f1 in updates:
                s0 = f0.bit_count()
                s1 = f1.bit_count()
                nc = c + s0
                cells[c] = f0
                cells[nc] = f1
                f = f1
                while f:
                    low = f & -f
                    colors[low.bit_length() - 1] = nc
                    f ^= low
                if c in queued:
                    if nc not in queued:
                        heappush(active, nc)
                        queued.add(nc)
                else:
                    # queue all but the largest fragment
                    skip = c if s0 >= s1 else nc
                    for cand in (c, nc):
                        if cand != skip and cand not in queued:
                            heappush(active, cand)
                            queued.add(cand)
            continue
        updates2 = []
        for c, cm in cells.items():
            if cm & (cm - 1) == 0:
                continue
            groups: dict[int, int] = {}
            f = cm
            while f:
                low = f & -f
                cnt = (rows[low.bit_length() - 1] & m).bit_count()
                groups[cnt] = groups.get(cnt, 0) | low
                f ^= low
            if len(groups) > 1:
                updates2.append((c, groups))
        for c, groups in updates2:
            offset = c
            frags = []
            for cnt in sorted(groups):
                fm = groups[cnt]
                size = fm.bit_count()
                cells[offset] = fm
                if offset != c:
                    f = fm
                    while f:
                        low = f & -f
                        colors[low.bit_length() - 1] = offset
                        f ^= low
                frags.append((size, offset))
                offset += size
            if c in queued:
                wanted = [fc for _, fc in frags if fc != c]
            else:
                big = max(frags, key=lambda t: (t[0], -t[1]))
                wanted = [fc for _, fc in frags if fc != big[1]]
            for fc in wanted:
                if fc not in queued:
                    heappush(active, fc)
                    queued.add(fc)


def _canonical_search(rows, n: int):
    """Return (best_key, best_perm, automorphism_count).

    best_key is the tuple of bit-reversed adjacency rows of the relabeled
    graph, minimized lexicographically (equivalently: the least row-major
    adjacency-matrix bitstring).  Leaves of the individualization tree that
    attain the minimum are in bijection with the automorphisms.
    """
    best_key: tuple[int, ...] | None = None
    best_perm: list[int] | None = None
    aut = 0
    top = n - 1
    range_n = range(n)

    # initial coloring by degree (position-coded)
    order0 = sorted(range_n, key=lambda v: rows[v].bit_count())
    init = [0] * n
    cells0: dict[int, int] = {}
    c = 0
    prev_deg = rows[order0[0]].bit_count()
    for i, v in enumerate(order0):
        d = rows[v].bit_count()
        if d != prev_deg:
            c = i
            prev_deg = d
        init[v] = c
        cells0[c] = cells0.get(c, 0) | 1 << v
    stack = [(init, cells0, list(cells0), 1)]
    while stack:
        colors, cells, active, mult = stack.pop()
        _refine(rows, n, colors, cells, active)
        while True:
            if len(cells) == n:
                # discrete: colors is the permutation old->new
                new_rows = [0] * n
                for v in range_n:
                    r = rows[v]
                    acc = 0
                    while r:
                        low = r & -r
                        acc |= 1 << (top - colors[low.bit_length() - 1])
                        r ^= low
                    new_rows[colors[v]] = acc
                key = tuple(new_rows)
                if best_key is None or key < best_key:
                    best_key = key
                    best_perm = colors
                    aut = mult
                elif key == best_key:
                    aut += mult
                break
            first = -1
            for cc in sorted(cells):
                if cells[cc] & (cells[cc] - 1):
                    first = cc
                    break
            cm = cells[first]
            members = bits_to_list(cm)
            # twin cell: identical neighbourhoods outside, empty or complete
            # inside; its members are interchangeable, so fix them in index
            # order and scale the automorphism count by |cell|!
            u0 = members[0]
            outside0 = rows[u0] & ~cm
            if all(rows[v] & ~cm == outside0 for v in members[1:]) and (
                all(rows[v] & cm == 0 for v in members)
                or all(rows[v] & cm == cm ^ (1 << v) for v in members)
            ):
                for i, v in enumerate(members):
                    colors[v] = first + i
                    cells[first + i] = 1 << v
                for i in range(1, len(members)):
                    mult *= i + 1
                # splitting twins never distinguishes outsiders: the
                # partition stays equitable, no refinement needed
                continue
            # LIFO stack: push in reverse so lower vertices explore first
            rest_color = first + 1
            for v in reversed(members):
                child = colors[:]
                child_cells = dict(cells)
                child_cells[first] = 1 << v
                rest = 0
                for u in members:
                    if u != v:
                        child[u] = rest_color
                        rest |= 1 << u
                child_cells[rest_color] = rest
                stack.append((child, child_cells, [first, rest_color], mult))
            break
    return best_key, best_perm, aut


def canonical_key(g: Graph) -> tuple[int, ...]:
    """The canonical adjacency key alone (cheap dedup handle)."""
    key, _, _ = _canonical_search(g.rows, g.n)
    return key


def canonical_form(g: Graph) -> CanonicalForm:
    """Canonical labels, canonical graph6 string, and |Aut(g)|."""
    key, perm, aut = _canonical_search(g.rows, g.n)
    n = g.n
    top = n - 1
    # unreverse the key rows into plain adjacency rows
    rows = [0] * n
    for i, rr in enumerate(key):
        acc = 0
        while rr:
            low = rr & -rr
            acc |= 1 << (top - (low.bit_length() - 1))
            rr ^= low
        rows[i] = acc
    canon = Graph.from_rows(n, rows)
    return CanonicalForm(tuple(perm), to_graph6(canon), aut)
