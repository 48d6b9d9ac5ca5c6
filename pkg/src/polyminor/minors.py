"""Fixed-pattern minor containment with branch-set certificates.

A model maps every pattern vertex to a connected, pairwise disjoint host
vertex set and every pattern edge to one host edge joining the two sets
(path interiors are always absorbable into branch sets, so single-edge
witnesses lose no generality).  The searcher is an exact branch and bound:
it seeds pattern vertices in decreasing-degree order and grows branch sets
one adjacent host vertex at a time while any pattern edge is unrealized.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .graphs import Graph, bits_to_list, neighbor_expander


@dataclass
class MinorModel:
    """Branch sets indexed by pattern vertex plus one host edge per
    pattern edge; a machine-checkable containment certificate."""

    branch_sets: tuple[tuple[int, ...], ...]
    edge_witnesses: dict[tuple[int, int], tuple[int, int]]


def verify_minor_model(host: Graph, pattern: Graph, model: MinorModel) -> bool:
    """Check every model invariant against the host and pattern."""
    pn, hn = pattern.n, host.n
    if len(model.branch_sets) != pn:
        return False
    seen = 0
    masks = []
    for bs in model.branch_sets:
        if not bs:
            return False
        mask = 0
        for v in bs:
            if not 0 <= v < hn or seen >> v & 1:
                return False
            mask |= 1 << v
            seen |= 1 << v
        masks.append(mask)
        if not _mask_connected(host.rows, mask):
            return False
    pedges = set(pattern.edges())
    if set(model.edge_witnesses) != pedges:
        return False
    for (pu, pv), (a, b) in model.edge_witnesses.items():
        if not (0 <= a < hn and 0 <= b < hn) or not host.rows[a] >> b & 1:
            return False
        if not (masks[pu] >> a & 1 and masks[pv] >> b & 1):
            return False
    return True


def _mask_connected(rows, mask: int) -> bool:
    if mask == 0:
        return False
    comp = mask & -mask
    frontier = comp
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= rows[low.bit_length() - 1]
            f ^= low
        nxt &= mask & ~comp
        comp |= nxt
        frontier = nxt
    return comp == mask


# ---------------------------------------------------------------------------
# exact search
# ---------------------------------------------------------------------------


class _MinorSearch:
    def __init__(self, host: Graph, pattern: Graph, roots: dict[int, int] | None):
        self.hrows = host.rows
        self.hn = host.n
        self.prows = pattern.rows
        self.pn = pattern.n
        self.full = (1 << host.n) - 1
        self.roots = roots or {}

        # seed order: rooted vertices first, then decreasing degree with
        # twin groups kept consecutive so their seeds can be ordered
        twin_group = {}
        for v in range(self.pn):
            open_nb = self.prows[v]
            closed_nb = open_nb | 1 << v
            twin_group.setdefault(("o", open_nb), []).append(v)
            twin_group.setdefault(("c", closed_nb), []).append(v)
        group_of = list(range(self.pn))
        for key, members in twin_group.items():
            if len(members) > 1:
                rep = min(members)
                for v in members:
                    group_of[v] = min(group_of[v], rep)
        rooted = sorted(self.roots)
        rest = [v for v in range(self.pn) if v not in self.roots]
        rest.sort(key=lambda v: (-self.prows[v].bit_count(), group_of[v], v))
        self.order = rooted + rest
        # twin_prev[v] = preceding vertex of the same twin group in seed
        # order, if any; its seed bounds v's seed from below
        self.twin_prev = [-1] * self.pn
        for i in range(1, len(rest)):
            a, b = rest[i - 1], rest[i]
            if group_of[a] == group_of[b]:
                self.twin_prev[b] = a

        self.pedges = [
            (u, v) for u in range(self.pn) for v in bits_to_list(self.prows[u]) if u < v
        ]
        # pattern-neighbour masks per vertex for the packing bound
        self.pn_masks = [self.prows[v] for v in range(self.pn)]

        self.branch = [0] * self.pn
        self.reach = [0] * self.pn
        self.seed_of = [-1] * self.pn
        self.used = 0
        self.singleton = [False] * self.pn
        self.result: list[int] | None = None

    # -- pruning helpers ----------------------------------------------------

    def _components(self, mask: int) -> list[int]:
        comps = []
        rows = self.hrows
        while mask:
            comp = mask & -mask
            frontier = comp
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= rows[low.bit_length() - 1]
                    f ^= low
                nxt &= mask & ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            mask &= ~comp
        return comps

    def _joinable(self, p: int, q: int, free: int) -> bool:
        """Can branch sets p and q still be connected through free vertices?"""
        region = free | self.branch[p] | self.branch[q]
        rows = self.hrows
        comp = self.branch[p]
        frontier = comp
        target = self.branch[q]
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= rows[low.bit_length() - 1]
                f ^= low
            nxt &= region & ~comp
            if nxt & target:
                return True
            comp |= nxt
            frontier = nxt
        return bool(comp & target)

    def _twin_supply_ok(self, free: int, unseeded: list[int]) -> bool:
        """Necessary condition for the remaining singleton-locked pattern
        vertices: one of pattern degree d needs its own free vertex with
        at least d neighbours in the live region (locked vertices never
        neighbour locked vertices, so attachment targets stay growable)."""
        need2 = need1 = need0 = 0
        for q in unseeded:
            if self.singleton[q]:
                d = self.pn_masks[q].bit_count()
                if d >= 2:
                    need2 += 1
                elif d == 1:
                    need1 += 1
                else:
                    need0 += 1
        if not (need2 or need1 or need0):
            return True
        live = free
        for q in range(self.pn):
            if self.branch[q] and not self.singleton[q]:
                live |= self.branch[q]
        s2 = s1 = s0 = 0
        f = free
        rows = self.hrows
        while f:
            low = f & -f
            w = low.bit_length() - 1
            f ^= low
            d = (rows[w] & live).bit_count()
            s0 += 1
            if d >= 1:
                s1 += 1
            if d >= 2:
                s2 += 1
        return (
            s2 >= need2
            and s1 >= need2 + need1
            and s0 >= need2 + need1 + need0
        )

    # -- search -------------------------------------------------------------

    def run(self) -> list[int] | None:
        if self.pn > self.hn:
            return None
        self._seed_next(0)
        return self.result

    def _seed_next(self, k: int) -> bool:
        if self.result is not None:
            return True
        if k == self.pn:
            self.result = list(self.branch)
            return True
        p = self.order[k]
        free = self.full & ~self.used
        if free.bit_count() < self.pn - k:
            return False
        if p in self.roots:
            seeds = 1 << self.roots[p]
            if seeds & self.used:
                return False
        else:
            seeds = free
            prev = self.twin_prev[p]
            if prev >= 0 and self.seed_of[prev] >= 0:
                seeds &= ~((1 << (self.seed_of[prev] + 1)) - 1)
        while seeds:
            low = seeds & -seeds
            w = low.bit_length() - 1
            seeds ^= low
            self.branch[p] = 1 << w
            self.reach[p] = self.hrows[w]
            self.seed_of[p] = w
            self.used |= 1 << w
            if self._solve(k):
                return True
            self.branch[p] = 0
            self.reach[p] = 0
            self.seed_of[p] = -1
            self.used &= ~(1 << w)
        return False

    def _solve(self, k: int) -> bool:
        """Realize all pattern edges among seeded vertices, growing branch
        sets as needed, then move to the next seed."""
        pending = None
        for u, v in self.pedges:
            if self.branch[u] and self.branch[v] and not self.reach[u] & self.branch[v]:
                pending = (u, v)
                break
        if pending is None:
            free = self.full & ~self.used
            unseeded = [self.order[i] for i in range(k + 1, self.pn)]
            if unseeded and not self._twin_supply_ok(free, unseeded):
                return False
            return self._seed_next(k + 1)
        p, q = pending
        free = self.full & ~self.used
        if free.bit_count() < self.pn - k - 1 + 1:
            # at least one free vertex must feed this growth
            return False
        if not self._joinable(p, q, free):
            return False
        for side in (p, q):
            if self.singleton[side]:
                continue
            grow = free & self.reach[side]
            while grow:
                low = grow & -grow
                w = low.bit_length() - 1
                grow ^= low
                self.branch[side] |= 1 << w
                old_reach = self.reach[side]
                self.reach[side] |= self.hrows[w]
                self.used |= 1 << w
                if self._solve(k):
                    return True
                self.used &= ~(1 << w)
                self.reach[side] = old_reach
                self.branch[side] &= ~(1 << w)
        return False


def _extract_model(host: Graph, pattern: Graph, branch: list[int]) -> MinorModel:
    sets = tuple(tuple(bits_to_list(m)) for m in branch)
    witnesses: dict[tuple[int, int], tuple[int, int]] = {}
    for u, v in pattern.edges():
        best = None
        for a in bits_to_list(branch[u]):
            hits = host.rows[a] & branch[v]
            if hits:
                b = (hits & -hits).bit_length() - 1
                if best is None or (a, b) < best:
                    best = (a, b)
        witnesses[(u, v)] = best
    return MinorModel(sets, witnesses)


def _lockable_singletons(pattern: Graph) -> list[int]:
    """Pattern vertices whose branch sets may be restricted to singletons.

    A branch set for a vertex of degree <= 2 always normalizes to a single
    host vertex: keep a vertex adjacent to one neighbour set, absorb the
    path prefix toward the other attachment into that neighbour set, drop
    the rest.  The absorption grows the neighbour sets, so a vertex is
    locked only while all of its pattern neighbours stay unlocked; classes
    of false twins lock together (their sets are interchangeable).
    """
    classes: dict[int, list[int]] = {}
    for v in range(pattern.n):
        classes.setdefault(pattern.rows[v], []).append(v)
    locked: set[int] = set()
    order = sorted(classes.values(), key=lambda c: (-len(c), c[0]))
    for cls in order:
        nbhd = pattern.rows[cls[0]]
        if nbhd.bit_count() > 2:
            continue
        if any(u in locked for u in bits_to_list(nbhd)):
            continue
        locked.update(cls)
    return sorted(locked)


def find_minor_model(
    host: Graph, pattern: Graph, roots: dict[int, int] | None = None
) -> MinorModel | None:
    """Exact minor containment; returns a verifiable model or None.

    ``roots`` pins pattern vertices to host vertices that their branch
    sets must contain.  K_{2,t} patterns take a dedicated route that also
    refutes quickly; everything else runs the generic branch and bound.
    """
    if pattern.n < 1:
        raise ValueError("pattern must have at least one vertex")
    if pattern.n > host.n or pattern.size > host.size:
        return None
    if not roots:
        small = _k2t_small_side(pattern)
        if small is not None:
            return _find_k2t_model(host, pattern, small)
    search = _MinorSearch(host, pattern, roots)
    if not roots:
        for v in _lockable_singletons(pattern):
            search.singleton[v] = True
    branch = search.run()
    if branch is None:
        return None
    model = _extract_model(host, pattern, branch)
    assert verify_minor_model(host, pattern, model)
    return model


def _k2t_small_side(pattern: Graph) -> list[int] | None:
    """If the pattern is K_{2,t} with t >= 2, return its t-side."""
    degs = sorted((pattern.rows[v].bit_count(), v) for v in range(pattern.n))
    t = pattern.n - 2
    if t < 2:
        return None
    small = [v for _, v in degs[:t]]
    a, b = (v for _, v in degs[t:])
    want = 0
    for v in small:
        want |= 1 << v
    if pattern.rows[a] != want or pattern.rows[b] != want:
        return None
    if any(pattern.rows[v] != (1 << a | 1 << b) for v in small):
        return None
    return small


def _find_k2t_model(host: Graph, pattern: Graph, small: list[int]) -> MinorModel | None:
    """Exact K_{2,t} containment via the twin-singleton normal form.

    A K_{2,t} model always normalizes so the t-side sets are single host
    vertices, so containment is equivalent to: some t-set T admits two
    disjoint connected sets in host - T, each adjacent to all of T.
    Candidate T sets are scanned lexicographically; for each, either two
    components of host - T dominate T outright, or a single dominating
    component is searched for two disjoint connected dominating subsets.
    """
    t = len(small)
    n = host.n
    rows = host.rows
    if n < t + 2:
        return None
    full = (1 << n) - 1
    big = sorted(v for v in range(pattern.n) if v not in small)
    expand = neighbor_expander(rows, n)

    for T in combinations(range(n), t):
        tmask = 0
        for w in T:
            tmask |= 1 << w
        if any((rows[w] & ~tmask).bit_count() < 2 for w in T):
            continue
        comps = _components_of(rows, full & ~tmask)
        dominating = [c for c in comps if all(rows[w] & c for w in T)]
        if len(dominating) >= 2:
            pair = (dominating[0], dominating[1])
        elif len(dominating) == 1:
            comp = dominating[0]
            # the two sides are vertex disjoint, so for every v at least
            # one side survives in comp - v: some component there must
            # still dominate T, else this T is hopeless
            ok = True
            probe = comp
            while probe:
                low = probe & -probe
                probe ^= low
                if rows[low.bit_length() - 1].bit_count() < 3:
                    continue  # low-degree vertices rarely bottleneck
                alive = comp ^ low
                if not any(
                    all(rows[w] & c for w in T)
                    for c in _components_of(rows, alive)
                ):
                    ok = False
                    break
            if not ok:
                continue
            pair = _split_dominating(rows, dominating[0], T, expand)
            if pair is None:
                continue
        else:
            continue
        a_mask, b_mask = pair
        branch = [0] * pattern.n
        branch[big[0]] = a_mask
        branch[big[1]] = b_mask
        for pv, w in zip(small, T):
            branch[pv] = 1 << w
        model = _extract_model(host, pattern, branch)
        assert verify_minor_model(host, pattern, model)
        return model
    return None


def _components_of(rows, mask: int) -> list[int]:
    comps = []
    while mask:
        comp = mask & -mask
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= rows[low.bit_length() - 1]
                f ^= low
            nxt &= mask & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        mask &= ~comp
    return comps


def _split_dominating(rows, comp: int, T, expand) -> tuple[int, int] | None:
    """Two disjoint connected subsets of ``comp`` each adjacent to every
    vertex of T, or None.

    Phase one assigns each T vertex attachments on both sides by
    most-constrained-first branching, pruning once either attachment set
    stops being connectable around the other.  Phase two connects side X
    through minimal connector sets; splitting the Y attachments is
    monotone under X growth, so split states cut whole subtrees.
    """
    t = len(T)
    opts = [rows[w] & comp for w in T]

    def together(att: int, inside: int) -> bool:
        # all attachment bits in one component of ``inside``
        if att & (att - 1) == 0:
            return True
        reached = att & -att
        while True:
            nxt = expand(reached) & inside & ~reached
            if not nxt:
                return att & ~reached == 0
            reached |= nxt
            if att & ~reached == 0:
                return True

    def phase2(x_att: int, y_att: int) -> tuple[int, int] | None:
        def closure(start: int, inside: int) -> int:
            reached = start
            while True:
                nxt = expand(reached) & inside & ~reached
                if not nxt:
                    return reached
                reached |= nxt

        def connect(x_set: int, banned: int):
            rest = comp & ~x_set
            if not together(y_att, rest):
                return None  # monotone: growing x_set keeps y_att split
            piece = closure(x_set & -x_set, x_set)
            if piece == x_set:
                # success: Y is the component of the rest holding y_att
                return x_set, closure(y_att & -y_att, rest)
            grow = expand(piece) & comp & ~x_set & ~y_att & ~banned
            while grow:
                low = grow & -grow
                grow ^= low
                got = connect(x_set | low, banned)
                if got is not None:
                    return got
                banned |= low
            return None

        return connect(x_att, 0)

    def assign(i: int, x_att: int, y_att: int, order: list[int]):
        if i == t:
            return phase2(x_att, y_att)
        best_j = -1
        best_count = 1 << 30
        for j in range(i, t):
            o = opts[order[j]]
            cx = 1 if o & x_att else (o & ~y_att).bit_count()
            cy = 1 if o & y_att else (o & ~x_att).bit_count()
            if cx * cy < best_count:
                best_count = cx * cy
                best_j = j
        if best_count == 0:
            return None
        order[i], order[best_j] = order[best_j], order[i]
        o = opts[order[i]]
        x_choices = [None] if o & x_att else bits_to_list(o & ~y_att)
        for xc in x_choices:
            nx = x_att if xc is None else x_att | 1 << xc
            if xc is not None and not together(nx, comp & ~y_att):
                continue
            y_choices = [None] if o & y_att else bits_to_list(o & ~nx)
            for yc in y_choices:
                ny = y_att if yc is None else y_att | 1 << yc
                if yc is not None and not together(ny, comp & ~nx):
                    continue
                got = assign(i + 1, nx, ny, order)
                if got is not None:
                    return got
        order[i], order[best_j] = order[best_j], order[i]
        return None

    return assign(0, 0, 0, list(range(t)))


def has_minor(host: Graph, pattern: Graph) -> bool:
    return find_minor_model(host, pattern) is not None


def brute_force_has_minor(host: Graph, pattern: Graph) -> bool:
    """Independent oracle: try every assignment of host vertices to branch
    sets (or none), checking connectivity and edge coverage directly.

    The only shortcut is skipping assignments that cannot fill every
    branch set; each surviving assignment is checked from scratch.
    """
    hn, pn = host.n, pattern.n
    if hn > 9:
        raise ValueError("brute-force oracle is limited to hosts of order <= 9")
    if pn > hn or pattern.size > host.size:
        return False
    hrows = host.rows
    pedges = pattern.edges()

    def complete(masks) -> bool:
        if not all(_mask_connected(hrows, m) for m in masks):
            return False
        for u, v in pedges:
            reach = 0
            m = masks[u]
            while m:
                low = m & -m
                reach |= hrows[low.bit_length() - 1]
                m ^= low
            if not reach & masks[v]:
                return False
        return True

    masks = [0] * pn

    def place(hv: int, empties: int) -> bool:
        if empties > hn - hv:
            return False  # too few host vertices left to fill every set
        if hv == hn:
            return complete(masks)
        for cls in range(pn + 1):
            if cls < pn:
                was_empty = masks[cls] == 0
                masks[cls] |= 1 << hv
                if place(hv + 1, empties - was_empty):
                    return True
                masks[cls] &= ~(1 << hv)
            else:
                if place(hv + 1, empties):
                    return True
        return False

    return place(0, pn)


def find_rooted_k22(host: Graph, x: int, y: int) -> MinorModel | None:
    """K_{2,2} minor with the two branch sets of one side containing x
    and y respectively."""
    if x == y:
        raise ValueError("root vertices must be distinct")
    if not (0 <= x < host.n and 0 <= y < host.n):
        raise ValueError("root vertex out of range")
    from .catalog import pattern as _pattern

    k22 = _pattern("K22")  # sides {0, 1} and {2, 3}
    return find_minor_model(host, k22, roots={0: x, 1: y})


# ---------------------------------------------------------------------------
# spanning-subgraph embedding
# ---------------------------------------------------------------------------


def find_spanning_subgraph(host: Graph, pattern: Graph) -> tuple[int, ...] | None:
    """A bijection carrying every pattern edge onto a host edge, if any.

    Raises on an order mismatch; equal orders make this a spanning-subgraph
    embedding test.
    """
    if host.n != pattern.n:
        raise ValueError(f"order mismatch: host {host.n} vs pattern {pattern.n}")
    n = host.n
    hrows, prows = host.rows, pattern.rows
    hdeg = [r.bit_count() for r in hrows]
    pdeg = [r.bit_count() for r in prows]

    # connectivity-guided static order: most placed neighbours first
    order: list[int] = []
    placed_mask = 0
    for _ in range(n):
        best = None
        for v in range(n):
            if placed_mask >> v & 1:
                continue
            key = ((prows[v] & placed_mask).bit_count(), pdeg[v], -v)
            if best is None or key > best[0]:
                best = (key, v)
        order.append(best[1])
        placed_mask |= 1 << best[1]

    mapping = [-1] * n
    used = 0

    def place(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        p = order[i]
        need = prows[p]
        for h in range(n):
            if used >> h & 1 or hdeg[h] < pdeg[p]:
                continue
            ok = True
            nb = need
            while nb:
                low = nb & -nb
                q = low.bit_length() - 1
                nb ^= low
                if mapping[q] >= 0 and not hrows[h] >> mapping[q] & 1:
                    ok = False
                    break
            if not ok:
                continue
            mapping[p] = h
            used |= 1 << h
            if place(i + 1):
                return True
            used &= ~(1 << h)
            mapping[p] = -1
        return False

    if place(0):
        return tuple(mapping)
    return None


# ---------------------------------------------------------------------------
# certificate text format
# ---------------------------------------------------------------------------


def serialize_minor_model(model: MinorModel) -> str:
    """Text record: one ``p: h1 h2`` line per branch set, then one
    ``pu-pv: a-b`` line per pattern-edge witness."""
    lines = []
    for p, bs in enumerate(model.branch_sets):
        lines.append(f"{p}: {' '.join(map(str, bs))}")
    for (pu, pv) in sorted(model.edge_witnesses):
        a, b = model.edge_witnesses[(pu, pv)]
        lines.append(f"{pu}-{pv}: {a}-{b}")
    return "\n".join(lines)


def parse_minor_model(text: str) -> MinorModel:
    sets: dict[int, tuple[int, ...]] = {}
    witnesses: dict[tuple[int, int], tuple[int, int]] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        head, _, tail = line.partition(":")
        head = head.strip()
        tail = tail.strip()
        if "-" in head:
            pu, pv = (int(x) for x in head.split("-"))
            a, b = (int(x) for x in tail.split("-"))
            witnesses[(pu, pv)] = (a, b)
        else:
            sets[int(head)] = tuple(int(x) for x in tail.split())
    if sorted(sets) != list(range(len(sets))):
        raise ValueError("branch sets must cover pattern vertices 0..k-1")
    return MinorModel(tuple(sets[i] for i in range(len(sets))), witnesses)
