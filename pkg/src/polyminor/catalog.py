"""Labeled constructors: the Herschel graph, its family, patterns, fixtures.

Vertex layout shared by all family constructors: hubs first (indices 0..2),
then the two poles (3, 4), then rim vertices, then fan-path and gadget
vertices.  Role tags are strings like ``hub:2``, ``pole:1``, ``rim:3:2``,
``fan:5``, ``gadget:1`` stored in ``Graph.labels``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph

H1, H2, H3 = 0, 1, 2  # hubs h_1, h_2, h_3
P1, P2 = 3, 4  # poles h^1, h^2
R11, R21, R31 = 5, 6, 7  # rims h_1^1, h_2^1, h_3^1
R12, R22, R32 = 8, 9, 10  # rims h_1^2, h_2^2, h_3^2

FAMILY_KINDS = ("bullet", "circ", "h13", "h15")

# Optional edges on bullet/circ skeletons, in mask bit order:
# (h1 h2, h2 h3, h3 h1, h1 h^2, h3 h^2).
DASHED_EDGES = ((H1, H2), (H2, H3), (H3, H1), (H1, P2), (H3, P2))


@dataclass(frozen=True)
class FamilySpec:
    """Selector for one family member: kind, order, and dashed-edge mask."""

    kind: str
    n: int
    dashed_mask: int = 0

    def validate(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if not 0 <= self.dashed_mask < 32:
            raise ValueError(f"dashed_mask must be a 5-bit value, got {self.dashed_mask}")
        if self.kind == "bullet" and self.n < 11:
            raise ValueError("bullet members need n >= 11")
        if self.kind == "circ" and self.n < 13:
            raise ValueError("circ members need n >= 13")
        if self.kind == "h13" and (self.n != 13 or self.dashed_mask):
            raise ValueError("h13 is fixed at n = 13 with no dashed edges")
        if self.kind == "h15" and (self.n != 15 or self.dashed_mask):
            raise ValueError("h15 is fixed at n = 15 with no dashed edges")

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse the kind:n:mask CLI form, e.g. ``bullet:16:31``."""
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise ValueError(f"expected kind:n[:mask], got {text!r}")
        kind = parts[0]
        try:
            n = int(parts[1])
            mask = int(parts[2]) if len(parts) == 3 else 0
        except ValueError:
            raise ValueError(f"expected integer order/mask in {text!r}") from None
        spec = cls(kind, n, mask)
        spec.validate()
        return spec

    def __str__(self) -> str:
        return f"{self.kind}:{self.n}:{self.dashed_mask}"


def herschel() -> Graph:
    """The Herschel graph: 11 vertices, 18 edges, bipartite, three hubs of
    degree four; each rim vertex r(i,j) joins hubs i, i+1 and pole j."""
    edges = []
    labels = {
        H1: "hub:1",
        H2: "hub:2",
        H3: "hub:3",
        P1: "pole:1",
        P2: "pole:2",
    }
    for j, (pole, base) in enumerate(((P1, R11), (P2, R12)), start=1):
        for i in range(3):
            rim = base + i
            labels[rim] = f"rim:{i + 1}:{j}"
            edges.append((rim, H1 + i))
            edges.append((rim, H1 + (i + 1) % 3))
            edges.append((rim, pole))
    return Graph(11, edges, labels)


def _bullet_edges(n: int) -> tuple[list[tuple[int, int]], dict[int, str]]:
    """Skeleton of the fan family member: the rim vertex r(3,2) expanded
    into a path of n-10 vertices, every one adjacent to pole 2, with the
    path ends attached to hubs 3 and 1."""
    edges = []
    labels = {
        H1: "hub:1",
        H2: "hub:2",
        H3: "hub:3",
        P1: "pole:1",
        P2: "pole:2",
    }
    for i in range(3):
        rim = R11 + i
        labels[rim] = f"rim:{i + 1}:1"
        edges.append((rim, H1 + i))
        edges.append((rim, H1 + (i + 1) % 3))
        edges.append((rim, P1))
    for i in range(2):
        rim = R12 + i
        labels[rim] = f"rim:{i + 1}:2"
        edges.append((rim, H1 + i))
        edges.append((rim, H1 + (i + 1) % 3))
        edges.append((rim, P2))
    fan_len = n - 10
    fan = list(range(10, 10 + fan_len))
    for t, v in enumerate(fan):
        labels[v] = f"fan:{t + 3}"
        edges.append((v, P2))
    for a, b in zip(fan, fan[1:]):
        edges.append((a, b))
    edges.append((fan[0], H3))
    edges.append((fan[-1], H1))
    return edges, labels


def _apply_mask(edges: list[tuple[int, int]], mask: int) -> None:
    for bit, e in enumerate(DASHED_EDGES):
        if mask >> bit & 1:
            edges.append(e)


def family_member(spec: FamilySpec) -> Graph:
    """Construct the selected family member with its role labels."""
    spec.validate()
    n, mask = spec.n, spec.dashed_mask
    if spec.kind == "bullet":
        edges, labels = _bullet_edges(n)
        _apply_mask(edges, mask)
        return Graph(n, edges, labels)
    if spec.kind == "circ":
        # Fan skeleton two vertices short, then the pole-1 gadget: edges
        # h^1 r(1,1) and h^1 r(2,1) each subdivided once, the two new
        # vertices joined by an edge.
        edges, labels = _bullet_edges(n - 2)
        t1, t2 = n - 2, n - 1
        edges.remove((R11, P1))
        edges.remove((R21, P1))
        edges += [(P1, t1), (t1, R11), (P1, t2), (t2, R21), (t1, t2)]
        labels[t1] = "gadget:1"
        labels[t2] = "gadget:2"
        _apply_mask(edges, mask)
        return Graph(n, edges, labels)
    if spec.kind == "h13":
        return _h13()
    return _h15()


def _h13() -> Graph:
    """Herschel with hub 2 split into a three-vertex path; the middle
    vertex hangs from pole 2.  (Hanging it from pole 1 instead gives an
    isomorphic graph via the pole swap.)"""
    base = herschel()
    a, v, b = H2, 11, 12
    edges = [e for e in base.edges() if a not in e]
    edges += [(a, R11), (a, R12), (a, v), (v, b), (v, P2), (b, R21), (b, R22)]
    labels = dict(base.labels)
    labels[a] = "gadget:1"
    labels[v] = "gadget:2"
    labels[b] = "gadget:3"
    return Graph(13, edges, labels)


def _h15(side2_pair: tuple[int, int] = (R12, R22)) -> Graph:
    """Herschel with the two-vertex gadget on both poles.

    Pole 1 carries it on rims r(1,1), r(2,1); pole 2 on ``side2_pair``.
    Every choice of rim pairs yields one isomorphism class: the gadget
    triangle's corners are interchangeable, so the apparent placement
    freedom collapses.
    """
    base = herschel()
    t1, t2, s1, s2 = 11, 12, 13, 14
    ra, rb = side2_pair
    edges = [
        e
        for e in base.edges()
        if e not in ((R11, P1), (R21, P1), (ra, P2), (rb, P2))
        and e not in ((P1, R11), (P1, R21), (P2, ra), (P2, rb))
    ]
    edges += [(P1, t1), (t1, R11), (P1, t2), (t2, R21), (t1, t2)]
    edges += [(P2, s1), (s1, ra), (P2, s2), (s2, rb), (s1, s2)]
    labels = dict(base.labels)
    labels.update({t1: "gadget:1", t2: "gadget:2", s1: "gadget:3", s2: "gadget:4"})
    return Graph(15, edges, labels)


# ---------------------------------------------------------------------------
# pattern graphs and fixtures
# ---------------------------------------------------------------------------


def _complete(k: int) -> Graph:
    return Graph(k, [(u, v) for u in range(k) for v in range(u + 1, k)])


def _complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def _cube() -> Graph:
    edges = []
    for v in range(8):
        for bit in range(3):
            u = v ^ (1 << bit)
            if u > v:
                edges.append((v, u))
    return Graph(8, edges)


def _wheel(n: int) -> Graph:
    """Wheel on n vertices: hub 0 joined to the rim cycle 1..n-1."""
    if n < 4:
        raise ValueError("wheels need at least 4 vertices")
    edges = [(0, v) for v in range(1, n)]
    edges += [(v, v + 1) for v in range(1, n - 1)]
    edges.append((n - 1, 1))
    return Graph(n, edges)


def pattern(pattern_id: str) -> Graph:
    """Named pattern graph with its conventional vertex order.

    Accepts K22, K25, K26, K33, K34, K115, K5, Qplus, Cube, and W<k> for
    wheels on k vertices.
    """
    pid = pattern_id
    if pid == "K22":
        return _complete_bipartite(2, 2)
    if pid == "K25":
        return _complete_bipartite(2, 5)
    if pid == "K26":
        return _complete_bipartite(2, 6)
    if pid == "K33":
        return _complete_bipartite(3, 3)
    if pid == "K34":
        return _complete_bipartite(3, 4)
    if pid == "K115":
        # complete tripartite with parts {0}, {1}, {2..6}
        edges = [(0, 1)]
        edges += [(0, v) for v in range(2, 7)]
        edges += [(1, v) for v in range(2, 7)]
        return Graph(7, edges)
    if pid == "K5":
        return _complete(5)
    if pid == "Cube":
        return _cube()
    if pid == "Qplus":
        # cube plus a new vertex joined to the three neighbors of vertex 0
        cube = _cube()
        edges = cube.edges()
        edges += [(8, u) for u in cube.neighbors(0)]
        return Graph(9, edges)
    if pid.startswith("W") and pid[1:].isdigit():
        return _wheel(int(pid[1:]))
    raise ValueError(f"unknown pattern id {pattern_id!r}")


def fixture(fixture_id: str) -> Graph:
    """Reconstructible figure fixtures; currently only ``fig6_a``:
    Herschel with edge h1 r(1,1) subdivided and the new vertex joined
    to hub 2 (12 vertices, 20 edges)."""
    if fixture_id != "fig6_a":
        raise ValueError(f"unknown fixture id {fixture_id!r}")
    base = herschel()
    v = 11
    g = base.delete_edge(H1, R11)
    edges = g.edges() + [(H1, v), (v, R11), (v, H2)]
    labels = dict(base.labels)
    labels[v] = "gadget:1"
    return Graph(12, edges, labels)


def herschel_pattern_ids() -> tuple[str, ...]:
    """Pattern ids tracked by the verification pipelines."""
    return ("K25", "K26", "K115", "herschel")


def pattern_or_fixture(name: str) -> Graph:
    """Resolve a pattern id, ``herschel``, or a fixture id to its graph."""
    if name == "herschel":
        return herschel()
    if name.startswith("fig"):
        return fixture(name)
    return pattern(name)
