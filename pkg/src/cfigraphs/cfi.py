"""CFI graphs over a base graph: one gadget per base vertex, link pairs wired
along base edges, with an optional per-edge twist.

For a base vertex u of degree d, the gadget over u has link vertices a(u,v)
and b(u,v) for each neighbor v, and one middle vertex per even subset of u's
neighborhood.  For an untwisted base edge uv the cross edges are
a(u,v)-a(v,u) and b(u,v)-b(v,u); twisting uv swaps them for the crossed pair
a(u,v)-b(v,u) and b(u,v)-a(v,u).  The twist set records the edges twisted an
odd number of times; only the parity of its size matters up to isomorphism.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from .base_graph import BaseGraph, Edge, is_connected

MAX_BASE_DEGREE = 20  # 2^(d-1) middle vertices per gadget


@dataclass(frozen=True, order=True)
class Link:
    u: int
    v: int
    side: str  # "a" | "b"

    def name(self) -> str:
        return f"{self.side}({self.u},{self.v})"


@dataclass(frozen=True, order=True)
class Middle:
    u: int
    members: tuple[int, ...]  # sorted neighbors of u, even count

    def name(self) -> str:
        return f"m({self.u};{','.join(map(str, self.members))})"


CfiVertex = Union[Link, Middle]


def _vertex_key(base: BaseGraph, x: CfiVertex) -> tuple:
    # gadget-major order: a-links by neighbor, then b-links, then middles by mask
    if isinstance(x, Link):
        return (x.u, 0, 0 if x.side == "a" else 1, x.v)
    nbrs = sorted(base.adjacency[x.u])
    mask = sum(1 << nbrs.index(v) for v in x.members)
    return (x.u, 1, mask, -1)


@dataclass(frozen=True)
class Color:
    """Pair color: c1 identifies the twin pair (absent on middles), c2 the gadget."""

    c1: Optional[tuple[int, int]]
    c2: int


@dataclass(frozen=True)
class CfiGraph:
    base: BaseGraph
    colored: bool
    twist: frozenset[Edge]
    vertices: tuple[CfiVertex, ...] = field(compare=False, repr=False)
    index: dict = field(compare=False, repr=False)
    edges: tuple[Edge, ...] = field(compare=False, repr=False)
    colors: Optional[tuple[int, ...]] = field(compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def graph(self) -> BaseGraph:
        return BaseGraph(self.n, self.edges)

    def names(self) -> list[str]:
        return [x.name() for x in self.vertices]

    def gadget_vertices(self, u: int) -> list[int]:
        return [i for i, x in enumerate(self.vertices) if x.u == u]

    def link_index(self, u: int, v: int, side: str) -> int:
        return self.index[Link(u, v, side)]

    def middle_index(self, u: int, members: Iterable[int]) -> int:
        return self.index[Middle(u, tuple(sorted(members)))]


def _color_int(base: BaseGraph, x: CfiVertex) -> int:
    # color (l, i) with l the 1-based gadget id and i in 1..dmax+1, folded to
    # (l-1)*(dmax+1)+i; i == dmax+1 marks middles, otherwise the neighbor rank
    dmax = base.max_degree()
    if isinstance(x, Link):
        i = sorted(base.adjacency[x.u]).index(x.v) + 1
    else:
        i = dmax + 1
    return x.u * (dmax + 1) + i


def _build(base: BaseGraph, colored: bool, twist: frozenset[Edge]) -> CfiGraph:
    vertices: list[CfiVertex] = []
    for u in range(base.n):
        nbrs = sorted(base.adjacency[u])
        for v in nbrs:
            vertices.append(Link(u, v, "a"))
        for v in nbrs:
            vertices.append(Link(u, v, "b"))
        for mask in range(1 << len(nbrs)):
            if bin(mask).count("1") % 2 == 0:
                members = tuple(nbrs[i] for i in range(len(nbrs)) if (mask >> i) & 1)
                vertices.append(Middle(u, members))
    vertices.sort(key=lambda x: _vertex_key(base, x))
    index = {x: i for i, x in enumerate(vertices)}

    edges: set[Edge] = set()
    for x, i in index.items():
        if isinstance(x, Middle):
            for v in base.adjacency[x.u]:
                side = "a" if v in x.members else "b"
                j = index[Link(x.u, v, side)]
                edges.add((min(i, j), max(i, j)))
    for u, v in base.edges:
        crossed = (u, v) in twist
        for side_u in "ab":
            side_v = side_u if not crossed else ("b" if side_u == "a" else "a")
            i = index[Link(u, v, side_u)]
            j = index[Link(v, u, side_v)]
            edges.add((min(i, j), max(i, j)))

    colors = tuple(_color_int(base, x) for x in vertices) if colored else None
    return CfiGraph(base, colored, twist, tuple(vertices), index, tuple(sorted(edges)), colors)


def build_cfi(base: BaseGraph, colored: bool = False) -> CfiGraph:
    """The untwisted CFI graph over a connected base with at least two vertices."""
    if base.n < 2:
        raise ValueError("base graph needs at least two vertices")
    if not is_connected(base):
        raise ValueError("base graph must be connected")
    if base.max_degree() > MAX_BASE_DEGREE:
        raise ValueError(f"base degree capped at {MAX_BASE_DEGREE}")
    return _build(base, colored, frozenset())


def twist(c: CfiGraph, e: tuple[int, int]) -> CfiGraph:
    """Swap the cross-edge pattern at one base edge; involutive per edge."""
    e = (min(e), max(e))
    if e not in c.base.edge_set:
        raise ValueError(f"{e} is not a base edge")
    return _build(c.base, c.colored, c.twist ^ {e})


def apply_twist_sequence(c: CfiGraph, seq: Sequence[tuple[int, int]]) -> CfiGraph:
    for e in seq:
        c = twist(c, e)
    return c


def build_tilde(base: BaseGraph, colored: bool = False) -> CfiGraph:
    """The once-twisted companion; the twisted edge is the lexicographically least."""
    c = build_cfi(base, colored)
    return twist(c, base.edges[0])


def twist_parity(c: CfiGraph) -> str:
    return "even" if len(c.twist) % 2 == 0 else "odd"


def color_of(c: CfiGraph, x: int) -> Color:
    if not c.colored:
        raise ValueError("graph is uncolored")
    vert = c.vertices[x]
    if isinstance(vert, Link):
        i = sorted(c.base.adjacency[vert.u]).index(vert.v) + 1
        return Color((vert.u, i), vert.u)
    return Color(None, vert.u)


def expected_vertex_count(base: BaseGraph) -> int:
    return sum(2 * base.degree(u) + (1 << (base.degree(u) - 1)) for u in range(base.n))


def as_base_graph(c: CfiGraph) -> tuple[BaseGraph, Optional[list[int]], list[str]]:
    """Plain-graph export: (graph, colors or None, vertex names)."""
    return c.graph, (list(c.colors) if c.colors is not None else None), c.names()


def path_encode(c: CfiGraph) -> BaseGraph:
    """Replace colors by pendant paths: a vertex of color value L grows a path of
    length L attached at the vertex; the output graph is uncolored."""
    if not c.colored or c.colors is None:
        raise ValueError("path encoding needs a colored graph")
    edges = list(c.edges)
    nxt = c.n
    for x in range(c.n):
        anchor = x
        for _ in range(c.colors[x]):
            edges.append((anchor, nxt))
            anchor = nxt
            nxt += 1
    return BaseGraph.from_edges(nxt, edges)


def gadget_flip_map(c: CfiGraph, flips: dict[int, frozenset[int]]) -> tuple[int, ...]:
    """Vertex bijection applying, inside each gadget u, the flip over the given
    even neighbor subset: a(u,v) <-> b(u,v) for v in the subset, middles by
    symmetric difference."""
    out = list(range(c.n))
    for u, subset in flips.items():
        if len(subset) % 2 != 0:
            raise ValueError(f"flip at {u} has odd size")
        if not subset <= c.base.adjacency[u]:
            raise ValueError(f"flip at {u} is not a neighbor subset")
        for v in subset:
            ia = c.link_index(u, v, "a")
            ib = c.link_index(u, v, "b")
            out[ia], out[ib] = ib, ia
        for i in c.gadget_vertices(u):
            x = c.vertices[i]
            if isinstance(x, Middle):
                out[i] = c.middle_index(u, frozenset(x.members) ^ subset)
    return tuple(out)


def lift_base_automorphism(c: CfiGraph, sigma: Sequence[int]) -> tuple[int, ...]:
    """The canonical lift of a base automorphism: a(u,v) -> a(su,sv), likewise b,
    and middles by renaming members."""
    if c.base.relabel(sigma).edges != c.base.edges:
        raise ValueError("sigma is not an automorphism of the base graph")
    out = [0] * c.n
    for i, x in enumerate(c.vertices):
        if isinstance(x, Link):
            out[i] = c.index[Link(sigma[x.u], sigma[x.v], x.side)]
        else:
            out[i] = c.index[Middle(sigma[x.u], tuple(sorted(sigma[v] for v in x.members)))]
    return tuple(out)


def random_even_flips(c: CfiGraph, rng: random.Random) -> dict[int, frozenset[int]]:
    """One random even neighbor subset per gadget."""
    flips = {}
    for u in range(c.base.n):
        nbrs = sorted(c.base.adjacency[u])
        subset = [v for v in nbrs if rng.random() < 0.5]
        if len(subset) % 2 != 0:
            subset.pop(rng.randrange(len(subset)))
        flips[u] = frozenset(subset)
    return flips
