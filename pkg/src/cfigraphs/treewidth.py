"""Exact treewidth via elimination orderings, and the pursuit game whose
winner characterizes it: the robber evades k cops forever iff the treewidth
is at least k.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .base_graph import BaseGraph, is_connected
from .errors import SizeGuardError

TW_SIZE_GUARD = 16


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1


def validate_tree_decomposition(g: BaseGraph, td: TreeDecomposition) -> None:
    """Raise unless td is a tree decomposition of g (edge cover, vertex
    connectivity, tree shape)."""
    k = len(td.bags)
    if k == 0 or any(not b for b in td.bags):
        raise ValueError("bags must be nonempty")
    if len(td.tree_edges) != k - 1:
        raise ValueError("tree must have exactly |bags|-1 edges")
    # tree connectivity
    adj = [[] for _ in range(k)]
    for i, j in td.tree_edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != k:
        raise ValueError("bag tree is not connected")
    covered = set()
    for b in td.bags:
        covered |= b
    if covered != set(range(g.n)):
        raise ValueError("bags do not cover every vertex")
    for u, v in g.edges:
        if not any(u in b and v in b for b in td.bags):
            raise ValueError(f"edge ({u},{v}) not covered by any bag")
    for v in range(g.n):
        holding = [i for i in range(k) if v in td.bags[i]]
        comp = {holding[0]}
        stack = [holding[0]]
        hold_set = set(holding)
        while stack:
            i = stack.pop()
            for j in adj[i]:
                if j in hold_set and j not in comp:
                    comp.add(j)
                    stack.append(j)
        if comp != hold_set:
            raise ValueError(f"bags holding vertex {v} are not connected in the tree")


def _fill_neighbors(adjbits: tuple[int, ...], eliminated: int, v: int) -> int:
    """Bitmask of not-yet-eliminated vertices reachable from v via eliminated ones."""
    seen = 1 << v
    stack = [v]
    out = 0
    while stack:
        u = stack.pop()
        fresh = adjbits[u] & ~seen
        seen |= fresh
        while fresh:
            w = (fresh & -fresh).bit_length() - 1
            fresh &= fresh - 1
            if (eliminated >> w) & 1:
                stack.append(w)
            else:
                out |= 1 << w
    return out


def _eliminate_within(n: int, adjbits: tuple[int, ...], width: int) -> list[int] | None:
    """An elimination order keeping every fill degree <= width, or None."""
    full = (1 << n) - 1
    failed: set[int] = set()
    order: list[int] = []

    def search(eliminated: int) -> bool:
        if eliminated == full:
            return True
        if eliminated in failed:
            return False
        for v in range(n):
            if (eliminated >> v) & 1:
                continue
            if bin(_fill_neighbors(adjbits, eliminated, v)).count("1") <= width:
                order.append(v)
                if search(eliminated | (1 << v)):
                    return True
                order.pop()
        failed.add(eliminated)
        return False

    return order if search(0) else None


def _decomposition_from_order(g: BaseGraph, order: list[int]) -> TreeDecomposition:
    n = g.n
    pos = {v: i for i, v in enumerate(order)}
    bags = []
    eliminated = 0
    fills = []
    for v in order:
        fill = _fill_neighbors(g.adjacency_bits, eliminated, v)
        fills.append(fill)
        bag = {v}
        m = fill
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            bag.add(w)
        bags.append(frozenset(bag))
        eliminated |= 1 << v
    edges = []
    roots = []  # empty-fill bags: last vertex of each component, always singletons
    for i in range(n):
        if fills[i]:
            j = min(pos[w] for w in range(n) if (fills[i] >> w) & 1)
            edges.append((i, j))
        else:
            roots.append(i)
    edges.extend(zip(roots, roots[1:]))  # chain component roots into one tree
    return TreeDecomposition(tuple(bags), tuple(edges))


def treewidth_exact(g: BaseGraph) -> tuple[int, TreeDecomposition]:
    """Exact treewidth with a witness decomposition (validated on return)."""
    if g.n > TW_SIZE_GUARD:
        raise SizeGuardError(f"exact treewidth guarded at {TW_SIZE_GUARD} vertices")
    for width in range(g.n):
        order = _eliminate_within(g.n, g.adjacency_bits, width)
        if order is not None:
            td = _decomposition_from_order(g, order)
            validate_tree_decomposition(g, td)
            if td.width > width:
                raise AssertionError("witness decomposition wider than claimed")
            return width, td
    raise AssertionError("unreachable: width n-1 always admits an order")


# -- cops and robber -----------------------------------------------------------


def robber_wins(g: BaseGraph, k: int) -> bool:
    """Whether the robber evades k cops forever.

    Positions are (occupied cop set, robber component of the rest); the
    moving cop is lifted before the robber runs.  Solved by backward
    induction: a position is lost for the robber once some cop move leaves
    no surviving reply, and the loss propagates by reverse edges.
    """
    if k < 1:
        raise ValueError("need at least one cop")
    if g.n < 2 or not is_connected(g):
        raise ValueError("the game is played on a connected graph with >= 2 vertices")
    if g.n > TW_SIZE_GUARD:
        raise SizeGuardError(f"game solver guarded at {TW_SIZE_GUARD} vertices")

    comp_cache: dict[frozenset[int], list[frozenset[int]]] = {}

    def comps(blocked: frozenset[int]) -> list[frozenset[int]]:
        if blocked in comp_cache:
            return comp_cache[blocked]
        seenv = set(blocked)
        out = []
        for s in range(g.n):
            if s in seenv:
                continue
            comp = {s}
            seenv.add(s)
            stack = [s]
            while stack:
                u = stack.pop()
                for w in g.adjacency[u]:
                    if w not in seenv:
                        seenv.add(w)
                        comp.add(w)
                        stack.append(w)
            out.append(frozenset(comp))
        comp_cache[blocked] = out
        return out

    State = tuple[frozenset[int], frozenset[int]]
    states: list[State] = []
    for size in range(1, k + 1):
        for cops in combinations(range(g.n), size):
            s = frozenset(cops)
            for c in comps(s):
                states.append((s, c))
    alive = set(states)

    # move list per state: (lifted-set F, destination v') -> surviving replies
    moves: dict[State, list[list[State]]] = {}
    preds: dict[State, list[tuple[State, int]]] = {s: [] for s in states}
    for st in states:
        cops, region = st
        lift_options = {cops - {c} for c in cops}
        if len(cops) < k:
            lift_options.add(cops)
        mv = []
        for f in lift_options:
            run = next(d for d in comps(f) if region <= d)
            for dest in range(g.n):
                new_cops = f | {dest}
                # the robber runs anywhere in `run` before the cop lands
                replies = [(new_cops, c2) for c2 in comps(new_cops) if c2 <= run]
                mv.append(replies)
        moves[st] = mv
        for i, replies in enumerate(mv):
            for r in replies:
                preds[r].append((st, i))

    live_count = {(st, i): len(rs) for st, mv in moves.items() for i, rs in enumerate(mv)}
    queue = [st for st, mv in moves.items() if any(len(rs) == 0 for rs in mv)]
    for st in queue:
        alive.discard(st)
    while queue:
        dead = queue.pop()
        for st, i in preds[dead]:
            if st not in alive:
                continue
            live_count[(st, i)] -= 1
            if live_count[(st, i)] == 0:
                alive.discard(st)
                queue.append(st)

    return all(
        any((frozenset({v}), c) in alive for c in comps(frozenset({v})))
        for v in range(g.n)
    )


def subdivision_preserves_width(g: BaseGraph) -> dict:
    """Assertion data: the 2-subdivision has the same treewidth as the graph."""
    from .homcount import subdivide2

    w1, _ = treewidth_exact(g)
    w2, _ = treewidth_exact(subdivide2(g).graph)
    return {"width": w1, "subdivided_width": w2, "equal": w1 == w2}
