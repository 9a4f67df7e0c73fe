"""Ground-truth isomorphism and automorphism search, exhaustive with pruning.

This is the desk-scale oracle: it either returns a verified map or certifies
absence by exhausting the pruned search space.  Candidate pruning uses the
signature (color, degree, sorted neighbor (degree, color) multiset); the
search extends the most constrained vertex first.
"""

from __future__ import annotations

from collections import Counter
from typing import Optional, Sequence

from .base_graph import BaseGraph
from .cfi import CfiGraph, gadget_flip_map, lift_base_automorphism
from .errors import SizeGuardError

ISO_SIZE_GUARD = 44


def _signatures(g: BaseGraph, colors: Optional[Sequence[int]]) -> list[tuple]:
    col = colors if colors is not None else [0] * g.n
    sigs = []
    for v in range(g.n):
        nbr = tuple(sorted((g.degree(u), col[u]) for u in g.adjacency[v]))
        sigs.append((col[v], g.degree(v), nbr))
    return sigs


def _search(
    g1: BaseGraph,
    g2: BaseGraph,
    colors1: Optional[Sequence[int]],
    colors2: Optional[Sequence[int]],
    find_all: bool,
    cap: Optional[int] = None,
) -> list[tuple[int, ...]]:
    n = g1.n
    if n != g2.n or len(g1.edges) != len(g2.edges):
        return []
    sig1 = _signatures(g1, colors1)
    sig2 = _signatures(g2, colors2)
    if Counter(sig1) != Counter(sig2):
        return []

    adj1 = g1.adjacency_bits
    adj2 = g2.adjacency_bits
    full = (1 << n) - 1
    sig_mask: dict[tuple, int] = {}
    for w, s in enumerate(sig2):
        sig_mask[s] = sig_mask.get(s, 0) | (1 << w)

    cand = [sig_mask[s] for s in sig1]
    mapping = [-1] * n
    found: list[tuple[int, ...]] = []

    def pick() -> int:
        # most constrained first: fewest candidates, then most mapped neighbors
        best, best_key = -1, None
        for v in range(n):
            if mapping[v] >= 0:
                continue
            nc = bin(cand[v]).count("1")
            mapped_nbrs = sum(1 for u in g1.adjacency[v] if mapping[u] >= 0)
            key = (nc, -mapped_nbrs, v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def extend(depth: int) -> bool:
        if depth == n:
            found.append(tuple(mapping))
            return not find_all or (cap is not None and len(found) >= cap)
        v = pick()
        choices = cand[v]
        while choices:
            w = (choices & -choices).bit_length() - 1
            choices &= choices - 1
            saved = cand[:]
            mapping[v] = w
            ok = True
            for u in range(n):
                if mapping[u] >= 0 or u == v:
                    continue
                if (adj1[v] >> u) & 1:
                    cand[u] &= adj2[w]
                else:
                    cand[u] &= full & ~adj2[w]
                cand[u] &= full & ~(1 << w)
                if cand[u] == 0:
                    ok = False
                    break
            if ok and extend(depth + 1):
                return True
            mapping[v] = -1
            cand[:] = saved
        return False

    extend(0)
    return found


def _verify(g1, g2, colors1, colors2, perm) -> None:
    assert sorted(perm) == list(range(g1.n))
    for u in range(g1.n):
        for v in range(u + 1, g1.n):
            if g1.has_edge(u, v) != g2.has_edge(perm[u], perm[v]):
                raise AssertionError("search returned a non-isomorphism")
    if colors1 is not None or colors2 is not None:
        c1 = colors1 if colors1 is not None else [0] * g1.n
        c2 = colors2 if colors2 is not None else [0] * g2.n
        if any(c1[v] != c2[perm[v]] for v in range(g1.n)):
            raise AssertionError("search returned a color-breaking map")


def find_isomorphism(
    g1: BaseGraph,
    g2: BaseGraph,
    colors1: Optional[Sequence[int]] = None,
    colors2: Optional[Sequence[int]] = None,
    guard: int = ISO_SIZE_GUARD,
) -> Optional[tuple[int, ...]]:
    """A verified isomorphism g1 -> g2, or None after exhausting the search."""
    if max(g1.n, g2.n) > guard:
        raise SizeGuardError(f"isomorphism search guarded at {guard} vertices")
    res = _search(g1, g2, colors1, colors2, find_all=False)
    if not res:
        return None
    _verify(g1, g2, colors1, colors2, res[0])
    return res[0]


def automorphisms(
    g: BaseGraph,
    colors: Optional[Sequence[int]] = None,
    guard: int = ISO_SIZE_GUARD,
) -> list[tuple[int, ...]]:
    """All automorphisms, exhaustively enumerated."""
    if g.n > guard:
        raise SizeGuardError(f"automorphism search guarded at {guard} vertices")
    return _search(g, g, colors, colors, find_all=True)


def automorphism_count(g: BaseGraph, colors: Optional[Sequence[int]] = None,
                       guard: int = ISO_SIZE_GUARD) -> int:
    return len(automorphisms(g, colors, guard))


# -- structure of CFI maps ----------------------------------------------------


def is_gadget_preserving(perm: Sequence[int], c1: CfiGraph, c2: CfiGraph) -> Optional[list[int]]:
    """If the map sends every gadget vertex set onto a gadget vertex set, return
    the induced base map as a list; otherwise None."""
    if c1.base != c2.base:
        raise ValueError("maps between CFI graphs over different bases are not supported")
    sets2 = {frozenset(c2.gadget_vertices(u)): u for u in range(c2.base.n)}
    sigma = []
    for u in range(c1.base.n):
        image = frozenset(perm[i] for i in c1.gadget_vertices(u))
        if image not in sets2:
            return None
        sigma.append(sets2[image])
    return sigma


def induced_base_map(perm: Sequence[int], c1: CfiGraph, c2: CfiGraph) -> list[int]:
    """The base automorphism induced by a gadget-preserving map; checks that each
    link pair lands setwise on the matching link pair of the image gadget."""
    sigma = is_gadget_preserving(perm, c1, c2)
    if sigma is None:
        raise ValueError("map is not gadget-preserving")
    base = c1.base
    if base.relabel(sigma).edges != base.edges:
        raise AssertionError("induced base map is not a base automorphism")
    for u, v in base.edges:
        for (s, t) in ((u, v), (v, u)):
            got = {perm[c1.link_index(s, t, "a")], perm[c1.link_index(s, t, "b")]}
            want = {c2.link_index(sigma[s], sigma[t], "a"), c2.link_index(sigma[s], sigma[t], "b")}
            if got != want:
                raise AssertionError("link pair does not map onto a link pair")
    return sigma


def decompose_cfi_aut(
    perm: Sequence[int], c: CfiGraph
) -> tuple[list[int], dict[int, frozenset[int]]]:
    """Write a gadget-preserving automorphism uniquely as (per-gadget flips)
    composed after the lift of a base automorphism; recomposition is verified."""
    sigma = induced_base_map(perm, c, c)
    tau = lift_base_automorphism(c, sigma)
    inv_tau = [0] * c.n
    for x, y in enumerate(tau):
        inv_tau[y] = x
    f = [perm[inv_tau[x]] for x in range(c.n)]

    flips: dict[int, frozenset[int]] = {}
    for u in range(c.base.n):
        flipped = set()
        for v in c.base.adjacency[u]:
            ia, ib = c.link_index(u, v, "a"), c.link_index(u, v, "b")
            if f[ia] == ib:
                flipped.add(v)
            elif f[ia] != ia:
                raise ValueError("map does not restrict to a pair-preserving gadget map")
        if len(flipped) % 2 != 0:
            raise ValueError("per-gadget flip set has odd size; not an automorphism")
        flips[u] = frozenset(flipped)

    recomposed = tuple(gadget_flip_map(c, flips)[tau[x]] for x in range(c.n))
    if recomposed != tuple(perm):
        raise AssertionError("flip/lift decomposition failed to recompose")
    return sigma, flips
