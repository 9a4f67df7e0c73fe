"""Equivalence of graphs in bounded-variable logics.

Three engines, deliberately distinct so they can cross-check each other:

* ``lk_equivalent`` decides equivalence in the k-variable fragment without
  counting, as the greatest fixpoint of the k-pebble game.  It refines the
  k-tuple spaces of both graphs with *set*-valued substitution signatures
  (a surviving position needs, for every pebble and every placement, some
  reply landing in a surviving class); equivalence holds iff the diagonal
  tuples of the two graphs realize the same class sets.

* ``wl_equivalent`` runs dim-dimensional Weisfeiler-Leman refinement
  (multiset signatures; classic color refinement at dim=1) and compares
  stable histograms.  It decides equivalence in the counting fragment with
  dim+1 variables.

* ``ck_equivalent_game`` solves the bijective k-pebble game directly at tiny
  scale: a position survives iff for every pebble there is a bijection all of
  whose placements land on surviving positions, decided by a perfect-matching
  test.  It must agree with ``wl_equivalent`` at dim = k-1.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .base_graph import BaseGraph, classify_linear
from .errors import SizeGuardError

LK_TUPLE_GUARD = 250_000
CK_STATE_GUARD = 600_000


def _norm_colors(g: BaseGraph, colors: Optional[Sequence[int]]) -> list[int]:
    if colors is None:
        return [0] * g.n
    if len(colors) != g.n:
        raise ValueError("colors length must match vertex count")
    return list(colors)


def _shared_ids(rows1: np.ndarray, rows2: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """Re-index signature rows of both graphs through one shared table."""
    stacked = np.vstack([rows1, rows2])
    _, inverse = np.unique(stacked, axis=0, return_inverse=True)
    inverse = inverse.astype(np.int64)
    count = int(inverse.max()) + 1
    return inverse[: len(rows1)], inverse[len(rows1):], count


def _atomic_rows(g: BaseGraph, colors: list[int], k: int) -> np.ndarray:
    """Atomic-type signature of every k-tuple: coordinate colors plus the
    equality/adjacency pattern of every coordinate pair."""
    n = g.n
    rel = np.full((n, n), 0, dtype=np.int64)
    for u, v in g.edges:
        rel[u, v] = rel[v, u] = 1
    np.fill_diagonal(rel, 2)
    col = np.asarray(colors, dtype=np.int64)
    idx = np.arange(n ** k)
    digits = [(idx // n ** i) % n for i in range(k)]
    cols = [col[d] for d in digits]
    cols += [rel[digits[i], digits[j]] for i in range(k) for j in range(i + 1, k)]
    return np.stack(cols, axis=1)


@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    rounds: tuple[int, ...]  # shared class count after each refinement round


def _lk_report(g1: BaseGraph, g2: BaseGraph, k: int,
               colors1: Optional[Sequence[int]], colors2: Optional[Sequence[int]]) -> EquivalenceReport:
    if k < 1:
        raise ValueError("k must be at least 1")
    if g1.n ** k + g2.n ** k > LK_TUPLE_GUARD:
        raise SizeGuardError("tuple space too large for the k-variable fixpoint")
    c1 = _norm_colors(g1, colors1)
    c2 = _norm_colors(g2, colors2)
    C1, C2, ncolors = _shared_ids(_atomic_rows(g1, c1, k), _atomic_rows(g2, c2, k))
    rounds = [ncolors]
    width = max(g1.n, g2.n)  # set rows padded to a shared width; -1 sorts first

    def signature(g: BaseGraph, C: np.ndarray) -> np.ndarray:
        n = g.n
        idx = np.arange(n ** k)
        parts = [C[:, None]]
        for i in range(k):
            digit = (idx // n ** i) % n
            base = idx - digit * n ** i
            subs = C[base[:, None] + (np.arange(n) * n ** i)[None, :]]
            subs = np.sort(subs, axis=1)
            # set semantics: blank out duplicates, then restore sortedness
            dup = np.zeros_like(subs, dtype=bool)
            dup[:, 1:] = subs[:, 1:] == subs[:, :-1]
            subs[dup] = -1
            subs = np.sort(subs, axis=1)
            if n < width:
                subs = np.hstack(
                    [np.full((len(subs), width - n), -1, dtype=np.int64), subs])
            parts.append(subs)
        return np.hstack(parts)

    while True:
        C1, C2, new_count = _shared_ids(signature(g1, C1), signature(g2, C2))
        if new_count == rounds[-1]:
            break
        rounds.append(new_count)

    diag1 = np.arange(g1.n) * ((g1.n ** k - 1) // (g1.n - 1) if g1.n > 1 else 1)
    diag2 = np.arange(g2.n) * ((g2.n ** k - 1) // (g2.n - 1) if g2.n > 1 else 1)
    equivalent = set(C1[diag1].tolist()) == set(C2[diag2].tolist())
    return EquivalenceReport(equivalent, tuple(rounds))


def lk_equivalent(g1: BaseGraph, g2: BaseGraph, k: int,
                  colors1: Optional[Sequence[int]] = None,
                  colors2: Optional[Sequence[int]] = None) -> bool:
    """Whether the graphs satisfy the same k-variable first-order sentences."""
    return _lk_report(g1, g2, k, colors1, colors2).equivalent


def lk_equivalent_report(g1, g2, k, colors1=None, colors2=None) -> EquivalenceReport:
    return _lk_report(g1, g2, k, colors1, colors2)


# -- Weisfeiler-Leman ----------------------------------------------------------


def _wl1_report(g1, g2, colors1, colors2) -> EquivalenceReport:
    c1 = _norm_colors(g1, colors1)
    c2 = _norm_colors(g2, colors2)
    # seed with (degree, color); refine by neighbor multisets
    table: dict = {}

    def seed(g, c):
        out = []
        for v in range(g.n):
            key = (g.degree(v), c[v])
            out.append(table.setdefault(key, len(table)))
        return out

    C1, C2 = seed(g1, c1), seed(g2, c2)
    rounds = [len(table)]
    while True:
        table = {}

        def refine(g, C):
            out = []
            for v in range(g.n):
                key = (C[v], tuple(sorted(C[u] for u in g.adjacency[v])))
                out.append(table.setdefault(key, len(table)))
            return out

        N1, N2 = refine(g1, C1), refine(g2, C2)
        if len(table) == rounds[-1]:
            break
        C1, C2 = N1, N2
        rounds.append(len(table))
    return EquivalenceReport(Counter(C1) == Counter(C2), tuple(rounds))


def _wl_report(g1: BaseGraph, g2: BaseGraph, dim: int,
               colors1, colors2) -> EquivalenceReport:
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    if dim == 1:
        return _wl1_report(g1, g2, colors1, colors2)
    if g1.n ** dim + g2.n ** dim > LK_TUPLE_GUARD:
        raise SizeGuardError("tuple space too large for WL refinement")
    c1 = _norm_colors(g1, colors1)
    c2 = _norm_colors(g2, colors2)
    C1, C2, ncolors = _shared_ids(_atomic_rows(g1, c1, dim), _atomic_rows(g2, c2, dim))
    rounds = [ncolors]

    row_width = max(g1.n, g2.n)

    def signature(g: BaseGraph, C: np.ndarray, width: int) -> np.ndarray:
        n = g.n
        idx = np.arange(n ** dim)
        packed = np.zeros((n ** dim, n), dtype=np.int64)
        for i in range(dim):
            digit = (idx // n ** i) % n
            base = idx - digit * n ** i
            subs = C[base[:, None] + (np.arange(n) * n ** i)[None, :]]
            packed = (packed << width) | subs
        packed = np.sort(packed, axis=1)  # multiset over the substituted vertex
        if n < row_width:
            packed = np.hstack(
                [np.full((len(packed), row_width - n), -1, dtype=np.int64), packed])
        return np.hstack([C[:, None], packed])

    def histograms_equal(C1, C2, count):
        return np.array_equal(
            np.bincount(C1, minlength=count), np.bincount(C2, minlength=count))

    while True:
        width = max(int(ncolors).bit_length(), 1)
        if width * dim > 62:
            raise SizeGuardError("color width overflow in WL packing")
        C1, C2, new_count = _shared_ids(
            signature(g1, C1, width), signature(g2, C2, width))
        stable = new_count == ncolors
        ncolors = new_count
        if not stable:
            rounds.append(new_count)
        # histograms only ever split; inequality is final
        if not histograms_equal(C1, C2, ncolors):
            return EquivalenceReport(False, tuple(rounds))
        if stable:
            return EquivalenceReport(True, tuple(rounds))


def wl_equivalent(g1: BaseGraph, g2: BaseGraph, dim: int,
                  colors1: Optional[Sequence[int]] = None,
                  colors2: Optional[Sequence[int]] = None) -> bool:
    """Whether dim-dimensional WL refinement leaves the two graphs with equal
    stable color histograms; decides the counting logic with dim+1 variables."""
    return _wl_report(g1, g2, dim, colors1, colors2).equivalent


def wl_equivalent_report(g1, g2, dim, colors1=None, colors2=None) -> EquivalenceReport:
    return _wl_report(g1, g2, dim, colors1, colors2)


# -- bijective pebble game ------------------------------------------------------


def _perfect_matching(rows: list[int], n: int) -> Optional[list[int]]:
    """Perfect matching in a bipartite graph given as row bitmasks; Kuhn."""
    match_x = [-1] * n
    match_y = [-1] * n

    def augment(x: int, visited: int) -> tuple[bool, int]:
        avail = rows[x] & ~visited
        while avail:
            y = (avail & -avail).bit_length() - 1
            avail &= avail - 1
            visited |= 1 << y
            if match_y[y] < 0:
                match_y[y] = x
                match_x[x] = y
                return True, visited
            ok, visited = augment(match_y[y], visited)
            if ok:
                match_y[y] = x
                match_x[x] = y
                return True, visited
            avail &= ~visited
        return False, visited

    for x in range(n):
        if rows[x] == 0:
            return None
        ok, _ = augment(x, 0)
        if not ok:
            return None
    return match_x


def _repair_matching(rows_state: list[int], stored: Sequence[int], n: int) -> Optional[list[int]]:
    """Revalidate a stored matching against shrunken rows, re-augmenting the
    broken columns only."""
    match_x = [int(v) for v in stored]
    match_y = [-1] * n
    broken = []
    for x in range(n):
        y = match_x[x]
        if y >= 0 and (rows_state[x] >> y) & 1 and match_y[y] < 0:
            match_y[y] = x
        else:
            match_x[x] = -1
            broken.append(x)
    if not broken:
        return match_x

    def augment(x: int, visited: int) -> tuple[bool, int]:
        avail = rows_state[x] & ~visited
        while avail:
            y = (avail & -avail).bit_length() - 1
            avail &= avail - 1
            visited |= 1 << y
            if match_y[y] < 0:
                match_y[y] = x
                match_x[x] = y
                return True, visited
            ok, visited = augment(match_y[y], visited)
            if ok:
                match_y[y] = x
                match_x[x] = y
                return True, visited
            avail &= ~visited
        return False, visited

    for x in broken:
        ok, _ = augment(x, 0)
        if not ok:
            return None
    return match_x


def _ck_game_2(g1, g2, c1, c2) -> bool:
    n = g1.n
    alive = [[c1[p] == c2[q] for q in range(n)] for p in range(n)]
    adj1, adj2 = g1.adjacency_bits, g2.adjacency_bits

    def rows_for(p: int, q: int) -> list[int]:
        rows = []
        for x in range(n):
            mask = 0
            for y in range(n):
                if not alive[x][y]:
                    continue
                if (p == x) != (q == y):
                    continue
                if ((adj1[p] >> x) & 1) != ((adj2[q] >> y) & 1):
                    continue
                mask |= 1 << y
            rows.append(mask)
        return rows

    changed = True
    while changed:
        changed = False
        for p in range(n):
            for q in range(n):
                if alive[p][q] and _perfect_matching(rows_for(p, q), n) is None:
                    alive[p][q] = False
                    changed = True
    start = [sum(1 << y for y in range(n) if alive[x][y]) for x in range(n)]
    return _perfect_matching(start, n) is not None


def _ck_game_3(g1, g2, c1, c2) -> bool:
    n = g1.n
    A1 = np.zeros((n, n), dtype=bool)
    for u, v in g1.edges:
        A1[u, v] = A1[v, u] = True
    A2 = np.zeros((n, n), dtype=bool)
    for u, v in g2.edges:
        A2[u, v] = A2[v, u] = True
    colmatch = np.asarray(c1)[:, None] == np.asarray(c2)[None, :]
    eye = np.eye(n, dtype=bool)

    # alive[p0,p1,q0,q1]: the two-pebble position (p0->q0, p1->q1) survives
    alive = (
        colmatch[:, None, :, None]
        & colmatch[None, :, None, :]
        & (eye[:, :, None, None] == eye[None, None, :, :])
        & (A1[:, :, None, None] == A2[None, None, :, :])
    )

    weights = (1 << np.arange(n, dtype=np.uint64))
    rows_np = (alive.astype(np.uint64) * weights[None, None, None, :]).sum(axis=3)
    rows = rows_np.tolist()  # rows[p][x][q] = bitmask over y of alive[p,x,q,y]

    my = np.full((n, n, n, n, n), -1, dtype=np.int8)  # stored matchings
    from collections import deque

    dead: deque = deque()

    def state_rows(p0, p1, q0, q1) -> list[int]:
        rp0, rp1 = rows[p0], rows[p1]
        return [rp0[x][q0] & rp1[x][q1] for x in range(n)]

    def kill(p0, p1, q0, q1):
        alive[p0, p1, q0, q1] = False
        rows[p0][p1][q0] &= ~(1 << q1)
        dead.append((p0, p1, q0, q1))

    coords = np.argwhere(alive)
    for p0, p1, q0, q1 in coords.tolist():
        if not alive[p0, p1, q0, q1]:
            continue
        m = _perfect_matching(state_rows(p0, p1, q0, q1), n)
        if m is None:
            kill(p0, p1, q0, q1)
        else:
            my[p0, p1, q0, q1] = m

    while dead:
        a, b, c, d = dead.popleft()
        # states whose stored matching used the dead entry on either factor
        hits1 = np.argwhere((my[a, :, c, :, b] == d) & alive[a, :, c, :])
        hits2 = np.argwhere((my[:, a, :, c, b] == d) & alive[:, a, :, c])
        for p1, q1 in hits1.tolist():
            if not alive[a, p1, c, q1]:
                continue
            m = _repair_matching(state_rows(a, p1, c, q1), my[a, p1, c, q1], n)
            if m is None:
                kill(a, p1, c, q1)
            else:
                my[a, p1, c, q1] = m
        for p0, q0 in hits2.tolist():
            if not alive[p0, a, q0, c]:
                continue
            m = _repair_matching(state_rows(p0, a, q0, c), my[p0, a, q0, c], n)
            if m is None:
                kill(p0, a, q0, c)
            else:
                my[p0, a, q0, c] = m

    start = [int(sum(1 << y for y in range(n) if alive[x, x, y, y])) for x in range(n)]
    return _perfect_matching(start, n) is not None


def ck_equivalent_game(g1: BaseGraph, g2: BaseGraph, k: int,
                       colors1: Optional[Sequence[int]] = None,
                       colors2: Optional[Sequence[int]] = None) -> bool:
    """Tiny-scale oracle for equivalence in the counting logic with k variables,
    by solving the bijective k-pebble game outright."""
    if k not in (2, 3):
        raise SizeGuardError("the game oracle is implemented for k in {2, 3}")
    if g1.n != g2.n:
        return False
    if g1.n ** (2 * (k - 1)) > CK_STATE_GUARD:
        raise SizeGuardError("position space too large for the game oracle")
    c1 = _norm_colors(g1, colors1)
    c2 = _norm_colors(g2, colors2)
    shared = {c: i for i, c in enumerate(sorted(set(c1) | set(c2)))}
    c1 = [shared[c] for c in c1]
    c2 = [shared[c] for c in c2]
    if k == 2:
        return _ck_game_2(g1, g2, c1, c2)
    return _ck_game_3(g1, g2, c1, c2)


# -- endpoint distances ----------------------------------------------------------


def end_distance_profile(g: BaseGraph) -> Counter:
    """Histogram of shortest distances to a vertex of degree <= 1; defined on
    disjoint unions of paths only."""
    if any(s.kind != "path" for s in classify_linear(g)):
        raise ValueError("profile defined on disjoint unions of paths")
    from collections import deque

    dist = [-1] * g.n
    queue = deque()
    for v in range(g.n):
        if g.degree(v) <= 1:
            dist[v] = 0
            queue.append(v)
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return Counter(dist)
