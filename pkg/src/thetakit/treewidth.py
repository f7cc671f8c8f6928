"""Exact treewidth for small graphs, with witnessing decompositions.

The main solver runs branch-and-bound over elimination orderings, sandwiched
between a degeneracy lower bound and a min-fill upper bound, and returns a
decomposition built from the winning order.  A separate subset dynamic
program recomputes the width from scratch for cross-checking; the two share
no search state.
"""

from __future__ import annotations

from dataclasses import dataclass

from .detectors import CapExceeded, _check_cap
from .graphs import Graph, build_graph, iter_bits

TREEWIDTH_CAP = 32
DP_CAP = 16


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree whose node i carries the vertex set ``bags[i]`` (as a mask)."""

    tree: Graph
    bags: tuple[int, ...]

    def width(self) -> int:
        return max(b.bit_count() for b in self.bags) - 1


def validate_decomposition(g: Graph, d: TreeDecomposition) -> bool:
    """All three decomposition axioms, plus the carrier being a tree."""
    t = d.tree
    if t.n == 0 or len(d.bags) != t.n:
        return False
    if t.m != t.n - 1:
        return False
    seen = 1
    frontier = 1
    while frontier:
        grown = seen
        for v in iter_bits(frontier):
            grown |= t.adj[v]
        frontier = grown & ~seen
        seen = grown
    if seen != t.full_mask:
        return False
    cover = 0
    for b in d.bags:
        if b & ~g.full_mask:
            return False
        cover |= b
    if cover != g.full_mask:
        return False
    for u, v in g.edges():
        pair = (1 << u) | (1 << v)
        if not any(b & pair == pair for b in d.bags):
            return False
    for v in range(g.n):
        nodes = [i for i in range(t.n) if d.bags[i] >> v & 1]
        if not nodes:
            return False
        inside = set()
        stack = [nodes[0]]
        while stack:
            i = stack.pop()
            if i in inside:
                continue
            inside.add(i)
            for j in t.neighbors(i):
                if d.bags[j] >> v & 1:
                    stack.append(j)
        if len(inside) != len(nodes):
            return False
    return True


def _reach(g: Graph, v: int, remaining: int) -> int:
    # Remaining vertices adjacent to v directly or through eliminated ones.
    elim = g.full_mask & ~remaining
    seen = 1 << v
    frontier = g.adj[v]
    out = 0
    while frontier:
        out |= frontier & remaining
        seen |= frontier
        nxt = 0
        for u in iter_bits(frontier & elim):
            nxt |= g.adj[u]
        frontier = nxt & ~seen
    return out & ~(1 << v)


def _degeneracy(g: Graph) -> int:
    remaining = g.full_mask
    best = 0
    while remaining:
        v = min(iter_bits(remaining), key=lambda u: (g.adj[u] & remaining).bit_count())
        best = max(best, (g.adj[v] & remaining).bit_count())
        remaining &= ~(1 << v)
    return best


def _contraction_degeneracy(g: Graph) -> int:
    # Max over contractions of the minimum degree; a treewidth lower bound
    # since minors never increase treewidth.  Min-degree vertex contracted
    # into its least-degree neighbor, ties broken by index.
    adj = list(g.adj)
    remaining = g.full_mask
    best = 0
    while remaining:
        v = min(
            iter_bits(remaining), key=lambda u: ((adj[u] & remaining).bit_count(), u)
        )
        nb = adj[v] & remaining
        best = max(best, nb.bit_count())
        if nb:
            u = min(iter_bits(nb), key=lambda w: ((adj[w] & remaining).bit_count(), w))
            merged = (adj[u] | nb) & ~(1 << u) & ~(1 << v)
            adj[u] = merged
            for w in iter_bits(merged):
                adj[w] = (adj[w] & ~(1 << v)) | (1 << u)
        remaining &= ~(1 << v)
    return best


def _min_fill_order(g: Graph) -> tuple[int, list[int]]:
    adj = list(g.adj)
    remaining = g.full_mask
    order = []
    width = 0
    while remaining:
        choice = None
        for v in iter_bits(remaining):
            nb = adj[v] & remaining
            missing = 0
            for u in iter_bits(nb):
                missing += (nb & ~adj[u] & ~(1 << u)).bit_count()
            key = (missing // 2, nb.bit_count(), v)
            if choice is None or key < choice:
                choice = key
                pick = v
        nb = adj[pick] & remaining
        width = max(width, nb.bit_count())
        for u in iter_bits(nb):
            adj[u] |= nb & ~(1 << u)
        remaining &= ~(1 << pick)
        order.append(pick)
    return width, order


def _preprocess(g: Graph, low: int) -> tuple[list[int], int, list[int], int]:
    """Shrink g by safe eliminations before the search.

    Applies the standard simplicial rule (eliminate a vertex whose live
    neighborhood is a clique, raising the lower bound to its degree) and the
    almost-simplicial rule (eliminate a vertex whose neighborhood minus one
    vertex is a clique, provided its degree is at most the current lower
    bound), filling the missing pairs exactly as elimination would.  Both
    preserve max(tw(reduced), low) = tw(g), so the eliminated vertices form
    a prefix of an optimal elimination order of g.  Returns that prefix, the
    mask of surviving vertices, their filled adjacency, and the new bound.
    """
    adj = list(g.adj)
    alive = g.full_mask
    prefix: list[int] = []
    changed = True
    while changed and alive:
        changed = False
        for v in iter_bits(alive):
            nb = adj[v] & alive
            missing = []
            for u in iter_bits(nb):
                for w in iter_bits(nb & ~adj[u] & ~((1 << (u + 1)) - 1)):
                    missing.append((u, w))
            d = nb.bit_count()
            if not missing:
                low = max(low, d)
            elif d <= low and set.intersection(*(set(p) for p in missing)):
                # All missing pairs share a vertex, so the rest is a clique.
                for u, w in missing:
                    adj[u] |= 1 << w
                    adj[w] |= 1 << u
            else:
                continue
            alive &= ~(1 << v)
            prefix.append(v)
            changed = True
    return prefix, alive, adj, low


def _decide(g: Graph, k: int) -> list[int] | None:
    """An elimination order of back-degree at most k, or None."""
    failed: set[int] = set()
    order: list[int] = []

    def rec(remaining: int) -> bool:
        if remaining.bit_count() <= k + 1:
            order.extend(iter_bits(remaining))
            return True
        if remaining in failed:
            return False
        reach = {v: _reach(g, v, remaining) for v in iter_bits(remaining)}
        cands = []
        for v, rs in reach.items():
            d = rs.bit_count()
            if d > k:
                continue
            # Eliminating a vertex whose fill neighborhood is a clique is
            # always safe, so commit to it without trying alternatives.
            if all(rs & ~(1 << u) & ~reach[u] == 0 for u in iter_bits(rs)):
                order.append(v)
                if rec(remaining & ~(1 << v)):
                    return True
                order.pop()
                failed.add(remaining)
                return False
            cands.append((d, v))
        for _, v in sorted(cands):
            order.append(v)
            if rec(remaining & ~(1 << v)):
                return True
            order.pop()
        failed.add(remaining)
        return False

    return order if rec(g.full_mask) else None


def _decomposition_from_order(g: Graph, order: list[int]) -> TreeDecomposition:
    pos = {v: i for i, v in enumerate(order)}
    remaining = g.full_mask
    bags = []
    reaches = []
    for v in order:
        rs = _reach(g, v, remaining)
        bags.append(rs | (1 << v))
        reaches.append(rs)
        remaining &= ~(1 << v)
    edges = []
    for i, rs in enumerate(reaches):
        if rs:
            edges.append((i, min(pos[u] for u in iter_bits(rs))))
        elif i + 1 < len(order):
            edges.append((i, i + 1))
    return TreeDecomposition(build_graph(len(order), edges), tuple(bags))


def treewidth_exact(g: Graph, cap: int | None = TREEWIDTH_CAP) -> tuple[int, TreeDecomposition]:
    """Exact treewidth and a validating decomposition witnessing it."""
    _check_cap("treewidth_exact", g.n, cap)
    if g.n == 0:
        return -1, TreeDecomposition(build_graph(1, []), (0,))
    low = max(_degeneracy(g), _contraction_degeneracy(g))
    prefix, alive, fadj, low = _preprocess(g, low)
    if alive:
        keep = list(iter_bits(alive))
        back = {v: i for i, v in enumerate(keep)}
        core = build_graph(
            len(keep),
            [
                (back[u], back[v])
                for u in keep
                for v in iter_bits(fadj[u] & alive)
                if u < v
            ],
        )
        high, order = _min_fill_order(core)
        for k in range(low, high):
            better = _decide(core, k)
            if better is not None:
                order = better
                break
        full = prefix + [keep[i] for i in order]
    else:
        full = prefix
    dec = _decomposition_from_order(g, full)
    return dec.width(), dec


def treewidth_dp(g: Graph, cap: int | None = DP_CAP) -> int:
    """Width-only subset dynamic program, independent of the main solver."""
    _check_cap("treewidth_dp", g.n, cap)
    if g.n == 0:
        return -1

    def back_degree(inside: int, v: int) -> int:
        # Vertices outside inside+{v} adjacent to v or joined through inside.
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            u = stack.pop()
            for w in iter_bits(g.adj[u] & ~seen):
                seen |= 1 << w
                if inside >> w & 1:
                    stack.append(w)
                else:
                    out += 1
        return out

    best = [0] * (1 << g.n)
    best[0] = -1
    masks = sorted(range(1, 1 << g.n), key=lambda m: m.bit_count())
    for s in masks:
        val = None
        for v in iter_bits(s):
            rest = s & ~(1 << v)
            cand = max(best[rest], back_degree(rest, v))
            if val is None or cand < val:
                val = cand
        best[s] = val
    return best[g.full_mask]
