"""Maximum families of internally disjoint induced paths between vertex pairs.

The packing here is over induced paths, which is what separates this
computation from plain Menger flow: an optimal flow routes through paths
with chords, so the flow value is only an upper bound and is used purely to
prune and certify the exhaustive search.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .detectors import _iter_induced_paths
from .graphs import Graph, PathFamily, iter_bits, mask_of

PACKING_CAP = 16
ENUMERATION_BUDGET = 20000


@dataclass(frozen=True)
class PathPacking:
    """Best family found for one pair, with exactness and an upper bound.

    Within the exhaustive cap the search is exact, so ``exact`` is true and
    ``upper_bound == count``.  Beyond the cap the family is a greedy lower
    bound over a budgeted enumeration and ``upper_bound`` comes from the
    flow relaxation; ``exact`` is still set when the two meet.  Unpacking
    yields (count, family).
    """

    count: int
    family: PathFamily
    exact: bool
    upper_bound: int

    def __iter__(self):
        yield self.count
        yield self.family


@dataclass(frozen=True)
class SeparabilityReport:
    """Maximum family size over all nonadjacent pairs, with its witness.

    ``vacuous`` marks graphs without a nonadjacent pair, which are declared
    separable for every threshold; ``pair`` and ``witness`` are then absent.
    """

    lambda_star: int
    pair: tuple[int, int] | None
    witness: PathFamily | None
    exact: bool
    vacuous: bool

    def is_separable(self, lam: int) -> bool:
        if lam < 1:
            raise ValueError("separability threshold must be positive")
        return self.lambda_star < lam


def _vertex_flow(g: Graph, x: int, y: int) -> int:
    # Menger value with unit interior capacities; an upper bound for the
    # induced packing because every induced family is also a flow.
    arcs: dict[tuple, dict[tuple, int]] = {}

    def add(a, b):
        arcs.setdefault(a, {})[b] = 1
        arcs.setdefault(b, {}).setdefault(a, 0)

    for v in iter_bits(g.adj[x] & ~(1 << y)):
        add("S", (v, 0))
    for v in iter_bits(g.adj[y] & ~(1 << x)):
        add((v, 1), "T")
    ends = (1 << x) | (1 << y)
    for v in range(g.n):
        if not ends >> v & 1:
            add((v, 0), (v, 1))
    for u, v in g.edges():
        if not ends & ((1 << u) | (1 << v)):
            add((u, 1), (v, 0))
            add((v, 1), (u, 0))
    flow = 0
    while True:
        prev = {"S": None}
        queue = deque(["S"])
        while queue and "T" not in prev:
            a = queue.popleft()
            for b, c in arcs.get(a, {}).items():
                if c > 0 and b not in prev:
                    prev[b] = a
                    queue.append(b)
        if "T" not in prev:
            return flow
        b = "T"
        while prev[b] is not None:
            a = prev[b]
            arcs[a][b] -= 1
            arcs[b][a] += 1
            b = a
        flow += 1


def max_internally_disjoint_paths(
    g: Graph, x: int, y: int, cap: int | None = PACKING_CAP
) -> PathPacking:
    """The largest family of pairwise internally disjoint induced x-y paths.

    Exhaustive within ``cap`` vertices: all induced paths are enumerated and
    packed by branch and bound, stopping early once the flow bound is met.
    Larger graphs get a greedy family and the flow value as separate bounds.
    """
    if not (0 <= x < g.n and 0 <= y < g.n):
        raise ValueError("endpoints must be vertices of the graph")
    if x == y:
        raise ValueError("endpoints must differ")
    if g.has_edge(x, y):
        raise ValueError("endpoints must be nonadjacent")
    ub = _vertex_flow(g, x, y)
    if ub == 0:
        return PathPacking(0, PathFamily(x, y, ()), True, 0)
    allowed = g.full_mask & ~(1 << x) & ~(1 << y)

    if cap is not None and g.n > cap:
        used = 0
        greedy: list[tuple[int, ...]] = []
        for i, p in enumerate(_iter_induced_paths(g, x, y, allowed)):
            inner = mask_of(p[1:-1])
            if not inner & used:
                used |= inner
                greedy.append(p)
                if len(greedy) == ub:
                    break
            if i >= ENUMERATION_BUDGET:
                break
        fam = PathFamily(x, y, tuple(greedy))
        return PathPacking(len(greedy), fam, len(greedy) == ub, ub)

    paths = list(_iter_induced_paths(g, x, y, allowed))
    interiors = [mask_of(p[1:-1]) for p in paths]
    best: list[int] = []

    def pack(i: int, used: int, chosen: list[int]) -> bool:
        nonlocal best
        if len(chosen) > len(best):
            best = chosen.copy()
            if len(best) == ub:
                return True
        if i == len(paths) or len(chosen) + len(paths) - i <= len(best):
            return False
        if not interiors[i] & used:
            if pack(i + 1, used | interiors[i], chosen + [i]):
                return True
        return pack(i + 1, used, chosen)

    pack(0, 0, [])
    fam = PathFamily(x, y, tuple(paths[i] for i in best))
    return PathPacking(len(best), fam, True, len(best))


def separability(g: Graph, cap: int | None = PACKING_CAP) -> SeparabilityReport:
    """lambda_star over all nonadjacent pairs, scanned in lexicographic order.

    A pair whose flow bound cannot beat the running maximum is skipped, which
    never changes the reported argmax because ties keep the earliest pair.
    """
    best_count = 0
    best_pair = None
    best_witness = None
    exact = True
    found_pair = False
    for x in range(g.n):
        for y in range(x + 1, g.n):
            if g.has_edge(x, y):
                continue
            found_pair = True
            if best_pair is not None and _vertex_flow(g, x, y) <= best_count:
                continue
            r = max_internally_disjoint_paths(g, x, y, cap)
            exact = exact and r.exact
            if best_pair is None or r.count > best_count:
                best_count = r.count
                best_pair = (x, y)
                best_witness = r.family
    return SeparabilityReport(
        lambda_star=best_count,
        pair=best_pair,
        witness=best_witness,
        exact=exact,
        vacuous=not found_pair,
    )
