"""Exact desk-scale searches for the induced substructures the library names.

Every search is deterministic: candidate vertices are tried in ascending
order, so reruns return the same witness.  "None" always means exhaustion of
the whole search space within the declared caps; when a host is too large for
the exhaustive guarantee the search raises :class:`CapExceeded` instead of
silently degrading.

Witnesses are validated by standalone functions that recheck definitions from
scratch; the searches never call them and the validators never reuse search
state.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .generators import complete_bipartite, cycle_graph, line_graph, prism_graph, subdivide, wall
from .graphs import (
    Graph,
    PathFamily,
    are_anticomplete,
    is_induced_path,
    is_stable_set,
    iter_bits,
    mask_of,
    neighborhood_mask,
    path_family_violation,
)

THETA_PRISM_CAP = 64
WALL_LINE_CAP = 32
CONSTELLATION_CAP = 24
TREE_SEARCH_CAP = 32


class CapExceeded(RuntimeError):
    """Raised when an exhaustive search would exceed its declared cap."""

    def __init__(self, op: str, size: int, cap: int):
        super().__init__(f"{op}: instance size {size} exceeds the cap {cap}")
        self.op = op
        self.size = size
        self.cap = cap


def _check_cap(op: str, size: int, cap: int | None) -> None:
    if cap is not None and size > cap:
        raise CapExceeded(op, size, cap)


@dataclass(frozen=True)
class Embedding:
    """A map from pattern vertices to host vertices, carrying its pattern.

    ``phi[i]`` is the host vertex for pattern vertex i.  Validity means phi is
    injective and the image induces an exact copy: pattern edges map to host
    edges and pattern non-edges to host non-edges.
    """

    pattern: Graph
    phi: tuple[int, ...]


def embedding_violation(host: Graph, emb: Embedding) -> str | None:
    """The first broken embedding invariant, or None if the embedding is valid."""
    pat, phi = emb.pattern, emb.phi
    if len(phi) != pat.n:
        return "map does not cover the pattern's vertices"
    if len(set(phi)) != len(phi):
        return "map is not injective"
    if any(not 0 <= v < host.n for v in phi):
        return "map leaves the host's vertex range"
    for i in range(pat.n):
        for j in range(i + 1, pat.n):
            if pat.has_edge(i, j) != host.has_edge(phi[i], phi[j]):
                return f"pattern pair ({i}, {j}) is not reproduced exactly"
    return None


def is_embedding(host: Graph, emb: Embedding) -> bool:
    return embedding_violation(host, emb) is None


def find_induced(host: Graph, pattern: Graph, cap: int | None = None) -> Embedding | None:
    """The lexicographically least induced embedding of pattern in host.

    Pattern vertices are assigned in index order, host candidates tried
    ascending, so the returned ``phi`` is minimal in tuple order over all
    valid embeddings.  Backtracking with degree pruning and forward
    neighborhood filtering; None is exhaustive.
    """
    _check_cap("find_induced", host.n, cap)
    p, n = pattern.n, host.n
    if p > n:
        return None
    if p == 0:
        return Embedding(pattern, ())
    full = host.full_mask
    # A host vertex can play pattern vertex k only with at least k's degree.
    host_deg = [host.adj[v].bit_count() for v in range(n)]
    base = [
        mask_of(v for v in range(n) if host_deg[v] >= pattern.adj[k].bit_count())
        for k in range(p)
    ]
    phi: list[int] = []

    def extend(used: int) -> bool:
        k = len(phi)
        cand = base[k] & ~used
        for j, w in enumerate(phi):
            if pattern.has_edge(j, k):
                cand &= host.adj[w]
            else:
                cand &= full & ~host.adj[w]
            if not cand:
                return False
        for v in iter_bits(cand):
            phi.append(v)
            if len(phi) == p or extend(used | (1 << v)):
                return True
            phi.pop()
        return False

    if extend(0):
        return Embedding(pattern, tuple(phi))
    return None


def _iter_induced_paths(g: Graph, src: int, dst: int, allowed: int):
    """Yield every induced src-dst path whose interior lies inside ``allowed``.

    Paths come out in depth-first order with candidates ascending, completing
    at dst before extending.  A vertex adjacent to dst can only be the last
    interior vertex, which prunes every doomed branch immediately.
    """
    adj = g.adj
    dbit = 1 << dst

    def extend(last: int, path: tuple[int, ...], banned: int):
        if adj[last] & dbit:
            yield path + (dst,)
            return
        for c in iter_bits(adj[last] & allowed & ~banned):
            yield from extend(c, path + (c,), banned | adj[last] | (1 << c))

    yield from extend(src, (src,), 1 << src)


@dataclass(frozen=True)
class ThetaWitness:
    """Two nonadjacent branch vertices joined by three anticomplete paths."""

    x: int
    y: int
    paths: tuple[tuple[int, ...], ...]


def theta_witness_violation(g: Graph, w: ThetaWitness) -> str | None:
    """The first broken theta invariant, or None if the witness is valid."""
    if len(w.paths) != 3:
        return "a theta needs exactly three paths"
    bad = path_family_violation(g, PathFamily(w.x, w.y, w.paths))
    if bad is not None:
        return bad
    interiors = [mask_of(p[1:-1]) for p in w.paths]
    for i in range(3):
        if not interiors[i]:
            return f"path {i} has no interior, so its length is below 2"
        for j in range(i + 1, 3):
            if not are_anticomplete(g, interiors[i], interiors[j]):
                return f"interiors of paths {i} and {j} see each other"
    return None


def is_theta_witness(g: Graph, w: ThetaWitness) -> bool:
    return theta_witness_violation(g, w) is None


def find_theta(g: Graph, cap: int | None = THETA_PRISM_CAP) -> ThetaWitness | None:
    """Search for a theta: branch pairs ascending, then paths depth-first.

    Both branch vertices need host degree at least 3, and each later path is
    restricted to vertices anticomplete to the interiors already chosen, so
    any completed triple is a theta by construction.  None is exhaustive.
    """
    _check_cap("find_theta", g.n, cap)
    full = g.full_mask
    degs = [g.adj[v].bit_count() for v in range(g.n)]
    for x in range(g.n):
        if degs[x] < 3:
            continue
        for y in range(x + 1, g.n):
            if degs[y] < 3 or g.has_edge(x, y):
                continue
            ends = (1 << x) | (1 << y)
            allowed1 = full & ~ends
            for p1 in _iter_induced_paths(g, x, y, allowed1):
                i1 = mask_of(p1[1:-1])
                allowed2 = allowed1 & ~i1 & ~neighborhood_mask(g, i1)
                for p2 in _iter_induced_paths(g, x, y, allowed2):
                    i2 = mask_of(p2[1:-1])
                    allowed3 = allowed2 & ~i2 & ~neighborhood_mask(g, i2)
                    for p3 in _iter_induced_paths(g, x, y, allowed3):
                        return ThetaWitness(x, y, (p1, p2, p3))
    return None


def _has_triangle(g: Graph) -> bool:
    return any(
        g.adj[u] & g.adj[v]
        for u in range(g.n)
        for v in iter_bits(g.adj[u] >> (u + 1) << (u + 1))
    )


def find_prism(g: Graph, cap: int | None = THETA_PRISM_CAP) -> Embedding | None:
    """Search for an induced prism: line graphs of thetas, smallest first.

    Patterns prism_graph(l1, l2, l3) are tried in ascending total size with
    l1 <= l2 <= l3 (covering every prism up to isomorphism) and matched with
    find_induced, so the result is an exact induced embedding.
    """
    _check_cap("find_prism", g.n, cap)
    if not _has_triangle(g):
        return None
    for total in range(6, g.n + 1):
        for l1 in range(2, total // 3 + 1):
            for l2 in range(l1, (total - l1) // 2 + 1):
                l3 = total - l1 - l2
                emb = find_induced(g, prism_graph(l1, l2, l3))
                if emb is not None:
                    return emb
    return None


def clique_number(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Exact clique number with the first maximum clique in ascending order."""
    best: tuple[int, ...] = ()

    def expand(cur: list[int], cand: int) -> None:
        nonlocal best
        if len(cur) + cand.bit_count() <= len(best):
            return
        if not cand:
            if len(cur) > len(best):
                best = tuple(cur)
            return
        while cand:
            if len(cur) + cand.bit_count() <= len(best):
                return
            v = cand & -cand
            cand ^= v
            v = v.bit_length() - 1
            cur.append(v)
            expand(cur, cand & g.adj[v])
            cur.pop()

    expand([], g.full_mask)
    return len(best), best


def find_biclique(g: Graph, s: int, cap: int | None = THETA_PRISM_CAP) -> Embedding | None:
    """Search for an induced K_{s,s}: a stable side, then a stable common side.

    The first side is grown over stable sets in ascending order; the second
    side must be a stable s-subset of the first side's common neighborhood,
    which forces completeness between sides and hence an exact induced copy.
    """
    if s < 1:
        raise ValueError("side size must be positive")
    _check_cap("find_biclique", g.n, cap)
    full = g.full_mask

    def stable_subset(region: int, need: int, acc: list[int]) -> bool:
        if need == 0:
            return True
        if region.bit_count() < need:
            return False
        while region:
            v = region & -region
            region ^= v
            if region.bit_count() + 1 < need:
                return False
            v = v.bit_length() - 1
            acc.append(v)
            if stable_subset(region & ~g.adj[v], need - 1, acc):
                return True
            acc.pop()
        return False

    def grow(a: list[int], avail: int, common: int) -> Embedding | None:
        if len(a) == s:
            b: list[int] = []
            if stable_subset(common, s, b):
                return Embedding(complete_bipartite(s, s), tuple(a) + tuple(b))
            return None
        while avail:
            v = avail & -avail
            avail ^= v
            v = v.bit_length() - 1
            nxt_common = common & g.adj[v]
            if nxt_common.bit_count() < s:
                continue
            a.append(v)
            got = grow(a, avail & ~g.adj[v], nxt_common)
            if got is not None:
                return got
            a.pop()
        return None

    return grow([], full, full)


@dataclass(frozen=True)
class ConstellationWitness:
    """Stable centers plus pairwise anticomplete path components, all covered."""

    centers: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]


def constellation_witness_violation(
    g: Graph, w: ConstellationWitness, s: int | None = None, l: int | None = None
) -> str | None:
    """The first broken constellation invariant, or None if the witness is valid."""
    if s is not None and len(w.centers) != s:
        return f"needs exactly {s} centers"
    if l is not None and len(w.paths) != l:
        return f"needs exactly {l} path components"
    cmask = mask_of(w.centers)
    if len(set(w.centers)) != len(w.centers):
        return "centers repeat"
    if not is_stable_set(g, cmask):
        return "centers are not stable"
    masks = []
    for i, p in enumerate(w.paths):
        if not is_induced_path(g, p):
            return f"component {i} is not an induced path"
        m = mask_of(p)
        if m & cmask:
            return f"component {i} meets the centers"
        masks.append(m)
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if not are_anticomplete(g, masks[i], masks[j]):
                return f"components {i} and {j} are not anticomplete"
    for c in w.centers:
        for i, m in enumerate(masks):
            if not g.adj[c] & m:
                return f"center {c} has no neighbor in component {i}"
    return None


def find_constellation(
    g: Graph, s: int, l: int, cap: int | None = CONSTELLATION_CAP
) -> ConstellationWitness | None:
    """Exhaustive search for an induced (s, l)-constellation.

    Stable center sets are tried in ascending order; component paths are
    chosen with strictly increasing minimum vertex from a region that shrinks
    by each chosen path's closed neighborhood, which makes the components
    pairwise anticomplete and the search free of permuted duplicates.
    """
    if s < 1 or l < 1:
        raise ValueError("need at least one center and one component")
    _check_cap("find_constellation", g.n, cap)
    full = g.full_mask

    def paths_in(region: int):
        # Each induced path once, from its smaller endpoint; singletons too.
        def extend(last: int, path: tuple[int, ...], banned: int):
            if len(path) == 1 or path[0] < path[-1]:
                yield path
            for c in iter_bits(g.adj[last] & region & ~banned):
                yield from extend(c, path + (c,), banned | g.adj[last] | (1 << c))

        for v in iter_bits(region):
            yield from extend(v, (v,), 1 << v)

    def covers(path_mask: int, centers: tuple[int, ...]) -> bool:
        return all(g.adj[c] & path_mask for c in centers)

    def pick_paths(centers, region: int, chosen: list[tuple[int, ...]], floor: int):
        if len(chosen) == l:
            return ConstellationWitness(centers, tuple(chosen))
        for p in paths_in(region & ~((1 << (floor + 1)) - 1)):
            pm = mask_of(p)
            if not covers(pm, centers):
                continue
            chosen.append(p)
            got = pick_paths(centers, region & ~pm & ~neighborhood_mask(g, pm), chosen, min(p))
            if got is not None:
                return got
            chosen.pop()
        return None

    def pick_centers(acc: list[int], avail: int):
        if len(acc) == s:
            centers = tuple(acc)
            return pick_paths(centers, full & ~mask_of(centers), [], -1)
        while avail:
            v = avail & -avail
            avail ^= v
            v = v.bit_length() - 1
            acc.append(v)
            got = pick_centers(acc, avail & ~g.adj[v])
            if got is not None:
                return got
            acc.pop()
        return None

    return pick_centers([], full)


def three_in_a_tree(
    g: Graph, z, cap: int | None = TREE_SEARCH_CAP
) -> tuple[int, ...] | None:
    """An induced tree of g containing at least three vertices of z, or None.

    z must be a stable set with at least three vertices.  A minimal such tree
    is an induced path through three z-vertices or a spider: a center with
    three paths to z-vertices sharing only the center.  Both shapes are
    searched exhaustively, triples of z in ascending order.
    """
    zs = tuple(sorted(set(z)))
    if len(zs) < 3:
        raise ValueError("needs at least three vertices")
    if not is_stable_set(g, mask_of(zs)):
        raise ValueError("the set must be stable")
    _check_cap("three_in_a_tree", g.n, cap)
    full = g.full_mask
    for a, b, c in itertools.combinations(zs, 3):
        tri = mask_of((a, b, c))
        for u, w, mid in ((a, b, c), (a, c, b), (b, c, a)):
            allowed = full & ~(1 << u) & ~(1 << w)
            for p in _iter_induced_paths(g, u, w, allowed):
                if mask_of(p) >> mid & 1:
                    return tuple(sorted(p))
        base = full & ~tri
        for v in iter_bits(base):
            if g.adj[v].bit_count() < 3:
                continue
            allowed0 = base & ~(1 << v)
            for la in _iter_induced_paths(g, v, a, allowed0):
                arest = mask_of(la) & ~(1 << v)
                ablock = arest | neighborhood_mask(g, arest)
                if ablock & ((1 << b) | (1 << c)):
                    continue
                for lb in _iter_induced_paths(g, v, b, allowed0 & ~ablock):
                    brest = mask_of(lb) & ~(1 << v)
                    bblock = brest | neighborhood_mask(g, brest)
                    if bblock >> c & 1:
                        continue
                    for lc in _iter_induced_paths(g, v, c, allowed0 & ~ablock & ~bblock):
                        return tuple(sorted({v, *la, *lb, *lc}))
    return None


def is_constricted(g: Graph, z, cap: int | None = TREE_SEARCH_CAP) -> bool:
    """True iff no induced tree of g contains three vertices of the stable set z."""
    return three_in_a_tree(g, z, cap) is None


@dataclass(frozen=True)
class WallLineReport:
    """Outcome of the scoped search for line graphs of wall subdivisions.

    ``excluded`` is meaningful relative to the scope: when ``partial`` is
    true the pattern budget ran out before every candidate subdivision was
    tried, so ``excluded=True`` only covers the ``patterns_tried`` listed.
    """

    excluded: bool
    r: int
    host_n: int
    patterns_tried: int
    partial: bool
    reason: str
    embedding: Embedding | None = None


def _chains(w: Graph) -> list[list[tuple[int, int]]]:
    # Maximal edge runs whose interior vertices have degree 2, between
    # branch vertices (degree >= 3); assumes every run ends at branch vertices.
    branch = [v for v in range(w.n) if w.degree(v) >= 3]
    chains = []
    seen = set()
    for v in branch:
        for u in w.neighbors(v):
            if (v, u) in seen:
                continue
            run = [(v, u)]
            prev, cur = v, u
            while w.degree(cur) == 2:
                nxt = next(x for x in w.neighbors(cur) if x != prev)
                run.append((cur, nxt))
                prev, cur = cur, nxt
            seen.add((v, u))
            seen.add((cur, prev))
            key = tuple(sorted((min(a, b), max(a, b)) for a, b in run))
            if key not in {tuple(sorted((min(a, b), max(a, b)) for a, b in r)) for r in chains}:
                chains.append(run)
    return chains


def excludes_wall_line_graphs(
    g: Graph,
    r: int,
    cap: int | None = WALL_LINE_CAP,
    pattern_budget: int = 2000,
) -> WallLineReport:
    """Scoped test that no line graph of a subdivision of wall(r) embeds in g.

    Candidate subdivisions are enumerated by how many extra vertices each
    topological chain of the wall receives (placement within a chain does not
    change the isomorphism type), ascending by total, and their line graphs
    are matched with find_induced.  The scope ends when patterns outgrow the
    host; if the pattern budget runs out first the report is flagged partial.
    """
    if r < 1:
        raise ValueError("wall size must be positive")
    _check_cap("excludes_wall_line_graphs", g.n, cap)
    if r >= 3 and not _has_triangle(g):
        # wall(r) has branch vertices only from r = 3 on; each one puts a
        # triangle into every subdivision's line graph.
        return WallLineReport(
            excluded=True, r=r, host_n=g.n, patterns_tried=0, partial=False,
            reason="host is triangle-free but every such line graph has triangles",
        )
    tried = 0
    if r <= 2:
        # Subdivided 6-cycles have cycle line graphs: search induced long cycles.
        for k in range(6, g.n + 1):
            if tried >= pattern_budget:
                return WallLineReport(
                    excluded=True, r=r, host_n=g.n, patterns_tried=tried,
                    partial=True, reason="pattern budget exhausted",
                )
            tried += 1
            emb = find_induced(g, cycle_graph(k))
            if emb is not None:
                return WallLineReport(
                    excluded=False, r=r, host_n=g.n, patterns_tried=tried,
                    partial=False, reason=f"induced {k}-cycle found", embedding=emb,
                )
        return WallLineReport(
            excluded=True, r=r, host_n=g.n, patterns_tried=tried, partial=False,
            reason="all pattern sizes up to the host size were tried",
        )
    w = wall(r)
    chains = _chains(w)
    edge_index = {e: i for i, e in enumerate(w.edges())}
    room = g.n - w.m
    if room < 0:
        return WallLineReport(
            excluded=True, r=r, host_n=g.n, patterns_tried=0, partial=False,
            reason="host is smaller than every pattern",
        )
    for extra in range(0, max(room, 0) + 1):
        for split in itertools.combinations(range(extra + len(chains) - 1), len(chains) - 1):
            if tried >= pattern_budget:
                return WallLineReport(
                    excluded=True, r=r, host_n=g.n, patterns_tried=tried,
                    partial=True, reason="pattern budget exhausted",
                )
            tried += 1
            bounds = (-1,) + split + (extra + len(chains) - 1,)
            per_chain = [bounds[i + 1] - bounds[i] - 1 for i in range(len(chains))]
            counts = [0] * w.m
            for chain, k in zip(chains, per_chain):
                u, v = chain[0]
                counts[edge_index[(min(u, v), max(u, v))]] = k
            emb = find_induced(g, line_graph(subdivide(w, counts)))
            if emb is not None:
                return WallLineReport(
                    excluded=False, r=r, host_n=g.n, patterns_tried=tried,
                    partial=False,
                    reason=f"line graph of a subdivision with {extra} extra vertices found",
                    embedding=emb,
                )
    return WallLineReport(
        excluded=True, r=r, host_n=g.n, patterns_tried=tried, partial=False,
        reason="all subdivision profiles with patterns fitting the host were tried",
    )


def max_path_fan(g: Graph, y: int, z) -> int:
    """Maximum number of y-to-z paths pairwise disjoint except at y.

    Paths are plain (not necessarily induced) and must end at distinct
    vertices of z, which disjointness outside y already forces.  Computed as
    a unit-capacity flow with split vertices.
    """
    zs = sorted(set(z))
    if y in zs:
        raise ValueError("the hub must lie outside the target set")
    if not zs:
        return 0
    # Node ids: y -> 'S', sink 'T', (v, 0) entry and (v, 1) exit for v != y.
    cap: dict[tuple, dict[tuple, int]] = {}

    def add(u, v, c):
        cap.setdefault(u, {})[v] = cap.setdefault(u, {}).get(v, 0) + c
        cap.setdefault(v, {}).setdefault(u, 0)

    for v in range(g.n):
        if v != y:
            add((v, 0), (v, 1), 1)
    for u, v in g.edges():
        if u == y:
            add("S", (v, 0), 1)
        elif v == y:
            add("S", (u, 0), 1)
        else:
            add((u, 1), (v, 0), 1)
            add((v, 1), (u, 0), 1)
    for t in zs:
        # Leaving from the exit copy makes a terminating path consume the
        # vertex, so no other path may reuse it as an interior vertex.
        add((t, 1), "T", 1)

    flow = 0
    while True:
        parent = {"S": None}
        queue = ["S"]
        while queue and "T" not in parent:
            u = queue.pop(0)
            for v, c in cap.get(u, {}).items():
                if c > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if "T" not in parent:
            return flow
        v = "T"
        while parent[v] is not None:
            u = parent[v]
            cap[u][v] -= 1
            cap[v][u] += 1
            v = u
        flow += 1
