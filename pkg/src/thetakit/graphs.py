"""Immutable bitmask graphs and the small certificates the rest of the package passes around.

Vertices are always ``0..n-1``.  Adjacency is stored as a tuple of Python ints
used as bitsets, so neighborhood algebra (intersection, anticompleteness,
candidate pruning) is a single integer operation even on graphs with a few
thousand vertices.

Determinism contract: every function that returns vertices returns them in
ascending order, and every search elsewhere in the package iterates candidate
vertices ascending.  Re-running any pipeline on the same input gives the same
certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


def mask_of(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex ids into a bitmask."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _as_mask(vertices: int | Iterable[int]) -> int:
    # Integers are already masks; anything else is a collection of vertex ids.
    if isinstance(vertices, int):
        return vertices
    return mask_of(vertices)


class Graph:
    """An undirected graph on vertices ``0..n-1`` with bitmask adjacency.

    Instances are immutable by convention and hashable.  Equality is
    label-sensitive: two graphs compare equal iff they have the same vertex
    count and identical adjacency, not merely isomorphic.
    """

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: tuple[int, ...]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(adj) != n:
            raise ValueError("adjacency tuple length must equal n")
        full = (1 << n) - 1
        for v, m in enumerate(adj):
            if m & ~full:
                raise ValueError(f"adjacency of {v} mentions vertices >= {n}")
            if m >> v & 1:
                raise ValueError(f"self-loop at {v}")
        for v, m in enumerate(adj):
            for u in iter_bits(m):
                if not adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        self.n = n
        self.adj = tuple(adj)
        self._hash = None

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        out = []
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1) << (u + 1)
            for v in iter_bits(rest):
                out.append((u, v))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Digraph:
    """A directed graph on ``0..n-1`` storing out-neighbor bitmasks.

    Antiparallel arc pairs are allowed, self-loops are not.
    """

    __slots__ = ("n", "out")

    def __init__(self, n: int, out: tuple[int, ...]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(out) != n:
            raise ValueError("out-neighbor tuple length must equal n")
        full = (1 << n) - 1
        for v, m in enumerate(out):
            if m & ~full:
                raise ValueError(f"arcs from {v} mention vertices >= {n}")
            if m >> v & 1:
                raise ValueError(f"self-loop at {v}")
        self.n = n
        self.out = tuple(out)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def out_degree(self, v: int) -> int:
        return self.out[v].bit_count()

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.out[u])]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.out == other.out

    def __repr__(self) -> str:
        m = sum(a.bit_count() for a in self.out)
        return f"Digraph(n={self.n}, arcs={m})"


def _trusted_graph(n: int, adj: tuple[int, ...]) -> Graph:
    # Fast path for builders whose output is symmetric and loop-free by
    # construction; the public Graph constructor re-validates everything.
    g = object.__new__(Graph)
    g.n = n
    g.adj = adj
    g._hash = None
    return g


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a Graph from an edge list, rejecting loops and out-of-range ids."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return _trusted_graph(n, tuple(adj))


def build_digraph(n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
    out = [0] * n
    for u, v in arcs:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at {u}")
        out[u] |= 1 << v
    return Digraph(n, tuple(out))


def relabel(g: Graph, perm: Iterable[int]) -> Graph:
    """Apply a permutation (``perm[old] = new``) to the vertex labels."""
    perm = list(perm)
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm is not a permutation of the vertex set")
    adj = [0] * g.n
    for v in range(g.n):
        m = 0
        for u in iter_bits(g.adj[v]):
            m |= 1 << perm[u]
        adj[perm[v]] = m
    return Graph(g.n, tuple(adj))


def induced_subgraph(g: Graph, vertices: int | Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on a vertex set, plus the new-index -> old-id mapping.

    The kept vertices are renumbered ascending, so the mapping tuple is sorted.
    """
    keep = _as_mask(vertices)
    if keep & ~g.full_mask:
        raise ValueError("vertex set mentions ids outside the graph")
    old = list(iter_bits(keep))
    index = {v: i for i, v in enumerate(old)}
    adj = []
    for v in old:
        m = 0
        for u in iter_bits(g.adj[v] & keep):
            m |= 1 << index[u]
        adj.append(m)
    return Graph(len(old), tuple(adj)), tuple(old)


def neighborhood_mask(g: Graph, vertices: int | Iterable[int]) -> int:
    """Open neighborhood: vertices outside the set with a neighbor inside it."""
    s = _as_mask(vertices)
    m = 0
    for v in iter_bits(s):
        m |= g.adj[v]
    return m & ~s


def is_stable_set(g: Graph, vertices: int | Iterable[int]) -> bool:
    s = _as_mask(vertices)
    return all(g.adj[v] & s == 0 for v in iter_bits(s))


def is_clique(g: Graph, vertices: int | Iterable[int]) -> bool:
    s = _as_mask(vertices)
    return all(s & ~g.adj[v] == 1 << v for v in iter_bits(s))


def are_anticomplete(g: Graph, a: int | Iterable[int], b: int | Iterable[int]) -> bool:
    """True iff the two vertex sets are disjoint with no edges between them."""
    am, bm = _as_mask(a), _as_mask(b)
    if am & bm:
        return False
    return all(g.adj[v] & bm == 0 for v in iter_bits(am))


def is_induced_path(
    g: Graph,
    seq: tuple[int, ...] | list[int],
    x: int | None = None,
    y: int | None = None,
) -> bool:
    """True iff ``seq`` lists the vertices of an induced path in order.

    When given, ``x`` and ``y`` additionally pin the required endpoints.
    """
    k = len(seq)
    if k == 0 or len(set(seq)) != k:
        return False
    if x is not None and seq[0] != x:
        return False
    if y is not None and seq[-1] != y:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = g.has_edge(seq[i], seq[j])
            if adjacent != (j == i + 1):
                return False
    return True


def is_induced_cycle(g: Graph, seq: tuple[int, ...] | list[int]) -> bool:
    """True iff ``seq`` lists the vertices of an induced cycle in cyclic order."""
    k = len(seq)
    if k < 3 or len(set(seq)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if g.has_edge(seq[i], seq[j]) != consecutive:
                return False
    return True


def connected_components(g: Graph, within: int | None = None) -> list[int]:
    """Component masks of G (or of G[within]), ordered by smallest vertex."""
    todo = g.full_mask if within is None else within
    comps = []
    while todo:
        seed = todo & -todo
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= g.adj[v]
            frontier = grow & todo & ~comp
            comp |= frontier
        comps.append(comp)
        todo &= ~comp
    return comps


def bfs_layers(g: Graph, root: int, within: int | None = None) -> list[int]:
    """Masks of vertices at distance 0, 1, 2, ... from root inside G[within]."""
    todo = g.full_mask if within is None else within
    if not todo >> root & 1:
        raise ValueError("root is not in the search area")
    seen = 1 << root
    layers = [seen]
    frontier = seen
    while frontier:
        grow = 0
        for v in iter_bits(frontier):
            grow |= g.adj[v]
        frontier = grow & todo & ~seen
        if frontier:
            layers.append(frontier)
            seen |= frontier
    return layers


def path_order_of_component(g: Graph, comp: int) -> tuple[int, ...] | None:
    """If G[comp] is a path, return its vertices end to end, else None.

    A connected component is assumed; the traversal itself verifies it.  The
    returned tuple starts at the smaller-labelled endpoint.
    """
    size = comp.bit_count()
    if size == 0:
        return None
    if size == 1:
        return (comp.bit_length() - 1,)
    ends = []
    for v in iter_bits(comp):
        d = (g.adj[v] & comp).bit_count()
        if d > 2:
            return None
        if d == 1:
            ends.append(v)
        if d == 0:
            return None
    if len(ends) != 2:
        return None
    order = [ends[0]]
    seen = 1 << ends[0]
    while True:
        nxt = g.adj[order[-1]] & comp & ~seen
        if nxt == 0:
            break
        v = nxt.bit_length() - 1
        order.append(v)
        seen |= 1 << v
    if len(order) != size:
        return None
    return tuple(order)


@dataclass(frozen=True)
class PathFamily:
    """A fan of induced x-y paths that pairwise share exactly the two ends.

    Each path is stored as its full vertex sequence from x to y and must have
    at least one interior vertex, so x and y are nonadjacent in any graph
    admitting a valid family.  Interiors of distinct paths are disjoint but may
    have edges between them; detecting when they cannot all attach is the
    point of the growth pipeline.
    """

    x: int
    y: int
    paths: tuple[tuple[int, ...], ...]

    def interior_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(p[1:-1]) for p in self.paths)

    def tips(self) -> tuple[int, ...]:
        """The neighbor of x on each path, in family order."""
        return tuple(p[1] for p in self.paths)


def path_family_violation(g: Graph, fam: PathFamily) -> str | None:
    """The first broken family invariant, or None if the family is valid."""
    if fam.x == fam.y:
        return "the two ends coincide"
    if g.has_edge(fam.x, fam.y):
        return "the two ends are adjacent"
    for i, p in enumerate(fam.paths):
        if not is_induced_path(g, p, fam.x, fam.y):
            return f"path {i} is not an induced path from x to y"
    for i in range(len(fam.paths)):
        si = set(fam.paths[i])
        for j in range(i + 1, len(fam.paths)):
            if si & set(fam.paths[j]) != {fam.x, fam.y}:
                return f"paths {i} and {j} share interior vertices"
    return None


def validate_path_family(g: Graph, fam: PathFamily) -> bool:
    """True iff every family invariant holds in g."""
    return path_family_violation(g, fam) is None


@dataclass(frozen=True)
class ABTreeCert:
    """A rooted tree found inside a host graph, with its parent map.

    ``parent`` holds one (child, parent) pair per non-root vertex, sorted by
    child.  Validity (checked by :func:`ab_tree_violation`) means G restricted
    to the vertices is exactly the tree the parent map describes, the root and
    every internal vertex have degree ``a``, and every leaf sits at distance
    exactly ``b - 1`` from the root.  The root never counts as a leaf, so
    ``a = 1, b = 2`` is the two-vertex tree and ``b = 1`` a single vertex.
    """

    a: int
    b: int
    root: int
    vertices: tuple[int, ...]
    parent: tuple[tuple[int, int], ...]


def ab_tree_size(a: int, b: int) -> int:
    """Vertex count of a full tree: 1 + a * sum of (a-1)^i for i < b-1."""
    if b == 1:
        return 1
    return 1 + a * sum((a - 1) ** i for i in range(b - 1))


def ab_tree_violation(g: Graph, cert: ABTreeCert) -> str | None:
    """The first broken certificate invariant, or None if it is valid."""
    a, b = cert.a, cert.b
    if a < 1 or b < 1:
        return "tree parameters must be positive"
    vs = cert.vertices
    if len(set(vs)) != len(vs):
        return "repeated vertices"
    mask = mask_of(vs)
    if mask & ~g.full_mask:
        return "vertices outside the graph"
    if not mask >> cert.root & 1:
        return "root is not among the vertices"
    if b == 1:
        if len(vs) != 1 or cert.parent:
            return "depth-1 tree must be the bare root"
        return None
    par = dict(cert.parent)
    if len(par) != len(cert.parent) or set(par) != set(vs) - {cert.root}:
        return "parent map must cover exactly the non-root vertices"
    depth = {cert.root: 0}
    for c in par:
        chain = []
        v = c
        while v not in depth:
            if v in chain or par.get(v) is None:
                return "parent map does not lead to the root"
            chain.append(v)
            v = par[v]
        d = depth[v]
        for u in reversed(chain):
            d += 1
            depth[u] = d
    for c, p in cert.parent:
        if not g.has_edge(c, p):
            return f"parent link {c}-{p} is not an edge"
    edge_count = sum((g.adj[v] & mask).bit_count() for v in iter_bits(mask)) // 2
    if edge_count != len(vs) - 1:
        return "induced subgraph has edges beyond the parent links"
    children = {v: 0 for v in vs}
    for c in par:
        children[par[c]] += 1
    for v in vs:
        down = children[v]
        if down == 0:
            if v == cert.root or depth[v] != b - 1:
                return f"vertex {v} is a leaf away from depth {b - 1}"
        else:
            want = a if v == cert.root else a - 1
            if down != want:
                return f"vertex {v} has {down} children, wants {want}"
    return None


def is_ab_tree(g: Graph, cert: ABTreeCert) -> bool:
    """True iff every certificate invariant holds with respect to g."""
    return ab_tree_violation(g, cert) is None
