"""Simple undirected graphs with dense integer vertices, plus the
construction, transformation and serialization operations every other
module builds on.

Graphs are immutable after construction; every operation returns a new
value.  Vertex indices are dense (0..n-1).  Composite operations that
renumber vertices return explicit provenance maps.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import ParseError, RefusalError


class Graph:
    """Finite simple undirected graph.

    ``annotations`` maps vertex -> {key: value} and is carried along by
    most operations but ignored by equality: two graphs are equal when
    they have the same vertex count and edge set.
    """

    __slots__ = ("n", "_adj", "annotations")

    def __init__(self, n, edges=(), annotations=None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj = tuple(frozenset(s) for s in adj)
        self.annotations = {
            v: dict(kv) for v, kv in (annotations or {}).items() if kv
        }

    # -- basic queries ----------------------------------------------------

    def vertices(self):
        return range(self.n)

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def has_edge(self, u, v):
        return v in self._adj[u]

    def edges(self):
        """Edges as sorted (u, v) tuples with u < v, in sorted order."""
        return [(u, v) for u in range(self.n) for v in sorted(self._adj[u]) if u < v]

    @property
    def m(self):
        return sum(len(s) for s in self._adj) // 2

    def max_degree(self):
        return max((len(s) for s in self._adj), default=0)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __hash__(self):
        return hash((self.n, self._adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    # -- convenience ------------------------------------------------------

    def with_annotations(self, annotations):
        merged = {v: dict(kv) for v, kv in self.annotations.items()}
        for v, kv in annotations.items():
            merged.setdefault(v, {}).update(kv)
        return Graph(self.n, self.edges(), merged)

    def components(self):
        """Connected components as sorted vertex lists, sorted by minimum."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            out.append(sorted(comp))
        return out


def canonical_edge(u, v):
    return (u, v) if u < v else (v, u)


# -- parsing / serialization ---------------------------------------------


def parse_edge_list(text):
    """Parse the edge-list format: header ``p <n> <m>`` then ``e <u> <v>`` lines.

    Duplicate edge lines collapse; the result is order-independent.
    Raises ParseError naming the offending line on malformed input,
    self-loops or out-of-range vertices.
    """
    n = None
    declared_m = None
    edges = set()
    edge_lines = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 3:
                raise ParseError("header must be 'p <n> <m>'", lineno)
            try:
                n, declared_m = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            if n < 0 or declared_m < 0:
                raise ParseError("header counts must be nonnegative", lineno)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge line before header", lineno)
            if len(parts) != 3:
                raise ParseError("edge line must be 'e <u> <v>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("edge endpoints must be integers", lineno) from None
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(
                    f"vertex index out of range in edge ({u}, {v})", lineno
                )
            edges.add(canonical_edge(u, v))
            edge_lines += 1
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno)
    if n is None:
        raise ParseError("missing 'p <n> <m>' header")
    if declared_m != edge_lines:
        raise ParseError(
            f"header declares {declared_m} edges but {edge_lines} edge lines found"
        )
    return Graph(n, sorted(edges))


def format_edge_list(g):
    """Byte-deterministic edge-list serialization (round-trips with parse)."""
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def format_dot(g):
    """DOT export for visualization; annotations become node labels."""
    lines = ["graph g {"]
    for v in g.vertices():
        ann = g.annotations.get(v)
        if ann:
            label = ",".join(f"{k}={ann[k]}" for k in sorted(ann))
            lines.append(f'  {v} [label="{v}:{label}"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize(g, fmt="edge-list"):
    if fmt == "edge-list":
        return format_edge_list(g)
    if fmt == "dot":
        return format_dot(g)
    raise ValueError(f"unknown format {fmt!r}")


# -- generators -----------------------------------------------------------


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise RefusalError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, list(itertools.combinations(range(n), 2)))


def complete_multipartite(sizes):
    sizes = list(sizes)
    if any(s <= 0 for s in sizes):
        raise RefusalError("part sizes must be positive")
    bounds = [0]
    for s in sizes:
        bounds.append(bounds[-1] + s)
    n = bounds[-1]
    part_of = [0] * n
    for i in range(len(sizes)):
        for v in range(bounds[i], bounds[i + 1]):
            part_of[v] = i
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if part_of[u] != part_of[v]
    ]
    return Graph(n, edges)


def star_graph(leaves):
    """K_{1,leaves}: center 0 plus `leaves` pendant vertices."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complement_of_cycle(n):
    """Complement of the n-cycle: i ~ j unless they are cyclically adjacent."""
    if n < 4:
        raise RefusalError("complement of a cycle needs at least 4 vertices")
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            d = min(j - i, n - (j - i))
            if d >= 2:
                edges.append((i, j))
    return Graph(n, edges)


_PATTERN_EDGES = {
    # triangle plus one pendant
    "paw": (4, [(0, 1), (0, 2), (1, 2), (0, 3)]),
    # triangle plus two pendants at distinct vertices
    "bull": (5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)]),
    # triangle plus three pendants
    "net": (6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)]),
    # two triangles sharing one vertex
    "butterfly": (5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]),
    # K4 minus the edge (0, 1); 0 and 1 are the 2-vertices
    "diamond": (4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    # P4 0-1-2-3 plus the dominating vertex 4
    "gem": (5, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)]),
    # C5 plus one chord creating a triangle and a C4
    "house": (5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]),
    # K_{1,3}
    "claw": (4, [(0, 1), (0, 2), (0, 3)]),
}

PATTERN_NAMES = tuple(sorted(_PATTERN_EDGES))


def pattern_graph(name):
    key = name.lower().replace("k4-", "diamond").replace("k1,3", "claw")
    if key not in _PATTERN_EDGES:
        raise RefusalError(f"unknown pattern {name!r}")
    n, edges = _PATTERN_EDGES[key]
    return Graph(n, edges)


def random_graph(n, m, seed):
    """Uniform random graph with exactly m edges; deterministic per seed."""
    pairs = list(itertools.combinations(range(n), 2))
    if m > len(pairs):
        raise RefusalError(f"cannot place {m} edges on {n} vertices")
    rng = random.Random(seed)
    return Graph(n, rng.sample(pairs, m))


def _circulant(n, offsets):
    edges = set()
    for i in range(n):
        for off in offsets:
            edges.add(canonical_edge(i, (i + off) % n))
    return Graph(n, sorted(edges))


def _projective_plane_incidence(q):
    """Levi graph of PG(2, q) for prime q: (q+1)-regular, girth 6."""
    pts = []
    seen = set()
    for x in range(q):
        for y in range(q):
            for z in range(q):
                if (x, y, z) == (0, 0, 0):
                    continue
                rep = None
                for lam in range(1, q):
                    cand = (lam * x % q, lam * y % q, lam * z % q)
                    if rep is None or cand < rep:
                        rep = cand
                if rep not in seen:
                    seen.add(rep)
                    pts.append(rep)
    pts.sort()
    lines = pts  # duality: lines have the same coordinate representatives
    index = {p: i for i, p in enumerate(pts)}
    n = 2 * len(pts)
    edges = []
    for p in pts:
        for l in lines:
            if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0:
                edges.append((index[p], len(pts) + index[l]))
    return Graph(n, edges)


def _girth_at_least(g, target):
    # BFS-based shortest-cycle bound; True when no cycle shorter than target.
    for src in g.vertices():
        dist = {src: 0}
        parent = {src: -1}
        queue = [src]
        while queue:
            nxt = []
            for u in queue:
                if dist[u] * 2 >= target:
                    continue
                for w in g.neighbors(u):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif parent[u] != w and parent[w] != u:
                        if dist[u] + dist[w] + 1 < target:
                            return False
            queue = nxt
    return True


def _random_four_regular_high_girth(girth, seed, tries=200):
    # Greedy stub pairing that only joins vertices at distance >= girth-1.
    rng = random.Random(seed)
    n = max(20, 6 * girth)
    if n % 2:
        n += 1
    for attempt in range(tries):
        adj = [set() for _ in range(n)]

        def far_enough(a, b):
            # BFS from a up to depth girth-2; b must not appear.
            depth = girth - 2
            frontier, seen = {a}, {a}
            for _ in range(depth):
                frontier = {w for u in frontier for w in adj[u]} - seen
                if b in frontier:
                    return False
                seen |= frontier
            return True

        ok = True
        order = list(range(n))
        rng.shuffle(order)
        for u in order:
            while len(adj[u]) < 4:
                cands = [
                    v
                    for v in range(n)
                    if v != u
                    and len(adj[v]) < 4
                    and v not in adj[u]
                    and far_enough(u, v)
                ]
                if not cands:
                    ok = False
                    break
                v = rng.choice(cands)
                adj[u].add(v)
                adj[v].add(u)
            if not ok:
                break
        if ok:
            g = Graph(n, [(u, v) for u in range(n) for v in adj[u] if u < v])
            if g.max_degree() == 4 and all(g.degree(v) == 4 for v in g.vertices()):
                if _girth_at_least(g, girth):
                    return g
        n += 2  # grow the host a little and retry
    raise RefusalError(
        f"could not build a 4-regular graph of girth >= {girth} within retries"
    )


def four_regular_girth(girth, seed=0):
    """A 4-regular graph with girth >= `girth`.

    Small targets come from a bundled table (verified in tests); larger
    targets fall back to seeded randomized construction with girth
    verification and bounded retries.
    """
    if girth <= 3:
        return complete_graph(5)
    if girth == 4:
        return complete_multipartite([4, 4])
    if girth == 5:
        return _circulant(13, (1, 5))
    if girth == 6:
        return _projective_plane_incidence(3)
    return _random_four_regular_high_girth(girth, seed)


def generate(name, params=(), seed=0):
    """Named-generator dispatcher used by the CLI; params are integers."""
    params = list(params)

    def need(k):
        if len(params) != k:
            raise RefusalError(f"generator {name!r} expects {k} parameter(s)")

    if name == "path":
        need(1)
        return path_graph(params[0])
    if name == "cycle":
        need(1)
        return cycle_graph(params[0])
    if name == "complete":
        need(1)
        return complete_graph(params[0])
    if name == "complete_multipartite":
        if not params:
            raise RefusalError("complete_multipartite expects part sizes")
        return complete_multipartite(params)
    if name == "star":
        need(1)
        return star_graph(params[0])
    if name == "complement_of_cycle":
        need(1)
        return complement_of_cycle(params[0])
    if name == "pattern":
        raise RefusalError("use generate_pattern for named patterns")
    if name == "four_regular_girth":
        need(1)
        return four_regular_girth(params[0], seed=seed)
    if name == "random":
        need(2)
        return random_graph(params[0], params[1], seed)
    raise RefusalError(f"unknown generator {name!r}")


# -- transformations ------------------------------------------------------


def line_graph(g):
    """Line graph of g plus the bijection edge -> new vertex index."""
    edges = g.edges()
    index = {e: i for i, e in enumerate(edges)}
    lg_edges = []
    for i, (u, v) in enumerate(edges):
        for j in range(i + 1, len(edges)):
            a, b = edges[j]
            if a in (u, v) or b in (u, v):
                lg_edges.append((i, j))
    return Graph(len(edges), lg_edges), index


def subdivide_edge(g, e, times=1):
    """Replace edge e by a path through `times` fresh internal vertices."""
    u, v = canonical_edge(*e)
    if not g.has_edge(u, v):
        raise RefusalError(f"edge ({u}, {v}) not present")
    if times <= 0:
        raise RefusalError("times must be positive")
    edges = [f for f in g.edges() if f != (u, v)]
    chain = [u] + [g.n + i for i in range(times)] + [v]
    edges.extend(canonical_edge(a, b) for a, b in zip(chain, chain[1:]))
    return Graph(g.n + times, edges, g.annotations)


def subdivide_all_once(g):
    """Subdivide every edge once; returns (graph, map original edge -> new vertex)."""
    edges = g.edges()
    mid = {e: g.n + i for i, e in enumerate(edges)}
    new_edges = []
    for e in edges:
        u, v = e
        new_edges.append(canonical_edge(u, mid[e]))
        new_edges.append(canonical_edge(mid[e], v))
    return Graph(g.n + len(edges), new_edges, g.annotations), mid


def add_false_twin(g, v):
    """Add a new vertex adjacent to exactly N(v) and not to v itself."""
    if not (0 <= v < g.n):
        raise RefusalError(f"vertex {v} out of range")
    edges = g.edges()
    edges.extend(canonical_edge(g.n, w) for w in sorted(g.neighbors(v)))
    return Graph(g.n + 1, edges, g.annotations)


def disjoint_union(g1, g2):
    """Disjoint union; returns (graph, offset of g2's vertices)."""
    off = g1.n
    edges = g1.edges() + [(u + off, v + off) for u, v in g2.edges()]
    ann = {v: kv for v, kv in g1.annotations.items()}
    ann.update({v + off: kv for v, kv in g2.annotations.items()})
    return Graph(g1.n + g2.n, edges, ann), off


def identify_vertices(g1, v1, g2, v2):
    """Disjoint union of g1 and g2 with v1 and v2 merged into one vertex.

    Returns (graph, map1, map2) carrying each input's vertex relabeling.
    Shared-neighbor duplicate edges collapse (result stays simple).
    """
    if not (0 <= v1 < g1.n):
        raise RefusalError(f"vertex {v1} not in first graph")
    if not (0 <= v2 < g2.n):
        raise RefusalError(f"vertex {v2} not in second graph")
    map1 = {v: v for v in g1.vertices()}
    map2 = {}
    nxt = g1.n
    for v in g2.vertices():
        if v == v2:
            map2[v] = v1
        else:
            map2[v] = nxt
            nxt += 1
    edges = set(g1.edges())
    for u, v in g2.edges():
        edges.add(canonical_edge(map2[u], map2[v]))
    ann = {v: dict(kv) for v, kv in g1.annotations.items()}
    for v, kv in g2.annotations.items():
        ann.setdefault(map2[v], {}).update(kv)
    return Graph(nxt, sorted(edges), ann), map1, map2


def remove_vertices(g, drop):
    """Delete a vertex set; returns (graph, map old index -> new index)."""
    drop = set(drop)
    keep = [v for v in g.vertices() if v not in drop]
    remap = {v: i for i, v in enumerate(keep)}
    edges = [
        (remap[u], remap[v]) for u, v in g.edges() if u not in drop and v not in drop
    ]
    ann = {remap[v]: kv for v, kv in g.annotations.items() if v not in drop}
    return Graph(len(keep), edges, ann), remap


def remove_edge(g, e):
    u, v = canonical_edge(*e)
    if not g.has_edge(u, v):
        raise RefusalError(f"edge ({u}, {v}) not present")
    return Graph(g.n, [f for f in g.edges() if f != (u, v)], g.annotations)


# -- 2-vertex contraction (the one multigraph-producing operation) --------


@dataclass
class Multigraph:
    """Multigraph produced by contracting all 2-vertices of a simple graph.

    ``vertices`` are the surviving original indices (degree != 2).
    Each edge records its endpoints plus the original vertex path it
    replaces (provenance; a direct original edge has a length-2 path).
    Components consisting entirely of 2-vertices leave no edge and are
    recorded as closed provenance cycles instead.
    """

    vertices: list
    edges: list = field(default_factory=list)  # (u, v, path) with path[0]==u
    closed_cycles: list = field(default_factory=list)

    def degree(self, v):
        d = 0
        for u, w, _ in self.edges:
            if u == v:
                d += 1
            if w == v:
                d += 1  # loops therefore count twice
        return d


def contract_two_vertices(g):
    """Contract every degree-2 vertex, chaining through 2-vertex paths.

    Loops arise when a 2-vertex chain returns to its anchor; cycles made
    entirely of 2-vertices become closed provenance cycles.
    """
    is_two = [g.degree(v) == 2 for v in g.vertices()]
    kept = [v for v in g.vertices() if not is_two[v]]
    mg = Multigraph(vertices=kept)
    used = set()  # directed half-edges (u, v) already absorbed into a path
    absorbed = set()

    for u in kept:
        for w in sorted(g.neighbors(u)):
            if (u, w) in used:
                continue
            # walk through consecutive 2-vertices until a kept vertex
            path = [u]
            prev, cur = u, w
            used.add((u, w))
            while is_two[cur]:
                path.append(cur)
                absorbed.add(cur)
                a, b = sorted(g.neighbors(cur))
                nxt = b if a == prev else a
                used.add((cur, nxt))
                prev, cur = cur, nxt
            path.append(cur)
            used.add((cur, prev))
            mg.edges.append((u, cur, path))

    # leftover 2-vertices form disjoint cycles with no kept vertex
    visited = set()
    for v in g.vertices():
        if not is_two[v] or v in visited or v in absorbed:
            continue
        cycle = [v]
        visited.add(v)
        prev, cur = v, min(g.neighbors(v))
        while cur != v:
            visited.add(cur)
            cycle.append(cur)
            a, b = sorted(g.neighbors(cur))
            nxt = b if a == prev else a
            prev, cur = cur, nxt
        mg.closed_cycles.append(cycle)
    return mg
