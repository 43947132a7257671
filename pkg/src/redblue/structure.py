"""Structure analysis: induced-subgraph detection, girth, chordless-cycle
search, planarity with machine-checkable witnesses, articulation vertices,
and named graph-class membership predicates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import networkx as nx

from .errors import RefusalError
from .graphs import (
    Graph,
    canonical_edge,
    complement_of_cycle,
    complete_graph,
    cycle_graph,
    pattern_graph,
    PATTERN_NAMES,
)

DEFAULT_PATTERN_BOUND = 8
DEFAULT_CYCLE_BOUND = 16


# -- small-subgraph enumeration --------------------------------------------


def enumerate_triangles(g):
    """All triangles as sorted vertex triples, in sorted order."""
    out = []
    for u in g.vertices():
        nu = g.neighbors(u)
        for v in sorted(nu):
            if v <= u:
                continue
            for w in sorted(nu & g.neighbors(v)):
                if w > v:
                    out.append((u, v, w))
    return out


def find_triangle(g):
    for u in g.vertices():
        nu = g.neighbors(u)
        for v in nu:
            common = nu & g.neighbors(v)
            if common:
                w = min(common)
                return tuple(sorted((u, v, w)))
    return None


def enumerate_induced_p3s(g):
    """All induced paths on 3 vertices as (end, center, end) with ends sorted."""
    out = []
    for center in g.vertices():
        nbrs = sorted(g.neighbors(center))
        for i, u in enumerate(nbrs):
            for w in nbrs[i + 1 :]:
                if not g.has_edge(u, w):
                    out.append((u, center, w))
    return out


# -- induced-subgraph search ------------------------------------------------


def contains_induced(pattern, host, max_pattern=DEFAULT_PATTERN_BOUND):
    """Injective map pattern -> host realizing an induced copy, or None.

    Exhaustive backtracking over degree-compatible assignments; refuses
    patterns larger than `max_pattern` vertices.
    """
    k = pattern.n
    if k > max_pattern:
        raise RefusalError(
            f"pattern has {k} vertices, above the exhaustive-search bound {max_pattern}"
        )
    if k == 0:
        return {}
    if k > host.n:
        return None

    # order pattern vertices so each (after the first) touches a placed one
    order = []
    placed = set()
    remaining = set(pattern.vertices())
    while remaining:
        best = max(
            remaining,
            key=lambda p: (len(pattern.neighbors(p) & placed), pattern.degree(p), -p),
        )
        order.append(best)
        placed.add(best)
        remaining.discard(best)

    assignment = {}
    used = set()

    def extend(i):
        if i == len(order):
            return True
        p = order[i]
        p_nbrs = pattern.neighbors(p)
        for h in host.vertices():
            if h in used or host.degree(h) < pattern.degree(p):
                continue
            ok = True
            for q, hq in assignment.items():
                if (q in p_nbrs) != host.has_edge(h, hq):
                    ok = False
                    break
            if ok:
                assignment[p] = h
                used.add(h)
                if extend(i + 1):
                    return True
                del assignment[p]
                used.discard(h)
        return False

    if extend(0):
        return dict(sorted(assignment.items()))
    return None


def is_induced_copy(pattern, host, mapping):
    """Re-validate a witness map: injective and adjacency-preserving both ways."""
    if set(mapping) != set(pattern.vertices()):
        return False
    if len(set(mapping.values())) != pattern.n:
        return False
    for p, q in itertools.combinations(pattern.vertices(), 2):
        if pattern.has_edge(p, q) != host.has_edge(mapping[p], mapping[q]):
            return False
    return True


# -- girth and chordless cycles ---------------------------------------------


def girth(g):
    """Length of a shortest cycle; math.inf for forests."""
    best = math.inf
    for src in g.vertices():
        dist = {src: 0}
        parent = {src: -1}
        queue = [src]
        while queue:
            nxt = []
            for u in queue:
                if 2 * dist[u] + 1 >= best:
                    continue
                for w in g.neighbors(u):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif parent[u] != w and parent[w] != u:
                        cand = dist[u] + dist[w] + 1
                        if cand < best:
                            best = cand
            queue = nxt
    return best


def find_induced_cycle(g, min_len, max_len, parity="any", bound=DEFAULT_CYCLE_BOUND):
    """A chordless cycle with length in [min_len, max_len] and the requested
    parity, or None.  Exhaustive within the window; refuses windows beyond
    the configured bound (no unbounded hole detection here).
    """
    if parity not in ("any", "odd", "even"):
        raise ValueError(f"bad parity {parity!r}")
    if min_len < 3:
        raise RefusalError("cycles have length at least 3")
    max_len = min(max_len, g.n)
    if max_len > bound:
        raise RefusalError(
            f"cycle window up to {max_len} exceeds the exhaustive-search bound {bound}"
        )
    if min_len > max_len:
        return None

    def length_ok(k):
        if k < min_len or k > max_len:
            return False
        if parity == "odd":
            return k % 2 == 1
        if parity == "even":
            return k % 2 == 0
        return True

    for s in g.vertices():
        # grow induced paths from the cycle's minimum vertex; only the second
        # and final vertices may touch s, so a vertex adjacent to s either
        # closes the cycle immediately or is unusable on this path
        path = [s]
        on_path = {s}

        def extend():
            last = path[-1]
            for x in sorted(g.neighbors(last)):
                if x <= s or x in on_path:
                    continue
                if any(g.has_edge(x, p) for p in path[1:-1]):
                    continue
                if len(path) >= 2 and g.has_edge(x, s):
                    k = len(path) + 1
                    if length_ok(k) and path[1] < x:
                        return path + [x]
                    continue
                if len(path) + 1 >= max_len:
                    continue
                path.append(x)
                on_path.add(x)
                found = extend()
                path.pop()
                on_path.discard(x)
                if found:
                    return found
            return None

        found = extend()
        if found:
            return found
    return None


def is_chordless_cycle(g, cycle):
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    for i, u in enumerate(cycle):
        for j in range(i + 1, k):
            v = cycle[j]
            consecutive = j - i == 1 or (i == 0 and j == k - 1)
            if g.has_edge(u, v) != consecutive:
                return False
    return True


# -- articulation vertices ---------------------------------------------------


def cut_vertices(g):
    """Articulation vertices, via iterative lowpoint DFS."""
    disc = [-1] * g.n
    low = [0] * g.n
    parent = [-1] * g.n
    out = set()
    timer = 0
    for root in g.vertices():
        if disc[root] != -1:
            continue
        stack = [(root, iter(sorted(g.neighbors(root))))]
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        while stack:
            u, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    parent[w] = u
                    disc[w] = low[w] = timer
                    timer += 1
                    if u == root:
                        root_children += 1
                    stack.append((w, iter(sorted(g.neighbors(w)))))
                    advanced = True
                    break
                elif w != parent[u]:
                    low[u] = min(low[u], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[u])
                    if p != root and low[u] >= disc[p]:
                        out.add(p)
        if root_children >= 2:
            out.add(root)
    return out


# -- planarity ----------------------------------------------------------------


@dataclass
class KuratowskiWitness:
    kind: str  # "K5" or "K3,3"
    branch_vertices: tuple
    edges: tuple


@dataclass
class PlanarityResult:
    planar: bool
    rotation: dict | None = None  # v -> ccw neighbor order
    witness: KuratowskiWitness | None = None


def _suppress_two_vertices(n, edges):
    """Suppress degree-2 vertices of a subgraph; returns (core vertices, core
    edge set) or None if suppression would create a parallel edge or loop."""
    adj = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if len(adj[v]) == 2:
                a, b = sorted(adj[v])
                if a == b or b in adj[a]:
                    return None
                adj[a].discard(v)
                adj[b].discard(v)
                adj[a].add(b)
                adj[b].add(a)
                del adj[v]
                changed = True
    verts = sorted(adj)
    core_edges = {canonical_edge(u, v) for u in adj for v in adj[u]}
    return verts, core_edges


def validate_kuratowski(host, witness):
    """Machine check: witness edges lie in the host and suppress to K5/K3,3."""
    for u, v in witness.edges:
        if not host.has_edge(u, v):
            return False
    core = _suppress_two_vertices(host.n, witness.edges)
    if core is None:
        return False
    verts, core_edges = core
    if witness.kind == "K5":
        return len(verts) == 5 and len(core_edges) == 10
    if witness.kind == "K3,3":
        if len(verts) != 6 or len(core_edges) != 9:
            return False
        # bipartite 3-regular on 6 vertices with 9 edges is exactly K3,3
        deg = {v: 0 for v in verts}
        for u, v in core_edges:
            deg[u] += 1
            deg[v] += 1
        return all(d == 3 for d in deg.values())
    return False


def euler_check(g, rotation):
    """Verify n - m + f = 2 on every connected component of a rotation system."""
    half_edges = {(u, v) for u, v in g.edges()} | {(v, u) for u, v in g.edges()}
    nxt = {}
    for v, order in rotation.items():
        if set(order) != set(g.neighbors(v)):
            return False
        k = len(order)
        for i, u in enumerate(order):
            # face traversal: arriving u->v continues to the neighbor that
            # follows u in the rotation at v
            nxt[(u, v)] = (v, order[(i + 1) % k])
    faces_of_comp = {}
    seen = set()
    comp_of = {}
    for idx, comp in enumerate(g.components()):
        for v in comp:
            comp_of[v] = idx
        faces_of_comp[idx] = 0
    for he in sorted(half_edges):
        if he in seen:
            continue
        cur = he
        while cur not in seen:
            seen.add(cur)
            cur = nxt.get(cur)
            if cur is None:
                return False
        faces_of_comp[comp_of[he[0]]] += 1
    for idx, comp in enumerate(g.components()):
        nverts = len(comp)
        nedges = sum(1 for u, v in g.edges() if comp_of[u] == idx)
        nfaces = faces_of_comp[idx] if nedges else 1
        if nverts - nedges + nfaces != 2:
            return False
    return True


def is_planar(g):
    """Planarity verdict plus witness: a rotation system passing the Euler
    check on planar input, or a K5/K3,3-subdivision on non-planar input."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    ok, cert = nx.check_planarity(G, counterexample=True)
    if ok:
        rotation = {
            v: list(cert.neighbors_cw_order(v)) if g.degree(v) else []
            for v in g.vertices()
        }
        return PlanarityResult(True, rotation=rotation)
    edges = tuple(sorted(canonical_edge(u, v) for u, v in cert.edges()))
    core = _suppress_two_vertices(g.n, edges)
    if core is None:
        raise RuntimeError("planarity counterexample failed to suppress")
    verts, core_edges = core
    kind = "K5" if len(verts) == 5 else "K3,3"
    witness = KuratowskiWitness(kind, tuple(verts), edges)
    if not validate_kuratowski(g, witness):
        raise RuntimeError("planarity counterexample failed validation")
    return PlanarityResult(False, witness=witness)


# -- class membership ---------------------------------------------------------


def resolve_pattern(name):
    """Catalog patterns plus the small named graphs used by class presets."""
    key = name.lower()
    if key in PATTERN_NAMES:
        return pattern_graph(key)
    if key == "k4":
        return complete_graph(4)
    if key == "k5":
        return complete_graph(5)
    if key == "c7bar":
        return complement_of_cycle(7)
    if key.startswith("c") and key[1:].isdigit():
        return cycle_graph(int(key[1:]))
    raise RefusalError(f"unknown pattern name {name!r}")


@dataclass
class ClassSpec:
    """A forbidden-structure class: induced patterns, chordless-cycle length
    windows, an odd-hole threshold, a degree cap, and a planarity flag."""

    name: str = "custom"
    patterns: tuple = ()
    cycle_ranges: tuple = ()  # (lo, hi) inclusive windows of forbidden C_k
    odd_hole_min: int | None = None  # forbid chordless odd cycles >= this
    max_degree: int | None = None
    require_planar: bool = False
    t: int | None = None

    def __post_init__(self):
        for lo, hi in self.cycle_ranges:
            if lo < 3 or lo > hi:
                raise RefusalError(f"bad cycle window ({lo}, {hi})")
        if self.odd_hole_min is not None and self.odd_hole_min < 5:
            raise RefusalError("odd holes have length at least 5")
        if self.t is not None:
            for lo, hi in self.cycle_ranges:
                if self.t < lo and hi == self.t:
                    raise RefusalError("t below the smallest forbidden cycle")


@dataclass
class StructureReport:
    member: bool
    witnesses: list = field(default_factory=list)

    def to_json(self):
        return {"member": self.member, "witnesses": self.witnesses}


def check_class(g, spec, cycle_bound=DEFAULT_CYCLE_BOUND):
    """Membership verdict with one validated witness per violated constraint."""
    witnesses = []

    if spec.max_degree is not None:
        for v in g.vertices():
            if g.degree(v) > spec.max_degree:
                witnesses.append(
                    {"kind": "degree", "vertex": v, "degree": g.degree(v)}
                )
                break

    if spec.require_planar:
        res = is_planar(g)
        if not res.planar:
            witnesses.append(
                {
                    "kind": "nonplanar",
                    "subdivision_of": res.witness.kind,
                    "edges": [list(e) for e in res.witness.edges],
                }
            )

    for name in spec.patterns:
        hit = contains_induced(resolve_pattern(name), g)
        if hit is not None:
            witnesses.append({"kind": "pattern", "pattern": name, "map": hit})

    for lo, hi in spec.cycle_ranges:
        cyc = find_induced_cycle(g, lo, hi, "any", bound=cycle_bound)
        if cyc is not None:
            witnesses.append({"kind": "cycle", "window": [lo, hi], "cycle": cyc})

    if spec.odd_hole_min is not None:
        cyc = find_induced_cycle(g, spec.odd_hole_min, g.n, "odd", bound=cycle_bound)
        if cyc is not None:
            witnesses.append(
                {"kind": "odd_hole", "min": spec.odd_hole_min, "cycle": cyc}
            )

    return StructureReport(member=not witnesses, witnesses=witnesses)


def class_preset(name, t=None):
    """Named class presets addressable from the CLI; t bounds cycle windows."""
    key = name.lower()

    def need_t(lo):
        if t is None:
            raise RefusalError(f"class {name} needs parameter t")
        if t < lo:
            raise RefusalError(f"class {name} needs t >= {lo}")
        return t

    if key == "h1":
        return ClassSpec("h1", ("bull", "gem"), ((4, need_t(4)),), 5, 8, True, t)
    if key == "h2":
        return ClassSpec("h2", ("k4", "bull", "house"), ((5, need_t(5)),), None, None, True, t)
    if key == "h3":
        return ClassSpec("h3", ("k4", "gem"), ((4, 4), (7, need_t(7))), 7, 7, True, t)
    if key == "h4":
        return ClassSpec("h4", ("k4", "net"), ((5, need_t(5)),), 5, 8, False, t)
    if key == "h5":
        return ClassSpec("h5", ("diamond", "butterfly"), ((6, need_t(6)),), None, 4, False, t)
    if key == "h6":
        return ClassSpec("h6", ("k4", "diamond", "butterfly"), ((4, need_t(4)),), None, None, False, t)
    if key == "h7":
        return ClassSpec("h7", ("claw", "diamond"), ((4, need_t(4)),), 5, 6, True, t)
    if key == "h8":
        return ClassSpec("h8", ("claw", "diamond"), ((9, need_t(9)),), 5, 5, True, t)
    if key == "h9":
        return ClassSpec("h9", ("claw", "diamond", "k5"), ((4, need_t(4)),), 5, 5, False, t)
    if key == "p2":
        return ClassSpec("p2", ("k4", "c7bar"), (), 5, None, False, None)
    if key == "p3":
        return ClassSpec("p3", ("diamond", "house", "net"), (), None, None, False, None)
    if key == "p4":
        return ClassSpec("p4", ("diamond", "claw", "k5", "butterfly"), (), None, None, False, None)
    if key == "p5":
        return ClassSpec("p5", ("claw", "diamond"), ((4, 10),), None, 5, True, None)
    if key == "p6":
        return ClassSpec("p6", (), (), None, 3, False, None)
    raise RefusalError(f"unknown class preset {name!r}")
