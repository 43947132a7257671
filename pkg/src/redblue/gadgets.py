"""Gadget types, constructions, and their contract verifiers.

Verification is the authority here: every shipped construction is checked
mechanically (solver probes are exact, so a pass means the property holds
in every valid partition).  Verifiers return a result object with a
counterexample on failure instead of raising.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ParseError, RefusalError
from .graphs import (
    Graph,
    add_false_twin,
    canonical_edge,
    complement_of_cycle,
    complete_graph,
    disjoint_union,
    four_regular_girth,
    identify_vertices,
    pattern_graph,
    subdivide_all_once,
)
from .solver import (
    BLUE,
    RED,
    enumerate_partitions,
    solve_edge_partition_constrained,
    solve_partition,
    solve_partition_constrained,
)

DEFAULT_VERIFY_BUDGET = 2**22


def _other(color):
    return BLUE if color == RED else RED


@dataclass
class VerificationResult:
    passed: bool
    reason: str = ""
    counterexample: object = None

    def __bool__(self):
        return self.passed


# -- vertex forcers -----------------------------------------------------------


@dataclass
class Forcer:
    """A graph with a specified vertex q and a claimed forced color."""

    graph: Graph
    q: int
    claimed_color: str

    def __post_init__(self):
        if not (0 <= self.q < self.graph.n):
            raise RefusalError(f"specified vertex {self.q} not in graph")
        if self.claimed_color not in (RED, BLUE):
            raise RefusalError(f"bad color {self.claimed_color!r}")


def verify_red_forcer(f, budget=DEFAULT_VERIFY_BUDGET):
    """Pass iff the graph is partitionable and q is red in every valid
    partition (checked by an exact forced-color probe)."""
    base = solve_partition_constrained(f.graph, budget=budget)
    if base is None:
        return VerificationResult(False, "graph is not partitionable")
    bad = solve_partition_constrained(f.graph, force={f.q: BLUE}, budget=budget)
    if bad is not None:
        return VerificationResult(
            False, f"vertex {f.q} is blue in some valid partition", bad
        )
    return VerificationResult(True)


def verify_blue_forcer(f, budget=DEFAULT_VERIFY_BUDGET):
    """Pass iff partitionable, q is blue in every valid partition, and some
    valid partition colors every neighbor of q red."""
    base = solve_partition_constrained(f.graph, budget=budget)
    if base is None:
        return VerificationResult(False, "graph is not partitionable")
    bad = solve_partition_constrained(f.graph, force={f.q: RED}, budget=budget)
    if bad is not None:
        return VerificationResult(
            False, f"vertex {f.q} is red in some valid partition", bad
        )
    force = {w: RED for w in f.graph.neighbors(f.q)}
    witness = solve_partition_constrained(f.graph, force=force, budget=budget)
    if witness is None:
        return VerificationResult(
            False, f"no valid partition colors all neighbors of {f.q} red"
        )
    return VerificationResult(True)


def build_c7bar_blue_forcer():
    """The fully textual blue forcer: the complement of a 7-cycle with
    false twins added to vertices 3, 4 and 6, plus a diamond sharing one
    of its 2-vertices with vertex 0.  The specified vertex is the
    diamond's other 2-vertex; 13 vertices in total."""
    g = complement_of_cycle(7)
    for base in (3, 4, 6):
        g = add_false_twin(g, base)
    diamond = pattern_graph("diamond")  # 2-vertices are 0 and 1
    merged, _, map2 = identify_vertices(g, 0, diamond, 0)
    return Forcer(graph=merged, q=map2[1], claimed_color=BLUE)


def build_red_forcer(blue1=None, blue2=None):
    """A red forcer from two blue forcers: a fresh vertex adjacent to both
    specified (always blue, mutually nonadjacent) vertices can never be
    blue without creating a blue P3."""
    blue1 = blue1 or build_c7bar_blue_forcer()
    blue2 = blue2 or build_c7bar_blue_forcer()
    g, off = disjoint_union(blue1.graph, blue2.graph)
    q = g.n
    edges = g.edges() + [(blue1.q, q), (blue2.q + off, q)]
    return Forcer(graph=Graph(g.n + 1, edges), q=q, claimed_color=RED)


def compose_red_to_blue(r1, r2, budget=DEFAULT_VERIFY_BUDGET):
    """A blue forcer from two verified red forcers: join their specified
    vertices by an edge and add a new vertex adjacent to both; a red new
    vertex would complete an all-red triangle."""
    for i, r in enumerate((r1, r2)):
        if r.claimed_color != RED:
            raise RefusalError(f"input {i + 1} does not claim red")
        res = verify_red_forcer(r, budget=budget)
        if not res:
            raise RefusalError(f"input {i + 1} fails red-forcer verification: {res.reason}")
    g, off = disjoint_union(r1.graph, r2.graph)
    qstar = g.n
    edges = g.edges() + [
        canonical_edge(r1.q, r2.q + off),
        (r1.q, qstar),
        (r2.q + off, qstar),
    ]
    return Forcer(graph=Graph(g.n + 1, edges), q=qstar, claimed_color=BLUE)


# -- variable gadgets -----------------------------------------------------------


@dataclass
class VariableGadget:
    """Gadget with symmetric slot sets; `true_color` fixes which color
    carries the boolean value true, `clause_mode` the clause gadget shape."""

    graph: Graph
    s_x: frozenset
    s_xbar: frozenset
    true_color: str = RED
    clause_mode: str = "P3"
    parity: dict = field(default_factory=dict)  # optional slot -> 1/2
    swap: dict | None = None  # optional candidate side-swapping automorphism

    def __post_init__(self):
        if self.s_x & self.s_xbar:
            raise RefusalError("slot sets must be disjoint")

    def literal_slots(self, side):
        return sorted(self.s_x if side else self.s_xbar)


def _is_automorphism(g, sigma):
    if sorted(sigma) != list(g.vertices()) or sorted(sigma.values()) != list(
        g.vertices()
    ):
        return False
    return all(g.has_edge(sigma[u], sigma[v]) for u, v in g.edges())


def find_swap_automorphism(g, s_x, s_xbar):
    """Search for an involutive automorphism exchanging the two slot sets.
    Degree-pruned backtracking; adequate at gadget scale."""
    if len(s_x) != len(s_xbar):
        return None
    order = sorted(g.vertices(), key=lambda v: (-g.degree(v), v))
    sigma = {}

    def candidates(v):
        if v in s_x:
            pool = s_xbar
        elif v in s_xbar:
            pool = s_x
        else:
            pool = set(g.vertices()) - s_x - s_xbar
        return sorted(pool)

    def consistent(v, w):
        if g.degree(v) != g.degree(w):
            return False
        for u, img in sigma.items():
            if g.has_edge(v, u) != g.has_edge(w, img):
                return False
        return True

    def extend(i):
        while i < len(order) and order[i] in sigma:
            i += 1
        if i == len(order):
            return _is_automorphism(g, sigma)
        v = order[i]
        for w in candidates(v):
            if w in sigma.values() and sigma.get(w) != v:
                continue
            if w in sigma and sigma[w] != v:
                continue
            if not consistent(v, w):
                continue
            if w == v:
                sigma[v] = v
                if extend(i + 1):
                    return True
                del sigma[v]
                continue
            if not consistent(w, v):
                continue
            sigma[v] = w
            sigma[w] = v
            if extend(i + 1):
                return True
            del sigma[v]
            del sigma[w]
        return False

    if extend(0):
        return dict(sigma)
    return None


def verify_variable_gadget(vg, budget=DEFAULT_VERIFY_BUDGET):
    """Check the three-part contract:
    (i) an involutive automorphism swaps the slot sets,
    (ii) some valid partition colors every S_x slot true with no blue slot
        adjacent to any blue vertex,
    (iii) no valid partition colors slots on both sides true."""
    g = vg.graph
    tc = vg.true_color

    sigma = vg.swap
    if sigma is not None:
        ok = (
            _is_automorphism(g, sigma)
            and all(sigma[sigma[v]] == v for v in sigma)
            and {sigma[v] for v in vg.s_x} == set(vg.s_xbar)
            and {sigma[v] for v in vg.s_xbar} == set(vg.s_x)
        )
        if not ok:
            return VerificationResult(False, "supplied swap map is invalid", sigma)
    else:
        sigma = find_swap_automorphism(g, set(vg.s_x), set(vg.s_xbar))
        if sigma is None:
            return VerificationResult(
                False, "no involutive automorphism swaps the slot sets"
            )

    # (ii): all S_x true plus blue-isolation of every slot, as constraints
    isolation = []
    for s in sorted(vg.s_x | vg.s_xbar):
        for w in sorted(g.neighbors(s)):
            isolation.append([(s, RED), (w, RED)])
    witness = solve_partition_constrained(
        g, force={s: tc for s in vg.s_x}, require_any=isolation, budget=budget
    )
    if witness is None:
        return VerificationResult(
            False, "no partition colors S_x true with blue slots isolated"
        )

    # (iii): forbidden double-truth must be unsatisfiable
    double = solve_partition_constrained(
        g,
        require_any=[
            [(v, tc) for v in sorted(vg.s_x)],
            [(v, tc) for v in sorted(vg.s_xbar)],
        ],
        budget=budget,
    )
    if double is not None:
        return VerificationResult(
            False, "a partition colors slots on both sides true", double
        )
    return VerificationResult(True)


# the repeating section: ring 0..6 is the complement of a 7-cycle, 7..9 are
# false twins of ring vertices 3, 4, 6, and 10/11 are the two slot vertices
SECTION_SIZE = 12
_SLOT_A, _SLOT_B = 10, 11


def _section_edges(off):
    ring = complement_of_cycle(7)
    twins = {7: 3, 8: 4, 9: 6}
    edges = [(off + u, off + v) for u, v in ring.edges()]
    for t, b in twins.items():
        edges.extend(canonical_edge(off + t, off + w) for w in sorted(ring.neighbors(b)))
    edges += [(off + 2, off + _SLOT_A), (off + 8, off + _SLOT_A)]
    edges += [(off + 5, off + _SLOT_B), (off + 7, off + _SLOT_B)]
    return edges


def build_variable_gadget(sections=2):
    """The default variable gadget: `sections` copies of the rigid
    two-state section arranged circularly with state-alternating coupling
    edges, so valid partitions come in exactly two families.  The slot
    sides alternate with the sections; the half-turn rotation is an
    involutive automorphism exchanging them.  `sections` must be 2 mod 4
    so that the half-turn flips section parity."""
    if sections < 2 or sections % 4 != 2:
        raise RefusalError("section count must be 2, 6, 10, ... (2 mod 4)")
    edges = []
    for s in range(sections):
        edges.extend(_section_edges(s * SECTION_SIZE))
    for s in range(sections):
        t = (s + 1) % sections
        if t == s:
            continue
        edges.append(canonical_edge(s * SECTION_SIZE + 2, t * SECTION_SIZE + 2))
        edges.append(canonical_edge(s * SECTION_SIZE + 5, t * SECTION_SIZE + 5))
    g = Graph(sections * SECTION_SIZE, sorted(set(edges)))
    s_x, s_xbar = set(), set()
    for s in range(sections):
        a = s * SECTION_SIZE + _SLOT_A
        b = s * SECTION_SIZE + _SLOT_B
        if s % 2 == 0:
            s_x.add(a)
            s_xbar.add(b)
        else:
            s_x.add(b)
            s_xbar.add(a)
    half = sections // 2
    swap = {
        v: ((v // SECTION_SIZE + half) % sections) * SECTION_SIZE + v % SECTION_SIZE
        for v in g.vertices()
    }
    ann = {v: {"side": "x" if v in s_x else "xbar", "slot": "1"} for v in s_x | s_xbar}
    return VariableGadget(
        graph=g.with_annotations(ann),
        s_x=frozenset(s_x),
        s_xbar=frozenset(s_xbar),
        true_color=RED,
        clause_mode="P3",
        swap=swap,
    )


# -- edge forcers ------------------------------------------------------------------


@dataclass
class EdgeForcer:
    """Triangle-free graph with a specified edge and claimed forced color."""

    graph: Graph
    edge: tuple
    claimed_color: str

    def __post_init__(self):
        self.edge = canonical_edge(*self.edge)
        if not self.graph.has_edge(*self.edge):
            raise RefusalError(f"specified edge {self.edge} not in graph")


def verify_edge_forcer(f, budget=DEFAULT_VERIFY_BUDGET):
    """Pass iff the host is edge-partitionable and the specified edge has
    the claimed color in every valid edge partition."""
    base = solve_edge_partition_constrained(f.graph, budget=budget)
    if base is None:
        return VerificationResult(False, "graph is not edge-partitionable")
    bad = solve_edge_partition_constrained(
        f.graph, force={f.edge: _other(f.claimed_color)}, budget=budget
    )
    if bad is not None:
        return VerificationResult(
            False,
            f"edge {f.edge} takes color {_other(f.claimed_color)} in some partition",
            bad,
        )
    return VerificationResult(True)


def build_k24_red_edge_forcer():
    """Smallest shipped red edge forcer: K2,4 plus a pendant edge at a
    2-vertex.  The K2,4 counting is exact (each center exactly two blue,
    each leaf exactly one), so the pendant edge can never be blue."""
    edges = [(0, z) for z in (2, 3, 4, 5)] + [(1, z) for z in (2, 3, 4, 5)]
    edges.append((2, 6))
    return EdgeForcer(graph=Graph(7, edges), edge=(2, 6), claimed_color=RED)


def build_blue_edge_forcer():
    """Two red edge forcers with their pendant tips identified saturate the
    shared vertex with two red edges; a further pendant edge there is
    forced blue."""
    f1 = build_k24_red_edge_forcer()
    f2 = build_k24_red_edge_forcer()
    merged, m1, m2 = identify_vertices(f1.graph, 6, f2.graph, 6)
    w = m1[6]
    pstar = merged.n
    g = Graph(merged.n + 1, merged.edges() + [(w, pstar)])
    return EdgeForcer(graph=g, edge=(w, pstar), claimed_color=BLUE)


def build_cage_red_edge_forcer(t, seed=0):
    """The scaling red edge forcer: take a 4-regular graph with girth at
    least ceil((t+1)/2), subdivide every edge once, and add a pendant edge
    at one subdivision vertex; the degree-(4,2) counting forces it red."""
    if t < 3:
        raise RefusalError("t must be at least 3")
    g_target = (t + 1 + 1) // 2
    base = four_regular_girth(g_target, seed=seed)
    sub, mid = subdivide_all_once(base)
    z = min(mid.values())
    g = Graph(sub.n + 1, sub.edges() + [(z, sub.n)])
    return EdgeForcer(graph=g, edge=(z, sub.n), claimed_color=RED)


# -- clause gadget for the edge-partition reduction ---------------------------------


@dataclass
class ClauseEdgeGadget:
    """Triangle-free gadget with three pairwise-disjoint literal edges.

    `forced_hints` lists (block_vertices, edge, color) facts that hold in
    every valid edge partition of the induced block; the verifier first
    re-proves each hint on its block (sound by restriction: a valid
    partition of the whole graph restricts to a valid partition of any
    induced subgraph) and then uses them as assumptions, which keeps the
    global probes propagation-driven."""

    graph: Graph
    literal_edges: list
    anchors: list  # internal endpoint of each literal edge
    forced_hints: list = field(default_factory=list)


def _append_k24(edges, n, attach):
    a, b = n, n + 1
    leaves = [n + 2, n + 3, n + 4, n + 5]
    for z in leaves:
        edges.append((a, z))
        edges.append((b, z))
    edges.append(canonical_edge(attach, leaves[0]))
    block = [a, b] + leaves + [attach]
    return n + 6, canonical_edge(attach, leaves[0]), block


def build_clause_edge_gadget():
    """Clause gadget: literal edges (x_i, t_i); each x_i carries a forced
    blue companion edge (so a blue literal edge pushes leafness to its tip
    side) and a forced red budget consumer; chains x_i - h_i - g meet at
    the shared vertex g.  All literals red forces every (x_i, h_i) blue,
    hence every (h_i, g) red, overloading g."""
    edges = []
    tips = [0, 1, 2]
    xs = [3, 4, 5]
    hs = [6, 7, 8]
    g_hub = 9
    n = 10
    lits = []
    hints = []
    for i in range(3):
        edges.append((xs[i], tips[i]))
        lits.append(canonical_edge(xs[i], tips[i]))
        edges.append((xs[i], hs[i]))
        edges.append((hs[i], g_hub))
        # forced-blue companion: two K2,4 red forcers joined at w_i, with
        # the blue-forced pendant landing on x_i
        w = n
        n += 1
        n, r1, blk1 = _append_k24(edges, n, w)
        n, r2, blk2 = _append_k24(edges, n, w)
        edges.append(canonical_edge(w, xs[i]))
        bf_block = sorted(set(blk1 + blk2 + [xs[i]]))
        hints.append((blk1, r1, RED))
        hints.append((blk2, r2, RED))
        hints.append((bf_block, canonical_edge(w, xs[i]), BLUE))
        # forced-red budget consumer at x_i
        n, rz, blkz = _append_k24(edges, n, xs[i])
        hints.append((blkz, rz, RED))
    return ClauseEdgeGadget(
        graph=Graph(n, edges),
        literal_edges=lits,
        anchors=list(xs),
        forced_hints=hints,
    )


def verify_clause_edge_gadget(cg, budget=DEFAULT_VERIFY_BUDGET):
    """Check, over all 8 literal-edge color patterns, that an extension
    exists iff at least one literal edge is blue; and that whenever a
    literal edge is blue, its anchor endpoint has another blue edge in
    every extension (so the tip side is forced to stay otherwise red,
    which is what the reduction needs from the gadget)."""
    g = cg.graph

    verified_units = {}
    for block, edge, color in cg.forced_hints:
        sub_verts = sorted(set(block))
        remap = {v: i for i, v in enumerate(sub_verts)}
        sub = Graph(
            len(sub_verts),
            [
                (remap[u], remap[v])
                for u, v in g.edges()
                if u in remap and v in remap
            ],
        )
        sub_edge = canonical_edge(remap[edge[0]], remap[edge[1]])
        res = verify_edge_forcer(
            EdgeForcer(graph=sub, edge=sub_edge, claimed_color=color), budget=budget
        )
        if not res:
            return VerificationResult(
                False, f"hint {edge}={color} fails on its block: {res.reason}"
            )
        verified_units[canonical_edge(*edge)] = color

    for pattern in itertools.product((RED, BLUE), repeat=3):
        force = dict(verified_units)
        force.update({cg.literal_edges[i]: pattern[i] for i in range(3)})
        sol = solve_edge_partition_constrained(g, force=force, budget=budget)
        expect = any(c == BLUE for c in pattern)
        if (sol is not None) != expect:
            return VerificationResult(
                False,
                f"pattern {pattern}: extension {'exists' if sol else 'missing'}, "
                f"expected {'one' if expect else 'none'}",
                sol,
            )

    for i, lit in enumerate(cg.literal_edges):
        anchor = cg.anchors[i]
        force = dict(verified_units)
        force[lit] = BLUE
        overridden = False
        for w in sorted(g.neighbors(anchor)):
            e = canonical_edge(anchor, w)
            if e != lit:
                if force.get(e, RED) != RED:
                    overridden = True
                force[e] = RED
        sol = solve_edge_partition_constrained(g, force=force, budget=budget)
        if sol is not None and not overridden:
            return VerificationResult(
                False,
                f"literal edge {lit} can be blue with an otherwise-red anchor",
                sol,
            )
        if overridden and sol is not None:
            # anchor carries a forced-blue companion, yet an all-red anchor
            # extension exists: contradicts the verified hint
            return VerificationResult(
                False, f"hint contradiction at anchor {anchor}", sol
            )
    return VerificationResult(True)


# -- gadget files --------------------------------------------------------------------


def save_gadget(obj, extra_meta=()):
    """Annotated edge-list serialization of any gadget object."""
    g = obj.graph
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    meta = list(extra_meta)
    ann = {}
    if isinstance(obj, Forcer):
        meta += [("role", f"{obj.claimed_color}-forcer")]
        ann[obj.q] = {"role": "q"}
    elif isinstance(obj, EdgeForcer):
        meta += [
            ("role", "edge-forcer"),
            ("claimed", obj.claimed_color),
            ("edge", f"{obj.edge[0]} {obj.edge[1]}"),
        ]
    elif isinstance(obj, VariableGadget):
        meta += [
            ("role", "variable"),
            ("true_color", obj.true_color),
            ("clause_mode", obj.clause_mode),
        ]
        for v in sorted(obj.s_x):
            ann.setdefault(v, {})["side"] = "x"
        for v in sorted(obj.s_xbar):
            ann.setdefault(v, {})["side"] = "xbar"
        for v, p in sorted(obj.parity.items()):
            ann.setdefault(v, {})["parity"] = str(p)
    else:
        raise RefusalError(f"cannot serialize {type(obj).__name__}")
    for key, value in meta:
        lines.append(f"g {key} {value}")
    for v in sorted(ann):
        for key in sorted(ann[v]):
            lines.append(f"a {v} {key} {ann[v][key]}")
    return "\n".join(lines) + "\n"


def load_gadget(text):
    """Parse a gadget file back into the matching object."""
    n = None
    edges = []
    meta = {}
    ann = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            n = int(parts[1])
        elif parts[0] == "e":
            edges.append((int(parts[1]), int(parts[2])))
        elif parts[0] == "g":
            meta[parts[1]] = " ".join(parts[2:])
        elif parts[0] == "a":
            ann.setdefault(int(parts[1]), {})[parts[2]] = parts[3]
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno)
    if n is None:
        raise ParseError("missing header")
    g = Graph(n, edges, ann)
    role = meta.get("role", "")
    if role in (f"{RED}-forcer", f"{BLUE}-forcer"):
        qs = [v for v, kv in ann.items() if kv.get("role") == "q"]
        if len(qs) != 1:
            raise ParseError("forcer file needs exactly one vertex annotated role=q")
        return Forcer(graph=g, q=qs[0], claimed_color=role.split("-")[0])
    if role == "edge-forcer":
        u, v = map(int, meta["edge"].split())
        return EdgeForcer(graph=g, edge=(u, v), claimed_color=meta["claimed"])
    if role == "variable":
        s_x = frozenset(v for v, kv in ann.items() if kv.get("side") == "x")
        s_xbar = frozenset(v for v, kv in ann.items() if kv.get("side") == "xbar")
        parity = {
            v: int(kv["parity"]) for v, kv in ann.items() if "parity" in kv
        }
        return VariableGadget(
            graph=g,
            s_x=s_x,
            s_xbar=s_xbar,
            true_color=meta.get("true_color", RED),
            clause_mode=meta.get("clause_mode", "P3"),
            parity=parity,
        )
    raise ParseError(f"unknown gadget role {role!r}")
