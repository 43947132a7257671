"""Exact decision, enumeration, and CNF export for red/blue vertex
partitionability (blue part P3-free, red part triangle-free), and the
edge-partition analogue for triangle-free hosts (blue star forest, at
most two red edges per vertex).

The solver is self-contained: both constraint families clausify over one
boolean per vertex/edge (true = red) and are decided by propagation plus
chronological backtracking.  The CNF export exists for interoperability
and cross-checking, not as the engine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BudgetError, RefusalError
from .graphs import Graph, canonical_edge
from .structure import enumerate_induced_p3s, enumerate_triangles, find_triangle

RED = "red"
BLUE = "blue"

DEFAULT_ENUM_BUDGET = 2**22


@dataclass(frozen=True)
class Partition:
    """Total two-coloring of the vertices; validity is checked separately."""

    blue: frozenset
    red: frozenset

    def color_of(self, v):
        if v in self.blue:
            return BLUE
        if v in self.red:
            return RED
        raise KeyError(v)

    def to_json(self):
        return {"blue": sorted(self.blue), "red": sorted(self.red)}


@dataclass(frozen=True)
class EdgePartition:
    """Total two-coloring of the edges (as sorted pairs)."""

    blue: frozenset
    red: frozenset

    def color_of(self, e):
        e = canonical_edge(*e)
        if e in self.blue:
            return BLUE
        if e in self.red:
            return RED
        raise KeyError(e)

    def to_json(self):
        return {
            "blue": sorted(list(e) for e in self.blue),
            "red": sorted(list(e) for e in self.red),
        }


@dataclass
class EnumerationResult:
    solutions: list
    truncated: bool = False


# -- validity ---------------------------------------------------------------


def is_valid_partition(g, p):
    """None when valid; otherwise a witness tuple:
    ("blue_p3", (u, center, w)) or ("red_triangle", (u, v, w))."""
    if p.blue & p.red or (p.blue | p.red) != frozenset(g.vertices()):
        raise RefusalError("coloring is not a partition of the vertex set")
    for center in sorted(p.blue):
        nbrs = sorted(g.neighbors(center) & p.blue)
        for i, u in enumerate(nbrs):
            for w in nbrs[i + 1 :]:
                if not g.has_edge(u, w):
                    return ("blue_p3", (u, center, w))
    for u in sorted(p.red):
        for v in sorted(g.neighbors(u) & p.red):
            if v <= u:
                continue
            common = g.neighbors(u) & g.neighbors(v) & p.red
            for w in sorted(common):
                if w > v:
                    return ("red_triangle", (u, v, w))
    return None


def is_valid_edge_partition(g, ep):
    """None when valid; otherwise ("red_overload", v, edges) or
    ("blue_p4", (a, u, v, d)).  The host must be triangle-free."""
    tri = find_triangle(g)
    if tri is not None:
        raise RefusalError("edge partitions are defined on triangle-free hosts", tri)
    edges = set(map(tuple, g.edges()))
    if ep.blue & ep.red or (ep.blue | ep.red) != frozenset(edges):
        raise RefusalError("coloring is not a partition of the edge set")
    red_deg = {v: 0 for v in g.vertices()}
    blue_adj = {v: [] for v in g.vertices()}
    for u, v in sorted(ep.red):
        red_deg[u] += 1
        red_deg[v] += 1
    for v in g.vertices():
        if red_deg[v] > 2:
            inc = sorted(e for e in ep.red if v in e)
            return ("red_overload", v, tuple(inc))
    for u, v in sorted(ep.blue):
        blue_adj[u].append(v)
        blue_adj[v].append(u)
    for u, v in sorted(ep.blue):
        if len(blue_adj[u]) >= 2 and len(blue_adj[v]) >= 2:
            a = min(x for x in blue_adj[u] if x != v)
            d = min(x for x in blue_adj[v] if x != u)
            return ("blue_p4", (a, u, v, d))
    return None


# -- DPLL engine ------------------------------------------------------------


class _DPLL:
    """Chronological-backtracking solver over 3-ish-ary clauses.

    Variables are 1-based; a positive literal means "red".  Branching
    picks the variable in the most unresolved clauses (ties: lowest
    index) and tries red first, so runs are deterministic.
    """

    def __init__(self, nvars, clauses):
        self.nvars = nvars
        self.clauses = []
        self.always_unsat = False
        seen = set()
        for c in clauses:
            c = tuple(sorted(set(c), key=abs))
            if any(-lit in c for lit in c):
                continue  # tautology
            if not c:
                self.always_unsat = True
                continue
            if c in seen:
                continue
            seen.add(c)
            self.clauses.append(c)
        self.occ = [[] for _ in range(nvars + 1)]
        for ci, c in enumerate(self.clauses):
            for lit in c:
                self.occ[abs(lit)].append((ci, lit > 0))
        self.assign = [None] * (nvars + 1)
        self.n_sat = [0] * len(self.clauses)
        self.n_free = [len(c) for c in self.clauses]
        self.trail = []

    def _set(self, var, val, units):
        """Assign and collect newly-unit literals; False on conflict."""
        self.assign[var] = val
        self.trail.append(var)
        ok = True
        for ci, pol in self.occ[var]:
            if pol == val:
                self.n_sat[ci] += 1
            self.n_free[ci] -= 1
            if self.n_sat[ci] == 0:
                if self.n_free[ci] == 0:
                    ok = False
                elif self.n_free[ci] == 1:
                    for lit in self.clauses[ci]:
                        if self.assign[abs(lit)] is None:
                            units.append(lit)
                            break
        return ok

    def _undo_to(self, mark):
        while len(self.trail) > mark:
            var = self.trail.pop()
            val = self.assign[var]
            self.assign[var] = None
            for ci, pol in self.occ[var]:
                if pol == val:
                    self.n_sat[ci] -= 1
                self.n_free[ci] += 1

    def _propagate(self, literals):
        units = list(literals)
        while units:
            lit = units.pop()
            var, val = abs(lit), lit > 0
            cur = self.assign[var]
            if cur is not None:
                if cur != val:
                    return False
                continue
            if not self._set(var, val, units):
                return False
        return True

    def _pick_branch_var(self):
        # most-unresolved-constraints first, but prefer the frontier
        # (vars sharing an unresolved clause with an assigned var): purely
        # count-driven branching wanders away from partial assignments and
        # thrashes on instances made of many near-independent rigid blocks
        counts = [0] * (self.nvars + 1)
        frontier = [False] * (self.nvars + 1)
        for ci, c in enumerate(self.clauses):
            if self.n_sat[ci] == 0 and self.n_free[ci] > 0:
                touched = self.n_free[ci] < len(c)
                for lit in c:
                    if self.assign[abs(lit)] is None:
                        counts[abs(lit)] += 1
                        if touched:
                            frontier[abs(lit)] = True
        best, best_key = None, (-1, -1)
        for var in range(1, self.nvars + 1):
            if self.assign[var] is None:
                key = (1 if frontier[var] else 0, counts[var])
                if key > best_key:
                    best, best_key = var, key
        return best

    def run(self, assumptions=(), limit=None, budget=None, first_only=False):
        """Return (solutions, truncated); each solution is a bool tuple
        indexed by var-1.  Raises BudgetError when the budget runs out
        before the search is complete and no limit was requested."""
        solutions = []
        if self.always_unsat:
            return solutions, False
        mark = len(self.trail)
        state = {"budget": budget, "truncated": False}

        def record():
            solutions.append(
                tuple(self.assign[v] for v in range(1, self.nvars + 1))
            )
            if first_only or (limit is not None and len(solutions) >= limit):
                state["truncated"] = limit is not None and not first_only
                return True
            return False

        def search():
            var = self._pick_branch_var()
            if var is None:
                return record()
            if state["budget"] is not None:
                state["budget"] -= 1
                if state["budget"] < 0:
                    raise BudgetError(
                        "search budget exhausted before the enumeration completed"
                    )
            for val in (True, False):  # red first
                sub = len(self.trail)
                if self._propagate([var if val else -var]):
                    if search():
                        self._undo_to(sub)
                        return True
                self._undo_to(sub)
            return False

        try:
            if self._propagate(list(assumptions)):
                search()
        finally:
            self._undo_to(mark)
        return solutions, state["truncated"]


class _CDCL:
    """Conflict-driven solver (watched literals, 1UIP learning, backjumping)
    used for the decision paths; rigid gadget instances need learning to
    avoid re-refuting independent substructures.  Deterministic: branching
    follows activity scores bumped by a fixed learning schedule, ties by
    variable index, red tried first."""

    def __init__(self, nvars, clauses):
        self.nvars = nvars
        self.clauses = []
        self.always_unsat = False
        self.units = []
        seen = set()
        for c in clauses:
            c = tuple(sorted(set(c), key=abs))
            if any(-lit in c for lit in c):
                continue
            if not c:
                self.always_unsat = True
            elif len(c) == 1:
                self.units.append(c[0])
            elif c not in seen:
                seen.add(c)
                self.clauses.append(list(c))
        self.watches = {}  # literal -> clause indices watching it
        for ci, c in enumerate(self.clauses):
            self.watches.setdefault(c[0], []).append(ci)
            self.watches.setdefault(c[1], []).append(ci)
        self.assign = [None] * (nvars + 1)
        self.level = [0] * (nvars + 1)
        self.reason = [None] * (nvars + 1)
        self.trail = []
        self.activity = [0.0] * (nvars + 1)
        for c in self.clauses:
            for lit in c:
                self.activity[abs(lit)] += 1.0

    def _value(self, lit):
        v = self.assign[abs(lit)]
        if v is None:
            return None
        return v if lit > 0 else not v

    def _enqueue(self, lit, reason, dl):
        var = abs(lit)
        self.assign[var] = lit > 0
        self.level[var] = dl
        self.reason[var] = reason
        self.trail.append(var)

    def _propagate(self, qhead, dl):
        """Returns (conflict clause or None, new qhead)."""
        while qhead < len(self.trail):
            var = self.trail[qhead]
            qhead += 1
            false_lit = -var if self.assign[var] else var
            watchers = self.watches.get(false_lit, [])
            i = 0
            while i < len(watchers):
                ci = watchers[i]
                c = self.clauses[ci]
                # normalize: put the false literal at position 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                if self._value(c[0]) is True:
                    i += 1
                    continue
                moved = False
                for k in range(2, len(c)):
                    if self._value(c[k]) is not False:
                        c[1], c[k] = c[k], c[1]
                        self.watches.setdefault(c[1], []).append(ci)
                        watchers[i] = watchers[-1]
                        watchers.pop()
                        moved = True
                        break
                if moved:
                    continue
                if self._value(c[0]) is False:
                    return c, qhead  # conflict
                self._enqueue(c[0], ci, dl)
                i += 1
        return None, qhead

    def _analyze(self, conflict, dl):
        learned = []
        seen = [False] * (self.nvars + 1)
        counter = 0
        reason_lits = list(conflict)
        idx = len(self.trail) - 1
        p_lit = None
        while True:
            for lit in reason_lits:
                v = abs(lit)
                if not seen[v] and self.level[v] > 0:
                    seen[v] = True
                    self.activity[v] += 1.0
                    if self.level[v] == dl:
                        counter += 1
                    else:
                        learned.append(lit)
            while not seen[self.trail[idx]]:
                idx -= 1
            v = self.trail[idx]
            idx -= 1
            seen[v] = False
            counter -= 1
            p_lit = v if self.assign[v] else -v
            if counter == 0:
                learned.append(-p_lit)
                break
            ci = self.reason[v]
            reason_lits = [lit for lit in self.clauses[ci] if abs(lit) != v]
        if len(learned) == 1:
            return learned, 0
        back = max(self.level[abs(lit)] for lit in learned[:-1])
        return learned, back

    def _backjump(self, back_level):
        while self.trail and self.level[self.trail[-1]] > back_level:
            v = self.trail.pop()
            self.assign[v] = None
            self.reason[v] = None

    def solve(self, budget=None):
        """A model as a bool tuple (var order), or None; BudgetError when
        the conflict budget runs out."""
        if self.always_unsat:
            return None
        dl = 0
        for lit in self.units:
            if self._value(lit) is False:
                return None
            if self._value(lit) is None:
                self._enqueue(lit, None, 0)
        qhead = 0
        conflicts = 0
        while True:
            conflict, qhead = self._propagate(qhead, dl)
            if conflict is not None:
                if dl == 0:
                    return None
                conflicts += 1
                if budget is not None and conflicts > budget:
                    raise BudgetError("conflict budget exhausted")
                learned, back = self._analyze(conflict, dl)
                self._backjump(back)
                dl = back
                qhead = len(self.trail)
                if len(learned) == 1:
                    if self._value(learned[0]) is False:
                        return None
                    if self._value(learned[0]) is None:
                        self._enqueue(learned[0], None, 0)
                else:
                    # learned[-1] is the asserting literal; watch it plus a
                    # literal from the backjump level
                    c = [learned[-1]] + learned[:-1]
                    c[1:] = sorted(
                        c[1:], key=lambda lit: -self.level[abs(lit)]
                    )
                    ci = len(self.clauses)
                    self.clauses.append(c)
                    self.watches.setdefault(c[0], []).append(ci)
                    self.watches.setdefault(c[1], []).append(ci)
                    self._enqueue(c[0], ci, dl)
                continue
            branch = None
            best = (-1.0, 0)
            for v in range(1, self.nvars + 1):
                if self.assign[v] is None and (self.activity[v], -v) > best:
                    best = (self.activity[v], -v)
                    branch = v
            if branch is None:
                return tuple(self.assign[v] for v in range(1, self.nvars + 1))
            dl += 1
            self._enqueue(branch, None, dl)  # red first


def _cdcl_solve(nvars, clauses, budget=None):
    return _CDCL(nvars, clauses).solve(budget=budget)


# -- vertex-partition solving -------------------------------------------------


def _vertex_clauses(g):
    clauses = []
    for u, c, w in enumerate_induced_p3s(g):
        clauses.append((u + 1, c + 1, w + 1))
    for u, v, w in enumerate_triangles(g):
        clauses.append((-(u + 1), -(v + 1), -(w + 1)))
    return clauses


def _partition_from_assignment(vertices, assignment):
    red = frozenset(v for v, is_red in zip(vertices, assignment) if is_red)
    blue = frozenset(vertices) - red
    return Partition(blue=blue, red=red)


def _induced(g, verts):
    remap = {v: i for i, v in enumerate(verts)}
    edges = [
        (remap[u], remap[v])
        for u, v in g.edges()
        if u in remap and v in remap
    ]
    return Graph(len(verts), edges)


def solve_partition(g, budget=None):
    """A valid partition when one exists, else None.  Deterministic;
    disconnected graphs are solved per component and concatenated."""
    blue, red = set(), set()
    for comp in g.components():
        sub = _induced(g, comp)
        model = _cdcl_solve(sub.n, _vertex_clauses(sub), budget=budget)
        if model is None:
            return None
        for v, is_red in zip(comp, model):
            (red if is_red else blue).add(v)
    return Partition(blue=frozenset(blue), red=frozenset(red))


def solve_partition_constrained(g, force=None, require_any=(), budget=None):
    """Like solve_partition but with forced vertex colors and extra
    at-least-one clauses given as [(vertex, color), ...] lists.
    Used by the gadget verifiers; solved globally."""
    clauses = _vertex_clauses(g)
    for group in require_any:
        clauses.append(
            tuple((v + 1) if color == RED else -(v + 1) for v, color in group)
        )
    for v, color in (force or {}).items():
        clauses.append(((v + 1) if color == RED else -(v + 1),))
    model = _cdcl_solve(g.n, clauses, budget=budget)
    if model is None:
        return None
    return _partition_from_assignment(list(g.vertices()), model)


def enumerate_partitions(g, limit=None, budget=DEFAULT_ENUM_BUDGET):
    """All valid partitions, deduplicated, in lexicographic color order
    (blue before red, vertex by vertex).  Truncation is flagged when a
    limit is hit; exceeding the budget without a limit raises."""
    dp = _DPLL(g.n, _vertex_clauses(g))
    sols, truncated = dp.run(limit=limit, budget=budget)
    parts = [_partition_from_assignment(list(g.vertices()), s) for s in sols]
    parts.sort(key=lambda p: tuple(v in p.red for v in g.vertices()))
    return EnumerationResult(parts, truncated)


# -- CNF export ---------------------------------------------------------------


@dataclass
class CnfFormula:
    """Clauses as DIMACS-signed integer tuples over 1-based variables."""

    num_vars: int
    clauses: list
    names: dict = field(default_factory=dict)

    def validate(self):
        for c in self.clauses:
            if not c:
                raise RefusalError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise RefusalError(f"literal {lit} out of range")
            if any(-lit in c for lit in c):
                raise RefusalError(f"clause {c} contains a literal and its negation")
        return self


def encode_cnf(g):
    """Direct clausification: one variable r_v per vertex (true = red); an
    at-least-one-red clause per induced P3 and an at-least-one-blue clause
    per triangle.  Returns (formula, vertex -> variable map)."""
    var_of = {v: v + 1 for v in g.vertices()}
    clauses = [tuple((x + 1) for x in t) for t in enumerate_induced_p3s(g)]
    clauses += [tuple(-(x + 1) for x in t) for t in enumerate_triangles(g)]
    names = {v + 1: f"r{v}" for v in g.vertices()}
    return CnfFormula(g.n, clauses, names).validate(), var_of


def to_dimacs(formula, vertex_map=None):
    lines = []
    if vertex_map:
        for v in sorted(vertex_map):
            lines.append(f"c v {v} {vertex_map[v]}")
    lines.append(f"p cnf {formula.num_vars} {len(formula.clauses)}")
    for c in formula.clauses:
        lines.append(" ".join(str(lit) for lit in c) + " 0")
    return "\n".join(lines) + "\n"


def decode_model(g, model):
    """Partition from a CNF model given as {var: bool} over encode_cnf vars."""
    red = frozenset(v for v in g.vertices() if model[v + 1])
    return Partition(blue=frozenset(g.vertices()) - red, red=red)


# -- edge-partition solving ----------------------------------------------------


def _edge_clauses(g, edges, evar):
    clauses = []
    for v in g.vertices():
        inc = [evar[canonical_edge(v, w)] for w in sorted(g.neighbors(v))]
        for trip in itertools.combinations(inc, 3):
            clauses.append(tuple(-x for x in trip))
    seen = set()
    for b, c in edges:
        for bb, cc in ((b, c), (c, b)):
            for a in sorted(g.neighbors(bb)):
                if a == cc:
                    continue
                for d in sorted(g.neighbors(cc)):
                    if d == bb or d == a:
                        continue
                    trip = frozenset(
                        (
                            evar[canonical_edge(a, bb)],
                            evar[canonical_edge(bb, cc)],
                            evar[canonical_edge(cc, d)],
                        )
                    )
                    if trip not in seen:
                        seen.add(trip)
                        clauses.append(tuple(sorted(trip)))
    return clauses


def _edge_model(edges, assignment):
    red = frozenset(e for e, is_red in zip(edges, assignment) if is_red)
    blue = frozenset(edges) - red
    return EdgePartition(blue=blue, red=red)


def _require_triangle_free(g):
    tri = find_triangle(g)
    if tri is not None:
        raise RefusalError(
            "edge partitions are defined on triangle-free hosts", tri
        )


def solve_edge_partition(g, budget=None):
    _require_triangle_free(g)
    edges = [tuple(e) for e in g.edges()]
    evar = {e: i + 1 for i, e in enumerate(edges)}
    model = _cdcl_solve(len(edges), _edge_clauses(g, edges, evar), budget=budget)
    if model is None:
        return None
    return _edge_model(edges, model)


def solve_edge_partition_constrained(g, force=None, require_any=(), budget=None):
    """Edge solving with forced edge colors and extra at-least-one clauses
    given as [((u, v), color), ...] lists."""
    _require_triangle_free(g)
    edges = [tuple(e) for e in g.edges()]
    evar = {e: i + 1 for i, e in enumerate(edges)}
    clauses = _edge_clauses(g, edges, evar)
    for group in require_any:
        clauses.append(
            tuple(
                evar[canonical_edge(*e)]
                if color == RED
                else -evar[canonical_edge(*e)]
                for e, color in group
            )
        )
    for e, color in (force or {}).items():
        lit = evar[canonical_edge(*e)]
        clauses.append((lit if color == RED else -lit,))
    model = _cdcl_solve(len(edges), clauses, budget=budget)
    if model is None:
        return None
    return _edge_model(edges, model)


def enumerate_edge_partitions(g, limit=None, budget=DEFAULT_ENUM_BUDGET):
    _require_triangle_free(g)
    edges = [tuple(e) for e in g.edges()]
    evar = {e: i + 1 for i, e in enumerate(edges)}
    dp = _DPLL(len(edges), _edge_clauses(g, edges, evar))
    sols, truncated = dp.run(limit=limit, budget=budget)
    parts = [_edge_model(edges, s) for s in sols]
    parts.sort(key=lambda p: tuple(e in p.red for e in edges))
    return EnumerationResult(parts, truncated)
