"""Parse and validate bounded-occurrence 3-SAT instances and compile them
into vertex-partitionability instances: one variable gadget per variable,
one clause gadget (P3 or K3 on identified slot vertices) per clause, with
provenance, parity labels, and end-to-end verification at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BudgetError, ParseError, RefusalError
from .gadgets import VariableGadget, build_variable_gadget, verify_variable_gadget
from .graphs import Graph, canonical_edge
from .solver import BLUE, RED, CnfFormula, solve_partition
from .structure import find_induced_cycle, is_planar

DEFAULT_CYCLE_SCAN = 16


# -- DIMACS parsing -------------------------------------------------------------


def parse_dimacs(text):
    """DIMACS CNF reader; comments ignored, clauses may span lines.
    Structural validation (clause widths, occurrence caps, tautologies) is
    left to validate_3le4."""
    num_vars = None
    num_clauses = None
    clauses = []
    current = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("header must be 'p cnf <vars> <clauses>'", lineno)
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            continue
        if num_vars is None:
            raise ParseError("clause before header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > num_vars:
                    raise ParseError(f"literal {lit} out of range", lineno)
                current.append(lit)
    if current:
        raise ParseError("last clause not terminated by 0")
    if num_vars is None:
        raise ParseError("missing 'p cnf' header")
    if num_clauses is not None and len(clauses) != num_clauses:
        raise ParseError(
            f"header declares {num_clauses} clauses but {len(clauses)} found"
        )
    return CnfFormula(num_vars, clauses)


def format_dimacs(formula):
    lines = [f"p cnf {formula.num_vars} {len(formula.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in formula.clauses]
    return "\n".join(lines) + "\n"


# -- (3, <=4) validation -----------------------------------------------------------


@dataclass
class Validate3le4Report:
    ok: bool
    violations: list
    incidence_planar: bool | None = None  # advisory

    def __bool__(self):
        return self.ok


def validate_3le4(formula, check_planarity=True):
    """Pass iff every clause has exactly three distinct-variable literals
    and every variable occurs in at most four clauses.  Planarity of the
    variable-clause incidence graph is reported separately (advisory)."""
    violations = []
    occ = {v: 0 for v in range(1, formula.num_vars + 1)}
    for ci, clause in enumerate(formula.clauses):
        vars_in = [abs(l) for l in clause]
        if len(clause) != 3:
            violations.append(("clause_width", ci, len(clause)))
        elif len(set(vars_in)) != 3:
            violations.append(("repeated_variable", ci, tuple(clause)))
        for v in set(vars_in):
            occ[v] = occ.get(v, 0) + 1
    for v in sorted(occ):
        if occ[v] > 4:
            violations.append(("occurrences", v, occ[v]))
    planar = None
    if check_planarity:
        # bipartite incidence graph: variables then clauses
        edges = set()
        for ci, clause in enumerate(formula.clauses):
            for lit in clause:
                edges.add((abs(lit) - 1, formula.num_vars + ci))
        inc = Graph(formula.num_vars + len(formula.clauses), sorted(edges))
        planar = is_planar(inc).planar
    return Validate3le4Report(not violations, violations, planar)


# -- compilation ----------------------------------------------------------------------


@dataclass
class ReductionOutput:
    graph: Graph
    t: int
    gadget_set: str
    true_color: str
    clause_mode: str
    clause_vertices: list  # per clause, the 3 slot vertices in literal order
    slot_of_literal: dict  # (clause index, position) -> vertex
    variable_sides: dict  # var -> {"x": frozenset, "xbar": frozenset}
    used_slots: dict  # var -> list of used slot vertices
    parity: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "t": self.t,
            "gadget_set": self.gadget_set,
            "true_color": self.true_color,
            "clause_mode": self.clause_mode,
            "clauses": [list(cv) for cv in self.clause_vertices],
            "slots": {
                f"{ci}:{pos}": v for (ci, pos), v in sorted(self.slot_of_literal.items())
            },
            "variables": {
                str(v): {
                    "x": sorted(sides["x"]),
                    "xbar": sorted(sides["xbar"]),
                    "used": self.used_slots[v],
                }
                for v, sides in sorted(self.variable_sides.items())
            },
            "parity": {str(v): p for v, p in sorted(self.parity.items())},
        }


class DefaultGadgetSet:
    """The shipped gadget set: the two-state sectioned variable gadget,
    true = red, clause gadget P3.  Targets correctness of the equivalence;
    it makes no forbidden-subgraph-class promises, so the smallest
    consistent slot-separation parameter is t = 2."""

    name = "default"
    clause_mode = "P3"
    true_color = RED
    default_t = 2

    def build(self, sections):
        return build_variable_gadget(sections)

    def sections_for(self, polarities, t):
        """Each section offers one slot per side; slots of opposite sides in
        one section sit at distance 3, slots d sections apart at distance
        >= d + 2, so small t lets both polarities share sections."""
        npos = sum(1 for p in polarities if p)
        nneg = len(polarities) - npos
        if t <= 3:
            spread = 1
            need = max(2, max(npos, nneg) * spread)
        else:
            spread = t - 2
            need = max(2, len(polarities) * spread)
        while need % 4 != 2:
            need += 1
        return need

    def pick_slots(self, vg, sections, polarities, t):
        chosen = []
        if t <= 3:
            counters = {True: 0, False: 0}
            for positive in polarities:
                section = counters[positive] % sections
                counters[positive] += 1
                side = vg.s_x if positive else vg.s_xbar
                chosen.append(next(v for v in sorted(side) if v // 12 == section))
        else:
            spread = t - 2
            for j, positive in enumerate(polarities):
                section = (j * spread) % sections
                side = vg.s_x if positive else vg.s_xbar
                chosen.append(next(v for v in sorted(side) if v // 12 == section))
        return chosen


GADGET_SETS = {"default": DefaultGadgetSet()}


def _distances_from(g, src):
    dist = {src: 0}
    frontier = [src]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def compile_reduction(formula, gadget_set="default", t=None, verify_gadgets=True):
    """Build the partitionability instance: a verified variable gadget per
    variable (sized so used slots sit at pairwise distance >= t inside the
    gadget) and a clause gadget per clause whose vertices are the
    identified literal slots.  Deterministic for fixed inputs."""
    if isinstance(gadget_set, str):
        try:
            gs = GADGET_SETS[gadget_set]
        except KeyError:
            raise RefusalError(f"unknown gadget set {gadget_set!r}") from None
    else:
        gs = gadget_set
    if t is None:
        t = gs.default_t
    report = validate_3le4(formula, check_planarity=False)
    if not report.ok:
        raise RefusalError(f"formula is not (3,<=4): {report.violations}")

    occurrences = {v: [] for v in range(1, formula.num_vars + 1)}
    for ci, clause in enumerate(formula.clauses):
        for pos, lit in enumerate(clause):
            occurrences[abs(lit)].append((ci, pos, lit > 0))

    master_edges = []
    total = 0
    variable_sides = {}
    used_slots = {}
    slot_of_literal = {}
    verified_sections = set()
    for var in range(1, formula.num_vars + 1):
        occ = occurrences[var]
        sections = gs.sections_for([p for _, _, p in occ], t)
        vg = gs.build(sections)
        if verify_gadgets and sections not in verified_sections:
            res = verify_variable_gadget(vg)
            if not res:
                raise RefusalError(
                    f"gadget set failed verification at {sections} sections: {res.reason}"
                )
            verified_sections.add(sections)
        off = total
        master_edges.extend((u + off, v + off) for u, v in vg.graph.edges())
        total += vg.graph.n
        variable_sides[var] = {
            "x": frozenset(v + off for v in vg.s_x),
            "xbar": frozenset(v + off for v in vg.s_xbar),
        }
        chosen = gs.pick_slots(vg, sections, [p for _, _, p in occ], t)
        chosen = [v + off for v in chosen]
        used_slots[var] = chosen
        for (ci, pos, _), slot in zip(occ, chosen):
            slot_of_literal[(ci, pos)] = slot
        # used slots must sit far apart inside the gadget
        for i, a in enumerate(chosen):
            dist = _distances_from(vg.graph, a - off)
            for b in chosen[i + 1 :]:
                if dist.get(b - off, 10**9) < t:
                    raise RefusalError(
                        f"used slots {a} and {b} of variable {var} are closer than t={t}"
                    )

    clause_vertices = []
    parity = {}
    for ci, clause in enumerate(formula.clauses):
        verts = [slot_of_literal[(ci, pos)] for pos in range(3)]
        clause_vertices.append(tuple(verts))
        if gs.clause_mode == "P3":
            master_edges.append(canonical_edge(verts[0], verts[1]))
            master_edges.append(canonical_edge(verts[1], verts[2]))
            parity[verts[0]] = 1
            parity[verts[1]] = 2
            parity[verts[2]] = 1
        else:
            master_edges.append(canonical_edge(verts[0], verts[1]))
            master_edges.append(canonical_edge(verts[1], verts[2]))
            master_edges.append(canonical_edge(verts[0], verts[2]))

    graph = Graph(total, sorted(set(master_edges)))
    ann = {v: {"parity": str(p)} for v, p in parity.items()}
    return ReductionOutput(
        graph=graph.with_annotations(ann),
        t=t,
        gadget_set=gs.name,
        true_color=gs.true_color,
        clause_mode=gs.clause_mode,
        clause_vertices=clause_vertices,
        slot_of_literal=slot_of_literal,
        variable_sides=variable_sides,
        used_slots=used_slots,
        parity=parity,
    )


# -- verification ------------------------------------------------------------------------


def brute_force_sat(formula, max_vars=22):
    """Exhaustive satisfiability check; returns a satisfying assignment as
    {var: bool} or None."""
    n = formula.num_vars
    if n > max_vars:
        raise BudgetError(f"brute-force SAT refuses {n} > {max_vars} variables")
    for mask in range(2**n):
        ok = True
        for clause in formula.clauses:
            if not any(
                (mask >> (abs(l) - 1)) & 1 == (l > 0) for l in clause
            ):
                ok = False
                break
        if ok:
            return {v: bool((mask >> (v - 1)) & 1) for v in range(1, n + 1)}
    return None


def decode_assignment(out, partition):
    """Read a truth assignment off a partition: a variable is true iff some
    vertex on its positive side carries the true color."""
    tc = out.true_color
    assignment = {}
    for var, sides in out.variable_sides.items():
        pool = partition.red if tc == RED else partition.blue
        assignment[var] = any(v in pool for v in sides["x"])
    return assignment


def satisfies(formula, assignment):
    return all(
        any(assignment[abs(l)] == (l > 0) for l in clause)
        for clause in formula.clauses
    )


@dataclass
class ReductionCheck:
    passed: bool
    formula_satisfiable: bool
    graph_partitionable: bool
    decoded_assignment: dict | None = None
    reason: str = ""

    def __bool__(self):
        return self.passed


def verify_reduction(formula, out, budget=None, max_vars=22):
    """Desk-scale end-to-end check: brute-force satisfiability must match
    solver-decided partitionability, and on satisfiable instances the
    assignment decoded from a returned partition must satisfy the formula."""
    sat = brute_force_sat(formula, max_vars=max_vars)
    part = solve_partition(out.graph, budget=budget)
    if (sat is not None) != (part is not None):
        return ReductionCheck(
            False,
            sat is not None,
            part is not None,
            reason="satisfiability and partitionability disagree",
        )
    decoded = None
    if part is not None:
        decoded = decode_assignment(out, part)
        if not satisfies(formula, decoded):
            return ReductionCheck(
                False, True, True, decoded, "decoded assignment fails the formula"
            )
    return ReductionCheck(True, sat is not None, part is not None, decoded)


@dataclass
class ParityCheck:
    passed: bool
    vacuous: bool = False
    witness: object = None
    reason: str = ""

    def __bool__(self):
        return self.passed


def validate_parity(out, cycle_bound=DEFAULT_CYCLE_SCAN):
    """Labels must alternate on every labelled induced 3-vertex path, and
    the bounded odd-hole scan of the labelled region (the structure the
    labelling is meant to protect) must come back empty."""
    labels = out.parity
    if not labels:
        return ParityCheck(True, vacuous=True, reason="no parity labels present")
    g = out.graph
    for b in sorted(labels):
        nbrs = [a for a in sorted(g.neighbors(b)) if a in labels]
        for a, c in itertools.combinations(nbrs, 2):
            if g.has_edge(a, c):
                continue
            if labels[a] == labels[b] or labels[b] == labels[c]:
                return ParityCheck(
                    False,
                    witness=(a, b, c),
                    reason="labels fail to alternate on an induced path",
                )
    lab_verts = sorted(labels)
    remap = {v: i for i, v in enumerate(lab_verts)}
    lab_sub = Graph(
        len(lab_verts),
        [
            (remap[u], remap[v])
            for u, v in g.edges()
            if u in remap and v in remap
        ],
    )
    hole = find_induced_cycle(
        lab_sub, 5, min(lab_sub.n, cycle_bound), "odd", bound=cycle_bound
    )
    if hole is not None:
        hole = [lab_verts[v] for v in hole]
        return ParityCheck(False, witness=hole, reason="odd hole within scan window")
    return ParityCheck(True)
