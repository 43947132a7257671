"""Dev scratch: second clause-edge-gadget design.

Per literal i: tip t_i, internal x_i, literal edge e_i=(x_i,t_i).
 - blue companion: blue edge forcer (two K2,4+pendant red forcers joined at
   w_i, pendant tip identified with x_i) => edge (w_i, x_i) forced blue.
 - budget consumer: K2,4 block, pendant tip identified with x_i => edge
   (x_i, zv_i) forced red.
 - chain: c_i=(x_i,h_i), d_i=(h_i,g);  g shared.
Claim: extension exists iff >=1 literal blue; and whenever e_i is blue,
x_i has >=2 blue incidences in every extension (tip side forced leaf).
"""
import itertools, time
from redblue import *
from redblue.graphs import canonical_edge, Graph
from redblue.solver import solve_edge_partition_constrained, RED, BLUE


def fresh_k24(edges, n, attach):
    """K2,4 block; returns (next_n, forced_red_edge (attach, leaf))."""
    a, b = n, n + 1
    leaves = [n + 2, n + 3, n + 4, n + 5]
    for z in leaves:
        edges.append((a, z))
        edges.append((b, z))
    edges.append((attach, leaves[0]))
    return n + 6, canonical_edge(attach, leaves[0])


def blue_forcer_at(edges, n, attach):
    """Two K2,4 red forcers joined at w, pendant tip = attach.
    Returns (next_n, forced_blue_edge (w, attach))."""
    w = n
    n = n + 1
    n, _ = fresh_k24(edges, n, w)
    n, _ = fresh_k24(edges, n, w)
    edges.append((w, attach))
    return n, canonical_edge(w, attach)


def build_clause_gadget():
    edges = []
    t = [0, 1, 2]
    x = [3, 4, 5]
    h = [6, 7, 8]
    g = 9
    n = 10
    lits = []
    for i in range(3):
        edges.append((x[i], t[i]))
        lits.append(canonical_edge(x[i], t[i]))
        edges.append((x[i], h[i]))
        edges.append((h[i], g))
        n, _ = blue_forcer_at(edges, n, x[i])
        n, _ = fresh_k24(edges, n, x[i])
    return Graph(n, edges), lits, x


g, lits, xs = build_clause_gadget()
print("gadget:", g)
t0 = time.time()
ok = True
for pat in itertools.product((RED, BLUE), repeat=3):
    force = {lits[i]: pat[i] for i in range(3)}
    sol = solve_edge_partition_constrained(g, force=force)
    expect = any(c == BLUE for c in pat)
    good = (sol is not None) == expect
    ok &= good
    print(pat, "->", sol is not None, "expect", expect, "OK" if good else "FAIL",
          f"{time.time()-t0:.1f}s")
# isolation, paper sense: e_i blue => x_i cannot be otherwise blue-free
for i in range(3):
    others = [canonical_edge(xs[i], w) for w in g.neighbors(xs[i])]
    others = [e for e in others if e != lits[i]]
    force = {lits[i]: BLUE}
    force.update({e: RED for e in others})
    sol = solve_edge_partition_constrained(g, force=force)
    good = sol is None
    ok &= good
    print("isolation literal", i, "OK" if good else "FAIL", f"{time.time()-t0:.1f}s")
print("ALL:", ok)
