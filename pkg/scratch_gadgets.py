"""Dev scratch: mechanically validate the gadget designs before shipping."""
import itertools
from redblue import *
from redblue.graphs import canonical_edge, Graph
from redblue.solver import (
    enumerate_partitions, solve_partition_constrained,
    enumerate_edge_partitions, solve_edge_partition_constrained, RED, BLUE,
)

# ---------------------------------------------------------------- h4 forcer
def build_forcer(simultaneous=True):
    g = complement_of_cycle(7)
    if simultaneous:
        edges = g.edges()
        n = g.n
        for i, base in enumerate((3, 4, 6)):
            edges += [canonical_edge(n + i, w) for w in sorted(g.neighbors(base))]
        g = Graph(n + 3, edges)
    else:
        for base in (3, 4, 6):
            g = add_false_twin(g, base)
    # diamond with 2-vertices at v0 and q=12: edges v0-10, v0-11, 10-11, 10-12, 11-12
    edges = g.edges() + [(0, 10), (0, 11), (10, 11), (10, 12), (11, 12)]
    return Graph(13, edges)

for simu in (True, False):
    f = build_forcer(simu)
    en = enumerate_partitions(f)
    nparts = len(en.solutions)
    q_blue = all(12 in p.blue for p in en.solutions)
    some_nq_red = any({10, 11} <= p.red for p in en.solutions)
    print(f"forcer simultaneous={simu}: {nparts} partitions, q blue always={q_blue}, exists N(q) red={some_nq_red}")

# ------------------------------------------------- variable gadget, 2 sections
def section_edges(off):
    """One section: ring 0-6 (complement of C7), twins 7=tw(3),8=tw(4),9=tw(6),
    slots 10 (on r2&tw8), 11 (on r5&tw7)."""
    ring = complement_of_cycle(7)
    e = [(off + u, off + v) for u, v in ring.edges()]
    twins = {7: 3, 8: 4, 9: 6}
    for t, b in twins.items():
        e += [canonical_edge(off + t, off + w) for w in sorted(ring.neighbors(b))]
    e += [(off + 2, off + 10), (off + 8, off + 10)]   # slot_a
    e += [(off + 5, off + 11), (off + 7, off + 11)]   # slot_b
    return e

def build_vargadget(sections=2):
    edges = []
    per = 12
    for s in range(sections):
        edges += section_edges(s * per)
    for s in range(sections):
        t = (s + 1) % sections
        if t == s:
            continue
        edges.append(canonical_edge(s * per + 2, t * per + 2))
        edges.append(canonical_edge(s * per + 5, t * per + 5))
    return Graph(sections * per, sorted(set(edges)))

vg = build_vargadget(2)
print("variable gadget:", vg)
en = enumerate_partitions(vg)
print("variable gadget valid partitions:", len(en.solutions))
slot_a0, slot_b0, slot_a1, slot_b1 = 10, 11, 22, 23
S_x = {slot_a0, slot_b1}
S_xbar = {slot_b0, slot_a1}
for p in en.solutions:
    sx_red = {v for v in S_x if v in p.red}
    sxb_red = {v for v in S_xbar if v in p.red}
    print("  S_x red:", sorted(sx_red), " S_xbar red:", sorted(sxb_red))
    # bullet (iii): never both sides true(red)
    assert not (sx_red and sxb_red)
# bullet (ii): some partition with all S_x red and no blue slot having a blue nb
ok2 = False
for p in en.solutions:
    if all(v in p.red for v in S_x):
        bad = False
        for v in (S_x | S_xbar):
            if v in p.blue and any(w in p.blue for w in vg.neighbors(v)):
                bad = True
        if not bad:
            ok2 = True
print("bullet (ii) holds:", ok2)
# automorphism: swap sections
sigma = {v: (v + 12) % 24 for v in range(24)}
auto_ok = all(vg.has_edge(sigma[u], sigma[v]) for u, v in vg.edges())
print("section-swap is automorphism:", auto_ok, " swaps sides:",
      {sigma[v] for v in S_x} == S_xbar)

# ------------------------------------------------- K2,4 + pendant red edge forcer
k24p = Graph(7, [(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5), (2, 6)])
en = enumerate_edge_partitions(k24p)
pend = (2, 6)
print("K2,4+pendant edge-partitions:", len(en.solutions),
      "pendant red always:", all(pend in p.red for p in en.solutions))

# ------------------------------------------------- blue edge forcer
def shift_edges(edges, off):
    return [(u + off, v + off) for u, v in edges]

# two copies of K2,4+pendant with pendant tips identified as w, plus new pendant p*
# copy1: 0..5 + w;  copy2: 7..12 + w;  p* = 14 -- build explicitly
base = [(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5)]
w = 13
pstar = 14
edges = base + [(2, w)]
edges += shift_edges(base, 6)  # vertices 6..12, leaf-of-copy2 is 8=(2+6)
edges += [(8, w), (w, pstar)]
bluef = Graph(15, edges)
en = enumerate_edge_partitions(bluef)
qe = canonical_edge(w, pstar)
print("blue edge forcer partitions:", len(en.solutions),
      "q-edge blue always:", all(qe in p.blue for p in en.solutions))

# ------------------------------------------------- h9 forcer at t=5 (subdiv K5 + pendant)
j, mid = subdivide_all_once(complete_graph(5))
jp = Graph(j.n + 1, j.edges() + [(5, j.n)])  # pendant on 2-vertex 5 (first midpoint)
en = enumerate_edge_partitions(jp)
pend = canonical_edge(5, j.n)
print("subdivided-K5+pendant:", jp, "partitions:", len(en.solutions),
      "pendant red always:", all(pend in p.red for p in en.solutions))
# blue-degree pattern on subdivided K5 itself
en5 = enumerate_edge_partitions(j)
ok = True
for p in en5.solutions:
    bd = {v: 0 for v in j.vertices()}
    for u, v in p.blue:
        bd[u] += 1
        bd[v] += 1
    for v in j.vertices():
        want = 2 if j.degree(v) == 4 else 1
        if bd[v] != want:
            ok = False
print("subdivided K5: #edge-partitions:", len(en5.solutions), "blue-degree pattern:", ok)
