"""Dev scratch: validate solver against brute force, then the gadget designs."""
import itertools
from redblue import *
from redblue.graphs import canonical_edge
from redblue.solver import Partition, EdgePartition


def brute_partitions(g):
    out = []
    verts = list(g.vertices())
    for mask in range(2 ** g.n):
        red = frozenset(v for v in verts if mask >> v & 1)
        p = Partition(blue=frozenset(verts) - red, red=red)
        if is_valid_partition(g, p) is None:
            out.append(p)
    return out


def brute_edge_partitions(g):
    out = []
    edges = [tuple(e) for e in g.edges()]
    for mask in range(2 ** len(edges)):
        red = frozenset(e for i, e in enumerate(edges) if mask >> i & 1)
        ep = EdgePartition(blue=frozenset(edges) - red, red=red)
        if is_valid_edge_partition(g, ep) is None:
            out.append(ep)
    return out


# 1. solver vs brute force on assorted small graphs
import random
rng = random.Random(7)
checked = 0
for trial in range(300):
    n = rng.randint(1, 7)
    maxm = n * (n - 1) // 2
    m = rng.randint(0, maxm)
    g = random_graph(n, m, seed=trial)
    bf = brute_partitions(g)
    sp = solve_partition(g)
    assert (sp is not None) == bool(bf), (n, m, trial)
    if sp:
        assert is_valid_partition(g, sp) is None
    en = enumerate_partitions(g)
    assert len(en.solutions) == len(bf), (trial, len(en.solutions), len(bf))
    assert set(en.solutions) == set(bf)
    checked += 1
print("vertex solver vs brute force over", checked, "random graphs: OK")

# C7bar facts
c7b = complement_of_cycle(7)
assert c7b.m == 14 and all(c7b.degree(v) == 4 for v in c7b.vertices())
en = enumerate_partitions(c7b)
blues = sorted(tuple(sorted(p.blue)) for p in en.solutions)
print("C7bar partitions:", len(en.solutions), blues)
expect = sorted(tuple(sorted({t, (t + 1) % 7, (t + 2) % 7})) for t in range(7))
assert blues == expect, blues

# P3 has 7 partitions
assert len(enumerate_partitions(path_graph(3)).solutions) == 7

# 2. edge solver vs brute force on small triangle-free graphs
checked = 0
for trial in range(400):
    n = rng.randint(1, 7)
    m = rng.randint(0, min(10, n * (n - 1) // 2))
    g = random_graph(n, m, seed=10000 + trial)
    from redblue.structure import find_triangle
    if find_triangle(g) is not None:
        continue
    bf = brute_edge_partitions(g)
    sp = solve_edge_partition(g)
    assert (sp is not None) == bool(bf), trial
    if sp:
        assert is_valid_edge_partition(g, sp) is None
    en = enumerate_edge_partitions(g)
    assert set(en.solutions) == set(bf), trial
    checked += 1
print("edge solver vs brute force over", checked, "random triangle-free graphs: OK")
