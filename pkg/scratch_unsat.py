"""Dev scratch: search for a small unsatisfiable (3,<=4) formula.

Counting: a 3-clause with distinct variables kills 2^(n-3) of 2^n
assignments, so unsat needs >= 8 clauses; occurrence cap 4 then forces
n >= 6, and a hyperplane-counting argument rules out (n=6, c=8).
Search n >= 7 by hill climbing on the number of satisfying assignments.
"""
import itertools, random, sys

def count_sat(n, clauses, stop_at=None):
    cnt = 0
    for mask in range(2 ** n):
        ok = True
        for cl in clauses:
            if not any((mask >> (abs(l) - 1)) & 1 == (l > 0) for l in cl):
                ok = False
                break
        if ok:
            cnt += 1
            if stop_at is not None and cnt >= stop_at:
                return cnt
    return cnt


def occs(n, clauses):
    o = {v: 0 for v in range(1, n + 1)}
    for cl in clauses:
        for l in cl:
            o[abs(l)] += 1
    return o


def random_clause(rng, n):
    vs = rng.sample(range(1, n + 1), 3)
    return tuple(v if rng.random() < 0.5 else -v for v in sorted(vs))


def search(n, c, seed, iters=30000):
    rng = random.Random(seed)
    while True:
        clauses = [random_clause(rng, n) for _ in range(c)]
        if all(v <= 4 for v in occs(n, clauses).values()):
            break
    best = count_sat(n, clauses)
    for it in range(iters):
        if best == 0:
            return clauses
        i = rng.randrange(c)
        old = clauses[i]
        clauses[i] = random_clause(rng, n)
        if any(v > 4 for v in occs(n, clauses).values()):
            clauses[i] = old
            continue
        cur = count_sat(n, clauses, stop_at=best + 1)
        # accept improvements and (rarely) sideways moves
        if cur < best or (cur == best and rng.random() < 0.3):
            best = cur
        else:
            clauses[i] = old
    return None


for n, c in [(7, 9), (8, 10), (9, 12), (10, 13)]:
    print(f"--- n={n}, c={c}")
    for seed in range(12):
        res = search(n, c, seed)
        if res is not None:
            print("FOUND unsat:", n, "vars", c, "clauses,", "seed", seed)
            for cl in res:
                print("   ", cl)
            print("occurrences:", occs(n, res))
            sys.exit(0)
    print("  no luck")
print("nothing found")
