"""Dev scratch: unsat (3,<=4) search, bitmask edition.

Kill-set of a clause = assignments violating it, as a 2^n-bit integer.
Formula unsat <=> OR of kill sets = full mask.
"""
import random, sys, time

def make_masks(n):
    full = (1 << (1 << n)) - 1
    pos = []
    for v in range(n):
        block = (1 << (1 << v)) - 1  # alternating blocks of length 2^v
        m = 0
        shift = 0
        while shift < (1 << n):
            m |= block << (shift + (1 << v))
            shift += 1 << (v + 1)
        pos.append(m)
    return full, pos

def kill_mask(clause, full, pos):
    m = full
    for lit in clause:
        v = abs(lit) - 1
        m &= (full ^ pos[v]) if lit > 0 else pos[v]
    return m

def n_unsat_assignments(kills, full):
    m = 0
    for k in kills:
        m |= k
    return bin(full ^ m).count("1")  # remaining satisfying assignments

def occs(n, clauses):
    o = [0] * (n + 1)
    for cl in clauses:
        for l in cl:
            o[abs(l)] += 1
    return o

def random_clause(rng, n):
    vs = rng.sample(range(1, n + 1), 3)
    return tuple(v if rng.random() < 0.5 else -v for v in sorted(vs))

def search(n, c, seed, iters=200000):
    rng = random.Random(seed)
    full, pos = make_masks(n)
    while True:
        clauses = [random_clause(rng, n) for _ in range(c)]
        if max(occs(n, clauses)) <= 4:
            break
    kills = [kill_mask(cl, full, pos) for cl in clauses]
    best = n_unsat_assignments(kills, full)
    temp = 3.0
    for it in range(iters):
        if best == 0:
            return clauses
        temp = max(0.02, temp * 0.99997)
        i = rng.randrange(c)
        old_cl, old_k = clauses[i], kills[i]
        move = rng.random()
        if move < 0.5:
            # resign one literal
            j = rng.randrange(3)
            cl = list(old_cl)
            cl[j] = -cl[j]
            clauses[i] = tuple(cl)
        else:
            clauses[i] = random_clause(rng, n)
        if max(occs(n, clauses)) > 4:
            clauses[i], kills[i] = old_cl, old_k
            continue
        kills[i] = kill_mask(clauses[i], full, pos)
        cur = n_unsat_assignments(kills, full)
        if cur <= best or rng.random() < pow(2.7, -(cur - best) / temp):
            if cur < best:
                best = cur
        else:
            clauses[i], kills[i] = old_cl, old_k
    return None

t0 = time.time()
for n, c in [(8, 10), (9, 12), (10, 13), (11, 14), (12, 16), (13, 17), (14, 18), (15, 20), (16, 21)]:
    found = False
    for seed in range(6):
        res = search(n, c, seed)
        if res is not None:
            print(f"FOUND n={n} c={c} seed={seed}  ({time.time()-t0:.0f}s)")
            for cl in res:
                print("   ", cl)
            print("occ:", occs(n, res))
            found = True
            break
    print(f"n={n} c={c}: {'FOUND' if found else 'no'}  ({time.time()-t0:.0f}s)", flush=True)
    if found:
        sys.exit(0)
print("nothing")
