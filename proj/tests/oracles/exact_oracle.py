"""Independent brute-force oracle for the activity objective and its bounds.

Enumerates every live-edge outcome of a tiny graph (IC or LT) and evaluates
the activity, lower-bound and upper-bound objectives exactly. Used to search
for modularity witnesses and to freeze expected values for the C++ tests.
"""
import itertools
import random
import sys


def outcomes(n, arcs, model):
    """Yield (live_mask_set, probability) for every live-edge outcome."""
    if model == "ic":
        unsure = [i for i, (_, _, b, _) in enumerate(arcs) if 0 < b < 1]
        sure = {i for i, (_, _, b, _) in enumerate(arcs) if b >= 1}
        for bits in itertools.product([0, 1], repeat=len(unsure)):
            p = 1.0
            live = set(sure)
            for i, bit in zip(unsure, bits):
                b = arcs[i][2]
                p *= b if bit else 1 - b
                if bit:
                    live.add(i)
            yield live, p
    else:
        choices = []
        for v in range(n):
            ins = [(i, arcs[i][2]) for i in range(len(arcs)) if arcs[i][1] == v and arcs[i][2] > 0]
            rest = 1 - sum(b for _, b in ins)
            opts = list(ins)
            if rest > 1e-12:
                opts.append((None, rest))
            choices.append(opts)
        for combo in itertools.product(*choices):
            p = 1.0
            live = set()
            for i, b in combo:
                p *= b
                if i is not None:
                    live.add(i)
            yield live, p


def reach(n, arcs, live, seeds):
    seen = set(seeds)
    stack = list(seeds)
    while stack:
        u = stack.pop()
        for i in live:
            s, d = arcs[i][0], arcs[i][1]
            if s == u and d not in seen:
                seen.add(d)
                stack.append(d)
    return seen


def weights(n, arcs):
    w = [0.0] * n
    for s, d, _, a in arcs:
        w[s] += a / 2
        w[d] += a / 2
    return w


def exact(n, arcs, model, seeds, objective):
    w = weights(n, arcs)
    total = 0.0
    for live, p in outcomes(n, arcs, model):
        if objective == "activity":
            r = reach(n, arcs, live, seeds)
            val = sum(a for s, d, _, a in arcs if s in r and d in r)
        elif objective == "lower":
            rs = [reach(n, arcs, live, [x]) for x in seeds]
            val = sum(a for s, d, _, a in arcs if any(s in r and d in r for r in rs))
        elif objective == "upper":
            r = reach(n, arcs, live, seeds)
            val = sum(w[v] for v in r)
        else:
            raise ValueError(objective)
        total += p * val
    return total


def indeg_b(n, pairs):
    indeg = [0] * n
    for _, d in pairs:
        indeg[d] += 1
    return [(s, d, 1.0 / indeg[d], 1.0) for s, d in pairs]


def modularity_witness(n, arcs, model, sub):
    """Return (M, N, v) violating submodularity (sub=True) or supermodularity."""
    nodes = range(n)
    cache = {}

    def f(S):
        key = frozenset(S)
        if key not in cache:
            cache[key] = exact(n, arcs, model, sorted(key), "activity")
        return cache[key]

    for r in range(n):
        for N in itertools.combinations(nodes, r):
            for mr in range(len(N) + 1):
                for M in itertools.combinations(N, mr):
                    for v in nodes:
                        if v in N:
                            continue
                        gm = f(set(M) | {v}) - f(M)
                        gn = f(set(N) | {v}) - f(N)
                        if sub and gm < gn - 1e-9:
                            return M, N, v, gm, gn
                        if not sub and gm > gn + 1e-9:
                            return M, N, v, gm, gn
    return None


def search(sub, model, seed):
    rng = random.Random(seed)
    for _ in range(20000):
        n = rng.randint(3, 5)
        pairs = set()
        for _ in range(rng.randint(2, 6)):
            s, d = rng.sample(range(n), 2)
            pairs.add((s, d))
        pairs = sorted(pairs)
        arcs = indeg_b(n, pairs)
        res = modularity_witness(n, arcs, model, sub)
        if res:
            return n, pairs, res
    return None


if __name__ == "__main__":
    if sys.argv[1] == "witness":
        for sub in (True, False):
            for model in ("ic", "lt"):
                print("sub" if sub else "super", model, search(sub, model, 7))
    elif sys.argv[1] == "examples":
        # u=0 v=1 w=2: u->v (0.5), u->w (0.5), v->w (0,A=1)
        arcs = [(0, 1, 0.5, 1.0), (0, 2, 0.5, 1.0), (1, 2, 0.0, 1.0)]
        print("activity", exact(3, arcs, "ic", [0], "activity"))
        arcs = [(0, 1, 0.0, 1.0), (1, 2, 0.0, 1.0)]
        for o in ("activity", "lower", "upper"):
            print(o, exact(3, arcs, "ic", [0, 1], o))
