"""Independent brute-force oracles.

These work from scratch on permutation tuples or on the raw Cayley table
with plain Python sets, and never call into the search code they check.
"""

import itertools


def compose(x, y):
    # apply x, then y
    return tuple(y[i] for i in x)


def perm_closure(gens, degree):
    identity = tuple(range(degree))
    elems = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def is_closed(table, subset):
    return all(table[a][b] in subset for a in subset for b in subset)


def all_subgroups_by_subsets(table):
    """Every subset containing 0 that is closed under multiplication (finite => subgroup)."""
    n = len(table)
    out = []
    for r in range(n):
        for rest in itertools.combinations(range(1, n), r):
            s = frozenset((0,) + rest)
            if is_closed(table, s):
                out.append(s)
    return out


def maximal_from(subgroups, n):
    proper = [s for s in subgroups if len(s) < n]
    return [s for s in proper if not any(s < t for t in proper)]


def commutator_closure(table):
    n = len(table)
    inv = [next(j for j in range(n) if table[i][j] == 0) for i in range(n)]
    comms = {table[table[inv[a]][inv[b]]][table[a][b]] for a in range(n) for b in range(n)}
    sub = set(comms) | {0}
    changed = True
    while changed:
        changed = False
        for a in list(sub):
            for b in list(sub):
                c = table[a][b]
                if c not in sub:
                    sub.add(c)
                    changed = True
    return frozenset(sub)


def is_normal_by_conjugation(table, subset):
    n = len(table)
    inv = [next(j for j in range(n) if table[i][j] == 0) for i in range(n)]
    return all(table[table[inv[g]][h]][g] in subset for g in range(n) for h in subset)


def automorphism_count(table):
    """Count bijections preserving the table, by trying every permutation."""
    n = len(table)
    count = 0
    for perm in itertools.permutations(range(n)):
        if perm[0] != 0:
            continue
        if all(perm[table[a][b]] == table[perm[a]][perm[b]] for a in range(n) for b in range(n)):
            count += 1
    return count


def element_orders(table):
    n = len(table)
    out = []
    for g in range(n):
        k, x = 1, g
        while x != 0:
            x = table[x][g]
            k += 1
        out.append(k)
    return out


def min_cover_size(n, subsets):
    """Smallest number of the given subsets whose union is range(n), by enumeration."""
    full = frozenset(range(n))
    for k in range(1, len(subsets) + 1):
        for combo in itertools.combinations(subsets, k):
            if frozenset().union(*combo) == full:
                return k
    return None


def covers_of_size(n, subsets, k):
    full = frozenset(range(n))
    return [set(c) for c in itertools.combinations(subsets, k) if frozenset().union(*c) == full]
