"""Independent brute-force oracles used to freeze expected values.

Everything here recomputes from definitions (raw subset scans, permutation
checks, union-find), deliberately sharing no machinery with the package
paths it is used to check.
"""

from itertools import combinations, permutations


def brute_covers(G, d):
    """All size-d vertex covers by scanning every d-subset."""
    edges = G.edges()
    out = []
    for combo in combinations(range(G.n), d):
        s = set(combo)
        if all(u in s or v in s for u, v in edges):
            out.append(frozenset(s))
    return out


def brute_minimal_covers(G):
    """Inclusion-minimal covers by scanning all subsets."""
    edges = G.edges()
    covers = []
    for size in range(G.n + 1):
        for combo in combinations(range(G.n), size):
            s = set(combo)
            if all(u in s or v in s for u, v in edges):
                covers.append(frozenset(s))
    return [c for c in covers if not any(o < c for o in covers)]


def brute_dual(supports):
    """Minimal hitting sets of a family of supports (frozensets)."""
    universe = sorted(set().union(*supports)) if supports else []
    hits = []
    for size in range(len(universe) + 1):
        for combo in combinations(universe, size):
            s = set(combo)
            if all(s & sup for sup in supports):
                hits.append(frozenset(s))
    return [h for h in hits if not any(o < h for o in hits)]


def naive_colon_is_linear(prefix, u):
    """Definition-level check that (prefix):(u) is variable-generated.

    The colon's generators are the minimal sets among {p - u}; it is
    generated by variables iff every minimal generator has size one.
    """
    diffs = [frozenset(p) - frozenset(u) for p in prefix]
    minimal = [d for d in diffs if not any(o < d for o in diffs)]
    return all(len(d) == 1 for d in minimal)


def permutation_order_exists(supports):
    """Exhaustive linear-quotients check over all generator orders."""
    gens = list(supports)
    if len(gens) <= 1:
        return True
    for perm in permutations(range(len(gens))):
        seq = [gens[i] for i in perm]
        if all(naive_colon_is_linear(seq[:i], seq[i]) for i in range(1, len(seq))):
            return True
    return False


def component_count(vertices, edges):
    """Union-find component count, the oracle for reduced H_0 + 1."""
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in vertices})


def koszul_faces_by_scan(gen_supports, b):
    """Faces of the upper Koszul complex by scanning all subsets of b."""
    b = frozenset(b)
    faces = set()
    for size in range(len(b) + 1):
        for combo in combinations(sorted(b), size):
            a = frozenset(combo)
            rest = b - a
            if any(g <= rest for g in gen_supports):
                faces.add(a)
    return faces
