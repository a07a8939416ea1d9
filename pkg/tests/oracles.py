"""Brute-force references that share no code with the engine."""

import itertools


def even_sign_vectors(n):
    return [v for v in itertools.product((0, 1), repeat=n) if sum(v) % 2 == 0]


def _closure_partition(states, moves):
    """Orbits by repeated relaxation over explicit tuples."""
    parent = {s: s for s in states}

    def root(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for s in states:
        for t in moves(s):
            a, b = root(s), root(t)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for s in states:
        groups.setdefault(root(s), []).append(s)
    return sorted(sorted(g) for g in groups.values())


def n0_moves(p, q):
    """Moves of N0 as described in words: permute within each block, and flip
    a pair of equal entries at positions i <= p < j."""
    n = p + q

    def moves(s):
        out = []
        for i, j in itertools.combinations(range(n), 2):
            t = list(s)
            if (i < p) == (j < p):
                t[i], t[j] = t[j], t[i]
            elif s[i] == s[j]:
                t[i] = t[j] = 1 - s[i]
            out.append(tuple(t))
        return out

    return moves


def w00_moves(p, q):
    n = p + q

    def moves(s):
        out = []
        for i, j in itertools.combinations(range(n), 2):
            if (i < p) == (j < p):
                t = list(s)
                t[i], t[j] = t[j], t[i]
                out.append(tuple(t))
        return out

    return moves


def n0_orbits(p, q):
    return _closure_partition(even_sign_vectors(p + q), n0_moves(p, q))


def w00_orbits(p, q):
    return _closure_partition(even_sign_vectors(p + q), w00_moves(p, q))


def w00_count_by_minus_counts(p, q):
    return len([(a, b) for a in range(p + 1) for b in range(q + 1) if (a + b) % 2 == 0])


def form_signature(s, p):
    """Signature of sum_j (-1)^s_j eps_j y_j^2 by evaluating coefficients."""
    coeffs = [(-1) ** sj * (1 if j < p else -1) for j, sj in enumerate(s)]
    return (sum(c > 0 for c in coeffs), sum(c < 0 for c in coeffs))


def generic_orbits(states, generators):
    """Orbits of callables on hashable states, inverses not needed for finite permutations."""
    return _closure_partition(states, lambda s: [g(s) for g in generators])
