"""Random valid twisted actions for property tests (seeded numpy RNG)."""

import math

import numpy as np

from realorbits.abelian import SubgroupSpec, TorsionGroup, even_weight, squares, two_torsion
from realorbits.action import TwistedAction, TwistedGenerator, validate


def random_action(rng, max_states):
    while True:
        blocks = []
        for _ in range(rng.integers(1, 4)):
            blocks.append((int(rng.choice([2, 3, 4, 5, 8])), int(rng.integers(1, 5))))
        moduli = [m for m, c in blocks for _ in range(c)]
        G = TorsionGroup(moduli)
        kind = rng.integers(0, 4)
        if kind == 0:
            S = G.full()
        elif kind == 1:
            S = two_torsion(G)
        elif kind == 2:
            S = squares(G.full())
        else:
            gens = [[int(rng.integers(0, m)) for m in moduli] for _ in range(rng.integers(1, 4))]
            S = SubgroupSpec(G, gens)
        if S.order > max_states or S.order < 2:
            continue
        states = S.enumerate()
        gens = []
        for k in range(rng.integers(0, 4)):
            twist = states[rng.integers(0, len(states))]
            if kind == 3:
                gens.append(TwistedGenerator(f"t{k}", tuple(range(G.rank)), (1,) * G.rank, twist))
                continue
            perm = list(range(G.rank))
            start = 0
            for m, c in blocks:
                block = list(range(start, start + c))
                perm[start : start + c] = [block[i] for i in rng.permutation(c)]
                start += c
            units = []
            for i in range(G.rank):
                choices = [u for u in range(1, moduli[i] + 1) if math.gcd(u, moduli[i]) == 1]
                units.append(int(rng.choice(choices)))
            gens.append(TwistedGenerator(f"g{k}", tuple(perm), tuple(units), twist))
        A = TwistedAction(G, S, gens, "random")
        if validate(A).ok:
            return A


def random_even_weight_action(rng, n, n_gens=3):
    """Twisted permutation actions on even-weight vectors of (Z/2)^n."""
    G = TorsionGroup([2] * n)
    S = even_weight(G)
    gens = []
    for k in range(n_gens):
        perm = tuple(int(x) for x in rng.permutation(n))
        w = [0] * n
        a, b = rng.choice(n, size=2, replace=False)
        w[a] = w[b] = int(rng.integers(0, 2))
        gens.append(TwistedGenerator(f"g{k}", perm, (1,) * n, G.element(w)))
    return TwistedAction(G, S, gens, f"random even-weight n={n}")
