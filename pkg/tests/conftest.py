"""Shared generators for randomized tests.

Everything is seeded, so failures reproduce exactly. Posets and block
streams are generated in levels to keep chain lengths (and hence order
complexes and cochain complexes) small.
"""

import random

from chaintop import BlockDAG, FinToposet, closure


def random_complex(rng: random.Random, max_vertices=12, max_dim=4):
    """Random nonempty complex: closure of a few random maximal simplices."""
    n = rng.randint(1, max_vertices)
    gens = []
    for _ in range(rng.randint(1, 6)):
        size = rng.randint(1, min(max_dim + 1, n))
        gens.append(tuple(sorted(rng.sample(range(n), size))))
    return closure(gens)


def random_poset(rng: random.Random, max_elements=12, max_height=3):
    """Random leveled poset; covers only go from a level to a higher one."""
    n = rng.randint(1, max_elements)
    level = [rng.randint(0, max_height) for _ in range(n)]
    covers = []
    for i in range(n):
        lower = [j for j in range(n) if level[j] < level[i]]
        for p in rng.sample(lower, min(len(lower), rng.randint(0, 2))):
            covers.append((p, i))
    return FinToposet.from_covers(range(n), covers)


def random_dag(rng: random.Random, max_blocks=30):
    """Random block DAG; parents always have smaller ids (hence acyclic)."""
    n = rng.randint(1, max_blocks)
    parents = {}
    for i in range(n):
        k = min(i, rng.randint(0, 2))
        parents[i] = set(rng.sample(range(i), k)) if k else set()
    return BlockDAG.build(range(n), parents)


def random_stream(rng: random.Random, max_blocks=25, max_height=3):
    """Topologically ordered (block, parents) stream with bounded height.

    Heights are bounded so the resulting poset's chains stay short.
    """
    n = rng.randint(0, max_blocks)
    level = sorted(rng.randint(0, max_height) for _ in range(n))
    stream = []
    for i in range(n):
        lower = [j for j in range(i) if level[j] < level[i]]
        k = min(len(lower), rng.randint(0, 2))
        stream.append((i, tuple(sorted(rng.sample(lower, k)))))
    return stream


def random_matrix_rows(rng: random.Random, max_side=8, lo=-5, hi=5):
    """Random integer matrix as a list of rows."""
    r = rng.randint(1, max_side)
    c = rng.randint(1, max_side)
    return [[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)]
