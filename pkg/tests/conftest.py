"""Shared random generators for the test suite.

Everything is seeded; the acceptance module relies on the exact counts
being reproducible.
"""

from __future__ import annotations

import random

from katsura.invsemigroup import PathWord, Triple, triple
from katsura.matrices import MatrixPair
from katsura.semigroupoid import GWord, HPower


def random_pair(
    rng: random.Random,
    n_max: int = 4,
    a_max: int = 3,
    b_max: int = 3,
    ensure_e: bool = False,
) -> MatrixPair:
    """A valid pair: no zero A-row, B supported inside A.  With ensure_e,
    B is nonzero on the whole support."""
    n = rng.randint(1, n_max)
    a = [[rng.randint(0, a_max) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        if not any(a[i]):
            a[i][rng.randrange(n)] = rng.randint(1, a_max)
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if a[i][j]:
                if ensure_e:
                    b[i][j] = rng.choice([x for x in range(-b_max, b_max + 1) if x])
                else:
                    b[i][j] = rng.randint(-b_max, b_max)
    return MatrixPair.from_rows(a, b)


def random_walk(rng: random.Random, pair: MatrixPair, start: int, length: int) -> tuple:
    """Edges of a forward random walk; may be shorter than `length` never
    (every vertex has out-arcs)."""
    edges = []
    v = start
    for _ in range(length):
        w = rng.choice(pair.out_vertices(v))
        n = rng.randint(1, pair.a_at(v, w))
        edges.append((v, w, n))
        v = w
    return tuple(edges)


def random_backward_walk(rng: random.Random, pair: MatrixPair, end: int, length: int) -> tuple:
    """Edges of a backward walk into `end`; shortens when a vertex has no
    predecessors."""
    edges = []
    v = end
    for _ in range(length):
        preds = [u for u in pair.vertices if pair.a_at(u, v) >= 1]
        if not preds:
            break
        u = rng.choice(preds)
        n = rng.randint(1, pair.a_at(u, v))
        edges.insert(0, (u, v, n))
        v = u
    return tuple(edges)


def random_path_word(rng: random.Random, pair: MatrixPair, max_len: int) -> PathWord:
    start = rng.choice(list(pair.vertices))
    edges = random_walk(rng, pair, start, rng.randint(0, max_len))
    return PathWord(start, edges)


def random_isg(rng: random.Random, pair: MatrixPair, max_len: int = 4, t_max: int = 5) -> Triple:
    """A random nonzero element: two path words sharing their range vertex."""
    left = random_path_word(rng, pair, max_len)
    right_edges = random_backward_walk(rng, pair, left.target, rng.randint(0, max_len))
    base = right_edges[0][0] if right_edges else left.target
    right = PathWord(base, right_edges)
    return triple(pair, left, rng.randint(-t_max, t_max), right)


def random_gword(rng: random.Random, pair: MatrixPair, max_len: int, spread: int = 8) -> GWord:
    """A standard-form g-word with a random (possibly wild) final offset."""
    start = rng.choice(list(pair.vertices))
    edges = list(random_walk(rng, pair, start, rng.randint(1, max_len)))
    i, j, _ = edges[-1]
    edges[-1] = (i, j, rng.randint(-spread, spread))
    return GWord(tuple(edges))


def random_sgp(rng: random.Random, pair: MatrixPair, max_len: int = 4):
    if rng.random() < 0.25:
        return HPower(rng.choice(list(pair.vertices)), rng.randint(1, 5))
    return random_gword(rng, pair, max_len)


def random_raw_word(rng: random.Random, pair: MatrixPair, max_len: int = 8) -> list:
    """A composable raw word mixing h-atoms and g-atoms."""
    from katsura.semigroupoid import HAtom

    length = rng.randint(1, max_len)
    word = []
    v = rng.choice(list(pair.vertices))
    for _ in range(length):
        if rng.random() < 0.3:
            word.append(HAtom(v, rng.randint(1, 3)))
        else:
            w = rng.choice(pair.out_vertices(v))
            word.append((v, w, rng.randint(-6, 6)))
            v = w
    if all(isinstance(x, HAtom) for x in word):
        word.append((v, rng.choice(pair.out_vertices(v)), rng.randint(-6, 6)))
    return word
