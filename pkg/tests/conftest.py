from __future__ import annotations

import random

import pytest

from timecent import TVG, Contact, build_tvg


@pytest.fixture
def chain4() -> TVG:
    """4-node TVG {t0: a-b, t1: b-c, t2: c-d} with a=0, b=1, c=2, d=3."""
    return build_tvg(4, 3, [Contact(0, 1, 0), Contact(1, 2, 1), Contact(2, 3, 2)])


def random_tvg(rng: random.Random, max_nodes: int = 10, max_instants: int = 12) -> TVG:
    """Small random TVG drawn from independent per-pair coin flips."""
    n = rng.randint(2, max_nodes)
    big_n = rng.randint(1, max_instants)
    p = rng.choice((0.1, 0.3, 0.6))
    per_time = [
        [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
        for _ in range(big_n)
    ]
    return TVG.from_snapshot_pairs(n, per_time)
