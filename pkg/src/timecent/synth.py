"""Randomized TVGs built from independent Erdos-Renyi snapshots.

RNG contract (part of the output format contract): snapshot i of a spec
seeded with s is drawn from numpy's PCG64 bit generator seeded with
SeedSequence((s, i)). The C(n, 2) node pairs are sampled in lexicographic
order (a < b, ascending) with one uniform draw per pair, taken as a single
vectorized block. The derivation is deterministic and platform
independent, and snapshots do not share RNG state, so they may be
generated in any order or in parallel with identical results.

The reference parameterization used throughout the test suite is 160
nodes, 800 instants and edge probability 0.01 * ln(160) / 160, about
3.17198363452e-04. That probability sits well below the ln(n)/n sharp
connectivity threshold, so every snapshot it produces is a sparse,
disconnected graph (about 4 contacts per instant on average).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .tvg import TVG

REFERENCE_NUM_NODES = 160
REFERENCE_NUM_INSTANTS = 800
REFERENCE_EDGE_PROBABILITY = 0.01 * math.log(160) / 160


@dataclass(frozen=True)
class ErTvgSpec:
    """Parameters of a randomized TVG with independent G(n, p) snapshots."""

    num_nodes: int
    num_instants: int
    edge_probability: float
    seed: int

    def __post_init__(self) -> None:
        if self.num_nodes < 1:
            raise ValueError("num_nodes must be at least 1")
        if self.num_instants < 1:
            raise ValueError("num_instants must be at least 1")
        if not 0 <= self.edge_probability <= 1:
            raise ValueError("edge_probability must be in [0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


def reference_spec(seed: int) -> ErTvgSpec:
    """The built-in reference parameterization with the given seed."""
    return ErTvgSpec(
        REFERENCE_NUM_NODES,
        REFERENCE_NUM_INSTANTS,
        REFERENCE_EDGE_PROBABILITY,
        seed,
    )


@lru_cache(maxsize=8)
def _pair_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Endpoint arrays of the C(n, 2) pairs in lexicographic order."""
    idx_a = []
    idx_b = []
    for a in range(n - 1):
        idx_a.extend([a] * (n - 1 - a))
        idx_b.extend(range(a + 1, n))
    return np.asarray(idx_a, dtype=np.int64), np.asarray(idx_b, dtype=np.int64)


def snapshot_pairs(spec: ErTvgSpec, index: int) -> list[tuple[int, int]]:
    """Contacts of snapshot `index`, drawn from its own seeded substream."""
    if not 0 <= index < spec.num_instants:
        raise ValueError(f"snapshot index {index} out of range")
    n = spec.num_nodes
    if n < 2 or spec.edge_probability == 0:
        return []
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((spec.seed, index))))
    draws = rng.random(n * (n - 1) // 2)
    hits = np.nonzero(draws < spec.edge_probability)[0]
    idx_a, idx_b = _pair_table(n)
    return [(int(a), int(b)) for a, b in zip(idx_a[hits], idx_b[hits])]


def generate_er_tvg(spec: ErTvgSpec) -> TVG:
    """Generate the randomized TVG described by `spec`."""
    per_time = (snapshot_pairs(spec, i) for i in range(spec.num_instants))
    return TVG.from_snapshot_pairs(spec.num_nodes, per_time)
