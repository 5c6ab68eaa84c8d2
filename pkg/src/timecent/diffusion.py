"""Flooding diffusion over TVG snapshots.

Step rule. A diffusion starting from temporal node (u, t) holds the
informed set I_0 = {u}. Step s (s = 1, 2, ...) applies the contacts of
snapshot t + s - 1 exactly once: every node in contact with an informed
node at that snapshot joins I_s. Newly informed nodes relay only from the
next snapshot on (one hop per snapshot, no closure within a snapshot) and
informed nodes stay informed. The final snapshot is consumed like any
other, so recipients at the last instant count within that step.

A step that produces no growth does not end the diffusion, because later
snapshots may carry new contacts. Iteration stops only when a stopping
rule fires (informed-count threshold met, step budget spent) or when the
snapshots run out.

Informed sets are held as int bitmasks (bit v = node v informed); the
helpers below convert to frozensets at the API boundary. spread_milestones
runs all |V| start nodes of one instant simultaneously, which is what the
centrality sweeps build on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .tvg import TVG, TemporalNode


class _Unreached:
    """Distinct result for a diffusion that never met its threshold."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "UNREACHED"


UNREACHED = _Unreached()


@dataclass(frozen=True)
class CoverageThreshold:
    """Fraction of nodes a diffusion must inform, as an exact count.

    required_count = ceil(tau * num_nodes), computed in exact rational
    arithmetic so decimal tau values never hit float boundary issues
    (tau=0.1 with 160 nodes is exactly 16).
    """

    tau: Fraction
    required_count: int

    @classmethod
    def of(cls, tau: Fraction | str | int, num_nodes: int) -> CoverageThreshold:
        frac = Fraction(tau)
        if not 0 < frac <= 1:
            raise ValueError(f"tau must be in (0, 1], got {frac}")
        if num_nodes < 1:
            raise ValueError("threshold needs at least one node")
        required = -((-frac.numerator * num_nodes) // frac.denominator)
        return cls(frac, required)


@dataclass(frozen=True)
class DiffusionTrace:
    """Informed-set sizes of one diffusion, sizes[s] = |I_s|."""

    start: TemporalNode
    sizes: tuple[int, ...]
    exhausted: bool
    informed: frozenset[int]


def _check_start(tvg: TVG, start: TemporalNode) -> None:
    node, time = start
    if not 0 <= node < tvg.num_nodes:
        raise ValueError(f"start node {node} out of range [0,{tvg.num_nodes})")
    if not 0 <= time < tvg.num_instants:
        raise ValueError(f"start time {time} out of range [0,{tvg.num_instants})")


def _spread_steps(tvg: TVG, node: int, time: int) -> Iterator[int]:
    """Yield the informed bitmask after each step, up to exhaustion."""
    informed = 1 << node
    snapshots = tvg.snapshots
    for t in range(time, tvg.num_instants):
        new = informed
        for a, b in snapshots[t].contact_list:
            if informed >> a & 1:
                new |= 1 << b
            if informed >> b & 1:
                new |= 1 << a
        informed = new
        yield informed


def spread_profile(tvg: TVG, start: TemporalNode) -> list[int]:
    """Informed bitmasks [I_0, I_1, ..., I_smax], run to exhaustion."""
    _check_start(tvg, start)
    return [1 << start.node] + list(_spread_steps(tvg, start.node, start.time))


def mask_to_set(mask: int) -> frozenset[int]:
    out = set()
    while mask:
        low = mask & -mask
        out.add(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def diffuse(
    tvg: TVG,
    start: TemporalNode,
    *,
    required_count: int | None = None,
    max_steps: int | None = None,
) -> DiffusionTrace:
    """Run one diffusion and report per-step informed-set sizes.

    Stops as soon as the informed count reaches required_count, the step
    budget max_steps is spent, or the snapshots run out; exhausted is True
    only in the last case.
    """
    _check_start(tvg, start)
    if max_steps is not None and max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    sizes = [1]
    informed = 1 << start.node
    exhausted = False
    if required_count is None or sizes[0] < required_count:
        steps = _spread_steps(tvg, start.node, start.time)
        while True:
            if max_steps is not None and len(sizes) > max_steps:
                break
            try:
                informed = next(steps)
            except StopIteration:
                exhausted = True
                break
            sizes.append(informed.bit_count())
            if required_count is not None and sizes[-1] >= required_count:
                break
    return DiffusionTrace(start, tuple(sizes), exhausted, mask_to_set(informed))


def cover_steps(
    tvg: TVG, start: TemporalNode, thr: CoverageThreshold
) -> int | _Unreached:
    """Smallest step count whose informed set meets the threshold.

    Returns UNREACHED when the snapshots run out before the threshold is
    met. The start node itself counts, so required_count == 1 gives 0.
    """
    trace = diffuse(tvg, start, required_count=thr.required_count)
    for s, size in enumerate(trace.sizes):
        if size >= thr.required_count:
            return s
    return UNREACHED


def constrained_count(tvg: TVG, start: TemporalNode, phi: int) -> int:
    """Number of nodes informed after at most phi steps (start included)."""
    if phi < 1:
        raise ValueError("phi must be at least 1")
    return diffuse(tvg, start, max_steps=phi).sizes[-1]


def spread_milestones(
    tvg: TVG,
    time: int,
    *,
    max_steps: int | None = None,
    stop_count: int | None = None,
) -> list[list[int]]:
    """Run all |V| diffusions starting at one instant simultaneously.

    Returns per start node u a milestone array m where m[k] is the first
    step at which the diffusion from (u, time) had informed k+1 nodes
    (m[0] == 0 always). Arrays grow until the snapshots run out, every
    diffusion saturates, the step budget max_steps is spent, or every
    start has informed at least stop_count nodes.

    Identical to running diffuse() per start node; this transposed form
    keeps one bitmask per node holding the set of starts that have
    informed it, so each snapshot costs a handful of big-int operations.
    """
    n = tvg.num_nodes
    if not 0 <= time < tvg.num_instants:
        raise ValueError(f"time {time} out of range [0,{tvg.num_instants})")
    if max_steps is not None and max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    milestones: list[list[int]] = [[0] for _ in range(n)]
    if stop_count is not None and stop_count <= 1:
        return milestones
    # spread[v] = bitmask over start nodes whose diffusion has informed v
    spread = [1 << u for u in range(n)]
    total = n
    full_total = n * n
    pending = n
    last = tvg.num_instants
    if max_steps is not None:
        last = min(last, time + max_steps)
    snapshots = tvg.snapshots
    step = 0
    for t in range(time, last):
        step += 1
        contacts = snapshots[t].contact_list
        if not contacts:
            continue
        updates: dict[int, int] = {}
        get = updates.get
        for a, b in contacts:
            sa = spread[a]
            sb = spread[b]
            if sb & ~sa:
                updates[a] = get(a, 0) | sb
            if sa & ~sb:
                updates[b] = get(b, 0) | sa
        if not updates:
            continue
        for v, add in updates.items():
            newly = add & ~spread[v]
            if not newly:
                continue
            spread[v] |= newly
            total += newly.bit_count()
            while newly:
                low = newly & -newly
                newly ^= low
                m = milestones[low.bit_length() - 1]
                m.append(step)
                if stop_count is not None and len(m) == stop_count:
                    pending -= 1
        if total == full_total:
            break
        if stop_count is not None and pending == 0:
            break
    return milestones
