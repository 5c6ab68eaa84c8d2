"""Time-centrality metrics over TVG instants.

Two metrics rank time instants by how well a flooding diffusion started
at that instant performs, averaged over all start nodes:

* Cover time ct(t, tau): mean number of steps for the diffusion from
  (u, t) to inform at least ceil(tau * |V|) nodes, averaged over every
  start node u. If any start node never meets the threshold before the
  snapshots run out, the instant's value is INF (the count of failing
  starts is retained per instant, so softer aggregations stay derivable
  without rerunning). Lower is more central.

* Time-constrained coverage tcc(t, phi): sum over start nodes of the
  number of nodes informed after at most phi steps, normalized by |V|^2.
  Always in [1/|V|, 1]; higher is more central.

Values are exact rationals (Fraction); INF is float('inf'). CSV exports
render values as their float repr and INF as the literal `inf`.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Literal, Sequence

import numpy as np

from .diffusion import CoverageThreshold, spread_milestones
from .tvg import TVG

INF = math.inf

MetricValue = Fraction | float


def is_inf(value: MetricValue) -> bool:
    return isinstance(value, float) and math.isinf(value)


@dataclass(frozen=True)
class MetricSpec:
    """Which metric to compute, with its parameter."""

    kind: Literal["ct", "tcc"]
    tau: Fraction | None = None
    phi: int | None = None

    @classmethod
    def ct(cls, tau: Fraction | str) -> MetricSpec:
        frac = Fraction(tau)
        if not 0 < frac <= 1:
            raise ValueError(f"tau must be in (0, 1], got {frac}")
        return cls("ct", tau=frac)

    @classmethod
    def tcc(cls, phi: int) -> MetricSpec:
        if phi < 1:
            raise ValueError("phi must be at least 1")
        return cls("tcc", phi=phi)

    def label(self) -> str:
        if self.kind == "ct":
            return f"ct tau={self.tau}"
        return f"tcc phi={self.phi}"

    @property
    def higher_is_better(self) -> bool:
        return self.kind == "tcc"


@dataclass
class MetricTable:
    """Per-instant metric values over a half-open evaluation range."""

    metric: MetricSpec | None
    values: dict[int, MetricValue]
    eval_range: tuple[int, int]
    unreached_starts: dict[int, int] = field(default_factory=dict)

    def times(self) -> list[int]:
        return sorted(self.values)

    def finite_values(self) -> list[MetricValue]:
        return [v for v in self.values.values() if not is_inf(v)]


def default_eval_range(num_instants: int) -> tuple[int, int]:
    """Default evaluation prefix: the first ceil(0.825 * N) instants.

    Leaves the tail of the sequence as room for diffusions to spread.
    """
    last = -((-825 * num_instants) // 1000)
    return (0, min(num_instants, last))


def _cover_time_detail(
    tvg: TVG, t_i: int, thr: CoverageThreshold
) -> tuple[MetricValue, int]:
    milestones = spread_milestones(tvg, t_i, stop_count=thr.required_count)
    need = thr.required_count
    unreached = sum(1 for m in milestones if len(m) < need)
    if unreached:
        return INF, unreached
    return Fraction(sum(m[need - 1] for m in milestones), tvg.num_nodes), 0


def cover_time(tvg: TVG, t_i: int, thr: CoverageThreshold) -> MetricValue:
    """Cover time of one instant: mean steps to the threshold, or INF."""
    value, _ = _cover_time_detail(tvg, t_i, thr)
    return value


def tcc(tvg: TVG, t_i: int, phi: int) -> Fraction:
    """Time-constrained coverage of one instant for step budget phi."""
    if phi < 1:
        raise ValueError("phi must be at least 1")
    if tvg.num_nodes == 0:
        raise ValueError("TVG has no nodes")
    milestones = spread_milestones(tvg, t_i, max_steps=phi)
    return Fraction(sum(len(m) for m in milestones), tvg.num_nodes ** 2)


def _eval_instant(tvg: TVG, metric: MetricSpec, t_i: int) -> tuple[int, MetricValue, int]:
    if metric.kind == "ct":
        thr = CoverageThreshold.of(metric.tau, tvg.num_nodes)
        value, unreached = _cover_time_detail(tvg, t_i, thr)
        return t_i, value, unreached
    return t_i, tcc(tvg, t_i, metric.phi), 0


_worker_tvg: TVG | None = None
_worker_metric: MetricSpec | None = None


def _init_worker(tvg: TVG, metric: MetricSpec) -> None:
    global _worker_tvg, _worker_metric
    _worker_tvg = tvg
    _worker_metric = metric


def _eval_in_worker(t_i: int) -> tuple[int, MetricValue, int]:
    return _eval_instant(_worker_tvg, _worker_metric, t_i)


def metric_sweep(
    tvg: TVG,
    metric: MetricSpec,
    eval_range: tuple[int, int] | None = None,
    workers: int = 1,
) -> MetricTable:
    """Compute a metric for every instant of a half-open range.

    Per-instant computations are independent reads of the shared TVG and
    are distributed over worker processes when workers > 1; the assembled
    table does not depend on the worker count.
    """
    if tvg.num_nodes == 0:
        raise ValueError("TVG has no nodes")
    if eval_range is None:
        eval_range = default_eval_range(tvg.num_instants)
    first, last = eval_range
    if not (0 <= first < last <= tvg.num_instants):
        raise ValueError(
            f"evaluation range [{first},{last}) invalid for {tvg.num_instants} instants"
        )
    instants = range(first, last)
    if workers > 1:
        with ProcessPoolExecutor(
            max_workers=workers, initializer=_init_worker, initargs=(tvg, metric)
        ) as pool:
            chunk = max(1, len(instants) // (workers * 4))
            results = list(pool.map(_eval_in_worker, instants, chunksize=chunk))
    else:
        results = [_eval_instant(tvg, metric, t_i) for t_i in instants]
    values = {t_i: v for t_i, v, _ in results}
    unreached = {t_i: u for t_i, _, u in results}
    return MetricTable(metric, values, (first, last), unreached)


def _sort_key_low(item: tuple[int, MetricValue]) -> tuple[int, MetricValue, int]:
    t_i, value = item
    if is_inf(value):
        return (1, Fraction(0), t_i)
    return (0, value, t_i)


def rank_instants(
    table: MetricTable, k: int, higher_is_better: bool | None = None
) -> list[tuple[int, MetricValue]]:
    """Most central instants first; ties broken by earlier instant.

    Cover time ranks ascending with INF last, coverage ranks descending.
    Returns the first k entries (all, when k exceeds the table).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not table.values:
        raise ValueError("empty metric table")
    if higher_is_better is None:
        if table.metric is None:
            raise ValueError("table has no metric kind; pass higher_is_better")
        higher_is_better = table.metric.higher_is_better
    items = list(table.values.items())
    if higher_is_better:
        items.sort(key=lambda kv: (-kv[1], kv[0]))
    else:
        items.sort(key=_sort_key_low)
    return items[:k]


@dataclass(frozen=True)
class Distribution:
    """Empirical CDF or CCDF points over the finite values of a table."""

    kind: Literal["cdf", "ccdf"]
    points: tuple[tuple[MetricValue, Fraction], ...]
    excluded_infinite: int


def empirical_distribution(
    table: MetricTable, kind: Literal["cdf", "ccdf"] = "cdf"
) -> Distribution:
    """Distribution over finite values; INF entries are excluded and counted.

    CDF points are (v, fraction of finite values <= v); CCDF points are
    (v, fraction of finite values >= v), both over ascending distinct v.
    """
    if kind not in ("cdf", "ccdf"):
        raise ValueError(f"unknown distribution kind {kind!r}")
    finite = sorted(table.finite_values())
    excluded = len(table.values) - len(finite)
    if not finite:
        raise ValueError("no finite values to distribute")
    total = len(finite)
    counts: list[tuple[MetricValue, int]] = []
    for v in finite:
        if counts and counts[-1][0] == v:
            counts[-1] = (v, counts[-1][1] + 1)
        else:
            counts.append((v, 1))
    points = []
    if kind == "cdf":
        seen = 0
        for v, c in counts:
            seen += c
            points.append((v, Fraction(seen, total)))
    else:
        remaining = total
        for v, c in counts:
            points.append((v, Fraction(remaining, total)))
            remaining -= c
    return Distribution(kind, tuple(points), excluded)


def median(values: Sequence[MetricValue]) -> MetricValue:
    """Median with INF ordered above every finite value."""
    if not values:
        raise ValueError("median of empty sequence")
    ordered = sorted(values, key=lambda v: (1, 0.0) if is_inf(v) else (0, v))
    mid = len(ordered) // 2
    if len(ordered) % 2 == 1:
        return ordered[mid]
    lo, hi = ordered[mid - 1], ordered[mid]
    if is_inf(hi):
        return INF
    return (lo + hi) / 2


@dataclass(frozen=True)
class GroupStats:
    members: tuple[tuple[int, MetricValue], ...]
    minimum: MetricValue
    med: MetricValue
    maximum: MetricValue


def _group_stats(members: list[tuple[int, MetricValue]]) -> GroupStats:
    vals = [v for _, v in members]
    ordered = sorted(vals, key=lambda v: (1, 0.0) if is_inf(v) else (0, v))
    return GroupStats(tuple(members), ordered[0], median(vals), ordered[-1])


@dataclass(frozen=True)
class ComparisonReport:
    """Top-k instants versus a seeded random baseline of equal size."""

    metric: MetricSpec | None
    k: int
    seed: int
    top: GroupStats
    random: GroupStats


def compare_topk_random(
    tvg: TVG, table: MetricTable, k: int, seed: int
) -> ComparisonReport:
    """Contrast the k most central instants with k random other instants.

    The baseline is drawn uniformly without replacement from the table's
    instants excluding the top-k set, using a seeded generator, so the
    report is reproducible. Requires at least 2k instants.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if len(table.values) < 2 * k:
        raise ValueError(
            f"evaluation range of {len(table.values)} instants is too small for k={k}"
        )
    top = rank_instants(table, k)
    top_set = {t_i for t_i, _ in top}
    candidates = [t_i for t_i in table.times() if t_i not in top_set]
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(candidates), size=k, replace=False)
    chosen = sorted(candidates[int(i)] for i in picks)
    baseline = [(t_i, table.values[t_i]) for t_i in chosen]
    return ComparisonReport(
        table.metric, k, seed, _group_stats(top), _group_stats(baseline)
    )


# ---------------------------------------------------------------------------
# CSV export / import


def format_value(value: MetricValue) -> str:
    if is_inf(value):
        return "inf"
    return repr(float(value))


def write_table_csv(table: MetricTable, out: IO[str]) -> None:
    out.write("time_index,value,unreached_starts\n")
    for t_i in table.times():
        unreached = table.unreached_starts.get(t_i, 0)
        out.write(f"{t_i},{format_value(table.values[t_i])},{unreached}\n")


def read_table_csv(src: IO[str] | Iterable[str], metric: MetricSpec | None = None) -> MetricTable:
    """Read a table written by write_table_csv; values become floats."""
    values: dict[int, MetricValue] = {}
    unreached: dict[int, int] = {}
    for lineno, raw in enumerate(src, start=1):
        line = raw.strip()
        if not line:
            continue
        if lineno == 1:
            if line != "time_index,value,unreached_starts":
                raise ValueError(f"unexpected table header: {line!r}")
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 3 fields")
        try:
            t_i = int(parts[0])
            value = float(parts[1])
            count = int(parts[2])
        except ValueError:
            raise ValueError(f"line {lineno}: malformed row {line!r}") from None
        values[t_i] = value
        unreached[t_i] = count
    if not values:
        raise ValueError("metric table has no rows")
    times = sorted(values)
    return MetricTable(metric, values, (times[0], times[-1] + 1), unreached)


def write_distribution_csv(dist: Distribution, out: IO[str]) -> None:
    out.write("value,cum_fraction\n")
    for value, frac in dist.points:
        out.write(f"{format_value(value)},{repr(float(frac))}\n")


def write_comparison_csv(report: ComparisonReport, out: IO[str]) -> None:
    out.write("group,time_index,value\n")
    for group, stats in (("top", report.top), ("random", report.random)):
        for t_i, value in stats.members:
            out.write(f"{group},{t_i},{format_value(value)}\n")


def comparison_summary(report: ComparisonReport) -> str:
    """Human-readable three-point summary of both groups."""
    label = report.metric.label() if report.metric else "metric"
    lines = [f"top-{report.k} vs random-{report.k} ({label}, seed {report.seed})"]
    for name, stats in (("top", report.top), ("random", report.random)):
        lines.append(
            f"  {name:<7} min={format_value(stats.minimum)}"
            f" median={format_value(stats.med)} max={format_value(stats.maximum)}"
        )
    return "\n".join(lines)
