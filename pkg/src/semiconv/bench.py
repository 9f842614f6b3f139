"""Timing harness comparing the derivative and trie matchers.

Each (fixture, engine) pair builds its representation once, then matches
the fixture's canonical input ``3`` times untimed (warmup) and ``reps``
times timed.  The trie is reinterpreted once and reused across runs, so
after the first query every later one is a walk over cached cells.

TSV columns::

    fixture engine n reps weight min_us median_us mean_us cells_first cells_repeat

``cells_first`` counts trie cells forced by the first query and
``cells_repeat`` those forced by all later queries (``-`` for regexp).
``TIMEOUT`` replaces the timing cells when the first query does not finish
within the time limit.
"""

from __future__ import annotations

import statistics
import sys
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .algebra import NAT, Semiring
from .fixtures import BENCH_FIXTURES, canonical_input, fixture
from .keyed import format_weight
from .regexp import index_word, reinterpret
from .trie import TrieSemiring, cells_forced, t_index

ENGINES = ("regexp", "trie")
WARMUP = 3
COLUMNS = (
    "fixture", "engine", "n", "reps", "weight",
    "min_us", "median_us", "mean_us", "cells_first", "cells_repeat",
)


class EngineDisagreement(AssertionError):
    pass


@dataclass
class BenchRow:
    fixture: str
    engine: str
    n: int
    reps: int
    weight: object = None
    times_ns: list = field(default_factory=list)
    cells_first: Optional[int] = None
    cells_repeat: Optional[int] = None
    timed_out: bool = False

    @property
    def median_us(self) -> float:
        return statistics.median(self.times_ns) / 1000.0

    def cells(self) -> list[str]:
        if self.timed_out:
            stats = ["TIMEOUT"] * 3
        else:
            ts = [t / 1000.0 for t in self.times_ns]
            stats = [f"{min(ts):.3f}", f"{statistics.median(ts):.3f}", f"{statistics.fmean(ts):.3f}"]
        weight = "-" if self.weight is None else format_weight(self.weight)
        first = "-" if self.cells_first is None else str(self.cells_first)
        repeat = "-" if self.cells_repeat is None else str(self.cells_repeat)
        return [self.fixture, self.engine, str(self.n), str(self.reps), weight, *stats, first, repeat]


def make_matcher(engine: str, name: str, ring: Semiring = NAT) -> Callable[[str], object]:
    e = fixture(name, ring)
    if engine == "regexp":
        return lambda w: index_word(e, w)
    if engine == "trie":
        t = reinterpret(e, TrieSemiring(ring))
        return lambda w: t_index(t, w)
    raise ValueError(f"unknown engine {engine!r}")


def _first_call(fn: Callable[[], object], timeout_s: Optional[float]):
    """Run ``fn`` once; return ``(finished, value)``, giving up after ``timeout_s``."""
    if timeout_s is None:
        return True, fn()
    box: dict = {}

    def target():
        try:
            box["value"] = fn()
        except BaseException as exc:  # re-raised in the caller
            box["error"] = exc

    th = threading.Thread(target=target, daemon=True)
    th.start()
    th.join(timeout_s)
    if th.is_alive():
        return False, None
    if "error" in box:
        raise box["error"]
    return True, box["value"]


def run_one(
    engine: str, name: str, n: int, reps: int, ring: Semiring = NAT,
    timeout_ms: Optional[float] = None,
) -> BenchRow:
    row = BenchRow(name, engine, n, reps)
    word = canonical_input(name, n)
    match = make_matcher(engine, name, ring)
    before = cells_forced()
    finished, weight = _first_call(lambda: match(word), None if timeout_ms is None else timeout_ms / 1000)
    if not finished:
        row.timed_out = True
        return row
    row.weight = weight
    if engine == "trie":
        row.cells_first = cells_forced() - before
    for _ in range(WARMUP - 1):
        match(word)
    before = cells_forced()
    clock = time.perf_counter_ns
    times = []
    for _ in range(reps):
        t0 = clock()
        match(word)
        times.append(clock() - t0)
    if engine == "trie":
        row.cells_repeat = cells_forced() - before
    row.times_ns = times
    return row


def run_bench(
    fixtures: Sequence[str] = BENCH_FIXTURES,
    n: int = 100,
    reps: int = 100,
    engines: Sequence[str] = ENGINES,
    ring: Semiring = NAT,
    timeout_ms: Optional[float] = None,
) -> list[BenchRow]:
    """All fixture x engine rows; raises :class:`EngineDisagreement` on mismatched weights."""
    rows = []
    for name in fixtures:
        group = [run_one(eng, name, n, reps, ring, timeout_ms) for eng in engines]
        weights = {format_weight(r.weight) for r in group if not r.timed_out}
        if len(weights) > 1:
            raise EngineDisagreement(f"{name} at n={n}: engines disagree ({', '.join(sorted(weights))})")
        rows.extend(group)
    return rows


def write_tsv(rows: Sequence[BenchRow], out=None) -> None:
    out = out or sys.stdout
    out.write("\t".join(COLUMNS) + "\n")
    for r in rows:
        out.write("\t".join(r.cells()) + "\n")
