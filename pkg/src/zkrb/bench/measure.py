"""Measurement records and scenario configuration."""

from __future__ import annotations

import gc
import time
from dataclasses import dataclass, field

from ..errors import UsageError

SCENARIOS = ("tau", "compile", "keygen", "prove_batch", "prove_withdraw", "verify", "cost")


@dataclass(frozen=True)
class Measurement:
    scenario: str
    parameter: int
    repetition: int
    wall_time_ms: int
    aux: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise UsageError(f"unknown scenario {self.scenario!r}")
        if self.wall_time_ms < 0:
            raise UsageError("wall time cannot be negative")


@dataclass
class ScenarioConfig:
    tau_ns: tuple = (12, 13, 14, 15, 16)
    batch_sizes: tuple = (4, 8, 16)
    repetitions: int = 5
    tree_depth: int = 8
    memory_budget_bytes: int | None = None
    deterministic_seed: int | None = None
    workers: int = 1
    workdir: str | None = None
    parallel_scenarios: bool = False

    def __post_init__(self):
        self.tau_ns = tuple(int(n) for n in self.tau_ns)
        self.batch_sizes = tuple(int(m) for m in self.batch_sizes)
        if any(m < 1 for m in self.batch_sizes):
            raise UsageError("batch sizes must be positive")
        if list(self.batch_sizes) != sorted(self.batch_sizes):
            raise UsageError("batch sizes must be sorted ascending")
        if self.repetitions < 1:
            raise UsageError("at least one repetition required")

    @property
    def deterministic(self) -> bool:
        return self.deterministic_seed is not None


def timed_ms(fn, *args, **kwargs):
    """(result, elapsed wall milliseconds) on the monotonic clock.

    Garbage collection is flushed before and paused during the measured
    call so collector pauses from unrelated heap state never land inside a
    timed region (refcounting still frees the call's own garbage).
    """
    gc.collect()
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        elapsed = int((time.perf_counter() - start) * 1000)
    finally:
        if was_enabled:
            gc.enable()
    return result, elapsed


def median(values):
    vals = sorted(values)
    if not vals:
        raise UsageError("median of empty sequence")
    mid = len(vals) // 2
    if len(vals) % 2:
        return vals[mid]
    return (vals[mid - 1] + vals[mid]) / 2


def median_ms(measurements, scenario: str, parameter: int):
    times = [
        m.wall_time_ms
        for m in measurements
        if m.scenario == scenario and m.parameter == parameter and "budget_exceeded" not in m.aux
    ]
    return median(times)
