"""Benchmark scenarios, measurements and report emission."""

from .measure import SCENARIOS, Measurement, ScenarioConfig, median, median_ms, timed_ms
from .report import emit_report, render_csv, render_json, render_svgs
from .scenarios import (
    BenchContext,
    bench_compile,
    bench_cost,
    bench_keygen,
    bench_prove_verify,
    bench_tau,
    run_scenarios,
)

__all__ = [
    "SCENARIOS",
    "BenchContext",
    "Measurement",
    "ScenarioConfig",
    "bench_compile",
    "bench_cost",
    "bench_keygen",
    "bench_prove_verify",
    "bench_tau",
    "emit_report",
    "median",
    "median_ms",
    "render_csv",
    "render_json",
    "render_svgs",
    "run_scenarios",
    "timed_ms",
]
