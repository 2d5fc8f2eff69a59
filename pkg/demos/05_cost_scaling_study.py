"""Reduced-scale replica of the cost-scaling experiments.

Runs every benchmark scenario at small parameters (depth-4 tree, batch
sizes 2/4/8, tau 8..10, 3 repetitions) and prints the shape findings:
one-time costs growing with batch size, proof generation as the repetitive
bottleneck, constant verification, and per-transaction cost falling as
batches amortize the fixed submission overhead.

The full-scale run (batch sizes 4/8/16, tau 12..16, 5 repetitions, tree
depth 8) is: zkrb bench --scenario all --out report/

Run: python demos/05_cost_scaling_study.py   (a few minutes)
"""

import os
import tempfile

from zkrb.bench import ScenarioConfig, emit_report, median_ms, run_scenarios
from zkrb.l1sim import GasSchedule, PriceConfig

config = ScenarioConfig(
    tau_ns=(8, 9, 10),
    batch_sizes=(2, 4, 8),
    repetitions=3,
    tree_depth=4,
    deterministic_seed=42,
    workers=os.cpu_count() or 1,
    workdir=os.path.join(tempfile.gettempdir(), "zkrb-demo-cache"),
)

measurements = run_scenarios(config, ("all",), GasSchedule(), PriceConfig())

print("\n== one-time costs ==")
print("tau ceremony (doubling work per +1 of n):")
for n in config.tau_ns:
    print(f"  n={n}: median {median_ms(measurements, 'tau', n)} ms")
print("circuit construction and key generation (grow with batch size):")
for m in config.batch_sizes:
    print(
        f"  m={m}: compile {median_ms(measurements, 'compile', m)} ms, "
        f"keygen {median_ms(measurements, 'keygen', m)} ms"
    )

print("\n== repetitive costs ==")
for m in config.batch_sizes:
    print(
        f"  m={m}: batch proof {median_ms(measurements, 'prove_batch', m)} ms, "
        f"withdrawal proof {median_ms(measurements, 'prove_withdraw', m)} ms, "
        f"verify {median_ms(measurements, 'verify', m)} ms"
    )

print("\n== per-transaction cost (fixed submission overhead amortized) ==")
for m in config.batch_sizes:
    rows = [x for x in measurements if x.scenario == "cost" and x.parameter == m]
    print(f"  m={m}: {rows[0].aux['gas_per_tx']} gas/tx, ${rows[0].aux['usd_per_tx']}/tx")

out_dir = os.path.join(tempfile.gettempdir(), "zkrb-demo-report")
written = emit_report(measurements, ["csv", "json", "svg"], out_dir)
print(f"\nreports written to {out_dir}:")
for path in written:
    print(" ", os.path.basename(path))
