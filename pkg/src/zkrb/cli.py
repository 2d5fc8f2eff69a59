"""Command-line interface: params dump, ceremony runs, benchmarks, demo."""

from __future__ import annotations

import argparse
import os
import sys

from .algebra.params import params_text
from .bench import ScenarioConfig, emit_report, run_scenarios
from .circuits import BatchCircuitParams
from .config import load_config
from .errors import BudgetExceeded, UsageError
from .groth16 import required_tau_n, setup, tau_contribute, tau_init
from .l1sim import GasSchedule, PriceConfig, deploy, per_tx_cost
from .rollup import RollupNode, genesis_state
from .state import Tx


def _parse_n_range(spec: str):
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


def _parse_sizes(spec: str):
    return tuple(int(x) for x in spec.split(","))


def cmd_params(args):
    print(params_text())
    return 0


def cmd_tau(args):
    for n in _parse_n_range(args.n):
        try:
            acc = tau_init(n, args.budget)
        except BudgetExceeded as exc:
            print(f"n={n}: refused ({exc})")
            continue
        for i in range(args.contributions):
            entropy = (
                f"cli/{args.seed}/{n}/{i}".encode()
                if args.seed is not None
                else os.urandom(32)
            )
            acc = tau_contribute(
                acc,
                entropy,
                deterministic=args.seed is not None,
                workers=args.workers,
                check_input=i > 0,
            )
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, f"tau_n{n}.acc")
        acc.save(path)
        print(f"n={n}: {args.contributions} contribution(s) -> {path}")
    return 0


def cmd_bench(args):
    schedule, price = (
        load_config(args.config) if args.config else (GasSchedule(), PriceConfig())
    )
    config = ScenarioConfig(
        tau_ns=tuple(_parse_n_range(args.tau_ns)),
        batch_sizes=_parse_sizes(args.sizes),
        repetitions=args.reps,
        tree_depth=args.depth,
        memory_budget_bytes=args.budget,
        deterministic_seed=args.seed,
        workers=args.workers,
        workdir=os.path.join(args.out, "cache"),
        parallel_scenarios=args.parallel,
    )
    scenarios = tuple(s.strip() for s in args.scenario.split(","))
    measurements = run_scenarios(config, scenarios, schedule, price)
    written = emit_report(measurements, ["csv", "json", "svg"], args.out, args.no_timing)
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_demo(args):
    workers = args.workers
    print("== zkrb demo: pool -> batch -> prove -> submit -> receipt ==")
    m, depth = args.m, args.depth
    funded = range(1, min(6, 1 << depth))
    secrets = {i: 9000 + i for i in funded}
    state = genesis_state(depth, balances={i: 1_000_000 for i in funded}, secrets=secrets)
    print(f"[1] genesis state: depth {depth}, root {state.root:#x}")

    params = BatchCircuitParams(batch_size=m, tree_depth=depth)
    node = RollupNode(state, params, deterministic=args.seed is not None, workers=workers)
    n_needed = required_tau_n(node.batch_circuit.stats.domain_size)
    print(f"[2] batch circuit: {node.batch_circuit.stats.num_constraints} constraints, "
          f"domain {node.batch_circuit.stats.domain_size} (tau n={n_needed})")

    entropy = f"demo/{args.seed}".encode() if args.seed is not None else os.urandom(32)
    acc = tau_init(n_needed)
    acc = tau_contribute(acc, entropy, deterministic=args.seed is not None,
                         workers=workers, check_input=False)
    print(f"[3] ceremony done: n={acc.n}, contributions={len(acc.contribution_log)}")

    pk, vk = setup(acc, node.batch_circuit, entropy + b"/setup",
                   deterministic=args.seed is not None, workers=workers)
    w_pk, w_vk = setup(acc, node.withdrawal_circuit, entropy + b"/setup-w",
                       deterministic=args.seed is not None, workers=workers)
    node.pk, node.pk_withdrawal = pk, w_pk
    print(f"[4] keys generated: vk has {len(vk.ic)} input points")

    funded = list(funded)
    for i in range(m):
        frm = funded[i % len(funded)]
        to = funded[(i + 1) % len(funded)]
        tx = Tx(frm, to, 100 + i, node.state.account(frm).nonce, secrets[frm])
        node.submit_tx(tx)
    print(f"[5] pooled {len(node.pool)} transactions")

    batch, skipped = node.produce_batch()
    print(f"[6] sealed batch #{batch.sequence_number}: {batch.size} txs, "
          f"{len(skipped)} skipped, post-root {batch.post_root:#x}")

    proof, publics = node.prove_batch(batch)
    ms = node.timings[-1][1]
    print(f"[7] proof generated in {ms} ms ({len(proof.to_bytes())} bytes)")

    contract = deploy(vk, w_vk, state.root)
    schedule, price = (
        load_config(args.config) if args.config else (GasSchedule(), PriceConfig())
    )
    receipt = contract.submit_batch(proof, publics, schedule, batch.sequence_number)
    node.advance(batch)
    print(f"[8] receipt: {receipt.to_json()}")
    gas_per_tx, usd = per_tx_cost(receipt, m, price)
    print(f"[9] per-transaction cost: {float(gas_per_tx):.2f} gas, ${usd}")
    return 0 if receipt.accepted else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="zkrb",
        description="ZK-rollup pipeline and cost-scaling benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="dump the pinned curve/protocol parameters")
    p.set_defaults(fn=cmd_params)

    p = sub.add_parser("tau", help="run Powers-of-Tau ceremonies and save accumulators")
    p.add_argument("--n", default="12..16", help="security parameter or range, e.g. 14 or 12..16")
    p.add_argument("--contributions", type=int, default=1)
    p.add_argument("--out", default="tau-out")
    p.add_argument("--seed", type=int, default=None, help="deterministic mode seed")
    p.add_argument("--budget", type=int, default=None, help="memory budget in bytes")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.set_defaults(fn=cmd_tau)

    p = sub.add_parser("bench", help="run benchmark scenarios and emit reports")
    p.add_argument("--scenario", default="all",
                   help="comma list of: all, tau, compile, keygen, prove, cost")
    p.add_argument("--sizes", default="4,8,16")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--tau-ns", default="12..16")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--out", default="report")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--no-timing", action="store_true",
                   help="zero wall-clock fields (golden/reproducibility mode)")
    p.add_argument("--config", default=None, help="gas/price key=value config file")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--parallel", action="store_true",
                   help="run scenarios concurrently (timings unreliable)")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("demo", help="end-to-end pipeline walkthrough")
    p.add_argument("--m", type=int, default=4, help="batch size")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--config", default=None)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.set_defaults(fn=cmd_demo)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
