"""End-to-end L2 rollup: pool, sequencer, aggregator, L1 contract.

A small tree (depth 4) keeps the ceremony and proving fast while showing
every moving part: FIFO pooling with validity skipping, batch padding,
batch proofs advancing the on-chain root, withdrawals with nullifiers,
replay rejection, and per-transaction costs.

Run: python demos/04_rollup_pipeline.py   (about a minute)
"""

import os

from zkrb.circuits import BatchCircuitParams
from zkrb.groth16 import required_tau_n, setup, tau_contribute, tau_init
from zkrb.l1sim import GasSchedule, PriceConfig, deploy, per_tx_cost
from zkrb.rollup import RollupNode, genesis_state, withdrawal_prove
from zkrb.state import Tx, total_balance

WORKERS = os.cpu_count() or 1
DEPTH, M = 4, 2

secrets = {1: 101, 2: 202, 3: 303}
state = genesis_state(DEPTH, balances={1: 900, 2: 500, 3: 100}, secrets=secrets)
print(f"genesis root: {state.root:#x}; total balance {total_balance(state)}")

params = BatchCircuitParams(batch_size=M, tree_depth=DEPTH)
node = RollupNode(state, params, workers=WORKERS)

n = max(
    required_tau_n(node.batch_circuit.stats.domain_size),
    required_tau_n(node.withdrawal_circuit.stats.domain_size),
)
acc = tau_contribute(tau_init(n), b"rollup demo", workers=WORKERS, check_input=False)
node.pk, vk = setup(acc, node.batch_circuit, b"batch keys", workers=WORKERS)
node.pk_withdrawal, vk_w = setup(acc, node.withdrawal_circuit, b"withdraw keys", workers=WORKERS)
contract = deploy(vk, vk_w, state.root)
schedule, price = GasSchedule(), PriceConfig()

# -- users submit; one tx is junk and gets skipped -------------------------------
node.submit_tx(Tx(1, 2, 250, nonce=0, auth_secret=secrets[1]))
node.submit_tx(Tx(3, 1, 40, nonce=0, auth_secret=13))  # wrong secret
node.submit_tx(Tx(2, 1, 50, nonce=0, auth_secret=secrets[2]))

batch, skipped = node.produce_batch()
print(f"\nsealed batch #{batch.sequence_number}: {[ (t.from_index, t.to_index, t.amount) for t in batch.txs ]}")
for s in skipped:
    print(f"skipped pool[{s.index_in_pool}]: {s.reason}")

proof, publics = node.prove_batch(batch)
receipt = contract.submit_batch(proof, publics, schedule, batch.sequence_number)
print(f"L1 receipt: {receipt.to_json()}")
assert receipt.accepted
node.advance(batch)
print(f"root advanced on-chain: {contract.current_root == node.state.root}")

gas_tx, usd_tx = per_tx_cost(receipt, M, price)
print(f"cost per transaction: {float(gas_tx):.1f} gas / ${usd_tx}")

# -- a second batch must build on the new root -----------------------------------
node.submit_tx(Tx(1, 3, 10, nonce=1, auth_secret=secrets[1]))
batch2, _ = node.produce_batch()
proof2, publics2 = node.prove_batch(batch2)
print(f"\nsecond batch accepted: {contract.submit_batch(proof2, publics2, schedule, 1).accepted}")
node.advance(batch2)

# -- replaying the first batch fails: the root moved ------------------------------
stale = contract.submit_batch(proof, publics, schedule, 99)
print(f"replayed old batch: accepted={stale.accepted}, reason={stale.reason!r}")

# -- withdrawal with a one-time nullifier ------------------------------------------
wd_proof, wd_publics, ms = withdrawal_prove(
    node.state, account_index=3, secret_key=secrets[3], amount=25,
    pk_w=node.pk_withdrawal, recipient_tag=0xCAFE, workers=WORKERS,
)
first = contract.submit_withdrawal(wd_proof, wd_publics, schedule)
again = contract.submit_withdrawal(wd_proof, wd_publics, schedule)
print(f"\nwithdrawal: accepted={first.accepted} (proved in {ms} ms)")
print(f"same nullifier replayed: accepted={again.accepted}, reason={again.reason!r}")
print(f"\nconservation held: {total_balance(node.state) == 1500}")
