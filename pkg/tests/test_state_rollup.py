import json
import random

import pytest

from zkrb.errors import IntegrityError, UsageError
from zkrb.hashing import hash2
from zkrb.rollup import (
    Pool,
    SkippedTx,
    apply_batch,
    apply_deposits,
    genesis_state,
    pool_submit,
    sequencer_create_batch,
    total_balance,
)
from zkrb.state import Account, Batch, StateTree, Tx, apply_tx, tx_error

rng = random.Random(0x5707)

SECRETS = {i: 500 + i for i in range(1, 8)}


def small_state(depth=3, balance=1000):
    return genesis_state(depth, balances={i: balance for i in range(1, 8)}, secrets=SECRETS)


def test_root_matches_naive_recompute():
    st = small_state()
    # independent oracle: recompute the root from leaf hashes pairwise
    level = [st.leaf_hash(st.account(i)) for i in range(st.size)]
    while len(level) > 1:
        level = [hash2(level[i], level[i + 1]) for i in range(0, len(level), 2)]
    assert level[0] == st.root


def test_leaf_hash_structure():
    st = small_state()
    acct = st.account(3)
    assert st.leaf_hash(acct) == hash2(acct.key_hash, hash2(acct.balance, acct.nonce))


def test_update_keeps_root_consistent():
    st = small_state()
    st.set_account(5, Account(key_hash=123, balance=7, nonce=2))
    rebuilt = StateTree(st.depth)
    rebuilt.accounts = [a.copy() for a in st.accounts]
    rebuilt._rebuild()
    assert rebuilt.root == st.root


def test_siblings_and_bits_fold_to_root():
    st = small_state()
    idx = 5
    cur = st.leaf_hash(st.account(idx))
    for sib, bit in zip(st.siblings(idx), StateTree.index_bits(idx, st.depth)):
        cur = hash2(sib, cur) if bit else hash2(cur, sib)
    assert cur == st.root


def test_apply_tx_arithmetic():
    st = small_state()
    tx = Tx(from_index=1, to_index=2, amount=5, nonce=0, auth_secret=SECRETS[1])
    apply_tx(st, tx)
    assert st.account(1).balance == 995
    assert st.account(1).nonce == 1
    assert st.account(2).balance == 1005


def test_tx_error_reasons():
    st = small_state()
    assert tx_error(st, Tx(1, 2, 5, 0, SECRETS[1])) is None
    assert "authorization" in tx_error(st, Tx(1, 2, 5, 0, 999))
    assert "nonce" in tx_error(st, Tx(1, 2, 5, 3, SECRETS[1]))
    assert "balance" in tx_error(st, Tx(1, 2, 10_000, 0, SECRETS[1]))
    assert "range" in tx_error(st, Tx(1, 99, 5, 0, SECRETS[1]))
    assert "range" in tx_error(st, Tx(1, 2, 2**64, 0, SECRETS[1]))


def test_pool_fifo_and_rejections():
    pool = Pool()
    txs = [Tx(1, 2, i, i, SECRETS[1]) for i in range(10)]
    for tx in txs:
        pool_submit(pool, tx)
    assert pool.peek() == txs
    with pytest.raises(UsageError):
        pool.submit(Tx(1, 3, 99, 4, SECRETS[1]))  # duplicate (from, nonce)
    with pytest.raises(UsageError):
        pool.submit(Tx(1, 3, 2**64, 11, SECRETS[1]))  # amount out of range


def test_pool_jsonl_roundtrip():
    pool = Pool()
    tx = Tx(2, 3, 42, 0, SECRETS[2])
    pool.submit_jsonl(tx.to_json())
    assert pool.peek() == [tx]
    snap = pool.snapshot_jsonl()
    assert json.loads(snap.strip())["amount"] == 42
    with pytest.raises(UsageError):
        pool.submit_jsonl("{not json")


def test_sequencer_fifo_and_padding():
    st = small_state()
    pool = Pool()
    txs = [Tx(i, i % 7 + 1, 10, 0, SECRETS[i]) for i in range(1, 5)]
    for tx in txs:
        pool.submit(tx)
    batch, skipped = sequencer_create_batch(pool, st, 4)
    assert batch.txs == tuple(txs)
    assert not skipped
    # empty pool: all padding, root unchanged
    batch2, _ = sequencer_create_batch(Pool(), st, 4)
    assert batch2.post_root == batch2.pre_root == st.root
    assert all(tx.from_index == 0 and tx.amount == 0 for tx in batch2.txs)


def test_sequencer_skips_invalid_and_reports():
    st = small_state()
    pool = Pool()
    good1 = Tx(1, 2, 10, 0, SECRETS[1])
    stale = Tx(2, 3, 10, 5, SECRETS[2])  # wrong nonce
    good2 = Tx(3, 4, 10, 0, SECRETS[3])
    for tx in (good1, stale, good2):
        pool.submit(tx)
    batch, skipped = sequencer_create_batch(pool, st, 4)
    assert good1 in batch.txs and good2 in batch.txs
    assert len(skipped) == 1
    assert isinstance(skipped[0], SkippedTx)
    assert skipped[0].tx == stale and "nonce" in skipped[0].reason
    # padded to exactly m
    assert batch.size == 4


def test_sequencer_determinism():
    def run():
        st = small_state()
        pool = Pool()
        for i in range(1, 6):
            pool.submit(Tx(i, (i % 6) + 1, i * 3, 0, SECRETS[i]))
        batch, _ = sequencer_create_batch(pool, st, 4)
        return batch

    assert run() == run()


def test_sequencer_leftovers_stay_pooled():
    st = small_state()
    pool = Pool()
    for i in range(6):
        pool.submit(Tx(1, 2, 1, i, SECRETS[1]))
    batch, skipped = sequencer_create_batch(pool, st, 2)
    assert batch.size == 2
    assert len(pool) == 4  # untouched txs returned in order
    assert [t.nonce for t in pool.peek()] == [2, 3, 4, 5]


def test_apply_batch_and_conservation():
    st = small_state()
    before = total_balance(st)
    state = st
    for seq in range(10):
        pool = Pool()
        for _ in range(4):
            frm = rng.randrange(1, 8)
            to = rng.randrange(1, 8)
            tx = Tx(frm, to, rng.randrange(0, 50), state.account(frm).nonce, SECRETS[frm])
            try:
                pool.submit(tx)
            except UsageError:
                pass
        batch, _ = sequencer_create_batch(pool, state, 4, sequence_number=seq)
        new_state = apply_batch(state, batch)
        assert state.root == batch.pre_root  # input untouched
        assert new_state.root == batch.post_root
        assert total_balance(new_state) == before
        state = new_state


def test_apply_batch_guards():
    st = small_state()
    pool = Pool()
    batch, _ = sequencer_create_batch(pool, st, 2)
    with pytest.raises(UsageError):
        apply_batch(small_state(depth=3, balance=999), batch)  # root mismatch
    bad = Batch(
        txs=(Tx(1, 2, 10_000_000, 0, SECRETS[1]),) + batch.txs[1:],
        pre_root=st.root,
        post_root=batch.post_root,
        sequence_number=0,
    )
    with pytest.raises(IntegrityError):
        apply_batch(st, bad)


def test_snapshot_json():
    st = small_state()
    snap = json.loads(st.snapshot_json())
    assert snap["root"] == st.root
    assert len(snap["accounts"]) == st.size
    assert snap["accounts"][1]["balance"] == 1000
    assert snap["leaves"][2] == st.leaf_hash(st.account(2))
    assert st.snapshot_json() == st.snapshot_json()  # golden-stable


def test_deposits_outside_proof_path():
    st = small_state()
    before = total_balance(st)
    st2 = apply_deposits(st, {4: 500})
    assert total_balance(st2) == before + 500
    assert st.account(4).balance == 1000  # original untouched
    with pytest.raises(UsageError):
        apply_deposits(st, {4: 2**64})


def test_genesis_reserves_system_account():
    with pytest.raises(UsageError):
        genesis_state(3, secrets={0: 5})
    st = small_state()
    assert st.account(0).key_hash == hash2(0, 0)


def test_withdrawal_prove_refuses_overdraft_before_keys():
    from zkrb.errors import ProverRefusal
    from zkrb.rollup import withdrawal_prove

    st = small_state(balance=10)
    # refusal happens before any proving work, so no key is needed
    with pytest.raises(ProverRefusal):
        withdrawal_prove(st, 1, SECRETS[1], amount=11, pk_w=None)
    with pytest.raises(UsageError):
        withdrawal_prove(st, 99, SECRETS[1], amount=1, pk_w=None)


def test_contract_deposit_recording():
    from zkrb.l1sim import GasSchedule, RollupContract

    contract = RollupContract(None, None, genesis_root=7)
    receipt = contract.record_deposits({3: 500, 1: 100}, GasSchedule())
    assert receipt.accepted and receipt.gas_used > 0
    assert contract.deposit_log == [{3: 500, 1: 100}]
