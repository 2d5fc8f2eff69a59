import random

import pytest

from zkrb.algebra import G1Point, G2Point, get_counters, reset_counters
from zkrb.errors import CapacityError, ProverRefusal, UsageError
from zkrb.groth16 import (
    PROOF_BYTES,
    Proof,
    ProvingKey,
    VerifyingKey,
    proof_from_json,
    proof_to_json,
    prove,
    required_tau_n,
    setup,
    tau_contribute,
    tau_init,
    verify,
)
from zkrb.r1cs import ConstraintSystem, Visibility, Witness

rng = random.Random(0x62078)


def product_circuit(x=None, y=None):
    """Public z, s; private x, y with x*y = z and x + y = s."""
    cs = ConstraintSystem()
    z = cs.alloc(Visibility.PUBLIC, None if x is None else x * y)
    s = cs.alloc(Visibility.PUBLIC, None if x is None else x + y)
    xv = cs.alloc(Visibility.PRIVATE, x)
    yv = cs.alloc(Visibility.PRIVATE, y)
    cs.enforce(xv, yv, z)
    cs.enforce(xv + yv, 1, s)
    cs.finalize()
    return cs


@pytest.fixture(scope="module")
def small_crs():
    acc = tau_init(4)
    acc = tau_contribute(acc, b"small-crs", deterministic=True)
    return acc


@pytest.fixture(scope="module")
def keypair(small_crs):
    cs = product_circuit(3, 5)
    return setup(small_crs, cs, b"unit-setup", deterministic=True)


def test_completeness_roundtrip(small_crs, keypair):
    pk, vk = keypair
    cs = product_circuit(3, 5)
    w = cs.witness()
    proof = prove(pk, cs, w, b"blind-1", deterministic=True)
    assert verify(vk, w.public_values(2), proof)


def test_blinding_changes_bytes_both_verify(small_crs, keypair):
    pk, vk = keypair
    cs = product_circuit(7, 9)
    w = cs.witness()
    p1 = prove(pk, cs, w, b"r1", deterministic=True)
    p2 = prove(pk, cs, w, b"r2", deterministic=True)
    assert p1.to_bytes() != p2.to_bytes()
    assert verify(vk, w.public_values(2), p1)
    assert verify(vk, w.public_values(2), p2)


def test_deterministic_prover_reproducible(small_crs, keypair):
    pk, _ = keypair
    cs = product_circuit(2, 11)
    w = cs.witness()
    p1 = prove(pk, cs, w, b"same", deterministic=True)
    p2 = prove(pk, cs, w, b"same", deterministic=True)
    assert p1.to_bytes() == p2.to_bytes()


def test_unsatisfied_witness_refused(small_crs, keypair):
    pk, _ = keypair
    cs = product_circuit(3, 5)
    bad = Witness([1, 14, 8, 3, 5])  # z wrong
    with pytest.raises(ProverRefusal):
        prove(pk, cs, bad, b"r")


def test_wrong_public_rejected(small_crs, keypair):
    pk, vk = keypair
    cs = product_circuit(3, 5)
    w = cs.witness()
    proof = prove(pk, cs, w, b"r", deterministic=True)
    pubs = w.public_values(2)
    assert not verify(vk, [pubs[0] + 1, pubs[1]], proof)
    assert not verify(vk, [pubs[0], pubs[1] * 2], proof)
    with pytest.raises(UsageError):
        verify(vk, [pubs[0]], proof)


def test_proof_mutations_rejected(small_crs, keypair):
    pk, vk = keypair
    cs = product_circuit(3, 5)
    w = cs.witness()
    proof = prove(pk, cs, w, b"r", deterministic=True)
    pubs = w.public_values(2)
    mutants = [
        Proof(proof.a + G1Point.generator(), proof.b, proof.c),
        Proof(proof.a, proof.b + G2Point.generator(), proof.c),
        Proof(proof.a, proof.b, proof.c + G1Point.generator()),
        Proof(-proof.a, proof.b, proof.c),
        Proof(proof.c, proof.b, proof.a),
    ]
    for m in mutants:
        assert not verify(vk, pubs, m)


def test_proofs_constant_size(small_crs, keypair):
    pk, _ = keypair
    cs = product_circuit(3, 5)
    proof = prove(pk, cs, cs.witness(), b"r", deterministic=True)
    assert len(proof.to_bytes()) == PROOF_BYTES == 131


def test_capacity_error_names_required_n(small_crs):
    cs = product_circuit(3, 5)  # domain 8 -> needs n >= 4
    tiny = tau_init(2)
    with pytest.raises(CapacityError) as err:
        setup(tiny, cs, b"e")
    assert f"n >= {required_tau_n(cs.stats.domain_size)}" in str(err.value)
    assert required_tau_n(8) == 4


def test_vk_layout(keypair):
    _, vk = keypair
    assert len(vk.ic) == 3  # constant one + 2 publics
    assert vk.num_public == 2


def test_instrumentation_counts(small_crs, keypair):
    pk, vk = keypair
    cs = product_circuit(3, 5)
    w = cs.witness()
    proof = prove(pk, cs, w, b"r", deterministic=True)
    reset_counters()
    assert verify(vk, w.public_values(2), proof)
    counters = get_counters()
    assert counters["pairings"] == 4
    assert counters["msm_lengths"] == [3]  # num_public + 1


def test_key_serialization_roundtrip(tmp_path, keypair):
    pk, vk = keypair
    pk_path = tmp_path / "test.pk"
    vk_path = tmp_path / "test.vk"
    pk.save(pk_path)
    vk.save(vk_path)
    pk2 = ProvingKey.load(pk_path)
    vk2 = VerifyingKey.load(vk_path)
    assert vk2 == vk
    assert pk2.to_bytes() == pk.to_bytes()
    cs = product_circuit(4, 4)
    w = cs.witness()
    proof = prove(pk2, cs, w, b"r", deterministic=True)
    assert verify(vk2, w.public_values(2), proof)


def test_proof_json_format(small_crs, keypair):
    pk, vk = keypair
    cs = product_circuit(3, 5)
    w = cs.witness()
    proof = prove(pk, cs, w, b"r", deterministic=True)
    text = proof_to_json(proof, w.public_values(2))
    assert text == text.lower()  # lowercase hex throughout
    import json

    obj = json.loads(text)
    assert set(obj) == {"a", "b", "c", "public_inputs"}
    assert len(obj["public_inputs"]) == 2
    p2, pubs = proof_from_json(text)
    assert p2 == proof
    assert verify(vk, pubs, p2)
    with pytest.raises(UsageError):
        proof_from_json('{"a": "zz"}')


def test_setup_entropy_changes_keys(small_crs):
    cs = product_circuit(3, 5)
    pk1, vk1 = setup(small_crs, cs, b"e1", deterministic=True)
    pk2, vk2 = setup(small_crs, cs, b"e2", deterministic=True)
    assert vk1 != vk2
    # proofs remain valid under the matching vk only
    w = cs.witness()
    proof = prove(pk1, cs, w, b"r", deterministic=True)
    assert verify(vk1, w.public_values(2), proof)
    assert not verify(vk2, w.public_values(2), proof)


def test_pk_mismatched_circuit_rejected(small_crs, keypair):
    pk, _ = keypair
    other = ConstraintSystem()
    a = other.alloc(Visibility.PRIVATE, 2)
    for _ in range(9):
        other.enforce(a, a, 4)
    other.finalize()
    with pytest.raises(UsageError):
        prove(pk, other, other.witness(), b"r")


def test_completeness_random_instances(small_crs, keypair):
    pk, vk = keypair
    for _ in range(10):
        x = rng.randrange(1, 1000)
        y = rng.randrange(1, 1000)
        cs = product_circuit(x, y)
        w = cs.witness()
        proof = prove(pk, cs, w, rng.randbytes(16), deterministic=True)
        assert verify(vk, w.public_values(2), proof)
