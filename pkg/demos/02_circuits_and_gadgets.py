"""Building constraint systems by hand and with the gadget library.

Shows the R1CS builder, the algebraic hash gadget against its
out-of-circuit oracle, Merkle verification, and how the batch circuit's
size scales exactly linearly with the batch size.

Run: python demos/02_circuits_and_gadgets.py
"""

from zkrb.circuits import BatchCircuitParams, build_batch_circuit, build_withdrawal_circuit, per_tx_constraints
from zkrb.hashing import hash2
from zkrb.r1cs import (
    ConstraintSystem,
    Visibility,
    Witness,
    gadget_hash2,
    gadget_merkle_verify,
    gadget_range_check,
)

# --- a hand-rolled system: prove knowledge of factors --------------------------
print("== hand-rolled R1CS: x * y = 35 ==")
cs = ConstraintSystem()
product = cs.alloc(Visibility.PUBLIC, 35)
x = cs.alloc(Visibility.PRIVATE, 5)
y = cs.alloc(Visibility.PRIVATE, 7)
cs.enforce(x, y, product)
stats = cs.finalize()
print("stats:", stats)
witness = cs.witness()
print("satisfied:", cs.is_satisfied(witness))
bad = Witness([1, 35, 5, 8])  # wrong factor
print("wrong witness satisfied:", cs.is_satisfied(bad))

# --- hash gadget vs its oracle ------------------------------------------------
print("\n== hash gadget vs out-of-circuit oracle ==")
cs = ConstraintSystem()
left = cs.alloc(Visibility.PRIVATE, 123)
right = cs.alloc(Visibility.PRIVATE, 456)
out = gadget_hash2(cs, left, right)
cs.finalize()
print("gadget output == oracle:", int(cs.value_of(out)) == hash2(123, 456))
print("rows per 2-to-1 hash:", cs.stats.num_constraints)

# --- Merkle inclusion -----------------------------------------------------------
print("\n== Merkle inclusion at depth 2 ==")
leaf_v, sib0_v, sib1_v = 7, 8, 9
root_v = hash2(hash2(7, 8), 9)  # leaf on the left twice -> bits (0, 0)
cs = ConstraintSystem()
leaf = cs.alloc(Visibility.PRIVATE, leaf_v)
path = [
    (cs.alloc(Visibility.PRIVATE, sib0_v), cs.alloc(Visibility.PRIVATE, 0)),
    (cs.alloc(Visibility.PRIVATE, sib1_v), cs.alloc(Visibility.PRIVATE, 0)),
]
root = cs.alloc(Visibility.PRIVATE, root_v)
gadget_merkle_verify(cs, leaf, path, root)
cs.finalize()
print("inclusion proof satisfied:", cs.is_satisfied(cs.witness()))

# --- range checks ----------------------------------------------------------------
print("\n== 64-bit range check ==")
for value in (2**64 - 1, 2**64):
    cs = ConstraintSystem()
    v = cs.alloc(Visibility.PRIVATE, value)
    gadget_range_check(cs, v, 64)
    cs.finalize()
    print(f"value {value}: satisfied = {cs.is_satisfied(cs.witness())}")

# --- application circuits scale affinely ------------------------------------------
print("\n== batch circuit: count(m) = slope * m ==")
for m in (4, 8, 16):
    built = build_batch_circuit(BatchCircuitParams(batch_size=m))
    print(f"m={m:>2}: {built.stats.num_constraints:>6} constraints, domain {built.stats.domain_size}")
print("slope per transaction:", per_tx_constraints())
wd = build_withdrawal_circuit()
print("withdrawal circuit (batch-size independent):", wd.stats.num_constraints, "constraints")
