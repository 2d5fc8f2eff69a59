"""R1CS -> QAP plumbing shared by key generation and proving.

Rows are the constraint matrices' sparse rows plus (num_public + 1) binding
rows (one per public wire, A-side indicator, B = C = 0). The binding rows
keep the public-input polynomials linearly independent and are the reason
the evaluation domain is sized to num_constraints + num_public + 1.
"""

from __future__ import annotations

from ..algebra.params import R, mpz
from ..errors import UsageError
from ..r1cs.system import ConstraintSystem

_R = R


def qap_rows(cs: ConstraintSystem):
    """(a_rows, b_rows, c_rows): per-row sorted (var, coeff) term lists."""
    if not cs.finalized:
        raise UsageError("finalize the constraint system before QAP reduction")
    a_rows, b_rows, c_rows = [], [], []
    for a, b, c in cs.constraints:
        a_rows.append(sorted(a.terms.items()))
        b_rows.append(sorted(b.terms.items()))
        c_rows.append(sorted(c.terms.items()))
    for i in range(cs.num_public + 1):
        a_rows.append([(i, mpz(1))])
        b_rows.append([])
        c_rows.append([])
    return a_rows, b_rows, c_rows


def eval_vectors(cs: ConstraintSystem, witness_raw, domain_size: int):
    """Evaluations of u_w, v_w, w_w over the domain (witness-collapsed rows)."""
    a = [mpz(0)] * domain_size
    b = [mpz(0)] * domain_size
    c = [mpz(0)] * domain_size
    for j, (la, lb, lc) in enumerate(cs.constraints):
        a[j] = la.evaluate(witness_raw)
        b[j] = lb.evaluate(witness_raw)
        c[j] = lc.evaluate(witness_raw)
    base = cs.num_constraints
    for i in range(cs.num_public + 1):
        a[base + i] = mpz(witness_raw[i]) % _R
    return a, b, c
