"""Gadget library: algebraic hash, Merkle path verification, range checks.

Row counts are compile-time constants (R = hash rounds per permutation):
  hash2                 6R        (default R=3 -> 18)
  merkle level          6R + 2    (booleanity + mux product + hash)
  range check (b bits)  b + 1
Additions fold into linear combinations and cost nothing; output bindings
reuse the final product row of the last permutation round.
"""

from __future__ import annotations

from ..errors import UsageError
from ..hashing import MimcParams, default_params
from .system import ConstraintSystem, LinearCombination, Variable, Visibility

_LC = LinearCombination


def synth_permute(cs: ConstraintSystem, x, key, params: MimcParams, bind=None):
    """Keyed permutation E_key(x); 3 rows per round.

    With `bind`, the output is constrained equal to that combination inside
    the last round's product row (no extra constraint) and None is returned.
    """
    x = _LC.of(x)
    key = _LC.of(key)
    last = params.rounds - 1
    for i, c in enumerate(params.constants):
        u = x + key + int(c)
        t2 = cs.mul(u, u)
        t4 = cs.mul(t2, t2)
        if i == last and bind is not None:
            cs.enforce(t4, u, _LC.of(bind) - key)
            return None
        x = _LC.of(cs.mul(t4, u))
    return x + key


def gadget_hash2(cs: ConstraintSystem, left, right, params: MimcParams | None = None) -> Variable:
    """Two-to-one hash variable constrained to H(left, right); 6R rows."""
    params = params or default_params()
    left, right = _LC.of(left), _LC.of(right)
    lv, rv = cs.value_of(left), cs.value_of(right)
    value = params.hash2(lv, rv) if lv is not None and rv is not None else None
    out = cs.alloc(Visibility.PRIVATE, value)
    _hash2_bind(cs, left, right, _LC.of(out), params)
    return out


def hash2_into(cs: ConstraintSystem, left, right, out, params: MimcParams | None = None):
    """Constrain H(left, right) == out without allocating; 6R rows."""
    _hash2_bind(cs, _LC.of(left), _LC.of(right), _LC.of(out), params or default_params())


def _hash2_bind(cs, left, right, out, params):
    e0 = synth_permute(cs, left, _LC(), params)
    inner = e0 + left
    synth_permute(cs, right, inner, params, bind=out - inner - right)


def gadget_boolean(cs: ConstraintSystem, bit):
    cs.enforce(bit, bit, bit)


def merkle_fold(
    cs: ConstraintSystem,
    leaf,
    path,
    params: MimcParams | None = None,
    constrain_bits: bool = True,
    bind_root=None,
):
    """Fold a leaf up a Merkle path; direction bit 0 = leaf on the left.

    path: list of (sibling, direction_bit) entries. Returns the root as an
    LC, or None when `bind_root` absorbs the final hash. Set
    `constrain_bits=False` when the same bits were already boolean-
    constrained by an earlier fold over the same position.
    """
    params = params or default_params()
    cur = _LC.of(leaf)
    depth = len(path)
    for level, (sibling, bit) in enumerate(path):
        sib = _LC.of(sibling)
        if constrain_bits:
            gadget_boolean(cs, bit)
        swap = cs.mul(bit, sib - cur)
        left = cur + swap
        right = sib - _LC.of(swap)
        if level == depth - 1 and bind_root is not None:
            hash2_into(cs, left, right, bind_root, params)
            return None
        cur = _LC.of(gadget_hash2(cs, left, right, params))
    return cur


def gadget_merkle_verify(cs: ConstraintSystem, leaf, path, root, params: MimcParams | None = None):
    """Enforce that `leaf` folds to `root` along `path`; d*(6R+2) rows."""
    if not path:
        raise UsageError("merkle path must have at least one level")
    merkle_fold(cs, leaf, path, params, constrain_bits=True, bind_root=root)


def gadget_range_check(cs: ConstraintSystem, x, bits: int):
    """Enforce x in [0, 2^bits); bits + 1 rows."""
    if bits < 1 or bits > 252:
        raise UsageError(f"range width must be in [1, 252], got {bits}")
    x = _LC.of(x)
    xv = cs.value_of(x)
    recomposed = _LC()
    for i in range(bits):
        bv = None if xv is None else (int(xv) >> i) & 1
        b = cs.alloc(Visibility.PRIVATE, bv)
        gadget_boolean(cs, b)
        recomposed = recomposed + b * (1 << i)
    cs.enforce(x - recomposed, 1, 0)


def hash2_constraints(params: MimcParams | None = None) -> int:
    return (params or default_params()).hash2_constraints


def merkle_level_constraints(params: MimcParams | None = None) -> int:
    return hash2_constraints(params) + 2
