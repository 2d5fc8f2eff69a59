"""Algebraic two-to-one hash used for state leaves, Merkle trees and auth.

A MiMC-style keyed permutation over the scalar field: per round
x <- (x + k + c_i)^5, followed by the key add-back, folded Miyaguchi-Preneel
style into a 2-to-1 compression:

    inner = permute(l, key=0) + l
    H(l, r) = permute(r, key=inner) + inner + r

The exponent 5 is the smallest prime >= 3 coprime to r - 1. The round count
is a parameter: `MimcParams.default()` uses 3 rounds per permutation so the
batch circuits stay desk-scale provable; `MimcParams.full_strength()` uses
the ceil(bitlen(r)/log2(5)) = 110-round schedule. Collision resistance is
NOT a design goal here at any round count; the hash exists to give the
circuits realistic algebraic structure with an easy out-of-circuit oracle.

Round constants come from SHA-256 over a pinned seed string, so circuit and
oracle can never drift.
"""

from __future__ import annotations

import hashlib
import math

from .algebra.params import R, SCALAR_BITS, mpz

_R = R

EXPONENT = 5
DEFAULT_ROUNDS = 3
FULL_STRENGTH_ROUNDS = math.ceil(SCALAR_BITS / math.log2(EXPONENT))  # 110
CONSTANTS_SEED = "zkrb-mimc-v1"


class MimcParams:
    """Round schedule of the permutation; shared by gadget and oracle."""

    __slots__ = ("rounds", "constants")

    def __init__(self, rounds: int = DEFAULT_ROUNDS, seed: str = CONSTANTS_SEED):
        if rounds < 1:
            raise ValueError("at least one round required")
        self.rounds = rounds
        self.constants = [
            mpz(
                int.from_bytes(
                    hashlib.sha256(f"{seed}/{i}".encode()).digest(), "big"
                )
                % _R
            )
            for i in range(rounds)
        ]

    @classmethod
    def default(cls) -> "MimcParams":
        return cls()

    @classmethod
    def full_strength(cls) -> "MimcParams":
        return cls(rounds=FULL_STRENGTH_ROUNDS)

    @property
    def hash2_constraints(self) -> int:
        """Exact R1CS rows per 2-to-1 hash: two permutations, 3 rows/round."""
        return 6 * self.rounds

    def permute(self, x: int, key: int) -> int:
        x, key = mpz(x) % _R, mpz(key) % _R
        for c in self.constants:
            u = (x + key + c) % _R
            u2 = u * u % _R
            x = u2 * u2 % _R * u % _R
        return (x + key) % _R

    def hash2(self, left: int, right: int) -> int:
        left, right = mpz(left) % _R, mpz(right) % _R
        inner = (self.permute(left, 0) + left) % _R
        return (self.permute(right, inner) + inner + right) % _R


_DEFAULT = None


def default_params() -> MimcParams:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = MimcParams()
    return _DEFAULT


def hash2(left: int, right: int) -> int:
    """Out-of-circuit oracle with the default round schedule."""
    return int(default_params().hash2(left, right))
