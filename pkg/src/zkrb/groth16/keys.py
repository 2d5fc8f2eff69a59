"""Key and proof containers with their byte and JSON codecs.

Files are header + compressed points. The proving key stores the public
monomial tau-power vectors (G1 and G2) instead of per-variable A/B query
points; the prover collapses the witness into polynomial coefficients and
takes coefficient-form MSMs against them, which yields group-element-
identical proofs (see README). The delta-divided per-variable C query and
the H query are per the standard construction.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass

from ..algebra import ec
from ..algebra.ec import G1Point, G2Point
from ..algebra.field import ScalarFieldElement
from ..errors import IntegrityError, UsageError

_PK_MAGIC = b"ZKRBPKY\x01"
_VK_MAGIC = b"ZKRBVKY\x01"

G1_BYTES = 33
G2_BYTES = 65
PROOF_BYTES = G1_BYTES + G2_BYTES + G1_BYTES


class ProvingKey:
    """Prover-side CRS slice; sizes are fixed by (num_variables, domain_size)."""

    __slots__ = (
        "domain_size",
        "num_public",
        "num_variables",
        "alpha_g1",
        "beta_g1",
        "delta_g1",
        "beta_g2",
        "delta_g2",
        "g1_powers",
        "g2_powers",
        "c_query",
        "h_query",
    )

    def __init__(self, **kw):
        for name in self.__slots__:
            setattr(self, name, kw[name])

    def to_bytes(self) -> bytes:
        out = [
            _PK_MAGIC,
            struct.pack("<III", self.domain_size, self.num_public, self.num_variables),
        ]
        for aff in (self.alpha_g1, self.beta_g1, self.delta_g1):
            out.append(G1Point._wrap(aff).to_bytes())
        for aff in (self.beta_g2, self.delta_g2):
            out.append(G2Point._wrap(aff).to_bytes())
        for vec in (self.g1_powers, self.c_query, self.h_query):
            for aff in vec:
                out.append(G1Point._wrap(aff).to_bytes())
        for aff in self.g2_powers:
            out.append(G2Point._wrap(aff).to_bytes())
        return b"".join(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "ProvingKey":
        if data[:8] != _PK_MAGIC:
            raise IntegrityError("not a proving key (bad magic)")
        domain, num_public, num_vars = struct.unpack_from("<III", data, 8)
        off = 20

        def g1():
            nonlocal off
            pt = G1Point.from_bytes(data[off : off + G1_BYTES])._c
            off += G1_BYTES
            return pt

        def g2():
            nonlocal off
            pt = G2Point.from_bytes(data[off : off + G2_BYTES])._c
            off += G2_BYTES
            return pt

        alpha, beta1, delta1 = g1(), g1(), g1()
        beta2, delta2 = g2(), g2()
        powers = [g1() for _ in range(domain)]
        c_query = [g1() for _ in range(num_vars - num_public - 1)]
        h_query = [g1() for _ in range(domain - 1)]
        g2_powers = [g2() for _ in range(domain)]
        if off != len(data):
            raise IntegrityError("proving key has trailing bytes")
        return cls(
            domain_size=domain,
            num_public=num_public,
            num_variables=num_vars,
            alpha_g1=alpha,
            beta_g1=beta1,
            delta_g1=delta1,
            beta_g2=beta2,
            delta_g2=delta2,
            g1_powers=powers,
            g2_powers=g2_powers,
            c_query=c_query,
            h_query=h_query,
        )

    def save(self, path):
        with open(path, "wb") as fh:
            fh.write(self.to_bytes())

    @classmethod
    def load(cls, path) -> "ProvingKey":
        with open(path, "rb") as fh:
            return cls.from_bytes(fh.read())


@dataclass(frozen=True)
class VerifyingKey:
    alpha_g1: G1Point
    beta_g2: G2Point
    gamma_g2: G2Point
    delta_g2: G2Point
    ic: tuple  # (num_public + 1) G1 points

    @property
    def num_public(self) -> int:
        return len(self.ic) - 1

    def to_bytes(self) -> bytes:
        out = [_VK_MAGIC, struct.pack("<I", len(self.ic))]
        out.append(self.alpha_g1.to_bytes())
        out.append(self.beta_g2.to_bytes())
        out.append(self.gamma_g2.to_bytes())
        out.append(self.delta_g2.to_bytes())
        out.extend(pt.to_bytes() for pt in self.ic)
        return b"".join(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "VerifyingKey":
        if data[:8] != _VK_MAGIC:
            raise IntegrityError("not a verifying key (bad magic)")
        (ic_len,) = struct.unpack_from("<I", data, 8)
        off = 12
        alpha = G1Point.from_bytes(data[off : off + G1_BYTES])
        off += G1_BYTES
        g2s = []
        for _ in range(3):
            g2s.append(G2Point.from_bytes(data[off : off + G2_BYTES]))
            off += G2_BYTES
        ic = []
        for _ in range(ic_len):
            ic.append(G1Point.from_bytes(data[off : off + G1_BYTES]))
            off += G1_BYTES
        if off != len(data):
            raise IntegrityError("verifying key has trailing bytes")
        return cls(alpha, g2s[0], g2s[1], g2s[2], tuple(ic))

    def save(self, path):
        with open(path, "wb") as fh:
            fh.write(self.to_bytes())

    @classmethod
    def load(cls, path) -> "VerifyingKey":
        with open(path, "rb") as fh:
            return cls.from_bytes(fh.read())


@dataclass(frozen=True)
class Proof:
    a: G1Point
    b: G2Point
    c: G1Point

    def to_bytes(self) -> bytes:
        return self.a.to_bytes() + self.b.to_bytes() + self.c.to_bytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "Proof":
        if len(data) != PROOF_BYTES:
            raise UsageError(f"proof encoding must be {PROOF_BYTES} bytes")
        return cls(
            a=G1Point.from_bytes(data[:G1_BYTES]),
            b=G2Point.from_bytes(data[G1_BYTES : G1_BYTES + G2_BYTES]),
            c=G1Point.from_bytes(data[G1_BYTES + G2_BYTES :]),
        )


def proof_to_json(proof: Proof, public_inputs) -> str:
    """The submission format consumed by the simulated L1 contract."""
    publics = [
        v.to_bytes().hex() if isinstance(v, ScalarFieldElement) else ScalarFieldElement(v).to_bytes().hex()
        for v in public_inputs
    ]
    return json.dumps(
        {
            "a": proof.a.to_bytes().hex(),
            "b": proof.b.to_bytes().hex(),
            "c": proof.c.to_bytes().hex(),
            "public_inputs": publics,
        },
        separators=(",", ":"),
    )


def proof_from_json(text: str):
    """Returns (Proof, public_inputs as ScalarFieldElement list)."""
    try:
        obj = json.loads(text)
        proof = Proof(
            a=G1Point.from_bytes(bytes.fromhex(obj["a"])),
            b=G2Point.from_bytes(bytes.fromhex(obj["b"])),
            c=G1Point.from_bytes(bytes.fromhex(obj["c"])),
        )
        publics = [ScalarFieldElement.from_bytes(bytes.fromhex(h)) for h in obj["public_inputs"]]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed proof JSON: {exc}") from exc
    return proof, publics
