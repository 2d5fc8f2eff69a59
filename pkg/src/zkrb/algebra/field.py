"""Scalar-field arithmetic: residues modulo the curve's group order r."""

from __future__ import annotations

from ..errors import UsageError
from .params import R, SCALAR_BYTES, mpz

_R = R
_R_INT = int(R)


class ScalarFieldElement:
    """Immutable residue in [0, r); supports +, -, *, /, **, unary -.

    Mixed operands: plain ints are reduced mod r on the fly.
    """

    __slots__ = ("value",)

    def __init__(self, value):
        object.__setattr__(self, "value", mpz(value) % _R)

    def __setattr__(self, name, value):
        raise AttributeError("ScalarFieldElement is immutable")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        v = _val(other)
        if v is _FOREIGN:
            return NotImplemented
        return ScalarFieldElement(self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = _val(other)
        if v is _FOREIGN:
            return NotImplemented
        return ScalarFieldElement(self.value - v)

    def __rsub__(self, other):
        v = _val(other)
        if v is _FOREIGN:
            return NotImplemented
        return ScalarFieldElement(v - self.value)

    def __mul__(self, other):
        v = _val(other)
        if v is _FOREIGN:
            return NotImplemented
        return ScalarFieldElement(self.value * v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = _val(other)
        if v is _FOREIGN:
            return NotImplemented
        return self * ScalarFieldElement(v).inverse()

    def __rtruediv__(self, other):
        v = _val(other)
        if v is _FOREIGN:
            return NotImplemented
        return ScalarFieldElement(v) * self.inverse()

    def __pow__(self, exponent: int):
        e = int(exponent)
        if e < 0:
            return self.inverse() ** (-e)
        return ScalarFieldElement(pow(self.value, e, _R))

    def __neg__(self):
        return ScalarFieldElement(-self.value)

    def inverse(self) -> "ScalarFieldElement":
        if not self.value:
            raise ZeroDivisionError("inversion of zero in the scalar field")
        return ScalarFieldElement(pow(self.value, _R - 2, _R))

    # -- comparison / hashing ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, ScalarFieldElement):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other % _R_INT
        return NotImplemented

    def __hash__(self):
        return hash(int(self.value))

    def __bool__(self):
        return bool(self.value)

    def __int__(self):
        return int(self.value)

    def __repr__(self):
        return f"Fr({int(self.value)})"

    # -- serialization -------------------------------------------------------

    def to_bytes(self) -> bytes:
        return int(self.value).to_bytes(SCALAR_BYTES, "little")

    @classmethod
    def from_bytes(cls, data: bytes) -> "ScalarFieldElement":
        if len(data) != SCALAR_BYTES:
            raise UsageError(f"scalar encoding must be {SCALAR_BYTES} bytes")
        v = int.from_bytes(data, "little")
        if v >= _R_INT:
            raise UsageError("scalar encoding not in canonical range")
        return cls(v)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls):
        return _ZERO

    @classmethod
    def one(cls):
        return _ONE

    @classmethod
    def random(cls, rng) -> "ScalarFieldElement":
        return cls(rng.randrange(_R_INT))


_ZERO = ScalarFieldElement(0)
_ONE = ScalarFieldElement(1)


_FOREIGN = object()


def _val(other):
    if isinstance(other, ScalarFieldElement):
        return other.value
    if isinstance(other, int) or type(other) is type(_R):
        return other
    return _FOREIGN  # defer to the other operand's reflected op


def field_arith(a: ScalarFieldElement, b, op: str) -> ScalarFieldElement:
    """Dispatch form of the field operations: add, sub, mul, inv, pow."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    raise UsageError(f"unknown field op {op!r}")


def batch_inverse(values):
    """Invert a list of nonzero residues with one modular inversion."""
    n = len(values)
    if n == 0:
        return []
    prefix = [mpz(1)] * (n + 1)
    for i, v in enumerate(values):
        prefix[i + 1] = prefix[i] * v % _R
    if not prefix[n]:
        raise ZeroDivisionError("inversion of zero in the scalar field")
    inv = pow(prefix[n], _R - 2, _R)
    out = [None] * n
    for i in range(n - 1, -1, -1):
        out[i] = prefix[i] * inv % _R
        inv = inv * values[i] % _R
    return out
