"""Bilinear pairing e: G1 x G2 -> GT and the GT element wrapper."""

from __future__ import annotations

from . import _pairing_kernel as _k
from . import instrumentation
from .ec import G1Point, G2Point
from .field import ScalarFieldElement
from .params import R


class GTElement:
    """Element of the order-r target group (unit subgroup of F_p12)."""

    __slots__ = ("_v",)

    def __init__(self, coeffs):
        object.__setattr__(self, "_v", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("GTElement is immutable")

    @classmethod
    def identity(cls) -> "GTElement":
        return cls(_k.FQ12_ONE)

    @property
    def is_identity(self) -> bool:
        return _k.f12_is_one(self._v)

    def __mul__(self, other: "GTElement") -> "GTElement":
        return GTElement(_k.f12_mul(self._v, other._v))

    def __truediv__(self, other: "GTElement") -> "GTElement":
        return GTElement(_k.f12_mul(self._v, _k.f12_inv(other._v)))

    def __pow__(self, exponent) -> "GTElement":
        if isinstance(exponent, ScalarFieldElement):
            e = int(exponent.value)
        else:
            e = int(exponent) % int(R)
        return GTElement(_k.f12_exp(self._v, e))

    def inverse(self) -> "GTElement":
        return GTElement(_k.f12_inv(self._v))

    def __eq__(self, other):
        return isinstance(other, GTElement) and self._v == other._v

    def __hash__(self):
        def deep(t):
            return tuple(deep(x) for x in t) if isinstance(t, tuple) else int(t)

        return hash(deep(self._v))

    def __repr__(self):
        return "GTElement(identity)" if self.is_identity else f"GTElement(0x{hash(self) & 0xFFFFFFFF:08x})"


def pairing(p: G1Point, q: G2Point) -> GTElement:
    """Optimal-ate pairing; bilinear and non-degenerate on the r-subgroups."""
    instrumentation.record_pairing()
    if p.is_identity or q.is_identity:
        return GTElement.identity()
    px, py = p.xy
    (x0, x1), (y0, y1) = q.xy
    # kernel fq2 layout is (i-coeff, const)
    return GTElement(_k.ate_pairing((px, py), ((x1, x0), (y1, y0))))
