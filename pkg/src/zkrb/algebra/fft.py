"""Radix-2 FFT over the scalar field and power-of-two evaluation domains."""

from __future__ import annotations

from ..errors import UsageError
from .field import ScalarFieldElement
from .params import MULTIPLICATIVE_GENERATOR, R, TWO_ADICITY, mpz
from .pool import shared_pool

_R = R


class EvaluationDomain:
    """Multiplicative subgroup of size 2^k with a fixed primitive root."""

    __slots__ = ("size", "generator", "_twiddles", "_inv_twiddles")

    def __init__(self, size: int):
        if size < 1 or size & (size - 1):
            raise UsageError(f"domain size must be a power of two, got {size}")
        if size > (1 << TWO_ADICITY):
            raise UsageError(f"domain size {size} exceeds the field's 2-adic limit 2^{TWO_ADICITY}")
        object.__setattr__(self, "size", size)
        root = pow(mpz(MULTIPLICATIVE_GENERATOR), (_R - 1) // size, _R)
        object.__setattr__(self, "generator", ScalarFieldElement(root))
        object.__setattr__(self, "_twiddles", None)
        object.__setattr__(self, "_inv_twiddles", None)

    def __setattr__(self, name, value):
        raise AttributeError("EvaluationDomain is immutable")

    def elements(self):
        """The domain points [1, w, w^2, ...] as raw residues."""
        out = [mpz(1)]
        g = self.generator.value
        for _ in range(self.size - 1):
            out.append(out[-1] * g % _R)
        return out

    def twiddles(self, inverse: bool = False):
        attr = "_inv_twiddles" if inverse else "_twiddles"
        cached = getattr(self, attr)
        if cached is None:
            root = self.generator.value
            if inverse:
                root = pow(root, _R - 2, _R)
            cached = [mpz(1)] * max(1, self.size // 2)
            for i in range(1, self.size // 2):
                cached[i] = cached[i - 1] * root % _R
            object.__setattr__(self, attr, cached)
        return cached

    def __repr__(self):
        return f"EvaluationDomain(size={self.size})"


def _bit_reverse(a):
    n = len(a)
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            a[i], a[j] = a[j], a[i]


def _butterfly_stages(a, twiddles, first_m, last_m):
    """Run stages with block size first_m..last_m on the bit-reversed array."""
    n_full = len(twiddles) * 2
    m = first_m
    while m <= last_m:
        half = m >> 1
        stride = n_full // m
        for start in range(0, len(a), m):
            base = start + half
            for k in range(half):
                w = twiddles[k * stride]
                u = a[start + k]
                t = w * a[base + k] % _R
                a[start + k] = (u + t) % _R
                a[base + k] = (u - t) % _R
        m <<= 1
    return a


def _child_fft(args):
    chunk, twiddles, last_m = args
    return _butterfly_stages(chunk, twiddles, 2, last_m)


def _fft_ints(values, domain: EvaluationDomain, inverse: bool, workers: int = 1):
    n = domain.size
    a = list(values)
    if n == 1:
        return a
    _bit_reverse(a)
    twiddles = domain.twiddles(inverse)
    workers = max(1, min(int(workers), n // 2))
    # clamp to a power of two so chunks align with butterfly blocks
    while workers & (workers - 1):
        workers -= 1
    chunk_size = n // workers
    pool = shared_pool(workers) if workers > 1 and chunk_size >= 1024 else None
    if pool is not None:
        sub_twiddles = twiddles[:: n // chunk_size] if chunk_size > 1 else [mpz(1)]
        jobs = [
            (a[i : i + chunk_size], sub_twiddles, chunk_size)
            for i in range(0, n, chunk_size)
        ]
        parts = pool.map(_child_fft, jobs)
        a = [x for part in parts for x in part]
        _butterfly_stages(a, twiddles, chunk_size * 2, n)
    else:
        _butterfly_stages(a, twiddles, 2, n)
    if inverse:
        n_inv = pow(mpz(n), _R - 2, _R)
        a = [x * n_inv % _R for x in a]
    return a


def fft(values, domain: EvaluationDomain, direction: str = "forward", workers: int = 1):
    """Map coefficients to evaluations on the domain (or back, exactly).

    Results are bit-identical for any worker count.
    """
    if len(values) != domain.size:
        raise UsageError(f"expected {domain.size} values, got {len(values)}")
    if direction not in ("forward", "inverse"):
        raise UsageError(f"unknown fft direction {direction!r}")
    raw = [v.value if isinstance(v, ScalarFieldElement) else mpz(v) % _R for v in values]
    out = _fft_ints(raw, domain, direction == "inverse", workers)
    return [ScalarFieldElement(x) for x in out]


def coset_scale(coeffs, shift):
    """Scale coefficient i by shift^i (evaluate-on-coset preprocessing)."""
    out = []
    acc = mpz(1)
    for c in coeffs:
        out.append(c * acc % _R)
        acc = acc * shift % _R
    return out
