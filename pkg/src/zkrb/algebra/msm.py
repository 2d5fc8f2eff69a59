"""Multi-scalar multiplication via the bucketed-window (Pippenger) method.

This is the prover's hot loop: sum of scalar_i * point_i computed with
sub-linear work per term. The window width is a fixed deterministic
function of the input length, so results and costs are reproducible.
"""

from __future__ import annotations

from ..errors import UsageError
from . import ec, instrumentation
from .ec import G1Point, G2Point
from .field import ScalarFieldElement
from .params import R
from .pool import shared_pool

_R = int(R)
_SCALAR_BITS = 254


def window_bits(n: int) -> int:
    """Bucket-window width minimizing (254/c) * (n + 2^(c+1)); deterministic."""
    if n <= 1:
        return 1
    best_c, best_cost = 1, None
    for c in range(1, 16):
        cost = -(-_SCALAR_BITS // c) * (n + (1 << (c + 1)))
        if best_cost is None or cost < best_cost:
            best_c, best_cost = c, cost
    return best_c


def _msm_g1_serial(pairs):
    acc = ec._G1_INF
    n = len(pairs)
    c = window_bits(n)
    mask = (1 << c) - 1
    max_bits = max(s.bit_length() for s, _ in pairs)
    windows = -(-max_bits // c)
    for w in range(windows - 1, -1, -1):
        if acc[2]:
            for _ in range(c):
                acc = ec._g1_double(acc)
        shift = w * c
        buckets = [None] * mask
        for s, pt in pairs:
            d = (s >> shift) & mask
            if d:
                cur = buckets[d - 1]
                buckets[d - 1] = (
                    ec._g1_add_affine(cur, pt) if cur is not None else (pt[0], pt[1], ec.mpz(1))
                )
        running = ec._G1_INF
        total = ec._G1_INF
        for b in reversed(buckets):
            if b is not None:
                running = ec._g1_add(running, b)
                total = ec._g1_add(total, running)
            elif running[2]:
                total = ec._g1_add(total, running)
        acc = ec._g1_add(acc, total)
    return acc


def _msm_g2_serial(pairs):
    acc = ec._G2_INF
    n = len(pairs)
    c = window_bits(n)
    mask = (1 << c) - 1
    max_bits = max(s.bit_length() for s, _ in pairs)
    windows = -(-max_bits // c)
    for w in range(windows - 1, -1, -1):
        if acc[2] != ec._F2_ZERO:
            for _ in range(c):
                acc = ec._g2_double(acc)
        shift = w * c
        buckets = [None] * mask
        for s, pt in pairs:
            d = (s >> shift) & mask
            if d:
                cur = buckets[d - 1]
                buckets[d - 1] = (
                    ec._g2_add_affine(cur, pt) if cur is not None else (pt[0], pt[1], ec._F2_ONE)
                )
        running = ec._G2_INF
        total = ec._G2_INF
        for b in reversed(buckets):
            if b is not None:
                running = ec._g2_add(running, b)
                total = ec._g2_add(total, running)
            elif running[2] != ec._F2_ZERO:
                total = ec._g2_add(total, running)
        acc = ec._g2_add(acc, total)
    return acc


def _child_msm(args):
    kind, pairs = args
    jac = _msm_g1_serial(pairs) if kind == "g1" else _msm_g2_serial(pairs)
    return jac


def msm_raw_g1(scalar_ints, affine_points, workers: int = 1):
    """Internal MSM on raw (int, affine-tuple) inputs; returns Jacobian."""
    pairs = [
        (int(s) % _R, pt)
        for s, pt in zip(scalar_ints, affine_points)
        if pt is not None and int(s) % _R
    ]
    if not pairs:
        return ec._G1_INF
    workers = max(1, min(int(workers), len(pairs)))
    if workers > 1 and len(pairs) >= 256 * workers:
        pool = shared_pool(workers)
        if pool is not None:
            chunk = -(-len(pairs) // workers)
            jobs = [("g1", pairs[i : i + chunk]) for i in range(0, len(pairs), chunk)]
            acc = ec._G1_INF
            for part in pool.map(_child_msm, jobs):
                acc = ec._g1_add(acc, part)
            return acc
    return _msm_g1_serial(pairs)


def msm_raw_g2(scalar_ints, affine_points, workers: int = 1):
    pairs = [
        (int(s) % _R, pt)
        for s, pt in zip(scalar_ints, affine_points)
        if pt is not None and int(s) % _R
    ]
    if not pairs:
        return ec._G2_INF
    workers = max(1, min(int(workers), len(pairs)))
    if workers > 1 and len(pairs) >= 128 * workers:
        pool = shared_pool(workers)
        if pool is not None:
            chunk = -(-len(pairs) // workers)
            jobs = [("g2", pairs[i : i + chunk]) for i in range(0, len(pairs), chunk)]
            acc = ec._G2_INF
            for part in pool.map(_child_msm, jobs):
                acc = ec._g2_add(acc, part)
            return acc
    return _msm_g2_serial(pairs)


def msm(scalars, points, workers: int = 1):
    """Sum of scalars[i] * points[i]; equals naive per-term accumulation.

    Results are bit-identical for any worker count.
    """
    if len(scalars) != len(points):
        raise UsageError(f"msm length mismatch: {len(scalars)} scalars, {len(points)} points")
    instrumentation.record_msm(len(scalars))
    if not points:
        return G1Point.identity()
    raw_scalars = [s.value if isinstance(s, ScalarFieldElement) else int(s) for s in scalars]
    first = points[0]
    if isinstance(first, G1Point):
        affs = [pt._c for pt in points]
        return G1Point._wrap(ec._g1_to_affine(msm_raw_g1(raw_scalars, affs, workers)))
    if isinstance(first, G2Point):
        affs = [pt._c for pt in points]
        return G2Point._wrap(ec._g2_to_affine(msm_raw_g2(raw_scalars, affs, workers)))
    raise UsageError("msm points must be G1Point or G2Point")
