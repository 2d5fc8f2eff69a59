"""Powers-of-Tau accumulator: ceremony state, contributions, chain checks.

The accumulator holds [tau^0..tau^(2^n - 2)] * G1 and [tau^0..tau^(2^n - 1)]
* G2. A contribution re-randomizes tau multiplicatively; the secret exists
only inside this process while the powers are being scaled and is wiped
afterwards. Chain verification uses a randomized linear-combination batch
of the pairing invariants (adjacent-power consistency and G1/G2 agreement),
so a single corrupted power fails with overwhelming probability.

Memory is projected *before* allocation and refused cleanly when it exceeds
the configured budget (env ZKRB_MEMORY_BUDGET or argument), so oversized
parameters produce a reportable outcome instead of an OOM crash.

File format (bit-exact): magic "ZKRBTAU\\x01", u32 version=1, u32 n,
u32 contribution count, G1 points (33 bytes each, compressed), G2 points
(65 bytes), then 32-byte contribution digests. Lagrange-basis caches live
in sidecar files, never in this format.
"""

from __future__ import annotations

import hashlib
import os
import struct

from ..algebra import ec
from ..algebra.ec import G1Point, G2Point
from ..algebra.msm import msm_raw_g1, msm_raw_g2
from ..algebra.pairing import pairing
from ..algebra.params import MULTIPLICATIVE_GENERATOR, R, mpz
from ..algebra.pool import shared_pool
from ..errors import BudgetExceeded, IntegrityError, UsageError

_R = R
_MAGIC = b"ZKRBTAU\x01"
_VERSION = 1

MAX_N = 26
# documented per-point memory estimates (python tuples of big ints)
G1_POINT_MEM_BYTES = 200
G2_POINT_MEM_BYTES = 400
DEFAULT_MEMORY_BUDGET = 1 << 30


def memory_budget_bytes(override=None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("ZKRB_MEMORY_BUDGET")
    return int(env) if env else DEFAULT_MEMORY_BUDGET


def projected_memory_bytes(n: int) -> int:
    """Resident-size estimate of an accumulator with parameter n."""
    g1_count = (1 << n) - 1
    g2_count = 1 << n
    return g1_count * G1_POINT_MEM_BYTES + g2_count * G2_POINT_MEM_BYTES


def derive_secret(entropy: bytes, label: bytes, deterministic: bool) -> int:
    """Nonzero scalar from caller entropy (plus system randomness by default)."""
    mix = b"" if deterministic else os.urandom(32)
    buf = bytearray(hashlib.sha512(label + b":" + entropy + mix).digest())
    value = int.from_bytes(buf, "big") % (int(_R) - 1) + 1
    for i in range(len(buf)):  # wipe the derivation buffer
        buf[i] = 0
    return value


def _scale_chunk(args):
    kind, start, secret, points = args
    s = mpz(secret)
    step = pow(s, start, _R)
    if kind == "g1":
        jacs = []
        for pt in points:
            jacs.append(ec._g1_mul(pt, step))
            step = step * s % _R
        return ec._g1_batch_to_affine(jacs)
    jacs = []
    for pt in points:
        jacs.append(ec._g2_mul(pt, step))
        step = step * s % _R
    return ec._g2_batch_to_affine(jacs)


def _parallel_scale(kind, points, secret, workers):
    jobs = []
    chunk = max(64, -(-len(points) // max(1, workers)))
    for start in range(0, len(points), chunk):
        jobs.append((kind, start, int(secret), points[start : start + chunk]))
    pool = shared_pool(workers) if len(jobs) > 1 else None
    if pool is not None:
        parts = pool.map(_scale_chunk, jobs)
        return [pt for part in parts for pt in part]
    return [pt for job in jobs for pt in _scale_chunk(job)]


class TauAccumulator:
    """Ceremony state; treat as immutable (contribute returns a new one)."""

    def __init__(self, n: int, g1, g2, contribution_log):
        self.n = n
        self._g1 = g1  # raw affine tuples
        self._g2 = g2
        self.contribution_log = list(contribution_log)
        self._verified = False
        self._lagrange = {}

    # -- views -----------------------------------------------------------------

    @property
    def g1_powers(self):
        return [G1Point._wrap(pt) for pt in self._g1]

    @property
    def g2_powers(self):
        return [G2Point._wrap(pt) for pt in self._g2]

    def g1_raw(self):
        return self._g1

    def g2_raw(self):
        return self._g2

    def digest(self) -> bytes:
        h = hashlib.sha256()
        h.update(struct.pack("<II", self.n, len(self.contribution_log)))
        h.update(ec.G1Point._wrap(self._g1[1]).to_bytes() if len(self._g1) > 1 else b"")
        h.update(ec.G2Point._wrap(self._g2[1]).to_bytes() if len(self._g2) > 1 else b"")
        for d in self.contribution_log:
            h.update(d)
        return h.digest()

    # -- serialization -----------------------------------------------------------

    def to_bytes(self) -> bytes:
        out = [_MAGIC, struct.pack("<III", _VERSION, self.n, len(self.contribution_log))]
        for pt in self._g1:
            out.append(G1Point._wrap(pt).to_bytes())
        for pt in self._g2:
            out.append(G2Point._wrap(pt).to_bytes())
        out.extend(self.contribution_log)
        return b"".join(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "TauAccumulator":
        if data[:8] != _MAGIC:
            raise IntegrityError("not an accumulator file (bad magic)")
        version, n, n_contrib = struct.unpack_from("<III", data, 8)
        if version != _VERSION:
            raise IntegrityError(f"unsupported accumulator version {version}")
        g1_count, g2_count = (1 << n) - 1, 1 << n
        off = 20
        need = off + 33 * g1_count + 65 * g2_count + 32 * n_contrib
        if len(data) != need:
            raise IntegrityError(f"accumulator file truncated: {len(data)} != {need}")
        g1 = []
        for _ in range(g1_count):
            g1.append(G1Point.from_bytes(data[off : off + 33])._c)
            off += 33
        g2 = []
        for _ in range(g2_count):
            # on-curve checked here; subgroup membership is established by
            # the pairing batch in verify_chain (full per-point checks would
            # cost a scalar-mul per power)
            g2.append(_g2_decompress_no_subgroup(data[off : off + 65]))
            off += 65
        log = [data[off + 32 * i : off + 32 * (i + 1)] for i in range(n_contrib)]
        return cls(n, g1, g2, log)

    def save(self, path):
        with open(path, "wb") as fh:
            fh.write(self.to_bytes())

    @classmethod
    def load(cls, path) -> "TauAccumulator":
        with open(path, "rb") as fh:
            return cls.from_bytes(fh.read())

    # -- Lagrange cache ------------------------------------------------------------

    def lagrange_g1(self, domain_size: int, workers: int = 1):
        """Unnormalized Lagrange basis at tau: [N * L_j(tau) * G1 for j < N].

        Consumers must fold the 1/N factor into their scalars. Cached per
        domain size (group iFFT is the dominant one-time cost).
        """
        if domain_size in self._lagrange:
            return self._lagrange[domain_size]
        if domain_size > len(self._g1):
            raise UsageError("domain exceeds accumulator size")
        pts = _group_ifft_g1(self._g1[:domain_size], domain_size, workers)
        self._lagrange[domain_size] = pts
        return pts

    def lagrange_cache_bytes(self, domain_size: int) -> bytes:
        pts = self._lagrange[domain_size]
        out = [b"ZKRBLAG\x01", struct.pack("<I", domain_size), self.digest()]
        out.extend(G1Point._wrap(pt).to_bytes() for pt in pts)
        return b"".join(out)

    def load_lagrange_cache(self, data: bytes):
        if data[:8] != b"ZKRBLAG\x01":
            raise IntegrityError("not a lagrange cache (bad magic)")
        (domain_size,) = struct.unpack_from("<I", data, 8)
        if data[12:44] != self.digest():
            raise IntegrityError("lagrange cache belongs to a different accumulator")
        off = 44
        pts = []
        for _ in range(domain_size):
            pts.append(G1Point.from_bytes(data[off : off + 33])._c)
            off += 33
        self._lagrange[domain_size] = pts


def _g2_decompress_no_subgroup(data: bytes):
    flag = data[-1]
    if flag == 2:
        return None
    x0 = mpz(int.from_bytes(data[:32], "little"))
    x1 = mpz(int.from_bytes(data[32:64], "little"))
    if x0 >= ec._P or x1 >= ec._P or flag > 1:
        raise IntegrityError("bad G2 encoding in accumulator")
    x = (x0, x1)
    rhs = ec._f2_add(ec._f2_mul(ec._f2_sqr(x), x), ec.TWIST_B)
    y = ec._f2_sqrt(rhs)
    if y is None:
        raise IntegrityError("G2 x-coordinate off the twist curve")
    larger = (int(y[1]), int(y[0])) > (int(-y[1] % ec._P), int(-y[0] % ec._P))
    if larger != bool(flag):
        y = ec._f2_neg(y)
    return (x, y)


def tau_init(n: int, memory_budget=None) -> TauAccumulator:
    """Fresh accumulator with tau = 1 (every power equals its generator)."""
    if not 2 <= n <= MAX_N:
        raise UsageError(f"security parameter n must be in [2, {MAX_N}]")
    projected = projected_memory_bytes(n)
    budget = memory_budget_bytes(memory_budget)
    if projected > budget:
        raise BudgetExceeded(
            f"accumulator n={n} projects {projected} bytes > budget {budget}"
        )
    g1 = [ec.G1_GENERATOR] * ((1 << n) - 1)
    g2 = [ec.G2_GENERATOR] * (1 << n)
    return TauAccumulator(n, g1, g2, [])


def tau_contribute(
    acc: TauAccumulator,
    entropy: bytes,
    deterministic: bool = False,
    workers: int = 1,
    check_input: bool = True,
) -> TauAccumulator:
    """Multiply power i by s^i for a fresh secret s; returns a new accumulator."""
    if check_input and not tau_verify_chain(acc, workers=workers):
        raise IntegrityError("refusing to contribute to an inconsistent accumulator")
    secret = derive_secret(entropy, b"zkrb-tau-contribution", deterministic)
    try:
        return _contribute_with_secret(acc, secret, workers)
    finally:
        del secret  # best-effort: no references retained


def _contribute_with_secret(acc: TauAccumulator, secret: int, workers: int = 1) -> TauAccumulator:
    g1 = _parallel_scale("g1", acc._g1, secret, workers)
    g2 = _parallel_scale("g2", acc._g2, secret, workers)
    digest = hashlib.sha256(
        (acc.contribution_log[-1] if acc.contribution_log else b"\x00" * 32)
        + G1Point._wrap(g1[1]).to_bytes()
        + G2Point._wrap(g2[1]).to_bytes()
    ).digest()
    out = TauAccumulator(acc.n, g1, g2, acc.contribution_log + [digest])
    return out


def tau_verify_chain(acc: TauAccumulator, workers: int = 1) -> bool:
    """Pairing-consistency across adjacent powers plus G1/G2 agreement.

    Randomized batch form: with coefficients r_i drawn from a seeded PRG,
      e(sum r_i * g1[i+1], G2)  == e(sum r_i * g1[i],  g2[1])
      e(sum s_i * g1[i],  G2)  == e(G1, sum s_i * g2[i])   (i < 2^n - 1)
    plus exact base checks g1[0] == G1, g2[0] == G2.
    """
    if acc._verified:
        return True
    g1, g2 = acc._g1, acc._g2
    if len(g1) != (1 << acc.n) - 1 or len(g2) != (1 << acc.n):
        return False
    if g1[0] != ec.G1_GENERATOR or g2[0] != ec.G2_GENERATOR:
        return False
    seed = hashlib.sha256(b"zkrb-tau-verify" + acc.digest()).digest()
    rng_state = seed
    coeffs = []
    for _ in range(2 * (len(g1) - 1) // 8 + 2):
        rng_state = hashlib.sha256(rng_state).digest()
        coeffs.append(rng_state)
    stream = b"".join(coeffs)
    m = len(g1) - 1

    def draw(idx):
        chunk = stream[16 * idx : 16 * idx + 16]
        return int.from_bytes(chunk, "big") | 1

    r_coeffs = [draw(i) for i in range(m)]
    lhs = msm_raw_g1(r_coeffs, g1[1:], workers)
    rhs = msm_raw_g1(r_coeffs, g1[:-1], workers)
    G2gen = G2Point.generator()
    if pairing(G1Point._wrap(ec._g1_to_affine(lhs)), G2gen) != pairing(
        G1Point._wrap(ec._g1_to_affine(rhs)), G2Point._wrap(g2[1])
    ):
        return False
    s_coeffs = [draw(m + i) for i in range(m + 1)]
    lhs2 = msm_raw_g1(s_coeffs, g1, workers)
    rhs2 = msm_raw_g2(s_coeffs, g2[: m + 1], workers)
    if pairing(G1Point._wrap(ec._g1_to_affine(lhs2)), G2gen) != pairing(
        G1Point.generator(), G2Point._wrap(ec._g2_to_affine(rhs2))
    ):
        return False
    acc._verified = True
    return True


# ---------------------------------------------------------------------------
# Group iFFT for the Lagrange basis
# ---------------------------------------------------------------------------


def _group_stages_affine(affs, twiddles, first_m, last_m):
    """Butterfly stages over affine points (None = identity); returns affine.

    The array is re-normalized once per stage so the twiddle multiplications
    always see affine inputs (one shared inversion per stage).
    """
    n_full = len(twiddles) * 2
    m = first_m
    while m <= last_m:
        half = m >> 1
        stride = n_full // m
        out = [None] * len(affs)
        for start in range(0, len(affs), m):
            base = start + half
            for k in range(half):
                w = twiddles[k * stride]
                t = ec._g1_mul(affs[base + k], w)
                u = affs[start + k]
                uj = ec._G1_INF if u is None else (u[0], u[1], mpz(1))
                out[start + k] = ec._g1_add(uj, t)
                out[base + k] = ec._g1_add(uj, ec._g1_neg(t))
        affs = ec._g1_batch_to_affine(out)
        m <<= 1
    return affs


def _group_child(args):
    pts, twiddles, last_m = args
    return _group_stages_affine(pts, twiddles, 2, last_m)


def _group_butterfly_span(args):
    """One stage's butterflies for a span of k-indices within one block."""
    firsts, seconds, tws = args
    out_first, out_second = [], []
    for u, b, w in zip(firsts, seconds, tws):
        t = ec._g1_mul(b, w)
        uj = ec._G1_INF if u is None else (u[0], u[1], mpz(1))
        out_first.append(ec._g1_add(uj, t))
        out_second.append(ec._g1_add(uj, ec._g1_neg(t)))
    return ec._g1_batch_to_affine(out_first), ec._g1_batch_to_affine(out_second)


def _group_stage_parallel(affs, twiddles, m, pool, workers):
    """One butterfly stage with the k-loop split across the pool."""
    n = len(affs)
    n_full = len(twiddles) * 2
    half = m >> 1
    stride = n_full // m
    jobs = []
    slots = []
    jobs_per_block = max(1, workers // max(1, n // m))
    span = -(-half // jobs_per_block)
    for start in range(0, n, m):
        base = start + half
        for k0 in range(0, half, span):
            k1 = min(k0 + span, half)
            firsts = affs[start + k0 : start + k1]
            seconds = affs[base + k0 : base + k1]
            tws = [twiddles[k * stride] for k in range(k0, k1)]
            jobs.append((firsts, seconds, tws))
            slots.append((start + k0, base + k0, k1 - k0))
    out = list(affs)
    for (fa, sa), (fi, si, cnt) in zip(pool.map(_group_butterfly_span, jobs), slots):
        out[fi : fi + cnt] = fa
        out[si : si + cnt] = sa
    return out


def _group_ifft_g1(points, n, workers: int = 1):
    """Unnormalized inverse FFT of affine G1 points (no 1/N scaling)."""
    a = list(points)
    if n == 1:
        return a
    root = pow(mpz(MULTIPLICATIVE_GENERATOR), (_R - 1) // n, _R)
    root = pow(root, _R - 2, _R)  # inverse root
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            a[i], a[j] = a[j], a[i]
    twiddles = [mpz(1)] * (n // 2)
    for i in range(1, n // 2):
        twiddles[i] = twiddles[i - 1] * root % _R
    workers = max(1, min(int(workers), n // 2))
    while workers & (workers - 1):
        workers -= 1
    chunk = n // workers
    pool = shared_pool(workers) if workers > 1 and chunk >= 2 else None
    if pool is None:
        return _group_stages_affine(a, twiddles, 2, n)
    sub_twiddles = twiddles[:: n // chunk] if chunk > 1 else [mpz(1)]
    jobs = [(a[i : i + chunk], sub_twiddles, chunk) for i in range(0, n, chunk)]
    parts = pool.map(_group_child, jobs)
    a = [pt for part in parts for pt in part]
    m = chunk * 2
    while m <= n:
        a = _group_stage_parallel(a, twiddles, m, pool, workers)
        m <<= 1
    return a
