"""Circuit-specific key generation from a verified tau accumulator.

A single trusted step (no second ceremony phase): alpha/beta/gamma/delta
are drawn from the setup entropy, used to form the keys, and wiped. tau is
never known here; everything derives from the accumulator's powers and the
Lagrange-basis transform cached on it.
"""

from __future__ import annotations

from ..algebra import ec
from ..algebra.params import R, mpz
from ..algebra.pool import shared_pool
from ..errors import CapacityError, IntegrityError, UsageError
from ..r1cs.system import ConstraintSystem
from .keys import ProvingKey, VerifyingKey
from .qap import qap_rows
from .tau import TauAccumulator, derive_secret, tau_verify_chain

_R = R


def required_tau_n(domain_size: int) -> int:
    """Smallest n with 2^n >= 2 * domain_size (H query reaches tau^(2N-2))."""
    n = 1
    while (1 << n) < 2 * domain_size:
        n += 1
    return n


def _mul_chunk(args):
    pairs = args
    jacs = [ec._g1_mul(pt, k) for k, pt in pairs]
    return ec._g1_batch_to_affine(jacs)


def _parallel_g1_muls(pairs, workers: int):
    """[(scalar, affine)] -> affine scalar*point list, order preserved."""
    pool = shared_pool(workers) if len(pairs) >= 4 * workers else None
    if pool is not None:
        chunk = -(-len(pairs) // workers)
        jobs = [pairs[i : i + chunk] for i in range(0, len(pairs), chunk)]
        parts = pool.map(_mul_chunk, jobs)
        return [pt for part in parts for pt in part]
    return _mul_chunk(pairs)


def _combine_chunk(args):
    lag, groups = args
    out = []
    for terms in groups:
        acc = ec._G1_INF
        for scalar, j in terms:
            acc = ec._g1_add(acc, ec._g1_mul(lag[j], scalar))
        out.append(acc)
    return ec._g1_batch_to_affine(out)


def _parallel_combine(lag, per_var_terms, workers: int):
    """For each variable's [(scalar, row)] list, sum scalar * lag[row]."""
    pool = shared_pool(workers) if len(per_var_terms) >= 2 * workers else None
    if pool is not None:
        chunk = -(-len(per_var_terms) // workers)
        jobs = [
            (lag, per_var_terms[i : i + chunk])
            for i in range(0, len(per_var_terms), chunk)
        ]
        parts = pool.map(_combine_chunk, jobs)
        return [pt for part in parts for pt in part]
    return _combine_chunk((lag, per_var_terms))


def setup(
    acc: TauAccumulator,
    cs: ConstraintSystem,
    setup_entropy: bytes,
    deterministic: bool = False,
    workers: int = 1,
) -> tuple:
    """Groth16 (ProvingKey, VerifyingKey) for the circuit under this CRS."""
    if not cs.finalized:
        raise UsageError("finalize the constraint system before setup")
    n_domain = cs.stats.domain_size
    if (1 << acc.n) < 2 * n_domain:
        raise CapacityError(
            f"accumulator n={acc.n} too small for domain {n_domain}; "
            f"requires n >= {required_tau_n(n_domain)}"
        )
    if not tau_verify_chain(acc, workers=workers):
        raise IntegrityError("tau accumulator failed chain verification")

    alpha = derive_secret(setup_entropy, b"zkrb-setup-alpha", deterministic)
    beta = derive_secret(setup_entropy, b"zkrb-setup-beta", deterministic)
    gamma = derive_secret(setup_entropy, b"zkrb-setup-gamma", deterministic)
    delta = derive_secret(setup_entropy, b"zkrb-setup-delta", deterministic)
    gamma_inv = pow(mpz(gamma), _R - 2, _R)
    delta_inv = pow(mpz(delta), _R - 2, _R)
    n_inv = pow(mpz(n_domain), _R - 2, _R)

    lag = acc.lagrange_g1(n_domain, workers)  # N * L_j(tau) * G1

    # per-variable query scalars: (beta*a_ji + alpha*b_ji + c_ji) / (N * gamma-or-delta)
    a_rows, b_rows, c_rows = qap_rows(cs)
    num_vars = cs.num_variables
    num_public = cs.num_public
    per_var = [[] for _ in range(num_vars)]
    for j in range(len(a_rows)):
        row_contrib = {}
        for i, coeff in a_rows[j]:
            row_contrib[i] = row_contrib.get(i, 0) + beta * coeff
        for i, coeff in b_rows[j]:
            row_contrib[i] = row_contrib.get(i, 0) + alpha * coeff
        for i, coeff in c_rows[j]:
            row_contrib[i] = row_contrib.get(i, 0) + coeff
        for i, val in row_contrib.items():
            divisor = gamma_inv if i <= num_public else delta_inv
            scalar = val % _R * divisor % _R * n_inv % _R
            if scalar:
                per_var[i].append((scalar, j))
    queries = _parallel_combine(lag, per_var, workers)
    ic = tuple(ec.G1Point._wrap(queries[i]) for i in range(num_public + 1))
    c_query = queries[num_public + 1 :]

    # H query: tau^k * Z(tau) / delta = delta_inv * (tau^(k+N) - tau^k)
    g1 = acc.g1_raw()
    diffs = ec._g1_batch_to_affine(
        [
            ec._g1_add_affine(
                (g1[k + n_domain][0], g1[k + n_domain][1], mpz(1)),
                (g1[k][0], -g1[k][1] % ec._P),
            )
            for k in range(n_domain - 1)
        ]
    )
    h_query = _parallel_g1_muls([(delta_inv, pt) for pt in diffs], workers)

    gen1 = ec.G1_GENERATOR
    gen2 = ec.G2_GENERATOR
    pk = ProvingKey(
        domain_size=n_domain,
        num_public=num_public,
        num_variables=num_vars,
        alpha_g1=ec._g1_to_affine(ec._g1_mul(gen1, alpha)),
        beta_g1=ec._g1_to_affine(ec._g1_mul(gen1, beta)),
        delta_g1=ec._g1_to_affine(ec._g1_mul(gen1, delta)),
        beta_g2=ec._g2_to_affine(ec._g2_mul(gen2, beta)),
        delta_g2=ec._g2_to_affine(ec._g2_mul(gen2, delta)),
        g1_powers=list(g1[:n_domain]),
        g2_powers=list(acc.g2_raw()[:n_domain]),
        c_query=c_query,
        h_query=h_query,
    )
    vk = VerifyingKey(
        alpha_g1=ec.G1Point._wrap(pk.alpha_g1),
        beta_g2=ec.G2Point._wrap(pk.beta_g2),
        gamma_g2=ec.G2Point._wrap(ec._g2_to_affine(ec._g2_mul(gen2, gamma))),
        delta_g2=ec.G2Point._wrap(pk.delta_g2),
        ic=ic,
    )
    del alpha, beta, gamma, delta, gamma_inv, delta_inv
    return pk, vk
