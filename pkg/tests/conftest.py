import os

import pytest

from zkrb.bench import BenchContext, ScenarioConfig
from zkrb.groth16 import ProvingKey, VerifyingKey

CACHE_DIR = os.path.join(os.path.dirname(__file__), "_cache")
PIPELINE_SEED = 2024
WORKERS = os.cpu_count() or 1


def pipeline_config(**overrides) -> ScenarioConfig:
    kw = dict(
        deterministic_seed=PIPELINE_SEED,
        workdir=CACHE_DIR,
        workers=WORKERS,
        repetitions=5,
    )
    kw.update(overrides)
    return ScenarioConfig(**kw)


@pytest.fixture(scope="session")
def pipeline() -> BenchContext:
    """Shared d=8 pipeline: accumulator, Lagrange caches, circuits, keys.

    Deterministic artifacts are cached under tests/_cache so repeated test
    runs skip the one-time ceremony/keygen work.
    """
    ctx = BenchContext(pipeline_config())
    acc = ctx.tau_accumulator()
    for m in ctx.config.batch_sizes:
        _cached_keypair(ctx, m, acc)
    _cached_withdrawal_keypair(ctx, acc)
    return ctx


def _key_paths(tag):
    return (
        os.path.join(CACHE_DIR, f"{tag}.pk"),
        os.path.join(CACHE_DIR, f"{tag}.vk"),
    )


def _cached_keypair(ctx, m, acc):
    pk_path, vk_path = _key_paths(f"batch_m{m}_s{PIPELINE_SEED}")
    if os.path.exists(pk_path) and os.path.exists(vk_path):
        ctx.keys[m] = (ProvingKey.load(pk_path), VerifyingKey.load(vk_path))
    else:
        pk, vk = ctx.keypair(m)
        pk.save(pk_path)
        vk.save(vk_path)


def _cached_withdrawal_keypair(ctx, acc):
    pk_path, vk_path = _key_paths(f"withdrawal_s{PIPELINE_SEED}")
    if os.path.exists(pk_path) and os.path.exists(vk_path):
        ctx.withdrawal_keys = (ProvingKey.load(pk_path), VerifyingKey.load(vk_path))
    else:
        pk, vk = ctx.withdrawal_keypair()
        pk.save(pk_path)
        vk.save(vk_path)
