"""Flat key=value config files for the gas schedule and price parameters.

Example:

    # gas schedule overrides
    tx_base = 21000
    pairing_per_pair = 34000
    gas_price_gwei = 20
    eth_usd = 3000

Unknown keys are rejected so typos surface; `[section]` headers and `#`
comments are tolerated.
"""

from __future__ import annotations

from decimal import Decimal, InvalidOperation

from .errors import UsageError
from .l1sim import GasSchedule, PriceConfig

_GAS_KEYS = {
    "tx_base",
    "pairing_base",
    "pairing_per_pair",
    "ecmul_per_input",
    "ecadd_per_input",
    "calldata_nonzero_byte",
    "calldata_zero_byte",
    "storage_update",
}
_PRICE_KEYS = {"gas_price_gwei", "eth_usd"}


def parse_config_text(text: str):
    """Returns (GasSchedule, PriceConfig) with file overrides applied."""
    gas_kw = {}
    price_kw = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or (line.startswith("[") and line.endswith("]")):
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip().strip('"')
        if key in _GAS_KEYS:
            try:
                gas_kw[key] = int(value)
            except ValueError as exc:
                raise UsageError(f"config line {lineno}: {key} must be an integer") from exc
        elif key in _PRICE_KEYS:
            try:
                price_kw[key] = Decimal(value)
            except InvalidOperation as exc:
                raise UsageError(f"config line {lineno}: {key} must be numeric") from exc
        else:
            raise UsageError(f"config line {lineno}: unknown key {key!r}")
    return GasSchedule(**gas_kw), PriceConfig(**price_kw)


def load_config(path):
    with open(path) as fh:
        return parse_config_text(fh.read())
