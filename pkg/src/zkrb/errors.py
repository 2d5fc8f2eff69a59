"""Exception types shared across the package."""


class UsageError(ValueError):
    """Caller violated a documented precondition (lengths, layout, state)."""


class IntegrityError(RuntimeError):
    """Data failed a structural or cryptographic consistency check."""


class CapacityError(UsageError):
    """An accumulator or domain is too small for the requested circuit."""


class BudgetExceeded(RuntimeError):
    """Projected memory exceeds the configured budget; refused cleanly."""


class WitnessError(RuntimeError):
    """Witness generation failed (invalid transaction, wrong secret, ...)."""


class ProverRefusal(RuntimeError):
    """The prover refused to run: the witness does not satisfy the system."""
