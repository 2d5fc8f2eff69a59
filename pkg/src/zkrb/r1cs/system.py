"""Rank-1 constraint system builder: variables, linear combinations, rows.

Witness generation is coupled to synthesis: when allocations carry values,
every derived allocation computes its value immediately, so the circuit and
its witness can never drift. Building without values yields the bare
structure (for key generation and constraint counting); the allocation
order is value-independent, so both runs produce identical systems.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..algebra.field import ScalarFieldElement
from ..algebra.params import R, mpz
from ..errors import UsageError

_R = R


class Visibility(enum.Enum):
    CONSTANT_ONE = "constant_one"
    PUBLIC = "public"
    PRIVATE = "private"


@dataclass(frozen=True)
class Variable:
    index: int
    visibility: Visibility

    def __add__(self, other):
        return LinearCombination.of(self) + other

    def __radd__(self, other):
        return LinearCombination.of(self) + other

    def __sub__(self, other):
        return LinearCombination.of(self) - other

    def __rsub__(self, other):
        return -(LinearCombination.of(self) - other)

    def __mul__(self, coeff):
        return LinearCombination.of(self) * coeff

    __rmul__ = __mul__

    def __neg__(self):
        return LinearCombination.of(self) * -1


class LinearCombination:
    """Sparse sum of coeff * variable; index 0 is the constant-one wire."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @classmethod
    def of(cls, item) -> "LinearCombination":
        if isinstance(item, LinearCombination):
            return item
        if isinstance(item, Variable):
            return cls({item.index: mpz(1)})
        if isinstance(item, ScalarFieldElement):
            return cls({0: item.value} if item.value else {})
        if isinstance(item, int) or type(item) is type(_R):
            v = mpz(item) % _R
            return cls({0: v} if v else {})
        raise UsageError(f"cannot interpret {type(item).__name__} as a linear combination")

    def __add__(self, other):
        other = LinearCombination.of(other)
        out = dict(self.terms)
        for i, c in other.terms.items():
            nc = (out.get(i, 0) + c) % _R
            if nc:
                out[i] = nc
            else:
                out.pop(i, None)
        return LinearCombination(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (LinearCombination.of(other) * -1)

    def __rsub__(self, other):
        return LinearCombination.of(other) - self

    def __mul__(self, coeff):
        if isinstance(coeff, ScalarFieldElement):
            c = coeff.value
        else:
            c = mpz(coeff) % _R
        if not c:
            return LinearCombination()
        return LinearCombination({i: v * c % _R for i, v in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def evaluate(self, assignment) -> int:
        """Value under a full assignment list (raw residues)."""
        acc = 0
        for i, c in self.terms.items():
            acc += c * assignment[i]
        return acc % _R

    def evaluate_partial(self, assignment):
        """None if any referenced wire is unassigned."""
        acc = 0
        for i, c in self.terms.items():
            v = assignment[i]
            if v is None:
                return None
            acc += c * v
        return acc % _R

    def max_index(self) -> int:
        return max(self.terms) if self.terms else 0

    def __repr__(self):
        inner = " + ".join(f"{int(c)}*w{i}" for i, c in sorted(self.terms.items()))
        return f"LC({inner or '0'})"


@dataclass(frozen=True)
class ConstraintStats:
    num_constraints: int
    num_public: int
    num_private: int
    domain_size: int


class Witness:
    """Full assignment vector; w[0] = 1, publics first, then privates."""

    __slots__ = ("raw",)

    def __init__(self, raw):
        self.raw = list(raw)
        if not self.raw or self.raw[0] != 1:
            raise UsageError("witness must start with the constant one")

    def __len__(self):
        return len(self.raw)

    def __getitem__(self, i) -> ScalarFieldElement:
        return ScalarFieldElement(self.raw[i])

    def public_values(self, num_public: int):
        return [ScalarFieldElement(v) for v in self.raw[1 : 1 + num_public]]


class ConstraintSystem:
    """Mutable builder until finalize(); immutable and shareable after."""

    def __init__(self):
        self._visibilities = [Visibility.CONSTANT_ONE]
        self._values = [mpz(1)]
        self._num_public = 0
        self._num_private = 0
        self.constraints = []
        self._finalized = False
        self._stats = None

    # -- allocation ----------------------------------------------------------

    @property
    def num_variables(self) -> int:
        return len(self._visibilities)

    @property
    def num_public(self) -> int:
        return self._num_public

    @property
    def num_private(self) -> int:
        return self._num_private

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)

    @property
    def finalized(self) -> bool:
        return self._finalized

    def alloc(self, visibility: Visibility, value=None) -> Variable:
        if self._finalized:
            raise UsageError("cannot allocate on a finalized constraint system")
        if visibility == Visibility.CONSTANT_ONE:
            raise UsageError("the constant-one wire exists implicitly at index 0")
        if visibility == Visibility.PUBLIC:
            if self._num_private:
                raise UsageError("public allocations must precede private ones")
            self._num_public += 1
        else:
            self._num_private += 1
        if value is not None:
            if isinstance(value, ScalarFieldElement):
                value = value.value
            else:
                value = mpz(value) % _R
        var = Variable(len(self._visibilities), visibility)
        self._visibilities.append(visibility)
        self._values.append(value)
        return var

    def set_value(self, var: Variable, value):
        if isinstance(value, ScalarFieldElement):
            value = value.value
        self._values[var.index] = mpz(value) % _R

    def value_of(self, item):
        """Current value of a variable or LC, or None if not yet known."""
        return LinearCombination.of(item).evaluate_partial(self._values)

    # -- constraints ----------------------------------------------------------

    def enforce(self, a, b, c):
        if self._finalized:
            raise UsageError("cannot enforce on a finalized constraint system")
        a, b, c = (LinearCombination.of(x) for x in (a, b, c))
        bound = len(self._visibilities)
        for lc in (a, b, c):
            if lc.max_index() >= bound:
                raise UsageError(f"constraint references unallocated variable {lc.max_index()}")
        self.constraints.append((a, b, c))

    def mul(self, a, b) -> Variable:
        """Allocate a * b as a fresh private wire (value computed if known)."""
        a, b = LinearCombination.of(a), LinearCombination.of(b)
        va = a.evaluate_partial(self._values)
        vb = b.evaluate_partial(self._values)
        value = va * vb % _R if va is not None and vb is not None else None
        out = self.alloc(Visibility.PRIVATE, value)
        self.enforce(a, b, out)
        return out

    # -- lifecycle -------------------------------------------------------------

    def finalize(self) -> ConstraintStats:
        if self._finalized:
            raise UsageError("constraint system already finalized")
        self._finalized = True
        need = len(self.constraints) + self._num_public + 1
        domain = 1
        while domain < need:
            domain *= 2
        self._stats = ConstraintStats(
            num_constraints=len(self.constraints),
            num_public=self._num_public,
            num_private=self._num_private,
            domain_size=domain,
        )
        return self._stats

    @property
    def stats(self) -> ConstraintStats:
        if self._stats is None:
            raise UsageError("constraint system not finalized")
        return self._stats

    def witness(self) -> Witness:
        missing = [i for i, v in enumerate(self._values) if v is None]
        if missing:
            raise UsageError(f"witness incomplete: {len(missing)} unassigned wires (first: {missing[0]})")
        return Witness(self._values)

    def is_satisfied(self, witness: Witness) -> bool:
        if not self._finalized:
            raise UsageError("finalize the system before satisfaction checks")
        raw = witness.raw
        if len(raw) != self.num_variables:
            raise UsageError(
                f"witness length {len(raw)} != variable count {self.num_variables}"
            )
        for a, b, c in self.constraints:
            if a.evaluate(raw) * b.evaluate(raw) % _R != c.evaluate(raw):
                return False
        return True

    # -- diagnostics -----------------------------------------------------------

    def dump(self) -> str:
        """Line-oriented text form: header, then one constraint per line."""

        def side(lc):
            return " ".join(f"{i}:{int(c)}" for i, c in sorted(lc.terms.items()))

        lines = [f"r1cs public={self._num_public} private={self._num_private} constraints={len(self.constraints)}"]
        for a, b, c in self.constraints:
            lines.append(f"A {side(a)} | B {side(b)} | C {side(c)}")
        return "\n".join(lines) + "\n"


def alloc(cs: ConstraintSystem, visibility, value=None) -> Variable:
    if isinstance(visibility, str):
        visibility = Visibility(visibility)
    return cs.alloc(visibility, value)


def enforce(cs: ConstraintSystem, a, b, c):
    cs.enforce(a, b, c)


def finalize(cs: ConstraintSystem) -> ConstraintStats:
    return cs.finalize()


def is_satisfied(cs: ConstraintSystem, witness: Witness) -> bool:
    return cs.is_satisfied(witness)
