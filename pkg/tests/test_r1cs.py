import pytest

from zkrb.errors import UsageError
from zkrb.r1cs import (
    ConstraintSystem,
    LinearCombination,
    Visibility,
    Witness,
    alloc,
    enforce,
    finalize,
    is_satisfied,
)


def test_alloc_layout_rules():
    cs = ConstraintSystem()
    v1 = cs.alloc(Visibility.PUBLIC, 5)
    assert v1.index == 1 and v1.visibility == Visibility.PUBLIC
    v2 = cs.alloc(Visibility.PUBLIC, 6)
    v3 = cs.alloc(Visibility.PRIVATE, 7)
    assert (v2.index, v3.index) == (2, 3)
    with pytest.raises(UsageError):
        cs.alloc(Visibility.PUBLIC)  # public after private
    with pytest.raises(UsageError):
        cs.alloc(Visibility.CONSTANT_ONE)


def test_finalize_lifecycle():
    cs = ConstraintSystem()
    stats = cs.finalize()
    assert stats.num_constraints == 0 and stats.domain_size == 1
    with pytest.raises(UsageError):
        cs.finalize()
    with pytest.raises(UsageError):
        cs.alloc(Visibility.PRIVATE)
    with pytest.raises(UsageError):
        cs.enforce(1, 1, 1)


def test_domain_size_rule():
    cs = ConstraintSystem()
    a = cs.alloc(Visibility.PUBLIC, 1)
    b = cs.alloc(Visibility.PUBLIC, 1)
    for _ in range(5):
        cs.enforce(a, b, a * 1)
    stats = cs.finalize()
    # 5 constraints + 2 publics + 1 -> next power of two is 8
    assert stats.domain_size == 8
    assert stats.num_public == 2


def test_enforce_examples():
    cs = ConstraintSystem()
    x = cs.alloc(Visibility.PRIVATE, 9)
    cs.enforce(x, 1, x)  # identity constraint, always satisfied
    y = cs.alloc(Visibility.PRIVATE, 5)
    z = cs.alloc(Visibility.PRIVATE, 45)
    cs.enforce(x, y, z)
    cs.finalize()
    assert cs.is_satisfied(cs.witness())


def test_booleanity_counterexample():
    cs = ConstraintSystem()
    b = cs.alloc(Visibility.PRIVATE, 2)
    cs.enforce(b, b, b)
    cs.finalize()
    assert not cs.is_satisfied(cs.witness())


def test_unknown_variable_rejected():
    cs = ConstraintSystem()
    v = cs.alloc(Visibility.PRIVATE, 1)
    ghost = LinearCombination({5: 1})
    with pytest.raises(UsageError):
        cs.enforce(ghost, v, v)


def test_witness_completeness_checks():
    cs = ConstraintSystem()
    v = cs.alloc(Visibility.PRIVATE)  # no value
    cs.finalize()
    with pytest.raises(UsageError):
        cs.witness()
    with pytest.raises(UsageError):
        cs.is_satisfied(Witness([1]))  # wrong length


def test_is_satisfied_requires_finalize():
    cs = ConstraintSystem()
    v = cs.alloc(Visibility.PRIVATE, 1)
    with pytest.raises(UsageError):
        cs.is_satisfied(Witness([1, 1]))


def test_witness_values_and_publics():
    cs = ConstraintSystem()
    p = cs.alloc(Visibility.PUBLIC, 11)
    q = cs.alloc(Visibility.PRIVATE, 22)
    w = cs.witness()
    assert w.raw[0] == 1
    assert [int(v) for v in w.public_values(1)] == [11]
    assert int(w[2]) == 22


def test_module_level_wrappers():
    cs = ConstraintSystem()
    v = alloc(cs, "private", 3)
    enforce(cs, v, v, 9)
    stats = finalize(cs)
    assert stats.num_constraints == 1
    assert is_satisfied(cs, cs.witness())


def test_lc_algebra():
    cs = ConstraintSystem()
    a = cs.alloc(Visibility.PRIVATE, 3)
    b = cs.alloc(Visibility.PRIVATE, 4)
    lc = a * 2 + b - 1
    assert cs.value_of(lc) == 2 * 3 + 4 - 1
    assert cs.value_of(-lc + lc) == 0
    assert cs.value_of(LinearCombination.of(7)) == 7


def test_dump_format_and_determinism():
    def build():
        cs = ConstraintSystem()
        x = cs.alloc(Visibility.PUBLIC, 3)
        y = cs.alloc(Visibility.PRIVATE, 5)
        cs.enforce(x, y, x * 5)
        cs.enforce(x + y, 1, 8)
        cs.finalize()
        return cs

    d1, d2 = build().dump(), build().dump()
    assert d1 == d2
    lines = d1.splitlines()
    assert lines[0] == "r1cs public=1 private=1 constraints=2"
    assert lines[1] == "A 1:1 | B 2:1 | C 1:5"
    assert len(lines) == 3
