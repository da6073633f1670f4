import pytest
from hypothesis import given, settings, strategies as st

from flagsph.partitions import (
    Composition,
    Partition,
    collapse,
    dominates,
    dual,
    enumerate_partitions,
    in_parity_class,
    is_symmetric,
    is_very_even,
    symmetric_compositions,
)

from conftest import brute_collapse


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert Partition.from_exponents([(2, 2), (1, 3)]).parts == (2, 2, 1, 1, 1)


def test_dual_of_composition():
    assert dual(Composition((1, 4, 1))).parts == (3, 1, 1, 1)
    assert dual(Composition((1, 5, 1))).parts == (3, 1, 1, 1, 1)
    assert dual(Composition((3, 3))).parts == (2, 2, 2)


def test_symmetric():
    assert is_symmetric((1, 4, 1))
    assert not is_symmetric((1, 2))
    assert all(is_symmetric(c) for c in symmetric_compositions(7))


def test_parity_classes():
    assert in_parity_class((3, 1, 1, 1, 1), 1)
    assert not in_parity_class((3, 1, 1, 1), -1)
    assert in_parity_class((2, 2, 1, 1), -1)
    assert is_very_even((2, 2, 2, 2))
    assert not is_very_even((2, 2, 1, 1))


@pytest.mark.parametrize("a, eps, expected", [
    ((3, 1, 1, 1), -1, (2, 2, 1, 1)),
    ((3, 1, 1, 1, 1), 1, (3, 1, 1, 1, 1)),
    ((2, 2), 1, (2, 2)),
    ((2, 1), 1, (1, 1, 1)),
    ((4,), -1, (4,)),
    ((4,), 1, (3, 1)),
])
def test_collapse_examples(a, eps, expected):
    assert collapse(Partition(a), eps).parts == expected


def test_collapse_empty_class():
    with pytest.raises(ValueError):
        collapse(Partition((3,)), -1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10).flatmap(lambda d: st.sampled_from(enumerate_partitions(d))), st.sampled_from([1, -1]))
def test_collapse_matches_brute_force(a, eps):
    if eps == -1 and a.total % 2:
        return
    b = collapse(a, eps)
    assert b == brute_collapse(a, eps)
    assert dominates(b, a)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10).flatmap(lambda d: st.sampled_from(enumerate_partitions(d))))
def test_dual_is_involution(a):
    assert dual(dual(a)) == a


def test_dominance_is_partial_order():
    ps = enumerate_partitions(6)
    for a in ps:
        assert dominates(a, a)
        for b in ps:
            if dominates(a, b) and dominates(b, a):
                assert a == b
