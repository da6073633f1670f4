import pytest

from flagsph.embeddings import build_subalgebra, g2_in_so7, module_from_spec
from flagsph.sphericity import (
    Status,
    branching_rank,
    is_spherical_flag,
    is_spherical_module,
    module_rank,
    natural_module,
    weight_monoid,
)


def test_dimension_shortcut_and_full_check_agree():
    e = g2_in_so7()
    quick = is_spherical_flag(e, {1, 2, 3})
    assert quick.status is Status.NOT_SPHERICAL_LIKELY and quick.trials_used == 0
    assert quick.reason.startswith("dimension")
    slow = is_spherical_flag(e, {1, 2, 3}, shortcut=False)
    assert not slow.spherical and slow.trials_used == 8 and slow.witness_rank < slow.target_rank


@pytest.mark.parametrize("I, rank", [({1, 2}, 4), ({1, 3}, 4), ({2, 3}, 4), ({1}, 1), ({2}, 2), ({3}, 2)])
def test_g2_ranks(I, rank):
    e = g2_in_so7()
    v = is_spherical_flag(e, I)
    assert v.spherical and v.witness_rank == v.target_rank
    assert branching_rank(e, I) == rank


def test_h_equals_g_is_spherical_everywhere():
    e = build_subalgebra("so(7): so(7) : F7")
    assert all(is_spherical_flag(e, I).spherical for I in [{1}, {2}, {3}, {1, 2, 3}])
    assert branching_rank(e, {1, 2, 3}) == 3


def test_verdicts_are_deterministic():
    e = build_subalgebra("so(9): spin(7) : F8 + F1")
    assert is_spherical_flag(e, {1, 3}, seed=5) == is_spherical_flag(e, {1, 3}, seed=5)


def test_bad_arguments():
    e = g2_in_so7()
    with pytest.raises(ValueError):
        is_spherical_flag(e, {1}, trials=0)
    with pytest.raises(ValueError):
        is_spherical_flag(e, set())
    with pytest.raises(ValueError):
        is_spherical_flag(e, {4})
    with pytest.raises(ValueError):
        branching_rank(e, {1, 2, 3})


@pytest.mark.parametrize("spec, spherical, rank", [
    ("module: sl(2) * gl(1) : F2_chi", True, 1),
    ("module: sl(2) : F2", True, 1),
    ("module: sl(3) * gl(1) : S2F3_chi", True, 3),
    ("module: sp(4) * gl(1) : F4_chi", True, 1),
    ("module: sp(4) * gl(1) : S2F4_2chi", False, None),
    ("module: sl(2) * sl(2) * sl(2) : [F2@1 x F2@2 x F2@3]", False, None),
    ("module: gl(1) * gl(1) * gl(1) : F1_(chi1+chi2) + F1_(chi1+chi3) + F1_(chi2+chi3)", True, 3),
])
def test_modules(spec, spherical, rank):
    m = module_from_spec(spec)
    assert is_spherical_module(m).spherical is spherical
    if spherical:
        assert module_rank(m) == rank


def test_weight_monoids():
    m = module_from_spec("module: sl(2) * gl(1) : F2_chi")
    assert weight_monoid(m).formatted() == ["pi1-chi"]
    s = module_from_spec("module: sl(3) * gl(1) : S2F3_chi")
    wm = weight_monoid(s)
    assert wm.complete and wm.degrees == (1, 2, 3)


def test_natural_module_of_so_vector_rep():
    e = build_subalgebra("so(7): so(7) : F7")
    v = is_spherical_module(natural_module(e))
    assert not v.spherical  # SO_n alone has no open orbit on F^n
