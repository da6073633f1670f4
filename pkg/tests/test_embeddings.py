from collections import Counter

import pytest

from flagsph.branching import restrict_irrep
from flagsph.embeddings import (
    ambient,
    build_subalgebra,
    g2_in_so7,
    levi_of_intersection,
    parabolic,
    parse_pair_spec,
    quotient_module,
    spin7_in_so8,
)
from flagsph.orbits import GroupKind


@pytest.mark.parametrize("kind, d, dim", [("sp", 4, 10), ("so", 7, 21), ("so", 8, 28), ("sp", 6, 21)])
def test_ambient(kind, d, dim):
    a = ambient(GroupKind.parse(kind, d))
    assert len(a.elements) == dim
    assert all(a.algebra.preserves_form(x.matrix) for x in a.elements)


def test_parabolic_codimension():
    a = ambient(GroupKind.parse("sp", 6))
    assert len(a.elements) - parabolic(a, {1}).dim == 5 == a.flag_dim({1})
    assert parabolic(a, set()).dim == len(a.elements)


def test_g2():
    e = g2_in_so7()
    assert e.dim == 14 and e.lower_triangular_dim() == 8
    assert e.is_bracket_closed() and e.is_form_preserving()
    g, h = e.ambient.type, e.h_type
    assert restrict_irrep(e, "pi3") == Counter({h.parse_weight("pi1"): 1, h.zero(): 1})
    assert restrict_irrep(e, "pi1") == Counter({h.parse_weight("pi1"): 1})


@pytest.mark.parametrize("sign, split", [("+", ("pi3", "pi4")), ("-", ("pi4", "pi3"))])
def test_spin7(sign, split):
    e = spin7_in_so8(sign)
    assert e.dim == 21 and e.lower_triangular_dim() == 12
    assert e.is_bracket_closed() and e.is_form_preserving()
    h = e.h_type
    assert restrict_irrep(e, split[0]) == Counter({h.parse_weight("pi1"): 1, h.zero(): 1})
    assert restrict_irrep(e, split[1]) == Counter({h.parse_weight("pi3"): 1})


@pytest.mark.parametrize("spec, dim, rank", [
    ("sp(6): sp(2) * sp(2) * sp(2) : F2@1 + F2@2 + F2@3", 9, 3),
    ("sp(4): sl(2) * gl(1) : omega([F2]_chi)", 4, 2),
    ("so(8): sp(4) * sl(2) : [F4 x F2]", 13, 3),
    ("so(9): spin(7) : F8 + F1", 21, 3),
    ("so(10): spin(7) * gl(1) : F8 + omega(F1_chi)", 22, 4),
    ("so(12): sl(3) * sl(3) * gl(1) : omega([F3@1]_chi) + omega([F3@2]_2chi)", 17, 5),
])
def test_build_subalgebra(spec, dim, rank):
    e = build_subalgebra(spec)
    assert e.dim == dim and e.h_type.rank == rank
    assert e.is_bracket_closed() and e.is_form_preserving()
    assert e.tautological_character() == e.spec_character()


def test_tensor_ordering():
    e = build_subalgebra("so(8): sp(4) * sl(2) : [F4 x F2]")
    ch = e.tautological_character()
    assert ch.dim == 8 and e.diagonal_dim() == 3


def test_spin_weights_are_half_integral():
    e = build_subalgebra("so(10): spin(7) * gl(1) : F8 + omega(F1_chi)")
    assert e.cover
    assert not build_subalgebra("so(7): g2 : F7").cover


@pytest.mark.parametrize("text", [
    "so(7): g2 : F8",
    "so(7) g2 F7",
    "sp(5): sp(4) : F4 + F1",
    "so(8): sp(4) : F3 + F5",
    "xx(8): so(8) : F8",
    "so(7): g2 : F7 + F1",
])
def test_bad_specs(text):
    with pytest.raises(ValueError):
        build_subalgebra(text)


def test_spec_round_trip_dimension():
    s = parse_pair_spec("so(12): spin(7) * sl(2) * gl(1) : F8 + omega([F2]_chi)")
    assert s.dim == 12 and len(s.summands) == 2


@pytest.mark.parametrize("I, levi_type, qdim", [({1}, "A1 x T1", 0), ({2}, "A1 x T1", 2), ({3}, "A1 x T1", 1)])
def test_g2_levis(I, levi_type, qdim):
    e = g2_in_so7()
    lv = levi_of_intersection(e, I)
    assert str(lv.type) == levi_type
    assert quotient_module(e, I).action.dim == qdim


def test_levi_of_empty_set_is_h():
    e = g2_in_so7()
    assert levi_of_intersection(e, set()).dim == 14
