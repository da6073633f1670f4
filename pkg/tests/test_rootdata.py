from collections import Counter
from math import comb

import pytest
from hypothesis import assume, given, settings, strategies as st

from flagsph.rootdata import (
    CartanMap,
    ReductiveType,
    character_of,
    decompose,
    formal_character,
    restrict_character,
    symmetric_power_character,
    weyl_dim,
)

TYPES = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2"]


def t(text):
    return ReductiveType.parse(text)


@pytest.mark.parametrize("typ, lam, dim", [
    ("B3", "pi1", 7), ("B3", "pi3", 8), ("B3", "pi2", 21), ("G2", "pi1", 7), ("G2", "pi2", 14),
    ("D4", "pi4", 8), ("C3", "pi3", 14), ("A2", "pi1+pi2", 8), ("D6", "pi6", 32), ("B4", "pi4", 16),
])
def test_weyl_dim_known(typ, lam, dim):
    g = t(typ)
    assert weyl_dim(g, g.parse_weight(lam)) == dim


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(TYPES), st.data())
def test_character_size_and_invariance(typ, data):
    g = t(typ)
    lam = tuple(data.draw(st.integers(0, 2)) for _ in range(g.rank))
    assume(weyl_dim(g, g.check(lam)) <= 2000)
    ch = formal_character(g, lam)
    assert ch.dim == weyl_dim(g, lam)
    assert ch.is_weyl_invariant()
    assert decompose(ch) == Counter({g.check(lam): 1})


def test_weight_round_trip():
    g = t("B3 x A1 x T1")
    for text in ["pi1+pi'1", "2*pi3-chi", "chi/2", "0", "pi2+pi'1+3*chi"]:
        assert g.format_weight(g.parse_weight(text)) == text


def test_tensor_square_of_vector_rep():
    g = t("B3")
    v = formal_character(g, g.parse_weight("pi1"))
    assert decompose(v * v) == Counter({g.parse_weight(x): 1 for x in ["2*pi1", "pi2", "0"]})


@pytest.mark.parametrize("typ, expected", [("B2", {"2*pi1", "0"}), ("C2", {"2*pi1"})])
def test_symmetric_square(typ, expected):
    g = t(typ)
    v = formal_character(g, g.parse_weight("pi1"))
    got = decompose(symmetric_power_character(v, 2))
    assert got == Counter({g.parse_weight(x): 1 for x in expected})


@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
def test_symmetric_power_dims(k):
    g = t("A2 x T1")
    v = formal_character(g, g.parse_weight("pi1+chi"))
    s = symmetric_power_character(v, k)
    assert s.dim == comb(3 + k - 1, k)
    if k == 1:
        assert s == v


def test_restriction_identity_and_dims():
    g = t("C2")
    ch = character_of(g, [g.parse_weight("pi2"), g.parse_weight("pi1")])
    assert restrict_character(ch, CartanMap.identity(g)) == ch
    assert ch.dim == 9


def test_bound_is_enforced():
    g = t("D6")
    with pytest.raises(ValueError):
        formal_character(g, g.parse_weight("3*pi6"), bound=100)
