from collections import Counter

import pytest

from flagsph.branching import (
    gamma_generators,
    is_multiplicity_free,
    multiplicity_witness,
    rbm_via_weight_monoid,
    restrict_irrep,
    restriction_dims,
    weights_on,
)
from flagsph.embeddings import build_subalgebra, g2_in_so7
from flagsph.rootdata import weyl_dim


def test_weights_on_order():
    ws = list(weights_on({1, 3}, 3, 2))
    assert [tuple(map(int, w)) for w in ws] == [(0, 0, 2), (1, 0, 1), (2, 0, 0)]


def test_restriction_conserves_dimension():
    e = build_subalgebra("so(9): spin(7) : F8 + F1")
    for lam in ["pi1", "pi4", "2*pi4", "pi2+pi4", "pi3"]:
        a, b = restriction_dims(e, lam)
        assert a == b


def test_restriction_rejects_nondominant():
    with pytest.raises(ValueError):
        restrict_irrep(g2_in_so7(), "-pi1")


def test_g2_generators():
    e = g2_in_so7()
    m = gamma_generators(e, {1, 2})
    assert m.complete and m.independent()
    assert set(m.formatted()) == {"(pi1;pi1)", "(pi2;pi1)", "(pi2;pi2)", "(pi1+pi2;pi2)"}


def test_multiplicity_witness_g2():
    e = g2_in_so7()
    lam, parts = multiplicity_witness(e, {1, 2, 3})
    assert sum(lam) <= 3 and max(parts.values()) > 1
    assert not is_multiplicity_free(e, lam)
    assert multiplicity_witness(e, {1, 2}) is None


@pytest.mark.parametrize("spec, parts", [
    ("sp(4): sp(2) * sp(2) : F2@1 + F2@2", None),
    ("so(7): so(7) : F7", None),
    ("so(7): g2 : F7", None),
    ("so(8): so(3) * so(5) : F3 + F5", [1, 1]),
])
def test_weight_monoid_route_agrees(spec, parts):
    e = build_subalgebra(spec)
    a = gamma_generators(e, {1})
    b = rbm_via_weight_monoid(e, parts)
    assert a.complete and b.complete
    assert set(a.formatted()) == set(b.formatted())


def test_scaled_module_parts_must_split():
    e = build_subalgebra("so(8): so(3) * so(5) : F3 + F5")
    with pytest.raises(ValueError):
        rbm_via_weight_monoid(e, [1])
