import pytest

from flagsph import registry
from flagsph.branching import scaled_module
from flagsph.embeddings import build_subalgebra
from flagsph.orbits import GroupKind
from flagsph.sphericity import is_spherical_flag, is_spherical_module

ALL = [(rec.id, p) for rec in registry.cases() for p in rec.sample_params()]


def test_evaluate():
    env = {"m": 2, "l": 3}
    assert registry.evaluate("5 - delta(m, 1)", env) == 5
    assert registry.evaluate("2*l + 2*m + 2", env) == 12
    assert registry.evaluate("m >= 2 and l < 4", env) is True
    assert registry.evaluate("max(m, l) // 2", env) == 1
    for bad in ["__import__('os')", "m.real", "[m]", "x + 1", "m ** 2"]:
        with pytest.raises(ValueError):
            registry.evaluate(bad, env)


def test_substitute_and_clean():
    assert registry.substitute("(pi{n};pi{m-2})", {"n": 5, "m": 2}) == "(pi5;pi0)"
    assert registry._clean_weight("pi0") == "0"
    assert registry._clean_weight("pi1+pi'0") == "pi1"
    assert registry._clean_weight("2*pi'0+pi3") == "pi3"


def test_registry_is_well_formed():
    ids = [r.id for r in registry.cases()]
    assert len(ids) == len(set(ids)) >= 40
    for rec in registry.cases():
        assert rec.verdict in ("spherical", "not spherical")
        for p in rec.sample_params():
            inst = rec.instantiate(p)
            assert build_subalgebra(inst.spec).ambient.check_index_set(inst.index)
            if rec.spherical and rec.id.startswith(("table5", "table7", "table8")):
                assert inst.rank is not None and inst.generators
            if rec.spherical and inst.rank is None:
                assert rec.rbm is not None


@pytest.mark.parametrize("case_id, params", ALL, ids=[f"{c}-{p}" if p else c for c, p in ALL])
def test_case(case_id, params):
    report = registry.verify_case(case_id, params)
    assert report.passed, report.to_text()


@pytest.mark.parametrize("case_id", [m.id for m in registry.module_cases()])
def test_module_case(case_id):
    assert registry.verify(case_id).passed


def test_table5_side_condition():
    r1 = registry.get_case("table5.1-I{n}").instantiate({"m": 1})
    r2 = registry.get_case("table5.1-I{n}").instantiate({"m": 2})
    assert r1.rank == 4 and len(r1.generators) == 4
    assert r2.rank == 5 and "(pi4;pi0)" in r2.generators


def test_errors():
    with pytest.raises(KeyError):
        registry.verify_case("table99")
    with pytest.raises(ValueError):
        registry.verify_case("table5.1-I{n}", {"m": 0})
    with pytest.raises(ValueError):
        registry.verify_case("table5.1-I{n}", {"q": 1})


def test_report_json_has_no_timings():
    d = registry.verify_case("table8.8-I{4}").to_dict()
    assert d["status"] == "pass" and "time" not in str(sorted(d))


@pytest.mark.parametrize("kind, d", [("sp", 8), ("so", 9), ("so", 8), ("so", 12), ("so", 14)])
def test_minimal_elements(kind, d):
    assert registry.verify_minimal_elements(GroupKind.parse(kind, d)).passed


@pytest.mark.parametrize("kind, d, spec", [
    ("so", 7, "so(7): g2 : F7"),
    ("so", 7, "so(7): so(7) : F7"),
    ("so", 8, "so(8): sp(4) : omega(F4)"),
    ("so", 9, "so(9): spin(7) : F8 + F1"),
    ("sp", 6, "sp(6): sl(3) * gl(1) : omega([F3]_chi)"),
])
def test_descent(kind, d, spec):
    assert registry.verify_descent(GroupKind.parse(kind, d), spec).passed


@pytest.mark.parametrize("spec", [
    "so(8): so(3) * so(5) : F3 + F5",
    "so(8): so(4) * so(3) : F4 + F3 + F1",
    "so(10): so(4) * so(5) : F4 + F5 + F1",
])
def test_outer_automorphism_symmetry(spec):
    e = build_subalgebra(spec)
    n = e.ambient.rank
    assert is_spherical_flag(e, {n}).spherical == is_spherical_flag(e, {n - 1}).spherical


@pytest.mark.parametrize("spec", [
    "so(8): so(3) * so(5) : F3 + F5",
    "so(8): g2 : F7 + F1",
    "so(12): g2 * so(5) : F7 + F5",
    "so(10): g2 * so(3) : F7 + F3",
    "so(11): spin(7) * so(3) : F8 + F3",
])
def test_two_summand_criterion(spec):
    e = build_subalgebra(spec)
    flag = is_spherical_flag(e, {1}).spherical
    module = is_spherical_module(scaled_module(e, [1, 1])).spherical
    assert flag == module
