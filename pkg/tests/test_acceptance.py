"""Acceptance criteria 1-10.  Each test prints one PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for just the summary.
"""
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import brute_collapse  # noqa: E402

from flagsph import registry  # noqa: E402
from flagsph.branching import (  # noqa: E402
    gamma_generators,
    multiplicity_witness,
    rbm_via_weight_monoid,
    restriction_dims,
    scaled_module,
    weights_on,
)
from flagsph.embeddings import ModuleAction, build_subalgebra, g2_in_so7, spin7_in_so8  # noqa: E402
from flagsph.orbits import FlagDescriptor, GroupKind, Sign, flag_poset, minimal_classes  # noqa: E402
from flagsph.partitions import Composition, collapse, enumerate_partitions  # noqa: E402
from flagsph.sphericity import branching_rank, is_spherical_flag, weight_monoid  # noqa: E402

CORPUS_TABLES = ("table5", "table7", "table8")


def _line(n: int, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print("\n" + _line(n, ok, detail))
        assert ok, detail
    return emit


def _corpus():
    for rec in registry.cases():
        if rec.id.startswith(CORPUS_TABLES):
            for p in rec.sample_params():
                yield rec, rec.instantiate(p)


def _rejections():
    return [rec.instantiate() for rec in registry.cases() if rec.id.startswith("reject.")]


# ---------------------------------------------------------------------------


def criterion_1():
    t0 = time.perf_counter()
    checked, bad = 0, []
    for d in range(1, 13):
        for eps in (1, -1):
            if eps == -1 and d % 2:
                continue
            for a in enumerate_partitions(d):
                checked += 1
                if collapse(a, eps) != brute_collapse(a, eps):
                    bad.append((d, eps, a))
    dt = time.perf_counter() - t0
    return not bad and dt < 30, f"collapse = brute force on {checked} (partition, eps) pairs, {dt:.1f}s"


TABLE1 = [("sp", 2 * n, 1) for n in range(2, 6)] + [("so", 2 * k + 1, 1) for k in range(2, 6)] + \
         [("so", 10, 2), ("so", 14, 2), ("so", 8, 3), ("so", 12, 3)]


def criterion_2():
    worst, bad = 0.0, []
    for kind, d, count in TABLE1:
        t0 = time.perf_counter()
        g = GroupKind.parse(kind, d)
        rep = registry.verify_minimal_elements(g)
        dt = time.perf_counter() - t0
        worst = max(worst, dt)
        if not rep.passed or len(minimal_classes(g)) != count or dt >= 10:
            bad.append(str(g))
    return not bad, f"minimal classes match for {len(TABLE1)} groups (slowest {worst:.2f}s){' bad: ' + ','.join(bad) if bad else ''}"


def _class_members(kind, d, parts, sign=Sign.NONE) -> set[str]:
    g = GroupKind.parse(kind, d)
    return {str(m) for m in flag_poset(g).class_of(FlagDescriptor(g, Composition(parts), sign)).members}


POSET_EXPECTED = [
    (("sp", 4, (1, 2, 1)), {"(1,2,1)", "(2,2)"}),
    (("so", 5, (1, 3, 1)), {"(1,3,1)", "(2,1,2)"}),
    (("so", 6, (2, 2, 2)), {"(2,2,2)", "(1,2,2,1)+", "(1,2,2,1)-"}),
    (("so", 8, (2, 4, 2)), {"(2,4,2)", "(3,2,3)", "(1,3,3,1)+", "(1,3,3,1)-"}),
    (("so", 10, (2, 6, 2)), {"(2,6,2)"}),
]


def criterion_3():
    bad = [args for args, want in POSET_EXPECTED if _class_members(*args) != want]
    return not bad, f"{len(POSET_EXPECTED) - len(bad)}/{len(POSET_EXPECTED)} class contents reproduced"


def criterion_4():
    t0 = time.perf_counter()
    bad, n_pos = [], 0
    for rec, inst in _corpus():
        n_pos += 1
        v = is_spherical_flag(build_subalgebra(inst.spec), inst.index, trials=8, seed=0)
        if v.spherical != rec.spherical:
            bad.append(f"{rec.id}{inst.params}")
    rejects = _rejections()
    for inst in rejects:
        v = is_spherical_flag(build_subalgebra(inst.spec), inst.index, trials=8, seed=0)
        if v.spherical:
            bad.append(inst.record.id)
    dt = time.perf_counter() - t0
    ok = not bad and len(rejects) >= 10 and dt < 300
    return ok, f"{n_pos} table instances + {len(rejects)} rejections give the expected verdict, {dt:.1f}s" + \
        (f"; wrong: {bad}" if bad else "")


def criterion_5():
    bad, n = [], 0
    for rec, inst in _corpus():
        if not rec.spherical:
            continue
        n += 1
        e = build_subalgebra(inst.spec)
        r = branching_rank(e, inst.index)
        m = gamma_generators(e, inst.index, expected_rank=r)
        if r != inst.rank or len(m.generators) != r or not m.complete:
            bad.append(f"{rec.id}{inst.params}: {r} vs {inst.rank}")
    return not bad, f"rank = table rank = |generators| on {n} instances" + (f"; {bad}" if bad else "")


GENERATOR_CASES = [
    ("table7.1-I{1,2}", None), ("table7.1-I{1,3}", None), ("table7.1-I{2,3}", None),
    ("table7.2-I{1,2}", None), ("table7.2-I{3}", None), ("table7.2-I{4}", None),
    ("table8.8-I{4}", None), ("table8.5-I{5}", None), ("table8.4-I{2}", None),
    ("table5.1-I{n}", {"m": 1}), ("table5.1-I{n}", {"m": 2}),
]


def _generator_check(case_id, params):
    inst = registry.get_case(case_id).instantiate(params)
    e = build_subalgebra(inst.spec)
    m = gamma_generators(e, inst.index, expected_rank=branching_rank(e, inst.index))
    got = {(p.lam, p.mu) for p in m.generators}
    want = {registry.parse_pair(t, e.ambient.type, e.h_type) for t in inst.generators}
    return e, inst, m, got == want


def criterion_6():
    t0 = time.perf_counter()
    bad = []
    for case_id, params in GENERATOR_CASES:
        e, inst, m, same = _generator_check(case_id, params)
        if not same:
            bad.append(case_id)
        if case_id.startswith("table5"):
            # (pi_n; pi_{m-2}) appears exactly when m >= 2
            n = e.ambient.rank
            extra = registry.parse_pair(f"(pi{n};pi{inst.env['m'] - 2})" if inst.env["m"] >= 2 else f"(pi{n};0)",
                                        e.ambient.type, e.h_type)
            present = extra in {(p.lam, p.mu) for p in m.generators}
            if present != (inst.env["m"] >= 2):
                bad.append(f"{case_id} side condition")
    dt = time.perf_counter() - t0
    return not bad and dt < 300, f"{len(GENERATOR_CASES) - len(bad)}/{len(GENERATOR_CASES)} generator sets exact, {dt:.1f}s"


def criterion_7():
    n, bad = 0, []
    for case_id, params in GENERATOR_CASES:
        e, inst, m, _ = _generator_check(case_id, params)
        top = max(p.degree for p in m.generators)
        for total in range(1, top + 1):
            for lam in weights_on(inst.index, e.ambient.rank, total):
                n += 1
                a, b = restriction_dims(e, lam)
                if a != b:
                    bad.append((case_id, lam))
    return not bad, f"sum of dim mu = dim lambda for all {n} restrictions"


def _raw_scaled_monoid(e, parts):
    V = scaled_module(e, parts)
    dual = ModuleAction(V.type, V.dim, [-X.transpose() for X in V.elements],
                        [-X.transpose() for X in V.cartan], V.positive)
    return weight_monoid(dual)


def criterion_8():
    bad = []
    for spec in ["sp(4): sp(4) : F4", "sp(4): sp(2) * sp(2) : F2@1 + F2@2", "so(7): so(7) : F7", "so(7): g2 : F7"]:
        e = build_subalgebra(spec)
        a, b = gamma_generators(e, {1}), rbm_via_weight_monoid(e)
        if set(a.formatted()) != set(b.formatted()) or not (a.complete and b.complete):
            bad.append(spec)
    # 2 delta is a generator of the weight monoid of (SO_7 x F^x, F^7) but not of Gamma_{1}
    e = build_subalgebra("so(7): so(7) : F7")
    raw = _raw_scaled_monoid(e, None).formatted()
    if "2*delta" not in raw or "(2*pi1;0)" in rbm_via_weight_monoid(e).formatted():
        bad.append("2delta removal")
    # two generators 2 delta_1, 2 delta_2 both give (2 pi_1; 0)
    e = build_subalgebra("so(8): so(3) * so(5) : F3 + F5")
    raw = _raw_scaled_monoid(e, [1, 1]).formatted()
    rbm = rbm_via_weight_monoid(e, [1, 1])
    if not {"2*delta1", "2*delta2"} <= set(raw) or rbm.formatted().count("(2*pi1;0)") != 1 \
            or set(rbm.formatted()) != set(gamma_generators(e, {1}).formatted()):
        bad.append("(2pi1;0) coincidence")
    return not bad, "weight-monoid route agrees on 4 pairs; 2delta removal and (2pi1;0) coincidence seen" + \
        (f"; bad: {bad}" if bad else "")


def criterion_9():
    t0 = time.perf_counter()
    g2, s7 = g2_in_so7(), spin7_in_so8("+")
    h = g2.h_type
    from flagsph.branching import restrict_irrep
    parts = restrict_irrep(g2, "pi3")
    ok = (g2.dim == 14 and g2.is_bracket_closed() and g2.is_form_preserving() and s7.dim == 21
          and g2.lower_triangular_dim() == 8 and s7.lower_triangular_dim() == 12
          and set(parts) == {h.parse_weight("pi1"), h.zero()} and all(k == 1 for k in parts.values()))
    dt = time.perf_counter() - t0
    return ok and dt < 5, f"g2: dim 14, lower 8; spin7: dim 21, lower 12; R(pi3)|G2 = pi1 + 0; {dt:.2f}s"


def criterion_10():
    e = g2_in_so7()
    w = multiplicity_witness(e, {1, 2, 3}, max_sum=3)
    if w is None:
        return False, "no witness with coefficient sum <= 3"
    lam, parts = w
    g, h = e.ambient.type, e.h_type
    mults = ", ".join(f"{h.format_weight(mu)}^{k}" if k > 1 else h.format_weight(mu)
                      for mu, k in sorted(parts.items(), key=lambda kv: (-kv[1], kv[0])))
    return True, f"R({g.format_weight(lam)})|G2 = {mults}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n, report):
    ok, detail = CRITERIA[n - 1]()
    report(n, ok, detail)


if __name__ == "__main__":
    results = []
    for n, crit in enumerate(CRITERIA, 1):
        ok, detail = crit()
        results.append(ok)
        print(_line(n, ok, detail))
    sys.exit(0 if all(results) else 1)
