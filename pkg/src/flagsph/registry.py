"""The case registry and its verification harness.

Cases live in ``data/cases.json``.  A case names a pair specification
(possibly with integer parameters in ``{...}`` templates), an index set,
the expected verdict and, for spherical cases, the expected rank and
generators of Gamma_I(G, H).
"""
from __future__ import annotations

import ast
import json
import operator
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Optional

from .branching import gamma_generators, rbm_via_weight_monoid, restriction_dims
from .embeddings import build_subalgebra, module_from_spec
from .orbits import GroupKind, Kind, flag_poset, minimal_classes
from .rootdata import ReductiveType
from .sphericity import (
    DEFAULT_TRIALS,
    branching_rank,
    is_spherical_flag,
    is_spherical_module,
    module_rank,
)

# ---------------------------------------------------------------------------
# parameter expressions

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.FloorDiv: operator.floordiv, ast.Mod: operator.mod}
_CMPS = {ast.Eq: operator.eq, ast.NotEq: operator.ne, ast.Lt: operator.lt,
         ast.LtE: operator.le, ast.Gt: operator.gt, ast.GtE: operator.ge}
_FUNCS = {"min": min, "max": max, "delta": lambda a, b: int(a == b)}


def evaluate(expr: str, env: dict[str, int]):
    """Evaluate an integer expression over parameters (no general Python)."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, bool)):
            return node.value
        if isinstance(node, ast.Name):
            if node.id in ("True", "False"):
                return node.id == "True"
            if node.id not in env:
                raise ValueError(f"unknown parameter {node.id!r}")
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, right in zip(node.ops, node.comparators):
                r = ev(right)
                if not _CMPS[type(op)](left, r):
                    return False
                left = r
            return True
        if isinstance(node, ast.BoolOp):
            vals = [ev(v) for v in node.values]
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            return _FUNCS[node.func.id](*[ev(a) for a in node.args])
        raise ValueError(f"unsupported expression {expr!r}")

    return ev(ast.parse(expr.strip(), mode="eval"))


def substitute(template: str, env: dict[str, int]) -> str:
    return re.sub(r"\{([^{}]+)\}", lambda m: str(evaluate(m.group(1), env)), template)


_ZERO_FUNDAMENTAL = re.compile(r"[+-]?(?:\d+\*)?pi'*0(?![0-9])")


def _clean_weight(text: str) -> str:
    """Drop pi_0 terms (pi_0 = 0) and tidy signs."""
    text = _ZERO_FUNDAMENTAL.sub("", text.replace(" ", ""))
    text = text.lstrip("+")
    return text or "0"


def parse_pair(text: str, g: ReductiveType, h: ReductiveType) -> tuple[tuple, tuple]:
    m = re.fullmatch(r"\(([^;]*);([^;]*)\)", text.replace(" ", ""))
    if not m:
        raise ValueError(f"bad pair {text!r}")
    return g.parse_weight(_clean_weight(m.group(1))), h.parse_weight(_clean_weight(m.group(2)))


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class CaseRecord:
    id: str
    title: str
    spec: str
    index: tuple[str, ...]
    verdict: str
    params: dict = field(default_factory=dict)
    derived: dict = field(default_factory=dict)
    samples: tuple = ()
    rank: Optional[str] = None
    generators: tuple = ()
    rbm: Optional[dict] = None
    discrepancy: Optional[dict] = None
    dimension_shortcut: bool = False
    note: str = ""

    @classmethod
    def from_json(cls, d: dict) -> "CaseRecord":
        return cls(id=d["id"], title=d.get("title", ""), spec=d["spec"], index=tuple(d.get("index", ())),
                   verdict=d["verdict"], params=d.get("params", {}), derived=d.get("derived", {}),
                   samples=tuple(d.get("samples", ())), rank=d.get("rank"),
                   generators=tuple(d.get("generators", ())), rbm=d.get("rbm"),
                   discrepancy=d.get("discrepancy"), dimension_shortcut=d.get("dimension_shortcut", False),
                   note=d.get("note", ""))

    @property
    def spherical(self) -> bool:
        return self.verdict == "spherical"

    def default_params(self) -> dict[str, int]:
        return {k: lo for k, (lo, hi) in self.params.items()}

    def sample_params(self) -> list[dict[str, int]]:
        return [dict(s) for s in self.samples] or [self.default_params()]

    def environment(self, params: Optional[dict] = None) -> dict[str, int]:
        env = self.default_params()
        for k, v in (params or {}).items():
            if k not in self.params:
                raise ValueError(f"case {self.id} has no parameter {k!r}")
            env[k] = int(v)
        for k, (lo, hi) in self.params.items():
            if not lo <= env[k] <= hi:
                raise ValueError(f"parameter {k}={env[k]} out of range [{lo}, {hi}] for {self.id}")
        for k, expr in self.derived.items():
            env[k] = evaluate(expr, env)
        return env

    def instantiate(self, params: Optional[dict] = None) -> "Instance":
        env = self.environment(params)
        spec = substitute(self.spec, env)
        index = frozenset(evaluate(x, env) for x in self.index)
        rank = evaluate(self.rank, env) if self.rank is not None else None
        gens = _expand(self.generators, env)
        disc = None
        if self.discrepancy and evaluate(self.discrepancy["when"], env):
            disc = (_expand(self.discrepancy["computed"], env), self.discrepancy["note"])
        return Instance(self, env, spec, index, rank, gens, disc)


def _expand(entries, env) -> tuple[str, ...]:
    out = []
    for entry in entries:
        if isinstance(entry, str):
            out.append(substitute(entry, env))
            continue
        if "when" in entry and not evaluate(entry["when"], env):
            continue
        if "for" in entry:
            var, lo, hi = entry["for"]
            for k in range(evaluate(lo, env), evaluate(hi, env) + 1):
                out.append(substitute(entry["pair"], {**env, var: k}))
        else:
            out.append(substitute(entry["pair"], env))
    return tuple(out)


@dataclass(frozen=True)
class Instance:
    record: CaseRecord
    env: dict
    spec: str
    index: frozenset
    rank: Optional[int]
    generators: tuple[str, ...]
    discrepancy: Optional[tuple[tuple[str, ...], str]]

    @property
    def params(self) -> dict:
        return {k: self.env[k] for k in self.record.params}


@dataclass(frozen=True)
class ModuleRecord:
    id: str
    title: str
    spec: str
    verdict: str
    rank: Optional[str] = None


@lru_cache(maxsize=1)
def _load() -> tuple[dict[str, CaseRecord], dict[str, ModuleRecord]]:
    text = resources.files("flagsph").joinpath("data/cases.json").read_text(encoding="utf-8")
    data = json.loads(text)
    cases = {}
    for d in data["cases"]:
        rec = CaseRecord.from_json(d)
        if rec.id in cases:
            raise ValueError(f"duplicate case id {rec.id}")
        cases[rec.id] = rec
    modules = {d["id"]: ModuleRecord(d["id"], d.get("title", ""), d["spec"], d["verdict"], d.get("rank"))
               for d in data.get("modules", [])}
    return cases, modules


def cases() -> list[CaseRecord]:
    return list(_load()[0].values())


def module_cases() -> list[ModuleRecord]:
    return list(_load()[1].values())


def get_case(case_id: str) -> CaseRecord:
    recs = _load()[0]
    if case_id not in recs:
        raise KeyError(f"unknown case id {case_id!r}")
    return recs[case_id]


# ---------------------------------------------------------------------------
# verification


PASS, FAIL, SKIP, KNOWN = "pass", "fail", "skip", "known-discrepancy"


@dataclass
class Report:
    id: str
    params: dict
    seed: int
    fields: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, expected, computed, status: Optional[str] = None) -> None:
        if status is None:
            status = PASS if expected == computed else FAIL
        self.fields.append({"field": name, "expected": expected, "computed": computed, "status": status})

    @property
    def passed(self) -> bool:
        return all(f["status"] != FAIL for f in self.fields)

    def to_dict(self) -> dict:
        return {"id": self.id, "params": self.params, "seed": self.seed,
                "status": PASS if self.passed else FAIL, "fields": self.fields, "notes": self.notes}

    def to_text(self) -> str:
        head = f"{self.id}"
        if self.params:
            head += " " + ",".join(f"{k}={v}" for k, v in self.params.items())
        lines = [f"{head}: {PASS if self.passed else FAIL}"]
        for f in self.fields:
            lines.append(f"  {f['field']:<20} {f['status']:<18} expected={_short(f['expected'])} "
                         f"computed={_short(f['computed'])}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)


def _short(x) -> str:
    if isinstance(x, list):
        return "{" + ", ".join(map(str, x)) + "}"
    return str(x)


def _pair_set(texts, g, h) -> set:
    return {parse_pair(t, g, h) for t in texts}


def verify_case(case_id: str, params: Optional[dict] = None, seed: int = 0,
                trials: int = DEFAULT_TRIALS) -> Report:
    rec = get_case(case_id)
    inst = rec.instantiate(params)
    report = Report(rec.id, inst.params, seed)
    e = build_subalgebra(inst.spec)
    I = inst.index
    dim_b = len(e.borel())
    dim_x = e.ambient.flag_dim(I)
    if rec.dimension_shortcut:
        report.add("dim B_H < dim X_I", True, dim_b < dim_x)
        sampled = is_spherical_flag(e, I, trials, seed, shortcut=False)
        report.add("sampled rank < dim", True, sampled.witness_rank < dim_x)
    verdict = is_spherical_flag(e, I, trials, seed)
    report.add("verdict", rec.verdict, "spherical" if verdict.spherical else "not spherical")
    if not verdict.spherical or not rec.spherical:
        if rec.note:
            report.notes.append(rec.note)
        return report
    rank = branching_rank(e, I, trials, seed)
    if inst.rank is not None:
        report.add("rank", inst.rank, rank)
    monoid = gamma_generators(e, I, expected_rank=rank, seed=seed, trials=trials)
    g, h = e.ambient.type, e.h_type
    computed = {(p.lam, p.mu) for p in monoid.generators}
    report.add("complete", True, monoid.complete)
    report.add("generator count", rank, len(monoid.generators))
    computed_txt = sorted(monoid.formatted())
    if inst.generators:
        expected = _pair_set(inst.generators, g, h)
        expected_txt = sorted(p for p in inst.generators)
        if expected == computed:
            report.add("generators", expected_txt, computed_txt, PASS)
        elif inst.discrepancy and _pair_set(inst.discrepancy[0], g, h) == computed:
            report.add("generators", expected_txt, computed_txt, KNOWN)
            report.notes.append(inst.discrepancy[1])
        else:
            report.add("generators", expected_txt, computed_txt, FAIL)
    conserved = all(a == b for a, b in (restriction_dims(e, p.lam) for p in monoid.generators))
    report.add("dimension conserved", True, conserved)
    if rec.rbm is not None:
        rbm = rbm_via_weight_monoid(e, rec.rbm.get("parts"), seed=seed, trials=trials)
        report.add("weight monoid route", sorted(rbm.formatted()), computed_txt,
                   PASS if {(p.lam, p.mu) for p in rbm.generators} == computed and rbm.complete else FAIL)
    if rec.note:
        report.notes.append(rec.note)
    return report


def verify_module_case(case_id: str, seed: int = 0, trials: int = DEFAULT_TRIALS) -> Report:
    rec = _load()[1].get(case_id)
    if rec is None:
        raise KeyError(f"unknown case id {case_id!r}")
    report = Report(rec.id, {}, seed)
    m = module_from_spec(rec.spec)
    v = is_spherical_module(m, trials, seed)
    report.add("verdict", rec.verdict, "spherical" if v.spherical else "not spherical")
    if v.spherical and rec.rank is not None:
        report.add("rank", int(rec.rank), module_rank(m, trials, seed))
    return report


def verify(case_id: str, params: Optional[dict] = None, seed: int = 0, trials: int = DEFAULT_TRIALS) -> Report:
    if case_id in _load()[1]:
        if params:
            raise ValueError(f"case {case_id} takes no parameters")
        return verify_module_case(case_id, seed, trials)
    return verify_case(case_id, params, seed, trials)


def verify_all(seed: int = 0, trials: int = DEFAULT_TRIALS) -> list[Report]:
    out = []
    for rec in cases():
        for p in rec.sample_params():
            out.append(verify_case(rec.id, p, seed, trials))
    for m in module_cases():
        out.append(verify_module_case(m.id, seed, trials))
    return out


# ---------------------------------------------------------------------------
# minimal elements and descent


def expected_minimal(g: GroupKind) -> list[list[frozenset[int]]]:
    """Minimal nil-equivalence classes as lists of index sets that must lie in them."""
    n = g.rank
    if g.kind is Kind.SYMPLECTIC:
        if g.dim < 4:
            raise ValueError("outside the range of the minimal-element table")
        return [[frozenset({1})]]
    if g.dim % 2:
        if g.dim < 5:
            raise ValueError("outside the range of the minimal-element table")
        return [[frozenset({1})]]
    if g.dim < 8:
        raise ValueError("outside the range of the minimal-element table")
    if n % 2:
        return [[frozenset({1})], [frozenset({n}), frozenset({n - 1})]]
    return [[frozenset({1})], [frozenset({n})], [frozenset({n - 1})]]


def verify_minimal_elements(g: GroupKind) -> Report:
    report = Report(f"minimal-{g.kind.value}{g.dim}", {}, 0)
    expected = expected_minimal(g)
    found = minimal_classes(g)
    report.add("count", len(expected), len(found))
    for want in expected:
        hits = [c for c in found if all(I in c.index_sets for I in want)]
        label = " = ".join("X_" + str(sorted(I)) for I in want)
        report.add(f"class {label}", True, len(hits) == 1)
    return report


def verify_descent(g: GroupKind, spec: str, seed: int = 0, trials: int = DEFAULT_TRIALS) -> Report:
    """If X_2 is spherical and <X_1> lies below <X_2>, X_1 must be spherical."""
    e = build_subalgebra(spec)
    if e.ambient.group != g:
        raise ValueError(f"spec ambient {e.ambient.group} differs from {g}")
    poset = flag_poset(g)
    verdicts: dict[frozenset, bool] = {}

    def spherical(I):
        if I not in verdicts:
            verdicts[I] = is_spherical_flag(e, I, trials, seed).spherical
        return verdicts[I]

    report = Report(f"descent-{g}", {}, seed)
    bad = []
    checked = 0
    for i, j in sorted(poset.order):
        for I2 in poset.classes[j].index_sets:
            if not spherical(I2):
                continue
            for I1 in poset.classes[i].index_sets:
                checked += 1
                if not spherical(I1):
                    bad.append(f"X_{sorted(I2)} spherical but X_{sorted(I1)} is not")
    report.add("violations", [], bad)
    report.notes.append(f"{checked} comparable pairs with a spherical upper member")
    return report
