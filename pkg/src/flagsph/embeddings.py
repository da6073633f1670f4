"""Matrix realizations of sp/so, embedded subalgebras h of g, parabolics,
Levi subalgebras and the quotient modules g/(p_I^- + h).

Conventions
-----------
The ambient form is antidiagonal, ``A[i, d-1-i] = c_i``.  For sp(2n) the
weights are ``c_i = 1`` on the first half and ``-1`` on the second; for
so(d) they are all 1, except that the middle entry of an odd d may be 2
(needed when the centre slot carries the 7-dimensional g2 module, whose
rational realization preserves ``antidiag(1,1,1,2,1,1,1)``).

Diagonal matrices form the Cartan subalgebra, upper triangular ones the
positive Borel.  Root vectors of g are ``E_rs - (c_r'/c_s') E_s'r'`` with
``r' = d-1-r``; their coordinate is the entry at the leading position.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import Optional, Sequence

from flint import fmpq, fmpq_mat

from . import linalg as la
from .orbits import GroupKind, Kind
from .rootdata import (
    CartanMap,
    FormalCharacter,
    ReductiveType,
    SimpleType,
    _simple_roots_eps,
    fundamental_weights_eps,
)


# ---------------------------------------------------------------------------
# basis elements


@dataclass(frozen=True)
class Element:
    """A basis element of a realized Lie algebra.

    kind is ``"coroot"`` (the k-th simple coroot of a factor), ``"root"``
    (a root vector; ``root`` holds simple-root coordinates in its factor),
    ``"torus"`` (generator of the k-th torus coordinate) or ``"cartan"``
    (an ambient diagonal basis element).
    """

    matrix: fmpq_mat
    kind: str
    factor: Optional[int] = None
    index: int = 0
    root: Optional[tuple[int, ...]] = None

    @property
    def positive(self) -> bool:
        return self.kind == "root" and sum(self.root) > 0

    @property
    def negative(self) -> bool:
        return self.kind == "root" and sum(self.root) < 0

    @property
    def is_cartan(self) -> bool:
        return self.kind in ("coroot", "torus", "cartan")

    def with_matrix(self, M: fmpq_mat) -> "Element":
        return Element(M, self.kind, self.factor, self.index, self.root)


def antidiagonal_form(c: Sequence) -> fmpq_mat:
    d = len(c)
    A = fmpq_mat(d, d)
    for i, x in enumerate(c):
        A[i, d - 1 - i] = la.to_fmpq(x)
    return A


def form_weights(kind: Kind, d: int, middle=1) -> list[Fraction]:
    if kind is Kind.SYMPLECTIC:
        return [Fraction(1)] * (d // 2) + [Fraction(-1)] * (d // 2)
    c = [Fraction(1)] * d
    if d % 2:
        c[d // 2] = Fraction(middle)
    return c


class FormAlgebra:
    """The Lie algebra of an antidiagonal form with weights ``c`` (type B, C or D)."""

    def __init__(self, c: Sequence):
        self.c = [Fraction(x) for x in c]
        d = len(self.c)
        self.d = d
        self.n = d // 2
        skew = all(self.c[i] == -self.c[d - 1 - i] for i in range(d))
        sym = all(self.c[i] == self.c[d - 1 - i] for i in range(d))
        if skew and d % 2 == 0:
            self.series = "C"
        elif sym:
            self.series = "B" if d % 2 else "D"
        else:
            raise ValueError("form must be symmetric or skew-symmetric")
        if self.series == "D" and self.n < 2:
            raise ValueError("so(2) is not supported; use gl(1)")
        self.type = SimpleType(self.series, self.n)
        self.form = antidiagonal_form(self.c)
        self._build()

    def partner(self, i: int) -> int:
        return self.d - 1 - i

    def eps(self, i: int) -> list[int]:
        v = [0] * self.n
        if i < self.n:
            v[i] = 1
        elif i >= self.d - self.n:
            v[self.partner(i)] = -1
        return v

    @cached_property
    def _eps_to_simple(self) -> tuple[tuple[Fraction, ...], ...]:
        from .rootdata import _inverse
        roots = _simple_roots_eps(self.series, self.n)
        return _inverse([list(r) for r in roots])

    def simple_coords(self, eps_vec: Sequence) -> tuple[int, ...]:
        inv = self._eps_to_simple
        out = []
        for k in range(self.n):
            x = sum((Fraction(eps_vec[i]) * inv[i][k] for i in range(self.n)), Fraction(0))
            if x.denominator != 1:
                raise ArithmeticError("root is not integral in simple coordinates")
            out.append(int(x))
        return tuple(out)

    def _build(self):
        d, c = self.d, self.c
        self.elements: list[Element] = []
        self.leading: list[tuple[int, int]] = []
        # Cartan part: E_ii - E_i'i'
        for i in range(self.n):
            M = fmpq_mat(d, d)
            M[i, i] = 1
            M[self.partner(i), self.partner(i)] = -1
            self.elements.append(Element(M, "cartan", index=i))
            self.leading.append((i, i))
        seen = set()
        for r in range(d):
            for s in range(d):
                if r == s:
                    continue
                rp, sp = self.partner(r), self.partner(s)
                pair = frozenset([(r, s), (sp, rp)])
                if pair in seen:
                    continue
                seen.add(pair)
                M = fmpq_mat(d, d)
                if (r, s) == (sp, rp):
                    if c[rp] == c[sp] * -1 or self.series == "C":
                        M[r, s] = 1
                    else:
                        continue
                else:
                    M[r, s] = 1
                    M[sp, rp] = la.to_fmpq(-c[rp] / c[sp])
                lead = min((r, s), (sp, rp))
                root = [a - b for a, b in zip(self.eps(lead[0]), self.eps(lead[1]))]
                if not any(root):
                    continue
                self.elements.append(Element(M, "root", index=len(self.leading), root=self.simple_coords(root)))
                self.leading.append(lead)
        order = sorted(range(len(self.elements)),
                       key=lambda k: (not self.elements[k].is_cartan, not self.elements[k].positive,
                                      self.leading[k]))
        self.elements = [self.elements[k] for k in order]
        self.leading = [self.leading[k] for k in order]
        self.position = {p: k for k, p in enumerate(self.leading)}

    @property
    def dim(self) -> int:
        return len(self.elements)

    def coords(self, X: fmpq_mat) -> list:
        return [X[r, s] for r, s in self.leading]

    def coroots(self) -> list[fmpq_mat]:
        out = []
        for root in _simple_roots_eps(self.series, self.n):
            norm = sum(x * x for x in root)
            co = [2 * x / norm for x in root]
            M = fmpq_mat(self.d, self.d)
            for i in range(self.n):
                if co[i]:
                    M[i, i] = la.to_fmpq(co[i])
                    M[self.partner(i), self.partner(i)] = la.to_fmpq(-co[i])
            out.append(M)
        return out

    def preserves_form(self, X: fmpq_mat) -> bool:
        return la.is_zero(X.transpose() * self.form + self.form * X)


# ---------------------------------------------------------------------------
# realizations of the simple factors on their natural modules


@dataclass
class FactorRealization:
    name: str
    type: SimpleType
    dim: int
    form: Optional[fmpq_mat]
    elements: list[Element]  # coroots first (Bourbaki order), then root vectors

    @property
    def algebra_dim(self) -> int:
        return len(self.elements)

    def check_cartan(self) -> None:
        """alpha_i(h_j) must reproduce the Cartan matrix of the type."""
        A = self.type.cartan
        coroots = [e.matrix for e in self.elements if e.kind == "coroot"]
        for e in self.elements:
            if e.kind != "root" or sum(e.root) != 1:
                continue
            i = e.root.index(1)
            for j, h in enumerate(coroots):
                val = _eigen(la.bracket(h, e.matrix), e.matrix)
                if val != A[i][j]:
                    raise AssertionError(f"{self.name}: alpha_{i + 1}(h_{j + 1}) = {val}, expected {A[i][j]}")


def _eigen(Y: fmpq_mat, X: fmpq_mat) -> fmpq:
    """The scalar a with Y = a X."""
    for x, y in zip(X.entries(), Y.entries()):
        if x != 0:
            a = y / x
            if Y != X * a:
                raise ArithmeticError("not an eigenvector")
            return a
    raise ArithmeticError("zero matrix")


def classical_factor(name: str, series: str, n: int, middle=1) -> FactorRealization:
    if series == "A":
        return _sl_factor(name, n)
    if series == "C":
        c = form_weights(Kind.SYMPLECTIC, 2 * n)
    else:
        c = form_weights(Kind.ORTHOGONAL, 2 * n + (series == "B"), middle)
    alg = FormAlgebra(c)
    coroots = [Element(h, "coroot", index=k) for k, h in enumerate(alg.coroots())]
    roots = [e for e in alg.elements if e.kind == "root"]
    return FactorRealization(name, alg.type, alg.d, alg.form, coroots + roots)


def _sl_factor(name: str, rank: int) -> FactorRealization:
    m = rank + 1
    out = []
    for k in range(rank):
        M = fmpq_mat(m, m)
        M[k, k] = 1
        M[k + 1, k + 1] = -1
        out.append(Element(M, "coroot", index=k))
    pos, neg = [], []
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            lo, hi = min(i, j), max(i, j)
            sign = 1 if i < j else -1
            root = tuple(sign if lo <= k < hi else 0 for k in range(rank))
            (pos if i < j else neg).append(Element(la.unit(m, i, j), "root", root=root))
    form = None
    if m == 2:
        form = la.matrix([[0, 1], [-1, 0]])
    return FactorRealization(name, SimpleType("A", rank), m, form, out + pos + neg)


_G2_TEMPLATE = [
    ["t1+t2", "x10", "x11", "2x21", "x31", "x32", "0"],
    ["y10", "t1", "x01", "-2x11", "x21", "0", "-x32"],
    ["y11", "y01", "t2", "2x10", "0", "-x21", "-x31"],
    ["y21", "-y11", "y10", "0", "-x10", "x11", "-x21"],
    ["y31", "y21", "0", "-2y10", "-t2", "-x01", "-x11"],
    ["y32", "0", "-y21", "2y11", "-y01", "-t1", "-x10"],
    ["0", "-y32", "-y31", "-2y21", "-y11", "-y10", "-t1-t2"],
]

_SPIN7_TEMPLATE = [
    ["t1+t2+t3", "x001", "x011", "x111", "x012", "x112", "x122", "0"],
    ["y001", "t1", "x010", "x110", "-x011", "x111", "0", "-x122"],
    ["y011", "y010", "t2", "x100", "x001", "0", "-x111", "-x112"],
    ["y111", "y110", "y100", "t3", "0", "-x001", "x011", "-x012"],
    ["y012", "-y011", "y001", "0", "-t3", "-x100", "-x110", "-x111"],
    ["y112", "y111", "0", "-y001", "-y100", "-t2", "-x010", "-x011"],
    ["y122", "0", "-y111", "y011", "-y110", "-y010", "-t1", "-x001"],
    ["0", "-y122", "-y112", "-y012", "-y111", "-y011", "-y001", "-t1-t2-t3"],
]

_TERM = re.compile(r"([+-]?)(\d*)([txy]\d+)")


def _template_basis(template: list[list[str]]) -> dict[str, fmpq_mat]:
    n = len(template)
    out: dict[str, fmpq_mat] = {}
    for i, row in enumerate(template):
        for j, entry in enumerate(row):
            if entry == "0":
                continue
            for sign, coef, name in _TERM.findall(entry):
                M = out.setdefault(name, fmpq_mat(n, n))
                M[i, j] += (-1 if sign == "-" else 1) * int(coef or 1)
    return out


def _template_factor(name: str, template, stype: SimpleType, form: fmpq_mat,
                     conj: Optional[fmpq_mat] = None) -> FactorRealization:
    basis = _template_basis(template)
    if conj is not None:
        basis = {k: conj * M * conj for k, M in basis.items()}
    rank = stype.rank
    roots: dict[tuple[int, ...], fmpq_mat] = {}
    for key, M in basis.items():
        if key[0] in "xy":
            c = tuple(int(ch) for ch in key[1:])
            roots[c if key[0] == "x" else tuple(-x for x in c)] = M
    coroots = []
    for k in range(rank):
        e = tuple(int(i == k) for i in range(rank))
        x, y = roots[e], roots[tuple(-v for v in e)]
        h = la.bracket(x, y)
        h = h * (2 / _eigen(la.bracket(h, x), x))
        coroots.append(Element(h, "coroot", index=k))
    pos = sorted((c for c in roots if sum(c) > 0), key=lambda c: (sum(c), c))
    neg = [tuple(-v for v in c) for c in pos]
    elements = coroots + [Element(roots[c], "root", root=c) for c in pos + neg]
    return FactorRealization(name, stype, len(template), form, elements)


def g2_factor() -> FactorRealization:
    form = antidiagonal_form([1, 1, 1, 2, 1, 1, 1])
    return _template_factor("g2", _G2_TEMPLATE, SimpleType("G", 2), form)


def spin7_factor(sign: str = "+") -> FactorRealization:
    form = antidiagonal_form([1] * 8)
    conj = None
    if sign == "-":
        conj = fmpq_mat(8, 8)
        for i in range(8):
            j = {3: 4, 4: 3}.get(i, i)
            conj[i, j] = 1
    return _template_factor(f"spin(7){sign}", _SPIN7_TEMPLATE, SimpleType("B", 3), form, conj)


# ---------------------------------------------------------------------------
# pair specifications


@dataclass(frozen=True)
class FactorSpec:
    """``kind`` is one of sp, so, sl, g2, spin7, gl1; ``n`` is the natural dimension."""

    kind: str
    n: int
    sign: str = "+"

    @property
    def natural_dim(self) -> int:
        return {"g2": 7, "spin7": 8, "gl1": 1}.get(self.kind, self.n)

    @property
    def simple_type(self) -> Optional[SimpleType]:
        k, n = self.kind, self.n
        if k == "sp":
            return SimpleType("C", n // 2)
        if k == "so":
            return SimpleType("B", n // 2) if n % 2 else SimpleType("D", n // 2)
        if k == "sl":
            return SimpleType("A", n - 1)
        if k == "g2":
            return SimpleType("G", 2)
        if k == "spin7":
            return SimpleType("B", 3)
        return None

    def __str__(self) -> str:
        if self.kind in ("g2", "gl1"):
            return {"g2": "g2", "gl1": "gl(1)"}[self.kind]
        if self.kind == "spin7":
            return "spin(7)" + ("-" if self.sign == "-" else "")
        return f"{self.kind}({self.n})"


@dataclass(frozen=True)
class Atom:
    """One tensor factor of an irreducible summand: a functor applied to the
    natural module of factor ``factor`` (0-based); ``factor=None`` is F1."""

    factor: Optional[int]
    op: str = "std"  # std, dual, S2, L2


@dataclass(frozen=True)
class Irreducible:
    atoms: tuple[Atom, ...]
    twist: tuple[Fraction, ...]


@dataclass(frozen=True)
class Omega:
    inner: Irreducible


@dataclass(frozen=True)
class PairSpec:
    """Parsed pair specification.

    Grammar (whitespace is ignored)::

        spec     := ambient ":" factors ":" summands | "module" ":" factors ":" summands
        ambient  := "sp(" 2n ")" | "so(" d ")"
        factors  := factor ("*" factor)*
        factor   := ("sp(" 2n ")" | "so(" m ")" | "sl(" n ")" | "g2" | "spin(7)" ["+"|"-"]
                     | "gl(1)") ["#" k]
        summands := summand ("+" summand)*
        summand  := "omega(" irr ")" | irr
        irr      := (atom | "[" atom ("x" atom)* "]") ["_" twist]
        atom     := ["S2" | "L2"] "F" N ["*"] ["@" k]
        twist    := torus weight such as chi, 2chi, chi/2 or "(" chi1+chi2 ")"

    ``@k`` names the factor (1-based, in the order of ``factors``); without
    it the unique factor with natural dimension N is used.  ``F1`` is the
    trivial module.  Torus coordinates are called ``chi`` when there is one
    gl(1) factor and ``chi1, chi2, ...`` otherwise.
    """

    ambient: Optional[GroupKind]
    factors: tuple[FactorSpec, ...]
    summands: tuple  # Irreducible | Omega
    text: str = ""

    @cached_property
    def reductive_type(self) -> ReductiveType:
        simple = tuple(f.simple_type for f in self.factors if f.kind != "gl1")
        torus = sum(1 for f in self.factors if f.kind == "gl1")
        return ReductiveType(simple, torus)

    def summand_dim(self, s) -> int:
        if isinstance(s, Omega):
            return 2 * self.summand_dim(s.inner)
        out = 1
        for a in s.atoms:
            if a.factor is None:
                continue
            n = self.factors[a.factor].natural_dim
            out *= {"S2": n * (n + 1) // 2, "L2": n * (n - 1) // 2}.get(a.op, n)
        return out

    @property
    def dim(self) -> int:
        return sum(self.summand_dim(s) for s in self.summands)

    def __str__(self) -> str:
        return self.text


_AMB = re.compile(r"^(sp|so)\((\d+)\)$")
_FACTOR = re.compile(r"^(sp|so|sl|gl)\((\d+)\)([+-]?)(?:#(\d+))?$|^(g2|spin\(7\))([+-]?)(?:#(\d+))?$")
_ATOM = re.compile(r"^(S2|L2)?F(\d+)(\*?)(?:@(\d+))?$")


def _split_top(text: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    if depth:
        raise ValueError("unbalanced brackets")
    out.append(cur)
    return out


def parse_pair_spec(text: str) -> PairSpec:
    raw = text
    text = re.sub(r"\s+", "", text)
    fields = text.split(":")
    if len(fields) != 3:
        raise ValueError(f"pair spec needs three ':'-separated fields: {raw!r}")
    amb_text, fac_text, sum_text = fields
    ambient = None
    if amb_text.lower() != "module":
        m = _AMB.match(amb_text.lower())
        if not m:
            raise ValueError(f"bad ambient group {amb_text!r}")
        ambient = GroupKind.parse(m.group(1), int(m.group(2)))
    factors = []
    for k, tok in enumerate(t for t in fac_text.split("*") if t):
        m = _FACTOR.match(tok.lower())
        if not m:
            raise ValueError(f"bad factor {tok!r}")
        num = m.group(4) or m.group(7)
        if num and int(num) != k + 1:
            raise ValueError(f"factor {tok!r} is numbered out of order")
        if m.group(1):
            kind, n = m.group(1), int(m.group(2))
            if kind == "gl":
                if n != 1:
                    raise ValueError("only gl(1) is supported; write gl(n) as sl(n) * gl(1)")
                factors.append(FactorSpec("gl1", 1))
            else:
                if kind == "sp" and n % 2:
                    raise ValueError(f"sp({n}) needs an even dimension")
                factors.append(FactorSpec(kind, n))
        else:
            name = "g2" if m.group(5) == "g2" else "spin7"
            factors.append(FactorSpec(name, 0, m.group(6) or "+"))
    torus_count = sum(1 for f in factors if f.kind == "gl1")
    simple = tuple(f.simple_type for f in factors if f.kind != "gl1")
    rtype = ReductiveType(simple, torus_count)
    summands = []
    for tok in _split_top(sum_text, "+"):
        if not tok:
            raise ValueError("empty summand")
        if tok.lower().startswith("omega(") and tok.endswith(")"):
            summands.append(Omega(_parse_irr(tok[6:-1], factors, rtype)))
        else:
            summands.append(_parse_irr(tok, factors, rtype))
    spec = PairSpec(ambient, tuple(factors), tuple(summands), raw.strip())
    if ambient is not None and spec.dim != ambient.dim:
        raise ValueError(f"summand dimensions total {spec.dim}, ambient has dimension {ambient.dim}")
    return spec


def _parse_irr(tok: str, factors: list[FactorSpec], rtype: ReductiveType) -> Irreducible:
    twist = rtype.zero()[rtype.torus_slice]
    body = tok
    if tok.startswith("["):
        close = tok.index("]")
        body, rest = tok[1:close], tok[close + 1:]
        atoms_txt = body.split("x")
    else:
        rest = ""
        if "_" in tok:
            body, rest = tok.split("_", 1)
            rest = "_" + rest
        atoms_txt = [body]
    if rest:
        if not rest.startswith("_"):
            raise ValueError(f"bad summand {tok!r}")
        tw = rest[1:]
        if tw.startswith("(") and tw.endswith(")"):
            tw = tw[1:-1]
        tw = re.sub(r"^(\d+)([a-z])", r"\1*\2", tw)
        tw = re.sub(r"([+-])(\d+)([a-z])", r"\1\2*\3", tw)
        twist = rtype.parse_weight(tw)[rtype.torus_slice]
    atoms = []
    for a in atoms_txt:
        m = _ATOM.match(a)
        if not m:
            raise ValueError(f"bad module {a!r}")
        op = m.group(1) or ("dual" if m.group(3) else "std")
        n = int(m.group(2))
        if m.group(4):
            k = int(m.group(4)) - 1
            if k >= len(factors) or factors[k].natural_dim != n:
                raise ValueError(f"factor {m.group(4)} has no natural module F{n}")
        elif n == 1 and op == "std":
            k = None
        else:
            cands = [i for i, f in enumerate(factors) if f.kind != "gl1" and f.natural_dim == n]
            if len(cands) != 1:
                raise ValueError(f"F{n} does not name a unique factor; use F{n}@k")
            k = cands[0]
        atoms.append(Atom(k, op))
    used = [a.factor for a in atoms if a.factor is not None]
    if len(used) != len(set(used)):
        raise ValueError(f"factor used twice in {tok!r}")
    return Irreducible(tuple(atoms), tuple(twist))


# ---------------------------------------------------------------------------
# modules given by action matrices


@dataclass
class ModuleAction:
    """A module of a realized Lie algebra.

    ``elements[i]`` is the action of the i-th basis element.  ``cartan``
    lists the (diagonal) actions of the Cartan elements in weight-coordinate
    order of ``type``; ``positive`` indexes the positive root vectors.
    """

    type: ReductiveType
    dim: int
    elements: list[fmpq_mat]
    cartan: list[fmpq_mat]
    positive: list[int]
    form: Optional[fmpq_mat] = None
    label: str = ""

    def borel(self) -> list[fmpq_mat]:
        return list(self.cartan) + [self.elements[i] for i in self.positive]

    def nilradical(self) -> list[fmpq_mat]:
        return [self.elements[i] for i in self.positive]

    def character(self) -> FormalCharacter:
        weights: dict = {}
        diags = [la.diag_entries(h) for h in self.cartan]
        for h in self.cartan:
            if not la.is_diagonal(h):
                raise ValueError("Cartan elements do not act diagonally")
        for v in range(self.dim):
            w = tuple(d[v] for d in diags)
            weights[w] = weights.get(w, 0) + 1
        return FormalCharacter(self.type, weights)


def _sym2(Y: fmpq_mat) -> fmpq_mat:
    n = Y.nrows()
    idx = [(i, j) for i in range(n) for j in range(i, n)]
    pos = {p: k for k, p in enumerate(idx)}
    M = fmpq_mat(len(idx), len(idx))
    for col, (i, j) in enumerate(idx):
        # Y(e_i e_j) = (Y e_i) e_j + e_i (Y e_j)
        for a in range(n):
            if Y[a, i] != 0:
                M[pos[tuple(sorted((a, j)))], col] += Y[a, i]
            if Y[a, j] != 0:
                M[pos[tuple(sorted((i, a)))], col] += Y[a, j]
    return M


def _wedge2(Y: fmpq_mat) -> fmpq_mat:
    n = Y.nrows()
    idx = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pos = {p: k for k, p in enumerate(idx)}
    M = fmpq_mat(len(idx), len(idx))
    for col, (i, j) in enumerate(idx):
        for a in range(n):
            if Y[a, i] != 0 and a != j:
                s = 1 if a < j else -1
                M[pos[(min(a, j), max(a, j))], col] += s * Y[a, i]
            if Y[a, j] != 0 and a != i:
                s = 1 if i < a else -1
                M[pos[(min(i, a), max(i, a))], col] += s * Y[a, j]
    return M


def _reversal(n: int) -> fmpq_mat:
    J = fmpq_mat(n, n)
    for i in range(n):
        J[i, n - 1 - i] = 1
    return J


# ---------------------------------------------------------------------------
# realized subalgebras


@dataclass
class RealizedAlgebra:
    """h as a list of basis elements acting on its natural ambient space."""

    type: ReductiveType
    factors: list[FactorRealization]
    elements: list[Element]  # factor elements (factor set), then torus generators

    @property
    def dim(self) -> int:
        return len(self.elements)

    def cartan_indices(self) -> list[int]:
        """Coroots of each factor in order, then torus generators."""
        co = [i for i, e in enumerate(self.elements) if e.kind == "coroot"]
        co.sort(key=lambda i: (self.elements[i].factor, self.elements[i].index))
        tor = [i for i, e in enumerate(self.elements) if e.kind == "torus"]
        tor.sort(key=lambda i: self.elements[i].index)
        return co + tor

    def positive_indices(self) -> list[int]:
        return [i for i, e in enumerate(self.elements) if e.positive]

    def negative_indices(self) -> list[int]:
        return [i for i, e in enumerate(self.elements) if e.negative]


def _factor_realizations(spec: PairSpec, middles: dict[int, Fraction]) -> list[Optional[FactorRealization]]:
    out: list[Optional[FactorRealization]] = []
    for k, f in enumerate(spec.factors):
        if f.kind == "gl1":
            out.append(None)
        elif f.kind == "g2":
            out.append(g2_factor())
        elif f.kind == "spin7":
            out.append(spin7_factor(f.sign))
        else:
            st = f.simple_type
            out.append(classical_factor(str(f), st.series, st.rank, middles.get(k, 1)))
    for r in out:
        if r is not None:
            r.check_cartan()
    return out


def _irr_action(spec: PairSpec, irr: Irreducible, reals, fidx: Optional[int], M: Optional[fmpq_mat],
                torus: Optional[int]) -> fmpq_mat:
    """Action of one basis element on an irreducible summand.

    The basis element is either factor ``fidx`` with natural matrix ``M`` or
    the generator of torus coordinate ``torus``.
    """
    dims = []
    for a in irr.atoms:
        if a.factor is None:
            dims.append(1)
        else:
            dims.append(reals[a.factor].dim)
    mats = []
    hit = False
    for a, n in zip(irr.atoms, dims):
        if a.factor is not None and a.factor == fidx:
            hit = True
            Y = {"std": M, "dual": -M.transpose() if M is not None else None}.get(a.op)
            if a.op == "S2":
                Y = _sym2(M)
            elif a.op == "L2":
                Y = _wedge2(M)
            mats.append(Y)
        else:
            mats.append(None)
    sizes = []
    for a, n in zip(irr.atoms, dims):
        sizes.append({"S2": n * (n + 1) // 2, "L2": n * (n - 1) // 2}.get(a.op, n))
    total = 1
    for s in sizes:
        total *= s
    if torus is not None:
        return la.identity(total) * la.to_fmpq(irr.twist[torus])
    if not hit:
        return la.zeros(total)
    # first atom varies fastest
    out = None
    for Y, s in zip(mats, sizes):
        block = Y if Y is not None else la.identity(s)
        out = block if out is None else la.kron(block, out)
    return out


def _irr_form(irr: Irreducible, reals) -> Optional[fmpq_mat]:
    if any(irr.twist):
        return None
    out = None
    for a in irr.atoms:
        if a.op != "std":
            return None
        if a.factor is None:
            F = la.matrix([[1]])
        else:
            F = reals[a.factor].form
            if F is None:
                return None
        out = F if out is None else la.kron(F, out)
    return out


def realize_modules(spec: PairSpec, middles: dict[int, Fraction] | None = None,
                    skew: bool = False):
    """Realize h and every summand of V.

    Returns ``(algebra, summand_actions, summand_forms)``; each summand
    action is a list of matrices aligned with ``algebra.elements``.
    """
    reals = _factor_realizations(spec, middles or {})
    rtype = spec.reductive_type
    # h basis, tagged by factor
    elements: list[Element] = []
    natural: list[tuple[Optional[int], Optional[fmpq_mat], Optional[int]]] = []
    simple_k = 0
    torus_k = 0
    for k, (f, r) in enumerate(zip(spec.factors, reals)):
        if r is None:
            elements.append(Element(la.zeros(1), "torus", factor=None, index=torus_k))
            natural.append((None, None, torus_k))
            torus_k += 1
            continue
        for e in r.elements:
            elements.append(Element(e.matrix, e.kind, simple_k, e.index, e.root))
            natural.append((k, e.matrix, None))
        simple_k += 1
    actions, forms = [], []
    for s in spec.summands:
        irr = s.inner if isinstance(s, Omega) else s
        mats = [_irr_action(spec, irr, reals, fk, M, t) for fk, M, t in natural]
        if isinstance(s, Omega):
            k = mats[0].nrows()
            J = _reversal(k)
            mats = [la.block_diag([Y, -(J * Y.transpose() * J)]) for Y in mats]
            Jk = _reversal(k)
            F = la.zeros(2 * k)
            for i in range(k):
                for j in range(k):
                    if Jk[i, j] != 0:
                        F[i, k + j] = 1
                        F[k + i, j] = -1 if skew else 1
            forms.append(F)
        else:
            forms.append(_irr_form(irr, reals))
        actions.append(mats)
    # keep the torus generators' ambient matrices filled in later
    algebra = RealizedAlgebra(rtype, [r for r in reals if r is not None], elements)
    return algebra, actions, forms


def _placement(dims: list[int], d: int) -> list[list[list[Fraction]]]:
    """Nested block placement of summands of the given dimensions in F^d."""
    def e(i):
        v = [Fraction(0)] * d
        v[i] = Fraction(1)
        return v

    vecs = [e(i) for i in range(d)]
    out = []
    for s in dims:
        D = len(vecs)
        if s > D:
            raise ValueError("dimension mismatch")
        if s % 2 == 0:
            k = s // 2
            out.append(vecs[:k] + vecs[D - k:])
            vecs = vecs[k:D - k]
        elif D % 2:
            k, l = s // 2, D // 2
            out.append(vecs[l - k:l + k + 1])
            vecs = vecs[:l - k] + vecs[l + k + 1:]
        else:
            k, l = s // 2, D // 2
            plus = [a + b for a, b in zip(vecs[l - 1], vecs[l])]
            minus = [a - b for a, b in zip(vecs[l - 1], vecs[l])]
            out.append(vecs[:k] + [plus] + vecs[D - k:])
            vecs = vecs[k:l - 1] + [minus] + vecs[l + 1:D - k]
    if vecs:
        raise ValueError("dimension mismatch")
    return out


def _gram(vecs, c) -> list[list[Fraction]]:
    d = len(c)
    return [[sum((u[i] * c[i] * v[d - 1 - i] for i in range(d)), Fraction(0)) for v in vecs] for u in vecs]


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x <= 0:
        return None
    p, q = isqrt(x.numerator), isqrt(x.denominator)
    if p * p == x.numerator and q * q == x.denominator:
        return Fraction(p, q)
    return None


# ---------------------------------------------------------------------------
# the ambient algebra with parabolics


class Ambient:
    """Full sp_2n or so_d in the antidiagonal realization."""

    def __init__(self, group: GroupKind, middle=1):
        self.group = group
        self.c = form_weights(group.kind, group.dim, middle)
        self.algebra = FormAlgebra(self.c)
        self.type = ReductiveType((self.algebra.type,))

    @property
    def d(self) -> int:
        return self.group.dim

    @property
    def rank(self) -> int:
        return self.algebra.n

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def form(self) -> fmpq_mat:
        return self.algebra.form

    @property
    def elements(self) -> list[Element]:
        return self.algebra.elements

    def coords(self, X: fmpq_mat) -> list:
        return self.algebra.coords(X)

    def check_index_set(self, I) -> frozenset[int]:
        I = frozenset(int(i) for i in I)
        if any(i < 1 or i > self.rank for i in I):
            raise ValueError(f"invalid index set {sorted(I)} for rank {self.rank}")
        return I

    def u_indices(self, I) -> list[int]:
        """Positive roots with nonzero support on I: the complement of p_I^-."""
        I = self.check_index_set(I)
        return [k for k, e in enumerate(self.elements)
                if e.positive and any(e.root[i - 1] for i in I)]

    def parabolic_indices(self, I) -> list[int]:
        u = set(self.u_indices(I))
        return [k for k in range(self.dim) if k not in u]

    def flag_dim(self, I) -> int:
        return len(self.u_indices(I))

    def fundamental_eps(self) -> list[tuple[Fraction, ...]]:
        return fundamental_weights_eps(self.algebra.series, self.rank)


@dataclass
class Subalgebra:
    ambient: Ambient
    indices: list[int]

    @property
    def dim(self) -> int:
        return len(self.indices)

    @property
    def elements(self) -> list[Element]:
        return [self.ambient.elements[k] for k in self.indices]


def ambient(g: GroupKind) -> Ambient:
    return Ambient(g)


def parabolic(g: Ambient, I) -> Subalgebra:
    return Subalgebra(g, g.parabolic_indices(I))


@dataclass
class EmbeddedSubgroup:
    spec: PairSpec
    ambient: Ambient
    sub: RealizedAlgebra  # elements carry ambient matrices
    cartan_map: CartanMap
    summand_vectors: list[list[list[Fraction]]]

    @property
    def h_type(self) -> ReductiveType:
        return self.sub.type

    @property
    def cover(self) -> bool:
        """True when some ambient weight restricts to a non-integral weight."""
        return any(x.denominator != 1 for row in self.cartan_map.matrix for x in row)

    @property
    def dim(self) -> int:
        return self.sub.dim

    def matrices(self) -> list[fmpq_mat]:
        return [e.matrix for e in self.sub.elements]

    def borel(self) -> list[fmpq_mat]:
        """t_H plus the positive root vectors of h."""
        return [self.sub.elements[i].matrix for i in self.sub.cartan_indices() + self.sub.positive_indices()]

    # --- checks -----------------------------------------------------------

    def is_form_preserving(self) -> bool:
        return all(self.ambient.algebra.preserves_form(X) for X in self.matrices())

    def is_bracket_closed(self) -> bool:
        flat = [la.flatten(X) for X in self.matrices()]
        r = la.rank(flat)
        if r != len(flat):
            return False
        for i, X in enumerate(self.matrices()):
            for Y in self.matrices()[i + 1:]:
                if not la.in_span(flat, la.flatten(la.bracket(X, Y))):
                    return False
        return True

    def lower_triangular_dim(self) -> int:
        """dim of h intersected with the lower triangular matrices."""
        d = self.ambient.d
        rows = []
        for X in self.matrices():
            rows.append([X[i, j] for i in range(d) for j in range(i + 1, d)])
        return self.dim - la.rank(rows)

    def diagonal_dim(self) -> int:
        d = self.ambient.d
        rows = [[X[i, j] for i in range(d) for j in range(d) if i != j] for X in self.matrices()]
        return self.dim - la.rank(rows)

    def tautological_character(self) -> FormalCharacter:
        """Character of V = F^d under t_H, from the diagonal Cartan matrices."""
        idx = self.sub.cartan_indices()
        diags = [la.diag_entries(self.sub.elements[i].matrix) for i in idx]
        out: dict = {}
        for v in range(self.ambient.d):
            w = tuple(dg[v] for dg in diags)
            out[w] = out.get(w, 0) + 1
        return FormalCharacter(self.h_type, out)

    def spec_character(self) -> FormalCharacter:
        """Character of V computed summand by summand from the pair specification."""
        ch = FormalCharacter(self.h_type, {})
        algebra, actions, _ = realize_modules(self.spec, skew=self.ambient.group.kind is Kind.SYMPLECTIC)
        idx = algebra.cartan_indices()
        for mats in actions:
            diags = [la.diag_entries(mats[i]) for i in idx]
            out: dict = {}
            for v in range(mats[0].nrows()):
                w = tuple(dg[v] for dg in diags)
                out[w] = out.get(w, 0) + 1
            ch = ch + FormalCharacter(self.h_type, out)
        return ch


def build_subalgebra(spec: PairSpec | str) -> EmbeddedSubgroup:
    if isinstance(spec, str):
        spec = parse_pair_spec(spec)
    g = spec.ambient
    if g is None:
        raise ValueError("an abstract module has no ambient group")
    dims = [spec.summand_dim(s) for s in spec.summands]
    placement = _placement(dims, g.dim)
    # a g2 module in the centre of an odd space needs the weighted form
    middle = 1
    if g.kind is Kind.ORTHOGONAL and g.dim % 2:
        for s, vecs in zip(spec.summands, placement):
            centre = [v for v in vecs if v[g.dim // 2] != 0]
            if centre and isinstance(s, Irreducible) and any(
                    a.factor is not None and spec.factors[a.factor].kind == "g2" for a in s.atoms):
                middle = 2
    amb = Ambient(g, middle)
    c = amb.c
    grams = [_gram(vecs, c) for vecs in placement]
    allvecs = [v for vecs in placement for v in vecs]
    full = _gram(allvecs, c)
    off = 0
    for vecs in placement:
        k = len(vecs)
        for i in range(k):
            for j in range(len(allvecs)):
                if not off <= j < off + k and full[off + i][j] != 0:
                    raise ValueError("summands are not orthogonal")
        off += k
    # odd orthogonal factors are realized with the middle entry they need
    middles: dict[int, Fraction] = {}
    for s, G in zip(spec.summands, grams):
        if isinstance(s, Irreducible) and len(G) % 2:
            for a in s.atoms:
                f = spec.factors[a.factor] if a.factor is not None else None
                if f is not None and f.kind == "so" and f.n % 2 and len(s.atoms) == 1:
                    middles[a.factor] = G[len(G) // 2][len(G) // 2]
    algebra, actions, forms = realize_modules(spec, middles, skew=g.kind is Kind.SYMPLECTIC)
    blocks_per_element: list[list[fmpq_mat]] = [[] for _ in algebra.elements]
    for s, mats, F, G in zip(spec.summands, actions, forms, grams):
        k = len(G)
        Freq = la.matrix(G)
        if all(la.is_zero(Y) for Y in mats):
            D = la.identity(k)
        else:
            if F is None:
                raise ValueError(f"summand {s} carries no invariant form")
            dvals = [Fraction(1)] * k
            for i in range(k):
                j = k - 1 - i
                if F[i, j] == 0:
                    raise ValueError("invariant form of a summand is not antidiagonal")
                if i < j:
                    dvals[i] = la.to_fraction(Freq[i, j] / F[i, j])
                elif i == j:
                    root = _rational_sqrt(la.to_fraction(Freq[i, i] / F[i, i]))
                    if root is None:
                        raise ValueError(f"summand {s}: forms differ by a non-square")
                    dvals[i] = root
            D = la.diagonal(dvals)
            if D * F * D != Freq:
                raise ValueError(f"summand {s}: form of the wrong symmetry type")
        Dinv = D.inv()
        for n_el, Y in enumerate(mats):
            blocks_per_element[n_el].append(Dinv * Y * D)
    P = la.from_columns(allvecs)
    Pinv = P.inv()
    elements = [e.with_matrix(P * la.block_diag(blocks) * Pinv)
                for e, blocks in zip(algebra.elements, blocks_per_element)]
    sub = RealizedAlgebra(algebra.type, algebra.factors, elements)
    # Cartan map: ambient fundamental weights evaluated on t_H
    n = amb.rank
    cart = [elements[i].matrix for i in sub.cartan_indices()]
    for X in cart:
        if not la.is_diagonal(X):
            raise AssertionError("Cartan element of h is not diagonal")
    rows = []
    for pi in amb.fundamental_eps():
        rows.append(tuple(sum((pi[j] * la.to_fraction(X[j, j]) for j in range(n)), Fraction(0))
                          for X in cart))
    cmap = CartanMap(amb.type, algebra.type, tuple(rows))
    return EmbeddedSubgroup(spec, amb, sub, cmap, placement)


def g2_in_so7() -> EmbeddedSubgroup:
    return build_subalgebra("so(7): g2 : F7")


def spin7_in_so8(sign: str = "+") -> EmbeddedSubgroup:
    return build_subalgebra(f"so(8): spin(7){'-' if sign == '-' else ''} : F8")


def cartan_restriction_map(e: EmbeddedSubgroup) -> CartanMap:
    return e.cartan_map


# ---------------------------------------------------------------------------
# Levi subalgebra and quotient module


@dataclass
class LeviData:
    """The Levi m of p_I^- ∩ h containing t_H, with its own root datum.

    ``simple`` holds indices (into the h basis) of root vectors for the
    simple roots of m, grouped by component in Bourbaki order; ``coroots``
    and ``center`` are elements of t_H written in the basis of
    ``cartan_indices``.
    """

    type: ReductiveType
    indices: list[int]
    positive: list[int]
    coroots: list[list[Fraction]]
    center: list[list[Fraction]]

    @property
    def dim(self) -> int:
        return len(self.indices)


def _classify(roots: list[tuple[int, tuple[int, ...]]], pairing) -> list[tuple[SimpleType, list[int]]]:
    """Split simple roots into components, each in Bourbaki order."""
    n = len(roots)
    A = [[pairing(i, j) for j in range(n)] for i in range(n)]
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and A[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    out = []
    for comp in comps:
        out.append(_order_component(comp, A))
    return out


def _order_component(comp: list[int], A) -> tuple[SimpleType, list[int]]:
    r = len(comp)
    if r == 1:
        return SimpleType("A", 1), comp
    nbrs = {i: [j for j in comp if j != i and A[i][j] != 0] for i in comp}
    bond = {}
    for i in comp:
        for j in nbrs[i]:
            bond[(i, j)] = A[i][j] * A[j][i]
    if any(v == 3 for v in bond.values()):
        i, j = comp
        short = i if A[j][i] == -3 else j  # <alpha_long, alpha_short^vee> = -3
        return SimpleType("G", 2), [short, j if short == i else i]
    branch = [i for i in comp if len(nbrs[i]) == 3]
    if branch:
        b = branch[0]
        arms = []
        for start in nbrs[b]:
            arm, prev, cur = [start], b, start
            while True:
                nxt = [x for x in nbrs[cur] if x != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                arm.append(cur)
            arms.append(arm)
        arms.sort(key=len)
        if len(arms[1]) != 1:
            raise ValueError("exceptional Levi component not supported")
        long_arm = list(reversed(arms[2]))
        return SimpleType("D", r), long_arm + [b, arms[0][0], arms[1][0]]
    ends = [i for i in comp if len(nbrs[i]) == 1]
    path, prev, cur = [ends[0]], None, ends[0]
    while True:
        nxt = [x for x in nbrs[cur] if x != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        path.append(cur)
    doubles = [(i, j) for (i, j), v in bond.items() if v == 2]
    if not doubles:
        return SimpleType("A", r), path
    i, j = doubles[0]
    if {path[0], path[1]} == {i, j}:
        path.reverse()
    a, b = path[-2], path[-1]
    # B: last root short, so <alpha_{n-1}, alpha_n^vee> = -2
    series = "B" if A[a][b] == -2 else "C"
    return SimpleType(series, r), path


def levi_of_intersection(e: EmbeddedSubgroup, I) -> LeviData:
    amb = e.ambient
    u = amb.u_indices(I)
    sub = e.sub
    factors = list(sub.type.factors)
    cart_idx = sub.cartan_indices()
    in_p = []
    for i in sub.positive_indices():
        X = sub.elements[i].matrix
        coords = amb.coords(X)
        if all(coords[k] == 0 for k in u):
            in_p.append(i)
    roots = {i: (sub.elements[i].factor, sub.elements[i].root) for i in in_p}
    root_set = {v for v in roots.values()}
    simple = []
    for i, (f, c) in roots.items():
        decomposable = False
        for (f2, c2) in root_set:
            if f2 != f or c2 == c:
                continue
            diff = tuple(a - b for a, b in zip(c, c2))
            if (f, diff) in root_set:
                decomposable = True
                break
        if not decomposable:
            simple.append(i)
    simple.sort()

    def pairing(a, b):
        fa, ca = roots[simple[a]]
        fb, cb = roots[simple[b]]
        if fa != fb:
            return 0
        st = factors[fa]
        return int(st.coroot_pairing(st.root_dynkin(ca), cb))

    comps = _classify([roots[i] for i in simple], pairing)
    offsets = []
    start = 0
    for st in factors:
        offsets.append(start)
        start += st.rank
    rank_h = sub.type.rank
    coroots = []
    types = []
    for st, order in comps:
        types.append(st)
        for a in order:
            f, c = roots[simple[a]]
            fst = factors[f]
            d_beta = fst.pair(fst.root_dynkin(c), c) / 2
            vec = [Fraction(0)] * rank_h
            for j, cj in enumerate(c):
                vec[offsets[f] + j] = cj * fst.half_lengths[j] / d_beta
            coroots.append(vec)
    # centre of m: elements of t_H killed by every root of m
    functionals = []
    for i in simple:
        f, c = roots[i]
        dyn = factors[f].root_dynkin(c)
        row = [Fraction(0)] * rank_h
        for j, x in enumerate(dyn):
            row[offsets[f] + j] = Fraction(x)
        functionals.append(row)
    center = la.nullspace(functionals, rank_h)
    mtype = ReductiveType(tuple(types), len(center), tuple(f"z{k + 1}" for k in range(len(center))))
    neg = [j for j in sub.negative_indices()
           if (sub.elements[j].factor, tuple(-x for x in sub.elements[j].root)) in root_set]
    indices = list(cart_idx) + in_p + neg
    return LeviData(mtype, indices, in_p, coroots, center)


@dataclass
class QuotientModule:
    levi: LeviData
    action: ModuleAction
    basis_roots: list[int]  # ambient indices of the root vectors spanning the quotient


def quotient_module(e: EmbeddedSubgroup, I) -> QuotientModule:
    """g/(p_I^- + h) as a module of the Levi m, in M's weight coordinates."""
    amb = e.ambient
    u = amb.u_indices(I)
    levi = levi_of_intersection(e, I)
    proj = [[amb.coords(X)[k] for k in u] for X in e.matrices()]
    rows, pivots = la.rref_rows(proj)
    free = [j for j in range(len(u)) if j not in pivots]
    basis = [u[j] for j in free]

    def act(X: fmpq_mat) -> fmpq_mat:
        M = fmpq_mat(len(free), len(free))
        for col, k in enumerate(basis):
            Y = la.bracket(X, amb.elements[k].matrix)
            c = amb.coords(Y)
            v = la.reduce_mod([c[j] for j in u], rows, pivots)
            for r, j in enumerate(free):
                if v[j] != 0:
                    M[r, col] = v[j]
        return M

    sub = e.sub
    mats = [act(sub.elements[i].matrix) for i in levi.indices]
    cart_idx = sub.cartan_indices()
    t_mats = [mats[levi.indices.index(i)] for i in cart_idx]

    def combo(vec):
        M = fmpq_mat(len(free), len(free))
        for a, T in zip(vec, t_mats):
            if a:
                M = M + T * la.to_fmpq(a)
        return M

    cartan = [combo(v) for v in levi.coroots + levi.center]
    positive = [levi.indices.index(i) for i in levi.positive]
    action = ModuleAction(levi.type, len(free), mats, cartan, positive, label="g/(p+h)")
    return QuotientModule(levi, action, basis)


def module_from_spec(spec: PairSpec | str) -> ModuleAction:
    """The module V of an abstract ``module:`` spec (or of an embedding spec)."""
    if isinstance(spec, str):
        spec = parse_pair_spec(spec)
    algebra, actions, _ = realize_modules(spec)
    mats = [la.block_diag([a[i] for a in actions]) for i in range(algebra.dim)]
    cartan = [mats[i] for i in algebra.cartan_indices()]
    return ModuleAction(algebra.type, mats[0].nrows(), mats, cartan, algebra.positive_indices(),
                        label=str(spec))
