"""Root data, Weyl dimensions, Freudenthal multiplicities and formal characters.

Weights of a reductive type are flat tuples of ``Fraction``: the Dynkin
labels of every simple factor in order, followed by the torus coordinates.
Simple roots follow the Bourbaki numbering.  The Cartan matrix is
``A[i][j] = <alpha_i, alpha_j^vee>``, so row ``i`` holds the Dynkin labels
of ``alpha_i``.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import comb
from typing import Iterable, Mapping, Sequence

DEFAULT_DIM_BOUND = 200_000

Weight = tuple  # tuple[Fraction, ...]


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def weight(*coords) -> Weight:
    return tuple(_fr(c) for c in coords)


# ---------------------------------------------------------------------------
# simple factors


def _simple_roots_eps(series: str, n: int) -> list[tuple[Fraction, ...]]:
    """Simple roots in orthonormal epsilon coordinates (G2 handled separately)."""
    def e(*pairs):
        v = [Fraction(0)] * size
        for i, c in pairs:
            v[i] += c
        return tuple(v)

    size = n + 1 if series == "A" else n
    roots = [e((i, 1), (i + 1, -1)) for i in range(n - 1)]
    if series == "A":
        roots.append(e((n - 1, 1), (n, -1)))
    elif series == "B":
        roots.append(e((n - 1, 1)))
    elif series == "C":
        roots.append(e((n - 1, 2)))
    elif series == "D":
        roots.append(e((n - 2, 1), (n - 1, 1)))
    return roots


def fundamental_weights_eps(series: str, n: int) -> list[tuple[Fraction, ...]]:
    """Fundamental weights of B_n, C_n, D_n in epsilon coordinates."""
    half = Fraction(1, 2)
    out = []
    for i in range(1, n + 1):
        v = [Fraction(1) if k < i else Fraction(0) for k in range(n)]
        if series == "B" and i == n:
            v = [half] * n
        if series == "D" and i == n - 1:
            v = [half] * (n - 1) + [-half]
        if series == "D" and i == n:
            v = [half] * n
        out.append(tuple(v))
    return out


@dataclass(frozen=True)
class SimpleType:
    series: str
    rank: int

    def __post_init__(self):
        s, n = self.series, self.rank
        if s not in ("A", "B", "C", "D", "G"):
            raise ValueError(f"unknown series {s!r}")
        if s == "G" and n != 2:
            raise ValueError("G2 has rank 2")
        if s == "D" and n < 2:
            raise ValueError("D-series needs rank >= 2")
        if n < 1:
            raise ValueError("rank must be positive")

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Inner products of simple roots."""
        if self.series == "G":
            return ((Fraction(2), Fraction(-3)), (Fraction(-3), Fraction(6)))
        roots = _simple_roots_eps(self.series, self.rank)
        return tuple(tuple(sum(a * b for a, b in zip(r, s)) for s in roots) for r in roots)

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        g = self.gram
        n = self.rank
        return tuple(tuple(int(2 * g[i][j] / g[j][j]) for j in range(n)) for i in range(n))

    @cached_property
    def half_lengths(self) -> tuple[Fraction, ...]:
        return tuple(self.gram[j][j] / 2 for j in range(self.rank))

    @cached_property
    def cartan_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return _inverse([[Fraction(x) for x in row] for row in self.cartan])

    @cached_property
    def weight_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """(pi_i, pi_k) = (A^-1)_ik d_k."""
        inv, d = self.cartan_inverse, self.half_lengths
        n = self.rank
        return tuple(tuple(inv[i][k] * d[k] for k in range(n)) for i in range(n))

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots in simple-root coordinates, sorted by height."""
        n = self.rank
        A = self.cartan
        simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        found = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                for i in range(n):
                    pairing = sum(beta[j] * A[j][i] for j in range(n))
                    p = 0
                    down = list(beta)
                    while True:
                        down[i] -= 1
                        if tuple(down) in found:
                            p += 1
                        else:
                            break
                    if p - pairing > 0:
                        up = list(beta)
                        up[i] += 1
                        up = tuple(up)
                        if up not in found:
                            found.add(up)
                            nxt.append(up)
            layer = nxt
        return tuple(sorted(found, key=lambda r: (sum(r), tuple(-x for x in r))))

    @cached_property
    def positive_roots_dynkin(self) -> tuple[tuple[int, ...], ...]:
        A = self.cartan
        n = self.rank
        return tuple(tuple(sum(c[i] * A[i][j] for i in range(n)) for j in range(n))
                     for c in self.positive_roots)

    @cached_property
    def dimension(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    # --- weight arithmetic on Dynkin labels -------------------------------

    def pair(self, mu: Sequence, c: Sequence[int]) -> Fraction:
        """(mu, alpha) for alpha with simple-root coordinates c."""
        d = self.half_lengths
        return sum((Fraction(c[j]) * mu[j] * d[j] for j in range(self.rank)), Fraction(0))

    def coroot_pairing(self, mu: Sequence, c: Sequence[int]) -> Fraction:
        """<mu, alpha^vee>."""
        return 2 * self.pair(mu, c) / self.pair(self.root_dynkin(c), c)

    def root_dynkin(self, c: Sequence[int]) -> tuple[int, ...]:
        A = self.cartan
        return tuple(sum(c[i] * A[i][j] for i in range(self.rank)) for j in range(self.rank))

    def norm(self, mu: Sequence) -> Fraction:
        g = self.weight_gram
        n = self.rank
        return sum((_fr(mu[i]) * mu[k] * g[i][k] for i in range(n) for k in range(n)), Fraction(0))

    def height(self, mu: Sequence) -> Fraction:
        inv = self.cartan_inverse
        n = self.rank
        return sum((_fr(mu[i]) * inv[i][j] for i in range(n) for j in range(n)), Fraction(0))

    def reflect(self, mu: Sequence, i: int) -> tuple:
        a = self.cartan[i]
        m = mu[i]
        return tuple(mu[j] - m * a[j] for j in range(self.rank))

    def to_dominant(self, mu: Sequence) -> tuple:
        mu = tuple(mu)
        while True:
            for i in range(self.rank):
                if mu[i] < 0:
                    mu = self.reflect(mu, i)
                    break
            else:
                return mu

    def orbit(self, mu: Sequence) -> list[tuple]:
        start = tuple(mu)
        seen = {start}
        stack = [start]
        while stack:
            nu = stack.pop()
            for i in range(self.rank):
                if nu[i] != 0:
                    r = self.reflect(nu, i)
                    if r not in seen:
                        seen.add(r)
                        stack.append(r)
        return sorted(seen)

    def weyl_dim(self, lam: Sequence) -> int:
        if any(x < 0 for x in lam):
            raise ValueError(f"weight {tuple(map(str, lam))} is not dominant")
        rho = (1,) * self.rank
        shifted = tuple(_fr(x) + 1 for x in lam)
        num = Fraction(1)
        for c in self.positive_roots:
            num *= self.pair(shifted, c) / self.pair(rho, c)
        if num.denominator != 1:
            raise ValueError(f"weight {tuple(map(str, lam))} is not integral")
        return int(num)

    def dominant_weights(self, lam: Sequence) -> list[tuple]:
        """Dominant weights of V(lam), by increasing depth below lam."""
        lam = tuple(_fr(x) for x in lam)
        roots = self.positive_roots_dynkin
        seen = {lam}
        layer = [lam]
        while layer:
            nxt = []
            for mu in layer:
                for r in roots:
                    nu = tuple(m - x for m, x in zip(mu, r))
                    if all(x >= 0 for x in nu) and nu not in seen:
                        seen.add(nu)
                        nxt.append(nu)
            layer = nxt
        return sorted(seen, key=lambda mu: (self.height(lam) - self.height(mu), mu))

    def dominant_multiplicities(self, lam: Sequence) -> dict[tuple, int]:
        """Freudenthal's recursion on the dominant weights of V(lam)."""
        lam = tuple(_fr(x) for x in lam)
        rho = tuple(Fraction(1) for _ in lam)
        lam_rho = self.norm(tuple(a + b for a, b in zip(lam, rho)))
        mult: dict[tuple, int] = {}
        roots = list(zip(self.positive_roots, self.positive_roots_dynkin))
        for mu in self.dominant_weights(lam):
            if mu == lam:
                mult[mu] = 1
                continue
            total = Fraction(0)
            for c, r in roots:
                nu = mu
                while True:
                    nu = tuple(a + b for a, b in zip(nu, r))
                    m = mult.get(self.to_dominant(nu), 0)
                    if not m:
                        break
                    total += m * self.pair(nu, c)
            denom = lam_rho - self.norm(tuple(a + b for a, b in zip(mu, rho)))
            value = 2 * total / denom
            if value.denominator != 1:
                raise ArithmeticError(f"non-integral multiplicity at {mu}")
            if value:
                mult[mu] = int(value)
        return mult


def _inverse(M: list[list[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


# ---------------------------------------------------------------------------
# reductive types


_FACTOR_RE = re.compile(r"^(A|B|C|D|G|T)(\d+)$")


@dataclass(frozen=True)
class ReductiveType:
    """Product of simple factors and a torus of rank ``torus``.

    ``torus_names`` label the torus coordinates (default ``chi1, chi2, ...``,
    or just ``chi`` for a one-dimensional torus).
    """

    factors: tuple[SimpleType, ...] = ()
    torus: int = 0
    torus_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.torus_names:
            names = ("chi",) if self.torus == 1 else tuple(f"chi{i + 1}" for i in range(self.torus))
            object.__setattr__(self, "torus_names", names)
        if len(self.torus_names) != self.torus:
            raise ValueError("one name per torus coordinate")

    @classmethod
    def parse(cls, text: str) -> "ReductiveType":
        """Parse ``"B3 x A1 x T1"``; ``T<k>`` adds a torus of rank k."""
        factors, torus = [], 0
        for tok in re.split(r"\s*[x*]\s*", text.strip()):
            if not tok:
                continue
            m = _FACTOR_RE.match(tok.upper())
            if not m:
                raise ValueError(f"bad factor {tok!r}")
            s, n = m.group(1), int(m.group(2))
            if s == "T":
                torus += n
            else:
                factors.append(SimpleType(s, n))
        return cls(tuple(factors), torus)

    def __str__(self) -> str:
        parts = [str(f) for f in self.factors]
        if self.torus:
            parts.append(f"T{self.torus}")
        return " x ".join(parts) if parts else "T0"

    @property
    def semisimple_rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def rank(self) -> int:
        return self.semisimple_rank + self.torus

    @property
    def dimension(self) -> int:
        return sum(f.dimension for f in self.factors) + self.torus

    def slices(self) -> list[slice]:
        out, start = [], 0
        for f in self.factors:
            out.append(slice(start, start + f.rank))
            start += f.rank
        return out

    @property
    def torus_slice(self) -> slice:
        return slice(self.semisimple_rank, self.rank)

    def zero(self) -> Weight:
        return (Fraction(0),) * self.rank

    def is_dominant(self, mu: Weight) -> bool:
        return all(x >= 0 for x in mu[: self.semisimple_rank])

    def height(self, mu: Weight) -> Fraction:
        return sum((f.height(mu[s]) for f, s in zip(self.factors, self.slices())), Fraction(0))

    def check(self, mu: Weight) -> Weight:
        mu = tuple(_fr(x) for x in mu)
        if len(mu) != self.rank:
            raise ValueError(f"weight of length {len(mu)} for type {self} of rank {self.rank}")
        return mu

    def fundamental(self, factor: int, i: int) -> Weight:
        """pi_i of factor ``factor`` (both 1-based)."""
        mu = list(self.zero())
        mu[self.slices()[factor - 1].start + i - 1] = Fraction(1)
        return tuple(mu)

    def format_weight(self, mu: Weight) -> str:
        """Render as ``pi1+pi'2+chi/2``; primes number the factors."""
        terms = []
        for k, (f, s) in enumerate(zip(self.factors, self.slices())):
            prime = "'" * k
            for i, c in enumerate(mu[s]):
                if c:
                    terms.append((c, f"pi{prime}{i + 1}"))
        for name, c in zip(self.torus_names, mu[self.torus_slice]):
            if c:
                terms.append((c, name))
        if not terms:
            return "0"
        out = ""
        for c, name in terms:
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if a.denominator != 1:
                body = f"{name}/{a.denominator}" if a.numerator == 1 else f"{a.numerator}*{name}/{a.denominator}"
            else:
                body = name if a == 1 else f"{a.numerator}*{name}"
            out += sign + body
        return out[1:] if out[0] == "+" else out

    def parse_weight(self, text: str) -> Weight:
        """Inverse of ``format_weight``; also accepts ``pi1@2`` for factor 2."""
        mu = list(self.zero())
        text = text.replace(" ", "")
        if text in ("", "0"):
            return tuple(mu)
        for sign, body in re.findall(r"([+-]?)([^+-]+)", text):
            m = re.fullmatch(r"(?:(\d+)\*)?([a-z]+)('*)(\d*)(?:@(\d+))?(?:/(\d+))?", body)
            if not m:
                raise ValueError(f"bad weight term {body!r}")
            coef = Fraction(int(m.group(1) or 1), int(m.group(6) or 1))
            if sign == "-":
                coef = -coef
            name, primes, idx, at = m.group(2), m.group(3), m.group(4), m.group(5)
            if name == "pi":
                factor = int(at) if at else len(primes) + 1
                if not idx or factor > len(self.factors):
                    raise ValueError(f"bad weight term {body!r}")
                s = self.slices()[factor - 1]
                pos = s.start + int(idx) - 1
                if pos >= s.stop:
                    raise ValueError(f"bad weight term {body!r}")
            else:
                full = name + idx
                if full not in self.torus_names:
                    raise ValueError(f"unknown torus character {full!r}")
                pos = self.semisimple_rank + self.torus_names.index(full)
            mu[pos] += coef
        return tuple(mu)


@dataclass(frozen=True)
class CartanData:
    cartan_matrix: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[int, ...], ...]
    fundamental_weights: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    positive_roots_dynkin: tuple[tuple[int, ...], ...]


def cartan_data(t: SimpleType | ReductiveType) -> list[CartanData]:
    """Bourbaki-numbered data per simple factor.

    Simple roots and fundamental weights are given in Dynkin labels,
    positive roots both in simple-root coordinates and in Dynkin labels.
    """
    factors = (t,) if isinstance(t, SimpleType) else t.factors
    out = []
    for f in factors:
        ident = tuple(tuple(int(i == j) for j in range(f.rank)) for i in range(f.rank))
        out.append(CartanData(f.cartan, f.cartan, ident, f.positive_roots, f.positive_roots_dynkin))
    return out


def weyl_dim(t: ReductiveType, lam: Weight) -> int:
    lam = t.check(lam)
    out = 1
    for f, s in zip(t.factors, t.slices()):
        out *= f.weyl_dim(lam[s])
    return out


# ---------------------------------------------------------------------------
# formal characters


@dataclass(frozen=True)
class FormalCharacter:
    """Weight multiset of a (virtual) module of a reductive type."""

    type: ReductiveType
    weights: Mapping[Weight, int]

    def __post_init__(self):
        clean = {tuple(_fr(x) for x in w): int(m) for w, m in self.weights.items() if m}
        object.__setattr__(self, "weights", clean)

    def __hash__(self):
        return hash((self.type, frozenset(self.weights.items())))

    @property
    def dim(self) -> int:
        return sum(self.weights.values())

    def __add__(self, other: "FormalCharacter") -> "FormalCharacter":
        _same(self, other)
        out = Counter(self.weights)
        for w, m in other.weights.items():
            out[w] = out.get(w, 0) + m
        return FormalCharacter(self.type, out)

    def __mul__(self, other: "FormalCharacter") -> "FormalCharacter":
        _same(self, other)
        out: dict[Weight, int] = {}
        for w1, m1 in self.weights.items():
            for w2, m2 in other.weights.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                out[w] = out.get(w, 0) + m1 * m2
        return FormalCharacter(self.type, out)

    def scaled(self, k: int) -> "FormalCharacter":
        """Adams operation psi^k."""
        return FormalCharacter(self.type, {tuple(k * x for x in w): m for w, m in self.weights.items()})

    def dual(self) -> "FormalCharacter":
        return self.scaled(-1)

    def twist(self, mu: Weight) -> "FormalCharacter":
        return FormalCharacter(self.type, {tuple(a + b for a, b in zip(w, mu)): m
                                           for w, m in self.weights.items()})

    def is_weyl_invariant(self) -> bool:
        for f, s in zip(self.type.factors, self.type.slices()):
            for i in range(f.rank):
                for w, m in self.weights.items():
                    r = w[: s.start] + f.reflect(w[s], i) + w[s.stop:]
                    if self.weights.get(r, 0) != m:
                        return False
        return True


def _same(a: FormalCharacter, b: FormalCharacter) -> None:
    if a.type != b.type:
        raise ValueError(f"characters of different types {a.type} and {b.type}")


def trivial_character(t: ReductiveType) -> FormalCharacter:
    return FormalCharacter(t, {t.zero(): 1})


@lru_cache(maxsize=4096)
def _simple_character(f: SimpleType, lam: tuple) -> tuple[tuple[tuple, int], ...]:
    out = []
    for mu, m in f.dominant_multiplicities(lam).items():
        for nu in f.orbit(mu):
            out.append((nu, m))
    return tuple(out)


def formal_character(t: ReductiveType, lam: Weight, bound: int = DEFAULT_DIM_BOUND) -> FormalCharacter:
    """Character of the irreducible module with highest weight ``lam``."""
    lam = t.check(lam)
    if not t.is_dominant(lam):
        raise ValueError(f"weight {t.format_weight(lam)} is not dominant")
    dim = weyl_dim(t, lam)
    if dim > bound:
        raise ValueError(f"dimension {dim} exceeds bound {bound}")
    pieces = [_simple_character(f, lam[s]) for f, s in zip(t.factors, t.slices())]
    torus = lam[t.torus_slice]
    out: dict[Weight, int] = {}
    for combo in product(*pieces):
        w = sum((nu for nu, _ in combo), ()) + torus
        m = 1
        for _, k in combo:
            m *= k
        out[w] = out.get(w, 0) + m
    return FormalCharacter(t, out)


def decompose(ch: FormalCharacter, bound: int = DEFAULT_DIM_BOUND) -> Counter:
    """Highest weights (with multiplicity) of a genuine character.

    Peels off the weight of maximal height, ties broken lexicographically.
    """
    t = ch.type
    rest = dict(ch.weights)
    out: Counter = Counter()
    heights: dict[Weight, Fraction] = {}

    def key(w):
        if w not in heights:
            heights[w] = t.height(w)
        return (heights[w], w)

    while rest:
        if any(m < 0 for m in rest.values()):
            raise ValueError("not a representation character")
        top = max(rest, key=key)
        if not t.is_dominant(top):
            raise ValueError("not a representation character")
        k = rest[top]
        out[top] += k
        for w, m in formal_character(t, top, bound).weights.items():
            left = rest.get(w, 0) - k * m
            if left:
                rest[w] = left
            else:
                rest.pop(w, None)
    return out


def symmetric_power_character(ch: FormalCharacter, k: int,
                              bound: int = DEFAULT_DIM_BOUND) -> FormalCharacter:
    """S^k via Newton's identity k S^k = sum_{i=1..k} psi^i(V) S^{k-i}."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if comb(ch.dim + k - 1, k) > bound:
        raise ValueError("size bound exceeded")
    powers = [trivial_character(ch.type)]
    for j in range(1, k + 1):
        acc: dict[Weight, Fraction] = {}
        for i in range(1, j + 1):
            for w, m in (ch.scaled(i) * powers[j - i]).weights.items():
                acc[w] = acc.get(w, 0) + m
        weights = {}
        for w, m in acc.items():
            q = Fraction(m, j)
            if q.denominator != 1:
                raise ArithmeticError("Newton recursion produced a fraction")
            if q:
                weights[w] = int(q)
        powers.append(FormalCharacter(ch.type, weights))
    return powers[k]


@dataclass(frozen=True)
class CartanMap:
    """Linear map on weight coordinates: ``target[k] = sum_i source[i] * matrix[i][k]``."""

    source: ReductiveType
    target: ReductiveType
    matrix: tuple[tuple[Fraction, ...], ...]

    def __call__(self, mu: Weight) -> Weight:
        n = self.target.rank
        return tuple(sum((_fr(mu[i]) * row[k] for i, row in enumerate(self.matrix)), Fraction(0))
                     for k in range(n))

    @classmethod
    def identity(cls, t: ReductiveType) -> "CartanMap":
        n = t.rank
        return cls(t, t, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))


def restrict_character(ch: FormalCharacter, m: CartanMap) -> FormalCharacter:
    if ch.type != m.source:
        raise ValueError("character type does not match the map source")
    out: dict[Weight, int] = {}
    for w, k in ch.weights.items():
        v = m(w)
        out[v] = out.get(v, 0) + k
    return FormalCharacter(m.target, out)


def character_of(t: ReductiveType, highest: Iterable[Weight]) -> FormalCharacter:
    """Sum of irreducible characters."""
    out = FormalCharacter(t, {})
    for lam in highest:
        out = out + formal_character(t, lam)
    return out
