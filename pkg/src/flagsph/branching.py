"""Restriction of irreducible G-modules to H and generators of the monoid
Gamma_I(G, H) of pairs (lambda; mu) with lambda supported on I."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from . import linalg as la
from .embeddings import EmbeddedSubgroup, ModuleAction, realize_modules
from .orbits import Kind
from .rootdata import (
    DEFAULT_DIM_BOUND,
    ReductiveType,
    Weight,
    decompose,
    formal_character,
    restrict_character,
    weyl_dim,
)
from .sphericity import DEFAULT_TRIALS, branching_rank, weight_monoid

DEFAULT_DEGREE_BOUND = 4


@dataclass(frozen=True)
class BranchPair:
    lam: Weight
    mu: Weight

    @property
    def degree(self) -> int:
        return int(sum(self.lam))

    def vector(self) -> tuple[Fraction, ...]:
        return tuple(self.lam) + tuple(self.mu)

    def format(self, g: ReductiveType, h: ReductiveType) -> str:
        return f"({g.format_weight(self.lam)};{h.format_weight(self.mu)})"


@dataclass(frozen=True)
class BranchingMonoid:
    g_type: ReductiveType
    h_type: ReductiveType
    generators: tuple[BranchPair, ...]
    rank: int
    complete: bool

    def formatted(self) -> list[str]:
        return [p.format(self.g_type, self.h_type) for p in self.generators]

    def independent(self) -> bool:
        return la.rank([p.vector() for p in self.generators]) == len(self.generators)


def _as_weight(t: ReductiveType, lam) -> Weight:
    if isinstance(lam, str):
        return t.parse_weight(lam)
    return t.check(lam)


def restrict_irrep(e: EmbeddedSubgroup, lam, bound: int = DEFAULT_DIM_BOUND) -> Counter:
    """Highest weights (with multiplicity) of R_G(lambda) restricted to H."""
    g = e.ambient.type
    lam = _as_weight(g, lam)
    if not g.is_dominant(lam) or any(x.denominator != 1 for x in lam):
        raise ValueError("lambda must be dominant integral")
    ch = formal_character(g, lam, bound)
    return decompose(restrict_character(ch, e.cartan_map), bound)


def restriction_dims(e: EmbeddedSubgroup, lam, parts: Optional[Counter] = None) -> tuple[int, int]:
    """(dim R_G(lambda), sum of dims of the H-constituents)."""
    g = e.ambient.type
    lam = _as_weight(g, lam)
    parts = restrict_irrep(e, lam) if parts is None else parts
    return weyl_dim(g, lam), sum(k * weyl_dim(e.h_type, mu) for mu, k in parts.items())


def is_multiplicity_free(e: EmbeddedSubgroup, lam) -> bool:
    return all(k == 1 for k in restrict_irrep(e, lam).values())


def weights_on(I: Iterable[int], rank: int, total: int) -> Iterator[Weight]:
    """Dominant weights supported on I with coefficient sum ``total``, lexicographically."""
    I = sorted(I)
    for coeffs in product(range(total + 1), repeat=len(I)):
        if sum(coeffs) != total:
            continue
        lam = [Fraction(0)] * rank
        for i, c in zip(I, coeffs):
            lam[i - 1] = Fraction(c)
        yield tuple(lam)


def _decomposable(target: tuple, gens: Sequence[tuple], degs: Sequence[int], degree: int) -> bool:
    """Is target a sum of at least two generators (with repetition)?"""

    @lru_cache(maxsize=None)
    def reach(vec: tuple, start: int, left: int) -> bool:
        if left == 0:
            return not any(vec)
        for j in range(start, len(gens)):
            if degs[j] > left:
                continue
            rest = tuple(a - b for a, b in zip(vec, gens[j]))
            if reach(rest, j, left - degs[j]):
                return True
        return False

    return reach(tuple(target), 0, degree)


def gamma_generators(e: EmbeddedSubgroup, I, expected_rank: Optional[int] = None,
                     degree_bound: int = DEFAULT_DEGREE_BOUND, trials: int = DEFAULT_TRIALS,
                     seed: int = 0) -> BranchingMonoid:
    """Indecomposable elements of Gamma_I(G, H), by increasing coefficient sum of lambda.

    A pair is kept when it is not a sum of pairs found at lower degree.
    The search stops once ``expected_rank`` generators are found (the
    monoid is free) or after ``degree_bound``.
    """
    I = e.ambient.check_index_set(I)
    if expected_rank is None:
        expected_rank = branching_rank(e, I, trials, seed)
    n = e.ambient.rank
    gens: list[BranchPair] = []
    for total in range(1, degree_bound + 1):
        if len(gens) >= expected_rank:
            break
        found = []
        vecs = tuple(p.vector() for p in gens)
        degs = tuple(p.degree for p in gens)
        for lam in weights_on(I, n, total):
            for mu in sorted(restrict_irrep(e, lam), key=lambda w: (e.h_type.height(w), w)):
                pair = BranchPair(lam, mu)
                if not _decomposable(pair.vector(), vecs, degs, total):
                    found.append(pair)
        gens.extend(found)
    return BranchingMonoid(e.ambient.type, e.h_type, tuple(gens), expected_rank, len(gens) == expected_rank)


def multiplicity_witness(e: EmbeddedSubgroup, I, max_sum: int = 3) -> Optional[tuple[Weight, Counter]]:
    """First lambda supported on I (by coefficient sum) whose restriction has multiplicities."""
    I = e.ambient.check_index_set(I)
    for total in range(1, max_sum + 1):
        for lam in weights_on(I, e.ambient.rank, total):
            parts = restrict_irrep(e, lam)
            if any(k > 1 for k in parts.values()):
                return lam, parts
    return None


# ---------------------------------------------------------------------------
# I = {1} via weight monoids of V


def scaled_module(e: EmbeddedSubgroup, parts: Optional[Sequence[int]] = None) -> ModuleAction:
    """V as a module of H x (F^x)^r, the i-th scalar factor acting on the i-th part.

    ``parts`` gives the number of summands in each part (default: all of V
    is one part).
    """
    spec = e.spec
    counts = list(parts) if parts is not None else [len(spec.summands)]
    if sum(counts) != len(spec.summands) or any(c < 1 for c in counts):
        raise ValueError("parts must split the summands")
    algebra, actions, _ = realize_modules(spec)
    h = algebra.type
    r = len(counts)
    names = tuple(h.torus_names) + (("delta",) if r == 1 else tuple(f"delta{i + 1}" for i in range(r)))
    t = ReductiveType(h.factors, h.torus + r, names)
    blocks = [la.block_diag([a[i] for a in actions]) for i in range(algebra.dim)]
    dim = blocks[0].nrows()
    owner = []
    for part, c in enumerate(counts):
        start = sum(counts[:part])
        for s in range(start, start + c):
            owner += [part] * actions[s][0].nrows()
    scalars = [la.diagonal([int(o == p) for o in owner]) for p in range(r)]
    cartan = [blocks[i] for i in algebra.cartan_indices()] + scalars
    return ModuleAction(t, dim, blocks + scalars, cartan, algebra.positive_indices(), label=str(spec))


def rbm_via_weight_monoid(e: EmbeddedSubgroup, parts: Optional[Sequence[int]] = None,
                          max_degree: int = DEFAULT_DEGREE_BOUND, trials: int = DEFAULT_TRIALS,
                          seed: int = 0) -> BranchingMonoid:
    """Gamma_{1}(G, H) from the weight monoid of V* under H x (F^x)^r.

    mu + sum k_i delta_i maps to ((sum k_i) pi_1; mu).  For an orthogonal
    G with V taken as one part, 2 delta is dropped.
    """
    V = scaled_module(e, parts)
    r = V.type.torus - e.h_type.torus
    dual = ModuleAction(V.type, V.dim, [-X.transpose() for X in V.elements],
                        [-X.transpose() for X in V.cartan], V.positive)
    wm = weight_monoid(dual, max_degree, trials=trials, seed=seed)
    n = e.ambient.rank
    h_rank = e.h_type.rank
    out: list[BranchPair] = []
    drop_2delta = e.ambient.group.kind is Kind.ORTHOGONAL and r == 1
    for w in wm.generators:
        mu, ks = tuple(w[:h_rank]), w[h_rank:]
        k = sum(ks)
        if drop_2delta and not any(mu) and k == 2:
            continue
        lam = tuple(Fraction(k) if i == 0 else Fraction(0) for i in range(n))
        pair = BranchPair(lam, mu)
        if pair not in out:
            out.append(pair)
    return BranchingMonoid(e.ambient.type, e.h_type, tuple(out), len(out), wm.complete)
