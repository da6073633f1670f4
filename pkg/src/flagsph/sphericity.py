"""Generic-point sphericity tests for flag varieties and modules, and ranks.

A Spherical verdict is certified: a rational point with an open Borel
orbit was found.  NotSphericalLikely means no such point turned up among
the sampled ones.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Optional, Union

from flint import fmpq, fmpq_mat

from . import linalg as la
from .embeddings import EmbeddedSubgroup, ModuleAction, quotient_module
from .rootdata import FormalCharacter, ReductiveType, decompose, symmetric_power_character

DEFAULT_TRIALS = 8
COEFF_RANGE = 9


class Status(enum.Enum):
    SPHERICAL = "Spherical"
    NOT_SPHERICAL_LIKELY = "NotSphericalLikely"


@dataclass(frozen=True)
class SphericityVerdict:
    status: Status
    witness_rank: int
    target_rank: int
    trials_used: int
    seed: int
    reason: str = "rank test"

    @property
    def spherical(self) -> bool:
        return self.status is Status.SPHERICAL

    def to_dict(self) -> dict:
        return {"status": self.status.value, "witness_rank": self.witness_rank,
                "target_rank": self.target_rank, "trials_used": self.trials_used,
                "seed": self.seed, "reason": self.reason}


def _trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"{seed}/{trial}")


def _check_trials(trials: int) -> None:
    if trials <= 0:
        raise ValueError("trials must be positive")


def random_group_element(e: EmbeddedSubgroup, rng: random.Random) -> tuple[fmpq_mat, fmpq_mat]:
    """A product of root exponentials exp(c E) and its inverse."""
    roots = [x.matrix for x in e.ambient.elements if x.kind == "root"]
    n_pos = len(roots) // 2
    d = e.ambient.d
    g, ginv = la.identity(d), la.identity(d)
    for _ in range(2 * n_pos):
        E = rng.choice(roots)
        c = fmpq(rng.randint(-COEFF_RANGE, COEFF_RANGE))
        if c == 0:
            continue
        g = g * la.exp_nilpotent(E * c)
        ginv = la.exp_nilpotent(E * (-c)) * ginv
    return g, ginv


def flag_rank(e: EmbeddedSubgroup, I, g: Optional[fmpq_mat] = None, ginv: Optional[fmpq_mat] = None) -> int:
    """dim of the image of Ad(g^-1) b_H in g / p_I^-."""
    u = e.ambient.u_indices(I)
    rows = []
    for X in e.borel():
        Y = X if g is None else ginv * X * g
        c = e.ambient.coords(Y)
        rows.append([c[k] for k in u])
    return la.rank(rows)


def is_spherical_flag(e: EmbeddedSubgroup, I, trials: int = DEFAULT_TRIALS, seed: int = 0,
                      shortcut: bool = True) -> SphericityVerdict:
    """Open B_H-orbit test on X_I; ``shortcut`` rejects at once when dim B_H < dim X_I."""
    _check_trials(trials)
    I = e.ambient.check_index_set(I)
    if not I:
        raise ValueError("index set must be nonempty")
    target = e.ambient.flag_dim(I)
    dim_b = len(e.borel())
    if shortcut and dim_b < target:
        return SphericityVerdict(Status.NOT_SPHERICAL_LIKELY, dim_b, target, 0, seed,
                                 reason=f"dimension: dim B_H = {dim_b} < {target} = dim X_I")
    best = 0
    for t in range(trials):
        if t == 0:
            r = flag_rank(e, I)
        else:
            g, ginv = random_group_element(e, _trial_rng(seed, t))
            r = flag_rank(e, I, g, ginv)
        best = max(best, r)
        if r == target:
            return SphericityVerdict(Status.SPHERICAL, r, target, t + 1, seed)
    return SphericityVerdict(Status.NOT_SPHERICAL_LIKELY, best, target, trials, seed)


def natural_module(e: EmbeddedSubgroup) -> ModuleAction:
    """F^d as a module of h."""
    sub = e.sub
    mats = e.matrices()
    cartan = [mats[i] for i in sub.cartan_indices()]
    return ModuleAction(sub.type, e.ambient.d, mats, cartan, sub.positive_indices(), label=str(e.spec))


def _as_module(m: Union[ModuleAction, EmbeddedSubgroup]) -> ModuleAction:
    return natural_module(m) if isinstance(m, EmbeddedSubgroup) else m


def _random_vector(n: int, rng: random.Random) -> list[fmpq]:
    return [fmpq(rng.randint(-COEFF_RANGE, COEFF_RANGE)) for _ in range(n)]


def _orbit_rank(mats: list[fmpq_mat], v: list[fmpq]) -> int:
    if not mats:
        return 0
    col = fmpq_mat(len(v), 1, v)
    return la.rank([list((X * col).entries()) for X in mats])


def is_spherical_module(m: Union[ModuleAction, EmbeddedSubgroup], trials: int = DEFAULT_TRIALS,
                        seed: int = 0) -> SphericityVerdict:
    _check_trials(trials)
    m = _as_module(m)
    n = m.dim
    if n == 0:
        return SphericityVerdict(Status.SPHERICAL, 0, 0, 0, seed, reason="zero module")
    b = m.borel()
    if len(b) < n:
        return SphericityVerdict(Status.NOT_SPHERICAL_LIKELY, len(b), n, 0, seed,
                                 reason=f"dimension: dim b = {len(b)} < {n} = dim V")
    best = 0
    for t in range(trials):
        v = _random_vector(n, _trial_rng(seed, t))
        r = _orbit_rank(b, v)
        best = max(best, r)
        if r == n:
            return SphericityVerdict(Status.SPHERICAL, r, n, t + 1, seed)
    return SphericityVerdict(Status.NOT_SPHERICAL_LIKELY, best, n, trials, seed)


def module_rank(m: Union[ModuleAction, EmbeddedSubgroup], trials: int = DEFAULT_TRIALS, seed: int = 0) -> int:
    """dim V minus the generic dimension of n_M . v."""
    m = _as_module(m)
    verdict = is_spherical_module(m, trials, seed)
    if not verdict.spherical:
        raise ValueError("module is not spherical")
    if m.dim == 0:
        return 0
    nil = m.nilradical()
    best = 0
    for t in range(trials):
        v = _random_vector(m.dim, _trial_rng(seed, t))
        best = max(best, _orbit_rank(nil, v))
    return m.dim - best


def branching_rank(e: EmbeddedSubgroup, I, trials: int = DEFAULT_TRIALS, seed: int = 0) -> int:
    """|I| + rank of the M-module g/(p_I^- + h)."""
    I = e.ambient.check_index_set(I)
    if not is_spherical_flag(e, I, trials, seed).spherical:
        raise ValueError("flag variety is not spherical")
    q = quotient_module(e, I)
    return len(I) + module_rank(q.action, trials, seed)


# ---------------------------------------------------------------------------
# weight monoids


@dataclass(frozen=True)
class WeightMonoid:
    type: ReductiveType
    generators: tuple  # weights, in order of discovery
    degrees: tuple[int, ...]
    rank: Optional[int]
    complete: bool

    def formatted(self) -> list[str]:
        return [self.type.format_weight(w) for w in self.generators]


def _sums(a: set, b: set) -> set:
    return {tuple(x + y for x, y in zip(u, v)) for u in a for v in b}


def weight_monoid(m: Union[ModuleAction, FormalCharacter], max_degree: int = 4,
                  rank: Optional[int] = None, trials: int = DEFAULT_TRIALS, seed: int = 0) -> WeightMonoid:
    """Indecomposable highest weights of F[V] = S(V*) up to ``max_degree``.

    With a module action the rank is computed (and sphericity checked);
    with a bare character it may be supplied.  The search stops as soon
    as ``rank`` generators are found; the result is complete then.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    if isinstance(m, ModuleAction):
        if rank is None:
            rank = module_rank(m, trials, seed)
        ch = m.character()
    else:
        ch = m
    dual = ch.dual()
    if ch.dim == 0:
        return WeightMonoid(ch.type, (), (), 0, True)
    by_degree: dict[int, set] = {}
    gens, degs = [], []
    for k in range(1, max_degree + 1):
        if rank is not None and len(gens) >= rank:
            break
        highest = set(decompose(symmetric_power_character(dual, k)))
        reachable = set()
        for i in range(1, k // 2 + 1):
            reachable |= _sums(by_degree[i], by_degree[k - i])
        by_degree[k] = highest
        for w in sorted(highest - reachable, key=lambda w: (ch.type.height(w), w)):
            gens.append(w)
            degs.append(k)
    complete = rank is not None and len(gens) == rank
    return WeightMonoid(ch.type, tuple(gens), tuple(degs), rank, complete)
