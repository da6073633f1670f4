"""Compositions, partitions and the parity classes P_eps(d).

Everything here is an immutable value.  Partitions never store trailing
zeros; the few algorithms that want ``a_i = 0`` for ``i > len(a)`` pad
locally.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import accumulate
from typing import Iterable, Iterator, Sequence

DEFAULT_ENUMERATION_BOUND = 30


@dataclass(frozen=True)
class Composition:
    """An ordered tuple of positive integers."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"composition parts must be positive: {parts}")
        if not parts:
            raise ValueError("empty composition")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_exponents(cls, pairs: Iterable[tuple[int, int]]) -> "Partition":
        """Build from ``[(b_1, k_1), (b_2, k_2), ...]``, i.e. ``[b_1^k_1, ...]``."""
        parts = []
        for b, k in pairs:
            parts.extend([b] * k)
        return cls(sorted(parts, reverse=True))

    @classmethod
    def sorted_from(cls, parts: Iterable[int]) -> "Partition":
        return cls(sorted((p for p in parts if p), reverse=True))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def exponents(self) -> list[tuple[int, int]]:
        counts = Counter(self.parts)
        return sorted(counts.items(), reverse=True)

    def padded(self, length: int) -> tuple[int, ...]:
        return self.parts + (0,) * max(0, length - len(self.parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"


@dataclass(frozen=True)
class ParityClass:
    """``eps = -1`` is the symplectic class, ``eps = +1`` the orthogonal one."""

    epsilon: int

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError(f"epsilon must be +1 or -1, got {self.epsilon!r}")

    def __int__(self) -> int:
        return self.epsilon


SYMPLECTIC = ParityClass(-1)
ORTHOGONAL = ParityClass(1)


def _eps(eps: ParityClass | int) -> int:
    return eps.epsilon if isinstance(eps, ParityClass) else ParityClass(int(eps)).epsilon


def _parts(c) -> tuple[int, ...]:
    return tuple(c.parts) if isinstance(c, (Composition, Partition)) else tuple(c)


def is_symmetric(c: Composition | Sequence[int]) -> bool:
    parts = _parts(c)
    return parts == parts[::-1]


def dual(c: Composition | Partition | Sequence[int]) -> Partition:
    """The dual partition: its i-th part counts the parts that are >= i."""
    parts = _parts(c)
    if not parts:
        return Partition(())
    return Partition(sum(1 for a in parts if a >= i) for i in range(1, max(parts) + 1))


def dominates(a: Partition, b: Partition) -> bool:
    """True iff ``a`` is below or equal to ``b`` in the dominance order."""
    if a.total != b.total:
        raise ValueError("incomparable totals")
    n = max(len(a), len(b))
    return all(x <= y for x, y in zip(accumulate(a.padded(n)), accumulate(b.padded(n))))


def strictly_dominated(a: Partition, b: Partition) -> bool:
    return a != b and dominates(a, b)


def _in_class(parts: Sequence[int], eps: int) -> bool:
    # eps = -1: odd parts need even multiplicity; eps = +1: even parts do.
    bad_parity = 1 if eps == -1 else 0
    counts = Counter(parts)
    return all(k % 2 == 0 for b, k in counts.items() if b % 2 == bad_parity)


def in_parity_class(a: Partition | Sequence[int], eps: ParityClass | int) -> bool:
    return _in_class(_parts(a), _eps(eps))


def is_very_even(a: Partition | Sequence[int]) -> bool:
    parts = _parts(a)
    return all(p % 2 == 0 for p in parts) and _in_class(parts, 1)


def collapse(a: Partition, eps: ParityClass | int) -> Partition:
    """The eps-collapse: the largest element of P_eps(d) dominated by ``a``.

    The loop is the classical step-by-step construction; no closed formula
    is used.  For eps = -1 and odd d the class is empty and ValueError is
    raised.
    """
    e = _eps(eps)
    if e == -1 and a.total % 2:
        raise ValueError(f"P_-1({a.total}) is empty: odd total")
    parts = list(a.parts)
    while not _in_class(parts, e):
        m = 0
        for i in range(1, len(parts) + 1):
            if _in_class(parts[:i], e):
                m = i
        # zero padding: a zero part has even parity
        j = m + 1  # 0-based index of a_{m+2}
        while True:
            value = parts[j] if j < len(parts) else 0
            if e * (-1) ** value == 1:
                break
            j += 1
        padded = parts + [0] * (j + 1 - len(parts))
        padded[m] -= 1
        padded[j] += 1
        parts = [p for p in padded if p]
    return Partition(parts)


@lru_cache(maxsize=None)
def _all_partitions(d: int) -> tuple[tuple[int, ...], ...]:
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, cap: int, prefix: list[int]):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(cap, remaining), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(d, d, [])
    return tuple(out)


def enumerate_partitions(d: int, eps: ParityClass | int | None = None,
                         bound: int = DEFAULT_ENUMERATION_BOUND) -> list[Partition]:
    """All partitions of ``d`` in reverse lexicographic order, optionally filtered to P_eps(d)."""
    if d < 1:
        raise ValueError("d must be positive")
    if d > bound:
        raise ValueError("enumeration bound exceeded")
    parts = _all_partitions(d)
    if eps is not None:
        e = _eps(eps)
        parts = [p for p in parts if _in_class(p, e)]
    return [Partition(p) for p in parts]


def symmetric_compositions(d: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[Composition]:
    """All palindromic compositions of ``d``, shortest first."""
    if d < 1:
        raise ValueError("d must be positive")
    if d > bound:
        raise ValueError("enumeration bound exceeded")
    out = []

    def halves(total: int) -> Iterator[tuple[int, ...]]:
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in halves(total - first):
                yield (first,) + rest

    for middle in range(d, -1, -1):
        if (d - middle) % 2:
            continue
        for half in halves((d - middle) // 2):
            parts = half + ((middle,) if middle else ()) + half[::-1]
            out.append(Composition(parts))
    out.sort(key=lambda c: (len(c), tuple(-p for p in c.parts)))
    return out


def parse_parts(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.replace(" ", "").strip("[]()").split(",") if t)
