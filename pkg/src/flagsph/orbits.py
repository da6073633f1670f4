"""Nilpotent orbits of sp/so, Richardson orbits of flag varieties and the
poset of nil-equivalence classes of flag varieties."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .partitions import (
    DEFAULT_ENUMERATION_BOUND,
    Composition,
    Partition,
    collapse,
    dominates,
    dual,
    enumerate_partitions,
    is_symmetric,
    is_very_even,
    symmetric_compositions,
)


class Kind(enum.Enum):
    SYMPLECTIC = "sp"
    ORTHOGONAL = "so"


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"
    NONE = ""
    UNRESOLVED = "?"


@dataclass(frozen=True)
class GroupKind:
    kind: Kind
    dim: int

    def __post_init__(self):
        if self.kind is Kind.SYMPLECTIC and (self.dim < 2 or self.dim % 2):
            raise ValueError(f"sp needs even dimension >= 2, got {self.dim}")
        if self.kind is Kind.ORTHOGONAL and self.dim < 3:
            raise ValueError(f"so needs dimension >= 3, got {self.dim}")

    @classmethod
    def parse(cls, group: str, dim: int) -> "GroupKind":
        return cls(Kind(group.lower()), int(dim))

    @property
    def epsilon(self) -> int:
        return -1 if self.kind is Kind.SYMPLECTIC else 1

    @property
    def rank(self) -> int:
        return self.dim // 2

    def __str__(self) -> str:
        return f"{self.kind.value}({self.dim})"


@dataclass(frozen=True)
class OrbitLabel:
    partition: Partition
    sign: Sign = Sign.NONE

    def __str__(self) -> str:
        return f"{self.partition}{self.sign.value}"


@dataclass(frozen=True)
class FlagDescriptor:
    group: GroupKind
    composition: Composition
    sign: Sign = Sign.NONE

    def __post_init__(self):
        comp = self.composition
        if comp.total != self.group.dim:
            raise ValueError(f"composition {comp} does not total {self.group.dim}")
        if not is_symmetric(comp):
            raise ValueError(f"composition {comp} is not symmetric")
        needs = needs_sign(self.group, comp)
        if needs and self.sign not in (Sign.PLUS, Sign.MINUS):
            raise ValueError(f"flag {comp} in {self.group} needs a sign")
        if not needs and self.sign is not Sign.NONE:
            raise ValueError(f"flag {comp} in {self.group} takes no sign")

    @property
    def trivial(self) -> bool:
        return len(self.composition) == 1

    def __str__(self) -> str:
        return f"{self.composition}{self.sign.value}"


def needs_sign(g: GroupKind, comp: Composition) -> bool:
    p = len(comp)
    return (g.kind is Kind.ORTHOGONAL and g.dim % 2 == 0 and p % 2 == 0
            and comp[p // 2 - 1] >= 2)


def _check_bound(g: GroupKind, bound: int) -> None:
    if g.dim > bound:
        raise ValueError("enumeration bound exceeded")


def orbit_labels(g: GroupKind, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[OrbitLabel]:
    out = []
    for a in enumerate_partitions(g.dim, g.epsilon, bound):
        if g.kind is Kind.ORTHOGONAL and is_very_even(a):
            out += [OrbitLabel(a, Sign.PLUS), OrbitLabel(a, Sign.MINUS)]
        else:
            out.append(OrbitLabel(a))
    return out


def closure_leq(g: GroupKind, o1: OrbitLabel, o2: OrbitLabel) -> bool:
    """Closure order; the two orbits of one very even partition are incomparable."""
    for o in (o1, o2):
        if o.partition.total != g.dim:
            raise ValueError(f"orbit {o} does not belong to {g}")
    if o1 == o2:
        return True
    if o1.partition == o2.partition:
        return False
    return dominates(o1.partition, o2.partition)


def richardson(f: FlagDescriptor) -> OrbitLabel:
    a = collapse(dual(f.composition), f.group.epsilon)
    if f.group.kind is Kind.ORTHOGONAL and is_very_even(a):
        return OrbitLabel(a, Sign.UNRESOLVED)
    return OrbitLabel(a)


def _class_key(f: FlagDescriptor) -> tuple[Partition, Sign]:
    r = richardson(f)
    # An unresolved very even orbit is told apart by the sign of the flag.
    if r.sign is Sign.UNRESOLVED:
        return (r.partition, f.sign)
    return (r.partition, Sign.NONE)


def nil_equivalent(f1: FlagDescriptor, f2: FlagDescriptor) -> bool:
    if f1.group != f2.group:
        raise ValueError("flags belong to different groups")
    return _class_key(f1) == _class_key(f2)


def flag_to_index_set(f: FlagDescriptor) -> frozenset[int]:
    """The subset I of simple roots with X_I isomorphic to the flag variety."""
    if f.trivial:
        raise ValueError("trivial flag variety")
    a = f.composition.parts
    p = len(a)
    n = f.group.rank
    sums = [sum(a[: i + 1]) for i in range(p // 2)]
    if f.group.kind is Kind.SYMPLECTIC or f.group.dim % 2:
        return frozenset(sums)
    if p % 2:
        if a[p // 2] >= 4:
            return frozenset(sums)
        return frozenset(sums[:-1] + [n - 1, n])
    q = p // 2
    if a[q - 1] == 1:
        return frozenset(sums[: q - 1] + [n - 1, n])
    return frozenset(sums[: q - 1] + [n if f.sign is Sign.PLUS else n - 1])


def enumerate_flags(g: GroupKind, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[FlagDescriptor]:
    _check_bound(g, bound)
    out = []
    for comp in symmetric_compositions(g.dim, bound):
        if len(comp) == 1:
            continue
        if needs_sign(g, comp):
            out += [FlagDescriptor(g, comp, Sign.PLUS), FlagDescriptor(g, comp, Sign.MINUS)]
        else:
            out.append(FlagDescriptor(g, comp))
    return out


@dataclass(frozen=True)
class NilClass:
    """A nil-equivalence class of flag varieties.

    ``members`` holds one descriptor per distinct variety X_I (compositions
    naming the same X_I are merged).  Grassmannians come first, then the
    rest in lexicographic order of compositions.
    """

    key: tuple[Partition, Sign]
    members: tuple[FlagDescriptor, ...]
    index_sets: tuple[frozenset[int], ...]

    @property
    def partition(self) -> Partition:
        return self.key[0]

    @property
    def sign(self) -> Sign:
        return self.key[1]

    @property
    def representative(self) -> FlagDescriptor:
        return self.members[0]

    @property
    def label(self) -> str:
        return f"{self.partition}{self.sign.value}"


@dataclass(frozen=True)
class FlagPoset:
    group: GroupKind
    classes: tuple[NilClass, ...]
    # pairs (i, j) with classes[i] strictly below classes[j]
    order: frozenset[tuple[int, int]] = field(repr=False)

    def less(self, i: int, j: int) -> bool:
        return (i, j) in self.order

    def covers(self) -> list[tuple[int, int]]:
        n = len(self.classes)
        return sorted((i, j) for i, j in self.order
                      if not any((i, k) in self.order and (k, j) in self.order for k in range(n)))

    def minimal(self) -> list[NilClass]:
        return [c for j, c in enumerate(self.classes)
                if not any((i, j) in self.order for i in range(len(self.classes)))]

    def class_of(self, f: FlagDescriptor) -> NilClass:
        key = _class_key(f)
        for c in self.classes:
            if c.key == key:
                return c
        raise KeyError(str(f))

    def to_dot(self) -> str:
        lines = [f'digraph "{self.group}" {{', "  rankdir=BT;"]
        for i, c in enumerate(self.classes):
            flags = ", ".join(str(m) for m in c.members)
            lines.append(f'  c{i} [label="{c.label}\\n{flags}"];')
        for i, j in self.covers():
            lines.append(f"  c{i} -> c{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _member_key(f: FlagDescriptor):
    return (len(f.composition) > 3, f.composition.parts, f.sign is not Sign.PLUS)


def flag_poset(g: GroupKind, bound: int = DEFAULT_ENUMERATION_BOUND) -> FlagPoset:
    groups: dict[tuple[Partition, Sign], list[FlagDescriptor]] = {}
    for f in enumerate_flags(g, bound):
        groups.setdefault(_class_key(f), []).append(f)
    classes = []
    for key, flags in groups.items():
        seen: dict[frozenset[int], FlagDescriptor] = {}
        for f in sorted(flags, key=_member_key):
            seen.setdefault(flag_to_index_set(f), f)
        classes.append(NilClass(key, tuple(seen.values()), tuple(seen.keys())))
    order = set()
    for i, c1 in enumerate(classes):
        for j, c2 in enumerate(classes):
            if c1.partition != c2.partition and dominates(c1.partition, c2.partition):
                order.add((i, j))
    return FlagPoset(g, tuple(classes), frozenset(order))


def minimal_classes(g: GroupKind, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[NilClass]:
    return flag_poset(g, bound).minimal()


def grassmannian(g: GroupKind, k: int, sign: Sign = Sign.NONE) -> FlagDescriptor:
    """The isotropic Grassmannian of k-dimensional subspaces."""
    d = g.dim
    if 2 * k == d:
        return FlagDescriptor(g, Composition((k, k)), sign)
    return FlagDescriptor(g, Composition((k, d - 2 * k, k)), sign)
