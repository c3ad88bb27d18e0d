"""Homomorphism varieties Hom(F_k, G), their conjugation quotients, induced
self-maps, and direct limits realized as eventual images.

A homomorphism F_k -> G is a point of G^k, stored as a tuple of element
indices and addressed by its mixed-radix index in lexicographic order.
The direct limit of a constant sequence of finite sets along a fixed
self-map is the eventual image: the stable set the map eventually
bijects with itself.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import words
from .errors import BudgetError, InputError
from .perms import FiniteGroup
from .words import FreeHom

DEFAULT_POINT_BUDGET = 10_000_000
WORKERS_ENV = "TILEREP_WORKERS"


def point_count(group: FiniteGroup, rank: int, budget: int = DEFAULT_POINT_BUDGET) -> int:
    if rank < 0:
        raise InputError(f"rank must be non-negative, got {rank}")
    n = group.order**rank
    if n > budget:
        raise BudgetError(
            f"enumeration of {group.order}^{rank} = {n} points exceeds the budget of {budget}"
        )
    return n


def point_at(group: FiniteGroup, rank: int, index: int) -> tuple[int, ...]:
    digits = []
    for _ in range(rank):
        index, d = divmod(index, group.order)
        digits.append(d)
    return tuple(reversed(digits))


def point_index(group: FiniteGroup, tup) -> int:
    index = 0
    for d in tup:
        index = index * group.order + d
    return index


def enumerate_homs(
    group: FiniteGroup, rank: int, budget: int = DEFAULT_POINT_BUDGET
) -> list[tuple[int, ...]]:
    """All |G|^rank generator-image tuples, in lexicographic order."""
    n = point_count(group, rank, budget)
    return [point_at(group, rank, i) for i in range(n)]


@dataclass(frozen=True)
class ConjClass:
    """An orbit under simultaneous conjugation, named by its least tuple."""

    canonical: tuple[int, ...]
    orbit_size: int


@dataclass(frozen=True)
class ClassSet:
    """The full partition of G^k into simultaneous-conjugation orbits."""

    classes: tuple[ConjClass, ...]
    class_of: tuple[int, ...]  # point index -> class index

    def __len__(self) -> int:
        return len(self.classes)


def conjugacy_classes(
    group: FiniteGroup, rank: int, budget: int = DEFAULT_POINT_BUDGET
) -> ClassSet:
    """Partition all points into orbits of h . t = (h^-1 t_i h)_i.

    Scanning points in lexicographic order makes the first unvisited point
    of each orbit its canonical representative, so classes come out sorted.
    """
    n = point_count(group, rank, budget)
    order = group.order
    class_of = [-1] * n
    classes = []
    for seed in range(n):
        if class_of[seed] != -1:
            continue
        tup = point_at(group, rank, seed)
        ci = len(classes)
        orbit_size = 0
        for h in range(order):
            conj = tuple(group.conjugate(c, h) for c in tup)
            idx = point_index(group, conj)
            if class_of[idx] == -1:
                class_of[idx] = ci
                orbit_size += 1
        classes.append(ConjClass(tup, orbit_size))
    return ClassSet(tuple(classes), tuple(class_of))


@dataclass(frozen=True)
class SelfMap:
    """A total self-map of {0, ..., size-1} as a successor array."""

    size: int
    image_of: tuple[int, ...]

    def __post_init__(self):
        if len(self.image_of) != self.size:
            raise InputError("successor array length must equal the domain size")

    def compose_with_self(self) -> SelfMap:
        return SelfMap(self.size, tuple(self.image_of[i] for i in self.image_of))


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_point(sigma: FreeHom, group: FiniteGroup, rank: int, index: int) -> int:
    tup = point_at(group, rank, index)
    out = 0
    for image in sigma.images:
        out = out * group.order + words.evaluate(image, group, tup)
    return out


def induced_point_map(
    sigma: FreeHom,
    group: FiniteGroup,
    rank: int,
    budget: int = DEFAULT_POINT_BUDGET,
    workers: int | None = None,
) -> SelfMap:
    """Precomposition with sigma as a self-map of G^rank.

    Point t goes to the tuple whose i-th entry is sigma's i-th generator
    image evaluated at t.
    """
    if sigma.source_rank != rank or sigma.target_rank != rank:
        raise InputError(
            f"need a self-map of F_{rank}, got {sigma.source_rank} -> {sigma.target_rank}"
        )
    n = point_count(group, rank, budget)
    workers = _worker_count() if workers is None else max(1, workers)
    if workers == 1 or n < 2:
        image_of = tuple(_map_point(sigma, group, rank, i) for i in range(n))
        return SelfMap(n, image_of)
    # Disjoint index ranges keep the result identical to the sequential one.
    bounds = [(n * w) // workers for w in range(workers + 1)]
    def chunk(lo, hi):
        return [_map_point(sigma, group, rank, i) for i in range(lo, hi)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(chunk, bounds[:-1], bounds[1:])
        image_of = tuple(x for part in parts for x in part)
    return SelfMap(n, image_of)


def induced_class_map(
    sigma: FreeHom,
    group: FiniteGroup,
    class_set: ClassSet,
) -> SelfMap:
    """The descent of the point map to conjugacy classes.

    Precomposition commutes with simultaneous conjugation, so mapping any
    representative gives the same class; the canonical one is used.
    """
    rank = len(class_set.classes[0].canonical)
    if sigma.source_rank != rank or sigma.target_rank != rank:
        raise InputError(
            f"need a self-map of F_{rank}, got {sigma.source_rank} -> {sigma.target_rank}"
        )
    image_of = []
    for cls in class_set.classes:
        idx = _map_point(sigma, group, rank, point_index(group, cls.canonical))
        image_of.append(class_set.class_of[idx])
    return SelfMap(len(class_set.classes), tuple(image_of))


@dataclass(frozen=True)
class EventualImage:
    """The stable image of a self-map, with its restricted permutation.

    members are sorted domain indices; restricted[i] is the image of
    members[i] (always another member, and a bijection of members).
    """

    members: tuple[int, ...]
    restricted: tuple[int, ...]
    steps_to_stabilize: int
    transient_count: int

    @property
    def size(self) -> int:
        return len(self.members)


def eventual_image(m: SelfMap) -> EventualImage:
    """Iterate image sets to the least N with m^N(X) = m^(N+1)(X).

    Successive images are nested, so each round either stabilizes or
    strictly shrinks; termination within |X| rounds is guaranteed.
    """
    current = frozenset(range(m.size))
    steps = 0
    while True:
        nxt = frozenset(m.image_of[i] for i in current)
        if nxt == current:
            break
        current = nxt
        steps += 1
    members = tuple(sorted(current))
    return EventualImage(
        members=members,
        restricted=tuple(m.image_of[i] for i in members),
        steps_to_stabilize=steps,
        transient_count=m.size - len(members),
    )


def based_limit(
    sigma: FreeHom,
    group: FiniteGroup,
    rank: int,
    budget: int = DEFAULT_POINT_BUDGET,
    workers: int | None = None,
) -> EventualImage:
    """Direct limit of the full homomorphism sets along precomposition."""
    return eventual_image(induced_point_map(sigma, group, rank, budget, workers))


def class_limit(
    sigma: FreeHom,
    group: FiniteGroup,
    rank: int,
    budget: int = DEFAULT_POINT_BUDGET,
) -> tuple[ClassSet, EventualImage]:
    """Direct limit of the conjugation quotients along precomposition."""
    class_set = conjugacy_classes(group, rank, budget)
    return class_set, eventual_image(induced_class_map(sigma, group, class_set))
