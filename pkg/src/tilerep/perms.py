"""Finite permutation groups with dense index tables.

Elements are referred to by index into a canonically ordered element list
(identity first, the rest sorted lexicographically by their images arrays),
so every downstream computation works on plain integers.  The composition
convention is fixed globally: ``mul(g, h)`` applies g first, then h, so
products read left to right.
"""

from __future__ import annotations

import itertools
import math
import re
from array import array
from dataclasses import dataclass

from .errors import BudgetError, InputError, ParseError

DEFAULT_ORDER_CAP = 10080
SYMMETRIC_DEGREE_CAP = 8


@dataclass(frozen=True)
class Perm:
    """A permutation of {0, ..., degree-1}, stored as its images array."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise InputError(f"not a permutation of 0..{n - 1}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def then(self, other: Perm) -> Perm:
        """Composite permutation: apply self first, then other."""
        return Perm(tuple(other.images[i] for i in self.images))

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycle_string(self) -> str:
        """Disjoint-cycle notation on 1-based points; identity prints as 'e'."""
        seen = [False] * self.degree
        parts = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cycle = [start]
            seen[start] = True
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self.images[point]
            parts.append("(" + " ".join(str(p + 1) for p in cycle) + ")")
        return "".join(parts) if parts else "e"

    @staticmethod
    def identity(degree: int) -> Perm:
        return Perm(tuple(range(degree)))

    @staticmethod
    def from_cycles(degree: int, cycles: list[list[int]]) -> Perm:
        """Build from disjoint cycles of 0-based points."""
        images = list(range(degree))
        used = set()
        for cycle in cycles:
            for p in cycle:
                if not 0 <= p < degree:
                    raise InputError(f"point {p + 1} outside degree {degree}")
                if p in used:
                    raise InputError(f"point {p + 1} repeated in cycle notation")
                used.add(p)
            for i, p in enumerate(cycle):
                images[p] = cycle[(i + 1) % len(cycle)]
        return Perm(tuple(images))


class FiniteGroup:
    """A finite permutation group with precomputed multiplication tables.

    Immutable after construction; safe to share across workers.  Attribute
    ``mul_table`` is a flat row-major array: ``mul_table[g * order + h]``
    is the index of g.h.
    """

    def __init__(self, elements, generators, labels=None, spec=None):
        elements = list(elements)
        order = len(elements)
        if order == 0:
            raise InputError("a group needs at least the identity element")
        degree = elements[0].degree
        if not elements[0].is_identity():
            raise InputError("canonical element order must put the identity first")
        if any(e.degree != degree for e in elements):
            raise InputError("all elements must share one degree")
        self.order = order
        self.degree = degree
        self.elements = tuple(elements)
        self.generators = tuple(generators)
        self.spec = spec or f"perm group of order {order}"
        self._index = {e.images: i for i, e in enumerate(elements)}
        if len(self._index) != order:
            raise InputError("duplicate elements in group construction")

        table = array("i")
        for g in elements:
            table.extend(self._index[g.then(h).images] for h in elements)
        self.mul_table = table
        self.inv_table = array("i", [self._index[g.inverse().images] for g in elements])

        if labels is None:
            labels = tuple(g.cycle_string() for g in elements)
        else:
            labels = tuple(labels)
        if len(labels) != order or len(set(labels)) != order:
            raise InputError("labels must be unique, one per element")
        self.labels = labels
        self._label_index = {name: i for i, name in enumerate(labels)}

    # -- element arithmetic on indices ------------------------------------

    def mul(self, g: int, h: int) -> int:
        """Index of g.h (apply g first, then h)."""
        return self.mul_table[g * self.order + h]

    def inv(self, g: int) -> int:
        return self.inv_table[g]

    def conjugate(self, g: int, h: int) -> int:
        """Index of h^-1 . g . h."""
        o = self.order
        t = self.mul_table
        return t[t[self.inv_table[h] * o + g] * o + h]

    def label(self, g: int) -> str:
        return self.labels[g]

    def index_of_label(self, name: str) -> int:
        try:
            return self._label_index[name]
        except KeyError:
            raise InputError(f"no element labeled {name!r} in {self.spec}") from None

    def index_of(self, perm: Perm) -> int:
        try:
            return self._index[perm.images]
        except KeyError:
            raise InputError(f"permutation {perm.images} not in {self.spec}") from None

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.spec}, order={self.order}, degree={self.degree})"


def _canonical_order(perms) -> list[Perm]:
    # The identity is lexicographically minimal among permutations, so a
    # plain sort puts it first.
    return sorted(perms, key=lambda p: p.images)


def close_under_products(degree: int, gens: list[Perm], order_cap: int) -> list[Perm]:
    """Breadth-first closure of a generating set; includes the identity."""
    elements = {Perm.identity(degree).images}
    frontier = [g.images for g in gens if g.images not in elements]
    elements.update(frontier)
    gen_images = [g.images for g in gens]
    while frontier:
        new = []
        for w in frontier:
            for g in gen_images:
                prod = tuple(g[i] for i in w)
                if prod not in elements:
                    elements.add(prod)
                    new.append(prod)
                    if len(elements) > order_cap:
                        raise BudgetError(
                            f"closure exceeds the order cap of {order_cap} elements"
                        )
        frontier = new
    return [Perm(images) for images in elements]


def group_from_generators(
    degree: int,
    gens: list[Perm],
    order_cap: int = DEFAULT_ORDER_CAP,
    labels=None,
    spec=None,
) -> FiniteGroup:
    for g in gens:
        if g.degree != degree:
            raise InputError(f"generator degree {g.degree} does not match {degree}")
    elements = _canonical_order(close_under_products(degree, gens, order_cap))
    index = {e.images: i for i, e in enumerate(elements)}
    gen_indices = sorted({index[g.images] for g in gens})
    return FiniteGroup(elements, gen_indices, labels=labels, spec=spec)


def symmetric_group(
    n: int,
    order_cap: int = DEFAULT_ORDER_CAP,
    degree_cap: int = SYMMETRIC_DEGREE_CAP,
    normal_form_labels: bool = False,
) -> FiniteGroup:
    """The full symmetric group on n points, elements in lexicographic order."""
    if n < 1:
        raise InputError(f"symmetric group degree must be positive, got {n}")
    if n > degree_cap:
        raise BudgetError(f"symmetric group degree {n} exceeds the degree cap of {degree_cap}")
    if math.factorial(n) > order_cap:
        raise BudgetError(
            f"symmetric group order {math.factorial(n)} exceeds the order cap of {order_cap}"
        )
    elements = [Perm(images) for images in itertools.permutations(range(n))]
    if n == 1:
        gens = []
    elif n == 2:
        gens = [Perm((1, 0))]
    else:
        rotation = Perm(tuple(list(range(1, n)) + [0]))
        swap = Perm(tuple([1, 0] + list(range(2, n))))
        gens = [rotation, swap]
    index = {e.images: i for i, e in enumerate(elements)}
    labels = _s3_normal_form_labels() if (normal_form_labels and n == 3) else None
    return FiniteGroup(elements, [index[g.images] for g in gens], labels=labels, spec=f"S{n}")


def _s3_normal_form_labels() -> list[str]:
    """Labels 1, a, a2, b, ab, a2b for S3, with a the 3-cycle and b the
    transposition of the first two points."""
    a = Perm((1, 2, 0))
    b = Perm((1, 0, 2))
    by_images = {}
    for i in range(3):
        for j in range(2):
            p = Perm.identity(3)
            for _ in range(i):
                p = p.then(a)
            for _ in range(j):
                p = p.then(b)
            name = ("" if i == 0 else "a" if i == 1 else "a2") + ("b" if j else "")
            by_images[p.images] = name or "1"
    elements = _canonical_order(Perm(im) for im in by_images)
    return [by_images[e.images] for e in elements]


def cyclic_group(n: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise InputError(f"cyclic group order must be positive, got {n}")
    if n > order_cap:
        raise BudgetError(f"cyclic group order {n} exceeds the order cap of {order_cap}")
    if n == 1:
        return group_from_generators(1, [], spec="C1")
    rotation = Perm(tuple(list(range(1, n)) + [0]))
    return group_from_generators(n, [rotation], order_cap=order_cap, spec=f"C{n}")


def dihedral_group(n: int, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Dihedral group of order 2n (degenerate cases D1 = C2, D2 = Klein four)."""
    if n < 1:
        raise InputError(f"dihedral group parameter must be positive, got {n}")
    if 2 * n > order_cap:
        raise BudgetError(f"dihedral group order {2 * n} exceeds the order cap of {order_cap}")
    if n == 1:
        gens, degree = [Perm((1, 0))], 2
    elif n == 2:
        gens, degree = [Perm((1, 0, 2, 3)), Perm((0, 1, 3, 2))], 4
    else:
        rotation = Perm(tuple(list(range(1, n)) + [0]))
        reflection = Perm(tuple(reversed(range(n))))
        gens, degree = [rotation, reflection], n
    return group_from_generators(degree, gens, order_cap=order_cap, spec=f"D{n}")


_NAMED_SPEC = re.compile(r"^([SCD])(\d+)$")
_PERM_SPEC = re.compile(r"^perm\((\d+)\)\s*:\s*(.*)$", re.DOTALL)
_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_group_spec(spec: str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Parse "S<n>", "C<n>", "D<n>" or "perm(<degree>): <cycles>; ..." strings.

    "S3" additionally installs the normal-form labels 1, a, a2, b, ab, a2b.
    """
    text = spec.strip()
    m = _NAMED_SPEC.match(text)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if kind == "S":
            return symmetric_group(n, order_cap=order_cap, normal_form_labels=(n == 3))
        if kind == "C":
            return cyclic_group(n, order_cap=order_cap)
        return dihedral_group(n, order_cap=order_cap)
    m = _PERM_SPEC.match(text)
    if m:
        degree = int(m.group(1))
        if degree < 1:
            raise ParseError(f"degree must be positive in group spec {spec!r}")
        gens = []
        for part in m.group(2).split(";"):
            part = part.strip()
            if not part:
                continue
            gens.append(_parse_cycles(part, degree, spec))
        return group_from_generators(degree, gens, order_cap=order_cap, spec=text)
    raise ParseError(
        f"group spec {spec!r} not recognized; expected S<n>, C<n>, D<n> "
        f"or perm(<degree>): (<cycle>); ..."
    )


def _parse_cycles(text: str, degree: int, spec: str) -> Perm:
    stripped = _CYCLE.sub("", text).replace(" ", "")
    if stripped:
        raise ParseError(f"unexpected {stripped!r} in group spec {spec!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        points = []
        for token in body.split():
            if not token.isdigit():
                raise ParseError(f"bad point {token!r} in group spec {spec!r}")
            points.append(int(token) - 1)
        if points:
            cycles.append(points)
    return Perm.from_cycles(degree, cycles)
