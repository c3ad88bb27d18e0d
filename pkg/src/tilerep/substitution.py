"""Substitution rules, their factor languages, and approximant graphs.

A one-dimensional substitution replaces each letter by a non-empty word.
Its approximant at collar level 0 is a graph with one edge per letter,
letter-end vertices merged along the allowed two-letter factors; at collar
level 1 the same construction runs on the collared alphabet (letters with
their one-step contexts).  The fundamental group of the graph is free, and
the substitution induces an endomorphism of it by mapping each edge over
the edge path spelled by its image word.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import ConstructionError, InputError, ParseError
from .words import FreeHom, Word, generator_word, parse_word, reduce

MAX_FACTOR_ROUNDS = 50


@dataclass(frozen=True)
class SubstitutionRule:
    """A primitive-substitution candidate: one non-empty image per letter."""

    alphabet: tuple[str, ...]
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.alphabet:
            raise InputError("alphabet must be non-empty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InputError("alphabet names must be unique")
        if len(self.images) != len(self.alphabet):
            raise InputError("need exactly one image per letter")
        for name, image in zip(self.alphabet, self.images):
            if not image:
                raise InputError(f"image of {name!r} is empty")
            for c in image:
                if not 0 <= c < len(self.alphabet):
                    raise InputError(f"image of {name!r} uses letter index {c} out of range")

    @property
    def size(self) -> int:
        return len(self.alphabet)

    def image_names(self) -> list[list[str]]:
        return [[self.alphabet[c] for c in image] for image in self.images]


# -- rule and endomorphism file parsing ------------------------------------


def _grammar_lines(text: str):
    """Split file text into (letters, [(name, tokens, lineno), ...])."""
    letters = None
    body = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if letters is None:
            if not line.startswith("letters:"):
                raise ParseError('expected a "letters: <name> ..." line first', line=lineno)
            letters = line[len("letters:"):].split()
            if not letters:
                raise ParseError("letters line names no letters", line=lineno)
            if len(set(letters)) != len(letters):
                raise ParseError("duplicate letter names", line=lineno)
            continue
        if "->" not in line:
            raise ParseError('expected "<name> -> <name> ..."', line=lineno)
        head, _, tail = line.partition("->")
        name = head.strip()
        if name not in letters:
            raise ParseError(f"unknown letter {name!r}", line=lineno)
        body.append((name, tail.split(), lineno))
    if letters is None:
        raise ParseError("empty input: no letters line found")
    return letters, body


def parse_rule_text(text: str) -> SubstitutionRule:
    """Parse the line-based rule grammar; errors carry line numbers."""
    letters, body = _grammar_lines(text)
    index = {name: i for i, name in enumerate(letters)}
    images: dict[str, tuple[int, ...]] = {}
    for name, tokens, lineno in body:
        if name in images:
            raise ParseError(f"duplicate image line for {name!r}", line=lineno)
        if not tokens:
            raise ParseError(f"image of {name!r} is empty", line=lineno)
        image = []
        for token in tokens:
            if token not in index:
                raise ParseError(f"unknown letter {token!r}", line=lineno)
            image.append(index[token])
        images[name] = tuple(image)
    missing = [name for name in letters if name not in images]
    if missing:
        raise ParseError(f"missing image line for {missing[0]!r}")
    return SubstitutionRule(tuple(letters), tuple(images[name] for name in letters))


def parse_endomorphism_text(text: str) -> tuple[FreeHom, tuple[str, ...]]:
    """Parse the same line grammar with inverse letters ("name^-1") allowed.

    Returns the free-group self-map and the generator names.  Unlike rules,
    empty images are legal here.
    """
    letters, body = _grammar_lines(text)
    index = {name: i for i, name in enumerate(letters)}
    rank = len(letters)
    images: dict[str, Word] = {}
    for name, tokens, lineno in body:
        if name in images:
            raise ParseError(f"duplicate image line for {name!r}", line=lineno)
        images[name] = parse_word(" ".join(tokens), index, rank, line=lineno)
    missing = [name for name in letters if name not in images]
    if missing:
        raise ParseError(f"missing image line for {missing[0]!r}")
    return (
        FreeHom(rank, rank, tuple(images[name] for name in letters)),
        tuple(letters),
    )


def load_rule(path) -> SubstitutionRule:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_rule_text(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read rule file {path}: {exc}") from exc


# -- occurrence matrix and primitivity --------------------------------------


def substitution_matrix(rule: SubstitutionRule) -> list[list[int]]:
    """M[i][j] counts occurrences of letter i in the image of letter j."""
    d = rule.size
    m = [[0] * d for _ in range(d)]
    for j, image in enumerate(rule.images):
        for c in image:
            m[c][j] += 1
    return m


def is_primitive(rule: SubstitutionRule) -> tuple[bool, int | None]:
    """Whether some power of the occurrence matrix is entrywise positive.

    Checks exponents up to the Wielandt bound d^2 - 2d + 2 and returns the
    least witness when one exists.  Runs on the boolean support of the
    matrix, so entries never overflow.
    """
    d = rule.size
    bound = d * d - 2 * d + 2
    base = [[1 if x else 0 for x in row] for row in substitution_matrix(rule)]
    power = base
    for n in range(1, bound + 1):
        if all(all(row) for row in power):
            return True, n
        power = [
            [int(any(power[i][t] and base[t][j] for t in range(d))) for j in range(d)]
            for i in range(d)
        ]
    return False, None


# -- factor language ---------------------------------------------------------


def _windows(word: tuple[int, ...], length: int):
    for i in range(len(word) - length + 1):
        yield word[i : i + length]


def allowed_factors(rule: SubstitutionRule, length: int) -> set[tuple[int, ...]]:
    """All length-l factors of the substitution language.

    Iterates the substitution on each letter, harvesting windows, until a
    full round adds nothing new and every iterate is long enough to carry
    windows (or has stopped growing).
    """
    if length < 1:
        raise InputError(f"factor length must be positive, got {length}")
    primitive, _ = is_primitive(rule)
    if not primitive:
        warnings.warn(
            f"substitution on {rule.alphabet} is not primitive; "
            "its factor language may be degenerate",
            stacklevel=2,
        )
    iterates = [(a,) for a in range(rule.size)]
    factors = {w for word in iterates for w in _windows(word, length)}
    for _ in range(MAX_FACTOR_ROUNDS):
        expanded = [
            tuple(c for letter in word for c in rule.images[letter]) for word in iterates
        ]
        harvested = factors | {w for word in expanded for w in _windows(word, length)}
        unchanged = harvested == factors
        grown = expanded != iterates
        iterates, factors = expanded, harvested
        if unchanged and (all(len(w) >= length for w in iterates) or not grown):
            return factors
    raise InputError(
        f"factor set of length {length} did not stabilize within {MAX_FACTOR_ROUNDS} rounds"
    )


# -- collaring ----------------------------------------------------------------


def collar_substitution(rule: SubstitutionRule) -> SubstitutionRule:
    """Rewrite the rule over the collared alphabet of allowed 3-letter factors.

    A collared letter (p, x, s) is x seen with its neighbors; its image reads
    the collared letters along the image of x inside the context made of the
    images of p, x, s.
    """
    primitive, _ = is_primitive(rule)
    if not primitive:
        raise InputError("collaring is only supported for primitive rules")
    triples = sorted(allowed_factors(rule, 3))
    index = {t: i for i, t in enumerate(triples)}
    names = tuple(
        "|".join(rule.alphabet[c] for c in triple) for triple in triples
    )
    images = []
    for p, x, s in triples:
        context = rule.images[p] + rule.images[x] + rule.images[s]
        offset = len(rule.images[p])
        image = []
        for i in range(len(rule.images[x])):
            window = (context[offset + i - 1], context[offset + i], context[offset + i + 1])
            if window not in index:
                raise ConstructionError(
                    f"collared image window {window} is not an allowed factor"
                )
            image.append(index[window])
        images.append(tuple(image))
    return SubstitutionRule(names, tuple(images))


def _collared_adjacency(rule: SubstitutionRule, triples: list[tuple[int, ...]]):
    """Allowed 2-factors of the collared language, from base 4-factors."""
    index = {t: i for i, t in enumerate(triples)}
    pairs = set()
    for w in allowed_factors(rule, 4):
        pairs.add((index[w[0:3]], index[w[1:4]]))
    return pairs


# -- approximant graphs -------------------------------------------------------


@dataclass(frozen=True)
class ApGraph:
    """A directed graph with one labeled edge per (collared) letter."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    edge_labels: tuple[str, ...]
    basepoint: int

    @property
    def num_edges(self) -> int:
        return len(self.edges)


def _working_alphabet(rule: SubstitutionRule, collar_level: int):
    """The rule whose letters are the graph edges, with its 2-factor set."""
    if collar_level == 0:
        return rule, allowed_factors(rule, 2)
    if collar_level == 1:
        collared = collar_substitution(rule)
        triples = sorted(allowed_factors(rule, 3))
        return collared, _collared_adjacency(rule, triples)
    raise InputError(f"collar level must be 0 or 1, got {collar_level}")


def build_ap_graph(rule: SubstitutionRule, collar_level: int = 0) -> ApGraph:
    working, pairs = _working_alphabet(rule, collar_level)
    return _graph_from_adjacency(working, pairs)


def _graph_from_adjacency(working: SubstitutionRule, pairs) -> ApGraph:
    d = working.size
    # Ends 2x and 2x+1 are the left and right ends of letter x's edge.
    parent = list(range(2 * d))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for x, y in pairs:
        a, b = find(2 * x + 1), find(2 * y)
        if a != b:
            parent[a] = b

    vertex_of_end = {}
    for end in range(2 * d):
        root = find(end)
        if root not in vertex_of_end:
            vertex_of_end[root] = len(vertex_of_end)
    edges = tuple((vertex_of_end[find(2 * x)], vertex_of_end[find(2 * x + 1)]) for x in range(d))
    graph = ApGraph(
        num_vertices=len(vertex_of_end),
        edges=edges,
        edge_labels=working.alphabet,
        basepoint=vertex_of_end[find(0)],
    )
    _check_connected(graph)
    return graph


def _check_connected(graph: ApGraph):
    seen = {graph.basepoint}
    stack = [graph.basepoint]
    incident = [[] for _ in range(graph.num_vertices)]
    for u, v in graph.edges:
        incident[u].append(v)
        incident[v].append(u)
    while stack:
        for w in incident[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != graph.num_vertices:
        raise ConstructionError(
            "approximant graph is disconnected; the rule is degenerate or not primitive"
        )


# -- fundamental group --------------------------------------------------------


@dataclass(frozen=True)
class Pi1Presentation:
    """A free basis for the fundamental group of a connected graph.

    One generator per non-tree edge; every edge rewrites to a word in the
    generators (tree edges to the empty word).  tree_path_to[v] is the edge
    path from the basepoint to v inside the spanning tree, as (edge index,
    direction) steps.
    """

    rank: int
    tree_edges: frozenset[int]
    generator_edges: tuple[int, ...]
    loop_word_of_edge: tuple[Word, ...]
    tree_path_to: tuple[tuple[tuple[int, int], ...], ...]


def fundamental_group(graph: ApGraph) -> Pi1Presentation:
    """Spanning-tree presentation, breadth-first from the basepoint."""
    incident = [[] for _ in range(graph.num_vertices)]
    for e, (u, v) in enumerate(graph.edges):
        incident[u].append((e, 1, v))
        incident[v].append((e, -1, u))

    tree_edges = set()
    tree_path_to = {graph.basepoint: ()}
    queue = [graph.basepoint]
    while queue:
        frontier = []
        for u in queue:
            for e, direction, w in incident[u]:
                if w not in tree_path_to:
                    tree_path_to[w] = tree_path_to[u] + ((e, direction),)
                    tree_edges.add(e)
                    frontier.append(w)
        queue = frontier
    if len(tree_path_to) != graph.num_vertices:
        raise InputError("fundamental group needs a connected graph")

    generator_edges = tuple(e for e in range(graph.num_edges) if e not in tree_edges)
    rank = graph.num_edges - graph.num_vertices + 1
    gen_index = {e: i for i, e in enumerate(generator_edges)}
    loop_words = tuple(
        generator_word(rank, gen_index[e]) if e in gen_index else Word(rank, ())
        for e in range(graph.num_edges)
    )
    return Pi1Presentation(
        rank=rank,
        tree_edges=frozenset(tree_edges),
        generator_edges=generator_edges,
        loop_word_of_edge=loop_words,
        tree_path_to=tuple(tree_path_to[v] for v in range(graph.num_vertices)),
    )


def _inverse_path(path):
    return tuple((e, -d) for e, d in reversed(path))


def _path_to_word(pi1: Pi1Presentation, path) -> Word:
    gen_index = {e: i for i, e in enumerate(pi1.generator_edges)}
    letters = [(gen_index[e], d) for e, d in path if e in gen_index]
    return reduce(letters, pi1.rank)


# -- the induced endomorphism -------------------------------------------------


@dataclass(frozen=True)
class Approximant:
    """Everything the limit engine needs about one approximant level."""

    rule: SubstitutionRule
    collar_level: int
    working_rule: SubstitutionRule
    graph: ApGraph
    pi1: Pi1Presentation
    endomorphism: FreeHom
    generator_names: tuple[str, ...]


def build_approximant(rule: SubstitutionRule, collar_level: int = 0) -> Approximant:
    working, pairs = _working_alphabet(rule, collar_level)
    graph = _graph_from_adjacency(working, pairs)
    pi1 = fundamental_group(graph)
    endo = _induced_endomorphism(working, graph, pi1)
    names = tuple(graph.edge_labels[e] for e in pi1.generator_edges)
    return Approximant(
        rule=rule,
        collar_level=collar_level,
        working_rule=working,
        graph=graph,
        pi1=pi1,
        endomorphism=endo,
        generator_names=names,
    )


def induced_pi1_endomorphism(rule: SubstitutionRule, collar_level: int = 0) -> FreeHom:
    """The substitution acting on the approximant's fundamental group.

    Each generator loop is pushed through the edge-path substitution and
    conjugated back to the basepoint along the spanning tree.
    """
    return build_approximant(rule, collar_level).endomorphism


def _vertex_images(working: SubstitutionRule, graph: ApGraph) -> list[int]:
    """Where the substitution sends each merged vertex; must be consistent."""
    image = [-1] * graph.num_vertices
    for x, (u, v) in enumerate(graph.edges):
        first, last = working.images[x][0], working.images[x][-1]
        for vertex, target in ((u, graph.edges[first][0]), (v, graph.edges[last][1])):
            if image[vertex] == -1:
                image[vertex] = target
            elif image[vertex] != target:
                raise ConstructionError(
                    "substitution image paths do not glue to a map of the approximant"
                )
    return image


def _induced_endomorphism(
    working: SubstitutionRule, graph: ApGraph, pi1: Pi1Presentation
) -> FreeHom:
    vertex_image = _vertex_images(working, graph)
    for x, image in enumerate(working.images):
        for c, c_next in zip(image, image[1:]):
            if graph.edges[c][1] != graph.edges[c_next][0]:
                raise ConstructionError(
                    f"image of {working.alphabet[x]!r} is not an edge path in the approximant"
                )

    def edge_image_path(e: int, direction: int):
        path = tuple((c, 1) for c in working.images[e])
        return path if direction > 0 else _inverse_path(path)

    base_shift = pi1.tree_path_to[vertex_image[graph.basepoint]]
    images = []
    for e in pi1.generator_edges:
        u, v = graph.edges[e]
        loop = pi1.tree_path_to[u] + ((e, 1),) + _inverse_path(pi1.tree_path_to[v])
        pushed = tuple(step for d, s in loop for step in edge_image_path(d, s))
        based = base_shift + pushed + _inverse_path(base_shift)
        images.append(_path_to_word(pi1, based))
    return FreeHom(pi1.rank, pi1.rank, tuple(images))
