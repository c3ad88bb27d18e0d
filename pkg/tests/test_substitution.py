import random

import pytest

from tilerep import (
    ApGraph,
    ConstructionError,
    InputError,
    ParseError,
    SubstitutionRule,
    allowed_factors,
    build_ap_graph,
    build_approximant,
    collar_substitution,
    cyclic_group,
    fundamental_group,
    induced_pi1_endomorphism,
    induced_point_map,
    is_primitive,
    load_rule,
    parse_endomorphism_text,
    parse_rule_text,
    substitution_matrix,
    symmetric_group,
)
from oracles import brute_factors, connection_point_map

A, B = 0, 1


# -- parsing ------------------------------------------------------------------


def test_parse_rule_text(tm_rule):
    assert tm_rule.alphabet == ("a", "b")
    assert tm_rule.images == ((A, B), (B, A))


def test_parse_rule_comments_and_blanks():
    text = "\n# header\nletters: x y  # trailing\n\nx -> y y\ny -> x y # note\n"
    rule = parse_rule_text(text)
    assert rule.alphabet == ("x", "y")
    assert rule.images == ((1, 1), (0, 1))


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("letters: a b\na -> a c\nb -> b a\n", "line 2"),
        ("letters: a b\na -> a b\na -> b a\nb -> a\n", "duplicate image line"),
        ("letters: a b\na -> a b\n", "missing image"),
        ("letters: a b\na ->\nb -> a\n", "empty"),
        ("a -> b\n", "letters"),
        ("letters:\n", "no letters"),
        ("letters: a a\n", "duplicate letter"),
        ("letters: a b\nc -> a\n", "unknown letter 'c'"),
        ("letters: a b\njunk line\n", "expected"),
    ],
)
def test_parse_rule_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_rule_text(text)


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError) as err:
        parse_rule_text("letters: a b\na -> a c\nb -> b a\n")
    assert err.value.line == 2


def test_load_rule_missing_file(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        load_rule(tmp_path / "nope.sub")


def test_parse_endomorphism():
    endo, names = parse_endomorphism_text(
        "letters: x y\nx -> y^-1 x\ny ->\n"
    )
    assert names == ("x", "y")
    assert endo.images[0].letters == ((1, -1), (0, 1))
    assert endo.images[1].is_empty()
    with pytest.raises(ParseError, match="unknown letter 'z'"):
        parse_endomorphism_text("letters: x\nx -> z\n")


# -- occurrence matrix and primitivity ----------------------------------------


def test_substitution_matrix(tm_rule, pd_rule):
    assert substitution_matrix(tm_rule) == [[1, 1], [1, 1]]
    m = substitution_matrix(pd_rule)
    assert m[A][A] == 0 and m[B][A] == 2 and m[A][B] == 1 and m[B][B] == 1
    assert substitution_matrix(parse_rule_text("letters: a\na -> a\n")) == [[1]]


def test_matrix_columns_sum_to_image_lengths():
    rng = random.Random(43)
    for _ in range(100):
        d = rng.randrange(1, 5)
        images = tuple(
            tuple(rng.randrange(d) for _ in range(rng.randrange(1, 6))) for _ in range(d)
        )
        rule = SubstitutionRule(tuple(f"t{i}" for i in range(d)), images)
        m = substitution_matrix(rule)
        for j in range(d):
            assert sum(m[i][j] for i in range(d)) == len(images[j])


def test_is_primitive(tm_rule, pd_rule, blocks_rule, doubling_rule):
    assert is_primitive(tm_rule) == (True, 1)
    # derived by squaring: M = [[0,1],[2,1]] has a zero, M^2 = [[2,1],[2,3]] does not
    assert is_primitive(pd_rule) == (True, 2)
    assert is_primitive(blocks_rule) == (False, None)
    assert is_primitive(doubling_rule) == (True, 1)


# -- factor language ------------------------------------------------------------


def test_allowed_factors_golden(tm_rule, pd_rule, doubling_rule):
    assert allowed_factors(tm_rule, 2) == {(A, A), (A, B), (B, A), (B, B)}
    assert allowed_factors(pd_rule, 2) == {(A, B), (B, A), (B, B)}
    assert allowed_factors(doubling_rule, 2) == {(A, A)}


def test_allowed_factors_match_deep_expansion_oracle(tm_rule, pd_rule):
    for rule in (tm_rule, pd_rule):
        for length in (1, 2, 3, 4):
            assert allowed_factors(rule, length) == brute_factors(rule, length, rounds=8)


def test_allowed_factors_closed_under_substitution(tm_rule, pd_rule):
    for rule in (tm_rule, pd_rule):
        pairs = allowed_factors(rule, 2)
        for x, y in pairs:
            image = rule.images[x] + rule.images[y]
            for window in zip(image, image[1:]):
                assert window in pairs


def test_allowed_factors_warns_when_not_primitive(blocks_rule):
    with pytest.warns(UserWarning, match="not primitive"):
        factors = allowed_factors(blocks_rule, 2)
    assert factors == {(A, A), (B, B)}


def test_allowed_factors_fixed_rule_terminates():
    rule = parse_rule_text("letters: a\na -> a\n")
    assert allowed_factors(rule, 1) == {(A,)}
    assert allowed_factors(rule, 2) == set()


# -- collaring -------------------------------------------------------------------


def test_collar_alphabet_sizes(tm_rule, pd_rule):
    # frozen from the deep-expansion oracle: lengths of the 3-factor sets
    assert collar_substitution(tm_rule).size == 6
    assert collar_substitution(pd_rule).size == 5
    assert collar_substitution(tm_rule).size == len(brute_factors(tm_rule, 3, 8))
    assert collar_substitution(pd_rule).size == len(brute_factors(pd_rule, 3, 8))


def test_collar_single_letter(doubling_rule):
    collared = collar_substitution(doubling_rule)
    assert collared.alphabet == ("a|a|a",)
    assert collared.images == ((0, 0),)


def test_collar_images_spell_the_base_images(tm_rule, pd_rule):
    for rule in (tm_rule, pd_rule):
        collared = collar_substitution(rule)
        triples = sorted(allowed_factors(rule, 3))
        for i, image in enumerate(collared.images):
            _, x, _ = triples[i]
            assert len(image) == len(rule.images[x])
            assert [triples[c][1] for c in image] == list(rule.images[x])


def test_collar_rejects_non_primitive(blocks_rule):
    with pytest.raises(InputError, match="primitive"):
        collar_substitution(blocks_rule)


# -- approximant graphs ------------------------------------------------------------


def test_wedge_graphs(tm_rule, pd_rule):
    for rule in (tm_rule, pd_rule):
        graph = build_ap_graph(rule, 0)
        assert graph.num_vertices == 1
        assert graph.num_edges == 2
        assert graph.edges == ((0, 0), (0, 0))
        assert graph.basepoint == 0


def test_single_letter_graph(doubling_rule):
    graph = build_ap_graph(doubling_rule, 0)
    assert graph.num_vertices == 1
    assert graph.num_edges == 1


def test_disconnected_graph_raises(blocks_rule):
    with pytest.warns(UserWarning):
        with pytest.raises(ConstructionError, match="disconnected"):
            build_ap_graph(blocks_rule, 0)


def test_collar1_graph_shapes(tm_rule, pd_rule):
    # frozen structural goldens from the first verified run
    tm_graph = build_ap_graph(tm_rule, 1)
    assert (tm_graph.num_vertices, tm_graph.num_edges) == (4, 6)
    pd_graph = build_ap_graph(pd_rule, 1)
    assert (pd_graph.num_vertices, pd_graph.num_edges) == (4, 5)


def test_bad_collar_level(tm_rule):
    with pytest.raises(InputError, match="collar level"):
        build_ap_graph(tm_rule, 2)


# -- fundamental group ----------------------------------------------------------------


def test_wedge_fundamental_group(tm_rule):
    pi1 = fundamental_group(build_ap_graph(tm_rule, 0))
    assert pi1.rank == 2
    assert pi1.generator_edges == (0, 1)
    assert [w.format(("a", "b")) for w in pi1.loop_word_of_edge] == ["a", "b"]


def test_tree_has_rank_zero():
    path = ApGraph(num_vertices=3, edges=((0, 1), (1, 2)), edge_labels=("p", "q"), basepoint=0)
    pi1 = fundamental_group(path)
    assert pi1.rank == 0
    assert all(w.is_empty() for w in pi1.loop_word_of_edge)
    assert pi1.tree_path_to[2] == ((0, 1), (1, 1))


def test_parallel_edges_rank():
    theta = ApGraph(
        num_vertices=2,
        edges=((0, 1), (0, 1), (0, 1)),
        edge_labels=("p", "q", "r"),
        basepoint=0,
    )
    pi1 = fundamental_group(theta)
    assert pi1.rank == 2
    assert len(pi1.generator_edges) == 2


def test_rank_formula_everywhere(tm_rule, pd_rule, doubling_rule):
    for rule in (tm_rule, pd_rule, doubling_rule):
        for collar in (0, 1):
            graph = build_ap_graph(rule, collar)
            pi1 = fundamental_group(graph)
            assert pi1.rank == graph.num_edges - graph.num_vertices + 1
            for e in range(graph.num_edges):
                word = pi1.loop_word_of_edge[e]
                if e in pi1.tree_edges:
                    assert word.is_empty()
                else:
                    assert len(word) == 1


def test_disconnected_fundamental_group_raises():
    two_loops = ApGraph(
        num_vertices=2, edges=((0, 0), (1, 1)), edge_labels=("p", "q"), basepoint=0
    )
    with pytest.raises(InputError, match="connected"):
        fundamental_group(two_loops)


# -- induced endomorphism ----------------------------------------------------------------


def test_induced_endo_matches_substitution_on_wedge(tm_rule, pd_rule, doubling_rule):
    for rule in (tm_rule, pd_rule, doubling_rule):
        endo = induced_pi1_endomorphism(rule, 0)
        assert tuple(tuple(letter) for letter in endo.images[0].letters) == tuple(
            (c, 1) for c in rule.images[0]
        )
        assert [
            [letter.generator for letter in w.letters] for w in endo.images
        ] == [list(img) for img in rule.images]


def test_induced_endo_abelianization_matches_matrix(tm_rule, pd_rule, doubling_rule):
    for rule in (tm_rule, pd_rule, doubling_rule):
        endo = induced_pi1_endomorphism(rule, 0)
        m = substitution_matrix(rule)
        for j, w in enumerate(endo.images):
            counts = [0] * rule.size
            for letter in w.letters:
                counts[letter.generator] += letter.sign
            assert counts == [m[i][j] for i in range(rule.size)]


def test_induced_endo_agrees_with_connection_oracle(tm_rule, pd_rule, doubling_rule):
    G = symmetric_group(3)
    C3 = cyclic_group(3)
    fib = parse_rule_text("letters: a b\na -> a b\nb -> a\n")
    trib = parse_rule_text("letters: a b c\na -> a b\nb -> a c\nc -> a\n")
    for rule in (tm_rule, pd_rule, doubling_rule, fib, trib):
        for collar in (0, 1):
            ap = build_approximant(rule, collar)
            for group in (G, C3):
                mine = induced_point_map(ap.endomorphism, group, ap.pi1.rank)
                assert mine.image_of == connection_point_map(ap, group)


def test_invertible_substitutions_keep_everything():
    # a -> ab, b -> a and its three-letter cousin are free-group
    # automorphisms, so precomposition is a bijection and nothing is lost
    # in the limit, at either collar level.
    from tilerep import class_limit, based_limit

    G = symmetric_group(3)
    fib = parse_rule_text("letters: a b\na -> a b\nb -> a\n")
    trib = parse_rule_text("letters: a b c\na -> a b\nb -> a c\nc -> a\n")
    for rule in (fib, trib):
        for collar in (0, 1):
            ap = build_approximant(rule, collar)
            cs, limit = class_limit(ap.endomorphism, G, ap.pi1.rank)
            assert limit.size == len(cs.classes)
            assert limit.steps_to_stabilize == 0
            assert based_limit(ap.endomorphism, G, ap.pi1.rank).size == G.order**ap.pi1.rank


def test_fibonacci_collar1_structure():
    # Sturmian complexity: 3 two-factors and 4 three-factors, rank stays 2
    fib = parse_rule_text("letters: a b\na -> a b\nb -> a\n")
    assert len(allowed_factors(fib, 2)) == 3
    graph = build_ap_graph(fib, 1)
    assert (graph.num_vertices, graph.num_edges) == (3, 4)
    assert fundamental_group(graph).rank == 2


def test_collar1_endomorphism_reduced_and_ranked(tm_rule):
    ap = build_approximant(tm_rule, 1)
    assert ap.endomorphism.source_rank == ap.pi1.rank == 3
    for w in ap.endomorphism.images:
        assert w.rank == 3


def test_inconsistent_vertex_images_rejected():
    from tilerep.substitution import _induced_endomorphism

    path = ApGraph(num_vertices=3, edges=((0, 1), (1, 2)), edge_labels=("p", "q"), basepoint=0)
    pi1 = fundamental_group(path)
    # p -> q forces vertex 1 -> 2 while q -> p forces vertex 1 -> 0
    swapped = SubstitutionRule(("p", "q"), ((1,), (0,)))
    with pytest.raises(ConstructionError, match="glue"):
        _induced_endomorphism(swapped, path, pi1)


def test_broken_image_path_rejected():
    from tilerep.substitution import _induced_endomorphism

    theta = ApGraph(
        num_vertices=2,
        edges=((0, 1), (0, 1), (0, 1)),
        edge_labels=("p", "q", "r"),
        basepoint=0,
    )
    pi1 = fundamental_group(theta)
    # the word p q is not a path: p ends at vertex 1, q starts at vertex 0
    bad = SubstitutionRule(("p", "q", "r"), ((0, 1), (1, 1), (2,)))
    with pytest.raises(ConstructionError, match="edge path"):
        _induced_endomorphism(bad, theta, pi1)
