"""End-to-end runs: parse inputs, drive the engine, assemble report dicts.

Reports are plain JSON-ready dicts with a stable key order, so two runs on
the same inputs serialize identically except for the elapsed_ms field.
"""

from __future__ import annotations

from time import perf_counter

from .errors import InputError
from .perms import parse_group_spec
from .substitution import (
    allowed_factors,
    build_approximant,
    is_primitive,
    parse_endomorphism_text,
    parse_rule_text,
)
from .variety import (
    DEFAULT_POINT_BUDGET,
    based_limit,
    class_limit,
    conjugacy_classes,
    point_at,
    point_count,
)


def _elapsed(t0: float) -> float:
    return round((perf_counter() - t0) * 1000.0, 3)


def run_count(group_spec: str, rank: int, budget: int | None = None) -> dict:
    t0 = perf_counter()
    budget = DEFAULT_POINT_BUDGET if budget is None else budget
    group = parse_group_spec(group_spec)
    homs = point_count(group, rank, budget)
    classes = len(conjugacy_classes(group, rank, budget))
    return {
        "command": "count",
        "group": {"spec": group.spec, "order": group.order},
        "rank": rank,
        "counts": {"homs": homs, "classes": classes},
        "elapsed_ms": _elapsed(t0),
    }


def _resolve_endomorphism(rule_text, endo_text, collar):
    """Turn either input into (endo, generator names, echo fields)."""
    if (rule_text is None) == (endo_text is None):
        raise InputError("provide exactly one of a substitution rule or an endomorphism")
    if rule_text is not None:
        rule = parse_rule_text(rule_text)
        ap = build_approximant(rule, collar)
        echo = {"letters": list(rule.alphabet), "images": rule.image_names()}
        return ap.endomorphism, ap.generator_names, echo, None, collar
    endo, names = parse_endomorphism_text(endo_text)
    echo = {"letters": list(names), "images": [w.format(names) for w in endo.images]}
    return endo, names, None, echo, None


def run_limit(
    group_spec: str,
    rule_text: str | None = None,
    endo_text: str | None = None,
    collar: int = 0,
    budget: int | None = None,
    based: bool = False,
) -> dict:
    t0 = perf_counter()
    budget = DEFAULT_POINT_BUDGET if budget is None else budget
    group = parse_group_spec(group_spec)
    sigma, names, rule_echo, endo_echo, collar_echo = _resolve_endomorphism(
        rule_text, endo_text, collar
    )
    rank = sigma.source_rank
    homs = point_count(group, rank, budget)

    if based:
        result = based_limit(sigma, group, rank, budget)
        members = [
            {"tuple": [group.label(c) for c in point_at(group, rank, i)]}
            for i in result.members
        ]
        class_count = None
    else:
        class_set, result = class_limit(sigma, group, rank, budget)
        members = [
            {
                "tuple": [group.label(c) for c in class_set.classes[i].canonical],
                "orbit_size": class_set.classes[i].orbit_size,
            }
            for i in result.members
        ]
        class_count = len(class_set)

    return {
        "command": "based-limit" if based else "limit",
        "group": {"spec": group.spec, "order": group.order},
        "rule": rule_echo,
        "endo": endo_echo,
        "collar": collar_echo,
        "rank": rank,
        "counts": {"homs": homs, "classes": class_count},
        "endomorphism": {
            "generators": list(names),
            "images": [w.format(names) for w in sigma.images],
        },
        "limit": {
            "size": result.size,
            "steps": result.steps_to_stabilize,
            "transients": result.transient_count,
            "members": members,
        },
        "elapsed_ms": _elapsed(t0),
    }


def run_approximant(rule_text: str, collar: int = 0) -> dict:
    t0 = perf_counter()
    rule = parse_rule_text(rule_text)
    primitive, witness = is_primitive(rule)
    ap = build_approximant(rule, collar)
    return {
        "command": "approximant",
        "rule": {"letters": list(rule.alphabet), "images": rule.image_names()},
        "collar": collar,
        "primitive": primitive,
        "primitivity_witness": witness,
        "graph": {
            "vertices": ap.graph.num_vertices,
            "edges": [
                {"source": u, "target": v, "label": label}
                for (u, v), label in zip(ap.graph.edges, ap.graph.edge_labels)
            ],
            "basepoint": ap.graph.basepoint,
        },
        "rank": ap.pi1.rank,
        "endomorphism": {
            "generators": list(ap.generator_names),
            "images": [w.format(ap.generator_names) for w in ap.endomorphism.images],
        },
        "elapsed_ms": _elapsed(t0),
    }


def run_factors(rule_text: str, length: int = 2) -> dict:
    t0 = perf_counter()
    rule = parse_rule_text(rule_text)
    primitive, _ = is_primitive(rule)
    factors = sorted(allowed_factors(rule, length))
    return {
        "command": "factors",
        "rule": {"letters": list(rule.alphabet), "images": rule.image_names()},
        "length": length,
        "primitive": primitive,
        "factors": [" ".join(rule.alphabet[c] for c in w) for w in factors],
        "elapsed_ms": _elapsed(t0),
    }
