import random

import pytest
from fractions import Fraction

from finefill import (Chain, INT, RAT, decompose_into_circuits,
                      enumerate_circuits, enumerate_cycles, is_cycle,
                      is_disjoint, parse_chain, validate, write_chain)
from finefill.chains import circuit_from_chain, make_circuit, require_circuit
from finefill.errors import NotACircuitError, NotACycleError, UnknownEdgeError

from instances import (CORPUS, figure8_graph, k4_graph, small_tree,
                       tetrahedron, triangle_graph)
from oracles import brute_circuit_count, brute_cycles


def triangle_cycle():
    return Chain(1, INT, {"e1": 1, "e2": 1, "e3": 1})


def test_is_cycle():
    tri = triangle_graph()
    assert is_cycle(tri, triangle_cycle())
    assert not is_cycle(tri, Chain(1, INT, {"e1": 1}))
    loop = validate("v", [("e", "v", "v")])
    assert is_cycle(loop, Chain(1, INT, {"e": 1}))


def test_is_disjoint():
    a = Chain(1, INT, {"e1": 1, "e2": 1})
    assert is_disjoint(a, Chain(1, INT, {"e3": 1, "e4": -1}))
    assert not is_disjoint(a, Chain(1, INT, {"e2": 5}))
    assert is_disjoint(Chain(1, INT, {}), a)


def test_circuit_canonical_key_identifies_rotations_and_reversals():
    w = ((1, "e1"), (1, "e2"), (1, "e3"))
    rot = ((1, "e2"), (1, "e3"), (1, "e1"))
    rev = ((-1, "e3"), (-1, "e2"), (-1, "e1"))
    assert make_circuit(w).key == make_circuit(rot).key == make_circuit(rev).key


def test_enumerate_circuits_k4():
    k4 = k4_graph()
    assert len(enumerate_circuits(k4, None, 3)) == 4
    assert len(enumerate_circuits(k4, "e12", 3)) == 2
    assert len(enumerate_circuits(k4, None, 4)) == 7
    with pytest.raises(UnknownEdgeError):
        enumerate_circuits(k4, "zz", 3)


def test_enumerate_circuits_tree_empty():
    assert enumerate_circuits(small_tree(), None, 9) == []


def test_short_circuits_admitted():
    cx = validate("uv", [("l", "u", "u"), ("p", "u", "v"), ("q", "u", "v")])
    found = enumerate_circuits(cx, None, 2)
    assert sorted(c.length for c in found) == [1, 2]


def test_circuit_counts_match_subset_oracle():
    for name, build in CORPUS:
        cx = build()
        if len(cx.edges) > 8:
            continue
        for scale in (2, 4, 8):
            got = len(enumerate_circuits(cx, None, scale))
            assert got == brute_circuit_count(cx, scale), (name, scale)


def test_anchored_equals_filtered():
    for name, build in CORPUS:
        cx = build()
        scale = min(len(cx.edges), 6) if cx.edges else 1
        allc = enumerate_circuits(cx, None, scale)
        for e in cx.edges:
            got = [c.key for c in enumerate_circuits(cx, e.id, scale)]
            want = [c.key for c in allc if c.contains_edge(e.id)]
            assert got == want, (name, e.id)


def test_enumerate_cycles_examples():
    tri = triangle_graph()
    assert len(enumerate_cycles(tri, 2)) == 1
    three = enumerate_cycles(tri, 3)
    assert len(three) == 3
    assert len(enumerate_cycles(k4_graph(), 3)) == 9


def test_enumerate_cycles_against_vector_oracle():
    for name, build in CORPUS:
        cx = build()
        if len(cx.edges) > 8:
            continue
        k = 4
        got = {c.serialize() for c in enumerate_cycles(cx, k)}
        assert got == brute_cycles(cx, k), name


def test_enumerate_cycles_no_duplicates_sorted():
    cycles = enumerate_cycles(tetrahedron(), 6)
    keys = [c.serialize() for c in cycles]
    assert len(keys) == len(set(keys))
    order = [(c.l1(), c.serialize()) for c in cycles]
    assert order == sorted(order)


def test_decompose_figure_eight():
    cx = figure8_graph()
    gamma = Chain(1, INT, {"p1": 1, "p2": 1, "p3": 1, "q1": 1, "q2": 1, "q3": 1})
    parts = decompose_into_circuits(cx, gamma)
    assert len(parts) == 2
    assert sum(p.length for p in parts) == gamma.l1()
    total = Chain(1, INT, {})
    for p in parts:
        total = total.add(p.induced_cycle())
    assert total == gamma


def test_decompose_single_and_doubled_circuit():
    tri = triangle_graph()
    parts = decompose_into_circuits(tri, triangle_cycle())
    assert len(parts) == 1 and parts[0].induced_cycle() == triangle_cycle()
    doubled = triangle_cycle().scale(2)
    parts = decompose_into_circuits(tri, doubled)
    assert len(parts) == 2 and all(p.length == 3 for p in parts)
    assert decompose_into_circuits(tri, Chain(1, INT, {})) == []


def test_decompose_rejects_non_cycles():
    with pytest.raises(NotACycleError):
        decompose_into_circuits(triangle_graph(), Chain(1, INT, {"e1": 1}))


def test_decompose_randomized_norm_additivity():
    rng = random.Random(20240817)
    failures = 0
    for name, build in CORPUS:
        cx = build()
        circuits = enumerate_circuits(cx, None, min(len(cx.edges), 8)) if cx.edges else []
        if not circuits:
            continue
        for _ in range(200):
            gamma = Chain(1, INT, {})
            for _ in range(rng.randint(1, 3)):
                c = rng.choice(circuits)
                gamma = gamma.add(c.induced_cycle().scale(rng.choice([-2, -1, 1, 2])))
            parts = decompose_into_circuits(cx, gamma)
            total = Chain(1, INT, {})
            for p in parts:
                total = total.add(p.induced_cycle())
            if total != gamma or sum(p.length for p in parts) != gamma.l1():
                failures += 1
    assert failures == 0


def test_circuit_splits_are_trivial():
    # no circuit cycle splits into two nonzero disjoint cycles
    from itertools import combinations
    for name, build in CORPUS:
        cx = build()
        if len(cx.edges) > 8:
            continue
        for circ in enumerate_circuits(cx, None, len(cx.edges)):
            gamma = circ.induced_cycle()
            support = sorted(gamma.coeffs)
            for r in range(1, len(support)):
                for part in combinations(support, r):
                    alpha = Chain(1, INT, {e: gamma.coeffs[e] for e in part})
                    beta = gamma.add(alpha.neg())
                    if alpha.is_zero() or beta.is_zero():
                        continue
                    assert not (is_cycle(cx, alpha) and is_cycle(cx, beta)), \
                        (name, circ.key, part)


def test_circuit_from_chain():
    k4 = k4_graph()
    for c in enumerate_circuits(k4, None, 4):
        assert circuit_from_chain(k4, c.induced_cycle()).key == c.key
    assert circuit_from_chain(k4, Chain(1, INT, {"e12": 1})) is None
    assert circuit_from_chain(triangle_graph(), triangle_cycle().scale(2)) is None
    with pytest.raises(NotACircuitError):
        require_circuit(triangle_graph(), triangle_cycle().scale(2))


def test_cy_round_trip():
    ch = Chain(1, RAT, {"e1": Fraction(1, 2), "e2": Fraction(-3)})
    assert parse_chain(write_chain(ch)) == ch
    ci = Chain(1, INT, {"e1": 2, "e2": -1})
    assert parse_chain(write_chain(ci)) == ci
    from finefill.errors import FormatError
    with pytest.raises(FormatError):
        parse_chain("chain1 v1 INT\n1/2 e1\n")
