import random
from fractions import Fraction

import pytest

from helpers import brute_is_balanced

from nzflow import (
    BudgetExceededError,
    Valuation,
    build_augmented,
    canonical_coloring,
    canonical_4flow,
    check_balanced_bruteforce,
    check_balanced_mincut,
    compute_oddness,
    flow_partition,
    flow_to_valuation,
    solve_nowhere_zero_flow,
    subset_margin,
    switch_path,
    to_five_thirds,
    valuation_to_flow,
    verify_flow,
)
from nzflow.catalog import k4, k33, petersen
from test_coloring import ring_two_factor


def partition_for(g):
    tf = compute_oddness(g).witness
    c = canonical_coloring(g, tf)
    ag = build_augmented(g, c)
    f = canonical_4flow(ag)
    return ag, f, flow_partition(ag, f)


def test_partition_weights_are_plus_minus_two():
    for g in (k4(), k33(), petersen()):
        _, _, p = partition_for(g)
        assert set(p.base_weights) <= {-2, 2}
        assert set(p.white) | set(p.black) == set(range(g.n))
        assert not set(p.white) & set(p.black)


def test_color_1_and_2_edges_cross_the_partition():
    for g in (k4(), petersen()):
        ag, _, p = partition_for(g)
        c = ag.coloring
        for eid in range(ag.graph.m):
            if ag.colors[eid] in (1, 2):
                u, v = ag.graph.endpoints(eid)
                assert p.is_white(u) != p.is_white(v), (eid, ag.colors[eid])


def test_partition_classes_have_equal_size():
    for g in (k4(), k33(), petersen()):
        _, _, p = partition_for(g)
        assert len(p.white) == len(p.black)


def test_switch_swaps_exactly_the_path_vertices():
    g = petersen()
    ag, f, p = partition_for(g)
    f2 = switch_path(ag, f, 0)
    p2 = flow_partition(ag, f2)
    on_path = set()
    for e in ag.coloring.paths[0]:
        on_path.update(ag.graph.endpoints(e))
    assert set(p.white) ^ set(p2.white) == on_path
    assert set(p.black) ^ set(p2.black) == on_path


def test_switch_lemma_on_two_paths():
    g, tf = ring_two_factor()
    c = canonical_coloring(g, tf)
    ag = build_augmented(g, c)
    f = canonical_4flow(ag)
    p = flow_partition(ag, f)
    for i in range(2):
        p2 = flow_partition(ag, switch_path(ag, f, i))
        on_path = set()
        for e in c.paths[i]:
            on_path.update(g.endpoints(e))
        assert set(p.white) ^ set(p2.white) == on_path


def test_every_switch_combination_gives_a_valid_partition():
    from itertools import product

    g, tf = ring_two_factor()
    c = canonical_coloring(g, tf)
    ag = build_augmented(g, c)
    base = canonical_4flow(ag)
    p0 = flow_partition(ag, base)
    path_vertices = []
    for path in c.paths:
        vs = set()
        for e in path:
            vs.update(g.endpoints(e))
        path_vertices.append(vs)
    # paths are vertex-disjoint components of the color-{1,2} subgraph
    assert not (path_vertices[0] & path_vertices[1])
    for combo in product((False, True), repeat=len(c.paths)):
        f = base
        for i, flip in enumerate(combo):
            if flip:
                f = switch_path(ag, f, i)
        p = flow_partition(ag, f)  # validates the degree identity
        expected_moved = set()
        for i, flip in enumerate(combo):
            if flip:
                expected_moved |= path_vertices[i]
        assert set(p0.white) ^ set(p.white) == expected_moved


def test_to_five_thirds_values_and_total():
    g = petersen()
    _, _, p = partition_for(g)
    val = to_five_thirds(p)
    assert val.denominator == 3
    assert set(val.numerators) == {-5, 5}
    assert sum(val.numerators) == 0
    assert subset_margin(g, val, [0]) == Fraction(5, 3) - 3
    assert subset_margin(g, val, range(g.n)) == 0


def test_flow_to_valuation_formula():
    g = petersen()
    f5 = solve_nowhere_zero_flow(g, 5)
    val = flow_to_valuation(g, f5, 5)
    assert val.denominator == 3
    for v in range(g.n):
        expected = Fraction(5, 3) * (2 * f5.out_degree(v) - 3)
        assert val.value(v) == expected
        assert abs(val.value(v)) == Fraction(5, 3)
    f4flow = solve_nowhere_zero_flow(k4(), 4)
    val4 = flow_to_valuation(k4(), f4flow, 4)
    for v in range(4):
        assert val4.value(v) == 2 * (2 * f4flow.out_degree(v) - 3)
        assert abs(val4.value(v)) == 2


def test_flow_valuations_are_balanced(corpus):
    for name, g in corpus:
        if g.n > 12:
            continue
        f = solve_nowhere_zero_flow(g, 5)
        val = flow_to_valuation(g, f, 5)
        assert check_balanced_bruteforce(g, val).balanced, name
        assert check_balanced_mincut(g, val).balanced, name


def test_trivial_subsets_never_violate():
    g = petersen()
    _, _, p = partition_for(g)
    val = to_five_thirds(p)
    assert subset_margin(g, val, []) == 0
    assert subset_margin(g, val, range(g.n)) == 0


def test_k4_all_positive_is_violated_by_everything():
    g = k4()
    val = Valuation(denominator=3, numerators=(5, 5, 5, 5))
    rb = check_balanced_bruteforce(g, val)
    rm = check_balanced_mincut(g, val)
    assert not rb.balanced and not rm.balanced
    assert rb.margin == rm.margin == Fraction(20, 3)
    assert rb.violator == rm.violator == (0, 1, 2, 3)
    assert rb.class_difference == 4


def test_checkers_agree_against_naive_oracle():
    rng = random.Random(7)
    g = k4()
    for _ in range(50):
        nums = tuple(rng.choice((-5, 5)) for _ in range(g.n))
        val = Valuation(denominator=3, numerators=nums)
        expected = brute_is_balanced(g, nums, 3)
        assert check_balanced_bruteforce(g, val).balanced == expected
        assert check_balanced_mincut(g, val).balanced == expected


def test_checkers_agree_on_random_assignments(corpus):
    rng = random.Random(12345)
    for name, g in corpus:
        if g.n > 12:
            continue
        for _ in range(40):
            nums = tuple(rng.choice((-5, 5)) for _ in range(g.n))
            val = Valuation(denominator=3, numerators=nums)
            rb = check_balanced_bruteforce(g, val)
            rm = check_balanced_mincut(g, val)
            assert rb.balanced == rm.balanced, name
            assert rb.margin == rm.margin, name
            if not rb.balanced:
                # both violators check out when recomputed from scratch
                assert subset_margin(g, val, rb.violator) == rb.margin
                assert subset_margin(g, val, rm.violator) == rm.margin


def test_bruteforce_guard():
    g = petersen()
    val = Valuation(denominator=3, numerators=(5,) * 10)
    with pytest.raises(ValueError, match="guard"):
        check_balanced_bruteforce(g, val, max_vertices=8)


def test_valuation_round_trip(corpus):
    for name, g in corpus:
        if g.n > 12:
            continue
        f = solve_nowhere_zero_flow(g, 5)
        val = flow_to_valuation(g, f, 5)
        back = valuation_to_flow(g, val, 5)
        assert verify_flow(g, back) == []
        assert flow_to_valuation(g, back, 5) == val, name


def test_k33_three_flow_round_trip():
    g = k33()
    f = solve_nowhere_zero_flow(g, 3)
    val = flow_to_valuation(g, f, 3)
    back = valuation_to_flow(g, val, 3)
    assert flow_to_valuation(g, back, 3) == val


def test_unbalanced_valuation_rejected():
    g = k4()
    val = Valuation(denominator=3, numerators=(5, 5, 5, 5))
    with pytest.raises(ValueError, match="not balanced"):
        valuation_to_flow(g, val, 5)


def test_wrong_form_valuation_rejected():
    g = k4()
    # balanced but not of the degree form for k=5
    val = Valuation(denominator=3, numerators=(0, 0, 0, 0))
    with pytest.raises(ValueError, match="degree form"):
        valuation_to_flow(g, val, 5)


def test_budget_failure_carries_instance():
    g = petersen()
    f = solve_nowhere_zero_flow(g, 5)
    val = flow_to_valuation(g, f, 5)
    with pytest.raises(BudgetExceededError) as err:
        valuation_to_flow(g, val, 5, max_orientations=0, fallback=False)
    assert err.value.payload["graph"]["n"] == g.n
    assert err.value.payload["valuation"]["denominator"] == 3
