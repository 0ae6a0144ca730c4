import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphereworld_mp.configuration import CollisionError, permute, separation_many
from sphereworld_mp.paths import evaluate_specs
from sphereworld_mp.planner import (
    E_AXIS,
    PlannerInputError,
    lerp,
    plan,
    punctured_planner,
    rule_census,
    separate,
    spread_planner,
    strictly_increasing,
    witness_pairs,
)
from sphereworld_mp.tc import tc_value
from sphereworld_mp.validation import validate_path


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_rule_counts(k):
    assert spread_planner(2, k, "strict").rule_count == k * k
    assert spread_planner(2, k, "merged").rule_count == 2 * k - 1


def test_punctured_rule_counts():
    q = [(0.0, 0.0), (4.0, 1.0)]
    k = 3
    assert punctured_planner(2, k, q, "strict").rule_count == (k + 1) ** 2 * 2**k
    assert punctured_planner(2, k, q, "merged").rule_count == (2 * k + 1) * 2**k


def test_k1_is_a_single_rule_path():
    p = spread_planner(2, 1)
    path = plan(p, [(0.0, 0.0)], [(3.0, -2.0)])
    assert p.rule_count == 1
    assert np.array_equal(path.start, [(0.0, 0.0)]) and np.array_equal(path.end, [(3.0, -2.0)])


@pytest.mark.parametrize("mode", ["strict", "merged"])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_witnesses_hit_every_rule(mode, k):
    p = spread_planner(3, k, mode)
    census = rule_census(p, witness_pairs(p))
    assert census["total"] == p.rule_count
    assert all(c == 1 for c in census["counts"].values())


def test_general_position_pair_uses_top_strict_rule():
    p = spread_planner(2, 2)
    assert p.select(np.array([(0.0, 0.0), (1.0, 1.0)]), np.array([(2.0, 0.0), (3.0, 5.0)])).id == "strict/2-2"


def test_strict_domains_partition_random_pairs():
    rng = np.random.default_rng(21)
    p = spread_planner(2, 3)
    for _ in range(500):
        A = rng.integers(-2, 3, size=(3, 2)).astype(float)
        B = rng.integers(-2, 3, size=(3, 2)).astype(float)
        if len(np.unique(A, axis=0)) < 3 or len(np.unique(B, axis=0)) < 3:
            continue
        assert len(p.matching_rules(A, B)) == 1


def test_lower_bound_sanity():
    for n in (2, 3, 4):
        for k in (2, 3, 4, 5):
            for mode in ("strict", "merged"):
                assert spread_planner(n, k, mode).rule_count >= tc_value(n, 0, k)
                for m, q in [(1, [(0.0,) * n]), (2, [(0.0,) * n, (1.0,) + (0.0,) * (n - 1)])]:
                    assert punctured_planner(n, k, q, mode).rule_count >= tc_value(n, m, k)
    assert spread_planner(3, 2, "merged").rule_count == tc_value(3, 0, 2)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.floats(-100, 100), min_size=2, max_size=8, unique=True),
    st.lists(st.floats(-100, 100), min_size=2, max_size=8, unique=True),
    st.floats(0, 1),
)
def test_convex_combination_of_increasing_tuples_is_increasing(a, b, s):
    size = min(len(a), len(b))
    a, b = np.sort(a[:size]), np.sort(b[:size])
    mix = lerp(a, b, s)
    # rounding can only tie neighbours that were already within an ulp in both inputs
    if np.all(np.diff(a) > 1e-9) and np.all(np.diff(b) > 1e-9):
        assert strictly_increasing(mix)


def test_lerp_is_exact_at_endpoints():
    a, b = np.array([0.1, 0.7]), np.array([1e-17, 3.3])
    assert np.array_equal(lerp(a, b, 0.0), a)
    assert np.array_equal(lerp(a, b, 1.0), b)


def test_separate_breaks_ties_below_quarter_gap():
    c = np.array([(0.0, 1.0), (0.0, 0.0), (1.0, 0.0)])
    out = separate(c, np.zeros((0, 2)))
    # gap 1, k = 3 so delta = 1/12; (0, 0) ranks before (0, 1)
    assert np.array_equal(out[:, E_AXIS], [1.0 / 12.0, 0.0, 1.0])
    pinned = separate(c, np.array([(0.0, 5.0)]))
    assert np.array_equal(pinned[:, E_AXIS], [2.0 / 12.0, 1.0 / 12.0, 1.0])


def test_endpoints_exact_and_a_equals_b():
    p = spread_planner(2, 3)
    A = np.array([(0.0, 0.0), (0.0, 1.0), (2.0, 2.0)])
    path = plan(p, A, A)
    assert np.array_equal(path.start, A) and np.array_equal(path.end, A)
    assert validate_path(path, A, A).valid


def test_swap_on_e_axis():
    A = np.array([(-1.0, 0.0), (1.0, 0.0)])
    B = A[::-1].copy()
    mid = lerp(A, B, 0.5)
    assert np.array_equal(mid[0], mid[1])  # the straight line collides
    path = plan(spread_planner(2, 2), A, B)
    rep = validate_path(path, A, B)
    assert rep.valid and rep.min_separation >= 0.4


def test_planner_is_equivariant():
    rng = np.random.default_rng(22)
    p = spread_planner(3, 4)
    for _ in range(20):
        A, B = rng.normal(size=(4, 3)), rng.normal(size=(4, 3))
        A[1, 0] = A[2, 0]
        for sigma in [(1, 0, 3, 2), (3, 2, 1, 0)]:
            left = evaluate_specs(p.section(permute(A, sigma), permute(B, sigma)), 33)
            right = permute(evaluate_specs(p.section(A, B), 33), sigma)
            assert np.array_equal(left, right)


def test_no_punctures_reduces_to_spread_planner():
    rng = np.random.default_rng(23)
    a, b = punctured_planner(2, 3, np.zeros((0, 2))), spread_planner(2, 3)
    A, B = rng.normal(size=(3, 2)), rng.normal(size=(3, 2))
    pa, pb = plan(a, A, B), plan(b, A, B)
    assert pa.rule_ids == pb.rule_ids
    assert np.array_equal(pa.all_samples(), pb.all_samples())


def test_detour_bump_through_a_puncture():
    p = punctured_planner(2, 1, [(0.0, 0.0)])
    a, b = np.array([(0.0, -1.0)]), np.array([(0.0, 1.0)])
    amp, centre = p.detours(a, b)
    # closest approach is the puncture itself, so the full bump fires at tau = 1/2
    assert amp[0, 0] == p.beta and centre[0, 0] == 0.5
    fn = p._phase_fn(a, b)
    tau = np.linspace(0, 1, 2001)
    pts = fn(tau)[:, 0, :]
    assert np.allclose(pts[1000], [p.beta, 0.0])
    assert np.linalg.norm(pts, axis=1).min() > 0


def test_robot_on_puncture_level_detours_and_stays_clear():
    p = punctured_planner(2, 1, [(0.0, 0.0)])
    A, B = np.array([(0.0, -1.0)]), np.array([(0.0, -2.0)])
    rid = p.select(A, B).id
    assert rid.endswith("detour=1")
    path = plan(p, A, B)
    rep = validate_path(path, A, B, punctures=p.punctures)
    assert rep.valid and rep.min_puncture_clearance > 0


def test_start_on_puncture_is_rejected():
    p = punctured_planner(2, 2, [(0.0, 0.0)])
    with pytest.raises(PlannerInputError):
        p.check_input([(0.0, 0.0), (1.0, 1.0)])
    with pytest.raises(CollisionError):
        p.check_input([(1.0, 0.0), (1.0, 0.0)])


def test_punctured_property_run():
    rng = np.random.default_rng(24)
    q = np.array([(0.0, 0.0), (3.0, -2.0)])
    p = punctured_planner(2, 3, q)
    detoured = 0
    for trial in range(1000):
        A, B = rng.uniform(-5, 5, size=(3, 2)), rng.uniform(-5, 5, size=(3, 2))
        if trial % 4 == 0:
            # force robots onto the puncture levels so detours actually fire
            A[0, E_AXIS], B[1, E_AXIS] = q[0, E_AXIS], q[1, E_AXIS]
        path = plan(p, A, B, 64)
        detoured += "1" in path.rule_ids[0]
        rep = validate_path(path, A, B, punctures=q)
        assert rep.valid, rep.problems
    assert detoured > 100


def test_paths_are_collision_free_on_a_dense_grid():
    rng = np.random.default_rng(25)
    p = spread_planner(2, 4, "merged")
    for _ in range(50):
        A = rng.integers(-2, 3, size=(4, 2)).astype(float)
        B = rng.integers(-2, 3, size=(4, 2)).astype(float)
        if len(np.unique(A, axis=0)) < 4 or len(np.unique(B, axis=0)) < 4:
            continue
        samples = evaluate_specs(p.section(A, B), 257)
        assert separation_many(samples).min() > 0


def test_all_strict_rule_ids_are_distinct():
    p = spread_planner(2, 3)
    ids = [r.id for r in p.rules]
    assert len(set(ids)) == len(ids)
    assert set(ids) == {f"strict/{a}-{b}" for a, b in itertools.product(range(1, 4), repeat=2)}
