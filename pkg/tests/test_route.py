import random

import pytest
from hypothesis import given, settings, strategies as st

from grasshopper import limits, route
from grasshopper.errors import CapacityError, InputError, TheoremViolation
from grasshopper.route import (
    CampaignConfig,
    JumpMultiset,
    MineField,
    Route,
    exhaustive_safe_order,
    extremal_instance,
    find_safe_order,
    is_blocked,
    is_valid_route,
    odd_reduction_route,
    random_campaign,
    verify_theorem_instance,
)


def test_route_starting_with_three():
    # exhaustive: only the two orders starting with 3 survive {1, 2}
    r = find_safe_order([1, 2, 3], [1, 2])
    assert r.order[0] == 3 and is_valid_route(r, [1, 2, 3], [1, 2])


def test_blocked_pair():
    assert find_safe_order([1, 2], [1, 2]) is None
    assert is_blocked([1, 2], [1, 2])


def test_single_jump():
    assert find_safe_order([5], []) == Route((5,), ())


def test_not_blocked_examples():
    assert not is_blocked([1, 2], [2])
    assert not is_blocked([-1, 1], [])


def test_final_sum_is_exempt():
    # the only landing spot that hits a mine is the final position 3
    assert find_safe_order([1, 2], [3]) is not None


def test_tie_break_lowest_index():
    # every order is safe; reconstruction picks the lowest index last, back to front
    assert find_safe_order([4, 5, 6], []).order == (6, 5, 4)


def test_duplicate_jumps_rejected():
    with pytest.raises(InputError):
        find_safe_order([1, 1, 2], [])


def test_zero_flag():
    with pytest.raises(InputError):
        JumpMultiset((0, 1), allow_zero=False)


def test_subset_cap(fresh_limits):
    limits.set_limits(limits.Limits(subset_n=4))
    with pytest.raises(CapacityError):
        find_safe_order(range(1, 6), [])


def test_exhaustive_cap():
    with pytest.raises(CapacityError):
        exhaustive_safe_order(range(1, 10), [])


@pytest.mark.parametrize(
    "n, hops, jumps, mines",
    [
        (4, True, (-1, 1, 2, 3), {1, 2, 3}),
        (5, True, (-1, 0, 1, 2, 3), {1, 2, 3}),
        (5, False, (-1, 1, 2, 3, 4), {1, 2, 3, 4}),
        (2, True, (1, 2), {1, 2}),
    ],
)
def test_extremal_instances(n, hops, jumps, mines):
    j, m = extremal_instance(n, hops)
    assert j.jumps == jumps and m.mines == mines
    assert is_blocked(j, m)


def test_extremal_needs_two():
    with pytest.raises(InputError):
        extremal_instance(1)


@pytest.mark.parametrize("n", range(2, 11))
def test_extremal_sharpness_small(n):
    for hops in (True, False):
        jumps, mines = extremal_instance(n, hops)
        for m in mines:
            fewer = mines.mines - {m}
            assert len(fewer) <= route.theorem_bound(jumps)
            assert find_safe_order(jumps, fewer) is not None


def test_verify_report_examples():
    rep = verify_theorem_instance([-3, 1, 4], [1, 2])
    assert rep.within_bound and rep.found and not rep.violation
    jumps, mines = extremal_instance(4)
    rep = verify_theorem_instance(jumps, mines)
    assert not rep.within_bound and not rep.found and not rep.violation
    rep = verify_theorem_instance([0, 1, 2], [1])
    assert rep.bound == 1 and rep.found
    assert rep.to_dict()["verdict"] == "found"


def test_odd_reduction_with_zero():
    assert odd_reduction_route([0, 1, 2], [1]).order == (2, 0, 1)


def test_odd_reduction_without_zero():
    r = odd_reduction_route([1, 2, 3], [1, 2])
    assert is_valid_route(r, [1, 2, 3], [1, 2])
    assert exhaustive_safe_order([1, 2, 3], [1, 2]) is not None


def test_odd_reduction_trivial():
    assert odd_reduction_route([5], []).order == (5,)


def test_odd_reduction_input_checks():
    with pytest.raises(InputError):
        odd_reduction_route([1, 2], [])
    with pytest.raises(InputError):
        odd_reduction_route([0, 1, 2], [1, 2])


@given(st.integers(0, 10**9))
@settings(max_examples=100, deadline=None)
def test_odd_reduction_random(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 4)
    n = 2 * k + 1
    jumps = rng.sample([a for a in range(-12, 13) if a != 0], n)
    if rng.random() < 0.5:
        jumps[0] = 0
    bound = route.theorem_bound(jumps)
    mines = rng.sample(range(-20, 21), bound)
    assert is_valid_route(odd_reduction_route(jumps, mines), jumps, mines)


instances = st.integers(1, 7).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(-9, 9), min_size=n, max_size=n, unique=True),
        st.sets(st.integers(-15, 15), max_size=n + 1),
    )
)


@given(instances)
@settings(max_examples=300, deadline=None)
def test_subset_dp_matches_enumeration(inst):
    jumps, mines = inst
    r = find_safe_order(jumps, mines)
    assert (r is None) == (exhaustive_safe_order(jumps, mines) is None)
    if r is not None:
        assert is_valid_route(r, jumps, mines)


@given(instances, st.randoms(use_true_random=False))
@settings(max_examples=200, deadline=None)
def test_order_insensitive(inst, rnd):
    jumps, mines = inst
    shuffled = list(jumps)
    rnd.shuffle(shuffled)
    assert is_blocked(jumps, mines) == is_blocked(shuffled, mines)


@given(instances)
@settings(max_examples=300, deadline=None)
def test_theorem_within_bound(inst):
    jumps, mines = inst
    mines = set(list(sorted(mines))[: route.theorem_bound(jumps)])
    assert find_safe_order(jumps, mines) is not None


def test_campaign_small_clean():
    stats = random_campaign(CampaignConfig(trials=300, seed=7))
    assert stats.trials == 300 and stats.found == 300 and stats.violations == 0
    assert stats.with_zero == stats.without_zero == 150


def test_campaign_empty():
    stats = random_campaign(CampaignConfig(trials=0))
    assert stats.trials == 0 and stats.violations == 0


def test_campaign_two_jumps():
    cfg = CampaignConfig(n_min=2, n_max=2, lo=0, hi=2, trials=20, zero_mode="nonzero", seed=1)
    for t in range(5):
        jumps, mines, _ = route.campaign_instance(cfg, t)
        assert sorted(jumps) == [1, 2] and len(mines) == 1
    assert verify_theorem_instance([1, 2], [2]).found
    assert random_campaign(cfg).found == 20


def test_campaign_is_deterministic_and_parallel_safe():
    cfg = CampaignConfig(trials=200, seed=3)
    a = random_campaign(cfg).to_dict()
    b = random_campaign(CampaignConfig(trials=200, seed=3, workers=2)).to_dict()
    assert a == b


def test_campaign_reports_violation(monkeypatch):
    monkeypatch.setattr(route, "find_safe_order", lambda j, m: None)
    with pytest.raises(TheoremViolation) as exc:
        random_campaign(CampaignConfig(trials=5, seed=0))
    assert exc.value.instance["trial"] == 0 and "jumps" in exc.value.instance


def test_campaign_config_validation():
    with pytest.raises(InputError):
        CampaignConfig(zero_mode="sometimes")
    with pytest.raises(InputError):
        CampaignConfig(lo=1)


def test_instance_documents():
    jumps, mines = route.instance_from_dict({"jumps": [1, "2", 3.0], "mines": [1]})
    assert jumps.jumps == (1, 2, 3) and mines == MineField(frozenset({1}))
    for bad in [{"mines": []}, {"jumps": [1, 1.5]}, {"jumps": "12"}, {"jumps": [True]}]:
        with pytest.raises(InputError):
            route.instance_from_dict(bad)
    assert route.instance_to_json([2, 1], {3}) == '{"jumps": [2, 1], "mines": [3]}'
