from fractions import Fraction

import pytest

from corelect.errors import InfeasibleInstanceError, RuleMismatchError
from corelect.instances import (
    gen_rest1,
    gen_xos_example,
    random_instance,
)
from corelect.model import AdditiveUtility, ApprovalUtility, Instance
from corelect.solvers import solve_global, solve_local
from corelect.verifiers import (
    blocks_core,
    blocks_restrained_core,
    blocks_restrained_ejr,
    check_core,
    check_endowment_core,
    check_pb_core,
    check_restrained_core,
    check_restrained_ejr,
)

from oracles import (
    oracle_classic_ejr,
    oracle_core,
    oracle_endowment_core,
    oracle_pb_core,
    oracle_restrained_core,
    oracle_restrained_ejr,
)


# ---------------------------------------------------------------------------
# plain core
# ---------------------------------------------------------------------------


def test_core_xos_block_fails_at_half_k():
    k = 4
    inst = gen_xos_example(k)
    A, B = inst.meta["A"], inst.meta["B"]
    report = check_core(inst, A, Fraction(k, 2))
    assert not report.verdict
    assert report.witness["T"] == B
    assert report.witness["S"] == frozenset(range(k))


def test_core_single_voter_optimum_passes():
    u = AdditiveUtility({0: 1, 1: Fraction(3, 4), 2: Fraction(1, 2), 3: Fraction(1, 4)})
    inst = Instance([0, 1, 2, 3], [u], k=2, validate="trust")
    W = solve_global(inst, "snw").committee.members
    assert check_core(inst, W, 1).verdict


def test_core_matches_oracle_on_random_instances():
    for seed in range(60):
        inst = random_instance(seed, n_max=4, m_max=6, k_max=3, utility_kinds=("additive",))
        W = solve_global(inst, "snw").committee.members
        for gamma in (Fraction(1), Fraction(3, 2)):
            mine = check_core(inst, W, gamma)
            ref, witness = oracle_core(inst, W, gamma)
            assert mine.verdict == ref
            if not mine.verdict:
                S, T = mine.witness["S"], mine.witness["T"]
                assert blocks_core(inst, W, gamma, S, T)


def test_core_min_coalition_filter():
    # a deviation only a lone voter wants disappears once coalitions
    # must contain at least two voters
    inst = Instance(
        [0, 1],
        [ApprovalUtility([0]), ApprovalUtility([1])],
        k=2,
        validate="trust",
    )
    W = frozenset({1})  # fails for voter 0 alone at gamma = 1
    lone = check_core(inst, W, 1)
    assert not lone.verdict and lone.witness["S"] == frozenset({0})
    filtered = check_core(inst, W, 1, min_coalition=2)
    assert filtered.verdict


def test_core_rejects_budget_mode():
    inst = random_instance(5, budget_mode=True)
    with pytest.raises(InfeasibleInstanceError):
        check_core(inst, frozenset(), 1)


def test_core_gamma_monotone():
    for seed in range(20):
        inst = random_instance(seed + 900, n_max=4, m_max=6, k_max=3)
        try:
            W = solve_global(inst, "snw").committee.members
        except InfeasibleInstanceError:
            continue
        verdicts = [
            check_core(inst, W, g).verdict
            for g in (Fraction(1), Fraction(5, 4), Fraction(2), Fraction(4))
        ]
        for lo, hi in zip(verdicts, verdicts[1:]):
            assert not lo or hi  # pass at gamma implies pass at gamma' >= gamma


# ---------------------------------------------------------------------------
# restrained core
# ---------------------------------------------------------------------------


def test_restrained_equals_core_when_unconstrained():
    for seed in range(40):
        inst = random_instance(
            seed + 37, n_max=4, m_max=6, k_max=3, constraint_kinds=("none",)
        )
        W = solve_global(inst, "snw").committee.members
        for gamma in (Fraction(1), Fraction(2)):
            a = check_restrained_core(inst, W, gamma)
            b = check_core(inst, W, gamma)
            assert a.verdict == b.verdict
            assert "unconstrained-reduces-to-core" in a.flags


def test_restrained_spreading_committee_passes_rest1():
    inst = gen_rest1(2)
    W = solve_global(inst, "snw").committee.members
    report = check_restrained_core(inst, W, Fraction(101, 100))
    assert report.verdict


def test_restrained_lopsided_committee_also_passes_rest1():
    # two from block 1, none from block 2, dummies fill up: the blocked
    # group is shut out by any planner reply holding both specials
    inst = gen_rest1(2)
    block1 = sorted(inst.meta["blocks"][0])
    dummies = sorted(inst.meta["dummies"])
    W = frozenset(block1) | frozenset(dummies[:2])
    report = check_restrained_core(inst, W, Fraction(101, 100))
    assert report.verdict
    # yet the same committee fails the naive constrained core at factor q:
    # the shut-out block deviates inside the constraint on its own
    q = inst.meta["q"]
    group2 = inst.meta["blocks"][1]
    voters = frozenset(i for i in range(inst.n) if inst.utility(i, group2) > 0)
    assert blocks_core(inst, W, Fraction(q), voters, group2)
    from corelect.constraints import is_feasible

    assert is_feasible(inst.feasibility, group2)


def test_restrained_matches_quantifier_oracle_with_packing():
    for seed in range(40):
        inst = random_instance(
            seed + 71, n_max=4, m_max=6, k_max=3, constraint_kinds=("packing",)
        )
        W = solve_global(inst, "snw").committee.members
        for gamma in (Fraction(1), Fraction(2)):
            mine = check_restrained_core(inst, W, gamma)
            ref, _ = oracle_restrained_core(inst, W, gamma)
            assert mine.verdict == ref


def test_restrained_witness_replays():
    # deliberately bad committees (lexicographically first feasible) so
    # blocked verdicts are plentiful, then replay every certificate
    from corelect.constraints import is_feasible
    import itertools as it

    found = 0
    for seed in range(200):
        inst = random_instance(seed, n_max=4, m_max=6, k_max=3)
        W = None
        for size in range(inst.k, -1, -1):
            for cand in it.combinations(sorted(inst.candidates), size):
                if is_feasible(inst.feasibility, frozenset(cand)):
                    W = frozenset(cand)
                    break
            if W is not None:
                break
        if W is None:
            continue
        report = check_restrained_core(inst, W, 1)
        if report.verdict:
            continue
        found += 1
        S = report.witness["S"]
        cert = report.witness["completions"]
        ok, _ = blocks_restrained_core(inst, W, 1, S, cert=cert)
        assert ok
        if found >= 10:
            break
    assert found >= 3


def test_restrained_any_hatw_mode_is_no_easier_to_block():
    for seed in range(25):
        inst = random_instance(seed + 300, n_max=3, m_max=5, k_max=3)
        try:
            W = solve_global(inst, "snw").committee.members
        except InfeasibleInstanceError:
            continue
        sub = check_restrained_core(inst, W, 1, mode="subset_of_W")
        anyw = check_restrained_core(inst, W, 1, mode="any_hatW")
        # blocking in any-committee mode implies blocking in subset mode
        if not anyw.verdict:
            assert not sub.verdict


def test_restrained_requires_feasible_committee():
    inst = gen_rest1(2)
    special = frozenset(sorted(inst.meta["blocks"][0] | inst.meta["blocks"][1]))
    with pytest.raises(ValueError):
        check_restrained_core(inst, special, 1)  # violates the partition cap


def test_restrained_enumeration_caps():
    from corelect.errors import EnumerationLimitError
    from corelect.instances import gen_lb_16_15

    inst = gen_lb_16_15(5)  # 212 candidates, way past the cap
    W = frozenset(sorted(inst.meta["dummies"])[: inst.k])
    with pytest.raises(EnumerationLimitError):
        check_restrained_core(inst, W, Fraction(16, 15))


def test_restrained_covering_constraints_match_oracle():
    # covering rows go through the generic completability path
    from corelect.constraints import CoveringFamily
    from corelect.instances import random_utility, rng_from_seed

    checked = 0
    for seed in range(60):
        rng = rng_from_seed(seed + 31337)
        n = int(rng.integers(1, 4))
        m = int(rng.integers(3, 6))
        k = int(rng.integers(1, 4))
        cands = list(range(m))
        kind = ("approval", "additive")[seed % 2]
        utilities = [random_utility(kind, cands, rng) for _ in range(n)]
        row = [int(c) for c in rng.permutation(m)[: int(rng.integers(1, 3))]]
        lo = int(rng.integers(0, min(len(row), k) + 1))
        inst = Instance(
            cands, utilities, k=k, feasibility=CoveringFamily([(row, lo)], k), validate="trust"
        )
        try:
            W = solve_global(inst, "snw").committee.members
        except InfeasibleInstanceError:
            continue
        for gamma in (Fraction(1), Fraction(2)):
            mine = check_restrained_core(inst, W, gamma).verdict
            ref, _ = oracle_restrained_core(inst, W, gamma)
            assert mine == ref, (seed, gamma)
            checked += 1
    assert checked >= 40


def test_restrained_any_hatw_matches_oracle():
    checked = 0
    for seed in range(60):
        inst = random_instance(seed + 99000, n_max=3, m_max=5, k_max=3)
        try:
            W = solve_global(inst, "snw").committee.members
        except InfeasibleInstanceError:
            continue
        mine = check_restrained_core(inst, W, Fraction(1), mode="any_hatW").verdict
        ref, _ = oracle_restrained_core(inst, W, Fraction(1), mode="any_hatW")
        assert mine == ref, seed
        checked += 1
    assert checked >= 40


def test_zero_committee_size_edge():
    inst = Instance([0, 1], [ApprovalUtility([0])], k=0, validate="trust")
    assert check_core(inst, frozenset(), 1).verdict
    assert check_restrained_core(inst, frozenset(), 1).verdict


# ---------------------------------------------------------------------------
# restrained EJR
# ---------------------------------------------------------------------------


def test_ejr_equals_classic_when_unconstrained():
    for seed in range(50):
        inst = random_instance(
            seed + 11,
            n_max=4,
            m_max=6,
            k_max=3,
            utility_kinds=("approval",),
            constraint_kinds=("none",),
        )
        W = solve_local(inst, "pav").committee.members
        mine = check_restrained_ejr(inst, W)
        classic, _ = oracle_classic_ejr(inst, W)
        restrained, _ = oracle_restrained_ejr(inst, W)
        assert mine.verdict == classic == restrained


def test_ejr_single_voter_with_enough_approvals_passes():
    inst = Instance([0, 1, 2, 3], [ApprovalUtility([0, 1, 2])], k=2, validate="trust")
    assert check_restrained_ejr(inst, {0, 1}).verdict


def test_ejr_unrepresented_committee_fails():
    inst = Instance([0, 1, 2, 3], [ApprovalUtility([0, 1])] * 4, k=2, validate="trust")
    report = check_restrained_ejr(inst, {2, 3})
    assert not report.verdict
    S = report.witness["S"]
    ok, _ = blocks_restrained_ejr(inst, frozenset({2, 3}), S, cert=report.witness["completions"])
    assert ok


def test_ejr_local_pav_passes_on_partition_instances():
    for seed in range(30):
        inst = random_instance(
            seed + 5,
            n_max=5,
            m_max=7,
            k_max=4,
            utility_kinds=("approval",),
            constraint_kinds=("partition",),
        )
        W = solve_local(inst, "pav").committee.members
        assert check_restrained_ejr(inst, W).verdict


def test_ejr_requires_approval():
    inst = random_instance(2, utility_kinds=("additive",))
    with pytest.raises(RuleMismatchError):
        check_restrained_ejr(inst, frozenset())


# ---------------------------------------------------------------------------
# budget-mode notions
# ---------------------------------------------------------------------------


def _pb_instance(weights_list, sizes, budget):
    m = len(sizes)
    return Instance(
        list(range(m)),
        [AdditiveUtility(w) for w in weights_list],
        sizes={c: s for c, s in enumerate(sizes)},
        budget=budget,
        validate="trust",
    )


def test_endowment_huge_theta_passes_with_flag():
    inst = _pb_instance([{0: 1}], [1, 1], 2)
    report = check_endowment_core(inst, {1}, 1000)
    # the lone voter gets nothing from W, so the empty deviation ties;
    # it never blocks but the degeneracy is flagged
    assert report.verdict
    assert "degenerate-empty-deviation" in report.flags
    happy = check_endowment_core(inst, {0}, 1000)
    assert happy.verdict and "degenerate-empty-deviation" not in happy.flags


def test_endowment_welfare_optimum_passes_theta_one():
    inst = _pb_instance([{0: 1, 1: Fraction(1, 2)}], [1, 2], 2)
    # spend the whole budget on the voter's favorite affordable bundle
    report = check_endowment_core(inst, {0}, 1)
    assert report.verdict


def test_endowment_matches_oracle():
    for seed in range(60):
        inst = random_instance(seed, n_max=3, m_max=5, budget_mode=True)
        W = frozenset(sorted(inst.candidates)[:2])
        for theta in (Fraction(1), Fraction(2)):
            mine = check_endowment_core(inst, W, theta)
            ref, _ = oracle_endowment_core(inst, W, theta)
            assert mine.verdict == ref


def test_endowment_mode_errors_and_lift():
    inst = random_instance(8)  # k-mode
    with pytest.raises(InfeasibleInstanceError):
        check_endowment_core(inst, frozenset(), 1)
    lifted = check_endowment_core(inst, frozenset(sorted(inst.candidates)[: inst.k]), 1, auto_lift=True)
    assert "auto-lifted-unit-sizes" in lifted.flags


def test_pb_core_unit_sizes_matches_core():
    for seed in range(40):
        inst = random_instance(seed + 21, n_max=4, m_max=6, k_max=3, constraint_kinds=("none",))
        W = solve_global(inst, "snw").committee.members
        pb = check_pb_core(inst, W, Fraction(3, 2), auto_lift=True)
        plain = check_core(inst, W, Fraction(3, 2))
        assert pb.verdict == plain.verdict


def test_pb_core_empty_committee_blocked_at_gamma_one():
    inst = _pb_instance([{0: 1}], [1], 1)
    report = check_pb_core(inst, frozenset(), 1)
    assert not report.verdict
    assert report.witness["T"] == frozenset({0})


def test_pb_core_matches_oracle():
    for seed in range(60):
        inst = random_instance(seed + 100, n_max=3, m_max=5, budget_mode=True)
        W = frozenset(sorted(inst.candidates)[:1])
        for gamma in (Fraction(1), Fraction(3, 2)):
            mine = check_pb_core(inst, W, gamma)
            ref, _ = oracle_pb_core(inst, W, gamma)
            assert mine.verdict == ref


def test_theta_monotone_for_endowment():
    for seed in range(20):
        inst = random_instance(seed + 400, n_max=3, m_max=5, budget_mode=True)
        W = frozenset(sorted(inst.candidates)[:2])
        verdicts = [
            check_endowment_core(inst, W, theta).verdict
            for theta in (Fraction(1), Fraction(2), Fraction(5))
        ]
        for lo, hi in zip(verdicts, verdicts[1:]):
            assert not lo or hi
