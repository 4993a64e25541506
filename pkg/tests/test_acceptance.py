"""Acceptance suite: every headline guarantee at its stated scale.

Each criterion prints one PASS/FAIL line (run with ``pytest -s`` or
``-rA`` to see them).  Tolerances and counts are pinned here:

 1. Global snw passes the restrained core at the rational bound
    2.7182818285 >= e on 200 random constrained instances.
 2. Local snw passes the restrained core at exactly 2 on 100 random
    matroid instances with coverage utilities, from 5 seeded starts.
 3. Local pav satisfies restrained EJR on 100 random matroid instances.
 4. Local gpav passes the size-restricted core at exactly 2 - alpha
    (100 instances x alpha in {1/4, 1/2, 1}), and the explicit
    construction fails at 2 - alpha - eps.
 5. The 16/15 deviation constructor satisfies its five constraints on
    1000 rational points (250 per proof case, r = 40); both utility-floor
    deviations verify exactly; the capped symmetric search over the
    down-scaled instance (r = 5) reports its outcome honestly.  NOTE:
    the search part is red by design -- it finds and certifies a
    committee that passes the 16/15 restrained core at r = 5, refuting
    the criterion's emptiness arm (see that test's docstring).
 6. The parametric lower-bound family at beta = 6, r in {2, 3}: axioms
    and self-bounding exponent verified exhaustively, and every size-3r
    committee admits the two-voter deviation with exact ratio >= 32/27.
 7. Six supporting inequalities hold on 500 premise-satisfying random
    instances each (interval certificates must separate).
 8. The sampling expectation bound holds exactly on 500 triples per
    utility kind; the Monte-Carlo lower tail respects its bound at 1e5
    trials with three-sigma slack.
 9. The endowment-reduction constant is certified below 11.7 * beta *
    55^beta for beta = 1..5.
10. Every verifier agrees with its independently written naive oracle on
    1000 random tiny instances.
"""

import itertools
import os
from fractions import Fraction


from corelect.constraints import is_feasible
from corelect.errors import InfeasibleInstanceError
from corelect.instances import random_instance
from corelect.lb_search import lb1_emptiness_search
from corelect.solvers import solve_global
from corelect.theorems import (
    run_ejr,
    run_endow2_bound,
    run_lb00,
    run_lb1_lemma_deviations,
    run_lb1_points,
    run_lemmas,
    run_main1,
    run_matroid,
    run_sampling_bound,
    run_tail,
    run_tight_lower,
    run_tight_upper,
)
from corelect.verifiers import (
    check_core,
    check_endowment_core,
    check_pb_core,
    check_restrained_core,
    check_restrained_ejr,
)

from oracles import (
    oracle_core,
    oracle_endowment_core,
    oracle_pb_core,
    oracle_restrained_core,
    oracle_restrained_ejr,
)


def _report(num, name, suite):
    status = "PASS" if suite.passed else "FAIL"
    print(f"ACCEPTANCE {num} [{name}]: {status} "
          f"({suite.total} cases, {len(suite.failures)} failures)")
    for line in suite.failures[:5]:
        print(f"    {line}")
    assert suite.passed, f"criterion {num} failed: {suite.failures[:3]}"


def test_acceptance_1_global_snw_restrained_core_at_e():
    _report(1, "Global snw in e-approximate restrained core", run_main1(200))


def test_acceptance_2_local_snw_matroid_factor_two():
    _report(2, "Local snw in 2-approximate restrained core", run_matroid(100))


def test_acceptance_3_local_pav_restrained_ejr():
    _report(3, "Local pav satisfies restrained EJR", run_ejr(100))


def test_acceptance_4a_local_gpav_two_minus_alpha():
    _report(4, "Local gpav passes (2-alpha)-core for |S| >= alpha n", run_tight_upper(100))


def test_acceptance_4b_two_minus_alpha_is_tight():
    _report(4, "explicit instance fails (2-alpha-eps)-core", run_tight_lower())


def test_acceptance_5a_lb1_deviation_constraints():
    _report(5, "16/15 deviation constraints on 1000 points", run_lb1_points(250, r=40))


def test_acceptance_5b_lb1_lemma_deviations():
    _report(5, "utility-floor deviations verify exactly", run_lb1_lemma_deviations(r=40))


def test_acceptance_5c_lb1_emptiness_search_honest():
    """The criterion allows two outcomes (confirmed empty, or cap exceeded
    with no claim).  The search run deterministically past class 32679
    reaches a third: a committee class that PASSES the 16/15 restrained
    core at r=5, because the +1 in the blocking targets is generous at
    small r (the emptiness result carries an o(1) allowance that this
    down-scale does not absorb).  The candidate is certified by an
    independent allocator before this test reports the criterion as
    failed; see the decisions ledger for the full analysis."""
    from corelect.lb_search import verify_passing_class

    cap = float(os.environ.get("CORELECT_LB1_CAP_S", "600"))
    report = lb1_emptiness_search(5, time_cap_s=cap, class_cap=40_000)
    line = (
        f"ACCEPTANCE 5 [capped emptiness search r=5]: "
        f"{report.result}, {report.classes_checked}/{report.classes_total} classes "
        f"in {report.elapsed_s:.0f}s"
    )
    print(line)
    if report.result == "cap-exceeded":
        print("    cap exceeded: no stability claim made for the remainder")
    if report.result == "counterexample-candidate":
        cert = verify_passing_class(5, report.passing_class)
        print(
            f"    counterexample VERIFIED independently: counts {report.passing_class} "
            f"(+ dummies to size 32) passes the 16/15 restrained core at r=5"
        )
        if cert["passes"]:
            print(f"    utilities {cert['utilities']}, blocking targets {cert['targets']}")
            for c in cert["certificates"]:
                print(
                    f"    coalition {c['coalition']}: refuting reply {c['reply']}, "
                    f"residual targets {c['residual_targets']} vs budget {c['budget']}"
                )
        assert cert["passes"], (
            "search reported a passing class but the independent check "
            f"disagrees: {cert}"
        )
    assert report.result in ("confirmed-empty", "cap-exceeded"), (
        "criterion falsified, honestly red: the down-scaled instance's "
        "16/15-approximate restrained core is NON-empty at r=5 "
        f"(verified passing committee class {report.passing_class}); "
        "the 'confirms no feasible W passes' arm is unattainable because "
        "the blocking threshold gamma*(u+1) leaves integer slack at this "
        "scale, and the search finds the witness well inside the 1-hour cap"
    )


def test_acceptance_6_lb00_exponential_lower_bound():
    suite = run_lb00(beta=6, rs=(2, 3))
    for note in suite.notes:
        print(f"    {note}")
    _report(6, "beta=6 two-voter deviation ratio >= 32/27", suite)


def test_acceptance_7_lemma_suite():
    suite = run_lemmas(500)
    for note in suite.notes:
        print(f"    {note}")
    _report(7, "six supporting inequalities x500", suite)


def test_acceptance_8_sampling_bounds():
    _report(8, "sampling expectation bound x500 per kind", run_sampling_bound(500))
    _report(8, "Monte-Carlo lower tail at 1e5 trials", run_tail(100_000))


def test_acceptance_9_endow2_constant():
    _report(9, "reduction constant under 11.7 * beta * 55^beta", run_endow2_bound())


def _lex_first_committee(inst):
    for size in range(inst.k, -1, -1):
        for cand in itertools.combinations(sorted(inst.candidates), size):
            if is_feasible(inst.feasibility, frozenset(cand)):
                return frozenset(cand)
    return None


def test_acceptance_10_oracle_equivalence():
    mismatches = []
    gammas = (Fraction(1), Fraction(3, 2), Fraction(2))

    checked = 0
    for seed in range(1000):
        inst = random_instance(seed + 50_000, n_max=4, m_max=6, k_max=3)
        gamma = gammas[seed % 3]
        if seed % 2 == 0:
            try:
                W = solve_global(inst, "snw").committee.members
            except InfeasibleInstanceError:
                continue
        else:
            W = _lex_first_committee(inst)
            if W is None:
                continue
        mine = check_core(inst, W, gamma).verdict
        ref, _ = oracle_core(inst, W, gamma)
        if mine != ref:
            mismatches.append(("core", seed))
        checked += 1
    print(f"ACCEPTANCE 10 [core vs oracle]: "
          f"{'PASS' if not mismatches else 'FAIL'} ({checked} instances)")

    start = len(mismatches)
    checked = 0
    for seed in range(1000):
        inst = random_instance(seed + 60_000, n_max=4, m_max=6, k_max=3)
        gamma = gammas[seed % 3]
        W = _lex_first_committee(inst) if seed % 2 else None
        if W is None:
            try:
                W = solve_global(inst, "snw").committee.members
            except InfeasibleInstanceError:
                continue
        mine = check_restrained_core(inst, W, gamma).verdict
        ref, _ = oracle_restrained_core(inst, W, gamma)
        if mine != ref:
            mismatches.append(("restrained_core", seed))
        checked += 1
    print(f"ACCEPTANCE 10 [restrained core vs oracle]: "
          f"{'PASS' if len(mismatches) == start else 'FAIL'} ({checked} instances)")

    start = len(mismatches)
    checked = 0
    for seed in range(1000):
        inst = random_instance(
            seed + 70_000, n_max=4, m_max=6, k_max=3, utility_kinds=("approval",)
        )
        W = _lex_first_committee(inst)
        if W is None:
            continue
        mine = check_restrained_ejr(inst, W).verdict
        ref, _ = oracle_restrained_ejr(inst, W)
        if mine != ref:
            mismatches.append(("restrained_ejr", seed))
        checked += 1
    print(f"ACCEPTANCE 10 [restrained EJR vs oracle]: "
          f"{'PASS' if len(mismatches) == start else 'FAIL'} ({checked} instances)")

    start = len(mismatches)
    checked = 0
    for seed in range(1000):
        inst = random_instance(seed + 80_000, n_max=4, m_max=6, budget_mode=True)
        size = seed % 3
        W = frozenset(sorted(inst.candidates)[:size])
        theta = (Fraction(1), Fraction(2), Fraction(3))[seed % 3]
        mine = check_endowment_core(inst, W, theta).verdict
        ref, _ = oracle_endowment_core(inst, W, theta)
        if mine != ref:
            mismatches.append(("endowment", seed))
        checked += 1
    print(f"ACCEPTANCE 10 [endowment core vs oracle]: "
          f"{'PASS' if len(mismatches) == start else 'FAIL'} ({checked} instances)")

    start = len(mismatches)
    checked = 0
    for seed in range(1000):
        inst = random_instance(seed + 90_000, n_max=4, m_max=6, budget_mode=True)
        size = seed % 3
        W = frozenset(sorted(inst.candidates)[:size])
        gamma = gammas[seed % 3]
        mine = check_pb_core(inst, W, gamma).verdict
        ref, _ = oracle_pb_core(inst, W, gamma)
        if mine != ref:
            mismatches.append(("pb_core", seed))
        checked += 1
    print(f"ACCEPTANCE 10 [budget core vs oracle]: "
          f"{'PASS' if len(mismatches) == start else 'FAIL'} ({checked} instances)")

    assert not mismatches, mismatches[:10]
