"""Capped exhaustive restrained-core search over the 16/15 construction.

The four-voter, six-party instance is symmetric under permuting
candidates within a party, so committees are enumerated as party-count
vectors (with dummies filling to k).  Two exact reductions keep the
search sound:

* only maximal-dummy committees need checking: shrinking the dummy part
  only removes planner options, so a failing maximal-dummy committee
  forces every smaller-dummy variant to fail too;
* the planner's sub-committee hatW matters only through its non-dummy
  party counts (dummies consume neither the packing cap nor utility).

Deciding "can the coalition reach its utility targets given hatW" is an
exact covering problem on the edges of K4 (each party is approved by
exactly two voters), solved by a complete depth-first allocation.

The search honors a wall-clock cap and reports honestly: confirmed
emptiness, cap exceeded (no claim), or a candidate committee that
passed (which would refute the bound at this scale).
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParameterError
from .exactnum import exact_ceil, parse_rational

PARTIES = ("ab", "bc", "ca", "ad", "bd", "cd")
VOTERS = ("a", "b", "c", "d")
EDGE_ENDPOINTS = tuple(
    tuple(VOTERS.index(ch) for ch in party) for party in PARTIES
)
EDGES_OF_VOTER = tuple(
    tuple(e for e, ends in enumerate(EDGE_ENDPOINTS) if v in ends) for v in range(4)
)


def _cover_feasible(needs, caps, budget, memo):
    """Can per-voter demands be met by K4 edge units within the budget?

    Each unit on edge e supplies one unit to both its endpoints;
    per-edge supply is capped.  Complete search: repeatedly pick the
    voter with the largest outstanding demand and allocate exactly that
    demand across its three edges (later voters may add more to shared
    edges, over-covering earlier ones, which is harmless).
    """
    needs = tuple(max(0, v) for v in needs)
    total = sum(needs)
    if total == 0:
        return True
    if budget <= 0 or total > 2 * budget or max(needs) > budget:
        return False
    key = (needs, caps, budget)
    cached = memo.get(key)
    if cached is not None:
        return cached
    v = max(range(4), key=lambda i: needs[i])
    demand = needs[v]
    e1, e2, e3 = EDGES_OF_VOTER[v]
    result = False
    for x1 in range(min(demand, caps[e1]), -1, -1):
        rem1 = demand - x1
        if rem1 > caps[e2] + caps[e3]:
            continue
        for x2 in range(min(rem1, caps[e2]), -1, -1):
            x3 = rem1 - x2
            if x3 > caps[e3]:
                continue
            alloc = {e1: x1, e2: x2, e3: x3}
            new_needs = list(needs)
            for e, x in alloc.items():
                if x:
                    for end in EDGE_ENDPOINTS[e]:
                        new_needs[end] -= x
            new_caps = list(caps)
            for e, x in alloc.items():
                new_caps[e] -= x
            if _cover_feasible(
                tuple(new_needs), tuple(new_caps), budget - demand, memo
            ):
                result = True
                break
        if result:
            break
    memo[key] = result
    return result


def _utilities(counts):
    return tuple(
        sum(counts[e] for e in EDGES_OF_VOTER[v]) for v in range(4)
    )


@dataclass
class EmptinessReport:
    result: str  # confirmed-empty / cap-exceeded / counterexample-candidate
    gamma: Fraction
    r: int
    classes_total: int
    classes_checked: int = 0
    elapsed_s: float = 0.0
    passing_class: object = None
    notes: list = field(default_factory=list)

    def to_json(self):
        from .exactnum import rational_to_json

        return {
            "result": self.result,
            "gamma": rational_to_json(self.gamma),
            "r": self.r,
            "classes_total": self.classes_total,
            "classes_checked": self.classes_checked,
            "elapsed_s": round(self.elapsed_s, 3),
            "passing_class": list(self.passing_class) if self.passing_class else None,
            "notes": list(self.notes),
        }


def _cover_feasible_second_opinion(needs, caps, budget):
    """Independent complete check of the covering question, used to verify
    passing-class certificates.  Nested per-edge enumeration with
    reachability pruning; deliberately shares no code with the main
    allocator above."""
    needs = tuple(max(0, v) for v in needs)

    def rec(idx, needs, caps, budget):
        needs = tuple(max(0, x) for x in needs)
        if sum(needs) == 0:
            return True
        if budget <= 0 or sum(needs) > 2 * budget:
            return False
        if idx == 6:
            return False
        for v in range(4):
            reach = sum(
                min(caps[j], budget)
                for j in range(idx, 6)
                if v in EDGE_ENDPOINTS[j]
            )
            if needs[v] > reach:
                return False
        a, b = EDGE_ENDPOINTS[idx]
        hi = min(caps[idx], budget, max(needs[a], needs[b]))
        for x in range(hi, -1, -1):
            nn = list(needs)
            nn[a] -= x
            nn[b] -= x
            if rec(idx + 1, tuple(nn), caps, budget - x):
                return True
        return False

    return rec(0, needs, tuple(caps), budget)


def verify_passing_class(r: int, counts, gamma=Fraction(16, 15), pool_size=None) -> dict:
    """Independently certify that a committee class passes the restrained core.

    For each of the 15 coalitions, finds a planner reply with no valid
    completion and re-verifies that impossibility with the second-opinion
    allocator.  Returns {"passes": bool, "certificates": [...]}; a failed
    certificate search reports the blocking coalition instead.
    """
    if r < 5 or r % 5 != 0:
        raise ParameterError("r must be a positive multiple of 5")
    gamma = parse_rational(gamma)
    cap = 6 * r
    k = 32 * r // 5
    pool = cap if pool_size is None else int(pool_size)
    counts = tuple(int(c) for c in counts)
    utils = _utilities(counts)
    needs_full = tuple(exact_ceil(gamma * (u + 1)) for u in utils)
    certificates = []
    for size in (4, 3, 2, 1):
        for S in itertools.combinations(range(4), size):
            kprime = (size * k) // 4
            hat_limit = k - kprime
            hat_cache: dict = {}
            refuting = None
            for hatw in _hat_iter(counts, hat_limit, hat_cache):
                hat_util = _utilities(hatw)
                residual = tuple(
                    needs_full[v] - hat_util[v] if v in S else 0 for v in range(4)
                )
                caps = tuple(pool - hatw[e] for e in range(6))
                budget = min(kprime, cap - sum(hatw))
                if not _cover_feasible_second_opinion(residual, caps, budget):
                    refuting = {
                        "coalition": S,
                        "reply": hatw,
                        "residual_targets": [residual[v] for v in S],
                        "budget": budget,
                    }
                    break
            if refuting is None:
                return {"passes": False, "blocking_coalition": S, "certificates": certificates}
            certificates.append(refuting)
    return {"passes": True, "utilities": list(utils), "targets": list(needs_full),
            "certificates": certificates}


def _compositions_count(total, parts, cap):
    # inclusion-exclusion over parts exceeding the cap
    result = 0
    for j in range(parts + 1):
        rem = total - j * (cap + 1)
        if rem < 0:
            break
        result += (-1) ** j * math.comb(parts, j) * math.comb(rem + parts - 1, parts - 1)
    return result


def _class_iter(pool, cap, k):
    """Party-count vectors with sum <= min(cap, k), each count <= pool."""
    limit = min(cap, k)

    def rec(idx, remaining):
        if idx == 5:
            for c in range(min(pool, remaining) + 1):
                yield (c,)
            return
        for c in range(min(pool, remaining) + 1):
            for rest in rec(idx + 1, remaining - c):
                yield (c,) + rest

    yield from rec(0, limit)


def _blocking_coalition_exists(counts, pool, cap, k, needs, memo):
    """Is there a coalition that blocks the committee with these counts?"""
    hat_cache: dict = {}
    coalitions = sorted(
        (S for size in (4, 3, 2, 1) for S in itertools.combinations(range(4), size)),
        key=lambda S: -len(S),
    )
    for S in coalitions:
        kprime = (len(S) * k) // 4
        hat_limit = k - kprime
        if any(needs[v] > 3 * pool for v in S):
            continue  # unreachable target even with every approved candidate
        blocked = True
        # planner replies: non-dummy count vectors below the committee's
        for hatw in _hat_iter(counts, hat_limit, hat_cache):
            hat_used = sum(hatw)
            hat_util = _utilities(hatw)
            residual = tuple(
                needs[v] - hat_util[v] if v in S else 0 for v in range(4)
            )
            caps = tuple(pool - hatw[e] for e in range(6))
            budget = min(kprime, cap - hat_used)
            if not _cover_feasible(residual, caps, budget, memo):
                blocked = False
                break
        if blocked:
            return True, S
    return False, None


def _hat_iter(counts, hat_limit, cache):
    key = (counts, hat_limit)
    if key not in cache:
        options = []

        def rec(idx, remaining, prefix):
            if idx == 6:
                options.append(tuple(prefix))
                return
            for c in range(min(counts[idx], remaining) + 1):
                prefix.append(c)
                rec(idx + 1, remaining - c, prefix)
                prefix.pop()

        rec(0, hat_limit, [])
        # try cap-hungry planner replies first: refutations come fast
        options.sort(key=lambda h: -sum(h))
        cache[key] = options
    return cache[key]


def lb1_emptiness_search(
    r: int,
    gamma=Fraction(16, 15),
    time_cap_s: float = 60.0,
    pool_size=None,
    class_cap=None,
) -> EmptinessReport:
    """Scan every committee class of the 16/15 instance for one that passes
    the gamma-approximate restrained core, under a wall-clock cap and an
    optional deterministic class-count cap.

    The per-class verdict follows the restrained definition exactly
    (floored endowment, all completable planner replies, coalition
    utility targets gamma*(u+1) rounded up to the next integer).
    Note the +1 in the targets: at small r it is generous enough that
    passing committees exist (the asymptotic emptiness has an o(1)
    allowance); a found one is reported as a counterexample candidate
    and can be certified with ``verify_passing_class``.
    """
    if r < 5 or r % 5 != 0:
        raise ParameterError("r must be a positive multiple of 5")
    gamma = parse_rational(gamma)
    cap = 6 * r
    k = 32 * r // 5
    pool = cap if pool_size is None else int(pool_size)
    classes_total = sum(
        _compositions_count(t, 6, pool) for t in range(min(cap, k) + 1)
    )
    report = EmptinessReport(
        result="cap-exceeded", gamma=gamma, r=r, classes_total=classes_total
    )
    start = time.monotonic()
    memo: dict = {}
    checked = 0
    for counts in _class_iter(pool, cap, k):
        if time.monotonic() - start > time_cap_s or (
            class_cap is not None and checked >= class_cap
        ):
            report.notes.append(
                f"stopped after {checked} of {classes_total} classes; "
                "no stability claim is made for the unchecked remainder"
            )
            break
        utils = _utilities(counts)
        needs = tuple(exact_ceil(gamma * (u + 1)) for u in utils)
        blocked, S = _blocking_coalition_exists(counts, pool, cap, k, needs, memo)
        checked += 1
        if not blocked:
            report.result = "counterexample-candidate"
            report.passing_class = counts
            report.notes.append(
                f"counts {counts} pass the {gamma}-restrained core at r={r}"
            )
            break
    else:
        report.result = "confirmed-empty"
    report.classes_checked = checked
    report.elapsed_s = time.monotonic() - start
    return report
