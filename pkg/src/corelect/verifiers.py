"""Brute-force decision procedures for the five stability notions.

Each checker enumerates deterministically (sizes ascending, candidate ids
ascending), decides with exact arithmetic, and returns a report whose
failure witness replays through the definitional predicates in this
module.  Witnesses are canonical: the first blocking object in
enumeration order.

The committee-size notions compare the deviating committee's size against
the coalition's proportional endowment |S|*k/n without rounding (for
integer |T| this coincides with the floored endowment used by the
restrained notions; the report notes the convention).  Empty coalitions
and empty deviations never block; a degenerate empty deviation that would
tie on utility is flagged instead.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .errors import EnumerationLimitError, InfeasibleInstanceError, RuleMismatchError
from .exactnum import parse_rational
from .model import ApprovalUtility, Instance

NOTIONS = ("core", "restrained_core", "restrained_ejr", "endowment_core", "pb_core")

DEFAULT_SUBSET_CAP = 1 << 20
RESTRAINED_N_CAP = 10
RESTRAINED_M_CAP = 14


@dataclass
class VerificationReport:
    notion: str
    gamma_or_theta: Fraction
    verdict: bool  # True = stable (pass), False = blocked (fail)
    witness: Optional[dict] = None
    stats: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict

    def to_json(self):
        from .exactnum import rational_to_json

        out = {
            "notion": self.notion,
            "gamma_or_theta": rational_to_json(self.gamma_or_theta),
            "verdict": "pass" if self.verdict else "fail",
            "stats": dict(self.stats),
            "flags": list(self.flags),
        }
        if self.witness is not None:
            w = {}
            if "S" in self.witness:
                w["S"] = sorted(self.witness["S"])
            if "T" in self.witness:
                w["T"] = sorted(self.witness["T"])
            if "completions" in self.witness:
                w["completions"] = [
                    {"hatW": sorted(h), "Wprime": sorted(p)}
                    for h, p in sorted(
                        self.witness["completions"].items(),
                        key=lambda kv: (len(kv[0]), sorted(kv[0])),
                    )
                ]
            out["witness"] = w
        return out


def _subsets_by_size(pool: Iterable[int], max_size: int):
    pool = sorted(pool)
    for size in range(max_size + 1):
        yield from (frozenset(c) for c in itertools.combinations(pool, size))


def _guard_enumeration(m: int, max_size: int, cap: int):
    total = sum(math.comb(m, s) for s in range(min(max_size, m) + 1))
    if total > cap:
        raise EnumerationLimitError(
            f"would enumerate {total} subsets (> cap {cap}); instance too large"
        )


# ---------------------------------------------------------------------------
# definitional predicates (used by the checkers and for witness replay)
# ---------------------------------------------------------------------------


def blocks_core(instance, W, gamma, S, T, min_coalition=None) -> bool:
    """Does (S, T) block W in the gamma-approximate core sense?"""
    W, T, S = frozenset(W), frozenset(T), frozenset(S)
    gamma = parse_rational(gamma)
    if not S or not T:
        return False
    if min_coalition is not None and len(S) < min_coalition:
        return False
    if len(T) * instance.n > len(S) * instance.k:
        return False
    return all(
        instance.utility(i, T) >= gamma * (instance.utility(i, W) + 1) for i in S
    )


def blocks_pb_core(instance, W, gamma, S, T) -> bool:
    W, T, S = frozenset(W), frozenset(T), frozenset(S)
    gamma = parse_rational(gamma)
    if not S or not T:
        return False
    if instance.cost(T) * instance.n > len(S) * instance.budget:
        return False
    return all(
        instance.utility(i, T) >= gamma * (instance.utility(i, W) + 1) for i in S
    )


def blocks_endowment(instance, W, theta, S, T) -> bool:
    """Endowment blocking demands a strict gain for every member.

    The printed definition compares with >=, but that reading is
    degenerate (any committee ties with itself and the empty deviation
    ties with zero-utility voters); equality-only deviations are
    reported as flags, never as blocks.
    """
    W, T, S = frozenset(W), frozenset(T), frozenset(S)
    theta = parse_rational(theta)
    if not S or not T:
        return False
    if instance.cost(T) * theta * instance.n > len(S) * instance.budget:
        return False
    return all(instance.utility(i, T) > instance.utility(i, W) for i in S)


def completable_hatw_domain(instance, W, kprime, mode) -> list:
    """All k'-completable hatW of size <= k - k' (subset or any-committee mode)."""
    from .constraints import is_q_completable

    P = instance.feasibility
    pool = frozenset(W) if mode == "subset_of_W" else frozenset(instance.candidates)
    domain = []
    for hatW in _subsets_by_size(pool, instance.k - kprime):
        ok, _ = is_q_completable(P, hatW, kprime, instance.candidates)
        if ok:
            domain.append(hatW)
    return domain


def blocks_restrained_core(instance, W, gamma, S, mode="subset_of_W", cert=None):
    """Does coalition S block W in the restrained-core sense?

    Quantifiers verbatim: with endowment k' = floor(|S| k / n), for ALL
    k'-completable hatW there EXISTS W' (|W'| <= k', hatW + W' feasible)
    giving every i in S utility >= gamma*(u_i(W)+1).  Returns
    (blocks, completions map).  If ``cert`` is given, only the certified
    W' choices are replayed.  An empty hatW domain never blocks.
    """
    from .constraints import is_feasible

    W, S = frozenset(W), frozenset(S)
    gamma = parse_rational(gamma)
    if not S:
        return False, None
    kprime = (len(S) * instance.k) // instance.n
    thresholds = {i: gamma * (instance.utility(i, W) + 1) for i in S}
    domain = completable_hatw_domain(instance, W, kprime, mode)
    if not domain:
        return False, None
    completions = {}
    for hatW in domain:
        if cert is not None:
            wprime = cert.get(hatW)
            if wprime is None or len(wprime) > kprime:
                return False, None
            T = hatW | wprime
            if not is_feasible(instance.feasibility, T):
                return False, None
            if not all(instance.utility(i, T) >= thresholds[i] for i in S):
                return False, None
            completions[hatW] = wprime
            continue
        found = None
        for wprime in _subsets_by_size(set(instance.candidates) - hatW, kprime):
            T = hatW | wprime
            if not is_feasible(instance.feasibility, T):
                continue
            if all(instance.utility(i, T) >= thresholds[i] for i in S):
                found = wprime
                break
        if found is None:
            return False, None
        completions[hatW] = found
    return True, completions


def blocks_restrained_ejr(instance, W, S, mode="subset_of_W", cert=None):
    """Restrained-EJR blocking: condition (2) counts commonly approved
    candidates |A_S(T)| against max_{i in S} u_i(W) + 1."""
    from .constraints import is_feasible

    W, S = frozenset(W), frozenset(S)
    if not S:
        return False, None
    approvals = []
    for i in S:
        u = instance.utilities[i]
        if not isinstance(u, ApprovalUtility):
            raise RuleMismatchError("restrained EJR needs approval utilities")
        approvals.append(u.approved)
    A_S = frozenset.intersection(*approvals)
    threshold = max(instance.utility(i, W) for i in S) + 1
    kprime = (len(S) * instance.k) // instance.n
    if len(A_S) < threshold:
        return False, None
    domain = completable_hatw_domain(instance, W, kprime, mode)
    if not domain:
        return False, None
    completions = {}
    for hatW in domain:
        if cert is not None:
            wprime = cert.get(hatW)
            if wprime is None or len(wprime) > kprime:
                return False, None
            T = hatW | wprime
            if not is_feasible(instance.feasibility, T) or len(A_S & T) < threshold:
                return False, None
            completions[hatW] = wprime
            continue
        found = None
        for wprime in _subsets_by_size(set(instance.candidates) - hatW, kprime):
            T = hatW | wprime
            if not is_feasible(instance.feasibility, T):
                continue
            if len(A_S & T) >= threshold:
                found = wprime
                break
        if found is None:
            return False, None
        completions[hatW] = found
    return True, completions


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------


def _enumerating_core_check(
    instance,
    W,
    notion,
    param,
    satisfies,
    endowment_ok,
    min_coalition=None,
    subset_cap=DEFAULT_SUBSET_CAP,
):
    """Shared scan over deviations T: best coalition is everyone satisfied."""
    W = frozenset(W)
    max_size = instance.k if instance.is_k_mode else instance.m
    _guard_enumeration(instance.m, max_size, subset_cap)
    degenerate = None
    enumerated = 0
    for T in _subsets_by_size(instance.candidates, max_size):
        S_T = frozenset(i for i in range(instance.n) if satisfies(i, T))
        if not T:
            if S_T and endowment_ok(T, S_T):
                degenerate = S_T
            continue
        enumerated += 1
        if not S_T:
            continue
        if min_coalition is not None and len(S_T) < min_coalition:
            continue
        if endowment_ok(T, S_T):
            report = VerificationReport(
                notion=notion,
                gamma_or_theta=param,
                verdict=False,
                witness={"S": S_T, "T": T},
                stats={"committees_enumerated": enumerated},
            )
            if degenerate:
                report.flags.append("degenerate-empty-deviation")
            return report
    report = VerificationReport(
        notion=notion,
        gamma_or_theta=param,
        verdict=True,
        stats={"committees_enumerated": enumerated},
    )
    if degenerate is not None:
        report.flags.append("degenerate-empty-deviation")
        report.stats["degenerate_S"] = sorted(degenerate)
    if min_coalition is not None:
        report.flags.append(f"coalitions-restricted-to-size>={min_coalition}")
    return report


def check_core(
    instance: Instance,
    W: Iterable[int],
    gamma,
    min_coalition=None,
    subset_cap=DEFAULT_SUBSET_CAP,
) -> VerificationReport:
    """gamma-approximate core: no (S, T) with |T| <= (|S|/n)k and
    u_i(T) >= gamma*(u_i(W)+1) for all of S.  Exact comparisons."""
    instance.require_k_mode("check_core")
    gamma = parse_rational(gamma)
    if gamma < 1:
        raise ValueError("gamma must be at least 1")
    W = frozenset(W)
    thresholds = [gamma * (instance.utility(i, W) + 1) for i in range(instance.n)]
    return _enumerating_core_check(
        instance,
        W,
        "core",
        gamma,
        satisfies=lambda i, T: instance.utility(i, T) >= thresholds[i],
        endowment_ok=lambda T, S: len(T) * instance.n <= len(S) * instance.k,
        min_coalition=min_coalition,
        subset_cap=subset_cap,
    )


def _lift_to_budget(instance: Instance) -> Instance:
    lifted = Instance(
        candidates=instance.candidates,
        utilities=instance.utilities,
        sizes={c: 1 for c in instance.candidates},
        budget=instance.k,
        validate="trust",
    )
    return lifted


def check_pb_core(
    instance: Instance,
    W: Iterable[int],
    gamma,
    auto_lift: bool = False,
    subset_cap=DEFAULT_SUBSET_CAP,
) -> VerificationReport:
    """Budget-mode core: Cost(T) <= (|S|/n) b instead of the size bound."""
    lifted = False
    if instance.is_k_mode:
        if not auto_lift:
            raise InfeasibleInstanceError("check_pb_core requires a budget-mode instance")
        instance = _lift_to_budget(instance)
        lifted = True
    gamma = parse_rational(gamma)
    if gamma < 1:
        raise ValueError("gamma must be at least 1")
    W = frozenset(W)
    thresholds = [gamma * (instance.utility(i, W) + 1) for i in range(instance.n)]
    report = _enumerating_core_check(
        instance,
        W,
        "pb_core",
        gamma,
        satisfies=lambda i, T: instance.utility(i, T) >= thresholds[i],
        endowment_ok=lambda T, S: instance.cost(T) * instance.n
        <= len(S) * instance.budget,
        subset_cap=subset_cap,
    )
    if lifted:
        report.flags.append("auto-lifted-unit-sizes")
    return report


def check_endowment_core(
    instance: Instance,
    W: Iterable[int],
    theta,
    auto_lift: bool = False,
    subset_cap=DEFAULT_SUBSET_CAP,
) -> VerificationReport:
    """theta-approximate endowment core: coalition budgets are scaled down
    by theta and members need only match their current utility."""
    lifted = False
    if instance.is_k_mode:
        if not auto_lift:
            raise InfeasibleInstanceError(
                "check_endowment_core requires a budget-mode instance"
            )
        instance = _lift_to_budget(instance)
        lifted = True
    theta = parse_rational(theta)
    if theta < 1:
        raise ValueError("theta must be at least 1")
    W = frozenset(W)
    current = [instance.utility(i, W) for i in range(instance.n)]
    report = _enumerating_core_check(
        instance,
        W,
        "endowment_core",
        theta,
        satisfies=lambda i, T: instance.utility(i, T) > current[i],
        endowment_ok=lambda T, S: instance.cost(T) * theta * instance.n
        <= len(S) * instance.budget,
        subset_cap=subset_cap,
    )
    # the empty deviation ties exactly with zero-utility voters; that is
    # an equality artifact of the printed >= definition, flagged not blocked
    zero_S = sorted(i for i in range(instance.n) if current[i] == 0)
    if zero_S and "degenerate-empty-deviation" not in report.flags:
        report.flags.append("degenerate-empty-deviation")
        report.stats["degenerate_S"] = zero_S
    if lifted:
        report.flags.append("auto-lifted-unit-sizes")
    return report


def _voter_classes(instance, thresholds):
    """Collapse voters with identical oracles and thresholds (coalition
    requirement sets are canonical up to this equivalence)."""
    class_of = {}
    ids = {}
    for i in range(instance.n):
        key = (instance.utilities[i].key(), thresholds[i])
        if key not in ids:
            ids[key] = len(ids)
        class_of[i] = ids[key]
    return class_of


def check_restrained_core(
    instance: Instance,
    W: Iterable[int],
    gamma,
    mode: str = "subset_of_W",
    n_cap: int = RESTRAINED_N_CAP,
    m_cap: int = RESTRAINED_M_CAP,
) -> VerificationReport:
    """gamma-approximate restrained core, quantifiers verbatim.

    A coalition S with endowment k' = floor(|S| k / n) blocks when for
    every k'-completable hatW (subset of W, or any committee in
    ``any_hatW`` mode) there is a W' of size <= k' making hatW + W'
    feasible and gamma-satisfying all of S.  Fails with the full
    hatW -> W' certificate map of the first blocking coalition.
    """
    from .constraints import is_feasible

    instance.require_k_mode("check_restrained_core")
    if mode not in ("subset_of_W", "any_hatW"):
        raise ValueError("mode must be subset_of_W or any_hatW")
    if instance.n > n_cap or instance.m > m_cap:
        raise EnumerationLimitError(
            f"restrained check capped at n<={n_cap}, m<={m_cap}"
        )
    gamma = parse_rational(gamma)
    if gamma < 1:
        raise ValueError("gamma must be at least 1")
    W = frozenset(W)
    if not is_feasible(instance.feasibility, W):
        raise ValueError("W must itself be feasible")
    n, k = instance.n, instance.k
    thresholds = [gamma * (instance.utility(i, W) + 1) for i in range(instance.n)]

    # per-k' satisfied-voter masks: ordered list of (mask, W') per hatW,
    # keeping only entries not dominated by an earlier mask
    sat_cache: dict = {}

    def sat_mask(T: frozenset) -> int:
        cached = sat_cache.get(T)
        if cached is None:
            cached = 0
            for i in range(n):
                if instance.utility(i, T) >= thresholds[i]:
                    cached |= 1 << i
            sat_cache[T] = cached
        return cached

    per_kprime: dict = {}
    stats = {"coalitions": 0, "hatw_sets": 0, "wprime_sets": 0}
    flags = []
    if instance.feasibility.kind == "cardinality":
        flags.append("unconstrained-reduces-to-core")
    flags.append("floored-endowment")

    def tables_for(kprime: int):
        if kprime in per_kprime:
            return per_kprime[kprime]
        domain = completable_hatw_domain(instance, W, kprime, mode)
        stats["hatw_sets"] += len(domain)
        tables = []
        for hatW in domain:
            entries = []  # (mask, W') with no mask contained in an earlier one
            for wprime in _subsets_by_size(set(instance.candidates) - hatW, kprime):
                T = hatW | wprime
                if not is_feasible(instance.feasibility, T):
                    continue
                stats["wprime_sets"] += 1
                mask = sat_mask(T)
                if any(mask & prev == mask for prev, _ in entries):
                    continue
                entries.append((mask, wprime))
            tables.append((hatW, entries))
        per_kprime[kprime] = tables
        return tables

    class_of = _voter_classes(instance, thresholds)
    memo: dict = {}
    for size in range(1, n + 1):
        kprime = (size * k) // n
        for S_tuple in itertools.combinations(range(n), size):
            stats["coalitions"] += 1
            S_mask = 0
            for i in S_tuple:
                S_mask |= 1 << i
            req = (kprime, frozenset(class_of[i] for i in S_tuple))
            cached = memo.get(req)
            if cached is not None:
                blocks, completions = cached
            else:
                tables = tables_for(kprime)
                if not tables:
                    blocks, completions = False, None
                    if f"vacuous-k'={kprime}" not in flags:
                        flags.append(f"vacuous-k'={kprime}")
                else:
                    blocks = True
                    completions = {}
                    for hatW, entries in tables:
                        chosen = None
                        for mask, wprime in entries:
                            if mask & S_mask == S_mask:
                                chosen = wprime
                                break
                        if chosen is None:
                            blocks, completions = False, None
                            break
                        completions[hatW] = chosen
                memo[req] = (blocks, completions)
            if blocks:
                return VerificationReport(
                    notion="restrained_core",
                    gamma_or_theta=gamma,
                    verdict=False,
                    witness={"S": frozenset(S_tuple), "completions": completions},
                    stats=stats,
                    flags=flags,
                )
    return VerificationReport(
        notion="restrained_core",
        gamma_or_theta=gamma,
        verdict=True,
        stats=stats,
        flags=flags,
    )


def check_restrained_ejr(
    instance: Instance,
    W: Iterable[int],
    mode: str = "subset_of_W",
    n_cap: int = RESTRAINED_N_CAP,
    m_cap: int = RESTRAINED_M_CAP,
) -> VerificationReport:
    """Restrained EJR for approval utilities (exact integers throughout)."""
    from .constraints import is_feasible

    instance.require_k_mode("check_restrained_ejr")
    if instance.n > n_cap or instance.m > m_cap:
        raise EnumerationLimitError(
            f"restrained check capped at n<={n_cap}, m<={m_cap}"
        )
    for u in instance.utilities:
        if not isinstance(u, ApprovalUtility):
            raise RuleMismatchError("restrained EJR needs approval utilities")
    W = frozenset(W)
    if not is_feasible(instance.feasibility, W):
        raise ValueError("W must itself be feasible")
    n, k = instance.n, instance.k
    utilities_at_W = [instance.utility(i, W) for i in range(n)]
    domains: dict = {}
    stats = {"coalitions": 0, "hatw_sets": 0, "wprime_sets": 0}
    flags = []
    memo: dict = {}
    for size in range(1, n + 1):
        kprime = (size * k) // n
        for S_tuple in itertools.combinations(range(n), size):
            stats["coalitions"] += 1
            A_S = frozenset.intersection(
                *(instance.utilities[i].approved for i in S_tuple)
            )
            threshold = max(utilities_at_W[i] for i in S_tuple) + 1
            if len(A_S) < threshold or threshold > k:
                continue
            key = (kprime, A_S, threshold)
            cached = memo.get(key)
            if cached is None:
                if kprime not in domains:
                    domains[kprime] = completable_hatw_domain(instance, W, kprime, mode)
                    stats["hatw_sets"] += len(domains[kprime])
                domain = domains[kprime]
                if not domain:
                    cached = (False, None)
                    if f"vacuous-k'={kprime}" not in flags:
                        flags.append(f"vacuous-k'={kprime}")
                else:
                    blocks = True
                    completions = {}
                    for hatW in domain:
                        found = None
                        for wprime in _subsets_by_size(
                            set(instance.candidates) - hatW, kprime
                        ):
                            T = hatW | wprime
                            if not is_feasible(instance.feasibility, T):
                                continue
                            stats["wprime_sets"] += 1
                            if len(A_S & T) >= threshold:
                                found = wprime
                                break
                        if found is None:
                            blocks = False
                            completions = None
                            break
                        completions[hatW] = found
                    cached = (blocks, completions)
                memo[key] = cached
            blocks, completions = cached
            if blocks:
                return VerificationReport(
                    notion="restrained_ejr",
                    gamma_or_theta=Fraction(1),
                    verdict=False,
                    witness={"S": frozenset(S_tuple), "completions": completions},
                    stats=stats,
                    flags=flags,
                )
    return VerificationReport(
        notion="restrained_ejr",
        gamma_or_theta=Fraction(1),
        verdict=True,
        stats=stats,
        flags=flags,
    )
