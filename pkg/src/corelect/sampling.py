"""Exact and Monte-Carlo verification of the random-sampling bounds.

Exact enumeration is used whenever the base set has at most 16 members;
Monte-Carlo runs are seeded with a named splittable generator (Philox)
and record the seed in every report.  Bernoulli draws use integer
comparisons against the exact rational probability, never floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import EnumerationLimitError
from .exactnum import parse_rational
from .instances import rng_from_seed
from .model import UtilityFunction, self_bounding_constant

EXACT_SIZE_CAP = 16


def exact_sample_expectation(u: UtilityFunction, T: Iterable[int], alpha) -> Fraction:
    """E[u(O)] where O keeps each member of T independently w.p. alpha.

    Full enumeration over subsets of T; exact in the field of u's values.
    """
    T = sorted(set(T))
    alpha = parse_rational(alpha)
    if not (0 <= alpha <= 1):
        raise ValueError("alpha must lie in [0, 1]")
    if len(T) > EXACT_SIZE_CAP:
        raise EnumerationLimitError(f"|T| = {len(T)} exceeds the exact cap {EXACT_SIZE_CAP}")
    total = Fraction(0)
    import itertools

    for size in range(len(T) + 1):
        p = alpha**size * (1 - alpha) ** (len(T) - size)
        if p == 0:
            continue
        for O in itertools.combinations(T, size):
            total = total + p * u.value(frozenset(O))
    return total


def verify_sampling_bound(u: UtilityFunction, T: Iterable[int], alpha, beta: int) -> bool:
    """Assert E[u(O)] >= alpha^beta * u(T) exactly.

    beta must be a valid self-bounding exponent for u restricted to T;
    this is re-verified before the bound is checked.
    """
    T = sorted(set(T))
    alpha = parse_rational(alpha)
    if not (isinstance(beta, int) and beta >= 1):
        raise ValueError("beta must be an integer >= 1")
    actual = self_bounding_constant(u, T)
    if actual > beta:
        raise ValueError(f"u restricted to T is only {actual}-self-bounding > beta={beta}")
    expectation = exact_sample_expectation(u, T, alpha)
    return expectation >= alpha**beta * u.value(frozenset(T))


def _bernoulli_mask(rng, p: Fraction, count: int):
    """Exact Bernoulli(p) draws via integer comparison."""
    draws = rng.integers(0, p.denominator, size=count)
    return draws < p.numerator


@dataclass
class TailReport:
    mu0: object
    mu0_exact: bool
    threshold: object
    empirical: Fraction
    analytic_bound: float
    slack: float
    verdict: str  # pass / fail / inconclusive
    trials: int
    seed: int
    beta: object
    mu0_ci: object = None  # 3-sigma half-width when mu0 is estimated

    def to_json(self):
        from .exactnum import rational_to_json

        return {
            "mu0": str(self.mu0),
            "mu0_exact": self.mu0_exact,
            "mu0_ci": self.mu0_ci,
            "threshold": str(self.threshold),
            "empirical": rational_to_json(self.empirical),
            "analytic_bound": self.analytic_bound,
            "three_sigma_slack": self.slack,
            "verdict": self.verdict,
            "trials": self.trials,
            "seed": self.seed,
            "beta": str(self.beta),
        }


def mc_lower_tail(
    u: UtilityFunction,
    T: Iterable[int],
    alpha,
    delta,
    trials: int,
    seed: int,
    beta=None,
) -> TailReport:
    """Empirical Pr[u(O) <= (1-delta) mu0] against exp(-delta^2 mu0 / (2 beta)).

    mu0 is computed exactly when |T| <= 16 (otherwise estimated from the
    same trial stream).  The comparison verdict allows a three-sigma
    binomial slack; runs with fewer than 30 trials are inconclusive.
    """
    T = sorted(set(T))
    alpha = parse_rational(alpha)
    delta = parse_rational(delta)
    if not (0 <= delta < 1):
        raise ValueError("delta must lie in [0, 1)")
    if trials < 1:
        raise ValueError("need at least one trial")
    if beta is None:
        beta = self_bounding_constant(u, T)
        if beta < 1:
            beta = Fraction(1)
    rng = rng_from_seed(seed)
    exact = len(T) <= EXACT_SIZE_CAP
    samples = []
    for _ in range(trials):
        mask = _bernoulli_mask(rng, alpha, len(T))
        O = frozenset(c for c, keep in zip(T, mask) if keep)
        samples.append(u.value(O))
    mu0_ci = None
    if exact:
        mu0 = exact_sample_expectation(u, T, alpha)
    else:
        mu0 = sum(samples, Fraction(0)) / trials
        mean = float(mu0)
        var = sum((float(v) - mean) ** 2 for v in samples) / max(1, trials - 1)
        mu0_ci = 3 * math.sqrt(var / trials)
    threshold = (1 - delta) * mu0
    hits = sum(1 for v in samples if v <= threshold)
    empirical = Fraction(hits, trials)
    bound = math.exp(-float(delta) ** 2 * float(mu0) / (2 * float(beta)))
    slack = 3 * math.sqrt(max(bound * (1 - bound), 1e-12) / trials)
    if trials < 30:
        verdict = "inconclusive"
    elif float(empirical) <= bound + slack:
        verdict = "pass"
    else:
        verdict = "fail"
    return TailReport(
        mu0=mu0,
        mu0_exact=exact,
        threshold=threshold,
        empirical=empirical,
        analytic_bound=bound,
        slack=slack,
        verdict=verdict,
        trials=trials,
        seed=seed,
        beta=beta,
        mu0_ci=mu0_ci,
    )


@dataclass
class ReductionReport:
    premises_ok: bool
    premise_failures: list
    t_prime: frozenset
    trials: int
    seed: int
    freq_coalition_event: Optional[Fraction] = None
    freq_cost_event: Optional[Fraction] = None
    freq_joint_event: Optional[Fraction] = None
    joint_witnessed: bool = False
    q_condition_met: bool = False
    params: dict = field(default_factory=dict)

    def to_json(self):
        from .exactnum import rational_to_json

        out = {
            "premises_ok": self.premises_ok,
            "premise_failures": list(self.premise_failures),
            "T_prime": sorted(self.t_prime),
            "trials": self.trials,
            "seed": self.seed,
            "joint_witnessed": self.joint_witnessed,
            "q_condition_met": self.q_condition_met,
            "params": {k: str(v) for k, v in self.params.items()},
        }
        for name in ("freq_coalition_event", "freq_cost_event", "freq_joint_event"):
            v = getattr(self, name)
            out[name] = rational_to_json(v) if v is not None else None
        return out


def endow2_reduction_experiment(
    instance,
    W: Iterable[int],
    S: Sequence[int],
    T: Iterable[int],
    kappa,
    eta,
    trials: int,
    seed: int,
    gamma=2,
    q=Fraction(1, 2),
    beta: int = 1,
) -> ReductionReport:
    """Witness the probabilistic step that converts an endowment-core
    committee into a utility-approximate one.

    Checks the premises (every coalition member values T at least
    eta*beta*gamma^beta times their current utility plus one, and T is
    affordable), restricts T to candidates of size at most (phi/gamma)*b,
    samples each with probability 1/gamma, and measures how often both
    |S'| >= q|S| and Cost(O) <= (phi/gamma)*kappa*b happen together.
    Unmet premises yield a report, not an exception.
    """
    instance.require_budget_mode("endow2_reduction_experiment")
    W = frozenset(W)
    T = frozenset(T)
    S = sorted(S)
    kappa = parse_rational(kappa)
    eta = parse_rational(eta)
    gamma = parse_rational(gamma)
    q = parse_rational(q)
    if gamma < 1:
        raise ValueError("gamma must be at least 1")
    phi = Fraction(len(S), instance.n)
    b = instance.budget
    failures = []
    factor = eta * beta * gamma**beta
    for i in S:
        if instance.utility(i, T) < factor * (instance.utility(i, W) + 1):
            failures.append(f"voter {i} misses the eta*beta*gamma^beta factor")
    if instance.cost(T) > phi * b:
        failures.append("Cost(T) exceeds the coalition budget phi*b")
    size_cut = (phi / gamma) * b
    t_prime = frozenset(j for j in T if instance.sizes[j] <= size_cut)
    params = {
        "kappa": kappa,
        "eta": eta,
        "gamma": gamma,
        "q": q,
        "beta": beta,
        "phi": phi,
        "size_cut": size_cut,
    }
    report = ReductionReport(
        premises_ok=not failures,
        premise_failures=failures,
        t_prime=t_prime,
        trials=trials,
        seed=seed,
        q_condition_met=q > 32 * kappa / gamma,
        params=params,
    )
    if failures:
        return report
    rng = rng_from_seed(seed)
    p_include = 1 / gamma
    cost_cap = (phi / gamma) * kappa * b
    t_list = sorted(t_prime)
    current = {i: instance.utility(i, W) for i in S}
    hits_s = hits_c = hits_joint = 0
    for _ in range(trials):
        mask = _bernoulli_mask(rng, p_include, len(t_list))
        O = frozenset(c for c, keep in zip(t_list, mask) if keep)
        s_prime = sum(1 for i in S if instance.utility(i, O) > current[i])
        ev_s = Fraction(s_prime) >= q * len(S)
        ev_c = instance.cost(O) <= cost_cap
        hits_s += ev_s
        hits_c += ev_c
        hits_joint += ev_s and ev_c
    report.freq_coalition_event = Fraction(hits_s, trials)
    report.freq_cost_event = Fraction(hits_c, trials)
    report.freq_joint_event = Fraction(hits_joint, trials)
    report.joint_witnessed = hits_joint > 0
    return report
