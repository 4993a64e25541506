"""Election instances and utility-function oracles.

All utility values are exact (Fraction, or Quad for the parametric
lower-bound family with odd exponent).  Every oracle satisfies
u(empty) = 0, and the two axioms every voter utility must obey --
monotonicity and the unit-Lipschitz bound -- can be checked exhaustively
at desk scale with ``check_axioms``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    EnumerationLimitError,
    InfeasibleInstanceError,
    MalformedUtilityError,
)
from .exactnum import ExactValue, Quad, parse_rational

EXHAUSTIVE_LIMIT = 20  # 2**20 subsets is the hard cap for exhaustive checks


def _as_frozen(T: Iterable[int]) -> frozenset:
    return T if isinstance(T, frozenset) else frozenset(T)


class UtilityFunction:
    """Base class for voter utility oracles.  Immutable after construction."""

    kind: str = "abstract"

    def value(self, T: Iterable[int]) -> ExactValue:
        raise NotImplementedError

    def key(self):
        """Canonical hashable identity, used for memoizing verifier verdicts."""
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, UtilityFunction) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<{type(self).__name__} {self.key()!r}>"


class ApprovalUtility(UtilityFunction):
    kind = "approval"

    def __init__(self, approved: Iterable[int]):
        self.approved = frozenset(int(c) for c in approved)

    def value(self, T):
        return Fraction(len(self.approved & _as_frozen(T)))

    def key(self):
        return ("approval", self.approved)

    def to_json(self):
        return {"kind": "approval", "approved": sorted(self.approved)}


class AdditiveUtility(UtilityFunction):
    """Additive utility with per-candidate weights in [0, 1]."""

    kind = "additive"

    def __init__(self, weights: dict):
        self.weights = {}
        for cand, w in weights.items():
            w = parse_rational(w)
            if w < 0 or w > 1:
                raise MalformedUtilityError(
                    f"additive weight {w} for candidate {cand} outside [0, 1]"
                )
            if w != 0:
                self.weights[int(cand)] = w

    def value(self, T):
        return sum(
            (self.weights[c] for c in _as_frozen(T) if c in self.weights),
            Fraction(0),
        )

    def key(self):
        return ("additive", tuple(sorted(self.weights.items())))

    def to_json(self):
        from .exactnum import rational_to_json

        return {
            "kind": "additive",
            "weights": [[c, rational_to_json(w)] for c, w in sorted(self.weights.items())],
        }


class CoverageUtility(UtilityFunction):
    """Weighted set cover: candidate j covers element set E_j.

    Per-candidate covered weight is capped at 1 so the Lipschitz axiom
    holds by construction; coverage functions are monotone submodular.
    """

    kind = "coverage"

    def __init__(self, covers: dict, element_weights: dict):
        self.element_weights = {}
        for e, w in element_weights.items():
            w = parse_rational(w)
            if w < 0:
                raise MalformedUtilityError(f"element weight {w} negative")
            self.element_weights[int(e)] = w
        self.covers = {}
        for cand, elems in covers.items():
            elems = frozenset(int(e) for e in elems)
            total = sum((self.element_weights.get(e, Fraction(0)) for e in elems), Fraction(0))
            if total > 1:
                raise MalformedUtilityError(
                    f"candidate {cand} covers weight {total} > 1 (breaks Lipschitz)"
                )
            self.covers[int(cand)] = elems

    def value(self, T):
        covered = set()
        for c in _as_frozen(T):
            covered |= self.covers.get(c, frozenset())
        return sum((self.element_weights.get(e, Fraction(0)) for e in covered), Fraction(0))

    def key(self):
        return (
            "coverage",
            tuple(sorted((c, tuple(sorted(es))) for c, es in self.covers.items())),
            tuple(sorted(self.element_weights.items())),
        )

    def to_json(self):
        from .exactnum import rational_to_json

        return {
            "kind": "coverage",
            "covers": [[c, sorted(es)] for c, es in sorted(self.covers.items())],
            "element_weights": [
                [e, rational_to_json(w)] for e, w in sorted(self.element_weights.items())
            ],
        }


class XOSUtility(UtilityFunction):
    """Max over additive clauses; clause weights lie in [0, 1]."""

    kind = "xos"

    def __init__(self, clauses: Sequence[dict]):
        if not clauses:
            raise MalformedUtilityError("xos utility needs at least one clause")
        self.clauses = []
        for clause in clauses:
            cleaned = {}
            for cand, w in clause.items():
                w = parse_rational(w)
                if w < 0 or w > 1:
                    raise MalformedUtilityError(f"xos clause weight {w} outside [0, 1]")
                if w != 0:
                    cleaned[int(cand)] = w
            self.clauses.append(cleaned)

    def value(self, T):
        T = _as_frozen(T)
        best = Fraction(0)
        for clause in self.clauses:
            s = sum((clause[c] for c in T if c in clause), Fraction(0))
            if s > best:
                best = s
        return best

    def key(self):
        return ("xos", tuple(tuple(sorted(cl.items())) for cl in self.clauses))

    def to_json(self):
        from .exactnum import rational_to_json

        return {
            "kind": "xos",
            "clauses": [
                [[c, rational_to_json(w)] for c, w in sorted(cl.items())] for cl in self.clauses
            ],
        }


class TableUtility(UtilityFunction):
    """Explicit subset table for small universes (m <= 20)."""

    kind = "table"

    def __init__(self, entries: dict):
        self.entries = {}
        for subset, v in entries.items():
            subset = frozenset(int(c) for c in subset)
            v = parse_rational(v)
            if v < 0:
                raise MalformedUtilityError(f"table value {v} negative")
            self.entries[subset] = v
        if frozenset() in self.entries and self.entries[frozenset()] != 0:
            raise MalformedUtilityError("table must assign 0 to the empty set")

    def value(self, T):
        T = _as_frozen(T)
        if not T:
            return Fraction(0)
        if T not in self.entries:
            raise MalformedUtilityError(f"table has no entry for {sorted(T)}")
        return self.entries[T]

    def key(self):
        return ("table", tuple(sorted((tuple(sorted(s)), v) for s, v in self.entries.items())))

    def to_json(self):
        from .exactnum import rational_to_json

        return {
            "kind": "table",
            "entries": [
                [sorted(s), rational_to_json(v)]
                for s, v in sorted(self.entries.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
            ],
        }


class LB00Utility(UtilityFunction):
    """Parametric two-party utility (r/beta) * (x_p^beta + z*(1-x_p^beta)*x_q^beta).

    x_p is the fraction of party p's r candidates chosen, and
    z = (3/4)^(beta/2).  For odd beta, z is irrational; the value is then a
    Quad over sqrt((3/4)^beta) and all comparisons stay exact.
    """

    kind = "lb00"

    def __init__(self, beta: int, r: int, role: tuple, party_of: dict):
        if not (isinstance(beta, int) and beta >= 1):
            raise MalformedUtilityError("beta must be an integer >= 1")
        if not (isinstance(r, int) and r >= 1):
            raise MalformedUtilityError("r must be an integer >= 1")
        self.beta = beta
        self.r = r
        self.role = (str(role[0]), str(role[1]))
        self.party_of = {int(c): str(p) for c, p in party_of.items()}
        self.z = Quad.sqrt(Fraction(3, 4) ** beta)
        self._cache: dict = {}

    def _counts(self, T: frozenset) -> tuple:
        p, q = self.role
        cp = cq = 0
        for c in T:
            party = self.party_of.get(c)
            if party == p:
                cp += 1
            elif party == q:
                cq += 1
        return cp, cq

    def value(self, T):
        counts = self._counts(_as_frozen(T))
        cached = self._cache.get(counts)
        if cached is not None:
            return cached
        cp, cq = counts
        xp = Fraction(cp, self.r)
        xq = Fraction(cq, self.r)
        xpb = xp**self.beta
        xqb = xq**self.beta
        val = Fraction(self.r, self.beta) * (xpb + self.z * (1 - xpb) * xqb)
        self._cache[counts] = val
        return val

    def key(self):
        return (
            "lb00",
            self.beta,
            self.r,
            self.role,
            tuple(sorted(self.party_of.items())),
        )

    def to_json(self):
        return {
            "kind": "lb00",
            "beta": self.beta,
            "r": self.r,
            "role": list(self.role),
            "party_of": [[c, p] for c, p in sorted(self.party_of.items())],
        }


UTILITY_KINDS = {
    "approval": ApprovalUtility,
    "additive": AdditiveUtility,
    "coverage": CoverageUtility,
    "xos": XOSUtility,
    "table": TableUtility,
    "lb00": LB00Utility,
}


def evaluate(u: UtilityFunction, T: Iterable[int]) -> ExactValue:
    """Exact utility of committee T.  Pure; u(empty) = 0."""
    return u.value(_as_frozen(T))


@dataclass
class AxiomWitness:
    subset: frozenset
    candidate: int

    def as_json(self):
        return {"subset": sorted(self.subset), "candidate": self.candidate}


@dataclass
class AxiomReport:
    monotone: bool
    monotone_witness: Optional[AxiomWitness]
    lipschitz: bool
    lipschitz_witness: Optional[AxiomWitness]
    exhaustive: bool
    checked: int

    @property
    def ok(self):
        return self.monotone and self.lipschitz


def _subset_iter(universe: Sequence[int]):
    universe = sorted(universe)
    for size in range(len(universe) + 1):
        yield from (frozenset(c) for c in itertools.combinations(universe, size))


def _sampled_subsets(universe: Sequence[int], budget: int, seed: int):
    import numpy as np

    rng = np.random.Generator(np.random.Philox(key=seed))
    universe = sorted(universe)
    for _ in range(budget):
        mask = rng.integers(0, 2, size=len(universe))
        yield frozenset(c for c, bit in zip(universe, mask) if bit)


def check_axioms(
    u: UtilityFunction,
    universe: Sequence[int],
    limit: int = EXHAUSTIVE_LIMIT,
    sample_budget: Optional[int] = None,
    seed: int = 0,
) -> AxiomReport:
    """Exhaustively test monotonicity and the unit-Lipschitz bound.

    Over every (T, j): u(T) <= u(T + {j}) and u(T) - u(T - {j}) <= 1.
    Returns the violating (T, j) on failure.  If the universe exceeds the
    exhaustive limit, a seeded Monte-Carlo budget may be passed instead.
    """
    universe = sorted(set(universe))
    exhaustive = len(universe) <= limit
    if not exhaustive and sample_budget is None:
        raise EnumerationLimitError(
            f"universe of {len(universe)} exceeds exhaustive limit {limit}; "
            "pass sample_budget for a Monte-Carlo check"
        )
    subsets = (
        _subset_iter(universe) if exhaustive else _sampled_subsets(universe, sample_budget, seed)
    )
    mono_w = lip_w = None
    checked = 0
    for T in subsets:
        vT = u.value(T)
        checked += 1
        for j in universe:
            if j in T:
                if vT - u.value(T - {j}) > 1:
                    lip_w = lip_w or AxiomWitness(T, j)
            else:
                if vT > u.value(T | {j}):
                    mono_w = mono_w or AxiomWitness(T | {j}, j)
        if mono_w and lip_w:
            break
    return AxiomReport(
        monotone=mono_w is None,
        monotone_witness=mono_w,
        lipschitz=lip_w is None,
        lipschitz_witness=lip_w,
        exhaustive=exhaustive,
        checked=checked,
    )


def self_bounding_constant(
    u: UtilityFunction, universe: Sequence[int], limit: int = EXHAUSTIVE_LIMIT
) -> ExactValue:
    """Minimal beta* with sum of removal marginals <= beta* * u(T) over all T.

    beta* = max over T with u(T) > 0 of (sum_j (u(T) - u(T - {j}))) / u(T);
    if u vanishes everywhere, returns 0 by convention.
    """
    universe = sorted(set(universe))
    if len(universe) > limit:
        raise EnumerationLimitError(f"universe of {len(universe)} exceeds limit {limit}")
    best: ExactValue = Fraction(0)
    for T in _subset_iter(universe):
        vT = u.value(T)
        if not vT > 0:
            continue
        total = sum((vT - u.value(T - {j}) for j in T), Fraction(0))
        ratio = total / vT
        if ratio > best:
            best = ratio
    return best


def check_submodular(
    u: UtilityFunction, universe: Sequence[int], limit: int = EXHAUSTIVE_LIMIT
):
    """Exhaustive submodularity check over (T1 <= T2, j in T1).

    Returns (True, None) or (False, (T1, T2, j)) on the first violation of
    u(T1) - u(T1 - {j}) >= u(T2) - u(T2 - {j}).
    """
    universe = sorted(set(universe))
    if len(universe) > limit // 2:
        raise EnumerationLimitError("universe too large for the pairwise subset scan")
    subsets = list(_subset_iter(universe))
    values = {T: u.value(T) for T in subsets}
    for T2 in subsets:
        v2 = values[T2]
        for T1 in subsets:
            if not T1 <= T2:
                continue
            v1 = values[T1]
            for j in T1:
                if v1 - values[T1 - {j}] < v2 - values[T2 - {j}]:
                    return False, (T1, T2, j)
    return True, None


class Committee:
    """A candidate subset with cached size and cost."""

    __slots__ = ("members", "size", "cost")

    def __init__(self, members: Iterable[int], cost=None):
        self.members = _as_frozen(members)
        self.size = len(self.members)
        self.cost = cost if cost is not None else Fraction(self.size)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, c):
        return c in self.members

    def __len__(self):
        return self.size

    def __eq__(self, other):
        if isinstance(other, Committee):
            return self.members == other.members
        if isinstance(other, (set, frozenset)):
            return self.members == other
        return NotImplemented

    def __hash__(self):
        return hash(self.members)

    def sorted(self):
        return sorted(self.members)

    def __repr__(self):
        return f"Committee({self.sorted()})"


class Instance:
    """A multiwinner (k-mode) or participatory-budgeting (budget-mode) election.

    Exactly one of ``k`` or (``sizes``, ``budget``) must be given.  In check
    mode, every utility is validated against the monotonicity and Lipschitz
    axioms on construction ("auto" checks only when m is small enough).
    """

    def __init__(
        self,
        candidates: Sequence[int],
        utilities: Sequence[UtilityFunction],
        k: Optional[int] = None,
        sizes: Optional[dict] = None,
        budget=None,
        feasibility=None,
        validate: str = "auto",
    ):
        self.candidates = tuple(int(c) for c in candidates)
        if len(set(self.candidates)) != len(self.candidates):
            raise ValueError("candidate ids must be unique")
        if not self.candidates:
            raise ValueError("need at least one candidate")
        self.utilities = tuple(utilities)
        if not self.utilities:
            raise ValueError("need at least one voter")
        k_mode = k is not None
        b_mode = sizes is not None or budget is not None
        if k_mode == b_mode:
            raise ValueError("exactly one of committee-size mode and budget mode must be set")
        if k_mode:
            if k < 0:
                raise ValueError("k must be nonnegative")
            self.k = int(k)
            self.sizes = None
            self.budget = None
        else:
            if sizes is None or budget is None:
                raise ValueError("budget mode needs both sizes and budget")
            self.k = None
            self.sizes = {int(c): parse_rational(s) for c, s in sizes.items()}
            for c in self.candidates:
                if c not in self.sizes or self.sizes[c] <= 0:
                    raise ValueError(f"candidate {c} needs a positive size")
            self.budget = parse_rational(budget)
        if feasibility is None and k_mode:
            from .constraints import CardinalityFamily

            feasibility = CardinalityFamily(self.k)
        self.feasibility = feasibility
        self._value_cache: dict = {}
        if validate not in ("check", "trust", "auto"):
            raise ValueError("validate must be one of check/trust/auto")
        if validate == "check" or (validate == "auto" and len(self.candidates) <= 12):
            for i, u in enumerate(self.utilities):
                rep = check_axioms(u, self.candidates)
                if not rep.ok:
                    raise MalformedUtilityError(
                        f"voter {i} fails axioms: monotone={rep.monotone} "
                        f"lipschitz={rep.lipschitz}"
                    )

    @property
    def n(self) -> int:
        return len(self.utilities)

    @property
    def m(self) -> int:
        return len(self.candidates)

    @property
    def is_k_mode(self) -> bool:
        return self.k is not None

    def cost(self, T: Iterable[int]) -> Fraction:
        T = _as_frozen(T)
        if self.is_k_mode:
            return Fraction(len(T))
        return sum((self.sizes[c] for c in T), Fraction(0))

    def committee(self, members: Iterable[int]) -> Committee:
        members = _as_frozen(members)
        unknown = members - set(self.candidates)
        if unknown:
            raise ValueError(f"unknown candidates {sorted(unknown)}")
        return Committee(members, cost=self.cost(members))

    def utility(self, i: int, T: Iterable[int]) -> ExactValue:
        """Cached exact utility of voter i for committee T."""
        T = _as_frozen(T)
        key = (i, T)
        val = self._value_cache.get(key)
        if val is None:
            val = self.utilities[i].value(T)
            self._value_cache[key] = val
        return val

    def require_k_mode(self, op: str):
        if not self.is_k_mode:
            raise InfeasibleInstanceError(f"{op} requires a committee-size instance")

    def require_budget_mode(self, op: str):
        if self.is_k_mode:
            raise InfeasibleInstanceError(f"{op} requires a budget-mode instance")

    def __repr__(self):
        mode = f"k={self.k}" if self.is_k_mode else f"budget={self.budget}"
        return f"<Instance n={self.n} m={self.m} {mode}>"
