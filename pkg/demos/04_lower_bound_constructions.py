#!/usr/bin/env python3
"""The three lower-bound constructions, evaluated exactly.

1. Four voters, six parties, one packing row: whatever committee is
   chosen, the three least-served voters have a deviation recovering a
   16/15 utility factor against any spoiler reply.  The deviation
   counts come from a closed-form case analysis.
2. The parametric two-party family: every committee admits a two-voter
   deviation whose utility ratio is at least (1/2)(4/3)^(beta/2),
   growing exponentially in the self-bounding exponent.
3. The tightness instance for additive utilities: a local optimum of
   gpav that a half-population coalition beats by a factor 2 - alpha - eps.
"""

from fractions import Fraction

from corelect import (
    SolverConfig,
    blocks_core,
    gen_lb00,
    lb1_deviation,
    solve_local,
)
from corelect.theorems import lb00_two_voter_deviation, tight_lower_instance

print("== 16/15 deviation calculator (r = 40) ==")
r = 40
for u, t in [
    ((3 * r, 3 * r, 3 * r, 3 * r), (0, 0, 0)),
    ((Fraction(9, 8) * r, Fraction(21, 8) * r, Fraction(33, 8) * r, Fraction(33, 8) * r), (0, 0, 0)),
    ((3 * r, 3 * r, 3 * r, 3 * r), (Fraction(8, 5) * r, 0, 0)),
]:
    dev = lb1_deviation(u, t, r)
    print(f"u = {tuple(map(str, u))}, t = {tuple(map(str, t))}")
    print(f"  case {dev.case}: x = ({dev.x_ab}, {dev.x_ca}, {dev.x_bc})")

print("\n== exponential family at beta = 6, r = 2 ==")
inst = gen_lb00(6, 2)
bound = Fraction(1, 2) * (Fraction(4, 3) ** 3)
print(f"guaranteed ratio (1/2)(4/3)^3 = {bound} = {float(bound):.4f}")
counts = (2, 2, 2, 0, 0, 0)  # committee filling parties a, b, c
voters, Wprime = lb00_two_voter_deviation(inst, counts)
W = frozenset(range(6))
for i in voters:
    old, new = inst.utility(i, W), inst.utility(i, Wprime)
    print(f"voter {i}: {old} -> {new}  (ratio {new / old if old else 'inf'})")

print("\n== tightness of 2 - alpha for additive utilities ==")
inst, W, V1, T = tight_lower_instance(Fraction(1, 2), Fraction(1, 2))
meta = inst.meta
print(f"n = {meta['n']}, y = {meta['y']}, k = {inst.k}")
local = solve_local(inst, "gpav", SolverConfig(start=W))
print(f"C1 + C3 is a gpav local optimum: {local.iterations == 0}")
gamma = 2 - meta["alpha"] - meta["eps"]
print(f"coalition V1 blocks at gamma = {gamma}: "
      f"{blocks_core(inst, W, gamma, V1, T)}")

print("\n== a finite-size subtlety in the 16/15 construction ==")
# the emptiness of the 16/15 restrained core is asymptotic: at r = 5 the
# +1 in the blocking threshold gamma*(u+1) leaves enough integer slack
# that this committee class survives every coalition
from corelect import verify_passing_class

cert = verify_passing_class(5, (0, 0, 8, 5, 5, 12))
print(f"counts (0,0,8,5,5,12) + 2 dummies at r = 5: passes = {cert['passes']}")
print(f"utilities {cert['utilities']} vs integer blocking targets {cert['targets']}")
worst = max(cert["certificates"], key=lambda c: len(c["coalition"]))
print(f"e.g. coalition {worst['coalition']} is refuted by planner reply "
      f"{worst['reply']} (targets {worst['residual_targets']}, budget {worst['budget']})")
