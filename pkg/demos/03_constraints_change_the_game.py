#!/usr/bin/env python3
"""Why constrained elections need the restrained core.

Voter groups each approve their own block of candidates, but a partition
constraint admits only q block candidates in total.  Restricting the
naive core's deviation to feasible committees still lets a shut-out
group grab its whole block, so no committee would be stable.  The
restrained notion hands the non-deviators their share first: the planner
keeps the q block seats occupied and the deviators gain nothing.
"""

from fractions import Fraction

from corelect import blocks_core, check_restrained_core, gen_rest1, is_feasible, solve_global

q = 2
inst = gen_rest1(q)
blocks = inst.meta["blocks"]
dummies = sorted(inst.meta["dummies"])

print(f"== grouped instance: q = {q}, k = {inst.k}, cap {q} block candidates ==")

lopsided = frozenset(sorted(blocks[0])) | frozenset(dummies[:2])
print(f"committee hogging block 1: {sorted(lopsided)}")

group2 = frozenset(i for i in range(inst.n) if inst.utility(i, blocks[1]) > 0)
print("\n== the naive constrained core collapses ==")
print(f"block 2 itself is feasible: {is_feasible(inst.feasibility, blocks[1])}")
print(
    f"group 2 blocks at factor q: "
    f"{blocks_core(inst, lopsided, Fraction(q), group2, blocks[1])}"
)

print("\n== the restrained core does not ==")
report = check_restrained_core(inst, lopsided, Fraction(101, 100))
print(f"restrained core at gamma just above 1: {'pass' if report.verdict else 'fail'}")
print("the planner's reply keeps both block seats, so deviators only find dummies")

print("\n== the Global rule spreads across blocks on its own ==")
W = solve_global(inst, "snw").committee
print(f"Global snw committee: {W.sorted()}")
for j, block in enumerate(blocks):
    print(f"  block {j + 1} seats: {len(W.members & block)}")
print(f"restrained core at gamma = 2: "
      f"{'pass' if check_restrained_core(inst, W.members, 2).verdict else 'fail'}")
