"""One point gives the reduced Burau representation, two points give Lawrence-Krammer-Bigelow.

Run with ``python3 demos/01_burau_and_lkb.py``.
"""

from homrep import forkcalc, oracles
from homrep.words import generator

print("The arc calculus computes sigma_1 on one point and three punctures:")
print(forkcalc.generator_matrix(1, 3, 1).pretty())

print("\nThe Fox-calculus oracle builds the same matrix from the Artin action:")
print(oracles.burau_reduced(generator(3, 1)).pretty())

for n in range(2, 7):
    ours = [forkcalc.generator_matrix(1, n, i) for i in range(1, n)]
    v = oracles.compare_reps(ours, oracles.burau_reduced_generators(n))
    print(f"n={n}: Burau match {v.ok}, substitution {v.witness['substitution']}")

print("\nWith two points the comparison needs an integer change of basis and q, t inverted:")
for n in range(2, 6):
    ours = [forkcalc.generator_matrix(2, n, i) for i in range(1, n)]
    ref = [oracles.lkb_reference(n, i) for i in range(1, n)]
    v = oracles.compare_reps(ours, ref, oracles.lkb_basis_change(n))
    print(f"n={n}: LKB match {v.ok}, substitution {v.witness['substitution']}")
