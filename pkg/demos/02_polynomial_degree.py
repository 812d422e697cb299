"""How far the Lawrence-Bigelow functors are from being constant.

Iterating the difference functor shows LB_1 vanishing after two steps,
except for one stubborn copy of Z at object 0.  That copy is what makes LB_1
strong polynomial of degree 2 but weak polynomial of degree 1.
"""

from homrep import functors

for m in (1, 2, 3):
    rep = functors.degree_report(functors.lb_tabulate(m, 8), 8)
    print(f"LB_{m}")
    for k, ranks in enumerate(rep.ranks[: m + 2]):
        print(f"  delta^{k} ranks: {ranks}")
    print(
        f"  strong degree {rep.strong_degree}, very strong {rep.very_strong}, "
        f"weak degree {rep.weak_degree} (support of the next level: {rep.weak_support})"
    )
    print(f"  kernels of the stabilization at level 2: {rep.kernel_ranks[2]}")

print("\ndelta LB_m against tau LB_{m-1}:")
for m in (1, 2, 3):
    res = functors.diffeva_check(m, 5)
    print(f"  m={m}: {res.ok}, {res.checked} matrices compared, coefficient map {res.identification}")
