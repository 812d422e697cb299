"""Abelianizations and the quotient groups that control the local systems."""

from homrep import presentations as pr

print("B_n:", [str(pr.abelianization(pr.braid_presentation(n))) for n in range(2, 6)])
for g in (1, 2):
    vals = [str(pr.abelianization(pr.bellingeri_presentation("orientable", g, 0, n))) for n in range(1, 5)]
    print(f"surface braid groups, genus {g}, n=1..4:", vals)
for c in (2, 3):
    vals = [str(pr.abelianization(pr.bellingeri_presentation("nonorientable", c, 0, n))) for n in range(1, 5)]
    print(f"non-orientable, {c} crosscaps, n=1..4:", vals)
print("LB_n:", [str(pr.abelianization(pr.loop_braid_presentation(n))) for n in range(1, 6)])
print("LB_n^ext:", [str(pr.abelianization(pr.loop_braid_presentation(n, True))) for n in range(1, 6)])

for theorem in ("alpha", "beta", "gamma"):
    for m in (1, 2):
        ambient, gens, kill = pr.loop_quotient_data(theorem, m)
        names = ", ".join(name for name, _ in gens)
        print(f"{theorem}, m={m}: span of {names} in {ambient} is {pr.loop_quotient(theorem, m)}")
