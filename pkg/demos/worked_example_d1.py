"""
The d = 1 example by hand: Cl^0(V) as 2x2 matrices over F_{p^2}, V inside
M2, the spin action, and the weight (-1, 1) of the tautological quotient
on P^1 x P^1, which pulls back to O(p - 1) on the graph of Frobenius.

    python3 demos/worked_example_d1.py
"""
from orthodl.example_d1 import borel_weight_check, generator_table, run_all

tab = generator_table(5)
print("images of X_i X_j in M2(F_25) (codes, b = %d):" % tab.tower.b)
for (i, j), M in sorted(tab.even.items()):
    print("  X%dX%d ->" % (i, j), M.tolist())

for p in (3, 5, 7, 11):
    print("p = %2d:" % p, ", ".join("%s %s" % (r["check"], "ok" if r["pass"] else "FAILED")
                                   for r in run_all(p)))

items = {i["name"]: i for i in borel_weight_check(3)["items"]}
print("\nbidegree", items["bidegree"]["bidegree"], "-> pullback degree",
      items["pullback_degree"]["value"], "-> conic degree", items["conic_degree"]["value"])
