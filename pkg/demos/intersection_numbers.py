"""
Exact intersection numbers: the top self-intersection of c1(L^dual) by the
special-cycle recursion against its product formula, and the degree of
Y_V in its Plücker embedding.

    python3 demos/intersection_numbers.py
"""
from orthodl.chow import analog_closed, analog_recursive, degree_closed, degree_via_chern

print("  p  d   c1(L^dual)^d        degree")
for p in (3, 5, 7):
    for d in range(1, 5):
        ar, ac = analog_recursive(p, d), analog_closed(p, d)
        dv, dc = degree_via_chern(p, d), degree_closed(p, d)
        assert ar == ac and dv == dc
        print("%3d %2d %14s %13s" % (p, d, ar, dc))

big = degree_closed(97, 40)
print("\ndegree at (p, d) = (97, 40) has %d digits" % len(str(big)))
