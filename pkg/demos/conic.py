"""
For d = 1 the variety Y_V is a curve whose Plücker image is a plane conic.
Enumerate its points over F_{p^2}, watch the Hilbert function grow like
2k + 1, and intersect the conic with random lines.

    python3 demos/conic.py
"""
from orthodl.degree_lab import build_cloud, conic_line_counts, degree_from_hilbert, hilbert_profile
from orthodl.dlmoduli import enumerate_Y_points, stratum_rank
from orthodl.quadspace import build_space

for p in (3, 5, 7):
    V = build_space(p, 1)
    pts = enumerate_Y_points(V, 1)
    cloud = build_cloud(p, 1, 1)
    prof = hilbert_profile(cloud, 4)
    lines = conic_line_counts(cloud, samples=30, seed=0)
    print("p = %d: %3d points (p^2 + 1), strata %s" % (p, len(pts), sorted({stratum_rank(x) for x in pts})))
    print("       HF = %s  ->  degree %d" % (list(prof.values), degree_from_hilbert(prof, 1)))
    print("       roots of the conic on 30 random lines: %s" % lines["histogram"])
