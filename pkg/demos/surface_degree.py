"""
The d = 2 case at desk scale: all 8344 points of one component of Y_V over
F_81 give a Hilbert function whose second difference settles at 16, the
closed-form degree.  Takes well under a minute.

    python3 demos/surface_degree.py
"""
from orthodl.chow import degree_closed
from orthodl.degree_lab import verify_degree

rep = verify_degree(3, 2, 2, 6, timings=True)
print("cloud size     ", rep["cloud_size"])
print("HF(0..6)       ", rep["profile"])
print("second diffs   ", rep["differences"])
print("degree         ", rep["degree"], " closed form:", degree_closed(3, 2))
print("4x margin held ", rep["margin_4x"])
print("seconds        ", rep["elapsed_ms"] / 1000)
