"""Finite orthogonal point groups of the three types.

Run:  python3 demos/02_point_groups.py
"""

import numpy as np

from hgptsym import symgroups as sg

# Type 1: pure rotation groups.  Cyclic C_n and dihedral D_n about the
# x3 axis, plus the tetrahedral, octahedral and icosahedral groups.
for name in ("C2", "C4", "C6", "D4", "T", "O", "I"):
    g = sg.build_group(name)
    report = sg.verify_group(g)
    print("%-3s order %3d   %s arithmetic   verified=%s"
          % (g.name, g.order, "exact" if g.is_rational else "float",
             report.passed))

# Type 2: adjoin the central inversion J = -I.  The order doubles and half
# the elements become improper (determinant -1).
g = sg.build_group("Oi")
dets = [round(float(np.linalg.det(np.asarray(E)))) for E in g]
print("\nOi: order %d, %d rotations, %d improper"
      % (g.order, dets.count(1), dets.count(-1)))

# Type 3: from an index-2 subgroup G1 of a rotation group G2, keep G1 and
# multiply the complementary coset by J.  The result contains improper
# elements but not J itself.
g = sg.build_group("type3:C4/C2")
has_inversion = any(np.max(np.abs(np.asarray(E) + np.eye(3))) < 1e-12 for E in g)
print("type3:C4/C2: order %d, contains J: %s" % (g.order, has_inversion))

# Custom generator sets close under multiplication (capped closure).
flip = sg.group_from_generators("flip", [np.diag([1.0, -1.0, -1.0])])
print("custom 2-fold flip group: order", flip.order)
