"""Counting and constructing group-invariant harmonic polynomials.

Two independent routes must agree: the coefficient h_m of the series
h(t) = (1 - t^2) g(t), with g the Molien series of the group, and the
dimension of the fixed subspace computed by group averaging.

Run:  python3 demos/04_molien_and_invariant_harmonics.py
"""

from hgptsym import invariants as inv
from hgptsym import symgroups as sg
from hgptsym.polyalg import Polynomial, kelvin_harmonicize

g = sg.build_group("D4")

ms = inv.molien_series(g, 8)
print("D4 Molien series g_m:", list(ms.g))
print("harmonic counts  h_m:", list(ms.h))

# Construct the invariant harmonics themselves for each degree; the
# constructor cross-validates the dimension against h_m.
for m in range(5):
    got = inv.invariant_harmonics(g, m)
    polys = [p.to_text() for p in got.basis] or ["(none)"]
    print("degree %d  h=%d   %s" % (m, got.dimension, "; ".join(polys)))

# The same polynomials arise from the classical Kelvin-transform recipe
# r^(2m+1) Q(d/dx1, d/dx2, d/dx3) (1/r) applied to an operating
# polynomial Q that is invariant under the group.
u1, u2, u3 = (Polynomial.variable(i) for i in range(3))
for Q, m in [(u3 ** 2, 2), (u3 ** 4, 4),
             (u1 ** 4 - 6 * u1 ** 2 * u2 ** 2 + u2 ** 4, 4)]:
    h = kelvin_harmonicize(Q, m)
    assert h.laplacian().is_zero()
    print("kelvin(%s) = %s" % (Q.to_text(), h.to_text()))

# The counts agree for every built-in group.
for name in ("C3", "C6", "T", "O", "I", "Oi"):
    grp = sg.build_group(name)
    series = inv.molien_series(grp, 6)
    direct = [inv.invariant_subspace(inv.harmonic_space(m), grp).dimension
              for m in range(7)]
    assert direct == list(series.h)
    print("%-3s h_m (m<=6): %s" % (name, direct))
