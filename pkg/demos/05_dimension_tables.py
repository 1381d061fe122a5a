"""Reduced HGPT coefficient counts for the cyclic and dihedral groups.

For each group and each block (p, q), the number of independent HGPT
coefficients equals the dimension of the subspace of symmetric products
of harmonic polynomials fixed by the group.

Run:  python3 demos/05_dimension_tables.py
"""

from hgptsym import invariants as inv
from hgptsym import symgroups as sg

CELLS = [(1, 1), (1, 2), (1, 3), (2, 2)]
GROUPS = ["C1", "C2", "C3", "C4", "C5", "C6", "C7",
          "D2", "D3", "D4", "D5", "D6", "T", "O", "I"]

print("group   " + "".join("S%d%d  " % pq for pq in CELLS))
for name in GROUPS:
    g = sg.build_group(name)
    dims = [inv.invariant_subspace(inv.symmetric_product_space(p, q), g).dimension
            for (p, q) in CELLS]
    print("%-7s %s" % (name, "".join("%-5d" % d for d in dims)))

# Notes:
#  - C1 (no symmetry) shows the unreduced counts 6 / 15 / 21 / 15, i.e.
#    (2p+1)(q+1) symmetric products at p = q and (2p+1)(2q+1) otherwise.
#  - The rows stabilize for n >= 6: C7 matches C6 at these degrees, so
#    distinguishing higher cyclic orders needs higher-degree blocks.
#  - A dimension of 0 (e.g. tetrahedral at (1, 2)) means every HGPT
#    coefficient of that block vanishes for objects with that symmetry.
