"""Real and complex harmonic polynomial bases, and the change between them.

Run:  python3 demos/01_harmonic_bases.py
"""

import numpy as np

from hgptsym import harmonics as H

# ---------------------------------------------------------------------------
# Real harmonic bases: 2n+1 independent harmonic polynomials per degree n.
# The "integer" style has small integer coefficients; the "orthonormal"
# style is orthonormal with respect to the surface integral over the unit
# sphere.
# ---------------------------------------------------------------------------
for n in (1, 2, 3):
    basis = H.real_basis(n, "integer")
    print("degree %d (%d polynomials):" % (n, len(basis.polynomials)))
    for p in basis.polynomials:
        assert p.laplacian().is_zero()
        print("   ", p.to_text())

# Orthonormality is exact: each basis element is a rational "core" times
# sqrt(n2/pi) for an exact rational n2, so the Gram matrix can be checked
# in rational arithmetic.
basis = H.real_basis(2, "orthonormal")
for i in range(5):
    for j in range(5):
        inner = H.sphere_inner_over_pi(basis.cores[i], basis.cores[j])
        if i == j:
            assert inner * basis.norms2[i] == 1
        else:
            assert inner == 0
print("\ndegree-2 orthonormal basis verified exactly orthonormal")

# ---------------------------------------------------------------------------
# Complex solid harmonics r^n Y_n^m and the unitary change of basis A with
# H_n^m = sum_l A[m, l] I_n^l (matrix convention: row m, column l).
# ---------------------------------------------------------------------------
bc = H.basis_change(2)
print("degree-2 basis change unitarity residual: %.2e" % bc.unitarity_residual())

# The expansion reproduces the complex harmonics pointwise.
rng = np.random.default_rng(0)
pt = tuple(rng.normal(size=3))
ivals = np.array([p.evaluate(pt) for p in H.real_basis(2, "orthonormal").polynomials])
for k, h in enumerate(H.complex_solid_harmonics(2)):
    assert abs(complex(bc.a[:, k] @ ivals) - h.evaluate(pt)) < 1e-10
print("H_2^m = sum_l a[l,m] I_2^l verified at a random point")

# ---------------------------------------------------------------------------
# The truncated expansion of the Laplace Green's function converges fast
# when the source is well inside the evaluation radius.
# ---------------------------------------------------------------------------
x, xp = (1.5, -0.3, 0.8), (0.1, 0.12, -0.05)
exact = H.green_exact(x, xp)
for N in (0, 2, 4, 8, 12):
    err = abs(H.green_expansion(x, xp, N) - exact)
    print("Green expansion N=%2d   error %.3e" % (N, err))
