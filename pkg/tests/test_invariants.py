"""Representation spaces, averaging projector, Molien series, patterns."""

from fractions import Fraction

import numpy as np
import pytest

from conftest import span_equal
from hgptsym import invariants as inv
from hgptsym import symgroups as sg

F = Fraction


class TestRepresentationSpaces:
    @pytest.mark.parametrize("p", [0, 1, 2, 3])
    def test_harmonic_space(self, p):
        space = inv.harmonic_space(p)
        assert space.dim == 2 * p + 1
        assert space.is_exact
        assert space.index_map == tuple((i,) for i in range(-p, p + 1))

    @pytest.mark.parametrize("p,q,dim", [(1, 1, 6), (1, 2, 15), (1, 3, 21),
                                         (2, 2, 15), (3, 3, 28)])
    def test_symmetric_product_dims(self, p, q, dim):
        space = inv.symmetric_product_space(p, q)
        assert space.dim == dim
        if p == q:
            assert all(i <= j for i, j in space.index_map)

    def test_s11_ordering_matches_convention(self):
        space = inv.symmetric_product_space(1, 1)
        assert space.index_map == ((-1, -1), (-1, 0), (-1, 1),
                                   (0, 0), (0, 1), (1, 1))
        # diagonal element is the plain product, off-diagonal symmetrized
        assert space.basis[0].to_text() == "1*x1*y1"
        assert space.basis[1].to_text() == "1*x1*y2 + 1*x2*y1"

    def test_elements_are_homogeneous_products(self):
        space = inv.symmetric_product_space(2, 2)
        for b in space.basis:
            assert b.degree() == 4 and b.is_homogeneous()


class TestActionMatrices:
    def test_exact_homomorphism(self):
        g = sg.build_group("O")
        space = inv.harmonic_space(2)
        mats = [np.array([[float(v) for v in row]
                          for row in inv.action_matrix(space, E, exact_R=E)])
                for E in g.exact_elements]
        flo = [np.asarray(E, dtype=float) for E in g.elements]
        # pi(R1 R2) = pi(R1) pi(R2) for a few pairs
        for a in range(0, 24, 7):
            for b in range(0, 24, 5):
                P = flo[a] @ flo[b]
                k = next(i for i, E in enumerate(flo)
                         if np.max(np.abs(E - P)) < 1e-9)
                assert np.max(np.abs(mats[a] @ mats[b] - mats[k])) < 1e-12

    def test_defining_property(self, rng):
        # I_p(R x) = D_p(R) I_p(x) pointwise
        from conftest import random_rotation
        space = inv.harmonic_space(3)
        R = random_rotation(rng)
        D = np.array(inv.action_matrix(space, R))
        for _ in range(5):
            x = rng.normal(size=3)
            lhs = np.array([float(b.evaluate(tuple(R @ x))) for b in space.basis])
            rhs = D @ np.array([float(b.evaluate(tuple(x))) for b in space.basis])
            assert np.max(np.abs(lhs - rhs)) < 1e-9

    def test_float_matches_exact(self):
        g = sg.build_group("C4")
        space = inv.symmetric_product_space(1, 1)
        for E, X in zip(g.elements, g.exact_elements):
            Pe = np.array([[float(v) for v in row]
                           for row in inv.action_matrix(space, X, exact_R=X)])
            Pf = np.asarray(inv.action_matrix(space, E))
            assert np.max(np.abs(Pe - Pf)) < 1e-12


class TestProjector:
    @pytest.mark.parametrize("name", ["C2", "C4", "D4", "O"])
    def test_idempotent_exact(self, name):
        g = sg.build_group(name)
        space = inv.symmetric_product_space(1, 1)
        M = inv.averaging_projector(space, g)
        n = space.dim
        sq = [[sum(M[i][k] * M[k][j] for k in range(n)) for j in range(n)]
              for i in range(n)]
        assert sq == M

    @pytest.mark.parametrize("name", ["C3", "C6", "I"])
    def test_idempotent_float(self, name):
        g = sg.build_group(name)
        space = inv.symmetric_product_space(1, 2)
        M = inv.averaging_projector(space, g)
        assert np.max(np.abs(M @ M - M)) < 1e-9

    def test_trivial_group_projects_to_identity(self):
        g = sg.build_group("C1")
        space = inv.symmetric_product_space(1, 1)
        M = inv.averaging_projector(space, g)
        assert all(M[i][j] == (1 if i == j else 0)
                   for i in range(6) for j in range(6))


class TestInvariantSubspace:
    def test_c1_gives_whole_space(self):
        space = inv.symmetric_product_space(2, 2)
        sub = inv.invariant_subspace(space, sg.build_group("C1"))
        assert sub.dimension == 15

    def test_fixedness_random_points(self):
        g = sg.build_group("D3")
        space = inv.symmetric_product_space(2, 2)
        sub = inv.invariant_subspace(space, g)
        ok, worst = inv.verify_fixed(sub, g)
        assert ok, worst

    def test_type2_kills_odd_degrees(self):
        # p + q odd: inversion negates every element, no invariants survive
        g = sg.build_group("C2i")
        space = inv.symmetric_product_space(1, 2)
        assert inv.invariant_subspace(space, g).dimension == 0

    def test_canonical_scaling(self):
        g = sg.build_group("C4")
        sub = inv.invariant_subspace(inv.symmetric_product_space(1, 1), g)
        for b in sub.basis:
            assert b.is_exact()
            # content 1: integer coefficients with gcd 1
            assert all(c.denominator == 1 for c in b.terms.values())


class TestIntersection:
    def test_nullspace_threshold(self):
        C = np.array([[1.0, 0.0], [0.0, 1e-14]])
        N = inv.nullspace(C)
        assert N.shape[0] == 1

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("pq", [(1, 1), (2, 2)])
    def test_dihedral_equals_intersection(self, n, pq):
        dn = sg.build_group("D%d" % n)
        cn = sg.build_group("C%d" % n)
        flip = sg.group_from_generators("flip", [np.diag([1.0, -1.0, -1.0])])
        space = inv.symmetric_product_space(*pq)
        A = np.array([[float(c) for c in r] for r in
                      inv.invariant_subspace(space, cn).coefficient_rows]).T
        B = np.array([[float(c) for c in r] for r in
                      inv.invariant_subspace(space, flip).coefficient_rows]).T
        inter = inv.intersect_subspaces(A, B)
        direct = inv.invariant_subspace(space, dn)
        assert inter.shape[0] == direct.dimension
        D = np.array([[float(c) for c in r] for r in direct.coefficient_rows])
        stacked = np.vstack([inter, D])
        assert np.linalg.matrix_rank(stacked, tol=1e-8) == direct.dimension


class TestMolien:
    def test_d4_series(self):
        ms = inv.molien_series(sg.build_group("D4"), 5)
        assert list(ms.h) == [1, 0, 1, 0, 2, 1]

    @pytest.mark.parametrize("name", ["C2", "C3", "C4", "C5", "C6",
                                      "D2", "D3", "D4", "D5", "D6",
                                      "T", "O", "I", "C4i", "Oi"])
    def test_h_equals_projector_route(self, name):
        g = sg.build_group(name)
        ms = inv.molien_series(g, 6)
        for m in range(0, 7):
            space = inv.harmonic_space(m)
            assert inv.invariant_subspace(space, g).dimension == ms.h[m], \
                (name, m)

    def test_invariant_harmonics_cross_validates(self):
        got = inv.invariant_harmonics(sg.build_group("O"), 4)
        assert got.dimension == 1
        for b in got.basis:
            assert b.laplacian().is_zero()


class TestCoefficientPattern:
    def test_c4_pattern(self):
        g = sg.build_group("C4")
        sub = inv.invariant_subspace(inv.symmetric_product_space(1, 1), g)
        pat = inv.coefficient_pattern(sub)
        assert set(pat.independent) == {(-1, -1), (1, 1)}
        assert pat.relations == {(0, 0): [((-1, -1), F(1))]}
        assert set(pat.zero) == {(-1, 0), (-1, 1), (0, 1)}

    def test_c2_pattern(self):
        g = sg.build_group("C2")
        sub = inv.invariant_subspace(inv.symmetric_product_space(1, 1), g)
        pat = inv.coefficient_pattern(sub)
        assert set(pat.independent) == {(-1, -1), (-1, 0), (0, 0), (1, 1)}
        assert not pat.relations
        assert set(pat.zero) == {(-1, 1), (0, 1)}

    def test_matrix_span_is_symmetric(self):
        g = sg.build_group("C2")
        sub = inv.invariant_subspace(inv.symmetric_product_space(1, 1), g)
        for M in inv.coefficient_pattern(sub).matrix_span():
            assert np.max(np.abs(M - M.T)) == 0

    def test_pattern_requires_product_space(self):
        g = sg.build_group("C2")
        sub = inv.invariant_subspace(inv.harmonic_space(2), g)
        with pytest.raises(ValueError):
            inv.coefficient_pattern(sub)
