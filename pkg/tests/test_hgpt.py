"""HGPT block algebra: basis conversions, transformation laws, forward model."""

import math

import numpy as np
import pytest

from conftest import random_rotation
from hgptsym import hgpt
from hgptsym import invariants as inv
from hgptsym import symgroups as sg
from hgptsym.harmonics import basis_change, monomial_expansion, monomials_of_degree


def random_cgpt(rng, p, q):
    e = rng.normal(size=(2 * p + 1, 2 * q + 1)) + \
        1j * rng.normal(size=(2 * p + 1, 2 * q + 1))
    return hgpt.CgptMatrix(p, q, e)


class TestCgptConversion:
    def test_identity_maps_to_identity(self):
        M = hgpt.CgptMatrix(1, 1, np.eye(3, dtype=complex))
        N, residue = hgpt.hgpt_from_cgpt(M)
        assert np.max(np.abs(N.entries - np.eye(3))) < 1e-12
        assert residue < 1e-12

    @pytest.mark.parametrize("pq", [(1, 1), (1, 2), (2, 2), (1, 3)])
    def test_round_trip(self, rng, pq):
        p, q = pq
        N = hgpt.HgptMatrix(p, q, rng.normal(size=(2 * p + 1, 2 * q + 1)))
        M = hgpt.cgpt_from_hgpt(N)
        N2, residue = hgpt.hgpt_from_cgpt(M)
        assert np.max(np.abs(N2.entries - N.entries)) < 1e-12
        assert residue < 1e-12

    def test_hermitian_block_gives_symmetric_real_part(self, rng):
        A = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        M = hgpt.CgptMatrix(2, 2, (A + A.conj().T) / 2)
        N, _ = hgpt.hgpt_from_cgpt(M)
        assert np.max(np.abs(N.entries - N.entries.T)) < 1e-12

    def test_c4_patterned_hgpt_gives_diagonal_cgpt(self):
        N = hgpt.HgptMatrix(1, 1, np.diag([2.0, 2.0, 7.0]))
        M = hgpt.cgpt_from_hgpt(N)
        off = M.entries - np.diag(np.diag(M.entries))
        assert np.max(np.abs(off)) < 1e-12

    def test_zero_maps_to_zero(self):
        N = hgpt.HgptMatrix(1, 2, np.zeros((3, 5)))
        assert np.max(np.abs(hgpt.cgpt_from_hgpt(N).entries)) == 0

    def test_dimension_mismatch(self):
        M = hgpt.CgptMatrix(1, 1, np.eye(3, dtype=complex))
        with pytest.raises(ValueError):
            hgpt.hgpt_from_cgpt(M, basis_change(2), basis_change(2))


class TestGptConversion:
    def _brute_force(self, G, p, q, style="orthonormal"):
        """Direct quadruple sum over alpha, beta, m, n."""
        mp = monomials_of_degree(p, 3)
        mq = monomials_of_degree(q, 3)
        _, AMHp = monomial_expansion(p)
        _, AMHq = monomial_expansion(q)
        aIHp = basis_change(p, style).matrix.conj().T  # [i, m]
        aIHq = basis_change(q, style).matrix.conj().T
        N = np.zeros((2 * p + 1, 2 * q + 1), dtype=complex)
        for i in range(2 * p + 1):
            for j in range(2 * q + 1):
                total = 0j
                for ai, a in enumerate(mp):
                    for bi, b in enumerate(mq):
                        for m in range(2 * p + 1):
                            for n in range(2 * q + 1):
                                total += (aIHp[i, m] * np.conj(AMHp[ai, m]) *
                                          G.values[(a, b)] * AMHq[bi, n] *
                                          np.conj(aIHq[j, n]))
                N[i, j] = total / ((2 * p + 1) * (2 * q + 1))
        return N

    def test_matches_brute_force(self, rng):
        mp = monomials_of_degree(1, 3)
        vals = {(a, b): float(rng.normal()) for a in mp for b in mp}
        G = hgpt.GptCoefficients(1, 1, vals)
        N, residue = hgpt.hgpt_from_gpt(G)
        brute = self._brute_force(G, 1, 1)
        assert np.max(np.abs(N.entries - brute.real)) < 1e-12
        assert np.max(np.abs(brute.imag)) < 1e-12
        assert residue < 1e-12

    def test_isotropic_gives_scalar_matrix(self):
        mp = monomials_of_degree(1, 3)
        G = hgpt.GptCoefficients(1, 1, {(a, b): float(a == b)
                                        for a in mp for b in mp})
        N, _ = hgpt.hgpt_from_gpt(G)
        assert np.max(np.abs(N.entries - N.entries[0, 0] * np.eye(3))) < 1e-12
        assert N.entries[0, 0] == pytest.approx(1 / (12 * math.pi))

    def test_diagonal_polya_szego(self):
        mp = monomials_of_degree(1, 3)
        d = {(1, 0, 0): 2.0, (0, 1, 0): 3.0, (0, 0, 1): 5.0}
        G = hgpt.GptCoefficients(1, 1, {(a, b): (d[a] if a == b else 0.0)
                                        for a in mp for b in mp})
        N, _ = hgpt.hgpt_from_gpt(G)
        want = np.diag([2.0, 3.0, 5.0]) / (12 * math.pi)
        assert np.max(np.abs(N.entries - want)) < 1e-12

    def test_zero_and_missing_entries(self):
        mp = monomials_of_degree(1, 3)
        G = hgpt.GptCoefficients(1, 1, {(a, b): 0.0 for a in mp for b in mp})
        N, _ = hgpt.hgpt_from_gpt(G)
        assert np.max(np.abs(N.entries)) == 0
        with pytest.raises(KeyError):
            hgpt.hgpt_from_gpt(hgpt.GptCoefficients(1, 1, {}))


class TestScale:
    def test_factors(self):
        N = hgpt.HgptMatrix(1, 1, np.eye(3))
        assert hgpt.scale(N, 2.0).entries[0, 0] == 8.0  # s^(p+q+1) = 2^3
        N12 = hgpt.HgptMatrix(1, 2, np.ones((3, 5)))
        assert hgpt.scale(N12, 2.0).entries[0, 0] == 16.0  # 2^4

    def test_composition_and_identity(self, rng):
        N = hgpt.HgptMatrix(2, 2, rng.normal(size=(5, 5)))
        assert np.max(np.abs(hgpt.scale(N, 1.0).entries - N.entries)) == 0
        a = hgpt.scale(hgpt.scale(N, 2.0), 3.0).entries
        assert np.max(np.abs(a - hgpt.scale(N, 6.0).entries)) < 1e-10

    def test_rejects_nonpositive(self):
        N = hgpt.HgptMatrix(1, 1, np.eye(3))
        with pytest.raises(ValueError):
            hgpt.scale(N, 0.0)


class TestRotate:
    def test_identity(self, rng):
        N = hgpt.HgptMatrix(1, 2, rng.normal(size=(3, 5)))
        assert np.max(np.abs(hgpt.rotate(N, np.eye(3)).entries - N.entries)) < 1e-12

    def test_c4_fixed_point(self):
        N = hgpt.HgptMatrix(1, 1, np.diag([2.0, 2.0, 7.0]))
        R = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1]], dtype=float)
        assert np.max(np.abs(hgpt.rotate(N, R).entries - N.entries)) < 1e-12

    def test_composition_law(self, rng):
        N = hgpt.HgptMatrix(1, 2, rng.normal(size=(3, 5)))
        R1, R2 = random_rotation(rng), random_rotation(rng)
        a = hgpt.rotate(hgpt.rotate(N, R2), R1).entries
        b = hgpt.rotate(N, R2 @ R1).entries
        assert np.max(np.abs(a - b)) < 1e-10

    def test_preserves_singular_values(self, rng):
        N = hgpt.HgptMatrix(2, 2, rng.normal(size=(5, 5)))
        R = random_rotation(rng)
        s1 = np.linalg.svd(N.entries, compute_uv=False)
        s2 = np.linalg.svd(hgpt.rotate(N, R).entries, compute_uv=False)
        assert np.max(np.abs(s1 - s2)) < 1e-10


class TestForwardVoltage:
    def test_zero_blocks(self):
        N = hgpt.HgptMatrix(1, 1, np.zeros((3, 3)))
        assert hgpt.forward_voltage([N], (1, 2, 3), (3, 1, 0)) == 0.0

    def test_identity_block_closed_form(self):
        N = hgpt.HgptMatrix(1, 1, np.eye(3))
        v = hgpt.forward_voltage([N], (0, 0, 2), (0, 0, 2))
        assert v == pytest.approx((1 / 64) * 3 / math.pi)

    def test_swap_symmetry(self, rng):
        A = rng.normal(size=(3, 3))
        N = hgpt.HgptMatrix(1, 1, (A + A.T) / 2)
        xr, xs = (1.0, -2.0, 0.5), (0.3, 3.0, -1.0)
        assert hgpt.forward_voltage([N], xr, xs) == \
            pytest.approx(hgpt.forward_voltage([N], xs, xr))

    def test_rotation_equivariance(self, rng):
        N = hgpt.HgptMatrix(1, 2, rng.normal(size=(3, 5)))
        worst = 0.0
        for _ in range(50):
            R = random_rotation(rng)
            xr = rng.normal(size=3) + np.array([4.0, 0, 0])
            xs = rng.normal(size=3) + np.array([0, 5.0, 0])
            v1 = hgpt.forward_voltage([hgpt.rotate(N, R)], xr, xs)
            v2 = hgpt.forward_voltage([N], R @ xr, R @ xs)
            worst = max(worst, abs(v1 - v2))
        assert worst < 1e-10

    def test_rejects_origin(self):
        N = hgpt.HgptMatrix(1, 1, np.eye(3))
        with pytest.raises(ValueError):
            hgpt.forward_voltage([N], (0, 0, 0), (1, 0, 0))


class TestApplyPattern:
    def _pattern(self, name, p, q):
        g = sg.build_group(name)
        space = inv.symmetric_product_space(p, q, style="orthonormal")
        return inv.coefficient_pattern(inv.invariant_subspace(space, g))

    def test_patterned_matrix_has_zero_residual(self):
        pat = self._pattern("C4", 1, 1)
        N = hgpt.HgptMatrix(1, 1, np.diag([3.0, 3.0, -1.0]))
        _, res = hgpt.apply_pattern(N, pat)
        assert res < 1e-12

    def test_projection_is_idempotent(self, rng):
        pat = self._pattern("C4", 1, 1)
        N = hgpt.HgptMatrix(1, 1, rng.normal(size=(3, 3)))
        P, res = hgpt.apply_pattern(N, pat)
        assert res > 0
        P2, res2 = hgpt.apply_pattern(P, pat)
        assert res2 < 1e-12
        assert np.max(np.abs(P2.entries - P.entries)) < 1e-12

    def test_c2_patterned_violates_c4(self, rng):
        c2 = self._pattern("C2", 1, 1)
        c4 = self._pattern("C4", 1, 1)
        N = hgpt.HgptMatrix(1, 1, rng.normal(size=(3, 3)))
        P, _ = hgpt.apply_pattern(N, c2)
        _, res = hgpt.apply_pattern(P, c4)
        assert res > 1e-3

    def test_style_mismatch_rejected(self):
        g = sg.build_group("C4")
        space = inv.symmetric_product_space(1, 1, style="integer")
        pat = inv.coefficient_pattern(inv.invariant_subspace(space, g))
        N = hgpt.HgptMatrix(1, 1, np.eye(3), basis_style="orthonormal")
        with pytest.raises(ValueError):
            hgpt.apply_pattern(N, pat)


class TestJsonSchema:
    def test_round_trip(self, rng):
        N = hgpt.HgptMatrix(1, 2, rng.normal(size=(3, 5)), "integer")
        d = N.to_json_dict()
        assert set(d) == {"p", "q", "basis_style", "entries"}
        M = hgpt.HgptMatrix.from_json_dict(d)
        assert M.p == 1 and M.q == 2 and M.basis_style == "integer"
        assert np.max(np.abs(M.entries - N.entries)) == 0
