"""HGPT coefficient-matrix algebra.

An HGPT block N_pq holds the coefficients M^H_{q j p i} of a rank-(p, q)
harmonic generalised polarizability tensor in a real harmonic basis,
(N_pq)_{ij} = M^H_{q j p i} with i = -p..p, j = -q..q mapped to matrix
indices by i -> i + p.  This module converts between the complex (CGPT)
and real (HGPT) compactions, applies the scaling and rotation laws,
enforces symmetry patterns, and evaluates the forward voltage model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import invariants
from .harmonics import basis_change, monomial_expansion, monomials_of_degree, real_basis

REALITY_TOL = 1e-9


@dataclass(frozen=True)
class HgptMatrix:
    """Real (2p+1) x (2q+1) HGPT block in the tagged real basis style."""

    p: int
    q: int
    entries: np.ndarray
    basis_style: str = "orthonormal"

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float)
        if e.shape != (2 * self.p + 1, 2 * self.q + 1):
            raise ValueError("entries must be (2p+1) x (2q+1)")
        object.__setattr__(self, "entries", e)

    def coefficient(self, i, j):
        """M^H_{q j p i} addressed by orders i in -p..p, j in -q..q."""
        return self.entries[i + self.p, j + self.q]

    def to_json_dict(self):
        return {"p": self.p, "q": self.q, "basis_style": self.basis_style,
                "entries": [float(v) for v in self.entries.ravel()]}

    @staticmethod
    def from_json_dict(d):
        p, q = int(d["p"]), int(d["q"])
        e = np.array(d["entries"], dtype=float).reshape(2 * p + 1, 2 * q + 1)
        return HgptMatrix(p, q, e, d.get("basis_style", "orthonormal"))


@dataclass(frozen=True)
class CgptMatrix:
    """Complex (2p+1) x (2q+1) CGPT block (M_pq)_{mn} = M^C_{q n p m}."""

    p: int
    q: int
    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        if e.shape != (2 * self.p + 1, 2 * self.q + 1):
            raise ValueError("entries must be (2p+1) x (2q+1)")
        object.__setattr__(self, "entries", e)


@dataclass(frozen=True)
class GptCoefficients:
    """Real GPT values M_ab keyed by multi-index pairs with |a| = p, |b| = q."""

    p: int
    q: int
    values: dict

    def matrix(self):
        mp = monomials_of_degree(self.p, 3)
        mq = monomials_of_degree(self.q, 3)
        G = np.zeros((len(mp), len(mq)))
        for a_idx, a in enumerate(mp):
            for b_idx, b in enumerate(mq):
                if (a, b) not in self.values:
                    raise KeyError("missing GPT entry for %s, %s" % (a, b))
                G[a_idx, b_idx] = self.values[(a, b)]
        return G


def _changes(p, q, style):
    return basis_change(p, style), basis_change(q, style)


def hgpt_from_cgpt(M, A_p=None, A_q=None, style="orthonormal"):
    """N_pq from a CGPT block: conjugate by the real<->complex basis change.

    Returns (HgptMatrix, imaginary_residue).  The residue is the largest
    imaginary part discarded; it exceeds REALITY_TOL only for blocks that
    did not come from a real-contrast problem.
    """
    if A_p is None:
        A_p, A_q = _changes(M.p, M.q, style)
    Ap, Aq = A_p.matrix, A_q.matrix
    if Ap.shape[0] != M.entries.shape[0] or Aq.shape[0] != M.entries.shape[1]:
        raise ValueError("basis-change dimensions do not match the block")
    N = Ap.conj().T @ M.entries @ Aq
    residue = float(np.max(np.abs(N.imag)))
    return HgptMatrix(M.p, M.q, N.real, A_p.real_style), residue


def cgpt_from_hgpt(N, A_p=None, A_q=None):
    """Inverse of hgpt_from_cgpt (unitary changes in the orthonormal style)."""
    if A_p is None:
        A_p, A_q = _changes(N.p, N.q, N.basis_style)
    Ap, Aq = A_p.matrix, A_q.matrix
    M = Ap @ N.entries.astype(complex) @ Aq.conj().T
    return CgptMatrix(N.p, N.q, M)


def hgpt_from_gpt(G, style="orthonormal"):
    """Contract raw GPT values onto the real harmonic basis.

    N = W_p (T_p G T_q^H) W_q^H / ((2p+1)(2q+1)) where T_p[m, a] is the
    conjugated monomial coefficient of H_p^m and W_p expands the real
    basis in the complex one.  Returns (HgptMatrix, imaginary_residue).
    """
    p, q = G.p, G.q
    Gm = G.matrix()
    _, AMHp = monomial_expansion(p)
    _, AMHq = monomial_expansion(q)
    A_p, A_q = _changes(p, q, style)
    Wp = A_p.matrix.conj().T      # rows: real index i; columns: order m
    Wq = A_q.matrix.conj().T
    Mc = AMHp.conj().T @ Gm @ AMHq
    N = Wp @ Mc @ Wq.conj().T / ((2 * p + 1) * (2 * q + 1))
    residue = float(np.max(np.abs(N.imag)))
    return HgptMatrix(p, q, N.real, style), residue


def scale(N, s):
    """Scaling law: N_pq(sB) = s^(p+q+1) N_pq(B)."""
    if s <= 0:
        raise ValueError("scale factor must be positive")
    return HgptMatrix(N.p, N.q, N.entries * s ** (N.p + N.q + 1), N.basis_style)


def rotation_matrix(p, R, style="orthonormal"):
    """D_p(R): action of R on the degree-p real basis, I_p(Rx) = D_p(R) I_p(x)."""
    space = invariants.harmonic_space(p, style)
    return np.asarray(invariants.action_matrix(space, np.asarray(R, dtype=float)),
                      dtype=float)


def rotate(N, R):
    """Rotation law: the block of the rotated object R(B) is D_p(R)^T N D_q(R),
    so that sum_ij I_p^i(x) N'_ij I_q^j(y) = sum_ij I_p^i(Rx) N_ij I_q^j(Ry)."""
    Dp = rotation_matrix(N.p, R, N.basis_style)
    Dq = rotation_matrix(N.q, R, N.basis_style)
    return HgptMatrix(N.p, N.q, Dp.T @ N.entries @ Dq, N.basis_style)


def forward_voltage(blocks, x_r, x_s):
    """Truncated voltage V_sr = sum_pq I_rp N_pq I_sq^T / (|x_r|^(2p+1) |x_s|^(2q+1)).

    ``blocks`` is an iterable of HgptMatrix; the I-vectors evaluate the same
    real basis that indexes each block.
    """
    x_r = tuple(float(v) for v in x_r)
    x_s = tuple(float(v) for v in x_s)
    rr = math.sqrt(sum(v * v for v in x_r))
    rs = math.sqrt(sum(v * v for v in x_s))
    if rr == 0.0 or rs == 0.0:
        raise ValueError("source and receiver must be away from the origin")
    cache = {}

    def ivec(n, x, style):
        key = (n, x, style)
        if key not in cache:
            basis = real_basis(n, style)
            cache[key] = np.array([float(b.evaluate(x)) for b in basis.polynomials])
        return cache[key]

    total = 0.0
    for N in blocks:
        Ir = ivec(N.p, x_r, N.basis_style)
        Is = ivec(N.q, x_s, N.basis_style)
        total += float(Ir @ N.entries @ Is) / (rr ** (2 * N.p + 1) * rs ** (2 * N.q + 1))
    return total


def apply_pattern(N, pattern):
    """Project N onto the span allowed by a coefficient pattern.

    Orthogonal (Frobenius) projection onto the pattern's matrix span.
    Returns (projected HgptMatrix, residual), where the residual is the
    Frobenius norm of the removed component — a symmetry-violation score.
    """
    if (pattern.p, pattern.q) != (N.p, N.q) or pattern.style != N.basis_style:
        raise ValueError("pattern was built for a different block or basis style")
    mats = pattern.matrix_span()
    if not mats:
        proj = np.zeros_like(N.entries)
    else:
        V = np.array([m.ravel() for m in mats])
        # orthonormalize the span rows, then project
        Q = np.linalg.qr(V.T, mode="reduced")[0]
        proj = (Q @ (Q.T @ N.entries.ravel())).reshape(N.entries.shape)
    residual = float(np.linalg.norm(N.entries - proj))
    return HgptMatrix(N.p, N.q, proj, N.basis_style), residual
