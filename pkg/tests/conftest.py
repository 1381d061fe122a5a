"""Shared fixtures and polynomial-span helpers for the test suite."""

from fractions import Fraction

import numpy as np
import pytest

from hgptsym.polyalg import Polynomial

# 3-variable building blocks for writing golden polynomials by hand
u1, u2, u3 = (Polynomial.variable(i, 3) for i in range(3))


def lift(poly3, block):
    """Embed a 3-variable polynomial into the x- or y-variables of 6."""
    shift = 0 if block == "x" else 3
    terms = {}
    for e, c in poly3.terms.items():
        ne = [0] * 6
        for i, k in enumerate(e):
            ne[shift + i] = k
        terms[tuple(ne)] = c
    return Polynomial(terms, 6)


def prod(f, g):
    """f(x) g(y) as a 6-variable polynomial."""
    return lift(f, "x") * lift(g, "y")


def sym(f, g):
    """Symmetrized product f(x) g(y) + f(y) g(x)."""
    return prod(f, g) + prod(g, f)


def coeff_matrix(polys):
    """Float coefficient matrix of a polynomial list on their joint monomials."""
    monos = sorted({e for p in polys for e in p.terms})
    index = {e: i for i, e in enumerate(monos)}
    A = np.zeros((len(polys), len(monos)))
    for i, p in enumerate(polys):
        for e, c in p.terms.items():
            A[i, index[e]] = float(c)
    return A, monos


def span_equal(polys_a, polys_b, tol=1e-8):
    """True when the two polynomial lists span the same subspace."""
    if not polys_a and not polys_b:
        return True
    monos = sorted({e for p in list(polys_a) + list(polys_b) for e in p.terms})
    index = {e: i for i, e in enumerate(monos)}

    def rows(polys):
        A = np.zeros((len(polys), len(monos)))
        for i, p in enumerate(polys):
            for e, c in p.terms.items():
                A[i, index[e]] = float(c)
            norm = np.linalg.norm(A[i])
            if norm > 0:
                A[i] /= norm
        return A

    A, B = rows(list(polys_a)), rows(list(polys_b))
    ra = np.linalg.matrix_rank(A, tol=tol)
    rb = np.linalg.matrix_rank(B, tol=tol)
    rs = np.linalg.matrix_rank(np.vstack([A, B]), tol=tol)
    return ra == rb == rs


def proportional(p, q, positive=True, tol=0.0):
    """True when p = c*q for a (positive) scalar c."""
    if set(p.terms) != set(q.terms):
        return False
    ratio = None
    for e, c in p.terms.items():
        r = float(c) / float(q.terms[e])
        if ratio is None:
            ratio = r
        elif abs(r - ratio) > tol + 1e-12 * abs(ratio):
            return False
    return ratio is not None and (ratio > 0 or not positive)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_rotation(rng):
    Q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    if np.linalg.det(Q) < 0:
        Q[:, 0] *= -1
    return Q


def frac(a, b=1):
    return Fraction(a, b)
