"""Sparse multivariate polynomial arithmetic over the rationals.

Polynomials live in either 3 variables (x1, x2, x3) or 6 variables
(x1, x2, x3, y1, y2, y3).  Coefficients are ``Fraction`` whenever the
inputs are exact; mixing in floats (or complex numbers) degrades
gracefully to inexact coefficients.  All values are immutable in use:
every operation returns a new polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction

VAR_NAMES_3 = ("x1", "x2", "x3")
VAR_NAMES_6 = ("x1", "x2", "x3", "y1", "y2", "y3")


def _coerce(c):
    if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
        return Fraction(c)
    return c


def _is_exact(c):
    return isinstance(c, Fraction)


class Polynomial:
    """Sparse polynomial keyed by exponent tuples."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms, nvars):
        if nvars not in (3, 6):
            raise ValueError("nvars must be 3 or 6")
        clean = {}
        for exps, c in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError("bad exponent tuple %r" % (exps,))
            c = _coerce(c)
            if c != 0:
                clean[exps] = clean.get(exps, 0) + c
                if clean[exps] == 0:
                    del clean[exps]
        self.terms = clean
        self.nvars = nvars

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars=3):
        return cls({}, nvars)

    @classmethod
    def constant(cls, c, nvars=3):
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def one(cls, nvars=3):
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, i, nvars=3):
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def monomial(cls, exps, c=1):
        return cls({tuple(exps): c}, len(exps))

    # ---- basic queries -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_exact(self):
        return all(_is_exact(c) for c in self.terms.values())

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def leading_exponent(self):
        """Lexicographically largest exponent tuple (None if zero).

        The last variable is most significant, so e.g. x3^2 leads x1^2;
        this is the ordering the canonical sign fix refers to.
        """
        if not self.terms:
            return None
        return max(self.terms, key=lambda e: e[::-1])

    # ---- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, float, complex, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        if self.nvars != other.nvars:
            raise ValueError("variable-count mismatch")
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Polynomial(t, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Polynomial) else -_coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, Fraction)):
            other = _coerce(other)
            return Polynomial({e: c * other for e, c in self.terms.items()}, self.nvars)
        if self.nvars != other.nvars:
            raise ValueError("variable-count mismatch")
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Polynomial(t, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        scalar = _coerce(scalar)
        return Polynomial({e: c / scalar for e, c in self.terms.items()}, self.nvars)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # ---- calculus -------------------------------------------------------

    def diff(self, i):
        t = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            t[tuple(ne)] = t.get(tuple(ne), 0) + c * e[i]
        return Polynomial(t, self.nvars)

    def laplacian(self):
        """Sum of second derivatives in x1, x2, x3 (3-variable only)."""
        if self.nvars != 3:
            raise ValueError("laplacian requires a 3-variable polynomial")
        out = Polynomial.zero(3)
        for i in range(3):
            out = out + self.diff(i).diff(i)
        return out

    # ---- evaluation and substitution -------------------------------------

    def evaluate(self, point):
        point = tuple(point)
        if len(point) != self.nvars:
            raise ValueError("variable-count mismatch")
        total = 0
        for e, c in self.terms.items():
            v = c
            for xi, ei in zip(point, e):
                if ei:
                    v = v * xi ** ei
            total = total + v
        return total

    def compose_linear(self, R, which="both"):
        """Substitute x -> R x (and/or y -> R y) for a 3x3 matrix R.

        ``which`` is one of "x", "y", "both".  Exact when R has rational
        entries supplied as Fractions/ints.
        """
        rows = [[_coerce(R[i][j]) for j in range(3)] for i in range(3)]
        sub_x = which in ("x", "both")
        sub_y = which in ("y", "both")
        if self.nvars == 3 and not sub_x:
            raise ValueError("3-variable polynomial has no y block")
        if self.nvars == 3:
            sub_y = False

        # linear forms for each substituted variable
        forms = {}
        for i in range(3):
            if sub_x:
                forms[i] = Polynomial(
                    {tuple(1 if j == k else 0 for k in range(self.nvars)): rows[i][j]
                     for j in range(3)}, self.nvars)
            if sub_y and self.nvars == 6:
                forms[3 + i] = Polynomial(
                    {tuple(1 if j + 3 == k else 0 for k in range(6)): rows[i][j]
                     for j in range(3)}, 6)

        power_cache = {}

        def power(v, k):
            key = (v, k)
            if key not in power_cache:
                if k == 0:
                    power_cache[key] = Polynomial.one(self.nvars)
                elif k == 1:
                    power_cache[key] = forms[v]
                else:
                    power_cache[key] = power(v, k - 1) * forms[v]
            return power_cache[key]

        out = Polynomial.zero(self.nvars)
        for e, c in self.terms.items():
            term = Polynomial.constant(c, self.nvars)
            for v, k in enumerate(e):
                if k == 0:
                    continue
                if v in forms:
                    term = term * power(v, k)
                else:
                    term = term * Polynomial.monomial(
                        tuple(k if u == v else 0 for u in range(self.nvars)))
            out = out + term
        return out

    # ---- canonical form ---------------------------------------------------

    def canonicalized(self):
        """Content-1, sign-fixed form.  Returns (poly, applied_scale).

        For exact polynomials the coefficients are scaled so that the gcd of
        integer coefficients (after clearing denominators) is 1 and the
        lexicographically-leading coefficient is positive.  Inexact
        polynomials are scaled by the inverse of the leading coefficient's
        magnitude with the same sign fix.  ``applied_scale`` is the factor
        the polynomial was multiplied by.
        """
        if not self.terms:
            return self, Fraction(1)
        if self.is_exact():
            denlcm = 1
            for c in self.terms.values():
                denlcm = denlcm * c.denominator // math.gcd(denlcm, c.denominator)
            nums = [abs(int(c * denlcm)) for c in self.terms.values()]
            g = 0
            for n in nums:
                g = math.gcd(g, n)
            scale = Fraction(denlcm, g)
            lead = self.terms[self.leading_exponent()]
            if lead < 0:
                scale = -scale
            return self * scale, scale
        lead = self.terms[self.leading_exponent()]
        mag = abs(lead)
        scale = (1.0 / mag) if lead.real >= 0 or isinstance(lead, complex) else (-1.0 / mag)
        return self * scale, scale

    def snapped(self, tol=1e-9, max_den=1000):
        """Float coefficients replaced by nearby small rationals when one
        exists within ``tol``; exact polynomials are returned unchanged."""
        if self.is_exact():
            return self
        terms = {}
        for e, c in self.terms.items():
            if isinstance(c, complex):
                return self
            f = Fraction(float(c)).limit_denominator(max_den)
            terms[e] = f if abs(float(f) - float(c)) <= tol else c
        return Polynomial(terms, self.nvars)

    # ---- text / JSON form ---------------------------------------------------

    def to_text(self):
        if not self.terms:
            return "0"
        names = VAR_NAMES_3 if self.nvars == 3 else VAR_NAMES_6
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if isinstance(c, Fraction):
                cs = str(c.numerator) if c.denominator == 1 else "%d/%d" % (
                    c.numerator, c.denominator)
            elif isinstance(c, complex):
                cs = repr(c)
            else:
                cs = "%.12g" % float(c)
            factors = [cs]
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append("%s^%d" % (name, k))
            parts.append("*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json_terms(self):
        """JSON-friendly list of {exponents, num, den} dicts."""
        out = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if not isinstance(c, Fraction):
                c = Fraction(float(c.real)).limit_denominator(10 ** 9)
            out.append({"exponents": list(e), "num": c.numerator, "den": c.denominator})
        return out

    @classmethod
    def from_json_terms(cls, items, nvars):
        terms = {}
        for it in items:
            e = tuple(it["exponents"])
            terms[e] = terms.get(e, 0) + Fraction(it["num"], it["den"])
        return cls(terms, nvars)

    def __repr__(self):
        return "Polynomial(%s)" % self.to_text()


# ---------------------------------------------------------------------------
# Kelvin-transform construction of harmonic polynomials
# ---------------------------------------------------------------------------

def kelvin_harmonicize(q, m):
    """Harmonic polynomial r^(2m+1) * q(d/dx1, d/dx2, d/dx3) (1/r).

    ``q`` must be homogeneous of degree ``m`` in 3 variables.  The result is
    homogeneous of degree m, harmonic, and canonicalized (content 1,
    lexicographically-leading coefficient positive).
    """
    if q.nvars != 3:
        raise ValueError("variable-count mismatch: need 3 variables")
    if not q.is_homogeneous() or (not q.is_zero() and q.degree() != m):
        raise ValueError("q must be homogeneous of degree %d" % m)
    r2 = (Polynomial.variable(0) ** 2 + Polynomial.variable(1) ** 2
          + Polynomial.variable(2) ** 2)

    # Represent rational functions P(x)/r^n as (P, n); differentiate within
    # that family: d_i(P/r^n) = ((d_i P) r^2 - n x_i P)/r^(n+2).
    def deriv(P, n, i):
        return P.diff(i) * r2 - (n * Polynomial.variable(i)) * P, n + 2

    cache = {(0, 0, 0): (Polynomial.one(3), 1)}

    def partial(exps):
        if exps in cache:
            return cache[exps]
        for i in range(3):
            if exps[i] > 0:
                prev = list(exps)
                prev[i] -= 1
                P, n = partial(tuple(prev))
                cache[exps] = deriv(P, n, i)
                return cache[exps]
        raise AssertionError

    out = Polynomial.zero(3)
    for exps, c in q.terms.items():
        P, n = partial(exps)
        assert n == 2 * m + 1
        out = out + c * P
    poly, _ = out.canonicalized()
    return poly


# ---------------------------------------------------------------------------
# Exact linear algebra over the rationals (Fraction matrices as lists of lists)
# ---------------------------------------------------------------------------

def rational_rref(rows):
    """Reduced row echelon form.  Returns (rref_rows, pivot_columns)."""
    A = [[Fraction(x) for x in row] for row in rows]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c]
        A[r] = [v / inv for v in A[r]]
        for i in range(nr):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return A, pivots


def rational_rank(rows):
    _, pivots = rational_rref(rows)
    return len(pivots)


def rational_nullspace(rows):
    """Basis (list of rows) for the null space of the matrix."""
    if not rows:
        return []
    nc = len(rows[0])
    rref, pivots = rational_rref(rows)
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * nc
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r][fc]
        basis.append(v)
    return basis


def rational_solve(A, B):
    """Solve A X = B exactly for a consistent system with full column rank.

    ``A`` is m x n (m >= n), ``B`` is m x k.  Returns X as n x k rows.
    Raises ValueError if the system is inconsistent or rank-deficient.
    """
    m = len(A)
    n = len(A[0])
    k = len(B[0])
    aug = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(B[i][j]) for j in range(k)]
           for i in range(m)]
    rref, pivots = rational_rref(aug)
    if any(p >= n for p in pivots):
        raise ValueError("inconsistent linear system")
    if len(pivots) < n:
        raise ValueError("rank-deficient linear system")
    X = [[Fraction(0)] * k for _ in range(n)]
    for r, pc in enumerate(pivots):
        for j in range(k):
            X[pc][j] = rref[r][n + j]
    return X
