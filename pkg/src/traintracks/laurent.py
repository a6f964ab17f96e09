"""Exact Laurent polynomials over Z and exact integer matrix utilities.

Everything here is integer arithmetic: no floats except where a routine
explicitly returns a numerical enclosure (root isolation by bisection uses
Fraction endpoints).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial sum c_k t^k, stored sparsely; no zero coefficients."""

    coeffs: tuple  # tuple of (exponent, coefficient), sorted by exponent

    @staticmethod
    def from_dict(d: dict) -> "LaurentPoly":
        return LaurentPoly(tuple(sorted((e, c) for e, c in d.items() if c != 0)))

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly(())

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly(((0, 1),))

    @staticmethod
    def t(k: int = 1, c: int = 1) -> "LaurentPoly":
        return LaurentPoly.from_dict({k: c})

    @staticmethod
    def from_list(coeffs, low: int = 0) -> "LaurentPoly":
        """Polynomial with ascending coefficients starting at exponent `low`."""
        return LaurentPoly.from_dict({low + i: c for i, c in enumerate(coeffs)})

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def min_exp(self) -> int:
        return self.coeffs[0][0]

    @property
    def max_exp(self) -> int:
        return self.coeffs[-1][0]

    @property
    def degree_span(self) -> int:
        return 0 if self.is_zero() else self.max_exp - self.min_exp

    def coefficient(self, e: int) -> int:
        return dict(self.coeffs).get(e, 0)

    def __add__(self, other):
        d = dict(self.coeffs)
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d)

    def __neg__(self):
        return LaurentPoly(tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly.from_dict({e: c * other for e, c in self.coeffs})
        d = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(d)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.coeffs))

    def reversed_var(self) -> "LaurentPoly":
        """Substitute t -> 1/t."""
        return LaurentPoly(tuple(sorted((-e, c) for e, c in self.coeffs)))

    def __call__(self, x):
        """Evaluate at an integer or Fraction x != 0."""
        total = 0
        for e, c in self.coeffs:
            total += c * (Fraction(x) ** e if e < 0 else x**e)
        return total

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ValueError when the remainder is nonzero."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        num = dict(self.coeffs)
        quo = {}
        lead_e, lead_c = other.coeffs[-1]
        while num:
            e = max(num)
            c = num[e]
            if c % lead_c != 0:
                raise ValueError("non-exact Laurent division")
            qe, qc = e - lead_e, c // lead_c
            quo[qe] = quo.get(qe, 0) + qc
            for oe, oc in other.coeffs:
                ne = oe + qe
                num[ne] = num.get(ne, 0) - oc * qc
                if num[ne] == 0:
                    del num[ne]
        return LaurentPoly.from_dict(quo)

    def symmetric_normalized(self) -> "LaurentPoly":
        """Normalize to p(t) = p(1/t) with positive leading coefficient.

        Multiplies by +-t^k; requires the coefficient sequence to be
        palindromic up to the shift, as Alexander polynomials of knots are.
        Centers the exponent range symmetrically about 0 (half-integer
        centers are shifted to make the minimum exponent 0 instead).
        """
        if self.is_zero():
            return self
        span = self.max_exp - self.min_exp
        if span % 2 == 0:
            p = self.shift(-(self.min_exp + span // 2))
        else:
            p = self.shift(-self.min_exp)
        if p != p.reversed_var() and span % 2 == 0:
            raise ValueError("polynomial is not symmetric up to units")
        if p.coeffs[-1][1] < 0:
            p = -p
        return p

    def pretty(self, var: str = "t") -> str:
        """Sparse descending-term rendering, e.g. 't^4 - t^3 + t^2 - t + 1'."""
        if self.is_zero():
            return "0"
        parts = []
        for e, c in reversed(self.coeffs):
            mag = abs(c)
            if e == 0:
                term = str(mag)
            elif e == 1:
                term = var if mag == 1 else f"{mag}*{var}"
            else:
                term = f"{var}^{e}" if mag == 1 else f"{mag}*{var}^{e}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __str__(self):
        return self.pretty()


# -- exact integer / Laurent matrices ----------------------------------------


def laurent_matrix_mul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    assert len(A[0]) == k
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = LaurentPoly.zero()
            for s in range(k):
                acc = acc + A[i][s] * B[s][j]
            row.append(acc)
        out.append(row)
    return out


def laurent_identity(n):
    one, zero = LaurentPoly.one(), LaurentPoly.zero()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def laurent_det(A) -> LaurentPoly:
    """Determinant by cofactor expansion; fine for the small matrices here."""
    n = len(A)
    if n == 1:
        return A[0][0]
    total = LaurentPoly.zero()
    for j in range(n):
        if A[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in A[1:]]
        term = A[0][j] * laurent_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def int_matrix_det(M) -> int:
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    n = len(M)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def char_poly(M) -> LaurentPoly:
    """Characteristic polynomial det(tI - M) of an integer matrix, exact.

    Computed by evaluating det(xI - M) at dim+1 integer points and Lagrange
    interpolation over Q; the result is integral.
    """
    n = len(M)
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        A = [[(x if i == j else 0) - M[i][j] for j in range(n)] for i in range(n)]
        ys.append(int_matrix_det(A))
    # Lagrange interpolation with exact fractions
    coeffs = [Fraction(0)] * (n + 1)
    for i, xi in enumerate(xs):
        num = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if i == j:
                continue
            # multiply num by (x - xj)
            num = [Fraction(0)] + num
            for k in range(len(num) - 1):
                num[k] -= xj * num[k + 1]
            denom *= xi - xj
        w = Fraction(ys[i]) / denom
        for k in range(len(num)):
            coeffs[k] += w * num[k]
    out = {}
    for k, c in enumerate(coeffs):
        assert c.denominator == 1, "characteristic polynomial must be integral"
        if c != 0:
            out[k] = int(c)
    return LaurentPoly.from_dict(out)


def matrix_power(M, k):
    n = len(M)
    R = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    B = [row[:] for row in M]
    while k:
        if k & 1:
            R = [[sum(R[i][s] * B[s][j] for s in range(n)) for j in range(n)] for i in range(n)]
        B = [[sum(B[i][s] * B[s][j] for s in range(n)) for j in range(n)] for i in range(n)]
        k >>= 1
    return R


def largest_real_root(p: LaurentPoly, lo=Fraction(0), hi=None, tol=Fraction(1, 10**9)):
    """Largest real root of p in (lo, hi] by exact-sign bisection.

    Returns (float approximation, (Fraction lo, Fraction hi)) with the
    bracket certified: p changes sign across it and no root lies above.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    # clear negative exponents
    if p.min_exp < 0:
        p = p.shift(-p.min_exp)
    if hi is None:
        lead = p.coeffs[-1][1]
        bound = 1 + max(abs(c) for _, c in p.coeffs) // abs(lead) + 1
        hi = Fraction(bound)
    # scan down from hi for a sign change on a fine grid, then bisect
    steps = 4096
    prev_x, prev_s = hi, p(hi)
    found = None
    for k in range(1, steps + 1):
        x = hi - (hi - lo) * k / steps
        s = p(x)
        if s == 0:
            found = (x, x)
            break
        if prev_s == 0:
            found = (prev_x, prev_x)
            break
        if (s > 0) != (prev_s > 0):
            found = (x, prev_x)
            break
        prev_x, prev_s = x, s
    if found is None:
        raise ValueError("no real root found in bracket")
    a, b = found
    if a == b:
        return float(a), (a, a)
    while b - a > tol:
        m = (a + b) / 2
        fm = p(m)
        if fm == 0:
            a = b = m
            break
        if (fm > 0) == (p(b) > 0):
            b = m
        else:
            a = m
    return float((a + b) / 2), (a, b)


# -- integer lattice utilities -----------------------------------------------


def kernel_lattice_basis(M):
    """Basis of the integer kernel lattice {x in Z^m : M x = 0}.

    M is an n x m integer matrix; returns a list of length-m integer vectors
    forming a lattice basis (computed by column HNF bookkeeping over Z).
    """
    if not M:
        return []
    n, m = len(M), len(M[0])
    A = [[Fraction(M[i][j]) for j in range(m)] for i in range(n)]
    # track column operations on the identity
    U = [[Fraction(1) if i == j else Fraction(0) for j in range(m)] for i in range(m)]
    row = 0
    col = 0
    pivots = []
    while row < n and col < m:
        piv = None
        for j in range(col, m):
            if A[row][j] != 0:
                piv = j
                break
        if piv is None:
            row += 1
            continue
        for mat in (A, U):
            for i in range(len(mat)):
                mat[i][col], mat[i][piv] = mat[i][piv], mat[i][col]
        for j in range(m):
            if j == col or A[row][j] == 0:
                continue
            f = A[row][j] / A[row][col]
            for i in range(n):
                A[i][j] -= f * A[i][col]
            for i in range(m):
                U[i][j] -= f * U[i][col]
        pivots.append(col)
        row += 1
        col += 1
    kernel_cols = [j for j in range(m) if j not in pivots]
    basis = []
    for j in kernel_cols:
        vec = [U[i][j] for i in range(m)]
        # clear denominators and content
        den = 1
        for v in vec:
            den = den * v.denominator // _gcd(den, v.denominator)
        ints = [int(v * den) for v in vec]
        g = 0
        for v in ints:
            g = _gcd(g, abs(v))
        if g > 1:
            ints = [v // g for v in ints]
        if any(ints):
            basis.append(ints)
    return basis


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def restrict_to_lattice(M, basis):
    """Matrix of x -> M x restricted to the lattice spanned by `basis`.

    Requires M to preserve the rational span; returns the rational matrix A
    with M*basis_j = sum_i A[i][j] basis_i.  Entries are Fractions.
    """
    if not basis:
        return []
    m = len(basis[0])
    k = len(basis)
    images = []
    for v in basis:
        images.append([sum(M[i][j] * v[j] for j in range(m)) for i in range(len(M))])
    # solve basis-matrix * A = images (least structure: exact Gaussian solve)
    B = [[Fraction(basis[j][i]) for j in range(k)] for i in range(m)]
    A = []
    for img in images:
        A.append(_solve_exact(B, [Fraction(x) for x in img]))
    # A currently holds coordinates per image as rows; transpose to matrix
    return [[A[j][i] for j in range(k)] for i in range(k)]


def _solve_exact(B, y):
    """Solve B x = y exactly (B tall with full column rank)."""
    m, k = len(B), len(B[0])
    M = [row[:] + [y[i]] for i, row in enumerate(B)]
    r = 0
    piv_rows = []
    for c in range(k):
        piv = None
        for i in range(r, m):
            if M[i][c] != 0:
                piv = i
                break
        if piv is None:
            raise ValueError("basis matrix not full rank")
        M[r], M[piv] = M[piv], M[r]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c] / M[r][c]
                for j in range(c, k + 1):
                    M[i][j] -= f * M[r][j]
        piv_rows.append((r, c))
        r += 1
    x = [Fraction(0)] * k
    for pr, pc in piv_rows:
        x[pc] = M[pr][k] / M[pr][pc]
    for i in range(r, m):
        if M[i][k] != 0:
            raise ValueError("inconsistent system: image not in lattice span")
    return x
