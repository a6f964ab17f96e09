"""Exact braid-closure invariants: reduced Burau, Alexander, determinant,
self-linking, the double-cover Alexander polynomial, and the coefficient
conditions used by the elimination arguments.

Burau convention (documented, fixed once): the reduced Burau representation
B_n -> GL_{n-1}(Z[t, t^-1]) sends sigma_i to the identity outside rows and
columns i-1, i, i+1 with the blocks

    sigma_1   -> [[-t, 1], [0, 1]]          (top-left 2x2)
    sigma_i   -> [[1, 0, 0], [t, -t, 1], [0, 0, 1]]   (rows i-1, i, i+1)
    sigma_n-1 -> [[1, 0], [t, -t]]          (bottom-right 2x2)

All fixtures in the tests are re-derived under this convention.
"""

from __future__ import annotations

from .braids import BraidWord, closure_is_knot
from .laurent import (LaurentPoly, char_poly, laurent_det, laurent_identity,
                      laurent_matrix_mul)


class MultiComponentClosure(ValueError):
    """Raised when a knot-only invariant is asked about a link closure."""


def _gen_matrix(n: int, i: int, inverse: bool):
    """Reduced Burau image of sigma_i^{+-1} in GL_{n-1}."""
    t = LaurentPoly.t
    one, zero = LaurentPoly.one(), LaurentPoly.zero()
    M = laurent_identity(n - 1)

    def setb(r, c, p):
        M[r][c] = p

    if not inverse:
        if i > 1:
            setb(i - 2 + 1, i - 2, t(1))  # row i, col i-1
        setb(i - 1, i - 1, t(1, -1))  # -t on the diagonal
        if i < n - 1:
            setb(i - 1, i, one)
    else:
        # inverse blocks: sigma_i^-1 -> [[1,0,0],[1,-t^-1,t^-1],[0,0,1]]
        if i > 1:
            setb(i - 1, i - 2, one)
        setb(i - 1, i - 1, t(-1, -1))  # -t^-1
        if i < n - 1:
            setb(i - 1, i, t(-1))
    return M


def reduced_burau(b: BraidWord):
    """Product of generator matrices; identity word gives the identity."""
    M = laurent_identity(b.n - 1)
    for x in b.letters:
        M = laurent_matrix_mul(M, _gen_matrix(b.n, abs(x), x < 0))
    return M


def burau_det(b: BraidWord) -> LaurentPoly:
    return laurent_det(reduced_burau(b))


def alexander_of_closure(b: BraidWord) -> LaurentPoly:
    """Symmetric-normalized Alexander polynomial of the braid closure.

    Uses det(Burau(b) - I) * (1 - t) / (1 - t^n) and normalizes by a unit
    so that p(t) = p(1/t) with positive leading coefficient.
    """
    if not closure_is_knot(b):
        raise MultiComponentClosure("closure is a multi-component link; knot pipeline refuses")
    n = b.n
    M = reduced_burau(b)
    I = laurent_identity(n - 1)
    D = [[M[i][j] - I[i][j] for j in range(n - 1)] for i in range(n - 1)]
    num = laurent_det(D) * (LaurentPoly.one() - LaurentPoly.t(1))
    den = LaurentPoly.one() - LaurentPoly.t(n)
    p = num.divide_exact(den)
    return p.symmetric_normalized()


def determinant_of_closure(b: BraidWord) -> int:
    """|Delta(-1)| of the closure.

    For knot closures this is the Alexander polynomial at -1.  For
    multi-component closures of odd-strand braids the same number is
    |det(Burau(-1) - I)|, since the unit correction (1-t)/(1-t^n) is 1 at
    t = -1 when n is odd; even-strand link closures are refused.
    """
    if closure_is_knot(b):
        val = alexander_of_closure(b)(-1)
        from fractions import Fraction

        val = Fraction(val)
        assert val.denominator == 1
        return abs(int(val))
    if b.n % 2 == 0:
        raise MultiComponentClosure("even-strand link closure: determinant route unavailable")
    return link_determinant_experimental(b)


def link_determinant_experimental(b: BraidWord) -> int:
    """|det(Burau(b)(-1) - I)| for arbitrary closures of odd-strand braids.

    Experimental outside the knot case; equals |H_1| of the double branched
    cover when that group is finite.
    """
    n = b.n
    M = reduced_burau(b)
    A = [[M[i][j](-1) for j in range(n - 1)] for i in range(n - 1)]
    for i in range(n - 1):
        A[i][i] -= 1
    from .laurent import int_matrix_det

    return abs(int_matrix_det(A))


def self_linking(b: BraidWord) -> int:
    """Self-linking number of the transverse braid closure: writhe - n."""
    return b.exponent_sum - b.n


def double_cover_alexander(b: BraidWord) -> LaurentPoly:
    """Alexander polynomial of the fibered knot lifted to the double cover.

    The lift of the braid axis to the double cover of S^3 branched over the
    closure is fibered with fiber the (n-1)/2-genus surface; its Alexander
    polynomial is the characteristic polynomial of the monodromy action on
    first homology, which is the reduced Burau matrix at t = -1.
    """
    if b.n % 2 == 0:
        raise ValueError("even strand count: double cover fiber has two boundary components")
    M = reduced_burau(b)
    A = [[M[i][j](-1) for j in range(b.n - 1)] for i in range(b.n - 1)]
    return char_poly(A)


def lspace_coefficient_check(p: LaurentPoly) -> bool:
    """Coefficient conditions for the Alexander polynomial of an L-space knot.

    All coefficients in {0, +-1}, nonzero coefficients alternate in sign,
    and the two top-degree coefficients are nonzero.
    """
    if p.is_zero():
        return False
    coeffs = [c for _, c in sorted(p.coeffs)]
    if any(abs(c) > 1 for c in coeffs):
        return False
    nz = [c for c in coeffs if c]
    for u, v in zip(nz, nz[1:]):
        if u * v != -1:
            return False
    exps = [e for e, _ in p.coeffs]
    top = max(exps)
    if p.coefficient(top - 1) == 0:
        return False
    return True


def is_irreducible_quartic(p: LaurentPoly) -> bool:
    """Irreducibility over Q of a degree-4 integer polynomial.

    Checks for rational roots and for factorizations into two integer
    quadratics, by finite search over divisors of the extreme coefficients.
    """
    if p.is_zero() or p.min_exp < 0 or p.max_exp != 4:
        raise ValueError("need an integer polynomial of degree 4")
    c = [p.coefficient(i) for i in range(5)]
    if c[0] == 0:
        return False  # root at 0
    # rational roots p/q: p | c0, q | c4
    for pn in _divisors(abs(c[0])):
        for qn in _divisors(abs(c[4])):
            for num in (pn, -pn):
                from fractions import Fraction

                x = Fraction(num, qn)
                if sum(ci * x**i for i, ci in enumerate(c)) == 0:
                    return False
    # quadratic * quadratic: (a2 x^2 + a1 x + a0)(b2 x^2 + b1 x + b0)
    for a2 in _signed_divisors(c[4]):
        b2 = c[4] // a2 if a2 and c[4] % a2 == 0 else None
        if b2 is None:
            continue
        for a0 in _signed_divisors(c[0]):
            if c[0] % a0 != 0:
                continue
            b0 = c[0] // a0
            # solve a2 b1 + a1 b2 = c3 ; a1 b1 + a0 b2 + a2 b0 = c2 ; a1 b0 + a0 b1 = c1
            bound = abs(c[3]) + abs(c[2]) + abs(c[1]) + abs(c[0]) + abs(c[4]) + 2
            for a1 in range(-bound, bound + 1):
                num = c[3] - a1 * b2
                if a2 == 0 or num % a2 != 0:
                    continue
                b1 = num // a2
                if a1 * b1 + a0 * b2 + a2 * b0 != c[2]:
                    continue
                if a1 * b0 + a0 * b1 != c[1]:
                    continue
                return False
    return True


def _divisors(m: int):
    m = abs(m)
    return [d for d in range(1, m + 1) if m % d == 0] or [1]


def _signed_divisors(m: int):
    out = []
    for d in _divisors(m):
        out.extend((d, -d))
    return out


# External input, not computed here: the maximal self-linking number of the
# (3,5)-torus knot; cited by the elimination pipeline.
MAX_SELF_LINKING_T35 = 7
DET_T35 = 1
