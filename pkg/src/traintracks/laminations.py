"""Integral laminations of the n-marked disk in Dynnikov-style coordinates.

Convention (documented; the underlying papers use no lamination machinery,
so the choice is ours): a lamination is exposed as the vector
(a_1, b_1, ..., a_{n-2}, b_{n-2}) of 2n-4 integers, one (a, b) pair per
inner marked point.  The generator action is the standard piecewise-linear
(max-plus) Dynnikov update; the exact sign scheme was pinned by exhaustive
calibration against the braid-group relations and invertibility (the
calibration search is kept below as `calibrate_scheme`, and the test suite
revalidates the pinned scheme together with the known dilatation of the
simplest pseudo-Anosov 3-braid).

Implementation detail: the action is computed on a phantom-padded disk (two
extra marked points on each side) so every generator update is "interior".
The pair data of the *end* marked points of the real disk lives in the two
seam pairs of the padded vector, so a `DynnikovCoords` keeps the full
padded state internally and exposes the standard middle coordinates.
Laminations built by the constructors here (round curves, braid images of
round curves, the seeded test family) carry exact seam data; a raw
coordinate vector is adopted with zero seams, which is a valid lamination
and is what the documented convention means by its coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .braids import BraidWord

_PAD = 2  # phantom marked points added on each side


def _pos(x):
    return x if x > 0 else 0


def _neg(x):
    return x if x < 0 else 0


def _part(x, s):
    return _pos(x) if s > 0 else _neg(x)


# Update scheme pinned by calibrate_scheme(): the unique sign assignment in
# the searched family satisfying invertibility, the braid relation, and far
# commutation on thousands of random vectors.
_SCHEME = (1, 1, -1, -1, -1, -1, 1, 1, 1, 1)


def _apply_interior(aL, bL, aR, bR, scheme=_SCHEME):
    e1, s1, e2, s2, f1, g1, t1, f2, g2, t2 = scheme
    c = aL - aR + e1 * _part(bR, s1) + e2 * _part(bL, s2)
    naL = aL + _pos(bL) + _pos(_pos(bR) + f1 * c)
    nbL = bR + g1 * _part(c, t1)
    naR = aR + _neg(bR) + _neg(_neg(bL) + f2 * c)
    nbR = bL + g2 * _part(c, t2)
    return naL, nbL, naR, nbR


def _apply_letter(a, b, x, scheme=_SCHEME):
    """One signed generator on padded coordinate arrays, in place."""
    i = abs(x)  # generator index in the padded group; interior by padding
    L, R = i - 2, i - 1  # 0-based pair indices touched
    if x > 0:
        a[L], b[L], a[R], b[R] = _apply_interior(a[L], b[L], a[R], b[R], scheme)
    else:
        # sigma_i^{-1} = (negate all a) . sigma_i . (negate all a)
        naL, nbL, naR, nbR = _apply_interior(-a[L], b[L], -a[R], b[R], scheme)
        a[L], b[L], a[R], b[R] = -naL, nbL, -naR, nbR


@dataclass(frozen=True)
class DynnikovCoords:
    """Coordinate vector of an integral lamination on the n-marked disk."""

    n: int
    coords: tuple  # (a_1, b_1, ..., a_{n-2}, b_{n-2}): pairs of inner points
    seams: tuple = (0, 0, 0, 0)  # (aL, bL, aR, bR): pairs of the end points

    def __post_init__(self):
        if len(self.coords) != 2 * self.n - 4:
            raise ValueError("coordinate vector must have length 2n-4")
        object.__setattr__(self, "coords", tuple(int(v) for v in self.coords))
        object.__setattr__(self, "seams", tuple(int(v) for v in self.seams))

    def is_valid(self) -> bool:
        """The zero vector (boundary-parallel class) is not a lamination."""
        return any(self.coords) or any(self.seams)

    def max_norm(self) -> int:
        vals = [abs(v) for v in self.coords] + [abs(v) for v in self.seams]
        return max(vals, default=0)

    def a(self, i: int) -> int:
        return self.coords[2 * (i - 1)]

    def b(self, i: int) -> int:
        return self.coords[2 * (i - 1) + 1]

    def same_lamination(self, other: "DynnikovCoords") -> bool:
        return self.n == other.n and self.coords == other.coords and self.seams == other.seams

    def _padded(self):
        """Full padded arrays (a, b), one pair per inner point of D_{n+4}."""
        N = self.n + 2 * _PAD
        a = [0] * (N - 2)
        b = [0] * (N - 2)
        a[_PAD - 1], b[_PAD - 1] = self.seams[0], self.seams[1]
        a[_PAD + self.n - 2], b[_PAD + self.n - 2] = self.seams[2], self.seams[3]
        for i in range(self.n - 2):
            a[_PAD + i] = self.coords[2 * i]
            b[_PAD + i] = self.coords[2 * i + 1]
        return a, b

    @staticmethod
    def _from_padded(n, a, b) -> "DynnikovCoords":
        for i in range(len(a)):
            if i < _PAD - 1 or i > _PAD + n - 2:
                if a[i] or b[i]:
                    raise AssertionError("lamination leaked onto phantom strands")
        coords = []
        for i in range(n - 2):
            coords.extend((a[_PAD + i], b[_PAD + i]))
        seams = (a[_PAD - 1], b[_PAD - 1], a[_PAD + n - 2], b[_PAD + n - 2])
        return DynnikovCoords(n, tuple(coords), seams)


def dynnikov_apply(braid: BraidWord, x: DynnikovCoords) -> DynnikovCoords:
    """Image of the lamination under the braid, applied letter by letter."""
    if braid.n != x.n:
        raise ValueError("strand count mismatch")
    if not x.is_valid():
        raise ValueError("the zero vector is not a valid lamination")
    a, b = x._padded()
    for letter in braid.letters:
        shifted = letter + _PAD if letter > 0 else letter - _PAD
        _apply_letter(a, b, shifted)
    return DynnikovCoords._from_padded(x.n, a, b)


def round_curve(n: int, k: int, l: int) -> DynnikovCoords:
    """The convex curve enclosing the consecutive marked points k..l.

    Under our convention every round curve has a = 0 at each pair; its b
    entries are -1 at the pair of the first enclosed point p_k and +1 at
    the pair of the last enclosed point p_l (entries falling on the end
    points go into the seam data).  Validated in the test suite by the
    invariance signature of each curve under the generators.
    """
    if not (1 <= k < l <= n):
        raise ValueError("need 1 <= k < l <= n")
    if k == 1 and l == n:
        raise ValueError("boundary-parallel curve has zero coordinates")
    coords = [0] * (2 * n - 4)
    seams = [0, 0, 0, 0]

    def set_b(point, val):
        if point == 1:
            seams[1] = val
        elif point == n:
            seams[3] = val
        else:
            coords[2 * (point - 2) + 1] = val

    set_b(k, -1)
    set_b(l, 1)
    return DynnikovCoords(n, tuple(coords), tuple(seams))


def test_lamination_family(n: int, extra: int = 32, seed: int = 7):
    """Deterministic core plus seeded braid-images of round curves.

    The deterministic part is the n-1 round curves about consecutive pairs
    and the nested curves about initial segments; the randomized
    reinforcement applies seeded random braid words to round curves, so
    every member is an honest lamination of the marked disk.
    """
    import random

    fam = []
    for k in range(1, n):
        fam.append(round_curve(n, k, k + 1))
    for l in range(2, n):
        fam.append(round_curve(n, 1, l))
    rng = random.Random(seed)
    base = list(fam)
    while len(fam) < len(base) + extra:
        w = BraidWord(n, tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(8)))
        fam.append(dynnikov_apply(w, rng.choice(base)))
    return fam


def braids_equal(x: BraidWord, y: BraidWord, extra: int = 32, seed: int = 7) -> bool:
    """Equality in B_n: equal exponent sums and trivial action on the family.

    The exponent sum pins the central power (the full twist has exponent sum
    n(n-1) != 0); trivial action on the configured lamination family
    certifies triviality modulo the center.  The family test is a strong
    heuristic, not a proof; `braids.artin_equal` is the exact reference
    oracle and the suite cross-checks the two.
    """
    if x.n != y.n:
        raise ValueError("strand count mismatch")
    if x.exponent_sum != y.exponent_sum:
        return False
    d = (x * y.inverse()).reduced()
    if not d.letters:
        return True
    return all(dynnikov_apply(d, lam).same_lamination(lam) for lam in test_lamination_family(x.n, extra, seed))


def fixes_lamination(b: BraidWord, lam: DynnikovCoords) -> bool:
    return dynnikov_apply(b, lam).same_lamination(lam)


def dilatation_estimate(braid: BraidWord, iters: int = 60, seed=None) -> float:
    """Geometric growth rate of lamination coordinates under iteration.

    Exact big-integer iteration; the rate is read from the max-norm over a
    trailing window.  Returns 1.0 when no exponential growth is detected
    (periodic or reducible behaviour along the seed lamination).
    """
    if iters < 1:
        raise ValueError("iters must be >= 1")
    lam = seed if seed is not None else round_curve(braid.n, 1, 2)
    norms = [lam.max_norm()]
    for _ in range(iters):
        lam = dynnikov_apply(braid, lam)
        norms.append(lam.max_norm())
    if norms[-1] <= max(1, norms[0]):
        return 1.0
    w = max(1, iters // 3)
    lo, hi = norms[-1 - w], norms[-1]
    if lo == 0:
        return 1.0
    return (hi / lo) ** (1.0 / w)


# -- calibration of the update scheme -----------------------------------------


def _scheme_ok(scheme, rng) -> bool:
    """Braid relations, commutation, and invertibility on random vectors."""

    def rand_vec(m):
        return [rng.randint(-6, 6) for _ in range(m)]

    N = 8
    for _ in range(40):
        a0, b0 = rand_vec(N - 2), rand_vec(N - 2)
        for i in (3, 4, 5):
            a, b = a0[:], b0[:]
            _apply_letter(a, b, i, scheme)
            _apply_letter(a, b, -i, scheme)
            if (a, b) != (a0, b0):
                return False
            a, b = a0[:], b0[:]
            _apply_letter(a, b, -i, scheme)
            _apply_letter(a, b, i, scheme)
            if (a, b) != (a0, b0):
                return False
        for i in (3, 4):
            left, right = (a0[:], b0[:]), (a0[:], b0[:])
            for x in (i, i + 1, i):
                _apply_letter(*left, x, scheme)
            for x in (i + 1, i, i + 1):
                _apply_letter(*right, x, scheme)
            if left != right:
                return False
        left, right = (a0[:], b0[:]), (a0[:], b0[:])
        for x in (3, 5):
            _apply_letter(*left, x, scheme)
        for x in (5, 3):
            _apply_letter(*right, x, scheme)
        if left != right:
            return False
    a, b = [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0]
    a2, b2 = a[:], b[:]
    _apply_letter(a2, b2, 3, scheme)
    if (a2, b2) == (a, b):
        return False
    return True


def calibrate_scheme(verbose: bool = False):
    """Exhaustive search over the sign-scheme space; returns passing schemes."""
    import itertools
    import random

    rng = random.Random(2024)
    good = []
    for scheme in itertools.product((1, -1), repeat=10):
        if _scheme_ok(scheme, rng):
            good.append(scheme)
            if verbose:
                print("scheme ok:", scheme)
    return good
