"""Braid words on the n-marked disk, with exact group operations.

A braid word is a sequence of signed generator indices: ``i`` stands for
sigma_i (1 <= i <= n-1) and ``-i`` for its inverse.  Words are stored as
typed, but free reduction is applied lazily: equality tests and anything
that cares about the group element reduce first.

Two independent oracles are provided for the word problem:

* the Artin action on the free group F_n (faithful on B_n), used by
  :func:`artin_equal`;
* the Dynnikov-style lamination action from :mod:`traintracks.laminations`,
  used by :func:`braids_equal` (exponent sum pins the central power, the
  action pins the element mod center on the test family).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


def free_reduce(letters):
    """Cancel adjacent (i, -i) pairs until none remain."""
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group B_n on the n-marked disk."""

    n: int
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.n < 2:
            raise ValueError("need at least 2 strands")
        for x in self.letters:
            if not isinstance(x, int) or x == 0 or abs(x) > self.n - 1:
                raise ValueError(f"invalid generator index {x!r} for n={self.n}")

    # -- basic group structure -------------------------------------------

    def reduced(self) -> "BraidWord":
        return BraidWord(self.n, free_reduce(self.letters))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise ValueError("strand count mismatch")
        return BraidWord(self.n, free_reduce(self.letters + other.letters))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple(-x for x in reversed(self.letters)))

    def __pow__(self, k: int) -> "BraidWord":
        if k < 0:
            return self.inverse() ** (-k)
        out = BraidWord(self.n)
        for _ in range(k):
            out = out * self
        return out

    def conjugate_by(self, w: "BraidWord") -> "BraidWord":
        """w * self * w^-1."""
        return w * self * w.inverse()

    @property
    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def __len__(self):
        return len(self.letters)

    # -- permutation image ------------------------------------------------

    def strand_permutation(self) -> "StrandPermutation":
        """Image in the symmetric group; sigma_i maps to (i, i+1).

        The word acts left-to-right: the first letter is applied first.
        """
        perm = list(range(1, self.n + 1))
        for x in self.letters:
            i = abs(x)
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return StrandPermutation(tuple(perm))

    def __str__(self):
        return " ".join(str(x) for x in self.letters) if self.letters else "<id>"


@dataclass(frozen=True)
class StrandPermutation:
    """Permutation of {1..n}, stored as the tuple of images of 1..n."""

    perm: tuple

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ValueError("not a bijection")

    def __call__(self, i: int) -> int:
        return self.perm[i - 1]

    @property
    def n(self):
        return len(self.perm)

    def cycles(self):
        seen, out = set(), []
        for s in range(1, self.n + 1):
            if s in seen:
                continue
            cyc, x = [], s
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def is_single_cycle(self) -> bool:
        return len(self.cycles()) == 1

    def is_identity(self) -> bool:
        return all(self(i) == i for i in range(1, self.n + 1))


def sigma(n: int, i: int) -> BraidWord:
    return BraidWord(n, (i,))


def identity(n: int) -> BraidWord:
    return BraidWord(n)


def full_twist(n: int) -> BraidWord:
    """Delta^2 = (sigma_1 ... sigma_{n-1})^n, the full twist about the boundary."""
    block = tuple(range(1, n))
    return BraidWord(n, block * n)


def closure_component_count(b: BraidWord) -> int:
    return len(b.strand_permutation().cycles())


def closure_is_knot(b: BraidWord) -> bool:
    return b.strand_permutation().is_single_cycle()


# -- the Artin action on the free group --------------------------------------
#
# F_n is free on x_1..x_n (loops about the marked points).  sigma_i acts by
#   x_i -> x_i x_{i+1} x_i^-1,   x_{i+1} -> x_i,
# and sigma_i^-1 by
#   x_i -> x_{i+1},   x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}.
# Words in F_n are tuples of nonzero ints (j for x_j, -j for x_j^-1).


def _apply_artin_letter(word, x):
    i = abs(x)
    out = []
    if x > 0:
        for g in word:
            j = abs(g)
            if j == i:
                seg = (i, i + 1, -i) if g > 0 else (i, -(i + 1), -i)
                out.extend(seg)
            elif j == i + 1:
                out.append(i if g > 0 else -i)
            else:
                out.append(g)
    else:
        for g in word:
            j = abs(g)
            if j == i:
                out.append(i + 1 if g > 0 else -(i + 1))
            elif j == i + 1:
                seg = (-(i + 1), i, i + 1) if g > 0 else (-(i + 1), -i, i + 1)
                out.extend(seg)
            else:
                out.append(g)
    return free_reduce(out)


def artin_image(b: BraidWord, word) -> tuple:
    """Image of a free-group word under the braid's Artin automorphism."""
    w = free_reduce(tuple(word))
    for x in b.letters:
        w = _apply_artin_letter(w, x)
    return w


def artin_equal(a: BraidWord, b: BraidWord) -> bool:
    """Exact word-problem solution: the Artin representation is faithful."""
    if a.n != b.n:
        raise ValueError("strand count mismatch")
    d = a * b.inverse()
    return all(artin_image(d, (j,)) == (j,) for j in range(1, a.n + 1))


def cyclic_reduce(word):
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def conjugacy_class_fixed(b: BraidWord, word) -> bool:
    """True iff the Artin image of `word` is conjugate to `word` or its inverse.

    An unoriented simple closed curve is isotopy-invariant under the braid
    exactly when its free homotopy class (up to inversion) is fixed.
    """
    w = cyclic_reduce(word)
    img = cyclic_reduce(artin_image(b, word))
    targets = {w}
    rev = cyclic_reduce(tuple(-x for x in reversed(w)))
    targets.add(rev)
    if len(img) != len(w):
        return False
    for t in targets:
        if len(t) != len(img):
            continue
        for k in range(max(1, len(img))):
            if img[k:] + img[:k] == t:
                return True
        if img == t:
            return True
    return False


# -- parsing -----------------------------------------------------------------


def parse_braid(text: str, n: int) -> BraidWord:
    """Parse the braid word text format.

    Whitespace-separated signed integers; the token ``D2`` expands to the
    full twist (sigma_1...sigma_{n-1})^n; a parenthesized group followed by
    ``^k`` repeats the group k times (k may be negative).
    """
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    letters, stack = [], []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok == "(":
            stack.append(letters)
            letters = []
        elif tok == ")":
            group = letters
            letters = stack.pop()
            power = 1
            if i + 1 < len(tokens) and tokens[i + 1].startswith("^"):
                power = int(tokens[i + 1][1:])
                i += 1
            if power < 0:
                group = [-x for x in reversed(group)]
                power = -power
            letters.extend(group * power)
        elif tok == "D2":
            letters.extend(full_twist(n).letters)
        elif tok.startswith("^"):
            raise ValueError(f"misplaced power token at {tok!r}")
        else:
            try:
                x = int(tok)
            except ValueError as exc:
                raise ValueError(f"bad token {tok!r} in braid word") from exc
            if x == 0 or abs(x) > n - 1:
                raise ValueError(f"generator index {x} out of range for n={n}")
            letters.append(x)
        i += 1
    if stack:
        raise ValueError("unbalanced parentheses in braid word")
    return BraidWord(n, tuple(letters))


# -- named braids of the genus-two classification ----------------------------


def beta_1() -> BraidWord:
    """(sigma_4 sigma_3)^2 (sigma_2 sigma_1)^-2 on 5 strands."""
    return parse_braid("( 4 3 ) ^2 ( 2 1 ) ^-2", 5)


def beta_2() -> BraidWord:
    """sigma_1^-3 sigma_2^-1 sigma_3^-1 sigma_2 (sigma_3 sigma_4)^2."""
    return parse_braid("-1 -1 -1 -2 -3 2 ( 3 4 ) ^2", 5)


def beta_3() -> BraidWord:
    """(sigma_4 sigma_3 sigma_1^-1 sigma_2^-1)^2."""
    return parse_braid("( 4 3 -1 -2 ) ^2", 5)


def beta_n(n: int) -> BraidWord:
    """sigma_1^{n+2} sigma_2 sigma_3 sigma_4 sigma_1 sigma_2 sigma_3 sigma_4^2.

    Closure is the torus knot T(2, n+7).
    """
    return BraidWord(5, (1,) * (n + 2) + (2, 3, 4, 1, 2, 3, 4, 4))


def alpha_braid() -> BraidWord:
    """sigma_1 sigma_2 sigma_3 sigma_4 sigma_1 sigma_2; closure T(2,3)."""
    return BraidWord(5, (1, 2, 3, 4, 1, 2))


def beta_ab(a: int, b: int) -> BraidWord:
    """sigma_4^a sigma_3 sigma_2 sigma_1^-b sigma_2^-1 sigma_3^-1 (reducible)."""
    return BraidWord(5, (4,) * a + (3, 2) + (-1,) * b + (-2, -3))
