"""Elimination of candidate monodromy quotients for the Poincare sphere.

Given the finite candidate braid lists produced by the fixed-point-free
classification together with the twist-coefficient bounds, check that none
closes up to the (3,5)-torus knot.  Filters, cheapest first: self-linking
against the maximal self-linking number of T(3,5); determinant against
det T(3,5) = 1; the Alexander polynomial itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .braids import (BraidWord, alpha_braid, beta_1, beta_2, beta_3, beta_n,
                     closure_is_knot, full_twist, parse_braid)
from .fdtc import (BETA_N_FRACTIONAL_PART, CANDIDATE_FRACTIONAL_PART, Fdtc,
                   fdtc_compose, lspace_admissible)
from .invariants import (DET_T35, MAX_SELF_LINKING_T35, MultiComponentClosure,
                         alexander_of_closure, determinant_of_closure,
                         self_linking)
from .laurent import LaurentPoly

T35_ALEXANDER = LaurentPoly.from_dict(
    {4: 1, 3: -1, 1: 1, 0: -1, -1: 1, -3: -1, -4: 1}
)  # symmetric form of t^8 - t^7 + t^5 - t^4 + t^3 - t + 1


@dataclass(frozen=True)
class Verdict:
    name: str
    braid: BraidWord
    eliminated_by: str  # determinant | self_linking | alexander | none
    detail: dict

    @property
    def eliminated(self) -> bool:
        return self.eliminated_by != "none"


def eliminate_T35(b: BraidWord, name: str = "") -> Verdict:
    """First successful filter ruling out closure = T(3,5)."""
    detail = {}
    sl = self_linking(b)
    detail["self_linking"] = sl
    hit = None
    if sl > MAX_SELF_LINKING_T35:
        hit = "self_linking"
    det = determinant_of_closure(b)
    detail["determinant"] = det
    if hit is None and det != DET_T35:
        hit = "determinant"
    if hit is None:
        if not closure_is_knot(b):
            hit = "determinant"  # links are not T(3,5); det path already used
        else:
            alex = alexander_of_closure(b)
            detail["alexander"] = alex.pretty()
            if alex != T35_ALEXANDER:
                hit = "alexander"
    return Verdict(name, b, hit or "none", detail)


def _admissible_twists(fractional: Fraction, k_range) -> list:
    """Full-twist powers k whose composed coefficient passes both filters."""
    out = []
    for k in k_range:
        for sign in (1, -1):
            c = fdtc_compose(Fdtc(sign * fractional), k)
            within, nonzero = lspace_admissible(c)
            if within and nonzero:
                out.append((k, sign, c))
    return out


def suite_2_34() -> list:
    """Candidates D^{2k} beta_i^{+-1}: the coefficient is k, so the nonzero
    bound keeps k = +-1; mirrors of the k = -1 braids are the k = +1 ones,
    and the paper's own check list (k in {0,1}) is also run for the record.
    """
    out = []
    ft = full_twist(5)
    betas = {"beta1": beta_1(), "beta2": beta_2(), "beta3": beta_3()}
    for name, b in betas.items():
        for k in (0, 1):
            for eps, suffix in ((1, ""), (-1, "^-1")):
                braid = (ft**k) * (b if eps == 1 else b.inverse())
                out.append(eliminate_T35(braid, f"D^{2*k} {name}{suffix}"))
    return out


def suite_2_34_admissible() -> list:
    """Only the candidates surviving the twist-coefficient filter
    (nonzero and within the bound): k = +-1."""
    out = []
    ft = full_twist(5)
    betas = {"beta1": beta_1(), "beta2": beta_2(), "beta3": beta_3()}
    for name, b in betas.items():
        for k, sign, _c in _admissible_twists(CANDIDATE_FRACTIONAL_PART, (-1, 0, 1)):
            braid = (ft**k) * (b if sign == 1 else b.inverse())
            out.append(eliminate_T35(braid, f"D^{2*k} {name}{'^-1' if sign < 0 else ''}"))
    return out


def suite_433(n_range=range(0, 11)) -> list:
    """The T(2,n+7) family: candidates beta_n^{+-1}, D^{+-2} beta_n^{-+1},
    D^{+-2} beta_n^{+-1}, D^{+-4} beta_n^{-+1}; all eight variants checked."""
    out = []
    ft = full_twist(5)
    for n in n_range:
        b = beta_n(n)
        fam = {
            f"beta_{n}": b,
            f"beta_{n}^-1": b.inverse(),
            f"D^2 beta_{n}": ft * b,
            f"D^2 beta_{n}^-1": ft * b.inverse(),
            f"D^-2 beta_{n}": (ft**-1) * b,
            f"D^-2 beta_{n}^-1": (ft**-1) * b.inverse(),
            f"D^4 beta_{n}^-1": (ft**2) * b.inverse(),
            f"D^-4 beta_{n}": (ft**-2) * b,
        }
        for name, braid in fam.items():
            out.append(eliminate_T35(braid, name))
    return out


def suite_6() -> list:
    """The minimal-dilatation family: alpha, D^2 alpha^-1, D^2 alpha,
    D^4 alpha^-1 (closure of alpha is T(2,3))."""
    a = alpha_braid()
    ft = full_twist(5)
    fam = {
        "alpha": a,
        "D^2 alpha^-1": ft * a.inverse(),
        "D^2 alpha": ft * a,
        "D^4 alpha^-1": (ft**2) * a.inverse(),
    }
    return [eliminate_T35(b, name) for name, b in fam.items()]


def run_theorem_suite(name: str) -> list:
    if name == "2-34":
        return suite_2_34()
    if name == "433":
        return suite_433()
    if name == "6":
        return suite_6()
    raise ValueError(f"unknown suite {name!r}; options: 433, 6, 2-34")


def report_lines(verdicts) -> list:
    lines = []
    width = max(len(v.name) for v in verdicts) + 2
    for v in verdicts:
        vals = ", ".join(f"{k}={val}" for k, val in v.detail.items())
        lines.append(f"{v.name:<{width}} {v.eliminated_by:<13} {vals}")
    return lines
