"""Fractional Dehn twist coefficient calculus.

Exact rational arithmetic: c = n + m/k where n counts boundary twists and
m/k is the rotation the geometric representative induces on the k
cyclically-ordered boundary prongs.  Composition with boundary twists obeys
c(D^n h^k) = n + k c(h); the double-cover correspondence relates the braid
and surface coefficients by c(braid) = 2 c(lift).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .maps import TrackMap

# Fractional parts of the base pseudo-Anosov braids carried by the fixture
# tracks (integer parts normalized to 0; all downstream values are produced
# by composition with full twists).
BETA_N_FRACTIONAL_PART = Fraction(1, 2)  # the T(2,n+7) family
CANDIDATE_FRACTIONAL_PART = Fraction(0)  # the three Camel candidates


@dataclass(frozen=True)
class Fdtc:
    value: Fraction

    @staticmethod
    def of(p, q=1) -> "Fdtc":
        return Fdtc(Fraction(p, q))

    def __str__(self):
        v = self.value
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)


def boundary_rotation(m: TrackMap) -> Fraction:
    """Fractional part m/k read from the action on the peripheral cusps.

    The peripheral cusps sit at switches of the track; the map sends the
    cusp at switch s to the cusp at the image switch.  The induced
    permutation must be a rotation of the cyclic cusp order.
    """
    track = m.track
    periph = [r for r in track.regions() if r.peripheral]
    if len(periph) != 1:
        raise ValueError("track must have a unique peripheral region")
    cusp_switches = [c[0] for c in periph[0].corners if c[3]]
    k = len(cusp_switches)
    if k == 0:
        raise ValueError("peripheral region has no cusps")
    if k == 1:
        return Fraction(0)
    idx = {s: i for i, s in enumerate(cusp_switches)}
    shifts = set()
    for i, s in enumerate(cusp_switches):
        t = m.corner_map.get(s)
        if t is None or t not in idx:
            raise ValueError(f"peripheral cusp at {s} has no image cusp")
        shifts.add((idx[t] - i) % k)
    if len(shifts) != 1:
        raise ValueError("peripheral cusps are not cyclically rotated")
    return Fraction(shifts.pop(), k)


def fdtc_compose(base: Fdtc, boundary_twists: int, power: int = 1) -> Fdtc:
    """c(D^n h^k) = n + k c(h)."""
    return Fdtc(boundary_twists + power * base.value)


def cover_relation_braid_to_surface(c_braid: Fdtc) -> Fdtc:
    """c(lift) = c(braid) / 2."""
    return Fdtc(c_braid.value / 2)


def cover_relation_surface_to_braid(c_surface: Fdtc) -> Fdtc:
    return Fdtc(c_surface.value * 2)


def lspace_admissible(c_braid: Fdtc, bound: Fraction = Fraction(2)):
    """(bound satisfied, nonzero hypothesis satisfied).

    An L-space constrains the lifted coefficient to |c| < 1, which is
    |c(braid)| < 2; the fixed-point-free theorem additionally assumes the
    coefficient is nonzero.
    """
    within = abs(c_braid.value) < bound
    nonzero = c_braid.value != 0
    return within, nonzero
