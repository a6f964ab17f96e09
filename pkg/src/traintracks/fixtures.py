"""The named train tracks of the genus-two classification.

All tracks live on the 5-marked disk and are encoded as pure incidence plus
cyclic germ order; the region derivation in :mod:`traintracks.tracks`
certifies each encoding (disk Euler count, one peripheral region, marked
monogons) and pins the stratum.

Conventions for the two search tracks:

* Jellyfish (stratum (1;1^5;4)): real edges r, b, p, g, y, each oriented
  from the interior quadrilateral toward its marked monogon.  g and y are
  tangent at a shared quadrilateral corner; the single peripheral cusp sits
  between them.
* Camel (stratum (1;1^5;3^2)): real edges r, b (left triangle), p, g, y
  (right triangle), all oriented toward their monogons, and d oriented from
  the left triangle to the right.  y and the right end of d are tangent at
  a shared corner of the right triangle, where the peripheral cusp sits.
  Incidence was transcribed from the figures and cross-checked against the
  textual constraints of the case analysis (where each edge image may start,
  which turns are legal); the reflection ambiguity is resolved by fixing
  CamelR to be the track on which the quoted candidate images are legal.

The left-handed partners CamelL/EnokiL are the reflections of the
right-handed tracks, with marked points renumbered accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tracks import INF, REAL, Track


def jellyfish() -> Track:
    edges = {**{e: REAL for e in "rbpgy"}, **{f"l{e}": INF for e in "rbpgy"},
             "srb": INF, "sbp": INF, "spg": INF, "sgr": INF}
    switches = {}
    for i, e in enumerate("rbpgy", start=1):
        switches[f"M{e}"] = ([(f"l{e}", 1), (f"l{e}", 0)], [(e, 1)])
    switches["Cr"] = ([("r", 0)], [("sgr", 1), ("srb", 0)])
    switches["Cb"] = ([("b", 0)], [("srb", 1), ("sbp", 0)])
    switches["Cp"] = ([("p", 0)], [("sbp", 1), ("spg", 0)])
    switches["Cgy"] = ([("y", 0), ("g", 0)], [("spg", 1), ("sgr", 0)])
    marks = {f"l{e}": i for i, e in enumerate("rbpgy", start=1)}
    return Track(5, edges, switches, marks)


def camel_r() -> Track:
    edges = {**{e: REAL for e in "rbpgy"}, "d": REAL,
             **{f"l{e}": INF for e in "rbpgy"},
             "srb": INF, "sbd": INF, "sdr": INF,
             "spg": INF, "sgy": INF, "syp": INF}
    switches = {}
    for i, e in enumerate("rbpgy", start=1):
        switches[f"M{e}"] = ([(f"l{e}", 1), (f"l{e}", 0)], [(e, 1)])
    # left triangle: corners carry r, b, d(start)
    switches["Cr"] = ([("r", 0)], [("sdr", 1), ("srb", 0)])
    switches["Cb"] = ([("b", 0)], [("srb", 1), ("sbd", 0)])
    switches["Cdl"] = ([("d", 0)], [("sbd", 1), ("sdr", 0)])
    # right triangle: corners carry p, g, and the tangent pair (d-end, y)
    switches["Cp"] = ([("p", 0)], [("syp", 1), ("spg", 0)])
    switches["Cg"] = ([("g", 0)], [("spg", 1), ("sgy", 0)])
    switches["Cdy"] = ([("d", 1), ("y", 0)], [("sgy", 1), ("syp", 0)])
    marks = {f"l{e}": i for i, e in enumerate("rbpgy", start=1)}
    return Track(5, edges, switches, marks)


_MIRROR_RENAME_CAMEL = {
    "r": "y", "y": "r", "b": "g", "g": "b", "p": "p",
    "lr": "ly", "ly": "lr", "lb": "lg", "lg": "lb", "lp": "lp",
    "srb": "sgy*", "sgy": "srb*", "sbd": "spg*", "spg": "sbd*",
    "sdr": "syp*", "syp": "sdr*",
}


def camel_l() -> Track:
    """Reflection of CamelR; carries the reverses of the CamelR maps."""
    ren_edges = dict(_MIRROR_RENAME_CAMEL)
    ren_switches = {"Cr": "Cy*", "Cb": "Cg*", "Cdl": "Cdr*", "Cp": "Cp*",
                    "Cg": "Cb*", "Cdy": "Cdr2*", "Mr": "My", "My": "Mr",
                    "Mb": "Mg", "Mg": "Mb", "Mp": "Mp"}
    return camel_r().mirrored(ren_edges, ren_switches)


def enoki_r() -> Track:
    """The right Enoki track: the other jointless pair in (1;1^5;3^2).

    Differs from the Camel in which real edge shares the tangent corner
    with the d-type edge: here g and the d-end are tangent, and y hangs
    from its own corner.  Encoded for the automaton's node set; no search
    runs on it.
    """
    edges = {**{e: REAL for e in "rbpgy"}, "d": REAL,
             **{f"l{e}": INF for e in "rbpgy"},
             "srb": INF, "sbd": INF, "sdr": INF,
             "spg": INF, "sgy": INF, "syp": INF}
    switches = {}
    for i, e in enumerate("rbpgy", start=1):
        switches[f"M{e}"] = ([(f"l{e}", 1), (f"l{e}", 0)], [(e, 1)])
    switches["Cr"] = ([("r", 0)], [("sdr", 1), ("srb", 0)])
    switches["Cb"] = ([("b", 0)], [("srb", 1), ("sbd", 0)])
    switches["Cdl"] = ([("d", 0)], [("sbd", 1), ("sdr", 0)])
    # right polygon: p alone, then the tangent pair (d-end, g), then y
    switches["Cp"] = ([("p", 0)], [("syp", 1), ("spg", 0)])
    switches["Cdg"] = ([("d", 1), ("g", 0)], [("spg", 1), ("sgy", 0)])
    switches["Cy"] = ([("y", 0)], [("sgy", 1), ("syp", 0)])
    marks = {f"l{e}": i for i, e in enumerate("rbpgy", start=1)}
    return Track(5, edges, switches, marks)


def enoki_l() -> Track:
    ren_edges = dict(_MIRROR_RENAME_CAMEL)
    ren_switches = {"Cr": "Cy*", "Cb": "Cg*", "Cdl": "Cdr*", "Cp": "Cp*",
                    "Cdg": "Cdb*", "Cy": "Cr*", "Mr": "My", "My": "Mr",
                    "Mb": "Mg", "Mg": "Mb", "Mp": "Mp"}
    return enoki_r().mirrored(ren_edges, ren_switches)


def rotation_toy() -> Track:
    """A 3-marked track whose peripheral region has three cusps.

    Three marked monogons joined in a cycle by real edges; the outer region
    has one cusp at each monogon switch.  Used to exercise the fractional
    boundary rotation (a cyclic map rotates the peripheral cusps by 1/3).
    Not jointless (each monogon switch meets two real edges), which is fine:
    the stratum has no interior singularity.
    """
    edges = {"e1": REAL, "e2": REAL, "e3": REAL, "l1": INF, "l2": INF, "l3": INF}
    switches = {
        # loops point inward (marked points inside the e-cycle's far side);
        # the outer face picks up one cusp per switch between the e-germs
        "M1": ([("l1", 1), ("l1", 0)], [("e3", 1), ("e1", 0)]),
        "M2": ([("l2", 1), ("l2", 0)], [("e1", 1), ("e2", 0)]),
        "M3": ([("l3", 1), ("l3", 0)], [("e2", 1), ("e3", 0)]),
    }
    marks = {"l1": 1, "l2": 2, "l3": 3}
    return Track(3, edges, switches, marks, peripheral_edges=("e1", "e2", "e3"))


@dataclass(frozen=True)
class NamedTrack:
    name: str
    track: Track

    @property
    def real_edge_labels(self):
        return tuple(sorted(self.track.real_edges()))


def named_tracks():
    return {
        "Jellyfish": NamedTrack("Jellyfish", jellyfish()),
        "CamelR": NamedTrack("CamelR", camel_r()),
        "CamelL": NamedTrack("CamelL", camel_l()),
        "EnokiR": NamedTrack("EnokiR", enoki_r()),
        "EnokiL": NamedTrack("EnokiL", enoki_l()),
    }
