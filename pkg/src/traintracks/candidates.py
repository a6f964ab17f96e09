"""The three candidate track maps on the Camel track, and their braids.

These are the image sets quoted in the classification's final case
analysis; all three share f(d) and f(p).  The braids inducing them (up to
full twists) are beta_1, beta_2, beta_3 from :mod:`traintracks.braids`.
"""

from __future__ import annotations

from .braids import beta_1, beta_2, beta_3
from .fixtures import camel_r
from .maps import CLIMB, D_BWD, D_FWD, HP_END, HP_MINUS, HP_PLUS, DecoratedPath, Letter, TrackMap

# Case A corner rotations for all three candidates
CASE_A_CORNERS = {
    "Cr": "Cb", "Cb": "Cdl", "Cdl": "Cr",
    "Cp": "Cdy", "Cg": "Cp", "Cdy": "Cg",
}


def _path(src, *letters):
    return DecoratedPath(src, tuple(Letter(e, k) for e, k in letters))


_SHARED = {
    "d": _path("d", ("r", HP_MINUS), ("b", HP_MINUS), ("d", D_FWD), ("p", HP_MINUS), ("g", HP_END)),
    "p": _path("p", ("y", CLIMB)),
}


def _mono_corners(images):
    out = {}
    for e, path in images.items():
        if e == "d":
            continue
        out[f"M{e}"] = f"M{path.letters[-1].edge}"
    return out


def _candidate(images):
    track = camel_r()
    corner = dict(CASE_A_CORNERS)
    corner.update(_mono_corners(images))
    return TrackMap(track, images, corner)


def candidate_map_1() -> TrackMap:
    images = {
        **_SHARED,
        "r": _path("r", ("b", CLIMB)),
        "b": _path("b", ("d", D_FWD), ("p", CLIMB)),
        "g": _path("g", ("p", HP_PLUS), ("d", D_BWD), ("b", HP_PLUS), ("r", CLIMB)),
        "y": _path("y", ("g", CLIMB)),
    }
    return _candidate(images)


def candidate_map_2() -> TrackMap:
    images = {
        **_SHARED,
        "r": _path("r", ("b", CLIMB)),
        "b": _path("b", ("d", D_FWD), ("p", HP_MINUS), ("g", CLIMB)),
        "g": _path("g", ("p", CLIMB)),
        "y": _path("y", ("g", HP_PLUS), ("p", HP_PLUS), ("d", D_BWD), ("b", HP_PLUS), ("r", CLIMB)),
    }
    return _candidate(images)


def candidate_map_3() -> TrackMap:
    images = {
        **_SHARED,
        "r": _path("r", ("b", HP_MINUS), ("d", D_FWD), ("p", HP_MINUS), ("g", CLIMB)),
        "b": _path("b", ("d", D_FWD), ("p", CLIMB)),
        "g": _path("g", ("p", HP_PLUS), ("d", D_BWD), ("b", CLIMB)),
        "y": _path("y", ("g", HP_PLUS), ("p", HP_PLUS), ("d", D_BWD), ("b", HP_PLUS), ("r", CLIMB)),
    }
    return _candidate(images)


def candidate_maps():
    return {1: candidate_map_1(), 2: candidate_map_2(), 3: candidate_map_3()}


def candidate_braids():
    return {1: beta_1(), 2: beta_2(), 3: beta_3()}
