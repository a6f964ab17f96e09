"""Train track maps as decorated edge-image assignments.

A decorated path follows the papers' shorthand: a non-terminal letter over
a monogon edge means the doubled traversal (out and back around the marked
monogon, a "hairpin"), decorated +/- with the side it passes on; a d-type
letter is a single traversal of an edge joining two interior polygons, in
the forward (d) or reversed (d~) direction; the final letter is a terminal:
a single climb ending at the image monogon for monogon-edge images, or a
terminal hairpin landing at the image corner for d-type images (printed
"x o" either way).

The transition matrix counts passes over real edges: doubled letters count
2, d-type letters 1, terminal climbs 1, terminal hairpins 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .laurent import (char_poly, int_matrix_det, kernel_lattice_basis,
                      largest_real_root, matrix_power, restrict_to_lattice)
from .tracks import INF, REAL, Track

HP_PLUS = "+"
HP_MINUS = "-"
D_FWD = "d>"
D_BWD = "d<"
CLIMB = "o"
HP_END = "o2"

_HAIRPINS = (HP_PLUS, HP_MINUS)
_TERMINALS = (CLIMB, HP_END)


@dataclass(frozen=True)
class Letter:
    edge: str
    kind: str

    def count(self) -> int:
        if self.kind in _HAIRPINS or self.kind == HP_END:
            return 2
        return 1

    def swap_weight(self) -> int:
        """Side-swaps: hairpins pass the marked-monogon loop once."""
        return 1 if self.kind in _HAIRPINS or self.kind == HP_END else 0

    def is_terminal(self) -> bool:
        return self.kind in _TERMINALS

    def token(self) -> str:
        if self.kind == HP_PLUS:
            return f"{self.edge}+"
        if self.kind == HP_MINUS:
            return f"{self.edge}-"
        if self.kind == D_FWD:
            return self.edge
        if self.kind == D_BWD:
            return f"{self.edge}~"
        return f"{self.edge} o"


@dataclass(frozen=True)
class DecoratedPath:
    """The image of one real edge."""

    source: str
    letters: tuple

    def __post_init__(self):
        if not self.letters:
            raise ValueError("empty image path")
        for i, l in enumerate(self.letters):
            if l.is_terminal() != (i == len(self.letters) - 1):
                raise ValueError("exactly one terminal letter, at the end")

    def occurrences(self, edge):
        return [i for i, l in enumerate(self.letters) if l.edge == edge]

    def prefix_swaps(self, idx) -> int:
        return sum(l.swap_weight() for l in self.letters[:idx])

    def total_swaps(self) -> int:
        return sum(l.swap_weight() for l in self.letters)

    def terminal(self) -> Letter:
        return self.letters[-1]

    def token_string(self) -> str:
        return " ".join(l.token() for l in self.letters)

    def __str__(self):
        return f"{self.source} -> {self.token_string()}"


def parse_path(text: str, d_edges=("d",)) -> DecoratedPath:
    """Parse 'r -> b+ r+ d p- g o' style lines (round-trips with printing)."""
    src, _, rest = text.partition("->")
    src = src.strip()
    toks = rest.split()
    letters = []
    i = 0
    while i < len(toks):
        t = toks[i]
        if i + 1 < len(toks) and toks[i + 1] == "o":
            kind = HP_END if src in d_edges else CLIMB
            letters.append(Letter(t, kind))
            i += 2
            continue
        if t.endswith("+"):
            letters.append(Letter(t[:-1], HP_PLUS))
        elif t.endswith("~"):
            letters.append(Letter(t[:-1], D_BWD))
        elif t.endswith("-"):
            letters.append(Letter(t[:-1], HP_MINUS))
        else:
            letters.append(Letter(t, D_FWD))
        i += 1
    return DecoratedPath(src, tuple(letters))


class TrackMap:
    """A train track map: decorated images of real edges plus the induced
    data on the infinitesimal structure (corner map and monogon bijection).
    """

    def __init__(self, track: Track, images: dict, corner_map: dict):
        self.track = track
        self.images = dict(images)
        self.corner_map = dict(corner_map)

    def __eq__(self, other):
        return (
            isinstance(other, TrackMap)
            and self.images == other.images
            and self.corner_map == other.corner_map
        )

    def __hash__(self):
        return hash((tuple(sorted((k, v.letters) for k, v in self.images.items())),
                     tuple(sorted(self.corner_map.items()))))

    # -- derived structure -------------------------------------------------

    def d_edges(self):
        """Real edges joining two interior polygons (both ends non-monogon)."""
        out = []
        for e in self.track.real_edges():
            s0, s1 = self.track.edge_ends(e)
            if not s0.startswith("M") and not s1.startswith("M"):
                out.append(e)
        return out

    def monogon_edge_end(self, e):
        """(polygon end switch, monogon end switch) for a monogon edge."""
        s0, s1 = self.track.edge_ends(e)
        if s1.startswith("M"):
            return s0, s1
        return s1, s0

    def monogon_permutation(self):
        """Marked-point bijection read from the terminal letters."""
        perm = {}
        for e, path in self.images.items():
            s0, s1 = self.track.edge_ends(e)
            if s1.startswith("M") or s0.startswith("M"):
                src_m = s1 if s1.startswith("M") else s0
                t = path.terminal()
                if t.kind != CLIMB:
                    return None
                tgt_poly, tgt_m = self.monogon_edge_end(t.edge)
                perm[src_m] = tgt_m
        return perm

    def transition_matrix(self, order=None):
        order = order or sorted(self.track.real_edges())
        idx = {e: i for i, e in enumerate(order)}
        M = [[0] * len(order) for _ in order]
        for e, path in self.images.items():
            for l in path.letters:
                M[idx[e]][idx[l.edge]] += l.count()
        return M, order

    # -- Cayley-style composition -------------------------------------------

    def compose(self, inner: "TrackMap") -> "TrackMap":
        """self o inner: apply `inner` first; images of `inner` rewritten
        through `self`.  Decorations of rewritten hairpins follow the inner
        chirality on the reversed half."""
        images = {}
        for e, path in inner.images.items():
            out = []
            for l in path.letters:
                img = self.images[l.edge]
                if l.kind in _HAIRPINS:
                    # f(x xbar) = f(x) . reverse(f(x)); the terminal climb of
                    # f(x) becomes a hairpin at the turn
                    body = list(img.letters[:-1])
                    term = img.terminal()
                    turn = Letter(term.edge, HP_PLUS if l.kind == HP_PLUS else HP_MINUS)
                    out.extend(body)
                    out.append(turn)
                    out.extend(_reversed_letters(body))
                elif l.kind == D_FWD:
                    out.extend(img.letters[:-1])
                    out.append(_determinalize(img.terminal()))
                elif l.kind == D_BWD:
                    rev = _reversed_letters(list(img.letters[:-1]))
                    out.append(_determinalize(img.terminal()))
                    out.extend(rev)
                elif l.kind == CLIMB:
                    out.extend(img.letters)
                elif l.kind == HP_END:
                    out.extend(img.letters[:-1])
                    out.append(img.terminal())
            # collapse the d-terminal bookkeeping: the rewriting above keeps
            # letters well-formed only when the terminal stays last
            images[e] = DecoratedPath(e, tuple(out))
        corner = {s: self.corner_map[t] for s, t in inner.corner_map.items()}
        return TrackMap(self.track, images, corner)


def _reversed_letters(body):
    out = []
    for l in reversed(body):
        if l.kind == HP_PLUS:
            out.append(Letter(l.edge, HP_MINUS))
        elif l.kind == HP_MINUS:
            out.append(Letter(l.edge, HP_PLUS))
        elif l.kind == D_FWD:
            out.append(Letter(l.edge, D_BWD))
        elif l.kind == D_BWD:
            out.append(Letter(l.edge, D_FWD))
        else:
            out.append(l)
    return out


def _determinalize(term: Letter) -> Letter:
    """A terminal letter crossed mid-path during composition."""
    if term.kind == CLIMB:
        # the climb continues through the monogon: becomes a hairpin
        return Letter(term.edge, HP_PLUS)
    return Letter(term.edge, HP_PLUS)


# -- word-level legality -------------------------------------------------------


def raw_connector(track: Track, from_germ, to_germ):
    """The unique infinitesimal connector path between two real germs.

    `from_germ` is the germ just traversed into its switch; `to_germ` the
    real germ out of which the path must continue.  Returns a list of
    (edge, direction) infinitesimal steps, or None when illegal.
    """
    frm_edge, frm_end = from_germ
    start_sw = track.germ_switch(frm_edge, frm_end)
    target_edge, target_end = to_germ
    target_sw = track.germ_switch(target_edge, target_end)
    # step through at most 2 infinitesimal edges (fixture connectors are
    # single sides; monogon loops connect a germ to its own switch)
    frontier = [((frm_edge, frm_end), start_sw, [])]
    results = []
    seen = set()
    while frontier:
        germ, sw, path = frontier.pop()
        exits = track.other_side_germs(sw, germ)
        for out in exits:
            if out == to_germ and sw == target_sw:
                results.append(path)
                continue
            oe, oend = out
            if track.edges[oe].kind != INF or len(path) >= 3:
                continue
            far_end = 1 - oend
            nsw = track.germ_switch(oe, far_end)
            step = (oe, 0 if oend == 0 else 1)
            key = (out, tuple(path))
            if key in seen:
                continue
            seen.add(key)
            frontier.append(((oe, far_end), nsw, path + [step]))
    if not results:
        return None
    results.sort(key=len)
    return results[0]


def letters_legal(track: Track, path: DecoratedPath) -> bool:
    """Consecutive letters must be joined by an infinitesimal connector."""
    seq = _germ_sequence(track, path)
    return seq is not None


def _letter_germs(track: Track, source: str, letter: Letter):
    """(entry germ, exit germ) of the letter's real passes.

    Entry germ: the germ by which the letter's first real pass leaves its
    polygon switch; exit germ: the germ by which the strand re-enters the
    polygon world after the letter (None for terminals).
    """
    e = letter.edge
    s0, s1 = track.edge_ends(e)
    if letter.kind in _HAIRPINS or letter.kind == HP_END:
        poly = s0 if s1.startswith("M") else s1
        end = 0 if s1.startswith("M") else 1
        # up from the polygon end and back down to it
        return (e, end), (e, end)
    if letter.kind == CLIMB:
        end = 0 if s1.startswith("M") else 1
        return (e, end), None
    if letter.kind == D_FWD:
        return (e, 0), (e, 1)
    return (e, 1), (e, 0)


def _germ_sequence(track, path):
    """Connector steps between consecutive letters; None when illegal."""
    connectors = []
    prev_exit = None
    for l in path.letters:
        entry, exit_ = _letter_germs(track, path.source, l)
        if prev_exit is not None:
            # after finishing the previous letter we sit at the switch of
            # prev_exit having just traversed into it; we must reach `entry`
            conn = raw_connector(track, prev_exit, entry)
            if conn is None:
                return None
            connectors.append(conn)
        else:
            connectors.append([])
        prev_exit = exit_
    return connectors


def check_legal(m: TrackMap, require_weave: bool = True):
    """Violations of train-path legality and structural constraints."""
    issues = []
    track = m.track
    reals = set(track.real_edges())
    if set(m.images) != reals:
        issues.append("images must cover exactly the real edges")
        return issues
    for e, path in m.images.items():
        if path.source != e:
            issues.append(f"path for {e} labeled {path.source}")
        for l in path.letters:
            if l.edge not in reals:
                issues.append(f"image of {e} uses unknown edge {l.edge}")
                return issues
        if not letters_legal(track, path):
            issues.append(f"image of {e} is not a legal train path: {path}")
        for a, b in zip(path.letters, path.letters[1:]):
            if a.edge == b.edge and a.edge not in m.d_edges():
                issues.append(f"image of {e} repeats letter {a.edge} consecutively")
    d_edges = set(m.d_edges())
    for e, path in m.images.items():
        is_d = e in d_edges
        if is_d and path.terminal().kind != HP_END:
            issues.append(f"d-type image of {e} must end with a terminal hairpin")
        if not is_d and path.terminal().kind != CLIMB:
            issues.append(f"image of {e} must end with a terminal climb")
        for l in path.letters:
            if (l.kind in (D_FWD, D_BWD)) != (l.edge in d_edges):
                issues.append(f"letter {l.token()} in image of {e} has wrong kind")
    # monogon bijection
    perm = m.monogon_permutation()
    if perm is None:
        issues.append("terminal letters malformed")
    else:
        if len(set(perm.values())) != len(perm):
            issues.append(f"terminal letters do not induce a monogon bijection: {perm}")
    # corner map must restrict to structure-preserving maps of polygons
    issues.extend(_polygon_consistency(m))
    # surjectivity
    hit = {l.edge for p in m.images.values() for l in p.letters}
    if hit != reals:
        issues.append(f"not surjective: misses {sorted(reals - hit)}")
    if not issues and require_weave:
        from .weave import weave_feasible

        ok, reason = weave_feasible(m)
        if not ok:
            issues.append(f"no embedded realization: {reason}")
    return issues


def _polygon_consistency(m: TrackMap):
    """Interior polygons map to same-cusp polygons; corners rotate; path
    endpoints match the corner map."""
    issues = []
    track = m.track
    polys = _interior_polygons(track)
    corner_of = {}
    for pid, corners in polys.items():
        for c in corners:
            corner_of[c] = pid
    for pid, corners in polys.items():
        imgs = [m.corner_map.get(c) for c in corners]
        if None in imgs:
            issues.append(f"corner map misses corners of polygon {pid}")
            continue
        tgt = {corner_of.get(c) for c in imgs}
        if len(tgt) != 1 or None in tgt:
            issues.append(f"polygon {pid} does not map onto a single polygon")
            continue
        tpoly = tgt.pop()
        tcorners = polys[tpoly]
        if len(tcorners) != len(corners):
            issues.append(f"polygon {pid} maps to polygon with different cusp count")
            continue
        # cyclic-order preservation
        k = len(corners)
        src_idx = {c: i for i, c in enumerate(corners)}
        t_idx = {c: i for i, c in enumerate(tcorners)}
        shifts = {(t_idx[m.corner_map[c]] - src_idx[c]) % k for c in corners}
        if len(shifts) != 1:
            issues.append(f"corners of polygon {pid} do not rotate coherently")
    # path endpoints: start at corner_map[start switch]
    for e, path in m.images.items():
        s0, s1 = track.edge_ends(e)
        for end_idx, s in ((0, s0), (1, s1)):
            if s.startswith("M"):
                continue
            img = m.corner_map.get(s)
            if img is None:
                issues.append(f"corner map misses {s}")
                continue
            # the relevant extreme letter of the path
            letter = path.letters[0] if end_idx == 0 else path.terminal()
            target = _letter_anchor_switch(track, letter, end_idx)
            if target is not None and img not in target:
                issues.append(
                    f"image of {e} anchors at {sorted(target)} but corner map sends {s} to {img}"
                )
    for e, path in m.images.items():
        s0, s1 = track.edge_ends(e)
        mono = s1 if s1.startswith("M") else (s0 if s0.startswith("M") else None)
        if mono is not None:
            t = path.terminal()
            tgt_poly, tgt_m = m.monogon_edge_end(t.edge)
            want = m.corner_map.get(mono)
            if want is not None and want != tgt_m:
                issues.append(f"terminal of {e} lands at {tgt_m}, corner map says {want}")
    return issues


def _letter_anchor_switch(track, letter, end_idx):
    """Switches at which the path's extreme letter anchors (its polygon end)."""
    e = letter.edge
    s0, s1 = track.edge_ends(e)
    if letter.kind in (HP_PLUS, HP_MINUS, CLIMB, HP_END):
        poly = s0 if s1.startswith("M") else s1
        if letter.kind == CLIMB and end_idx == 1:
            return None  # terminal climbs anchor at the monogon, checked separately
        return {poly}
    if letter.kind == D_FWD:
        return {s0 if end_idx == 0 else s1}
    return {s1 if end_idx == 0 else s0}


def _interior_polygons(track: Track):
    """Non-monogon infinitesimal polygons as ordered corner lists."""
    out = {}
    for r in track.regions():
        if r.peripheral or r.marked_point is not None:
            continue
        if not r.is_infinitesimal_polygon(track):
            continue
        corners = tuple(c[0] for c in r.corners)
        out[f"poly:{min(corners)}"] = corners
    return out


def monogon_switches(track: Track):
    return [s for s in track.switches if s.startswith("M")]


# -- spectral machinery --------------------------------------------------------


def is_perron_frobenius(M) -> bool:
    """Primitivity: some power up to the Wielandt bound is positive."""
    n = len(M)
    if n == 0:
        return False
    bound = (n - 1) ** 2 + 1
    B = [[1 if v else 0 for v in row] for row in M]
    P = B
    for _ in range(bound):
        if all(all(v for v in row) for row in P):
            return True
        P = [[min(1, sum(P[i][k] * B[k][j] for k in range(n))) for j in range(n)] for i in range(n)]
    return all(all(v for v in row) for row in P)


def dilatation(M):
    """Spectral radius of a Perron-Frobenius matrix with a certified
    bisection enclosure of width <= 1e-9."""
    if not is_perron_frobenius(M):
        raise ValueError("matrix is not Perron-Frobenius")
    p = char_poly(M)
    value, bracket = largest_real_root(p, lo=Fraction(1, 2))
    return value, bracket


def full_transition_matrix(m: TrackMap, order=None):
    """Transition counts over all edges (real and infinitesimal).

    Raw passes: hairpins contribute 2 to their edge and 1 to the monogon
    loop; climbs 1; d-letters 1; terminal hairpins 2 plus the loop; and the
    infinitesimal connectors between consecutive letters contribute 1 per
    side edge crossed.  Infinitesimal edges map by the induced polygon data:
    loops to loops via the monogon bijection, sides to sides via the corner
    map.
    """
    track = m.track
    order = order or (sorted(track.real_edges()) + sorted(track.inf_edges()))
    idx = {e: i for i, e in enumerate(order)}
    M = [[0] * len(order) for _ in order]
    loop_of = {}
    for loop in track.monogon_marks:
        sw = track.germ_switch(loop, 0)
        loop_of[sw] = loop
    for e, path in m.images.items():
        row = M[idx[e]]
        for l in path.letters:
            row[idx[l.edge]] += l.count()
            if l.kind in _HAIRPINS or l.kind == HP_END:
                poly, mono = m.monogon_edge_end(l.edge)
                row[idx[loop_of[mono]]] += 1
        for conn in _germ_sequence(track, path) or []:
            for ce, _cd in conn:
                row[idx[ce]] += 1
    # infinitesimal images
    side_img = induced_side_map(m)
    for s, t in side_img.items():
        M[idx[s]][idx[t]] += 1
    perm = m.monogon_permutation() or {}
    for src_m, tgt_m in perm.items():
        M[idx[loop_of[src_m]]][idx[loop_of[tgt_m]]] += 1
    return M, order


def induced_side_map(m: TrackMap):
    """Images of the interior polygons' side edges under the corner map."""
    track = m.track
    out = {}
    for e in track.inf_edges():
        if e in track.monogon_marks:
            continue
        s0, s1 = track.edge_ends(e)
        t0, t1 = m.corner_map.get(s0), m.corner_map.get(s1)
        if t0 is None or t1 is None:
            continue
        # the image side joins the image corners
        for f in track.inf_edges():
            if f in track.monogon_marks:
                continue
            if set(track.edge_ends(f)) == {t0, t1}:
                out[e] = f
                break
    return out


def switch_condition_matrix(track: Track, order):
    """Rows: switches; entries: side A multiplicity minus side B."""
    idx = {e: i for i, e in enumerate(order)}
    rows = []
    for sw in track.switches.values():
        row = [0] * len(order)
        for e, _end in sw.side_a:
            row[idx[e]] += 1
        for e, _end in sw.side_b:
            row[idx[e]] -= 1
        rows.append(row)
    return rows


def weight_space_unimodular(m: TrackMap) -> bool:
    """The transition action restricted to the switch-condition lattice is
    invertible over the integers (necessary for a carried homeomorphism)."""
    M, order = full_transition_matrix(m)
    track = m.track
    S = switch_condition_matrix(track, order)
    basis = kernel_lattice_basis(S)
    if not basis:
        raise ValueError("degenerate weight space")
    # measures push forward by the transpose of the pass-count matrix
    n = len(order)
    MT = [[M[j][i] for j in range(n)] for i in range(n)]
    A = restrict_to_lattice(MT, basis)
    det = _fraction_det(A)
    return abs(det) == 1


def _fraction_det(A):
    n = len(A)
    a = [row[:] for row in A]
    det = Fraction(1)
    for k in range(n):
        piv = None
        for r in range(k, n):
            if a[r][k] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for r in range(k + 1, n):
            f = a[r][k] / a[k][k]
            for c in range(k, n):
                a[r][c] -= f * a[k][c]
    return det
