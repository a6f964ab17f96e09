"""Exhaustive pruned enumeration of carried fixed-point-free map candidates.

The search enumerates decorated image systems on a fixture track, letter by
letter in lockstep across strands, inside the embedded-realization engine
(:mod:`traintracks.weave`).  Pruning rules, each mirroring one of the
classification's arguments:

P1 trace pruning: a marked-monogon edge never appears in its own image;
   the occurrences of the d-type edge in its own image must all have the
   same side-swap prefix parity (even parity when the interior polygons
   are fixed).
P2 rotation cases: interior polygons map to polygons of the same cusp
   count; corners rotate; the identity rotation of a fixed polygon is
   excluded (it forces an edge to start at itself).
P3 germ-order propagation: the weave itself - extensions with no
   cross-section placement are cut.
P4 spiral pruning: a strand repeating any letter class more than
   `spiral_bound` times is wrapping the track and can never close up.
P5 absorption: extensions whose forced placement pinches into a cluster
   with no free stub are cut (inside the weave's placement filter).
P6 must-meet parity: the d-type strand may only terminate on its image
   corner with matching total parity; branches whose two d-ends can no
   longer meet die by P1/P3.

Survivors are verified independently: word-level legality, re-derived
weave feasibility, the trace conditions, a fixed-point-free lift verdict
for one of the two lift choices, a Perron-Frobenius transition matrix, and
a unimodular action on the weight lattice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .maps import (CLIMB, D_BWD, D_FWD, HP_END, HP_MINUS, HP_PLUS,
                   DecoratedPath, Letter, TrackMap, _interior_polygons,
                   check_legal, is_perron_frobenius, weight_space_unimodular)
from .lift import fpf_verdict, trace_lemma_check
from .tracks import Track
from .weave import Builder, Infeasible


@dataclass(frozen=True)
class SearchConfig:
    track_name: str
    max_image_length: int = 16
    spiral_bound: int = 2
    require_pf: bool = True
    require_unimodular: bool = True
    rotation_cases: tuple = ()  # empty: all cases; else case-label prefixes

    def __post_init__(self):
        if self.max_image_length < 1 or self.spiral_bound < 1:
            raise ValueError("bounds must be positive")


@dataclass
class SearchOutcome:
    survivors: list
    pruned_counts: dict
    exhausted: bool
    cases: list = field(default_factory=list)


def get_track(name: str) -> Track:
    from .fixtures import named_tracks

    return named_tracks()[name].track


# -- rotation cases -------------------------------------------------------------


def enumerate_rotations(track: Track):
    """All corner maps of the interior polygons consistent with the trace
    exclusions: polygon bijections preserving cusp counts, nontrivial
    rotations for fixed polygons, all rotations for swapped ones.

    Returns (label, corner_map) pairs.
    """
    polys = _interior_polygons(track)
    names = sorted(polys)
    out = []
    for target in _bijections(names, polys):
        for rots in itertools.product(*[range(len(polys[p])) for p in names]):
            corner_map = {}
            label_parts = []
            ok = True
            for p, rot in zip(names, rots):
                q = target[p]
                if len(polys[p]) != len(polys[q]):
                    ok = False
                    break
                if p == q and rot == 0:
                    ok = False  # identity rotation: P2 exclusion
                    break
                src, tgt = polys[p], polys[q]
                for i, c in enumerate(src):
                    corner_map[c] = tgt[(i + rot) % len(tgt)]
                label_parts.append(f"{p}->{q}+{rot}")
            if ok:
                out.append(("|".join(label_parts), corner_map))
    return out


def _bijections(names, polys):
    by_size = {}
    for n in names:
        by_size.setdefault(len(polys[n]), []).append(n)
    parts = []
    for size, group in sorted(by_size.items()):
        parts.append([dict(zip(group, perm)) for perm in itertools.permutations(group)])
    for combo in itertools.product(*parts):
        d = {}
        for c in combo:
            d.update(c)
        yield d


def camel_case_tag(track: Track, corner_map) -> str:
    """A or BCD:<f(d) start>,<f(d~) start> for the two-triangle tracks."""
    d_edges = [e for e in track.real_edges()
               if not track.edge_ends(e)[0].startswith("M")
               and not track.edge_ends(e)[1].startswith("M")]
    if not d_edges:
        return "-"
    d = d_edges[0]
    s0, s1 = track.edge_ends(d)
    polys = _interior_polygons(track)
    of = {}
    for pid, corners in polys.items():
        for c in corners:
            of[c] = pid
    fixed = of[corner_map[s0]] == of[s0]
    if fixed:
        return "A"

    def germ_letters(switch):
        sw = track.switches[switch]
        reals = [e for (e, _end) in sw.cyclic if track.edges[e].kind == "real" and e != d]
        return "".join(sorted(reals)) or "d"

    return f"BCD:d@{germ_letters(corner_map[s0])},d~@{germ_letters(corner_map[s1])}"


# -- the search -------------------------------------------------------------------


class _Strand:
    __slots__ = ("edge", "letters", "head", "done", "is_d", "mono")

    def __init__(self, edge, is_d, mono):
        self.edge = edge
        self.letters = []
        self.head = None
        self.done = False
        self.is_d = is_d
        self.mono = mono

    def clone(self):
        s = _Strand(self.edge, self.is_d, self.mono)
        s.letters = list(self.letters)
        s.head = self.head
        s.done = self.done
        return s


def run_search(cfg: SearchConfig, collect_rejects: bool = False) -> SearchOutcome:
    track = get_track(cfg.track_name)
    pruned = {"P1-trace": 0, "P1-parity": 0, "P3-weave": 0, "P4-spiral": 0,
              "length": 0, "verdict": 0}
    survivors = []
    rejects = []
    exhausted = True
    cases_run = []
    for label, corner_map in enumerate_rotations(track):
        tag = camel_case_tag(track, corner_map)
        if cfg.rotation_cases and not any(tag.startswith(p) or label.startswith(p) for p in cfg.rotation_cases):
            continue
        cases_run.append((label, tag))
        ex = _search_case(track, corner_map, cfg, pruned, survivors, rejects)
        exhausted = exhausted and ex
    uniq = []
    for m in survivors:
        if m not in uniq:
            uniq.append(m)
    uniq.sort(key=_canonical_map_key)
    out = SearchOutcome(uniq, pruned, exhausted, cases_run)
    if collect_rejects:
        out.rejects = rejects
    return out


def _canonical_map_key(m: TrackMap):
    return tuple(sorted((e, p.token_string()) for e, p in m.images.items()))


def _search_case(track, corner_map, cfg, pruned, survivors, rejects) -> bool:
    """Search one rotation case.

    The tree branches over decorated letters only; each node carries the
    ensemble of all weave embeddings of the current partial images (deduped
    by a canonical state key), so interleaving and placement freedom never
    multiplies the combinatorial tree.  A letter is feasible when some
    ensemble member extends.
    """
    builder = Builder(track, corner_map)
    try:
        w0 = builder.initial()
    except Infeasible:
        return True
    reals = sorted(track.real_edges())
    strands = {}
    for e in reals:
        s0, s1 = track.edge_ends(e)
        is_d = not s0.startswith("M") and not s1.startswith("M")
        mono = s1 if s1.startswith("M") else (s0 if s0.startswith("M") else None)
        strands[e] = _Strand(e, is_d, mono)
    exhausted = [True]

    def ens_key(w, heads):
        parts = tuple((e, tuple(w.edge_order[e])) for e in sorted(w.edge_order))
        return (parts, tuple(sorted(heads.items())))

    def letter_candidates(st):
        if st.done:
            return []
        if len(st.letters) >= cfg.max_image_length:
            pruned["length"] += 1
            exhausted[0] = False
            return []
        cands = []
        seen_edges = set()
        for (e, end) in _entry_germ_universe(track):
            se0, se1 = track.edge_ends(e)
            is_mono_edge = se0.startswith("M") or se1.startswith("M")
            if is_mono_edge:
                if (e, "hp") in seen_edges:
                    continue
                seen_edges.add((e, "hp"))
                if not st.is_d and e == st.edge:
                    pruned["P1-trace"] += 1
                    continue
                cands.append(Letter(e, HP_PLUS))
                cands.append(Letter(e, HP_MINUS))
                if not st.is_d:
                    cands.append(Letter(e, CLIMB))
                else:
                    cands.append(Letter(e, HP_END))
            else:
                kind = D_FWD if end == 0 else D_BWD
                if st.is_d and e == st.edge:
                    par = sum(l.swap_weight() for l in st.letters) % 2
                    want = _required_d_parity(track, corner_map, st)
                    if want is not None and par != want:
                        pruned["P1-parity"] += 1
                        continue
                cands.append(Letter(e, kind))
        filtered = []
        for l in cands:
            cls = (l.edge, l.kind if l.kind in (D_FWD, D_BWD) else "hp")
            reps = sum(1 for x in st.letters
                       if (x.edge, x.kind if x.kind in (D_FWD, D_BWD) else "hp") == cls)
            if reps >= cfg.spiral_bound:
                pruned["P4-spiral"] += 1
                continue
            filtered.append(l)
        return filtered

    def extend_ensemble(ensemble, e, letter):
        """Apply one letter of strand e across the ensemble; dedup."""
        out = []
        seen = set()
        for w, heads in ensemble:
            for w2, head2 in builder.apply_letter(w, heads.get(e), e, letter):
                h2 = dict(heads)
                h2[e] = head2
                k = ens_key(w2, h2)
                if k not in seen:
                    seen.add(k)
                    out.append((w2, h2))
        return out

    def reachable_entries(ensemble, e):
        """Entry germs reachable from the strand's parked position (they are
        the same across the ensemble: the head switch is determined by the
        letter prefix), directly or via one connector."""
        w, heads = ensemble[0]
        head = heads.get(e)
        if head is None:
            here = builder.corner_map[builder._strand_start_corner(e)]
        else:
            here = builder.head_switch(w, head)
        germs = set()
        sw = track.switches[here]
        for (f, end) in sw.cyclic:
            if track.edges[f].kind == "real":
                germs.add((f, end))
            elif f not in track.monogon_marks:
                far = track.germ_switch(f, 1 - end)
                for (g, gend) in track.switches[far].cyclic:
                    if track.edges[g].kind == "real":
                        germs.add((g, gend))
        return germs

    def expand(sts, ensemble):
        live = [e for e in reals if not sts[e].done]
        if not live:
            _finish(track, corner_map, sts, cfg, pruned, survivors, rejects)
            return
        best = None
        for e in live:
            st = sts[e]
            reach = reachable_entries(ensemble, e)
            opts = []
            for letter in letter_candidates(st):
                if builder._letter_entry_germ(letter) not in reach:
                    continue
                ens2 = extend_ensemble(ensemble, e, letter)
                if not ens2:
                    pruned["P3-weave"] += 1
                    continue
                opts.append((letter, ens2))
            if not opts:
                return
            if best is None or len(opts) < len(best[1]):
                best = (e, opts)
                if len(opts) == 1:
                    break
        e, opts = best
        for letter, ens2 in opts:
            sts2 = {k: v.clone() for k, v in sts.items()}
            st2 = sts2[e]
            st2.letters.append(letter)
            if letter.is_terminal():
                st2.done = True
                st2.head = None
            expand(sts2, ens2)

    expand(strands, [(w0, {})])
    return exhausted[0]


def _entry_germ_universe(track):
    """All real germs, deduplicated; reachability is enforced by the weave."""
    out = []
    for e in sorted(track.real_edges()):
        s0, s1 = track.edge_ends(e)
        if s1.startswith("M"):
            out.append((e, 0))
        elif s0.startswith("M"):
            out.append((e, 1))
        else:
            out.append((e, 0))
            out.append((e, 1))
    return out


def _reachable_entry_germs(builder, w, st):
    """Real germs the strand can enter next: direct or via one connector."""
    track = builder.track
    if st.head is None:
        start = builder.corner_map[builder._strand_start_corner(st.edge)]
        here = start
    else:
        here = builder.head_switch(w, st.head)
    out = []
    seenswitch = {here}
    switches = [here]
    sw = track.switches[here]
    for (e, end) in sw.cyclic:
        if track.edges[e].kind == "real":
            out.append((e, end))
        elif e not in track.monogon_marks:
            far = track.germ_switch(e, 1 - end)
            if far not in seenswitch:
                seenswitch.add(far)
                switches.append(far)
    for s2 in switches[1:]:
        for (e, end) in track.switches[s2].cyclic:
            if track.edges[e].kind == "real":
                out.append((e, end))
    # de-duplicate, preserve order
    res = []
    for g in out:
        if g not in res:
            res.append(g)
    return res


def _required_d_parity(track, corner_map, st):
    """Prefix parity every self-occurrence in the d image must carry.

    When the interior polygons are fixed (case A) the lifted trace vanishes
    only with even prefixes; when they are swapped, all occurrences must
    share the parity of the first one."""
    polys = _interior_polygons(track)
    of = {}
    for pid, corners in polys.items():
        for c in corners:
            of[c] = pid
    s0, _s1 = track.edge_ends(st.edge)
    fixed = of[corner_map[s0]] == of[s0]
    if fixed:
        return 0
    for i, l in enumerate(st.letters):
        if l.edge == st.edge:
            return sum(x.swap_weight() for x in st.letters[:i]) % 2
    return None


def _finish(track, corner_map, sts, cfg, pruned, survivors, rejects):
    images = {e: DecoratedPath(e, tuple(st.letters)) for e, st in sts.items()}
    cm = dict(corner_map)
    for e, st in sts.items():
        if st.mono is not None:
            term = images[e].terminal()
            tgt_s0, tgt_s1 = track.edge_ends(term.edge)
            cm[st.mono] = tgt_s1 if tgt_s1.startswith("M") else tgt_s0
    m = TrackMap(track, images, cm)
    if check_legal(m, require_weave=True):
        pruned["verdict"] += 1
        rejects.append((m, "legal"))
        return
    if trace_lemma_check(m):
        pruned["verdict"] += 1
        rejects.append((m, "trace"))
        return
    if not (fpf_verdict(m, delta_twist=False).fpf or fpf_verdict(m, delta_twist=True).fpf):
        pruned["verdict"] += 1
        rejects.append((m, "fpf"))
        return
    if cfg.require_pf:
        M, _ = m.transition_matrix()
        if not is_perron_frobenius(M):
            pruned["verdict"] += 1
            rejects.append((m, "pf"))
            return
    if cfg.require_unimodular and not weight_space_unimodular(m):
        pruned["verdict"] += 1
        rejects.append((m, "unimodular"))
        return
    survivors.append(m)


def match_candidates(outcome: SearchOutcome):
    """Identify survivors with the quoted candidate image sets."""
    from .candidates import candidate_maps

    cands = candidate_maps()
    result = {}
    for m in outcome.survivors:
        found = "unknown"
        for i, cm in cands.items():
            if _canonical_map_key(m) == _canonical_map_key(cm):
                found = f"beta_{i}"
                break
        result[_canonical_map_key(m)] = found
    return result
