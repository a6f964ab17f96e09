"""Embedded realization of train track map images ("the weave").

A map carried by a homeomorphism sends the track to an embedded copy of
itself inside the fibered neighborhood, transverse to the leaves.  The
image is a system of strands: one per real edge (its decorated image path
including the infinitesimal connector steps between letters), together
with the image polygons ("islands": images of the infinitesimal edges,
joined at image corners, the "clusters").  Transversality confines strands
to the strips, so embeddability is purely combinatorial:

* each edge of the track carries a linear cross-section order of the
  passes running along it;
* at each switch the incident readings merge into one trunk order read
  consistently from both sides (transits never cross);
* strand ends attach to cluster stubs whose local cyclic order is the
  orientation-preserving transport of the source switch's germ order.

The `Builder` drives strands letter by letter, branching over cross-order
placements and rejecting extensions with no consistent placement; it is
both the search engine's core and, by replaying complete maps, the
standalone `weave_feasible` verdict.

Convention notes, derived from the oriented-disk picture and pinned by the
candidate fixtures: germ readings reverse at end 0 on side A and at end 1
on side B; side B's trunk reading opposes side A's; a cluster's ambient
cyclic order is its side-A run followed by its reversed side-B run.
"""

from __future__ import annotations

from dataclasses import dataclass

from .maps import (CLIMB, D_BWD, D_FWD, HP_END, HP_MINUS, HP_PLUS, Letter,
                   TrackMap, _interior_polygons)
from .tracks import INF, Track

# chirality convention: a '+' hairpin exits the monogon switch along this
# end of the loop edge (pinned by the quoted candidate images)
PLUS_EXIT_END = 1


class Infeasible(Exception):
    pass


@dataclass(frozen=True)
class Pass:
    pid: int
    edge: str


class Weave:
    """Cross-section orders, transit points, and clusters."""

    def __init__(self, track: Track):
        self.track = track
        self.passes = {}
        self.edge_order = {e: () for e in track.edges}
        self.points = {}  # static: id -> (kind, switch, payload)
        self.end_point = {}
        self.cluster_at = {}
        self.cluster_free = {}  # (cid, role) -> count of free stubs
        self.cluster_bound = {}  # cid -> tuple of (role, end) in stub order
        self.next_id = 0

    def clone(self) -> "Weave":
        w = Weave.__new__(Weave)
        w.track = self.track
        w.passes = dict(self.passes)
        w.edge_order = dict(self.edge_order)
        w.points = dict(self.points)
        w.end_point = dict(self.end_point)
        w.cluster_at = dict(self.cluster_at)
        w.cluster_free = dict(self.cluster_free)
        w.cluster_bound = dict(self.cluster_bound)
        w.next_id = self.next_id
        return w

    def _nid(self):
        self.next_id += 1
        return self.next_id

    def add_pass(self, edge, position) -> int:
        pid = self._nid()
        self.passes[pid] = Pass(pid, edge)
        cur = self.edge_order[edge]
        self.edge_order[edge] = cur[:position] + (pid,) + cur[position:]
        return pid

    def new_cluster(self, switch, stubs) -> str:
        """stubs: ordered list of (role, source_side, bound-or-None).

        Each stub emanates on a definite side of the ambient trunk: the
        orientation-preserving transport sends the source switch's sides to
        the ambient sides coherently, so the bit is read off from the
        already-bound stubs and enforced on later bindings (a strand cannot
        turn back across the trunk at its own corner).
        """
        if switch in self.cluster_at:
            raise Infeasible(f"switch {switch} already hosts a cluster")
        cid = f"c{self._nid()}"
        sw = self.track.switches[switch]
        bit = None
        for _role, src_side, b in stubs:
            if b is None:
                continue
            pid, ge = b
            amb = sw.side_of((self.passes[pid].edge, ge))
            want = src_side ^ (bit if bit is not None else 0)
            if bit is None:
                bit = src_side ^ amb
            elif src_side ^ bit != amb:
                raise Infeasible("island stubs straddle the trunk inconsistently")
        if bit is None:
            bit = 0
        self.points[cid] = ("cluster", switch, tuple(r for r, _s, _b in stubs))
        self.cluster_at[switch] = cid
        bound = []
        for role, src_side, b in stubs:
            if b is not None:
                self.end_point[b] = cid
                bound.append((role, b))
            else:
                self.cluster_free[(cid, role)] = self.cluster_free.get((cid, role), 0) + 1
                self.cluster_free[(cid, role, "side")] = src_side ^ bit
        self.cluster_bound[cid] = tuple(bound)
        return cid

    def new_through(self, switch, end_a, end_b) -> str:
        ga = (self.passes[end_a[0]].edge, end_a[1])
        gb = (self.passes[end_b[0]].edge, end_b[1])
        sw = self.track.switches[switch]
        if sw.side_of(ga) == sw.side_of(gb):
            raise Infeasible("illegal tangential turn")
        cid = f"t{self._nid()}"
        self.points[cid] = ("through", switch, (end_a, end_b))
        self.end_point[end_a] = cid
        self.end_point[end_b] = cid
        return cid

    def bind_stub(self, cid, role, end):
        free = self.cluster_free.get((cid, role), 0)
        if free <= 0:
            raise Infeasible(f"no free stub {role}")
        switch = self.points[cid][1]
        want_side = self.cluster_free.get((cid, role, "side"))
        if want_side is not None:
            germ = (self.passes[end[0]].edge, end[1])
            if self.track.switches[switch].side_of(germ) != want_side:
                raise Infeasible("stub exits on the wrong side of the trunk")
        self.cluster_free[(cid, role)] = free - 1
        self.cluster_bound[cid] = self.cluster_bound[cid] + ((role, end),)
        self.end_point[end] = cid

    # -- consistency ------------------------------------------------------

    def _germ_reading(self, edge, germ_end, side_idx):
        # edge_order is "left of travel from end 0"; at the departing end the
        # side reading runs against it, at the arriving end with it
        lst = self.edge_order[edge]
        return reversed(lst) if germ_end == 0 else lst

    def _side_seq(self, switch, side_idx):
        sw = self.track.switches[switch]
        germs = sw.side_a if side_idx == 0 else sw.side_b
        seq = []
        for (e, end) in germs:
            for pid in self._germ_reading(e, end, side_idx):
                pt = self.end_point.get((pid, end))
                seq.append(pt if pt is not None else ("head", pid, end))
        return seq

    @staticmethod
    def _collapse(seq):
        out = []
        for item in seq:
            if out and out[-1] == item:
                continue
            out.append(item)
        seen = set()
        for item in out:
            if not isinstance(item, tuple):
                if item in seen:
                    return None
                seen.add(item)
        return out

    def check_switch(self, switch) -> bool:
        A = self._collapse(self._side_seq(switch, 0))
        B = self._collapse(self._side_seq(switch, 1))
        if A is None or B is None:
            return False
        B = list(reversed(B))
        pa = [x for x in A if not isinstance(x, tuple)]
        pb = [x for x in B if not isinstance(x, tuple)]
        shared = set(pa) & set(pb)
        if [x for x in pa if x in shared] != [x for x in pb if x in shared]:
            return False
        for cid in set(pa) | set(pb):
            if self.points[cid][0] == "cluster" and not self._cluster_order_ok(cid):
                return False
        return True

    def _cluster_order_ok(self, cid) -> bool:
        _kind, switch, roles = self.points[cid]
        sw = self.track.switches[switch]
        runs = []
        for side_idx in (0, 1):
            germs = sw.side_a if side_idx == 0 else sw.side_b
            for (e, end) in germs:
                for pid in self._germ_reading(e, end, side_idx):
                    if self.end_point.get((pid, end)) == cid:
                        runs.append((pid, end))
        # side-A readings run along the trunk one way, side-B the other;
        # around the point the two concatenate counterclockwise directly
        ambient = runs
        bound = dict()
        for role, end in self.cluster_bound[cid]:
            bound.setdefault(role, []).append(end)
        want = []
        for role in roles:
            ends = bound.get(role)
            if ends:
                want.append(ends.pop(0))
        if len(ambient) != len(want):
            return False
        k = len(want)
        if k <= 1:
            return True
        for shift in range(k):
            if all(want[(shift + i) % k] == ambient[i] for i in range(k)):
                return True
        return False

    def check_switches(self, names) -> bool:
        return all(self.check_switch(s) for s in names)

    def check_all(self) -> bool:
        return self.check_switches(self.track.switches)


# -- strand driving ------------------------------------------------------------


class Builder:
    """Drives the image strand system of a candidate track map."""

    def __init__(self, track: Track, corner_map: dict):
        self.track = track
        self.corner_map = dict(corner_map)
        self.polys = _interior_polygons(track)
        self.loop_of = {track.germ_switch(l, 0): l for l in track.monogon_marks}

    # .. initial island layout ..............................................

    def initial(self) -> Weave:
        w = Weave(self.track)
        side_img = {}
        for e in self.track.inf_edges():
            if e in self.track.monogon_marks:
                continue
            s0, s1 = self.track.edge_ends(e)
            t0, t1 = self.corner_map[s0], self.corner_map[s1]
            img = None
            for f in self.track.inf_edges():
                if f in self.track.monogon_marks:
                    continue
                if set(self.track.edge_ends(f)) == {t0, t1}:
                    img = f
                    break
            if img is None:
                raise Infeasible("corner map does not send sides to sides")
            side_img[e] = img
        passes = {}
        for e, f in side_img.items():
            passes[e] = w.add_pass(f, len(w.edge_order[f]))
        for _pid_poly, corners in self.polys.items():
            for c in corners:
                sw = self.track.switches[c]
                stubs = []
                for (e, end) in sw.cyclic:
                    src_side = sw.side_of((e, end))
                    if self.track.edges[e].kind == INF:
                        img_edge = side_img[e]
                        tgt = self.corner_map[c]
                        ends = self.track.edge_ends(img_edge)
                        img_end = 0 if ends[0] == tgt else 1
                        stubs.append((("side", e, end), src_side, (passes[e], img_end)))
                    else:
                        role = ("start", e) if end == 0 else ("end", e)
                        stubs.append((role, src_side, None))
                w.new_cluster(self.corner_map[c], stubs)
        if not w.check_all():
            raise Infeasible("island layout inconsistent")
        return w

    # .. micro steps .........................................................

    def _place_pass(self, w, edge, end, near):
        """All consistent placements of a new pass on `edge` whose end at
        `end` binds per `near`: ("through", head) joins a parked strand end,
        ("stub", cid, role) consumes a cluster stub.  The far end dangles.

        Feasibility is decided on simulated side sequences (no cloning);
        only surviving positions are materialized.
        """
        switch = self.track.germ_switch(edge, end)
        far_switch = self.track.germ_switch(edge, 1 - end)
        if near[0] == "through":
            head = near[1]
            ghead = (w.passes[head[0]].edge, head[1])
            sw = self.track.switches[switch]
            if sw.side_of(ghead) == sw.side_of((edge, end)):
                return []  # tangential turn
            token = "NEW!"
            subst = {("head",) + head: token}
        else:
            cid = near[1]
            if w.cluster_free.get((cid, near[2]), 0) <= 0:
                return []
            if w.points[cid][1] != switch:
                return []
            token = cid
            subst = {}
        npos = len(w.edge_order[edge]) + 1
        ok_positions = []
        for pos in range(npos):
            if self._sim_ok(w, switch, edge, end, pos, token, subst) and (
                far_switch == switch or self._sim_ok(w, far_switch, edge, 1 - end, pos, None, {})
            ):
                ok_positions.append(pos)
        out = []
        for pos in ok_positions:
            w2 = w.clone()
            pid = w2.add_pass(edge, pos)
            try:
                if near[0] == "through":
                    w2.new_through(switch, near[1], (pid, end))
                else:
                    w2.bind_stub(near[1], near[2], (pid, end))
            except Infeasible:
                continue
            affected = {switch, far_switch}
            if w2.check_switches(affected):
                out.append((w2, pid))
        return out

    def _sim_ok(self, w, switch, edge, end, pos, token, subst):
        """Check a switch's consistency with a simulated inserted entry."""
        seqs = []
        sw = self.track.switches[switch]
        for side_idx in (0, 1):
            germs = sw.side_a if side_idx == 0 else sw.side_b
            seq = []
            for (e, gend) in germs:
                lst = w.edge_order[e]
                n = len(lst)
                reversed_read = gend == 0
                entries = []
                for pid in (reversed(lst) if reversed_read else lst):
                    pt = w.end_point.get((pid, gend))
                    entry = pt if pt is not None else ("head", pid, gend)
                    entry = subst.get(entry, entry)
                    entries.append(entry)
                if e == edge and gend == end and token is not None:
                    at = (n - pos) if reversed_read else pos
                    entries.insert(at, token)
                elif e == edge and gend == end and token is None:
                    at = (n - pos) if reversed_read else pos
                    entries.insert(at, ("newhead",))
                seq.append((e, gend, entries))
            flat = [x for (_e, _g, es) in seq for x in es]
            seqs.append(flat)
        A = Weave._collapse(seqs[0])
        B = Weave._collapse(seqs[1])
        if A is None or B is None:
            return False
        B = list(reversed(B))
        pa = [x for x in A if not isinstance(x, tuple)]
        pb = [x for x in B if not isinstance(x, tuple)]
        shared = set(pa) & set(pb)
        return [x for x in pa if x in shared] == [x for x in pb if x in shared]

    def step_through(self, w, head, exit_germ):
        pid_prev, end_prev = head
        edge_prev = w.passes[pid_prev].edge
        switch = self.track.germ_switch(edge_prev, end_prev)
        e, end = exit_germ
        if self.track.germ_switch(e, end) != switch:
            return []
        placed = self._place_pass(w, e, end, ("through", head))
        return [(w2, (pid, 1 - end)) for w2, pid in placed]

    def birth(self, w, strand_edge, germ):
        """First pass of a strand, bound to its reserved start stub."""
        start_corner = self._strand_start_corner(strand_edge)
        target = self.corner_map[start_corner]
        e, end = germ
        if self.track.germ_switch(e, end) != target:
            return []
        cid = w.cluster_at[target]
        placed = self._place_pass(w, e, end, ("stub", cid, ("start", strand_edge)))
        return [(w2, (pid, 1 - end)) for w2, pid in placed]

    def head_switch(self, w, head):
        pid, end = head
        return self.track.germ_switch(w.passes[pid].edge, end)

    def _strand_start_corner(self, e):
        s0, s1 = self.track.edge_ends(e)
        return s1 if s0.startswith("M") else s0

    def _strand_end_anchor(self, e):
        s0, s1 = self.track.edge_ends(e)
        return s1 if not s1.startswith("M") else s0

    def _strand_mono(self, e):
        s0, s1 = self.track.edge_ends(e)
        if s1.startswith("M"):
            return s1
        if s0.startswith("M"):
            return s0
        return None

    def _letter_entry_germ(self, letter):
        e = letter.edge
        s0, s1 = self.track.edge_ends(e)
        if letter.kind in (HP_PLUS, HP_MINUS, HP_END, CLIMB):
            return (e, 0) if s1.startswith("M") else (e, 1)
        return (e, 0) if letter.kind == D_FWD else (e, 1)

    def _connector_germs(self, from_switch, to_switch):
        """Side-edge germs at from_switch whose edge reaches to_switch."""
        out = []
        sw = self.track.switches[from_switch]
        for (e, end) in sw.cyclic:
            if self.track.edges[e].kind != INF or e in self.track.monogon_marks:
                continue
            if self.track.germ_switch(e, 1 - end) == to_switch:
                out.append((e, end))
        return out

    # .. letters ..............................................................

    def apply_letter(self, w, head, strand_edge, letter: Letter):
        """All placements realizing one more letter of the strand's image.

        `head` is None at birth.  Returns (weave, new head) pairs; the head
        is None when the letter terminated the strand."""
        entry = self._letter_entry_germ(letter)
        entry_switch = self.track.germ_switch(*entry)
        # position the strand so its next pass uses the entry germ
        entered = []  # (weave, head after the entry pass)
        if head is None:
            start_corner = self._strand_start_corner(strand_edge)
            birth_switch = self.corner_map[start_corner]
            if birth_switch == entry_switch:
                entered.extend(self.birth(w, strand_edge, entry))
            for cg in self._connector_germs(birth_switch, entry_switch):
                for w2, head2 in self.birth(w, strand_edge, cg):
                    entered.extend(self.step_through(w2, head2, entry))
        else:
            here = self.head_switch(w, head)
            if here == entry_switch:
                entered.extend(self.step_through(w, head, entry))
            for cg in self._connector_germs(here, entry_switch):
                for w2, head2 in self.step_through(w, head, cg):
                    entered.extend(self.step_through(w2, head2, entry))
        out = []
        for w2, head2 in entered:
            out.extend(self._finish_letter(w2, head2, strand_edge, letter, entry))
        return out

    def _finish_letter(self, w, head, strand_edge, letter, entry):
        if letter.kind in (D_FWD, D_BWD):
            return [(w, head)]
        e, eend = entry
        mono = self.track.germ_switch(e, 1 - eend)
        if letter.kind == CLIMB:
            return [(w2, None) for w2 in self._terminate_climb(w, head, strand_edge, mono)]
        loop = self.loop_of[mono]
        if letter.kind == HP_END:
            exits = (0, 1)  # the terminal hairpin's side is undecorated
        else:
            exits = (PLUS_EXIT_END if letter.kind == HP_PLUS else 1 - PLUS_EXIT_END,)
        out = []
        for exit_end in exits:
            for w2, head2 in self.step_through(w, head, (loop, exit_end)):
                for w3, head3 in self.step_through(w2, head2, (e, 1 - eend)):
                    if letter.kind == HP_END:
                        out.extend((w4, None) for w4 in self._terminate_hp_end(w3, head3, strand_edge))
                    else:
                        out.append((w3, head3))
        return out

    def _terminate_climb(self, w, head, strand_edge, mono):
        if mono in w.cluster_at:
            return []
        src_mono = self._strand_mono(strand_edge)
        if src_mono is None:
            return []
        loop_img = self.loop_of[mono]
        src_loop = self.loop_of[src_mono]
        results = []
        for pos in range(len(w.edge_order[loop_img]) + 1):
            w2 = w.clone()
            lp = w2.add_pass(loop_img, pos)
            stubs = []
            src_sw = self.track.switches[src_mono]
            for (e, end) in src_sw.cyclic:
                src_side = src_sw.side_of((e, end))
                if e == src_loop:
                    stubs.append((("loop", end), src_side, (lp, end)))
                else:
                    stubs.append((("terminal",), src_side, head))
            try:
                w2.new_cluster(mono, stubs)
            except Infeasible:
                continue
            if w2.check_switch(mono):
                results.append(w2)
        return results

    def _terminate_hp_end(self, w, head, strand_edge):
        anchor = self._strand_end_anchor(strand_edge)
        target = self.corner_map[anchor]
        if self.head_switch(w, head) != target:
            return []
        cid = w.cluster_at.get(target)
        if cid is None:
            return []
        w2 = w.clone()
        try:
            w2.bind_stub(cid, ("end", strand_edge), head)
        except Infeasible:
            return []
        if w2.check_switch(target):
            return [w2]
        return []


def weave_feasible(m: TrackMap, node_cap: int = 500000):
    """Replay a complete map through the builder: (ok, reason)."""
    track = m.track
    try:
        builder = Builder(track, m.corner_map)
        w0 = builder.initial()
    except Infeasible as exc:
        return False, str(exc)
    order = sorted(m.images)
    nodes = 0

    def drive_strand(w, idx):
        nonlocal nodes
        if idx == len(order):
            return w.check_all()
        edge = order[idx]
        path = m.images[edge]

        def advance(w, head, li):
            nonlocal nodes
            nodes += 1
            if nodes > node_cap:
                raise RuntimeError("weave feasibility node cap exceeded")
            if li == len(path.letters):
                return drive_strand(w, idx + 1)
            for w2, head2 in builder.apply_letter(w, head, edge, path.letters[li]):
                if li == len(path.letters) - 1 and head2 is not None:
                    continue
                if advance(w2, head2, li + 1):
                    return True
            return False

        return advance(w, None, 0)

    ok = drive_strand(w0, 0)
    return (True, "") if ok else (False, "no consistent placement")
