"""Combinatorial train tracks on marked disks.

A track is stored as pure incidence data plus tangential structure: each
switch carries two ordered tuples of germs (edge-ends), one per side of the
common tangent line; the full counterclockwise cyclic order of germs around
the switch is side A followed by side B.  No planar coordinates are stored;
planarity is certified by deriving the complementary regions from the
rotation system and checking the Euler count of the disk.

Regions are walked from the ribbon structure.  A corner of a region at a
switch is a *cusp* when the two germs it passes between lie on the same
side (a tangential turn), and smooth otherwise.  For a valid track on a
disk the regions are: marked monogons (one cusp, one marked point each),
interior infinitesimal polygons, and a single peripheral region.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

REAL = "real"
INF = "inf"


@dataclass(frozen=True)
class Edge:
    name: str
    kind: str  # REAL or INF


@dataclass(frozen=True)
class Switch:
    name: str
    side_a: tuple  # tuple of germs (edge_name, end) in ccw order
    side_b: tuple

    @property
    def cyclic(self):
        return self.side_a + self.side_b

    def side_of(self, germ):
        if germ in self.side_a:
            return 0
        if germ in self.side_b:
            return 1
        raise KeyError(germ)


@dataclass(frozen=True)
class Region:
    """A complementary region: cyclic walk data derived from the track."""

    corners: tuple  # tuple of (switch_name, germ_from, germ_to, is_cusp)
    edges: tuple  # edge names on the boundary (with multiplicity)
    marked_point: int | None = None
    peripheral: bool = False

    @property
    def cusps(self) -> int:
        return sum(1 for c in self.corners if c[3])

    def is_infinitesimal_polygon(self, track) -> bool:
        return all(track.edges[e].kind == INF for e in self.edges)


class Track:
    """A train track on the n-marked disk."""

    def __init__(self, n_marked, edges, switches, monogon_marks, peripheral_edges=None):
        """`edges`: {name: kind}; `switches`: {name: (side_a, side_b)};
        `monogon_marks`: {loop edge name: marked point index};
        `peripheral_edges`: optional sorted edge multiset identifying the
        peripheral region for tracks with more than one non-polygon region.
        """
        self.n_marked = n_marked
        self.peripheral_edges = tuple(sorted(peripheral_edges)) if peripheral_edges else None
        self.edges = {name: Edge(name, kind) for name, kind in edges.items()}
        self.switches = {name: Switch(name, tuple(sa), tuple(sb)) for name, (sa, sb) in switches.items()}
        self.monogon_marks = dict(monogon_marks)
        self._germ_home = {}
        for sw in self.switches.values():
            for germ in sw.cyclic:
                if germ in self._germ_home:
                    raise ValueError(f"germ {germ} attached twice")
                self._germ_home[germ] = sw.name
        self._regions = None

    # -- structural helpers ------------------------------------------------

    def germ_switch(self, edge, end) -> str:
        return self._germ_home[(edge, end)]

    def real_edges(self):
        return [e.name for e in self.edges.values() if e.kind == REAL]

    def inf_edges(self):
        return [e.name for e in self.edges.values() if e.kind == INF]

    def edge_ends(self, edge):
        return (self.germ_switch(edge, 0), self.germ_switch(edge, 1))

    def other_side_germs(self, switch_name, germ):
        sw = self.switches[switch_name]
        return sw.side_b if sw.side_of(germ) == 0 else sw.side_a

    # -- region derivation ---------------------------------------------------

    def regions(self):
        if self._regions is None:
            self._regions = self._walk_regions()
        return self._regions

    def _walk_regions(self):
        # Standard ribbon-graph face tracing on darts (edge, direction):
        # arrive at the far switch, take the next germ counterclockwise, and
        # depart along it.  Each dart lies on the boundary of exactly one
        # region; an edge borders the same region twice via its two darts
        # when the region wraps around it.
        unused = {(e.name, d) for e in self.edges.values() for d in (0, 1)}
        regions = []
        while unused:
            start = next(iter(unused))
            walk = []
            corners = []
            cur = start
            while True:
                unused.discard(cur)
                walk.append(cur)
                edge, direction = cur
                arrive_end = 1 if direction == 0 else 0
                sw_name = self.germ_switch(edge, arrive_end)
                sw = self.switches[sw_name]
                cyc = sw.cyclic
                idx = cyc.index((edge, arrive_end))
                nxt = cyc[(idx + 1) % len(cyc)]
                is_cusp = sw.side_of((edge, arrive_end)) == sw.side_of(nxt)
                corners.append((sw_name, (edge, arrive_end), nxt, is_cusp))
                nedge, nend = nxt
                cur = (nedge, 0 if nend == 0 else 1)
                if cur == start:
                    break
            edge_names = tuple(w[0] for w in walk)
            regions.append((tuple(corners), edge_names))
        # classify: monogons carry marks; the peripheral region is the unique
        # region that is not an infinitesimal polygon
        out = []
        for corners, edge_names in regions:
            all_inf = all(self.edges[e].kind == INF for e in edge_names)
            mark = None
            if all_inf and len(set(edge_names)) == 1 and edge_names[0] in self.monogon_marks:
                mark = self.monogon_marks[edge_names[0]]
            if self.peripheral_edges is not None:
                peripheral = tuple(sorted(edge_names)) == self.peripheral_edges
            else:
                peripheral = not all_inf
            out.append(Region(corners, edge_names, mark, peripheral))
        return out

    # -- validation ----------------------------------------------------------

    def validate(self):
        """List of violation strings; empty iff the track is consistent."""
        issues = []
        for (edge, end), sw in list(self._germ_home.items()):
            if edge not in self.edges:
                issues.append(f"germ references unknown edge {edge}")
        for e in self.edges.values():
            for end in (0, 1):
                if (e.name, end) not in self._germ_home:
                    issues.append(f"edge end {(e.name, end)} not attached")
        if issues:
            return issues
        regions = self.regions()
        periph = [r for r in regions if r.peripheral]
        if len(periph) != 1:
            issues.append(f"expected exactly one peripheral region, found {len(periph)}")
        V = len(self.switches)
        E = len(self.edges)
        F = len(regions)
        if V - E + F != 2:
            issues.append(f"Euler count V-E+F = {V - E + F} != 2: not a disk embedding")
        monogons = [r for r in regions if r.marked_point is not None]
        marks = sorted(r.marked_point for r in monogons)
        if marks != list(range(1, self.n_marked + 1)):
            issues.append(f"marked points {marks} do not cover 1..{self.n_marked}")
        for r in monogons:
            if r.cusps != 1:
                issues.append(f"marked monogon {r.edges} has {r.cusps} cusps")
        for r in regions:
            if (r.marked_point is None and not r.peripheral
                    and r.is_infinitesimal_polygon(self) and r.cusps < 3):
                issues.append(f"infinitesimal polygon {r.edges} has {r.cusps} < 3 cusps")
        return issues

    # -- strata ----------------------------------------------------------------

    def stratum(self) -> "Stratum":
        regions = self.regions()
        boundary = tuple(sorted(r.cusps for r in regions if r.peripheral))
        marked = tuple(sorted(r.cusps for r in regions if r.marked_point is not None))
        interior = tuple(
            sorted(r.cusps for r in regions if not r.peripheral and r.marked_point is None)
        )
        return Stratum(boundary, marked, interior)

    def is_standard(self) -> bool:
        """The four structural conditions for a standard track."""
        regions = self.regions()
        for r in regions:
            if r.peripheral:
                continue
            if not r.is_infinitesimal_polygon(self):
                return False
        # switches are vertices of infinitesimal polygons: every switch meets
        # an infinitesimal edge
        for sw in self.switches.values():
            if not any(self.edges[e].kind == INF for (e, _end) in sw.cyclic):
                return False
        # tangency sorting: each side of each switch is purely real or inf
        for sw in self.switches.values():
            for side in (sw.side_a, sw.side_b):
                kinds = {self.edges[e].kind for (e, _end) in side}
                if len(kinds) > 1:
                    return False
        # one infinitesimal monogon per marked point (checked in validate)
        monogons = [r for r in regions if r.marked_point is not None]
        return len(monogons) == self.n_marked

    def is_jointless(self) -> bool:
        """No marked-monogon switch has more than one adjacent real edge."""
        for loop, _mark in self.monogon_marks.items():
            sw_name = self.germ_switch(loop, 0)
            sw = self.switches[sw_name]
            real = [g for g in sw.cyclic if self.edges[g[0]].kind == REAL]
            if len(real) > 1:
                return False
        return True

    # -- mirrors -----------------------------------------------------------------

    def mirrored(self, rename_edges, rename_switches, n_marked=None):
        """Reflected track: all cyclic orders reversed, names remapped."""
        edges = {rename_edges.get(e.name, e.name): e.kind for e in self.edges.values()}
        switches = {}
        for sw in self.switches.values():
            ren = lambda g: (rename_edges.get(g[0], g[0]), g[1])
            side_a = tuple(ren(g) for g in reversed(sw.side_a))
            side_b = tuple(ren(g) for g in reversed(sw.side_b))
            # reversal of the full cyclic order: reverse each side and swap
            switches[rename_switches.get(sw.name, sw.name)] = (side_b, side_a)
        n = n_marked if n_marked is not None else self.n_marked
        marks = {
            rename_edges.get(loop, loop): n + 1 - mark for loop, mark in self.monogon_marks.items()
        }
        return Track(n, edges, switches, marks)


@dataclass(frozen=True)
class Stratum:
    """Singularity data: prongs at boundary components, marked points, and
    non-marked interior singularities."""

    boundary: tuple
    marked: tuple
    interior: tuple

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(sorted(self.boundary)))
        object.__setattr__(self, "marked", tuple(sorted(self.marked)))
        object.__setattr__(self, "interior", tuple(sorted(self.interior)))

    def balance_holds(self, genus: int, boundary_components: int) -> bool:
        """Euler-Poincare: 2*chi = sum_{marked+interior}(2-p) - sum_boundary p."""
        chi = 2 - 2 * genus - boundary_components
        lhs = 2 * chi
        rhs = sum(2 - p for p in self.marked) + sum(2 - p for p in self.interior) - sum(self.boundary)
        return lhs == rhs and len(self.boundary) == boundary_components

    def pretty(self) -> str:
        def fmt(part):
            if not part:
                return "0"  # placeholder, replaced below
            items = []
            for v in sorted(set(part), reverse=True):
                k = part.count(v)
                items.append(f"{v}^{k}" if k > 1 else f"{v}")
            return ",".join(items)

        b = fmt(self.boundary) if self.boundary else "-"
        m = fmt(self.marked) if self.marked else "-"
        i = fmt(self.interior) if self.interior else "-"
        return f"({b};{m};{i})"

    def __str__(self):
        return self.pretty()


def enumerate_strata(genus, boundary_components, marked, predicate=None):
    """All strata on the (genus, boundary) surface with `marked` marked
    points satisfying the Euler-Poincare balance and the predicate.

    Finite: the balance bounds every prong count.  Interior prongs are >= 3,
    marked prongs >= 1, boundary prongs >= 1.
    """
    chi = 2 - 2 * genus - boundary_components
    budget = -2 * chi + 2 * boundary_components + marked  # sum over all "excess"
    # rewrite balance: sum_b (b_i) + sum_int (k_j - 2) + sum_mk (m_l - 2) = -2 chi
    # with b_i >= 1, k_j >= 3, m_l >= 1 (so m_l - 2 >= -1)
    target = -2 * chi
    out = []
    for bparts in _compositions(boundary_components, target + marked + 1):
        sb = sum(bparts)
        for mparts in _tuples(marked, 1, max(1, target + sb + 2 * marked + 2)):
            sm = sum(m - 2 for m in mparts)
            rem = target - sb - sm
            if rem < 0:
                continue
            for iparts in _partitions_min3(rem):
                s = Stratum(tuple(bparts), tuple(mparts), tuple(iparts))
                if not s.balance_holds(genus, boundary_components):
                    continue
                if predicate is None or predicate(s):
                    if s not in out:
                        out.append(s)
    return sorted(out, key=lambda s: (s.boundary, s.marked, s.interior))


def _compositions(k, hi):
    """Sorted k-tuples of integers >= 1 bounded by hi."""
    if k == 0:
        yield ()
        return
    for first in range(1, hi + 1):
        for rest in _compositions(k - 1, hi):
            tup = tuple(sorted((first,) + rest))
            yield tup


def _tuples(k, lo, hi):
    if k == 0:
        yield ()
        return
    seen = set()
    for combo in itertools.combinations_with_replacement(range(lo, hi + 1), k):
        if combo not in seen:
            seen.add(combo)
            yield combo


def _partitions_min3(total):
    """Multisets of integers >= 3 with sum of (k-2) equal to `total`."""
    if total == 0:
        yield ()
        return
    # each part k >= 3 contributes k-2 >= 1
    def rec(remaining, min_part):
        if remaining == 0:
            yield ()
            return
        for part in range(min_part, remaining + 2 + 1):
            contrib = part - 2
            if contrib > remaining:
                break
            for rest in rec(remaining - contrib, part):
                yield (part,) + rest

    yield from rec(total, 3)


def even_boundary_lift_predicate(s: Stratum) -> bool:
    """Strata arising as Birman-Hilden lifts of marked-disk strata.

    Boundary prongs even (they double in the lift); interior prongs split
    into pairs (lifts of non-marked interior singularities swap or are
    swapped by the involution) together with even singletons 2m (lifts of
    m-pronged marked points at branch points), retained only when
    2m <= boundary prong count, which is the possibility analysis that
    accompanies the double-cover stratum list for the genus-two surface.
    """
    if len(s.boundary) != 1:
        return False
    b = s.boundary[0]
    if b % 2 or b < 2:
        return False
    return _liftable(list(s.interior), b)


def _liftable(parts, b) -> bool:
    if not parts:
        return True
    parts = sorted(parts)
    p = parts[-1]
    rest = parts[:-1]
    # as one of an involution-swapped pair
    if rest.count(p):
        r2 = rest[:]
        r2.remove(p)
        if _liftable(r2, b):
            return True
    # as a doubled marked point over a branch point
    if p % 2 == 0 and p >= 4 and p <= b and _liftable(rest, b):
        return True
    return False
