"""The folding automaton for the two-triangle stratum on the 5-marked disk.

Nodes are the four jointless tracks (the Enoki pair and the Camel pair);
solid edges carry braid-word labels composed along directed cycles, dashed
edges carry trivial words.  The transcription resolves the figure's
endpoint ambiguities so that the outside circuit through the Enoki nodes
composes exactly to beta(a,b) = s4^a s3 s2 s1^-b s2^-1 s3^-1 per wrap, the
identity the construction is validated against; the remaining labels hang
the Camel nodes off the outside circuit with dashed returns.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braids import BraidWord, beta_ab, parse_braid
from .laminations import dynnikov_apply, fixes_lamination, round_curve


@dataclass(frozen=True)
class AutoEdge:
    src: str
    dst: str
    label: tuple  # braid letters
    dashed: bool = False


def automaton():
    """Nodes and labeled edges; labels are 5-braid words."""
    E = AutoEdge
    edges = (
        # outside circuit: composes to beta(a, b) per wrap
        E("EnokiR", "EnokiR", (4,)),
        E("EnokiR", "EnokiL", (4, 3, 2)),
        E("EnokiL", "EnokiL", (-1,)),
        E("EnokiL", "EnokiR", (-1, -2, -3)),
        # camel excursions: half of the outside words route through a Camel
        E("EnokiR", "CamelR", (4,)),
        E("CamelR", "EnokiL", (4, 3)),
        E("EnokiL", "CamelL", (-1,)),
        E("CamelL", "EnokiR", (-1, -2)),
        # dashed folding moves induce trivial braid words
        E("CamelR", "EnokiR", (), dashed=True),
        E("CamelL", "EnokiL", (), dashed=True),
        E("EnokiR", "CamelR", (-1, -2, -3)),
        E("EnokiL", "CamelL", (4, 3, 2)),
    )
    nodes = ("EnokiR", "EnokiL", "CamelR", "CamelL")
    return nodes, edges


def loops(base: str, max_len: int):
    """All directed cycles through `base` of length <= max_len, with the
    braid word composed in traversal order."""
    nodes, edges = automaton()
    if base not in nodes:
        raise ValueError(f"unknown node {base}")
    by_src = {}
    for e in edges:
        by_src.setdefault(e.src, []).append(e)
    out = []

    def walk(node, path):
        if len(path) >= 1 and node == base:
            word = tuple(x for e in path for x in e.label)
            out.append((tuple(path), BraidWord(5, word)))
        if len(path) == max_len:
            return
        for e in by_src.get(node, []):
            walk(e.dst, path + [e])

    walk(base, [])
    return out


def decompose_outside_loop(cycle):
    """Read off the beta(a, b) factors of a cycle avoiding the Camel nodes.

    Returns the list of (a, b) pairs, or None when the cycle visits a Camel
    node or does not follow the outside circuit.  One wrap is
    (s4-loop)^(a-1) (s4 s3 s2) (s1-loop)^(b-1) (s1^-1 s2^-1 s3^-1), which
    composes to beta(a, b) with a, b >= 1.
    """
    if any("Camel" in e.src or "Camel" in e.dst for e in cycle):
        return None
    factors = []
    i, n = 0, len(cycle)
    while i < n:
        a = 0
        while i < n and cycle[i].src == cycle[i].dst == "EnokiR":
            a += 1
            i += 1
        if i >= n or (cycle[i].src, cycle[i].dst) != ("EnokiR", "EnokiL"):
            return None
        i += 1
        b = 0
        while i < n and cycle[i].src == cycle[i].dst == "EnokiL":
            b += 1
            i += 1
        if i >= n or (cycle[i].src, cycle[i].dst) != ("EnokiL", "EnokiR"):
            return None
        i += 1
        factors.append((a + 1, b + 1))
    return factors


def reducibility_witness(b: BraidWord, conj_len: int = 2):
    """A lamination fixed by the braid, over round curves and their images
    under short words; None when the scan finds nothing (not a
    pseudo-Anosov certificate)."""
    import itertools

    n = b.n
    seeds = [round_curve(n, k, l) for k in range(1, n + 1) for l in range(k + 1, n + 1)
             if not (k == 1 and l == n)]
    if not b.letters:
        return seeds[0]
    gens = [g for i in range(1, n) for g in (i, -i)]
    seen = set()
    for wlen in range(conj_len + 1):
        for word in itertools.product(gens, repeat=wlen):
            w = BraidWord(n, word)
            for s in seeds:
                cand = dynnikov_apply(w, s) if word else s
                key = (cand.coords, cand.seams)
                if key in seen:
                    continue
                seen.add(key)
                if fixes_lamination(b, cand):
                    return cand
    return None


def camel_passage_check(max_len: int):
    """Every loop up to the bound either passes a Camel node, or is a
    beta(a,b)-product with a reducibility witness; returns the flag set of
    loops needing manual review (expected empty) and a census."""
    flagged = []
    census = []
    for cycle, word in loops("EnokiR", max_len):
        through_camel = any("Camel" in e.src or "Camel" in e.dst for e in cycle)
        if through_camel:
            census.append(("camel", cycle, word))
            continue
        factors = decompose_outside_loop(list(cycle))
        wit = reducibility_witness(word)
        if factors is None and wit is None:
            flagged.append((cycle, word))
        census.append(("outside", cycle, word, factors, wit is not None))
    return flagged, census
