"""Arc decomposition of an integer chain, and support graphs on arcs.

Cutting an admissible surface along the preimage of the wedge point slices each
word of the chain into arcs, one per syllable; a single-syllable word stays a
closed loop inside its factor. Boundary pieces of the cut surface are recorded
by ordered pairs of same-factor arcs: the pair (tau, tau') stands for a path
that runs along a copy of tau, then crosses the wedge region, then runs along a
copy of tau'. Loops cannot be entered or left, so they only pair with
themselves (dummy pairs).

The combinatorics needed downstream lives here: successor and predecessor of an
arc inside its cyclic word, the partner pairing used to glue two factor pieces
along a wedge crossing, and weighted support graphs with their recurrence test
and Eulerian circuits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .chains import Chain, GroupSpec


@dataclass(frozen=True)
class TauEdge:
    """One arc: a syllable of some word, viewed inside its factor."""

    factor: int
    word: int  # index of the word in the chain
    position: int  # syllable index within that word
    element: tuple[int, ...]  # exponent vector in the factor's lattice
    is_loop: bool  # whole word lies in this factor
    index: int  # id within the factor's arc list


@dataclass(frozen=True)
class T2Coord:
    """Ordered same-factor arc pair; the unit of boundary bookkeeping."""

    factor: int
    first: int  # arc index within the factor
    second: int
    is_dummy: bool  # loop arcs pair only with themselves
    partner: Optional[tuple[int, int]]  # (factor, coord index) or None


class ArcStructure:
    """Arcs, pairs, and word combinatorics for one integer-scaled chain."""

    def __init__(self, chain: Chain, spec: GroupSpec):
        self.spec = spec
        self.chain = chain
        nf = len(spec.factors)
        self.arcs: list[list[TauEdge]] = [[] for _ in range(nf)]
        self.coefficients: list[int] = []
        # (factor, arc index) per (word, position), for succ/pred lookups
        self._slot: list[list[tuple[int, int]]] = []

        for w, (coeff, word) in enumerate(chain):
            if coeff.denominator != 1:
                raise ValueError("chain must be integer-scaled before arcs")
            self.coefficients.append(int(coeff))
            slots = []
            loop = word.is_abelian_loop()
            for p, syl in enumerate(word.syllables):
                arc = TauEdge(
                    factor=syl.factor,
                    word=w,
                    position=p,
                    element=syl.exponents,
                    is_loop=loop,
                    index=len(self.arcs[syl.factor]),
                )
                self.arcs[syl.factor].append(arc)
                slots.append((syl.factor, arc.index))
            self._slot.append(slots)

        # ordered pairs per factor: dummies (loop, loop), genuine all others
        self.coords: list[list[T2Coord]] = [[] for _ in range(nf)]
        self.coord_index: list[dict[tuple[int, int], int]] = [{} for _ in range(nf)]
        all_pairs: list[list[tuple[int, int]]] = []
        for f in range(nf):
            pairs: list[tuple[int, int]] = []
            for a in self.arcs[f]:
                if a.is_loop:
                    pairs.append((a.index, a.index))
            non_loop = [a.index for a in self.arcs[f] if not a.is_loop]
            for i in non_loop:
                for j in non_loop:
                    pairs.append((i, j))
            pairs.sort()
            all_pairs.append(pairs)
            for k, pair in enumerate(pairs):
                self.coord_index[f][pair] = k
        for f in range(nf):
            for i, j in all_pairs[f]:
                dummy = self.arcs[f][i].is_loop
                partner = None
                if not dummy:
                    # partner((tau, tau')) = (pred(tau'), succ(tau)): the two
                    # sides of one wedge crossing. Different far-side factors
                    # mean no two-sided gluing; a junction polygon must absorb
                    # the crossing and partner stays None.
                    pf, p = self.pred(f, j)
                    sf, s = self.succ(f, i)
                    if pf == sf:
                        partner = (pf, self.coord_index[pf][(p, s)])
                self.coords[f].append(
                    T2Coord(factor=f, first=i, second=j, is_dummy=dummy, partner=partner)
                )

    def succ(self, factor: int, arc_index: int) -> tuple[int, int]:
        """(factor, arc index) of the next syllable around the arc's word."""
        arc = self.arcs[factor][arc_index]
        slots = self._slot[arc.word]
        return slots[(arc.position + 1) % len(slots)]

    def pred(self, factor: int, arc_index: int) -> tuple[int, int]:
        arc = self.arcs[factor][arc_index]
        slots = self._slot[arc.word]
        return slots[(arc.position - 1) % len(slots)]

    def degree_target(self, factor: int, arc_index: int) -> int:
        return self.coefficients[self.arcs[factor][arc_index].word]

    def genuine_indices(self, factor: int) -> list[int]:
        return [k for k, c in enumerate(self.coords[factor]) if not c.is_dummy]

    def coord_label(self, factor: int, k: int) -> str:
        c = self.coords[factor][k]
        return f"({c.first + 1},{c.second + 1})"


def build_arcs(chain: Chain, spec: GroupSpec) -> ArcStructure:
    return ArcStructure(chain, spec)


# ---------------------------------------------------------------------------
# support graphs


@dataclass
class SupportGraph:
    """Weighted directed multigraph on a factor's arcs (positive weights only)."""

    edges: dict[tuple[int, int], object]  # (from arc, to arc) -> weight

    @property
    def vertices(self) -> list[int]:
        seen = set()
        for u, v in self.edges:
            seen.add(u)
            seen.add(v)
        return sorted(seen)

    def out_neighbors(self, u: int) -> list[int]:
        return sorted(v for (a, v) in self.edges if a == u)

    def in_neighbors(self, v: int) -> list[int]:
        return sorted(u for (u, b) in self.edges if b == v)


def support_graph(coords: Sequence, vector: Sequence) -> SupportGraph:
    """Edges (first -> second) for every coordinate with positive weight.

    Coordinates may be T2Coord objects or plain (first, second) tuples.
    """
    edges = {}
    for c, x in zip(coords, vector):
        if x < 0:
            raise ValueError("negative weight in support vector")
        if x > 0:
            pair = c if isinstance(c, tuple) else (c.first, c.second)
            edges[pair] = edges.get(pair, 0) + x
    return SupportGraph(edges)


def _weak_components(g: SupportGraph) -> list[list[int]]:
    verts = g.vertices
    undirected: dict[int, set[int]] = {v: set() for v in verts}
    for u, v in g.edges:
        undirected[u].add(v)
        undirected[v].add(u)
    seen: set[int] = set()
    comps = []
    for v in verts:
        if v in seen:
            continue
        comp = []
        stack = [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in undirected[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def component_count(g: SupportGraph) -> int:
    """Weakly connected components; isolated vertices cannot occur here."""
    return len(_weak_components(g))


def is_connected(g: SupportGraph) -> bool:
    return component_count(g) <= 1


def _reaches(g: SupportGraph, start: int, within: set[int], forward: bool) -> set[int]:
    out: dict[int, list[int]] = {v: [] for v in within}
    for u, v in g.edges:
        if u in within and v in within:
            if forward:
                out[u].append(v)
            else:
                out[v].append(u)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in out[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_recurrent(g: SupportGraph) -> bool:
    """True when every weak component is strongly connected (no dead ends)."""
    for comp in _weak_components(g):
        within = set(comp)
        start = comp[0]
        if _reaches(g, start, within, True) != within:
            return False
        if _reaches(g, start, within, False) != within:
            return False
    return True


def eulerian_circuits(g: SupportGraph) -> list[list[int]]:
    """One closed circuit per component covering each edge with its multiplicity.

    Weights must be positive integers and every vertex must be balanced
    (weighted in-degree equals weighted out-degree). Each circuit is returned
    as the cyclic vertex sequence, one entry per edge traversal; the edge
    closing the circuit back to the first vertex is implicit.
    """
    remaining: dict[int, dict[int, int]] = {}
    out_deg: dict[int, int] = {}
    in_deg: dict[int, int] = {}
    for (u, v), w in g.edges.items():
        if getattr(w, "denominator", 1) != 1 or w <= 0:
            raise ValueError("eulerian circuits need positive integer weights")
        w = int(w)
        remaining.setdefault(u, {})[v] = remaining.get(u, {}).get(v, 0) + w
        out_deg[u] = out_deg.get(u, 0) + w
        in_deg[v] = in_deg.get(v, 0) + w
    for v in g.vertices:
        if out_deg.get(v, 0) != in_deg.get(v, 0):
            raise ValueError(f"vertex {v} is unbalanced")

    circuits = []
    for comp in _weak_components(g):
        start = comp[0]
        # Hierholzer: walk until stuck (always back at the start when balanced),
        # splicing in detours from vertices that still have unused edges.
        stack = [start]
        trail: list[int] = []
        while stack:
            u = stack[-1]
            bucket = remaining.get(u, {})
            nxt = None
            for v in sorted(bucket):
                if bucket[v] > 0:
                    nxt = v
                    break
            if nxt is None:
                trail.append(stack.pop())
            else:
                bucket[nxt] -= 1
                stack.append(nxt)
        trail.reverse()
        # trail lists vertices of a closed walk: first == last; drop the echo
        circuits.append(trail[:-1])
    return circuits
