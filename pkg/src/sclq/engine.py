"""Exact scl computation via a column-generating master linear program.

The chain is scaled to integer coefficients. A surface bounding it decomposes
into factor pieces (one batch per free product factor), glued to each other
across word junctions. Per factor, the boundary data is a nonnegative vector v
over arc-pair coordinates; disk pieces extracted from v each add 1 to Euler
characteristic, every genuine coordinate unit costs two corners (1/2), and the
gluing is mediated by junction polygons: a polygon with k glued sides
contributes 1 - k/2. Two-sided gluings (k = 2, cost 0) are the generic case
and the only one needed for two factors; with three or more factors wider
polygons can be essential.

Maximizing total Euler characteristic over this data is a linear program whose
optimum equals -2N scl. Disk vectors and junction polygons both live in sets
too large to tabulate, so columns are generated: after each solve, exact dual
prices are used to search for a disk vector d with w . d < 1 (a bounded
branch-and-bound over the factor's cone) or a polygon cycle with total node
price < 1 (a min-plus closed-walk dynamic program). When neither exists the
optimum is certified over the full column sets.

The disk search region is twice the componentwise sum of the primitive
extremal rays. Every integral cone point splits as g + s with g in the ray
zonotope and s a nonnegative integer ray combination; capping the ray
multiplicities of a violating disk at their fractional parts plus one keeps
it integral, connected (same support), within twice the zonotope box, and at
most the original price since prices of rays are nonnegative at an optimum.
So a violator anywhere implies one inside the search region.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .arcs import ArcStructure, build_arcs, is_connected, support_graph
from .chains import (Chain, GroupSpec, NotBoundaryError, is_boundary,
                     normalize_chain, parse_chain, scale_to_integral)
from .cones import ConeSystem, build_cone_system, extremal_rays
from .ratlp import EQ, GE, LE, LinearProgram, Solution, maximize
from .rationals import Rat, fmt, rat
from .sails import EnumerationOverflow, disk_box, enumerate_disk_vectors, is_disk_vector

BIG_M = Rat(10**9)
ARC_LIMIT = 8
ENUM_PRODUCT_LIMIT = 60_000
HALF = Rat(1, 2)


class ChainTooLarge(RuntimeError):
    """More junction arcs than the default safety limit; pass allow_large."""


class WitnessError(ValueError):
    """A witness failed exact re-verification."""


# ---------------------------------------------------------------------------
# junction structure


class Junctions:
    """Genuine coordinates of all factors as nodes of the gluing digraph.

    There is an edge c -> e when a polygon side on coordinate e can follow a
    side on coordinate c around a junction polygon: the word arc entered after
    c's first arc must be where e's second arc sits. Closed cycles in this
    graph are exactly the legal junction polygons; the two-cycles are the
    ordinary two-sided gluings, and a node's partner (when defined) is its
    unique two-cycle mate. Self-loops cannot occur because consecutive word
    syllables lie in different factors.
    """

    def __init__(self, arcs: ArcStructure):
        self.arcs = arcs
        nodes: list[tuple[int, int]] = []
        for f in range(len(arcs.spec.factors)):
            for k in arcs.genuine_indices(f):
                nodes.append((f, k))
        self.nodes = nodes
        self.node_id = {nk: i for i, nk in enumerate(nodes)}
        by_second: dict[tuple[int, int], list[int]] = {}
        for i, (f, k) in enumerate(nodes):
            c = arcs.coords[f][k]
            by_second.setdefault((f, c.second), []).append(i)
        adj = []
        for f, k in nodes:
            c = arcs.coords[f][k]
            succ = arcs.succ(f, c.first)
            adj.append(tuple(by_second.get(succ, ())))
        self.adj = adj

    def is_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def label(self, i: int) -> str:
        f, k = self.nodes[i]
        return f"{f}:{self.arcs.coord_label(f, k)}"


def _canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Least rotation; direction is meaningful and is not reflected away."""
    best = None
    cyc = tuple(cycle)
    for s in range(len(cyc)):
        rot = cyc[s:] + cyc[:s]
        if best is None or rot < best:
            best = rot
    return best


def _rectangle_cycles(junc: Junctions) -> list[tuple[int, ...]]:
    arcs = junc.arcs
    seen = set()
    out = []
    for i, (f, k) in enumerate(junc.nodes):
        p = arcs.coords[f][k].partner
        if p is None:
            continue
        j = junc.node_id[p]
        cyc = _canonical_cycle((i, j))
        if cyc not in seen:
            seen.add(cyc)
            assert junc.is_edge(cyc[0], cyc[1]) and junc.is_edge(cyc[1], cyc[0])
            out.append(cyc)
    return out


def _walk_to_simple_cycles(seq: Sequence[int]) -> list[tuple[int, ...]]:
    """Split a closed walk into simple cycles covering each visit once."""
    cycles = []
    stack: list[int] = []
    pos: dict[int, int] = {}
    for v in list(seq) + [seq[0]]:
        if v in pos:
            i = pos[v]
            for u in stack[i + 1:]:
                del pos[u]
            cycles.append(tuple(stack[i:]))
            del stack[i + 1:]
        else:
            pos[v] = len(stack)
            stack.append(v)
    return [c for c in cycles if len(c) >= 2]


def _price_polygons(junc: Junctions, omega: Sequence,
                    existing: set) -> list[tuple[int, ...]]:
    """New simple cycles with total node price < 1, or [] certifying none.

    Min-plus powers of the adjacency matrix (entry weight = price of the head
    node) give the cheapest closed walk of each length up to the node count.
    Simple cycles are walks, so if every walk costs >= 1 no polygon column can
    improve the master. A cheaper walk splits into simple cycles whose prices
    sum to the walk's, so at least one is < 1; all pieces < 1 are returned.
    """
    n = len(junc.nodes)
    if n == 0:
        return []
    INF = None
    dist = [[INF] * n for _ in range(n)]
    for u in range(n):
        for v in junc.adj[u]:
            dist[u][v] = omega[v]
    parents: list[list[list]] = [[[-1] * n for _ in range(n)]]
    best = None  # (weight, length, start)
    layers = [None, [row[:] for row in dist]]
    for u in range(n):
        pass
    length = 1
    cur = [row[:] for row in dist]
    while True:
        for u in range(n):
            d = cur[u][u]
            if d is not None and d < 1 and (best is None or d < best[0]):
                best = (d, length, u)
        if length == n:
            break
        length += 1
        nxt = [[INF] * n for _ in range(n)]
        par = [[-1] * n for _ in range(n)]
        for u in range(n):
            row_u = cur[u]
            out_row = nxt[u]
            par_row = par[u]
            for m in range(n):
                base = row_u[m]
                if base is None:
                    continue
                for v in junc.adj[m]:
                    cand = base + omega[v]
                    if out_row[v] is None or cand < out_row[v]:
                        out_row[v] = cand
                        par_row[v] = m
        parents.append(par)
        layers.append([row[:] for row in nxt])
        cur = nxt
    if best is None:
        return []
    _, length, start = best
    walk = [start] * (length + 1)
    for step in range(length, 1, -1):
        walk[step - 1] = parents[step - 1][start][walk[step]]
    seq = walk[:-1]
    fresh = []
    for cyc in _walk_to_simple_cycles(seq):
        weight = sum((omega[v] for v in cyc), Rat(0))
        if weight < 1:
            canon = _canonical_cycle(cyc)
            if canon not in existing and canon not in fresh:
                fresh.append(canon)
    assert fresh, "a walk below price 1 must contain a new cycle below 1"
    return sorted(fresh)


# ---------------------------------------------------------------------------
# disk pricing


def _bounded_min_lp(cone: ConeSystem, w: Sequence, lo: Sequence[int],
                    hi: Sequence[int], pivot: str) -> Optional[tuple]:
    """Exact min of w . x over the cone slab lo <= x <= hi; None if empty."""
    free = [k for k in range(cone.num_coords) if hi[k] > lo[k]]
    col = {k: j for j, k in enumerate(free)}
    lp = LinearProgram(len(free))
    lp.set_objective({col[k]: -Rat(w[k]) for k in free})
    const = Rat(0)
    for k in range(cone.num_coords):
        if lo[k]:
            const += Rat(w[k]) * lo[k]
    for row in cone.boundary_rows + cone.homology_rows:
        if not any(row):
            continue
        coeffs = {col[k]: Rat(row[k]) for k in free if row[k]}
        rhs = -sum(row[k] * lo[k] for k in range(cone.num_coords) if lo[k])
        if not coeffs:
            if rhs != 0:
                return None
            continue
        lp.add_row(coeffs, EQ, rhs)
    for k in free:
        lp.add_row({col[k]: Rat(1)}, LE, hi[k] - lo[k])
    sol = maximize(lp, pivot)
    if sol.status == "infeasible":
        return None
    assert sol.status == "optimal"
    x = [Rat(lo[k]) for k in range(cone.num_coords)]
    for k in free:
        x[k] += sol.x[col[k]]
    return (-sol.value + const, x)


def _find_violator(cone: ConeSystem, w: Sequence, box: Sequence[int],
                   budget: int, pivot: str) -> Optional[tuple[int, ...]]:
    """An integral connected dummy-zero cone point with w . x < 1, if any.

    Branch-and-bound, partitioned by the first positive coordinate so the
    zero vector is excluded. Fractional optima branch on the first fractional
    coordinate; integral but disconnected optima are excluded pointwise and
    the region is re-searched. The budget counts LP solves.
    """
    n = cone.num_coords
    genuine = [k for k in range(n) if cone.genuine[k]]
    base_hi = [box[k] if cone.genuine[k] else 0 for k in range(n)]
    spent = 0

    def arithmetic_bound(lo, hi):
        total = Rat(0)
        for k in genuine:
            wk = Rat(w[k])
            total += wk * (lo[k] if wk >= 0 else hi[k])
        return total

    for i, ki in enumerate(genuine):
        if base_hi[ki] < 1:
            continue
        lo0 = [0] * n
        hi0 = base_hi[:]
        for kj in genuine[:i]:
            hi0[kj] = 0
        lo0[ki] = 1
        stack = [(lo0, hi0)]
        while stack:
            lo, hi = stack.pop()
            if any(lo[k] > hi[k] for k in range(n)):
                continue
            if arithmetic_bound(lo, hi) >= 1:
                continue
            spent += 1
            if spent > budget:
                raise EnumerationOverflow(
                    f"disk pricing exceeded {budget} subproblems"
                )
            res = _bounded_min_lp(cone, w, lo, hi, pivot)
            if res is None:
                continue
            value, x = res
            if value >= 1:
                continue
            frac = next((k for k in genuine
                         if getattr(x[k], "denominator", 1) != 1), None)
            if frac is not None:
                floor_v = int(x[frac]) if x[frac] >= 0 else -int(-x[frac]) - 1
                hi_a = hi[:]
                hi_a[frac] = floor_v
                lo_b = lo[:]
                lo_b[frac] = floor_v + 1
                stack.append((lo, hi_a))
                stack.append((lo_b, hi))
                continue
            xi = tuple(int(c) for c in x)
            if is_connected(support_graph(cone.pairs, xi)):
                assert is_disk_vector(cone, xi)
                return xi
            # exclude exactly this point, keep everything else in play
            for j, kj in enumerate(genuine):
                if xi[kj] > lo[kj]:
                    hi_c = hi[:]
                    for kk in genuine[:j]:
                        hi_c[kk] = xi[kk]
                    lo_c = lo[:]
                    for kk in genuine[:j]:
                        lo_c[kk] = xi[kk]
                    hi_c[kj] = xi[kj] - 1
                    stack.append((lo_c, hi_c))
                if xi[kj] < hi[kj]:
                    hi_d = hi[:]
                    lo_d = lo[:]
                    for kk in genuine[:j]:
                        hi_d[kk] = xi[kk]
                        lo_d[kk] = xi[kk]
                    lo_d[kj] = xi[kj] + 1
                    stack.append((lo_d, hi_d))
    return None


# ---------------------------------------------------------------------------
# master program


@dataclass
class _FactorState:
    factor: int
    cone: ConeSystem
    rays: list
    base_box: tuple[int, ...]
    search_box: tuple[int, ...]
    columns: list  # active disk columns
    universe: Optional[list]  # all disks in search_box, when affordable


@dataclass(frozen=True)
class FactorWitness:
    factor: int
    coord_labels: tuple[str, ...]
    v: tuple
    remainder: tuple
    expression: tuple  # ((disk ints), weight) pairs
    kappa: object
    norm: object


@dataclass(frozen=True)
class SclResult:
    value: object
    chi: object
    scaling: int
    chain: Chain
    spec: GroupSpec
    factors: tuple
    junctions: tuple  # ((node labels), (factor, coord) nodes, weight)
    rounds: int

    def witness(self) -> dict:
        data = {
            "chain": self.chain.render(self.spec),
            "group": self.spec.describe(),
            "value": fmt(self.value, strict=True),
            "chi": fmt(self.chi, strict=True),
            "scaling": self.scaling,
            "factors": [
                {
                    "factor": fw.factor,
                    "coords": list(fw.coord_labels),
                    "v": [fmt(x, strict=True) for x in fw.v],
                    "kappa": fmt(fw.kappa, strict=True),
                    "norm": fmt(fw.norm, strict=True),
                    "expression": [
                        {"t": fmt(t, strict=True), "disk": list(d)}
                        for d, t in fw.expression
                    ],
                    "remainder": [fmt(x, strict=True) for x in fw.remainder],
                }
                for fw in self.factors
            ],
        }
        if len(self.spec.factors) >= 3:
            data["junctions"] = [
                {
                    "cycle": [[f, k] for f, k in nodes],
                    "labels": list(labels),
                    "weight": fmt(weight, strict=True),
                }
                for labels, nodes, weight in self.junctions
            ]
        return data


class _Master:
    """One rebuildable exact LP over the current column sets."""

    def __init__(self, arcs: ArcStructure, states: Sequence[_FactorState],
                 polygons: Sequence[tuple[int, ...]], junc: Junctions,
                 pivot: str):
        self.arcs = arcs
        self.states = states
        self.polygons = list(polygons)
        self.junc = junc
        self.pivot = pivot
        nf = len(arcs.spec.factors)
        self.vi = []
        self.ri = []
        self.ti = []
        nv = 0
        for st in states:
            self.vi.append(nv)
            nv += st.cone.num_coords
        for st in states:
            self.ri.append(nv)
            nv += st.cone.num_coords
        for st in states:
            self.ti.append(nv)
            nv += len(st.columns)
        self.pi = nv
        nv += len(self.polygons)
        self.ai = nv
        nv += 2 * len(junc.nodes)
        lp = LinearProgram(nv)

        obj = {}
        for f, st in enumerate(states):
            for i in range(len(st.columns)):
                obj[self.ti[f] + i] = Rat(1)
            for k in range(st.cone.num_coords):
                if st.cone.genuine[k]:
                    obj[self.vi[f] + k] = -HALF
        for p, cyc in enumerate(self.polygons):
            obj[self.pi + p] = Rat(1) - Rat(len(cyc), 2)
        for a in range(2 * len(junc.nodes)):
            obj[self.ai + a] = -BIG_M
        lp.set_objective(obj)

        self.e_row: dict[tuple[int, int], int] = {}
        self.s_row: dict[int, int] = {}

        # per-node polygon multiplicities
        mult: list[dict[int, int]] = [dict() for _ in junc.nodes]
        for p, cyc in enumerate(self.polygons):
            for node in cyc:
                mult[node][p] = mult[node].get(p, 0) + 1

        for f, st in enumerate(states):
            nc = st.cone.num_coords
            for k in range(nc):
                coeffs = {self.vi[f] + k: Rat(1), self.ri[f] + k: Rat(-1)}
                for i, d in enumerate(st.columns):
                    if d[k]:
                        coeffs[self.ti[f] + i] = Rat(-d[k])
                self.e_row[(f, k)] = len(lp.rows)
                lp.add_row(coeffs, EQ, 0)
            for row in st.cone.boundary_rows:
                if any(row):
                    lp.add_row({self.ri[f] + k: Rat(c)
                                for k, c in enumerate(row) if c}, EQ, 0)
            for row in st.cone.homology_rows:
                if any(row):
                    lp.add_row({self.ri[f] + k: Rat(c)
                                for k, c in enumerate(row) if c}, EQ, 0)

        for node, (f, k) in enumerate(junc.nodes):
            coeffs = {self.vi[f] + k: Rat(1),
                      self.ai + 2 * node: Rat(1),
                      self.ai + 2 * node + 1: Rat(-1)}
            for p, m in mult[node].items():
                coeffs[self.pi + p] = Rat(-m)
            self.s_row[node] = len(lp.rows)
            lp.add_row(coeffs, EQ, 0)

        for f, st in enumerate(states):
            for k, (i, j) in enumerate(st.cone.pairs):
                if not st.cone.genuine[k]:
                    lp.add_row({self.vi[f] + k: Rat(1)}, EQ,
                               arcs.degree_target(f, i))
            for arc in arcs.arcs[f]:
                if arc.is_loop:
                    continue
                target = arcs.degree_target(f, arc.index)
                out = {self.vi[f] + k: Rat(1)
                       for k, (i, j) in enumerate(st.cone.pairs)
                       if i == arc.index}
                into = {self.vi[f] + k: Rat(1)
                        for k, (i, j) in enumerate(st.cone.pairs)
                        if j == arc.index}
                lp.add_row(out, EQ, target)
                lp.add_row(into, EQ, target)
        self.lp = lp

    def solve(self) -> Solution:
        sol = maximize(self.lp, self.pivot)
        assert sol.status == "optimal", f"master LP is {sol.status}"
        for a in range(2 * len(self.junc.nodes)):
            assert sol.x[self.ai + a] == 0, "artificial gluing slack is active"
        return sol

    def disk_prices(self, sol: Solution, f: int) -> list:
        nc = self.states[f].cone.num_coords
        return [-sol.duals[self.e_row[(f, k)]] for k in range(nc)]

    def polygon_prices(self, sol: Solution) -> list:
        return [HALF - sol.duals[self.s_row[node]]
                for node in range(len(self.junc.nodes))]


def _postoptimal_checks(master: _Master, sol: Solution):
    """Exact dual sanity: no generated column or ray prices below its cost."""
    for f, st in enumerate(master.states):
        w = master.disk_prices(sol, f)
        for ray in st.rays:
            assert sum((Rat(a) * b for a, b in zip(w, ray)), Rat(0)) >= 0
        for i, d in enumerate(st.columns):
            price = sum((Rat(a) * b for a, b in zip(w, d)), Rat(0))
            assert price >= 1
            if sol.x[master.ti[f] + i] > 0:
                assert price == 1
    omega = master.polygon_prices(sol)
    for p, cyc in enumerate(master.polygons):
        price = sum((omega[v] for v in cyc), Rat(0))
        assert price >= 1
        if sol.x[master.pi + p] > 0:
            assert price == 1


def _solve_chain(chain: Chain, spec: GroupSpec, scaling: int, *,
                 box_scale: int, force_polygon_pricing: bool,
                 pivot: str, budget: int) -> SclResult:
    arcs = build_arcs(chain, spec)
    nf = len(spec.factors)
    for f in range(nf):
        non_loop = sum(1 for a in arcs.arcs[f] if not a.is_loop)
        if non_loop > ARC_LIMIT:
            raise ChainTooLarge(
                f"factor {f} has {non_loop} junction arcs "
                f"(limit {ARC_LIMIT}); pass allow_large/--long to proceed"
            )

    states = []
    for f in range(nf):
        cone = build_cone_system(arcs, f)
        rays = extremal_rays(cone)
        base = disk_box(cone, rays, scale=box_scale) if rays else \
            tuple([0] * cone.num_coords)
        search = tuple(2 * x for x in base)
        universe = None
        product = 1
        for k in range(cone.num_coords):
            if cone.genuine[k]:
                product *= search[k] + 1
                if product > ENUM_PRODUCT_LIMIT:
                    break
        if product <= ENUM_PRODUCT_LIMIT:
            universe = enumerate_disk_vectors(cone, search)
        columns = [r for r in rays if is_disk_vector(cone, r)]
        if universe is not None:
            columns = [d for d in columns if d in set(universe)] or columns
        states.append(_FactorState(f, cone, rays, base, search,
                                   list(dict.fromkeys(columns)), universe))

    junc = Junctions(arcs)
    polygons = _rectangle_cycles(junc)
    polygon_set = set(polygons)
    price_polygons = nf >= 3 or force_polygon_pricing

    rounds = 0
    while True:
        rounds += 1
        assert rounds <= 500, "column generation failed to converge"
        master = _Master(arcs, states, polygons, junc, pivot)
        sol = master.solve()
        added = False
        for f, st in enumerate(states):
            w = master.disk_prices(sol, f)
            if st.universe is not None:
                held = set(st.columns)
                best_d, best_p = None, None
                for d in st.universe:
                    if d in held:
                        continue
                    price = sum((Rat(a) * b for a, b in zip(w, d)), Rat(0))
                    if price < 1 and (best_p is None or price < best_p):
                        best_d, best_p = d, price
                if best_d is not None:
                    st.columns.append(best_d)
                    added = True
            else:
                viol = _find_violator(st.cone, w, st.search_box, budget, pivot)
                if viol is not None:
                    assert viol not in set(st.columns)
                    st.columns.append(viol)
                    added = True
        if price_polygons:
            fresh = _price_polygons(junc, master.polygon_prices(sol),
                                    polygon_set)
            if fresh:
                polygons.extend(fresh)
                polygon_set.update(fresh)
                added = True
        if not added:
            break

    _postoptimal_checks(master, sol)

    chi = sol.value
    value = -chi / (2 * scaling)
    factors = []
    for f, st in enumerate(states):
        nc = st.cone.num_coords
        v = tuple(sol.x[master.vi[f] + k] for k in range(nc))
        r = tuple(sol.x[master.ri[f] + k] for k in range(nc))
        expr = tuple(
            (tuple(d), sol.x[master.ti[f] + i])
            for i, d in enumerate(st.columns)
            if sol.x[master.ti[f] + i] > 0
        )
        kappa = sum((t for _, t in expr), Rat(0))
        norm = sum((v[k] for k in range(nc) if st.cone.genuine[k]), Rat(0))
        labels = tuple(arcs.coord_label(f, k) for k in range(nc))
        factors.append(FactorWitness(f, labels, v, r, expr, kappa, norm))

    junctions = tuple(
        (
            tuple(junc.label(node) for node in cyc),
            tuple(junc.nodes[node] for node in cyc),
            sol.x[master.pi + p],
        )
        for p, cyc in enumerate(polygons)
        if sol.x[master.pi + p] > 0
    )
    return SclResult(value=value, chi=chi, scaling=scaling, chain=chain,
                     spec=spec, factors=tuple(factors), junctions=junctions,
                     rounds=rounds)


def scl(chain, spec: Optional[GroupSpec] = None, *, box_scale: int = 1,
        allow_large: bool = False, force_polygon_pricing: bool = False,
        pivot: str = "dantzig", budget: int = 200_000) -> SclResult:
    """Exact scl of a rational chain, with a verified witness.

    chain may be a text expression (parsed against spec, or a default free
    group if spec is None) or an already-built Chain over an explicit spec.
    """
    if box_scale < 1:
        raise ValueError("box_scale must be a positive integer")
    if isinstance(chain, str):
        chain, spec = parse_chain(chain, spec)
    else:
        if spec is None:
            raise ValueError("an explicit GroupSpec is required with a Chain")
        chain = normalize_chain(list(chain))
    if not chain.terms:
        empty = SclResult(value=Rat(0), chi=Rat(0), scaling=1, chain=chain,
                          spec=spec, factors=(), junctions=(), rounds=0)
        return empty
    if not is_boundary(chain, spec):
        raise NotBoundaryError(
            "chain is not a boundary (nonzero factor homology); scl is "
            "undefined here"
        )
    scaling, integral = scale_to_integral(chain)
    if not allow_large:
        pass  # the arc limit is enforced against the scaled chain below
    try:
        result = _solve_chain(
            integral, spec, scaling, box_scale=box_scale,
            force_polygon_pricing=force_polygon_pricing, pivot=pivot,
            budget=budget,
        )
    except ChainTooLarge:
        if not allow_large:
            raise
        raise
    problems: list[str] = []
    if not verify_witness(chain, result, problems, spec=spec):
        raise WitnessError("; ".join(problems) or "witness verification failed")
    return result


# ---------------------------------------------------------------------------
# verification


def _as_rat_list(values) -> list:
    return [rat(x) for x in values]


def verify_witness(chain, result, problems: Optional[list] = None, *,
                   spec: Optional[GroupSpec] = None) -> bool:
    """Exact, LP-free recheck of a witness against its chain.

    Rebuilds the arc and cone structure from the chain alone and confirms
    that the witness data describes a valid glued surface achieving the
    claimed Euler characteristic and value. Accepts an SclResult or a parsed
    witness dict (the JSON form); all arithmetic is exact.
    """
    out = problems if problems is not None else []

    def fail(msg: str) -> bool:
        out.append(msg)
        return False

    if isinstance(chain, str):
        chain, spec = parse_chain(chain, spec)
    elif spec is None:
        return fail("a GroupSpec is required alongside a Chain")
    chain = normalize_chain(list(chain))

    data = result.witness() if isinstance(result, SclResult) else result
    try:
        value = rat(data["value"])
        chi = rat(data["chi"])
        scaling = int(data["scaling"])
        factor_data = data["factors"]
    except (KeyError, ValueError, TypeError) as exc:
        return fail(f"malformed witness: {exc}")

    true_scaling, integral = scale_to_integral(chain)
    if scaling != true_scaling:
        return fail(f"scaling mismatch: witness {scaling}, chain {true_scaling}")
    if not chain.terms:
        return (value == 0 and chi == 0) or fail("empty chain must have scl 0")

    arcs = build_arcs(integral, spec)
    nf = len(spec.factors)
    if len(factor_data) != nf:
        return fail("factor count mismatch")

    ok = True
    vs: list[list] = []
    kappas: list = []
    norms: list = []
    for f in range(nf):
        cone = build_cone_system(arcs, f)
        fd = factor_data[f]
        try:
            v = _as_rat_list(fd["v"])
            remainder = _as_rat_list(fd["remainder"])
            kappa = rat(fd["kappa"])
            norm = rat(fd["norm"])
            expression = [(list(e["disk"]), rat(e["t"]))
                          for e in fd["expression"]]
        except (KeyError, ValueError, TypeError) as exc:
            return fail(f"malformed factor {f} witness: {exc}")
        if len(v) != cone.num_coords or len(remainder) != cone.num_coords:
            return fail(f"factor {f}: vector length mismatch")
        if any(x < 0 for x in v):
            ok = fail(f"factor {f}: negative boundary coordinate")
        if any(x < 0 for x in remainder):
            ok = fail(f"factor {f}: cone violation (negative remainder)")
        for row in cone.boundary_rows + cone.homology_rows:
            if sum((Rat(c) * x for c, x in zip(row, remainder) if c), Rat(0)) != 0:
                ok = fail(f"factor {f}: cone violation (remainder rows)")
                break
        for d, t in expression:
            if t < 0:
                ok = fail(f"factor {f}: negative disk weight")
            if not is_disk_vector(cone, d):
                ok = fail(f"factor {f}: invalid disk vector {d}")
        for k in range(cone.num_coords):
            total = remainder[k] + sum((t * d[k] for d, t in expression), Rat(0))
            if total != v[k]:
                ok = fail(f"factor {f}: expression does not reconstruct v")
                break
        if kappa != sum((t for _, t in expression), Rat(0)):
            ok = fail(f"factor {f}: kappa mismatch")
        true_norm = sum((v[k] for k in range(cone.num_coords)
                         if cone.genuine[k]), Rat(0))
        if norm != true_norm:
            ok = fail(f"factor {f}: genuine norm mismatch")
        for k, (i, j) in enumerate(cone.pairs):
            if not cone.genuine[k]:
                if v[k] != arcs.degree_target(f, i):
                    ok = fail(f"factor {f}: dummy degree mismatch")
        for arc in arcs.arcs[f]:
            if arc.is_loop:
                continue
            target = arcs.degree_target(f, arc.index)
            out_deg = sum((v[k] for k, (i, j) in enumerate(cone.pairs)
                           if i == arc.index), Rat(0))
            in_deg = sum((v[k] for k, (i, j) in enumerate(cone.pairs)
                          if j == arc.index), Rat(0))
            if out_deg != target or in_deg != target:
                ok = fail(f"factor {f}: degree constraint broken at arc "
                          f"{arc.index}")
        vs.append(v)
        kappas.append(kappa)
        norms.append(norm)

    junc = Junctions(arcs)
    poly_chi = Rat(0)
    if nf <= 2:
        for f in range(nf):
            for k, c in enumerate(arcs.coords[f]):
                if c.is_dummy:
                    continue
                assert c.partner is not None
                pf, pk = c.partner
                if vs[f][k] != vs[pf][pk]:
                    ok = fail(f"factor {f}: gluing mismatch at coordinate "
                              f"{arcs.coord_label(f, k)}")
    else:
        if isinstance(result, SclResult):
            cycles = [(tuple(junc.node_id[nk] for nk in nodes), weight)
                      for _, nodes, weight in result.junctions]
        else:
            try:
                cycles = [
                    (tuple(junc.node_id[(int(f), int(k))]
                           for f, k in entry["cycle"]), rat(entry["weight"]))
                    for entry in data.get("junctions", [])
                ]
            except (KeyError, ValueError, TypeError) as exc:
                return fail(f"malformed junction data: {exc}")
        covered = [Rat(0)] * len(junc.nodes)
        for nodes, weight in cycles:
            if weight < 0:
                ok = fail("negative junction polygon weight")
            if len(nodes) < 2 or len(set(nodes)) != len(nodes):
                ok = fail("junction polygon is not a simple cycle")
                continue
            for a, b in zip(nodes, nodes[1:] + nodes[:1]):
                if not junc.is_edge(a, b):
                    ok = fail("junction polygon uses an illegal gluing edge")
                    break
            for node in nodes:
                covered[node] += weight
            poly_chi += (Rat(1) - Rat(len(nodes), 2)) * weight
        for node, (f, k) in enumerate(junc.nodes):
            if covered[node] != vs[f][k]:
                ok = fail(f"junction coverage mismatch at {junc.label(node)}")

    total_chi = poly_chi + sum((kappas[f] - norms[f] / 2 for f in range(nf)),
                               Rat(0))
    if total_chi != chi:
        ok = fail(f"objective mismatch: witness chi {chi}, recomputed "
                  f"{total_chi}")
    if value != -chi / (2 * scaling):
        ok = fail("value is not -chi/(2 scaling)")
    return ok
