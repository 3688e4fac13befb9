"""Nonnegative solution cones on arc pairs, and their extremal rays.

For one factor, admissible boundary data is a nonnegative vector over the arc
pairs satisfying two families of integer equalities: flow balance at every arc
(each arc is entered as often as it is left) and vanishing of the total lattice
element carried by the boundary (each pair carries half the sum of its two arc
elements; rows are stored doubled to stay integral). Extremal rays of the cone
are computed by incremental double description over exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .arcs import ArcStructure
from .rationals import Rat


@dataclass(frozen=True)
class ConeSystem:
    """v >= 0, boundary_rows . v = 0, homology_rows . v = 0.

    Coordinates are the factor's arc pairs in ArcStructure order (pairs[k] is
    the (first, second) arc index pair of coordinate k). The homology rows are
    doubled (entry = elem(first) + elem(second)) so all data is integral; the
    kernel is unchanged.
    """

    factor: int
    num_coords: int
    pairs: tuple[tuple[int, int], ...]
    genuine: tuple[bool, ...]
    boundary_rows: tuple[tuple[int, ...], ...]
    homology_rows: tuple[tuple[int, ...], ...]

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.num_coords:
            return False
        if any(x < 0 for x in v):
            return False
        for row in self.boundary_rows + self.homology_rows:
            if sum(r * x for r, x in zip(row, v) if r) != 0:
                return False
        return True


def build_cone_system(arcs: ArcStructure, factor: int) -> ConeSystem:
    coords = arcs.coords[factor]
    n = len(coords)
    num_arcs = len(arcs.arcs[factor])
    boundary = []
    for a in range(num_arcs):
        row = [0] * n
        for k, c in enumerate(coords):
            if c.first == a:
                row[k] += 1
            if c.second == a:
                row[k] -= 1
        boundary.append(tuple(row))
    rank = arcs.spec.rank(factor)
    homology = []
    for g in range(rank):
        row = [0] * n
        for k, c in enumerate(coords):
            row[k] = (
                arcs.arcs[factor][c.first].element[g]
                + arcs.arcs[factor][c.second].element[g]
            )
        homology.append(tuple(row))
    return ConeSystem(
        factor=factor,
        num_coords=n,
        pairs=tuple((c.first, c.second) for c in coords),
        genuine=tuple(not c.is_dummy for c in coords),
        boundary_rows=tuple(boundary),
        homology_rows=tuple(homology),
    )


# ---------------------------------------------------------------------------
# double description


def _primitive(vec: list[int]) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g > 1:
        return tuple(x // g for x in vec)
    return tuple(vec)


def double_description(rows: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Extremal rays of {v >= 0 : row . v = 0 for every row}.

    Incremental insertion starting from the coordinate orthant. Adjacency of a
    positive/negative ray pair is the combinatorial test (no third ray's
    support inside the pair's union), with supports kept as bitmasks. Output
    rays are primitive integer vectors, sorted lexicographically.
    """
    rays: list[tuple[int, ...]] = [
        tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)
    ]
    masks: list[int] = [1 << j for j in range(dim)]

    for row in rows:
        if not any(row):
            continue
        vals = [sum(r * x for r, x in zip(row, ray) if r) for ray in rays]
        zero_idx = [i for i, v in enumerate(vals) if v == 0]
        pos_idx = [i for i, v in enumerate(vals) if v > 0]
        neg_idx = [i for i, v in enumerate(vals) if v < 0]
        new_rays = [rays[i] for i in zero_idx]
        new_masks = [masks[i] for i in zero_idx]
        seen = set(new_rays)
        for ip in pos_idx:
            for im in neg_idx:
                union = masks[ip] | masks[im]
                adjacent = True
                for k, mk in enumerate(masks):
                    if k != ip and k != im and mk | union == union:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vm = vals[ip], vals[im]
                combo = [
                    vp * b - vm * a for a, b in zip(rays[ip], rays[im])
                ]
                ray = _primitive(combo)
                if ray not in seen:
                    seen.add(ray)
                    new_rays.append(ray)
                    new_masks.append(
                        sum(1 << j for j, x in enumerate(ray) if x != 0)
                    )
        rays, masks = new_rays, new_masks
    return sorted(rays)


def extremal_rays(cone: ConeSystem) -> list[tuple[int, ...]]:
    """Primitive generators of the cone's extreme rays, lexicographic order."""
    rows = list(cone.boundary_rows) + list(cone.homology_rows)
    return double_description(rows, cone.num_coords)


def ray_memberships(cone: ConeSystem, rays: Sequence[Sequence[int]]) -> None:
    """Assert every listed ray lies in the cone (cheap internal sanity check)."""
    for r in rays:
        if not cone.contains([Rat(x) for x in r]):
            raise AssertionError(f"ray {r} escapes its cone")
