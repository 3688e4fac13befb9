"""Disk vectors, the sail function of a cone, and its piecewise profile.

A disk vector is an integral point of a factor's cone with connected support
and no dummy component: it encodes a planar piece of surface whose boundary
word is trivial in the factor, so it contributes +1 to Euler characteristic
before corner corrections. The sail function kappa(v) is the best total disk
weight extractable from v while leaving a remainder inside the cone; the
corrected Euler characteristic of boundary data v is then
chi_o(v) = kappa(v) - |v|/2 with |v| the genuine-coordinate total.

kappa is concave and piecewise linear on the cone; klein_profile computes its
exact breakpoints along a segment using dual functionals of the kappa linear
program as supporting lines.

Dummy coordinates are pinned to zero throughout the disk search: a dummy pair
is the only edge at its loop arc, so any support containing one alongside other
coordinates is disconnected, and a dummy pair alone carries a nonzero lattice
element. Neither can be a disk vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .arcs import is_connected, support_graph
from .cones import ConeSystem, extremal_rays
from .ratlp import LinearProgram, maximize
from .rationals import Rat


class EnumerationOverflow(RuntimeError):
    """The bounded search exceeded its node budget; results would be partial."""


@dataclass(frozen=True)
class KleinModel:
    """A factor's disk vectors within an explicit componentwise bound."""

    factor: int
    disks: tuple[tuple[int, ...], ...]
    box: tuple[int, ...]


def disk_box(cone: ConeSystem, rays: Optional[Sequence[Sequence[int]]] = None,
             scale: int = 1) -> tuple[int, ...]:
    """Componentwise sum of the primitive extremal rays, times scale.

    Every generator needed to certify sail values lives inside the zonotope
    spanned by the primitive rays, and the box is that zonotope's bounding box.
    """
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    if rays is None:
        rays = extremal_rays(cone)
    box = [0] * cone.num_coords
    for r in rays:
        for i, x in enumerate(r):
            box[i] += x
    return tuple(x * scale for x in box)


def is_disk_vector(cone: ConeSystem, v: Sequence[int]) -> bool:
    """Integral, nonnegative, nonzero, in the cone, connected, no dummy part."""
    if len(v) != cone.num_coords:
        return False
    if any(getattr(x, "denominator", 1) != 1 for x in v):
        return False
    if any(x < 0 for x in v):
        return False
    if not any(v):
        return False
    for k, g in enumerate(cone.genuine):
        if not g and v[k] != 0:
            return False
    for row in cone.boundary_rows + cone.homology_rows:
        if sum(r * x for r, x in zip(row, v) if r) != 0:
            return False
    return is_connected(support_graph(cone.pairs, v))


def enumerate_disk_vectors(cone: ConeSystem, box: Sequence[int],
                           node_cap: int = 5_000_000) -> list[tuple[int, ...]]:
    """All disk vectors v with v <= box componentwise, in lexicographic order.

    Depth-first assignment over the genuine coordinates in index order, pruned
    by exact interval tests on every equality row: a partial assignment dies as
    soon as the residual of some row cannot be cancelled by any completion
    within the box.
    """
    idx = [k for k in range(cone.num_coords) if cone.genuine[k]]
    rows = [r for r in cone.boundary_rows + cone.homology_rows if any(r)]
    nrows = len(rows)
    depth_max = len(idx)
    # suffix interval bounds: contribution achievable by coordinates idx[d:]
    suff_lo = [[0] * (depth_max + 1) for _ in range(nrows)]
    suff_hi = [[0] * (depth_max + 1) for _ in range(nrows)]
    for ri, row in enumerate(rows):
        for d in range(depth_max - 1, -1, -1):
            c = idx[d]
            contrib = row[c] * box[c]
            suff_lo[ri][d] = suff_lo[ri][d + 1] + min(0, contrib)
            suff_hi[ri][d] = suff_hi[ri][d + 1] + max(0, contrib)

    found: list[tuple[int, ...]] = []
    values = [0] * cone.num_coords
    residual = [0] * nrows
    nodes = 0

    def descend(d: int):
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise EnumerationOverflow(
                f"disk enumeration exceeded {node_cap} nodes"
            )
        for ri in range(nrows):
            need = -residual[ri]
            if need < suff_lo[ri][d] or need > suff_hi[ri][d]:
                return
        if d == depth_max:
            if any(values) and all(r == 0 for r in residual):
                if is_connected(support_graph(cone.pairs, values)):
                    found.append(tuple(values))
            return
        c = idx[d]
        for x in range(box[c] + 1):
            values[c] = x
            if x:
                for ri in range(nrows):
                    residual[ri] += rows[ri][c]
            descend(d + 1)
        for ri in range(nrows):
            residual[ri] -= rows[ri][c] * box[c]
        values[c] = 0

    descend(0)
    found.sort()
    return found


def build_klein_model(cone: ConeSystem, box: Optional[Sequence[int]] = None,
                      scale: int = 1) -> KleinModel:
    if box is None:
        box = disk_box(cone, scale=scale)
    return KleinModel(cone.factor, tuple(enumerate_disk_vectors(cone, box)), tuple(box))


def genuine_norm(cone: ConeSystem, v: Sequence):
    """Total weight on genuine coordinates (each contributes two corners)."""
    return sum((x for x, g in zip(v, cone.genuine) if g), Rat(0))


def _kappa_lp(disks: Sequence[Sequence[int]], cone: ConeSystem, v: Sequence):
    """max total disk weight with cone remainder; returns (value, dual per coord).

    Variables are disk weights then the remainder vector; rows say the
    expression reconstructs v coordinatewise. The remainder stays in the cone
    automatically (v and the disks all satisfy the equality rows), so only the
    reconstruction rows are needed and their duals form the supporting
    functional of the sail at v.
    """
    nd, nc = len(disks), cone.num_coords
    lp = LinearProgram(nd + nc)
    lp.set_objective({i: Rat(1) for i in range(nd)})
    for k in range(nc):
        coeffs = {nd + k: Rat(1)}
        for i, d in enumerate(disks):
            if d[k]:
                coeffs[i] = Rat(d[k])
        lp.add_row(coeffs, "=", v[k])
    sol = maximize(lp)
    if sol.status != "optimal":
        raise AssertionError(f"kappa program came back {sol.status}")
    return sol.value, sol.duals


def klein_value(model: KleinModel, cone: ConeSystem, v: Sequence):
    """Sail value kappa(v) relative to the model's disk set."""
    v = [Rat(x) for x in v]
    if not cone.contains(v):
        raise ValueError("point is not in the cone")
    value, _ = _kappa_lp(model.disks, cone, v)
    return value


def chi_o(model: KleinModel, cone: ConeSystem, v: Sequence):
    """Corner-corrected Euler characteristic kappa(v) - |v|/2."""
    return klein_value(model, cone, v) - genuine_norm(cone, v) / 2


@dataclass(frozen=True)
class ProfilePiece:
    x_lo: object
    x_hi: object
    value_lo: object
    value_hi: object

    def slope(self):
        return (self.value_hi - self.value_lo) / (self.x_hi - self.x_lo)


@dataclass(frozen=True)
class Profile:
    """Exact piecewise-linear description of kappa along a segment."""

    pieces: tuple[ProfilePiece, ...]

    def breakpoints(self) -> list:
        pts = [self.pieces[0].x_lo]
        for p in self.pieces:
            pts.append(p.x_hi)
        return pts

    def slopes(self) -> list:
        return [p.slope() for p in self.pieces]

    def value_at(self, x):
        for p in self.pieces:
            if p.x_lo <= x <= p.x_hi:
                return p.value_lo + p.slope() * (x - p.x_lo)
        raise ValueError("parameter outside the profiled segment")


def klein_profile(model: KleinModel, cone: ConeSystem,
                  v_start: Sequence, v_end: Sequence,
                  max_depth: int = 64) -> Profile:
    """Breakpoints and slopes of x -> kappa((1-x) v_start + x v_end) on [0,1].

    At each probed parameter the kappa program's dual functional y gives a line
    l(x) = y . v(x) that over-estimates kappa everywhere on the segment and is
    tight at the probe (weak/strong duality). Two probes whose lines agree at
    both ends bound a single linear piece; otherwise the lines cross inside the
    interval and the crossing is either the one breakpoint between two pieces
    or a point to recurse on. This refines directly to non-dyadic breakpoints,
    which plain interval bisection would never reach exactly.
    """
    v_start = [Rat(x) for x in v_start]
    v_end = [Rat(x) for x in v_end]
    if not cone.contains(v_start) or not cone.contains(v_end):
        raise ValueError("segment endpoint is not in the cone")
    delta = [b - a for a, b in zip(v_start, v_end)]

    def at(x):
        return [a + x * d for a, d in zip(v_start, delta)]

    def solve(x):
        value, duals = _kappa_lp(model.disks, cone, at(x))
        # line through the duals: l(t) = duals . v(t), affine in t
        base = sum((y * a for y, a in zip(duals, v_start)), Rat(0))
        slope = sum((y * d for y, d in zip(duals, delta)), Rat(0))
        assert base + slope * x == value, "dual line must be tight at its probe"
        return value, (base, slope)

    pieces: list[ProfilePiece] = []

    def emit(a, ka, b, kb):
        pieces.append(ProfilePiece(a, b, ka, kb))

    def refine(a, ka, la, b, kb, lb, depth):
        if depth > max_depth:
            raise RuntimeError("profile refinement exceeded its depth budget")
        # does either supporting line match kappa across the whole interval?
        if la[0] + la[1] * b == kb:
            emit(a, ka, b, kb)
            return
        if lb[0] + lb[1] * a == ka:
            emit(a, ka, b, kb)
            return
        denom = lb[1] - la[1]
        assert denom != 0, "distinct supporting lines must cross"
        x = (la[0] - lb[0]) / denom
        assert a < x < b, "supporting lines must cross inside the interval"
        kx, lx = solve(x)
        crossing_value = la[0] + la[1] * x
        if kx == crossing_value:
            emit(a, ka, x, kx)
            emit(x, kx, b, kb)
            return
        refine(a, ka, la, x, kx, lx, depth + 1)
        refine(x, kx, lx, b, kb, lb, depth + 1)

    k0, l0 = solve(Rat(0))
    k1, l1 = solve(Rat(1))
    refine(Rat(0), k0, l0, Rat(1), k1, l1, 0)

    # merge collinear neighbours so breakpoints are genuine slope changes
    merged: list[ProfilePiece] = []
    for p in pieces:
        if merged and merged[-1].slope() == p.slope():
            last = merged.pop()
            p = ProfilePiece(last.x_lo, p.x_hi, last.value_lo, p.value_hi)
        merged.append(p)
    return Profile(tuple(merged))
