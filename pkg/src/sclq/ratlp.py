"""Dense exact-rational linear programming by the two-phase simplex method.

All variables are nonnegative; rows are <=, =, or >= with rational data.
Pivoting uses Bland's rule by default (finite termination); the Dantzig rule
is available and falls back to Bland automatically after a run of degenerate
pivots. Solutions carry exact primal values and exact duals, one per row, with
the convention value = duals . rhs at optimality for a maximization.

Everything is deterministic: same program, same pivots, same answer, with no
floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .rationals import Rat

LE, EQ, GE = "<=", "=", ">="

_DEGENERATE_LIMIT = 60  # Dantzig stalling threshold before Bland takes over


@dataclass
class LinearProgram:
    """max objective . x subject to rows, x >= 0."""

    num_vars: int
    objective: list = field(default_factory=list)
    rows: list = field(default_factory=list)  # (dense coeffs, rel, rhs)

    def __post_init__(self):
        if not self.objective:
            self.objective = [Rat(0)] * self.num_vars
        elif len(self.objective) != self.num_vars:
            raise ValueError("objective length mismatch")

    def set_objective(self, coeffs: Mapping[int, object]):
        self.objective = [Rat(0)] * self.num_vars
        for j, c in coeffs.items():
            self.objective[j] = Rat(c)

    def add_row(self, coeffs, rel: str, rhs):
        if rel not in (LE, EQ, GE):
            raise ValueError(f"bad relation {rel!r}")
        dense = [Rat(0)] * self.num_vars
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        for j, c in items:
            if j >= self.num_vars:
                raise IndexError("coefficient for unknown variable")
            dense[j] = Rat(c)
        self.rows.append((dense, rel, Rat(rhs)))


@dataclass
class Solution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Optional[list] = None
    value: Optional[object] = None
    duals: Optional[list] = None
    pivots: int = 0


class _Tableau:
    """Row-reduced simplex tableau over exact rationals."""

    def __init__(self, lp: LinearProgram):
        m = len(lp.rows)
        n = lp.num_vars
        self.m, self.n = m, n
        self.body: list[list] = []
        self.rhs: list = []
        self.row_sign: list[int] = []  # -1 where the stored row was negated
        rels = []
        for dense, rel, b in lp.rows:
            row = list(dense)
            sign = 1
            if b < 0:  # keep rhs nonnegative so the start basis is feasible
                row = [-c for c in row]
                b = -b
                rel = {LE: GE, GE: LE, EQ: EQ}[rel]
                sign = -1
            self.body.append(row)
            self.rhs.append(b)
            self.row_sign.append(sign)
            rels.append(rel)

        zero = Rat(0)
        one = Rat(1)
        # slack / surplus columns
        self.slack_for_row: dict[int, int] = {}
        col = n
        for i, rel in enumerate(rels):
            if rel in (LE, GE):
                for k in range(m):
                    self.body[k].append(one if k == i else zero)
                    if k == i and rel == GE:
                        self.body[k][-1] = -one
                self.slack_for_row[i] = col
                col += 1
        # artificials for = and >= rows; slack is the start basis for <=
        self.artificial: list[int] = []
        self.identity_col: list[int] = [0] * m  # read duals from these
        self.basis: list[int] = [0] * m
        for i, rel in enumerate(rels):
            if rel == LE:
                self.basis[i] = self.slack_for_row[i]
                self.identity_col[i] = self.slack_for_row[i]
            else:
                for k in range(m):
                    self.body[k].append(one if k == i else zero)
                self.artificial.append(col)
                self.basis[i] = col
                self.identity_col[i] = col
                col += 1
        self.ncols = col
        self.obj = [zero] * col  # reduced cost row
        self.val = zero
        self.pivots = 0

    def _pivot(self, prow: int, pcol: int):
        row = self.body[prow]
        piv = row[pcol]
        if piv != 1:
            self.body[prow] = row = [c / piv for c in row]
            self.rhs[prow] = self.rhs[prow] / piv
        rrhs = self.rhs[prow]
        for i in range(self.m):
            if i == prow:
                continue
            f = self.body[i][pcol]
            if f:
                target = self.body[i]
                self.body[i] = [a - f * b for a, b in zip(target, row)]
                self.rhs[i] = self.rhs[i] - f * rrhs
        f = self.obj[pcol]
        if f:
            self.obj = [a - f * b for a, b in zip(self.obj, row)]
            self.val = self.val + f * rrhs
        self.basis[prow] = pcol
        self.pivots += 1

    def _set_objective(self, costs: Sequence):
        """Recompute the reduced-cost row for the current basis."""
        zero = Rat(0)
        self.obj = list(costs) + [zero] * (self.ncols - len(costs))
        self.val = zero
        for i, bj in enumerate(self.basis):
            cb = self.obj[bj]
            # zero out the basic columns of the reduced-cost row
            if cb:
                row = self.body[i]
                self.obj = [a - cb * b for a, b in zip(self.obj, row)]
                self.val = self.val + cb * self.rhs[i]

    def _run(self, enterable, pivot_rule: str) -> str:
        degenerate_run = 0
        rule = pivot_rule
        while True:
            entering = -1
            if rule == "dantzig":
                best = None
                for j in enterable:
                    rj = self.obj[j]
                    if rj > 0 and (best is None or rj > best):
                        best, entering = rj, j
            else:
                for j in enterable:
                    if self.obj[j] > 0:
                        entering = j
                        break
            if entering < 0:
                return "optimal"
            # ratio test, Bland tie-break on the leaving variable index
            prow = -1
            best_ratio = None
            for i in range(self.m):
                a = self.body[i][entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[prow])
                    ):
                        best_ratio = ratio
                        prow = i
            if prow < 0:
                return "unbounded"
            if best_ratio == 0:
                degenerate_run += 1
                if rule == "dantzig" and degenerate_run > _DEGENERATE_LIMIT:
                    rule = "bland"
            else:
                degenerate_run = 0
            self._pivot(prow, entering)


def maximize(lp: LinearProgram, pivot: str = "bland") -> Solution:
    """Solve max objective . x, x >= 0, subject to lp.rows."""
    if pivot not in ("bland", "dantzig"):
        raise ValueError(f"unknown pivot rule {pivot!r}")
    tab = _Tableau(lp)
    zero = Rat(0)

    if tab.artificial:
        costs = [zero] * tab.ncols
        for j in tab.artificial:
            costs[j] = Rat(-1)
        tab._set_objective(costs)
        enterable = [j for j in range(tab.ncols)]
        status = tab._run(enterable, pivot)
        if status != "optimal" or tab.val != 0:
            return Solution("infeasible", pivots=tab.pivots)
        # drive basic artificials out where a structural pivot exists
        art = set(tab.artificial)
        for i in range(tab.m):
            if tab.basis[i] in art:
                for j in range(tab.ncols):
                    if j not in art and tab.body[i][j] != 0:
                        tab._pivot(i, j)
                        break
                # if none: the row is a redundant identity, harmless to keep

    costs = [Rat(c) for c in lp.objective]
    tab._set_objective(costs)
    art = set(tab.artificial)
    enterable = [j for j in range(tab.ncols) if j not in art]
    status = tab._run(enterable, pivot)
    if status == "unbounded":
        return Solution("unbounded", pivots=tab.pivots)

    x = [zero] * lp.num_vars
    for i, bj in enumerate(tab.basis):
        if bj < lp.num_vars:
            x[bj] = tab.rhs[i]
    duals = [
        -tab.obj[tab.identity_col[i]] * tab.row_sign[i] for i in range(tab.m)
    ]
    return Solution("optimal", x=x, value=tab.val, duals=duals, pivots=tab.pivots)


def maximize_min(lp: LinearProgram, pieces: Sequence[tuple[Mapping[int, object], object]],
                 pivot: str = "bland") -> Solution:
    """max [objective . x + min over pieces of (coeffs . x + const)], x >= 0.

    Adds z = zp - zm (two nonnegative variables, so the min may go negative)
    bounded above by every affine piece. The returned solution is for the
    extended program; x gains two final entries (zp, zm).
    """
    if not pieces:
        raise ValueError("maximize_min needs at least one piece")
    zp, zm = lp.num_vars, lp.num_vars + 1
    ext = LinearProgram(lp.num_vars + 2)
    ext.objective = [Rat(c) for c in lp.objective] + [Rat(1), Rat(-1)]
    for dense, rel, rhs in lp.rows:
        ext.add_row({j: c for j, c in enumerate(dense) if c != 0}, rel, rhs)
    for coeffs, const in pieces:
        row = {zp: Rat(1), zm: Rat(-1)}
        for j, c in coeffs.items():
            row[j] = row.get(j, Rat(0)) - Rat(c)
        ext.add_row(row, LE, const)
    return maximize(ext, pivot)
