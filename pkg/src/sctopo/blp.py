"""Exact joint edge/triangle selection as a binary linear program.

The problem: choose binary indicators s1 (edges) and s2 (triangles) to
minimize ``h1 @ s1 + h2 @ s2`` subject to cardinality floors
``sum(s1) >= c1``, ``sum(s2) >= c2`` and the requirement that a selected
triangle brings all three of its boundary edges with it.

The inclusion requirement is stored per face, ``s2[t] <= s1[e]``, which
has the same binary feasible set as the aggregated form
``s1 >= alpha * B2plus @ s2`` for any ``0 < alpha <= 1/(n0 - 2)`` but is a
tighter relaxation, so the LP bounds used for branch and bound are
stronger.  ``alpha`` is kept on the instance as metadata so the
aggregated form can still be checked verbatim.

``solve`` runs best-first branch and bound on LP relaxations produced by
:mod:`sctopo.simplex_lp`, generating violated inclusion rows lazily (the
full set is 3 * n_triangles rows; a handful are ever active).
``oracle_enumerate`` is an independent brute-force reference used by the
test suite; it shares no code with ``solve`` beyond the instance type.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from itertools import combinations
from math import comb, inf

import numpy as np

from .complexes import Selection
from .simplex_lp import BASIC, extend_binv_for_new_rows, solve_lp

_PRUNE_REL = 1e-9  # pruning slack, relative; far tighter than the gap certificate
_INT_TOL = 1e-6
_ROW_TOL = 1e-9


@dataclass(frozen=True)
class BlpInstance:
    """Costs, cardinality floors and triangle/edge incidence of one problem."""

    n_edges: int
    n_triangles: int
    h1: np.ndarray
    h2: np.ndarray
    c1: int
    c2: int
    alpha: float
    triangle_edges: np.ndarray  # (n_triangles, 3) edge ids of each face


@dataclass
class BlpSolution:
    selection: Selection | None
    objective: float
    lower_bound: float
    status: str  # "optimal" | "infeasible" | "node_limit"
    nodes_explored: int
    wall_time: float


def build_joint_instance(cx, costs, c1, c2, alpha=None):
    c1, c2 = int(c1), int(c2)
    if c1 < 0 or c2 < 0:
        raise ValueError("cardinality floors must be nonnegative")
    if alpha is None:
        alpha = 1.0 / (cx.n0 - 2)
    if not 0.0 < alpha <= 1.0 / (cx.n0 - 2):
        raise ValueError(f"alpha must lie in (0, 1/(n0-2)]; got {alpha}")
    if costs.h1.size != cx.n_edges or costs.h2.size != cx.n_triangles:
        raise ValueError("cost vectors do not match the candidate complex")
    return BlpInstance(
        n_edges=cx.n_edges,
        n_triangles=cx.n_triangles,
        h1=np.asarray(costs.h1, dtype=float),
        h2=np.asarray(costs.h2, dtype=float),
        c1=c1,
        c2=c2,
        alpha=float(alpha),
        triangle_edges=cx.triangle_edges,
    )


class _RowPool:
    """Cardinality rows plus lazily generated inclusion rows, shared tree-wide."""

    def __init__(self, instance):
        n1, n2 = instance.n_edges, instance.n_triangles
        self.n1 = n1
        self.n = n1 + n2
        self.tri_edges = instance.triangle_edges
        cap = 64
        self.A = np.zeros((cap, self.n))
        self.b = np.zeros(cap)
        self.m = 0
        self.keys = set()
        row = np.zeros(self.n)
        row[:n1] = -1.0
        self._append(row, -float(instance.c1))
        row = np.zeros(self.n)
        row[n1:] = -1.0
        self._append(row, -float(instance.c2))

    def _append(self, row, rhs):
        if self.m == self.b.size:
            self.A = np.vstack([self.A, np.zeros_like(self.A)])
            self.b = np.concatenate([self.b, np.zeros_like(self.b)])
        self.A[self.m] = row
        self.b[self.m] = rhs
        self.m += 1

    def add_violated(self, x):
        """Append inclusion rows s2[t] - s1[e] <= 0 violated at x; count added."""
        x1 = x[: self.n1]
        x2 = x[self.n1 :]
        gaps = x2[:, None] - x1[self.tri_edges]
        added = 0
        for t, slot in np.argwhere(gaps > _ROW_TOL):
            key = (int(t), int(slot))
            if key in self.keys:
                continue
            self.keys.add(key)
            row = np.zeros(self.n)
            row[self.n1 + int(t)] = 1.0
            row[int(self.tri_edges[t, slot])] = -1.0
            self._append(row, 0.0)
            added += 1
        return added


def _solve_node(pool, c, lower, upper, basis, vstat):
    """LP over the pool, regenerating violated inclusion rows until clean."""
    binv = None  # rebuilt from the basis on the first call
    warm = basis is not None
    while True:
        res = solve_lp(c, pool.A[: pool.m], pool.b[: pool.m], lower, upper,
                       basis=basis, vstat=vstat, binv=binv)
        if res.status == "infeasible" and warm:
            # a numerically drifted warm basis could misreport; certify cold
            warm = False
            basis = vstat = binv = None
            continue
        if res.status != "optimal":
            return res
        m_old = pool.m
        if pool.add_violated(res.x) == 0:
            return res
        k = pool.m - m_old
        n = pool.n
        basis = np.concatenate([res.basis, np.arange(n + m_old, n + pool.m)])
        vstat = np.concatenate([res.vstat, np.full(k, BASIC, dtype=np.int8)])
        binv = extend_binv_for_new_rows(res.binv, pool.A[m_old : pool.m, :n],
                                        res.basis, n)
        warm = True


def _feasible_exact(instance, s1, s2):
    if int(s1.sum()) < instance.c1 or int(s2.sum()) < instance.c2:
        return False
    sel_t = np.flatnonzero(s2)
    return bool(np.all(s1[instance.triangle_edges[sel_t]] == 1))


def solve(instance, node_limit=10_000_000, gap_tol=1e-6, warm_start=None):
    """Best-first branch and bound; exact up to the stated tolerances.

    ``warm_start`` seeds the incumbent with a known feasible selection
    (it is ignored if infeasible).  Returns status ``"node_limit"`` with
    the incumbent and a still-valid lower bound when the node budget runs
    out, so the result is usable as an anytime answer.
    """
    t0 = time.perf_counter()
    n1, n2 = instance.n_edges, instance.n_triangles
    n = n1 + n2
    if instance.c1 > n1 or instance.c2 > n2:
        return BlpSolution(None, inf, inf, "infeasible", 0,
                           time.perf_counter() - t0)

    c = np.concatenate([instance.h1, instance.h2])
    pool = _RowPool(instance)

    inc_sel = None
    inc_obj = inf
    if warm_start is not None:
        s1 = np.asarray(warm_start.s1, dtype=np.int8)
        s2 = np.asarray(warm_start.s2, dtype=np.int8)
        if s1.size == n1 and s2.size == n2 and _feasible_exact(instance, s1, s2):
            inc_sel = warm_start
            inc_obj = float(instance.h1 @ s1 + instance.h2 @ s2)

    def prune_at():
        # nodes with bound at or above this cannot improve the incumbent
        if inc_sel is None:
            return inf
        return inc_obj - min(_PRUNE_REL, gap_tol) * max(1.0, abs(inc_obj))

    # heap of (bound, seq, lower, upper, basis, vstat); bounds stored as int8
    seq = 0
    heap = [(0.0, seq, np.zeros(n, dtype=np.int8), np.ones(n, dtype=np.int8),
             None, None)]
    explored = 0
    lb_cap = inf  # min bound over pruned subtrees
    status = "optimal"

    while heap:
        bound, _, lo8, up8, basis, vstat = heapq.heappop(heap)
        if bound >= prune_at():
            # best-first order: every open node is at least this bad
            lb_cap = min(lb_cap, bound)
            break
        if explored >= node_limit:
            lb_cap = min(lb_cap, bound)
            status = "node_limit"
            break
        explored += 1

        lower = lo8.astype(float)
        upper = up8.astype(float)
        if basis is not None and basis.size < pool.m:
            # rows generated since this snapshot was taken: slacks enter basic
            extra = np.arange(n + basis.size, n + pool.m)
            basis = np.concatenate([basis, extra])
            vstat = np.concatenate([vstat, np.full(extra.size, BASIC, np.int8)])
        res = _solve_node(pool, c, lower, upper, basis, vstat)
        if res.status == "infeasible":
            continue
        if res.bound >= prune_at():
            lb_cap = min(lb_cap, res.bound)
            continue

        x = res.x
        frac = np.minimum(np.abs(x), np.abs(1.0 - x))
        free = lo8 < up8
        if res.status == "optimal" and (frac[free].max(initial=0.0) <= _INT_TOL):
            s_all = (x > 0.5).astype(np.int8)
            s_all[~free] = lo8[~free]  # fixed vars take their exact value
            s1, s2 = s_all[:n1], s_all[n1:]
            if _feasible_exact(instance, s1, s2):
                obj = float(instance.h1 @ s1 + instance.h2 @ s2)
                if obj < inc_obj:
                    inc_obj = obj
                    inc_sel = Selection(s1=s1, s2=s2)
                continue
            # cannot happen: the row pool was regenerated until clean
            raise AssertionError("integral LP point failed exact feasibility")

        cand = np.where(free, frac, -1.0)
        best = cand.max()
        ties = np.flatnonzero(cand >= best - 1e-12)
        tri_ties = ties[ties >= n1]
        j = int(tri_ties[0]) if tri_ties.size else int(ties[0])

        for fix_to in (0, 1):
            lo_c, up_c = lo8.copy(), up8.copy()
            if fix_to == 0:
                up_c[j] = 0
            else:
                lo_c[j] = 1
            seq += 1
            heapq.heappush(heap, (res.bound, seq, lo_c, up_c,
                                  res.basis.copy(), res.vstat.copy()))

    wall = time.perf_counter() - t0
    if inc_sel is None:
        if status == "node_limit":
            return BlpSolution(None, inf, lb_cap, status, explored, wall)
        return BlpSolution(None, inf, inf, "infeasible", explored, wall)
    return BlpSolution(inc_sel, inc_obj, min(inc_obj, lb_cap), status,
                       explored, wall)


def lp_bound(instance, fixed_edges=None, fixed_triangles=None):
    """LP relaxation lower bound under a partial assignment.

    ``fixed_edges`` / ``fixed_triangles`` map index -> 0 or 1.  Returns
    ``inf`` when the fixed problem is infeasible.
    """
    n1, n2 = instance.n_edges, instance.n_triangles
    lower = np.zeros(n1 + n2)
    upper = np.ones(n1 + n2)
    for mapping, off, size, what in ((fixed_edges, 0, n1, "edge"),
                                     (fixed_triangles, n1, n2, "triangle")):
        for idx, val in (mapping or {}).items():
            if not 0 <= idx < size:
                raise ValueError(f"{what} index {idx} out of range")
            if val not in (0, 1):
                raise ValueError(f"{what} fixing must be 0 or 1; got {val}")
            lower[off + idx] = upper[off + idx] = float(val)
    if instance.c1 > n1 or instance.c2 > n2:
        return inf
    c = np.concatenate([instance.h1, instance.h2])
    pool = _RowPool(instance)
    res = _solve_node(pool, c, lower, upper, None, None)
    return inf if res.status == "infeasible" else float(res.bound)


def oracle_enumerate(cx, costs, c1, c2, budget=1_000_000):
    """Brute-force optimum by enumerating triangle subsets of size exactly c2.

    With nonnegative costs some optimum selects exactly ``c2`` triangles,
    and for a fixed triangle set the best edge set is the forced faces
    plus the cheapest remaining edges up to ``c1`` (ties on cost broken by
    index).  Subsets are scanned in lexicographic order and improvements
    must be strict, so ties resolve to the lexicographically smallest
    subset.  Refuses instances with more than ``budget`` subsets.
    """
    t0 = time.perf_counter()
    c1, c2 = int(c1), int(c2)
    n1, n2 = cx.n_edges, cx.n_triangles
    if c1 > n1 or c2 > n2:
        return BlpSolution(None, inf, inf, "infeasible", 0,
                           time.perf_counter() - t0)
    if comb(n2, c2) > budget:
        raise ValueError(f"enumeration needs {comb(n2, c2)} subsets; "
                         f"budget is {budget}")

    h1 = [float(v) for v in costs.h1]
    h2 = [float(v) for v in costs.h2]
    faces = [tuple(int(e) for e in row) for row in cx.triangle_edges]
    fill_order = sorted(range(n1), key=lambda e: (h1[e], e))

    best_obj = inf
    best = None
    count = 0
    for subset in combinations(range(n2), c2):
        count += 1
        chosen = set()
        for t in subset:
            chosen.update(faces[t])
        obj = sum(h2[t] for t in subset) + sum(h1[e] for e in chosen)
        if len(chosen) < c1:
            need = c1 - len(chosen)
            for e in fill_order:
                if e in chosen:
                    continue
                chosen.add(e)
                obj += h1[e]
                need -= 1
                if need == 0:
                    break
        if obj < best_obj:
            best_obj = obj
            best = (sorted(chosen), subset)

    wall = time.perf_counter() - t0
    sel = Selection.from_indices(n1, n2, best[0], list(best[1]))
    return BlpSolution(sel, best_obj, best_obj, "optimal", count, wall)


_MAGIC = "sctopo-blp 1"


def write_instance(instance, path):
    """Plain-text dump: one line per scalar, cost entry and triangle row."""
    lines = [_MAGIC,
             f"n_edges {instance.n_edges}",
             f"n_triangles {instance.n_triangles}",
             f"c1 {instance.c1}",
             f"c2 {instance.c2}",
             f"alpha {instance.alpha!r}"]
    for e, v in enumerate(instance.h1):
        lines.append(f"h1 {e} {float(v)!r}")
    for t, v in enumerate(instance.h2):
        lines.append(f"h2 {t} {float(v)!r}")
    for t, row in enumerate(instance.triangle_edges):
        lines.append(f"tri {t} {row[0]} {row[1]} {row[2]}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_instance(path):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0] != _MAGIC:
        raise ValueError("not a recognized instance file")
    scalars = {}
    idx = 1
    while idx < len(lines) and lines[idx].split()[0] not in ("h1", "h2", "tri"):
        key, val = lines[idx].split(maxsplit=1)
        scalars[key] = val
        idx += 1
    try:
        n1 = int(scalars["n_edges"])
        n2 = int(scalars["n_triangles"])
        c1 = int(scalars["c1"])
        c2 = int(scalars["c2"])
        alpha = float(scalars["alpha"])
    except KeyError as missing:
        raise ValueError(f"instance file lacks {missing}") from None
    h1 = np.full(n1, np.nan)
    h2 = np.full(n2, np.nan)
    tri = np.full((n2, 3), -1, dtype=np.int64)
    for ln in lines[idx:]:
        parts = ln.split()
        if parts[0] == "h1":
            h1[int(parts[1])] = float(parts[2])
        elif parts[0] == "h2":
            h2[int(parts[1])] = float(parts[2])
        elif parts[0] == "tri":
            tri[int(parts[1])] = [int(p) for p in parts[2:5]]
        else:
            raise ValueError(f"unrecognized line: {ln!r}")
    if np.isnan(h1).any() or np.isnan(h2).any() or (tri < 0).any():
        raise ValueError("instance file is missing entries")
    if (h1 < 0).any() or (h2 < 0).any():
        raise ValueError("costs must be nonnegative")
    if (tri >= n1).any():
        raise ValueError("triangle face indices out of range")
    return BlpInstance(n_edges=n1, n_triangles=n2, h1=h1, h2=h2, c1=c1, c2=c2,
                       alpha=alpha, triangle_edges=tri)
