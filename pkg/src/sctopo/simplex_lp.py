"""Self-contained bounded-variable dual simplex for LP relaxation bounds.

Solves ``min c @ x  s.t.  A x <= b,  lower <= x <= upper`` with dense
numpy linear algebra and an explicit basis inverse.  The solver is written
for the branch-and-bound use case:

* the all-slack basis is dual feasible whenever each structural variable
  can sit at a bound with the right reduced-cost sign (always true here,
  where costs are nonnegative and variables live in ``[0, 1]``);
* changing variable bounds never destroys dual feasibility of a basis, so
  a parent node's final basis warm-starts every child;
* appending rows with their slacks basic is also dual feasible, which is
  what lazy constraint generation needs;
* every iterate of the dual simplex is a valid lower bound on the LP
  optimum, so the solve can stop early and still return a usable bound.

Determinism: entering ties are broken by lowest column index; after a long
degenerate stall the leaving choice switches to Bland's smallest-index
rule, which also guarantees termination.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# nonbasic-at-lower / nonbasic-at-upper / basic / nonbasic-fixed (lower == upper)
NB_LOWER, NB_UPPER, BASIC, NB_FIXED = 0, 1, 2, 3

_PIV_TOL = 1e-9
_RATIO_TIE = 1e-12


@dataclass
class LpResult:
    status: str  # "optimal" | "infeasible" | "iteration_limit"
    x: np.ndarray
    objective: float
    bound: float  # valid lower bound on the LP optimum (inf when infeasible)
    iterations: int
    basis: np.ndarray
    vstat: np.ndarray
    binv: np.ndarray


def build_basis_matrix(A, basis):
    """Dense basis matrix from structural columns of ``A`` and slack units."""
    m = A.shape[0]
    n = A.shape[1]
    B = np.zeros((m, m))
    for p, j in enumerate(basis):
        if j < n:
            B[:, p] = A[:, j]
        else:
            B[j - n, p] = 1.0
    return B


def extend_binv_for_new_rows(binv, A_new_rows, basis, n):
    """Basis inverse after appending rows whose slacks enter the basis.

    ``binv`` inverts the old m x m basis; the new basis is the old basic
    columns (now carrying entries in the appended rows) plus the new slack
    columns.  Block inversion gives ``[[binv, 0], [-C @ binv, I]]`` where
    ``C`` holds the appended-row entries of the old basic columns.
    """
    k, m = A_new_rows.shape[0], binv.shape[0]
    C = np.zeros((k, m))
    struct = basis < n
    C[:, struct] = A_new_rows[:, basis[struct]]
    out = np.zeros((m + k, m + k))
    out[:m, :m] = binv
    out[m:, :m] = -C @ binv
    out[m:, m:] = np.eye(k)
    return out


def solve_lp(
    c,
    A,
    b,
    lower,
    upper,
    basis=None,
    vstat=None,
    binv=None,
    max_iter=100_000,
    feas_tol=1e-9,
    bland_after=1000,
    refresh_every=200,
):
    """Dual simplex on ``min c@x, A x <= b, lower <= x <= upper``.

    ``basis``/``vstat``/``binv`` restore a previous (dual-feasible) state;
    pass ``binv=None`` to have the inverse rebuilt from the basis.  Fixed
    variables (``lower == upper``) never enter the basis.
    """
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    nm = n + m

    lower_e = np.concatenate([lower, np.zeros(m)])
    upper_e = np.concatenate([upper, np.full(m, np.inf)])
    if (lower_e > upper_e + feas_tol).any():
        return LpResult("infeasible", np.zeros(n), np.inf, np.inf, 0, None, None, None)
    c_e = np.concatenate([c, np.zeros(m)])

    if basis is None:
        basis = np.arange(n, nm, dtype=np.int64)
        vstat = np.empty(nm, dtype=np.int8)
        vstat[:n] = np.where(c >= 0.0, NB_LOWER, NB_UPPER)
        vstat[n:] = BASIC
        binv = np.eye(m)
    else:
        basis = np.array(basis, dtype=np.int64)
        vstat = np.array(vstat, dtype=np.int8)
        if binv is None:
            binv = np.linalg.inv(build_basis_matrix(A, basis))
        else:
            binv = np.array(binv, dtype=float)
    # normalize fixed markers to the current bounds
    fixed = (lower_e == upper_e) & (vstat != BASIC)
    vstat[fixed] = NB_FIXED
    unfixed = (lower_e != upper_e) & (vstat == NB_FIXED)
    vstat[unfixed] = np.where(c_e[unfixed] >= 0.0, NB_LOWER, NB_UPPER)
    if np.isinf(upper_e[(vstat == NB_UPPER)]).any():
        raise ValueError("variable at an infinite upper bound")

    degen_run = 0
    it = 0
    while it < max_iter:
        if it and it % refresh_every == 0:
            binv = np.linalg.inv(build_basis_matrix(A, basis))

        x_nb = np.where(vstat == NB_UPPER, upper_e, lower_e)
        x_nb[basis] = 0.0
        xB = binv @ (b - A @ x_nb[:n])

        below = lower_e[basis] - xB
        above = xB - upper_e[basis]
        viol = np.maximum(below, above)
        r = int(np.argmax(viol))
        if viol[r] <= feas_tol:
            x = x_nb
            x[basis] = xB
            obj = float(c @ x[:n])
            return LpResult("optimal", x[:n], obj, obj, it, basis, vstat, binv)
        if degen_run > bland_after:
            rows = np.flatnonzero(viol > feas_tol)
            r = int(rows[np.argmin(basis[rows])])

        s = 1.0 if above[r] > below[r] else -1.0
        rho = s * binv[r]
        alpha = np.concatenate([rho @ A, rho])

        y = c_e[basis] @ binv
        d = np.concatenate([c - y @ A, -y])

        cand = ((vstat == NB_LOWER) & (alpha > _PIV_TOL)) | (
            (vstat == NB_UPPER) & (alpha < -_PIV_TOL)
        )
        if not cand.any():
            # dual ray: the primal subproblem has no feasible point
            return LpResult("infeasible", x_nb[:n], np.inf, np.inf, it, basis, vstat, binv)

        ratios = np.full(nm, np.inf)
        ratios[cand] = np.maximum(d[cand] / alpha[cand], 0.0)
        theta = ratios[cand].min()
        entering = int(np.flatnonzero(cand & (ratios <= theta + _RATIO_TIE * (1.0 + theta)))[0])

        col = A[:, entering] if entering < n else _unit(m, entering - n)
        col = binv @ col
        piv = col[r]
        binv_r = binv[r] / piv
        binv = binv - np.outer(col, binv_r)
        binv[r] = binv_r

        leaving = basis[r]
        if lower_e[leaving] == upper_e[leaving]:
            vstat[leaving] = NB_FIXED
        else:
            vstat[leaving] = NB_UPPER if s > 0 else NB_LOWER
        vstat[entering] = BASIC
        basis[r] = entering

        degen_run = degen_run + 1 if theta <= _RATIO_TIE else 0
        it += 1

    # out of iterations: the basis is still dual feasible, so its objective
    # (weak duality) is a valid lower bound even though x may violate bounds
    x_nb = np.where(vstat == NB_UPPER, upper_e, lower_e)
    x_nb[basis] = 0.0
    xB = binv @ (b - A @ x_nb[:n])
    x = x_nb
    x[basis] = xB
    obj = float(c @ x[:n])
    return LpResult("iteration_limit", x[:n], obj, obj, it, basis, vstat, binv)


def _unit(m, i):
    e = np.zeros(m)
    e[i] = 1.0
    return e
