"""Constrained thrust allocation: box-bounded least squares plus power budget.

Minimizes ||W u - tau||^2 over per-thruster efforts u in [-1, 1] with an
active-set method. If the solution's electrical power exceeds the budget,
the target wrench is scaled down by bisection until the budget is met within
1% -- scaling the wrench preserves its direction, which is the contract the
rest of the stack relies on. The returned allocation never exceeds the
budget.
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class AllocationProblem:
    wrench_matrix: np.ndarray     # (m, N) efforts -> body wrench
    target_wrench: np.ndarray     # (m,)
    effort_bounds: np.ndarray     # (N,) symmetric bound per thruster
    power_budget: float           # W; np.inf disables the constraint
    power_curves: np.ndarray      # (N, k) polynomial coefficients of P(u)

    def __post_init__(self):
        self.wrench_matrix = np.asarray(self.wrench_matrix, dtype=float)
        self.target_wrench = np.asarray(self.target_wrench, dtype=float)
        self.effort_bounds = np.asarray(self.effort_bounds, dtype=float)
        self.power_curves = np.asarray(self.power_curves, dtype=float)
        m, n = self.wrench_matrix.shape
        if np.linalg.matrix_rank(self.wrench_matrix) < m:
            raise ValueError("wrench matrix is rank-deficient")
        if self.power_budget < 0:
            raise ValueError("power_budget must be nonnegative")
        if np.any(self.effort_bounds <= 0):
            raise ValueError("effort bounds must be positive")

    def power(self, efforts):
        u = np.asarray(efforts, dtype=float)
        powers = u[:, None] ** np.arange(self.power_curves.shape[1])
        return float(np.sum(self.power_curves * powers))

    @property
    def pinv(self):
        """Cached pseudo-inverse; the wrench matrix is fixed after construction."""
        if not hasattr(self, "_pinv"):
            self._pinv = np.linalg.pinv(self.wrench_matrix)
        return self._pinv


@dataclass
class AllocationResult:
    efforts: np.ndarray
    power: float
    wrench_scale: float           # 1.0 unless the budget forced a scale-down
    residual: float


def box_lsq(W, tau, lower, upper, tol=1e-11):
    """Active-set solver for min ||W u - tau||^2 with lower <= u <= upper.

    Starts fully free; drives infeasible free variables to their bounds along
    partial steps, then releases bound variables whose KKT multiplier says
    the objective improves inward. Small problems only (N of order 10).
    """
    m, n = W.shape
    u = np.zeros(n)
    free = np.ones(n, dtype=bool)
    gtol = tol * max(1.0, float(np.max(np.abs(W.T @ tau))))

    for _ in range(4 * n + 8):
        # inner loop: solve the free subproblem, clamping blockers
        for _ in range(n + 1):
            if not free.any():
                break
            rhs = tau - W[:, ~free] @ u[~free] if (~free).any() else tau
            sol = np.linalg.lstsq(W[:, free], rhs, rcond=None)[0]
            cand = u.copy()
            cand[free] = sol
            lo_ok = cand[free] >= lower[free] - tol
            hi_ok = cand[free] <= upper[free] + tol
            if lo_ok.all() and hi_ok.all():
                u = np.clip(cand, lower, upper)
                break
            # partial step toward cand until the first free variable blocks
            d = cand - u
            alpha, blocker, bval = 1.0, -1, 0.0
            for i in np.nonzero(free)[0]:
                if d[i] > tol and cand[i] > upper[i] + tol:
                    a = (upper[i] - u[i]) / d[i]
                elif d[i] < -tol and cand[i] < lower[i] - tol:
                    a = (lower[i] - u[i]) / d[i]
                else:
                    continue
                if a < alpha:
                    alpha = a
                    blocker = i
                    bval = upper[i] if d[i] > 0 else lower[i]
            u = u + alpha * d
            if blocker < 0:
                u = np.clip(u, lower, upper)
                break
            u[blocker] = bval
            free[blocker] = False

        # KKT: release the worst bound variable that wants to move inward
        g = W.T @ (W @ u - tau)
        release, worst = -1, gtol
        for i in np.nonzero(~free)[0]:
            if u[i] >= upper[i] - tol and g[i] > worst:
                release, worst = i, g[i]
            elif u[i] <= lower[i] + tol and -g[i] > worst:
                release, worst = i, -g[i]
        if release < 0:
            return u
        free[release] = True
    return u


def allocate(problem: AllocationProblem) -> AllocationResult:
    """Solve the allocation problem, honoring effort bounds and power budget."""
    W = problem.wrench_matrix
    tau = problem.target_wrench
    lower = -problem.effort_bounds
    upper = problem.effort_bounds

    # fast path: the unconstrained optimum, when feasible, is the answer
    u = problem.pinv @ tau
    if np.any(u < lower) or np.any(u > upper):
        u = box_lsq(W, tau, lower, upper)
    power = problem.power(u)
    budget = problem.power_budget
    if not np.isfinite(budget) or power <= budget:
        return AllocationResult(u, power, 1.0, float(np.linalg.norm(W @ u - tau)))

    # over budget: bisect a scale on the target wrench (direction preserved)
    lo_s, hi_s = 0.0, 1.0
    best_u = np.zeros_like(u)
    best_power = problem.power(best_u)
    for _ in range(60):
        mid = 0.5 * (lo_s + hi_s)
        u_mid = box_lsq(W, mid * tau, lower, upper)
        p_mid = problem.power(u_mid)
        if p_mid <= budget:
            lo_s, best_u, best_power = mid, u_mid, p_mid
        else:
            hi_s = mid
        if budget == 0.0 or (budget - best_power) <= 0.01 * budget:
            break
    return AllocationResult(best_u, best_power, lo_s,
                            float(np.linalg.norm(W @ best_u - lo_s * tau)))
