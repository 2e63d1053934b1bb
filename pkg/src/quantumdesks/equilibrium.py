"""Saddle-point search over the two strategy angles, plus a 4x4 matrix solver.

The payoff surface h(alpha, beta) is, for either angle with the other
held fixed, a constant plus a sinusoid in twice the angle.  Each
one-dimensional subproblem is therefore solved by a dense scan over one
period followed by golden-section refinement of the bracketing interval.

``refine_saddle`` alternates a maximizing search in alpha with a
minimizing search in beta, accepting a move only when it improves by
more than ``tol``; a point no search can improve is an approximate
saddle.  Best-response alternation can cycle when the game has no
pure-angle saddle (and near interior saddles when seeded off them), so
after ``max_iter`` sweeps the search falls back to refining the maximin
and minimax profiles directly and reports them with flags.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .geometry import probabilities_from_angle
from .quantum import GameSpec, scalar_payoff
from .classical import ClassicalMatrix

FLAG_NO_CONVERGENCE = "no_convergence"
FLAG_NO_SADDLE = "no_saddle"
FLAG_NOT_STATIONARY = "not_stationary"

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_GOLDEN_X_TOL = 1e-12
_SCAN_N = 64


@dataclass(frozen=True)
class EquilibriumResult:
    """Saddle candidate: angles, value, one-sided bounds, and a certificate.

    ``max_min`` is min over beta of h(alpha_star, .) and ``min_max`` is
    max over alpha of h(., beta_star); the value always lies between
    them.  ``certificate`` bounds how much either player could gain by
    deviating from the reported profile.
    """

    alpha_star: float
    beta_star: float
    value: float
    max_min: float
    min_max: float
    certificate: float
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "alpha_star": self.alpha_star,
            "beta_star": self.beta_star,
            "value": self.value,
            "max_min": self.max_min,
            "min_max": self.min_max,
            "certificate": self.certificate,
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class ClassicalSolution:
    """Optimal mixed strategies and value of the 4x4 compound-strategy game."""

    alice_mixed: np.ndarray
    bob_mixed: np.ndarray
    value: float
    degenerate: bool = False

    def __post_init__(self):
        for name in ("alice_mixed", "bob_mixed"):
            v = np.array(getattr(self, name), dtype=float)
            v.setflags(write=False)
            object.__setattr__(self, name, v)


def payoff_surface(spec: GameSpec, alpha: float, beta: float) -> float:
    """Average payoff when Alice plays angle ``alpha`` and Bob ``beta``."""
    p = probabilities_from_angle(alpha, spec.alice_frame)
    q = probabilities_from_angle(beta, spec.bob_frame)
    return scalar_payoff(spec.coefficients, p, q).total


def payoff_gradient(spec: GameSpec, alpha: float, beta: float) -> tuple[float, float]:
    """Analytic (d h / d alpha, d h / d beta) at the given angles."""
    p = probabilities_from_angle(alpha, spec.alice_frame)
    q = probabilities_from_angle(beta, spec.bob_frame)
    c = spec.coefficients
    a = alpha % math.pi
    b = beta % math.pi

    s2a, c2a = math.sin(2.0 * a), math.cos(2.0 * a)
    fa = spec.alice_frame
    dp2 = -s2a * math.cos(2.0 * fa.theta) \
        + c2a * math.sin(2.0 * fa.theta) * math.cos(fa.lam)
    d_alpha = s2a * (c.c1 * q.p1 - c.c3 * q.p3) + dp2 * (c.c4 * q.p4 - c.c2 * q.p2)

    s2b, c2b = math.sin(2.0 * b), math.cos(2.0 * b)
    fb = spec.bob_frame
    dq2 = -s2b * math.cos(2.0 * fb.theta) \
        + c2b * math.sin(2.0 * fb.theta) * math.cos(fb.lam)
    d_beta = s2b * (c.c3 * p.p1 - c.c1 * p.p3) + dq2 * (c.c2 * p.p4 - c.c4 * p.p2)
    return d_alpha, d_beta


def _probability_arrays(angles: np.ndarray, frame) -> tuple[np.ndarray, np.ndarray]:
    a = np.mod(np.asarray(angles, dtype=float), math.pi)
    ca, sa = np.cos(a), np.sin(a)
    ct, st = math.cos(frame.theta), math.sin(frame.theta)
    p1 = ca * ca
    p2 = ca * ca * (ct * ct) + sa * sa * (st * st) \
        + 2.0 * ca * sa * ct * st * math.cos(frame.lam)
    np.clip(p2, 0.0, 1.0, out=p2)
    return p1, p2


def _surface_grid(spec: GameSpec, alphas: np.ndarray, betas: np.ndarray) -> np.ndarray:
    """h on the alpha x beta grid, shape (len(alphas), len(betas))."""
    c = spec.coefficients
    p1, p2 = _probability_arrays(alphas, spec.alice_frame)
    q1, q2 = _probability_arrays(betas, spec.bob_frame)
    p3, p4 = 1.0 - p1, 1.0 - p2
    q3, q4 = 1.0 - q1, 1.0 - q2
    return (c.c3 * np.outer(p1, q3) + c.c1 * np.outer(p3, q1)
            + c.c4 * np.outer(p2, q4) + c.c2 * np.outer(p4, q2))


def grid_saddle_oracle(spec: GameSpec, n: int = 256) -> EquilibriumResult:
    """Exhaustive saddle search on the n x n angle grid over [0, pi)^2.

    Deterministic: ties are broken toward the smallest alpha, then the
    smallest beta.  Serves as the reference oracle for the refiner.
    """
    if n < 8:
        raise ValueError("grid resolution must be at least 8")
    alphas = np.arange(n) * (math.pi / n)
    betas = np.arange(n) * (math.pi / n)
    h = _surface_grid(spec, alphas, betas)
    row_min = h.min(axis=1)
    col_max = h.max(axis=0)
    i = int(np.argmax(row_min))
    j = int(np.argmin(col_max))
    max_min = float(row_min[i])
    min_max = float(col_max[j])
    value = float(h[i, j])
    certificate = max(0.0, min_max - value, value - max_min)
    return EquilibriumResult(float(alphas[i]), float(betas[j]), value,
                             max_min, min_max, certificate)


def _reduce_angle(x: float) -> float:
    """Reduce to [0, pi); a hair-negative input can otherwise round to pi."""
    x = x % math.pi
    return 0.0 if x >= math.pi else x


def _golden_max(f, lo: float, hi: float, x_tol: float) -> tuple[float, float]:
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > x_tol:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
    x = 0.5 * (lo + hi)
    return x, f(x)


def _line_max(f, f_vec=None, scan_n: int = _SCAN_N) -> tuple[float, float]:
    """Maximize a pi-periodic function: dense scan, then golden section.

    Returns the first (smallest-angle) maximizer among ties; on flat
    functions this keeps the scan point, which makes the caller's
    improvement gating stable.
    """
    xs = np.arange(scan_n) * (math.pi / scan_n)
    vals = f_vec(xs) if f_vec is not None else np.array([f(x) for x in xs])
    k = int(np.argmax(vals))
    lo = xs[k] - math.pi / scan_n
    hi = xs[k] + math.pi / scan_n
    x, v = _golden_max(f, lo, hi, _GOLDEN_X_TOL)
    if vals[k] >= v:
        return float(xs[k]), float(vals[k])
    return _reduce_angle(x), float(v)


def _line_min(f, f_vec=None, scan_n: int = _SCAN_N) -> tuple[float, float]:
    neg_vec = None if f_vec is None else (lambda xs: -f_vec(xs))
    x, v = _line_max(lambda t: -f(t), neg_vec, scan_n)
    return x, -v


def refine_saddle(
    spec: GameSpec,
    seed: tuple[float, float],
    tol: float = 1e-9,
    max_iter: int = 60,
) -> EquilibriumResult:
    """Polish a saddle candidate by alternating exact line searches.

    A move in either angle is accepted only if it improves that player's
    objective by more than ``tol``; when neither player can move the
    iterate is an approximate saddle and the analytic gradient is checked
    for stationarity.  If alternation fails to settle within ``max_iter``
    sweeps (best responses cycle when no pure-angle saddle exists), the
    maximin alpha and minimax beta are refined directly instead and the
    result carries the no-convergence flag; a gap between the two
    one-sided values additionally raises the no-saddle flag.
    """
    a = seed[0] % math.pi
    b = seed[1] % math.pi

    def h(x: float, y: float) -> float:
        return payoff_surface(spec, x, y)

    converged = False
    up = down = h(a, b)
    for _ in range(max_iter):
        moved = False
        v_here = h(a, b)
        a_cand, up = _line_max(
            lambda x: h(x, b),
            f_vec=lambda xs: _surface_grid(spec, xs, np.array([b]))[:, 0],
        )
        if up - v_here > tol:
            a = a_cand
            moved = True
        v_here = h(a, b)
        b_cand, down = _line_min(
            lambda y: h(a, y),
            f_vec=lambda ys: _surface_grid(spec, np.array([a]), ys)[0, :],
        )
        if v_here - down > tol:
            b = b_cand
            moved = True
        if not moved:
            converged = True
            break

    flags: list[str] = []
    if converged:
        value = h(a, b)
        max_min, min_max = down, up
        grad = payoff_gradient(spec, a, b)
        # A value gate of tol on a sinusoid of amplitude R leaves the
        # iterate within sqrt(tol / 2R) of the peak, hence a gradient of
        # at most sqrt(8 R tol); R is bounded by the coefficient mass.
        mass = sum(abs(x) for x in spec.coefficients.as_tuple())
        grad_tol = math.sqrt(8.0 * tol * (mass + 1.0)) + 100.0 * tol
        if max(abs(grad[0]), abs(grad[1])) > grad_tol:
            flags.append(FLAG_NOT_STATIONARY)
    else:
        flags.append(FLAG_NO_CONVERGENCE)

        def worst_case_for_alice(x: float) -> float:
            return _line_min(
                lambda y: h(x, y),
                f_vec=lambda ys: _surface_grid(spec, np.array([x]), ys)[0, :],
            )[1]

        def worst_case_for_bob(y: float) -> float:
            return _line_max(
                lambda x: h(x, y),
                f_vec=lambda xs: _surface_grid(spec, xs, np.array([y]))[:, 0],
            )[1]

        a, max_min = _line_max(worst_case_for_alice, scan_n=128)
        b, min_max = _line_min(worst_case_for_bob, scan_n=128)
        value = h(a, b)

    certificate = max(0.0, min_max - value, value - max_min)
    if min_max - max_min > max(10.0 * tol, 1e-8):
        flags.append(FLAG_NO_SADDLE)
    return EquilibriumResult(a, b, value, max_min, min_max, certificate,
                             tuple(flags))


def verify_saddle(spec: GameSpec, result: EquilibriumResult, n: int = 256) -> float:
    """Deviation bound for a candidate saddle, measured on an n-point grid.

    Returns max(0, max_alpha h(alpha, beta*) - v, v - min_beta h(alpha*, beta));
    a small value certifies that neither player gains much by deviating
    to any grid angle.
    """
    alphas = np.arange(n) * (math.pi / n)
    betas = np.arange(n) * (math.pi / n)
    best_dev_alice = float(_surface_grid(spec, alphas, np.array([result.beta_star])).max())
    best_dev_bob = float(_surface_grid(spec, np.array([result.alpha_star]), betas).min())
    return max(0.0, best_dev_alice - result.value, result.value - best_dev_bob)


def solve_classical(m: ClassicalMatrix, tol: float = 1e-9) -> ClassicalSolution:
    """Value and optimal mixed strategies of the 4x4 zero-sum matrix game.

    Enumerates all 225 support pairs in a fixed (size, lexicographic)
    order; for each pair the payoff-equalization system is solved as a
    small linear system and the candidate is kept only if it passes the
    optimality inequalities.  The first verified pair is returned; the
    solution is flagged degenerate when verified pairs realize more than
    one distinct support (the same strategies re-verifying under padded
    supersets do not count).
    """
    M = np.asarray(m.entries, dtype=float)
    scale = 1.0 + float(np.max(np.abs(M)))
    check_tol = tol * scale
    supports = [s for k in range(1, 5) for s in combinations(range(4), k)]

    first: tuple[np.ndarray, np.ndarray, float] | None = None
    realized: set[tuple] = set()
    for rows in supports:
        for cols in supports:
            cand = _support_pair_solution(M, rows, cols, check_tol)
            if cand is None:
                continue
            x, y, _ = cand
            realized.add((tuple(x > 1e-8), tuple(y > 1e-8)))
            if first is None:
                first = cand
    if first is None:  # cannot happen: some square support is a game kernel
        raise ArithmeticError("no support pair solved the matrix game")
    x, y, value = first
    return ClassicalSolution(x, y, value, degenerate=len(realized) > 1)


def _support_pair_solution(M, rows, cols, tol):
    """Equalize payoffs on a support pair; None unless optimal for both."""
    x = _equalizing_weights(M.T, cols, rows, tol)
    if x is None:
        return None
    x_full, v = x
    if np.min(x_full @ M) < v - tol:
        return None
    y = _equalizing_weights(M, rows, cols, tol)
    if y is None:
        return None
    y_full, w = y
    if np.max(M @ y_full) > w + tol:
        return None
    if abs(v - w) > tol:
        return None
    return x_full, y_full, 0.5 * (v + w)


def _equalizing_weights(payoffs, eq_idx, var_idx, tol):
    """Weights on var_idx making payoffs[j] @ weights equal for j in eq_idx.

    Solves the bordered linear system (one equation per equalized index
    plus the normalization row); returns None when the system is
    inconsistent or the weights dip below -tol.
    """
    k = len(var_idx)
    rows = len(eq_idx) + 1
    A = np.zeros((rows, k + 1))
    for r, j in enumerate(eq_idx):
        A[r, :k] = payoffs[j, list(var_idx)]
        A[r, k] = -1.0
    A[rows - 1, :k] = 1.0
    rhs = np.zeros(rows)
    rhs[rows - 1] = 1.0

    sol = None
    if rows == k + 1:
        try:
            sol = np.linalg.solve(A, rhs)
        except np.linalg.LinAlgError:
            sol = None
    if sol is None:
        sol, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    if np.max(np.abs(A @ sol - rhs)) > tol:
        return None

    weights = np.zeros(payoffs.shape[1])
    weights[list(var_idx)] = sol[:k]
    if np.min(weights) < -tol:
        return None
    weights = np.clip(weights, 0.0, None)
    weights /= weights.sum()
    return weights, float(sol[k])
