"""CSCS stationary iteration for real positive-definite Toeplitz systems.

Splitting T = C + S, the two-half-step iteration with shift theta > 0 is

    (theta I + C) x^(k+1/2) = (theta I - S) x^(k)     + b,
    (theta I + S) x^(k+1)   = (theta I - C) x^(k+1/2) + b.

The ``dct_dst`` backend runs it in real arithmetic through the real
Schur forms C = U Omega U.T and S = Utilde Sigma Utilde.T; shifted cores
are O(n) X-pattern multiplies/solves and every U application is the Q
butterfly plus one DCT and one DST of about n/2 points.  Adjacent block
factors cancel between the two half-steps (B.T Q Q.T B == I), so one
full iteration costs exactly six DCTs and six DSTs; the per-iteration
tallies are recorded in the report.

The ``fft`` backend is the complex reference: C = F Lambda F^* and
S = Ftilde Lambdatilde Ftilde^* with Ftilde = D F^*,
D = diag(1, e^{i pi/n}, ..., e^{i (n-1) pi/n}), costing six complex DFTs
per iteration.  Both backends perform the same exact-arithmetic update,
so their iterate sequences agree to rounding.

Iterations stop when ||b - T x^(k)||_2 <= tol * ||b - T x^(0)||_2
(residuals recomputed each sweep with the fast Toeplitz product, never
recursively updated) or after ``max_iters`` sweeps.
"""

import warnings as _warnings
from dataclasses import dataclass, field

import numpy as np

from . import _dft
from .real_schur import (
    SingularShiftError, apply_block_transform, apply_q, real_spectrum,
    xpattern_apply, xpattern_shifted_solve,
)
from .structured_matrices import ToeplitzBands, cscs_split, dense_of
from .trig_transforms import tally

__all__ = [
    "SolverConfig", "SolveReport", "cscs_solve", "dft",
    "iteration_matrix_rho", "theta_scan", "RHO_DENSE_GUARD",
]

RHO_DENSE_GUARD = 4096


def dft(x, inverse: bool = False) -> np.ndarray:
    """Discrete Fourier transform for any length n >= 1 in O(n log n).

    Forward: X[k] = sum_j x[j] exp(-2 pi i j k / n) (unnormalized);
    inverse divides by n so that dft(dft(x), inverse=True) == x.
    Power-of-two lengths use radix-2 directly, everything else goes
    through Bluestein's chirp reduction.
    """
    return _dft.idft_vector(x) if inverse else _dft.dft_vector(x)


@dataclass
class SolverConfig:
    """Shift, stopping rule and backend selection for ``cscs_solve``."""

    theta: float
    tol: float = 1e-7
    max_iters: int = 500
    backend: str = "dct_dst"
    x0: np.ndarray | None = None
    record_iterates: bool = False

    def __post_init__(self):
        if not self.theta > 0:
            raise ValueError(f"theta must be positive, got {self.theta}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.backend not in ("dct_dst", "fft"):
            raise ValueError(f"unknown backend {self.backend!r}")


@dataclass
class SolveReport:
    """Outcome of one CSCS solve."""

    solution: np.ndarray
    iterations: int
    residuals: np.ndarray          # relative residual after each full sweep
    converged: bool
    warnings: list = field(default_factory=list)
    iterates: list | None = None
    transform_counts: list | None = None   # per-sweep (n_dct, n_dst), dct_dst only
    transform_sizes: set | None = None     # transform sizes used by the sweeps


def _pd_warnings(spec_c, spec_s):
    notes = []
    for name, spec in (("circulant", spec_c), ("skew-circulant", spec_s)):
        amin = float(spec.alphas.min())
        if amin <= 0:
            notes.append(
                f"{name} part is not positive definite (min eigenvalue real "
                f"part {amin:.6g}); convergence is not guaranteed")
    return notes


def cscs_solve(T: ToeplitzBands, b, cfg: SolverConfig) -> SolveReport:
    """Solve T x = b by the CSCS iteration.

    Raises :class:`SingularShiftError` when theta*I + C or theta*I + S
    is singular.  Indefiniteness of C or S is only a recorded warning;
    the sweep proceeds regardless.
    """
    b = np.asarray(b, dtype=np.float64)
    n = T.n
    if b.shape != (n,):
        raise ValueError(f"right-hand side must have length {n}, got shape {b.shape}")
    x0 = np.zeros(n) if cfg.x0 is None else np.asarray(cfg.x0, dtype=np.float64)
    if x0.shape != (n,):
        raise ValueError(f"initial guess must have length {n}, got shape {x0.shape}")
    if cfg.backend == "dct_dst":
        return _solve_dct_dst(T, b, x0, cfg)
    return _solve_fft(T, b, x0, cfg)


def _solve_dct_dst(T, b, x0, cfg):
    n, theta = T.n, cfg.theta
    cpart, spart = cscs_split(T)
    spec_c = real_spectrum("circulant", cpart.col)
    spec_s = real_spectrum("skew", spart.col)
    omega = spec_c.expand()
    sigma = spec_s.expand()
    notes = _pd_warnings(spec_c, spec_s)
    # fail fast on a singular shift instead of inside the first sweep
    xpattern_shifted_solve(omega, theta, np.zeros(n))
    xpattern_shifted_solve(sigma, theta, np.zeros(n))

    def toeplitz_apply(v):
        y = apply_block_transform("circulant", apply_q(v), transposed=True)
        y = xpattern_apply(omega, 0.0, "none", y)
        cx = apply_q(apply_block_transform("circulant", y), transposed=True)
        z = apply_block_transform("skew", apply_q(v, transposed=True), transposed=True)
        z = xpattern_apply(sigma, 0.0, "none", z)
        return cx + apply_q(apply_block_transform("skew", z))

    x = x0.copy()
    r0 = np.linalg.norm(b - toeplitz_apply(x)) if x.any() else np.linalg.norm(b)
    if r0 == 0.0:
        return SolveReport(x, 0, np.empty(0), True, notes,
                           [x.copy()] if cfg.record_iterates else None, [], set())

    residuals = []
    iterates = [x.copy()] if cfg.record_iterates else None
    counts = []
    sizes = set()
    converged = False
    iterations = 0
    for _ in range(cfg.max_iters):
        before = tally.snapshot()
        # (theta I - S) x + b: 2 DCTs + 2 DSTs
        u = apply_block_transform("skew", apply_q(x, transposed=True), transposed=True)
        u = xpattern_apply(sigma, theta, "minus", u)
        u = apply_q(apply_block_transform("skew", u)) + b
        # first half-step solve fused with the second half-step multiply:
        # (theta I - C)(theta I + C)^{-1} shares the circulant block factor
        t = apply_block_transform("circulant", apply_q(u), transposed=True)
        w = xpattern_shifted_solve(omega, theta, t)
        v = apply_q(apply_block_transform(
            "circulant", xpattern_apply(omega, theta, "minus", w)),
            transposed=True) + b
        # (theta I + S)^{-1}: 2 DCTs + 2 DSTs
        z = apply_block_transform("skew", apply_q(v, transposed=True), transposed=True)
        z = xpattern_shifted_solve(sigma, theta, z)
        x = apply_q(apply_block_transform("skew", z))
        after = tally.snapshot()
        dct_used, dst_used, size_delta = tally.delta(before, after)
        counts.append((dct_used, dst_used))
        sizes.update(size_delta.keys())
        iterations += 1
        if iterates is not None:
            iterates.append(x.copy())
        rel = np.linalg.norm(b - toeplitz_apply(x)) / r0
        residuals.append(rel)
        if rel <= cfg.tol:
            converged = True
            break
    return SolveReport(x, iterations, np.array(residuals), converged, notes,
                       iterates, counts, sizes)


def _solve_fft(T, b, x0, cfg):
    n, theta = T.n, cfg.theta
    cpart, spart = cscs_split(T)
    spec_c = real_spectrum("circulant", cpart.col)
    spec_s = real_spectrum("skew", spart.col)
    notes = _pd_warnings(spec_c, spec_s)
    # Lambda[k] = sum_u c[u] e^{+2 pi i u k/n}; Lambdatilde from the
    # half-rotated column (D-conjugate modulation)
    lam_c = np.conj(dft(cpart.col))
    dbar = np.exp(-1j * np.pi * np.arange(n) / n)
    lam_s = dft(spart.col * dbar)
    for lam, what in ((lam_c, "circulant"), (lam_s, "skew-circulant")):
        j = int(np.argmin(np.abs(theta + lam)))
        if abs(theta + lam[j]) == 0.0:
            raise SingularShiftError(
                f"shift theta={theta} is singular for the {what} factor "
                f"at eigenvalue index {j}", index=j)

    def c_apply(diagvals, v):
        return dft(diagvals * dft(v, inverse=True))

    def s_apply(diagvals, v):
        return np.conj(dbar) * dft(diagvals * dft(dbar * v), inverse=True)

    def toeplitz_apply(v):
        return (c_apply(lam_c, v) + s_apply(lam_s, v)).real

    x = x0.copy()
    r0 = np.linalg.norm(b - toeplitz_apply(x)) if x.any() else np.linalg.norm(b)
    if r0 == 0.0:
        return SolveReport(x, 0, np.empty(0), True, notes,
                           [x.copy()] if cfg.record_iterates else None, None, None)

    residuals = []
    iterates = [x.copy()] if cfg.record_iterates else None
    converged = False
    iterations = 0
    for _ in range(cfg.max_iters):
        u = s_apply(theta - lam_s, x) + b
        w = dft(u, inverse=True)
        v = dft((theta - lam_c) / (theta + lam_c) * w) + b
        x = (np.conj(dbar) * dft(dft(dbar * v) / (theta + lam_s), inverse=True)).real
        iterations += 1
        if iterates is not None:
            iterates.append(x.copy())
        rel = np.linalg.norm(b - toeplitz_apply(x)) / r0
        residuals.append(rel)
        if rel <= cfg.tol:
            converged = True
            break
    return SolveReport(x, iterations, np.array(residuals), converged, notes,
                       iterates, None, None)


def iteration_matrix_rho(T: ToeplitzBands, theta: float) -> float:
    """Spectral radius of the CSCS iteration matrix, via dense eigenvalues.

    The iteration matrix is
    M(theta) = (theta I + S)^{-1} (theta I - C) (theta I + C)^{-1} (theta I - S);
    rho < 1 iff the iteration converges for every initial guess.  Dense
    O(n^3) work, guarded at n <= 4096.
    """
    n = T.n
    if n > RHO_DENSE_GUARD:
        raise ValueError(
            f"dense spectral radius is guarded at n <= {RHO_DENSE_GUARD}, got {n}")
    cpart, spart = cscs_split(T)
    C = dense_of(cpart)
    S = dense_of(spart)
    eye = np.eye(n)
    try:
        inner = np.linalg.solve(theta * eye + C, theta * eye - S)
        M = np.linalg.solve(theta * eye + S, (theta * eye - C) @ inner)
    except np.linalg.LinAlgError as exc:
        raise SingularShiftError(
            f"shift theta={theta} makes theta*I+C or theta*I+S singular") from exc
    return float(np.abs(np.linalg.eigvals(M)).max())


def _factor_bound(pattern, theta):
    num = (theta - pattern.diag) ** 2 + pattern.anti ** 2
    den = (theta + pattern.diag) ** 2 + pattern.anti ** 2
    with _warnings.catch_warnings():
        _warnings.simplefilter("ignore")  # 0/0 at an exactly singular grid point
        vals = np.sqrt(num / den)
    return float(np.max(vals))


def theta_scan(T: ToeplitzBands, grid) -> tuple[float, np.ndarray]:
    """Evaluate the contraction upper bound over a grid of shifts.

    For normal C and S the iteration matrix norm is bounded by the
    product of max_k sqrt(((theta-a)^2+b^2) / ((theta+a)^2+b^2)) over
    the two spectra; the bound is contractive when both parts are
    positive definite.  Returns the grid point minimizing the product
    (ties broken toward the smallest theta) plus all evaluated bounds.
    This is a parameter-picking convenience, not an optimality claim.
    """
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("theta grid must be a nonempty 1-d vector")
    if not np.all(grid > 0):
        raise ValueError("theta grid entries must be positive")
    cpart, spart = cscs_split(T)
    omega = real_spectrum("circulant", cpart.col).expand()
    sigma = real_spectrum("skew", spart.col).expand()
    bounds = np.array([_factor_bound(omega, th) * _factor_bound(sigma, th)
                       for th in grid])
    best = np.lexsort((grid, bounds))[0]
    return float(grid[best]), bounds
