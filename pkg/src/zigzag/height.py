"""Height function on the moduli cell and the continuation descent.

The height of a zigzag compares the extremal-length vectors of its two
complementary domains,

    D = sum_j [exp(1/E_ne(j)) - exp(1/E_sw(j))]^2 + [E_ne(j) - E_sw(j)]^2,

and vanishes exactly at reflexive zigzags, where the two prevertex tuples
coincide.  Genus 0 and 1 are single points with D = 0.  Higher genus is
solved by derivative-free simplex descent in unconstrained log-ratio
coordinates on the open simplex of side lengths, seeded by handle addition
from the genus p-1 solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from .errors import LadderFailure, StepTooLarge, ZigzagError
from .geometry import ZigzagParams, add_handle, canonicalize, stratum_distance
from .scmap import Prevertices, ne_pattern, solve_parameter_problem, sw_pattern
from .elliptic import extremal_lengths

__all__ = [
    "SolveOptions",
    "TraceRow",
    "SolutionRecord",
    "height",
    "height_parts",
    "grad_height_fd",
    "minimize",
    "continuation_solve",
]

_EXP_CAP = 700.0  # exp(1/E) guard; unreachable for float-representable cross-ratios


class TraceRow(NamedTuple):
    step: int
    height: float
    grad_norm: float
    stratum_distance: float


@dataclass(frozen=True)
class SolveOptions:
    tol: float = 1e-10
    eps: float = 0.05
    max_iter: int = 20000
    xatol: float = 1e-12
    fatol: float = 1e-22
    fd_step: float = 1e-5


@dataclass(frozen=True)
class SolutionRecord:
    """A zigzag with both prevertex solutions and its height diagnostics."""

    zigzag: ZigzagParams
    prev_ne: Prevertices
    prev_sw: Prevertices
    ext_ne: tuple[float, ...]
    ext_sw: tuple[float, ...]
    height: float
    converged: bool
    trace: tuple[TraceRow, ...] = field(default=())


def _guarded_exp(x: float) -> float:
    return math.exp(min(x, _EXP_CAP))


def _height_from_ext(ext_ne, ext_sw) -> float:
    total = 0.0
    for en, es in zip(ext_ne, ext_sw):
        total += (_guarded_exp(1.0 / en) - _guarded_exp(1.0 / es)) ** 2
        total += (en - es) ** 2
    return total


def height_parts(z: ZigzagParams, warm=None):
    """Solve both parameter problems and return
    (prev_ne, prev_sw, ext_ne, ext_sw, D)."""
    z = canonicalize(z)
    p = z.genus
    if p <= 1:
        prev = Prevertices((-1.0, 0.0, 1.0)) if p == 1 else Prevertices((0.0,))
        return prev, prev, (), (), 0.0
    warm_ne, warm_sw = warm if warm is not None else (None, None)
    prev_ne = solve_parameter_problem(z, ne_pattern(p, z.turn_order), initial_gaps=warm_ne)
    prev_sw = solve_parameter_problem(z, sw_pattern(p, z.turn_order), initial_gaps=warm_sw)
    ext_ne = extremal_lengths(prev_ne)
    ext_sw = extremal_lengths(prev_sw)
    return prev_ne, prev_sw, ext_ne, ext_sw, _height_from_ext(ext_ne, ext_sw)


def height(z: ZigzagParams) -> float:
    """The height D(z) >= 0; zero exactly at reflexive zigzags."""
    return height_parts(z)[4]


def _simplex_tangent_basis(p: int) -> np.ndarray:
    """Directions e_i - e_{p-1}, i = 0..p-2, spanning the sum-zero tangent."""
    basis = np.zeros((p - 1, p))
    for i in range(p - 1):
        basis[i, i] = 1.0
        basis[i, p - 1] = -1.0
    return basis


def grad_height_fd(z: ZigzagParams, h: float = 1e-5) -> tuple[float, ...]:
    """Central-difference gradient of D along the simplex tangent basis.

    Requires stratum_distance(z) > 2h so that both one-sided perturbations
    stay interior; raises StepTooLarge otherwise.
    """
    z = canonicalize(z)
    p = z.genus
    if p <= 1:
        return ()
    if not stratum_distance(z) > 2.0 * h:
        raise StepTooLarge(f"step {h} too large at stratum distance {stratum_distance(z)}")
    base = np.asarray(z.side_lengths)
    grad = []
    for d in _simplex_tangent_basis(p):
        zp = ZigzagParams(p, z.turn_order, tuple(base + h * d))
        zm = ZigzagParams(p, z.turn_order, tuple(base - h * d))
        grad.append((height(zp) - height(zm)) / (2.0 * h))
    return tuple(grad)


def _lengths_from_coords(x: np.ndarray, p: int) -> tuple[float, ...]:
    """Log-ratio chart of the open simplex: l_j proportional to exp(x_j),
    with the last coordinate gauged to zero."""
    w = np.exp(np.concatenate((x, [0.0])) - max(np.max(x, initial=0.0), 0.0))
    return tuple(w / np.sum(w))


def _coords_from_lengths(lengths) -> np.ndarray:
    l = np.asarray(lengths)
    return np.log(l[:-1] / l[-1])


def minimize(z0: ZigzagParams, opts: SolveOptions | None = None) -> SolutionRecord:
    """Descend D from z0 by Nelder-Mead in the log-ratio chart.

    Converged iff the final height is below opts.tol; a stalled search
    returns the best record with converged = False (the trace's stratum
    distance column distinguishes boundary escapes from stagnation).
    Trace rows log the running best height per iteration; the gradient
    column is NaN until the final row, where the finite-difference
    gradient is evaluated once (it costs 2(p-1) extra height solves).
    """
    opts = opts or SolveOptions()
    z0 = canonicalize(z0)
    p = z0.genus
    if p <= 1:
        prev_ne, prev_sw, ext_ne, ext_sw, d = height_parts(z0)
        return SolutionRecord(z0, prev_ne, prev_sw, ext_ne, ext_sw, d, True,
                              (TraceRow(0, d, 0.0, stratum_distance(z0)),))

    warm = {"ne": None, "sw": None}
    best = {"d": math.inf, "z": z0, "parts": None}
    trace: list[TraceRow] = []

    def positive_gaps(prev):
        return tuple(np.diff([prev.value(j) for j in range(1, prev.genus + 1)]))

    def objective(x):
        lengths = _lengths_from_coords(np.asarray(x), p)
        z = ZigzagParams(p, z0.turn_order, lengths)
        try:
            parts = height_parts(z, warm=(warm["ne"], warm["sw"]))
        except ZigzagError:
            return 1e9  # barrier against quadrature-hostile corners
        prev_ne, prev_sw, *_, d = parts
        warm["ne"], warm["sw"] = positive_gaps(prev_ne), positive_gaps(prev_sw)
        if d < best["d"]:
            best.update(d=d, z=z, parts=parts)
        return d

    iteration = {"n": 0}

    def callback(xk):
        iteration["n"] += 1
        trace.append(
            TraceRow(iteration["n"], best["d"], math.nan,
                     stratum_distance(best["z"]))
        )

    x0 = _coords_from_lengths(z0.side_lengths)
    objective(x0)
    if best["parts"] is None:
        raise RuntimeError(f"height evaluation failed at seed {z0}")
    _scipy_minimize(
        objective,
        x0,
        method="Nelder-Mead",
        callback=callback,
        options={
            "xatol": opts.xatol,
            "fatol": opts.fatol,
            "maxiter": opts.max_iter,
            "maxfev": opts.max_iter,
            "initial_simplex": _initial_simplex(x0),
        },
    )

    z_best = best["z"]
    prev_ne, prev_sw, ext_ne, ext_sw, d = best["parts"]
    converged = d < opts.tol and stratum_distance(z_best) > 0.0
    grad_norm = math.nan
    if converged:
        try:
            grad_norm = float(np.linalg.norm(grad_height_fd(z_best, opts.fd_step)))
        except StepTooLarge:
            pass
    trace.append(TraceRow(iteration["n"] + 1, d, grad_norm, stratum_distance(z_best)))
    return SolutionRecord(z_best, prev_ne, prev_sw, ext_ne, ext_sw, d, converged,
                          tuple(trace))


def _initial_simplex(x0: np.ndarray) -> np.ndarray:
    n = x0.size
    simplex = np.tile(x0, (n + 1, 1))
    for i in range(n):
        simplex[i + 1, i] += 0.05
    return simplex


def _trivial_record(p: int, k: int) -> SolutionRecord:
    z = ZigzagParams(p, k, (1.0,) * p if p == 1 else ())
    prev = Prevertices((-1.0, 0.0, 1.0)) if p == 1 else Prevertices((0.0,))
    return SolutionRecord(z, prev, prev, (), (), 0.0, True,
                          (TraceRow(0, 0.0, 0.0, stratum_distance(z)),))


def continuation_solve(p: int, k: int = 2, opts: SolveOptions | None = None,
                       keep_ladder: bool = False):
    """Build the solution ladder from genus 0 up to genus p.

    Genus 0 and 1 are exact; each further genus is seeded by inserting a
    short handle side into the previous solution and descending D.  The
    insertion length is halved up to four times if the descent stalls.
    Raises LadderFailure with the partial ladder if a genus cannot be
    solved; with keep_ladder=True returns the full dict genus -> record.
    """
    if p < 0 or k < 2:
        raise ValueError("need genus >= 0 and turn order >= 2")
    opts = opts or SolveOptions()
    ladder: dict[int, SolutionRecord] = {}
    for q in range(0, p + 1):
        if q <= 1:
            ladder[q] = _trivial_record(q, k)
            continue
        parent = ladder[q - 1]
        eps = min(opts.eps, 0.9 * stratum_distance(parent.zigzag) / 4.0)
        record = None
        for _ in range(5):
            seed = add_handle(parent, eps)
            candidate = minimize(seed, opts)
            if candidate.converged:
                record = candidate
                break
            record = candidate
            eps *= 0.5
        if record is None or not record.converged:
            raise LadderFailure(
                f"continuation stalled at genus {q}", records=ladder, failed_genus=q
            )
        ladder[q] = record
    return ladder if keep_ladder else ladder[p]
