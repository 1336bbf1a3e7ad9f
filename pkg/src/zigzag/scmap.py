"""Schwarz-Christoffel maps of the two complementary zigzag domains.

Both domains of a symmetric genus-p zigzag are conformal images of the
upper half-plane under maps with integrand

    prod_{m=-p}^{p} (t - s_m)^{e_m},     e_m = +-(k-1)/k alternating,

over a symmetric prevertex tuple s_{-p} < ... < s_0 = 0 < s_1 = 1 < ... .
The two complementary domains use negated exponent patterns.  Following
the usual labelling, the NE pattern starts and ends with +(k-1)/k
(p+1 positive entries) and the SW pattern is its negation.

Developed along the real axis, the NE integrand traces the vertex chain in
reversed order (s_j lands on the mirror vertex P_{-j}) and the SW integrand
traces P_{-p}, ..., P_p directly; a complex-linear normalization cannot
swap the two since the raw images are mirror congruent.  ``forward_map``
accounts for this when matching the developed chain to build_vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import FitFailure, NoConvergence
from .geometry import ZigzagParams, build_vertices, canonicalize
from . import quadrature as quad

__all__ = [
    "ExponentPattern",
    "Prevertices",
    "PeriodVector",
    "side_length",
    "solve_parameter_problem",
    "forward_map",
    "periods",
    "coalescence_log_fit",
    "make_coalescing_family",
]


@dataclass(frozen=True)
class ExponentPattern:
    """Alternating exponents e_{-p} .. e_p of one complementary domain."""

    orientation: str  # "NE" or "SW"
    genus: int
    turn_order: int = 2

    def __post_init__(self):
        if self.orientation not in ("NE", "SW"):
            raise ValueError(f"orientation must be NE or SW, got {self.orientation}")
        if self.genus < 0 or self.turn_order < 2:
            raise ValueError("need genus >= 0 and turn order >= 2")

    @property
    def exponents(self) -> np.ndarray:
        p, k = self.genus, self.turn_order
        mag = (k - 1.0) / k
        j = np.arange(-p, p + 1)
        e = np.where((j + p) % 2 == 0, mag, -mag)
        return e if self.orientation == "NE" else -e

    def exponent(self, j: int) -> float:
        return float(self.exponents[j + self.genus])


def ne_pattern(genus: int, turn_order: int = 2) -> ExponentPattern:
    return ExponentPattern("NE", genus, turn_order)


def sw_pattern(genus: int, turn_order: int = 2) -> ExponentPattern:
    return ExponentPattern("SW", genus, turn_order)


@dataclass(frozen=True)
class Prevertices:
    """Symmetric increasing prevertex tuple s_{-p}, ..., s_p.

    Normalization: s_0 = 0, s_1 = 1 (for p >= 1), s_{-j} = -s_j.
    """

    values: tuple[float, ...]

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.size % 2 != 1:
            raise ValueError("prevertex tuple must have odd length 2p+1")
        p = v.size // 2
        if np.any(np.diff(v) <= 0.0):
            raise ValueError(f"prevertices must be strictly increasing: {v}")
        if abs(v[p]) > 1e-14:
            raise ValueError(f"s_0 must be 0, got {v[p]}")
        if p >= 1 and abs(v[p + 1] - 1.0) > 1e-14:
            raise ValueError(f"s_1 must be 1, got {v[p + 1]}")
        if not np.allclose(v + v[::-1], 0.0, atol=1e-12):
            raise ValueError("prevertices must satisfy s_{-j} = -s_j")
        object.__setattr__(self, "values", tuple(float(x) for x in v))

    @property
    def genus(self) -> int:
        return len(self.values) // 2

    def value(self, j: int) -> float:
        """s_j for a signed index."""
        return self.values[j + self.genus]

    @staticmethod
    def from_positive_gaps(gaps) -> "Prevertices":
        """Build the symmetric tuple from the p-1 gaps above s_1."""
        pos = np.concatenate(([0.0, 1.0], 1.0 + np.cumsum(gaps))) if len(gaps) else np.array([0.0, 1.0])
        return Prevertices.from_positive(pos)

    @staticmethod
    def from_positive(pos) -> "Prevertices":
        """Build the symmetric tuple from (s_0, s_1, ..., s_p)."""
        pos = np.asarray(pos, dtype=float)
        return Prevertices(tuple(np.concatenate((-pos[:0:-1], pos))))


@dataclass(frozen=True)
class PeriodVector:
    """Complex periods of the positive-side segments, normalized so that
    the moduli match the vertex chain of the underlying zigzag, together
    with quadrature error estimates."""

    values: tuple[complex, ...]
    errors: tuple[float, ...] = field(default=())


def side_length(prev: Prevertices, pat: ExponentPattern, j: int) -> float:
    """Euclidean length of the image of (s_j, s_{j+1}), 0 <= j < p.

    This is the raw modulus integral of the SC integrand; no chain
    normalization is applied.  Relative accuracy 1e-10 or better, enforced
    by node doubling (QuadratureFailure otherwise).
    """
    p = prev.genus
    if not 0 <= j < p:
        raise ValueError(f"segment index {j} out of range for genus {p}")
    value, _ = quad.interval_abs_integral(prev.values, pat.exponents, j + p)
    return value


def _raw_side(prev_values, exponents, interval_index) -> float:
    value, _ = quad.interval_abs_integral(prev_values, exponents, interval_index)
    return value


def solve_parameter_problem(
    z: ZigzagParams,
    pat: ExponentPattern,
    initial_gaps=None,
    tol: float = 1e-11,
    max_iter: int = 60,
) -> Prevertices:
    """Prevertices whose SC side-length ratios match the zigzag's.

    Solves for the p-1 gaps g_j = s_{j+1} - s_j (j >= 1) in logarithmic
    coordinates, which keeps the ordering constraint implicit.  Damped
    Newton with a finite-difference Jacobian; falls back to Nelder-Mead on
    the squared residual norm if Newton stalls, then re-polishes.
    """
    z = canonicalize(z)
    p = z.genus
    if p < 1:
        raise ValueError("parameter problem needs genus >= 1")
    if p == 1:
        return Prevertices((-1.0, 0.0, 1.0))

    target = np.log(np.asarray(z.side_lengths[1:]) / z.side_lengths[0])
    exps = pat.exponents

    def residual(u):
        prevv = Prevertices.from_positive_gaps(np.exp(u)).values
        sides = np.array([_raw_side(prevv, exps, j + p) for j in range(p)])
        return np.log(sides[1:] / sides[0]) - target

    if initial_gaps is not None:
        u = np.log(np.asarray(initial_gaps, dtype=float))
    else:
        u = np.log(np.asarray(z.side_lengths[1:]) / z.side_lengths[0])

    trace = []

    def jacobian(u, r0):
        h = 1e-6
        J = np.empty((r0.size, u.size))
        for i in range(u.size):
            ui = u.copy()
            ui[i] += h
            J[:, i] = (residual(ui) - r0) / h
        return J

    def damped_newton(u):
        r = residual(u)
        for _ in range(max_iter):
            norm = float(np.max(np.abs(r)))
            trace.append(norm)
            if norm <= tol:
                return u, norm
            try:
                step = np.linalg.solve(jacobian(u, r), -r)
            except np.linalg.LinAlgError:
                return u, norm
            for _ in range(12):
                u_try = u + step
                r_try = residual(u_try)
                if np.max(np.abs(r_try)) < norm:
                    u, r = u_try, r_try
                    break
                step *= 0.5
            else:
                return u, norm
        return u, float(np.max(np.abs(r)))

    u, norm = damped_newton(u)
    if norm <= tol:
        return Prevertices.from_positive_gaps(np.exp(u))

    # simplex rescue on ||r||^2, then a final Newton polish
    from scipy.optimize import minimize as _nm

    rescue = _nm(
        lambda v: float(np.sum(residual(v) ** 2)),
        u,
        method="Nelder-Mead",
        options={"xatol": 1e-13, "fatol": 1e-24, "maxiter": 4000},
    )
    u, norm = damped_newton(rescue.x)
    if norm <= tol:
        return Prevertices.from_positive_gaps(np.exp(u))
    raise NoConvergence(
        f"parameter problem stalled at residual {norm:.3e} for {z}", trace
    )


def _segment_directions_from_exponents(exps: np.ndarray) -> np.ndarray:
    """Directions of the raw developed image of the intervals between
    consecutive prevertices, terminal ray last.

    On an interval the integrand has constant argument pi times the sum of
    the exponents of the prevertices to its right (principal branches from
    the upper half-plane)."""
    tail = np.cumsum(exps[::-1])[::-1]  # tail[m] = sum of e_i for i >= m
    args = np.concatenate((tail[1:], [0.0])) * math.pi
    return np.exp(1j * args)


def _raw_chain(prev: Prevertices, pat: ExponentPattern):
    """Raw developed vertices V_{-p..p} (V at s_0 = 0) and interval data."""
    p = prev.genus
    exps = pat.exponents
    sides = np.array([_raw_side(prev.values, exps, m) for m in range(2 * p)])
    dirs = _segment_directions_from_exponents(exps)[:-1]  # per interval m = 0..2p-1
    steps = sides * dirs
    V = np.zeros(2 * p + 1, dtype=complex)
    V[p + 1:] = np.cumsum(steps[p:])
    V[:p] = -np.cumsum(steps[:p][::-1])[::-1]
    return V, sides, dirs


def _chain_normalization(prev: Prevertices, pat: ExponentPattern):
    """Affine map A*raw + B sending the raw developed chain onto the
    normalized vertex chain of the induced zigzag.

    The NE integrand develops the chain in reversed vertex order, so its
    raw vertices are matched against P_p, ..., P_{-p}; the SW integrand is
    matched against P_{-p}, ..., P_p.
    """
    p = prev.genus
    V, sides, dirs = _raw_chain(prev, pat)
    pos_sides = sides[p:]
    lengths = tuple(pos_sides / np.sum(pos_sides))
    chain = build_vertices(ZigzagParams(p, pat.turn_order, lengths))
    targets = np.asarray(chain.vertices)
    if pat.orientation == "NE":
        targets = targets[::-1]
    A = (targets[p + 1] - targets[p]) / (V[p + 1] - V[p])
    B = targets[p] - A * V[p]
    return A, B, V, targets, chain


def forward_map(prev: Prevertices, pat: ExponentPattern, t: complex) -> complex:
    """Normalized SC image of a point t in the closed upper half-plane.

    The image chain coincides with build_vertices of the induced zigzag;
    prevertex s_j lands on P_j for the SW pattern and on the mirror vertex
    P_{-j} for the NE pattern.  The integration path is a straight segment
    from 0 with semicircular detours of radius min-gap/4 around intervening
    prevertices.
    """
    A, B, V, _, _ = _chain_normalization(prev, pat)
    return A * _raw_map(prev, pat, complex(t), V) + B


def _raw_map(prev: Prevertices, pat: ExponentPattern, t: complex, V=None) -> complex:
    p = prev.genus
    s = np.asarray(prev.values)
    exps = pat.exponents
    if V is None:
        V, _, _ = _raw_chain(prev, pat)

    # exact prevertex hits: cumulative interval walk
    hit = np.nonzero(np.isclose(s, t.real, rtol=0.0, atol=1e-15))[0] if t.imag == 0.0 else []
    if t.imag == 0.0 and len(hit):
        return complex(V[hit[0]])

    gaps = np.diff(s)
    r = float(np.min(gaps)) / 4.0 if gaps.size else 0.25

    if t.imag == 0.0:
        # real target between prevertices: walk to the nearest lower prevertex,
        # then integrate the partial interval
        x = t.real
        if x < s[0] or x > s[-1]:
            anchor = 0 if x < s[0] else 2 * p
            piece = quad.segment_integral(s, exps, s[anchor], x, sing0=anchor)
            return complex(V[anchor] + piece)
        m = int(np.searchsorted(s, x)) - 1
        piece = quad.segment_integral(s, exps, s[m], x, sing0=m)
        return complex(V[m] + piece)

    # interior target: straight path from s_0 = 0 with detours
    pieces = _detoured_path(s, 0.0 + 0j, t, r)
    total = 0.0 + 0j
    for kind, payload in pieces:
        if kind == "seg":
            z0, z1, s0, s1 = payload
            total += quad.segment_integral(s, exps, z0, z1, sing0=s0, sing1=s1)
        else:
            idx, radius, th0, th1 = payload
            total += quad.arc_integral(s, exps, idx, radius, th0, th1)
    return complex(V[p] + total)


def _detoured_path(s, z0, z1, r):
    """Straight segment z0 -> z1 with semicircular detours in the upper
    half-plane around prevertices closer than r to the segment.

    Endpoints sitting exactly on a prevertex get Gauss-Jacobi launches
    instead of a detour; an endpoint strictly inside a detour circle
    shrinks that circle so the chord geometry stays consistent."""
    direction = z1 - z0
    length = abs(direction)
    unit = direction / length

    def sing_at(z):
        return next((i for i, sm in enumerate(s) if abs(z - sm) < 1e-15), None)

    start_sing, end_sing = sing_at(z0), sing_at(z1)
    events = []
    for idx, sm in enumerate(s):
        if idx == start_sing or idx == end_sing:
            continue  # algebraic launch handles its own neighbourhood
        # keep both endpoints strictly outside the detour circle
        r_eff = min(r, 0.8 * abs(z0 - sm), 0.8 * abs(z1 - sm))
        w = (sm - z0) / unit
        proj, dist = w.real, abs(w.imag)
        if dist >= r_eff * (1 - 1e-12):
            continue
        half = math.sqrt(max(r_eff * r_eff - dist * dist, 0.0))
        t_in, t_out = proj - half, proj + half
        if t_out <= 1e-12 * length or t_in >= length * (1.0 - 1e-12):
            continue
        events.append((t_in, t_out, idx, sm, r_eff))
    events.sort()

    pieces = []
    cursor, cursor_sing = z0, start_sing
    for t_in, t_out, idx, sm, r_eff in events:
        z_in = z0 + t_in * unit
        z_out = z0 + t_out * unit
        if abs(z_in - cursor) > 1e-15:
            pieces.append(("seg", (cursor, z_in, cursor_sing, None)))
        th0 = math.atan2((z_in - sm).imag, (z_in - sm).real)
        th1 = math.atan2((z_out - sm).imag, (z_out - sm).real)
        # both angles lie in [0, pi]; sweeping directly keeps the arc
        # inside the closed upper half-plane
        pieces.append(("arc", (idx, r_eff, th0, th1)))
        cursor, cursor_sing = z_out, None
    if abs(z1 - cursor) > 1e-15:
        pieces.append(("seg", (cursor, z1, cursor_sing, end_sing)))
    return pieces


def periods(prev: Prevertices, pat: ExponentPattern) -> PeriodVector:
    """Normalized complex periods a_j = F(s_{j+1}) - F(s_j), j = 0..p-1.

    Moduli equal the side lengths of the normalized vertex chain; for turn
    order 2 consecutive periods differ in direction by a factor +-i.
    """
    p = prev.genus
    A, _, V, _, _ = _chain_normalization(prev, pat)
    vals = tuple(complex(A * (V[p + j + 1] - V[p + j])) for j in range(p))
    errs = []
    for j in range(p):
        _, err = quad.interval_abs_integral(prev.values, pat.exponents, j + p)
        errs.append(abs(A) * err)
    return PeriodVector(vals, tuple(errs))


def make_coalescing_family(base: Prevertices, j: int, deltas):
    """Prevertex family collapsing the gap (s_{j+1}, s_{j+2}) to each delta,
    symmetrically, holding every other positive gap fixed."""
    p = base.genus
    if not 0 <= j <= p - 2:
        raise ValueError(f"need 0 <= j <= p-2 so the gap above s_{j + 1} exists")
    pos = np.array([base.value(m) for m in range(p + 1)])
    gaps = np.diff(pos)  # gaps[m] = s_{m+1} - s_m
    members = []
    for d in deltas:
        g = gaps.copy()
        g[j + 1] = d
        members.append(Prevertices.from_positive_gaps(g[1:]))
    return members


def coalescence_log_fit(deltas, members, pat: ExponentPattern, j: int):
    """Certify the holomorphic-plus-logarithm structure of the period a_j
    along a family where the neighbouring gap (s_{j+1}, s_{j+2}) collapses.

    Least-squares decomposition over the sampled gaps delta:

        |a_j(delta)| ~= c0 + q * delta + c1 * (log(delta)/pi) * |a_{j+1}(delta)|

    The collapsing period |a_{j+1}| vanishes linearly, so the logarithmic
    coupling enters at order delta*log(delta); the decomposition isolates
    its coefficient, which the monodromy of the integrand forces to be +1
    or -1, with opposite signs for the NE and SW patterns (the zigzag turns
    opposite ways at the shared vertex).  A plain c0 + c1*log(delta) model
    leaves an order-one relative misfit and cannot be certified.

    Returns (c0, c1, residual) where residual is the rms misfit relative to
    the rms variation of a_j over the family, so certification demands that
    the model explain essentially all of the observed variation.  Raises
    FitFailure when the residual exceeds 1e-3.  A family whose gap stays
    bounded away from zero passes with c1 ~ 0 (no logarithmic component).
    """
    deltas = np.asarray(list(deltas), dtype=float)
    if deltas.size < 6:
        raise ValueError("need at least 6 gap samples")
    span = np.max(deltas) / np.min(deltas)
    if span < 99.0:
        raise ValueError("gap samples must span at least two decades")
    p = pat.genus
    y = np.empty(deltas.size)
    xlog = np.empty(deltas.size)
    for i, member in enumerate(members):
        y[i] = _raw_side(member.values, pat.exponents, j + p)
        xlog[i] = (
            math.log(deltas[i]) / math.pi
            * _raw_side(member.values, pat.exponents, j + 1 + p)
        )
    A = np.column_stack((np.ones_like(deltas), deltas, xlog))
    scale = np.max(np.abs(A), axis=0)
    coef, *_ = np.linalg.lstsq(A / scale, y, rcond=None)
    coef = coef / scale
    misfit = y - A @ coef
    variation = float(np.sqrt(np.mean((y - np.mean(y)) ** 2)))
    rms = float(np.sqrt(np.mean(misfit**2)))
    residual = rms / variation if variation > 0.0 else 0.0
    c0, c1 = complex(coef[0]), complex(coef[2])
    if residual > 1e-3:
        raise FitFailure(
            f"log model rejected: relative residual {residual:.3e} > 1e-3"
        )
    return c0, c1, residual
