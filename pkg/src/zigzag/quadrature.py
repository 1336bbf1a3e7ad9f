"""Panel quadrature for products with algebraic endpoint singularities.

Integrands here are of the form prod_m (z - s_m)^{e_m} with real nodes s_m
and exponents e_m > -1.  Singular endpoints are absorbed by Gauss-Jacobi
rules; the rest of an interval is covered by dyadically graded
Gauss-Legendre panels that never stretch closer to a foreign singularity
than their own length, so every panel sees an analytic integrand with a
uniformly fat Bernstein ellipse.  Accuracy is certified by node doubling.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .errors import QuadratureFailure

_BASE_NODES = 24
_MAX_DOUBLINGS = 4
_REL_TOL = 1e-12


@lru_cache(maxsize=512)
def _rule(n: int, alpha: float, beta: float):
    x, w = roots_jacobi(n, alpha, beta)
    return x, w


def _upper_branch(z):
    """Clamp signed zeros so boundary points take upper half-plane logs."""
    z = np.asarray(z, dtype=complex)
    return z.real + 1j * (z.imag + 0.0)


def product_value(prev, exps, z, skip=()):
    """prod_m (z - s_m)^{e_m} with principal branches, z in closed UHP."""
    z = _upper_branch(np.atleast_1d(z))
    acc = np.zeros(z.shape, dtype=complex)
    for m, (s, e) in enumerate(zip(prev, exps)):
        if m in skip:
            continue
        acc += e * np.log(_upper_branch(z - s))
    return np.exp(acc)


def _graded_breaks(length: float, clearance: float) -> list[float]:
    """Offsets 0 = b_0 < b_1 < ... <= length covering [0, length] from a
    singular endpoint: first panel no longer than half the clearance to the
    nearest foreign singularity, then dyadic doubling."""
    first = min(length, clearance) / 2.0
    breaks = [0.0, first]
    while breaks[-1] < length:
        h = breaks[-1]  # next panel as long as the distance back to the endpoint
        breaks.append(min(length, breaks[-1] + max(h, first)))
    return breaks


class IntervalPlan:
    """Panel decomposition of one real interval (s_j, s_{j+1}), reusable
    across node-count refinements.

    Works in offset coordinates u = t - s_j so that the distances to the
    two singular endpoints are u and length - u exactly; absolute-position
    cancellation would otherwise cap the accuracy on tiny intervals."""

    def __init__(self, prev, exps, j):
        prev = np.asarray(prev, dtype=float)
        a, b = prev[j], prev[j + 1]
        length = b - a
        others = np.delete(prev, [j, j + 1])
        da = float(np.min(np.abs(others - a))) if others.size else length
        db = float(np.min(np.abs(others - b))) if others.size else length
        half = length / 2.0
        self.left_breaks = _graded_breaks(half, min(da, length))
        self.right_breaks = _graded_breaks(half, min(db, length))
        self.exps, self.j = np.asarray(exps, float), j
        self.length = length
        self.far_offsets = np.delete(prev, [j, j + 1]) - a  # u-coords of others
        self.far_exps = np.delete(self.exps, [j, j + 1])

    def _smooth_log(self, u, include_left=True, include_right=True):
        """sum of exponent-weighted logs at offsets u, minus the absorbed
        endpoint factor(s)."""
        acc = np.zeros_like(u)
        if include_left:
            acc += self.exps[self.j] * np.log(u)
        if include_right:
            acc += self.exps[self.j + 1] * np.log(self.length - u)
        for d, e in zip(self.far_offsets, self.far_exps):
            acc += e * np.log(np.abs(u - d))
        return acc

    def integrate_abs(self, n: int) -> float:
        """Integral of prod |t - s_m|^{e_m} over the interval, n-point panels."""
        ea, eb = self.exps[self.j], self.exps[self.j + 1]
        L = self.length
        total = 0.0

        # left Gauss-Jacobi panel: weight u^{ea}
        u1 = self.left_breaks[1]
        x, w = _rule(n, 0.0, ea)
        h = u1 / 2.0
        u = h * (x + 1.0)
        g = self._smooth_log(u, include_left=False)
        total += h ** (1.0 + ea) * float(w @ np.exp(g))

        # right Gauss-Jacobi panel: weight (L - u)^{eb}
        v1 = self.right_breaks[1]
        x, w = _rule(n, eb, 0.0)
        h = v1 / 2.0
        u = L - h * (1.0 - x)
        g = self._smooth_log(u, include_right=False)
        total += h ** (1.0 + eb) * float(w @ np.exp(g))

        # interior Gauss-Legendre panels
        x, w = _rule(n, 0.0, 0.0)
        cuts = self.left_breaks[1:] + [L - v for v in self.right_breaks[1:]][::-1]
        for c0, c1 in zip(cuts[:-1], cuts[1:]):
            if c1 <= c0:
                continue
            h = (c1 - c0) / 2.0
            u = c0 + h * (x + 1.0)
            g = self._smooth_log(u)
            total += h * float(w @ np.exp(g))
        return total


def interval_abs_integral(prev, exps, j, rel_tol=_REL_TOL):
    """Modulus integral over (s_j, s_{j+1}) with node-doubling certification.

    Returns (value, error_estimate); raises QuadratureFailure if the
    doubling test never reaches ``rel_tol``.
    """
    plan = IntervalPlan(prev, exps, j)
    n = _BASE_NODES
    coarse = plan.integrate_abs(n)
    for _ in range(_MAX_DOUBLINGS):
        n *= 2
        fine = plan.integrate_abs(n)
        err = abs(fine - coarse)
        if err <= rel_tol * abs(fine):
            return fine, err
        coarse = fine
    raise QuadratureFailure(
        f"interval ({prev[j]}, {prev[j + 1]}) stuck at rel err "
        f"{err / max(abs(fine), 1e-300):.3e} with {n} nodes"
    )


def _segment_panels(z0: complex, z1: complex, prev, sing0, sing1):
    """Break [z0, z1] into panels graded away from singular endpoints and no
    longer than their clearance to the nearest prevertex."""
    length = abs(z1 - z0)
    prev = np.asarray(prev, dtype=float)
    unit = (z1 - z0) / length

    def clearance(zc, own=None):
        d = np.abs(prev - zc)
        if own is not None:
            d = np.delete(d, own)
        return float(np.min(d)) if d.size else length

    left = _graded_breaks(length / 2.0, min(clearance(z0, sing0), length)) if sing0 is not None else [0.0, length / 2.0]
    right = _graded_breaks(length / 2.0, min(clearance(z1, sing1), length)) if sing1 is not None else [0.0, length / 2.0]
    offs = left + [length - u for u in right][::-1]
    offs = sorted(set(offs))
    coarse = list(zip(offs[:-1], offs[1:]))

    panels = []

    def refine(lo, hi, depth, protected):
        if protected or depth >= 22 or hi - lo <= clearance(z0 + 0.5 * (lo + hi) * unit):
            panels.append((lo, hi))
            return
        mid = 0.5 * (lo + hi)
        refine(lo, mid, depth + 1, False)
        refine(mid, hi, depth + 1, False)

    last_hi = coarse[-1][1]
    for lo, hi in coarse:
        if hi <= lo:
            continue
        protected = (sing0 is not None and lo == 0.0) or (sing1 is not None and hi == last_hi)
        refine(lo, hi, 0, protected)
    return panels


def _segment_value(prev, exps, z0, z1, sing0, sing1, n):
    prev = np.asarray(prev, float)
    exps = np.asarray(exps, float)
    direction = z1 - z0
    length = abs(direction)
    if length == 0.0:
        return 0.0 + 0j
    unit = direction / length
    panels = _segment_panels(z0, z1, prev, sing0, sing1)
    total = 0.0 + 0j
    for lo, hi in panels:
        if hi <= lo:
            continue
        h = (hi - lo) / 2.0
        if sing0 is not None and lo == 0.0:
            e = exps[sing0]
            x, w = _rule(n, 0.0, e)
            r = lo + h * (x + 1.0)
            zs = z0 + r * unit
            vals = product_value(prev, exps, zs, skip=(sing0,))
            # (z - s)^e = (r * unit)^e along the ray out of the singular endpoint
            phase = np.exp(e * np.log(_upper_branch(np.array([unit]))))[0]
            total += (h ** (1.0 + e)) * phase * unit * (w @ vals)
        elif sing1 is not None and hi == panels[-1][1]:
            e = exps[sing1]
            x, w = _rule(n, e, 0.0)
            r = hi - h * (1.0 - x)
            zs = z0 + r * unit
            vals = product_value(prev, exps, zs, skip=(sing1,))
            phase = np.exp(e * np.log(_upper_branch(np.array([-unit]))))[0]
            total += (h ** (1.0 + e)) * phase * unit * (w @ vals)
        else:
            x, w = _rule(n, 0.0, 0.0)
            r = lo + h * (x + 1.0)
            zs = z0 + r * unit
            vals = product_value(prev, exps, zs)
            total += h * unit * (w @ vals)
    return total


def segment_integral(prev, exps, z0, z1, sing0=None, sing1=None, rel_tol=1e-11):
    """Contour integral of the product along [z0, z1] in the closed UHP.

    ``sing0``/``sing1`` name the prevertex index sitting exactly at the
    respective endpoint, if any.  Node doubling certifies the result.
    """
    n = _BASE_NODES
    coarse = _segment_value(prev, exps, z0, z1, sing0, sing1, n)
    scale = max(abs(coarse), 1e-300)
    for _ in range(_MAX_DOUBLINGS):
        n *= 2
        fine = _segment_value(prev, exps, z0, z1, sing0, sing1, n)
        err = abs(fine - coarse)
        scale = max(abs(fine), 1e-300)
        if err <= rel_tol * scale + 1e-15:
            return fine
        coarse = fine
    raise QuadratureFailure(
        f"segment [{z0}, {z1}] stuck at rel err {err / scale:.3e} with {n} nodes"
    )


def arc_integral(prev, exps, center_idx, radius, th0, th1, rel_tol=1e-11):
    """Integral along the circular arc z = s_c + radius * e^{i theta}."""
    prev = np.asarray(prev, float)
    exps = np.asarray(exps, float)
    c = prev[center_idx]

    def value(n):
        x, w = _rule(n, 0.0, 0.0)
        th = th0 + (th1 - th0) * (x + 1.0) / 2.0
        zs = c + radius * np.exp(1j * th)
        vals = product_value(prev, exps, zs)
        dz = 1j * radius * np.exp(1j * th)
        return (th1 - th0) / 2.0 * (w @ (vals * dz))

    n = _BASE_NODES
    coarse = value(n)
    for _ in range(_MAX_DOUBLINGS):
        n *= 2
        fine = value(n)
        if abs(fine - coarse) <= rel_tol * max(abs(fine), 1e-300) + 1e-15:
            return fine
        coarse = fine
    raise QuadratureFailure(f"arc around index {center_idx} did not converge")
