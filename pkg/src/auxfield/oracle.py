"""Independent numeric radial eigensolver (Numerov shooting).

Solves -u'' + [2m (V(r) - E) + l(l+1)/r^2] u = 0 on a uniform grid for
the three potential families, locating the eigenvalue with exactly n
radial nodes by node-count bisection followed by a secant/Brent refine
of the derivative mismatch at the outer classical turning point.
Quadrature observables for the converged states are provided as the
reference side of every table comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import brentq

from .afm import PotentialModel
from .errors import DomainError, NoBoundState, NumericalFailure, QuadratureFailure
from .exact import ObservableSet, QuantumNumbers

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a hard dependency, but stay usable
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

__all__ = ["RadialFunction", "SolverConfig", "solve_radial",
           "numeric_observables", "count_nodes"]


@dataclass(frozen=True)
class RadialFunction:
    """Reduced radial function u(r) = r R(r) sampled on a uniform grid."""

    grid: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    energy: float
    q: QuantumNumbers


@dataclass(frozen=True)
class SolverConfig:
    r_max: Optional[float] = None     # None: choose per family/state
    grid_points: int = 20000
    energy_tol: float = 1e-11
    max_bisections: int = 200

    def __post_init__(self):
        if self.r_max is not None and self.r_max <= 0:
            raise DomainError("r_max must be positive")
        if self.grid_points < 2000:
            raise DomainError("grid_points must be >= 2000")
        if self.energy_tol > 1e-10:
            raise DomainError("energy_tol must be <= 1e-10")


# ----------------------------------------------------------------------
# Numerov kernels.  W is the full coefficient array of u'' = W u.
# ----------------------------------------------------------------------

_RESCALE = 1e250


@njit(cache=True)
def _numerov_nodes(w, h, l):
    """Nodes of the outward solution over the whole grid."""
    n = w.shape[0]
    c = h * h / 12.0
    u_prev = 0.0
    u_cur = h ** (l + 1)
    nodes = 0
    sign = 1.0
    start = 2
    if l > 0:
        u_prev = u_cur
        u_cur = (2.0 * h) ** (l + 1)
        start = 3
    for i in range(start, n):
        u_next = ((2.0 + 10.0 * c * w[i - 1]) * u_cur
                  - (1.0 - c * w[i - 2]) * u_prev) / (1.0 - c * w[i])
        if u_next != 0.0 and u_next * sign < 0.0:
            nodes += 1
            sign = -sign
        if abs(u_next) > _RESCALE:
            u_next *= 1e-250
            u_cur *= 1e-250
        u_prev = u_cur
        u_cur = u_next
    return nodes


@njit(cache=True)
def _numerov_match(w, h, l, m):
    """Derivative-mismatch measure at grid index m (sign carries the root)."""
    n = w.shape[0]
    c = h * h / 12.0
    # outward sweep to m+1
    u_prev = 0.0
    u_cur = h ** (l + 1)
    start = 2
    if l > 0:
        u_prev = u_cur
        u_cur = (2.0 * h) ** (l + 1)
        start = 3
    out_m = 0.0
    out_mp = 0.0
    for i in range(start, m + 2):
        u_next = ((2.0 + 10.0 * c * w[i - 1]) * u_cur
                  - (1.0 - c * w[i - 2]) * u_prev) / (1.0 - c * w[i])
        if abs(u_next) > _RESCALE:
            u_next *= 1e-250
            u_cur *= 1e-250
        u_prev = u_cur
        u_cur = u_next
        if i == m:
            out_m = u_cur
        elif i == m + 1:
            out_mp = u_cur
    if m < start:
        return 0.0
    # inward sweep from the far end to m
    kappa = math.sqrt(max(w[n - 1], 1e-30))
    v_far = 1e-140
    v_cur = v_far * math.exp(kappa * h)
    in_m = 0.0
    in_mp = 0.0
    if m + 1 == n - 1:
        in_mp = v_far
    for i in range(n - 3, m - 1, -1):
        v_next = ((2.0 + 10.0 * c * w[i + 1]) * v_cur
                  - (1.0 - c * w[i + 2]) * v_far) / (1.0 - c * w[i])
        if abs(v_next) > _RESCALE:
            v_next *= 1e-250
            v_cur *= 1e-250
        v_far = v_cur
        v_cur = v_next
        if i == m + 1:
            in_mp = v_cur
        elif i == m:
            in_m = v_cur
    # normalize the two pairs separately so the cross products stay finite
    so = max(abs(out_m), abs(out_mp)) + 1e-300
    si = max(abs(in_m), abs(in_mp)) + 1e-300
    out_m /= so
    out_mp /= so
    in_m /= si
    in_mp /= si
    denom = abs(out_m * in_m) + abs(out_mp * in_mp) + 1e-300
    return (out_mp * in_m - in_mp * out_m) / denom


@njit(cache=True)
def _numerov_assemble(w, h, l, m, u):
    """Fill u with the matched solution (unnormalized)."""
    n = w.shape[0]
    c = h * h / 12.0
    u[0] = 0.0
    u[1] = h ** (l + 1)
    start = 2
    if l > 0:
        u[2] = (2.0 * h) ** (l + 1)
        start = 3
    for i in range(start, m + 1):
        u[i] = ((2.0 + 10.0 * c * w[i - 1]) * u[i - 1]
                - (1.0 - c * w[i - 2]) * u[i - 2]) / (1.0 - c * w[i])
        if abs(u[i]) > _RESCALE:
            for j in range(i + 1):
                u[j] *= 1e-250
    kappa = math.sqrt(max(w[n - 1], 1e-30))
    v = np.zeros(n - m)
    v[n - m - 1] = 1e-140
    v[n - m - 2] = 1e-140 * math.exp(kappa * h)
    for i in range(n - m - 3, -1, -1):
        gi = i + m
        v[i] = ((2.0 + 10.0 * c * w[gi + 1]) * v[i + 1]
                - (1.0 - c * w[gi + 2]) * v[i + 2]) / (1.0 - c * w[gi])
        if abs(v[i]) > _RESCALE:
            for j in range(i, n - m):
                v[j] *= 1e-250
    ratio = u[m] / v[0]
    for i in range(1, n - m):
        u[m + i] = v[i] * ratio


# ----------------------------------------------------------------------
# driver
# ----------------------------------------------------------------------

def _characteristic_r_max(v: PotentialModel, q: QuantumNumbers) -> float:
    """Generous default domain per family and state."""
    n, l = q.n, q.l
    big_n = 2 * n + l + 1.5
    if v.family == "linear":
        sigma_r = (2.0 * v.m * v.a) ** (-1.0 / 3.0)
        e_red = 3.0 * (big_n / 2.0) ** (2.0 / 3.0) * 1.1
        return sigma_r * max(30.0, 2.2 * e_red + 12.0)
    if v.family == "log":
        r_turn = 1.2 * math.sqrt(math.e / 2.0) * big_n
        return max(30.0, 1.3 * r_turn + 45.0)
    return 30.0 + 5.0 * (n + l)


def _effective_w(v: PotentialModel, grid: np.ndarray, q: QuantumNumbers,
                 energy: float) -> np.ndarray:
    c = v.kinetic_2m
    w = np.empty_like(grid)
    w[1:] = c * (v.v(grid[1:]) - energy)
    if q.l > 0:
        w[1:] += q.big_l / grid[1:] ** 2
    w[0] = 0.0  # never used: u[0] = 0 by construction
    return w


def count_nodes(v: PotentialModel, grid: np.ndarray, q: QuantumNumbers,
                energy: float) -> int:
    """Radial node count of the outward shooting solution at this energy."""
    w = _effective_w(v, grid, q, energy)
    return int(_numerov_nodes(w, float(grid[1] - grid[0]), q.l))


def _match_index(w: np.ndarray) -> int:
    allowed = np.nonzero(w < 0.0)[0]
    if allowed.size == 0:
        return -1
    return int(min(max(allowed[-1], 4), w.shape[0] - 5))


def _solve_on_grid(v, q, grid, energy_tol, e_lo, e_hi, max_bisections):
    """Node-count bisection then Brent on the matching mismatch."""
    h = float(grid[1] - grid[0])
    n_target = q.n

    def nodes(e):
        return int(_numerov_nodes(_effective_w(v, grid, q, e), h, q.l))

    if nodes(e_lo) > n_target:
        raise NumericalFailure("lower bracket already above the target node count")
    if nodes(e_hi) <= n_target:
        raise NoBoundState("not-supported",
                           f"only {nodes(e_hi)} node(s) available below E={e_hi:.3g}")
    scale = max(1.0, abs(e_lo), abs(e_hi))
    lo, hi = e_lo, e_hi
    for _ in range(max_bisections):
        if hi - lo <= 1e-5 * scale:
            break
        mid = 0.5 * (lo + hi)
        if nodes(mid) > n_target:
            hi = mid
        else:
            lo = mid

    w_mid = _effective_w(v, grid, q, 0.5 * (lo + hi))
    m = _match_index(w_mid)
    if m < 0:
        raise NumericalFailure("no classically allowed region at the bracket center")

    def mismatch(e):
        return float(_numerov_match(_effective_w(v, grid, q, e), h, q.l, m))

    f_lo, f_hi = mismatch(lo), mismatch(hi)
    if f_lo == 0.0:
        energy = lo
    elif f_hi == 0.0:
        energy = hi
    elif f_lo * f_hi < 0.0:
        energy = brentq(mismatch, lo, hi, xtol=energy_tol, rtol=8.9e-16)
    else:
        # mismatch did not change sign (match point sits on a node);
        # fall back to plain node-count bisection at full precision
        for _ in range(max_bisections):
            if hi - lo <= energy_tol:
                break
            mid = 0.5 * (lo + hi)
            if nodes(mid) > n_target:
                hi = mid
            else:
                lo = mid
        energy = 0.5 * (lo + hi)

    w = _effective_w(v, grid, q, energy)
    u = np.empty_like(grid)
    _numerov_assemble(w, h, q.l, m, u)
    norm = simpson(u * u, x=grid)
    if not norm > 0:
        raise NumericalFailure("degenerate norm after assembly")
    u /= math.sqrt(norm)
    return energy, u


def _interior_nodes(u: np.ndarray) -> int:
    s = np.sign(u[1:])
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] * s[:-1] < 0))


def solve_radial(v: PotentialModel, q: QuantumNumbers,
                 cfg: SolverConfig = SolverConfig()) -> RadialFunction:
    """Eigenpair with exactly q.n radial nodes for the given family.

    Confining families bracket the energy on a doubling ladder above the
    potential minimum; the exponential family works inside (-k, 0) and
    auto-extends the domain for near-threshold states.
    """
    r_max = cfg.r_max or _characteristic_r_max(v, q)
    if v.family == "exp":
        return _solve_exponential(v, q, cfg, r_max)
    grid = np.linspace(0.0, r_max, cfg.grid_points)
    v_eff = v.v(grid[1:]) + (q.big_l / (v.kinetic_2m * grid[1:] ** 2)
                             if q.l else 0.0)
    e_lo = float(np.min(v_eff)) - 1e-9
    step = 1.0
    e_hi = e_lo + step
    h = float(grid[1] - grid[0])
    for _ in range(80):
        if _numerov_nodes(_effective_w(v, grid, q, e_hi), h, q.l) > q.n:
            break
        step *= 2.0
        e_hi = e_lo + step
    else:
        raise NumericalFailure("energy ladder failed to reach the target state")
    energy, u = _solve_on_grid(v, q, grid, cfg.energy_tol, e_lo, e_hi,
                               cfg.max_bisections)
    out = RadialFunction(grid=grid, values=u, energy=energy, q=q)
    if _interior_nodes(u) != q.n:
        raise NumericalFailure(
            f"converged solution has {_interior_nodes(u)} nodes, expected {q.n}")
    return out


def _solve_exponential(v, q, cfg, r_max0):
    k = v.k
    r_max = r_max0 if cfg.r_max else max(r_max0, 80.0)
    energy = None
    u = None
    grid = None
    for _ in range(4):
        grid = np.linspace(0.0, r_max, cfg.grid_points)
        e_lo = -1.05 * k
        e_hi = -1e-12 * max(1.0, k)
        try:
            energy, u = _solve_on_grid(v, q, grid, cfg.energy_tol, e_lo, e_hi,
                                       cfg.max_bisections)
        except NoBoundState:
            raise NoBoundState(
                "not-supported",
                f"exponential well k={k} has no state with n={q.n}, l={q.l}")
        if cfg.r_max is not None:
            break
        needed = 20.0 / math.sqrt(abs(energy)) if energy < 0 else math.inf
        if needed <= r_max or not math.isfinite(needed):
            break
        r_max = min(needed * 1.25, 4000.0)
    out = RadialFunction(grid=grid, values=u, energy=energy, q=q)
    if _interior_nodes(u) != q.n:
        raise NumericalFailure(
            f"converged solution has {_interior_nodes(u)} nodes, expected {q.n}")
    return out


# ----------------------------------------------------------------------
# observables by quadrature
# ----------------------------------------------------------------------

def _derivative_at_origin(f: RadialFunction) -> float:
    u = f.values
    h = float(f.grid[1] - f.grid[0])
    return (-25.0 * u[0] + 48.0 * u[1] - 36.0 * u[2]
            + 16.0 * u[3] - 3.0 * u[4]) / (12.0 * h)


def numeric_observables(f: RadialFunction, v: PotentialModel) -> ObservableSet:
    """Simpson moments, virial <p^2>/<p^4> and |psi(0)|^2 for an oracle state."""
    grid, u = f.grid, f.values
    u2 = u * u
    # extrapolated probability mass beyond the grid end
    w_end = float(_effective_w(v, grid, f.q, f.energy)[-1])
    kappa = math.sqrt(max(w_end, 1e-12))
    tail = u2[-1] / (2.0 * kappa)
    if tail > 1e-8:
        raise QuadratureFailure(
            f"tail mass {tail:.2e} beyond r_max: state under-resolved")

    r_mom = {}
    for k in (-2, -1, 1, 2, 3, 4):
        integrand = np.empty_like(u2)
        integrand[1:] = u2[1:] * grid[1:] ** float(k)
        if k > 0:
            integrand[0] = 0.0
        elif k == -1:
            integrand[0] = 0.0
        else:
            integrand[0] = _derivative_at_origin(f) ** 2 if f.q.l == 0 else 0.0
        r_mom[k] = float(simpson(integrand, x=grid))

    vv = np.empty_like(u2)
    vv[1:] = v.v(grid[1:])
    vv[0] = 0.0  # u^2 V -> 0 at the origin for all three families
    mean_v = float(simpson(u2 * vv, x=grid))
    mean_v2 = float(simpson(u2 * vv * vv, x=grid))
    c = v.kinetic_2m
    p2 = c * (f.energy - mean_v)
    p4 = c * c * (f.energy ** 2 - 2.0 * f.energy * mean_v + mean_v2)
    psi0 = None
    if f.q.l == 0:
        psi0 = _derivative_at_origin(f) ** 2 / (4.0 * math.pi)
    return ObservableSet(r_moments=r_mom, p2=p2, p4=p4, psi0_sq=psi0,
                         mean_h=f.energy, provenance="quadrature")
