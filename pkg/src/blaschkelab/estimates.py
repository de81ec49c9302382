"""Weighted kernel integrals over the disk and their two-sided ratio checks.

The two central quantities, for a normal weight w and a real exponent m:

    I(lambda) = integral over the disk of w(|z|) / |1 - conj(lambda) z|^(m+2)
    J(lambda) = integral of log|(1 - conj(lambda) z)/(lambda - z)|
                           * (1-|z|)^(-m-2) w(|z|)

Both are compared against w(|lambda|) (1-|lambda|)^(-m), with an extra
log(e/(1-|lambda|)) divisor in the limit cases.  I is computed by an
exact angular reduction (the angular mean of |1-u e^(it)|^(-s) is the
Gauss hypergeometric 2F1(s/2, s/2; 1; u^2)), J by its exact radial
reduction; the raw 2-D tensor quadratures remain available as
independent cross-check oracles.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import hyp2f1

from .errors import DivergenceError, DomainError
from .quad import DiskQuadrature, _radial_nodes, grading_exponent
from .weights import Weight, has_star_condition

BOUNDED = "bounded"
UNBOUNDED_TREND = "unbounded_trend"
GATE_FAILED = "gate_failed"

SPREAD_LIMIT = 100.0
SLOPE_LIMIT = 0.1


@dataclass(frozen=True)
class RatioReport:
    """Grid of left/right values for a two-sided estimate with its verdict."""

    grid: tuple[float, ...]
    lhs: tuple[float, ...]
    rhs: tuple[float, ...]
    ratios: tuple[float, ...]
    c_min: float
    c_max: float
    spread: float
    verdict: str
    last_decade_slope: float = 0.0

    @staticmethod
    def gate_failed(grid=()):
        g = tuple(float(x) for x in grid)
        return RatioReport(grid=g, lhs=(), rhs=(), ratios=(),
                           c_min=float("nan"), c_max=float("nan"),
                           spread=float("inf"), verdict=GATE_FAILED)


def ratio_report(grid, lhs, rhs, spread_limit: float = SPREAD_LIMIT,
                 slope_limit: float = SLOPE_LIMIT) -> RatioReport:
    """Assemble a RatioReport; grid values are |lambda| (ascending).

    Verdict ``bounded`` requires spread <= spread_limit and, on the last
    decade of 1-|lambda|, a log-log slope of magnitude <= slope_limit.
    """
    grid = np.asarray(grid, dtype=float)
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    ratios = lhs / rhs
    if np.any(ratios <= 0.0) or not np.all(np.isfinite(ratios)):
        raise DomainError("ratios must be finite and strictly positive")
    c_min, c_max = float(ratios.min()), float(ratios.max())
    spread = c_max / c_min
    slope = 0.0
    if len(grid) >= 3:
        t = 1.0 - grid
        sel = t <= 10.0 * t.min() * (1.0 + 1e-12)
        if sel.sum() >= 3:
            slope = float(np.polyfit(np.log(t[sel]), np.log(ratios[sel]), 1)[0])
    verdict = BOUNDED if (spread <= spread_limit and abs(slope) <= slope_limit) \
        else UNBOUNDED_TREND
    return RatioReport(grid=tuple(grid.tolist()), lhs=tuple(lhs.tolist()),
                       rhs=tuple(rhs.tolist()), ratios=tuple(ratios.tolist()),
                       c_min=c_min, c_max=c_max, spread=float(spread),
                       verdict=verdict, last_decade_slope=slope)


def default_lambda_grid(n: int = 40, start: float = 0.5,
                        end: float = 5e-3) -> np.ndarray:
    """|lambda| grid, geometric in 1-|lambda| from ``start`` down to ``end``."""
    return 1.0 - np.geomspace(start, end, n)


_QUAD_OPTS = dict(limit=200, epsabs=1e-13, epsrel=1e-11)


def I_mw(lam: complex, m: float, w: Weight,
         q: DiskQuadrature | None = None) -> float:
    """The kernel integral I at lambda (depends only on |lambda|).

    Angular mean reduced exactly to a hypergeometric; the remaining
    radial integral is evaluated adaptively.  A warning is attached when
    the estimated quadrature error exceeds 1e-4 of the value.
    """
    u = abs(complex(lam))
    if u >= 1.0:
        raise DomainError("I needs |lambda| < 1")
    s = m + 2.0
    if w.b_index <= -1.0:
        raise DivergenceError("I diverges: weight not integrable (b_w <= -1)",
                              gate="b_w > -1")

    def f(r):
        return w.value(r) * hyp2f1(s / 2.0, s / 2.0, 1.0, (u * r) ** 2) * 2.0 * r

    split = [u] if 0.0 < u < 1.0 else []
    value, err = integrate.quad(f, 0.0, 1.0, points=split, **_QUAD_OPTS)
    if err > 1e-4 * abs(value):
        warnings.warn(f"I quadrature error estimate {err:.2e} exceeds 1e-4 of "
                      f"value {value:.6e}", RuntimeWarning, stacklevel=2)
    return float(value)


def i_mw_2d(lam: complex, m: float, w: Weight, radial_order: int = 512,
            angular_count: int = 4096) -> float:
    """Brute-force tensor-grid evaluation of I (independent oracle)."""
    lam = complex(lam)
    kappa = grading_exponent(min(w.b_index, 0.0))
    r, rw = _radial_nodes(radial_order, kappa)
    th = 2.0 * np.pi * (np.arange(angular_count) + 0.5) / angular_count
    z = r[:, None] * np.exp(1j * th)[None, :]
    vals = w.value(r)[:, None] / np.abs(1.0 - np.conj(lam) * z) ** (m + 2.0)
    return float((rw[:, None] * vals).sum() / angular_count)


def J_mw(lam: complex, m: float, w: Weight) -> float:
    """The logarithmic kernel integral J at lambda via its radial reduction.

    J(lambda) = log(1/|lambda|) * int_0^|lambda| w(r)(1-r)^(-m-2) 2r dr
              + int_|lambda|^1 log(1/r) w(r)(1-r)^(-m-2) 2r dr;
    at lambda = 0 only the second term survives.  Diverges unless
    b_w > m.
    """
    u = abs(complex(lam))
    if u >= 1.0:
        raise DomainError("J needs |lambda| < 1")
    if w.b_index <= m:
        raise DivergenceError(
            f"J diverges for b_w = {w.b_index} <= m = {m}", gate="b_w > m")

    def tail(r):
        return np.log(1.0 / r) * w.value(r) * (1.0 - r) ** (-m - 2.0) * 2.0 * r

    tail_val, _ = integrate.quad(tail, u, 1.0, **_QUAD_OPTS)
    if u == 0.0:
        return float(tail_val)

    def head(r):
        return w.value(r) * (1.0 - r) ** (-m - 2.0) * 2.0 * r

    head_val, _ = integrate.quad(head, 0.0, u, **_QUAD_OPTS)
    return float(np.log(1.0 / u) * head_val + tail_val)


def j_mw_2d(lam: complex, m: float, w: Weight, radial_order: int = 512,
            angular_count: int = 2048) -> float:
    """Tensor-grid evaluation of the defining 2-D integral of J (oracle).

    The kernel log|(1 - conj(lambda) z)/(lambda - z)| has a weak interior
    singularity at z = lambda; the half-offset grid never hits it.
    """
    lam = complex(lam)
    gamma = w.b_index - m - 1.0
    kappa = grading_exponent(max(gamma, -0.95))
    r, rw = _radial_nodes(radial_order, kappa)
    th = 2.0 * np.pi * (np.arange(angular_count) + 0.5) / angular_count
    z = r[:, None] * np.exp(1j * th)[None, :]
    kern = np.log(np.abs((1.0 - np.conj(lam) * z) / (lam - z)))
    vals = kern * (w.value(r) * (1.0 - r) ** (-m - 2.0))[:, None]
    return float((rw[:, None] * vals).sum() / angular_count)


_CASES = ("i", "ii", "iii", "iv")


def _gate_prop12(case: str, m: float, w: Weight, eq_tol: float = 1e-9) -> bool:
    a, b = w.a_index, w.b_index
    if case == "i":
        return m > -1.0 and a < m and b > -1.0
    if case == "ii":
        return a < m + 1.0 and b > m
    if case == "iii":
        return m > -1.0 and abs(a - m) <= eq_tol and b > -1.0 \
            and has_star_condition(w)
    if case == "iv":
        return abs(a - (m + 1.0)) <= eq_tol and b > m and has_star_condition(w)
    raise DomainError(f"case must be one of {_CASES}")


def verify_prop12(case: str, m: float, w: Weight, grid=None,
                  spread_limit: float = SPREAD_LIMIT) -> RatioReport:
    """Ratio sweep of I or J against w(|lambda|)(1-|lambda|)^(-m).

    Cases: "i"/"iii" use I, "ii"/"iv" use J; "iii"/"iv" are the limit
    cases and divide out an extra log(e/(1-|lambda|)).  Parameter gates
    are resolved first; a failed gate short-circuits to a gate_failed
    verdict without computing anything.
    """
    if case not in _CASES:
        raise DomainError(f"case must be one of {_CASES}")
    if grid is None:
        grid = default_lambda_grid()
    grid = np.asarray(grid, dtype=float)
    if not _gate_prop12(case, m, w):
        return RatioReport.gate_failed(grid)
    use_log = case in ("iii", "iv")
    kernel = I_mw if case in ("i", "iii") else J_mw
    lhs = np.array([kernel(x, m, w) for x in grid])
    rhs = w.value(grid) * (1.0 - grid) ** (-m)
    if use_log:
        rhs = rhs * np.log(np.e / (1.0 - grid))
    return ratio_report(grid, lhs, rhs, spread_limit=spread_limit)
