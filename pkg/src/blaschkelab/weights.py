"""Normal radial weight families on the unit disk.

A weight here is a strictly positive radial function w(r) on [0, 1).
Built-in families:

  standard:  w(r) = (alpha+1) (1-r^2)^alpha          (integrates to 1 over the disk)
  logpower:  w(r) = (alpha+1) (1-r^2)^alpha * log(e/(1-r))^beta
  table:     positive samples, interpolated linearly in (log(1-r), log w)

A weight is *normal* when w(r)/(1-r)^a increases to infinity and
w(r)/(1-r)^b decreases to zero for r beyond some r0.  The optimal
exponents (a_w, b_w) of the built-in families are both equal to alpha;
log factors do not move them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InsufficientDataError, UnsupportedWeightError

STANDARD = "standard"
LOGPOWER = "logpower"
TABULATED = "table"

_DEFAULT_R0 = 0.5


@dataclass(frozen=True)
class Weight:
    """A radial weight with its family tag and optimal growth indices."""

    kind: str
    alpha: float = 0.0
    beta: float = 0.0
    samples: tuple[tuple[float, float], ...] | None = None
    r0: float = _DEFAULT_R0
    a_index: float = 0.0
    b_index: float = 0.0
    index_band: float = 0.0  # 1-sigma slope uncertainty (tabulated only)
    note: str = ""

    def __post_init__(self):
        if not 0.0 < self.r0 < 1.0:
            raise DomainError(f"r0 must lie in (0,1), got {self.r0}")
        if self.b_index > self.a_index + 1e-12:
            raise DomainError("weight indices must satisfy b <= a")

    def value(self, r):
        """Evaluate w(r) for r in [0,1); accepts scalars or arrays."""
        r = np.asarray(r, dtype=float)
        if np.any(r < 0.0) or np.any(r >= 1.0):
            raise DomainError("weight argument must lie in [0,1)")
        if self.kind == STANDARD:
            out = (self.alpha + 1.0) * (1.0 - r * r) ** self.alpha
        elif self.kind == LOGPOWER:
            out = (self.alpha + 1.0) * (1.0 - r * r) ** self.alpha \
                * np.log(np.e / (1.0 - r)) ** self.beta
        elif self.kind == TABULATED:
            out = np.exp(np.interp(np.log(1.0 - r), self._xs, self._ys))
        else:
            raise UnsupportedWeightError(f"unknown weight family {self.kind!r}")
        return out if out.ndim else float(out)

    def __call__(self, r):
        return self.value(r)

    @property
    def _xs(self):
        # log(1-r) grid, ascending (r descending); cached lazily
        xs, ys = _table_arrays(self.samples)
        return xs

    @property
    def _ys(self):
        xs, ys = _table_arrays(self.samples)
        return ys


_TABLE_CACHE: dict[tuple, tuple[np.ndarray, np.ndarray]] = {}


def _table_arrays(samples):
    key = samples
    hit = _TABLE_CACHE.get(key)
    if hit is None:
        rs = np.array([s[0] for s in samples], dtype=float)
        vs = np.array([s[1] for s in samples], dtype=float)
        order = np.argsort(np.log(1.0 - rs))
        hit = (np.log(1.0 - rs)[order], np.log(vs)[order])
        _TABLE_CACHE[key] = hit
    return hit


def standard_weight(alpha: float, r0: float = _DEFAULT_R0) -> Weight:
    return Weight(kind=STANDARD, alpha=alpha, r0=r0, a_index=alpha, b_index=alpha)


def logpower_weight(alpha: float, beta: float, r0: float = _DEFAULT_R0) -> Weight:
    return Weight(kind=LOGPOWER, alpha=alpha, beta=beta, r0=r0,
                  a_index=alpha, b_index=alpha)


def tabulated_weight(samples, r0: float = _DEFAULT_R0) -> Weight:
    """Build a weight from (r, value) samples.

    The growth indices are estimated by the least-squares slope of
    log w against log(1-r) restricted to r > r0; at least 8 samples
    beyond r0 are required.
    """
    samples = tuple((float(r), float(v)) for r, v in samples)
    if any(not 0.0 <= r < 1.0 for r, _ in samples):
        raise DomainError("table abscissae must lie in [0,1)")
    if any(v <= 0.0 for _, v in samples):
        raise DomainError("table values must be strictly positive")
    tail = [(r, v) for r, v in samples if r > r0]
    if len(tail) < 8:
        raise InsufficientDataError(
            f"need at least 8 samples beyond r0={r0}, got {len(tail)}")
    x = np.log([1.0 - r for r, _ in tail])
    y = np.log([v for _, v in tail])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    dof = max(len(tail) - 2, 1)
    band = float(np.sqrt(np.sum(resid ** 2) / dof / np.sum((x - x.mean()) ** 2)))
    return Weight(kind=TABULATED, samples=samples, r0=r0,
                  a_index=float(slope), b_index=float(slope), index_band=band)


def eval_weight(w: Weight, r) -> float:
    """Value of the weight at radius r in [0,1)."""
    return w.value(r)


def indices(w: Weight) -> tuple[float, float]:
    """Optimal growth indices (a_w, b_w) of the weight."""
    return (w.a_index, w.b_index)


@dataclass(frozen=True)
class NormalityReport:
    is_normal: bool
    violations: tuple[tuple[str, float], ...] = ()


def check_normality(w: Weight, a: float, b: float, grid) -> NormalityReport:
    """Check the defining monotonicity of a normal weight on a grid.

    w(r)/(1-r)^a must be nondecreasing and grow, and w(r)/(1-r)^b must be
    nonincreasing and decay, across the (strictly increasing) grid in
    (r0, 1).  Grid points where monotonicity fails are reported.
    """
    grid = np.asarray(grid, dtype=float)
    if np.any(np.diff(grid) <= 0):
        raise DomainError("grid must be strictly increasing")
    if grid[0] <= w.r0 or grid[-1] >= 1.0:
        raise DomainError("grid must lie in (r0, 1)")
    vals = w.value(grid)
    qa = vals / (1.0 - grid) ** a
    qb = vals / (1.0 - grid) ** b
    violations = []
    slack = 1e-12
    bad_a = np.nonzero(np.diff(qa) < -slack * np.abs(qa[:-1]))[0]
    bad_b = np.nonzero(np.diff(qb) > slack * np.abs(qb[:-1]))[0]
    violations += [("a-quotient not increasing", float(grid[i + 1])) for i in bad_a]
    violations += [("b-quotient not decreasing", float(grid[i + 1])) for i in bad_b]
    grows = qa[-1] > qa[0]
    decays = qb[-1] < qb[0]
    if not grows:
        violations.append(("a-quotient does not grow", float(grid[-1])))
    if not decays:
        violations.append(("b-quotient does not decay", float(grid[-1])))
    ok = len(bad_a) == 0 and len(bad_b) == 0 and grows and decays
    return NormalityReport(is_normal=ok, violations=tuple(violations))


def check_star_condition(w: Weight, alpha: float, grid) -> bool:
    """True iff r -> w(r) (1-r)^(-a_w) log(1/(1-r))^alpha is nondecreasing on the grid."""
    if not 0.0 < alpha < 1.0:
        raise DomainError("star exponent must lie in (0,1)")
    grid = np.asarray(grid, dtype=float)
    if grid[0] <= w.r0 or grid[-1] >= 1.0:
        raise DomainError("grid must lie in (r0, 1)")
    q = w.value(grid) * (1.0 - grid) ** (-w.a_index) \
        * np.log(1.0 / (1.0 - grid)) ** alpha
    return bool(np.all(np.diff(q) >= -1e-12 * np.abs(q[:-1])))


def has_star_condition(w: Weight, grid=None) -> bool:
    """Existence form of the star condition: some exponent in (0,1) works."""
    if grid is None:
        grid = 1.0 - np.geomspace(1.0 - w.r0 - 1e-9, 1e-6, 256)
    return any(check_star_condition(w, a, grid) for a in np.linspace(0.1, 0.9, 9))


def comparability_constants(w: Weight, t: float, samples: int,
                            seed: int = 0) -> tuple[float, float]:
    """Empirical two-sided comparison constants of a normal weight.

    Draws `samples` random pairs (z, zeta) with |z| > r0 and
    |z - zeta| < t (1-|z|) and returns the min and max observed
    w(|zeta|)/w(|z|).  Only 0 < c <= C is guaranteed.
    """
    if not 0.0 < t < 1.0:
        raise DomainError("t must lie in (0,1)")
    rng = np.random.default_rng(seed)
    rz = w.r0 + (1.0 - w.r0) * rng.random(samples) * (1.0 - 1e-9)
    offs = t * (1.0 - rz) * np.sqrt(rng.random(samples)) \
        * np.exp(2j * np.pi * rng.random(samples))
    rzeta = np.abs(rz + offs)
    ratios = w.value(rzeta) / w.value(rz)
    return (float(ratios.min()), float(ratios.max()))


def associated_weight(w: Weight, p: float) -> Weight:
    """Family with the power index shifted by p.

    Standard(alpha) maps to Standard(alpha+p) with the normalization
    constant recomputed; the result is equivalent to (1-r)^p w(r) only
    up to bounded factors, which the note field records.
    """
    note = "equivalent-up-to-bounded-factors"
    if w.kind == STANDARD:
        return Weight(kind=STANDARD, alpha=w.alpha + p, r0=w.r0,
                      a_index=w.a_index + p, b_index=w.b_index + p, note=note)
    if w.kind == LOGPOWER:
        return Weight(kind=LOGPOWER, alpha=w.alpha + p, beta=w.beta, r0=w.r0,
                      a_index=w.a_index + p, b_index=w.b_index + p, note=note)
    raise UnsupportedWeightError("associated weight needs a closed-form family")


def parse_weight_spec(spec: str) -> Weight:
    """Parse a weight specification string.

    Formats: "standard:alpha=0.5", "logpower:alpha=0.5,beta=1",
    "table:path=FILE" with FILE a CSV with header "r,w".
    """
    kind, _, rest = spec.partition(":")
    kv = {}
    if rest:
        for item in rest.split(","):
            key, _, val = item.partition("=")
            if not _:
                raise DomainError(f"malformed weight spec item {item!r}")
            kv[key.strip()] = val.strip()
    kind = kind.strip()
    if kind == STANDARD:
        allowed = {"alpha", "r0"}
        _reject_unknown(kv, allowed, spec)
        return standard_weight(float(kv.get("alpha", 0.0)),
                               r0=float(kv.get("r0", _DEFAULT_R0)))
    if kind == LOGPOWER:
        _reject_unknown(kv, {"alpha", "beta", "r0"}, spec)
        return logpower_weight(float(kv.get("alpha", 0.0)),
                               float(kv.get("beta", 0.0)),
                               r0=float(kv.get("r0", _DEFAULT_R0)))
    if kind == TABULATED:
        _reject_unknown(kv, {"path", "r0"}, spec)
        if "path" not in kv:
            raise DomainError("table weight spec needs path=FILE")
        rows = np.loadtxt(kv["path"], delimiter=",", skiprows=1, ndmin=2)
        return tabulated_weight([(r, v) for r, v in rows],
                                r0=float(kv.get("r0", _DEFAULT_R0)))
    raise DomainError(f"unknown weight family {kind!r} in spec {spec!r}")


def _reject_unknown(kv: dict, allowed: set, spec: str):
    unknown = set(kv) - allowed
    if unknown:
        raise DomainError(f"unknown keys {sorted(unknown)} in weight spec {spec!r}")
