"""Stable evaluation of finite Blaschke products and their derivatives.

Factor convention: for a zero a != 0 the factor is

    b_a(z) = (conj(a)/|a|) (a - z) / (1 - conj(a) z),      b_0(z) = z,

so b_a(0) = |a| > 0.  This fixes the unimodular constant of every
product, which makes the omitted-product values B_n(z_n) reproducible.
A product-level unimodular prefactor (used by Frostman shifts) is
stored separately in the ``phase`` field.

Finite products also carry an exact rational form B = P/Q as a pair of
ascending coefficient arrays of equal length degree+1 (Q is padded when
some zeros sit at the origin).  The rational form drives root finding
(preimages) and higher-order derivatives.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .diskgeom import ZeroSequence, zero_sequence
from .errors import ConvergenceError, DomainError

RATIONAL_DEGREE_CAP = 128
_WELL_CONDITIONED_DEGREE = 64
_NEAR_ZERO_TOL = 1e-6


@dataclass(frozen=True)
class BlaschkeProduct:
    zeros: ZeroSequence
    phase: complex = 1.0 + 0.0j
    rational: tuple[tuple[complex, ...], tuple[complex, ...]] | None = None

    @property
    def degree(self) -> int:
        return self.zeros.degree

    @property
    def rational_form(self) -> tuple[np.ndarray, np.ndarray]:
        """(P, Q) with B = P/Q, ascending coefficients, equal length."""
        if self.rational is None:
            raise DomainError(f"no rational form (degree > {RATIONAL_DEGREE_CAP})")
        return (np.array(self.rational[0], dtype=complex),
                np.array(self.rational[1], dtype=complex))

    def __call__(self, z):
        return beval(self, z)


def blaschke_product(zeros, phase: complex = 1.0 + 0.0j) -> BlaschkeProduct:
    """Build a finite Blaschke product from a ZeroSequence or an iterable of zeros."""
    seq = zeros if isinstance(zeros, ZeroSequence) else zero_sequence(zeros)
    d = seq.degree
    rational = None
    if d <= RATIONAL_DEGREE_CAP:
        if d > _WELL_CONDITIONED_DEGREE:
            warnings.warn(
                f"rational form of degree {d} > {_WELL_CONDITIONED_DEGREE} "
                "may be ill-conditioned", RuntimeWarning, stacklevel=2)
        p = np.array([phase], dtype=complex)
        q = np.array([1.0 + 0.0j])
        for a, m in zip(seq.points, seq.multiplicities):
            if a == 0:
                fp, fq = np.array([0.0, 1.0], dtype=complex), None
            else:
                c = a.conjugate() / abs(a)
                fp = np.array([c * a, -c], dtype=complex)
                fq = np.array([1.0, -a.conjugate()], dtype=complex)
            for _ in range(m):
                p = npoly.polymul(p, fp)
                if fq is not None:
                    q = npoly.polymul(q, fq)
        q = np.pad(q, (0, len(p) - len(q)))
        rational = (tuple(p), tuple(q))
    return BlaschkeProduct(zeros=seq, phase=complex(phase), rational=rational)


def power(B: BlaschkeProduct, n: int) -> BlaschkeProduct:
    """B^n represented with multiplied zero multiplicities (rational form stays exact)."""
    if n < 1:
        raise DomainError("power needs n >= 1")
    seq = zero_sequence(B.zeros.points,
                        [m * n for m in B.zeros.multiplicities])
    return blaschke_product(seq, phase=B.phase ** n)


def _factor_values(a: complex, z: np.ndarray) -> np.ndarray:
    if a == 0:
        return z.astype(complex)
    return (a.conjugate() / abs(a)) * (a - z) / (1.0 - a.conjugate() * z)


def _factor_derivative(a: complex, z: np.ndarray) -> np.ndarray:
    if a == 0:
        return np.ones_like(np.asarray(z, dtype=complex))
    c = a.conjugate() / abs(a)
    return c * (abs(a) ** 2 - 1.0) / (1.0 - a.conjugate() * z) ** 2


def _check_inside(z: np.ndarray, closed: bool = True):
    lim = 1.0 + 1e-12 if closed else 1.0
    if np.any(np.abs(z) > lim):
        raise DomainError("evaluation point outside the closed unit disk")


def beval(B: BlaschkeProduct, z, method: str = "auto") -> np.ndarray | complex:
    """Evaluate the product at points of the closed disk.

    The direct factor product is used up to 64 zeros; beyond that the
    factors are accumulated as log-magnitude plus argument.  ``method``
    may force either path ("direct" / "log").
    """
    z_arr = np.asarray(z, dtype=complex)
    _check_inside(z_arr)
    if method == "auto":
        method = "direct" if B.degree <= _WELL_CONDITIONED_DEGREE else "log"
    if method == "direct":
        out = np.full_like(z_arr, B.phase)
        for a, m in zip(B.zeros.points, B.zeros.multiplicities):
            out = out * _factor_values(a, z_arr) ** m
    elif method == "log":
        acc = np.zeros_like(z_arr)
        with np.errstate(divide="ignore", invalid="ignore"):
            for a, m in zip(B.zeros.points, B.zeros.multiplicities):
                acc = acc + m * np.log(_factor_values(a, z_arr))
            out = B.phase * np.exp(acc)
        out = np.where(np.isneginf(acc.real), 0.0, out)
    else:
        raise DomainError(f"unknown evaluation method {method!r}")
    return out if out.ndim else complex(out)


def _derivative_product_rule(B: BlaschkeProduct, z: complex) -> complex:
    """First derivative at one point via prefix/suffix products (exact at zeros)."""
    factors = B.zeros.expanded()
    vals = np.array([_factor_values(a, np.asarray(z, dtype=complex))
                     for a in factors], dtype=complex)
    ders = np.array([_factor_derivative(a, np.asarray(z, dtype=complex))
                     for a in factors], dtype=complex)
    n = len(factors)
    prefix = np.ones(n + 1, dtype=complex)
    suffix = np.ones(n + 1, dtype=complex)
    for i in range(n):
        prefix[i + 1] = prefix[i] * vals[i]
        suffix[n - 1 - i] = suffix[n - i] * vals[n - 1 - i]
    return B.phase * complex(np.sum(ders * prefix[:n] * suffix[1:]))


def derivative(B: BlaschkeProduct, z, order: int = 1):
    """Derivative of the product of the given order.

    Order 1 combines the logarithmic-derivative sum with an exact
    product-rule fallback within 1e-6 of a zero.  Orders >= 2 are
    computed from the rational form by repeated quotient differentiation.
    """
    if order < 1:
        raise DomainError("derivative order must be >= 1")
    z_arr = np.asarray(z, dtype=complex)
    _check_inside(z_arr)
    scalar = z_arr.ndim == 0
    z_flat = np.atleast_1d(z_arr)

    if order == 1:
        val = beval(B, z_flat)
        logd = np.zeros_like(z_flat)
        mindist = np.full(z_flat.shape, np.inf)
        with np.errstate(divide="ignore", invalid="ignore"):
            for a, m in zip(B.zeros.points, B.zeros.multiplicities):
                mindist = np.minimum(mindist, np.abs(z_flat - a))
                if a == 0:
                    logd = logd + m / z_flat
                else:
                    logd = logd + m * (abs(a) ** 2 - 1.0) \
                        / ((1.0 - a.conjugate() * z_flat) * (a - z_flat))
            out = val * logd
        near = mindist < _NEAR_ZERO_TOL
        if np.any(near):
            flat_out = out.reshape(-1)
            flat_z = z_flat.reshape(-1)
            for idx in np.nonzero(near.reshape(-1))[0]:
                flat_out[idx] = _derivative_product_rule(B, flat_z[idx])
            out = flat_out.reshape(out.shape)
        return complex(out[()]) if scalar else out.reshape(z_arr.shape)

    p, q = B.rational_form
    num = npoly.polysub(npoly.polymul(npoly.polyder(p), q),
                        npoly.polymul(p, npoly.polyder(q)))
    k = 1
    while k < order:
        num = npoly.polysub(npoly.polymul(npoly.polyder(num), q),
                            (k + 1) * npoly.polymul(num, npoly.polyder(q)))
        k += 1
    out = npoly.polyval(z_flat, num) / npoly.polyval(z_flat, q) ** (order + 1)
    return complex(out[()]) if scalar else out.reshape(z_arr.shape)


def omit_factor(B: BlaschkeProduct, n: int) -> BlaschkeProduct:
    """Remove one copy of the n-th zero (1-based, counted with multiplicity)."""
    factors = B.zeros.expanded()
    if not 1 <= n <= len(factors):
        raise DomainError(f"factor index {n} out of range 1..{len(factors)}")
    del factors[n - 1]
    if not factors:
        return BlaschkeProduct(zeros=zero_sequence([], []), phase=B.phase,
                               rational=((B.phase,), (1.0 + 0.0j,)))
    return blaschke_product(_collapse(factors), phase=B.phase)


def partial_product(B: BlaschkeProduct, N: int) -> BlaschkeProduct:
    """Keep the first N zeros (with multiplicity) in stored order."""
    factors = B.zeros.expanded()
    if not 0 <= N <= len(factors):
        raise DomainError(f"partial length {N} out of range 0..{len(factors)}")
    if N == 0:
        return BlaschkeProduct(zeros=zero_sequence([], []), phase=B.phase,
                               rational=((B.phase,), (1.0 + 0.0j,)))
    return blaschke_product(_collapse(factors[:N]), phase=B.phase)


def _collapse(factors: list[complex]) -> ZeroSequence:
    pts: list[complex] = []
    mult: list[int] = []
    for a in factors:
        if pts and a == pts[-1]:
            mult[-1] += 1
        else:
            pts.append(a)
            mult.append(1)
    return zero_sequence(pts, mult)


def preimages(B: BlaschkeProduct, zeta: complex,
              residual_tol: float = 1e-9) -> np.ndarray:
    """All solutions of B(z) = zeta inside the disk, with multiplicity.

    Solves P(z) - zeta Q(z) = 0 by companion-matrix eigenvalues followed
    by two guarded Newton polishing steps.  Returns exactly ``degree``
    roots sorted by (real, imag); the worst residual must stay below
    ``residual_tol``.
    """
    zeta = complex(zeta)
    if abs(zeta) >= 1.0:
        raise DomainError("preimages need |zeta| < 1")
    if B.degree < 1:
        raise DomainError("preimages need degree >= 1")
    p, q = B.rational_form
    coeffs = npoly.polysub(p, zeta * q)
    roots = npoly.polyroots(coeffs)
    dcoeffs = npoly.polyder(coeffs)
    for _ in range(2):
        f = npoly.polyval(roots, coeffs)
        df = npoly.polyval(roots, dcoeffs)
        ok = np.abs(df) > 1e-30
        step = np.where(ok, f / np.where(ok, df, 1.0), 0.0)
        cand = roots - step
        better = np.abs(npoly.polyval(cand, coeffs)) <= np.abs(f)
        roots = np.where(better, cand, roots)
    roots = roots[np.lexsort((roots.imag, roots.real))]
    # residuals through the rational form (valid even if rounding pushed a
    # root a hair outside the closed disk)
    resid = np.abs(npoly.polyval(roots, p) / npoly.polyval(roots, q) - zeta)
    worst = float(resid.max()) if resid.size else 0.0
    if worst > residual_tol:
        raise ConvergenceError(
            f"preimage polishing stalled (worst residual {worst:.3e})",
            worst_residual=worst)
    if np.any(np.abs(roots) >= 1.0):
        raise ConvergenceError("preimage escaped the open disk",
                               worst_residual=worst)
    return roots


def frostman_shift(B: BlaschkeProduct, xi: complex) -> BlaschkeProduct:
    """The Blaschke product with zero set B^{-1}(xi).

    Equals (B - xi)/(1 - conj(xi) B) up to a unimodular constant, which
    is recovered at a probe point and stored in ``phase``.
    """
    xi = complex(xi)
    if abs(xi) >= 1.0:
        raise DomainError("Frostman shift needs |xi| < 1")
    roots = preimages(B, xi)
    shifted = blaschke_product(roots.tolist())
    for probe in (0.0, 0.37, 0.29j, -0.41 + 0.13j, -0.23 - 0.31j):
        denom = complex(beval(shifted, np.asarray(probe, dtype=complex)))
        if abs(denom) > 1e-6:
            bz = complex(beval(B, np.asarray(probe, dtype=complex)))
            target = (bz - xi) / (1.0 - xi.conjugate() * bz)
            c = target / denom
            c /= abs(c)
            return blaschke_product(roots.tolist(), phase=c)
    raise ConvergenceError("no usable probe point for the shift phase")


def counting_function(B: BlaschkeProduct, w, p: float, zeta: complex,
                      log_variant: bool = False) -> float:
    """Sum of (1-|z|)^(2-p) w(|z|) over the fiber B(z) = zeta.

    With ``log_variant`` each term carries the factor log(e/(1-|z|)),
    which is >= 1 on the whole disk.
    """
    roots = preimages(B, zeta)
    rr = np.abs(roots)
    terms = (1.0 - rr) ** (2.0 - p) * w.value(rr)
    if log_variant:
        terms = terms * np.log(np.e / (1.0 - rr))
    return float(terms.sum())
