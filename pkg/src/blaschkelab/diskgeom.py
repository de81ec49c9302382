"""Pseudohyperbolic geometry of zero sequences in the unit disk.

Covers the separation constant of a sequence (the infimum over n of the
product of pseudohyperbolic distances to the other points), generators
for the standard test families, and the disjoint-disk machinery: a
radius R such that the Euclidean disks of radius R(1-|z_n|) around the
points are pairwise disjoint, together with the sup of |B| over their
boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SeparationError

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ZeroSequence:
    """Points in the open disk with multiplicities."""

    points: tuple[complex, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.points) != len(self.multiplicities):
            raise DomainError("points and multiplicities must have equal length")
        if any(abs(z) >= 1.0 for z in self.points):
            raise DomainError("all zeros must satisfy |z| < 1")
        if any(m < 1 or m != int(m) for m in self.multiplicities):
            raise DomainError("multiplicities must be positive integers")

    @property
    def blaschke_sum(self) -> float:
        return float(sum(m * (1.0 - abs(z))
                         for z, m in zip(self.points, self.multiplicities)))

    @property
    def degree(self) -> int:
        return int(sum(self.multiplicities))

    def expanded(self) -> list[complex]:
        """Zeros repeated according to multiplicity, in stored order."""
        out = []
        for z, m in zip(self.points, self.multiplicities):
            out.extend([z] * m)
        return out

    def __len__(self) -> int:
        return len(self.points)


def zero_sequence(points, multiplicities=None) -> ZeroSequence:
    pts = tuple(complex(z) for z in points)
    mult = tuple(int(m) for m in multiplicities) if multiplicities is not None \
        else tuple([1] * len(pts))
    return ZeroSequence(points=pts, multiplicities=mult)


def pseudohyperbolic(z1: complex, z2: complex) -> float:
    """The Moebius-invariant distance |z1-z2| / |1 - conj(z2) z1|."""
    z1 = complex(z1)
    z2 = complex(z2)
    if abs(z1) >= 1.0 or abs(z2) >= 1.0:
        raise DomainError("pseudohyperbolic distance needs |z| < 1")
    return abs(z1 - z2) / abs(1.0 - z2.conjugate() * z1)


def separation_constant(seq: ZeroSequence) -> float:
    """min over n of the product over k != n of the pairwise distances.

    A single point gives 1 (empty product); a repeated point gives 0.
    """
    pts = np.array(seq.expanded(), dtype=complex)
    n = len(pts)
    if n == 1:
        return 1.0
    dmat = np.abs(pts[:, None] - pts[None, :]) \
        / np.abs(1.0 - np.conj(pts[None, :]) * pts[:, None])
    np.fill_diagonal(dmat, 1.0)
    with np.errstate(divide="ignore"):
        logs = np.where(dmat > 0.0, np.log(dmat), -np.inf)
    prods = np.exp(logs.sum(axis=1))
    return float(prods.min())


def generate_sequence(kind: str, *, sigma: float | None = None,
                      count: int | None = None,
                      moduli=None) -> ZeroSequence:
    """Standard zero-sequence families.

    exponential:          moduli 1 - sigma^n (n = 1..count) on the positive axis
    rotated_exponential:  same moduli, point n at angle 2*pi*GOLDEN*n
    radial:               explicit positive moduli
    """
    if kind in ("exponential", "rotated_exponential"):
        if sigma is None or not 0.0 < sigma < 1.0:
            raise DomainError("exponential family needs sigma in (0,1)")
        if count is None or count < 1:
            raise DomainError("exponential family needs count >= 1")
        ns = np.arange(1, count + 1)
        radii = 1.0 - sigma ** ns
        if kind == "rotated_exponential":
            pts = radii * np.exp(2j * np.pi * GOLDEN * ns)
        else:
            pts = radii.astype(complex)
        return zero_sequence(pts)
    if kind == "radial":
        if moduli is None:
            raise DomainError("radial family needs explicit moduli")
        if any(not 0.0 <= m < 1.0 for m in moduli):
            raise DomainError("radial moduli must lie in [0,1)")
        return zero_sequence([complex(m) for m in moduli])
    raise DomainError(f"unknown sequence kind {kind!r}")


def parse_sequence_spec(spec: str) -> ZeroSequence:
    """Parse "exp:sigma=0.5,n=20", "rotexp:sigma=0.5,n=20" or "explicit:path=FILE".

    The explicit file is a CSV with header "re,im,mult".
    """
    kind, _, rest = spec.partition(":")
    kv = {}
    for item in rest.split(",") if rest else []:
        key, eq, val = item.partition("=")
        if not eq:
            raise DomainError(f"malformed sequence spec item {item!r}")
        kv[key.strip()] = val.strip()
    kind = kind.strip()
    if kind in ("exp", "rotexp"):
        unknown = set(kv) - {"sigma", "n"}
        if unknown:
            raise DomainError(f"unknown keys {sorted(unknown)} in {spec!r}")
        return generate_sequence(
            "exponential" if kind == "exp" else "rotated_exponential",
            sigma=float(kv["sigma"]), count=int(kv["n"]))
    if kind == "explicit":
        if set(kv) != {"path"}:
            raise DomainError(f"explicit sequence spec needs exactly path=FILE")
        rows = np.loadtxt(kv["path"], delimiter=",", skiprows=1, ndmin=2)
        pts = [complex(re, im) for re, im, _ in rows]
        mult = [int(m) for _, _, m in rows]
        return zero_sequence(pts, mult)
    raise DomainError(f"unknown sequence kind {kind!r} in spec {spec!r}")


@dataclass(frozen=True)
class SeparationReport:
    delta: float
    disjoint_radius: float
    rho_R: float


def disjoint_disk_radius(seq: ZeroSequence, delta: float | None = None,
                         boundary_samples: int = 64) -> SeparationReport:
    """Find R with pairwise disjoint disks |z - z_n| < R (1-|z_n|).

    Starts from R = delta/4 and halves on failure (at most 20 times);
    disjointness is verified explicitly, not trusted.  rho_R estimates
    sup |B| over the disk boundaries, B being the Blaschke product with
    the sequence's zeros.
    """
    from .blaschke import blaschke_product, beval  # local import: avoid cycle

    if delta is None:
        delta = separation_constant(seq)
    if delta <= 0.0:
        raise SeparationError("sequence is not separated (delta = 0)")
    pts = np.array(seq.points, dtype=complex)
    radii0 = 1.0 - np.abs(pts)
    R = delta / 4.0
    for _ in range(21):
        eucl = R * radii0
        gaps = np.abs(pts[:, None] - pts[None, :]) \
            - (eucl[:, None] + eucl[None, :])
        np.fill_diagonal(gaps, np.inf)
        if np.all(gaps > 0.0):
            break
        R *= 0.5
    else:
        raise SeparationError("could not verify disjoint disks after 20 halvings")

    B = blaschke_product(seq)
    angles = np.exp(2j * np.pi * (np.arange(boundary_samples) + 0.5)
                    / boundary_samples)
    samples = pts[:, None] + (R * radii0)[:, None] * angles[None, :]
    samples = samples[np.abs(samples) < 1.0]
    rho = float(np.abs(beval(B, samples)).max()) if samples.size else 0.0
    return SeparationReport(delta=float(delta), disjoint_radius=float(R),
                            rho_R=rho)
