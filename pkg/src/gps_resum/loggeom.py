"""Regions of the logarithmic chart and their membership predicates.

The chart adds an origin ``-inf`` to the complex plane per coordinate; we
represent a coordinate as a ``complex`` whose real part may be ``-inf``, with
the convention Im(-inf) = 0.  Points are tuples of such coordinates.

Regions are closed descriptions, never materialized point sets:

* log-disk           H(r)        : Re w < r
* log-sector         S(d, r, t)  : Re w < r and |d - Im w| < t   (plus -inf)
* log-line           T(d)        : Im w = d                      (plus -inf)
* log-Borel disk     V(d, D)     : cos(Im w - d) > D e^{Re w}    (plus -inf)
* log-k-polysector   S^k(r, t)   : w in H(r) and k . |Im w| < t
* log-k-polydisk     H^k_p(r)    : w in H(r) and k . Re w < k . r - log(1+p)
* unions/intersections of the above over a finite set K of Gevrey tuples.

Strict inequalities throughout; closures (for quadrature contours and the
resummation sets S^tau_p) are requested with ``closed=True``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .exponents import SupportDescriptor

__all__ = [
    "NEG_INF",
    "neg_inf_point",
    "is_neg_inf",
    "as_point",
    "LogRegion",
    "LogDisk",
    "LogSector",
    "LogLine",
    "LogBorelDisk",
    "PolySector",
    "PolyDisk",
    "RegionIntersection",
    "RegionUnion",
    "contains",
    "SummabilityParams",
    "rho_p",
    "containment_check",
    "exp_polydisk_contains",
]

NEG_INF = float("-inf")


def is_neg_inf(z: complex) -> bool:
    return complex(z).real == NEG_INF


def neg_inf_point(m: int = 1) -> tuple[complex, ...]:
    return (complex(NEG_INF, 0.0),) * m


def as_point(w, m: Optional[int] = None) -> tuple[complex, ...]:
    """Normalize to a tuple of complex coordinates with Im(-inf) = 0."""
    if isinstance(w, (int, float, complex)):
        w = (w,)
    out = tuple(
        complex(NEG_INF, 0.0) if complex(z).real == NEG_INF else complex(z)
        for z in w
    )
    if m is not None and len(out) != m:
        raise ValueError(f"expected a point with {m} coordinates, got {len(out)}")
    return out


def _im(z: complex) -> float:
    return 0.0 if is_neg_inf(z) else z.imag


def _dot_re(k: Sequence[float], w: Sequence[complex]) -> float:
    """k . Re w with the convention 0 * (-inf) = 0."""
    acc = 0.0
    for ki, wi in zip(k, w):
        if ki == 0.0:
            continue
        if is_neg_inf(wi):
            return NEG_INF
        acc += ki * wi.real
    return acc


def _dot_abs_im(k: Sequence[float], w: Sequence[complex]) -> float:
    return sum(ki * abs(_im(wi)) for ki, wi in zip(k, w))


def _lt(a: float, b: float, closed: bool) -> bool:
    return a <= b if closed else a < b


class LogRegion:
    """Base class; subclasses implement ``contains``."""

    dim: int = 1

    def contains(self, w) -> bool:
        raise NotImplementedError

    def __contains__(self, w) -> bool:
        return self.contains(w)


@dataclass(frozen=True)
class LogDisk(LogRegion):
    log_radius: float
    dim: int = 1
    closed: bool = False

    def contains(self, w) -> bool:
        pt = as_point(w, self.dim)
        return all(_lt(z.real, self.log_radius, self.closed) for z in pt)


@dataclass(frozen=True)
class LogSector(LogRegion):
    direction: float
    log_radius: float
    opening: float  # theta; opening = inf degenerates to the log-disk
    closed: bool = False

    def contains(self, w) -> bool:
        (z,) = as_point(w, 1)
        if is_neg_inf(z):
            return True
        if not _lt(z.real, self.log_radius, self.closed):
            return False
        if self.opening == math.inf:
            return True
        return _lt(abs(self.direction - z.imag), self.opening, self.closed)


@dataclass(frozen=True)
class LogLine(LogRegion):
    direction: float

    def contains(self, w) -> bool:
        (z,) = as_point(w, 1)
        return is_neg_inf(z) or z.imag == self.direction


@dataclass(frozen=True)
class LogBorelDisk(LogRegion):
    """V(d, D): the log chart of the Borel disk of diameter 1/D."""

    direction: float
    extent: float  # D > 0

    def contains(self, w) -> bool:
        (z,) = as_point(w, 1)
        if is_neg_inf(z):
            return True
        return math.cos(z.imag - self.direction) > self.extent * math.exp(z.real)


@dataclass(frozen=True)
class PolySector(LogRegion):
    """S^k(r, theta) = {w in H(r): k . |Im w| < theta}."""

    k: tuple[float, ...]
    log_radius: tuple[float, ...]
    opening: float
    closed: bool = False

    @property
    def dim(self) -> int:  # type: ignore[override]
        return len(self.k)

    def contains(self, w) -> bool:
        pt = as_point(w, self.dim)
        if not all(_lt(z.real, r, self.closed) for z, r in zip(pt, self.log_radius)):
            return False
        return _lt(_dot_abs_im(self.k, pt), self.opening, self.closed)


@dataclass(frozen=True)
class PolyDisk(LogRegion):
    """H^k_p(r) = {w in H(r): k . Re w < k . r - log(1+p)}."""

    k: tuple[float, ...]
    log_radius: tuple[float, ...]
    p: int
    closed: bool = False

    @property
    def dim(self) -> int:  # type: ignore[override]
        return len(self.k)

    def contains(self, w) -> bool:
        pt = as_point(w, self.dim)
        if not all(_lt(z.real, r, self.closed) for z, r in zip(pt, self.log_radius)):
            return False
        lhs = _dot_re(self.k, pt)
        rhs = sum(ki * ri for ki, ri in zip(self.k, self.log_radius)) - math.log(
            1 + self.p
        )
        return _lt(lhs, rhs, self.closed)


@dataclass(frozen=True)
class RegionIntersection(LogRegion):
    parts: tuple[LogRegion, ...]

    @property
    def dim(self) -> int:  # type: ignore[override]
        return self.parts[0].dim if self.parts else 1

    def contains(self, w) -> bool:
        return all(r.contains(w) for r in self.parts)


@dataclass(frozen=True)
class RegionUnion(LogRegion):
    parts: tuple[LogRegion, ...]

    @property
    def dim(self) -> int:  # type: ignore[override]
        return self.parts[0].dim if self.parts else 1

    def contains(self, w) -> bool:
        return any(r.contains(w) for r in self.parts)


def contains(region: LogRegion, w) -> bool:
    return region.contains(w)


def exp_polydisk_contains(k, radius, p, z) -> bool:
    """Disk-chart form D^k_p(e^r): |z| < e^r and prod |z_i|^{k_i} < e^{k.r}/(1+p)."""
    k = tuple(float(x) for x in k)
    radius = tuple(float(x) for x in radius)
    z = tuple(complex(v) for v in z)
    if not all(abs(zi) < ri for zi, ri in zip(z, radius)):
        return False
    prod = 1.0
    for ki, zi in zip(k, z):
        if ki != 0.0:
            prod *= abs(zi) ** ki
    cap = 1.0
    for ki, ri in zip(k, radius):
        cap *= ri**ki
    return prod < cap / (1 + p)


# ---------------------------------------------------------------------------
# Summability parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SummabilityParams:
    """tau = (K, R, r, theta, Delta).

    K is a finite set of Gevrey tuples (scalars are normalized to 1-tuples).
    In one variable the sector for k is S(0, log R, theta*k) and
    rho_p = R/(1+p)^{max K}; in several variables the polysector convention
    S^k(log R, theta) applies and rho_p,i = R_i/(1+p)^{1/min_i K}.
    """

    K: tuple[tuple[float, ...], ...]
    R: tuple[float, ...]
    r: float
    theta: float
    delta: Optional[tuple[SupportDescriptor, ...]] = None

    def __init__(self, K, R, r, theta, delta=None):
        K = tuple(
            sorted(
                tuple(float(x) for x in (k if isinstance(k, (tuple, list)) else (k,)))
                for k in K
            )
        )
        if not K:
            raise ValueError("K must be nonempty")
        m = len(K[0])
        if any(len(k) != m for k in K):
            raise ValueError("all Gevrey tuples must have the same arity")
        if any(x < 0 for k in K for x in k):
            raise ValueError("Gevrey indices must be >= 0")
        R = tuple(float(x) for x in (R if isinstance(R, (tuple, list)) else (R,) * m))
        if len(R) != m or any(x <= 0 for x in R):
            raise ValueError("R must be a positive polyradius matching K's arity")
        if not r > 1:
            raise ValueError("r must be > 1")
        if not theta > math.pi / 2:
            raise ValueError("theta must be > pi/2")
        if delta is not None:
            delta = tuple(delta)
            if len(delta) != m:
                raise ValueError("need one support descriptor per variable")
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "r", float(r))
        object.__setattr__(self, "theta", float(theta))
        object.__setattr__(self, "delta", delta)

    @property
    def m(self) -> int:
        return len(self.K[0])

    @property
    def M_K(self) -> tuple[float, ...]:
        return tuple(max(k[i] for k in self.K) for i in range(self.m))

    @property
    def mu_K(self) -> tuple[float, ...]:
        return tuple(min(k[i] for k in self.K) for i in range(self.m))

    # --- regions ---

    def sector(self, closed: bool = False) -> LogRegion:
        """S^tau: the common sector of all k in K."""
        logR = tuple(math.log(x) for x in self.R)
        if self.m == 1:
            ks = [k[0] for k in self.K if k[0] != 0.0]
            if not ks:
                return LogDisk(logR[0], closed=closed)
            return RegionIntersection(
                tuple(
                    LogSector(0.0, logR[0], self.theta * k, closed=closed)
                    for k in ks
                )
            )
        return RegionIntersection(
            tuple(PolySector(k, logR, self.theta, closed=closed) for k in self.K)
        )

    def sector_p(self, p: int, closed: bool = True) -> LogRegion:
        """S^tau_p (closed by definition in one variable)."""
        logR = tuple(math.log(x) for x in self.R)
        parts = []
        if self.m == 1:
            for k in self.K:
                kk = k[0]
                rho = self.R[0] / (1 + p) ** kk
                sector = LogSector(
                    0.0,
                    logR[0],
                    self.theta * kk if kk != 0.0 else math.inf,
                    closed=closed,
                )
                parts.append(
                    RegionUnion((sector, LogDisk(math.log(rho), closed=closed)))
                )
        else:
            for k in self.K:
                parts.append(
                    RegionUnion(
                        (
                            PolySector(k, logR, self.theta, closed=closed),
                            PolyDisk(k, logR, p, closed=closed),
                        )
                    )
                )
        return RegionIntersection(tuple(parts))

    def rho_p(self, p: int) -> tuple[float, ...]:
        return rho_p(self, p)

    # --- partial order: tau <= tau' iff K >= K', R <= R', r <= r',
    #     theta <= theta', Delta >= Delta' (supports compared by the caller).

    def leq(self, other: "SummabilityParams") -> bool:
        if self.m != other.m:
            return False
        return (
            set(other.K) <= set(self.K)
            and all(a <= b for a, b in zip(self.R, other.R))
            and self.r <= other.r
            and self.theta <= other.theta
        )


def rho_p(tau: SummabilityParams, p: int):
    """Shrinking polyradius rho^tau_p.

    One variable: R/(1+p)^{M_K}. Several variables: R_i/(1+p)^{1/mu_{K,i}}.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    if tau.m == 1:
        return (tau.R[0] / (1 + p) ** tau.M_K[0],)
    out = []
    for i in range(tau.m):
        mu = tau.mu_K[i]
        if mu == 0.0:
            out.append(tau.R[i])
        else:
            out.append(tau.R[i] / (1 + p) ** (1.0 / mu))
    return tuple(out)


def containment_check(
    tau: SummabilityParams,
    p: int,
    samples: int = 1000,
    rng: Optional[random.Random] = None,
    rho_override=None,
):
    """Sample H(log rho^tau_p) and verify the containment chain

    H(log rho_p) <= H^{mu_K}_p(log R) <= intersection of H^k_p(log R) <= S^tau_p.

    Returns (True, None) or (False, witness_point).
    """
    rng = rng or random.Random(0)
    m = tau.m
    rho = tuple(rho_override) if rho_override is not None else rho_p(tau, p)
    logrho = [math.log(x) for x in rho]
    logR = tuple(math.log(x) for x in tau.R)
    if m == 1:
        # one-variable indices k are the wide-sector (ramified) convention;
        # the polydisk chain lives in the reciprocal dictionary 1/k, under
        # which H^{1/k}_p(log R) = H(log R/(1+p)^k) exactly.  k = 0 indices
        # contribute the whole disk and drop out of the chain.
        ks = [(1.0 / k[0],) for k in tau.K if k[0] != 0.0]
        if not ks:
            disk = LogDisk(logR[0])
            for _ in range(samples):
                z = complex(logrho[0] - rng.random() * 3.0 - 1e-9, rng.uniform(-4, 4))
                if not disk.contains((z,)):
                    return False, (z,)
            return True, None
        mid_k = tuple(min(k[i] for k in ks) for i in range(1))
    else:
        ks = list(tau.K)
        mid_k = tau.mu_K
    mids = PolyDisk(mid_k, logR, p)
    inner_regions = [PolyDisk(tuple(k), logR, p) for k in ks]
    outer = tau.sector_p(p)
    for _ in range(samples):
        pt = []
        for i in range(m):
            if rng.random() < 0.05:
                pt.append(complex(NEG_INF, 0.0))
            else:
                re = logrho[i] - rng.random() * 3.0 - 1e-9
                im = rng.uniform(-4.0, 4.0)
                pt.append(complex(re, im))
        pt = tuple(pt)
        if not mids.contains(pt):
            return False, pt
        if not all(reg.contains(pt) for reg in inner_regions):
            return False, pt
        if not outer.contains(pt):
            return False, pt
    return True, None
