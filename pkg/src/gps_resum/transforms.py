"""Certified numerical log-Borel and log-Laplace transforms.

The Borel transform of f at w integrates the kernel e^{w - eta + e^{w-eta}}
(exponent combined before exponentiation, so nothing overflows) along the
three-piece boundary of a closed log-subsector cl(S(d', r', theta')) with
theta' > pi/2; the kernel decays doubly exponentially leftward on the rays,
and the dropped tails beyond the truncation abscissa -L are certified from
that decay.

The Laplace transform integrates e^{-e^{eta-w}} f(eta) over a segment
[-L1, L2] of the log-line; the left tail is certified from a flatness
certificate |f| <= A e^{alpha Re eta}, the right tail from a growth
certificate |f| <= C e^{D e^{Re eta}} (or a function-supplied tail bound).
Truncating L2 at the edge of a series' certified disk and *reporting* the
doubly-exponential remainder is what lets the resummation pipeline work
without analytic continuation.

Quadrature: adaptive 15-point Gauss-Legendre panels with interval bisection.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .loggeom import LogDisk, LogRegion, LogSector, is_neg_inf
from .series import GenSeries

__all__ = [
    "QuadratureError",
    "GrowthCertificate",
    "FlatCertificate",
    "LogFunction",
    "QuadratureResult",
    "integrate_segment",
    "log_borel",
    "log_laplace",
    "log_borel_lambda",
    "log_laplace_lambda",
    "borel_sup_bound",
    "power_function",
    "series_log_function",
    "borel_transform_function",
]

NEG_INF = float("-inf")


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class GrowthCertificate:
    """|f(w)| <= C * exp(D * e^{Re w / lam}) on the relevant sector."""

    C: float
    D: float
    lam: float = 1.0


@dataclass(frozen=True)
class FlatCertificate:
    """|f(w)| <= A * e^{alpha * Re w} for Re w <= w0."""

    A: float
    alpha: float
    w0: float = 0.0


@dataclass(frozen=True)
class LogFunction:
    """A log-holomorphic function given as an evaluator plus certificates.

    The evaluator must be defined on the declared domain (None = all of the
    log chart) and re-entrant; transforms may call it from several panels.
    """

    evaluator: Callable[[complex], complex]
    domain: Optional[LogRegion] = None
    growth: Optional[GrowthCertificate] = None
    flat: Optional[FlatCertificate] = None
    sup_on_radius: Optional[Callable[[float], float]] = None
    right_tail_bound: Optional[Callable[[complex, float], float]] = None
    name: str = ""

    def __call__(self, w: complex) -> complex:
        return self.evaluator(w)


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    abs_error_estimate: float
    truncation_bound: float
    panels: int
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.abs_error_estimate < 0 or (
            self.truncation_bound < 0 and not math.isnan(self.truncation_bound)
        ):
            raise ValueError("error bounds must be nonnegative")

    @property
    def total_bound(self) -> float:
        return self.abs_error_estimate + self.truncation_bound

    def __complex__(self) -> complex:
        return self.value


_GL_X, _GL_W = np.polynomial.legendre.leggauss(15)
_GL_X = tuple(float(x) for x in _GL_X)
_GL_W = tuple(float(x) for x in _GL_W)


def _gl15(f: Callable[[complex], complex], a: complex, b: complex) -> complex:
    mid = (a + b) / 2
    half = (b - a) / 2
    acc = 0j
    for x, wgt in zip(_GL_X, _GL_W):
        acc += wgt * f(mid + half * x)
    return half * acc


def integrate_segment(
    f: Callable[[complex], complex],
    a: complex,
    b: complex,
    rel_tol: float = 1e-9,
    abs_tol: float = 0.0,
    max_depth: int = 48,
) -> tuple[complex, float, int]:
    """Adaptive GL15-with-bisection along the straight segment [a, b].

    A panel is accepted when its bisection defect clears the larger of the
    panel-relative tolerance and its share (by length) of the segment-wide
    absolute budget; the budget keeps near-zero stretches of strongly
    decaying integrands from being refined forever.  Raises QuadratureError
    when bisection bottoms out with the local error still far above both.
    """
    a, b = complex(a), complex(b)
    whole = _gl15(f, a, b)
    budget = max(abs_tol, rel_tol * abs(whole), 1e-300)
    density = budget / max(abs(b - a), 1e-300)
    value, err, panels, bad = _adapt(f, a, b, whole, rel_tol, density, max_depth)
    if bad and err > 1e3 * max(budget, rel_tol * abs(value)):
        raise QuadratureError(
            f"adaptive refinement did not converge on [{a}, {b}]; "
            f"error estimate {err:.3e}"
        )
    return value, err, panels


def _adapt(f, a, b, whole, rel_tol, density, depth):
    mid = (a + b) / 2
    left = _gl15(f, a, mid)
    right = _gl15(f, mid, b)
    better = left + right
    err = abs(better - whole)
    tol = max(density * abs(b - a), rel_tol * abs(better))
    if err <= tol:
        return better, err, 2, False
    if depth <= 0:
        return better, err, 2, err > 1e3 * tol
    vl, el, pl, badl = _adapt(f, a, mid, left, rel_tol, density, depth - 1)
    vr, er, pr, badr = _adapt(f, mid, b, right, rel_tol, density, depth - 1)
    return vl + vr, el + er, pl + pr, badl or badr


# ---------------------------------------------------------------------------
# log-Borel transform
# ---------------------------------------------------------------------------


def _default_borel_contour(f: LogFunction, w: complex) -> tuple[float, float, float]:
    d = w.imag
    dom = f.domain
    if dom is None:
        return d, w.real + 1.0, 0.75 * math.pi
    if isinstance(dom, LogDisk):
        return d, dom.log_radius - 0.05, 0.75 * math.pi
    if isinstance(dom, LogSector):
        if not dom.opening > math.pi / 2:
            raise ValueError("Borel transform needs a sector opening > pi/2")
        theta_p = (
            0.75 * math.pi
            if dom.opening == math.inf
            else math.pi / 2 + 0.5 * (dom.opening - math.pi / 2)
        )
        return dom.direction, dom.log_radius - 0.05, theta_p
    raise ValueError("cannot infer a Borel contour from this domain; pass one")


def log_borel(
    f: LogFunction,
    w: complex,
    contour: Optional[tuple[float, float, float]] = None,
    rel_tol: float = 1e-9,
) -> QuadratureResult:
    """B f(w) = (e^w / 2 pi i) * integral over the subsector boundary of
    e^{e^{w - eta}} f(eta) d eta / e^eta, truncated where the kernel decay
    certifies the dropped rays below ~1e-16 relative.
    """
    w = complex(w)
    if is_neg_inf(w):
        # B f is flat at the origin whenever f is; the integral of the
        # kernel against a bounded f vanishes in the limit
        return QuadratureResult(0j, 0.0, 0.0, 0)
    dp, rp, tp = contour if contour is not None else _default_borel_contour(f, w)
    if not tp > math.pi / 2:
        raise ValueError("contour opening theta' must exceed pi/2")
    if abs(w.imag - dp) >= tp - math.pi / 2:
        raise ValueError(
            f"w = {w} lies outside the image sector S(d', inf, theta' - pi/2)"
        )
    if f.domain is not None:
        for probe in (
            complex(rp, dp - tp),
            complex(rp, dp + tp),
            complex(rp - 5, dp),
        ):
            if not f.domain.contains((probe,)):
                raise ValueError(
                    f"contour point {probe} leaves the declared domain of f"
                )
    c = -math.cos(tp)  # = |cos theta'| > 0
    # truncation abscissa: kernel modulus on the rays at Re eta = -t is
    # exp(Re w + t - c e^{Re w + t}) / 2pi; push it below 1e-18
    L = 4.0
    for _ in range(60):
        g = w.real + L - c * math.exp(w.real + L)
        if g < math.log(1e-18):
            break
        L += 1.0
    kern = lambda eta: cmath.exp(w - eta + cmath.exp(w - eta)) * f(eta) / (2j * math.pi)
    a1 = complex(-L, dp - tp)
    b1 = complex(rp, dp - tp)
    b2 = complex(rp, dp + tp)
    a2 = complex(-L, dp + tp)
    v1, e1, p1 = integrate_segment(kern, a1, b1, rel_tol)
    v2, e2, p2 = integrate_segment(kern, b1, b2, rel_tol)
    v3, e3, p3 = integrate_segment(kern, b2, a2, rel_tol)
    value = v1 + v2 + v3
    sup = f.sup_on_radius(rp) if f.sup_on_radius is not None else None
    if sup is not None:
        u_L = math.exp(w.real + L)
        trunc = 2 * sup * math.exp(-c * u_L) / (c * 2 * math.pi)
    else:
        trunc = math.nan
    return QuadratureResult(
        value,
        e1 + e2 + e3,
        trunc,
        p1 + p2 + p3,
        meta={"contour": (dp, rp, tp), "L": L},
    )


def borel_sup_bound(
    norm_f: float, theta: float, theta_p: float, r: float, r_p: float
) -> float:
    """A-priori sup bound for |B f| on S(d', r, theta' - pi/2).

    With C = sin((theta - theta')/2): norm_f * e / C when r <= r',
    norm_f * e^{e^{r - r'}} * e^{r - r'} / C when r >= r'.
    """
    if not (math.pi / 2 < theta_p < theta):
        raise ValueError("need pi/2 < theta' < theta")
    C = math.sin((theta - theta_p) / 2)
    if r <= r_p:
        return norm_f * math.e / C
    return norm_f * math.exp(math.exp(r - r_p)) * math.exp(r - r_p) / C


# ---------------------------------------------------------------------------
# log-Laplace transform
# ---------------------------------------------------------------------------


def log_laplace(
    f: LogFunction,
    w: complex,
    truncation: Optional[tuple[float, float]] = None,
    rel_tol: float = 1e-9,
    abs_floor: float = 1e-300,
) -> QuadratureResult:
    """L f(w) = integral over the log-line of e^{-e^{eta - w}} f(eta) d eta,
    over [-L1, L2], with both dropped tails certified and reported.
    """
    w = complex(w)
    cosw = math.cos(w.imag)
    growth = f.growth
    if growth is not None and abs(growth.lam - 1.0) > 1e-12:
        raise ValueError("growth certificate must be in the unramified chart")
    D = growth.D if growth is not None else 0.0
    q = cosw - D * math.exp(w.real)
    if q <= 0:
        raise ValueError(
            f"w = {w} violates the Borel-disk condition cos(Im w) > D e^(Re w)"
        )
    if truncation is not None:
        L1, L2 = truncation
    else:
        L1, L2 = _default_laplace_truncation(f, w, q)
    # left tail: |f| <= A e^{alpha Re eta}, kernel modulus <= 1 on the line
    if f.flat is None:
        raise ValueError("log_laplace requires a flatness certificate for the left tail")
    if not f.flat.alpha > 0:
        raise ValueError("Laplace needs decay at the origin (alpha > 0)")
    if -L1 > f.flat.w0:
        raise ValueError("left truncation lies outside the flatness range")
    left_tail = f.flat.A * math.exp(-f.flat.alpha * L1) / f.flat.alpha

    if f.right_tail_bound is not None:
        right_tail = f.right_tail_bound(w, L2)
    elif growth is not None:
        u2 = math.exp(L2 - w.real)
        qu2 = q * u2
        if qu2 <= 0:
            right_tail = math.inf
        else:
            right_tail = growth.C * math.exp(D * math.exp(L2) - cosw * u2) / qu2
    else:
        right_tail = math.nan

    kern = lambda eta: cmath.exp(-cmath.exp(eta - w)) * f(eta)
    value, err, panels = integrate_segment(
        kern, complex(-L1, 0.0), complex(L2, 0.0), rel_tol, abs_tol=abs_floor
    )
    return QuadratureResult(
        value,
        err,
        left_tail + right_tail,
        panels,
        meta={"L1": L1, "L2": L2},
    )


def _default_laplace_truncation(f: LogFunction, w: complex, q: float):
    # left: drive A e^{-alpha L1}/alpha below 1e-16 (relative floors are the
    # caller's business; certificates are always reported)
    if f.flat is not None and f.flat.alpha > 0:
        A, al = f.flat.A, f.flat.alpha
        L1 = max((math.log(max(A, 1e-300)) + 40.0) / al, 5.0, -f.flat.w0)
    else:
        L1 = 40.0
    # right: the certified domain edge minus 1e-3 when the domain is a
    # bounded disk/sector (the incomplete-Laplace rule), never beyond the
    # abscissa where the kernel alone has decayed to e^-46 (the remainder
    # bound only improves from stopping there)
    kernel_edge = w.real + math.log(46.0 / q)
    if f.right_tail_bound is not None:
        for _ in range(80):
            if f.right_tail_bound(w, kernel_edge) < 1e-18:
                break
            kernel_edge += 0.5
    dom = f.domain
    if isinstance(dom, (LogDisk, LogSector)) and dom.log_radius != math.inf:
        L2 = min(dom.log_radius - 1e-3, kernel_edge)
    else:
        L2 = kernel_edge
    return L1, L2


# ---------------------------------------------------------------------------
# ramified transforms: conjugation with the scaling w -> lam * w
# ---------------------------------------------------------------------------


def _scaled_region(region: Optional[LogRegion], s: float) -> Optional[LogRegion]:
    """The image of the region under w -> s*w (only 1-d regions scale)."""
    if region is None:
        return None
    if isinstance(region, LogDisk):
        return LogDisk(region.log_radius * s, closed=region.closed)
    if isinstance(region, LogSector):
        return LogSector(
            region.direction * s,
            region.log_radius * s,
            region.opening * s if region.opening != math.inf else math.inf,
            closed=region.closed,
        )
    raise ValueError("cannot scale this region kind")


def _ramified(f: LogFunction, lam: float) -> LogFunction:
    """f o m_lam as a LogFunction in the lam-divided chart."""
    ev = f.evaluator
    flat = None
    if f.flat is not None:
        flat = FlatCertificate(f.flat.A, f.flat.alpha * lam, f.flat.w0 / lam)
    growth = None
    if f.growth is not None:
        growth = GrowthCertificate(f.growth.C, f.growth.D, f.growth.lam / lam)
    sup = None
    if f.sup_on_radius is not None:
        sup = lambda x: f.sup_on_radius(x * lam)
    # a right-tail bound does not survive the chart change (the kernel shape
    # differs); the growth certificate, which does transform, takes over
    return LogFunction(
        evaluator=lambda eta: ev(lam * eta),
        domain=_scaled_region(f.domain, 1.0 / lam),
        growth=growth,
        flat=flat,
        sup_on_radius=sup,
        right_tail_bound=None,
        name=f"{f.name}.m_{lam}" if f.name else "",
    )


def log_borel_lambda(
    f: LogFunction,
    lam: float,
    w: complex,
    contour: Optional[tuple[float, float, float]] = None,
    rel_tol: float = 1e-9,
) -> QuadratureResult:
    """B^lam f = (B (f o m_lam)) o m_{1/lam}."""
    if not lam > 0:
        raise ValueError("lambda must be positive")
    g = _ramified(f, lam)
    scaled_contour = None
    if contour is not None:
        dp, rp, tp = contour
        scaled_contour = (dp / lam, rp / lam, tp / lam)
    return log_borel(g, complex(w) / lam, scaled_contour, rel_tol)


def log_laplace_lambda(
    f: LogFunction,
    lam: float,
    w: complex,
    truncation: Optional[tuple[float, float]] = None,
    rel_tol: float = 1e-9,
) -> QuadratureResult:
    """L^lam f = (L (f o m_lam)) o m_{1/lam}.

    Pure composition: no Jacobian factor appears (L^lam p_alpha must come
    out as Gamma(alpha*lam) p_alpha).  Truncation abscissae are given in f's
    chart and scaled into the ramified one.
    """
    if not lam > 0:
        raise ValueError("lambda must be positive")
    g = _ramified(f, lam)
    scaled = None
    if truncation is not None:
        scaled = (truncation[0] / lam, truncation[1] / lam)
    res = log_laplace(g, complex(w) / lam, scaled, rel_tol)
    return QuadratureResult(
        res.value,
        res.abs_error_estimate,
        res.truncation_bound,
        res.panels,
        meta=dict(res.meta, lam=lam),
    )


# ---------------------------------------------------------------------------
# ready-made LogFunctions
# ---------------------------------------------------------------------------


def power_function(alpha: float) -> LogFunction:
    """p_alpha(w) = e^{alpha w} with exact certificates and tail bounds."""
    alpha = float(alpha)

    def ev(w: complex) -> complex:
        w = complex(w)
        if is_neg_inf(w):
            return complex(1.0) if alpha == 0.0 else 0j
        return cmath.exp(alpha * w)

    def rtb(w: complex, L2: float) -> float:
        # integral over [L2, oo) of e^{alpha eta} |e^{-e^{eta-w}}| d eta
        #   = e^{alpha Re w} c^{-alpha} Gamma(alpha, c u2), c = cos(Im w)
        w = complex(w)
        c = math.cos(w.imag)
        if c <= 0:
            return math.inf
        x = c * math.exp(L2 - w.real)
        if alpha == 0.0:
            return math.exp(-x) / c * math.exp(0.0)
        if x < 2 * alpha + 4:
            return math.inf  # caller should push L2 further out
        # Gamma(a, x) <= 2 x^{a-1} e^{-x} once x >= 2(a-1)
        return (
            math.exp(alpha * w.real)
            * c**-alpha
            * 2.0
            * x ** (alpha - 1)
            * math.exp(-x)
        )

    return LogFunction(
        evaluator=ev,
        domain=None,
        flat=FlatCertificate(1.0, alpha, math.inf) if alpha > 0 else None,
        sup_on_radius=lambda x: math.exp(alpha * x) if alpha >= 0 else math.inf,
        right_tail_bound=rtb,
        name=f"p_{alpha:g}",
    )


def series_log_function(
    F: GenSeries,
    log_radius: Optional[float] = None,
    growth: Optional[GrowthCertificate] = None,
) -> LogFunction:
    """The log-sum of a one-variable jet as a LogFunction on H(log_radius).

    Flatness comes from the jet itself: with a0 = ord(F), the absolute sum
    at radius e^{w0} divided by e^{a0 w0} is a valid flatness constant.
    """
    if F.nvars != 1:
        raise ValueError("series_log_function requires one variable")
    ev = F.log_sum_function()
    if log_radius is None:
        if F.tail is not None and F.tail.bound == 0.0:
            log_radius = math.inf
        elif F.tail is not None:
            log_radius = math.log(F.tail.radius[0])
        else:
            raise ValueError("cannot infer a certified log-radius; pass one")
    flat = None
    a0 = F.ord()
    if a0 not in (math.inf,) and a0 > 0:
        w0 = min(log_radius - 0.05, 0.0) if log_radius != math.inf else 0.0
        nr = F.norm_r(math.exp(w0))
        if nr.certified:
            flat = FlatCertificate(nr.value / math.exp(a0 * w0), a0, w0)

    def sup(x: float) -> float:
        res = F.norm_r(math.exp(min(x, log_radius - 1e-9)))
        return res.value if res.certified else math.inf

    return LogFunction(
        evaluator=lambda w: ev(w),
        domain=LogDisk(log_radius),
        growth=growth,
        flat=flat,
        sup_on_radius=sup,
        name="series",
    )


def borel_transform_function(
    f: LogFunction,
    contour: tuple[float, float, float],
    sector_theta: float,
    rel_tol: float = 1e-9,
) -> LogFunction:
    """B f as a LogFunction, with the sup-estimate growth certificate.

    sector_theta is the opening of f's sector; the certificate constants come
    from the closed-form sup estimate (e^{e^x} x <= e^{2 e^x} grouping), with
    D = 2 e^{-r'}.
    """
    dp, rp, tp = contour
    sup = f.sup_on_radius(rp) if f.sup_on_radius is not None else None
    growth = None
    flat = None
    Cang = math.sin(min(sector_theta - tp, math.pi) / 2)
    if sup is not None and math.isfinite(sup) and sector_theta > tp:
        # e^{e^x} x <= e^{2 e^x} turns the two-branch sup estimate into the
        # single growth form C e^{D e^{Re w}} with D = 2 e^{-r'}; the angle
        # constant saturates at sin(pi/2) = 1 for disk domains (theta = inf)
        growth = GrowthCertificate(math.e * sup / Cang, 2 * math.exp(-rp))
    if f.flat is not None and f.flat.alpha > 0:
        # flatness transfers through the sup estimate applied on the moving
        # subsector r' = Re w + 1: |Bf(w)| <= (e A e^alpha / C) e^{alpha Re w}
        A, al, w0 = f.flat.A, f.flat.alpha, f.flat.w0
        flat = FlatCertificate(A * math.exp(al + 1) / Cang, al, w0 - 1.0)

    def ev(w: complex) -> complex:
        return log_borel(f, w, (w.imag if not is_neg_inf(w) else dp, rp, tp), rel_tol).value

    return LogFunction(
        evaluator=ev,
        domain=LogSector(dp, math.inf, tp - math.pi / 2),
        growth=growth,
        flat=flat,
        name=f"B[{f.name}]" if f.name else "B[f]",
    )
