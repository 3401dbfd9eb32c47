"""Mixed series: Gevrey variables X (real exponents) and convergent
variables Y (integer exponents), stored as a single jet.

Writing F = sum over beta of F_beta(X) Y^beta, each F_beta is a one- or
several-variable generalized power series; the jet is truncated at a
per-variable X exponent cutoff and a total Y degree cutoff.  All operations
are pure and exact on stored terms.
"""

from __future__ import annotations

import cmath
import math
from typing import Iterable, Optional, Sequence

import numpy as np

from .exponents import MERGE_TOL, ExponentMerger
from .series import GenSeries, TailBound, _as_tuple, _point_tuple

__all__ = ["MixedSeries"]

NEG_INF = float("-inf")


class MixedSeries:
    """A jet in m Gevrey variables and n convergent variables."""

    __slots__ = ("gevrey", "convergent", "_jet", "x_cutoff", "y_degree_cutoff", "_cache")

    def __init__(
        self,
        gevrey: int,
        convergent: int,
        jet: dict | Iterable,
        x_cutoff: float | Sequence[float] = math.inf,
        y_degree_cutoff: int = 12,
        _validate: bool = True,
    ):
        object.__setattr__(self, "gevrey", int(gevrey))
        object.__setattr__(self, "convergent", int(convergent))
        object.__setattr__(self, "x_cutoff", _as_tuple(x_cutoff, gevrey, "x_cutoff"))
        object.__setattr__(self, "y_degree_cutoff", int(y_degree_cutoff))
        object.__setattr__(self, "_cache", {})
        merger = ExponentMerger(gevrey)
        canon: dict[tuple[tuple[float, ...], tuple[int, ...]], complex] = {}
        items = jet.items() if isinstance(jet, dict) else jet
        for (xexp, ydeg), coeff in items:
            xexp = tuple(float(e) for e in xexp)
            ydeg = tuple(int(d) for d in ydeg)
            if len(xexp) != gevrey or len(ydeg) != convergent:
                raise ValueError("jet key arity mismatch")
            if _validate:
                if any(e < -MERGE_TOL for e in xexp):
                    raise ValueError("negative Gevrey exponent")
                if any(d < 0 for d in ydeg):
                    raise ValueError("negative convergent degree")
                if any(
                    e > c + MERGE_TOL for e, c in zip(xexp, self.x_cutoff)
                ) or sum(ydeg) > self.y_degree_cutoff:
                    raise ValueError("jet term above the declared cutoffs")
            coeff = complex(coeff)
            if coeff == 0:
                continue
            key = (merger.canonical(xexp), ydeg)
            val = canon.get(key, 0j) + coeff
            if val == 0:
                canon.pop(key, None)
            else:
                canon[key] = val
        object.__setattr__(self, "_jet", canon)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("MixedSeries is immutable")

    # -- conversions -----------------------------------------------------------

    @staticmethod
    def from_gen(F: GenSeries, convergent: int = 0, y_degree_cutoff: int = 12) -> "MixedSeries":
        jet = {(exps, (0,) * convergent): c for exps, c in F.terms.items()}
        return MixedSeries(
            F.nvars, convergent, jet, x_cutoff=F.cutoff, y_degree_cutoff=y_degree_cutoff,
            _validate=False,
        )

    @staticmethod
    def constant(c: complex, gevrey: int, convergent: int, **kw) -> "MixedSeries":
        key = ((0.0,) * gevrey, (0,) * convergent)
        return MixedSeries(gevrey, convergent, {key: c}, **kw)

    def gevrey_coefficient_series(self) -> dict[tuple[int, ...], GenSeries]:
        """The decomposition F = sum_beta F_beta(X) Y^beta."""
        out: dict[tuple[int, ...], dict] = {}
        for (xexp, ydeg), c in self._jet.items():
            out.setdefault(ydeg, {})[xexp] = c
        return {
            beta: GenSeries(self.gevrey, terms, cutoff=self.x_cutoff, _validate=False)
            for beta, terms in out.items()
        }

    def to_gen(self) -> GenSeries:
        if self.convergent != 0:
            raise ValueError("only a pure-Gevrey jet converts to GenSeries")
        return GenSeries(
            self.gevrey,
            {x: c for (x, _), c in self._jet.items()},
            cutoff=self.x_cutoff,
            _validate=False,
        )

    # -- accessors ---------------------------------------------------------------

    @property
    def jet(self) -> dict:
        return dict(self._jet)

    def __len__(self) -> int:
        return len(self._jet)

    def is_zero(self) -> bool:
        return not self._jet

    def sorted_terms(self):
        return sorted(self._jet.items())

    def coefficient(self, xexp, ydeg=()) -> complex:
        xexp = tuple(float(e) for e in xexp)
        ydeg = tuple(int(d) for d in ydeg)
        for (kx, ky), c in self._jet.items():
            if ky == ydeg and all(abs(a - b) <= MERGE_TOL for a, b in zip(kx, xexp)):
                return c
        return 0j

    def constant_coefficient(self) -> complex:
        """F-bar(-inf, 0): the coefficient of the trivial monomial."""
        return self.coefficient((0.0,) * self.gevrey, (0,) * self.convergent)

    def min_weight(self) -> float:
        """min over stored terms of sum(alpha) + sum(beta); +inf when zero."""
        if not self._jet:
            return math.inf
        return min(sum(kx) + sum(ky) for kx, ky in self._jet)

    def __repr__(self) -> str:
        parts = [
            f"{c:.4g}*X^{kx}Y^{ky}" for (kx, ky), c in self.sorted_terms()[:5]
        ]
        more = "" if len(self._jet) <= 5 else f" ... ({len(self._jet)} terms)"
        return (
            f"MixedSeries[{self.gevrey};{self.convergent}]"
            f"({' + '.join(parts) if parts else '0'}{more})"
        )

    # -- algebra -------------------------------------------------------------------

    def _check_compatible(self, other: "MixedSeries") -> None:
        if not isinstance(other, MixedSeries):
            raise TypeError("expected a MixedSeries")
        if (self.gevrey, self.convergent) != (other.gevrey, other.convergent):
            raise ValueError("variable arity mismatch")

    def _caps(self, other: "MixedSeries"):
        return (
            tuple(min(a, b) for a, b in zip(self.x_cutoff, other.x_cutoff)),
            min(self.y_degree_cutoff, other.y_degree_cutoff),
        )

    def __add__(self, other: "MixedSeries") -> "MixedSeries":
        self._check_compatible(other)
        xcut, ycut = self._caps(other)
        items = []
        for (kx, ky), c in list(self._jet.items()) + list(other._jet.items()):
            if all(e <= b + MERGE_TOL for e, b in zip(kx, xcut)) and sum(ky) <= ycut:
                items.append(((kx, ky), c))
        return MixedSeries(
            self.gevrey, self.convergent, items, xcut, ycut, _validate=False
        )

    def __neg__(self) -> "MixedSeries":
        return MixedSeries(
            self.gevrey,
            self.convergent,
            {k: -c for k, c in self._jet.items()},
            self.x_cutoff,
            self.y_degree_cutoff,
            _validate=False,
        )

    def __sub__(self, other: "MixedSeries") -> "MixedSeries":
        return self + (-other)

    def scale(self, c: complex) -> "MixedSeries":
        c = complex(c)
        return MixedSeries(
            self.gevrey,
            self.convergent,
            {k: c * v for k, v in self._jet.items()},
            self.x_cutoff,
            self.y_degree_cutoff,
            _validate=False,
        )

    def __mul__(self, other) -> "MixedSeries":
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        self._check_compatible(other)
        xcut, ycut = self._caps(other)
        items = []
        for (ax, ay), ca in self._jet.items():
            for (bx, by), cb in other._jet.items():
                ky = tuple(p + q for p, q in zip(ay, by))
                if sum(ky) > ycut:
                    continue
                kx = tuple(p + q for p, q in zip(ax, bx))
                if any(e > b + MERGE_TOL for e, b in zip(kx, xcut)):
                    continue
                items.append(((kx, ky), ca * cb))
        return MixedSeries(
            self.gevrey, self.convergent, items, xcut, ycut, _validate=False
        )

    __rmul__ = __mul__

    def power(self, k: int) -> "MixedSeries":
        if k < 0:
            raise ValueError("negative powers via invert()")
        out = MixedSeries.constant(
            1.0, self.gevrey, self.convergent,
            x_cutoff=self.x_cutoff, y_degree_cutoff=self.y_degree_cutoff,
        )
        for _ in range(k):
            out = out * self
        return out

    def invert(self) -> "MixedSeries":
        """G with F*G = 1 up to the cutoffs (geometric-series iteration).

        Needs a nonzero constant coefficient F-bar(-inf, 0).
        """
        c = self.constant_coefficient()
        if c == 0:
            raise ValueError("series with zero constant term is not a unit")
        u = (self - MixedSeries.constant(
            c, self.gevrey, self.convergent,
            x_cutoff=self.x_cutoff, y_degree_cutoff=self.y_degree_cutoff,
        )).scale(1.0 / c)
        if not u.is_zero() and u.min_weight() <= 0:
            raise ValueError("non-constant part must have positive weight")
        one = MixedSeries.constant(
            1.0, self.gevrey, self.convergent,
            x_cutoff=self.x_cutoff, y_degree_cutoff=self.y_degree_cutoff,
        )
        out = one
        power = one
        sign = -1.0
        while True:
            power = power * u
            if power.is_zero():
                break
            out = out + power.scale(sign)
            sign = -sign
        return out.scale(1.0 / c)

    # -- evaluation -------------------------------------------------------------

    def eval(self, w, y=()) -> complex:
        """F-bar(w, y) = sum a e^{alpha . w} y^beta; w coordinates may be -inf."""
        w = _point_tuple(w, self.gevrey) if self.gevrey else ()
        y = tuple(complex(v) for v in (y if isinstance(y, (tuple, list)) else (y,) * self.convergent)) if self.convergent else ()
        if self.convergent and len(y) != self.convergent:
            raise ValueError("need one value per convergent variable")
        total = 0j
        for (kx, ky), c in self._jet.items():
            term = c
            dead = False
            for e, wi in zip(kx, w):
                if e <= MERGE_TOL:
                    continue
                if wi.real == NEG_INF:
                    dead = True
                    break
                term *= cmath.exp(e * wi)
            if dead:
                continue
            for d, yi in zip(ky, y):
                if d:
                    term *= yi**d
            total += term
        return total

    def abs_norm(self, rho_x, rho_y=()) -> float:
        """sum |a| rho_x^alpha rho_y^beta over the stored jet."""
        rho_x = _as_tuple(rho_x, self.gevrey, "rho_x") if self.gevrey else ()
        rho_y = _as_tuple(rho_y, self.convergent, "rho_y") if self.convergent else ()
        total = 0.0
        for (kx, ky), c in self._jet.items():
            t = abs(c)
            for e, r in zip(kx, rho_x):
                t *= r**e
            for d, r in zip(ky, rho_y):
                t *= r**d
            total += t
        return total

    # -- structural helpers ---------------------------------------------------------

    def restrict_fiber(self, i: int, a) -> "MixedSeries":
        """Substitute e^a for Gevrey variable i (a = -inf sets it to 0)."""
        if not 0 <= i < self.gevrey:
            raise ValueError("Gevrey coordinate out of range")
        a = complex(a)
        minus_inf = a.real == NEG_INF
        items: list = []
        for (kx, ky), c in self._jet.items():
            e = kx[i]
            rest = kx[:i] + kx[i + 1 :]
            if e <= MERGE_TOL:
                items.append(((rest, ky), c))
            elif minus_inf:
                continue
            else:
                items.append(((rest, ky), c * cmath.exp(e * a)))
        return MixedSeries(
            self.gevrey - 1,
            self.convergent,
            items,
            self.x_cutoff[:i] + self.x_cutoff[i + 1 :],
            self.y_degree_cutoff,
            _validate=False,
        )

    def set_y(self, j: int, value: complex = 0j) -> "MixedSeries":
        """Substitute a constant for convergent variable j."""
        if not 0 <= j < self.convergent:
            raise ValueError("convergent coordinate out of range")
        value = complex(value)
        items: list = []
        for (kx, ky), c in self._jet.items():
            d = ky[j]
            rest = ky[:j] + ky[j + 1 :]
            if d == 0:
                items.append(((kx, rest), c))
            elif value != 0j:
                items.append(((kx, rest), c * value**d))
        return MixedSeries(
            self.gevrey,
            self.convergent - 1,
            items,
            self.x_cutoff,
            self.y_degree_cutoff,
            _validate=False,
        )

    def regular_order(self) -> Optional[int]:
        """Order of regularity in the last convergent variable Y_n.

        The order d such that F(0, 0, Y_n) = u Y_n^d + higher with u != 0;
        None when F(0, 0, Y_n) vanishes on the whole jet.
        """
        if self.convergent == 0:
            raise ValueError("no convergent variables")
        best: Optional[int] = None
        for (kx, ky), c in self._jet.items():
            if any(e > MERGE_TOL for e in kx):
                continue
            if any(d != 0 for d in ky[:-1]):
                continue
            if best is None or ky[-1] < best:
                best = ky[-1]
        return best

    def is_real(self, tol: float = 0.0) -> bool:
        return all(abs(c.imag) <= tol for c in self._jet.values())
