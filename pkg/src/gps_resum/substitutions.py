"""The substitution calculus on jets of mixed series.

Every substitution sends each Gevrey variable to a normal target
a + (X')^gamma (lam + H) with H(0) = 0, lam > 0 and gamma != 0, so real
powers expand through the binomial series (lam + eps)^r =
sum binom(r, i) lam^{r-i} eps^i, truncated once i * ord(eps) clears the
output cutoff.  All kinds are algebra homomorphisms on jets; each also
induces a point map on the log chart (used by the numeric consistency
check) and a transport of summability parameters mirroring the norm
inequalities it satisfies.

Kinds: permutation, ramification, regular and singular blow-up charts,
translation, infinitesimal substitution in the convergent variables,
identification of two Gevrey variables, and setting a variable to zero.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .exponents import MERGE_TOL, ScaledSupport, SumClosureSupport
from .gammafn import real_binomial
from .loggeom import NEG_INF, SummabilityParams
from .mixed import MixedSeries
from .series import GenSeries

__all__ = [
    "Substitution",
    "Permutation",
    "Ramification",
    "RegularBlowUp",
    "SingularBlowUp",
    "Translation",
    "Infinitesimal",
    "Identify",
    "SetZero",
    "apply",
    "param_transport",
    "induced_map",
    "weierstrass_prepare",
    "numeric_consistency",
]


def _as_mixed(F) -> MixedSeries:
    if isinstance(F, GenSeries):
        return MixedSeries.from_gen(F)
    return F


class Substitution:
    """Base: arity bookkeeping plus the three per-kind operations."""

    def source_arity(self) -> tuple[int, int]:
        raise NotImplementedError

    def target_arity(self) -> tuple[int, int]:
        raise NotImplementedError

    def apply(self, F: MixedSeries) -> MixedSeries:
        raise NotImplementedError

    def induced_map(self, w: Sequence[complex], y: Sequence[complex]):
        """Target-chart point -> source-chart point (w_src, y_src)."""
        raise NotImplementedError

    def param_transport(self, tau: SummabilityParams, rho: tuple, **choices):
        raise NotImplementedError

    def _check(self, F: MixedSeries) -> MixedSeries:
        F = _as_mixed(F)
        if (F.gevrey, F.convergent) != self.source_arity():
            raise ValueError(
                f"substitution expects arity {self.source_arity()}, "
                f"got ({F.gevrey}, {F.convergent})"
            )
        return F


@dataclass(frozen=True)
class Permutation(Substitution):
    """sigma(X_i) = X'_{pi(i)}; convergent variables fixed."""

    pi: tuple[int, ...]
    n: int = 0

    def __post_init__(self):
        if sorted(self.pi) != list(range(len(self.pi))):
            raise ValueError("pi must be a permutation of 0..m-1")

    def source_arity(self):
        return len(self.pi), self.n

    target_arity = source_arity

    def apply(self, F):
        F = self._check(F)
        m = len(self.pi)
        items = []
        for (kx, ky), c in F.jet.items():
            nx = [0.0] * m
            for i, e in enumerate(kx):
                nx[self.pi[i]] = e
            items.append(((tuple(nx), ky), c))
        ncut = [0.0] * m
        for i, b in enumerate(F.x_cutoff):
            ncut[self.pi[i]] = b
        return MixedSeries(m, F.convergent, items, tuple(ncut), F.y_degree_cutoff, _validate=False)

    def induced_map(self, w, y):
        return tuple(w[self.pi[i]] for i in range(len(self.pi))), tuple(y)

    def param_transport(self, tau, rho, **choices):
        m = len(self.pi)
        K = []
        for k in tau.K:
            nk = [0.0] * m
            for i, v in enumerate(k):
                nk[self.pi[i]] = v
            K.append(tuple(nk))
        R = [0.0] * m
        for i, v in enumerate(tau.R):
            R[self.pi[i]] = v
        delta = None
        if tau.delta is not None:
            d = [None] * m
            for i, s in enumerate(tau.delta):
                d[self.pi[i]] = s
            delta = tuple(d)
        return SummabilityParams(tuple(K), tuple(R), tau.r, tau.theta, delta), tuple(rho)


@dataclass(frozen=True)
class Ramification(Substitution):
    """sigma(X_{i0}) = (X'_{i0})^alpha: exponents in slot i0 scale by alpha."""

    i0: int
    alpha: float
    m: int = 1
    n: int = 0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("ramification exponent must be positive")

    def source_arity(self):
        return self.m, self.n

    target_arity = source_arity

    def apply(self, F):
        F = self._check(F)
        items = []
        for (kx, ky), c in F.jet.items():
            nx = list(kx)
            nx[self.i0] *= self.alpha
            items.append(((tuple(nx), ky), c))
        cut = list(F.x_cutoff)
        cut[self.i0] *= self.alpha
        return MixedSeries(F.gevrey, F.convergent, items, tuple(cut), F.y_degree_cutoff, _validate=False)

    def induced_map(self, w, y):
        src = list(w)
        src[self.i0] = (
            complex(NEG_INF, 0.0) if complex(w[self.i0]).real == NEG_INF
            else self.alpha * complex(w[self.i0])
        )
        return tuple(src), tuple(y)

    def param_transport(self, tau, rho, **choices):
        K = []
        for k in tau.K:
            nk = list(k)
            nk[self.i0] = k[self.i0] / self.alpha
            K.append(tuple(nk))
        R = list(tau.R)
        R[self.i0] = tau.R[self.i0] ** (1.0 / self.alpha)
        delta = None
        if tau.delta is not None:
            d = list(tau.delta)
            d[self.i0] = ScaledSupport(d[self.i0], self.alpha)
            delta = tuple(d)
        return SummabilityParams(tuple(K), tuple(R), tau.r, tau.theta, delta), tuple(rho)


@dataclass(frozen=True)
class RegularBlowUp(Substitution):
    """sigma(X_i) = X_j (lam + V): the blown-up variable leaves the Gevrey
    list and V joins the convergent variables in front."""

    i: int
    j: int
    lam: float
    m: int = 2
    n: int = 0

    def __post_init__(self):
        if self.i == self.j or not (0 <= self.i < self.m and 0 <= self.j < self.m):
            raise ValueError("blow-up needs two distinct Gevrey indices")
        if not self.lam > 0:
            raise ValueError("lam must be positive")

    def source_arity(self):
        return self.m, self.n

    def target_arity(self):
        return self.m - 1, self.n + 1

    def apply(self, F):
        F = self._check(F)
        ycap = F.y_degree_cutoff
        items = []
        for (kx, ky), c in F.jet.items():
            e = kx[self.i]
            nx = [v for t, v in enumerate(kx) if t != self.i]
            jj = self.j if self.j < self.i else self.j - 1
            nx[jj] += e
            base_ydeg = sum(ky)
            # (lam + V)^e, truncated at the total convergent-degree cap
            nu = 0
            while base_ydeg + nu <= ycap:
                coeff = real_binomial(e, nu) * self.lam ** (e - nu)
                if coeff != 0.0:
                    items.append((((tuple(nx)), (nu,) + ky), c * coeff))
                if _binomial_exhausted(e, nu):
                    break
                nu += 1
        cut = [v for t, v in enumerate(F.x_cutoff) if t != self.i]
        return MixedSeries(F.gevrey - 1, F.convergent + 1, items, tuple(cut), ycap, _validate=False)

    def induced_map(self, w, y):
        v = complex(y[0])
        src_w = []
        jj = self.j if self.j < self.i else self.j - 1
        for t in range(self.m):
            if t == self.i:
                wj = complex(w[jj])
                src_w.append(
                    complex(NEG_INF, 0.0) if wj.real == NEG_INF
                    else wj + cmath.log(self.lam + v)
                )
            else:
                tt = t if t < self.i else t - 1
                src_w.append(complex(w[tt]))
        return tuple(src_w), tuple(y[1:])

    def param_transport(self, tau, rho, theta_new: Optional[float] = None, rho0: Optional[float] = None):
        l = max(k[self.i] for k in tau.K)
        if theta_new is None:
            theta_new = (math.pi / 2 + tau.theta) / 2
        if not math.pi / 2 < theta_new < tau.theta:
            raise ValueError("need theta' in (pi/2, theta)")
        if rho0 is None:
            margin = (tau.theta - theta_new) / max(l, 1e-9)
            rho0 = 0.999 * self.lam * math.sin(min(margin, math.pi / 2)) / 2
        if l * math.asin(min(2 * rho0 / self.lam, 1.0)) >= tau.theta - theta_new:
            raise ValueError(
                f"no admissible rho0: k_i |arg(lam + v)| < theta - theta' "
                f"fails for |v| <= {2 * rho0:g}"
            )
        K = []
        for k in tau.K:
            nk = [v for t, v in enumerate(k) if t != self.i]
            jj = self.j if self.j < self.i else self.j - 1
            nk[jj] += k[self.i]
            K.append(tuple(nk))
        R = [v for t, v in enumerate(tau.R) if t != self.i]
        jj = self.j if self.j < self.i else self.j - 1
        R[jj] = min(
            tau.R[self.j],
            tau.R[self.i],
            tau.R[self.i] / (self.lam + 2 * rho0) ** l,
        )
        delta = None
        if tau.delta is not None:
            d = [s for t, s in enumerate(tau.delta) if t != self.i]
            d[jj] = SumClosureSupport((tau.delta[self.j], tau.delta[self.i]))
            delta = tuple(d)
        tau2 = SummabilityParams(tuple(K), tuple(R), tau.r, theta_new, delta)
        return tau2, (rho0,) + tuple(rho)


@dataclass(frozen=True)
class SingularBlowUp(Substitution):
    """sigma(X_i) = X_j X_i: both variables stay Gevrey."""

    i: int
    j: int
    m: int = 2
    n: int = 0

    def source_arity(self):
        return self.m, self.n

    target_arity = source_arity

    def apply(self, F):
        F = self._check(F)
        items = []
        for (kx, ky), c in F.jet.items():
            nx = list(kx)
            nx[self.j] += kx[self.i]
            items.append(((tuple(nx), ky), c))
        cut = list(F.x_cutoff)
        cut[self.j] += cut[self.i] if cut[self.i] != math.inf else 0.0
        return MixedSeries(F.gevrey, F.convergent, items, tuple(cut), F.y_degree_cutoff, _validate=False)

    def induced_map(self, w, y):
        src = list(complex(z) for z in w)
        wi, wj = src[self.i], src[self.j]
        if wi.real == NEG_INF or wj.real == NEG_INF:
            src[self.i] = complex(NEG_INF, 0.0)
        else:
            src[self.i] = wi + wj
        return tuple(src), tuple(y)

    def param_transport(self, tau, rho, **choices):
        K = []
        for k in tau.K:
            nk = list(k)
            nk[self.j] = k[self.j] + k[self.i]
            K.append(tuple(nk))
        R = list(tau.R)
        Ri = min(tau.R[self.i], 1.0)
        R[self.i] = Ri
        R[self.j] = min(tau.R[self.j], tau.R[self.i] / Ri)
        delta = None
        if tau.delta is not None:
            d = list(tau.delta)
            d[self.j] = SumClosureSupport((tau.delta[self.j], tau.delta[self.i]))
            delta = tuple(d)
        return SummabilityParams(tuple(K), tuple(R), tau.r, tau.theta, delta), tuple(rho)


@dataclass(frozen=True)
class Translation(Substitution):
    """Translation by (a, b) >= 0 / real: X_i with a_i = 0 stay Gevrey (in
    order), X_i with a_i > 0 become a_i + Y'_nu, and Y_j becomes b_j + Y'."""

    a: tuple[float, ...]
    b: tuple[float, ...]

    def __post_init__(self):
        if any(v < 0 for v in self.a):
            raise ValueError("Gevrey translation offsets must be >= 0")

    def source_arity(self):
        return len(self.a), len(self.b)

    def target_arity(self):
        kept = sum(1 for v in self.a if v == 0.0)
        return kept, len(self.b) + len(self.a) - kept

    @property
    def kept(self) -> list[int]:
        return [i for i, v in enumerate(self.a) if v == 0.0]

    @property
    def moved(self) -> list[int]:
        return [i for i, v in enumerate(self.a) if v != 0.0]

    def apply(self, F):
        F = self._check(F)
        mp, np_ = self.target_arity()
        kept, moved = self.kept, self.moved
        ycap = F.y_degree_cutoff
        out: dict = {}
        for (kx, ky), c in F.jet.items():
            # start from the kept-Gevrey skeleton
            base_x = tuple(kx[i] for i in kept)
            expansions = [((0,) * np_, c)]
            # each moved Gevrey variable: (a_i + Y'_nu)^{e}
            for pos, i in enumerate(moved):
                e = kx[i]
                new = []
                for ydeg, coeff in expansions:
                    nu = 0
                    while sum(ydeg) + nu <= ycap:
                        bin_c = real_binomial(e, nu) * self.a[i] ** (e - nu)
                        if bin_c != 0.0:
                            nd = list(ydeg)
                            nd[pos] += nu
                            new.append((tuple(nd), coeff * bin_c))
                        if _binomial_exhausted(e, nu):
                            break
                        nu += 1
                expansions = new
            # each old convergent variable: (b_j + Y'_{...})^{d}, finite
            for j in range(len(self.b)):
                d = ky[j]
                pos = len(moved) + j
                new = []
                for ydeg, coeff in expansions:
                    for nu in range(d + 1):
                        if sum(ydeg) + nu > ycap:
                            break
                        bin_c = real_binomial(float(d), nu) * self.b[j] ** (d - nu)
                        if bin_c != 0.0:
                            nd = list(ydeg)
                            nd[pos] += nu
                            new.append((tuple(nd), coeff * bin_c))
                expansions = new
            for ydeg, coeff in expansions:
                key = (base_x, ydeg)
                out[key] = out.get(key, 0j) + coeff
        cut = tuple(F.x_cutoff[i] for i in kept)
        return MixedSeries(mp, np_, out, cut, ycap, _validate=False)

    def induced_map(self, w, y):
        kept, moved = self.kept, self.moved
        src_w: list[complex] = [complex(0)] * len(self.a)
        for pos, i in enumerate(kept):
            src_w[i] = complex(w[pos])
        for pos, i in enumerate(moved):
            src_w[i] = cmath.log(self.a[i] + complex(y[pos]))
        src_y = tuple(
            self.b[j] + complex(y[len(moved) + j]) for j in range(len(self.b))
        )
        return tuple(src_w), src_y

    def param_transport(self, tau, rho, shrink: float = 0.5):
        kept, moved = self.kept, self.moved
        for i in moved:
            if self.a[i] >= tau.R[i]:
                raise ValueError(
                    f"translation offset a_{i} = {self.a[i]:g} is not inside "
                    f"the radius R_{i} = {tau.R[i]:g}"
                )
        for j, bj in enumerate(self.b):
            if abs(bj) >= rho[j]:
                raise ValueError(
                    f"translation offset b_{j} = {bj:g} is not inside rho_{j} = {rho[j]:g}"
                )
        if kept:
            K = tuple(tuple(k[i] for i in kept) for k in tau.K)
            R = tuple(tau.R[i] for i in kept)
            delta = (
                tuple(tau.delta[i] for i in kept) if tau.delta is not None else None
            )
            tau2 = SummabilityParams(K, R, tau.r, tau.theta, delta)
        else:
            tau2 = SummabilityParams(((0.0,),), (1.0,), tau.r, tau.theta, None)
        rho2 = tuple((tau.R[i] - self.a[i]) * shrink for i in moved) + tuple(
            (rho[j] - abs(self.b[j])) * shrink for j in range(len(self.b))
        )
        return tau2, rho2


@dataclass(frozen=True)
class Infinitesimal(Substitution):
    """sigma(X_i) = X_i, sigma(Y_j) = G_j with G_j(0) = 0, in target
    variables (m', n') with the first m Gevrey slots shared."""

    targets: tuple[MixedSeries, ...]
    m: int = 0

    def __post_init__(self):
        if not self.targets:
            raise ValueError("need at least one target")
        mp = self.targets[0].gevrey
        np_ = self.targets[0].convergent
        for G in self.targets:
            if (G.gevrey, G.convergent) != (mp, np_):
                raise ValueError("all targets must share the same arity")
            if G.constant_coefficient() != 0:
                raise ValueError("infinitesimal targets must vanish at the origin")
        if mp < self.m:
            raise ValueError("targets must keep the shared Gevrey variables")

    def source_arity(self):
        return self.m, len(self.targets)

    def target_arity(self):
        return self.targets[0].gevrey, self.targets[0].convergent

    def apply(self, F):
        F = self._check(F)
        mp, np_ = self.target_arity()
        xcut = tuple(F.x_cutoff) + tuple(
            min(G.x_cutoff[t] for G in self.targets) for t in range(self.m, mp)
        )
        ycap = min([F.y_degree_cutoff] + [G.y_degree_cutoff for G in self.targets])
        acc = MixedSeries(mp, np_, {}, xcut, ycap, _validate=False)
        # cache powers of each target
        powers: list[dict[int, MixedSeries]] = [dict() for _ in self.targets]

        def target_power(j: int, d: int) -> MixedSeries:
            got = powers[j].get(d)
            if got is None:
                if d == 0:
                    got = MixedSeries.constant(1.0, mp, np_, x_cutoff=xcut, y_degree_cutoff=ycap)
                else:
                    got = target_power(j, d - 1) * self.targets[j]
                powers[j][d] = got
            return got

        for (kx, ky), c in F.jet.items():
            lift = MixedSeries(
                mp, np_, {((tuple(kx) + (0.0,) * (mp - self.m)), (0,) * np_): c},
                xcut, ycap, _validate=False,
            )
            term = lift
            for j, d in enumerate(ky):
                if d:
                    term = term * target_power(j, d)
            acc = acc + term
        return acc

    def induced_map(self, w, y):
        src_w = tuple(complex(w[i]) for i in range(self.m))
        src_y = tuple(G.eval(w, y) for G in self.targets)
        return src_w, src_y

    def param_transport(self, tau, rho, tau_target: SummabilityParams = None, rho_target: tuple = ()):
        """eta = (K1 u K2, (R, R'), r, theta, Delta x Delta') per the
        variable-adding construction."""
        if tau_target is None:
            raise ValueError("infinitesimal transport needs the target parameters")
        mp, np_ = self.target_arity()
        extra = mp - self.m
        K1 = [tuple(k) + (0.0,) * extra for k in tau.K]
        K2 = [(0.0,) * self.m + tuple(k) for k in tau_target.K]
        if len(tuple(tau_target.K[0])) != extra:
            raise ValueError("target parameter arity mismatch")
        R = tuple(tau.R) + tuple(tau_target.R)
        delta = None
        if tau.delta is not None and tau_target.delta is not None:
            delta = tuple(tau.delta) + tuple(tau_target.delta)
        eta = SummabilityParams(
            tuple(K1 + K2), R, min(tau.r, tau_target.r), min(tau.theta, tau_target.theta), delta
        )
        return eta, tuple(rho_target)


@dataclass(frozen=True)
class Identify(Substitution):
    """sigma(X_i) = X_j (and X_i leaves the variable list)."""

    i: int
    j: int
    m: int = 2
    n: int = 0

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("identify needs two distinct variables")

    def source_arity(self):
        return self.m, self.n

    def target_arity(self):
        return self.m - 1, self.n

    def apply(self, F):
        F = self._check(F)
        jj = self.j if self.j < self.i else self.j - 1
        items = []
        for (kx, ky), c in F.jet.items():
            nx = [v for t, v in enumerate(kx) if t != self.i]
            nx[jj] += kx[self.i]
            items.append(((tuple(nx), ky), c))
        cut = [v for t, v in enumerate(F.x_cutoff) if t != self.i]
        cut[jj] += F.x_cutoff[self.i] if F.x_cutoff[self.i] != math.inf else 0.0
        return MixedSeries(F.gevrey - 1, F.convergent, items, tuple(cut), F.y_degree_cutoff, _validate=False)

    def induced_map(self, w, y):
        jj = self.j if self.j < self.i else self.j - 1
        src = []
        for t in range(self.m):
            if t == self.i:
                src.append(complex(w[jj]))
            else:
                tt = t if t < self.i else t - 1
                src.append(complex(w[tt]))
        return tuple(src), tuple(y)

    def param_transport(self, tau, rho, **choices):
        jj = self.j if self.j < self.i else self.j - 1
        K = []
        for k in tau.K:
            nk = [v for t, v in enumerate(k) if t != self.i]
            nk[jj] = k[self.j] + k[self.i]
            K.append(tuple(nk))
        R = [v for t, v in enumerate(tau.R) if t != self.i]
        R[jj] = min(tau.R[self.j], tau.R[self.i])
        delta = None
        if tau.delta is not None:
            d = [s for t, s in enumerate(tau.delta) if t != self.i]
            d[jj] = SumClosureSupport((tau.delta[self.j], tau.delta[self.i]))
            delta = tuple(d)
        return SummabilityParams(tuple(K), tuple(R), tau.r, tau.theta, delta), tuple(rho)


@dataclass(frozen=True)
class SetZero(Substitution):
    """sigma(X_i) = 0: keep the alpha_i = 0 fiber and drop the variable."""

    i: int
    m: int = 1
    n: int = 0

    def source_arity(self):
        return self.m, self.n

    def target_arity(self):
        return self.m - 1, self.n

    def apply(self, F):
        F = self._check(F)
        return F.restrict_fiber(self.i, complex(NEG_INF, 0.0))

    def induced_map(self, w, y):
        src = []
        for t in range(self.m):
            if t == self.i:
                src.append(complex(NEG_INF, 0.0))
            else:
                tt = t if t < self.i else t - 1
                src.append(complex(w[tt]))
        return tuple(src), tuple(y)

    def param_transport(self, tau, rho, **choices):
        K = tuple(tuple(v for t, v in enumerate(k) if t != self.i) for k in tau.K)
        R = tuple(v for t, v in enumerate(tau.R) if t != self.i)
        delta = (
            tuple(s for t, s in enumerate(tau.delta) if t != self.i)
            if tau.delta is not None
            else None
        )
        return SummabilityParams(K, R, tau.r, tau.theta, delta), tuple(rho)


def _binomial_exhausted(e: float, nu: int) -> bool:
    """binom(e, k) = 0 for all k > nu (e a nonnegative integer <= nu)."""
    return abs(e - round(e)) <= MERGE_TOL and round(e) <= nu


# ---------------------------------------------------------------------------
# module-level operation surface
# ---------------------------------------------------------------------------


def apply(sigma: Substitution, F) -> MixedSeries:
    return sigma.apply(_as_mixed(F))


def param_transport(sigma: Substitution, tau: SummabilityParams, rho=(), **choices):
    return sigma.param_transport(tau, tuple(rho), **choices)


def induced_map(sigma: Substitution, w, y=()):
    return sigma.induced_map(tuple(w), tuple(y))


def numeric_consistency(sigma: Substitution, F, samples) -> float:
    """max over samples of |(sigma F)-bar(w', y') - F-bar(sigma~(w', y'))|."""
    F = _as_mixed(F)
    G = sigma.apply(F)
    worst = 0.0
    for w, y in samples:
        lhs = G.eval(w, y)
        sw, sy = sigma.induced_map(tuple(w), tuple(y))
        rhs = F.eval(sw, sy)
        worst = max(worst, abs(lhs - rhs))
    return worst


# ---------------------------------------------------------------------------
# Weierstrass preparation
# ---------------------------------------------------------------------------


def _split_yn(P: MixedSeries, d: int) -> tuple[MixedSeries, MixedSeries]:
    """P = hi * Y_n^d + lo with deg_{Y_n} lo < d; returns (hi, lo)."""
    hi, lo = [], []
    for (kx, ky), c in P.jet.items():
        if ky[-1] >= d:
            hi.append(((kx, ky[:-1] + (ky[-1] - d,)), c))
        else:
            lo.append(((kx, ky), c))
    mk = lambda items: MixedSeries(
        P.gevrey, P.convergent, items, P.x_cutoff, P.y_degree_cutoff, _validate=False
    )
    return mk(hi), mk(lo)


def weierstrass_divide(
    P: MixedSeries, F: MixedSeries, d: int
) -> tuple[MixedSeries, MixedSeries]:
    """P = Q F + R with deg_{Y_n} R < d, for F regular of order d in Y_n.

    Contraction on jets: with F = A Y_n^d + B (A a unit, B of low degree
    vanishing at the origin by regularity) and E = A^{-1} B, iterate
    cur -> -hi(cur) * E; the pushed-down weight strictly grows, so the loop
    terminates below the cutoffs.
    """
    mreg = F.regular_order()
    if mreg != d:
        raise ValueError(f"divisor is regular of order {mreg}, not {d}")
    # every contraction step trades one Y_n shift-down against at least
    # delta of (X, Y')-weight; an enlarged working Y-cap keeps the descent
    # of pruned terms above the X-cutoff, making the result exact below the
    # declared cutoffs
    delta = min(
        (
            sum(kx) + sum(ky[:-1])
            for (kx, ky), _ in F.jet.items()
            if ky[-1] < d and sum(kx) + sum(ky[:-1]) > MERGE_TOL
        ),
        default=1.0,
    )
    span = sum(c for c in P.x_cutoff if c != math.inf) + P.y_degree_cutoff
    cap = P.y_degree_cutoff + d + int(math.ceil(span / delta)) + 2

    def lift(S: MixedSeries) -> MixedSeries:
        return MixedSeries(S.gevrey, S.convergent, S.jet, S.x_cutoff, cap, _validate=False)

    P_w, F_w = lift(P), lift(F)
    A, B = _split_yn(F_w, d)
    U = A.invert()
    E = U * B
    if not E.is_zero() and E.min_weight() <= MERGE_TOL:
        raise ValueError("division defect does not vanish at the origin")
    Qp = None
    R = None
    cur = P_w
    while not cur.is_zero():
        hi, lo = _split_yn(cur, d)
        Qp = hi if Qp is None else Qp + hi
        R = lo if R is None else R + lo
        cur = (-hi) * E

    def prune(S: Optional[MixedSeries]) -> MixedSeries:
        if S is None:
            return MixedSeries(
                P.gevrey, P.convergent, {}, P.x_cutoff, P.y_degree_cutoff, _validate=False
            )
        items = [
            ((kx, ky), c)
            for (kx, ky), c in S.jet.items()
            if sum(ky) <= P.y_degree_cutoff
        ]
        return MixedSeries(
            P.gevrey, P.convergent, items, P.x_cutoff, P.y_degree_cutoff, _validate=False
        )

    return prune(None if Qp is None else Qp * U), prune(R)


def weierstrass_prepare(F: MixedSeries, d: int) -> tuple[MixedSeries, MixedSeries]:
    """Factor F = G * H with G a unit and H monic of degree d in Y_n.

    Requires F regular in Y_n of order d: F(0, 0, Y_n) = u Y_n^d + higher.
    Dividing Y_n^d by F gives Y_n^d = Q F + R with deg R < d and Q a unit;
    then H = Y_n^d - R is the monic factor and G = Q^{-1}.
    """
    if F.convergent == 0:
        raise ValueError("Weierstrass preparation needs a convergent variable")
    reg = F.regular_order()
    if reg != d:
        fiber = {
            ky[-1]: c
            for (kx, ky), c in F.jet.items()
            if all(e <= MERGE_TOL for e in kx) and all(v == 0 for v in ky[:-1])
        }
        raise ValueError(
            f"series is not regular of order {d} in the last variable; "
            f"F(0, 0, Y_n) has jet {fiber}"
        )
    m, n = F.gevrey, F.convergent
    ynd = MixedSeries(
        m, n, {(((0.0,) * m), (0,) * (n - 1) + (d,)): 1.0},
        F.x_cutoff, F.y_degree_cutoff, _validate=False,
    )
    Q, R = weierstrass_divide(ynd, F, d)
    H = ynd - R
    G = Q.invert()
    return G, H
