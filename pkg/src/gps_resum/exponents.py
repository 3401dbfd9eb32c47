"""Exponent keys and support descriptors for series with real exponents.

Exponents are nonnegative doubles merged under an absolute tolerance of
1e-12: two exponents closer than that are the same key.  Tolerance-equality
is not transitive, so merging is done against a deterministic bin structure
(integer bins of width 1e-12, with the two neighbouring bins checked), which
keeps term maps reproducible regardless of insertion order.

A support descriptor names a *natural* subset of [0, oo): one whose
intersection with every ray (-oo, a) is finite.  Descriptors are closed
symbolic objects; the two queries they answer are enumeration up to a bound
and (tolerant) membership.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterator, Optional

__all__ = [
    "MERGE_TOL",
    "ExponentKey",
    "ExponentMerger",
    "SupportDescriptor",
    "FiniteSupport",
    "ArithmeticSupport",
    "LogIntegerSupport",
    "SumClosureSupport",
    "support_from_spec",
]

MERGE_TOL = 1e-12
_INV_TOL = 1.0 / MERGE_TOL


@dataclass(frozen=True)
class ExponentKey:
    """A nonnegative real exponent with an optional symbolic origin tag.

    The tag ("log(3)", "k/2", ...) is used only for display and for exact
    merging of keys that carry identical tags; arithmetic always uses the
    double value.
    """

    value: float
    tag: Optional[str] = None

    def __post_init__(self) -> None:
        if not (self.value >= 0.0):
            raise ValueError(f"exponent must be >= 0, got {self.value}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExponentKey):
            return NotImplemented
        if self.tag is not None and self.tag == other.tag:
            return True
        return abs(self.value - other.value) <= MERGE_TOL

    def __hash__(self) -> int:
        # All members of a tolerance class share a bin up to +-1, so hashing
        # is only used through ExponentMerger, never directly.
        return hash(round(self.value * _INV_TOL))

    def __repr__(self) -> str:
        if self.tag:
            return f"ExponentKey({self.value!r}, tag={self.tag!r})"
        return f"ExponentKey({self.value!r})"


class ExponentMerger:
    """Deterministic tolerance-merging of exponent tuples.

    Maintains a map from integer bin tuples to the representative exponent
    tuple first seen there.  ``canonical`` returns the representative for a
    new tuple, merging it with an existing one when every coordinate is
    within MERGE_TOL.
    """

    def __init__(self, nvars: int):
        self.nvars = nvars
        self._reps: dict[tuple[int, ...], tuple[float, ...]] = {}

    @staticmethod
    def _bins(exps: tuple[float, ...]) -> tuple[int, ...]:
        return tuple(int(round(e * _INV_TOL)) for e in exps)

    def canonical(self, exps: tuple[float, ...]) -> tuple[float, ...]:
        base = self._bins(exps)
        for delta in _neighbour_offsets(self.nvars):
            cand = tuple(b + d for b, d in zip(base, delta))
            rep = self._reps.get(cand)
            if rep is not None and all(
                abs(r - e) <= MERGE_TOL for r, e in zip(rep, exps)
            ):
                return rep
        self._reps[base] = exps
        return exps


def _neighbour_offsets(n: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    rest = _neighbour_offsets(n - 1)
    return [(d,) + r for d in (0, -1, 1) for r in rest]


class SupportDescriptor:
    """Base class: a natural subset of [0, oo)."""

    def enumerate_upto(self, bound: float) -> list[float]:
        """Strictly increasing, finite list of the elements <= bound."""
        raise NotImplementedError

    def contains(self, x: float, tol: float = MERGE_TOL) -> bool:
        if x < -tol:
            return False
        for v in self.enumerate_upto(x + 1.0):
            if abs(v - x) <= tol:
                return True
            if v > x + tol:
                break
        return False

    def spec_string(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class FiniteSupport(SupportDescriptor):
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(sorted(set(self.values)))
        if any(v < 0 for v in vals):
            raise ValueError("support values must be nonnegative")
        object.__setattr__(self, "values", vals)

    def enumerate_upto(self, bound: float) -> list[float]:
        return [v for v in self.values if v <= bound]

    def spec_string(self) -> str:
        return "finite"


@dataclass(frozen=True)
class ArithmeticSupport(SupportDescriptor):
    """{0, step, 2*step, ...}"""

    step: float

    def __post_init__(self) -> None:
        if not self.step > 0:
            raise ValueError("arithmetic support needs step > 0")

    def enumerate_upto(self, bound: float) -> list[float]:
        if bound < 0:
            return []
        n = int(math.floor(bound / self.step + 1e-9))
        return [k * self.step for k in range(n + 1)]

    def contains(self, x: float, tol: float = MERGE_TOL) -> bool:
        if x < -tol:
            return False
        k = round(x / self.step)
        return k >= 0 and abs(x - k * self.step) <= tol

    def spec_string(self) -> str:
        return f"arith:{self.step!r}"


@dataclass(frozen=True)
class LogIntegerSupport(SupportDescriptor):
    """{log n : n = 1, 2, 3, ...} = {0, log 2, log 3, ...}"""

    def enumerate_upto(self, bound: float) -> list[float]:
        if bound < 0:
            return []
        nmax = int(math.floor(math.exp(bound) + 1e-9))
        if nmax > 20_000_000:
            raise ValueError(
                f"log-integer support enumeration up to {bound} would need "
                f"{nmax} elements"
            )
        return [math.log(n) for n in range(1, nmax + 1)]

    def contains(self, x: float, tol: float = MERGE_TOL) -> bool:
        if x < -tol:
            return False
        n = round(math.exp(x))
        return n >= 1 and abs(x - math.log(n)) <= tol

    def spec_string(self) -> str:
        return "logint"


@dataclass(frozen=True)
class SumClosureSupport(SupportDescriptor):
    """Closure under addition of the union of the children (0 included).

    Natural sets have natural sum-closures, and every bounded window stays
    finite; enumeration walks finite sums with a heap.
    """

    children: tuple[SupportDescriptor, ...]

    def __post_init__(self) -> None:
        if not self.children:
            raise ValueError("sum-closure needs at least one child")

    def enumerate_upto(self, bound: float) -> list[float]:
        gens: set[float] = set()
        for ch in self.children:
            gens.update(v for v in ch.enumerate_upto(bound) if v > MERGE_TOL)
        generators = sorted(gens)
        out = [0.0]
        seen = {0}
        heap: list[float] = list(generators)
        heapq.heapify(heap)
        budget = 2_000_000
        while heap:
            x = heapq.heappop(heap)
            if x > bound + MERGE_TOL:
                break
            key = int(round(x * _INV_TOL))
            if key in seen:
                continue
            seen.add(key)
            out.append(x)
            if len(out) > budget:
                raise ValueError("sum-closure enumeration exploded")
            for g in generators:
                y = x + g
                if y <= bound + MERGE_TOL:
                    heapq.heappush(heap, y)
        return out

    def contains(self, x: float, tol: float = MERGE_TOL) -> bool:
        if x < -tol:
            return False
        if x <= tol:
            return True
        for v in self.enumerate_upto(x + tol):
            if abs(v - x) <= tol:
                return True
        return False

    def spec_string(self) -> str:
        return "sumclosure"


@dataclass(frozen=True)
class ScaledSupport(SupportDescriptor):
    """{factor * a : a in child}; natural for factor > 0."""

    child: SupportDescriptor
    factor: float

    def __post_init__(self) -> None:
        if not self.factor > 0:
            raise ValueError("scale factor must be positive")

    def enumerate_upto(self, bound: float) -> list[float]:
        return [self.factor * v for v in self.child.enumerate_upto(bound / self.factor)]

    def contains(self, x: float, tol: float = MERGE_TOL) -> bool:
        return self.child.contains(x / self.factor, tol / self.factor)

    def spec_string(self) -> str:
        return f"scaled:{self.factor!r}"


def support_from_spec(text: str) -> SupportDescriptor:
    """Parse the support field of a ``.gps`` support line."""
    if text == "finite":
        return FiniteSupport(())
    if text == "logint":
        return LogIntegerSupport()
    if text == "sumclosure":
        return SumClosureSupport((ArithmeticSupport(1.0),))
    if text.startswith("arith:"):
        return ArithmeticSupport(float(text.split(":", 1)[1]))
    raise ValueError(f"unknown support kind {text!r}")
