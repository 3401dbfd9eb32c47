"""Reading and writing the ``.gps`` text format.

Line-based UTF-8, ``#`` starts a comment, parsing is strict (unknown
directives are errors, reported with line numbers):

    gps 1 vars=<m> yvars=<n>
    support <var-index> <finite|arith:<step>|logint|sumclosure> cutoff=<real>
    term <exp_1> ... <exp_m> <ydeg_1> ... <ydeg_n> <re> <im>
    tail r=<real> bound=<real>

``finite`` and ``sumclosure`` supports are populated from the exponents that
actually occur; ``tail`` records one radius applied to every variable.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Union

from .exponents import (
    ArithmeticSupport,
    FiniteSupport,
    LogIntegerSupport,
    SumClosureSupport,
    SupportDescriptor,
)
from .mixed import MixedSeries
from .series import GenSeries, TailBound

__all__ = ["GpsParseError", "parse_gps", "parse_gps_text", "write_gps", "format_gps"]


class GpsParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_gps(path) -> Union[GenSeries, MixedSeries]:
    return parse_gps_text(Path(path).read_text(encoding="utf-8"))


def parse_gps_text(text: str) -> Union[GenSeries, MixedSeries]:
    m = n = None
    support_kind: dict[int, str] = {}
    cutoffs: dict[int, float] = {}
    terms: list[tuple[tuple[float, ...], tuple[int, ...], complex]] = []
    tail: tuple[float, float] | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        head = fields[0]
        if head == "gps":
            if m is not None:
                raise GpsParseError(lineno, "duplicate header")
            if len(fields) != 4 or fields[1] != "1":
                raise GpsParseError(lineno, "header must be 'gps 1 vars=<m> yvars=<n>'")
            m = _kv_int(fields[2], "vars", lineno)
            n = _kv_int(fields[3], "yvars", lineno)
            if m < 0 or n < 0:
                raise GpsParseError(lineno, "variable counts must be nonnegative")
        elif head == "support":
            if m is None:
                raise GpsParseError(lineno, "support before header")
            if len(fields) != 4:
                raise GpsParseError(
                    lineno, "support line needs: support <idx> <kind> cutoff=<real>"
                )
            idx = int(fields[1])
            if not 1 <= idx <= m:
                raise GpsParseError(lineno, f"variable index {idx} out of range 1..{m}")
            kind = fields[2]
            if kind not in ("finite", "logint", "sumclosure") and not kind.startswith(
                "arith:"
            ):
                raise GpsParseError(lineno, f"unknown support kind {kind!r}")
            support_kind[idx - 1] = kind
            cutoffs[idx - 1] = _kv_float(fields[3], "cutoff", lineno)
        elif head == "term":
            if m is None:
                raise GpsParseError(lineno, "term before header")
            need = m + n + 2
            if len(fields) != 1 + need:
                raise GpsParseError(
                    lineno, f"term line needs {need} numbers, got {len(fields) - 1}"
                )
            try:
                nums = [float(x) for x in fields[1:]]
            except ValueError as e:
                raise GpsParseError(lineno, str(e)) from None
            exps = tuple(nums[:m])
            ydeg = tuple(int(round(x)) for x in nums[m : m + n])
            if any(abs(d - x) > 1e-9 for d, x in zip(ydeg, nums[m : m + n])):
                raise GpsParseError(lineno, "convergent degrees must be integers")
            coeff = complex(nums[m + n], nums[m + n + 1])
            terms.append((exps, ydeg, coeff))
        elif head == "tail":
            if len(fields) != 3:
                raise GpsParseError(lineno, "tail line needs: tail r=<real> bound=<real>")
            tail = (
                _kv_float(fields[1], "r", lineno),
                _kv_float(fields[2], "bound", lineno),
            )
        else:
            raise GpsParseError(lineno, f"unknown directive {head!r}")

    if m is None or n is None:
        raise GpsParseError(0, "missing 'gps 1' header")
    if set(support_kind) != set(range(m)):
        raise GpsParseError(0, f"need one support line per Gevrey variable (1..{m})")

    supports: list[SupportDescriptor] = []
    for i in range(m):
        kind = support_kind[i]
        seen = tuple(sorted({t[0][i] for t in terms}))
        if kind == "finite":
            supports.append(FiniteSupport(seen))
        elif kind == "logint":
            supports.append(LogIntegerSupport())
        elif kind == "sumclosure":
            supports.append(SumClosureSupport((FiniteSupport(seen or (0.0,)),)))
        else:
            supports.append(ArithmeticSupport(float(kind.split(":", 1)[1])))
    cut = tuple(cutoffs[i] for i in range(m))

    if n == 0:
        tb = TailBound((tail[0],) * m, tail[1]) if tail is not None else None
        return GenSeries(
            m,
            {exps: c for exps, _, c in terms},
            support=tuple(supports),
            cutoff=cut,
            tail=tb,
        )
    ycap = max((sum(ydeg) for _, ydeg, _ in terms), default=0)
    return MixedSeries(
        m,
        n,
        {(exps, ydeg): c for exps, ydeg, c in terms},
        x_cutoff=cut,
        y_degree_cutoff=ycap,
    )


def _kv_int(field: str, key: str, lineno: int) -> int:
    k, _, v = field.partition("=")
    if k != key or not v:
        raise GpsParseError(lineno, f"expected {key}=<int>, got {field!r}")
    return int(v)


def _kv_float(field: str, key: str, lineno: int) -> float:
    k, _, v = field.partition("=")
    if k != key or not v:
        raise GpsParseError(lineno, f"expected {key}=<real>, got {field!r}")
    return float(v)


def format_gps(F: Union[GenSeries, MixedSeries], comment: str = "") -> str:
    if isinstance(F, MixedSeries):
        m, n = F.gevrey, F.convergent
        cut = F.x_cutoff
        items = [(kx, ky, c) for (kx, ky), c in sorted(F.jet.items())]
        tail = None
        supports = None
    else:
        m, n = F.nvars, 0
        cut = F.cutoff
        items = [(kx, (), c) for kx, c in F.sorted_terms()]
        tail = F.tail
        supports = F.support
    lines = []
    if comment:
        for c in comment.splitlines():
            lines.append(f"# {c}")
    lines.append(f"gps 1 vars={m} yvars={n}")
    for i in range(m):
        kind = "finite"
        if supports is not None:
            kind = supports[i].spec_string()
            if kind not in ("finite", "logint", "sumclosure") and not kind.startswith(
                "arith:"
            ):
                kind = "finite"
        c = cut[i] if cut[i] != math.inf else 1e308
        lines.append(f"support {i + 1} {kind} cutoff={c!r}")
    for kx, ky, coeff in items:
        parts = (
            [repr(float(e)) for e in kx]
            + [str(int(d)) for d in ky]
            + [repr(coeff.real), repr(coeff.imag)]
        )
        lines.append("term " + " ".join(parts))
    if tail is not None and tail.bound != 0.0:
        lines.append(f"tail r={tail.radius[0]!r} bound={tail.bound!r}")
    elif tail is not None:
        lines.append(f"tail r={tail.radius[0]!r} bound=0.0")
    return "\n".join(lines) + "\n"


def write_gps(F, path, comment: str = "") -> None:
    Path(path).write_text(format_gps(F, comment), encoding="utf-8")
