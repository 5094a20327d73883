"""Line-oriented text formats: spaces, maps, moduli, traces.

Everything is exact rationals rendered as ``p/q`` (or a bare integer), so
all artifacts are human-diffable and byte-stable.  ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bilip import ExtensionTrace
from .core import FiniteMetricSpace, PartialMap
from .errors import ParseError
from .moduli import PLFunction


def parse_rational(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {token!r}: {exc}") from None


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def parse_space(text: str) -> FiniteMetricSpace:
    """Read the UMS format: ``points n``, ``labels ...``, then n ``row`` lines."""
    n: Optional[int] = None
    labels: Optional[tuple[str, ...]] = None
    rows: list[list[Fraction]] = []
    for lineno, toks in _lines(text):
        key = toks[0]
        if key == "points":
            if len(toks) != 2 or not toks[1].isdigit():
                raise ParseError(f"line {lineno}: expected 'points <n>'")
            n = int(toks[1])
        elif key == "labels":
            labels = tuple(toks[1:])
        elif key == "row":
            rows.append([parse_rational(t) for t in toks[1:]])
        else:
            raise ParseError(f"line {lineno}: unknown directive {key!r}")
    if n is None or labels is None:
        raise ParseError("missing 'points' or 'labels' line")
    if len(labels) != n or len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f"matrix shape does not match points {n}")
    return FiniteMetricSpace.from_rows(labels, rows)


def format_space(space: FiniteMetricSpace) -> str:
    out = [f"points {space.n}", "labels " + " ".join(space.labels)]
    for row in space.dist:
        out.append("row " + " ".join(str(v) for v in row))
    return "\n".join(out) + "\n"


def parse_map(text: str, src: FiniteMetricSpace,
              dst: Optional[FiniteMetricSpace] = None) -> PartialMap:
    """Read ``pair <src-label> <dst-label>`` lines into a PartialMap."""
    dst = dst or src
    domain, images = [], []
    for lineno, toks in _lines(text):
        if toks[0] != "pair" or len(toks) != 3:
            raise ParseError(f"line {lineno}: expected 'pair <src> <dst>'")
        try:
            domain.append(src.index(toks[1]))
            images.append(dst.index(toks[2]))
        except Exception as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return PartialMap(tuple(domain), tuple(images))


def format_map(f: PartialMap, src: FiniteMetricSpace,
               dst: Optional[FiniteMetricSpace] = None) -> str:
    dst = dst or src
    return "".join(f"pair {src.labels[a]} {dst.labels[b]}\n"
                   for a, b in f.pairs())


def parse_modulus(text: str) -> PLFunction:
    """Read the modulus format: ``mc`` header, ``bp t v`` lines, ``tail slope``."""
    saw_header = False
    points: list[tuple[Fraction, Fraction]] = []
    tail: Optional[Fraction] = None
    for lineno, toks in _lines(text):
        if toks[0] == "mc":
            saw_header = True
        elif toks[0] == "bp":
            if len(toks) != 3:
                raise ParseError(f"line {lineno}: expected 'bp <t> <v>'")
            points.append((parse_rational(toks[1]), parse_rational(toks[2])))
        elif toks[0] == "tail":
            if len(toks) != 2:
                raise ParseError(f"line {lineno}: expected 'tail <slope>'")
            tail = parse_rational(toks[1])
        else:
            raise ParseError(f"line {lineno}: unknown directive {toks[0]!r}")
    if not saw_header:
        raise ParseError("missing 'mc' header")
    if not points or tail is None:
        raise ParseError("need at least one 'bp' line and a 'tail' line")
    try:
        return PLFunction(tuple(points), tail)
    except Exception as exc:
        raise ParseError(str(exc)) from None


def format_modulus(m: PLFunction) -> str:
    out = ["mc"]
    for t, v in m.breakpoints:
        out.append(f"bp {t} {v}")
    out.append(f"tail {m.final_slope}")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class TraceLine:
    m: int
    side: str          # 'd' | 'r'
    lo: Fraction
    hi: Fraction
    e: Fraction
    s: Fraction
    point: str


def format_trace(trace: ExtensionTrace) -> str:
    """One line per solved distance; m restarts at 1 for each added point."""
    out = []
    for step in trace.steps:
        if step.noop:
            out.append(f"# noop {step.target_label} side="
                       f"{'d' if step.side == 'domain' else 'r'}")
            continue
        side = "d" if step.side == "domain" else "r"
        for rec in step.solves:
            out.append(f"step {rec.m} side={side} interval=[{rec.lo},{rec.hi}]"
                       f" e={rec.chosen} s={step.s} point={step.realized_label}")
    return "\n".join(out) + ("\n" if out else "")


def parse_trace(text: str) -> list[TraceLine]:
    lines: list[TraceLine] = []
    for lineno, toks in _lines(text):
        if toks[0] != "step" or len(toks) != 7:
            raise ParseError(f"line {lineno}: expected a 7-field 'step' line")
        fields = {}
        for tok in toks[2:]:
            if "=" not in tok:
                raise ParseError(f"line {lineno}: bad field {tok!r}")
            key, val = tok.split("=", 1)
            fields[key] = val
        try:
            interval = fields["interval"]
            if not (interval.startswith("[") and interval.endswith("]")):
                raise ParseError(f"line {lineno}: bad interval {interval!r}")
            lo_s, hi_s = interval[1:-1].split(",")
            lines.append(TraceLine(
                m=int(toks[1]),
                side=fields["side"],
                lo=parse_rational(lo_s),
                hi=parse_rational(hi_s),
                e=parse_rational(fields["e"]),
                s=parse_rational(fields["s"]),
                point=fields["point"]))
        except KeyError as exc:
            raise ParseError(f"line {lineno}: missing field {exc}") from None
    return lines
