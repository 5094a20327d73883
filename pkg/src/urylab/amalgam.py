"""Amalgamation of finite metric spaces and Katetov one-point realization.

This is the mechanism that lets a finite workspace stand in for the universal
homogeneous space: any consistent one-point distance prescription can be
realized by appending a row to the matrix, and two spaces agreeing on their
intersection can be merged point by point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .core import FiniteMetricSpace, Rational, rat
from .errors import PreconditionError, StructuralError

Policy = str  # 'minimal' | 'midpoint' | 'maximal' | 'explicit'


@dataclass(frozen=True)
class AmalgamInterval:
    """Feasible values for the distance between the two new points.

    ``lo`` is the largest |d0(p0,z) - d1(z,p1)| over the shared part, ``hi``
    the smallest d0(p0,z) + d1(z,p1); lo <= hi always holds for inputs that
    are metric on their own sides.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise StructuralError(f"bad amalgamation interval [{self.lo}, {self.hi}]")

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"

    def contains(self, value: Fraction) -> bool:
        return self.lo <= value <= self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def one_point_interval(d0: Sequence[Rational],
                       d1: Sequence[Rational]) -> AmalgamInterval:
    """Interval of valid distances d(p0, p1) given both points' distances to Z.

    Any choice in [lo, hi] with positive value yields a metric on the union;
    choosing lo = 0 identifies the two points (minimal amalgamation).
    """
    if not d0 or len(d0) != len(d1):
        raise PreconditionError("need equal-length nonempty distance lists over Z")
    a = [rat(v) for v in d0]
    b = [rat(v) for v in d1]
    if any(v <= 0 for v in a + b):
        raise PreconditionError("distances to the shared part must be positive")
    lo = max(abs(x - y) for x, y in zip(a, b))
    hi = min(x + y for x, y in zip(a, b))
    return AmalgamInterval(lo, hi)


def _choose(interval: AmalgamInterval, policy: Policy,
            explicit: Optional[Fraction]) -> Fraction:
    if policy == "minimal":
        return interval.lo
    if policy == "midpoint":
        return interval.midpoint()
    if policy == "maximal":
        return interval.hi
    if policy == "explicit":
        if explicit is None:
            raise PreconditionError("explicit policy needs a value for every new pair")
        if not interval.contains(explicit):
            raise PreconditionError(
                f"explicit value {explicit} outside feasible interval "
                f"[{interval.lo}, {interval.hi}]")
        return explicit
    raise PreconditionError(f"unknown policy {policy!r}")


def amalgamate(x0: FiniteMetricSpace, x1: FiniteMetricSpace,
               policy: Policy = "minimal",
               explicit: Optional[Mapping[tuple[str, str], Rational]] = None,
               ) -> FiniteMetricSpace:
    """Merge two spaces agreeing on their shared labels into one metric space.

    Extra points of ``x1`` are attached one at a time, in label order; for
    each unknown cross distance the feasible interval is computed over all
    points already placed, and the policy picks a value inside it.  With the
    minimal policy a zero lower bound identifies the new point with an
    existing one.  The result restricted to either input equals that input.
    """
    shared = [lab for lab in x0.labels if lab in x1.labels]
    if not shared:
        raise PreconditionError("spaces share no points")
    for la in shared:
        for lb in shared:
            if x0.d(x0.index(la), x0.index(lb)) != x1.d(x1.index(la), x1.index(lb)):
                raise PreconditionError(
                    f"metrics disagree on shared pair ({la!r}, {lb!r})")
    explicit = {k: rat(v) for k, v in (explicit or {}).items()}

    work = x0
    # alias: x1 point label -> index in `work` (grows as extras are placed)
    placed = {lab: work.index(lab) for lab in shared}
    extras = sorted(lab for lab in x1.labels if lab not in placed)
    for lab in extras:
        p = x1.index(lab)
        known: dict[int, Fraction] = {
            widx: x1.d(p, x1.index(other)) for other, widx in placed.items()}
        merged_into: Optional[int] = None
        for w in range(work.n):
            if w in known:
                continue
            lo = max(abs(g - work.d(z, w)) for z, g in known.items())
            hi = min(g + work.d(z, w) for z, g in known.items())
            interval = AmalgamInterval(lo, hi)
            value = _choose(interval, policy,
                            explicit.get((lab, work.labels[w])))
            if value == 0:
                merged_into = w
                break
            known[w] = value
        if merged_into is not None:
            placed[lab] = merged_into
            continue
        row = [known[i] for i in range(work.n)]
        work = work.with_point(lab, row)
        placed[lab] = work.n - 1
    return work


@dataclass(frozen=True)
class KatetovFunction:
    """A one-point distance prescription over a whole space.

    values[i] is the intended distance from the (not yet realized) new point
    to point i.  Validity means |g(a) - g(b)| <= d(a,b) <= g(a) + g(b) for
    every pair; at most one value can be zero, and a zero forces the new
    point to coincide with an existing one.
    """

    space: FiniteMetricSpace
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.space.n:
            raise StructuralError("Katetov values do not cover the space")

    def zeros(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if v == 0)


def katetov_violations(space: FiniteMetricSpace,
                       values: Mapping[int, Fraction]
                       ) -> list[tuple[int, int, str]]:
    """Pairs of points where the one-point prescription breaks."""
    out = []
    keys = sorted(values)
    for idx, a in enumerate(keys):
        if values[a] < 0:
            out.append((a, a, f"negative value {values[a]}"))
        for b in keys[idx + 1:]:
            ga, gb, dab = values[a], values[b], space.d(a, b)
            if abs(ga - gb) > dab:
                out.append((a, b, f"|{ga} - {gb}| > d = {dab}"))
            if dab > ga + gb:
                out.append((a, b, f"d = {dab} > {ga} + {gb}"))
    return out


def katetov_extend(space: FiniteMetricSpace, on: Sequence[int],
                   values: Mapping[int, Rational]) -> KatetovFunction:
    """Extend a partial one-point prescription to the whole space.

    Uses the shortest-path rule g(w) = min over a of (g(a) + d(a, w)), which
    keeps every pair inequality valid.  The given values must already satisfy
    the pair inequalities on their own support.
    """
    on = sorted(set(on))
    if not on:
        raise PreconditionError("empty support")
    vals = {a: rat(values[a]) for a in on}
    bad = katetov_violations(space, vals)
    if bad:
        a, b, msg = bad[0]
        raise PreconditionError(
            f"not a one-point prescription on ({space.labels[a]!r}, "
            f"{space.labels[b]!r}): {msg}")
    full = []
    for w in range(space.n):
        if w in vals:
            full.append(vals[w])
        else:
            full.append(min(vals[a] + space.d(a, w) for a in on))
    return KatetovFunction(space, tuple(full))


def realize_point(space: FiniteMetricSpace, g: KatetovFunction,
                  label: Optional[str] = None, validate: bool = True,
                  ) -> tuple[FiniteMetricSpace, int]:
    """Realize the point a Katetov function describes.

    A zero value means the point already exists: the space comes back
    unchanged together with that index (minimal identification).  Otherwise a
    fresh point is appended with exactly the prescribed distances.
    """
    if g.space is not space and g.space != space:
        raise PreconditionError("Katetov function belongs to another space")
    if validate:
        bad = katetov_violations(space, dict(enumerate(g.values)))
        if bad:
            a, b, msg = bad[0]
            raise PreconditionError(
                f"invalid Katetov function at ({space.labels[a]!r}, "
                f"{space.labels[b]!r}): {msg}")
    zeros = g.zeros()
    if zeros:
        return space, zeros[0]
    new_label = label or space.fresh_label()
    grown = space.with_point(new_label, g.values)
    return grown, grown.n - 1
