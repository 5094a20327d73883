"""Compliant bilipschitz extension inside a ball.

The central routine adds one point to the domain (or range) of a map that is
simultaneously K-bilipschitz and N-bigood, by solving, in order, a chain of
one-dimensional feasibility intervals for the new point's distances to the
existing range, then realizing the new image through a Katetov prescription.
For admissible (K, N) the intervals are never empty; emptiness is raised as
an error, not clamped, because it can only mean a violated precondition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .amalgam import katetov_extend, realize_point
from .core import (Ball, FiniteMetricSpace, GoodnessReport, PartialMap,
                   Rational, goodness_check, lip_details, map_in_ball, rat)
from .errors import InfeasibleError, PreconditionError

ChoicePolicy = str  # 'midpoint' | 'minimal' | 'maximal'


@dataclass(frozen=True)
class KNParams:
    """A stretch bound K and goodness divisor N, with admissibility status.

    Admissible means K > 1 and N >= K^2/(K-1); this is the radical-free form
    of requiring K to lie in the closed interval
    [(N - sqrt(N^2-4N))/2, (N + sqrt(N^2-4N))/2] with N >= 4, and it is the
    only form evaluated here (no square roots).  ``reciprocal_sum_ok``
    records whether 1/N + 1/K <= 1, which admissibility implies.
    """

    K: Fraction
    N: Fraction
    admissible: bool
    reciprocal_sum_ok: bool


def kn_admissible(K: Rational, N: Rational) -> KNParams:
    """Classify a (K, N) pair.  Total: any rationals are accepted."""
    K, N = rat(K), rat(N)
    admissible = K > 1 and N * (K - 1) >= K * K
    reciprocal = K > 0 and N > 0 and Fraction(1) / N + Fraction(1) / K <= 1
    assert not admissible or reciprocal
    return KNParams(K, N, admissible, reciprocal)


@dataclass(frozen=True)
class ComplianceCertificate:
    ok: bool
    lip_ok: bool
    lip_value: Fraction
    lip_witness: Optional[tuple[int, int]]
    goodness: GoodnessReport
    kn: KNParams

    def __bool__(self) -> bool:
        return self.ok


def is_compliant(f: PartialMap, ball: Ball, kn: KNParams,
                 space: FiniteMetricSpace) -> ComplianceCertificate:
    """Exact certificate that f is K-bilipschitz and N-bigood in the ball."""
    if not kn.admissible:
        raise PreconditionError(f"(K, N) = ({kn.K}, {kn.N}) not admissible")
    map_in_ball(f, ball, space)
    lip_value, lip_witness = lip_details(f, space)
    goodness = goodness_check(f, ball, kn.N, space)
    lip_ok = lip_value <= kn.K
    return ComplianceCertificate(lip_ok and goodness.ok, lip_ok, lip_value,
                                 lip_witness, goodness, kn)


@dataclass(frozen=True)
class SolveRecord:
    """Feasibility data for one unknown distance e_m.

    ``lowers`` / ``uppers`` hold every individual bound with its constraint
    family tag; ``lo``/``hi`` are their max/min and ``chosen`` lies inside.
    """

    m: int
    lowers: tuple[tuple[str, Fraction], ...]
    uppers: tuple[tuple[str, Fraction], ...]
    lo: Fraction
    hi: Fraction
    lo_family: str
    hi_family: str
    chosen: Fraction


@dataclass(frozen=True)
class ExtensionStep:
    """One point added to the domain or range of the map."""

    side: str                      # 'domain' | 'range'
    target: int
    target_label: str
    noop: bool
    solves: tuple[SolveRecord, ...]
    s: Optional[Fraction]
    realized: Optional[int]
    realized_label: Optional[str]
    g_bound: Optional[Fraction]    # min((r - d_1)/N, (r - e_1)/N)
    g_worst: Optional[Fraction]    # max_m |e_m - s_m|


@dataclass
class ExtensionTrace:
    """Audit record of a whole extension run."""

    steps: list[ExtensionStep] = field(default_factory=list)


def _pick(interval_lo: Fraction, interval_hi: Fraction,
          policy: ChoicePolicy) -> Fraction:
    if policy == "midpoint":
        return (interval_lo + interval_hi) / 2
    if policy == "minimal":
        return interval_lo
    if policy == "maximal":
        return interval_hi
    raise PreconditionError(f"unknown choice policy {policy!r}")


def _solve_new_distances(space: FiniteMetricSpace, ball: Ball, kn: KNParams,
                         pairs: Sequence[tuple[int, int]], x: int,
                         policy: ChoicePolicy,
                         forced: Optional[Sequence[Fraction]] = None,
                         ) -> tuple[list[Fraction], Fraction, list[SolveRecord]]:
    """Solve for the new point's distances e_1..e_n to the existing range.

    ``pairs`` must list the center pair first.  Constraint families:

      IE1 (j > m)   triangle against the temporary distance K*d_j
      IE2 (l < m)   triangle against the already chosen e_l
      IE3           the bilipschitz window [d_m/K, K*d_m]
      IE4           goodness seen from the domain side, |e_m - s_m| <= (r-d_1)/N
      IE5           goodness seen from the range side, |e_m - s_m| <= (r-e_1)/N
                    (for m = 1 rewritten so e_1 appears only in the middle)
      IE6/IE7       extra caps on e_1 that keep the later steps solvable

    Returns the chosen vector, the distance s for the new pair, and per-m
    records of every individual bound.  ``forced`` replays given choices,
    verifying each lies in its recomputed interval.
    """
    K, N, r = kn.K, kn.N, ball.radius
    n = len(pairs)
    xs = [p for p, _ in pairs]
    ys = [q for _, q in pairs]
    dv = [space.d(x, xi) for xi in xs]    # d_m = d(x, x_m)
    sv = [space.d(x, yi) for yi in ys]    # s_m = d(x, y_m)
    cap_d = (r - dv[0]) / N               # (r - d_1)/N, fixed for the run
    e: list[Fraction] = []
    records: list[SolveRecord] = []
    for m in range(n):
        lowers: list[tuple[str, Fraction]] = []
        uppers: list[tuple[str, Fraction]] = []
        for j in range(m + 1, n):
            emj = space.d(ys[m], ys[j])
            lowers.append(("IE1", emj - K * dv[j]))
            uppers.append(("IE1", emj + K * dv[j]))
        for l in range(m):
            eml = space.d(ys[m], ys[l])
            lowers.append(("IE2", abs(eml - e[l])))
            uppers.append(("IE2", eml + e[l]))
        lowers.append(("IE3", dv[m] / K))
        uppers.append(("IE3", K * dv[m]))
        lowers.append(("IE4", sv[m] - cap_d))
        uppers.append(("IE4", sv[m] + cap_d))
        if m == 0:
            # s_1 = d_1 and e_1 occurs on both sides; solved for e_1:
            lowers.append(("IE5", (N * dv[0] - r) / (N - 1)))
            uppers.append(("IE5", (N * dv[0] + r) / (N + 1)))
            for i in range(1, n):
                uppers.append(("IE6", N * (sv[i] - dv[i] / K) + r))
                uppers.append(("IE7", N * (K * dv[i] - sv[i]) + r))
        else:
            cap_e = (r - e[0]) / N
            lowers.append(("IE5", sv[m] - cap_e))
            uppers.append(("IE5", sv[m] + cap_e))
        lo_family, lo = lowers[0]
        for fam, v in lowers[1:]:
            if v > lo:
                lo_family, lo = fam, v
        hi_family, hi = uppers[0]
        for fam, v in uppers[1:]:
            if v < hi:
                hi_family, hi = fam, v
        if lo > hi:
            raise InfeasibleError(
                f"empty interval for e_{m + 1}: {lo_family} gives {lo} > "
                f"{hi} from {hi_family}", lo_family, lo, hi_family, hi)
        if forced is not None:
            chosen = forced[m]
            if not lo <= chosen <= hi:
                raise InfeasibleError(
                    f"replayed e_{m + 1} = {chosen} outside [{lo}, {hi}]",
                    lo_family, lo, hi_family, hi)
        else:
            chosen = _pick(lo, hi, policy)
        records.append(SolveRecord(m + 1, tuple(lowers), tuple(uppers),
                                   lo, hi, lo_family, hi_family, chosen))
        e.append(chosen)
    cap_e = (r - e[0]) / N
    s = min(min(e[i] + sv[i] for i in range(n)), cap_d, cap_e)
    # The new pair's goodness margin caps |e_m - s_m| exactly.
    assert all(abs(e[m] - sv[m]) <= min(cap_d, cap_e) for m in range(n))
    assert e[0] < r
    return e, s, records


def extend_one_point(f: PartialMap, ball: Ball, kn: KNParams, x: int,
                     side: str, space: FiniteMetricSpace,
                     policy: ChoicePolicy = "midpoint",
                     label: Optional[str] = None,
                     forced: Optional[Sequence[Fraction]] = None,
                     ) -> tuple[PartialMap, FiniteMetricSpace, ExtensionStep]:
    """Add x to the map's domain (or range), preserving compliance.

    The center must be a fixed point of the map and x must lie strictly
    inside the ball.  If x is already on the requested side the call is a
    no-op.  The new partner point is realized through a Katetov prescription
    carrying the solved distances, so the workspace grows by one point.
    """
    if side not in ("domain", "range"):
        raise PreconditionError(f"side must be 'domain' or 'range', got {side!r}")
    if not kn.admissible:
        raise PreconditionError(f"(K, N) = ({kn.K}, {kn.N}) not admissible")
    work = f if side == "domain" else f.inverse()

    center = ball.center
    if center not in work.domain or work.image_of(center) != center:
        raise PreconditionError("map must fix the ball center")
    if not ball.strictly_inside(space, x):
        raise PreconditionError(
            f"new point {space.labels[x]!r} not strictly inside the ball")
    cert = is_compliant(work, ball, kn, space)
    if not cert.ok:
        raise PreconditionError(
            "map is not (K, N)-compliant on input: "
            + ("stretch" if not cert.lip_ok else "goodness") + " bound fails")
    if x in work.domain:
        step = ExtensionStep(side, x, space.labels[x], True, (), None, None,
                             None, None, None)
        return f, space, step

    pairs = [(center, center)] + [p for p in work.pairs() if p[0] != center]
    e, s, records = _solve_new_distances(space, ball, kn, pairs, x, policy,
                                         forced)
    values: dict[int, Fraction] = {}
    for (xi, yi), ei in zip(pairs, e):
        values[yi] = ei
    if x in values:
        # x already sits in the range; the solved system forces d(x, y) = s.
        assert values[x] == s
    values[x] = s
    g = katetov_extend(space, sorted(values), values)
    grown, y = realize_point(space, g, label=label, validate=False)

    new_work = work.extended(x, y)
    new_map = new_work if side == "domain" else new_work.inverse()
    sv = [space.d(x, yi) for _, yi in pairs]
    cap = min((ball.radius - space.d(x, center)) / kn.N,
              (ball.radius - e[0]) / kn.N)
    worst = max(abs(ei - si) for ei, si in zip(e, sv))
    step = ExtensionStep(side, x, space.labels[x], False, tuple(records), s,
                         y, grown.labels[y], cap, worst)
    return new_map, grown, step


def extend_dense(f: PartialMap, ball: Ball, kn: KNParams,
                 targets: Sequence[int], space: FiniteMetricSpace,
                 policy: ChoicePolicy = "midpoint",
                 ) -> tuple[PartialMap, FiniteMetricSpace, ExtensionTrace]:
    """Back-and-forth driver: put every target in both domain and range.

    Each target enters the domain first, then the range; every intermediate
    map stays (K, N)-compliant.  For targets forming a fine net this is the
    desk-scale form of extending over a totally bounded set.
    """
    trace = ExtensionTrace()
    for x in targets:
        f, space, step = extend_one_point(f, ball, kn, x, "domain", space,
                                          policy)
        trace.steps.append(step)
        f, space, step = extend_one_point(f, ball, kn, x, "range", space,
                                          policy)
        trace.steps.append(step)
    return f, space, trace


@dataclass(frozen=True)
class GlueReport:
    """Outcome of checking f together with the identity outside the ball."""

    ok: bool
    witness: Optional[tuple[int, int]]
    vacuous: bool
    pairs_checked: int

    def __bool__(self) -> bool:
        return self.ok


def glue_identity_check(f: PartialMap, ball: Ball, kn: KNParams,
                        space: FiniteMetricSpace) -> GlueReport:
    """Is (f union identity-outside-the-ball) K-bilipschitz over the workspace?

    Checked exactly on every pair: both points in dom(f), and the mixed pairs
    of one domain point against each workspace point on or beyond the
    boundary.  With no outside points the answer is vacuously true.
    """
    if 1 + Fraction(1) / kn.N > kn.K:
        raise PreconditionError("gluing needs 1 + 1/N <= K")
    map_in_ball(f, ball, space)
    K = kn.K
    outside = [w for w in range(space.n)
               if not ball.strictly_inside(space, w)]
    lip_value, lip_witness = lip_details(f, space)
    if lip_value > K:
        return GlueReport(False, lip_witness, False, len(f) * (len(f) - 1) // 2)
    checked = len(f) * (len(f) - 1) // 2
    for u, fu in f.pairs():
        for w in outside:
            duw = space.d(u, w)
            dfw = space.d(fu, w)
            checked += 1
            if dfw > K * duw or duw > K * dfw:
                return GlueReport(False, (u, w), False, checked)
    return GlueReport(True, None, not outside, checked)


@dataclass(frozen=True)
class MoveResult:
    """A small bilipschitz move of one point inside a safety ball."""

    map: PartialMap
    space: FiniteMetricSpace
    trace: ExtensionTrace
    y: Optional[int]
    ball: Optional[Ball]
    s: Fraction
    identity: bool
    d_u_y: Optional[Fraction]
    d_v_y: Optional[Fraction]


def move_point_in_ball(space: FiniteMetricSpace, x: int, r: Rational,
                       u: int, v: int, kn: Optional[KNParams] = None,
                       targets: Sequence[int] = (),
                       policy: ChoicePolicy = "midpoint") -> MoveResult:
    """Build a 2-bilipschitz map sending u to v, supported in B(x, r).

    Both u and v must lie strictly inside B(x, r/15).  An auxiliary point y
    is realized at distance 3s from x (s = r/15), collinearly beyond x from
    everything else; the seed map {(y,y), (u,v)} is compliant for (2, 4) in
    B(y, 12s) and is then extended over the optional targets.  The returned
    map carries identity pairs on every realized point outside B(y, 12s).
    """
    r = rat(r)
    if r <= 0:
        raise PreconditionError("ball radius must be positive")
    kn = kn or kn_admissible(2, 4)
    s = r / 15
    for point in (u, v):
        if space.d(point, x) >= s:
            raise PreconditionError(
                f"point {space.labels[point]!r} not strictly inside B(x, r/15)")
    if u == v:
        fmap = PartialMap((u,), (u,))
        return MoveResult(fmap, space, ExtensionTrace(), None, None, s, True,
                          None, None)

    g = katetov_extend(space, [x], {x: 3 * s})
    space, y = realize_point(space, g, validate=False)
    ball = Ball(y, 12 * s)
    duy, dvy = space.d(u, y), space.d(v, y)
    assert 2 * s < duy < 4 * s and 2 * s < dvy < 4 * s
    duv = space.d(u, v)
    assert duv < (12 * s - duy) / 4 and duv < (12 * s - dvy) / 4

    seed = PartialMap((y, u), (y, v), support_ball=ball)
    assert is_compliant(seed, ball, kn, space).ok
    fmap, space, trace = extend_dense(seed, ball, kn, targets, space, policy)

    outside = tuple(w for w in range(space.n)
                    if not ball.strictly_inside(space, w))
    glued = PartialMap(fmap.domain + outside, fmap.images + outside,
                       support_ball=ball)
    report = glue_identity_check(fmap, ball, kn, space)
    assert report.ok
    return MoveResult(glued, space, trace, y, ball, s, False, duy, dvy)


def segment_transport_bound(length: Rational, r: Rational) -> tuple[int, int]:
    """Chain length and stretch bound for walking a segment in r/16 hops.

    Returns (n, Khat) with n = floor(16 * length / r) + 1 and Khat = 2**n:
    composing n many 2-bilipschitz one-step moves costs a factor 2**n.
    """
    length, r = rat(length), rat(r)
    if r <= 0:
        raise PreconditionError("tube radius must be positive")
    if length < 0:
        raise PreconditionError("segment length must be nonnegative")
    n = (16 * length / r).__floor__() + 1
    return n, 2 ** n


def affine_constants(r0: Rational, s: Rational, K: Rational
                     ) -> tuple[Fraction, Fraction, Fraction]:
    """Radii (a, b) and goodness divisor N for the two-pair move construction.

    a = min(r0/4, s/(K+1)), b = (K-1)a / ((2K-1)(K+1)), and
    N = (a - b)/(2b) collapses to exactly K^2/(K-1).
    """
    r0, s, K = rat(r0), rat(s), rat(K)
    if r0 <= 0 or s <= 0 or K <= 1:
        raise PreconditionError("need r0, s > 0 and K > 1")
    a = min(r0 / 4, s / (K + 1))
    b = (K - 1) * a / ((2 * K - 1) * (K + 1))
    N = (a - b) / (2 * b)
    assert N == K * K / (K - 1)
    return a, b, N
