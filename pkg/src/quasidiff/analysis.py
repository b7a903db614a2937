"""Finite-horizon classification, hypothesis checks, and certificates.

Everything here is evidence at a finite horizon standing in for asymptotic
statements: "eventually" is the trailing suffix of a window, limits are
tail-stabilization heuristics, and series divergence is a three-valued
partial-sum probe.  The two certificate constructions are exceptions - they
are exact, index-by-index checkable objects:

* the sign-conflict certificate shows that an alternating candidate
  x_n = +-(-1)^n q_n with one-signed positive q forces opposite signs on the
  two sides of D t_n = -d_n f(x_{n-tau}) at every index, so no such solution
  exists with that parity;
* the companion bound certificate reconstructs x from a bounded companion
  sequence z and certifies max |x_n| <= K + L/(1-P) with P = (1+|p|)/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .errors import HypothesisViolation, SequenceDomainError
from .model import EquationSpec, SequenceSpec, derive_coefficients
from .numerics import DEFAULT_TOLERANCE, ToleranceProfile, spow
from .solver import Trajectory
from .windows import Window

# ---------------------------------------------------------------------------
# Trajectory classification
# ---------------------------------------------------------------------------


class VerdictKind(str, Enum):
    NONOSC_POSITIVE = "nonoscillatory-positive"
    NONOSC_NEGATIVE = "nonoscillatory-negative"
    OSCILLATORY = "oscillatory"
    QUICKLY_OSCILLATORY = "quickly-oscillatory"
    UNDETERMINED = "undetermined"


class QuickParity(str, Enum):
    """Which index parity carries the positive terms of an alternating solution."""

    EVEN_POSITIVE = "even-positive"
    ODD_POSITIVE = "odd-positive"


@dataclass(frozen=True)
class QuickDecomposition:
    """The one-signed magnitude sequence q with x_n = (-1)^n q_n."""

    positive_parity: QuickParity
    q: Window


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    tends_to_zero: bool
    quick: QuickDecomposition | None = None
    degenerate_zero: bool = False
    suffix_start: int = 0

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind.value,
            "tends_to_zero": self.tends_to_zero,
            "degenerate_zero": self.degenerate_zero,
            "suffix_start": self.suffix_start,
        }
        if self.quick is not None:
            out["quick_positive_parity"] = self.quick.positive_parity.value
            out["quick_q_start"] = self.quick.q.start
            out["quick_q"] = list(self.quick.q.values)
        return out


def _suffix_length(count: int, tol: ToleranceProfile) -> int:
    return max(2, math.ceil(tol.suffix_fraction * count))


def _sign_census_values(values: tuple[float, ...], zero_tol: float) -> str:
    """Sign pattern of a value run: positive, negative, degenerate-zero,
    mixed, or straddling.

    Raw signs decide when they agree (a uniformly negative decaying tail is
    still negative however small it gets); the zero band eps_sign * scale is
    consulted only to separate genuine sign changes (mixed) from wobble at
    the noise floor or changes that never clear the band (straddling).
    """
    raw = [(v > 0.0) - (v < 0.0) for v in values]
    if all(s == 0 for s in raw):
        return "degenerate-zero"
    if all(s == 1 for s in raw):
        return "positive"
    if all(s == -1 for s in raw):
        return "negative"
    if 0 in raw:
        return "straddling"
    above = {s for v, s in zip(values, raw) if abs(v) > zero_tol}
    return "mixed" if len(above) == 2 else "straddling"


def _tends_to_zero(values: tuple[float, ...], tol: ToleranceProfile) -> bool:
    i1, i2 = len(values) // 3, (2 * len(values)) // 3
    m1 = max(abs(v) for v in values[:i1])
    m2 = max(abs(v) for v in values[i1:i2])
    m3 = max(abs(v) for v in values[i2:])
    if m1 == 0.0:
        return False
    return m1 >= m2 >= m3 and abs(values[-1]) < tol.eps_limit * m1


def classify(t: Trajectory, tol: ToleranceProfile = DEFAULT_TOLERANCE) -> Verdict:
    """Classify the sign pattern of a trajectory on its decided suffix.

    The suffix is the trailing suffix_fraction of the window.  A uniformly
    one-signed suffix is nonoscillatory; strict sign alternation at every
    consecutive pair is quickly oscillatory and yields the decomposition
    q_n = (-1)^n x_n; any other mix of signs is oscillatory; values pinned
    inside the zero band leave the verdict undetermined.  tends_to_zero is
    decay evidence (never proof): window thirds with non-increasing peaks
    and a final value below eps_limit relative to the initial peak.
    """
    x = t.x
    if len(x) < 8:
        raise ValueError(f"classification needs at least 8 values, got {len(x)}")
    window_scale = x.max_abs()
    if window_scale == 0.0:
        return Verdict(VerdictKind.UNDETERMINED, tends_to_zero=False, degenerate_zero=True,
                       suffix_start=x.start)
    zero_tol = tol.eps_sign * window_scale
    suffix = x.suffix(_suffix_length(len(x), tol))
    census = _sign_census_values(suffix.values, zero_tol)
    tends = _tends_to_zero(x.values, tol)

    if census == "positive":
        return Verdict(VerdictKind.NONOSC_POSITIVE, tends, suffix_start=suffix.start)
    if census == "negative":
        return Verdict(VerdictKind.NONOSC_NEGATIVE, tends, suffix_start=suffix.start)
    if census == "mixed":
        values = suffix.values
        alternating = all(abs(v) > zero_tol for v in values) and all(
            (values[i] > 0.0) == (values[i + 1] < 0.0) for i in range(len(values) - 1)
        )
        if alternating:
            q = Window(suffix.start,
                       tuple((v if n % 2 == 0 else -v) for n, v in suffix.items()))
            parity = QuickParity.EVEN_POSITIVE if q.values[0] > 0 else QuickParity.ODD_POSITIVE
            return Verdict(VerdictKind.QUICKLY_OSCILLATORY, tends,
                           quick=QuickDecomposition(parity, q), suffix_start=suffix.start)
        return Verdict(VerdictKind.OSCILLATORY, tends, suffix_start=suffix.start)
    return Verdict(VerdictKind.UNDETERMINED, tends,
                   degenerate_zero=census == "degenerate-zero", suffix_start=suffix.start)


# ---------------------------------------------------------------------------
# Condition reports
# ---------------------------------------------------------------------------


class CheckStatus(str, Enum):
    HOLDS_ON_SAMPLE = "holds-on-sample"
    FAILS_AT_INDEX = "fails-at-index"
    HEURISTIC_EVIDENCE = "heuristic-evidence"
    NOT_CHECKABLE = "not-checkable"


@dataclass(frozen=True)
class ConditionEntry:
    condition: str
    status: CheckStatus
    satisfied: bool | None
    detail: str
    fail_index: int | None = None

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "status": self.status.value,
            "satisfied": self.satisfied,
            "detail": self.detail,
            "fail_index": self.fail_index,
        }


@dataclass(frozen=True)
class ConditionReport:
    title: str
    entries: tuple[ConditionEntry, ...]
    conclusion: str
    excluded_parity: QuickParity | None = None

    @property
    def all_hold(self) -> bool:
        return all(e.satisfied is True for e in self.entries)

    def entry(self, condition: str) -> ConditionEntry:
        for e in self.entries:
            if e.condition == condition:
                return e
        raise KeyError(condition)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "entries": [e.to_dict() for e in self.entries],
            "all_hold": self.all_hold,
            "conclusion": self.conclusion,
            "excluded_parity": self.excluded_parity.value if self.excluded_parity else None,
        }


def _scan_sequence(seq: SequenceSpec, start: int, count: int,
                   predicate: Callable[[float], bool]) -> int | None:
    """First index in [start, start+count) where the predicate fails, else None."""
    for n in range(start, start + count):
        if not predicate(seq.at(n)):
            return n
    return None


def _d_sign_entry(eq: EquationSpec, horizon: int) -> tuple[ConditionEntry, int]:
    sign = 0
    for n in range(eq.n0, eq.n0 + horizon):
        v = eq.d.at(n)
        s = (v > 0.0) - (v < 0.0)
        if s == 0 or (sign != 0 and s != sign):
            return (
                ConditionEntry("d-one-signed", CheckStatus.FAILS_AT_INDEX, False,
                               f"d({n}) = {v!r} breaks one-signedness on sample "
                               f"[{eq.n0}, {eq.n0 + horizon - 1}]", fail_index=n),
                0,
            )
        sign = s
    detail = f"d of constant sign {'+' if sign > 0 else '-'} on sample [{eq.n0}, {eq.n0 + horizon - 1}]"
    return ConditionEntry("d-one-signed", CheckStatus.HOLDS_ON_SAMPLE, True, detail), sign


def _sign_condition_entry(eq: EquationSpec) -> ConditionEntry:
    holds = eq.f.sign_condition
    structural = not hasattr(eq.f, "fn")
    if holds:
        status = CheckStatus.HOLDS_ON_SAMPLE if structural else CheckStatus.HEURISTIC_EVIDENCE
        how = "structural for built-in nonlinearity" if structural else "sampled on a symmetric log grid"
        return ConditionEntry("sign-condition", status, True, f"x*f(x) > 0 for x != 0: {how}")
    return ConditionEntry("sign-condition", CheckStatus.FAILS_AT_INDEX, False,
                          "x*f(x) > 0 for x != 0 does not hold")


def check_quick_exclusion(eq: EquationSpec, horizon: int = 256) -> ConditionReport:
    """Hypotheses under which alternating solutions of one parity cannot exist.

    Requires p_n >= 0 and one-signed d on the sampled prefix, even delta, and
    the sign condition on f.  With d > 0: even tau excludes candidates with
    positive even terms, odd tau excludes positive odd terms.  With d < 0 the
    excluded parity flips (the mirror branch).
    """
    span = f"[{eq.n0}, {eq.n0 + horizon - 1}]"
    entries = []
    bad = _scan_sequence(eq.p, eq.n0, horizon, lambda v: v >= 0.0)
    if bad is None:
        entries.append(ConditionEntry("p-nonnegative", CheckStatus.HOLDS_ON_SAMPLE, True,
                                      f"p >= 0 on sample {span}"))
    else:
        entries.append(ConditionEntry("p-nonnegative", CheckStatus.FAILS_AT_INDEX, False,
                                      f"p({bad}) = {eq.p.at(bad)!r} < 0 on sample {span}",
                                      fail_index=bad))
    d_entry, d_sign = _d_sign_entry(eq, horizon)
    entries.append(d_entry)
    delta_even = eq.delta % 2 == 0
    entries.append(ConditionEntry(
        "delta-even",
        CheckStatus.HOLDS_ON_SAMPLE if delta_even else CheckStatus.FAILS_AT_INDEX,
        delta_even,
        f"delta = {eq.delta} is {'even' if delta_even else 'odd'} (structural)",
    ))
    entries.append(_sign_condition_entry(eq))

    report_entries = tuple(entries)
    all_hold = all(e.satisfied is True for e in report_entries)
    excluded: QuickParity | None = None
    conclusion = "hypotheses not satisfied; no exclusion follows"
    if all_hold:
        tau_even = eq.tau % 2 == 0
        if d_sign > 0:
            excluded = QuickParity.EVEN_POSITIVE if tau_even else QuickParity.ODD_POSITIVE
            branch = "d > 0"
        else:
            excluded = QuickParity.ODD_POSITIVE if tau_even else QuickParity.EVEN_POSITIVE
            branch = "d < 0 (mirror branch)"
        which = "even" if excluded is QuickParity.EVEN_POSITIVE else "odd"
        conclusion = (f"no quickly oscillatory solutions with positive {which} terms "
                      f"(tau = {eq.tau} is {'even' if tau_even else 'odd'}, {branch})")
    return ConditionReport("quick-oscillation exclusion", report_entries, conclusion, excluded)


# ---------------------------------------------------------------------------
# Series divergence heuristics
# ---------------------------------------------------------------------------


class SeriesStatus(str, Enum):
    DIVERGENT = "heuristic-divergent"
    CONVERGENT = "heuristic-convergent"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class SeriesProbe:
    status: SeriesStatus
    partial_sum: float
    tail_ratio: float
    terms_summed: int
    threshold_exceeded: bool

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "partial_sum": self.partial_sum,
            "tail_ratio": self.tail_ratio,
            "terms_summed": self.terms_summed,
            "threshold_exceeded": self.threshold_exceeded,
        }


def check_series_divergence(terms, start: int, horizon: int, threshold: float = 1e6,
                            tail_grow: float = 1e-2, tail_settle: float = 1e-5) -> SeriesProbe:
    """Three-valued partial-sum probe for divergence of an infinite series.

    Divergent when |partial sums| pass the threshold (early exit) or when the
    final third of the horizon still contributes more than tail_grow of the
    total; convergent when that tail contribution has settled below
    tail_settle; undetermined in between.  This is evidence about partial
    sums, never a proof about the series.
    """
    if horizon < 3:
        raise ValueError(f"series probe needs a horizon of at least 3, got {horizon}")
    at = terms.at if hasattr(terms, "at") else terms
    two_thirds = (2 * horizon) // 3
    total = 0.0
    checkpoint = 0.0
    summed = 0
    for k in range(horizon):
        v = at(start + k)
        if math.isnan(v):
            return SeriesProbe(SeriesStatus.UNDETERMINED, total, math.nan, summed, False)
        total += v
        summed = k + 1
        if summed == two_thirds:
            checkpoint = total
        if abs(total) > threshold:
            return SeriesProbe(SeriesStatus.DIVERGENT, total, 1.0, summed, True)
    if math.isnan(total):
        return SeriesProbe(SeriesStatus.UNDETERMINED, total, math.nan, summed, False)
    ratio = abs(total - checkpoint) / max(abs(total), 1e-300)
    if ratio > tail_grow:
        status = SeriesStatus.DIVERGENT
    elif ratio < tail_settle:
        status = SeriesStatus.CONVERGENT
    else:
        status = SeriesStatus.UNDETERMINED
    return SeriesProbe(status, total, ratio, summed, False)


# ---------------------------------------------------------------------------
# Almost-oscillation hypothesis report
# ---------------------------------------------------------------------------

_LIMIT_CHECKPOINTS = 16


def _p_limit_entry(eq: EquationSpec, horizon: int) -> ConditionEntry:
    try:
        points = [eq.p.at(eq.n0 + (horizon * k) // _LIMIT_CHECKPOINTS)
                  for k in range(_LIMIT_CHECKPOINTS + 1)]
    except SequenceDomainError as exc:
        return ConditionEntry("p-limit", CheckStatus.NOT_CHECKABLE, None,
                              f"p not evaluable across the horizon: {exc}")
    p_hat = points[-1]
    if not math.isfinite(p_hat):
        return ConditionEntry("p-limit", CheckStatus.FAILS_AT_INDEX, False,
                              f"p grows without bound (tail value {p_hat!r})")
    spread = max(abs(v - p_hat) for v in points[-5:])
    if spread > 1e-5 * max(1.0, abs(p_hat)):
        return ConditionEntry("p-limit", CheckStatus.NOT_CHECKABLE, None,
                              f"p tail not stabilized over horizon {horizon} (spread {spread:.3e})")
    ok = abs(p_hat) < 1.0
    return ConditionEntry(
        "p-limit",
        CheckStatus.HEURISTIC_EVIDENCE if ok else CheckStatus.FAILS_AT_INDEX,
        ok,
        f"tail-stabilized limit ~ {p_hat!r} over horizon {horizon}; requires |limit| < 1",
    )


def _continuity_entry(eq: EquationSpec) -> ConditionEntry:
    flag = eq.f.continuous
    if flag is True:
        return ConditionEntry("f-continuous", CheckStatus.HOLDS_ON_SAMPLE, True,
                              "structural for built-in nonlinearity")
    if flag is False:
        return ConditionEntry("f-continuous", CheckStatus.FAILS_AT_INDEX, False,
                              "nonlinearity is discontinuous")
    return ConditionEntry("f-continuous", CheckStatus.NOT_CHECKABLE, None,
                          "continuity of a custom nonlinearity cannot be observed")


def _series_entry(name: str, terms, start: int, horizon: int, threshold: float) -> ConditionEntry:
    probe = check_series_divergence(terms, start, horizon, threshold)
    satisfied = {SeriesStatus.DIVERGENT: True,
                 SeriesStatus.CONVERGENT: False,
                 SeriesStatus.UNDETERMINED: None}[probe.status]
    detail = (f"{probe.status.value}: partial sum {probe.partial_sum:.6g} over "
              f"{probe.terms_summed} terms from n = {start}, tail ratio {probe.tail_ratio:.3e}")
    return ConditionEntry(name, CheckStatus.HEURISTIC_EVIDENCE, satisfied, detail)


def check_almost_oscillation(eq: EquationSpec, horizon: int = 100_000,
                             series_threshold: float = 1e6) -> ConditionReport:
    """Hypotheses under which every bounded solution oscillates or decays to zero.

    Aggregates the p-limit condition, the sign condition on f, continuity of
    f, divergence of the reciprocal-coefficient series A, B, C, and
    divergence of the d series.  Series entries are heuristic partial-sum
    evidence at the given horizon.
    """
    derived = derive_coefficients(eq)
    entries = (
        _p_limit_entry(eq, horizon),
        _sign_condition_entry(eq),
        _continuity_entry(eq),
        _series_entry("series-A-divergent", derived.A, eq.n0, horizon, series_threshold),
        _series_entry("series-B-divergent", derived.B, eq.n0, horizon, series_threshold),
        _series_entry("series-C-divergent", derived.C, eq.n0, horizon, series_threshold),
        _series_entry("series-d-divergent", eq.d, eq.n0, horizon, series_threshold),
    )
    failing = [e for e in entries if e.satisfied is not True]
    if not failing:
        conclusion = "hypotheses hold (heuristically for series)"
    else:
        conclusion = f"hypotheses not confirmed: first failing condition '{failing[0].condition}'"
    return ConditionReport("almost-oscillation hypotheses", entries, conclusion)


# ---------------------------------------------------------------------------
# Sign-conflict certificate for alternating candidates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContradictionCertificate:
    """Index-by-index sign conflict for an alternating candidate.

    The chain magnitudes dz_mag, y_mag, w_mag, t_mag are built from the
    positive window q through the quotient formulas of the system (s, then
    r = (s/C)^gamma, l = ((r+r')/B)^beta, g = ((l+l')/A)^alpha), and the two
    sides of the alternation identity are evaluated per index:
    chain_side_n = (-1)^(n+1) (t_mag_{n+1} + t_mag_n) and
    forcing_side_n = d_n f(x_{n-tau}) with the candidate x carrying the
    requested parity.  The certificate is valid exactly when the magnitudes
    are strictly positive and the two sides have opposite signs at every
    certified index, so each excluded-parity branch is checkable index by
    index.
    """

    parity: QuickParity
    n_start: int
    n_end: int
    dz_mag: Window
    y_mag: Window
    w_mag: Window
    t_mag: Window
    chain_side: Window
    forcing_side: Window
    conflicts: tuple[bool, ...]
    chains_positive: bool

    @property
    def valid(self) -> bool:
        return self.chains_positive and bool(self.conflicts) and all(self.conflicts)

    def to_dict(self) -> dict:
        return {
            "parity": self.parity.value,
            "n_start": self.n_start,
            "n_end": self.n_end,
            "chains_positive": self.chains_positive,
            "conflicts": list(self.conflicts),
            "valid": self.valid,
            "chain_side": list(self.chain_side.values),
            "forcing_side": list(self.forcing_side.values),
            "dz_mag": list(self.dz_mag.values),
            "y_mag": list(self.y_mag.values),
            "w_mag": list(self.w_mag.values),
            "t_mag": list(self.t_mag.values),
        }


def sign_conflict_certificate(eq: EquationSpec, q: Window,
                              parity: QuickParity) -> ContradictionCertificate:
    """Build the sign-conflict certificate for candidate x_n = +-(-1)^n q_n.

    Refused (HypothesisViolation) unless the quick-exclusion hypotheses hold
    for the equation and q is strictly positive on its window.  The window
    must reach delta (and tau) indices behind and four ahead of the certified
    range.
    """
    report = check_quick_exclusion(eq)
    if not report.all_hold:
        bad = next(e for e in report.entries if e.satisfied is not True)
        raise HypothesisViolation(f"certificate refused: condition '{bad.condition}' fails ({bad.detail})")
    if any(v <= 0.0 for v in q.values):
        raise HypothesisViolation("certificate requires a strictly positive q window")

    n_lo = q.start + max(eq.delta, eq.tau)
    n_hi = q.end - max(4, -eq.tau)
    if n_hi < n_lo:
        raise HypothesisViolation(
            f"q window [{q.start}, {q.end}] too short: certified range would be [{n_lo}, {n_hi}]"
        )

    derived = derive_coefficients(eq)
    sigma = 0 if parity is QuickParity.EVEN_POSITIVE else 1

    def x_candidate(m: int) -> float:
        return q[m] if (m + sigma) % 2 == 0 else -q[m]

    s = Window(n_lo, tuple(
        q[n + 1] + q[n] + eq.p.at(n + 1) * q[n - eq.delta + 1] + eq.p.at(n) * q[n - eq.delta]
        for n in range(n_lo, n_hi + 4)
    ))
    r = Window(n_lo, tuple(spow(s[n] / derived.C(n), eq.gamma) for n in range(n_lo, n_hi + 4)))
    l = Window(n_lo, tuple(spow((r[n + 1] + r[n]) / derived.B(n), eq.beta)
                           for n in range(n_lo, n_hi + 3)))
    g = Window(n_lo, tuple(spow((l[n + 1] + l[n]) / derived.A(n), eq.alpha)
                           for n in range(n_lo, n_hi + 2)))

    chain_side = Window(n_lo, tuple(
        (1.0 if (n + 1) % 2 == 0 else -1.0) * (g[n + 1] + g[n])
        for n in range(n_lo, n_hi + 1)
    ))
    forcing_side = Window(n_lo, tuple(
        eq.d.at(n) * eq.f.apply(x_candidate(n - eq.tau)) for n in range(n_lo, n_hi + 1)
    ))
    conflicts = tuple(
        (a > 0.0 > b) or (a < 0.0 < b)
        for a, b in zip(chain_side.values, forcing_side.values)
    )
    chains_positive = all(
        all(v > 0.0 for v in win.values) for win in (s, r, l, g)
    )
    return ContradictionCertificate(
        parity=parity, n_start=n_lo, n_end=n_hi,
        dz_mag=s, y_mag=r, w_mag=l, t_mag=g,
        chain_side=chain_side, forcing_side=forcing_side,
        conflicts=conflicts, chains_positive=chains_positive,
    )


# ---------------------------------------------------------------------------
# Companion-sequence limit and bound
# ---------------------------------------------------------------------------


def limit_from_companion(p_limit: float, z_limit: float,
                         tol: ToleranceProfile = DEFAULT_TOLERANCE) -> float:
    """Limit of x from the limit of z = x + p x_{-delta}: z_limit / (1 + p_limit)."""
    if abs(abs(p_limit) - 1.0) <= tol.eps_sign:
        raise ValueError(f"|p_limit| = 1 leaves the limit of x undetermined (p_limit = {p_limit!r})")
    return z_limit / (1.0 + p_limit)


@dataclass(frozen=True)
class BoundCertificate:
    """Certified bound max |x_n| <= K + L/(1-P) on a verified range.

    L bounds |z|, P = (1 + |p_limit|)/2 dominates |p_n| past n1, and K is the
    peak of |x| over the startup block [n1, n1 + delta + 1].  x is
    reconstructed from z by x_n = z_n - p_n x_{n-delta}, so validity is
    checkable by direct recursion.
    """

    L: float
    P: float
    K: float
    bound: float
    n_start: int
    n_end: int
    delta: int
    n1: int
    max_abs_x: float

    @property
    def valid(self) -> bool:
        return self.max_abs_x <= self.bound

    def to_dict(self) -> dict:
        return {
            "L": self.L, "P": self.P, "K": self.K, "bound": self.bound,
            "n_start": self.n_start, "n_end": self.n_end,
            "delta": self.delta, "n1": self.n1,
            "max_abs_x": self.max_abs_x, "valid": self.valid,
        }


def companion_bound_certificate(z: Window, p: SequenceSpec, p_limit: float, delta: int,
                                n1: int, startup: Window,
                                L: float | None = None) -> BoundCertificate:
    """Certify boundedness of x reconstructed from a bounded companion window.

    Requires |p_limit| < 1 and |p_n| <= P = (1 + |p_limit|)/2 for n >= n1 on
    the window; startup must supply x on [n1, n1 + delta + 1].  L defaults to
    the observed sup of |z| and may only be supplied larger.
    """
    if delta < 1:
        raise ValueError(f"bound reconstruction needs delta >= 1, got {delta}")
    if not abs(p_limit) < 1.0:
        raise HypothesisViolation(f"|p_limit| must be < 1, got {p_limit!r}")
    P = (1.0 + abs(p_limit)) / 2.0
    block_end = n1 + delta + 1
    if not startup.covers(n1, block_end):
        raise ValueError(f"startup must cover [{n1}, {block_end}], got [{startup.start}, {startup.end}]")
    if not z.covers(n1, block_end):
        raise ValueError(f"z window must cover the startup block [{n1}, {block_end}]")

    for n in range(n1, z.end + 1):
        if abs(p.at(n)) > P:
            raise HypothesisViolation(f"|p({n})| = {abs(p.at(n))!r} exceeds P = {P}", index=n)

    observed_L = max(abs(z[n]) for n in range(n1, z.end + 1))
    if L is None:
        L = observed_L
    elif L < observed_L:
        raise ValueError(f"supplied L = {L} is below the observed sup |z| = {observed_L}")

    K = max(abs(startup[n]) for n in range(n1, block_end + 1))
    xs = {n: startup[n] for n in range(n1, block_end + 1)}
    max_abs = K
    for n in range(block_end + 1, z.end + 1):
        xs[n] = z[n] - p.at(n) * xs[n - delta]
        max_abs = max(max_abs, abs(xs[n]))

    bound = K + L / (1.0 - P)
    return BoundCertificate(L=L, P=P, K=K, bound=bound, n_start=n1, n_end=z.end,
                            delta=delta, n1=n1, max_abs_x=max_abs)


# ---------------------------------------------------------------------------
# Component sign profile
# ---------------------------------------------------------------------------


class SignCase(str, Enum):
    ALL_ONE_SIGNED = "all-components-one-signed"
    Y_ONE_SIGNED_X_TO_ZERO = "y-one-signed-x-to-zero"
    NEITHER = "neither"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class ComponentSummary:
    name: str
    sign_status: str  # positive | negative | degenerate-zero | mixed | straddling
    monotone: str  # increasing | decreasing | constant | none
    tends_to_zero: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "sign_status": self.sign_status,
                "monotone": self.monotone, "tends_to_zero": self.tends_to_zero}


@dataclass(frozen=True)
class SignProfileReport:
    case: SignCase
    components: tuple[ComponentSummary, ...]
    degenerate_zero: tuple[str, ...]
    max_abs_x: float
    x_tends_to_zero: bool

    def component(self, name: str) -> ComponentSummary:
        for c in self.components:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "case": self.case.value,
            "components": [c.to_dict() for c in self.components],
            "degenerate_zero": list(self.degenerate_zero),
            "max_abs_x": self.max_abs_x,
            "x_tends_to_zero": self.x_tends_to_zero,
        }


def _sign_census(w: Window, tol: ToleranceProfile) -> str:
    scale = w.max_abs()
    if scale == 0.0:
        return "degenerate-zero"
    suffix = w.suffix(_suffix_length(len(w), tol))
    return _sign_census_values(suffix.values, tol.eps_sign * scale)


def _monotone_census(w: Window, tol: ToleranceProfile) -> str:
    suffix = w.suffix(_suffix_length(len(w), tol))
    slack = tol.eps_sign * max(w.max_abs(), 1e-300)
    diffs = [suffix.values[i + 1] - suffix.values[i] for i in range(len(suffix) - 1)]
    non_dec = all(d >= -slack for d in diffs)
    non_inc = all(d <= slack for d in diffs)
    if non_dec and non_inc:
        return "constant"
    if non_dec:
        return "increasing"
    if non_inc:
        return "decreasing"
    return "none"


def component_sign_profile(sys: Trajectory,
                           tol: ToleranceProfile = DEFAULT_TOLERANCE) -> SignProfileReport:
    """Empirical sign/monotonicity/decay profile of (x, y, w, t).

    Distinguishes the two structural outcomes for one-signed-component
    solutions: either every component is eventually one-signed, or y is
    one-signed while x decays to zero.  The decay case takes precedence when
    both patterns are visible.  Identically zero components are reported as
    degenerate rather than forced into either case.
    """
    if not sys.has_components:
        raise ValueError("sign profile needs materialized chain components")
    if len(sys.t) < 16:
        raise ValueError(f"sign profile needs at least 16 chain values, got {len(sys.t)}")

    named = (("x", sys.x), ("y", sys.y), ("w", sys.w), ("t", sys.t))
    summaries = tuple(
        ComponentSummary(
            name=name,
            sign_status=_sign_census(win, tol),
            monotone=_monotone_census(win, tol),
            tends_to_zero=_tends_to_zero(win.values, tol),
        )
        for name, win in named
    )
    statuses = {s.name: s.sign_status for s in summaries}
    degenerate = tuple(s.name for s in summaries if s.sign_status == "degenerate-zero")
    x_to_zero = _tends_to_zero(sys.x.values, tol)

    if any(s == "straddling" for s in statuses.values()):
        case = SignCase.UNDETERMINED
    elif statuses["y"] in ("positive", "negative") and x_to_zero:
        case = SignCase.Y_ONE_SIGNED_X_TO_ZERO
    elif all(s in ("positive", "negative", "degenerate-zero") for s in statuses.values()):
        case = SignCase.ALL_ONE_SIGNED
    else:
        case = SignCase.NEITHER
    return SignProfileReport(
        case=case,
        components=summaries,
        degenerate_zero=degenerate,
        max_abs_x=sys.x.max_abs(),
        x_tends_to_zero=x_to_zero,
    )
