"""Trajectory production by exact recursion on the quasidifference system.

The equation D t_n = -d_n * f(x_{n-tau}) is marched one index at a time.  In
forward mode (tau > min(-4, delta - 4)) the new t is unwound through the
chain with inverse signed powers to reach the next x; in inverse mode
(tau < min(-4, delta - 4)) the chain is computed directly from known x
values and the far-ahead x_{n-tau} is read off through the inverse of f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import NumericRangeError, PivotError
from .model import (
    EquationSpec,
    chain_windows,
    companion,
    max_relative_residual,
    quasidifference_chain,
)
from .numerics import DEFAULT_TOLERANCE, ToleranceProfile, spow, spow_inverse
from .windows import Window

SeedWindow = Window


class Provenance(str, Enum):
    FORWARD = "solved-forward"
    INVERSE = "solved-inverse"
    SAMPLED = "sampled-from-evaluator"


@dataclass(frozen=True)
class Trajectory:
    """A finite solution window plus its materialized chain components.

    x covers [x.start, x.end] contiguously; z, y, w, t cover the sub-range
    where the chain is defined (None when the window is too short).  When a
    recursion overflows, the trajectory holds everything up to the last
    finite value and carries a truncation marker instead of failing.
    """

    x: Window
    provenance: Provenance
    z: Window | None = None
    y: Window | None = None
    w: Window | None = None
    t: Window | None = None
    truncated: bool = False
    truncation_index: int | None = None
    warnings: tuple[str, ...] = ()
    max_rel_residual: float | None = None

    @property
    def n_start(self) -> int:
        return self.x.start

    @property
    def n_end(self) -> int:
        return self.x.end

    def __len__(self) -> int:
        return len(self.x)

    @property
    def has_components(self) -> bool:
        return self.t is not None


def forward_seed_span(eq: EquationSpec) -> tuple[int, int]:
    """Index range the seed must cover in forward mode."""
    return eq.n0 - max(eq.delta, eq.tau, 0), eq.n0 + 3


def inverse_seed_span(eq: EquationSpec) -> tuple[int, int]:
    """Index range the seed must cover in inverse mode."""
    return eq.n0 - max(eq.delta, 0), eq.n0 - eq.tau - 1


def _check_seed(seed: Window, lo: int, hi: int, mode: str) -> None:
    if not seed.covers(lo, hi):
        raise ValueError(
            f"{mode} seed must cover indices [{lo}, {hi}], got [{seed.start}, {seed.end}]"
        )
    if not seed.all_finite():
        raise ValueError("seed values must all be finite")


def _finalize(eq: EquationSpec, xs: list[float], start: int, provenance: Provenance,
              truncated: bool, truncation_index: int | None, warnings: list[str]) -> Trajectory:
    x = Window(start, tuple(xs))
    z = y = w = t = None
    lo = x.start + max(eq.delta, 0)
    hi = x.end - max(-eq.delta, 0)
    if hi - lo >= 3:
        z, y, w, t = chain_windows(eq, x)
    worst, _ = max_relative_residual(eq, x)
    return Trajectory(
        x=x,
        provenance=provenance,
        z=z,
        y=y,
        w=w,
        t=t,
        truncated=truncated,
        truncation_index=truncation_index,
        warnings=tuple(warnings),
        max_rel_residual=worst,
    )


class _DSignMonitor:
    """Re-checks the one-sign assumption on d along the realized horizon."""

    def __init__(self, eq: EquationSpec):
        self.eq = eq
        self.sign = 0
        self.violation: int | None = None

    def observe(self, n: int, value: float) -> None:
        if self.violation is not None:
            return
        s = (value > 0.0) - (value < 0.0)
        if self.sign == 0:
            self.sign = s
        if s == 0 or s != self.sign:
            self.violation = n

    def warnings(self) -> list[str]:
        if self.violation is None:
            return []
        return [f"one-sign assumption on d violated at n = {self.violation}"]


def solve_forward(eq: EquationSpec, seed: SeedWindow, horizon: int,
                  tol: ToleranceProfile = DEFAULT_TOLERANCE) -> Trajectory:
    """March the recursion forward for `horizon` steps from a seeded x history.

    Each step advances the staircase t -> w -> y -> z -> x by one index:
    t_{n+1} = t_n - d_n f(x_{n-tau}), then the chain is unwound with inverse
    signed powers, then x_{n+4} = z_{n+4} - p_{n+4} x_{n+4-delta} (a division
    by 1 + p when delta = 0, guarded against near-zero pivots).
    """
    if not eq.forward_mode:
        raise ValueError(f"tau = {eq.tau} is not in the forward regime for delta = {eq.delta}")
    if eq.delta < 0:
        raise ValueError("forward mode does not support advanced neutral terms (delta < 0)")
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    lo, hi = forward_seed_span(eq)
    _check_seed(seed, lo, hi, "forward")

    n0 = eq.n0
    xs = list(seed.values)
    start = seed.start

    def x_at(n: int) -> float:
        return xs[n - start]

    # Chain state at the frontier, derived from the seed rather than accepted
    # as independent inputs, so the staircase is consistent by construction.
    try:
        z = [companion(x_at, eq.p, eq.delta, j) for j in range(n0, n0 + 4)]
        y = [eq.c.at(j) * spow(z[j - n0 + 1] - z[j - n0], eq.gamma) for j in range(n0, n0 + 3)]
        w = [eq.b.at(j) * spow(y[j - n0 + 1] - y[j - n0], eq.beta) for j in range(n0, n0 + 2)]
        t = [eq.a.at(n0) * spow(w[1] - w[0], eq.alpha)]
    except (OverflowError, ValueError) as exc:
        raise NumericRangeError(f"seed chain not finite: {exc}", index=n0) from None
    if not all(map(math.isfinite, [*z, *y, *w, *t])):
        raise NumericRangeError("seed chain not finite", index=n0)

    monitor = _DSignMonitor(eq)
    truncated = False
    truncation_index: int | None = None

    # z, y, w, t lists are indexed from n0; their frontiers sit at
    # n0+3, n0+2, n0+1, n0 respectively and advance in lockstep.
    for n in range(n0, n0 + horizon):
        d_n = eq.d.at(n)
        monitor.observe(n, d_n)
        step = _forward_step(eq, tol, n, x_at, d_n, t[n - n0], w[n + 1 - n0],
                             y[n + 2 - n0], z[n + 3 - n0])
        if step is None:
            truncated = True
            truncation_index = n + 4
            break
        t_next, w_next, y_next, z_next, x_next = step
        t.append(t_next)
        w.append(w_next)
        y.append(y_next)
        z.append(z_next)
        xs.append(x_next)

    return _finalize(eq, xs, start, Provenance.FORWARD, truncated, truncation_index,
                     monitor.warnings())


def _safe_div(value: float, divisor: float, index: int) -> float:
    try:
        return value / divisor
    except ZeroDivisionError:
        raise NumericRangeError(f"division by zero coefficient at n = {index}", index=index) from None


def _unwind(value: float, coeff: float, e, index: int) -> float | None:
    ratio = _safe_div(value, coeff, index)
    if not math.isfinite(ratio):
        return None
    return spow_inverse(ratio, e)


def _forward_step(eq: EquationSpec, tol: ToleranceProfile, n: int, x_at, d_n: float,
                  t_n: float, w_n1: float, y_n2: float, z_n3: float):
    """One staircase advance; None signals a non-finite intermediate (truncate)."""
    forcing = d_n * eq.f.apply(x_at(n - eq.tau))
    t_next = t_n - forcing
    if not math.isfinite(t_next):
        return None
    dw = _unwind(t_next, eq.a.at(n + 1), eq.alpha, n + 1)
    if dw is None or not math.isfinite(w_next := w_n1 + dw):
        return None
    dy = _unwind(w_next, eq.b.at(n + 2), eq.beta, n + 2)
    if dy is None or not math.isfinite(y_next := y_n2 + dy):
        return None
    dz = _unwind(y_next, eq.c.at(n + 3), eq.gamma, n + 3)
    if dz is None or not math.isfinite(z_next := z_n3 + dz):
        return None
    if eq.delta == 0:
        pivot = 1.0 + eq.p.at(n + 4)
        if abs(pivot) <= tol.eps_sign * max(1.0, abs(eq.p.at(n + 4))):
            raise PivotError(n + 4, pivot)
        x_next = z_next / pivot
    else:
        x_next = z_next - eq.p.at(n + 4) * x_at(n + 4 - eq.delta)
    if not math.isfinite(x_next):
        return None
    return t_next, w_next, y_next, z_next, x_next


def solve_inverse(eq: EquationSpec, seed: SeedWindow, horizon: int,
                  tol: ToleranceProfile = DEFAULT_TOLERANCE) -> Trajectory:
    """Recover far-ahead x values through the inverse of f.

    Requires tau < min(-4, delta - 4): the forcing index n - tau leads the
    chain, so D t_n is computable from known history and
    x_{n-tau} = f^{-1}(-D t_n / d_n).
    """
    if eq.forward_mode:
        raise ValueError(f"tau = {eq.tau} is not in the inverse regime for delta = {eq.delta}")
    if not eq.f.invertible:
        raise ValueError("inverse mode requires an invertible nonlinearity")
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    lo, hi = inverse_seed_span(eq)
    _check_seed(seed, lo, hi, "inverse")

    n0 = eq.n0
    xs = list(seed.values)
    start = seed.start

    def x_at(n: int) -> float:
        return xs[n - start]

    def t_at(n: int) -> float:
        return quasidifference_chain(eq, x_at, n)[3]

    monitor = _DSignMonitor(eq)
    truncated = False
    truncation_index: int | None = None

    for n in range(n0, n0 + horizon):
        d_n = eq.d.at(n)
        monitor.observe(n, d_n)
        if abs(d_n) <= tol.eps_sign:
            raise NumericRangeError(f"d({n}) = {d_n!r} too close to zero to invert through", index=n)
        dt = t_at(n + 1) - t_at(n)
        if not math.isfinite(dt):
            truncated = True
            truncation_index = n - eq.tau
            break
        x_new = eq.f.invert(-dt / d_n)
        if not math.isfinite(x_new):
            truncated = True
            truncation_index = n - eq.tau
            break
        xs.append(x_new)

    return _finalize(eq, xs, start, Provenance.INVERSE, truncated, truncation_index,
                     monitor.warnings())


def sample_trajectory(eq: EquationSpec, x, start: int, end: int) -> Trajectory:
    """Wrap a closed-form evaluator as a trajectory with materialized chain.

    The evaluator must be total on [start, end]; non-finite samples are a
    range error carrying the index.
    """
    if end < start:
        raise ValueError(f"empty sample range [{start}, {end}]")
    values = []
    for n in range(start, end + 1):
        try:
            v = float(x(n))
        except OverflowError:
            raise NumericRangeError(f"evaluator overflowed at n = {n}", index=n) from None
        if not math.isfinite(v):
            raise NumericRangeError(f"evaluator returned non-finite value at n = {n}", index=n)
        values.append(v)
    return _finalize(eq, values, start, Provenance.SAMPLED, False, None, [])
