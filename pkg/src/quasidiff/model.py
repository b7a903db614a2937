"""The fourth-order neutral difference equation and its quasidifference chain.

An equation is

    D( a_n * ( D( b_n * ( D( c_n * (D z_n)^gamma ) )^beta ) )^alpha ) + d_n * f(x_{n-tau}) = 0,

where z_n = x_n + p_n * x_{n-delta} is the companion sequence of x, D is the
forward difference, and alpha, beta, gamma are odd ratios.  Introducing the
quasidifferences

    y_n = c_n * (D z_n)^gamma,   w_n = b_n * (D y_n)^beta,   t_n = a_n * (D w_n)^alpha,

the equation reads D t_n = -d_n * f(x_{n-tau}), which is the form the solver
and the certificates work with.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, DivisionByZero as DecimalDivisionByZero
from decimal import InvalidOperation, Overflow as DecimalOverflow, localcontext
from typing import Callable, Union

from .errors import SequenceDomainError
from .numerics import OddRatio, spow
from .windows import Window

# ---------------------------------------------------------------------------
# Coefficient sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Constant:
    """n -> value."""

    value: float

    def at(self, n: int) -> float:
        return float(self.value)

    @property
    def min_index(self) -> int | None:
        return None


@dataclass(frozen=True)
class Geometric:
    """n -> scale * ratio**n."""

    scale: float
    ratio: float

    def at(self, n: int) -> float:
        try:
            r = self.ratio ** n
        except OverflowError:
            negative = self.ratio < 0 and n % 2 != 0
            r = -math.inf if negative else math.inf
        except ZeroDivisionError:
            raise SequenceDomainError(f"0**{n} undefined in geometric sequence", index=n) from None
        return self.scale * r

    @property
    def min_index(self) -> int | None:
        return None


@dataclass(frozen=True)
class Affine:
    """n -> slope * n + intercept."""

    slope: float
    intercept: float

    def at(self, n: int) -> float:
        return self.slope * n + self.intercept

    @property
    def min_index(self) -> int | None:
        return None


@dataclass(frozen=True)
class PowerLaw:
    """n -> scale * n**exponent; negative exponents start at n = 1."""

    scale: float
    exponent: float

    def at(self, n: int) -> float:
        lo = self.min_index
        if lo is not None and n < lo:
            raise SequenceDomainError(f"n**{self.exponent} not evaluable at n = {n}", index=n)
        try:
            return self.scale * float(n) ** self.exponent
        except OverflowError:
            return math.copysign(math.inf, self.scale)

    @property
    def min_index(self) -> int | None:
        if self.exponent < 0 or not float(self.exponent).is_integer():
            return 1
        return None


@dataclass(frozen=True)
class Table:
    """Explicit values from a start index, with an out-of-range rule.

    ``hold-last`` extends the final value past the end of the table; indices
    before the start are always an error.
    """

    values: tuple[float, ...]
    start: int = 0
    out_of_range: str = "error"

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("table sequence needs at least one value")
        if self.out_of_range not in ("error", "hold-last"):
            raise ValueError(f"out_of_range must be 'error' or 'hold-last', got {self.out_of_range!r}")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def at(self, n: int) -> float:
        if n < self.start:
            raise SequenceDomainError(f"table starts at {self.start}, asked for {n}", index=n)
        if n > self.start + len(self.values) - 1:
            if self.out_of_range == "hold-last":
                return self.values[-1]
            raise SequenceDomainError(f"table ends at {self.start + len(self.values) - 1}, asked for {n}", index=n)
        return self.values[n - self.start]

    @property
    def min_index(self) -> int | None:
        return self.start


@dataclass(frozen=True)
class Combine:
    """Pointwise '+', '-', '*', or '/' of two sequences."""

    op: str
    left: "SequenceSpec"
    right: "SequenceSpec"

    def __post_init__(self) -> None:
        if self.op not in ("+", "-", "*", "/"):
            raise ValueError(f"unknown combination op {self.op!r}")

    def at(self, n: int) -> float:
        lv = self.left.at(n)
        rv = self.right.at(n)
        if self.op == "+":
            return lv + rv
        if self.op == "-":
            return lv - rv
        if self.op == "*":
            return lv * rv
        try:
            return lv / rv
        except ZeroDivisionError:
            raise SequenceDomainError(f"division by zero at n = {n}", index=n) from None

    @property
    def min_index(self) -> int | None:
        los = [lo for lo in (self.left.min_index, self.right.min_index) if lo is not None]
        return max(los) if los else None


@dataclass(frozen=True)
class SignedPower:
    """Pointwise signed power of a sequence by an odd ratio."""

    base: "SequenceSpec"
    exponent: OddRatio

    def at(self, n: int) -> float:
        v = self.base.at(n)
        if not math.isfinite(v):
            return math.copysign(math.inf, v) if v != 0 else 0.0
        return spow(v, self.exponent)

    @property
    def min_index(self) -> int | None:
        return self.base.min_index


SequenceSpec = Union[Constant, Geometric, Affine, PowerLaw, Table, Combine, SignedPower]


def evaluate_sequence(s: SequenceSpec, n: int) -> float:
    """Value of the sequence at index n (deterministic in (s, n))."""
    return s.at(n)


# ---------------------------------------------------------------------------
# Nonlinearities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OddPowerMap:
    """x -> scale * sign(x) * |x|**exponent.  Invertible when scale != 0."""

    scale: float
    exponent: OddRatio

    def apply(self, x: float) -> float:
        return self.scale * spow(x, self.exponent)

    def invert(self, value: float) -> float:
        if self.scale == 0.0:
            raise ValueError("zero-scale odd power has no inverse")
        return spow(value / self.scale, self.exponent.reciprocal())

    @property
    def sign_condition(self) -> bool:
        return self.scale > 0.0

    @property
    def invertible(self) -> bool:
        return self.scale != 0.0

    @property
    def continuous(self) -> bool | None:
        return True


@dataclass(frozen=True)
class SignumMap:
    """x -> scale * sgn(x).  Not invertible, not continuous at zero."""

    scale: float

    def apply(self, x: float) -> float:
        if x > 0.0:
            return self.scale
        if x < 0.0:
            return -self.scale
        return 0.0

    def invert(self, value: float) -> float:
        raise ValueError("signum nonlinearity is not invertible")

    @property
    def sign_condition(self) -> bool:
        return self.scale > 0.0

    @property
    def invertible(self) -> bool:
        return False

    @property
    def continuous(self) -> bool | None:
        return False


_SIGN_SAMPLE = tuple(10.0 ** (k / 4.0) for k in range(-24, 25))


class CustomMap:
    """User-supplied nonlinearity, optionally with an inverse.

    The sign condition x*f(x) > 0 for x != 0 is sampled on a symmetric log
    grid at construction; continuity cannot be observed, so it is whatever
    the caller declares (None = unknown).
    """

    def __init__(
        self,
        fn: Callable[[float], float],
        inverse: Callable[[float], float] | None = None,
        continuous: bool | None = None,
    ):
        self.fn = fn
        self.inverse = inverse
        self._continuous = continuous
        self._sign_condition = all(
            x * fn(x) > 0.0 for s in (1.0, -1.0) for x in (s * v for v in _SIGN_SAMPLE)
        )

    def apply(self, x: float) -> float:
        return float(self.fn(x))

    def invert(self, value: float) -> float:
        if self.inverse is None:
            raise ValueError("custom nonlinearity has no inverse evaluator")
        return float(self.inverse(value))

    @property
    def sign_condition(self) -> bool:
        return self._sign_condition

    @property
    def invertible(self) -> bool:
        return self.inverse is not None

    @property
    def continuous(self) -> bool | None:
        return self._continuous


Nonlinearity = Union[OddPowerMap, SignumMap, CustomMap]


def identity_map() -> OddPowerMap:
    return OddPowerMap(1.0, OddRatio(1, 1))


# ---------------------------------------------------------------------------
# Equation
# ---------------------------------------------------------------------------

VALIDATION_SAMPLE = 256


@dataclass(frozen=True)
class EquationSpec:
    """Full description of one equation instance.

    tau and delta are the deviating arguments (negative values mean advanced
    arguments); n0 is the first index of the domain and must satisfy
    n0 >= max(1, delta, tau).  The excluded case tau == min(-4, delta - 4)
    (where the recursion defines nothing) is rejected here, so the solvers
    never see it.  Positivity of a, b, c and one-signedness of d are checked
    on a sampled prefix, not proven.
    """

    alpha: OddRatio
    beta: OddRatio
    gamma: OddRatio
    tau: int
    delta: int
    p: SequenceSpec
    d: SequenceSpec
    a: SequenceSpec
    b: SequenceSpec
    c: SequenceSpec
    f: Nonlinearity
    n0: int

    def __post_init__(self) -> None:
        for name in ("tau", "delta", "n0"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"{name} must be an integer, got {value!r}")
        if self.tau == min(-4, self.delta - 4):
            raise ValueError(
                f"excluded case tau == min(-4, delta - 4): tau = {self.tau}, delta = {self.delta}"
            )
        bound = max(1, self.delta, self.tau)
        if self.n0 < bound:
            raise ValueError(f"n0 must be >= max(1, delta, tau) = {bound}, got {self.n0}")
        for name in ("p", "d", "a", "b", "c"):
            lo = getattr(self, name).min_index
            if lo is not None and lo > self.n0:
                raise ValueError(f"sequence {name} not evaluable from n0 = {self.n0} (starts at {lo})")
        for name in ("a", "b", "c"):
            seq = getattr(self, name)
            for n in range(self.n0, self.n0 + VALIDATION_SAMPLE):
                if not seq.at(n) > 0.0:
                    raise ValueError(f"sequence {name} must be strictly positive; {name}({n}) = {seq.at(n)!r}")
        d_sign = 0
        for n in range(self.n0, self.n0 + VALIDATION_SAMPLE):
            v = self.d.at(n)
            s = (v > 0.0) - (v < 0.0)
            if s == 0:
                raise ValueError(f"sequence d must be of one sign; d({n}) = {v!r}")
            if d_sign == 0:
                d_sign = s
            elif s != d_sign:
                raise ValueError(f"sequence d changes sign at n = {n}")

    @property
    def forward_mode(self) -> bool:
        """True when the recursion runs forward (tau > min(-4, delta - 4))."""
        return self.tau > min(-4, self.delta - 4)

    def d_sign(self) -> int:
        v = self.d.at(self.n0)
        return (v > 0.0) - (v < 0.0)


# ---------------------------------------------------------------------------
# Derived reciprocal coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DerivedCoefficients:
    """The reciprocal-power coefficients A = a**(-1/alpha), B, C.

    These are what the first three equations of the system multiply by when
    the chain is unwound: D z_n = C_n * y_n**(1/gamma) and so on.
    """

    A: Callable[[int], float]
    B: Callable[[int], float]
    C: Callable[[int], float]


def _reciprocal_power(seq: SequenceSpec, e: OddRatio, name: str) -> Callable[[int], float]:
    exponent = -e.denominator / e.numerator

    def view(n: int) -> float:
        v = seq.at(n)
        if not v > 0.0:
            raise SequenceDomainError(f"nonpositive coefficient {name}({n}) = {v!r}", index=n)
        return math.pow(v, exponent)

    return view


def derive_coefficients(eq: EquationSpec) -> DerivedCoefficients:
    return DerivedCoefficients(
        A=_reciprocal_power(eq.a, eq.alpha, "a"),
        B=_reciprocal_power(eq.b, eq.beta, "b"),
        C=_reciprocal_power(eq.c, eq.gamma, "c"),
    )


# ---------------------------------------------------------------------------
# Companion sequence, chain, residual
# ---------------------------------------------------------------------------

Evaluator = Callable[[int], float]


def companion(x: Evaluator, p: SequenceSpec, delta: int, n: int) -> float:
    """z_n = x_n + p_n * x_{n-delta}, the neutral combination the chain acts on."""
    return x(n) + p.at(n) * x(n - delta)


def _xpow(v: float, e: OddRatio) -> float:
    # Totalized signed power: overflowed or undefined inputs pass through so
    # materialization past a truncation point stays honest instead of raising.
    if math.isfinite(v):
        return spow(v, e)
    return v


def quasidifference_chain(eq: EquationSpec, x: Evaluator, n: int) -> tuple[float, float, float, float]:
    """The values (z_n, y_n, w_n, t_n) of the chain at index n.

    Consumes z at n .. n+3, i.e. x at n - max(delta, 0) .. n + 3 (plus the
    advanced side when delta < 0).  Missing window indices propagate as
    window errors carrying the offending index.
    """
    z = [companion(x, eq.p, eq.delta, j) for j in range(n, n + 4)]
    y = [eq.c.at(j) * _xpow(z[i + 1] - z[i], eq.gamma) for i, j in enumerate(range(n, n + 3))]
    w = [eq.b.at(j) * _xpow(y[i + 1] - y[i], eq.beta) for i, j in enumerate(range(n, n + 2))]
    t = eq.a.at(n) * _xpow(w[1] - w[0], eq.alpha)
    return z[0], y[0], w[0], t


def _dec_spow(v: Decimal, e: OddRatio) -> Decimal:
    if v == 0:
        return Decimal(0)
    if e.numerator == 1 and e.denominator == 1:
        return v
    mag = abs(v)
    if e.denominator == 1:
        power = mag ** e.numerator
    else:
        power = mag ** (Decimal(e.numerator) / Decimal(e.denominator))
    return power if v > 0 else -power


def _residual_parts(eq: EquationSpec, x: Evaluator, n: int) -> tuple[float, float]:
    """(residual, scale of the cancelled terms) at index n.

    The chain is evaluated in 40-digit decimal arithmetic: the residual
    subtracts nearly equal t values whose recomputation noise in doubles is
    amplified by the power exponents and by the chain's difference
    cancellations, which would drown the quantity being measured.  Inputs
    (the stored x values and coefficient values) are doubles and convert
    exactly; only the result is rounded back.
    """
    forcing_f = eq.d.at(n) * eq.f.apply(x(n - eq.tau))
    try:
        with localcontext() as ctx:
            ctx.prec = 40
            delta = eq.delta
            xs = {}
            for j in range(n, n + 5):
                for m in (j, j - delta):
                    if m not in xs:
                        xs[m] = Decimal(float(x(m)))
            z = [xs[j] + Decimal(eq.p.at(j)) * xs[j - delta] for j in range(n, n + 5)]
            y = [Decimal(eq.c.at(j)) * _dec_spow(z[i + 1] - z[i], eq.gamma)
                 for i, j in enumerate(range(n, n + 4))]
            w = [Decimal(eq.b.at(j)) * _dec_spow(y[i + 1] - y[i], eq.beta)
                 for i, j in enumerate(range(n, n + 3))]
            t = [Decimal(eq.a.at(j)) * _dec_spow(w[i + 1] - w[i], eq.alpha)
                 for i, j in enumerate(range(n, n + 2))]
            forcing = Decimal(forcing_f)
            r = t[1] - t[0] + forcing
            scale = max(abs(t[1]), abs(t[0]), abs(forcing))
            return float(r), float(scale)
    except (InvalidOperation, DecimalOverflow, DecimalDivisionByZero):
        # Non-finite values in the window (possible past an overflow
        # truncation): report through the totalized float chain instead.
        t_n = quasidifference_chain(eq, x, n)[3]
        t_next = quasidifference_chain(eq, x, n + 1)[3]
        return (t_next - t_n) + forcing_f, max(abs(t_next), abs(t_n), abs(forcing_f))


def residual(eq: EquationSpec, x: Evaluator, n: int) -> float:
    """D t_n + d_n * f(x_{n-tau}); zero exactly when x solves the equation at n."""
    return _residual_parts(eq, x, n)[0]


def residual_scale(eq: EquationSpec, x: Evaluator, n: int) -> float:
    """Largest magnitude among the three cancelled terms of the residual."""
    return _residual_parts(eq, x, n)[1]


def relative_residual(eq: EquationSpec, x: Evaluator, n: int) -> float:
    """Residual scaled by the largest cancelled term; exact zero stays zero."""
    r, scale = _residual_parts(eq, x, n)
    if scale == 0.0:
        return 0.0 if r == 0.0 else math.inf
    return abs(r) / scale


def chain_windows(eq: EquationSpec, x: Window) -> tuple[Window, Window, Window, Window]:
    """Materialize (z, y, w, t) over the sub-range of x where they are defined."""
    lo = x.start + max(eq.delta, 0)
    hi = x.end - max(-eq.delta, 0)
    if hi - lo < 3:
        raise ValueError(f"window too short to materialize the chain: z range [{lo}, {hi}]")
    z = Window(lo, tuple(companion(x, eq.p, eq.delta, j) for j in range(lo, hi + 1)))
    y = Window(lo, tuple(eq.c.at(j) * _xpow(z[j + 1] - z[j], eq.gamma) for j in range(lo, hi)))
    w = Window(lo, tuple(eq.b.at(j) * _xpow(y[j + 1] - y[j], eq.beta) for j in range(lo, hi - 1)))
    t = Window(lo, tuple(eq.a.at(j) * _xpow(w[j + 1] - w[j], eq.alpha) for j in range(lo, hi - 2)))
    return z, y, w, t


def residual_range(eq: EquationSpec, x: Window) -> range:
    """Indices n at which the residual is computable from the window alone."""
    lo = x.start + max(max(eq.delta, 0), eq.tau)
    hi = x.end - max(4 + max(-eq.delta, 0), -eq.tau)
    return range(lo, hi + 1)


def max_relative_residual(eq: EquationSpec, x: Window) -> tuple[float, int | None]:
    """Worst relative residual over the computable interior, with its index.

    Indices where the chain leaves the finite double range (possible only on
    the trailing edge of an overflow-truncated window) are skipped.
    """
    worst = 0.0
    worst_at: int | None = None
    for n in residual_range(eq, x):
        r = relative_residual(eq, x, n)
        if math.isfinite(r) and r > worst:
            worst = r
            worst_at = n
    return worst, worst_at
