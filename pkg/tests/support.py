"""Shared builders for the test suite."""

from __future__ import annotations

import quasidiff as qd

ONE = qd.OddRatio(1)


def plain_equation(*, alpha=ONE, beta=ONE, gamma=ONE, tau=1, delta=2,
                   p=None, d=None, a=None, b=None, c=None, f=None, n0=None) -> qd.EquationSpec:
    """All-ones workhorse equation; override any field."""
    return qd.EquationSpec(
        alpha=alpha, beta=beta, gamma=gamma, tau=tau, delta=delta,
        p=p if p is not None else qd.Constant(0.0),
        d=d if d is not None else qd.Constant(1.0),
        a=a if a is not None else qd.Constant(1.0),
        b=b if b is not None else qd.Constant(1.0),
        c=c if c is not None else qd.Constant(1.0),
        f=f if f is not None else qd.identity_map(),
        n0=n0 if n0 is not None else max(1, delta, tau),
    )


def inverse_fixture() -> tuple[qd.EquationSpec, "function"]:
    """Synthetic inverse-mode equation manufactured so x_n = 1/2^n is exact.

    With p = 1, delta = 0, unit coefficients and identity powers the chain of
    x = 2^-n gives D t_n = 2^-(n+3), so d = -16 makes x_{n+7} the exact
    forcing preimage.
    """
    eq = plain_equation(tau=-7, delta=0, p=qd.Constant(1.0), d=qd.Constant(-16.0), n0=1)
    return eq, lambda n: 2.0 ** (-n)


def seeded_forward(eq: qd.EquationSpec, form, horizon: int) -> qd.Trajectory:
    lo, hi = qd.forward_seed_span(eq)
    return qd.solve_forward(eq, qd.Window.from_evaluator(form, lo, hi), horizon)
