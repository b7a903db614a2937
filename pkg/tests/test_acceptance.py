"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Tolerances are fixed here, not configurable.
"""

import json
import random
import time

import pytest

import quasidiff as qd
from quasidiff import (
    Affine,
    Constant,
    Geometric,
    OddRatio,
    QuickParity,
    Table,
    VerdictKind,
    Window,
)
from quasidiff.cli import main
from support import seeded_forward


def _max_rel_residual(eq, form, count):
    return max(qd.relative_residual(eq, form, n) for n in range(eq.n0, eq.n0 + count))


def test_criterion_01_signum_example_residuals():
    started = time.perf_counter()
    eq1 = qd.example_equation("example-1", beta="1/1", lam=1)
    worst1 = _max_rel_residual(eq1, qd.example_closed_form("example-1"), 41)
    assert worst1 <= 1e-9
    eq3 = qd.example_equation("example-1", beta="3/1", lam=1)
    worst3 = _max_rel_residual(eq3, qd.example_closed_form("example-1"), 41)
    assert worst3 <= 1e-8
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    print(f"\nACCEPTANCE 01 PASS alternating 2^n candidate: beta=1 max rel residual "
          f"{worst1:.2e} <= 1e-9, beta=3 {worst3:.2e} <= 1e-8 ({elapsed:.2f}s)")


def test_criterion_02_identity_example_residuals():
    started = time.perf_counter()
    worsts = {}
    for beta in ("1/1", "5/3"):
        eq = qd.example_equation("example-2", beta=beta, lam=1)
        worsts[beta] = _max_rel_residual(eq, qd.example_closed_form("example-2"), 200)
        assert worsts[beta] <= 1e-9
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    print(f"\nACCEPTANCE 02 PASS unit alternating candidate over 200 indices: "
          f"beta=1 {worsts['1/1']:.2e}, beta=5/3 {worsts['5/3']:.2e} <= 1e-9 ({elapsed:.2f}s)")


def test_criterion_03_decaying_solution():
    eq = qd.example_equation("example-3")
    form = qd.example_closed_form("example-3")
    worst = _max_rel_residual(eq, form, 60)
    assert worst <= 1e-9
    verdict = qd.classify(qd.sample_trajectory(eq, form, eq.n0, eq.n0 + 59))
    assert verdict.kind is VerdictKind.NONOSC_NEGATIVE
    assert verdict.tends_to_zero
    print(f"\nACCEPTANCE 03 PASS -1/2^n fixture: max rel residual {worst:.2e} <= 1e-9 "
          f"over 60 indices; verdict {verdict.kind.value}, tends-to-zero evidence True")


def test_criterion_04_oscillatory_solution_and_hypotheses():
    eq = qd.example_equation("example-4")
    form = qd.example_closed_form("example-4")
    worst = _max_rel_residual(eq, form, 200)
    assert worst <= 1e-9
    verdict = qd.classify(qd.sample_trajectory(eq, form, eq.n0, eq.n0 + 199))
    assert verdict.kind is VerdictKind.QUICKLY_OSCILLATORY
    assert all(v == pytest.approx(0.1, rel=1e-12) for v in verdict.quick.q.values)
    report = qd.check_almost_oscillation(eq, horizon=100_000)
    assert report.all_hold
    for name in ("series-A-divergent", "series-B-divergent", "series-C-divergent",
                 "series-d-divergent"):
        assert "heuristic-divergent" in report.entry(name).detail
    print(f"\nACCEPTANCE 04 PASS (-1)^n/10 fixture: max rel residual {worst:.2e} <= 1e-9 "
          f"over 200 indices; quickly-oscillatory with q = 1/10; all hypotheses hold "
          f"(series heuristic-divergent at horizon 1e5)")


EXPONENT_CHOICES = [(1, 1), (3, 1), (5, 3)]


def _random_equation(rng: random.Random) -> tuple[qd.EquationSpec, Window]:
    delta = rng.choice([0, 1, 2, 3])
    tau = rng.choice([-2, -1, 0, 1, 2, 3])  # never the excluded min(-4, delta-4)

    def coefficient():
        kind = rng.randrange(3)
        if kind == 0:
            return Constant(rng.uniform(0.5, 2.0))
        if kind == 1:
            return Affine(rng.uniform(0.02, 0.2), rng.uniform(0.5, 1.5))
        return Geometric(rng.uniform(0.5, 1.5), rng.uniform(0.95, 1.05))

    sign = rng.choice([1.0, -1.0])
    if rng.random() < 0.5:
        d = Constant(sign * rng.uniform(0.02, 0.3))
    else:
        d = Geometric(sign * rng.uniform(0.02, 0.3), rng.uniform(0.9, 1.0))
    if rng.random() < 0.5:
        p = Constant(rng.uniform(0.0, 0.75))
    else:
        p = Geometric(rng.uniform(0.0, 0.75), rng.uniform(0.7, 0.95))
    alpha, beta, gamma = (OddRatio(*rng.choice(EXPONENT_CHOICES)) for _ in range(3))
    eq = qd.EquationSpec(alpha, beta, gamma, tau=tau, delta=delta, p=p, d=d,
                         a=coefficient(), b=coefficient(), c=coefficient(),
                         f=qd.identity_map(), n0=max(1, delta, tau))
    lo, hi = qd.forward_seed_span(eq)
    seed = Window(lo, tuple(rng.uniform(0.5, 1.5) for _ in range(hi - lo + 1)))
    return eq, seed


def test_criterion_05_solver_oracle_equivalence():
    started = time.perf_counter()
    rng = random.Random(32)
    worst = 0.0
    for _ in range(100):
        eq, seed = _random_equation(rng)
        traj = qd.solve_forward(eq, seed, 50)
        for n in qd.residual_range(eq, traj.x):
            rel = qd.relative_residual(eq, traj.x, n)
            assert rel <= 1e-9
            worst = max(worst, rel)
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    print(f"\nACCEPTANCE 05 PASS 100 random equations x 50 steps: residual contract "
          f"holds at every interior index (worst {worst:.2e} <= 1e-9, {elapsed:.1f}s)")


def test_criterion_06_closed_form_reproduction():
    eq = qd.example_equation("example-3")
    form = qd.example_closed_form("example-3")
    traj = seeded_forward(eq, form, 60)
    worst = 0.0
    for n in range(eq.n0, eq.n0 + 30):
        worst = max(worst, abs(traj.x(n) - form(n)) / abs(form(n)))
    assert worst <= 1e-6
    print(f"\nACCEPTANCE 06 PASS exact-seeded recursion reproduces -1/2^n: "
          f"max rel deviation {worst:.2e} <= 1e-6 over 30+ steps")


def test_criterion_07_sign_conflict_certificates():
    eq = qd.example_equation("example-1")  # tau = 3 (odd), d > 0
    rng = random.Random(7571)
    for _ in range(100):
        q = Window(eq.n0, tuple(10.0 ** rng.uniform(-3.0, 3.0) for _ in range(16)))
        excluded = qd.sign_conflict_certificate(eq, q, QuickParity.ODD_POSITIVE)
        assert excluded.chains_positive
        assert all(excluded.conflicts)
        assert excluded.valid
        other = qd.sign_conflict_certificate(eq, q, QuickParity.EVEN_POSITIVE)
        assert not any(other.conflicts)
        assert not other.valid
    print("\nACCEPTANCE 07 PASS 100 random positive q windows: odd-positive certificate "
          "valid at every index; even-positive reported not-valid at every index")


def test_criterion_08_companion_bound_certificates():
    rng = random.Random(88)
    for _ in range(100):
        delta = rng.choice([1, 2, 5])
        p_limit = rng.uniform(-0.9, 0.9)
        envelope = (1.0 + abs(p_limit)) / 2.0
        L = rng.uniform(0.5, 4.0)
        n1 = 1
        count = 500
        p_values = tuple(
            p_limit + (envelope - abs(p_limit)) * 0.9 * rng.uniform(-1.0, 1.0) / (k + 1)
            for k in range(count)
        )
        z = Window(n1, tuple(rng.uniform(-L, L) for _ in range(count)))
        startup = Window(n1, tuple(rng.uniform(-2.0, 2.0) for _ in range(delta + 2)))
        cert = qd.companion_bound_certificate(
            z, Table(p_values, n1, "hold-last"), p_limit, delta, n1, startup, L=L)
        assert cert.valid
        assert cert.max_abs_x <= cert.K + cert.L / (1.0 - cert.P)
    print("\nACCEPTANCE 08 PASS 100 random bound instances (delta in {1,2,5}, 500 indices): "
          "max |x_n| <= K + L/(1-P) certified in every case")


def test_criterion_09_signed_power_properties():
    rng = random.Random(909)
    exponents = [OddRatio(1, 1), OddRatio(3, 1), OddRatio(5, 3), OddRatio(1, 3),
                 OddRatio(7, 5), OddRatio(9, 7)]
    for _ in range(10_000):
        e = rng.choice(exponents)
        x = rng.uniform(-1.0, 1.0) * 10.0 ** rng.uniform(-6, 6)
        assert qd.spow(-x, e) == -qd.spow(x, e)
        back = qd.spow_inverse(qd.spow(x, e), e)
        assert back == pytest.approx(x, rel=1e-12)
    for num, den in ((2, 1), (1, 2), (4, 2), (0, 3), (-3, 1)):
        with pytest.raises(ValueError):
            OddRatio(num, den)
    print("\nACCEPTANCE 09 PASS signed power: oddness exact and round trip within 1e-12 "
          "on 10^4 random inputs; even/invalid exponent components rejected")


def test_criterion_10_cli_end_to_end(tmp_path, capsys):
    horizons = {"example-1": 41, "example-2": 200, "example-3": 60, "example-4": 200}
    for name, horizon in horizons.items():
        assert main(["verify", name, "--horizon", str(horizon)]) == 0
    assert main(["verify", "example-1", "--horizon", "40", "--perturb-d", "1.01"]) == 1

    bad = tmp_path / "bad.json"
    bad.write_text("{ nope")
    assert main(["verify", str(bad), "--horizon", "20"]) == 2

    csv_path = tmp_path / "overflow.csv"
    out_path = tmp_path / "overflow.json"
    assert main(["solve", "example-1", "--horizon", "1100",
                 "--csv", str(csv_path), "--out", str(out_path)]) == 0
    stdout = capsys.readouterr().out
    assert "warning: truncated" in stdout
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "n,x,z,y,w,t"
    assert lines[-1].startswith("# truncated:")
    assert json.loads(out_path.read_text())["truncated"] is True

    pivot_doc = dict(qd.example_document("example-3"))
    pivot_doc["delta"] = 0
    pivot_doc["tau"] = 1
    pivot_doc["n0"] = 1
    pivot_doc["p"] = {"kind": "constant", "value": -1.0}
    pivot_doc["d"] = {"kind": "constant", "value": 1.0}
    pivot = tmp_path / "pivot.json"
    pivot.write_text(json.dumps(pivot_doc))
    assert main(["solve", str(pivot), "--horizon", "10", "--seed-values", "1,1,1,1,1"]) == 3

    print("\nACCEPTANCE 10 PASS CLI contract: verify example-1..4 exit 0; perturbed d "
          "exits 1; malformed document exits 2; overflow run maps to 0 with warning and "
          "CSV truncation marker; pivot failure exits 3")
