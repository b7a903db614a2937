"""Command-line driver: solve, verify, check, classify, list-examples.

Exit codes are a stable contract:
  0  success (including success-with-warning, e.g. a truncated overflow run)
  1  a verification or hypothesis/certificate check failed
  2  usage or document parse error
  3  numeric failure that prevented producing a result (overflow in the seed
     chain, a near-zero neutral pivot, a zero coefficient to invert through)
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from typing import Callable

from .analysis import (
    QuickParity,
    check_almost_oscillation,
    check_quick_exclusion,
    classify,
    companion_bound_certificate,
    component_sign_profile,
    sign_conflict_certificate,
)
from .document import build_equation
from .errors import (
    DocumentError,
    HypothesisViolation,
    NumericRangeError,
    PivotError,
    QuasidiffError,
    SequenceDomainError,
)
from .examples import EXAMPLE_NAMES, example_closed_form, example_document, example_summary
from .model import EquationSpec, relative_residual
from .numerics import ToleranceProfile
from .solver import (
    Trajectory,
    forward_seed_span,
    inverse_seed_span,
    sample_trajectory,
    solve_forward,
    solve_inverse,
)
from .windows import Window

MIN_HORIZON = 8


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasidiff",
        description="Simulate, classify, and certify solutions of fourth-order "
                    "neutral difference equations with quasidifferences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, horizon_default: int) -> None:
        p.add_argument("equation", help="bundled example name or path to a JSON equation document")
        p.add_argument("--horizon", type=int, default=horizon_default)
        p.add_argument("--beta", default=None, help="override beta for bundled examples (num/den)")
        p.add_argument("--lambda", dest="lam", type=int, default=None,
                       help="override the half-delay lambda for bundled examples")
        p.add_argument("--eps-residual", type=float, default=None)
        p.add_argument("--eps-sign", type=float, default=None)
        p.add_argument("--suffix-fraction", type=float, default=None)
        p.add_argument("--eps-limit", type=float, default=None)
        p.add_argument("--out", default=None, help="write a JSON report to this path")
        p.add_argument("--csv", default=None, help="write an n,x,z,y,w,t CSV to this path")

    p_solve = sub.add_parser("solve", help="run the recursion and export the trajectory")
    add_common(p_solve, 200)
    p_solve.add_argument("--seed-values", default=None,
                         help="comma-separated x values covering the seed span")

    p_verify = sub.add_parser("verify", help="check a closed-form candidate against the equation")
    add_common(p_verify, 200)
    p_verify.add_argument("--closed-form", default=None,
                          help="'alternating:scale,ratio' or 'geometric:scale,ratio'")
    p_verify.add_argument("--perturb-d", type=float, default=None,
                          help="multiply d by this factor (for negative controls)")

    p_check = sub.add_parser("check", help="hypothesis reports and certificates")
    add_common(p_check, 100_000)
    mode = p_check.add_mutually_exclusive_group(required=True)
    mode.add_argument("--quick-exclusion", action="store_true",
                      help="hypotheses excluding alternating solutions of one parity")
    mode.add_argument("--almost-oscillation", action="store_true",
                      help="hypotheses for the almost-oscillation property")
    mode.add_argument("--certificate", action="store_true",
                      help="sign-conflict certificates on random positive q windows")
    mode.add_argument("--bound", action="store_true",
                      help="companion bound certificate on the sampled closed form")
    p_check.add_argument("--windows", type=int, default=50, help="number of random q windows")
    p_check.add_argument("--rng-seed", type=int, default=0)
    p_check.add_argument("--parity", choices=["even", "odd"], default=None,
                         help="positive parity of the candidate (default: the excluded one)")
    p_check.add_argument("--delta", dest="delta_override", type=int, default=None,
                         help="override delta in the document (n0 is raised as needed)")

    p_classify = sub.add_parser("classify", help="classify a trajectory's sign pattern")
    add_common(p_classify, 64)
    p_classify.add_argument("--closed-form", default=None,
                            help="'alternating:scale,ratio' or 'geometric:scale,ratio'")
    p_classify.add_argument("--solve", action="store_true",
                            help="classify a solved trajectory instead of a sampled closed form")
    p_classify.add_argument("--seed-values", default=None)

    sub.add_parser("list-examples", help="list the bundled example equations")
    return parser


# ---------------------------------------------------------------------------
# Equation and closed-form loading
# ---------------------------------------------------------------------------


def _load_document(args) -> tuple[dict, str]:
    ref = args.equation
    if ref in EXAMPLE_NAMES:
        kwargs = {}
        if args.beta is not None:
            kwargs["beta"] = args.beta
        if args.lam is not None:
            kwargs["lam"] = args.lam
        return example_document(ref, **kwargs), ref
    if args.beta is not None or args.lam is not None:
        raise ValueError("--beta/--lambda apply only to bundled examples")
    try:
        with open(ref, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {ref!r}: {exc}") from None
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}", "$") from None
    if not isinstance(document, dict):
        raise DocumentError("top level must be an object", "$")
    return document, ref


def _load_equation(args) -> tuple[EquationSpec, str]:
    document, name = _load_document(args)
    if getattr(args, "delta_override", None) is not None:
        document = dict(document)
        document["delta"] = args.delta_override
        document["n0"] = max(document["n0"], 1, args.delta_override, document["tau"])
    if getattr(args, "perturb_d", None) is not None:
        document = dict(document)
        document["d"] = {"kind": "combine", "op": "*", "left": document["d"],
                         "right": {"kind": "constant", "value": args.perturb_d}}
    return build_equation(document), name


def _tolerances(args) -> ToleranceProfile:
    kwargs = {}
    if args.eps_residual is not None:
        kwargs["eps_residual"] = args.eps_residual
    if args.eps_sign is not None:
        kwargs["eps_sign"] = args.eps_sign
    if args.suffix_fraction is not None:
        kwargs["suffix_fraction"] = args.suffix_fraction
    if args.eps_limit is not None:
        kwargs["eps_limit"] = args.eps_limit
    return ToleranceProfile(**kwargs)


def _closed_form(args, name: str) -> Callable[[int], float]:
    spec = getattr(args, "closed_form", None)
    if spec is not None:
        try:
            family, params = spec.split(":", 1)
            scale, ratio = (float(v) for v in params.split(","))
        except ValueError:
            raise ValueError(f"cannot parse closed form {spec!r}; "
                             "expected 'alternating:scale,ratio' or 'geometric:scale,ratio'") from None
        if family == "alternating":
            return lambda n: (scale if n % 2 == 0 else -scale) * ratio ** n
        if family == "geometric":
            return lambda n: scale * ratio ** n
        raise ValueError(f"unknown closed-form family {family!r}")
    if name in EXAMPLE_NAMES:
        return example_closed_form(name)
    raise ValueError("a closed form is required for a document equation (--closed-form)")


def _check_horizon(horizon: int) -> None:
    if horizon < MIN_HORIZON:
        raise ValueError(f"horizon must be at least {MIN_HORIZON}, got {horizon}")


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_csv(path: str, traj: Trajectory) -> None:
    components = {"z": traj.z, "y": traj.y, "w": traj.w, "t": traj.t}
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("n,x,z,y,w,t\n")
        for n, xv in traj.x.items():
            cells = [str(n), _fmt(xv)]
            for key in ("z", "y", "w", "t"):
                win = components[key]
                cells.append(_fmt(win[n]) if win is not None and n in win else "")
            fh.write(",".join(cells) + "\n")
        if traj.truncated:
            fh.write(f"# truncated: first non-finite value at n = {traj.truncation_index}\n")


def _write_report(path: str | None, report: dict) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")


def _sample_for_components(eq: EquationSpec, form, horizon: int) -> Trajectory:
    start = eq.n0 - max(eq.delta, 0)
    end = eq.n0 + horizon - 1 + max(-eq.delta, 0) + 4
    return sample_trajectory(eq, form, start, end)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_solve(args) -> int:
    _check_horizon(args.horizon)
    eq, name = _load_equation(args)
    tol = _tolerances(args)
    forward = eq.forward_mode
    lo, hi = forward_seed_span(eq) if forward else inverse_seed_span(eq)
    if args.seed_values is not None:
        values = [float(v) for v in args.seed_values.split(",")]
        if len(values) != hi - lo + 1:
            raise ValueError(f"seed must supply {hi - lo + 1} values for indices [{lo}, {hi}], "
                             f"got {len(values)}")
        seed = Window(lo, tuple(values))
    elif name in EXAMPLE_NAMES:
        form = example_closed_form(name)
        seed = Window.from_evaluator(form, lo, hi)
    else:
        raise ValueError("--seed-values is required for a document equation")
    traj = solve_forward(eq, seed, args.horizon, tol) if forward else \
        solve_inverse(eq, seed, args.horizon, tol)

    print(f"solve {name} ({traj.provenance.value})")
    print(f"  x range: n = {traj.n_start} .. {traj.n_end}")
    print(f"  max relative residual: {traj.max_rel_residual:.3e}")
    if traj.truncated:
        print(f"  warning: truncated (first non-finite value at n = {traj.truncation_index})")
    for w in traj.warnings:
        print(f"  warning: {w}")
    report = {
        "command": "solve",
        "equation": name,
        "mode": traj.provenance.value,
        "horizon": args.horizon,
        "n_start": traj.n_start,
        "n_end": traj.n_end,
        "max_rel_residual": traj.max_rel_residual,
        "truncated": traj.truncated,
        "truncation_index": traj.truncation_index,
        "warnings": list(traj.warnings),
    }
    _write_report(args.out, report)
    if args.csv:
        write_csv(args.csv, traj)
    return 0


def cmd_verify(args) -> int:
    _check_horizon(args.horizon)
    eq, name = _load_equation(args)
    tol = _tolerances(args)
    form = _closed_form(args, name)
    residuals = []
    worst = 0.0
    worst_at = eq.n0
    for n in range(eq.n0, eq.n0 + args.horizon):
        rel = relative_residual(eq, form, n)
        residuals.append({"n": n, "rel_residual": rel})
        if rel > worst:
            worst, worst_at = rel, n
    passed = worst <= tol.eps_residual
    print(f"verify {name}: {'PASS' if passed else 'FAIL'}")
    print(f"  indices: n = {eq.n0} .. {eq.n0 + args.horizon - 1} ({args.horizon})")
    print(f"  max relative residual: {worst:.3e} at n = {worst_at}")
    print(f"  tolerance: {tol.eps_residual:.1e}")
    report = {
        "command": "verify",
        "equation": name,
        "horizon": args.horizon,
        "eps_residual": tol.eps_residual,
        "max_rel_residual": worst,
        "argmax": worst_at,
        "pass": passed,
        "residuals": residuals,
    }
    _write_report(args.out, report)
    if args.csv:
        write_csv(args.csv, _sample_for_components(eq, form, args.horizon))
    return 0 if passed else 1


def cmd_classify(args) -> int:
    _check_horizon(args.horizon)
    eq, name = _load_equation(args)
    tol = _tolerances(args)
    if args.solve:
        forward = eq.forward_mode
        lo, hi = forward_seed_span(eq) if forward else inverse_seed_span(eq)
        if args.seed_values is not None:
            values = [float(v) for v in args.seed_values.split(",")]
            seed = Window(lo, tuple(values))
        elif name in EXAMPLE_NAMES:
            seed = Window.from_evaluator(example_closed_form(name), lo, hi)
        else:
            raise ValueError("--seed-values is required to solve a document equation")
        traj = solve_forward(eq, seed, args.horizon, tol) if forward else \
            solve_inverse(eq, seed, args.horizon, tol)
    else:
        traj = _sample_for_components(eq, _closed_form(args, name), args.horizon)

    verdict = classify(traj, tol)
    print(f"classify {name}: {verdict.kind.value}")
    print(f"  tends to zero (evidence): {verdict.tends_to_zero}")
    if verdict.degenerate_zero:
        print("  note: degenerate zero window")
    if verdict.quick is not None:
        q = verdict.quick
        print(f"  alternation magnitudes q from n = {q.q.start}, positive parity: "
              f"{q.positive_parity.value}")
    report = {"command": "classify", "equation": name, "horizon": args.horizon,
              "verdict": verdict.to_dict()}
    if traj.has_components and len(traj.t) >= 16:
        profile = component_sign_profile(traj, tol)
        print(f"  component profile: {profile.case.value}")
        report["component_profile"] = profile.to_dict()
    _write_report(args.out, report)
    if args.csv:
        write_csv(args.csv, traj)
    return 0


def _print_condition_report(report) -> None:
    print(f"{report.title}:")
    for e in report.entries:
        mark = {True: "ok", False: "FAIL", None: "?"}[e.satisfied]
        print(f"  [{mark:>4}] {e.condition} ({e.status.value}): {e.detail}")
    print(f"  conclusion: {report.conclusion}")


def _cmd_check_certificate(args, eq: EquationSpec, name: str) -> tuple[int, dict]:
    exclusion = check_quick_exclusion(eq)
    if args.parity is not None:
        parity = QuickParity.EVEN_POSITIVE if args.parity == "even" else QuickParity.ODD_POSITIVE
    elif exclusion.excluded_parity is not None:
        parity = exclusion.excluded_parity
    else:
        raise HypothesisViolation("exclusion hypotheses fail, so no parity is excluded; "
                                  "pass --parity to force one")
    rng = random.Random(args.rng_seed)
    span = 16 + max(eq.delta, eq.tau, 0) + max(0, -eq.tau)
    results = []
    all_valid = True
    for _ in range(args.windows):
        q = Window(eq.n0, tuple(10.0 ** rng.uniform(-3.0, 3.0) for _ in range(span)))
        cert = sign_conflict_certificate(eq, q, parity)
        results.append(cert.valid)
        all_valid = all_valid and cert.valid
    print(f"sign-conflict certificates ({parity.value}): "
          f"{sum(results)}/{len(results)} valid on random positive q windows")
    report = {"command": "check", "check": "certificate", "equation": name,
              "parity": parity.value, "windows": args.windows,
              "valid_count": sum(results), "all_valid": all_valid}
    return (0 if all_valid else 1), report


def _estimate_p_limit(eq: EquationSpec, horizon: int) -> float:
    points = [eq.p.at(eq.n0 + (horizon * k) // 16) for k in range(17)]
    p_hat = points[-1]
    if not math.isfinite(p_hat) or max(abs(v - p_hat) for v in points[-5:]) > 1e-5 * max(1.0, abs(p_hat)):
        raise HypothesisViolation(f"p does not stabilize over horizon {horizon}; "
                                  "cannot estimate its limit")
    return p_hat


def _cmd_check_bound(args, eq: EquationSpec, name: str) -> tuple[int, dict]:
    horizon = min(args.horizon, 512)
    traj = _sample_for_components(eq, _closed_form(args, name), horizon)
    if traj.z is None:
        raise HypothesisViolation("window too short to materialize the companion sequence")
    p_limit = _estimate_p_limit(eq, max(args.horizon, 1000))
    startup = traj.x.slice(eq.n0, eq.n0 + eq.delta + 1)
    cert = companion_bound_certificate(traj.z, eq.p, p_limit, eq.delta, eq.n0, startup)
    print(f"companion bound certificate: {'valid' if cert.valid else 'NOT VALID'}")
    print(f"  K = {cert.K:.6g}, L = {cert.L:.6g}, P = {cert.P:.6g}")
    print(f"  bound K + L/(1-P) = {cert.bound:.6g}, max |x| observed = {cert.max_abs_x:.6g}")
    report = {"command": "check", "check": "bound", "equation": name,
              "certificate": cert.to_dict()}
    return (0 if cert.valid else 1), report


def cmd_check(args) -> int:
    eq, name = _load_equation(args)
    if args.quick_exclusion:
        report_obj = check_quick_exclusion(eq)
        _print_condition_report(report_obj)
        report = {"command": "check", "check": "quick-exclusion", "equation": name,
                  "report": report_obj.to_dict()}
        code = 0 if report_obj.all_hold else 1
    elif args.almost_oscillation:
        report_obj = check_almost_oscillation(eq, horizon=args.horizon)
        _print_condition_report(report_obj)
        report = {"command": "check", "check": "almost-oscillation", "equation": name,
                  "report": report_obj.to_dict()}
        code = 0 if report_obj.all_hold else 1
    elif args.certificate:
        code, report = _cmd_check_certificate(args, eq, name)
    else:
        code, report = _cmd_check_bound(args, eq, name)
    _write_report(args.out, report)
    return code


def cmd_list_examples(_args) -> int:
    for name in EXAMPLE_NAMES:
        print(f"{name}: {example_summary(name)}")
    return 0


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    handlers = {
        "solve": cmd_solve,
        "verify": cmd_verify,
        "check": cmd_check,
        "classify": cmd_classify,
        "list-examples": cmd_list_examples,
    }
    try:
        return handlers[args.command](args)
    except (DocumentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HypothesisViolation as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (PivotError, NumericRangeError, SequenceDomainError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except QuasidiffError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
