"""Command-line front end.

Subcommands:
  integrals  print the classified first integrals of a system
  check      run the exact verification battery, exit nonzero on failure
  simulate   integrate a trajectory and write it as CSV

The system is described by a JSON file {"k": [...]} whose entries are
integers, exact decimal literals, or "p/q" strings; the dimension is the
list length. Exit codes: 0 success, 1 verification failure, 2 input error,
3 runtime integration failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys as _sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import darboux, sim, verify
from .errors import CyclicLVError, IntegrationAborted
from .model import CyclicLVSystem, as_fraction

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_RUNTIME_ERROR = 3

DEFAULT_CHECK_SAMPLES = 32


class InputError(Exception):
    """Anything wrong with the spec file or the flags (exit code 2)."""


def load_system_spec(path: str | Path) -> CyclicLVSystem:
    """Read a {"k": [...]} JSON file into a validated system."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read system file {path}: {exc}") from exc
    try:
        # parse_float sees the raw literal, so decimals convert exactly
        data = json.loads(text, parse_float=Fraction)
    except ValueError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "k" not in data:
        raise InputError(f'{path} must be a JSON object with a "k" list')
    entries = data["k"]
    if not isinstance(entries, list) or len(entries) < 2:
        raise InputError('"k" must be a list with at least 2 entries')
    rates = []
    for pos, entry in enumerate(entries, start=1):
        try:
            value = as_fraction(entry)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"entry {pos}: cannot parse {entry!r} as a rational ({exc})")
        if value == 0:
            raise InputError(f"entry {pos}: rate parameters must be nonzero")
        rates.append(value)
    return CyclicLVSystem(n=len(rates), rates=tuple(rates))


def _fmt(value: float) -> str:
    """Round-trip-safe float rendering (17 significant digits)."""
    return format(float(value), ".17g")


def _monomial_text(name: str, mono: darboux.MonomialIntegral) -> list[str]:
    factors = []
    for i, e in enumerate(mono.exponents, start=1):
        if e == 0:
            continue
        factors.append(f"x{i}" if e == 1 else f"x{i}^({e})")
    exponents = ", ".join(str(e) for e in mono.exponents)
    return [f"{name} = " + " * ".join(factors), f"{name} exponents: {exponents}"]


def _integral_names(basis: darboux.IntegralBasis) -> list[str]:
    return ["H1"] + [f"H{j + 2}" for j in range(len(basis.monomials))]


def cmd_integrals(args: argparse.Namespace) -> int:
    system = load_system_spec(args.system)
    basis = darboux.integral_basis(system)
    if args.format == "json":
        payload = {
            "n": system.n,
            "k": [str(v) for v in system.rates],
            "classification": basis.classification.name,
            "linear": {"name": "H1", "weights": [str(w) for w in basis.linear.weights]},
            "monomials": [
                {"name": name, "exponents": [str(e) for e in mono.exponents]}
                for name, mono in zip(_integral_names(basis)[1:], basis.monomials)
            ],
        }
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    print(f"n: {system.n}")
    print(f"classification: {basis.classification.name}")
    print("H1 = " + " + ".join(f"x{i}" for i in range(1, system.n + 1)))
    for name, mono in zip(_integral_names(basis)[1:], basis.monomials):
        for line in _monomial_text(name, mono):
            print(line)
    if not basis.monomials:
        print("no monomial integrals")
    return EXIT_OK


def _report_line(label: str, report: verify.VerificationReport) -> tuple[str, bool]:
    if report.passed:
        return f"check {label}: PASS", True
    return f"check {label}: FAIL ({report.witness})", False


def run_check_battery(
    system: CyclicLVSystem, seed: int, samples: int = DEFAULT_CHECK_SAMPLES
) -> tuple[list[str], bool]:
    """Every exact check against one system; returns (lines, all passed)."""
    rng = random.Random(seed)
    basis = darboux.integral_basis(system)
    names = _integral_names(basis)
    lines: list[str] = []
    ok = True

    line, passed = _report_line("linear-integral", verify.check_linear_integral(system))
    lines.append(line)
    ok &= passed

    for name, mono in zip(names[1:], basis.monomials):
        line, passed = _report_line(
            f"cofactor-cancellation[{name}]", verify.check_xh_zero(system, mono)
        )
        lines.append(line)
        ok &= passed

    if system.n == 2:
        lines.append("check nullspace-formula-equivalence: SKIP (n=2)")
    else:
        space = darboux.nullspace(darboux.build_exponent_system(system))
        formulas = [mono.exponents for mono in basis.monomials]
        if space == formulas:
            lines.append("check nullspace-formula-equivalence: PASS")
        else:
            lines.append(
                "check nullspace-formula-equivalence: FAIL "
                f"(nullspace {space} vs formulas {formulas})"
            )
            ok = False

    jacobi_points = [
        verify.random_rational_state(rng, system.n, positive=False)
        for _ in range(samples)
    ]
    line, passed = _report_line(
        f"jacobi-multiplier[samples={samples}]",
        verify.check_jacobi_multiplier(system, jacobi_points),
    )
    lines.append(line)
    ok &= passed

    rank_points = [
        verify.random_rational_state(rng, system.n, positive=True)
        for _ in range(samples)
    ]
    line, passed = _report_line(
        f"independence[samples={samples}]",
        verify.check_independence(system, basis, rank_points),
    )
    lines.append(line)
    ok &= passed

    if not basis.monomials:
        lines.append(
            f"note: no monomial integrals (classification {basis.classification.name})"
        )
    return lines, bool(ok)


def cmd_check(args: argparse.Namespace) -> int:
    system = load_system_spec(args.system)
    lines, ok = run_check_battery(system, seed=args.seed)
    for line in lines:
        print(line)
    print(f"result: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _parse_x0(text: str, n: int) -> list[float]:
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError as exc:
        raise InputError(f"cannot parse --x0 {text!r}: {exc}") from exc
    if len(values) != n:
        raise InputError(f"--x0 has {len(values)} entries, system has n={n}")
    if any(v <= 0 for v in values):
        raise InputError("--x0 must be strictly positive")
    return values


def _write_csv(
    path: str | Path,
    n: int,
    names: list[str],
    records: Sequence[sim.TrajectoryRecord],
    sample_every: int,
) -> int:
    indices = list(range(0, len(records), sample_every))
    if indices[-1] != len(records) - 1:
        indices.append(len(records) - 1)
    header = (
        ["t"]
        + [f"x{i}" for i in range(1, n + 1)]
        + names
        + [f"drift_{name}" for name in names]
    )
    with open(path, "w", encoding="utf-8", newline="\n") as out:
        out.write(",".join(header) + "\n")
        for idx in indices:
            rec = records[idx]
            cells = (
                [_fmt(rec.t)]
                + [_fmt(v) for v in rec.x]
                + [_fmt(v) for v in rec.integral_values]
                + [_fmt(v) for v in rec.relative_drift]
            )
            out.write(",".join(cells) + "\n")
    return len(indices)


def cmd_simulate(args: argparse.Namespace) -> int:
    system = load_system_spec(args.system)
    x0 = _parse_x0(args.x0, system.n)
    if args.sample_every < 1:
        raise InputError("--sample-every must be a positive integer")
    try:
        cfg = sim.IntegratorConfig(
            method=sim.Method(args.method),
            step=args.step,
            t_end=args.t_end,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    basis = darboux.integral_basis(system)
    names = _integral_names(basis)

    status = "ok"
    exit_code = EXIT_OK
    try:
        records = sim.integrate(system, x0, cfg, basis)
    except IntegrationAborted as exc:
        records = exc.records
        status = f"{type(exc).__name__}({exc})"
        exit_code = EXIT_RUNTIME_ERROR

    rows = _write_csv(args.out, system.n, names, records, args.sample_every)
    drift_parts = [
        f"max_drift_{name}={_fmt(max(r.relative_drift[j] for r in records))}"
        for j, name in enumerate(names)
    ]
    print(
        f"summary: rows={rows} t_final={_fmt(records[-1].t)} "
        + " ".join(drift_parts)
        + f" status={status}"
    )
    return exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cycliclv",
        description=(
            "First integrals of cyclic Lotka-Volterra systems: exact "
            "classification, verification, and conservation-monitored simulation."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_int = sub.add_parser("integrals", help="print the classified first integrals")
    p_int.add_argument("--system", required=True, help="path to a {'k': [...]} JSON file")
    p_int.add_argument("--format", choices=("text", "json"), default="text")
    p_int.set_defaults(handler=cmd_integrals)

    p_chk = sub.add_parser("check", help="run the exact verification battery")
    p_chk.add_argument("--system", required=True)
    p_chk.add_argument("--seed", type=int, default=0, help="RNG seed for sample-based checks")
    p_chk.set_defaults(handler=cmd_check)

    p_sim = sub.add_parser("simulate", help="integrate a trajectory and write CSV")
    p_sim.add_argument("--system", required=True)
    p_sim.add_argument("--x0", required=True, help="comma-separated initial state")
    p_sim.add_argument("--method", choices=("rk4", "rk45"), default="rk4")
    p_sim.add_argument("--step", type=float, default=1e-3)
    p_sim.add_argument("--t-end", type=float, default=10.0)
    p_sim.add_argument("--out", required=True, help="CSV output path")
    p_sim.add_argument("--sample-every", type=int, default=1)
    p_sim.set_defaults(handler=cmd_simulate)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_INPUT_ERROR
    except IntegrationAborted as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_RUNTIME_ERROR
    except CyclicLVError as exc:
        print(f"error: {exc}", file=_sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    _sys.exit(main())
