"""Command-line front end.

Exit codes: 0 success, 2 configuration/parse error, 3 numeric/validation error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .formats import ConfigError, load_circuit, to_csv, to_svg
from .gauss import validate_state
from .measures import MEASURES, EtaOptions
from .scenarios import SWEEP, SweepError, SweepSpec, build_fig1, build_fig3, evolve, run, sweep
from .symplectic import NumericError

EXIT_CONFIG = 2
EXIT_NUMERIC = 3


class ValidationError(ArithmeticError):
    pass


def sweep_table(rows, n_modes, measures, angle="theta"):
    """Header and value rows for a sweep, columns ordered as in the CLI contract."""
    header = [angle]
    if "mu" in measures or "logneg" in measures:
        header += [f"two_nu_{k + 1}" for k in range(n_modes)]
    if "mu" in measures:
        header.append("mu")
    if "logneg" in measures:
        header += [f"log_neg_{k + 1}" for k in range(n_modes)]
    if "eta" in measures:
        header.append("eta_ent")
    if "smnc" in measures:
        header.append("smnc_volume")
    if "eta" in measures:
        header.append("converged")

    table = []
    for theta, rep in rows:
        line = [theta]
        if "mu" in measures or "logneg" in measures:
            line += rep.per_mode_pt
        if "mu" in measures:
            line.append(rep.mu)
        if "logneg" in measures:
            line += rep.log_neg_per_mode
        if "eta" in measures:
            line.append(rep.eta_ent)
        if "smnc" in measures:
            line.append(rep.smnc_volume)
        if "eta" in measures:
            line.append(rep.eta_converged)
        table.append(line)
    return header, table


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc.strerror}") from exc


def _emit_sweep(args, rows, n_modes, measures, angle):
    header, table = sweep_table(rows, n_modes, measures, angle)
    _write(to_csv(header, table), args.out)
    if args.svg:
        series = {h: [row[i] for row in table]
                  for i, h in enumerate(header)
                  if h.startswith(("mu", "eta_ent", "smnc_volume"))}
        _write(to_svg([row[0] for row in table], series, xlabel=angle), args.svg)


def _eta_options(args, default_steps):
    steps = args.coarse_steps if args.coarse_steps is not None else default_steps
    return EtaOptions(coarse_steps=steps)


def cmd_fig2(args):
    theta1 = math.pi / 4 if args.theta1 is None else args.theta1
    eta = True if args.eta is None else args.eta
    measures = ("mu", "smnc") + (("eta",) if eta else ())
    spec = SweepSpec(build_fig1(args.r, theta1, SWEEP),
                     start=args.start, stop=args.stop, steps=args.steps or 59,
                     measures=measures, eta_options=_eta_options(args, 21))
    _emit_sweep(args, sweep(spec), 3, measures, "theta2")


def cmd_fig4(args):
    theta1 = math.pi / 4 if args.theta1 is None else args.theta1
    measures = ("mu", "smnc") + (("eta",) if args.eta else ())
    spec = SweepSpec(build_fig3(args.r, theta1, SWEEP, SWEEP),
                     start=args.start, stop=args.stop, steps=args.steps or 39,
                     measures=measures, eta_options=_eta_options(args, 11))
    _emit_sweep(args, sweep(spec), 4, measures, "theta")


def _require_circuit(args):
    if not args.circuit:
        raise ConfigError("--circuit is required for this command")
    return load_circuit(args.circuit)


def _check_physical(v):
    nus, valid = validate_state(v)
    if not valid:
        raise ValidationError(f"output is not a physical state; symplectic eigenvalues {nus}")
    return nus


def cmd_run(args):
    c = _require_circuit(args)
    if c.swept:
        raise ConfigError("ops: 'sweep' angles are only allowed with the sweep command")
    _check_physical(evolve(c))
    measures = MEASURES if args.eta is not False else tuple(m for m in MEASURES if m != "eta")
    _, rep = run(c, measures, _eta_options(args, 21))
    _write(json.dumps(rep.to_dict(), indent=2) + "\n", args.out)


def cmd_sweep(args):
    c = _require_circuit(args)
    if not c.swept:
        raise ConfigError("ops: mark at least one beam splitter with \"theta\": \"sweep\"")
    measures = ("mu", "smnc") + (("eta",) if args.eta else ())
    spec = SweepSpec(c, start=args.start, stop=args.stop, steps=args.steps or 59,
                     measures=measures, eta_options=_eta_options(args, 21))
    _emit_sweep(args, sweep(spec), len(c.tracked_modes), measures, "theta")


def cmd_validate(args):
    c = _require_circuit(args)
    if c.swept:
        c = c.with_angle(math.pi / 4)
    nus = _check_physical(evolve(c))
    _write(json.dumps({"valid": True, "symplectic_eigenvalues": nus}) + "\n", args.out)


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "fig2": cmd_fig2,
            "fig4": cmd_fig4, "validate": cmd_validate}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _finite(text):
    try:
        val = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not np.isfinite(val):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return val


def build_parser():
    p = _Parser(prog="noisevol", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--circuit", help="circuit JSON file (run, sweep, validate)")
    p.add_argument("--out", help="output file; stdout if omitted")
    p.add_argument("--svg", help="also write a line chart of the sweep")
    p.add_argument("--r", type=_finite, default=0.1, help="squeezing parameter (fig2, fig4)")
    p.add_argument("--theta1", type=_finite, help="first beam splitter angle")
    p.add_argument("--theta2", type=_finite, help="unused by the sweeps; reserved")
    p.add_argument("--theta3", type=_finite, help="unused by the sweeps; reserved")
    p.add_argument("--start", type=_finite, default=math.pi / 60)
    p.add_argument("--stop", type=_finite, default=math.pi / 2 - math.pi / 60)
    p.add_argument("--steps", type=int)
    p.add_argument("--eta", action=argparse.BooleanOptionalAction, default=None,
                   help="compute eta_ent (default: on for fig2 and run, off otherwise)")
    p.add_argument("--coarse-steps", type=int, help="eta grid points per axis")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.r < 0:
            raise ConfigError("--r must be non-negative")
        COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"noisevol: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValidationError, NumericError, SweepError) as exc:
        print(f"noisevol: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"noisevol: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return 0


if __name__ == "__main__":
    sys.exit(main())
