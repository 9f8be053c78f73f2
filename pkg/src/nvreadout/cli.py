"""Command-line front end.

Exit status: 0 on success, 1 on invalid input, 2 on internal failure.
"""

import argparse
import sys
from pathlib import Path

from .cavity import (SpinState, classify_regime, contrast, crossover_eta,
                     purcell_factor, q_factors, reflectance, spectrum)
from .montecarlo import McConfig, run_campaign
from .readout import error_budget
from .scenario import ConfigError, McSettings, Scenario, load_config
from .sweeps import (PRESETS, SWEEP_VARIABLES, SweepSpec, format_csv,
                     format_json, run_preset, run_sweep)

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON scenario file")
    common.add_argument("--out", type=Path, help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"))

    parser = _Parser(prog="nvreadout", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[common], help="reflection spectrum vs detuning")
    p.add_argument("--spin", choices=[s.value for s in SpinState], default="m0")
    p.add_argument("--min", type=float, default=-100.0, help="detuning min, µeV")
    p.add_argument("--max", type=float, default=100.0, help="detuning max, µeV")
    p.add_argument("--points", type=int, default=2001)

    p = sub.add_parser("sweep", parents=[common], help="one-parameter sweep")
    p.add_argument("--var", required=True, choices=SWEEP_VARIABLES)
    p.add_argument("--min", type=float, required=True)
    p.add_argument("--max", type=float, required=True)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--log", action="store_true", help="logarithmic spacing")

    sub.add_parser("contrast", parents=[common], help="resonant contrast and cavity figures")
    sub.add_parser("error-budget", parents=[common], help="analytic readout-error budget")

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo readout campaign")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--paper-strict", action="store_true",
                   help="score every spin flip as an error")

    p = sub.add_parser("preset", parents=[common], help="figure data")
    p.add_argument("name", choices=PRESETS)
    return parser


def _table(args, columns, rows):
    if (args.format or "csv") == "csv":
        return format_csv(columns, rows)
    return format_json(rows)


def _record(args, record):
    if (args.format or "json") == "json":
        return format_json(record)
    return format_csv(list(record), [record])


def _cmd_spectrum(args, scenario, mc):
    s = spectrum(scenario.cavity, scenario.emitter, SpinState(args.spin),
                 args.min, args.max, args.points)
    cols = ["detuning_ueV", "re_r", "im_r", "reflectance"]
    rows = [dict(zip(cols, v)) for v in
            zip(s.detunings, s.r_complex.real, s.r_complex.imag, s.reflectance)]
    return _table(args, cols, rows)


def _cmd_sweep(args, scenario, mc):
    spec = SweepSpec(args.var, args.min, args.max, args.points,
                     "logarithmic" if args.log else "linear")
    return _table(args, *run_sweep(scenario, spec))


def _cmd_contrast(args, scenario, mc):
    cav, em = scenario.cavity, scenario.emitter
    q_cav, q_tot = q_factors(cav)
    return _record(args, {
        "contrast_m_plus1": contrast(cav, em, SpinState.M_PLUS1),
        "contrast_m_minus1": contrast(cav, em, SpinState.M_MINUS1),
        "reflectance_m0": reflectance(cav, em, SpinState.M0),
        "reflectance_m_plus1": reflectance(cav, em, SpinState.M_PLUS1),
        "reflectance_m_minus1": reflectance(cav, em, SpinState.M_MINUS1),
        "regime": classify_regime(cav, em).value,
        "q_cavity": q_cav,
        "q_total": q_tot,
        "purcell_factor": purcell_factor(cav, em),
        "crossover_eta_ueV": crossover_eta(em.g, em.gamma),
    })


def _cmd_error_budget(args, scenario, mc):
    b = error_budget(scenario.cavity, scenario.emitter, scenario.setup)
    return _record(args, b.as_dict())


def _cmd_simulate(args, scenario, mc):
    if args.trials is not None and args.trials < 1:
        raise ValueError("--trials must be >= 1")
    config = McConfig(
        n_trials=mc.n_trials if args.trials is None else args.trials,
        master_seed=mc.master_seed if args.seed is None else args.seed,
        scenario=scenario,
        paper_strict_flip=mc.paper_strict_flip or args.paper_strict,
    )
    result = run_campaign(config).as_dict()
    result["master_seed"] = config.master_seed
    result["paper_strict_flip"] = config.paper_strict_flip
    result["analytic_total_error"] = error_budget(
        scenario.cavity, scenario.emitter, scenario.setup).total_error
    if (args.format or "json") == "csv":
        se = result.pop("standard_errors")
        result.update({f"standard_error_{k}": v for k, v in se.items()})
    return _record(args, result)


def _cmd_preset(args, scenario, mc):
    return _table(args, *run_preset(args.name, scenario))


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "sweep": _cmd_sweep,
    "contrast": _cmd_contrast,
    "error-budget": _cmd_error_budget,
    "simulate": _cmd_simulate,
    "preset": _cmd_preset,
}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.config is not None:
            scenario, mc = load_config(args.config)
        else:
            scenario, mc = Scenario(), McSettings()
        text = _COMMANDS[args.command](args, scenario, mc)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except (ConfigError, ValueError) as exc:
        print(f"nvreadout: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SystemExit as exc:
        # --help
        return EXIT_OK if not exc.code else EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"nvreadout: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    try:
        if args.out is None:
            sys.stdout.write(text)
        else:
            args.out.write_text(text)
    except OSError as exc:
        print(f"nvreadout: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
