"""Command line interface: ``noise-eater {metrics,figure,sweep,oracle}``.

Exit status is 0 on success, 2 for an invalid configuration and 3 when a
computation produces a non-finite or degenerate result.
"""
from __future__ import annotations

import argparse
import sys

from . import figures, output
from .config import ConfigError, RunConfig, load_config_file, resolve
from .errors import (
    DegenerateSystemError,
    InvalidParameterError,
    NoiseEaterError,
    NumericalFailure,
)
from .metrics import evaluate
from .noise import SystemParams
from .optimizer import optimal_gain, optimal_sweep
from .oracle import MIN_SAMPLES, sample_moments
from .tapoff import TapOffKind, TapOffSpec, shg_tapoff_ratio

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

_REPORT_FIELDS = ("v_s_out", "v_m_out", "cov_sm", "t_s", "t_m", "t_total",
                  "v_cond", "corr_sm", "v_s_out_db", "v_m_out_db")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_CONFIG)


def _common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--config", help="flat JSON config file; flags override its values")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--seed", type=int, help="Monte-Carlo seed (required by oracle)")
    p.add_argument("--preset", help="named parameter set, e.g. fig4-point, fig7")
    p.add_argument("--model", choices=("bs", "shg", "both"))
    p.add_argument("--v-in", dest="v_in", type=float, help="input signal variance")
    p.add_argument("--eta-m", dest="eta_m", type=float, help="meter detection efficiency")
    p.add_argument("--eta-insertion", dest="eta_insertion", type=float,
                   help="tap-off stage transmission of the signal arm")
    p.add_argument("--eta-modulator", dest="eta_modulator", type=float,
                   help="modulator transmission")
    p.add_argument("--tapoff", type=float, help="tapped power fraction 1 - eta")
    p.add_argument("--xi", type=float, help="SHG interaction strength")
    p.add_argument("--gain", type=float, help="feedforward gain")
    p.add_argument("--optimal-gain", dest="optimal_gain", action="store_true",
                   help="use the variance-minimizing gain instead of --gain")
    p.add_argument("--g-min", dest="g_min", type=float)
    p.add_argument("--g-max", dest="g_max", type=float)
    p.add_argument("--steps", type=int, help="gain scan points")
    p.add_argument("--grid-min", dest="grid_min", type=float)
    p.add_argument("--grid-max", dest="grid_max", type=float)
    p.add_argument("--grid-points", dest="grid_points", type=int)
    p.add_argument("--snr-reference", dest="snr_reference",
                   choices=("quantum_limit", "shot_noise"))
    p.add_argument("--samples", type=int, help="Monte-Carlo sample count")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(prog="noise-eater", parents=[common],
                     description="Feedforward intensity noise eater model.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("metrics", parents=[common], help="metric report at one operating point")
    fig = sub.add_parser("figure", parents=[common], help="figure data as CSV/JSON")
    fig.add_argument("number", type=int, choices=sorted(figures.FIGURES))
    sub.add_parser("sweep", parents=[common], help="optimal-gain sweep over tap-off")
    sub.add_parser("oracle", parents=[common], help="Monte-Carlo check of the analytics")
    return parser


def _kinds(model: str) -> list[TapOffKind]:
    if model == "both":
        return [TapOffKind.BEAMSPLITTER, TapOffKind.SECOND_HARMONIC]
    return [TapOffKind(model)]


def _point_spec(cfg: RunConfig, kind: TapOffKind) -> TapOffSpec:
    if cfg.tapoff is not None:
        return TapOffSpec.at_tapoff(kind, cfg.tapoff)
    if kind is TapOffKind.SECOND_HARMONIC:
        return TapOffSpec.second_harmonic(cfg.xi)
    return TapOffSpec.beamsplitter(shg_tapoff_ratio(cfg.xi))


def _point_params(cfg: RunConfig, kind: TapOffKind) -> SystemParams:
    params = SystemParams(_point_spec(cfg, kind), v_in=cfg.v_in, gain=cfg.gain,
                          eta_m=cfg.eta_m, eta_s=cfg.eta_s)
    if cfg.optimal_gain:
        params = params.with_gain(optimal_gain(params)[0])
    return params


def cmd_metrics(cfg: RunConfig):
    cfg.check_single_point()
    columns = ("model", "tapoff", "eta", "xi", "gain", "v_in", "eta_m", "eta_s") + _REPORT_FIELDS
    rows = []
    for kind in _kinds(cfg.model):
        params = _point_params(cfg, kind)
        report = evaluate(params, cfg.snr_reference)
        spec = params.tapoff
        tapoff = cfg.tapoff if cfg.tapoff is not None else 1.0 - spec.eta
        rows.append((kind.value, tapoff, spec.eta, spec.xi, params.gain, params.v_in,
                     params.eta_m, params.eta_s)
                    + tuple(getattr(report, f) for f in _REPORT_FIELDS))
    return columns, rows


def cmd_figure(cfg: RunConfig, number: int):
    cfg.check_common()
    kwargs = dict(v_in=cfg.v_in, eta_m=cfg.eta_m, eta_s=cfg.eta_s,
                  snr_reference=cfg.snr_reference)
    if number == 7:
        cfg.check_scan()
        if cfg.xi is not None:
            raise ConfigError("figure 7 takes --tapoff, not --xi")
        kwargs.update(tapoff=0.1 if cfg.tapoff is None else cfg.tapoff,
                      g_min=cfg.g_min, g_max=cfg.g_max, steps=cfg.steps)
    else:
        cfg.check_sweep()
        kwargs.update(grid=cfg.grid())
    table = figures.build_figure(number, **kwargs)
    return table.columns, table.rows


def cmd_sweep(cfg: RunConfig):
    cfg.check_sweep()
    sweep = optimal_sweep(cfg.grid(), v_in=cfg.v_in, eta_m=cfg.eta_m, eta_s=cfg.eta_s,
                          snr_reference=cfg.snr_reference)
    per_model = ("g_star", "v_star", "v_star_db", "t_s", "t_m", "t_total", "v_cond", "corr_sm")
    columns = ["tapoff"]
    for kind in TapOffKind:
        columns += [f"{name}_{kind.value}" for name in per_model]
    columns.append("diff_db")

    rows = []
    bs = sweep.records[TapOffKind.BEAMSPLITTER]
    shg = sweep.records[TapOffKind.SECOND_HARMONIC]
    for i, t in enumerate(sweep.tapoff_grid):
        row = [float(t)]
        for point in (bs[i], shg[i]):
            m = point.metrics
            row += [point.g_star, point.v_star, point.v_star_db,
                    m.t_s, m.t_m, m.t_total, m.v_cond, m.corr_sm]
        row.append(float(sweep.diff_db[i]))
        rows.append(tuple(row))
    return tuple(columns), rows


def cmd_oracle(cfg: RunConfig):
    cfg.check_single_point()
    if cfg.seed is None:
        raise ConfigError("oracle needs an explicit --seed")
    if cfg.seed < 0:
        raise ConfigError("seed must be a non-negative integer")
    if cfg.samples < MIN_SAMPLES:
        raise ConfigError(f"oracle needs at least {MIN_SAMPLES} samples, got {cfg.samples}")
    columns = ("model", "quantity", "analytic", "sampled", "stderr", "z_score", "agree")
    rows = []
    for kind in _kinds(cfg.model):
        for cmp in sample_moments(_point_params(cfg, kind), cfg.samples, cfg.seed):
            rows.append((kind.value, cmp.quantity, cmp.analytic, cmp.sampled,
                         cmp.stderr, cmp.z_score, cmp.agree))
    bad = [r for r in rows if not r[-1]]
    status = "all agree" if not bad else f"{len(bad)} discrepant"
    sys.stderr.write(f"oracle: {len(rows)} quantities, {status} within 5 standard errors\n")
    return columns, rows


def run(argv=None) -> int:
    parser = build_parser()
    args = vars(parser.parse_args(argv))
    command = args.pop("command")
    number = args.pop("number", None)
    config_path = args.pop("config", None)
    try:
        file_values = load_config_file(config_path) if config_path else {}
        default_preset = f"fig{number}" if command == "figure" else None
        cfg = resolve(file_values, args, default_preset)
        if command == "metrics":
            columns, rows = cmd_metrics(cfg)
        elif command == "figure":
            columns, rows = cmd_figure(cfg, number)
        elif command == "sweep":
            columns, rows = cmd_sweep(cfg)
        else:
            columns, rows = cmd_oracle(cfg)
        text = output.render(columns, rows, cfg.format)
    except (DegenerateSystemError, NumericalFailure) as exc:
        sys.stderr.write(f"noise-eater: numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except (InvalidParameterError, NoiseEaterError) as exc:
        sys.stderr.write(f"noise-eater: invalid configuration: {exc}\n")
        return EXIT_CONFIG
    try:
        output.write(text, cfg.out)
    except OSError as exc:
        sys.stderr.write(f"noise-eater: cannot write {cfg.out}: {exc.strerror}\n")
        return EXIT_CONFIG
    return EXIT_OK


def main(argv=None) -> None:
    raise SystemExit(run(argv))


if __name__ == "__main__":
    main()
