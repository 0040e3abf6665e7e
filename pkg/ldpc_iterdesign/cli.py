# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 Cottage Labs.
#
# ldpc-iterdesign is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""CLI commands for ensemble design, analysis, construction and simulation."""

import functools
import json
import logging
from pathlib import Path

import click
from marshmallow import ValidationError

from . import artifacts
from .alist import format_alist, read_alist
from .decoder_sim import BerCurve, parse_grid
from .diff_evolution import DeConfig
from .ensemble import dump_ddp, load_ddp
from .errors import ConfigError, IterDesignError
from .exit_engine import CHANNELS, CRITERIA
from .ext import IterDesign
from .reproduce import STUDIES, reproduce
from .services.schemas import COMMANDS, TannerGraphSchema, load_run_config

logger = logging.getLogger(__name__)

DDP_HELP = "DDP JSON file or published:<name>"


def handle_errors(f):
    """Print library errors as one diagnostic line and exit with their status."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except IterDesignError as e:
            click.echo(f"Error: {e.category}: {e}", err=True)
            click.get_current_context().exit(e.exit_code)

    return wrapper


def _load_config(ctx, param, value):
    if value is None:
        return None
    try:
        document = json.loads(Path(value).read_text(encoding="utf-8"))
        run_config = load_run_config(document)
    except (OSError, json.JSONDecodeError) as e:
        raise click.BadParameter(f"cannot read config: {e}", ctx=ctx, param=param)
    except ConfigError as e:
        raise click.BadParameter(str(e), ctx=ctx, param=param)
    defaults = {}
    for command in COMMANDS:
        block = dict(run_config.get(command) or {})
        if "seed" in run_config and command in ("design", "build", "simulate", "reproduce"):
            block.setdefault("seed", run_config["seed"])
        defaults[command] = block
    ctx.default_map = defaults
    return run_config


def _parse_degrees(text: str):
    """Parse ``2-30`` ranges and comma lists such as ``2,3,30``."""
    degrees = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                lo, hi = (int(p) for p in part.split("-"))
                degrees.extend(range(lo, hi + 1))
            else:
                degrees.append(int(part))
    except ValueError:
        raise ConfigError(f"cannot parse VN degrees {text!r}")
    return tuple(degrees)


def _load_code(path: str):
    """Graph JSON documents keep generalized checks; anything else is read as alist."""
    if path.endswith(".json"):
        try:
            return TannerGraphSchema().load(json.loads(Path(path).read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read {path}: {e}") from e
        except ValidationError as e:
            raise ConfigError(f"{path}: {e.messages}") from e
    return read_alist(path)


def _digest(ctx) -> str:
    return artifacts.config_digest({"command": ctx.info_name, **ctx.params})


def _target(app: IterDesign, path) -> Path:
    return artifacts.resolve(path, app.output_dir)


@click.group()
@click.option("--config", "run_config", type=click.Path(dir_okay=False), callback=_load_config,
              is_eager=True, help="JSON run-config file; flags override its values")
@click.option("--output-dir", envvar="ITERDESIGN_OUTPUT_DIR", type=click.Path(file_okay=False),
              help="Directory for relative output paths")
@click.option("--threads", type=click.IntRange(min=1), help="Worker processes for parallel evaluation")
@click.option("-v", "--verbose", count=True, help="Log more (repeat for debug output)")
@click.pass_context
def iterdesign(ctx, run_config, output_dir, threads, verbose):
    """Iteration-constrained LDPC/GLDPC ensemble design."""
    logging.basicConfig(
        level=(logging.WARNING, logging.INFO, logging.DEBUG)[min(verbose, 2)],
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )
    run_config = run_config or {}
    ctx.obj = IterDesign(
        overrides={
            "ITERDESIGN_OUTPUT_DIR": output_dir or run_config.get("output_dir"),
            "ITERDESIGN_THREADS": threads or run_config.get("threads"),
        }
    )


@iterdesign.command("threshold")
@click.argument("ddp")
@click.option("--channel", type=click.Choice(CHANNELS), default="bec", show_default=True)
@click.option("--imax", "i_max", type=click.IntRange(min=0), default=10, show_default=True,
              help="Iteration budget; 0 means unlimited")
@click.option("--xi", type=float, help="Required output information (default 0.9999 BEC, 0.999 AWGN)")
@click.option("--tol", "tolerance", type=float, help="Bisection tolerance")
@click.option("--criterion", type=click.Choice(CRITERIA), default="extrinsic", show_default=True)
@click.option("--exact", is_flag=True, help="Evaluate J by quadrature instead of tables")
@click.option("--out", type=click.Path(dir_okay=False), help="Trajectory CSV")
@click.option("--chart", type=click.Path(dir_okay=False), help="EXIT chart CSV at the threshold")
@click.pass_context
@handle_errors
def threshold_cmd(ctx, ddp, channel, i_max, xi, tolerance, criterion, exact, out, chart):
    """Iteration-constrained threshold of an ensemble.

    Example:
        iterdesign threshold published:ensemble-c --imax 200
    """
    app = ctx.obj
    service = app.ensemble_service
    result = service.threshold(
        load_ddp(ddp),
        channel=channel,
        i_max=i_max,
        xi=xi,
        tolerance=tolerance,
        criterion=criterion,
        exact=exact,
        chart_points=service.config.chart_points if chart else None,
    )
    click.echo(result.summary())
    digest = _digest(ctx)
    if out:
        path = artifacts.write_csv(
            _target(app, out), ("iter", "i_av", "i_ev", "i_ac", "i_ec"), result.trajectory.rows(), None, digest
        )
        click.echo(f"trajectory written to {path}")
    if chart:
        path = artifacts.write_csv(
            _target(app, chart), ("i_a", "i_e_vn", "i_e_cn"), result.chart.rows(), None, digest
        )
        click.echo(f"EXIT chart written to {path}")


@iterdesign.command("design")
@click.option("--channel", type=click.Choice(CHANNELS), default="bec", show_default=True)
@click.option("--rate", type=float, default=0.5, show_default=True, help="Target design rate")
@click.option("--imax", "i_max", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--xi", type=float)
@click.option("--criterion", type=click.Choice(CRITERIA), default="extrinsic", show_default=True)
@click.option("--np", "population", type=int, default=70, show_default=True, help="Population size")
@click.option("--F", "weight", type=float, default=0.5, show_default=True, help="Mutation weight")
@click.option("--eta", "crossover", type=float, default=0.8, show_default=True, help="Crossover rate")
@click.option("--vn-degrees", default="2-30", show_default=True, help="Allowed VN degrees, e.g. 2-30 or 2,3,30")
@click.option("--cn-codes", default="spc-7,hamming-7-4,hamming-15-11", show_default=True,
              help="Allowed check-node codes")
@click.option("--generations", type=click.IntRange(min=0), default=500, show_default=True)
@click.option("--stall-generations", type=click.IntRange(min=1), default=50, show_default=True)
@click.option("--max-stability", type=float, help="Reject members whose stability functional exceeds this")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--name", help="Name stored in the output DDP")
@click.option("--out", type=click.Path(dir_okay=False), help="Designed DDP (JSON)")
@click.option("--history", type=click.Path(dir_okay=False), help="Best threshold per generation (CSV)")
@click.pass_context
@handle_errors
def design_cmd(ctx, channel, rate, i_max, xi, criterion, population, weight, crossover, vn_degrees,
               cn_codes, generations, stall_generations, max_stability, seed, name, out, history):
    """Design an ensemble by differential evolution.

    Example:
        iterdesign design --vn-degrees 2,3,30 --cn-codes spc-7 --generations 200 --out b.json
    """
    app = ctx.obj
    de = DeConfig(
        rate=rate,
        vn_degrees=_parse_degrees(vn_degrees),
        cn_codes=tuple(c.strip() for c in cn_codes.split(",") if c.strip()),
        channel=channel,
        i_max=i_max,
        xi=xi,
        criterion=criterion,
        population=population,
        weight=weight,
        crossover=crossover,
        generations=generations,
        stall_generations=stall_generations,
        max_stability=max_stability,
        seed=seed,
        threads=app.ensemble_service.threads,
    )

    def progress(generation, best):
        click.echo(f"generation {generation}: best threshold {best:.6f}")

    result = app.ensemble_service.design(de, progress=progress, name=name)
    click.echo(f"best threshold {result.threshold:.6f} after {result.generations} generations")
    click.echo(str(result.ddp))
    digest = _digest(ctx)
    if out:
        path = artifacts.write_json(_target(app, out), dump_ddp(result.ddp))
        click.echo(f"DDP written to {path}")
    if history:
        artifacts.write_csv(
            _target(app, history), ("generation", "best_threshold"), result.history_rows(), seed, digest
        )


@iterdesign.command("analyze")
@click.argument("ddp")
@click.option("--points", type=click.IntRange(min=2), help="Samples of the growth-rate curve")
@click.option("--out", type=click.Path(dir_okay=False), help="Growth-rate CSV (alpha, growth_rate)")
@click.pass_context
@handle_errors
def analyze_cmd(ctx, ddp, points, out):
    """Growth rate, stability and alpha* of an ensemble.

    Example:
        iterdesign analyze published:ensemble-b --out growth-b.csv
    """
    app = ctx.obj
    pair = load_ddp(ddp)
    result = app.ensemble_service.analyze(pair, points=points)
    click.echo(result.summary())
    published = next(
        (pair.published[k] for k in ("weight2_functional", "stability_product") if k in pair.published), None
    )
    if published is not None and abs(published - result.stability) > 1e-5:
        click.echo(f"note: published stability {published:.6f} differs from recomputed {result.stability:.6f}")
    if out:
        path = artifacts.write_csv(
            _target(app, out), ("alpha", "growth_rate"), result.curve.rows(), None, _digest(ctx)
        )
        click.echo(f"growth rate written to {path}")


@iterdesign.command("build")
@click.argument("ddp")
@click.option("--method", type=click.Choice(("random", "peg")), default="peg", show_default=True)
@click.option("--n", "block_length", type=click.IntRange(min=1), required=True, help="Block length")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--format", "fmt", help="Output format, alist or json (default from the file suffix)")
@click.option("--out", type=click.Path(dir_okay=False), help="Parity-check matrix (alist) or graph (JSON)")
@click.pass_context
@handle_errors
def build_cmd(ctx, ddp, method, block_length, seed, fmt, out):
    """Construct a finite-length code from an ensemble.

    Example:
        iterdesign build published:ensemble-e --n 1024 --out e.alist
    """
    app = ctx.obj
    target = _target(app, out) if out else None
    if target is not None:
        fmt = app.ensemble_service.output_format(target, fmt)
    result = app.ensemble_service.build(load_ddp(ddp), block_length, method=method, seed=seed)
    click.echo(result.summary())
    if target is not None:
        if fmt == "json":
            artifacts.write_json(target, TannerGraphSchema().dump(result.graph))
        else:
            artifacts.atomic_write(target, format_alist(result.parity_check))
        click.echo(f"{fmt} written to {target}")


@iterdesign.command("simulate")
@click.option("--code", "code_path", type=click.Path(exists=True, dir_okay=False),
              help="alist file or graph JSON")
@click.option("--ddp", help=f"Build the code from an ensemble instead ({DDP_HELP})")
@click.option("--method", type=click.Choice(("random", "peg")), default="random", show_default=True)
@click.option("--n", "block_length", type=click.IntRange(min=1), help="Block length when building from --ddp")
@click.option("--channel", type=click.Choice(CHANNELS), default="bec", show_default=True)
@click.option("--grid", required=True, help="start:stop:step or a comma list of epsilon / Eb/N0 [dB]")
@click.option("--imax", "i_max", type=click.IntRange(min=0), default=10, show_default=True)
@click.option("--target-errors", type=click.IntRange(min=1), default=200, show_default=True)
@click.option("--max-words", type=click.IntRange(min=1), default=1_000_000, show_default=True)
@click.option("--rate", "code_rate", type=float, help="Rate used to scale Eb/N0 (default 1 - rows/N)")
@click.option("--encoded", is_flag=True, help="Transmit random codewords instead of the all-zero word")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="Error-rate CSV")
@click.option("--histogram", type=click.Path(dir_okay=False), help="Iterations-used histogram CSV")
@click.pass_context
@handle_errors
def simulate_cmd(ctx, code_path, ddp, method, block_length, channel, grid, i_max, target_errors,
                 max_words, code_rate, encoded, seed, out, histogram):
    """Monte Carlo BER/CER of a code under iteration-capped BP decoding.

    Example:
        iterdesign simulate --ddp published:ensemble-b --n 10000 --grid 0.28:0.34:0.02 --out b.csv
    """
    app = ctx.obj
    service = app.ensemble_service
    if bool(code_path) == bool(ddp):
        raise ConfigError("give exactly one of --code and --ddp")
    if ddp:
        if block_length is None:
            raise ConfigError("--n is required with --ddp")
        code = service.build(load_ddp(ddp), block_length, method=method, seed=seed).graph
    else:
        code = _load_code(code_path)
    result = service.simulate(
        code,
        channel,
        parse_grid(grid),
        i_max,
        code_rate=code_rate,
        target_errors=target_errors,
        max_words=max_words,
        seed=seed,
        encoded=encoded,
    )
    for row in result.curve.rows():
        click.echo(", ".join(f"{k}={v:.4g}" if isinstance(v, float) else f"{k}={v}"
                             for k, v in zip(BerCurve.HEADER, row)))
    digest = _digest(ctx)
    if out:
        path = artifacts.write_csv(_target(app, out), BerCurve.HEADER, result.curve.rows(), seed, digest)
        click.echo(f"error rates written to {path}")
    if histogram and service.config.record_histograms:
        artifacts.write_csv(
            _target(app, histogram), ("param", "iterations", "words"), result.curve.histogram_rows(), seed, digest
        )


@iterdesign.command("reproduce")
@click.argument("study", type=click.Choice(sorted(STUDIES)))
@click.option("--reduced", is_flag=True, help="Smaller block lengths and word counts")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--report", type=click.Path(dir_okay=False), help="Pass/fail report CSV (default <study>.csv)")
@click.pass_context
@handle_errors
def reproduce_cmd(ctx, study, reduced, seed, report):
    """Rerun a packaged study and report pass/fail per check.

    Example:
        iterdesign reproduce table1-checks
        iterdesign reproduce fig2-desk --reduced
    """
    app = ctx.obj
    result = reproduce(study, app.ensemble_service, reduced=reduced, seed=seed)
    digest = _digest(ctx)
    for name, ok, detail in result.checks:
        click.echo(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    target = _target(app, report or f"{study}.csv")
    artifacts.write_csv(target, result.HEADER, result.rows(), seed, digest)
    for name, (header, rows) in result.tables.items():
        artifacts.write_csv(target.with_name(f"{target.stem}-{name}.csv"), header, rows, seed, digest)
    click.echo(f"report written to {target}")
    if not result.passed:
        click.echo(f"Error: runtime: study {study} has failing checks", err=True)
        ctx.exit(1)
