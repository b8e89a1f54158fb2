"""kappa-nc command-line interface.

Every command resolves its configuration (JSON file merged under flags), runs the
library calls under a PerformanceMonitor and writes self-describing reports to the
output directory. Exit codes: 0 pass, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import csv
import sys
from contextlib import contextmanager
from dataclasses import asdict
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple, Type, TypeVar

import click
from pydantic import ValidationError

from .. import __version__
from ..algebra.homology import expected_kernel_dimension, homology_report, kernel_mu_scan
from ..core.errors import (
    ChainComplexDefect,
    ConfigurationError,
    NumericalError,
    ToleranceExceededError,
)
from ..core.logging_system import ContextLogger, setup_application_logging
from ..core.performance_monitor import PerformanceMonitor
from ..geometry import grid_codec
from ..geometry.field_algebra import (
    GaussianFixtures,
    GridFunction,
    gaussian_fixtures,
    involution,
    kms_scan,
    star_product,
    twisted_trace_residual,
    untwisted_trace_residual,
)
from ..models.config import (
    GroupConfig,
    HomologyRunConfig,
    RunConfig,
    SpecdimRunConfig,
    StarRunConfig,
    ZetaRunConfig,
)
from ..models.reports import ReportEnvelope, ReportKind
from ..specfun.spectral_dimension import spectral_dimension_scan
from ..specfun.zeta import classical_limit_table, pole_table, residue_check, zeta_scan

EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_ERROR = 3

RUNTIME_BUDGETS_S = {"zeta": 60.0, "star": 120.0, "homology": 300.0, "specdim": 60.0}
RESIDUE_TOLERANCE = 1e-6

ConfigT = TypeVar("ConfigT", bound=RunConfig)


class CommandRun:
    """Resolved configuration, logger and timings of one command invocation."""

    def __init__(self, name: str, config: RunConfig):
        self.name = name
        self.config = config
        self.logger: ContextLogger = setup_application_logging(
            app_name=name,
            config=config,
            verbose=config.verbose,
        ).add_context(command=name)
        self.monitor = PerformanceMonitor()
        self.monitor.set_threshold(name, RUNTIME_BUDGETS_S[name])
        self.monitor.add_warning_callback(self._on_budget_exceeded)
        self.written: List[Path] = []

    def _on_budget_exceeded(self, suite: str, elapsed: float) -> None:
        self.logger.warning(
            "{command}: {suite} took {elapsed:.1f}s, over its budget",
            suite=suite,
            elapsed=elapsed,
        )

    def output_path(self, filename: str) -> Path:
        path = Path(self.config.output_dir) / filename
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def write_report(
        self, kind: ReportKind, filename: str, payload: Any, seed: Optional[int] = None
    ) -> Path:
        envelope = ReportEnvelope.create(
            kind=kind,
            config=self.config,
            payload=payload,
            timings=self.monitor.get_summary(),
            seed=seed,
        )
        path = envelope.write(self.output_path(filename))
        self.written.append(path)
        self.logger.info("{command}: wrote {path}", path=path)
        return path

    def finish(self) -> None:
        for path in self.written:
            click.echo(str(path))


def _resolve(
    config_cls: Type[ConfigT], config_path: Optional[Path], overrides: Dict[str, Any]
) -> ConfigT:
    try:
        return config_cls.resolve(config_path, overrides)
    except ConfigurationError as e:
        click.echo(f"Configuration error: {e}", err=True)
        sys.exit(EXIT_CONFIG_ERROR)


def _overrides(flags: Dict[str, Any]) -> Dict[str, Any]:
    """Flag values keyed by config field; unset flags and cleared switches become None."""
    overrides = {key: (None if value is False else value) for key, value in flags.items()}
    if "lam" in overrides:
        overrides["lambda"] = overrides.pop("lam")
    return overrides


@contextmanager
def _exit_codes(run: CommandRun) -> Iterator[None]:
    """Translate library errors into the CLI exit codes."""
    try:
        with run.monitor.measure(run.name):
            yield
    except (ConfigurationError, ValidationError) as e:
        run.logger.error("{command}: Configuration error: {error}", error=e)
        sys.exit(EXIT_CONFIG_ERROR)
    except (NumericalError, ChainComplexDefect) as e:
        report = run.logger.exception if run.config.verbose else run.logger.error
        report("{command}: {kind}: {error}", kind=type(e).__name__, error=e)
        sys.exit(EXIT_NUMERICAL_ERROR)


def common_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """--config, --output-dir and --verbose, shared by all commands."""
    func = click.option("--verbose", "-v", is_flag=True,
                        help="Enable verbose logging")(func)
    func = click.option("--output-dir", "-o", type=click.Path(path_type=Path),
                        help="Directory for reports")(func)
    func = click.option("--config", "config_path", type=click.Path(path_type=Path),
                        help="JSON configuration file; flags take precedence")(func)
    return func


@click.group()
@click.version_option(__version__, prog_name="kappa-nc")
def main() -> None:
    """kappa-nc - κ-Minkowski noncommutative geometry toolkit.

    Examples:
        kappa-nc zeta --n 2 --lambda 0.5 --mu 1 --line 4+0i:8+0i:17
        kappa-nc star --n 2 --kms-scan
        kappa-nc homology --n 2 --d 3 --mu-scan
        kappa-nc specdim --n 3 --t 1
    """


# zeta ---------------------------------------------------------------------


def _write_scan_csv(run: CommandRun, config: ZetaRunConfig) -> Path:
    samples = zeta_scan(config.omega, config.z_line().points(), config.context())
    path = run.output_path("zeta_scan.csv")
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["re_z", "im_z", "re_zeta", "im_zeta", "err"])
        for sample in samples:
            writer.writerow([
                repr(sample.z.real),
                repr(sample.z.imag),
                repr(sample.value.real),
                repr(sample.value.imag),
                repr(sample.error),
            ])
    run.written.append(path)
    run.logger.info(
        "{command}: wrote {count} zeta samples to {path}", count=len(samples), path=path
    )
    return path


def _residue_payload(config: ZetaRunConfig) -> Dict[str, Any]:
    """Residue checks at every tabulated pole, with a half-radius rerun as a simplicity test."""
    ctx = config.context()
    checks = []
    failures: Dict[str, float] = {}
    for record in pole_table(ctx, config.omega):
        full = residue_check(
            record.location, ctx, config.omega, config.residue_radius, config.residue_points
        )
        half = residue_check(
            record.location, ctx, config.omega, config.residue_radius / 2, config.residue_points
        )
        scale = abs(full.analytic) or 1.0
        radius_agreement = abs(full.numeric - half.numeric) / scale
        simple = radius_agreement <= RESIDUE_TOLERANCE
        checks.append({
            "location": record.location.real,
            "origin": record.origin.value,
            "analytic": full.analytic,
            "numeric": full.numeric,
            "relative_error": full.relative_error,
            "radius_agreement": radius_agreement,
            "simple": simple,
        })
        if full.relative_error > RESIDUE_TOLERANCE:
            failures[f"residue@{record.location.real:g}"] = full.relative_error
        if not simple:
            failures[f"simple@{record.location.real:g}"] = radius_agreement
    return {"tolerance": RESIDUE_TOLERANCE, "checks": checks, "failures": failures}


def _classical_limit_payload(config: ZetaRunConfig) -> Dict[str, Any]:
    table = classical_limit_table(config.context())
    payload = asdict(table)
    payload["min_ratio"] = table.min_ratio
    return payload


@main.command()
@common_options
@click.option("--n", type=int, help="Spacetime dimension")
@click.option("--lambda", "lam", type=float, help="Deformation length lambda > 0")
@click.option("--mu", type=float, help="Mass regulator (nonzero)")
@click.option("--t", type=float, help="Weight exponent")
@click.option("--omega", type=float, help="Weight value omega(f)")
@click.option("--line", help="z-scan line 'start:end:count', e.g. 4+0i:8+0i:17")
@click.option("--poles", "poles_only", is_flag=True, help="Only write the pole table")
@click.option("--residue", "residue_only", is_flag=True,
              help="Only write the residue checks")
def zeta(config_path: Optional[Path], **flags: Any) -> None:
    """Weighted spectral zeta function: scan, poles, residues and classical limit."""
    config = _resolve(ZetaRunConfig, config_path, _overrides(flags))
    run = CommandRun("zeta", config)
    everything = not (config.poles_only or config.residue_only)

    with _exit_codes(run):
        if everything:
            with run.monitor.measure("zeta.scan"):
                _write_scan_csv(run, config)
        if everything or config.poles_only:
            with run.monitor.measure("zeta.poles"):
                records = pole_table(config.context(), config.omega)
            run.write_report(ReportKind.ZETA_POLES, "poles.json",
                             [record.to_dict() for record in records])
        residues: Dict[str, Any] = {}
        if everything or config.residue_only:
            with run.monitor.measure("zeta.residues"):
                residues = _residue_payload(config)
            run.write_report(ReportKind.ZETA_RESIDUES, "residues.json", residues)
        if everything:
            with run.monitor.measure("zeta.classical_limit"):
                limit = _classical_limit_payload(config)
            run.write_report(ReportKind.ZETA_CLASSICAL_LIMIT, "classical_limit.json", limit)
        run.finish()
        if residues.get("failures"):
            raise ToleranceExceededError(residues["failures"])


# star ---------------------------------------------------------------------


def _pointwise(f: GridFunction, g: GridFunction) -> GridFunction:
    return f.with_samples(f.samples * g.samples, f.band_limit + g.band_limit)


def _star_residuals(
    fixtures: GaussianFixtures, run: CommandRun
) -> Tuple[Dict[str, float], float]:
    """Residuals that must vanish, plus the untwisted trace defect."""
    f, g, h = fixtures.f, fixtures.g, fixtures.h
    residuals: Dict[str, float] = {}
    with run.monitor.measure("star.associativity"):
        left = star_product(star_product(f, g), h)
        right = star_product(f, star_product(g, h))
        residuals["associativity"] = left.sup_distance(right)
    with run.monitor.measure("star.involution"):
        fg = star_product(f, g)
        residuals["involution_antimultiplicative"] = involution(fg).sup_distance(
            star_product(involution(g), involution(f))
        )
        residuals["involutivity"] = involution(involution(f)).sup_distance(f)
    with run.monitor.measure("star.twisted_trace"):
        residuals["twisted_trace"] = twisted_trace_residual(f, g)
        untwisted = untwisted_trace_residual(f, g)
    return residuals, untwisted


def _commutative_residuals(config: StarRunConfig, run: CommandRun) -> Dict[str, float]:
    """λ = 0 on the same grid and seed: the star product is the pointwise product."""
    cfg = GroupConfig(n=config.n, lam=0.0)
    fixtures = gaussian_fixtures(cfg, config.resolved_grid(), config.seed)
    f, g = fixtures.f, fixtures.g
    with run.monitor.measure("star.commutative"):
        product = star_product(f, g)
        return {
            "commutative_reduction": product.sup_distance(_pointwise(f, g)),
            "commutativity": product.sup_distance(star_product(g, f)),
        }


@main.command()
@common_options
@click.option("--n", type=int, help="Spacetime dimension (2 or 3)")
@click.option("--lambda", "lam", type=float, help="Deformation length lambda >= 0")
@click.option("--seed", type=int, help="Fixture seed")
@click.option("--tolerance", type=float, help="Largest accepted residual")
@click.option("--kms-scan", is_flag=True, help="Scan the twist power s = 0..n")
@click.option("--save-fixtures", is_flag=True,
              help="Write the fixtures as .kncg grid files")
def star(config_path: Optional[Path], **flags: Any) -> None:
    """Star-product suites: associativity, involution, twisted trace and λ = 0 reduction."""
    config = _resolve(StarRunConfig, config_path, _overrides(flags))
    run = CommandRun("star", config)

    with _exit_codes(run):
        cfg = config.group()
        with run.monitor.measure("star.fixtures"):
            fixtures = gaussian_fixtures(cfg, config.resolved_grid(), config.seed)
        if config.save_fixtures:
            for name in ("f", "g", "h"):
                path = grid_codec.save(getattr(fixtures, name), run.output_path(f"{name}.kncg"))
                run.written.append(path)

        checked, untwisted = _star_residuals(fixtures, run)
        checked.update(_commutative_residuals(config, run))
        failures: Dict[str, float] = {
            name: value for name, value in checked.items() if value > config.tolerance
        }
        if not cfg.is_commutative:
            run.logger.info(
                "{command}: untwisted trace residual {value:.3e} (floor {floor:.1e})",
                value=untwisted,
                floor=config.noncommutativity_floor,
            )
            if untwisted < config.noncommutativity_floor:
                failures["untwisted_trace_floor"] = untwisted

        payload: Dict[str, Any] = {
            "tolerance": config.tolerance,
            "residuals": {**checked, "untwisted_trace": untwisted},
            "fixtures": fixtures.parameters,
        }
        if config.kms_scan and not cfg.is_commutative:
            with run.monitor.measure("star.kms_scan"):
                scan = kms_scan(fixtures.f, fixtures.g)
            best = min(scan, key=scan.__getitem__)
            payload["kms_scan"] = {
                "residuals": {f"{s:g}": r for s, r in scan.items()},
                "minimum_at": best,
                "expected": float(cfg.n - 1),
            }
            if best != cfg.n - 1:
                failures["kms_scan_minimum"] = best

        payload["failures"] = failures
        run.write_report(ReportKind.STAR_SUITE, "star_report.json", payload, seed=config.seed)
        run.finish()
        if failures:
            raise ToleranceExceededError(failures)


# homology -----------------------------------------------------------------


@main.command()
@common_options
@click.option("--n", type=int, help="Number of generators")
@click.option("--d", type=int, help="Total PBW degree bound")
@click.option("--lambda", "lam", help="Rational lambda > 0, e.g. 1 or 3/2")
@click.option("--mu", help="Rational mu or a multiple of lambda, e.g. -3lambda")
@click.option("--mu-scan", is_flag=True, help="Scan the resonant mu values")
@click.option("--mu-list", multiple=True, help="mu value to scan (repeatable)")
def homology(config_path: Optional[Path], **flags: Any) -> None:
    """Twisted Chevalley-Eilenberg complex of the enveloping algebra: ranks and top kernel."""
    flags["mu_list"] = list(flags["mu_list"]) or None
    config = _resolve(HomologyRunConfig, config_path, _overrides(flags))
    run = CommandRun("homology", config)

    with _exit_codes(run):
        params = config.params()
        with run.monitor.measure("homology.report"):
            report = homology_report(params)
        payload: Dict[str, Any] = report.to_dict()
        run.logger.info(
            "{command}: n={n} d={d} mu={mu}: top kernel dimension {dim}",
            n=params.n, d=params.d, mu=params.mu, dim=len(report.top_kernel_basis),
        )

        if config.mu_scan or config.mu_list:
            with run.monitor.measure("homology.mu_scan"):
                dims = kernel_mu_scan(params.n, params.d, params.lam, config.scan_values())
            payload["mu_scan"] = [
                {
                    "mu": str(mu),
                    "mu_over_lambda": str(mu / params.lam),
                    "kernel_dim": dim,
                    "expected": expected_kernel_dimension(params.n, params.d, params.lam, mu),
                }
                for mu, dim in dims.items()
            ]
        run.write_report(ReportKind.HOMOLOGY, "homology.json", payload)
        run.finish()


# specdim ------------------------------------------------------------------


@main.command()
@common_options
@click.option("--n", type=int, help="Spacetime dimension")
@click.option("--lambda", "lam", type=float, help="Deformation length lambda > 0")
@click.option("--mu", type=float, help="Mass regulator (nonzero)")
@click.option("--t", type=float, help="Weight exponent")
def specdim(config_path: Optional[Path], **flags: Any) -> None:
    """Summability threshold of the weighted trace, expected at n - 1 + t."""
    config = _resolve(SpecdimRunConfig, config_path, _overrides(flags))
    run = CommandRun("specdim", config)

    with _exit_codes(run):
        with run.monitor.measure("specdim.scan"):
            result = spectral_dimension_scan(
                config.context(), r2_threshold=config.r2_threshold
            )
        run.write_report(ReportKind.SPECTRAL_DIMENSION, "specdim.json", result.to_dict())
        run.finish()


if __name__ == "__main__":
    main()
