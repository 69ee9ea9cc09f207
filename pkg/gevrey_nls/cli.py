import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
from rich.console import Console
from rich.table import Table

from gevrey_nls import __version__
from gevrey_nls.config import runtime
from gevrey_nls.config.autotune import apply_runtime_autotune
from gevrey_nls.config.experiment import (
    ExperimentConfig,
    apply_overrides,
    load_config,
    serialize_config,
)
from gevrey_nls.core.errors import GevreyNlsError
from gevrey_nls.core.trajectory import IntegratorMethod
from gevrey_nls.state import format_history_list, get_run_logger, setup_logging
from gevrey_nls.system_artifacts import ArtifactsLayout
from gevrey_nls.system_info import get_system_display_name, get_system_info, library_versions
from gevrey_nls.workflows import (
    ExperimentError,
    ExperimentExecutionResult,
    build_experiment_reference,
    load_builtin_experiments,
    registry as experiment_registry,
)

app = typer.Typer(help="Radius-of-analyticity experiments for the defocusing NLS", no_args_is_help=True)
console = Console()
logger = logging.getLogger("gevrey_nls.cli")

# Host-based env defaults, then profiles re-read and experiments registered.
try:
    _AUTOTUNED = apply_runtime_autotune()
except OSError:
    _AUTOTUNED = {}
runtime.reload_profiles()
load_builtin_experiments()

_SUMMARY_KEYS = (
    "alpha",
    "sigma_T",
    "schedule_constant",
    "induction_violations",
    "slope",
    "A0_drift",
    "bound_violations",
)


@app.callback()
def show_system_info(ctx: typer.Context):
    """Print the host before each command."""
    if ctx.invoked_subcommand:
        typer.secho(f"gevrey-nls {__version__} on {get_system_display_name()}", dim=True)


def _summary_table(result: ExperimentExecutionResult, written: Dict[str, List[Path]]) -> Table:
    table = Table(title=f"{result.spec.name} summary")
    table.add_column("item", style="cyan")
    table.add_column("value", style="white")
    primary = result.primary
    table.add_row("rows", str(len(primary)))
    for key in _SUMMARY_KEYS:
        if key in primary.metadata:
            table.add_row(key, str(primary.metadata[key]))
    for key, value in primary.metadata.items():
        if key.startswith("growth."):
            table.add_row(key, f"{value:.4f}")
    for path in written["csv"] + written["plots"]:
        table.add_row("wrote", str(path))
    return table


def _fail(message: str, cfg: Optional[ExperimentConfig] = None) -> None:
    typer.secho(f"❌ {message}", fg=typer.colors.RED, err=True)
    if cfg is not None:
        get_run_logger().log_run(cfg.experiment, serialize_config(cfg), [], status="error",
                                 metadata={"error": message})
    raise typer.Exit(code=1)


@app.command()
def run(
    config: Path = typer.Option(..., "--config", "-c", help="Config file with key = value lines"),
    dim: Optional[int] = typer.Option(None, "--dim", help="Spatial dimension (1 or 2)"),
    n: Optional[int] = typer.Option(None, "--n", help="Grid points per axis (power of two)"),
    box_len: Optional[float] = typer.Option(None, "--box-len", help="Period of the box"),
    p: Optional[int] = typer.Option(None, "--p", help="Odd nonlinearity power"),
    sigma0: Optional[float] = typer.Option(None, "--sigma0", help="Initial strip half-width"),
    T: Optional[float] = typer.Option(None, "--T", help="Final time"),
    dt: Optional[float] = typer.Option(None, "--dt", help="Time step"),
    method: Optional[IntegratorMethod] = typer.Option(None, "--method", help="Integrator"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Base random seed"),
    out: Optional[Path] = typer.Option(None, "--out", help="Output directory"),
    workers: Optional[int] = typer.Option(
        None, "--workers", envvar="GEVREY_NLS_WORKERS", help="Parallel trials"
    ),
    plots: bool = typer.Option(True, "--plots/--no-plots", help="Emit gnuplot scripts"),
):
    """
    Run one experiment.

    Examples:
        gevrey-nls run -c radius.cfg
        gevrey-nls run -c conservation.cfg --sigma0 0.2 --out results/cons
        gevrey-nls run -c suite.cfg --n 64 --seed 7 --workers 4
    """
    cfg: Optional[ExperimentConfig] = None
    try:
        cfg = load_config(config)
        cfg = apply_overrides(
            cfg,
            dim=dim,
            n=n,
            box_len=box_len,
            p=p,
            sigma0=sigma0,
            T=T,
            dt=dt,
            method=method.value if method is not None else None,
            seed=seed,
            out_dir=str(out) if out is not None else None,
            workers=workers,
        )
    except GevreyNlsError as exc:
        _fail(str(exc))

    setup_logging(cfg.log_level)
    typer.secho(f"🧪 Running {cfg.experiment} ({cfg.data_profile}, n={cfg.n}, p={cfg.p})",
                fg=typer.colors.CYAN, bold=True)

    try:
        result = experiment_registry.execute(cfg)
        layout = ArtifactsLayout(cfg.out_dir)
        config_path = layout.write_config(serialize_config(cfg))
        written = layout.write_tables(result.tables, plots=plots)
    except (GevreyNlsError, ExperimentError) as exc:
        _fail(f"{cfg.experiment} failed: {exc}", cfg)

    outputs = [str(path) for path in [config_path, *written["csv"], *written["plots"]]]
    summary: Dict[str, Any] = {"rows": len(result.primary)}
    summary.update({key: result.primary.metadata[key] for key in _SUMMARY_KEYS
                    if key in result.primary.metadata})
    get_run_logger().log_run(cfg.experiment, serialize_config(cfg), outputs, metadata=summary)

    console.print(_summary_table(result, written))
    typer.secho(f"✅ Results in {layout.out_dir}", fg=typer.colors.GREEN)


@app.command()
def experiments():
    """List registered experiments and their CSV columns."""
    typer.echo(build_experiment_reference())


@app.command()
def history(
    limit: int = typer.Option(10, "--limit", "-n", help="Number of entries to show"),
    experiment: Optional[str] = typer.Option(None, "--experiment", "-e", help="Filter by experiment"),
    stats: bool = typer.Option(False, "--stats", help="Show statistics about the run history"),
    clear: bool = typer.Option(False, "--clear", help="Delete the run history"),
):
    """
    View the run history (last 100 runs stored).

    Examples:
        gevrey-nls history               - Show last 10 runs
        gevrey-nls history -e conservation
        gevrey-nls history --clear
    """
    run_logger = get_run_logger()
    if clear:
        run_logger.clear_history()
        typer.secho("🧹 Run history cleared", fg=typer.colors.YELLOW)
        return

    if stats:
        data = run_logger.get_stats()
        typer.secho("📊 Run History Statistics", fg=typer.colors.CYAN, bold=True)
        typer.echo("=" * 80)
        typer.echo(f"Total runs logged: {data['total_runs']}/{data['max_entries']}")
        for name, count in data["experiments"].items():
            typer.echo(f"  {name}: {count}")
        if data["newest_entry"]:
            typer.echo(f"Newest entry: {data['newest_entry']}")
        return

    entries = run_logger.get_history(limit=limit, experiment=experiment)
    typer.echo(format_history_list(entries))


@app.command()
def info():
    """Show host, library versions and the active numeric profile."""
    table = Table(title="gevrey-nls environment")
    table.add_column("item", style="cyan")
    table.add_column("value")
    table.add_row("version", __version__)
    for key, value in get_system_info().items():
        table.add_row(key, value)
    for name, version in library_versions().items():
        table.add_row(name, version)
    for key, value in runtime.NUMERICS.as_dict().items():
        table.add_row(f"numerics.{key}", str(value))
    for key, value in _AUTOTUNED.items():
        table.add_row(f"autotune.{key}", value)
    console.print(table)


if __name__ == "__main__":
    app()
