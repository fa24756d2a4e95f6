"""CLI entry point for the opinion urn toolkit."""

import logging
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

import typer
import yaml
from pydantic import ValidationError

from . import __version__
from .config import config
from .errors import DomainError, InsufficientData, NonpositiveValues, UrnError
from .models import RunConfig

app = typer.Typer(
    name="opinion-urn",
    help="Coupled Pólya urn opinion dynamics on graphs",
    no_args_is_help=True,
)
graph_app = typer.Typer(help="Graph utilities", no_args_is_help=True)
app.add_typer(graph_app, name="graph")

logger = logging.getLogger(__name__)


def setup_logging(verbose: bool = False) -> None:
    """Configure logging."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(levelname)s: %(message)s",
    )


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        typer.echo(f"opinion-urn version {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: Optional[bool] = typer.Option(
        None,
        "--version",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit"
    )
) -> None:
    """Opinion urn - simulate and analyse coupled Pólya urns on graphs."""
    pass


def _progress(message: str) -> None:
    typer.echo(message, err=True)


@contextmanager
def _cli_errors() -> Iterator[None]:
    """Turn validation and I/O failures into exit code 1."""
    try:
        yield
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "config"
        typer.echo(f"❌ Invalid {field}: {first['msg']}", err=True)
        raise typer.Exit(1)
    except (UrnError, ValueError, yaml.YAMLError, OSError) as e:
        typer.echo(f"❌ {e}", err=True)
        raise typer.Exit(1)


def parse_floats(text: Optional[str], name: str) -> Optional[List[float]]:
    """Parse a comma-separated list of reals given on the command line."""
    if text is None:
        return None
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise DomainError(f"{name} must be a comma-separated list of numbers: {text!r}")


def parse_ints(text: Optional[str], name: str) -> Optional[List[int]]:
    """Parse a comma-separated list of integers given on the command line."""
    if text is None:
        return None
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise DomainError(f"{name} must be a comma-separated list of integers: {text!r}")


def load_run_config(config_path: Optional[Path], **overrides: Any) -> RunConfig:
    """Merge an optional YAML run file with command-line overrides."""
    base = RunConfig.from_yaml(config_path) if config_path else RunConfig()
    data = base.model_dump()
    given = {key: value for key, value in overrides.items() if value is not None}
    if "x0" in given:
        data["u0"] = None
    if "u0" in given:
        data["x0"] = None
    data.update(given)
    return RunConfig(**data)


def _config_echo(run: RunConfig, u0: List[float], g0: List[float]) -> Dict[str, Any]:
    echo = run.model_dump(mode="json")
    echo.update({"u0": u0, "g0": g0})
    return echo


GRAPH_OPTION = typer.Option(
    None, "--graph", "-g", help="Graph shorthand (path:5, cycle:8, complete:4, star:6, "
    "gnp:20:0.3:seed) or graph JSON file"
)
CONFIG_OPTION = typer.Option(None, "--config", "-c", help="YAML run configuration")
VERBOSE_OPTION = typer.Option(False, "--verbose", help="Enable verbose logging")


@app.command()
def spectrum(
    graph: Optional[str] = GRAPH_OPTION,
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="Write JSON here instead of stdout"
    ),
    config_path: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """Print the influence matrix, its eigenvalues, λ and p as JSON."""
    from .export import dumps, spectrum_summary, write_json
    from .graphs import graph_from_spec
    from .spectral import eigenbasis

    setup_logging(verbose)
    with _cli_errors():
        run = load_run_config(config_path, graph=graph, out=out)
        g = graph_from_spec(run.graph)
        summary = spectrum_summary(g, eigenbasis(g), run.graph)
        if run.out:
            write_json(summary, run.out)
            _progress(f"✅ Spectrum saved: {run.out}")
        else:
            typer.echo(dumps(summary))


@app.command()
def simulate(
    graph: Optional[str] = GRAPH_OPTION,
    x0: Optional[str] = typer.Option(None, "--x0", help="Initial opinions, e.g. 1,1,0,0,0"),
    u0: Optional[str] = typer.Option(None, "--u0", help="Initial weights on U"),
    g0: Optional[str] = typer.Option(None, "--g0", help="Total weights; one value broadcasts"),
    steps: Optional[int] = typer.Option(None, "--steps", "-t", help="Number of conversations"),
    seed: Optional[int] = typer.Option(None, "--seed", "-s", help="Seed of the trajectory"),
    samples: Optional[str] = typer.Option(
        None, "--samples", help="Comma-separated sample times (default: every step)"
    ),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="CSV path (default: stdout)"),
    config_path: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """Run one trajectory and write t, x_i, g_i as CSV."""
    from .dynamics import run_trajectory
    from .export import FLOAT_FORMAT, save_trajectory, trajectory_frame
    from .graphs import graph_from_spec

    setup_logging(verbose)
    started = time.monotonic()
    with _cli_errors():
        run = load_run_config(
            config_path,
            graph=graph,
            x0=parse_floats(x0, "--x0"),
            u0=parse_floats(u0, "--u0"),
            g0=parse_floats(g0, "--g0"),
            steps=steps,
            seed=seed,
            samples=parse_ints(samples, "--samples"),
            out=out,
        )
        g = graph_from_spec(run.graph)
        u_init, g_init = run.initial_weights(g.n_vertices)
        sample_times = run.samples if run.samples is not None else range(run.steps + 1)
        _progress(f"🎲 Simulating {run.steps} steps on {run.graph} (seed {run.seed})")
        trajectory = run_trajectory(g, u_init, g_init, run.steps, run.seed, sample_times)

        if run.out:
            sidecar = save_trajectory(
                trajectory, run.out, _config_echo(run, u_init, g_init), started
            )
            _progress(f"✅ Trajectory saved: {run.out} (metadata: {sidecar})")
        else:
            typer.echo(
                trajectory_frame(trajectory).to_csv(index=False, float_format=FLOAT_FORMAT),
                nl=False,
            )


@app.command()
def ensemble(
    graph: Optional[str] = GRAPH_OPTION,
    x0: Optional[str] = typer.Option(None, "--x0", help="Initial opinions, e.g. 1,1,0,0,0"),
    u0: Optional[str] = typer.Option(None, "--u0", help="Initial weights on U"),
    g0: Optional[str] = typer.Option(None, "--g0", help="Total weights; one value broadcasts"),
    steps: Optional[int] = typer.Option(
        None, "--steps", "-t", help="Conversations per trajectory"
    ),
    trajectories: Optional[int] = typer.Option(
        None, "--trajectories", "-n", help="Number of trajectories"
    ),
    seed: Optional[int] = typer.Option(None, "--seed", "-s", help="Base seed"),
    samples: Optional[str] = typer.Option(
        None, "--samples", help="Comma-separated sample times (default: log grid)"
    ),
    fit_window: Optional[str] = typer.Option(
        None, "--fit-window", help="t_min,t_max of the power-law fit (default 100,10000)"
    ),
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="CSV path (default: <workspace>/ensemble.csv)"
    ),
    config_path: Optional[Path] = CONFIG_OPTION,
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """Average ‖x_t - a_t 1‖² over many trajectories and fit its decay."""
    from .ensemble import convergence_report, fit_power_law, run_ensemble
    from .export import ensemble_summary, save_ensemble
    from .graphs import graph_from_spec
    from .models import EnsembleConfig
    from .spectral import eigenbasis

    setup_logging(verbose)
    started = time.monotonic()
    with _cli_errors():
        window = parse_ints(fit_window, "--fit-window")
        if window is not None and len(window) != 2:
            raise DomainError("--fit-window takes exactly two integers: t_min,t_max")
        run = load_run_config(
            config_path,
            graph=graph,
            x0=parse_floats(x0, "--x0"),
            u0=parse_floats(u0, "--u0"),
            g0=parse_floats(g0, "--g0"),
            steps=steps,
            trajectories=trajectories,
            seed=seed,
            samples=parse_ints(samples, "--samples"),
            fit_window=tuple(window) if window else None,
            out=out,
        )
        config.validate_runtime()
        g = graph_from_spec(run.graph)
        u_init, g_init = run.initial_weights(g.n_vertices)
        influence = eigenbasis(g)
        ensemble_config = EnsembleConfig(
            graph=g,
            u0=u_init,
            g0=g_init,
            n_steps=run.steps,
            n_trajectories=run.trajectories,
            base_seed=run.seed,
            sample_times=run.samples,
        )

        _progress(
            f"🎲 Ensemble of {run.trajectories} trajectories x {run.steps} steps "
            f"on {run.graph} (λ = {influence.gap:.6f})"
        )
        stats = run_ensemble(ensemble_config, influence)

        fit = None
        try:
            fit = fit_power_law(stats, run.fit_window)
            _progress(f"   Fitted exponent {fit.exponent:.6f} (r² {fit.r_squared:.4f})")
        except (InsufficientData, NonpositiveValues) as e:
            logger.warning(f"No power-law fit: {e}")

        convergence = None
        try:
            convergence = convergence_report(stats)
        except InsufficientData as e:
            logger.warning(f"No convergence report: {e}")

        path = run.out or Path(config.workspace) / "ensemble.csv"
        summary = ensemble_summary(
            g, influence, fit, convergence, _config_echo(run, u_init, g_init), run.seed, started
        )
        summary_path = save_ensemble(stats, summary, path)
        _progress(f"✅ Ensemble saved: {path} (summary: {summary_path})")


@app.command()
def verify(
    quick: bool = typer.Option(False, "--quick", "-q", help="Reduced sizes for a fast self-test"),
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """Run the invariant suite; exit 2 if any check fails."""
    from .verify import run_verification

    setup_logging(verbose)
    _progress(f"🔍 Running {'quick ' if quick else ''}verification suite")
    report = run_verification(quick=quick)
    for check in report.checks:
        icon = "✅" if check.passed else "❌"
        typer.echo(f"{icon} {check.name}: {check.detail}")

    if not report.passed:
        typer.echo(f"\n❌ Failed checks: {', '.join(report.failed)}", err=True)
        raise typer.Exit(2)
    _progress(f"\n✅ All {len(report.checks)} checks passed")


@graph_app.command("export")
def export_graph(
    graph: str = typer.Option("path:5", "--graph", "-g", help="Graph shorthand or JSON file"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="JSON path (default: stdout)"),
    verbose: bool = VERBOSE_OPTION,
) -> None:
    """Write a graph in the JSON form accepted by --graph."""
    from .export import dumps
    from .graphs import graph_from_spec, graph_to_json, save_graph

    setup_logging(verbose)
    with _cli_errors():
        g = graph_from_spec(graph)
        if out:
            save_graph(g, out)
            _progress(f"✅ Graph saved: {out} ({g.n_vertices} vertices, {g.n_edges} edges)")
        else:
            typer.echo(dumps(graph_to_json(g)))


if __name__ == "__main__":
    app()
