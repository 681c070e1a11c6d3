from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import click
import structlog

from app.core.config import Settings, get_settings
from app.core.container import AppContainer
from app.core.errors import KernelError, ParseError, TraceRejected
from app.core.logging import setup_logging
from app.domain.enums import ExitCode
from app.domain.propositions import Atom
from app.domain.records import Record
from app.services.decoherence.measurement_service import MAX_SEED, outcome_record
from app.services.exports.export_service import ExportService
from app.services.kernel.kernel_service import KernelService, VerifiedTrace
from app.services.parser.formula_parser import TokenKind, parse_degree, parse_proposition
from app.services.semantics.amplitudes import state_records

logger = structlog.get_logger(__name__)

SCRIPT = click.Path(exists=True, dir_okay=False, readable=True, path_type=Path)
SEED = click.IntRange(min=0, max=MAX_SEED - 1)


@dataclass(slots=True)
class CliState:
    settings: Settings
    kernel: KernelService
    exports: ExportService

    def emit(self, records: list[Record]) -> None:
        click.echo(self.exports.render(records), nl=False)


class KernelGroup(click.Group):
    def main(self, *args: Any, **kwargs: Any) -> Any:
        standalone = kwargs.pop("standalone_mode", True)
        try:
            result = super().main(*args, standalone_mode=False, **kwargs)
        except click.ClickException as exc:
            exc.show()
            code = int(ExitCode.SYNTAX)
        except click.Abort:
            click.echo("Aborted!", err=True)
            code = int(ExitCode.SYNTAX)
        except KernelError as exc:
            logger.info("cli.command_failed", error=type(exc).__name__, exit_code=int(exc.exit_code))
            click.echo(f"error: {exc}", err=True)
            code = int(exc.exit_code)
        else:
            code = int(result) if isinstance(result, int) else int(ExitCode.OK)
        if standalone:
            sys.exit(code)
        return code


@click.group(cls=KernelGroup)
@click.option("--json", "json_output", is_flag=True, help="One JSON record per line instead of text.")
@click.option("--log-level", default=None, help="Log level for stderr diagnostics.")
@click.pass_context
def cli(ctx: click.Context, json_output: bool, log_level: str | None) -> None:
    """Quantum metalanguage kernel."""
    settings = get_settings()
    setup_logging(log_level or settings.log_level, settings.json_logs)
    container = AppContainer(settings=settings)
    ctx.obj = CliState(
        settings=settings,
        kernel=container.create_kernel_service(),
        exports=container.create_export_service(json_output=json_output),
    )


@cli.command()
@click.argument("script", type=SCRIPT)
@click.pass_obj
def check(state: CliState, script: Path) -> int:
    """Check every statement of SCRIPT."""
    report = state.kernel.check(script.read_bytes())
    state.emit([*report.statements, report.summary])
    return int(report.exit_code)


@cli.command()
@click.argument("script", type=SCRIPT)
@click.option("--label", default=None, help="Statement to interpret (default: the last one with a state).")
@click.option("--basis-order", default=None, help="Atom order for the printed state, e.g. 'p1 p0'.")
@click.pass_obj
def interpret(state: CliState, script: Path, label: str | None, basis_order: str | None) -> int:
    """Print the qubit state and truth profile of a statement in SCRIPT."""
    qubits = state.kernel.interpret(
        script.read_bytes(),
        label=label,
        basis_order=_split_order(basis_order),
    )
    state.emit(list(state_records(qubits)))
    return int(ExitCode.OK)


@cli.command()
@click.argument("script", type=SCRIPT)
@click.option("--trials", type=click.IntRange(min=1), default=None, help="Number of measurements.")
@click.option("--seed", type=SEED, default=None, help="64-bit seed of the random stream.")
@click.option("--label", default=None)
@click.option("--basis-order", default=None)
@click.pass_obj
def measure(
    state: CliState,
    script: Path,
    trials: int | None,
    seed: int | None,
    label: str | None,
    basis_order: str | None,
) -> int:
    """Measure a statement of SCRIPT and print outcome frequencies."""
    source = script.read_bytes()
    trials = state.settings.default_trials if trials is None else trials
    seed = state.settings.default_seed if seed is None else seed
    order = _split_order(basis_order)
    if trials == 1:
        outcome = state.kernel.measure_once(source, seed=seed, label=label, basis_order=order)
        state.emit([outcome_record(outcome, seed)])
        return int(ExitCode.OK)
    statistics = state.kernel.measure(source, trials=trials, seed=seed, label=label, basis_order=order)
    state.emit([statistics.header(), *statistics.records()])
    return int(ExitCode.OK)


@cli.group()
def derive() -> None:
    """Derive a definitional equation step by step."""


@derive.command()
@click.argument("a")
@click.argument("b")
@click.pass_obj
def classical(state: CliState, a: str, b: str) -> int:
    """Derive the equation of the classical conjunction of atoms A and B."""
    return _emit_trace(state, state.kernel.derive_classical(_atom(a), _atom(b)))


@derive.command(context_settings={"ignore_unknown_options": True})
@click.argument("degrees", nargs=-1, required=True)
@click.pass_obj
def quantum(state: CliState, degrees: tuple[str, ...]) -> int:
    """Derive the equation of the superposition with the given DEGREES."""
    if len(degrees) < 2:
        msg = "derive quantum needs at least two degrees"
        raise click.UsageError(msg)
    return _emit_trace(state, state.kernel.derive_quantum([parse_degree(text) for text in degrees]))


@cli.command()
@click.option("--degree", "degree_text", required=True, help="Degree of the asserted Goedel sentence.")
@click.pass_obj
def goedel(state: CliState, degree_text: str) -> int:
    """Report the graded assertion of the Goedel sentence."""
    state.emit([state.kernel.goedel(parse_degree(degree_text))])
    return int(ExitCode.OK)


def _emit_trace(state: CliState, result: VerifiedTrace) -> int:
    state.emit([result.trace.to_record(result.verified)])
    if not result.verified:
        details = "; ".join(f"line {issue.line}: {issue.message}" for issue in result.issues)
        msg = f"Trace rejected: {details}"
        raise TraceRejected(msg)
    return int(ExitCode.OK)


def _atom(text: str) -> str:
    proposition = parse_proposition(text)
    if not isinstance(proposition, Atom):
        msg = f"Expected an atom, got {text!r}"
        raise ParseError(msg, 0, {TokenKind.IDENT.value})
    return proposition.name


def _split_order(raw: str | None) -> list[str] | None:
    if raw is None:
        return None
    return raw.replace(",", " ").split()


def run(argv: list[str] | None = None) -> int:
    code: int = cli.main(args=argv, prog_name="qmeta", standalone_mode=False)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
