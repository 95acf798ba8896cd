"""
Fractional DFT Toolkit - Command Line Interface

This module is the entry point of the toolkit. It loads the configuration,
builds the components and exposes them as commands:

- transform: apply F(alpha) to a signal file
- matrix:    write the closed-form F(alpha) as j,k,re,im rows
- sweep:     concentration of a signal across rotation angles
- verify:    seeded property verification suite
- bench:     apply/matrix path timing and log-log slopes
- generate:  tone, chirp or delta signal files
- rootsum:   quadratic exponential sums S_k and sigma

Exit status: 0 success, 1 verification failure, 2 parse/usage,
3 conditioning, 4 resource cap.
"""

import logging
import math
import sys
from functools import wraps
from typing import List, Optional

import click

from config import init_config
from frdft.modules.benchmark_runner import MIN_BENCH_REPEATS, BenchmarkRunner
from frdft.modules.chirp_lab import ChirpLab, default_grid, make_chirp, make_delta, make_tone, uniform_grid
from frdft.modules.dft_engine import DFTEngine
from frdft.modules.errors import FrdftError, ResourceCapError, VerificationError
from frdft.modules.fractional_transform import MODES, RAW, FractionalTransform, root_sum, sigma
from frdft.modules.report_generator import ReportGenerator
from frdft.modules.signal_io import SignalFileManager
from frdft.modules.verification_suite import NORMALIZATION_FAULT_FACTOR, VerificationSuite

logger = logging.getLogger(__name__)

STDOUT = '-'


class AngleParamType(click.ParamType):
    """Radians, or degrees with a 'deg:' prefix."""
    name = 'angle'

    def convert(self, value, param, ctx):
        if isinstance(value, float):
            return value
        text = str(value).strip()
        try:
            if text.lower().startswith('deg:'):
                angle = math.radians(float(text[4:]))
            else:
                angle = float(text)
        except ValueError:
            self.fail(f"{value!r} is not an angle (radians, or 'deg:<degrees>')", param, ctx)
        if not math.isfinite(angle):
            self.fail(f"{value!r} is not finite", param, ctx)
        return angle


class GridParamType(click.ParamType):
    """'start:stop:count' in radians (each bound may carry a 'deg:' prefix)."""
    name = 'grid'

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        parts = str(value).split(':')
        if len(parts) == 5 and parts[0].lower() == 'deg' and parts[2].lower() == 'deg':
            parts = [f'deg:{parts[1]}', f'deg:{parts[3]}', parts[4]]
        if len(parts) != 3:
            self.fail(f"{value!r} is not 'start:stop:count'", param, ctx)
        try:
            start = ANGLE.convert(parts[0], param, ctx)
            stop = ANGLE.convert(parts[1], param, ctx)
            count = int(parts[2])
            return uniform_grid(start, stop, count)
        except (ValueError, FrdftError) as e:
            self.fail(f"invalid grid {value!r}: {e}", param, ctx)


class SizeListParamType(click.ParamType):
    """Comma-separated integers."""
    name = 'sizes'

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        text = str(value).strip()
        if not text:
            return []
        try:
            return [int(part) for part in text.split(',') if part.strip()]
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated list of integers", param, ctx)


ANGLE = AngleParamType()
GRID = GridParamType()
SIZES = SizeListParamType()


def handle_errors(f):
    """Decorator mapping toolkit errors to their exit status"""
    @wraps(f)
    def decorated_function(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return f(*args, **kwargs)
        except FrdftError as e:
            logger.error(f"{ctx.command.name} failed: {e}")
            click.echo(f"Error: {e}", err=True)
            ctx.exit(e.exit_code)
        except MemoryError:
            logger.error(f"{ctx.command.name} ran out of memory")
            click.echo("Error: not enough memory for this input size", err=True)
            ctx.exit(ResourceCapError.exit_code)
    return decorated_function


def _emit(content: str, output: str, label: str) -> None:
    if output == STDOUT:
        click.echo(content, nl=False)
    else:
        click.get_current_context().obj['reports'].write_text(content, output, label)


@click.group()
@click.option('--env', 'config_name', type=click.Choice(['development', 'testing', 'production', 'default']),
              default=None, help='Configuration profile (default: FRFT_ENV or development).')
@click.version_option(version='1.0.0', prog_name='frdft')
@click.pass_context
def cli(ctx, config_name):
    """Fractional DFT toolkit."""
    try:
        settings = init_config(config_name)
    except FrdftError as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(e.exit_code)

    transform = FractionalTransform.from_settings(settings)
    ctx.obj = {
        'settings': settings,
        'transform': transform,
        'signals': SignalFileManager(settings.csv_significant_digits),
        'reports': ReportGenerator(settings.csv_significant_digits),
    }


@cli.command()
@click.argument('input_path', type=click.Path(dir_okay=False))
@click.argument('output_path', type=click.Path(dir_okay=False))
@click.option('--alpha', type=ANGLE, required=True, help="Rotation angle (radians, or 'deg:<degrees>').")
@click.option('--mode', type=click.Choice(MODES), default=RAW, show_default=True)
@click.pass_context
@handle_errors
def transform(ctx, input_path, output_path, alpha, mode):
    """Apply F(alpha) to INPUT_PATH and write OUTPUT_PATH."""
    signals: SignalFileManager = ctx.obj['signals']
    x = signals.read_signal(input_path)
    y = ctx.obj['transform'].apply(x, alpha, mode=mode)
    if output_path == STDOUT:
        click.echo(signals.format_signal(y), nl=False)
    else:
        signals.write_signal(y, output_path)
    logger.info(f"Transformed {x.shape[0]} samples at alpha={alpha!r} ({mode})")


@cli.command()
@click.argument('n', type=int)
@click.argument('output_path', type=click.Path(dir_okay=False))
@click.option('--alpha', type=ANGLE, required=True, help="Rotation angle (radians, or 'deg:<degrees>').")
@click.pass_context
@handle_errors
def matrix(ctx, n, output_path, alpha):
    """Write the closed-form F(alpha) of size N as j,k,re,im rows."""
    m = ctx.obj['transform'].matrix(n, alpha)
    _emit(ctx.obj['reports'].matrix_csv(m), output_path, 'Matrix')


@cli.command()
@click.argument('input_path', type=click.Path(dir_okay=False))
@click.argument('output_path', type=click.Path(dir_okay=False))
@click.option('--grid', 'grid', type=GRID, default=None,
              help="'start:stop:count' in radians (default: the configured 181-point grid).")
@click.option('--window', '-w', type=int, default=None, help='Concentration window in bins.')
@click.pass_context
@handle_errors
def sweep(ctx, input_path, output_path, grid, window):
    """Concentration of INPUT_PATH across rotation angles."""
    settings = ctx.obj['settings']
    x = ctx.obj['signals'].read_signal(input_path)
    lab = ChirpLab.from_settings(settings, transform=ctx.obj['transform'])
    result = lab.localization_sweep(
        x,
        grid if grid is not None else default_grid(settings),
        window if window is not None else settings.concentration_window,
    )
    _emit(ctx.obj['reports'].sweep_csv(result), output_path, 'Sweep')


@cli.command()
@click.option('--max-n', type=int, default=None, help='Largest signal length exercised.')
@click.option('--seed', type=int, default=None, help='Random seed.')
@click.option('--json', 'as_json', is_flag=True, help='Emit the report as JSON.')
@click.option('--inject-fault', type=click.Choice(['normalization']), default=None, hidden=True)
@click.pass_context
@handle_errors
def verify(ctx, max_n, seed, as_json, inject_fault):
    """Run the property verification suite."""
    settings = ctx.obj['settings']
    transform = ctx.obj['transform']
    if inject_fault == 'normalization':
        transform = FractionalTransform.from_settings(
            settings, engine=DFTEngine(normalization_fault=NORMALIZATION_FAULT_FACTOR))

    suite = VerificationSuite.from_settings(settings, transform=transform)
    report = suite.run(max_n=max_n or settings.verify_max_n,
                       seed=settings.verify_seed if seed is None else seed)

    reports: ReportGenerator = ctx.obj['reports']
    click.echo(reports.verification_json(report) if as_json else reports.verification_text(report), nl=False)

    if not report.passed:
        failures = '; '.join(f"{p.name} (worst {p.worst:.3e}, tol {p.tolerance:.1e})" for p in report.failures)
        raise VerificationError(f"verification failed: {failures}")


@cli.command()
@click.option('--sizes', type=SIZES, default=None,
              help='Comma-separated powers of two (default: 4096..262144).')
@click.option('--matrix-sizes', type=SIZES, default=None,
              help='Extra powers of two timed on the matrix path only (default: 256,512,1024).')
@click.option('--repeats', type=click.IntRange(min=MIN_BENCH_REPEATS), default=None,
              help='Timed runs per size, at least 5 (median reported).')
@click.option('--output', 'output_path', type=click.Path(dir_okay=False), default=STDOUT, show_default=True)
@click.pass_context
@handle_errors
def bench(ctx, sizes, matrix_sizes, repeats, output_path):
    """Time the apply and matrix paths."""
    settings = ctx.obj['settings']
    runner = BenchmarkRunner.from_settings(settings, transform=ctx.obj['transform'], repeats=repeats)
    report = runner.run(list(settings.bench_sizes) if sizes is None else sizes, matrix_sizes)
    _emit(ctx.obj['reports'].bench_csv(report.records, report.header()), output_path, 'Benchmark')


@cli.command()
@click.argument('kind', type=click.Choice(['tone', 'chirp', 'delta']))
@click.argument('n', type=int)
@click.argument('output_path', type=click.Path(dir_okay=False))
@click.option('--f0', type=float, default=0.0, show_default=True, help='Tone frequency, cycles per record.')
@click.option('--q', type=float, default=0.0, show_default=True, help='Chirp rate.')
@click.option('--position', type=int, default=0, show_default=True, help='Delta position.')
@click.pass_context
@handle_errors
def generate(ctx, kind, n, output_path, f0, q, position):
    """Write a tone, chirp or delta signal of length N."""
    if kind == 'tone':
        x = make_tone(n, f0)
    elif kind == 'chirp':
        x = make_chirp(n, f0, q)
    else:
        x = make_delta(n, position)

    signals: SignalFileManager = ctx.obj['signals']
    if output_path == STDOUT:
        click.echo(signals.format_signal(x), nl=False)
    else:
        signals.write_signal(x, output_path)


@cli.command()
@click.argument('n', type=int)
@click.option('--k-min', type=int, default=None, help='First shift (default -2N).')
@click.option('--k-max', type=int, default=None, help='Last shift (default 2N).')
@click.option('--output', 'output_path', type=click.Path(dir_okay=False), default=STDOUT, show_default=True)
@click.pass_context
@handle_errors
def rootsum(ctx, n, k_min, k_max, output_path):
    """Quadratic exponential sums S_k of length N, and sigma for even N."""
    reference = root_sum(n, 0)
    k_min = -2 * n if k_min is None else k_min
    k_max = 2 * n if k_max is None else k_max
    if k_min > k_max:
        raise click.BadParameter(f"--k-min {k_min} exceeds --k-max {k_max}")
    sums = [root_sum(n, k) for k in range(k_min, k_max + 1)]
    phase: Optional[complex] = sigma(n) if n % 2 == 0 else None
    _emit(ctx.obj['reports'].root_sum_csv(sums, reference, phase), output_path, 'Root sums')


def main(argv: Optional[List[str]] = None) -> int:
    try:
        cli.main(args=argv, prog_name='frdft', standalone_mode=True)
    except SystemExit as e:
        return int(e.code or 0)
    return 0


if __name__ == '__main__':
    sys.exit(main())
