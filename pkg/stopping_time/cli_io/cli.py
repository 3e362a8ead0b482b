"""
This module defines the argument parser of the command line interface, turns the
YAML configuration into config objects and dispatches a parsed command line.
Command line flags override configuration values, which override the defaults.
"""

__all__ = [
    'Settings',
    'build_parser',
    'load_settings',
    'parse_seed',
    'run_command',
]
__version__ = '0.1.0'


import argparse
import logging
import sys
from pathlib import Path
from typing import NamedTuple, Optional, Tuple

from opentelemetry import trace

from core_trajectory import NonTerminationError, TrajectoryConfig
from verifier import CampaignConfig, CheckpointError, HistogramConfig
from .commands import (
    EXIT_ERROR, cmd_alpha_table, cmd_profile, cmd_prohibited, cmd_scatter, cmd_sieve,
    cmd_trajectory, cmd_verify_random, cmd_verify_range)
from .datasets import Window
from .emitter import EmitterConfig, EmitterError


class Settings(NamedTuple):
    """
    The configuration of all commands, as read from the configuration file.
    """

    trajectory: TrajectoryConfig = TrajectoryConfig()
    histogram: HistogramConfig = HistogramConfig()
    campaign: CampaignConfig = CampaignConfig()
    emitter: EmitterConfig = EmitterConfig()


def load_settings(config: Optional[dict]) -> Settings:
    """
    Builds the settings from a configuration dictionary. Missing sections
    keep their defaults, unknown keys raise a TypeError.
    """
    config = config or {}
    return Settings(
        trajectory=TrajectoryConfig(**(config.get('trajectory') or {})),
        histogram=HistogramConfig(**(config.get('histogram') or {})),
        campaign=CampaignConfig(**(config.get('campaign') or {})),
        emitter=EmitterConfig(**(config.get('emitter') or {})))


def parse_seed(text: str) -> Tuple[int, int]:
    """
    Parses a sieve seed 'n:bound'.
    """
    try:
        n, bound = text.split(':')
        return int(n), int(bound)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Expected a seed 'n:bound', got '{text}'") from e


class _ArgumentParser(argparse.ArgumentParser):
    """
    An argument parser that reports usage errors with exit code 1, as 2 is
    reserved for violations of the formula.
    """

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _add_campaign_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--workers', type=int, help='Number of worker processes.')
    parser.add_argument('--chunk', type=int, help='Numbers (or samples) per chunk.')
    parser.add_argument('--bins', type=int, help='Number of regular histogram bins.')
    parser.add_argument('--checkpoint', type=str,
                        help='Checkpoint file to resume from and to append to.')
    parser.add_argument('--fail-fast', action=argparse.BooleanOptionalAction, default=None,
                        help='Stop after the first wave with a violation.')
    parser.add_argument('--histogram', type=str, metavar='NAME',
                        help='Write the residue histogram to NAME.<format>.')


def _add_emitter_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--format', choices=['csv', 'jsonl'], help='Output format.')
    parser.add_argument('--output', type=str, help='Output directory.')


def build_parser() -> argparse.ArgumentParser:
    """
    Returns the argument parser with one subcommand per command.
    """
    parser = _ArgumentParser(
        prog='stopping-time',
        description='Verifies and explores the Collatz stopping-time formula '
                    'S = ceil(log2(6^alpha * N)).',
    )
    parser.add_argument('--config', '-c', type=Path, default='config.yml',
                        help='Config file for this tool.')
    parser.add_argument('--max-iterations', type=int,
                        help='Divergence guard: maximum number of map applications.')
    commands = parser.add_subparsers(dest='command', required=True)

    command = commands.add_parser('profile', help='Stopping-time profile of single numbers.')
    command.add_argument('n', type=int)
    command.add_argument('--format', choices=['json', 'text'], default='json')

    command = commands.add_parser('verify-range', help='Verify the formula on [start, end].')
    command.add_argument('--start', type=int, default=1)
    command.add_argument('--end', type=int, required=True)
    _add_campaign_flags(command)
    _add_emitter_flags(command)

    command = commands.add_parser('verify-random', help='Verify the formula on random numbers.')
    command.add_argument('--samples', type=int)
    command.add_argument('--max-bits', type=int)
    command.add_argument('--seed', type=int)
    _add_campaign_flags(command)
    _add_emitter_flags(command)

    command = commands.add_parser('scatter', help='Write the S(n) scatter and its curves.')
    command.add_argument('n_max', type=int)
    command.add_argument('alpha_max', type=int)
    command.add_argument('--n-range', type=int, nargs=2, metavar=('LO', 'HI'))
    command.add_argument('--s-range', type=int, nargs=2, metavar=('LO', 'HI'))
    _add_emitter_flags(command)

    command = commands.add_parser('trajectory', help='Write trajectory paths.')
    command.add_argument('n', type=int, nargs='+')
    _add_emitter_flags(command)

    command = commands.add_parser('prohibited', help='Allowed and prohibited stopping times.')
    command.add_argument('n', type=int)
    command.add_argument('bound', type=int)
    command.add_argument('--emit', action='store_true', help='Also write the table.')
    _add_emitter_flags(command)

    command = commands.add_parser('sieve', help='Propagate prohibited stopping times.')
    command.add_argument('seeds', type=parse_seed, nargs='+', metavar='N:BOUND')
    command.add_argument('--depth', type=int, default=3)
    command.add_argument('--include-direct', action=argparse.BooleanOptionalAction,
                         default=True)
    command.add_argument('--workers', type=int)
    _add_emitter_flags(command)

    command = commands.add_parser('alpha-table', help='Classes of constant alpha.')
    command.add_argument('limit', type=int)
    command.add_argument('alpha_max', type=int)
    command.add_argument('--prefix', type=int, default=17)
    command.add_argument('--workers', type=int)

    return parser


def _override(config: NamedTuple, **values) -> NamedTuple:
    # pylint: disable-next=protected-access
    return config._replace(**{k: v for k, v in values.items() if v is not None})


def _window(values) -> Window:
    return Window(*values) if values else Window()


async def _dispatch(args: argparse.Namespace, settings: Settings) -> int:
    max_iterations = args.max_iterations
    if max_iterations is None:
        max_iterations = settings.trajectory.max_iterations
    emitter = settings.emitter
    if hasattr(args, 'output'):
        emitter = _override(emitter, format=args.format, output_path=args.output)

    if args.command == 'profile':
        return await cmd_profile(args.n, max_iterations, args.format, settings.emitter.precision)
    if args.command in ('verify-range', 'verify-random'):
        campaign = _override(
            settings.campaign,
            workers=args.workers,
            fail_fast=args.fail_fast,
            **({'chunk': args.chunk} if args.command == 'verify-range'
               else {'random_chunk': args.chunk, 'samples': args.samples,
                     'max_bits': args.max_bits, 'seed': args.seed}))
        histogram = _override(settings.histogram, bin_count=args.bins)
        if args.command == 'verify-range':
            return await cmd_verify_range(args.start, args.end, campaign, histogram, emitter,
                                          max_iterations, args.checkpoint, args.histogram)
        return await cmd_verify_random(campaign, histogram, emitter,
                                       max_iterations, args.checkpoint, args.histogram)
    if args.command == 'scatter':
        return await cmd_scatter(args.n_max, args.alpha_max, emitter,
                                 _window(args.n_range), _window(args.s_range), max_iterations)
    if args.command == 'trajectory':
        return await cmd_trajectory(args.n, emitter, max_iterations)
    if args.command == 'prohibited':
        return await cmd_prohibited(args.n, args.bound, emitter if args.emit else None)
    if args.command == 'sieve':
        workers = args.workers or settings.campaign.workers
        return await cmd_sieve(args.seeds, args.depth, emitter, args.include_direct, workers)
    if args.command == 'alpha-table':
        workers = args.workers or settings.campaign.workers
        return await cmd_alpha_table(args.limit, args.alpha_max, args.prefix, workers,
                                     max_iterations)
    raise ValueError(f"Unknown command '{args.command}'")


async def run_command(args: argparse.Namespace, settings: Settings) -> int:
    """
    Runs a parsed command line inside a tracing span and converts errors into
    the exit code EXIT_ERROR.

    Parameters
    ----------
        args : argparse.Namespace
            The result of build_parser().parse_args().
        settings : Settings
            The configuration.

    Returns
    -------
        int
            The exit code of the command.
    """
    with trace.get_tracer(__name__).start_as_current_span(f"cli.{args.command}") as otel_span:
        try:
            exit_code = await _dispatch(args, settings)
            otel_span.set_attribute("collatz.cli.exit_code", exit_code)
            return exit_code
        except (ValueError, NonTerminationError, CheckpointError, EmitterError) as e:
            otel_span.record_exception(e)
            msg = f"Command '{args.command}' failed"
            otel_span.add_event(msg)
            logging.exception(msg)
            return EXIT_ERROR
