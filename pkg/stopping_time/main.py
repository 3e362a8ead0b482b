"""
The main script file for the stopping-time toolkit.
"""

import os
import sys
import argparse
import logging
from typing import Tuple

import asyncio
import yaml
from opentelemetry import trace
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.sampling import ALWAYS_ON
from opentelemetry.sdk.trace.export import BatchSpanProcessor
from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter

# add the script directory to the python module path
sys.path.append(os.path.dirname(os.path.realpath(__file__)))

# Disable pylint warning that imports are not on top. But we need to adapt the import path before.
# pylint: disable=wrong-import-position
from cli_io import EXIT_ERROR, Settings, build_parser, load_settings, run_command


def setup_opentelemetry(otlp_config: dict) -> None:
    """
    Setup OpenTelemetry for tracing.

    Arguments
    ---------
        otlp_config : dict
            A dictionary containing the configuration for OpenTelemetry.
            Currently only the 'endpoint' key is supported.
    """
    endpoint = otlp_config.get('endpoint')
    if endpoint:
        # Initialize OpenTelemetry for Tracing to OTLP endpoint
        trace.set_tracer_provider(
            TracerProvider(
                resource=Resource.create({
                    "service.name": "Collatz stopping time"
                }),
                active_span_processor=BatchSpanProcessor(
                    OTLPSpanExporter(endpoint=endpoint)
                ),
                sampler=ALWAYS_ON
            )
        )
    else:
        trace.set_tracer_provider(TracerProvider())


def setup_and_config() -> Tuple[argparse.Namespace, Settings]:
    """
    This function will perform setup work and reads the configuration file.
    """
    args = build_parser().parse_args()
    try:
        if not os.path.isfile(args.config):
            raise FileNotFoundError(f'Config file {args.config} does not exist.')

        # load config
        with open(args.config, 'r', encoding='utf-8') as f:
            config = yaml.safe_load(f) or {}

        logging.basicConfig(level=config.get('log_level', 'WARNING'))
        setup_opentelemetry(config.get('opentelemetry') or {})

        return args, load_settings(config)
    # pylint: disable-next=broad-except
    except Exception:
        logging.exception("An error occured during initialization")
        sys.exit(EXIT_ERROR)


async def main() -> int:
    """
    The main async function of the stopping-time toolkit
    """

    args, settings = setup_and_config()

    with trace.get_tracer(__name__).start_as_current_span("main") as otel_span:
        try:
            return await run_command(args, settings)
        # pylint: disable-next=broad-except
        except Exception as e:
            otel_span = trace.get_current_span()
            otel_span.record_exception(e)
            msg = f"Error when running command '{args.command}'"
            otel_span.add_event(msg)
            logging.exception(msg)
            return EXIT_ERROR

if __name__ == '__main__':
    sys.exit(asyncio.run(main()))
