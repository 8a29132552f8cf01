#!/usr/bin/env python3
"""
Willmore Flow Lab - Main Application Entry Point

Runs one experiment command of the verification suite and writes its outputs.

Usage:
    python app.py <command> [--config file] [--key value ...] [--verbose] [--parallel]
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from config import LOG_LEVEL, get_experiment_config, parse_overrides
from wflab.errors import ConfigError, WflabError
from wflab.experiments import COMMANDS, ExperimentConfig, ExperimentRegistry, ExperimentReport
from wflab.output.manifest import RunManifest
from wflab.utils.helpers import format_duration, timestamp

logger = logging.getLogger("wflab")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


class WillmoreLab:
    """Main application class."""

    def __init__(self, parallel: bool = False):
        self.parallel = parallel

    def resolve_config(self, command: str, raw: Dict[str, Any]) -> ExperimentConfig:
        data = dict(raw)
        data["command"] = command
        if self.parallel:
            data["parallel"] = True
        return ExperimentConfig.from_dict(data)

    def run_command(self, command: str, raw: Dict[str, Any]) -> Tuple[int, Optional[RunManifest]]:
        """
        Validate, execute and record one command.

        Returns:
            (exit status, manifest); the manifest is None when the config is invalid
        """
        try:
            cfg = self.resolve_config(command, raw)
        except ConfigError as e:
            logger.error(f"Invalid configuration: {e}")
            return EXIT_CONFIG, None

        experiment = ExperimentRegistry.get(command)
        if experiment is None:
            logger.error(f"Unknown command: {command}")
            return EXIT_CONFIG, None
        valid, message = experiment.validate_config(cfg)
        if not valid:
            logger.error(f"Invalid configuration for {command}: {message}")
            return EXIT_CONFIG, None

        output_dir = cfg.output_dir / command
        output_dir.mkdir(parents=True, exist_ok=True)
        manifest = RunManifest({"command": command, "config": cfg.to_dict(), "created": timestamp()})

        logger.info(f"Running {experiment.display_name} -> {output_dir}")
        started = time.perf_counter()
        try:
            report = experiment.execute(cfg, output_dir)
        except WflabError as e:
            logger.error(f"{command} failed: {e}")
            report = ExperimentReport(passed=False, failures=[str(e)])
            manifest.error = {"type": type(e).__name__, "message": str(e)}
            if hasattr(e, "to_dict"):
                manifest.error["payload"] = e.to_dict()
        except Exception as e:
            logger.exception(f"Unexpected error in {command}: {e}")
            report = ExperimentReport(passed=False, failures=[f"{type(e).__name__}: {e}"])
            manifest.error = {"type": type(e).__name__, "message": str(e)}
        elapsed = time.perf_counter() - started

        for path in report.artifacts:
            manifest.add_artifact(path, output_dir)
        manifest.passed = report.passed
        manifest.elapsed = round(elapsed, 3)
        manifest.summary = dict(report.summary, failures=report.failures)
        manifest.write(output_dir)

        for failure in report.failures:
            logger.error(f"FAIL {failure}")
        status = "PASS" if report.passed else "FAIL"
        logger.info(f"{command}: {status} in {format_duration(elapsed)} ({len(report.artifacts)} artifacts)")
        return (EXIT_OK if report.passed else EXIT_FAILED), manifest


def setup_logging(verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else getattr(logging, LOG_LEVEL, logging.INFO)
    logging.basicConfig(level=level, format="[%(name)s] %(message)s")


def main(argv=None) -> int:
    """Main entry point."""
    parser = argparse.ArgumentParser(
        description="Willmore Flow Lab - spectral experiments on tori near the Clifford torus",
        epilog="Any other --key value pair overrides the configuration (e.g. --grid_n 96 --seed 3).")
    parser.add_argument("command", choices=COMMANDS, help="Experiment to run")
    parser.add_argument("--config", type=Path, help="key=value configuration file (created with defaults if missing)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")
    parser.add_argument("--parallel", action="store_true", help="Run independent trajectories and batteries in parallel")
    args, extra = parser.parse_known_args(argv)

    setup_logging(args.verbose)
    try:
        overrides = parse_overrides(extra)
    except ValueError as e:
        parser.error(str(e))

    try:
        raw = get_experiment_config(args.config, overrides)
    except OSError as e:
        logger.error(f"Cannot read configuration: {e}")
        return EXIT_CONFIG

    app = WillmoreLab(parallel=args.parallel)
    status, _ = app.run_command(args.command, raw)
    return status


if __name__ == "__main__":
    sys.exit(main())
