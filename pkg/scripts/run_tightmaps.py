#!/usr/bin/env python3
import argparse
import logging
import os
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler

from tightmaps.cli_io import COMMANDS, run
from tightmaps.config import TightmapsConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tightmaps",
        description="Certify, decompose and classify tight homomorphisms between Hermitian Lie algebras.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument(
        "arguments",
        nargs="*",
        help="Expression, path to a file holding one, or enumeration target (e.g. su 3 3)",
    )
    parser.add_argument("--json", action="store_true", default=True, help="Print the report as JSON (default)")
    parser.add_argument("--expect-tight", action="store_true", help="Exit with 1 if the map is not tight")
    parser.add_argument(
        "--expect-holomorphic", action="store_true", help="Exit with 1 if the map is not holomorphic"
    )
    parser.add_argument("--bounds", type=int, default=None, help="Largest capacity per entry copy")
    parser.add_argument("--seed", type=int, default=None, help="Seed of the decomposition draws")
    parser.add_argument("--config", default="tightmaps_config.yaml", help="Path to the YAML configuration")
    return parser


def configure_logging(config: TightmapsConfig) -> None:
    # Create logs directory if it doesn't exist
    os.makedirs(os.path.dirname(config.log_path) or ".", exist_ok=True)

    logging.basicConfig(
        level=getattr(logging, config.log_level, logging.INFO),
        format="%(asctime)s - %(levelname)s - %(message)s",
        handlers=[
            RotatingFileHandler(
                config.log_path, maxBytes=config.max_bytes, backupCount=config.backup_count
            ),
            logging.StreamHandler(sys.stderr),
        ],
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    config = TightmapsConfig(config_path=args.config)
    configure_logging(config)
    logger = logging.getLogger(__name__)
    start_time = datetime.now()

    logger.info(f"Starting tightmaps {args.command}")
    try:
        document, code = run(
            args.command,
            args.arguments,
            expect_tight=args.expect_tight,
            expect_holomorphic=args.expect_holomorphic,
            bounds=args.bounds,
            seed=args.seed,
            config=config,
        )
        print(document.to_json(indent=config.indent))
        logger.info(f"tightmaps {args.command} finished with exit code {code} in {datetime.now() - start_time}")
    except Exception as e:
        logger.error(f"tightmaps {args.command} failed: {str(e)}", exc_info=True)
        sys.exit(2)
    sys.exit(code)


if __name__ == "__main__":
    main()
