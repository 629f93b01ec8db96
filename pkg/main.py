#!/usr/bin/env python3
"""mitl-monitor - offline MITL verification over partially known traces"""

import logging
import sys

from config.settings import LOG_LEVEL, validate_settings
from cli.commands import EXIT_USAGE_ERROR, main as run_cli

# Configure logging; stdout carries command output only
logging.basicConfig(
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    level=getattr(logging, LOG_LEVEL, logging.WARNING),
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


def main() -> None:
    """Run one command and exit with its status."""
    invalid = validate_settings()
    if invalid:
        logger.error(f"Invalid settings: {', '.join(invalid)}")
        logger.error("Check config/.env against config/.env.example")
        sys.exit(EXIT_USAGE_ERROR)

    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
