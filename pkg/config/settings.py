import os
from pathlib import Path

from dotenv import load_dotenv

# Load .env from config directory
config_dir = Path(__file__).parent
load_dotenv(config_dir / ".env")

LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()

# Storage backend for trace files: "local" (default)
STORAGE_BACKEND = os.getenv("STORAGE_BACKEND", "local")
# Relative --trace paths are resolved against this directory (empty = cwd)
TRACE_DIR = os.getenv("TRACE_DIR", "")

# SVG renderer geometry, in pixels
SVG_WIDTH = int(os.getenv("SVG_WIDTH", "800"))
SVG_LANE_HEIGHT = int(os.getenv("SVG_LANE_HEIGHT", "48"))
SVG_LABEL_WIDTH = int(os.getenv("SVG_LABEL_WIDTH", "220"))

# Largest critical partition the brute-force oracle will enumerate
ORACLE_SAMPLE_LIMIT = int(os.getenv("ORACLE_SAMPLE_LIMIT", "20000"))

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def validate_settings() -> list[str]:
    """Return list of invalid settings."""
    invalid = []
    if LOG_LEVEL not in LOG_LEVELS:
        invalid.append("LOG_LEVEL")
    if STORAGE_BACKEND != "local":
        invalid.append("STORAGE_BACKEND")
    if TRACE_DIR and not Path(TRACE_DIR).is_dir():
        invalid.append("TRACE_DIR")
    if SVG_WIDTH <= SVG_LABEL_WIDTH:
        invalid.append("SVG_WIDTH")
    if SVG_LANE_HEIGHT <= 0:
        invalid.append("SVG_LANE_HEIGHT")
    if ORACLE_SAMPLE_LIMIT <= 0:
        invalid.append("ORACLE_SAMPLE_LIMIT")
    return invalid
