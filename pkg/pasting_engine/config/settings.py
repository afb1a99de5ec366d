"""Limits and environment-driven defaults."""
import os
from dataclasses import dataclass
from pathlib import Path


# Exhaustive enumeration of presentations is factorial in the face count
MAX_ENUMERATION_FACES: int = 7

# Catalan(11) = 58786 trees at the largest accepted length
MAX_BRACKETING_LENGTH: int = 12

# Desk-scale bounds for the random diagram generator
MAX_GENERATOR_FACES: int = 7
MAX_GENERATOR_PATH_LEN: int = 6

REPORT_SCHEMA_VERSION: int = 1

SUITE_NAMES = ("uniqueness", "maclane", "strict", "axioms", "structural")
DEFAULT_SUITES = ("uniqueness", "maclane")


@dataclass(frozen=True)
class Settings:
    """Defaults resolved from the environment."""
    seed: int
    trials: int
    max_faces: int
    max_path_len: int
    max_object_size: int
    max_workers: int
    span_attempts: int
    maclane_max_length: int
    maclane_skeletons: int
    axiom_samples: int
    output_dir: Path


def load_settings() -> Settings:
    """Read PASTING_* environment variables, falling back to defaults."""
    return Settings(
        seed=int(os.getenv('PASTING_SEED', '42')),
        trials=int(os.getenv('PASTING_TRIALS', '200')),
        max_faces=int(os.getenv('PASTING_MAX_FACES', '5')),
        max_path_len=int(os.getenv('PASTING_MAX_PATH_LEN', '5')),
        max_object_size=int(os.getenv('PASTING_MAX_OBJECT_SIZE', '3')),
        max_workers=int(os.getenv('PASTING_MAX_WORKERS', '4')),
        span_attempts=int(os.getenv('PASTING_SPAN_ATTEMPTS', '64')),
        maclane_max_length=int(os.getenv('PASTING_MACLANE_MAX_LENGTH', '5')),
        maclane_skeletons=int(os.getenv('PASTING_MACLANE_SKELETONS', '20')),
        axiom_samples=int(os.getenv('PASTING_AXIOM_SAMPLES', '500')),
        output_dir=Path(os.getenv('PASTING_OUTPUT_DIR', './outputs')),
    )
