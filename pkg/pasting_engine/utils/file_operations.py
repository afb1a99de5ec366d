"""File operations for diagram sources and verification results."""
import logging
from datetime import datetime
from pathlib import Path
from typing import Optional, Union

import pandas as pd

logger = logging.getLogger(__name__)

# Output directory for generated CSV files
OUTPUT_DIR = Path("./outputs")


def read_text_file(file_path: Union[str, Path]) -> str:
    """
    Read a diagram source file.

    Raises:
        FileNotFoundError: If the file doesn't exist
        ValueError: If the path is not a file or is not valid UTF-8
    """
    path = Path(file_path)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {file_path}")
    if not path.is_file():
        raise ValueError(f"Path is not a file: {file_path}")
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ValueError(f"File is not valid UTF-8: {file_path} ({e.reason} at byte {e.start})")


def generate_output_filename(label: Optional[str] = None) -> str:
    """
    Generate a unique output filename based on timestamp and an optional label.

    Returns:
        Generated filename string (e.g., "verify_results_uniqueness_20250122_143022.csv")
    """
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    if label:
        safe_name = "".join(c if c.isalnum() or c in ('-', '_') else '_' for c in label)
        return f"verify_results_{safe_name}_{timestamp}.csv"
    return f"verify_results_{timestamp}.csv"


def save_results_to_csv(results_df: pd.DataFrame, filename: Optional[Union[str, Path]] = None,
                        output_dir: Optional[Path] = None) -> Path:
    """
    Save verification results to CSV.

    A filename containing a directory part is used as given; a bare name is
    placed in ``output_dir`` (default ./outputs).

    Returns:
        Path to the saved output file
    """
    directory = output_dir or OUTPUT_DIR
    if not filename:
        filename = generate_output_filename()
    output_path = Path(filename)
    if output_path.suffix != ".csv":
        output_path = output_path.with_name(f"{output_path.name}.csv")
    if output_path.parent == Path("."):
        output_path = directory / output_path
    output_path.parent.mkdir(parents=True, exist_ok=True)

    # UTF-8-sig (BOM) keeps the CSV readable in Excel
    results_df.to_csv(output_path, index=False, encoding='utf-8-sig')
    logger.info(f"Results saved to: {output_path}")
    return output_path
