"""
Files and JSON
==============
Report output: deterministic JSON, CSV tables and plain text, either to a
file or to stdout.
"""

import csv
import io
import json
import sys


# =============================================================================
# JSON
# =============================================================================
"""
dumps_json(data) renders with sorted keys and two-space indentation plus a
trailing newline, so identical reports give byte-identical output.

Example:
    dumps_json({"nu": -1, "model": "phase"})
    # {
    #   "model": "phase",
    #   "nu": -1
    # }
"""

def dumps_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save_json(filepath: str, data: dict) -> None:
    with open(filepath, "w", encoding="utf-8") as f:
        f.write(dumps_json(data))


# =============================================================================
# CSV AND TEXT
# =============================================================================

def csv_text(header: list, rows: list) -> str:
    """
    Render a header and rows as CSV with "\\n" line endings.

    Example:
        csv_text(["kx", "ky"], [[0.0, 1.0]]) -> "kx,ky\\n0.0,1.0\\n"
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def write_csv(filepath: str, header: list, rows: list) -> None:
    with open(filepath, "w", encoding="utf-8", newline="") as f:
        f.write(csv_text(header, rows))


def emit(text: str, filepath: str | None = None) -> None:
    """Write text to filepath, or to stdout when filepath is None."""
    if filepath is None:
        sys.stdout.write(text)
        return
    with open(filepath, "w", encoding="utf-8") as f:
        f.write(text)
