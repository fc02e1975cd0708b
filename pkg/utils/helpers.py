#!/usr/bin/env python3
"""
Helper utilities for sweeps, number formatting and result files
"""

import csv
import io
import math
import sys
from pathlib import Path

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm


def ensure_directory(path):
    """Create directory if it doesn't exist"""
    Path(path).mkdir(parents=True, exist_ok=True)
    return path


def write_text_file(path, content, encoding='utf-8'):
    """
    Write text content to a file and ensure its parent directory exists.
    Returns the created Path for convenience.
    """
    file_path = Path(path)
    ensure_directory(file_path.parent)
    file_path.write_text(content, encoding=encoding)
    return file_path


def create_workbook(path, sheets):
    """
    Create an XLSX workbook using openpyxl.
    sheets: list of tuples (sheet_name, rows) where rows is a list of row lists.
    """
    from openpyxl import Workbook

    wb = Workbook()
    # clear the default sheet
    wb.remove(wb.active)
    for sheet_name, rows in sheets:
        ws = wb.create_sheet(sheet_name[:31] or "Sheet")
        for row in rows:
            ws.append(row)
    ensure_directory(Path(path).parent)
    wb.save(path)
    return Path(path)


# ----------------------------------------------------------------------
# numbers and angles
# ----------------------------------------------------------------------
def format_number(value):
    """Shortest text that parses back to the same value"""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def deg_to_rad(degrees):
    return math.radians(degrees)


def rad_to_deg(radians):
    return math.degrees(radians)


def db_to_linear(db):
    return 10.0 ** (db / 10.0)


def sweep_values(low, high, points, log=False):
    """Sweep grid, log-spaced on request"""
    if points == 1:
        return np.array([float(low)])
    if log:
        return np.geomspace(low, high, points)
    return np.linspace(low, high, points)


def run_sweep(function, values, n_jobs=1, progress=False, desc="sweep"):
    """
    Evaluate function at every value, in parallel when n_jobs != 1.

    Results come back in input order whatever the scheduling.
    """
    values = list(values)
    iterator = tqdm(values, desc=desc, file=sys.stderr, disable=not progress)
    return Parallel(n_jobs=n_jobs)(delayed(function)(value) for value in iterator)


# ----------------------------------------------------------------------
# result tables
# ----------------------------------------------------------------------
def render_csv(columns, rows, header_lines=()):
    """CSV text with '#' comment lines, a header row and one line per row"""
    buffer = io.StringIO()
    for line in header_lines:
        buffer.write(f"# {line}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(value) for value in row])
    return buffer.getvalue()


def write_results(columns, rows, header_lines=(), output=None, xlsx=None, sheet="results"):
    """
    Write a result table as CSV to a file (or stdout) and optionally XLSX.
    Returns the list of created paths.
    """
    text = render_csv(columns, rows, header_lines)
    created = []
    if output is None or str(output) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        created.append(write_text_file(output, text))
    if xlsx is not None:
        created.append(create_workbook(xlsx, [(sheet, [list(columns)] + [list(row) for row in rows])]))
    return created
