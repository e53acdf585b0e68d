"""CSV and JSON emission with lossless floats and portable sentinels.

CSV cells carry 17 significant digits so every double round-trips exactly.
Infinities are spelled "inf"/"-inf" and indeterminate values "nan" in both
formats; raw IEEE specials never reach a file.
"""

from __future__ import annotations

import csv
import json
import math
from typing import IO, Iterable, Sequence

from .bayes import PosteriorGrid
from .bounds import BoundReport


def format_float(value: float) -> str:
    """Render a float at full precision with portable inf/nan spellings."""
    v = float(value)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def json_number(value: float):
    """A float for JSON, with inf/nan mapped to strings."""
    v = float(value)
    if math.isnan(v) or math.isinf(v):
        return format_float(v)
    return v


def write_rows(stream: IO[str], header: Sequence[str],
               rows: Iterable[Sequence[str]]) -> None:
    """Write a comma-separated table with a header row and LF line endings."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)


def rows_to_json(stream: IO[str], header: Sequence[str],
                 rows: Iterable[Sequence[object]]) -> None:
    """Write a table as a JSON array of flat objects keyed by the header."""
    payload = [dict(zip(header, row)) for row in rows]
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def bound_report_payload(report: BoundReport) -> dict:
    return {
        "theta": json_number(report.theta),
        "fisher": json_number(report.fisher),
        "prior_fisher": json_number(report.prior_fisher),
        "n_measurements": report.n_measurements,
        "generalized_fisher": json_number(report.generalized_fisher),
        "cr_bound": json_number(report.cr_bound),
        "van_trees_bound": json_number(report.van_trees_bound),
    }


def posterior_payload(post: PosteriorGrid, report: BoundReport | None) -> dict:
    return {
        "grid": [json_number(v) for v in post.grid],
        "density": [json_number(v) for v in post.density],
        "mean": json_number(post.mean),
        "variance": json_number(post.variance),
        "argmax": json_number(post.argmax),
        "bound_report": None if report is None else bound_report_payload(report),
    }


def dump_json(stream: IO[str], payload: dict) -> None:
    json.dump(payload, stream, indent=2)
    stream.write("\n")
