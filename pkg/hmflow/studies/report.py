"""
Error tables of convergence studies.

CSV output starts with ``# `` and a JSON header describing the study,
followed by a header row and one row per ladder value. Floats are written
with ``repr`` so reading a file back gives the same report.
"""
import csv
import io
import math
from typing import Any, Dict, List, Optional

import orjson
import pydantic

from hmflow.exceptions import StudyDefinitionError

COLUMNS = (
    "value",
    "l2",
    "eoc_l2",
    "h1",
    "eoc_h1",
    "wall_time",
    "steps",
    "iterations",
    "error",
    "flag",
)
FLOAT_COLUMNS = {"value", "l2", "eoc_l2", "h1", "eoc_h1", "wall_time", "iterations"}
TIMING_COLUMNS = {"wall_time"}


class ErrorRow(pydantic.BaseModel):
    value: float
    l2: Optional[float] = None
    eoc_l2: Optional[float] = None
    h1: Optional[float] = None
    eoc_h1: Optional[float] = None
    wall_time: Optional[float] = None
    steps: Optional[int] = None
    iterations: Optional[float] = None
    error: Optional[str] = None
    flag: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None


class ErrorReport(pydantic.BaseModel):
    """
    Rows of one study in ladder order.
    """

    name: str
    method: str
    p: int
    k: int
    axis: str
    fixed: float
    rows: List[ErrorRow] = pydantic.Field(default_factory=list)

    def header(self) -> Dict[str, Any]:
        return self.model_dump(exclude={"rows"})

    def column(self, name: str) -> List[Any]:
        return [getattr(row, name) for row in self.rows]

    def to_csv(self, timings: bool = True) -> str:
        """
        Machine readable table, timing columns are left out with ``timings=False``.

        :param timings: include wall times
        :type timings: bool
        :return: CSV text with JSON header line
        :rtype: str
        """
        columns = [c for c in COLUMNS if timings or c not in TIMING_COLUMNS]
        stream = io.StringIO()
        stream.write("# " + orjson.dumps(self.header()).decode() + "\n")
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in self.rows:
            writer.writerow([format_cell(getattr(row, c)) for c in columns])
        return stream.getvalue()

    def to_markdown(self) -> str:
        """
        Aligned markdown table in the layout of the printed error tables.
        """
        fixed_name = "tau" if self.axis == "h" else "h"
        title = (
            f"{self.name}: {self.method} p={self.p} BDF{self.k}, "
            f"{fixed_name}={self.fixed:g} fixed"
        )
        headers = [self.axis, "L2", "EOC", "H1", "EOC", "time [s]", "steps", "iter", "note"]
        lines = []
        for row in self.rows:
            note = row.error or row.flag or ""
            lines.append(
                [
                    f"{row.value:.4g}",
                    markdown_float(row.l2, "{:.4e}"),
                    markdown_float(row.eoc_l2, "{:.2f}"),
                    markdown_float(row.h1, "{:.4e}"),
                    markdown_float(row.eoc_h1, "{:.2f}"),
                    markdown_float(row.wall_time, "{:.2f}"),
                    "" if row.steps is None else str(row.steps),
                    markdown_float(row.iterations, "{:.1f}"),
                    note,
                ]
            )
        widths = [
            max(len(headers[i]), *(len(line[i]) for line in lines)) if lines else len(headers[i])
            for i in range(len(headers))
        ]
        out = [f"### {title}", ""]
        out.append("| " + " | ".join(h.ljust(w) for h, w in zip(headers, widths)) + " |")
        out.append("|" + "|".join("-" * (w + 2) for w in widths) + "|")
        for line in lines:
            out.append("| " + " | ".join(c.ljust(w) for c, w in zip(line, widths)) + " |")
        return "\n".join(out) + "\n"


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def markdown_float(value: Optional[float], fmt: str) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "-"
    return fmt.format(value)


def parse_cell(column: str, raw: str) -> Any:
    if raw == "":
        return None
    if column in FLOAT_COLUMNS:
        return float(raw)
    if column == "steps":
        return int(raw)
    return raw


def report_from_csv(text: str) -> ErrorReport:
    """
    Reads text written by ``ErrorReport.to_csv``.

    :param text: CSV text with JSON header line
    :type text: str
    :raises StudyDefinitionError: if the header line is missing
    :return: report with the same rows
    :rtype: ErrorReport
    """
    first, _, body = text.partition("\n")
    if not first.startswith("#"):
        raise StudyDefinitionError("Report CSV has no header line")
    header = orjson.loads(first.lstrip("#").strip())
    reader = csv.reader(io.StringIO(body))
    columns = next(reader)
    rows = [
        ErrorRow(**{c: parse_cell(c, raw) for c, raw in zip(columns, line)})
        for line in reader
        if line
    ]
    return ErrorReport(**header, rows=rows)
