"""
Record rendering for the ordsel CLI.

JSON-lines is the default; CSV and markdown flatten each record into one row.
Column sets are fixed per result kind so headers stay stable.
"""

import csv
import io
import math
import time
from typing import Any, Dict, List, Optional, Sequence

from cli.config import constants
from models import OutputRecord

# Per-kind columns: echoed inputs first, then result fields
_COLUMNS = {
    "probability": ["copula", "param", "n", "m", "alpha", "method", "value", "stderr", "replications"],
    "bound": ["n", "alpha", "rho", "omega", "value", "c1", "c2", "mu_n", "sigma_n2", "certified"],
    "inversion": ["alpha", "rho", "delta", "log10_n", "exact_n", "omega_star", "bound_at_n"],
    "sweep": ["x", "p_quadrature", "p_mc", "mc_stderr", "lower_bound"],
    "limits": ["copula", "param", "m", "alpha", "boundary_cdf", "fixed_limit", "randomized_limit", "kendall_tau"],
}


def elapsed_ms(started: float, seeded: bool = False, timing: bool = False) -> float:
    """Milliseconds since `started`; seeded runs report 0 unless timing is requested."""
    if seeded and not timing:
        return 0.0
    return max((time.perf_counter() - started) * 1000.0, 0.0)


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.{constants.CSV_SIGNIFICANT_DIGITS}g}"
    return str(value)


def _flatten(record: OutputRecord) -> Dict[str, Any]:
    result = record.result
    row: Dict[str, Any] = dict(record.inputs)
    row["method"] = record.method

    if result.kind == "probability":
        row.update(value=result.value, stderr=result.stderr, replications=result.replications)
    elif result.kind == "bound":
        cert = result.certificate
        row.update(value=result.value, omega=result.omega)
        for name in ("c1", "c2", "mu_n", "sigma_n2", "certified"):
            row[name] = getattr(cert, name) if cert is not None else None
    elif result.kind == "inversion":
        size = result.sample_size
        if size is None:
            row.update(log10_n=math.inf, exact_n=None)
        else:
            row.update(log10_n=size.log10_n, exact_n=size.exact_n)
        row.update(omega_star=result.omega_star, bound_at_n=result.bound_at_n)
    else:
        row.update(result.model_dump(exclude={"kind"}))
    return row


def render_json(records: Sequence[OutputRecord]) -> List[str]:
    return [record.model_dump_json() for record in records]


def render_csv(records: Sequence[OutputRecord]) -> List[str]:
    if not records:
        return []
    columns = _COLUMNS[records[0].result.kind]
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        row = _flatten(record)
        writer.writerow([format_value(row.get(name)) for name in columns])
    return buffer.getvalue().splitlines()


def render_markdown(records: Sequence[OutputRecord]) -> List[str]:
    if not records:
        return []
    kind = records[0].result.kind
    columns = list(_COLUMNS[kind])
    if kind == "inversion":
        # Readable n in place of the raw log10 / integer pair
        columns = ["alpha", "rho", "delta", "n", "omega_star", "bound_at_n"]

    lines = ["| " + " | ".join(columns) + " |", "|" + "|".join("---" for _ in columns) + "|"]
    for record in records:
        row = _flatten(record)
        if kind == "inversion":
            size = record.result.sample_size
            row["n"] = "inf" if size is None else size.scientific()
        lines.append("| " + " | ".join(format_value(row.get(name)) for name in columns) + " |")
    return lines


def render(records: Sequence[OutputRecord], fmt: Optional[str]) -> List[str]:
    if fmt == "csv":
        return render_csv(records)
    if fmt == "markdown":
        return render_markdown(records)
    return render_json(records)
