"""Writing reports: per-trial CSV, JSON summary, plot-ready data."""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Iterable

from .runner import ExperimentReport, TrialResult

CSV_COLUMNS = ("algo", "n", "m", "trial", "seed", "inversions", "footrule",
               "est_cost", "assign_cost", "overflows", "wall_ms")
PLOT_COLUMNS = ("n", "mean_cost", "ci_low", "ci_high")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.3f}"
    return str(v)


def results_csv(results: Iterable[TrialResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in results:
        w.writerow([_cell(getattr(r, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def plot_data(report: ExperimentReport, cost: str = "inversions") -> str:
    lines = [f"# algo={report.config.algorithm} cost={cost}", " ".join(PLOT_COLUMNS)]
    for s in report.summaries:
        if cost not in s.stats:
            continue
        lo, hi = s.ci95(cost)
        lines.append(f"{s.n} {s.stats[cost].mean:.6g} {lo:.6g} {hi:.6g}")
    return "\n".join(lines) + "\n"


def summary_json(report: ExperimentReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def emit_report(report: ExperimentReport, csv_path: str | Path | None = None,
                json_path: str | Path | None = None, plot_path: str | Path | None = None) -> list[Path]:
    """Write whichever outputs are requested; returns the paths written."""
    written = []
    for path, text in ((csv_path, lambda: results_csv(report.results)),
                       (json_path, lambda: summary_json(report)),
                       (plot_path, lambda: plot_data(report))):
        if path is None:
            continue
        p = Path(path)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text())
        written.append(p)
    return written
