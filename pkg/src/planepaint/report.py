"""Report emission for verification runs: JSON, CSV, a text table and a figure."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Sequence

from .verify import TheoremReport

CSV_FIELDS = ("theorem", "graph", "claimed", "certified", "status", "method", "coefficient", "seconds", "note")


def to_json(reports: Sequence[TheoremReport]) -> str:
    """Stable JSON: sorted keys, fixed indentation, reports in suite order."""
    return json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True) + "\n"


def to_csv(reports: Sequence[TheoremReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.to_json())
    return buf.getvalue()


def to_table(reports: Sequence[TheoremReport]) -> str:
    rows = [("theorem", "graph", "claimed", "certified", "status", "method", "seconds")]
    for r in reports:
        rows.append((r.theorem, r.graph, _dash(r.claimed), _dash(r.certified), r.status,
                     r.method, f"{r.seconds:.3f}"))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    counts: dict[str, int] = {}
    for r in reports:
        counts[r.status] = counts.get(r.status, 0) + 1
    lines.append("")
    lines.append(", ".join(f"{k}: {v}" for k, v in sorted(counts.items())) or "no reports")
    return "\n".join(lines) + "\n"


def _dash(x) -> str:
    return "-" if x is None else str(x)


_STATUS_COLORS = {"pass": "tab:green", "fail": "tab:red",
                  "inconclusive": "tab:orange", "budget_exceeded": "tab:gray"}


def plot_bounds(reports: Sequence[TheoremReport], path: str | Path) -> Path | None:
    """Bar chart of claimed against certified bounds, one bar pair per theorem report.

    Reports without a claimed bound (the painting suites) are left out.
    Returns None when nothing is plottable.
    """
    rows = [r for r in reports if r.claimed is not None]
    if not rows:
        return None
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [f"{r.theorem} {r.graph}" for r in rows]
    xs = range(len(rows))
    fig, ax = plt.subplots(figsize=(max(6.0, 0.32 * len(rows) + 2), 4.5))
    ax.bar([x - 0.2 for x in xs], [r.claimed for r in rows], width=0.4,
           color="lightsteelblue", label="claimed")
    ax.bar([x + 0.2 for x in xs], [r.certified or 0 for r in rows], width=0.4,
           color=[_STATUS_COLORS.get(r.status, "black") for r in rows], label="certified")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=90, fontsize=7)
    ax.set_ylabel("Alon-Tarsi bound")
    ax.set_title("claimed vs certified bounds (bar colour = status)")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def write_outputs(reports: Sequence[TheoremReport], out_dir: str | Path) -> list[Path]:
    """Write report.json, report.csv and bounds.png into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    p = out / "report.json"
    p.write_text(to_json(reports))
    written.append(p)
    p = out / "report.csv"
    p.write_text(to_csv(reports))
    written.append(p)
    fig = plot_bounds(reports, out / "bounds.png")
    if fig is not None:
        written.append(fig)
    return written
