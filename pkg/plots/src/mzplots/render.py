"""The three standard figures rendered from harness CSVs.

Inputs are never mutated; regenerating a figure from the same CSV writes
the same image.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import MissingColumn, SchemaError, Table, read_table


def ratio_envelope(csv_path: str, out_path: str) -> dict:
    """Min/max ratio band against degree, with horizontal bound lines."""
    t = read_table(csv_path)
    t.require("n", "lower_ratio", "upper_ratio")
    n = t.floats("n")
    lo = t.floats("lower_ratio")
    hi = t.floats("upper_ratio")
    if not n or len(n) != len(lo) or len(n) != len(hi):
        raise SchemaError(f"ratio columns misaligned in {csv_path}")
    order = np.argsort(n)
    n = np.asarray(n)[order]
    lo = np.asarray(lo)[order]
    hi = np.asarray(hi)[order]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.fill_between(n, lo, hi, alpha=0.3, label="observed ratio band")
    ax.plot(n, lo, "o-", ms=3)
    ax.plot(n, hi, "o-", ms=3)
    for col, style, label in (("bound_low", "--", "lower bound"),
                              ("bound_high", ":", "upper bound")):
        vals = t.floats(col) if col in t.columns else []
        if vals:
            ax.axhline(vals[0], ls=style, color="k", label=label)
    ax.set_xlabel("degree n")
    ax.set_ylabel("discrete / continuous norm ratio")
    ax.set_title(t.rows[0].get("experiment", ""))
    ax.legend(loc="best", fontsize=8)
    fig.savefig(out_path, dpi=110)
    plt.close(fig)
    return {"rows": len(n)}


def loglog_decay(csv_path: str, out_path: str,
                 value_column: str = "lower_ratio") -> dict:
    """Log-log decay plot with an independent least-squares slope refit.

    The refit deliberately repeats the harness's fit from the raw (n, value)
    pairs; when the harness stored its slope in ``bound_low`` the two are
    compared and both reported.
    """
    t = read_table(csv_path)
    t.require("n", value_column)
    n = np.asarray(t.floats("n"), dtype=float)
    v = np.asarray(t.floats(value_column), dtype=float)
    if len(n) < 2:
        raise SchemaError(f"need at least two rows to fit a slope "
                          f"({csv_path})")
    if np.any(v <= 0) or np.any(n <= 0):
        raise SchemaError(f"log-log fit needs positive data ({csv_path})")
    slope, intercept = np.polyfit(np.log(n), np.log(v), 1)
    harness = t.floats("bound_low") if "bound_low" in t.columns else []
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(n, v, "o-", label=value_column)
    ax.loglog(n, np.exp(intercept) * n ** slope, "--",
              label=f"refit slope {slope:.3f}")
    ax.annotate(f"slope = {slope:.3f}", xy=(0.05, 0.08),
                xycoords="axes fraction")
    ax.set_xlabel("degree n")
    ax.set_ylabel(value_column)
    ax.set_title(t.rows[0].get("experiment", ""))
    ax.legend(loc="best", fontsize=8)
    fig.savefig(out_path, dpi=110)
    plt.close(fig)
    out = {"slope": float(slope), "rows": len(n)}
    if harness:
        out["harness_slope"] = harness[0]
        out["slope_gap"] = abs(harness[0] - slope)
    return out


def margin_hist(csv_path: str, out_path: str) -> dict:
    """Histogram of bound margins with a zero line.

    Margins are upper-bound slack (bound_high - upper_ratio) plus
    lower-bound slack (lower_ratio - bound_low), whichever columns are
    populated.
    """
    t = read_table(csv_path)
    margins = []
    if "bound_high" in t.columns and "upper_ratio" in t.columns:
        hi = {i: x for i, x in _paired(t, "bound_high", "upper_ratio")}
        margins.extend(b - u for b, u in hi.values())
    if "bound_low" in t.columns and "lower_ratio" in t.columns:
        lo = {i: x for i, x in _paired(t, "bound_low", "lower_ratio")}
        margins.extend(v - b for b, v in lo.values())
    if not margins:
        raise MissingColumn("bound_high/upper_ratio or bound_low/lower_ratio",
                            csv_path)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(margins, bins=max(5, min(30, len(margins))), alpha=0.8)
    ax.axvline(0.0, color="k", lw=1.5, label="zero margin")
    ax.set_xlabel("bound margin")
    ax.set_ylabel("count")
    ax.set_title(t.rows[0].get("experiment", ""))
    ax.legend(loc="best", fontsize=8)
    fig.savefig(out_path, dpi=110)
    plt.close(fig)
    return {"count": len(margins), "min_margin": float(min(margins))}


def _paired(t: Table, a: str, b: str):
    for i, row in enumerate(t.rows):
        if row[a] != "" and row[b] != "":
            yield i, (float(row[a]), float(row[b]))
