## @file outputs.py
#  @brief Files written by a scan: scan.csv, summary.json, drift_vs_eps.svg and manifest.json
#

import csv
import json
import logging
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .scan import CellRecord

logger = logging.getLogger(__name__)

_INT_FIELDS = ("ic_index", "crossing_count")
_BOOL_FIELDS = ("audit_ok",)
_STR_FIELDS = ("status",)


def _cell_text(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _parse_cell(name, text):
    if text == "":
        return None
    if name in _STR_FIELDS:
        return text
    if name in _BOOL_FIELDS:
        return text == "true"
    if name in _INT_FIELDS:
        return int(text)
    return float(text)


def write_scan_csv(records, path):
    """! One row per cell, floats with 17 significant digits, empty fields for None"""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CellRecord.FIELDS)
        for r in records:
            writer.writerow([_cell_text(getattr(r, name)) for name in CellRecord.FIELDS])


def read_scan_csv(path):
    """! The CellRecords of a scan.csv file"""
    with open(path, "r", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CellRecord.FIELDS:
            raise ValueError(f"{path} has an unexpected header {header}")
        return [
            CellRecord(**{name: _parse_cell(name, text) for name, text in zip(header, row)})
            for row in reader
        ]


def summary(result):
    """! The summary.json document of a ScanResult"""
    medians = result.median_drifts()
    out = {
        "cells": len(result.records),
        "failed_cells": sum(1 for r in result.records if r.status != "ok"),
        "median_drift": [{"eps": e, "median_max_drift": d} for e, d in medians.items()],
        "escapes": sum(1 for r in result.records if r.escape_time is not None),
        "audit_violations": result.audit_violations(),
        "fit": None,
    }
    if result.fit is not None:
        a_fit, c_fit, stderr = result.fit
        out["fit"] = {"a_fit": a_fit, "c_fit": c_fit, "stderr": stderr}
    return out


def plot_drift(result, path):
    """! Log-log scatter of max_drift against eps with the fitted line, as SVG"""
    plt.rcParams["svg.hashsalt"] = "pynekhoro"
    fig, ax = plt.subplots(figsize=(5, 4))
    points = [(r.eps, r.max_drift) for r in result.records if r.status == "ok" and r.eps > 0 and r.max_drift > 0]
    if points:
        eps, drift = np.array(points).T
        ax.loglog(eps, drift, "o", ms=3, alpha=0.6, label="cells")
        medians = result.median_drifts()
        med = [(e, d) for e, d in medians.items() if e > 0 and d > 0]
        if med:
            me, md = np.array(med).T
            ax.loglog(me, md, "s", color="k", label="median")
        if result.fit is not None:
            a_fit, c_fit, _ = result.fit
            xs = np.geomspace(eps.min(), eps.max(), 50)
            ax.loglog(xs, c_fit * xs**a_fit, "-", color="C3", label=f"fit a = {a_fit:.3f}")
        ax.legend(loc="best")
    ax.set_xlabel(r"$\varepsilon$")
    ax.set_ylabel(r"max $|I(t) - I_0|_\infty$")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def emit_outputs(result, out_dir):
    """! Writes scan.csv, summary.json, drift_vs_eps.svg and manifest.json, overwriting
    @param result ScanResult
    @param out_dir output directory, created if missing
    @returns dict of the written paths
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "csv": os.path.join(out_dir, "scan.csv"),
        "summary": os.path.join(out_dir, "summary.json"),
        "plot": os.path.join(out_dir, "drift_vs_eps.svg"),
        "manifest": os.path.join(out_dir, "manifest.json"),
    }
    write_scan_csv(result.records, paths["csv"])
    with open(paths["summary"], "w") as fh:
        json.dump(summary(result), fh, indent=2, sort_keys=True)
    plot_drift(result, paths["plot"])
    with open(paths["manifest"], "w") as fh:
        json.dump(result.manifest, fh, indent=2, sort_keys=True)
    logger.info("scan outputs written to %s", out_dir)
    return paths
