"""Run a directory of scenarios and summarise them as CSV."""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .scenario import EXIT_OK, ScenarioError, load_scenario, run_scenario
from .tc import tc_value

COLUMNS = (
    "scenario",
    "exit_code",
    "valid",
    "n",
    "m",
    "k",
    "mode",
    "rules",
    "tc",
    "tc_gap",
    "min_separation",
    "min_boundary_clearance",
    "samples",
    "seconds",
    "message",
)


def run_one(path: str, out_dir: str | None) -> dict:
    row = dict.fromkeys(COLUMNS, "")
    row["scenario"] = Path(path).name
    t = time.perf_counter()
    try:
        sc = load_scenario(path)
    except ScenarioError as exc:
        row.update(exit_code=exc.exit_code, valid=False, message=str(exc))
        return row
    except OSError as exc:
        row.update(exit_code=1, valid=False, message=f"I/O error: {exc}")
        return row
    target = None if out_dir is None else Path(out_dir) / Path(path).stem
    res = run_scenario(sc, target)
    row.update(n=sc.n, m=sc.m, k=sc.k, mode=sc.mode, exit_code=res.exit_code, message=res.message)
    row["valid"] = res.exit_code == EXIT_OK
    if res.rule_count is not None:
        row["rules"] = res.rule_count
    if sc.k >= 2:
        row["tc"] = tc_value(sc.n, sc.m, sc.k)
        if res.rule_count is not None:
            row["tc_gap"] = res.rule_count - row["tc"]
    if res.report is not None:
        row["min_separation"] = res.report.min_separation if res.report.min_separation is not None else ""
        row["min_boundary_clearance"] = (
            res.report.min_boundary_clearance if res.report.min_boundary_clearance is not None else ""
        )
        row["samples"] = res.report.samples
    row["seconds"] = f"{time.perf_counter() - t:.4f}"
    return row


def run_batch(directory, out_dir=None, parallelism: int = 1) -> tuple[str, bool]:
    """Return (CSV text, all_ok)."""
    files = sorted(str(p) for p in Path(directory).glob("*.json"))
    if parallelism > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            rows = list(pool.map(run_one, files, [out_dir] * len(files)))
    else:
        rows = [run_one(f, out_dir) for f in files]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue(), all(r["valid"] is True for r in rows)
