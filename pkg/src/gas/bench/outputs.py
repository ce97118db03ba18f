import csv
import json
import logging
import math
from pathlib import Path

import numpy as np

from ..errors import GasError

logger = logging.getLogger(__name__)

HEATMAP_HEADER = ("sigma", "rho", "mse_ratio", "eff_ratio")


class OutputError(GasError):
    """An output file could not be written."""


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if hasattr(value, "value") and not isinstance(value, (str, bytes)):
        return value.value
    return value


def _format_cell(value):
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def output_stem(verb, model=None, estimator=None, seed=None):
    """File-name stem embedding the verb, model id, estimator and seed."""
    parts = [verb]
    if model:
        parts.append(str(model))
    if estimator:
        parts.append(str(estimator))
    if seed is not None:
        parts.append(f"seed{seed}")
    return "_".join(parts)


def write_json(path, data):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as f:
            json.dump(_jsonable(data), f, indent=2, sort_keys=True)
            f.write("\n")
    except OSError as e:
        raise OutputError(f"Could not write {path}: {e}") from e
    logger.info(f"Wrote {path}")
    return path


def write_csv(path, header, rows):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_format_cell(v) for v in row])
    except OSError as e:
        raise OutputError(f"Could not write {path}: {e}") from e
    logger.info(f"Wrote {path}")
    return path


def read_json(path):
    with Path(path).open("r", encoding="utf-8") as f:
        return json.load(f)


def emit_estimator_result(result, output_dir, stem):
    """Result JSON, per-replication CSV, a separate timing JSON and the first fitted PCE."""
    output_dir = Path(output_dir)
    paths = [
        write_json(output_dir / f"{stem}.json", result.to_dict()),
        write_csv(
            output_dir / f"{stem}.csv",
            ("replication", "estimate"),
            list(enumerate(result.estimates.tolist())),
        ),
        write_json(output_dir / f"{stem}_timing.json", result.timing_dict()),
    ]
    if result.surrogate is not None:
        paths.append(write_json(output_dir / f"{stem}_pce.json", result.surrogate.to_dict()))
    return paths


def emit_heatmap(grid, output_dir, stem):
    """Heatmap CSV, the seed-determined grid JSON and the efficiency ratios as timing JSON.

    The CSV keeps its ``eff_ratio`` column, so unlike the JSON it is not
    byte-reproducible across reruns.
    """
    output_dir = Path(output_dir)
    return [
        write_csv(output_dir / f"{stem}.csv", HEATMAP_HEADER, grid.rows()),
        write_json(output_dir / f"{stem}.json", grid.to_dict()),
        write_json(output_dir / f"{stem}_timing.json", grid.timing_dict()),
    ]


def emit_summary(summary, output_dir, stem):
    return [write_csv(Path(output_dir) / f"{stem}.csv", summary.columns, summary.values.tolist())]


def emit_spectrum(decomp, output_dir, stem, gammas=None):
    """Columnar spectrum CSV (one row per direction) plus the decomposition JSON."""
    output_dir = Path(output_dir)
    d = decomp.dimension
    header = ["index", "lambda", "lambda_normalized"]
    columns = [range(1, d + 1), decomp.lambdas.tolist(), decomp.normalized().tolist()]
    if gammas is not None:
        header += ["gamma", "gamma_normalized"]
        columns += [gammas.gammas.tolist(), gammas.normalized().tolist()]
    header += [f"u{j + 1}" for j in range(d)]
    columns += [decomp.U[:, j].tolist() for j in range(d)]

    data = {"decomposition": decomp.to_dict()}
    if gammas is not None:
        data["gamma"] = gammas.to_dict()
    return [
        write_csv(output_dir / f"{stem}.csv", header, list(zip(*columns))),
        write_json(output_dir / f"{stem}.json", data),
    ]


def emit_records(records, output_dir, stem, columns):
    """JSON of ``records`` plus a flat CSV of the chosen scalar ``columns``."""
    output_dir = Path(output_dir)
    rows = [[record.get(c) for c in columns] for record in records]
    return [
        write_json(output_dir / f"{stem}.json", records),
        write_csv(output_dir / f"{stem}.csv", columns, rows),
    ]
