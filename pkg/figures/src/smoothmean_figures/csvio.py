"""Readers for the harness CSV schemas, with exact header validation."""

import csv
from dataclasses import dataclass

SWEEP_HEADER = ["experiment", "method", "family", "variance_level", "ratio", "n", "mean_deviation", "trials"]
DUMP_HEADER = ["experiment", "method", "family", "variance_level", "ratio", "n", "trial", "deviation", "error"]
BOUNDS_HEADER = ["method", "family", "variance_level", "ratio", "n", "delta", "epsilon", "kl", "scale"]


class SchemaError(ValueError):
    """Input CSV does not match the expected harness schema."""


@dataclass
class SweepRow:
    method: str
    ratio: float
    n: int
    mean_deviation: float


@dataclass
class DumpRow:
    method: str
    deviation: float


def _check_header(path, got, want):
    if got == want:
        return
    missing = [c for c in want if c not in got]
    extra = [c for c in got if c not in want]
    if missing:
        raise SchemaError(f"{path}: missing column {missing[0]!r} (expected header {','.join(want)})")
    if extra:
        raise SchemaError(f"{path}: unexpected column {extra[0]!r} (expected header {','.join(want)})")
    raise SchemaError(f"{path}: columns out of order (expected header {','.join(want)})")


def read_sweep(path):
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        _check_header(path, header, SWEEP_HEADER)
        rows = []
        for rec in reader:
            if rec[6] == "":
                continue  # cell where every trial errored
            rows.append(SweepRow(method=rec[1], ratio=float(rec[4]), n=int(rec[5]), mean_deviation=float(rec[6])))
    return rows


def read_dump(path):
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        _check_header(path, header, DUMP_HEADER)
        rows = []
        for rec in reader:
            if rec[8] != "" or rec[7] == "":
                continue  # errored trial carries no deviation
            rows.append(DumpRow(method=rec[1], deviation=float(rec[7])))
    return rows


def read_bounds(path):
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        _check_header(path, header, BOUNDS_HEADER)
        return {rec[0]: float(rec[6]) for rec in reader}
