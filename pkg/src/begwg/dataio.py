"""CSV input/output, the embedded NFL dataset and the fit-result JSON schema."""
import csv
import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .estimation import PairedSample
from .exceptions import DataError

__all__ = [
    "DatasetMeta", "load_csv", "save_csv", "nfl_dataset", "nfl_meta",
    "nfl_checksum", "FIT_RESULT_SCHEMA", "fit_result_json",
]

HEADER = ("x1", "x2")


@dataclass(frozen=True)
class DatasetMeta:
    name: str
    n: int
    source: str


# Game times (minutes.seconds read as plain decimals) to the first field goal
# (x1) and the first touchdown-type score (x2), three NFL weekends in 1986.
# Row-major over the three column pairs of the source table.
_NFL = (
    (2.05, 3.98), (5.78, 25.98), (10.40, 10.25),
    (9.05, 9.05), (13.80, 49.75), (2.98, 2.98),
    (0.85, 0.85), (7.25, 7.25), (3.88, 6.43),
    (3.43, 3.43), (4.25, 4.25), (0.75, 0.75),
    (7.78, 7.78), (1.65, 1.65), (11.63, 17.37),
    (10.57, 14.28), (6.42, 15.08), (1.38, 1.38),
    (7.05, 7.05), (4.22, 9.48), (10.53, 10.53),
    (2.58, 2.58), (15.53, 15.53), (12.13, 12.13),
    (7.23, 9.68), (2.90, 2.90), (14.58, 14.58),
    (6.85, 34.58), (7.02, 7.02), (11.82, 11.82),
    (32.45, 42.35), (6.42, 6.42), (5.52, 11.27),
    (8.53, 14.57), (8.98, 8.98), (19.65, 10.70),
    (31.13, 49.88), (10.15, 10.15), (17.83, 17.83),
    (14.58, 20.57), (8.87, 8.87), (10.85, 38.07),
)
NFL_SHA256 = "ac1a15c7ec09cfc56701c47754cfb75aa2fed7590a2542f8119a03952b387e33"


def nfl_checksum(pairs=_NFL):
    """sha256 of the pairs rendered as ``repr`` CSV rows."""
    text = "\n".join(f"{a!r},{b!r}" for a, b in pairs)
    return hashlib.sha256(text.encode("ascii")).hexdigest()


def nfl_meta():
    return DatasetMeta("nfl", len(_NFL),
                       "NFL 1986: times to first kicked score and first touchdown")


def nfl_dataset():
    """The 42 embedded NFL pairs as a :class:`PairedSample`."""
    return PairedSample(np.array(_NFL, dtype=float))


def load_csv(path):
    """Read ``x1,x2`` pairs; errors name the offending 1-based data rows.

    Values are parsed with ``float`` (decimal point only, no locale).
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(c.strip() for c in rows[0]) != HEADER:
        raise DataError('first line must be the header "x1,x2"')
    pairs, bad, nonpos = [], [], []
    for i, row in enumerate(rows[1:], start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            bad.append(i)
            continue
        try:
            vals = [float(c) for c in row]
        except ValueError:
            bad.append(i)
            continue
        if not all(np.isfinite(vals)):
            bad.append(i)
        elif min(vals) <= 0:
            nonpos.append(i)
        else:
            pairs.append(vals)
    if bad:
        raise DataError(f"unparseable or incomplete rows: {bad}", rows=bad)
    if nonpos:
        raise DataError(f"non-positive values in rows: {nonpos}", rows=nonpos)
    return PairedSample(np.array(pairs, dtype=float).reshape(-1, 2))


def _write_pairs(fh, pairs):
    fh.write(",".join(HEADER) + "\n")
    for a, b in np.asarray(pairs, dtype=float):
        fh.write(f"{float(a)!r},{float(b)!r}\n")


def save_csv(path_or_file, sample):
    """Write pairs with round-trip exact ``repr`` floats."""
    pairs = sample.pairs if isinstance(sample, PairedSample) else sample
    if hasattr(path_or_file, "write"):
        _write_pairs(path_or_file, pairs)
    else:
        with open(path_or_file, "w", encoding="utf-8", newline="") as fh:
            _write_pairs(fh, pairs)


_NUM = {"type": "number"}
_INTERVAL = {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}

FIT_RESULT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "FitResult",
    "type": "object",
    "required": ["alpha_hat", "log_likelihood", "aic", "caic", "bic_paper",
                 "bic_standard", "covariance", "ci", "converged", "iterations"],
    "additionalProperties": False,
    "properties": {
        "alpha_hat": {"type": "array", "items": _NUM, "minItems": 3, "maxItems": 3},
        "log_likelihood": _NUM,
        "aic": _NUM,
        "caic": _NUM,
        "bic_paper": _NUM,
        "bic_standard": _NUM,
        "covariance": {"type": "array", "minItems": 3, "maxItems": 3,
                       "items": {"type": "array", "items": _NUM,
                                 "minItems": 3, "maxItems": 3}},
        "ci": {"type": "array", "items": _INTERVAL, "minItems": 3, "maxItems": 3},
        "converged": {"type": "boolean"},
        "iterations": {"type": "integer", "minimum": 0},
    },
}


def fit_result_json(result, indent=2):
    """Serialise a FitResult with the keys of :data:`FIT_RESULT_SCHEMA`."""
    return json.dumps(result.to_dict(), indent=indent)
