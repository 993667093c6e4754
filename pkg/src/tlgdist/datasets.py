"""Data ingestion: CSV parsing into Dataset and the bundled case-study
sample of 100 bank-customer waiting times (minutes).
"""

from __future__ import annotations

import hashlib
from importlib import resources

import numpy as np

from .estimation import Dataset
from .exceptions import DataError

__all__ = [
    "ingest_csv",
    "bank_waiting_times",
    "FIXTURE_NAME",
    "FIXTURE_SHA256",
    "fixture_sha256",
]

FIXTURE_NAME = "bank_waiting_times.csv"
# checksum of the bundled file, asserted by the test suite so silent fixture
# edits cannot skew every downstream reference number
FIXTURE_SHA256 = "2ded0421f3d2b1487e35d3362687a24a70cced78db943ef26ad1973db2add57b"


def _parse_text(text: str, origin: str) -> Dataset:
    values: list[float] = []
    first_content = True
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        tokens = [t.strip() for t in stripped.split(",") if t.strip()]
        try:
            nums = [float(t) for t in tokens]
        except ValueError:
            if first_content:
                # a single leading header line is allowed
                first_content = False
                continue
            raise DataError(f"{origin}: cannot parse line {lineno}: {stripped!r}")
        first_content = False
        for v in nums:
            if not np.isfinite(v):
                raise DataError(f"{origin}: non-finite value on line {lineno}")
            if v <= 0.0:
                raise DataError(
                    f"{origin}: non-positive value {v!r} on line {lineno}"
                )
        values.extend(nums)
    if not values:
        raise DataError(f"{origin}: no numeric values found")
    return Dataset(np.asarray(values))


def ingest_csv(path) -> Dataset:
    """Read a sample from ``path``: one value per line or comma-separated,
    with an optional single header line.

    Returns
    -------
    Dataset
        Validated (positive, finite) and sorted.

    Raises
    ------
    DataError
        On unreadable files, parse failures (with the line number),
        non-positive or non-finite values, or an empty file.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    return _parse_text(text, str(path))


def _fixture_bytes() -> bytes:
    return resources.files(__package__).joinpath(f"data/{FIXTURE_NAME}").read_bytes()


def fixture_sha256() -> str:
    """SHA-256 of the bundled fixture as shipped."""
    return hashlib.sha256(_fixture_bytes()).hexdigest()


def bank_waiting_times() -> Dataset:
    """The bundled 100-point waiting-times sample used throughout the docs
    and tests (n=100, min 0.8, max 38.5)."""
    return _parse_text(_fixture_bytes().decode("utf-8"), FIXTURE_NAME)
