"""Loading, validating, normalising, and splitting labelled time-series data.

Datasets are equal-length univariate series held as a single (n, m) float64
array plus an optional dense integer label vector. Two common text dialects
are understood: plain delimited rows with the label first, and the
'@'-header dialect whose data rows end in ``:label``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DatasetFormatError

SPLIT_MODES = ("combined", "train-test")


def as_series(values) -> np.ndarray:
    """Validate one univariate series and return it as a float64 vector."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise DatasetFormatError("a series must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(arr)):
        raise DatasetFormatError("series contains non-finite values")
    return arr


@dataclass(frozen=True)
class LabeledDataset:
    """An immutable bundle of equal-length series with optional labels.

    Parameters
    ----------
    values : ndarray of shape (n, m)
        The series, one per row.
    labels : ndarray of shape (n,) or None
        Dense integer class ids in 0..c-1, one per series.
    name : str
        Dataset name, used in benchmark records.
    label_names : tuple of str
        Original class tokens, indexed by dense id. Used to reconcile label
        alphabets across train/test files.
    """

    values: np.ndarray
    labels: np.ndarray | None = None
    name: str = ""
    label_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.size == 0:
            raise DatasetFormatError("dataset values must be a non-empty (n, m) array")
        if not np.all(np.isfinite(values)):
            raise DatasetFormatError("dataset contains non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.labels is not None:
            labels = np.asarray(self.labels, dtype=np.int64)
            if labels.shape != (values.shape[0],):
                raise DatasetFormatError("labels must have exactly one entry per series")
            if labels.min() < 0 or not np.array_equal(
                np.unique(labels), np.arange(labels.max() + 1)
            ):
                raise DatasetFormatError("labels must be dense integers 0..c-1")
            labels.setflags(write=False)
            object.__setattr__(self, "labels", labels)
            if self.label_names and len(self.label_names) != labels.max() + 1:
                raise DatasetFormatError("label_names must cover every dense id")

    @property
    def n_series(self) -> int:
        return self.values.shape[0]

    @property
    def length(self) -> int:
        return self.values.shape[1]

    @property
    def n_classes(self) -> int:
        if self.labels is None:
            raise DatasetFormatError(f"dataset {self.name!r} has no labels")
        return int(self.labels.max()) + 1


def _parse_float(token: str, path, lineno: int) -> float:
    try:
        return float(token)
    except ValueError as exc:
        raise DatasetFormatError(
            f"{path}: line {lineno}: non-numeric value {token!r}"
        ) from exc


def _densify(raw_labels: list[str]) -> tuple[np.ndarray, tuple[str, ...]]:
    mapping: dict[str, int] = {}
    dense = np.empty(len(raw_labels), dtype=np.int64)
    for i, token in enumerate(raw_labels):
        if token not in mapping:
            mapping[token] = len(mapping)
        dense[i] = mapping[token]
    return dense, tuple(mapping)


def _dataset_name(path) -> str:
    stem = os.path.basename(str(path)).rsplit(".", 1)[0]
    for suffix in ("_TRAIN", "_TEST"):
        if stem.endswith(suffix):
            return stem[: -len(suffix)]
    return stem


def load_ucr_file(path) -> LabeledDataset:
    """Load one dataset file in either text dialect.

    Dialect (a): one series per row, class token first, separated by tabs,
    commas, or whitespace. Dialect (b): metadata lines starting with '@',
    then rows of comma-separated values ending in ``:label``. Dialect (b)
    is detected by the presence of a leading '@'.
    """
    with open(path) as fh:
        lines = fh.read().splitlines()
    stripped = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not stripped:
        raise DatasetFormatError(f"{path}: empty file")

    header_dialect = any(ln.startswith("@") for _, ln in stripped)
    parsed: list[tuple[int, list[float]]] = []
    raw_labels: list[str] = []

    if header_dialect:
        in_data = False
        for lineno, ln in stripped:
            if ln.startswith("@"):
                if ln.lower().startswith("@data"):
                    in_data = True
                continue
            if not in_data:
                raise DatasetFormatError(f"{path}: line {lineno}: data before @data")
            if ":" not in ln:
                raise DatasetFormatError(f"{path}: line {lineno}: missing ':label'")
            body, label = ln.rsplit(":", 1)
            raw_labels.append(label.strip())
            parsed.append(
                (lineno, [_parse_float(tok, path, lineno) for tok in body.split(",")])
            )
        if not parsed:
            raise DatasetFormatError(f"{path}: no data rows after @data")
    else:
        for lineno, ln in stripped:
            if "\t" in ln:
                tokens = [t for t in ln.split("\t") if t.strip()]
            elif "," in ln:
                tokens = [t for t in ln.split(",") if t.strip()]
            else:
                tokens = ln.split()
            if len(tokens) < 2:
                raise DatasetFormatError(
                    f"{path}: line {lineno}: expected a label and at least one value"
                )
            raw_labels.append(tokens[0].strip())
            parsed.append(
                (lineno, [_parse_float(tok, path, lineno) for tok in tokens[1:]])
            )

    width = len(parsed[0][1])
    for lineno, row in parsed:
        if len(row) != width:
            raise DatasetFormatError(
                f"{path}: line {lineno}: ragged row ({len(row)} values, expected {width})"
            )

    labels, names = _densify(raw_labels)
    values = np.asarray([row for _, row in parsed], dtype=np.float64)
    return LabeledDataset(values, labels, _dataset_name(path), names)


def z_normalize(x) -> np.ndarray:
    """Scale one series to mean 0 and population standard deviation 1.

    Zero-variance series come back as all zeros.
    """
    x = as_series(x)
    sd = x.std()  # population convention: divide by m
    if sd == 0.0:
        return np.zeros_like(x)
    return (x - x.mean()) / sd


def z_normalize_dataset(ds: LabeledDataset) -> LabeledDataset:
    values = np.vstack([z_normalize(row) for row in ds.values])
    return LabeledDataset(values, ds.labels, ds.name, ds.label_names)


def _remap_to(alphabet: tuple[str, ...], ds: LabeledDataset) -> np.ndarray:
    lookup = {name: i for i, name in enumerate(alphabet)}
    try:
        return np.array([lookup[ds.label_names[v]] for v in ds.labels], dtype=np.int64)
    except KeyError as exc:
        raise DatasetFormatError(
            f"label alphabet mismatch: class {exc.args[0]!r} missing from train file"
        ) from exc


def apply_split(train: LabeledDataset, test: LabeledDataset, mode: str):
    """Build (fit_set, eval_set) from a train/test file pair.

    "combined" concatenates the two files (train rows first) and evaluates
    on the same combined set; "train-test" fits on train and evaluates on
    test. Labels of the test file are reconciled onto the train alphabet.
    """
    if mode not in SPLIT_MODES:
        raise DatasetFormatError(f"split mode must be one of {SPLIT_MODES}, got {mode!r}")
    if train.length != test.length:
        raise DatasetFormatError(
            f"series length mismatch: train m={train.length}, test m={test.length}"
        )

    if train.labels is not None and test.labels is not None and train.label_names:
        if set(test.label_names) != set(train.label_names):
            raise DatasetFormatError("train and test label alphabets differ")
        test_labels = _remap_to(train.label_names, test)
        test = LabeledDataset(test.values, test_labels, test.name, train.label_names)

    if mode == "train-test":
        return train, test

    if (train.labels is None) != (test.labels is None):
        raise DatasetFormatError("cannot combine a labelled and an unlabelled file")
    labels = None
    if train.labels is not None:
        labels = np.concatenate([train.labels, test.labels])
    combined = LabeledDataset(
        np.vstack([train.values, test.values]), labels, train.name, train.label_names
    )
    return combined, combined
