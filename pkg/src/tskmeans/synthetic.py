"""Generators for well-separated synthetic datasets.

Two families: Gaussian blobs in series space (separation controlled by a
gap/spread ratio) for testing the plain-euclidean pipeline, and
distinct-frequency sinusoids (which stay separated after per-series
z-normalisation) for exercising the elastic and shape-based presets.
A writer emits the tab-separated train/test file pair the loader reads.
"""

from __future__ import annotations

import os

import numpy as np

from .data import LabeledDataset
from .errors import ParameterError


def _class_sizes(n_series: int, n_classes: int) -> list[int]:
    if n_classes < 1 or n_series < n_classes:
        raise ParameterError("need at least one series per class")
    base = n_series // n_classes
    sizes = [base] * n_classes
    for c in range(n_series - base * n_classes):
        sizes[c] += 1
    return sizes


def make_blob_dataset(
    n_series: int = 60,
    length: int = 20,
    n_classes: int = 3,
    gap: float = 100.0,
    spread: float = 1.0,
    seed: int = 0,
    name: str = "blobs",
) -> LabeledDataset:
    """Gaussian blobs around random unit directions scaled to ``gap``.

    Class centres sit ``~gap*sqrt(2)`` apart while members scatter with
    standard deviation ``spread`` per coordinate, so the default ratio
    keeps the generative partition as the unique optimal SSE partition.
    """
    if gap <= 0 or spread < 0:
        raise ParameterError("gap must be positive and spread non-negative")
    rng = np.random.default_rng(seed)
    sizes = _class_sizes(n_series, n_classes)
    centres = rng.standard_normal((n_classes, length))
    centres /= np.linalg.norm(centres, axis=1, keepdims=True)
    centres *= gap
    rows = []
    labels = []
    for c, size in enumerate(sizes):
        rows.append(centres[c] + spread * rng.standard_normal((size, length)))
        labels.extend([c] * size)
    values = np.vstack(rows)
    return LabeledDataset(
        values=values,
        labels=np.asarray(labels),
        name=name,
        label_names=tuple(str(c) for c in range(n_classes)),
    )


def make_shape_dataset(
    n_series: int = 60,
    length: int = 32,
    n_classes: int = 3,
    noise: float = 0.01,
    shift_jitter: int = 0,
    seed: int = 0,
    name: str = "shapes",
) -> LabeledDataset:
    """Sinusoid classes at distinct integer frequencies.

    Distinct whole-cycle frequencies are near-orthogonal over the window,
    so after z-normalisation the class prototypes sit ``~sqrt(2*length)``
    apart while members scatter by ``~noise*sqrt(2*length)`` — the default
    noise of 0.01 realises a 100x gap-to-spread ratio that survives the
    shift- and scale-invariant distances. Amplitude and offset vary per
    series; ``shift_jitter`` optionally rolls each series by a small
    random number of samples.
    """
    if noise < 0:
        raise ParameterError("noise must be non-negative")
    if not 0 <= shift_jitter < length:
        raise ParameterError("shift_jitter must lie in [0, length)")
    rng = np.random.default_rng(seed)
    sizes = _class_sizes(n_series, n_classes)
    t = np.arange(length, dtype=np.float64)
    rows = []
    labels = []
    for c, size in enumerate(sizes):
        cycles = c + 1
        prototype = np.sin(2.0 * np.pi * cycles * t / length)
        for _ in range(size):
            amplitude = 1.0 + 0.2 * rng.uniform(-1.0, 1.0)
            offset = rng.uniform(-1.0, 1.0)
            series = amplitude * prototype + offset
            series = series + noise * rng.standard_normal(length)
            if shift_jitter:
                series = np.roll(series, int(rng.integers(-shift_jitter, shift_jitter + 1)))
            rows.append(series)
            labels.append(c)
    values = np.vstack(rows)
    return LabeledDataset(
        values=values,
        labels=np.asarray(labels),
        name=name,
        label_names=tuple(str(c) for c in range(n_classes)),
    )


def split_dataset(
    dataset: LabeledDataset, test_fraction: float = 0.5
) -> tuple[LabeledDataset, LabeledDataset]:
    """Deterministic stratified split: within each class the first
    ``1 - test_fraction`` of series (at least one) go to train, the rest
    to test, preserving order."""
    if not 0.0 < test_fraction < 1.0:
        raise ParameterError("test_fraction must lie strictly between 0 and 1")
    train_idx: list[int] = []
    test_idx: list[int] = []
    for c in range(dataset.n_classes):
        members = np.flatnonzero(dataset.labels == c)
        if members.size < 2:
            raise ParameterError(
                f"class {c} has fewer than 2 series; cannot stratify"
            )
        n_train = int(round(members.size * (1.0 - test_fraction)))
        n_train = min(max(n_train, 1), members.size - 1)
        train_idx.extend(members[:n_train])
        test_idx.extend(members[n_train:])
    train_idx.sort()
    test_idx.sort()

    def subset(idx: list[int]) -> LabeledDataset:
        return LabeledDataset(
            values=dataset.values[idx],
            labels=dataset.labels[idx],
            name=dataset.name,
            label_names=dataset.label_names,
        )

    return subset(train_idx), subset(test_idx)


def write_ucr_split(
    dataset: LabeledDataset,
    directory: str,
    test_fraction: float = 0.5,
) -> tuple[str, str]:
    """Write ``<name>_TRAIN.tsv`` / ``<name>_TEST.tsv`` under ``directory``
    in the label-first tab-separated dialect, with full float precision."""
    train, test = split_dataset(dataset, test_fraction)
    os.makedirs(directory, exist_ok=True)
    paths = []
    for part, suffix in ((train, "TRAIN"), (test, "TEST")):
        path = os.path.join(directory, f"{dataset.name}_{suffix}.tsv")
        with open(path, "w", encoding="ascii") as fh:
            for row, label in zip(part.values, part.labels):
                cells = [part.label_names[label] if part.label_names else str(label)]
                cells.extend(format(v, ".17g") for v in row)
                fh.write("\t".join(cells) + "\n")
        paths.append(path)
    return paths[0], paths[1]
