"""Loader, normalisation, and split behaviour."""

import numpy as np
import pytest

from tskmeans.data import (
    LabeledDataset,
    apply_split,
    load_ucr_file,
    z_normalize,
    z_normalize_dataset,
)
from tskmeans.errors import DatasetFormatError
from tskmeans.synthetic import make_blob_dataset, write_ucr_split


def write(tmp_path, text, name="data.tsv"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestLoadUcrFile:
    def test_space_separated_label_first(self, tmp_path):
        ds = load_ucr_file(write(tmp_path, "1 0.0 1.0\n2 1.0 0.0\n"))
        assert ds.n_series == 2 and ds.length == 2
        assert ds.labels.tolist() == [0, 1]
        assert np.array_equal(ds.values, [[0.0, 1.0], [1.0, 0.0]])

    def test_single_class_remaps_to_zero(self, tmp_path):
        ds = load_ucr_file(write(tmp_path, "2 5.0\n2 6.0\n"))
        assert ds.n_series == 2 and ds.length == 1
        assert ds.labels.tolist() == [0, 0]
        assert ds.label_names == ("2",)

    def test_tab_and_comma_dialects(self, tmp_path):
        tabbed = load_ucr_file(write(tmp_path, "a\t1.5\t2.5\nb\t0.5\t0.0\n", "t.tsv"))
        comma = load_ucr_file(write(tmp_path, "a,1.5,2.5\nb,0.5,0.0\n", "c.csv"))
        assert np.array_equal(tabbed.values, comma.values)
        assert tabbed.labels.tolist() == comma.labels.tolist() == [0, 1]

    def test_header_dialect(self, tmp_path):
        text = "@problemName toy\n@timeStamps false\n@data\n0.0,1.0:1\n1.0,0.0:2\n"
        ds = load_ucr_file(write(tmp_path, text, "toy_TRAIN.ts"))
        assert ds.labels.tolist() == [0, 1]
        assert ds.name == "toy"
        assert np.array_equal(ds.values, [[0.0, 1.0], [1.0, 0.0]])

    def test_ragged_rows_error_names_line(self, tmp_path):
        path = write(tmp_path, "1 0.0 1.0 2.0\n2 1.0 0.0\n")
        with pytest.raises(DatasetFormatError, match="line 2"):
            load_ucr_file(path)

    def test_non_numeric_error(self, tmp_path):
        with pytest.raises(DatasetFormatError, match="non-numeric"):
            load_ucr_file(write(tmp_path, "1 0.0 oops\n"))

    def test_empty_file_error(self, tmp_path):
        with pytest.raises(DatasetFormatError, match="empty"):
            load_ucr_file(write(tmp_path, "\n\n"))

    def test_data_before_header_error(self, tmp_path):
        with pytest.raises(DatasetFormatError, match="@data"):
            load_ucr_file(write(tmp_path, "0.0,1.0:1\n@data\n"))

    def test_first_appearance_label_order(self, tmp_path):
        ds = load_ucr_file(write(tmp_path, "9 1.0\n3 2.0\n9 3.0\n5 4.0\n"))
        assert ds.labels.tolist() == [0, 1, 0, 2]
        assert ds.label_names == ("9", "3", "5")


class TestLabeledDataset:
    def test_rejects_sparse_labels(self):
        with pytest.raises(DatasetFormatError):
            LabeledDataset(np.zeros((2, 3)), labels=[0, 2])

    def test_rejects_wrong_label_count(self):
        with pytest.raises(DatasetFormatError):
            LabeledDataset(np.zeros((2, 3)), labels=[0])

    def test_rejects_non_finite(self):
        with pytest.raises(DatasetFormatError):
            LabeledDataset(np.array([[1.0, np.nan]]))

    def test_values_read_only(self):
        ds = LabeledDataset(np.zeros((2, 3)), labels=[0, 1])
        with pytest.raises(ValueError):
            ds.values[0, 0] = 5.0


class TestZNormalize:
    def test_constant_series_to_zeros(self):
        assert np.array_equal(z_normalize([1.0, 1.0, 1.0]), [0.0, 0.0, 0.0])

    def test_two_point_example(self):
        assert np.allclose(z_normalize([0.0, 2.0]), [-1.0, 1.0])

    def test_output_statistics(self):
        out = z_normalize([1.0, 2.0, 3.0, 4.0])
        assert abs(out.mean()) < 1e-12
        assert abs(out.std() - 1.0) < 1e-12  # population sigma

    def test_idempotent_on_non_constant(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            x = rng.standard_normal(16)
            once = z_normalize(x)
            assert np.allclose(z_normalize(once), once, atol=1e-12)

    def test_dataset_normalisation_is_per_series(self):
        ds = LabeledDataset(np.array([[0.0, 2.0], [10.0, 30.0]]), labels=[0, 1])
        out = z_normalize_dataset(ds)
        assert np.allclose(out.values, [[-1.0, 1.0], [-1.0, 1.0]])
        assert out.labels.tolist() == [0, 1]


class TestApplySplit:
    def make_pair(self):
        train = LabeledDataset(
            np.arange(4.0).reshape(2, 2), labels=[0, 1], name="toy",
            label_names=("a", "b"),
        )
        test = LabeledDataset(
            np.arange(6.0).reshape(3, 2) + 10.0, labels=[0, 0, 1], name="toy",
            label_names=("a", "b"),
        )
        return train, test

    def test_combined_concatenates_train_first(self):
        train, test = self.make_pair()
        fit_set, eval_set = apply_split(train, test, "combined")
        assert fit_set is eval_set
        assert fit_set.n_series == 5
        assert np.array_equal(fit_set.values[:2], train.values)
        assert np.array_equal(fit_set.values[2:], test.values)
        assert fit_set.labels.tolist() == [0, 1, 0, 0, 1]

    def test_train_test_passthrough(self):
        train, test = self.make_pair()
        fit_set, eval_set = apply_split(train, test, "train-test")
        assert fit_set.n_series == 2 and eval_set.n_series == 3

    def test_length_mismatch_error(self):
        train, _ = self.make_pair()
        short = LabeledDataset(np.zeros((2, 3)), labels=[0, 1], label_names=("a", "b"))
        with pytest.raises(DatasetFormatError, match="length mismatch"):
            apply_split(train, short, "combined")

    def test_unknown_mode_error(self):
        train, test = self.make_pair()
        with pytest.raises(DatasetFormatError, match="split mode"):
            apply_split(train, test, "holdout")

    def test_test_labels_reconciled_by_name(self):
        # Same alphabet, different first-appearance order: dense ids must be
        # rewritten onto the train alphabet before evaluation.
        train = LabeledDataset(
            np.zeros((2, 2)), labels=[0, 1], label_names=("a", "b")
        )
        test = LabeledDataset(
            np.ones((2, 2)), labels=[0, 1], label_names=("b", "a")
        )
        _, eval_set = apply_split(train, test, "train-test")
        assert eval_set.labels.tolist() == [1, 0]

    def test_alphabet_mismatch_error(self):
        train = LabeledDataset(np.zeros((2, 2)), labels=[0, 1], label_names=("a", "b"))
        test = LabeledDataset(np.ones((2, 2)), labels=[0, 1], label_names=("a", "c"))
        with pytest.raises(DatasetFormatError, match="alphabet"):
            apply_split(train, test, "train-test")


def test_write_then_load_round_trip(tmp_path):
    ds = make_blob_dataset(n_series=12, length=5, n_classes=3, seed=4, name="rt")
    train_path, test_path = write_ucr_split(ds, str(tmp_path))
    train = load_ucr_file(train_path)
    test = load_ucr_file(test_path)
    assert train.name == test.name == "rt"
    combined, _ = apply_split(train, test, "combined")
    assert combined.n_series == ds.n_series
    # %.17g serialisation preserves float64 exactly
    original = np.sort(ds.values, axis=0)
    reloaded = np.sort(combined.values, axis=0)
    assert np.array_equal(original, reloaded)
