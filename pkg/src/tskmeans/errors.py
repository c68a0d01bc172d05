"""Exception types shared across the package."""


class DatasetFormatError(ValueError):
    """A dataset file is structurally invalid (ragged, empty, unparseable)."""


class ParameterError(ValueError):
    """A distance, averaging, or clustering parameter is out of range."""


class DegenerateInputError(ValueError):
    """An input is degenerate for the requested operation (e.g. all-zero
    series where a norm is required)."""


class EmptyClusterError(ValueError):
    """An averaging procedure received an empty member set; callers must
    repair empty clusters before updating centroids."""


class UndefinedTestError(ValueError):
    """A statistical test has too little data to be defined (e.g. fewer
    than three nonzero differences for the signed-rank test)."""
