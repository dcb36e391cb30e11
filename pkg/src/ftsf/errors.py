"""Exception types for the forecasting toolkit."""


class ForecastError(Exception):
    """Base class for every error raised on bad input, data, or state."""


# series loading / splitting

class MissingFile(ForecastError):
    pass


class UnparseableValue(ForecastError):
    """A value cell could not be parsed as a finite real. Carries the 1-based file row."""

    def __init__(self, row: int, text: str = ""):
        super().__init__(f"row {row}: cannot parse value {text!r}")
        self.row = row
        self.text = text


class TooFewRows(ForecastError):
    pass


class UnknownColumn(ForecastError):
    pass


class UnknownDataset(ForecastError):
    pass


class DegenerateSplit(ForecastError):
    pass


# partitioning

class DegenerateRange(ForecastError):
    pass


class TooFewDistinctValues(ForecastError):
    pass


class CenterOutsideUOD(ForecastError):
    pass


class UnsortedCenters(ForecastError):
    pass


# fuzzification

class OutOfUniverse(ForecastError):
    pass


class DegenerateInterval(ForecastError):
    pass


class ConstantSeries(ForecastError):
    pass


# regressors

class DimensionMismatch(ForecastError):
    pass


class EmptyTrainingSet(ForecastError):
    pass


class LengthMismatch(ForecastError):
    pass


class DivergedLoss(ForecastError):
    pass


# metrics

class EmptyInput(ForecastError):
    pass


class ZeroDenominator(ForecastError):
    """SMAPE denominator vanished. Carries the 0-based pair index."""

    def __init__(self, index: int):
        super().__init__(f"pair {index}: |actual| + |predicted| = 0")
        self.index = index


# configuration / persistence / orchestration

class ConfigError(ForecastError):
    pass


class UnknownFormat(ForecastError):
    pass


class CorruptFile(ForecastError):
    pass


class IoFailure(ForecastError):
    pass


class PipelineError(ForecastError):
    """A pipeline stage failed. Carries the stage name and the original error."""

    def __init__(self, stage: str, cause: ForecastError):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause
