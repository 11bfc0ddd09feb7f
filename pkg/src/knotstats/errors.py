"""Exception types shared across the toolkit."""


class KnotstatsError(Exception):
    """Base class for all toolkit errors."""


# --- diagram codes ---

class OddValue(KnotstatsError):
    """A DT code contains an odd value."""


class DuplicateMagnitude(KnotstatsError):
    """A DT code repeats the same magnitude."""


class WrongRange(KnotstatsError):
    """DT magnitudes do not form the set {2, 4, ..., 2c}."""


class NonRealizable(KnotstatsError):
    """The Gauss sequence admits no planar embedding."""


# --- invariants ---

class BudgetExceeded(KnotstatsError):
    """Crossing count above the state-sum budget."""


class NonSquareNorm(KnotstatsError):
    """Bracket evaluation has a non-square modulus; signals a bug."""


class Disagreement(KnotstatsError):
    """The determinant routes returned different values."""

    def __init__(self, values):
        self.values = dict(values)
        super().__init__(f"determinant routes disagree: {self.values}")


# --- families ---

class NotAKnot(KnotstatsError):
    """Construction produced more than one component."""


# --- dataset ---

class MissingColumn(KnotstatsError):
    """A required CSV column is absent."""


class MalformedRow(KnotstatsError):
    """A CSV row could not be parsed."""


class EmptyFile(KnotstatsError):
    """The CSV file holds no data rows."""


class DegenerateRange(KnotstatsError):
    """All values in a range are equal; nothing to resolve."""


# --- stats ---

class DegenerateX(KnotstatsError):
    """Zero variance in the regressor."""


class TooFewPoints(KnotstatsError):
    """Not enough points for the requested fit."""


class NonpositiveVolume(KnotstatsError):
    """A volume value is zero or negative."""


class EmptyInput(KnotstatsError):
    """No records supplied."""


class NoConvergence(KnotstatsError):
    """Iteration limit reached before the tolerance was met."""


class SingularJacobian(KnotstatsError):
    """Normal equations are singular at the current iterate."""
