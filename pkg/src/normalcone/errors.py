"""Exception hierarchy and the symbolic INFINITE value.

Lengths and indices in this package are exact: a quantity that is not finite
is reported as the INFINITE singleton, never as a float.
"""


class NormalConeError(Exception):
    """Base class for all package errors."""


class TruncationCapExceeded(NormalConeError):
    """A series-mode computation needed degrees at or beyond the truncation cap."""


class ResourceBudgetError(NormalConeError):
    """An explicit iteration or size budget was exhausted."""


class NotFilterRegular(NormalConeError):
    """A sequence failed the filter-regularity certificate where one was required."""


class NotMPrimary(NormalConeError):
    """An operation required an ideal primary to the maximal ideal."""


class InternalCheckFailed(NormalConeError):
    """Two independent computations of the same invariant disagreed.

    This always indicates a bug, never bad user input; it is raised loudly on
    purpose so that cross-checks cannot be silently skipped.
    """


class _Infinite:
    """Order-top element comparable with ints; singleton, not a float."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("INFINITE")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    def __radd__(self, other):
        return self


INFINITE = _Infinite()
