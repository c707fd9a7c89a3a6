"""Error types shared across the package."""


class NumericalError(RuntimeError):
    """A numeric computation left its validity envelope (blow-up, NaN, failed solve)."""
