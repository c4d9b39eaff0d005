"""Laboratory for generalized additive recurrences and related recursive processes."""

__version__ = "0.1.0"
