"""Shared exception types.

Input/precondition problems raise ValueError; the classes below cover the
two failure modes that deserve their own exit codes at the CLI boundary.
"""


class CapExceededError(Exception):
    """An oracle or solver refused an instance larger than its configured cap."""


class ConstructionError(Exception):
    """A randomized construction exhausted its retry budget or cannot exist."""
