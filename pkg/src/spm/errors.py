"""Exception hierarchy shared by the library and the CLI.

Each class maps to one CLI exit code.
"""


class SpmError(Exception):
    exit_code = 1


class InputError(SpmError, ValueError):
    """Malformed input: parse failures, out-of-range indices, bad parameters."""

    exit_code = 1


class PreconditionError(SpmError):
    """The instance does not satisfy what the chosen algorithm requires."""

    exit_code = 2


class SizeGuardError(SpmError):
    """An exhaustive routine refused an input that is too large."""

    exit_code = 3
