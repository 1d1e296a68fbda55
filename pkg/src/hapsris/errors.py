"""Exception types shared across the package.

The CLI maps these onto its stable exit codes: configuration problems
exit with 2, guard violations with 3, and numerical wrap flags with 4.
"""


class ConfigError(ValueError):
    """A configuration file is malformed, incomplete, or inconsistent."""


class GuardError(RuntimeError):
    """A runtime guard rejected the requested computation."""


class GeometryGuardError(GuardError):
    """A station sits closer to an element than the minimum-distance guard."""


class SearchSpaceGuardError(GuardError):
    """An exhaustive search would exceed the tractability limits."""


class WrapInWindowError(RuntimeError):
    """A phase wrap instant falls inside a finite-difference window."""
