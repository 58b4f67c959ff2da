"""Exception types shared across the package.

Invalid arguments and invalid states raise plain ValueError; the classes
below cover failures that callers (notably the CLI) need to tell apart.
"""


class QcorrError(Exception):
    """Base class for package-specific failures."""


class NumericFailure(QcorrError):
    """A numerical routine produced an inconsistent or out-of-range result."""


class ConfigError(QcorrError):
    """A sweep configuration is malformed or incomplete."""


class OutputError(QcorrError):
    """Writing results to disk failed."""


# CLI exit codes
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4
