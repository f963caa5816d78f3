"""Exception types shared across the package.

Two failure families are distinguished because the CLI maps them to different
exit codes: violated operation contracts (bad arguments, broken invariants)
versus unreadable input files.
"""


class ContractError(ValueError):
    """An operation precondition or documented invariant was violated."""


class FormatError(ValueError):
    """A text file (complex, space, config) could not be parsed."""
