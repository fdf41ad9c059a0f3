"""Module for custom_exceptions.

Where possible we try to throw exceptions with non-generic,
meaningful names.
"""


class EtveaException(Exception):
    """Base class for all errors"""

    pass


class ContractViolation(ValueError, EtveaException):
    """A precondition of an operation was not met by its caller."""

    pass


class NotFound(EtveaException):
    """Resource cannot be found"""

    pass


class UnknownProblem(KeyError, NotFound):
    """The benchmark suite does not contain the problem requested."""

    pass


class UnknownDesign(KeyError, NotFound):
    """No EA design is registered under the name requested."""

    pass


class UnknownOperator(KeyError, NotFound):
    """No search operator is registered under the id requested."""

    pass


class BadConfig(ValueError, EtveaException):
    """An experiment configuration is malformed or inconsistent"""

    pass


class OutputNotWritable(EtveaException):
    """The output directory cannot be created or written to."""

    pass


class NoResults(EtveaException):
    """An analysis was asked for but no results were published."""

    pass


class IncompleteMatrix(EtveaException):
    """
    The experiment matrix lacks cells required by an analysis.

    The missing cells are kept on the exception so callers can report them.
    """

    def __init__(self, missing, what="cells"):
        self.missing = list(missing)
        listing = ", ".join(str(cell) for cell in self.missing)
        super(IncompleteMatrix, self).__init__(
            "%d missing %s: %s" % (len(self.missing), what, listing)
        )


class RunFailed(EtveaException):
    """A single run of the matrix raised; the cell is recorded as failed"""

    pass
