"""Exception hierarchy shared by all modules."""


class VBQError(Exception):
    """Base class for every error raised by this package."""


class StructureError(VBQError):
    """Malformed input: bad table shape, out-of-range entry, not a permutation,
    invalid group table."""


class ParameterError(VBQError):
    """Invalid construction parameters (for example non-unit ring coefficients)."""


class AxiomError(VBQError):
    """A well-formed structure failed one or more axioms.

    The full :class:`~vbq.algebra.AxiomReport` is kept on ``report``.
    """

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(report.failure_lines()) or "axiom failure")


class ParseError(VBQError):
    """Text input (braid word, Gauss code, structure file) does not parse."""


class BudgetExceeded(VBQError):
    """A search would exceed the configured evaluation budget."""

    def __init__(self, required, budget, what="tuple evaluations"):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} required: {required}, budget: {budget}")
