"""Exception hierarchy shared by every module.

Each exception carries a short machine-readable ``code`` that the CLI
reports on stderr.
"""


class LogicError(Exception):
    code = "error"


class FormulaSyntaxError(LogicError, ValueError):
    code = "parse"

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class MissingAtomError(LogicError, KeyError):
    code = "missing-atom"

    def __init__(self, atom):
        super().__init__(atom)
        self.atom = atom

    def __str__(self):
        return f"assignment has no value for atom {self.atom!r}"


class BoundExceededError(LogicError):
    code = "bound"


class ShapeError(LogicError, ValueError):
    code = "shape"


class ConditionError(LogicError):
    """A morphism fails a resolution condition an operation requires."""

    code = "condition"
