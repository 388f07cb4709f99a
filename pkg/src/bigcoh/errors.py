"""Exception hierarchy.

Errors split into two families: ``InputError`` for things a caller can
cause (bad shapes, non-cocycles, vectors outside a domain), and
``EngineError`` for failed internal cross-checks that should never fire on
valid input.  The CLI maps the second family to exit code 4.
"""


class BigcohError(Exception):
    pass


class InputError(BigcohError):
    pass


class EngineError(BigcohError):
    pass


class InvalidDimensions(InputError, ValueError):
    pass


class MalformedComplex(InputError):
    pass


class ValidationError(InputError):
    def __init__(self, report):
        self.report = report
        super().__init__(report.summary())


class ParseError(InputError):
    def __init__(self, message, path="$", line=None):
        self.path = path
        self.line = line
        where = path if line is None else f"{path} (line {line})"
        super().__init__(f"{where}: {message}")


class NotACocycle(InputError):
    pass


class NotInA(InputError):
    pass


class NotInJ(InputError):
    pass


class WrongSpecialization(InputError):
    pass


class NotPoisson(InputError):
    pass


class NonVanishingConstantTerm(InputError):
    pass


class GenerationExhausted(BigcohError):
    pass


class CrossCheckFailure(EngineError):
    pass


class MismatchAtInfinity(EngineError):
    pass


class ClosureFailure(EngineError):
    pass


class PrecocycleMismatch(EngineError):
    pass


class ExactnessFailure(EngineError):
    pass


class DivisionFailure(EngineError):
    pass
