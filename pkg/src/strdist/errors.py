class StrDistError(Exception):
    """Base class for all errors raised by strdist."""


class SymbolParseError(StrDistError, ValueError):
    def __init__(self, message, text, offset):
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at byte {offset} in {text!r}")


class OperationError(StrDistError, ValueError):
    """An operation cannot be applied at the requested position."""


class PositionOutOfRange(OperationError):
    pass


class LhsMismatch(OperationError):
    pass


class SequenceError(OperationError):
    def __init__(self, index, cause):
        self.index = index
        self.cause = cause
        super().__init__(f"step {index}: {cause}")


class ForbiddenOperation(StrDistError):
    pass


class InvalidInstance(StrDistError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid instance: {lines}")


class EnumerationCapExceeded(StrDistError):
    pass


class SearchLimitExceeded(StrDistError):
    pass


class NondeterministicMachine(StrDistError):
    pass


class InvalidMachine(StrDistError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid machine: " + "; ".join(str(v) for v in self.violations))


class SymbolClash(StrDistError, ValueError):
    pass


class PadClash(SymbolClash):
    pass


class NotPrimeInstance(StrDistError, ValueError):
    pass


class ChainBroken(StrDistError, ValueError):
    pass


class BoundaryMissing(StrDistError, ValueError):
    pass


class FormatError(StrDistError, ValueError):
    """A machine, instance or report document is malformed."""
