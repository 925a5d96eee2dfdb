"""Exception types raised by the engine."""


class EngineError(Exception):
    """Base class for all engine errors."""


class CapacityError(EngineError):
    """A pre-sized concurrent container ran out of room."""


class SchemaError(EngineError):
    """Schema construction or compatibility violation."""


class UnknownColumnError(EngineError):
    """A named column does not exist in the target schema."""


class TypeMismatchError(EngineError):
    """An operand's type does not match the column type it is used with."""


class ParseError(EngineError):
    """TSV parsing failed; carries the 1-based line number and column name."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class UnknownNodeError(EngineError):
    """A node id is not present in the graph."""


class CoverageError(EngineError):
    """A supplied per-node mapping does not cover exactly the node set."""


class PipelineError(EngineError):
    """Script execution failed; carries the 1-based script line number."""

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line
