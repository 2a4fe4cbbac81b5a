from dataclasses import dataclass
from typing import Iterable, List


UNDECLARED_VAR = "UNDECLARED_VAR"
REDECLARED_VAR = "REDECLARED_VAR"
PARSE_ERROR = "PARSE_ERROR"
FEATURE_DISABLED = "FEATURE_DISABLED"
IMMEDIATE_RANGE = "IMMEDIATE_RANGE"
INVALID_CHARACTER = "INVALID_CHARACTER"
UNKNOWN_FEATURE = "UNKNOWN_FEATURE"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    line: int = 0
    column: int = 0

    def format(self, filename: str = "<input>") -> str:
        return f"{filename}:{self.line}:{self.column}: error[{self.code}]: {self.message}"


class CompileError(Exception):
    """Raised by any pipeline stage; carries one or more diagnostics."""

    def __init__(self, diagnostics: Iterable[Diagnostic]):
        self.diagnostics: List[Diagnostic] = list(diagnostics)
        super().__init__("; ".join(d.message for d in self.diagnostics))

    @property
    def codes(self) -> List[str]:
        return [d.code for d in self.diagnostics]
