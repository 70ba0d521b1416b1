from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    message: str
    line: int
    column: int
    snippet: str = ""

    def __str__(self):
        head = f"{self.line}:{self.column}: {self.severity}: {self.message}"
        if not self.snippet:
            return head
        caret = " " * (max(self.column, 1) - 1) + "^"
        return f"{head}\n  {self.snippet}\n  {caret}"


class DslError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


class DslSyntaxError(DslError):
    pass


class DslEvalError(DslError):
    pass


def make_diagnostic(source: str, pos, message: str, severity: str = "error") -> Diagnostic:
    line, col = pos if pos else (0, 0)
    lines = source.splitlines()
    snippet = lines[line - 1] if 0 < line <= len(lines) else ""
    return Diagnostic(severity, message, line, col, snippet)
