"""Small language for intersection computations."""
from .errors import Diagnostic, DslError, DslEvalError, DslSyntaxError
from .evaluator import Evaluator, Result, evaluate, run_source
from .parser import parse, parse_expr, tokenize
from .printer import print_expr, print_script, print_stmt

__all__ = [
    "Diagnostic", "DslError", "DslEvalError", "DslSyntaxError",
    "Evaluator", "Result", "evaluate", "run_source",
    "parse", "parse_expr", "tokenize", "print_expr", "print_script", "print_stmt",
]
