"""Exact computation in wreath-recursion groups on the binary rooted tree."""

from .core import (
    BudgetExceededError,
    ConsistencyError,
    Element,
    GeneratorSystem,
    InputError,
    Perm,
    Portrait,
    PreconditionError,
    WordParseError,
    basilica,
    equals,
    free_reduce,
    load_system,
    parse_system,
)

__version__ = "0.1.0"
ENGINE = f"basilica {__version__}"
