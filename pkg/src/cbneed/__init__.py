"""Call-by-need workbench: closed, open and useful open evaluation with sharing."""

from .syntax import (Abs, App, Program, Var, alpha_eq, parse_program,
                     parse_term, show)
from .engines import Strategy, run, step_closed, step_open, step_useful

__all__ = [
    "Abs", "App", "Program", "Var", "alpha_eq", "parse_program", "parse_term",
    "show", "Strategy", "run", "step_closed", "step_open", "step_useful",
]

__version__ = "0.1.0"
