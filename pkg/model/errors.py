"""
Exception types shared by the model, instance readers and the solver
"""
from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class Violation:
    """A distance constraint broken by a coloring (u == v for loop constraints)"""
    u: int
    v: int
    color_u: int
    color_v: int
    required: int

    def __str__(self) -> str:
        gap = abs(self.color_u - self.color_v)
        return (
            f"edge ({self.u}, {self.v}): |{self.color_u} - {self.color_v}| = {gap} "
            f"< {self.required}"
        )


class ColoringError(ValueError):
    """Base class for every error raised by this package"""


class InputError(ColoringError):
    """Bad arguments: dimension mismatch, out-of-range vertex or color, invalid config"""


class ParseError(InputError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class SolutionFormatError(ParseError):
    """Solution file does not match the instance or the file grammar"""


class InfeasibleSolutionError(ColoringError):
    def __init__(self, violation: Violation):
        self.violation = violation
        super().__init__(f"infeasible coloring, {violation}")
