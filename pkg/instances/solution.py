"""
Solution files: an "s <span>" header, then "v <vertex> <color>" per vertex
"""
from pathlib import Path
from typing import Dict, Optional

from model.errors import SolutionFormatError
from model.instance import Coloring, ColoringLike, as_coloring, max_color


def write_solution(coloring: ColoringLike, instance_id: Optional[str] = None) -> str:
    colors = as_coloring(coloring)
    lines = []
    if instance_id:
        lines.append(f"c {instance_id}")
    lines.append(f"s {max_color(colors)}")
    lines.extend(f"v {v} {int(c)}" for v, c in enumerate(colors, start=1))
    return "\n".join(lines) + "\n"


def read_solution(text: str, n: Optional[int] = None) -> Coloring:
    span = None
    colors: Dict[int, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        try:
            values = [int(t) for t in tokens[1:]]
        except ValueError:
            raise SolutionFormatError("non-integer field", lineno) from None

        if tokens[0] == "s" and len(values) == 1:
            if span is not None:
                raise SolutionFormatError("second 's' header", lineno)
            span = values[0]
        elif tokens[0] == "v" and len(values) == 2:
            v, color = values
            if v < 1 or color < 1:
                raise SolutionFormatError("vertex ids and colors are positive", lineno)
            if v in colors:
                raise SolutionFormatError(f"duplicate line for vertex {v}", lineno)
            colors[v] = color
        else:
            raise SolutionFormatError("expected 's <span>' or 'v <vertex> <color>'", lineno)

    if span is None:
        raise SolutionFormatError("missing 's <span>' header")
    expected = n if n is not None else max(colors, default=0)
    if n is not None and len(colors) != n:
        raise SolutionFormatError(f"file colors {len(colors)} vertices, instance has {n}")
    for v in range(1, expected + 1):
        if v not in colors:
            raise SolutionFormatError(f"no line for vertex {v}")
    if expected == 0:
        raise SolutionFormatError("no vertex lines")

    result = as_coloring([colors[v] for v in range(1, expected + 1)])
    if max_color(result) != span:
        raise SolutionFormatError(f"header span {span} but colors reach {max_color(result)}")
    return result


def save_solution(path: Path, coloring: ColoringLike, instance_id: Optional[str] = None) -> None:
    Path(path).write_text(write_solution(coloring, instance_id), encoding="utf-8", newline="\n")


def load_solution(path: Path, n: Optional[int] = None) -> Coloring:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise SolutionFormatError(f"{Path(path).name} is not UTF-8 text (byte {exc.start})") from None
    return read_solution(text, n)
