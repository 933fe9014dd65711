"""
Readers for DIMACS-style GEOM instance files and vertex weight files

Instance grammar, one record per line, whitespace separated:
    c <anything>          comment
    p edge <n> <m>        header, exactly once, before any e/n line
    e <u> <v> <d>         edge with distance d; u == v gives the loop distance d(v, v)
    n <v> <w>             vertex weight w(v), only read for BMCP
Weights file: "<v> <w>" per line, an optional colon after the vertex is accepted.
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from loguru import logger

from instances.expansion import BmcpInstance
from model.errors import InputError, ParseError
from model.instance import Edge, WeightedGraph


@dataclass
class _Records:
    n: int
    declared_m: int
    header_line: int
    edges: List[Edge] = field(default_factory=list)
    loops: Dict[int, int] = field(default_factory=dict)
    weights: Dict[int, int] = field(default_factory=dict)
    edge_lines: int = 0


def _number(token: str, lineno: int, what: str, minimum: int = 1) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not an integer", lineno) from None
    if value < minimum:
        raise ParseError(f"{what} must be at least {minimum}, got {value}", lineno)
    return value


def _vertex(token: str, lineno: int, n: int) -> int:
    v = _number(token, lineno, "vertex")
    if v > n:
        raise ParseError(f"vertex {v} outside 1..{n}", lineno)
    return v


def _scan(text: str) -> _Records:
    records: Optional[_Records] = None
    seen = set()

    for lineno, raw in enumerate(text.lstrip("\ufeff").splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        tag = tokens[0]

        if tag == "p":
            if records is not None:
                raise ParseError("second 'p' header", lineno)
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise ParseError("expected 'p edge <n> <m>'", lineno)
            records = _Records(
                n=_number(tokens[2], lineno, "vertex count"),
                declared_m=_number(tokens[3], lineno, "edge count", minimum=0),
                header_line=lineno,
            )
            continue

        if records is None:
            raise ParseError(f"'{tag}' line before the 'p' header", lineno)

        if tag == "e":
            if len(tokens) != 4:
                raise ParseError("expected 'e <u> <v> <d>'", lineno)
            u = _vertex(tokens[1], lineno, records.n)
            v = _vertex(tokens[2], lineno, records.n)
            d = _number(tokens[3], lineno, "distance")
            records.edge_lines += 1
            if u == v:
                if u in records.loops:
                    raise ParseError(f"duplicate loop line for vertex {u}", lineno)
                records.loops[u] = d
                continue
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(f"duplicate edge ({key[0]}, {key[1]})", lineno)
            seen.add(key)
            records.edges.append((u, v, d))
        elif tag == "n":
            if len(tokens) != 3:
                raise ParseError("expected 'n <vertex> <weight>'", lineno)
            v = _vertex(tokens[1], lineno, records.n)
            if v in records.weights:
                raise ParseError(f"duplicate weight for vertex {v}", lineno)
            records.weights[v] = _number(tokens[2], lineno, "weight")
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)

    if records is None:
        raise ParseError("missing 'p edge <n> <m>' header")
    if records.edge_lines != records.declared_m:
        raise ParseError(
            f"header declares {records.declared_m} edges, file has {records.edge_lines}",
            records.header_line,
        )
    return records


def parse_bcp(text: str) -> WeightedGraph:
    records = _scan(text)
    if records.loops:
        logger.debug("Skipping {} loop lines in BCP mode", len(records.loops))
    return WeightedGraph(records.n, records.edges)


def parse_weights(text: str, n: int) -> Dict[int, int]:
    weights: Dict[int, int] = {}
    for lineno, raw in enumerate(text.lstrip("\ufeff").splitlines(), start=1):
        tokens = raw.replace(":", " ").split()
        if not tokens or tokens[0] in ("c", "#"):
            continue
        if len(tokens) != 2:
            raise ParseError("expected '<vertex> <weight>'", lineno)
        v = _vertex(tokens[0], lineno, n)
        if v in weights:
            raise ParseError(f"duplicate weight for vertex {v}", lineno)
        weights[v] = _number(tokens[1], lineno, "weight")
    return weights


def _complete(weights: Dict[int, int], n: int) -> Tuple[int, ...]:
    missing = [v for v in range(1, n + 1) if v not in weights]
    if missing:
        raise ParseError(f"no weight for vertex {missing[0]} ({len(missing)} missing)")
    return tuple(weights[v] for v in range(1, n + 1))


def parse_bmcp(
    instance_text: str,
    weights_text: Optional[str] = None,
    loop_default: int = 1,
) -> BmcpInstance:
    if loop_default < 1:
        raise InputError(f"default loop distance must be positive, got {loop_default}")
    records = _scan(instance_text)

    if weights_text is not None:
        if records.weights:
            logger.debug("Weights file overrides {} embedded 'n' lines", len(records.weights))
        multiplicity = _complete(parse_weights(weights_text, records.n), records.n)
    elif records.weights:
        multiplicity = _complete(records.weights, records.n)
    else:
        raise ParseError("no vertex weights: give a weights file or 'n' lines")

    defaulted = [
        v for v in range(1, records.n + 1)
        if v not in records.loops and multiplicity[v - 1] > 1
    ]
    if defaulted:
        logger.warning(
            "{} vertices with w(v) > 1 have no loop line, using d(v,v) = {} (first: {})",
            len(defaulted), loop_default, defaulted[0],
        )
    loops = tuple(records.loops.get(v, loop_default) for v in range(1, records.n + 1))

    graph = WeightedGraph(records.n, records.edges, loop_distance=loops, multiplicity=multiplicity)
    return BmcpInstance(graph)


def read_text(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{Path(path).name} is not UTF-8 text (byte {exc.start})") from None


def read_bcp(path: Path) -> WeightedGraph:
    return parse_bcp(read_text(path))


def read_bmcp(path: Path, weights_path: Optional[Path] = None, loop_default: int = 1) -> BmcpInstance:
    weights_text = read_text(weights_path) if weights_path else None
    return parse_bmcp(read_text(path), weights_text, loop_default)
