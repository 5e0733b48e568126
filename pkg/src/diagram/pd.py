"""
Planar diagram (PD) code input and output.

Accepted text forms:
    X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]          (whitespace or commas between tokens,
    PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]     optionally wrapped in PD[...])
    {"crossings": [[1,4,2,5], [3,6,4,1], [5,2,6,3]]}
"""

import json
import re
from typing import List, Sequence

from ..errors import DiagramParseError
from .link import LinkDiagram, build_diagram

_TOKEN = re.compile(r"X\[\s*([^\[\]]*?)\s*\]")
_WRAPPER = re.compile(r"^\s*PD\[(.*)\]\s*$", re.DOTALL)
_SEPARATORS = set(" \t\r\n,")


def parse_pd(text: str) -> LinkDiagram:
    """
    Parse a PD code (or its JSON form) into a diagram.

    Args:
        text: PD code text

    Returns:
        LinkDiagram oriented along the PD direction

    Raises:
        DiagramParseError: malformed token, with its position
        DiagramStructureError: labels not used exactly twice, or not a planar diagram
    """
    return build_diagram(parse_pd_codes(text))


def parse_pd_codes(text: str) -> List[List[int]]:
    """Parse PD text into crossing quadruples without building the diagram."""
    if text is None or not text.strip():
        raise DiagramParseError("empty PD code", 0)
    stripped = text.strip()
    if stripped.startswith("{"):
        return _parse_json(stripped)

    offset = 0
    body = text
    wrapped = _WRAPPER.match(text)
    if wrapped:
        body = wrapped.group(1)
        offset = wrapped.start(1)

    codes = []
    cursor = 0
    for match in _TOKEN.finditer(body):
        _check_gap(body, cursor, match.start(), offset)
        codes.append(_parse_entries(match.group(1), offset + match.start(1)))
        cursor = match.end()
    _check_gap(body, cursor, len(body), offset)

    if not codes:
        raise DiagramParseError("no X[...] crossings found", offset)
    return codes


def _check_gap(body: str, start: int, end: int, offset: int) -> None:
    for index in range(start, end):
        if body[index] not in _SEPARATORS:
            raise DiagramParseError(f"unexpected character {body[index]!r}", offset + index)


def _parse_entries(inner: str, position: int) -> List[int]:
    parts = [part.strip() for part in inner.split(",")]
    if len(parts) != 4:
        raise DiagramParseError(f"crossing has {len(parts)} entries, expected 4", position)
    values = []
    for part in parts:
        if not re.fullmatch(r"\d+", part):
            raise DiagramParseError(f"edge label {part!r} is not a positive integer", position)
        values.append(int(part))
    return values


def _parse_json(text: str) -> List[List[int]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DiagramParseError(f"invalid JSON: {e.msg}", e.pos) from e
    crossings = data.get("crossings") if isinstance(data, dict) else None
    if not isinstance(crossings, list) or not crossings:
        raise DiagramParseError("JSON PD needs a non-empty 'crossings' list", 0)
    codes = []
    for index, code in enumerate(crossings):
        if not isinstance(code, list) or len(code) != 4 or not all(isinstance(v, int) and v > 0 for v in code):
            raise DiagramParseError(f"crossing {index} is not a list of 4 positive integers", 0)
        codes.append(list(code))
    return codes


def pd_code(diagram: LinkDiagram) -> str:
    """Render a diagram back to PD text."""
    return " ".join(format_crossing(slots) for slots in diagram.to_pd())


def pd_json(diagram: LinkDiagram) -> str:
    return json.dumps({"crossings": [list(slots) for slots in diagram.to_pd()]})


def format_crossing(slots: Sequence[int]) -> str:
    return "X[" + ",".join(str(v) for v in slots) + "]"
