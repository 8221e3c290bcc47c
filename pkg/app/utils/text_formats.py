"""
Text grammars shared by the CLI and the HTTP routes.

    diagram   [a,b,c,...] with a >= b >= c >= 1; [] and [0] are the empty diagram
    level     positive integer or inf
    steps     string over {1,2}, digit = row receiving the box
    osc       ';'-separated diagrams starting at []
    word      whitespace-separated nonzero integers, i -> sigma_i, -i -> sigma_i^-1
"""

import re
from typing import Iterable, List

from app.core.exceptions import InvalidInput, ParseError
from app.services.braid_words import BraidWord
from app.services.diagrams import INF, Diagram, Level, level_text
from app.services.tableaux import OscTableau, Tableau2Row

_DIAGRAM = re.compile(r"^\[\s*(\d+(\s*,\s*\d+)*)?\s*\]$")


def parse_diagram(text: str) -> Diagram:
    stripped = text.strip()
    if not _DIAGRAM.match(stripped):
        raise ParseError(f"expected a diagram like [2,1], got {text!r}")
    body = stripped[1:-1].strip()
    rows = [int(part) for part in body.split(",")] if body else []
    try:
        return Diagram(tuple(rows))
    except InvalidInput as exc:
        raise ParseError(str(exc)) from exc


def parse_level(text: str) -> Level:
    stripped = str(text).strip().lower()
    if stripped in ("inf", "infinity", "∞"):
        return INF
    try:
        value = int(stripped)
    except ValueError:
        raise ParseError(f"expected a positive integer or inf, got {text!r}")
    if value < 1:
        raise ParseError(f"level must be positive, got {value}")
    return value


def parse_steps(text: str) -> Tableau2Row:
    stripped = text.strip()
    if not re.fullmatch(r"[12]*", stripped):
        raise ParseError(f"expected a step string over 1 and 2, got {text!r}")
    return Tableau2Row(stripped)


def parse_osc(text: str) -> OscTableau:
    parts = text.split(";")
    if not parts or not text.strip():
        raise ParseError("empty oscillating tableau")
    return OscTableau(tuple(parse_diagram(part) for part in parts))


def parse_word(strands: int, text: str) -> BraidWord:
    tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    try:
        letters = tuple(int(t) for t in tokens)
    except ValueError:
        raise ParseError(f"braid words are whitespace-separated nonzero integers, got {text!r}")
    return BraidWord(strands, letters)


def render_diagram(d: Diagram) -> str:
    return str(d)


def render_diagrams(diagrams: Iterable[Diagram]) -> List[str]:
    return [str(d) for d in diagrams]


def render_level(ell: Level) -> str:
    return level_text(ell)


def render_osc(o: OscTableau) -> str:
    return str(o)


def render_word(word: BraidWord) -> str:
    return str(word)
