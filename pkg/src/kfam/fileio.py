"""Reading and writing families as plain text.

Format: the first significant line is ``n=<ground size>``, then one member
per line as space-separated ascending 1-based labels.  Blank lines and lines
starting with ``#`` are ignored.  Duplicate members are dropped with a
warning; malformed input raises ParseError carrying the line number.
"""

from __future__ import annotations

import re
import warnings
from pathlib import Path

from .errors import DomainError, ParseError
from .families import Family, elements_of, mask_of

_HEADER = re.compile(r"^n\s*=\s*(\d+)$")


def parse_family(text: str) -> Family:
    n = None
    masks = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            m = _HEADER.match(line)
            if not m:
                raise ParseError(f"line {lineno}: expected 'n=<ground size>', got {line!r}")
            n = int(m.group(1))
            continue
        labels = []
        for tok in line.split():
            if not tok.isdigit():
                raise ParseError(f"line {lineno}: bad label {tok!r}")
            labels.append(int(tok))
        if any(not 1 <= e <= n for e in labels):
            raise ParseError(f"line {lineno}: label outside ground [{n}]")
        if labels != sorted(set(labels)):
            raise ParseError(f"line {lineno}: labels must be strictly ascending")
        mask = mask_of(labels)
        if mask in seen:
            warnings.warn(f"duplicate member at line {lineno} dropped", stacklevel=2)
            continue
        seen.add(mask)
        masks.append(mask)
    if n is None:
        raise ParseError("line 1: missing 'n=<ground size>' header")
    try:
        return Family.from_masks(n, masks)
    except DomainError as exc:
        raise ParseError(str(exc)) from exc


def format_family(fam: Family) -> str:
    lines = [f"n={fam.n}"]
    for m in fam.members:
        lines.append(" ".join(str(e) for e in elements_of(m)))
    return "\n".join(lines) + "\n"


def load_family(path) -> Family:
    return parse_family(Path(path).read_text())


def save_family(fam: Family, path) -> None:
    Path(path).write_text(format_family(fam))


# aliases under the operation names used by the command-line surface
parse_family_file = load_family
write_family_file = save_family
