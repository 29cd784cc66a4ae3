"""Reading and writing systems as text and as JSON objects.

Text form: classes ``a(n)`` separated by commas or newlines, whitespace
ignored. A semicolon after the first class marks it as the distinguished
class, e.g. ``0(2); 0(3),1(4),5(6),7(12)``. Lines starting with ``#`` are
comments.

Structured form: ``{"classes": [{"a": 0, "n": 2}, ...], "distinguished": false}``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import InvalidModulus, ParseError
from .systems import ResidueClass, System

_CLASS = re.compile(r"\s*([+-]?\d+)\s*\(\s*([+-]?\d+)\s*\)\s*")


def format_system(system: System) -> str:
    parts = [str(c) for c in system.classes]
    if system.distinguished:
        head, rest = parts[0], parts[1:]
        return head + "; " + ",".join(rest) if rest else head + ";"
    return ",".join(parts)


def parse_system(text: str) -> System:
    """Parse either the text form or a JSON object (detected by a leading ``{``)."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
        return system_from_dict(data)
    return _parse_text(text)


def _parse_text(text: str) -> System:
    classes: list[ResidueClass] = []
    distinguished = False
    for lineno, line in enumerate(text.splitlines() or [""], start=1):
        body = line.split("#", 1)[0]
        pos = 0
        expect_sep = False
        while pos < len(body):
            ch = body[pos]
            if ch.isspace():
                pos += 1
                continue
            if ch in ",;":
                if not expect_sep:
                    raise ParseError(f"unexpected {ch!r}", lineno, pos + 1)
                if ch == ";":
                    if distinguished or len(classes) != 1:
                        raise ParseError("';' may only follow the first class", lineno, pos + 1)
                    distinguished = True
                expect_sep = False
                pos += 1
                continue
            if expect_sep:
                raise ParseError("expected ',' between classes", lineno, pos + 1)
            match = _CLASS.match(body, pos)
            if not match:
                raise ParseError(f"expected a(n) near {body[pos:pos + 12]!r}", lineno, pos + 1)
            a, n = int(match.group(1)), int(match.group(2))
            if n <= 0:
                raise InvalidModulus(f"modulus must be positive, got {n}", lineno, match.start(2) + 1)
            classes.append(ResidueClass(a, n))
            pos = match.end()
            expect_sep = True
    return System(tuple(classes), distinguished)


def system_from_dict(data) -> System:
    if not isinstance(data, dict) or not isinstance(data.get("classes"), list):
        raise ParseError("expected an object with a 'classes' list")
    classes = []
    for i, item in enumerate(data["classes"]):
        try:
            a, n = item["a"], item["n"]
        except (TypeError, KeyError):
            raise ParseError(f"class #{i} needs integer fields 'a' and 'n'") from None
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (a, n)):
            raise ParseError(f"class #{i} needs integer fields 'a' and 'n'")
        if n <= 0:
            raise InvalidModulus(f"class #{i}: modulus must be positive, got {n}")
        classes.append(ResidueClass(a, n))
    distinguished = bool(data.get("distinguished", False))
    if distinguished and not classes:
        raise ParseError("a distinguished system needs at least one class")
    return System(tuple(classes), distinguished)


def system_to_dict(system: System) -> dict:
    return {
        "classes": [{"a": c.a, "n": c.n} for c in system.classes],
        "distinguished": system.distinguished,
    }


def load_system(path) -> System:
    return parse_system(Path(path).read_text())
