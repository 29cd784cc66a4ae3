"""Named example systems shipped with the package."""

from __future__ import annotations

import json
from importlib import resources

from .textio import system_from_dict


def names() -> list[str]:
    folder = resources.files("covertool") / "corpus"
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


def entry(name: str) -> dict:
    path = resources.files("covertool") / "corpus" / f"{name}.json"
    if not path.is_file():
        raise KeyError(f"no corpus system named {name!r}; known: {', '.join(names())}")
    return json.loads(path.read_text(encoding="utf-8"))


def load(name: str):
    return system_from_dict(entry(name))
