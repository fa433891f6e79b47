"""The table of geometric inputs that the arithmetic checks take on trust."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def axiom_table() -> dict[str, dict]:
    text = resources.files("k3sym").joinpath("data/axioms.json").read_text(encoding="utf-8")
    return {a["id"]: a for a in json.loads(text)["axioms"]}


def check_axioms(ids) -> list[str]:
    """Return ids sorted; raise KeyError for anything not in the table."""
    table = axiom_table()
    missing = [a for a in ids if a not in table]
    if missing:
        raise KeyError(f"undocumented axioms: {missing}")
    return sorted(set(ids))
