"""
Reading and writing configuration lists.

Text form: one ``n;sigma(1),...,sigma(n)`` line per class.
JSON form: a list of {n, rep, dual_rep, self_dual} objects.
"""
from __future__ import annotations

import json
from typing import Any, Dict, Iterable, List

from cellular.configurations.dihedral import canonical_config, dual
from cellular.configurations.models import ConfigClass, ConfigurationError, Perm


def config_record(c: ConfigClass) -> Dict[str, Any]:
    d = dual(c)
    return {
        "n": c.n,
        "rep": list(c.rep.values),
        "dual_rep": list(d.rep.values),
        "self_dual": d == c,
    }


def dump_configs(classes: Iterable[ConfigClass], fmt: str = "text") -> str:
    classes = list(classes)
    if fmt == "json":
        return json.dumps([config_record(c) for c in classes], indent=2)
    if fmt != "text":
        raise ValueError(f"Unknown configuration format: {fmt}")
    return "".join(f"{c.n};{c.rep}\n" for c in classes)


def _parse_line(line: str) -> ConfigClass:
    size, _, values = line.partition(";")
    if not values:
        raise ConfigurationError(f"Expected 'n;sigma' but got {line!r}")
    perm = Perm.parse(values)
    if int(size) != perm.n:
        raise ConfigurationError(f"Line {line!r} declares n={size} but lists {perm.n} values")
    return canonical_config(perm)


def load_configs(text: str) -> List[ConfigClass]:
    """Parse either form; every entry is re-canonicalized."""
    stripped = text.strip()
    if not stripped:
        return []
    if stripped.startswith("["):
        try:
            records = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"Invalid configuration JSON: {exc}") from exc
        return [canonical_config(Perm.from_dict(record)) for record in records]
    return [_parse_line(line) for line in stripped.splitlines() if line.strip() and not line.startswith("#")]
