"""Report emission: text for people, JSON with a fixed key order for machines."""

from __future__ import annotations

import json
from typing import Any, Dict

LEADING_KEYS = ("command", "model", "degree", "rank", "torsion", "certified", "window",
                "charpoly", "integral", "quasi_unipotent", "checks")


def canonical(result: Dict[str, Any]) -> Dict[str, Any]:
    """Leading keys in their fixed order, then the rest alphabetically; recursively sorted below."""
    out = {}
    for key in LEADING_KEYS:
        if key in result:
            out[key] = _normalize(result[key])
    for key in sorted(k for k in result if k not in LEADING_KEYS):
        out[key] = _normalize(result[key])
    return out


def _normalize(v):
    if isinstance(v, dict):
        return {str(k): _normalize(v[k]) for k in sorted(v, key=str)}
    if isinstance(v, (list, tuple)):
        return [_normalize(x) for x in v]
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return str(v)


def _text_lines(v, indent: int = 0):
    pad = "  " * indent
    if isinstance(v, dict):
        for key, x in v.items():
            if isinstance(x, (dict, list)) and x:
                yield "%s%s:" % (pad, key)
                yield from _text_lines(x, indent + 1)
            else:
                yield "%s%s: %s" % (pad, key, _scalar_text(x))
    elif isinstance(v, list):
        for x in v:
            if isinstance(x, dict) and "name" in x and "passed" in x:
                yield "%s[%s] %s" % (pad, "PASS" if x["passed"] else "FAIL", x["name"])
            elif isinstance(x, (dict, list)):
                yield "%s-" % pad
                yield from _text_lines(x, indent + 1)
            else:
                yield "%s- %s" % (pad, _scalar_text(x))
    else:
        yield pad + _scalar_text(v)


def _scalar_text(x) -> str:
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, list) and not x:
        return "[]"
    if isinstance(x, dict) and not x:
        return "{}"
    return str(x)


def emit_report(result: Dict[str, Any], fmt: str = "text") -> str:
    data = canonical(result)
    if fmt == "json":
        return json.dumps(data, ensure_ascii=False)
    if fmt != "text":
        raise ValueError("unknown format %r" % fmt)
    return "\n".join(_text_lines(data))
