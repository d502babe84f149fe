"""Deterministic run reports.

A report is a plain dict built from exact values only: ints, rational strings
like "3/2", booleans, strings, lists and string-keyed dicts.  Serialization
sorts keys and never emits floats or timestamps, so two runs of the same
script with the same seed produce byte-identical output.  Each report embeds
the toolkit version, a SHA-256 of the script text and the seed, which is all
the provenance needed to reproduce it.
"""

import hashlib
import json
from fractions import Fraction

from .errors import INFINITE

SCHEMA = 1


def exact(value):
    """Recursively convert a result into report-safe exact values."""
    if value is INFINITE:
        return "INFINITE"
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        raise TypeError(f"floats are banned from reports: {value!r}")
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else str(value)
    if isinstance(value, (list, tuple)):
        return [exact(v) for v in value]
    if isinstance(value, dict):
        return {_key(k): exact(v) for k, v in value.items()}
    if hasattr(value, "to_dict"):
        return exact(value.to_dict())
    return str(value)


def _key(k):
    if isinstance(k, str):
        return k
    if isinstance(k, (int, bool)):
        return str(k)
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


def script_hash(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def build_report(version, script_text, seed, entries, warnings):
    statuses = [e["status"] for e in entries]
    if any(s == "resource" for s in statuses):
        overall = "resource"
    elif any(s in ("check-failed", "error") for s in statuses):
        overall = "check-failed"
    else:
        overall = "ok"
    return {
        "schema": SCHEMA,
        "version": version,
        "script_sha256": script_hash(script_text),
        "seed": seed,
        "status": overall,
        "entries": entries,
        "warnings": sorted(set(warnings)),
    }


def exit_code(report):
    return {"ok": 0, "check-failed": 1, "resource": 3}[report["status"]]


def to_json(report):
    return json.dumps(report, sort_keys=True, indent=2,
                      allow_nan=False) + "\n"


def _flatten(value, indent):
    pad = "  " * indent
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                yield f"{pad}{k}:"
                yield from _flatten(v, indent + 1)
            else:
                yield f"{pad}{k}: {json.dumps(v)}"
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            yield f"{pad}{json.dumps(value)}"
        else:
            for v in value:
                if isinstance(v, (dict, list)):
                    yield from _flatten(v, indent)
                else:
                    yield f"{pad}{json.dumps(v)}"


def to_text(report):
    lines = [
        f"normalcone report (schema {report['schema']}, "
        f"version {report['version']})",
        f"script sha256: {report['script_sha256']}",
        f"seed: {report['seed']}",
        f"status: {report['status']}",
    ]
    for e in report["entries"]:
        lines.append("")
        lines.append(f"[{e['index']}] cmd {e['command']} -> {e['status']}")
        if e.get("error"):
            lines.append(f"  error: {e['error']}")
        if e.get("result") is not None:
            lines.extend(_flatten(e["result"], 1))
    if report["warnings"]:
        lines.append("")
        lines.append("warnings:")
        lines.extend(f"  - {w}" for w in report["warnings"])
    return "\n".join(lines) + "\n"
