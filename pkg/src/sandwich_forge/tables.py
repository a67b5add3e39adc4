"""Reading and writing Cayley tables.

Text form::

    # optional comments
    order 3
    0 1 2
    2 1 0
    0 1 2

Group tables add ``identity i`` and ``inverse i0 i1 ...`` header lines.
JSON form: ``{"order": n, "table": [[...]]}`` (plus ``identity`` and
``inverse`` for groups).
"""

from __future__ import annotations

import json
from pathlib import Path

from .magma import Magma, MagmaError


class TableFormatError(MagmaError):
    pass


def parse_table_text(text: str) -> dict:
    """Parse the text form into ``{"order", "table", ["identity", "inverse"]}``."""
    out: dict = {}
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "order":
                out["order"] = int(rest)
            elif head == "identity":
                out["identity"] = int(rest)
            elif head == "inverse":
                out["inverse"] = [int(x) for x in rest.split()]
            else:
                rows.append([int(x) for x in line.split()])
        except ValueError:
            raise TableFormatError(f"line {lineno}: cannot parse {raw.strip()!r}") from None
    if "order" not in out:
        raise TableFormatError("missing 'order n' line")
    n = out["order"]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise TableFormatError(f"expected {n} rows of {n} entries, got {[len(r) for r in rows]}")
    out["table"] = rows
    return out


def format_table_text(table, comment: str | None = None, identity=None, inverse=None) -> str:
    rows = [list(map(int, r)) for r in (table.tolist() if hasattr(table, "tolist") else table)]
    width = len(str(len(rows) - 1))
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"order {len(rows)}")
    if identity is not None:
        lines.append(f"identity {int(identity)}")
    if inverse is not None:
        lines.append("inverse " + " ".join(str(int(x)) for x in inverse))
    lines.extend(" ".join(str(v).rjust(width) for v in r) for r in rows)
    return "\n".join(lines) + "\n"


def loads(text: str) -> dict:
    """Parse either form; JSON is recognised by a leading ``{``."""
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        if "table" not in data:
            raise TableFormatError("JSON table needs a 'table' key")
        data.setdefault("order", len(data["table"]))
        if data["order"] != len(data["table"]):
            raise TableFormatError(f"order {data['order']} does not match {len(data['table'])} rows")
        return data
    return parse_table_text(text)


def read_magma(path) -> Magma:
    return Magma(loads(Path(path).read_text())["table"])


def magma_to_json(m: Magma) -> dict:
    return {"order": m.order, "table": m.tolist()}


def dumps_magma(m: Magma, fmt: str = "text", comment: str | None = None) -> str:
    if fmt == "json":
        return json.dumps(magma_to_json(m))
    return format_table_text(m.table, comment)
