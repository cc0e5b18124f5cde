"""Matrix file round-tripping.

Two formats: a JSON document {"dim": n, "entries": [[re, im], ...]}
(row-major, the primary format) and a plain-text one (first line n, then
n*n lines "re im") for hand-authored fixtures.  Floats are written with 17
significant digits, so write-then-read reproduces entries bit-for-bit.
"""

import json

import numpy as np

from . import matkernel as mk
from .errors import InvalidInputError, MatrixParseError


def f17(x):
    """Decimal form of a float with 17 significant digits (round-trip exact)."""
    return format(float(x), ".17g")


def write_matrix(path, t, fmt=None):
    """Write a matrix as JSON (default) or plain text (fmt="text" or a .txt path)."""
    m = mk.as_matrix(t)
    if fmt is None:
        fmt = "text" if str(path).endswith(".txt") else "json"
    if fmt not in ("json", "text"):
        raise InvalidInputError(f"unknown format {fmt!r}")
    n = m.shape[0]
    flat = m.reshape(-1)
    if fmt == "json":
        entries = ",\n    ".join(f"[{f17(z.real)}, {f17(z.imag)}]" for z in flat)
        body = f'{{\n  "dim": {n},\n  "entries": [\n    {entries}\n  ]\n}}\n'
    else:
        lines = [str(n)]
        lines += [f"{f17(z.real)} {f17(z.imag)}" for z in flat]
        body = "\n".join(lines) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(body)


def _entries_to_matrix(n, entries):
    if n < 1:
        raise MatrixParseError(f"dim must be >= 1, got {n}")
    if len(entries) != n * n:
        raise MatrixParseError(f"expected {n * n} entries for dim {n}, got {len(entries)}")
    m = np.array([complex(re, im) for re, im in entries], dtype=np.complex128).reshape(n, n)
    if not np.isfinite(m).all():
        raise InvalidInputError("matrix file has a non-finite entry")
    return mk.as_matrix(m)


def _read_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, field=exc.colno) from exc
    if not isinstance(doc, dict) or "dim" not in doc or "entries" not in doc:
        raise MatrixParseError('matrix JSON needs "dim" and "entries" keys')
    if not isinstance(doc["dim"], int):
        raise MatrixParseError('"dim" must be an integer')
    entries = doc["entries"]
    if not isinstance(entries, list):
        raise MatrixParseError('"entries" must be a list of [re, im] pairs')
    pairs = []
    for i, e in enumerate(entries):
        if not isinstance(e, list) or len(e) != 2 or not all(isinstance(x, (int, float)) for x in e):
            raise MatrixParseError(f"entry {i} is not an [re, im] pair", field=i + 1)
        pairs.append((float(e[0]), float(e[1])))
    return _entries_to_matrix(doc["dim"], pairs)


def _read_text(text):
    lines = text.splitlines()
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(lines) if ln.strip()]
    if not rows:
        raise MatrixParseError("empty matrix file")
    lineno, head = rows[0]
    try:
        n = int(head)
    except ValueError as exc:
        raise MatrixParseError(f"expected the dimension, got {head!r}", line=lineno) from exc
    pairs = []
    for lineno, ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise MatrixParseError(f"expected 're im', got {ln!r}", line=lineno)
        vals = []
        for fld, p in enumerate(parts, start=1):
            try:
                vals.append(float(p))
            except ValueError as exc:
                raise MatrixParseError(f"bad float {p!r}", line=lineno, field=fld) from exc
        pairs.append((vals[0], vals[1]))
    return _entries_to_matrix(n, pairs)


def read_matrix(path):
    """Read either format back; the leading character distinguishes them."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if not stripped:
        raise MatrixParseError("empty matrix file")
    if stripped[0] == "{":
        return _read_json(text)
    return _read_text(text)
