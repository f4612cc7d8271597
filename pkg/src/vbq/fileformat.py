"""Plain-text structure files.

A structure block::

    vbq
    size 3
    R1
    0 1 2
    ...
    R2
    ...
    f
    1 2 0

The ``f`` block is optional (absent means a plain biquandle).  Lines starting
with ``#`` are comments.  A catalog is a sequence of blocks separated by blank
lines.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .algebra import OperatorTable, check_permutation
from .errors import ParseError


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {line!r}") from None


def parse_structure(text: str) -> tuple[OperatorTable, tuple[int, ...] | None]:
    """Parse one structure block into ``(operator, f or None)``."""
    lines = [
        (i + 1, raw.strip())
        for i, raw in enumerate(text.splitlines())
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    pos = 0

    def take(expect: str | None = None, what: str | None = None):
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of input, expected {what or expect or 'more lines'}")
        lineno, line = lines[pos]
        pos += 1
        if expect is not None and line != expect:
            raise ParseError(f"line {lineno}: expected {expect!r}, got {line!r}")
        return lineno, line

    take("vbq")
    lineno, line = take()
    parts = line.split()
    if len(parts) != 2 or parts[0] != "size":
        raise ParseError(f"line {lineno}: expected 'size <n>', got {line!r}")
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError(f"line {lineno}: bad size {parts[1]!r}") from None
    if n < 1:
        raise ParseError(f"line {lineno}: size must be positive")

    tables = []
    for name in ("R1", "R2"):
        take(name)
        rows = []
        for _ in range(n):
            lineno, line = take(what=f"a row of {name}")
            row = _ints(line, lineno)
            if len(row) != n:
                raise ParseError(f"line {lineno}: {name} row has {len(row)} entries, expected {n}")
            rows.append(row)
        tables.append(rows)
    op = OperatorTable.from_rows(*tables)

    f = None
    if pos < len(lines):
        take("f")
        lineno, line = take(what="the permutation f")
        f = check_permutation(_ints(line, lineno), n)
    if pos < len(lines):
        lineno, line = lines[pos]
        raise ParseError(f"line {lineno}: trailing content {line!r}")
    return op, f


def format_structure(op: OperatorTable, f: Sequence[int] | None = None) -> str:
    out = ["vbq", f"size {op.n}"]
    for name, which in (("R1", 1), ("R2", 2)):
        out.append(name)
        out.extend(" ".join(map(str, row)) for row in op.rows(which))
    if f is not None:
        out.append("f")
        out.append(" ".join(map(str, f)))
    return "\n".join(out) + "\n"


def split_blocks(text: str) -> list[str]:
    blocks, current = [], []
    for raw in text.splitlines():
        if raw.strip():
            current.append(raw)
        elif current:
            blocks.append("\n".join(current))
            current = []
    if current:
        blocks.append("\n".join(current))
    return blocks


def parse_catalog(text: str) -> list[tuple[OperatorTable, tuple[int, ...] | None]]:
    return [parse_structure(b) for b in split_blocks(text) if any(
        ln.strip() and not ln.lstrip().startswith("#") for ln in b.splitlines())]


def format_catalog(items: Iterable[tuple[OperatorTable, Sequence[int] | None]]) -> str:
    return "\n".join(format_structure(op, f) for op, f in items)
