"""Line-oriented germ description files.

::

    space      = gen23
    source_dim = 4
    vars       = x, y, z, w
    entry 1 1  = z                 # 1-based row and column
    ...
    icis       = t - x^2; ...      # optional
    weights    = x:1, y:2          # optional

``#`` starts a comment.  Every matrix entry must be given, including
zero entries and the mirrored half of symmetric or skew matrices.
"""

from __future__ import annotations

import re
from pathlib import Path

from .catalog import SPACES
from .codim import MatrixGerm
from .errors import InputError, ParseError
from .poly import VariableContext, parse_poly

_LINE = re.compile(r"^\s*([A-Za-z_]+(?:\s+\d+\s+\d+)?)\s*=\s*(.*?)\s*$")


def parse_germ(text: str, source: str = "<germ>") -> MatrixGerm:
    fields: dict[str, tuple[int, str]] = {}
    entries: dict[tuple[int, int], tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if not m:
            raise InputError(f"{source}:{lineno}: expected 'key = value'")
        key, value = m.group(1).split(), m.group(2)
        if key[0] == "entry":
            if len(key) != 3:
                raise InputError(f"{source}:{lineno}: write 'entry <row> <column> = <poly>'")
            ij = (int(key[1]), int(key[2]))
            if ij in entries:
                raise InputError(f"{source}:{lineno}: entry {ij[0]} {ij[1]} given twice")
            entries[ij] = (lineno, value)
        elif key[0] in ("space", "source_dim", "vars", "icis", "weights") and len(key) == 1:
            if key[0] in fields:
                raise InputError(f"{source}:{lineno}: {key[0]} given twice")
            fields[key[0]] = (lineno, value)
        else:
            raise InputError(f"{source}:{lineno}: unknown key {' '.join(key)!r}")

    for k in ("space", "source_dim", "vars"):
        if k not in fields:
            raise InputError(f"{source}: missing '{k} = ...'")
    space_name = fields["space"][1]
    if space_name not in SPACES:
        raise InputError(f"{source}:{fields['space'][0]}: unknown space {space_name!r}; "
                         f"expected one of {', '.join(SPACES)}")
    space = SPACES[space_name]
    try:
        n = int(fields["source_dim"][1])
    except ValueError:
        raise InputError(f"{source}:{fields['source_dim'][0]}: source_dim must be an integer")
    names = [v.strip() for v in fields["vars"][1].split(",") if v.strip()]
    if len(names) != n or n < 1:
        raise InputError(f"{source}:{fields['vars'][0]}: expected {n} variable names, got {len(names)}")
    try:
        ctx = VariableContext(names)
    except ValueError as exc:
        raise InputError(f"{source}:{fields['vars'][0]}: {exc}")

    def poly(lineno: int, text: str):
        try:
            return parse_poly(text, ctx)
        except ParseError as exc:
            raise InputError(f"{source}:{lineno}: {exc}")

    rows, cols = space.shape
    matrix = []
    for i in range(1, rows + 1):
        row = []
        for j in range(1, cols + 1):
            if (i, j) not in entries:
                raise InputError(f"{source}: missing entry {i} {j}")
            row.append(poly(*entries.pop((i, j))))
        matrix.append(row)
    if entries:
        (i, j), (lineno, _) = min(entries.items())
        raise InputError(f"{source}:{lineno}: entry {i} {j} is outside the {rows}x{cols} matrix")

    icis = []
    if "icis" in fields:
        lineno, value = fields["icis"]
        icis = [poly(lineno, part) for part in value.split(";") if part.strip()]
    weights = None
    if "weights" in fields:
        lineno, value = fields["weights"]
        table = {}
        for part in value.split(","):
            name, sep, w = part.partition(":")
            if not sep or name.strip() not in ctx or not w.strip().isdigit():
                raise InputError(f"{source}:{lineno}: write weights as 'x:1, y:2'")
            table[name.strip()] = int(w)
        if set(table) != set(names):
            raise InputError(f"{source}:{lineno}: give a weight for every variable")
        weights = [table[v] for v in names]
    return MatrixGerm.from_matrix(space, ctx, matrix, icis, weights)


def load_germ(path: str | Path) -> MatrixGerm:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    return parse_germ(text, str(path))


def render_germ(f0: MatrixGerm) -> str:
    """Germ file text that parses back to ``f0``."""
    lines = [f"space = {f0.space.name}", f"source_dim = {f0.n}",
             f"vars = {', '.join(f0.ctx.names)}"]
    for i, row in enumerate(f0.matrix(), 1):
        for j, e in enumerate(row, 1):
            lines.append(f"entry {i} {j} = {e.to_str()}")
    if f0.icis:
        lines.append("icis = " + "; ".join(g.to_str() for g in f0.icis))
    if f0.weights:
        lines.append("weights = " + ", ".join(f"{v}:{w}" for v, w in zip(f0.ctx.names, f0.weights)))
    return "\n".join(lines) + "\n"
