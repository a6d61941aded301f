"""CSV emission and flat key-value configuration files.

CSV files are UTF-8 with LF line endings: ``#``-prefixed metadata lines
recording the full effective configuration (including the seed), then one
header row, then data rows.  Numbers are formatted locale-independently
with 9 significant digits, so identical configurations reproduce identical
bytes.

Configuration files are INI-style: one section per subcommand, keys named
after the command-line options.  Values given on the command line override
the file.
"""

from __future__ import annotations

import configparser
import numbers
from pathlib import Path
from typing import Iterable, Mapping


def format_value(x) -> str:
    if x is None or x == "":
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, numbers.Integral):
        return str(int(x))
    if isinstance(x, numbers.Real):
        return f"{float(x):.9g}"
    return str(x)


def write_csv(path: str | Path, meta: Mapping[str, object], columns: list[str], rows: Iterable[tuple]) -> None:
    lines = [f"# {key} = {format_value(val)}" for key, val in meta.items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def load_config(path: str | Path) -> dict[str, dict[str, str]]:
    """Read an INI config into {section: {key: raw-string-value}}."""
    parser = configparser.ConfigParser()
    text = Path(path).read_text(encoding="utf-8")
    parser.read_string(text, source=str(path))
    return {section: dict(parser.items(section)) for section in parser.sections()}
