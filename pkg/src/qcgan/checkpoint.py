"""Plain-text checkpoint files: a config echo, counters, and named arrays.

The format is deliberately dumb so it can be inspected and diffed:

    # qcgan checkpoint v1
    [config]
    key = value
    [state]
    counter = 3
    [array theta 90]
    0.123456789
    ...

Array headers carry the name followed by the shape dimensions; values are
one repr'd float per line, which round-trips float64 exactly.  This module
only reads and writes the format; interpreting the contents is the
caller's job.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import FormatError

MAGIC = "# qcgan checkpoint v1"


def save_checkpoint(path, config_items, state: dict, arrays: dict) -> None:
    """Write config key/value pairs, integer counters, and float arrays."""
    lines = [MAGIC, "[config]"]
    for key, value in config_items:
        lines.append(f"{key} = {value}")
    lines.append("[state]")
    for key, value in state.items():
        lines.append(f"{key} = {int(value)}")
    for name, arr in arrays.items():
        a = np.atleast_1d(np.asarray(arr, dtype=float))
        dims = " ".join(str(d) for d in a.shape)
        lines.append(f"[array {name} {dims}]")
        lines.extend(repr(float(x)) for x in a.reshape(-1))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def load_checkpoint(path):
    """Parse a checkpoint back into (config_items, state, arrays)."""
    try:
        text = Path(path).read_text(encoding="ascii")
    except OSError as exc:
        raise FormatError(f"cannot read checkpoint: {exc}") from exc
    lines = text.splitlines()
    if not lines or lines[0].strip() != MAGIC:
        raise FormatError(f"{path}: not a checkpoint file (missing header)")

    config_items: list[tuple[str, str]] = []
    state: dict[str, int] = {}
    arrays: dict[str, np.ndarray] = {}
    section = None
    pending = None  # (name, shape, values) of the array being read
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("["):
            if pending is not None:
                arrays[pending[0]] = _finish_array(path, *pending)
                pending = None
            if line == "[config]":
                section = "config"
            elif line == "[state]":
                section = "state"
            elif line.startswith("[array "):
                section = "array"
                pending = _parse_array_header(path, lineno, line)
            else:
                raise FormatError(f"{path}:{lineno}: unknown section {line}")
            continue
        if section == "config":
            config_items.append(_parse_pair(path, lineno, line))
        elif section == "state":
            key, value = _parse_pair(path, lineno, line)
            try:
                state[key] = int(value)
            except ValueError:
                raise FormatError(
                    f"{path}:{lineno}: state value must be an integer") from None
        elif section == "array":
            try:
                pending[2].append(float(line))
            except ValueError:
                raise FormatError(
                    f"{path}:{lineno}: bad array value {line!r}") from None
        else:
            raise FormatError(f"{path}:{lineno}: content before any section")
    if pending is not None:
        arrays[pending[0]] = _finish_array(path, *pending)
    return config_items, state, arrays


def _parse_pair(path, lineno, line):
    if "=" not in line:
        raise FormatError(f"{path}:{lineno}: expected 'key = value'")
    key, _, value = line.partition("=")
    return key.strip(), value.strip()


def _parse_array_header(path, lineno, line):
    parts = line[1:-1].split()
    if line[-1] != "]" or len(parts) < 3:
        raise FormatError(f"{path}:{lineno}: bad array header {line!r}")
    try:
        shape = tuple(int(d) for d in parts[2:])
    except ValueError:
        raise FormatError(
            f"{path}:{lineno}: bad array shape in {line!r}") from None
    return parts[1], shape, []


def _finish_array(path, name, shape, values):
    want = int(np.prod(shape))
    if len(values) != want:
        raise FormatError(
            f"{path}: array {name} has {len(values)} values, expected {want}")
    return np.array(values, dtype=float).reshape(shape)
