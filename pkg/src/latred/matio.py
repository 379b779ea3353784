"""Shared plain-text matrix format.

First line: "rows cols". Then one line per row of space-separated decimals,
written with 17 significant digits so round-trips are exact for float64.
A vector is a 1 x n matrix (or a bare n-number line list, accepted on read)."""

import numpy as np


def format_matrix(a) -> str:
    a = np.atleast_2d(np.asarray(a, dtype=float))
    rows, cols = a.shape
    lines = [f"{rows} {cols}"]
    for row in a:
        lines.append(" ".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def write_matrix(a, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_matrix(a))


def parse_matrix(text: str):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'rows cols'")
    rows, cols = int(head[0]), int(head[1])
    if len(lines) - 1 != rows:
        raise ValueError(f"expected {rows} data rows, got {len(lines) - 1}")
    a = np.array([[float(v) for v in ln.split()] for ln in lines[1:]])
    if a.shape != (rows, cols):
        raise ValueError("row length does not match declared cols")
    return a


def read_matrix(path):
    with open(path) as fh:
        return parse_matrix(fh.read())


def read_vector(path):
    v = read_matrix(path)
    if 1 not in v.shape:
        raise ValueError("vector file must be 1 x n or n x 1")
    return v.ravel()
