"""Edge-list and DIMACS max-flow readers and writers.

Edge lists are zero-based ``u v`` or ``u v w`` lines with ``#``/``%``
comments.  The writer adds a ``# vertices N`` comment that the reader honours,
so isolated high-numbered vertices survive a round trip.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import ParseError

_VERTICES = re.compile(r"^[#%]\s*vertices\s+(\d+)\s*$")


def _int(token, lineno):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"not an integer: {token!r}", lineno) from None


def parse_edge_list(text):
    """Parse an edge list; returns ``(n, edges, weighted)``.

    ``edges`` is a ``(k, 3)`` int64 array.  Unweighted edges get capacity 1.
    """
    rows = []
    arity = None
    declared = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line[0] in "#%":
            m = _VERTICES.match(line)
            if m:
                declared = int(m.group(1))
            continue
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise ParseError(f"expected 2 or 3 fields, got {len(tokens)}", lineno)
        if arity is None:
            arity = len(tokens)
        elif len(tokens) != arity:
            raise ParseError(f"mixed arity: {len(tokens)} fields after {arity}-field lines", lineno)
        u, v = _int(tokens[0], lineno), _int(tokens[1], lineno)
        w = _int(tokens[2], lineno) if arity == 3 else 1
        if u < 0 or v < 0:
            raise ParseError("negative vertex id", lineno)
        if w < 0:
            raise ParseError(f"negative weight {w}", lineno)
        rows.append((u, v, w))
    edges = np.array(rows, dtype=np.int64).reshape(-1, 3)
    n = int(edges[:, :2].max()) + 1 if len(edges) else 0
    if declared is not None:
        if declared < n:
            raise ParseError(f"header declares {declared} vertices but ids reach {n - 1}")
        n = declared
    return n, edges, arity == 3


def format_edge_list(n, edges, weighted=True):
    lines = [f"# vertices {n}"]
    for u, v, w in np.asarray(edges, dtype=np.int64).reshape(-1, 3):
        lines.append(f"{u} {v} {w}" if weighted else f"{u} {v}")
    return "\n".join(lines) + "\n"


def parse_dimacs_max(text):
    """Parse a DIMACS max-flow problem; returns ``(n, edges, source, sink)`` zero-based."""
    n = arcs = None
    source = sink = None
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        if kind == "p":
            if n is not None:
                raise ParseError("second problem line", lineno)
            if len(tokens) != 4 or tokens[1] != "max":
                raise ParseError("problem line must read 'p max N M'", lineno)
            n, arcs = _int(tokens[2], lineno), _int(tokens[3], lineno)
            continue
        if n is None:
            raise ParseError(f"{kind!r} line before the problem line", lineno)
        if kind == "n":
            if len(tokens) != 3 or tokens[2] not in ("s", "t"):
                raise ParseError("node line must read 'n ID s|t'", lineno)
            v = _int(tokens[1], lineno) - 1
            if not 0 <= v < n:
                raise ParseError(f"node id {v + 1} outside 1..{n}", lineno)
            if tokens[2] == "s":
                source = v
            else:
                sink = v
        elif kind == "a":
            if len(tokens) != 4:
                raise ParseError("arc line must read 'a U V CAP'", lineno)
            u, v, c = (_int(x, lineno) for x in tokens[1:])
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"arc endpoint outside 1..{n}", lineno)
            if c < 0:
                raise ParseError(f"negative capacity {c}", lineno)
            rows.append((u - 1, v - 1, c))
        else:
            raise ParseError(f"unknown line type {kind!r}", lineno)
    if n is None:
        raise ParseError("missing problem line")
    if source is None:
        raise ParseError("no source")
    if sink is None:
        raise ParseError("no sink")
    if len(rows) != arcs:
        raise ParseError(f"header announces {arcs} arcs but {len(rows)} are listed")
    return n, np.array(rows, dtype=np.int64).reshape(-1, 3), source, sink


def format_dimacs_max(n, edges, source, sink):
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 3)
    lines = [f"p max {n} {len(edges)}", f"n {source + 1} s", f"n {sink + 1} t"]
    lines.extend(f"a {u + 1} {v + 1} {w}" for u, v, w in edges)
    return "\n".join(lines) + "\n"


def read_graph(path, fmt="edgelist"):
    """Read a file; returns ``(n, edges, weighted, terminals)`` with ``terminals`` possibly ``None``."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "edgelist":
        n, edges, weighted = parse_edge_list(text)
        return n, edges, weighted, None
    if fmt == "dimacs":
        n, edges, s, t = parse_dimacs_max(text)
        return n, edges, True, (s, t)
    raise ValueError(f"unknown format {fmt!r}")


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
