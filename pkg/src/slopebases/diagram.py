"""Text diagrams for modules over the preprojective algebra.

Two notations are accepted for a single summand.

Layout form: rows of vertex digits, head on top and socle at the bottom.
Without edge rows, a node is joined to each node of the next row whose
column differs by one.  If a row made only of '/' and '\\' sits between two
node rows, exactly the drawn edges are used: '/' at column x joins the upper
node at column x+1 to the lower node at column x-1, '\\' at column x joins
the upper node at x-1 to the lower node at x+1.  Edge signs are then solved
so that the preprojective relations hold.

List form: a ``nodes:`` line of ``name=vertex`` tokens and an ``edges:`` line
of ``u>v`` tokens (u maps onto v), optionally suffixed ``:-1``.  Signs given
here are taken as is.

A module is a sequence of summands separated by lines holding ``+``; a line
``*k`` repeats the preceding summand k times.  ``#`` starts a comment.
A catalog file is a sequence of ``[label]`` headed entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    name: str
    vertex: int  # 0-based
    row: Optional[int] = None
    column: Optional[int] = None


@dataclass(frozen=True)
class Diagram:
    """One indecomposable-looking summand: nodes and signed edges (upper -> lower)."""

    nodes: Tuple[Node, ...]
    edges: Tuple[Tuple[int, int, int], ...]
    solve_signs: bool = False

    def with_signs(self, signs: Sequence[int]) -> "Diagram":
        edges = tuple((u, v, s) for (u, v, _), s in zip(self.edges, signs))
        return Diagram(self.nodes, edges, False)

    def rows(self) -> List[List[int]]:
        """Vertex labels (1-based) row by row, when rows are known."""
        if any(n.row is None for n in self.nodes):
            raise DiagramError("diagram has no row structure")
        depth = max(n.row for n in self.nodes) + 1
        out: List[List[int]] = [[] for _ in range(depth)]
        for n in self.nodes:
            out[n.row].append(n.vertex + 1)
        return [sorted(r) for r in out]


@dataclass(frozen=True)
class ModuleText:
    summands: Tuple[Tuple[Diagram, int], ...]


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _is_edge_row(line: str) -> bool:
    return bool(line.strip()) and set(line) <= {" ", "/", "\\"}


def _parse_layout(lines: List[str]) -> Diagram:
    node_rows: List[List[Tuple[int, int]]] = []
    edge_rows: Dict[int, str] = {}
    for line in lines:
        if _is_edge_row(line):
            if not node_rows:
                raise DiagramError("edge row above the first node row")
            edge_rows[len(node_rows) - 1] = line
            continue
        row = []
        for col, ch in enumerate(line):
            if ch == " ":
                continue
            if not ch.isdigit() or ch == "0":
                raise DiagramError(f"unexpected character {ch!r} in diagram row {line!r}")
            row.append((col, int(ch) - 1))
        node_rows.append(row)
    nodes: List[Node] = []
    where: Dict[Tuple[int, int], int] = {}
    for r, row in enumerate(node_rows):
        for col, v in row:
            where[(r, col)] = len(nodes)
            nodes.append(Node(f"r{r}c{col}", v, r, col))
    edges = []
    for r in range(len(node_rows) - 1):
        if r in edge_rows:
            for x, ch in enumerate(edge_rows[r]):
                if ch == "/":
                    up, low = (r, x + 1), (r + 1, x - 1)
                elif ch == "\\":
                    up, low = (r, x - 1), (r + 1, x + 1)
                else:
                    continue
                if up not in where or low not in where:
                    raise DiagramError(f"dangling edge {ch!r} at row {r}, column {x}")
                edges.append((where[up], where[low], 1))
        else:
            for col, _ in node_rows[r]:
                for dc in (-1, 1):
                    if (r + 1, col + dc) in where:
                        edges.append((where[(r, col)], where[(r + 1, col + dc)], 1))
    return Diagram(tuple(nodes), tuple(edges), solve_signs=True)


def _parse_list(lines: List[str]) -> Diagram:
    spec = {}
    for line in lines:
        key, _, rest = line.partition(":")
        spec[key.strip()] = rest.split()
    if "nodes" not in spec:
        raise DiagramError("list form needs a nodes: line")
    nodes, index = [], {}
    for tok in spec["nodes"]:
        name, _, v = tok.partition("=")
        if not v.isdigit() or name in index:
            raise DiagramError(f"bad node token {tok!r}")
        index[name] = len(nodes)
        nodes.append(Node(name, int(v) - 1))
    edges = []
    for tok in spec.get("edges", []):
        body, _, sign = tok.partition(":")
        u, _, v = body.partition(">")
        if u not in index or v not in index:
            raise DiagramError(f"bad edge token {tok!r}")
        edges.append((index[u], index[v], int(sign) if sign else 1))
    return Diagram(tuple(nodes), tuple(edges), solve_signs=False)


def _require_connected(d: Diagram) -> Diagram:
    """A summand must be one connected piece; separate pieces go in separate summands."""
    adj: Dict[int, List[int]] = {k: [] for k in range(len(d.nodes))}
    for u, v, _ in d.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(d.nodes):
        raise DiagramError("summand diagram is not connected; check the column offsets")
    return d


def parse_summand(lines: List[str]) -> Diagram:
    lines = [l for l in lines if l.strip()]
    if not lines:
        raise DiagramError("empty summand")
    if lines[0].lstrip().startswith("nodes:"):
        return _require_connected(_parse_list([l.strip() for l in lines]))
    indent = min(len(l) - len(l.lstrip()) for l in lines)
    return _require_connected(_parse_layout([l[indent:] for l in lines]))


def parse_module_text(text: str) -> ModuleText:
    summands: List[Tuple[Diagram, int]] = []
    block: List[str] = []

    def flush():
        if any(l.strip() for l in block):
            summands.append((parse_summand(block), 1))
        block.clear()

    for raw in text.splitlines():
        line = _strip(raw)
        token = line.strip()
        if token == "+":
            flush()
        elif token.startswith("*") and token[1:].isdigit():
            flush()
            if not summands:
                raise DiagramError("multiplicity before any summand")
            d, k = summands[-1]
            summands[-1] = (d, k * int(token[1:]))
        else:
            block.append(line)
    flush()
    if not summands:
        raise DiagramError("no summands found")
    return ModuleText(tuple(summands))


def parse_catalog_text(text: str) -> List[Tuple[str, str]]:
    """Split a catalog file into (label, body) pairs."""
    entries: List[Tuple[str, List[str]]] = []
    for raw in text.splitlines():
        line = _strip(raw)
        if line.strip().startswith("[") and line.strip().endswith("]"):
            entries.append((line.strip()[1:-1].strip(), []))
        elif entries:
            entries[-1][1].append(line)
        elif line.strip():
            raise DiagramError("catalog text before the first [label]")
    return [(label, "\n".join(body)) for label, body in entries]


def sign_assignments(n_edges: int, limit: int = 20):
    """All ±1 sign vectors, the all-positive one first."""
    if n_edges > limit:
        raise DiagramError(f"too many edges ({n_edges}) for sign solving")
    for bits in product((1, -1), repeat=n_edges):
        yield bits


def layout_text(rows: Sequence[Sequence[int]]) -> str:
    """Compact layout text for rows of 1-based vertex labels (label = column)."""
    lines = []
    for row in rows:
        width = max(row)
        chars = [" "] * width
        for v in row:
            chars[v - 1] = str(v)
        lines.append("".join(chars).rstrip())
    return "\n".join(lines)
