"""Balanced orderings of block designs via point-splitting and edge coloring.

A design with v | b can always have its blocks ordered into rows so that
every point occupies every column position in exactly b/v rows: split each
point into b/v copies of degree k, and k-edge-color the resulting k-regular
bipartite copy/block incidence graph (colors = column positions; König
guarantees the coloring exists).  That balanced ordering is exactly what
makes the matrix a perfect-secrecy encoding matrix under equiprobable keys.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .designs import BlockDesign
from .errors import ConstructionError, DomainError, StructuralError
from .fileio import atomic_write_json, digest, int_field, load_json, require


@dataclass(frozen=True)
class EncodingMatrix:
    """b x k matrix: rows are keys, columns are source states, entries are
    messages in [0, v).

    Construction enforces row structure (k distinct in-range entries per row,
    rows pairwise distinct as sets).  The balanced-form property — every
    message exactly b/v times in every column — is checked separately by
    `verify_balanced`, so unbalanced matrices remain representable (mutation
    tests depend on that).
    """

    v: int
    k: int
    rows: tuple

    def __post_init__(self):
        if not isinstance(self.v, int) or self.v < 1:
            raise StructuralError(f"v must be a positive integer, got {self.v!r}")
        if not isinstance(self.k, int) or self.k < 1:
            raise StructuralError(f"k must be a positive integer, got {self.k!r}")
        raw = list(self.rows)
        if not raw:
            raise StructuralError("matrix needs at least one row")
        canon = []
        bad = []
        for idx, row in enumerate(raw):
            entries = tuple(row)
            ok = (len(entries) == self.k
                  and all(isinstance(x, int) and not isinstance(x, bool)
                          and 0 <= x < self.v for x in entries)
                  and len(set(entries)) == self.k)
            if ok:
                canon.append(entries)
            else:
                bad.append((idx, entries))
        if bad:
            raise StructuralError(
                "rows must hold k distinct messages in [0, v)", offenders=bad[:32])
        seen = {}
        for idx, row in enumerate(canon):
            key = frozenset(row)
            if key in seen:
                raise StructuralError(
                    "two rows carry the same message set",
                    offenders=[(seen[key], idx, tuple(sorted(key)))])
            seen[key] = idx
        object.__setattr__(self, "rows", tuple(canon))

    @property
    def b(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class SplitGraph:
    """Bipartite incidence graph after point-splitting.

    Left vertices are (point, copy) pairs, right vertices are block indices,
    and each edge records one incidence x ∈ B assigned to a copy of x.
    Edges are (left_index, right_index) pairs into the label tuples.
    """

    left_labels: tuple   # (point, copy) pairs
    right_labels: tuple  # block indices
    edges: tuple         # (left_index, right_index)

    def __post_init__(self):
        nl, nr = len(self.left_labels), len(self.right_labels)
        for (a, z) in self.edges:
            if not (0 <= a < nl and 0 <= z < nr):
                raise StructuralError(f"edge ({a},{z}) out of range")

    def degrees(self):
        left = [0] * len(self.left_labels)
        right = [0] * len(self.right_labels)
        for a, z in self.edges:
            left[a] += 1
            right[z] += 1
        return left, right

    def is_regular(self, k: int) -> bool:
        left, right = self.degrees()
        return all(d == k for d in left) and all(d == k for d in right)


def split_points(design: BlockDesign) -> SplitGraph:
    """Split each point into b/v copies, each taking k consecutive incidences
    (ascending block index), yielding a k-regular bipartite graph.

    Caller is responsible for having verified the design; v | b is checked
    here because the construction is meaningless without it.
    """
    v, k, b = design.v, design.k, design.b
    if b % v != 0:
        raise DomainError(
            f"balanced ordering needs v | b; got b={b}, v={v} (b mod v = {b % v})")
    copies = b // v
    incidences = [[] for _ in range(v)]
    for j, block in enumerate(design.blocks):
        for x in block:
            incidences[x].append(j)
    bad = [(x, len(incidences[x])) for x in range(v)
           if len(incidences[x]) != k * copies]
    if bad:
        raise StructuralError(
            f"point replication must be uniform r = k*b/v = {k * copies}",
            offenders=bad[:32])
    left_labels = tuple((x, c) for x in range(v) for c in range(copies))
    edges = []
    for x in range(v):
        for c in range(copies):
            for j in incidences[x][c * k:(c + 1) * k]:
                edges.append((x * copies + c, j))
    return SplitGraph(left_labels=left_labels,
                      right_labels=tuple(range(b)),
                      edges=tuple(edges))


def edge_color(graph: SplitGraph, k: Optional[int] = None) -> tuple:
    """Proper k-edge-coloring of a k-regular bipartite graph.

    Returns a color in [0, k) per edge, aligned with graph.edges.  Colors are
    assigned by repeatedly extracting a perfect matching (breadth-first
    augmenting-path search, lowest index first) from the not-yet-colored
    edges; regularity keeps the residual graph regular, so a perfect matching
    always exists.  Deterministic by construction.
    """
    left_deg, right_deg = graph.degrees()
    if k is None:
        k = left_deg[0] if left_deg else 0
    if k < 1 or any(d != k for d in left_deg) or any(d != k for d in right_deg):
        raise StructuralError(f"graph is not {k}-regular bipartite")
    nl = len(graph.left_labels)
    adj = [[] for _ in range(nl)]
    for eid, (a, z) in enumerate(graph.edges):
        adj[a].append(eid)
    for lst in adj:
        lst.sort(key=lambda e: (graph.edges[e][1], e))

    colors = [-1] * len(graph.edges)
    for color in range(k):
        match_left = [-1] * nl                      # left -> eid
        match_right = [-1] * len(graph.right_labels)  # right -> eid
        # greedy seed (lowest index first), then augment the leftovers
        for a in range(nl):
            for eid in adj[a]:
                if colors[eid] != -1:
                    continue
                z = graph.edges[eid][1]
                if match_right[z] == -1:
                    match_left[a] = eid
                    match_right[z] = eid
                    break
        for start in range(nl):
            if match_left[start] != -1:
                continue
            # BFS over alternating paths among uncolored edges
            parent = {}
            queue = deque([start])
            found = None
            while queue and found is None:
                a = queue.popleft()
                for eid in adj[a]:
                    if colors[eid] != -1:
                        continue
                    z = graph.edges[eid][1]
                    if z in parent:
                        continue
                    parent[z] = eid
                    if match_right[z] == -1:
                        found = z
                        break
                    queue.append(graph.edges[match_right[z]][0])
            if found is None:
                raise ConstructionError(
                    "no augmenting path in a regular bipartite graph")
            z = found
            while True:
                eid = parent[z]
                a = graph.edges[eid][0]
                previous = match_left[a]
                match_left[a] = eid
                match_right[z] = eid
                if previous == -1:
                    break
                z = graph.edges[previous][1]
        for eid in match_left:
            if eid == -1:
                raise ConstructionError("matching is not perfect")
            colors[eid] = color
    if any(c == -1 for c in colors):
        raise ConstructionError("edge coloring left edges uncolored")
    return tuple(colors)


def balance(design: BlockDesign) -> EncodingMatrix:
    """Order each block into a row so every message lands in every column
    exactly b/v times: the column of x in block B is the color of the edge
    joining x's copy to B."""
    graph = split_points(design)
    colors = edge_color(graph, design.k)
    rows = [[None] * design.k for _ in range(design.b)]
    for eid, (a, z) in enumerate(graph.edges):
        point = graph.left_labels[a][0]
        rows[z][colors[eid]] = point
    for j, row in enumerate(rows):
        if any(x is None for x in row):
            raise ConstructionError(f"row {j} not fully assigned")
    return EncodingMatrix(v=design.v, k=design.k, rows=tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class BalanceReport:
    """Per-(message, column) occupancy counts against the target b/v."""

    valid: bool
    expected: Optional[int]          # b/v, None when v does not divide b
    counts: tuple                    # v rows of k counts
    witness: Optional[tuple]         # first (message, column, count) off target

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "expected": self.expected,
            "counts": [list(r) for r in self.counts],
            "witness": list(self.witness) if self.witness else None,
        }


def verify_balanced(matrix: EncodingMatrix) -> BalanceReport:
    """True iff every message appears exactly b/v times in every column."""
    v, k, b = matrix.v, matrix.k, matrix.b
    counts = [[0] * k for _ in range(v)]
    for row in matrix.rows:
        for col, m in enumerate(row):
            counts[m][col] += 1
    if b % v != 0:
        expected = None
    else:
        expected = b // v
    witness = None
    if expected is not None:
        for m in range(v):
            for col in range(k):
                if counts[m][col] != expected:
                    witness = (m, col, counts[m][col])
                    break
            if witness:
                break
    valid = expected is not None and witness is None
    if expected is None:
        witness = (0, 0, counts[0][0])
    return BalanceReport(valid=valid, expected=expected,
                         counts=tuple(tuple(r) for r in counts), witness=witness)


# ---------------------------------------------------------------------------
# file format: {"v": int, "k": int, "b": int, "rows": [[int,...],...],
#               "provenance": {"source": "design"|"cdf", "input_digest": hex}}

def matrix_to_json(matrix: EncodingMatrix, provenance: Optional[dict] = None) -> dict:
    doc = {
        "v": matrix.v,
        "k": matrix.k,
        "b": matrix.b,
        "rows": [list(r) for r in matrix.rows],
    }
    if provenance is not None:
        doc["provenance"] = dict(provenance)
    return doc


def matrix_from_json(doc) -> EncodingMatrix:
    v = int_field(doc, "v", minimum=1)
    k = int_field(doc, "k", minimum=1)
    b = int_field(doc, "b", minimum=1)
    require("rows" in doc and isinstance(doc["rows"], list), "missing 'rows' list")
    matrix = EncodingMatrix(v=v, k=k, rows=tuple(tuple(r) for r in doc["rows"]))
    if matrix.b != b:
        raise StructuralError(f"declared b={b} but found {matrix.b} rows")
    return matrix


def save_matrix(matrix: EncodingMatrix, path, source: str = "design",
                input_doc=None):
    """Write a matrix file; provenance digest is the canonical-JSON hash of
    the input document the matrix was built from."""
    provenance = {"source": source}
    if input_doc is not None:
        provenance["input_digest"] = digest(input_doc)
    atomic_write_json(matrix_to_json(matrix, provenance), path)


def load_matrix(path) -> EncodingMatrix:
    return matrix_from_json(load_json(path))


def format_matrix_table(matrix: EncodingMatrix) -> str:
    """Plain-text tabular dump: one labeled row per key, one column per
    source state."""
    width = max(2, len(str(matrix.v - 1)))
    label_width = len(f"e_{matrix.b}")
    header = " " * label_width + "  " + "  ".join(
        f"{'s_' + str(j + 1):>{width + 2}}" for j in range(matrix.k))
    lines = [header]
    for i, row in enumerate(matrix.rows, start=1):
        label = f"e_{i}"
        lines.append(f"{label:<{label_width}}  " + "  ".join(
            f"{x:>{width + 2}}" for x in row))
    return "\n".join(lines)
