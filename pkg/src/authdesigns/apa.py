"""Authentication perpendicular arrays: verification and the classical
55-row example over 11 symbols.

An APA of index lambda and strength t over v symbols in k columns has
lambda*C(v,t) rows and satisfies three clauses: (i) rows hold k distinct
symbols; (ii) every t symbols land together in every choice of t columns in
exactly lambda rows; (iii) for s < t, among the rows containing s+1 fixed
symbols, any s of them occupy each s-subset of columns equally often.
Clause (iii) is read with "contain" meaning anywhere in the row, which is
what the k=3 example's by-hand count confirms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .budget import charge
from .designs import VerificationReport, MAX_FAILURES
from .errors import ConstructionError, StructuralError
from .fileio import atomic_write_json, int_field, load_json, require


@dataclass(frozen=True)
class PerpendicularArray:
    """A declared APA_lambda(t, k, v) candidate.

    Construction enforces shape only: lambda*C(v,t) rows, k symbols in
    [0, v) per row.  Row-distinctness belongs to clause (i) of `verify_apa`,
    so mutated arrays stay representable.
    """

    t: int
    k: int
    v: int
    lambda_: int
    rows: tuple

    def __post_init__(self):
        for name in ("t", "k", "v", "lambda_"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise StructuralError(f"{name} must be a positive integer, got {value!r}")
        if not (self.t <= self.k <= self.v):
            raise StructuralError(
                f"need t <= k <= v, got t={self.t}, k={self.k}, v={self.v}")
        expected_rows = self.lambda_ * math.comb(self.v, self.t)
        raw = list(self.rows)
        if len(raw) != expected_rows:
            raise StructuralError(
                f"an APA_{self.lambda_}({self.t},{self.k},{self.v}) needs "
                f"{expected_rows} rows, got {len(raw)}")
        canon = []
        bad = []
        for idx, row in enumerate(raw):
            entries = tuple(row)
            ok = (len(entries) == self.k
                  and all(isinstance(x, int) and not isinstance(x, bool)
                          and 0 <= x < self.v for x in entries))
            if ok:
                canon.append(entries)
            else:
                bad.append((idx, entries))
        if bad:
            raise StructuralError("rows must hold k symbols in [0, v)",
                                  offenders=bad[:MAX_FAILURES])
        object.__setattr__(self, "rows", tuple(canon))


def verify_apa(array: PerpendicularArray,
               budget: Optional[int] = None) -> VerificationReport:
    """Check clauses (i)-(iii); the report carries the first violation found
    per clause, tagged ('i'|'ii'|'iii', ...details)."""
    t, k, v, lam = array.t, array.k, array.v, array.lambda_
    n = len(array.rows)
    cost = (math.comb(k, t) * (n + math.comb(v, t)) + n * k
            + sum((s + 1) * math.comb(v, s + 1) * (math.comb(k, s) + n)
                  for s in range(1, t)))
    charge(cost, budget, what=f"APA verification over {n} rows")
    failures = []

    # (i) distinct symbols within each row
    for idx, row in enumerate(array.rows):
        if len(set(row)) != k:
            failures.append((("i", idx, row), len(set(row))))
            break

    # (ii) each t-subset of symbols in each t-subset of columns: lambda rows
    done = False
    for cols in combinations(range(k), t):
        tally = {}
        for row in array.rows:
            key = frozenset(row[c] for c in cols)
            if len(key) == t:
                tally[key] = tally.get(key, 0) + 1
        for symbols in combinations(range(v), t):
            got = tally.get(frozenset(symbols), 0)
            if got != lam:
                failures.append((("ii", cols, symbols), got))
                done = True
                break
        if done:
            break

    # (iii) for s < t: rows containing s+1 fixed symbols place any s of them
    # uniformly over the C(k,s) column subsets
    rows_with = [set() for _ in range(v)]
    for idx, row in enumerate(array.rows):
        for x in row:
            rows_with[x].add(idx)
    done = False
    for s in range(1, t):
        for subset in combinations(range(v), s + 1):
            containing = set.intersection(*(rows_with[x] for x in subset))
            if not containing:
                continue
            for x in subset:
                rest = tuple(y for y in subset if y != x)
                tally = {}
                for idx in containing:
                    row = array.rows[idx]
                    cols = frozenset(c for c in range(k) if row[c] in rest)
                    tally[cols] = tally.get(cols, 0) + 1
                counts = [tally.get(frozenset(cs), 0)
                          for cs in combinations(range(k), s)]
                if len(set(counts)) != 1:
                    failures.append((("iii", s, subset, x), tuple(counts)))
                    done = True
                    break
            if done:
                break
        if done:
            break

    return VerificationReport(valid=not failures,
                              inferred_lambda=lam if not failures else None,
                              failures=tuple(failures[:MAX_FAILURES]))


VAN_REES_BASE_ROWS = ((0, 1, 2), (0, 9, 7), (0, 3, 6), (0, 4, 8), (0, 5, 10))


def van_rees_array() -> PerpendicularArray:
    """The classical APA_1(2, 3, 11): five base rows developed additively mod
    11, in (base row, shift) lexicographic order.  Post-verified before
    returning."""
    rows = tuple(tuple((x + g) % 11 for x in base)
                 for base in VAN_REES_BASE_ROWS for g in range(11))
    array = PerpendicularArray(t=2, k=3, v=11, lambda_=1, rows=rows)
    report = verify_apa(array)
    if not report.valid:
        raise ConstructionError(
            f"developed base rows failed APA verification: {report.failures[:3]}")
    return array


# ---------------------------------------------------------------------------
# file format: {"t": int, "k": int, "v": int, "lambda": int,
#               "rows": [[int,...],...]}

def apa_to_json(array: PerpendicularArray) -> dict:
    return {
        "t": array.t,
        "k": array.k,
        "v": array.v,
        "lambda": array.lambda_,
        "rows": [list(r) for r in array.rows],
    }


def apa_from_json(doc) -> PerpendicularArray:
    t = int_field(doc, "t", minimum=1)
    k = int_field(doc, "k", minimum=1)
    v = int_field(doc, "v", minimum=1)
    lam = int_field(doc, "lambda", minimum=1)
    require("rows" in doc and isinstance(doc["rows"], list), "missing 'rows' list")
    return PerpendicularArray(t=t, k=k, v=v, lambda_=lam,
                              rows=tuple(tuple(r) for r in doc["rows"]))


def save_apa(array: PerpendicularArray, path):
    atomic_write_json(apa_to_json(array), path)


def load_apa(path) -> PerpendicularArray:
    return apa_from_json(load_json(path))
