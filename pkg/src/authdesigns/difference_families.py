"""Cyclic difference families: verification, development into 2-designs, and
the direct encoding-matrix fast path.

A family of k-subsets of Z_v is a difference family of index lambda when the
signed differences x - y (x != y within a base block) cover every nonzero
residue exactly lambda times.  Developing the base blocks through all v
translates yields a 2-(v, k, lambda) design; developing them *coordinatewise*
yields an encoding matrix that is already balanced, because each column of
each orbit runs through a full residue cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .balancing import EncodingMatrix
from .designs import BlockDesign, VerificationReport, MAX_FAILURES
from .errors import ConstructionError, DomainError, StructuralError
from .fileio import atomic_write_json, int_field, load_json, require


@dataclass(frozen=True)
class DifferenceFamily:
    """Base blocks over Z_v with a declared index lambda.

    Coordinate order of base blocks is preserved (not canonicalized): the
    matrix fast path develops rows coordinatewise, so the given order is
    meaningful.  Whether the differences actually cover each residue lambda
    times is `verify_df`'s job.
    """

    v: int
    lambda_: int
    base_blocks: tuple

    def __post_init__(self):
        if not isinstance(self.v, int) or self.v < 2:
            raise StructuralError(f"group order v must be an integer >= 2, got {self.v!r}")
        if not isinstance(self.lambda_, int) or self.lambda_ < 1:
            raise StructuralError(f"lambda must be a positive integer, got {self.lambda_!r}")
        raw = list(self.base_blocks)
        if not raw:
            raise StructuralError("a difference family needs at least one base block")
        canon = []
        bad = []
        for idx, block in enumerate(raw):
            entries = tuple(block)
            ok = (len(entries) >= 2
                  and all(isinstance(x, int) and not isinstance(x, bool)
                          and 0 <= x < self.v for x in entries)
                  and len(set(entries)) == len(entries))
            if ok:
                canon.append(entries)
            else:
                bad.append((idx, entries))
        if bad:
            raise StructuralError(
                "base blocks need >= 2 distinct residues in [0, v)",
                offenders=bad[:MAX_FAILURES])
        k = len(canon[0])
        uneven = [(i, B) for i, B in enumerate(canon) if len(B) != k]
        if uneven:
            raise StructuralError("base-block sizes are not uniform",
                                  offenders=uneven[:MAX_FAILURES])
        object.__setattr__(self, "base_blocks", tuple(canon))

    @property
    def k(self) -> int:
        return len(self.base_blocks[0])

    @property
    def l(self) -> int:
        """Number of base blocks."""
        return len(self.base_blocks)


def verify_df(df: DifferenceFamily) -> VerificationReport:
    """Tally all l*k*(k-1) signed differences; valid iff every nonzero
    residue shows up exactly lambda times.  Failures list (residue, observed)
    with wrong multiplicity, ascending."""
    counts = [0] * df.v
    for block in df.base_blocks:
        for x, y in combinations(block, 2):
            counts[(x - y) % df.v] += 1
            counts[(y - x) % df.v] += 1
    failures = []
    for residue in range(1, df.v):
        if counts[residue] != df.lambda_:
            failures.append((residue, counts[residue]))
            if len(failures) >= MAX_FAILURES:
                break
    nonzero = [c for c in counts[1:]]
    common = nonzero[0] if nonzero and all(c == nonzero[0] for c in nonzero) else None
    return VerificationReport(valid=not failures,
                              inferred_lambda=common,
                              failures=tuple(failures))


def _reject_short_orbits(df: DifferenceFamily):
    """A base block whose translate by some g != 0 is itself has an orbit
    shorter than v; development would produce repeated blocks and b < l*v.
    Only g in D - d_0 can stabilize D, so the check is cheap."""
    for idx, block in enumerate(df.base_blocks):
        as_set = frozenset(block)
        d0 = block[0]
        for d in block:
            g = (d - d0) % df.v
            if g == 0:
                continue
            if frozenset((x + g) % df.v for x in block) == as_set:
                raise DomainError(
                    f"base block {block} has a short orbit (stabilized by g={g}); "
                    "only full-orbit families are supported")
    # distinct base blocks sharing one orbit also collapse the development
    seen = {}
    for idx, block in enumerate(df.base_blocks):
        canon = min(tuple(sorted((x + g) % df.v for x in block))
                    for g in range(df.v))
        if canon in seen:
            raise DomainError(
                f"base blocks {df.base_blocks[seen[canon]]} and {block} "
                "lie in the same translation orbit")
        seen[canon] = idx


def develop(df: DifferenceFamily) -> BlockDesign:
    """All l*v translates D_i + g as a canonical BlockDesign (a 2-(v,k,lambda)
    design whenever verify_df passes)."""
    _reject_short_orbits(df)
    blocks = [tuple(sorted((x + g) % df.v for x in block))
              for block in df.base_blocks for g in range(df.v)]
    return BlockDesign(v=df.v, blocks=tuple(blocks))


def develop_matrix(df: DifferenceFamily) -> EncodingMatrix:
    """The fast path: rows (d_1+g, ..., d_k+g) for each base block and each
    g = 0..v-1, base-block-major.  Coordinate order is preserved, and each
    column of each orbit is a full residue cycle, so every message appears
    exactly l times per column — already balanced, no coloring needed."""
    _reject_short_orbits(df)
    rows = [tuple((x + g) % df.v for x in block)
            for block in df.base_blocks for g in range(df.v)]
    return EncodingMatrix(v=df.v, k=df.k, rows=tuple(rows))


# ---------------------------------------------------------------------------
# Netto triple systems: CDF(q, 3, 1) for primes q ≡ 1 (mod 6)

def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit-and-beyond inputs."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def smallest_primitive_root(q: int) -> int:
    """Smallest generator of the multiplicative group mod prime q."""
    if not is_prime(q):
        raise DomainError(f"{q} is not prime")
    if q == 2:
        return 1
    factors = _prime_factors(q - 1)
    for w in range(2, q):
        if all(pow(w, (q - 1) // p, q) != 1 for p in factors):
            return w
    raise ConstructionError(f"no primitive root found mod {q}")


def netto_triples(q: int) -> DifferenceFamily:
    """CDF(q, 3, 1) for a prime q ≡ 1 (mod 6): with w the smallest primitive
    root and d = (q-1)/6, base blocks {w^i, w^(i+2d), w^(i+4d)} for
    i = 0..d-1.  The output is gated through verify_df before returning."""
    if not isinstance(q, int) or not is_prime(q):
        raise DomainError(f"q must be prime, got {q!r}")
    if q % 6 != 1:
        raise DomainError(f"q must satisfy q ≡ 1 (mod 6), got {q}")
    w = smallest_primitive_root(q)
    d = (q - 1) // 6
    blocks = tuple(
        (pow(w, i, q), pow(w, i + 2 * d, q), pow(w, i + 4 * d, q))
        for i in range(d))
    family = DifferenceFamily(v=q, lambda_=1, base_blocks=blocks)
    report = verify_df(family)
    if not report.valid:
        raise ConstructionError(
            f"netto_triples({q}) failed its own difference tally: "
            f"{report.failures[:3]}")
    return family


# ---------------------------------------------------------------------------
# file format: {"v": int, "lambda": int, "base_blocks": [[int,...],...]}

def df_to_json(df: DifferenceFamily) -> dict:
    return {
        "v": df.v,
        "lambda": df.lambda_,
        "base_blocks": [list(B) for B in df.base_blocks],
    }


def df_from_json(doc) -> DifferenceFamily:
    v = int_field(doc, "v", minimum=2)
    lam = int_field(doc, "lambda", minimum=1)
    require("base_blocks" in doc and isinstance(doc["base_blocks"], list),
            "missing 'base_blocks' list")
    return DifferenceFamily(v=v, lambda_=lam,
                            base_blocks=tuple(tuple(B) for B in doc["base_blocks"]))


def save_df(df: DifferenceFamily, path):
    atomic_write_json(df_to_json(df), path)


def load_df(path) -> DifferenceFamily:
    return df_from_json(load_json(path))
