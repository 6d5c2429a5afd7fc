"""Block designs: core types, exact parameter arithmetic, verification.

Conventions used throughout the package: points are the integers 0..v-1,
blocks are strictly increasing tuples of points, and block lists are kept in
lexicographic order (canonical form, so golden files diff cleanly).  Every
count is an exact integer or `fractions.Fraction`; no floating point is used
anywhere in verification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .budget import charge
from .errors import ConstructionError, DomainError, StructuralError
from .fileio import atomic_write_json, int_field, load_json, require

# Witness lists in reports are capped; a wrong design can fail at almost
# every t-subset and nobody reads a million witnesses.
MAX_FAILURES = 32


def _check_int(name, value, minimum=None):
    if not isinstance(value, int) or isinstance(value, bool):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class DesignParameters:
    """Parameter tuple of a t-design with index lambda.

    Construction enforces only the cheap structural conditions
    (1 <= t <= k <= v, lambda >= 1); integrality of the derived counts —
    admissibility — is a property (`is_admissible`), because callers need to
    represent and report on inadmissible tuples too.
    """

    t: int
    v: int
    k: int
    lambda_: int

    def __post_init__(self):
        _check_int("t", self.t, 1)
        _check_int("v", self.v, 1)
        _check_int("k", self.k, 1)
        _check_int("lambda", self.lambda_, 1)
        if not (self.t <= self.k <= self.v):
            raise DomainError(
                f"need t <= k <= v, got t={self.t}, k={self.k}, v={self.v}")

    @property
    def b(self) -> int:
        """Number of blocks, lambda * C(v,t)/C(k,t).  Must be integral."""
        value = lambda_s(self, 0)
        if value.denominator != 1:
            raise DomainError(f"b = {value} is not an integer; parameters inadmissible")
        return value.numerator

    @property
    def r(self) -> int:
        """Replication number (blocks through a point).  Must be integral."""
        value = lambda_s(self, 1)
        if value.denominator != 1:
            raise DomainError(f"r = {value} is not an integer; parameters inadmissible")
        return value.numerator

    @property
    def is_admissible(self) -> bool:
        return not self.non_integral_lambdas()

    def non_integral_lambdas(self):
        """All (s, lambda_s) with a non-integral value, ascending s."""
        out = []
        for s in range(self.t + 1):
            value = lambda_s(self, s)
            if value.denominator != 1:
                out.append((s, value))
        return out


def lambda_s(params: DesignParameters, s: int) -> Fraction:
    """Number of blocks containing a fixed s-subset of points, as an exact
    rational: lambda * C(v-s, t-s) / C(k-s, t-s).  Integer iff admissible
    at level s.  lambda_0 = b, lambda_1 = r, lambda_t = lambda."""
    _check_int("s", s)
    if not (0 <= s <= params.t):
        raise DomainError(f"s must satisfy 0 <= s <= t={params.t}, got {s}")
    return Fraction(
        params.lambda_ * math.comb(params.v - s, params.t - s),
        math.comb(params.k - s, params.t - s),
    )


def massey_schobi_bound(v: int, k: int, t: int) -> Fraction:
    """Information-theoretic lower bound C(v,t)/C(k,t) on the number of keys
    of any system that is (t-1)-fold secure against spoofing."""
    _check_int("v", v, 1)
    _check_int("k", k, 1)
    _check_int("t", t, 1)
    if not (t <= k <= v):
        raise DomainError(f"need t <= k <= v, got t={t}, k={k}, v={v}")
    return Fraction(math.comb(v, t), math.comb(k, t))


def optimality_class(params: DesignParameters) -> str:
    """Classify by how far b sits above the key-count bound: b/b_opt = lambda.

    'optimal' (meets the bound, lambda = 1), 'near_optimal' (2..10 times
    the bound), 'other'.  A pure function of lambda.
    """
    if params.lambda_ == 1:
        return "optimal"
    if 2 <= params.lambda_ <= 10:
        return "near_optimal"
    return "other"


def divisibility_check(params: DesignParameters):
    """Whether v divides b — the gate for balanced orderings to exist.

    Returns (ok, (b, b mod v)) so failures carry their witness.
    """
    b = params.b
    return (b % params.v == 0, (b, b % params.v))


def teirlinck_params(t: int, v: int):
    """Parameter set t-(v, t+1, (t+1)!^(2t+1)) of the classical nontrivial
    t-design family that exists whenever v ≡ t (mod (t+1)!^(2t+1)).

    Returns (params, b) with b computed two independent ways — the closed
    form (t+1)!^(2t) * t! * C(v,t) and the counting formula
    lambda*C(v,t)/C(k,t) — compared exactly before returning.
    """
    _check_int("t", t, 1)
    _check_int("v", v)
    modulus = math.factorial(t + 1) ** (2 * t + 1)
    if v < t + 1 or (v - t) % modulus != 0:
        raise DomainError(
            f"v must satisfy v ≡ t (mod {modulus}) with v > t, got v={v}")
    params = DesignParameters(t=t, v=v, k=t + 1, lambda_=modulus)
    b_closed = math.factorial(t + 1) ** (2 * t) * math.factorial(t) * math.comb(v, t)
    b_counted = lambda_s(params, 0)
    if b_counted != b_closed:
        raise ConstructionError(
            f"b mismatch: closed form {b_closed} vs counted {b_counted}")
    return params, b_closed


@dataclass(frozen=True)
class BlockDesign:
    """A set of equal-size blocks over points 0..v-1, canonically ordered.

    Repeated blocks are not allowed.  Construction canonicalizes (sorts
    within blocks, then sorts the block list) and enforces the structural
    invariants; whether the result is actually a t-design is a separate
    question answered by `verify_design`.
    """

    v: int
    blocks: tuple

    def __post_init__(self):
        if not isinstance(self.v, int) or isinstance(self.v, bool) or self.v < 1:
            raise StructuralError(f"v must be a positive integer, got {self.v!r}")
        raw = list(self.blocks)
        if not raw:
            raise StructuralError("a design needs at least one block")
        canon = []
        bad = []
        for idx, block in enumerate(raw):
            entries = list(block)
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in entries):
                bad.append((idx, tuple(entries)))
                continue
            if any(not (0 <= x < self.v) for x in entries):
                bad.append((idx, tuple(entries)))
                continue
            if len(set(entries)) != len(entries):
                bad.append((idx, tuple(entries)))
                continue
            canon.append(tuple(sorted(entries)))
        if bad:
            raise StructuralError(
                "blocks with out-of-range or repeated points", offenders=bad[:MAX_FAILURES])
        k = len(canon[0])
        uneven = [(i, B) for i, B in enumerate(canon) if len(B) != k]
        if uneven:
            raise StructuralError("block sizes are not uniform", offenders=uneven[:MAX_FAILURES])
        canon.sort()
        dupes = [canon[i] for i in range(1, len(canon)) if canon[i] == canon[i - 1]]
        if dupes:
            raise StructuralError("repeated blocks are not allowed",
                                  offenders=sorted(set(dupes))[:MAX_FAILURES])
        object.__setattr__(self, "blocks", tuple(canon))

    @property
    def k(self) -> int:
        return len(self.blocks[0])

    @property
    def b(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a combinatorial verification.

    valid ⇔ failures empty.  inferred_lambda is the common count when one
    exists (even if it contradicts a declared lambda — useful diagnostics),
    otherwise None.  failures holds at most MAX_FAILURES (witness, observed)
    pairs in deterministic order.
    """

    valid: bool
    inferred_lambda: Optional[int]
    failures: tuple

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "inferred_lambda": self.inferred_lambda,
            "failures": [[_jsonify(w), obs] for (w, obs) in self.failures],
        }


def _jsonify(value):
    if isinstance(value, tuple):
        return [_jsonify(x) for x in value]
    return value


def verify_design(design: BlockDesign, t: int, lambda_: Optional[int] = None,
                  budget: Optional[int] = None) -> VerificationReport:
    """Count, for every t-subset of points, the blocks containing it.

    Valid iff all counts agree (and equal `lambda_` when declared).  When
    lambda_ is absent the count of the lexicographically first t-subset is
    the candidate all others are compared against.  Refuses instances where
    C(v,t) (plus the tally work b*C(k,t)) exceeds the work budget.
    """
    _check_int("t", t, 1)
    if t > design.k:
        raise DomainError(f"t={t} exceeds block size k={design.k}")
    if lambda_ is not None:
        _check_int("lambda", lambda_, 1)
    n_subsets = math.comb(design.v, t)
    charge(n_subsets + design.b * math.comb(design.k, t), budget,
           what=f"verifying strength t={t} over C({design.v},{t}) point subsets")

    counts = {}
    for block in design.blocks:
        for sub in combinations(block, t):
            counts[sub] = counts.get(sub, 0) + 1

    observed = counts.values()
    common = None
    if len(counts) == n_subsets:
        first = next(iter(observed))
        if all(c == first for c in observed):
            common = first
    # subsets never hit have count 0, so a full-coverage uniform tally is
    # the only way a common count exists
    expected = lambda_ if lambda_ is not None else (
        common if common is not None else counts.get(tuple(range(t)), 0))
    failures = []
    for sub in combinations(range(design.v), t):
        got = counts.get(sub, 0)
        if got != expected:
            failures.append((sub, got))
            if len(failures) >= MAX_FAILURES:
                break
    return VerificationReport(valid=not failures, inferred_lambda=common,
                              failures=tuple(failures))


def derived_design(design: BlockDesign, x: int, t: int = 2) -> BlockDesign:
    """Blocks through x with x removed, relabeled onto 0..v-2.

    For a t-(v,k,lambda) design this is a (t-1)-(v-1, k-1, lambda) design;
    `t` is the caller's claim about the parent's strength (not stored on
    BlockDesign) and must be at least 2 for the derived structure to retain
    any strength.
    """
    _check_int("x", x)
    _check_int("t", t)
    if t < 2:
        raise DomainError(f"derived design needs parent strength t >= 2, got {t}")
    if not (0 <= x < design.v):
        raise DomainError(f"point x={x} out of range [0, {design.v})")
    if design.k < 2:
        raise DomainError("blocks of size 1 leave nothing after removing x")

    def relabel(y):
        return y - 1 if y > x else y

    blocks = [tuple(relabel(y) for y in B if y != x)
              for B in design.blocks if x in B]
    if not blocks:
        raise DomainError(f"no blocks contain x={x}")
    return BlockDesign(v=design.v - 1, blocks=tuple(blocks))


def complete_design(v: int, k: int, budget: Optional[int] = None) -> BlockDesign:
    """All C(v,k) k-subsets of 0..v-1: a k-(v,k,1) design, and a
    t-(v,k,C(v-t,k-t)) design for every t < k.  Test-instance generator."""
    _check_int("v", v, 1)
    _check_int("k", k, 1)
    if k > v:
        raise DomainError(f"need k <= v, got k={k}, v={v}")
    charge(math.comb(v, k), budget, what=f"enumerating C({v},{k}) blocks")
    return BlockDesign(v=v, blocks=tuple(combinations(range(v), k)))


# ---------------------------------------------------------------------------
# file format: {"v": int, "k": int, "t": int|null, "lambda": int|null,
#               "blocks": [[int,...],...]}

def design_to_json(design: BlockDesign, t: Optional[int] = None,
                   lambda_: Optional[int] = None) -> dict:
    return {
        "v": design.v,
        "k": design.k,
        "t": t,
        "lambda": lambda_,
        "blocks": [list(B) for B in design.blocks],
    }


def design_from_json(doc) -> tuple:
    """Parse and structurally validate a design document.

    Returns (design, t, lambda) with t/lambda None when absent or null.
    """
    v = int_field(doc, "v", minimum=1)
    k = int_field(doc, "k", minimum=1)
    require("blocks" in doc, "missing field 'blocks'")
    require(isinstance(doc["blocks"], list), "'blocks' must be a list")
    design = BlockDesign(v=v, blocks=tuple(tuple(B) for B in doc["blocks"]))
    if design.k != k:
        raise StructuralError(f"declared k={k} but blocks have size {design.k}")
    t = doc.get("t")
    lam = doc.get("lambda")
    if t is not None:
        t = int_field(doc, "t", minimum=1)
    if lam is not None:
        lam = int_field(doc, "lambda", minimum=1)
    return design, t, lam


def save_design(design: BlockDesign, path, t: Optional[int] = None,
                lambda_: Optional[int] = None):
    atomic_write_json(design_to_json(design, t, lambda_), path)


def load_design(path):
    return design_from_json(load_json(path))
