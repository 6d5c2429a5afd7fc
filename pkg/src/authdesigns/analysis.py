"""Exact security analysis of encoding matrices.

Fixed probabilistic model throughout: the key is one of the b rows,
equiprobable; the source emits an i-subset of the k source states,
equiprobable over subsets, order ignored, no repetition.  Three analyses:

* perfect secrecy — a message's posterior equals its prior iff the message
  occurs with identical frequency in every column;
* classical spoofing — the opponent sees i valid messages and injects a new
  one; the optimal success probability is computed by enumerating observation
  events exactly;
* verification-oracle games — the opponent adaptively queries accept/reject
  (offline: all queries first, then one spoof; online: wins on first
  acceptance).  Both games are solved exactly by memoized recursion over
  (accepted, rejected) states, with consistent key sets carried as integer
  bitmasks.

Everything returns `fractions.Fraction`; there is no floating point here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Optional

from .balancing import EncodingMatrix
from .budget import charge
from .errors import DomainError
from .fileio import fraction_from_json, fraction_to_json


@dataclass(frozen=True)
class SecrecySystem:
    """An encoding matrix under the fixed equiprobable model."""

    matrix: EncodingMatrix

    @property
    def v(self) -> int:
        return self.matrix.v

    @property
    def k(self) -> int:
        return self.matrix.k

    @property
    def b(self) -> int:
        return self.matrix.b

    @cached_property
    def key_sets(self) -> tuple:
        """Valid-message set M(e) per key, as frozensets."""
        return tuple(frozenset(row) for row in self.matrix.rows)

    @cached_property
    def message_masks(self) -> tuple:
        """Per message m, a b-bit mask of the keys whose row contains m."""
        masks = [0] * self.v
        for e, row in enumerate(self.matrix.rows):
            bit = 1 << e
            for m in row:
                masks[m] |= bit
        return tuple(masks)

    def message_distribution(self) -> tuple:
        """Induced distribution on messages: P(m) = |{e : m ∈ M(e)}| / (b·k).

        Derived helper; nothing downstream consumes it, but it makes the
        model concrete and is cheap to test (sums to 1 exactly).
        """
        return tuple(Fraction(mask.bit_count(), self.b * self.k)
                     for mask in self.message_masks)


def perfect_secrecy_check(matrix: EncodingMatrix):
    """Equiprobable-key secrecy criterion: every message occurs with the same
    frequency in every column.

    Returns (ok, witness); witness is the first (message, (column_a,
    column_b)) whose counts differ, None when ok.
    """
    counts = [[0] * matrix.k for _ in range(matrix.v)]
    for row in matrix.rows:
        for col, m in enumerate(row):
            counts[m][col] += 1
    for m in range(matrix.v):
        first = counts[m][0]
        for col in range(1, matrix.k):
            if counts[m][col] != first:
                return False, (m, (0, col))
    return True, None


def deception_bound(v: int, k: int, i: int) -> Fraction:
    """Classical information-theoretic floor (k-i)/(v-i)."""
    return Fraction(k - i, v - i)


def deception_probability(system: SecrecySystem, i: int,
                          budget: Optional[int] = None) -> Fraction:
    """Exact optimal success probability of a spoofing attack of order i.

    The observation event is the message set O = e(S) for key e and state
    i-subset S; each key consistent with O contributes exactly one S, so
    P(O) = cnt_i(O)/(b·C(k,i)) with cnt_i(O) = #{e : O ⊆ M(e)}.  The
    opponent's payoff at O is max over fresh m' of cnt_{i+1}(O∪{m'})/cnt_i(O),
    hence the cnt_i factors cancel:

        P_di = Σ_O max_{m'∉O} cnt_{i+1}(O ∪ {m'})  /  (b·C(k,i)).

    Only the (i+1)-subset tally is ever materialized.
    """
    if not isinstance(i, int) or not (0 <= i < system.k):
        raise DomainError(
            f"attack order must satisfy 0 <= i < k={system.k}, got {i!r}")
    charge(system.b * math.comb(system.k, i + 1) * (i + 2), budget,
           what=f"order-{i} spoofing tally over {system.b} keys")
    counts = {}
    for keyset in system.key_sets:
        for sub in combinations(sorted(keyset), i + 1):
            counts[sub] = counts.get(sub, 0) + 1
    best = {}
    for sub, c in counts.items():
        for j in range(i + 1):
            observed = sub[:j] + sub[j + 1:]
            if c > best.get(observed, 0):
                best[observed] = c
    return Fraction(sum(best.values()), system.b * math.comb(system.k, i))


def security_order(system: SecrecySystem, max_i: int,
                   budget: Optional[int] = None) -> int:
    """Largest t <= max_i with P_di = (k-i)/(v-i) for every i <= t; -1 when
    already i = 0 misses the floor."""
    if not isinstance(max_i, int) or not (0 <= max_i < system.k):
        raise DomainError(
            f"max_i must satisfy 0 <= max_i < k={system.k}, got {max_i!r}")
    order = -1
    for i in range(max_i + 1):
        if deception_probability(system, i, budget) != deception_bound(
                system.v, system.k, i):
            break
        order = i
    return order


# ---------------------------------------------------------------------------
# verification-oracle games

def _game_guard(system: SecrecySystem, i: int, budget, what):
    if not isinstance(i, int) or not (0 <= i <= system.v - 1):
        raise DomainError(
            f"oracle game order must satisfy 0 <= i <= v-1={system.v - 1}, got {i!r}")
    charge(math.comb(system.v, i + 1) * system.b, budget, what=what)


def voracle_offline_value(system: SecrecySystem, i: int,
                          budget: Optional[int] = None) -> Fraction:
    """Exact value of the offline oracle game: up to i adaptive accept/reject
    probes, then a single spoof.

    The phases are strictly separated: a probe the oracle *accepts* is
    already a completed deception of the online kind, so the offline
    experiment ends there without a spoofing phase — the success event is
    "every probe rejected and the final spoof accepted".  The state is
    therefore the rejected set (plus probes left); the posterior over keys
    is the bitmask of rows avoiding every rejected message.  Interior nodes
    maximize over withholding the remaining probes (equivalently, repeating
    an already-rejected message — allowed, never useful, and tested to
    change nothing) or probing any fresh message; the leaf plays the message
    with maximal posterior validity.

    Consequence, asserted by the tests rather than assumed: the value equals
    max_m |{e : m ∈ M(e)}| / b at every order — probing can only burn
    success probability, so the value is independent of i.
    """
    _game_guard(system, i, budget, f"offline oracle game of order {i}")
    masks = system.message_masks
    v, b = system.v, system.b
    memo = {}

    def value(rejected, q, cons, n_cons):
        if q == 0:
            best = max((cons & masks[m]).bit_count() for m in range(v))
            return Fraction(best, n_cons)
        key = (rejected, q)
        cached = memo.get(key)
        if cached is not None:
            return cached
        best = value(rejected, q - 1, cons, n_cons)
        for m in range(v):
            if m in rejected:
                continue
            acc = cons & masks[m]
            n_rej = n_cons - acc.bit_count()
            if n_rej == 0:
                continue   # certain acceptance: the branch is pure loss
            branch = Fraction(n_rej, n_cons) * value(
                rejected | {m}, q - 1, cons ^ acc, n_rej)
            if branch > best:
                best = branch
        memo[key] = best
        return best

    return value(frozenset(), i, (1 << b) - 1, b)


def voracle_online_value(system: SecrecySystem, i: int,
                         budget: Optional[int] = None) -> Fraction:
    """Exact value of the online oracle game: i+1 submissions, the opponent
    wins on the first acceptance.

    Every rejection reveals the submitted message to be invalid under the
    true key, so the state is just the rejected set (plus submissions left).
    """
    _game_guard(system, i, budget, f"online oracle game of order {i}")
    masks = system.message_masks
    v, b = system.v, system.b
    memo = {}

    def value(rejected, s, cons, n_cons):
        if s == 0:
            return Fraction(0)
        key = (rejected, s)
        cached = memo.get(key)
        if cached is not None:
            return cached
        best = Fraction(0)
        for m in range(v):
            if m in rejected:
                continue
            acc = cons & masks[m]
            n_acc = acc.bit_count()
            if n_acc == 0:
                # certain rejection, no information gained; the pool of
                # fresh messages still shrinks
                candidate = value(rejected | {m}, s - 1, cons, n_cons)
            else:
                candidate = Fraction(n_acc, n_cons)
                n_rej = n_cons - n_acc
                if n_rej and s > 1:
                    candidate += Fraction(n_rej, n_cons) * value(
                        rejected | {m}, s - 1, cons ^ acc, n_rej)
            if candidate > best:
                best = candidate
        memo[key] = best
        return best

    return value(frozenset(), i + 1, (1 << b) - 1, b)


def offline_bound(v: int, k: int) -> Fraction:
    return Fraction(k, v)


def online_bound(v: int, k: int, i: int) -> Fraction:
    return 1 - Fraction(math.comb(v - k, i + 1), math.comb(v, i + 1))


def oracle_equivalence_check(system: SecrecySystem, i: int,
                             budget: Optional[int] = None) -> bool:
    """True iff the offline value meets k/v exactly precisely when the online
    value meets 1 - C(v-k,i+1)/C(v,i+1) exactly.  The two tightness flags are
    claimed equivalent for every system; a False here is an alarm."""
    off_tight = voracle_offline_value(system, i, budget) == offline_bound(
        system.v, system.k)
    on_tight = voracle_online_value(system, i, budget) == online_bound(
        system.v, system.k, i)
    return off_tight == on_tight


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class OrderResult:
    i: int
    value: Fraction
    bound: Fraction
    tight: bool


@dataclass(frozen=True)
class DeceptionReport:
    """Per-order classical spoofing values plus the resulting security order
    (largest t with orders 0..t all present and tight, -1 if none)."""

    orders: tuple
    security_order: int


def analyze_spoofing(system: SecrecySystem, orders,
                     budget: Optional[int] = None) -> DeceptionReport:
    results = []
    for i in sorted(set(orders)):
        value = deception_probability(system, i, budget)
        bound = deception_bound(system.v, system.k, i)
        results.append(OrderResult(i=i, value=value, bound=bound,
                                   tight=value == bound))
    order = -1
    present = {res.i: res for res in results}
    while (order + 1) in present and present[order + 1].tight:
        order += 1
    return DeceptionReport(orders=tuple(results), security_order=order)


@dataclass(frozen=True)
class OracleOrderResult:
    i: int
    offline_value: Fraction
    offline_bound: Fraction
    offline_tight: bool
    online_value: Fraction
    online_bound: Fraction
    online_tight: bool

    @property
    def equivalent(self) -> bool:
        return self.offline_tight == self.online_tight


@dataclass(frozen=True)
class OracleReport:
    orders: tuple


def analyze_oracle(system: SecrecySystem, orders,
                   budget: Optional[int] = None) -> OracleReport:
    results = []
    for i in sorted(set(orders)):
        off = voracle_offline_value(system, i, budget)
        off_bound = offline_bound(system.v, system.k)
        on = voracle_online_value(system, i, budget)
        on_bound = online_bound(system.v, system.k, i)
        results.append(OracleOrderResult(
            i=i,
            offline_value=off, offline_bound=off_bound,
            offline_tight=off == off_bound,
            online_value=on, online_bound=on_bound,
            online_tight=on == on_bound))
    return OracleReport(orders=tuple(results))


def deception_report_to_json(report: DeceptionReport,
                             digest: Optional[str] = None) -> dict:
    doc = {
        "model": "classic",
        "security_order": report.security_order,
        "orders": [
            {
                "i": res.i,
                "value": fraction_to_json(res.value),
                "bound": fraction_to_json(res.bound),
                "tight": res.tight,
            }
            for res in report.orders
        ],
    }
    if digest is not None:
        doc["input_digest"] = digest
    return doc


def deception_report_from_json(doc) -> DeceptionReport:
    orders = tuple(
        OrderResult(i=entry["i"],
                    value=fraction_from_json(entry["value"]),
                    bound=fraction_from_json(entry["bound"]),
                    tight=bool(entry["tight"]))
        for entry in doc["orders"])
    return DeceptionReport(orders=orders, security_order=doc["security_order"])


def oracle_report_to_json(report: OracleReport,
                          digest: Optional[str] = None) -> dict:
    doc = {
        "model": "oracle",
        "orders": [
            {
                "i": res.i,
                "offline_value": fraction_to_json(res.offline_value),
                "offline_bound": fraction_to_json(res.offline_bound),
                "offline_tight": res.offline_tight,
                "online_value": fraction_to_json(res.online_value),
                "online_bound": fraction_to_json(res.online_bound),
                "online_tight": res.online_tight,
                "equivalent": res.equivalent,
            }
            for res in report.orders
        ],
    }
    if digest is not None:
        doc["input_digest"] = digest
    return doc


def oracle_report_from_json(doc) -> OracleReport:
    orders = tuple(
        OracleOrderResult(
            i=entry["i"],
            offline_value=fraction_from_json(entry["offline_value"]),
            offline_bound=fraction_from_json(entry["offline_bound"]),
            offline_tight=bool(entry["offline_tight"]),
            online_value=fraction_from_json(entry["online_value"]),
            online_bound=fraction_from_json(entry["online_bound"]),
            online_tight=bool(entry["online_tight"]))
        for entry in doc["orders"])
    return OracleReport(orders=orders)
