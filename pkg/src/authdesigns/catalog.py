"""Bundled corpus: small verified constructions plus parameter-only rows for
the larger published designs.

Every payload-bearing entry is gated through its verifier when loaded, so a
corrupted data file or a broken generator surfaces as an error instead of a
silently wrong golden object.  Parameter-only entries carry the published
key-count bound b_opt for arithmetic cross-checks; their designs are far
beyond desk scale and are not bundled.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files as resource_files
from typing import Callable, Optional

from .apa import PerpendicularArray, van_rees_array, verify_apa
from .designs import (BlockDesign, DesignParameters, complete_design,
                      verify_design)
from .difference_families import (DifferenceFamily, df_from_json,
                                  netto_triples, verify_df)
from .errors import ConstructionError
from .fileio import load_json


@dataclass(frozen=True)
class CatalogEntry:
    """One named corpus item.

    kind 'design' payloads load as (BlockDesign, t, lambda); 'cdf' as
    DifferenceFamily; 'apa' as PerpendicularArray; 'params-only' entries
    have no payload (loader is None).
    """

    name: str
    kind: str
    summary: str
    note: str
    params: Optional[DesignParameters] = None
    b_opt: Optional[int] = None
    loader: Optional[Callable] = None


def _gated_df(df: DifferenceFamily, name: str) -> DifferenceFamily:
    report = verify_df(df)
    if not report.valid:
        raise ConstructionError(
            f"catalog entry {name!r} failed difference verification: "
            f"{report.failures[:3]}")
    return df


def _gated_design(design: BlockDesign, t: int, lam: int, name: str):
    report = verify_design(design, t, lam)
    if not report.valid:
        raise ConstructionError(
            f"catalog entry {name!r} failed design verification: "
            f"{report.failures[:3]}")
    return design, t, lam


def _gated_apa(array: PerpendicularArray, name: str) -> PerpendicularArray:
    report = verify_apa(array)
    if not report.valid:
        raise ConstructionError(
            f"catalog entry {name!r} failed APA verification: "
            f"{report.failures[:3]}")
    return array


def _data_df(filename: str, name: str) -> DifferenceFamily:
    doc = load_json(resource_files("authdesigns") / "data" / filename)
    return _gated_df(df_from_json(doc), name)


_AG23_BLOCKS = (
    (0, 1, 2), (3, 4, 5), (6, 7, 8),
    (0, 3, 6), (1, 4, 7), (2, 5, 8),
    (0, 4, 8), (1, 5, 6), (2, 3, 7),
    (0, 5, 7), (1, 3, 8), (2, 4, 6),
)

_NETTO_PRIMES = (7, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97)

# (t, v, k, lambda, b): small Steiner design parameter rows with their
# published key counts b = C(v,t)/C(k,t)
_STEINER_ROWS = (
    (3, 26, 5, 1, 260),
    (4, 11, 5, 1, 66),
    (4, 23, 7, 1, 253),
    (4, 23, 5, 1, 1771),
    (4, 47, 5, 1, 35673),
    (4, 83, 5, 1, 367524),
    (4, 71, 5, 1, 194327),
    (4, 107, 5, 1, 1032122),
    (4, 131, 5, 1, 2343328),
    (4, 167, 5, 1, 6251311),
    (4, 243, 5, 1, 28344492),
    (5, 12, 6, 1, 132),
    (5, 84, 6, 1, 5145336),
    (5, 244, 6, 1, 1152676008),
)

# (t, v, k, lambda, b_opt): published 6- and 7-design parameter rows; actual
# key count is lambda * b_opt
_T67_ROWS = (
    (6, 19, 7, 4, 3876),
    (6, 22, 7, 8, 10659),
    (6, 23, 7, 4, 14421),
    (6, 25, 7, 6, 25300),
    (6, 32, 7, 6, 129456),
    (7, 24, 8, 8, 43263),
    (7, 26, 8, 6, 82225),
    (7, 33, 8, 10, 534006),
)

# (t, v, k, lambda, b_opt): published 8-design parameter rows
_T8_ROWS = (
    (8, 31, 10, 100, 175305),
    (8, 27, 11, 432, 13455),
    (8, 36, 11, 1260, 183396),
    (8, 40, 11, 1440, 466089),
    (8, 27, 12, 1296, 4485),
)


def _build_registry():
    entries = []

    def add(entry):
        entries.append(entry)

    add(CatalogEntry(
        name="cdf-13-3-1", kind="cdf",
        summary="CDF(13,3,1): base blocks {0,1,4}, {0,2,7}",
        note="classical two-block difference family over Z_13; develops into "
             "the optimal 26-key system on 13 messages",
        params=DesignParameters(2, 13, 3, 1),
        loader=lambda: _gated_df(DifferenceFamily(
            v=13, lambda_=1, base_blocks=((0, 1, 4), (0, 2, 7))), "cdf-13-3-1")))
    add(CatalogEntry(
        name="fano-cdf", kind="cdf",
        summary="CDF(7,3,1): base block {1,2,4}",
        note="quadratic residues mod 7; develops into the Fano plane",
        params=DesignParameters(2, 7, 3, 1),
        loader=lambda: _gated_df(DifferenceFamily(
            v=7, lambda_=1, base_blocks=((1, 2, 4),)), "fano-cdf")))
    add(CatalogEntry(
        name="biplane-cdf-11-5-2", kind="cdf",
        summary="CDF(11,5,2): base block {1,3,4,5,9}",
        note="quadratic residues mod 11; develops into the 2-(11,5,2) "
             "biplane, a near-optimal system",
        params=DesignParameters(2, 11, 5, 2),
        loader=lambda: _gated_df(DifferenceFamily(
            v=11, lambda_=2, base_blocks=((1, 3, 4, 5, 9),)), "biplane-cdf-11-5-2")))

    bundled = (
        ("cdf-13-4-1", "cdf-13-4-1.json", 13, 4,
         "planar difference set {0,1,3,9} (projective plane of order 3)"),
        ("cdf-41-5-1", "cdf-41-5-1.json", 41, 5,
         "radical two-block family over GF(41): cosets of the 5th roots of unity"),
        ("cdf-31-6-1", "cdf-31-6-1.json", 31, 6,
         "planar difference set (projective plane of order 5), found by "
         "exhaustive difference-tally search"),
        ("cdf-337-7-1", "cdf-337-7-1.json", 337, 7,
         "radical eight-block family over GF(337): multiplicative cosets of "
         "the 7th roots of unity"),
        ("cdf-57-8-1", "cdf-57-8-1.json", 57, 8,
         "planar difference set (projective plane of order 7), found by "
         "exhaustive difference-tally search"),
        ("cdf-73-9-1", "cdf-73-9-1.json", 73, 9,
         "the 9th roots of unity in GF(73) form a planar difference set"),
    )
    for name, filename, v, k, note in bundled:
        add(CatalogEntry(
            name=name, kind="cdf",
            summary=f"CDF({v},{k},1) from bundled data",
            note=note,
            params=DesignParameters(2, v, k, 1),
            loader=(lambda fn=filename, nm=name: _data_df(fn, nm))))

    for q in _NETTO_PRIMES:
        add(CatalogEntry(
            name=f"netto-{q}", kind="cdf",
            summary=f"Netto triple system CDF({q},3,1)",
            note="Netto's construction from sixth-power cosets mod q",
            params=DesignParameters(2, q, 3, 1),
            loader=(lambda qq=q: _gated_df(netto_triples(qq), f"netto-{qq}"))))

    add(CatalogEntry(
        name="complete-5-3", kind="design",
        summary="3-(5,3,1): all ten 3-subsets of five points",
        note="complete design; the smallest 2-fold secure example",
        params=DesignParameters(3, 5, 3, 1),
        loader=lambda: _gated_design(complete_design(5, 3), 3, 1, "complete-5-3")))
    add(CatalogEntry(
        name="ag-2-3", kind="design",
        summary="2-(9,3,1): the affine plane of order 3",
        note="negative example for balancing: b=12 is not divisible by v=9",
        params=DesignParameters(2, 9, 3, 1),
        loader=lambda: _gated_design(
            BlockDesign(v=9, blocks=_AG23_BLOCKS), 2, 1, "ag-2-3")))

    add(CatalogEntry(
        name="van-rees-apa", kind="apa",
        summary="APA_1(2,3,11): 55 rows, five base rows developed mod 11",
        note="van Rees's perpendicular array on 11 symbols",
        loader=lambda: _gated_apa(van_rees_array(), "van-rees-apa")))

    for t, v, k, lam, b in _STEINER_ROWS:
        add(CatalogEntry(
            name=f"params-{t}-{v}-{k}-{lam}", kind="params-only",
            summary=f"{t}-({v},{k},{lam}) Steiner parameters, b = {b}",
            note="published optimal parameter row; design not bundled "
                 "(beyond desk scale)",
            params=DesignParameters(t, v, k, lam), b_opt=b))
    for t, v, k, lam, b_opt in _T67_ROWS + _T8_ROWS:
        add(CatalogEntry(
            name=f"params-{t}-{v}-{k}-{lam}", kind="params-only",
            summary=f"{t}-({v},{k},{lam}) parameters, b = {lam}*{b_opt}",
            note="published parameter row from the Kramer–Mesner-style "
                 "construction literature; design not bundled",
            params=DesignParameters(t, v, k, lam), b_opt=b_opt))

    registry = {}
    for entry in entries:
        if entry.name in registry:
            raise ConstructionError(f"duplicate catalog name {entry.name!r}")
        registry[entry.name] = entry
    return registry


_REGISTRY = _build_registry()


def entries():
    """All catalog entries, sorted by name."""
    return [_REGISTRY[name] for name in sorted(_REGISTRY)]


def get(name: str) -> CatalogEntry:
    """Look up one entry; KeyError for unknown names."""
    if name not in _REGISTRY:
        raise KeyError(f"unknown catalog entry {name!r}")
    return _REGISTRY[name]


def load_payload(name: str):
    """Load and verify the payload of a named entry.

    Returns (design, t, lambda) / DifferenceFamily / PerpendicularArray
    depending on kind; None for params-only rows.
    """
    entry = get(name)
    if entry.loader is None:
        return None
    return entry.loader()


def buildable_names():
    """Names of entries a system can be built from (designs and CDFs)."""
    return [e.name for e in entries() if e.kind in ("design", "cdf")]
