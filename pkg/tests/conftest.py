"""Shared fixtures and helpers for the test suite.

The golden constants here were checked by hand (or against published tables)
before being frozen; tests compare library output against them rather than
against other library output.
"""

import random
from collections import defaultdict

import pytest

from authdesigns import (
    BlockDesign,
    DifferenceFamily,
    EncodingMatrix,
    SecrecySystem,
    complete_design,
    develop,
    develop_matrix,
)
from authdesigns.balancing import SplitGraph

# The published balanced ordering of the twofold (13, 3) system built from
# base blocks {0, 1, 4} and {0, 2, 7} over Z_13: rows e_1..e_26, columns
# s_1..s_3.  Row i (0-based) of the first orbit is (g, 1+g, 4+g) mod 13 and
# of the second orbit (g, 2+g, 7+g) mod 13 -- frozen entry for entry.
Z13_GOLDEN_ROWS = (
    (0, 1, 4), (1, 2, 5), (2, 3, 6), (3, 4, 7), (4, 5, 8), (5, 6, 9),
    (6, 7, 10), (7, 8, 11), (8, 9, 12), (9, 10, 0), (10, 11, 1),
    (11, 12, 2), (12, 0, 3),
    (0, 2, 7), (1, 3, 8), (2, 4, 9), (3, 5, 10), (4, 6, 11), (5, 7, 12),
    (6, 8, 0), (7, 9, 1), (8, 10, 2), (9, 11, 3), (10, 12, 4), (11, 0, 5),
    (12, 1, 6),
)

Z13_BASES = ((0, 1, 4), (0, 2, 7))
FANO_BASES = ((1, 2, 4),)
BIPLANE_BASES = ((1, 3, 4, 5, 9),)


@pytest.fixture(scope="session")
def z13_df():
    return DifferenceFamily(13, 1, Z13_BASES)


@pytest.fixture(scope="session")
def fano_df():
    return DifferenceFamily(7, 1, FANO_BASES)


@pytest.fixture(scope="session")
def biplane_df():
    return DifferenceFamily(11, 2, BIPLANE_BASES)


@pytest.fixture(scope="session")
def z13_matrix(z13_df):
    return develop_matrix(z13_df)


@pytest.fixture(scope="session")
def z13_system(z13_matrix):
    return SecrecySystem(z13_matrix)


@pytest.fixture(scope="session")
def fano_matrix(fano_df):
    return develop_matrix(fano_df)


@pytest.fixture(scope="session")
def fano_system(fano_matrix):
    return SecrecySystem(fano_matrix)


@pytest.fixture(scope="session")
def biplane_system(biplane_df):
    return SecrecySystem(develop_matrix(biplane_df))


@pytest.fixture(scope="session")
def complete53_design():
    return complete_design(5, 3)


@pytest.fixture(scope="session")
def complete53_system(complete53_design):
    from authdesigns import balance

    return SecrecySystem(balance(complete53_design))


@pytest.fixture(scope="session")
def fano_design(fano_df):
    return develop(fano_df)


def make_regular_bipartite(rng: random.Random, n: int, k: int) -> SplitGraph:
    """Random k-regular bipartite multigraph on n+n vertices: union of k
    uniformly random perfect matchings (repeated edges allowed)."""
    edges = []
    for _ in range(k):
        perm = list(range(n))
        rng.shuffle(perm)
        edges.extend((i, perm[i]) for i in range(n))
    return SplitGraph(tuple(range(n)), tuple(range(n)), tuple(edges))


def assert_proper_coloring(graph: SplitGraph, colors, k: int) -> None:
    assert len(colors) == len(graph.edges)
    seen_left = defaultdict(set)
    seen_right = defaultdict(set)
    for eid, (a, z) in enumerate(graph.edges):
        c = colors[eid]
        assert 0 <= c < k
        assert c not in seen_left[a], f"color {c} repeats at left vertex {a}"
        assert c not in seen_right[z], f"color {c} repeats at right vertex {z}"
        seen_left[a].add(c)
        seen_right[z].add(c)
    # k-regular + proper => every vertex sees every color
    assert all(len(s) == k for s in seen_left.values())
    assert all(len(s) == k for s in seen_right.values())


def mutate_entry(rng: random.Random, matrix: EncodingMatrix,
                 attempts: int = 2000):
    """One random single-entry change that keeps the matrix structurally
    valid (rows stay duplicate-free and pairwise distinct as sets).

    Returns (mutated_matrix, (row, col, new_value)).  Raises ValueError when
    no such mutation turns up — e.g. for a complete design, where every
    possible row set is already present and mutations die at the
    constructor instead.
    """
    row_sets = {frozenset(r) for r in matrix.rows}
    for _ in range(attempts):
        r = rng.randrange(len(matrix.rows))
        c = rng.randrange(matrix.k)
        x = rng.randrange(matrix.v)
        row = matrix.rows[r]
        if x in row:
            continue
        new_row = row[:c] + (x,) + row[c + 1:]
        if frozenset(new_row) in row_sets:
            continue
        rows = matrix.rows[:r] + (new_row,) + matrix.rows[r + 1:]
        return EncodingMatrix(matrix.v, matrix.k, rows), (r, c, x)
    raise ValueError("no structurally valid single-entry mutation found")
