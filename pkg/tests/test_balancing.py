"""Point-splitting, edge coloring, and balanced matrix construction."""

import json
import random
from collections import Counter

import pytest

from authdesigns import (
    DomainError,
    EncodingMatrix,
    StructuralError,
    balance,
    complete_design,
    develop,
    edge_color,
    format_matrix_table,
    split_points,
    verify_balanced,
)
from authdesigns.balancing import (
    SplitGraph,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    save_matrix,
)
from authdesigns.fileio import canonical_dumps, digest

from conftest import assert_proper_coloring, make_regular_bipartite


# --------------------------------------------------------------- structure

def test_matrix_structural_rejections():
    with pytest.raises(StructuralError):
        EncodingMatrix(7, 3, ((0, 1),))            # wrong row length
    with pytest.raises(StructuralError):
        EncodingMatrix(7, 3, ((0, 1, 1),))         # repeat inside a row
    with pytest.raises(StructuralError):
        EncodingMatrix(7, 3, ((0, 1, 7),))         # out of range
    with pytest.raises(StructuralError):
        EncodingMatrix(7, 3, ((0, 1, 2), (2, 1, 0)))  # same row as a set
    with pytest.raises(StructuralError):
        EncodingMatrix(7, 3, ())


def test_unbalanced_matrices_are_representable():
    m = EncodingMatrix(4, 2, ((0, 1), (0, 2)))
    report = verify_balanced(m)
    assert not report.valid


# ------------------------------------------------------------- splitting

def test_split_fano(fano_design):
    g = split_points(fano_design)
    assert len(g.left_labels) == 7        # b/v = 1 copy per point
    assert len(g.right_labels) == 7
    assert len(g.edges) == 21
    assert g.is_regular(3)


def test_split_with_multiple_copies(z13_df, complete53_design):
    g = split_points(develop(z13_df))
    assert len(g.left_labels) == 26 and g.is_regular(3)
    g53 = split_points(complete53_design)
    assert len(g53.left_labels) == 10 and g53.is_regular(3)


def test_split_refuses_indivisible():
    # 2-(9,3,1): b = 12, 9 does not divide 12
    from authdesigns.catalog import load_payload

    affine, _, _ = load_payload("ag-2-3")
    with pytest.raises(DomainError) as exc:
        split_points(affine)
    assert "v | b" in str(exc.value) or "divid" in str(exc.value)


# ---------------------------------------------------------------- coloring

def test_edge_color_fano(fano_design):
    g = split_points(fano_design)
    colors = edge_color(g, 3)
    assert_proper_coloring(g, colors, 3)
    # each class is a perfect matching
    sizes = Counter(colors)
    assert all(sizes[c] == 7 for c in range(3))


def test_edge_color_trivial_matching():
    g = SplitGraph((0, 1), (0, 1), ((0, 1), (1, 0)))
    assert edge_color(g, 1) == (0, 0)


def test_edge_color_handles_multigraph():
    # parallel edges force distinct colors
    g = SplitGraph((0, 1), (0, 1), ((0, 0), (0, 0), (1, 1), (1, 1)))
    colors = edge_color(g, 2)
    assert_proper_coloring(g, colors, 2)


def test_edge_color_random_regular_graphs():
    rng = random.Random(31337)
    for _ in range(60):
        n = rng.randint(2, 120)
        k = rng.randint(1, 8)
        g = make_regular_bipartite(rng, n, k)
        assert_proper_coloring(g, edge_color(g, k), k)


def test_edge_color_rejects_irregular():
    g = SplitGraph((0, 1), (0, 1), ((0, 0), (0, 1), (1, 1)))
    with pytest.raises(StructuralError):
        edge_color(g, 2)
    with pytest.raises(StructuralError):
        edge_color(g)


def test_edge_color_is_deterministic():
    rng = random.Random(5)
    g = make_regular_bipartite(rng, 40, 5)
    assert edge_color(g, 5) == edge_color(g, 5)


# ----------------------------------------------------------------- balance

def test_balance_fano(fano_design):
    m = balance(fano_design)
    report = verify_balanced(m)
    assert report.valid and report.expected == 1
    assert {tuple(sorted(r)) for r in m.rows} == set(fano_design.blocks)


def test_balance_developed_family(z13_df):
    m = balance(develop(z13_df))
    report = verify_balanced(m)
    assert report.valid and report.expected == 2


def test_balance_complete_design(complete53_design):
    m = balance(complete53_design)
    report = verify_balanced(m)
    assert report.valid and report.expected == 2
    assert {tuple(sorted(r)) for r in m.rows} == set(complete53_design.blocks)


def test_balance_deterministic_bytes(complete53_design):
    a = canonical_dumps(matrix_to_json(balance(complete53_design)))
    b = canonical_dumps(matrix_to_json(balance(complete53_design)))
    assert a == b


def test_verify_balanced_witness(fano_design):
    m = balance(fano_design)
    # swap two entries inside one row: rows stay valid, balance breaks
    r0 = m.rows[0]
    swapped = (r0[1], r0[0]) + r0[2:]
    broken = EncodingMatrix(m.v, m.k, (swapped,) + m.rows[1:])
    report = verify_balanced(broken)
    assert not report.valid
    msg, col, count = report.witness
    assert count != report.expected
    assert sum(1 for row in broken.rows if row[col] == msg) == count


def test_verify_balanced_indivisible_expected_none():
    m = EncodingMatrix(4, 2, ((0, 1), (1, 2), (2, 3)))
    report = verify_balanced(m)
    assert not report.valid and report.expected is None


# -------------------------------------------------------------------- json

def test_matrix_json_roundtrip(tmp_path, fano_design):
    m = balance(fano_design)
    path = tmp_path / "m.json"
    save_matrix(m, path, source="design", input_doc={"v": 7})
    assert load_matrix(path) == m
    doc = json.loads(path.read_text())
    assert doc["provenance"]["source"] == "design"
    assert doc["provenance"]["input_digest"] == digest({"v": 7})


def test_matrix_json_rejects_b_mismatch(fano_design):
    doc = matrix_to_json(balance(fano_design))
    doc["b"] = 8
    with pytest.raises(StructuralError):
        matrix_from_json(doc)


def test_format_matrix_table(fano_design):
    text = format_matrix_table(balance(fano_design))
    assert "e_1" in text and "e_7" in text and "s_3" in text
    assert len(text.splitlines()) == 8    # header + 7 keys
