import numpy as np
import pytest

from app.core.exceptions import InvalidInput, LevelTooSmall, NotInGamma, NotInLambda
from app.services.braid_words import BraidWord
from app.services.coeff import GenericField
from app.services.diagrams import INF, Diagram
from app.services.squares import (
    BlockSource, SourceKind, alt_square, block_label, block_source, build_square, dim_audit,
    generated_dimension, kron, square_trace, sym_square, verify_bmw_relations, verify_trace_axioms,
)
from app.services.tableaux import count_osc

D = Diagram.of


@pytest.mark.parametrize(
    "m, ell, source, expected",
    [
        (3, INF, BlockSource(SourceKind.TENSOR, 0, 1), D(2, 1)),
        (3, INF, BlockSource(SourceKind.SYM, 1), D(1)),
        (3, INF, BlockSource(SourceKind.ALT, 1), D(1, 1, 1)),
        (4, 6, BlockSource(SourceKind.ALT, 0), D(4, 1, 1)),
        (4, 6, BlockSource(SourceKind.SYM, 2), Diagram()),
        (4, 6, BlockSource(SourceKind.ALT, 2), D(1, 1, 1, 1)),
        (6, 8, BlockSource(SourceKind.TENSOR, 1, 3), D(2, 2)),
    ],
)
def test_block_labels(m, ell, source, expected):
    assert block_label(m, ell, source) == expected
    assert block_source(m, expected, ell) == source


def test_block_label_errors():
    with pytest.raises(InvalidInput):
        block_label(4, INF, BlockSource(SourceKind.TENSOR, 1, 1))
    with pytest.raises(NotInLambda):
        block_label(6, 6, BlockSource(SourceKind.SYM, 0))
    with pytest.raises(NotInGamma):
        block_source(5, D(3, 2), 6)


def test_square_blocks():
    rep = build_square(3, INF)
    assert rep.dims == {D(1): 3, D(1, 1, 1): 1, D(2, 1): 2, D(3): 1}
    assert rep.block(D(2, 1)).source == BlockSource(SourceKind.TENSOR, 0, 1)
    with pytest.raises(NotInGamma):
        rep.block(D(2, 2))


@pytest.mark.parametrize("m, ell", [(3, 6), (4, 6), (4, INF), (5, 7)])
def test_block_dims_are_osc_counts(m, ell):
    rep = build_square(m, ell)
    for block in rep.blocks:
        assert block.dim == count_osc(m, block.label, ell)
        assert block_source(m, block.label, ell) == block.source


def test_square_needs_level_six():
    with pytest.raises(LevelTooSmall):
        build_square(3, 5)


def test_single_matrix_squares():
    f = GenericField()
    a = np.array([[f.from_int(1), f.from_int(2)], [f.from_int(3), f.from_int(4)]], dtype=object)
    assert alt_square(a, f)[0, 0] == -2
    identity = np.array([[f.one, f.zero], [f.zero, f.one]], dtype=object)
    sym = sym_square(identity, f)
    assert all(sym[i, j] == (1 if i == j else 0) for i in range(3) for j in range(3))
    ints = np.array([[1, 2], [0, 3]], dtype=object)
    assert (kron(ints, ints) == np.kron(ints, ints)).all()


def test_phi_is_the_lifted_braid():
    rep = build_square(3, INF)
    word = BraidWord(3, (1, -2, 1))
    expected = rep.G(1) @ rep.G_inv(2) @ rep.G(1)
    assert rep.phi(word).equals(expected)
    with pytest.raises(InvalidInput):
        rep.phi(BraidWord(2, (1,)))


@pytest.mark.parametrize("ell", [INF, 6, 7, 8])
@pytest.mark.parametrize("m", [2, 3])
def test_bmw_relations(m, ell):
    report = verify_bmw_relations(m, ell)
    assert all(report.values()), report


@pytest.mark.slow
@pytest.mark.parametrize("ell", [INF, 6])
def test_bmw_relations_four_strands(ell):
    assert all(verify_bmw_relations(4, ell).values())


def test_wrong_twist_fails_cubic_relation():
    report = verify_bmw_relations(3, INF, twist_power=2)
    assert not report["R1"]
    assert "trace_one" not in report


def test_trace_axioms_and_normalisation():
    rep = build_square(3, 7)
    assert square_trace(rep.identity(), rep) == rep.field.one
    assert all(verify_trace_axioms(3, 7).values())


@pytest.mark.parametrize("m, ell", [(1, INF), (3, INF), (4, 6), (5, 6), (5, 8)])
def test_dimension_audit(m, ell):
    audit = dim_audit(m, ell)
    assert audit.agrees
    assert audit.osc_total == audit.tl_total == audit.block_total


@pytest.mark.parametrize("ell", [INF, 6, 7])
def test_dimension_audit_without_strands(ell):
    audit = dim_audit(0, ell)
    assert audit.agrees
    assert (audit.osc_total, audit.tl_total, audit.block_total) == (1, 1, 1)
    assert [(str(row.label), str(row.source), row.dim) for row in audit.rows] == [("[]", "(0,SYM)", 1)]


def test_bmw_three_has_dimension_fifteen():
    audit = dim_audit(3, INF)
    assert audit.block_total == 15


@pytest.mark.parametrize("ell", [INF, 7])
def test_generators_span_the_square(ell):
    result = generated_dimension(3, ell)
    assert result.certified
    assert result.dimension == 15
