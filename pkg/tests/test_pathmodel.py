import numpy as np
import pytest

from app.core.exceptions import IndexOutOfRange, LevelTooSmall
from app.services.braid_words import BraidWord
from app.services.coeff import qint
from app.services.diagrams import EMPTY, INF, Diagram
from app.services.pathmodel import (
    BlockMatrix, PathModel, bmw_bratteli, bmw_level_counts, markov_trace, path_model, represent_word,
    restriction_check, tl_bratteli, tl_generator, verify_tl_relations,
)
from app.services.tableaux import count_tableaux

D = Diagram.of


def test_model_dimensions():
    model = path_model(4, INF)
    assert model.dims == {D(2, 2): 2, D(3, 1): 3, D(4): 1}
    assert path_model(4, 4).dims == {D(2, 2): 2, D(3, 1): 2}


def test_e_is_idempotent():
    model = path_model(3, INF)
    for i in (1, 2):
        e = model.e(i)
        assert (e @ e).equals(e)
    assert (model.e(1) @ model.e(2) @ model.e(1)).equals(model.e(1).scale(qint(2) ** -2))


def test_generators_and_inverses():
    model = path_model(3, 7)
    one = model.identity()
    assert (model.g(1) @ model.g_inv(1)).equals(one)
    assert (model.letter(-2) @ model.letter(2)).equals(one)
    assert tl_generator(3, 1, 7).equals(model.e(1))


def test_trace_values():
    model = path_model(3, INF)
    assert model.trace(model.identity()) == 1
    assert model.trace(model.e(2)) == qint(2) ** -2
    weights = model.weights()
    assert sum(count_tableaux(label, INF) * w for label, w in weights.items()) == 1


@pytest.mark.parametrize("ell", [INF, 6, 7, 8])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_tl_relations(m, ell):
    report = verify_tl_relations(m, ell, samples=3)
    assert all(report.values()), report


@pytest.mark.slow
@pytest.mark.parametrize("ell", [INF, 6])
def test_tl_relations_five_strands(ell):
    assert all(verify_tl_relations(5, ell, samples=3).values())


def test_index_and_size_errors():
    model = path_model(3, INF)
    with pytest.raises(IndexOutOfRange):
        model.e(0)
    with pytest.raises(IndexOutOfRange):
        model.g(3)
    with pytest.raises(IndexOutOfRange):
        PathModel(0, INF)
    with pytest.raises(LevelTooSmall):
        PathModel(3, 2)


def test_represent_word_and_markov_trace():
    word = BraidWord(3, (1, -2))
    model = path_model(3, INF)
    assert represent_word(word, INF).equals(model.g(1) @ model.g_inv(2))
    assert markov_trace(represent_word(BraidWord(3), INF), 3, INF) == 1


def test_block_matrix_arithmetic():
    model = path_model(2, INF)
    one = model.identity()
    assert (one - one).is_zero()
    assert one.plus_scalar(model.field.one).equals(one.scale(model.field.from_int(2)))
    doubled = one.map_blocks(lambda label, block: block + block)
    assert doubled.equals(one + one)
    assert set(one.block_traces()) == {D(1, 1), D(2)}
    assert isinstance(one.blocks[D(2)], np.ndarray)


def test_embedding_preserves_products():
    small, big = path_model(2, INF), path_model(3, INF)
    a, b = small.g(1), small.e(1)
    assert big.embed(a @ b, small).equals(big.embed(a, small) @ big.embed(b, small))
    assert big.embed(small.e(1), small).equals(big.e(1))


def test_restriction():
    for m in range(1, 6):
        assert restriction_check(m, 6)


def test_tl_bratteli_counts():
    diagram = tl_bratteli(5, 6)
    assert diagram.depth == 5
    counts = diagram.path_counts()[5]
    assert counts[D(3, 2)] == 5
    assert all(counts[label] == count_tableaux(label, 6) for label in counts)


def test_bmw_bratteli_counts():
    assert bmw_bratteli(2, INF).levels[2] == (EMPTY, D(1, 1), D(2))
    assert bmw_level_counts(4, INF)[EMPTY] == 3
    assert bmw_level_counts(3, INF)[D(1)] == 3
