import pytest

from app.core.exceptions import InvalidInput, LevelTooSmall, NotInGamma, ParityViolation
from app.services.diagrams import (
    EMPTY, INF, Diagram, adjacent, contains, gamma_set, in_gamma, in_lambda, lambda_set, predecessors, star,
)

D = Diagram.of


def test_diagram_basics():
    d = D(3, 1)
    assert d.size == 4
    assert d.columns == (2, 1, 1)
    assert d.transpose() == D(2, 1, 1)
    assert d.transpose().transpose() == d
    assert str(d) == "[3,1]"
    assert str(EMPTY) == "[]"
    assert D(2, 0) == D(2)


def test_invalid_diagram():
    with pytest.raises(InvalidInput):
        D(1, 2)


def test_grow_and_shrink():
    assert list(D(2, 1).grow()) == [D(3, 1), D(2, 2), D(2, 1, 1)]
    assert list(D(2, 1).shrink()) == [D(1, 1), D(2)]
    assert list(EMPTY.shrink()) == []


@pytest.mark.parametrize(
    "d, j, ell, expected",
    [
        (D(4, 2), 6, 6, True),
        (D(6, 1), 7, 6, False),
        (D(3, 2, 1), 6, INF, False),
        (D(5), 5, INF, True),
        (D(2, 2), 5, INF, False),
    ],
)
def test_in_lambda(d, j, ell, expected):
    assert in_lambda(d, j, ell) is expected


@pytest.mark.parametrize(
    "d, ell, expected",
    [
        (D(4, 1, 1), 6, True),
        (D(2, 2), 6, True),
        (D(3, 2), 6, False),
        (D(3, 2), 8, True),
        (D(1, 1, 1, 1), 6, True),
        (D(2, 1, 1, 1), INF, False),
        (D(9, 3), INF, True),
    ],
)
def test_in_gamma(d, ell, expected):
    assert in_gamma(d, ell) is expected


def test_in_gamma_needs_level_six():
    with pytest.raises(LevelTooSmall):
        in_gamma(D(1), 5)


def test_lambda_set_order():
    assert lambda_set(4, INF) == [D(2, 2), D(3, 1), D(4)]
    assert lambda_set(4, 3) == [D(2, 2)]


@pytest.mark.parametrize(
    "d, ell, expected",
    [
        (EMPTY, 6, D(1, 1, 1, 1)),
        (D(3, 1), 8, D(3, 1)),
        (D(4), 6, D(4, 1, 1)),
        (D(1, 1, 1), INF, D(1)),
        (D(2, 2), 6, D(2, 2)),
    ],
)
def test_star(d, ell, expected):
    assert star(d, ell) == expected
    assert star(expected, ell) == d


def test_star_rejects_outside_gamma():
    with pytest.raises(NotInGamma):
        star(D(3, 2), 6)


@pytest.mark.parametrize("ell", [6, 7, 8, 9, 10])
def test_star_is_an_involution_on_gamma(ell):
    members = gamma_set(ell)
    assert members
    for d in members:
        assert in_gamma(star(d, ell), ell)
        assert star(star(d, ell), ell) == d


def test_gamma_inf_needs_a_bound():
    with pytest.raises(ValueError):
        gamma_set(INF)
    assert D(1, 1, 1, 1) in gamma_set(INF, max_size=4)


@pytest.mark.parametrize(
    "d1, d2, expected",
    [
        (D(2, 1), D(2, 2), True),
        (D(2, 1), D(2, 1), False),
        (D(2, 1), D(3, 2), False),
        (EMPTY, D(1), True),
        (D(2), D(1, 1, 1), False),
    ],
)
def test_adjacent(d1, d2, expected):
    assert adjacent(d1, d2) is expected
    assert adjacent(d2, d1) is expected


def test_contains():
    assert contains(D(3, 2), D(2, 2))
    assert not contains(D(3, 1), D(2, 2))


@pytest.mark.parametrize(
    "m, d, ell, expected",
    [
        (3, D(1, 1, 1), 6, [D(1, 1)]),
        (6, D(4, 1, 1), 6, [D(3, 1, 1)]),
        (8, D(6, 1, 1), 8, [D(5, 1, 1)]),
        (1, D(1), 6, [EMPTY]),
        (2, EMPTY, INF, [D(1)]),
    ],
)
def test_predecessors(m, d, ell, expected):
    assert predecessors(m, d, ell) == expected


def test_predecessors_errors():
    with pytest.raises(ParityViolation):
        predecessors(4, D(1), 6)
    with pytest.raises(NotInGamma):
        predecessors(5, D(3, 2), 6)


@pytest.mark.parametrize("ell", [6, 7, 8, 9, 10])
def test_predecessor_sets_separate_labels(ell):
    for m in range(3, 13):
        members = [d for d in gamma_set(ell, max_size=m) if (m - d.size) % 2 == 0]
        seen = {}
        for d in members:
            key = tuple(predecessors(m, d, ell))
            assert key not in seen, f"{d} and {seen.get(key)} share predecessors at m={m}"
            seen[key] = d
