import pytest

from app.core.exceptions import InvalidOscTableau, NotInLambda, OrderViolation, ShapeMismatch
from app.services.bijection import Comparison, compare, forward, inverse, sign_track
from app.services.diagrams import INF, Diagram, gamma_set, lambda_set, star
from app.services.tableaux import Tableau2Row, enum_osc, enum_tableaux
from app.utils.text_formats import parse_osc

T = Tableau2Row


@pytest.mark.parametrize(
    "t1, t2, expected",
    [
        ("11", "12", "[];[1];[1,1]"),
        ("121", "121", "[];[1];[];[1]"),
        ("121", "112", "[];[1];[1,1];[1,1,1]"),
        ("112", "121", "[];[1];[1,1];[1]"),
        ("1111", "1212", "[];[1];[1,1];[2,1];[2,2]"),
    ],
)
def test_forward(t1, t2, expected):
    o = forward(T(t1), T(t2), INF)
    assert str(o) == expected
    assert inverse(o, INF) == (T(t1), T(t2))


@pytest.mark.parametrize(
    "osc, t1, t2",
    [
        ("[];[1];[1,1];[1,1,1]", "121", "112"),
        ("[];[1];[];[1]", "121", "121"),
        ("[];[1];[1,1]", "11", "12"),
    ],
)
def test_inverse(osc, t1, t2):
    assert inverse(parse_osc(osc), 6) == (T(t1), T(t2))


def test_sign_track_anchors():
    track = sign_track(T("121"), T("112"))
    assert track.signs == (1, 1, -1, -1)
    assert track.anchors == (0, 0, 2, 2)


@pytest.mark.parametrize(
    "t1, t2, expected",
    [
        ("121", "112", Comparison.LT),
        ("112", "121", Comparison.GT),
        ("1212", "1212", Comparison.EQ),
        ("111", "112", Comparison.GT),
        # 1122 dominates 1211 and wins from the first step, but loses on the last
        ("1122", "1211", Comparison.LT),
        ("1211", "1122", Comparison.GT),
    ],
)
def test_compare(t1, t2, expected):
    assert compare(T(t1), T(t2)) == expected


def test_forward_errors():
    with pytest.raises(ShapeMismatch):
        forward(T("1"), T("11"), INF)
    with pytest.raises(OrderViolation):
        forward(T("12"), T("11"), INF)
    with pytest.raises(NotInLambda):
        forward(T("11"), T("11"), 3)
    with pytest.raises(ShapeMismatch):
        compare(T("1"), T("11"))


def test_inverse_rejects_unrestricted_tableau():
    with pytest.raises(InvalidOscTableau):
        inverse(parse_osc("[];[1];[2];[3];[4];[5]"), 6)


@pytest.mark.parametrize("ell", [6, 7, 8, INF])
def test_round_trip(ell):
    for m in range(0, 7):
        shapes = lambda_set(m, ell)
        for lam in shapes:
            for mu in shapes:
                if lam.row(1) < mu.row(1):
                    continue
                for t_lambda in enum_tableaux(lam, ell):
                    for t_mu in enum_tableaux(mu, ell):
                        o = forward(t_lambda, t_mu, ell)
                        assert o.is_valid(ell)
                        assert inverse(o, ell) == (t_lambda, t_mu)
        for nu in gamma_set(ell, max_size=m):
            if (m - nu.size) % 2 == 0:
                for o in enum_osc(m, nu, ell):
                    assert forward(*inverse(o, ell), ell) == o


@pytest.mark.parametrize("ell", [6, 8, INF])
def test_terminal_shape_law(ell):
    m = 6
    for lam in lambda_set(m, ell):
        tableaux = enum_tableaux(lam, ell)
        plain = Diagram.of(2 * lam.row(1) - m)
        for t_lambda in tableaux:
            for t_mu in tableaux:
                terminal = forward(t_lambda, t_mu, ell).shape
                if compare(t_lambda, t_mu) == Comparison.LT:
                    assert terminal == star(plain, ell)
                    assert terminal.length >= 3
                else:
                    assert terminal == plain
                    assert terminal.length <= 1
