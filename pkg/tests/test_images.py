import pytest

from app.core.exceptions import IndexOutOfRange, NotInGamma, NotInLambda, ParityViolation, UnsupportedLevel
from app.services.diagrams import INF, Diagram
from app.services.images import (
    GroupDescriptor, GroupKind, classify_image, enumerate_projective_group, group_order, half_twist_eigenvalues,
    tl_image_group,
)

D = Diagram.of


@pytest.mark.parametrize(
    "m, s, ell, kind, name",
    [
        (5, 1, 6, GroupKind.PSP, "PSp_4(3)"),
        (3, 1, 10, GroupKind.A5, "A_5"),
        (4, 1, 8, GroupKind.PSU, "PSU(3)"),
        (4, 2, 6, GroupKind.PSP, "PSp_2(3)"),
        (4, 1, 6, GroupKind.PSP_SEMIDIRECT, "PSp_2(3) x| (Z_3)^2"),
        (3, 0, 8, GroupKind.TRIVIAL, "1"),
    ],
)
def test_tl_image_group(m, s, ell, kind, name):
    descriptor = tl_image_group(m, s, ell)
    assert descriptor.kind == kind
    assert descriptor.name == name


def test_tl_image_errors():
    with pytest.raises(UnsupportedLevel):
        tl_image_group(3, 1, INF)
    with pytest.raises(IndexOutOfRange):
        tl_image_group(2, 1, 8)
    with pytest.raises(NotInLambda):
        tl_image_group(6, 0, 6)


@pytest.mark.parametrize(
    "m, rows, ell, kind, case, rank, dims",
    [
        (3, (3,), 8, GroupKind.TRIVIAL, "1", 0, ()),
        (2, (1, 1), 7, GroupKind.TRIVIAL, "2", 0, ()),
        (3, (1, 1, 1), 8, GroupKind.TRIVIAL, "3", 0, ()),
        (4, (1, 1, 1, 1), 7, GroupKind.TRIVIAL, "4", 0, ()),
        (3, (1,), 6, GroupKind.PSP, "5", 2, ()),
        (5, (3, 1, 1), 6, GroupKind.PSP, "5", 4, ()),
        (4, (2, 2), 6, GroupKind.PSP, "6", 2, ()),
        (4, (), 6, GroupKind.PSP, "6", 2, ()),
        (4, (1, 1), 6, GroupKind.PSP_SEMIDIRECT, "7", 2, ()),
        (3, (2, 1), 10, GroupKind.A5, "8", 0, ()),
        (4, (2, 2), 10, GroupKind.A5, "9", 0, ()),
        (4, (1, 1), 10, GroupKind.A5_X_PSU, "10", 0, (3,)),
        (4, (2,), 8, GroupKind.PSU, "11", 0, (3,)),
        (5, (3, 1, 1), 8, GroupKind.PSU, "12", 0, (4,)),
        (6, (1, 1, 1, 1), 8, GroupKind.PSU, "13", 0, (5,)),
        (4, (1, 1), 8, GroupKind.PSU_X_PSU, "GENERIC", 0, (2, 3)),
    ],
)
def test_classify_image(m, rows, ell, kind, case, rank, dims):
    descriptor = classify_image(m, Diagram(rows), ell)
    assert descriptor.kind == kind
    assert descriptor.provenance == case
    assert descriptor.rank == rank
    assert descriptor.dims == dims or not dims


def test_classify_errors():
    with pytest.raises(UnsupportedLevel):
        classify_image(3, D(1), INF)
    with pytest.raises(NotInGamma):
        classify_image(5, D(3, 2), 6)
    with pytest.raises(ParityViolation):
        classify_image(4, D(1), 8)


def test_group_orders():
    assert group_order(GroupDescriptor(GroupKind.PSP, "5", rank=2)) == 12
    assert group_order(GroupDescriptor(GroupKind.PSP, "5", rank=4)) == 25920
    assert group_order(GroupDescriptor(GroupKind.PSP_SEMIDIRECT, "7", rank=2)) == 108
    assert group_order(GroupDescriptor(GroupKind.A5, "8")) == 60
    assert group_order(GroupDescriptor(GroupKind.PSU, "11", dims=(3,))) is None
    assert not GroupDescriptor(GroupKind.PSU_X_PSU, "GENERIC", dims=(2, 3)).is_finite


@pytest.mark.parametrize(
    "m, rows, ell, order",
    [
        (3, (2, 1), 10, 60),
        (4, (2, 2), 10, 60),
        (4, (), 10, 60),
        (3, (1,), 6, 12),
        (4, (1, 1), 6, 108),
    ],
)
def test_finite_images_by_enumeration(m, rows, ell, order):
    result = enumerate_projective_group(m, Diagram(rows), ell, budget=10 * order)
    assert not result.hit_cap
    assert result.order == order
    assert result.status == "verified"


@pytest.mark.slow
def test_psp4_image_by_enumeration():
    result = enumerate_projective_group(5, D(3, 1, 1), 6, budget=60_000)
    assert result.order == 25920
    assert result.status == "verified"


@pytest.mark.parametrize("m, rows, ell", [(3, (2, 1), 7), (3, (2, 1), 8)])
def test_infinite_images_hit_the_cap(m, rows, ell):
    result = enumerate_projective_group(m, Diagram(rows), ell, budget=1_000)
    assert result.hit_cap
    assert result.status == "consistent"


def test_half_twist_eigenvalues():
    check = half_twist_eigenvalues(3, D(2, 1), 8)
    assert check.divides
    assert check.present
    one_dimensional = half_twist_eigenvalues(2, D(2), INF)
    assert one_dimensional.divides
    assert one_dimensional.present == ("q",)
    with pytest.raises(IndexOutOfRange):
        half_twist_eigenvalues(1, D(1), 8)
