from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chenforms.errors import DeterminantError
from chenforms.group_algebra import (
    B,
    C,
    GAMMA0_11,
    IDENTITY,
    GroupData,
    GroupRingElement,
    S,
    T,
    augmentation,
    delta_product,
    elliptic_telescoping,
    in_gamma0,
    inclusion_exclusion_expand,
    make_element,
    parse_element,
    parse_ring_element,
)

from conftest import gamma0_elements
from oracles import delta_product_brute

one = GroupRingElement.one()


def el(g, k=1):
    return GroupRingElement.from_element(g, k)


def test_make_element_and_sign_normalization():
    assert make_element(1, 1, 0, 1) == T
    assert make_element(-1, -1, 0, -1) == T
    assert make_element(-4, -1, -11, -3) == B
    with pytest.raises(DeterminantError):
        make_element(1, 1, 1, 1)


def test_membership():
    assert in_gamma0(T, 11) and in_gamma0(B, 11) and in_gamma0(C, 11)
    assert not in_gamma0(S, 11)


def test_group_data():
    assert GAMMA0_11.rank == 3
    with pytest.raises(ValueError):
        GroupData(genus=0, cusp_count=1)
    with pytest.raises(ValueError):
        GroupData(genus=1, cusp_count=2, elliptic_count=1)


def test_augmentation_examples():
    assert augmentation(el(T, 3) - el(IDENTITY, 2)) == 1
    assert augmentation((el(T) - one) * (el(B) - one)) == 0
    assert augmentation(GroupRingElement()) == 0
    assert augmentation(delta_product([T, B, C])) == 0


def test_delta_product_examples():
    assert delta_product([T, T]) == el(T * T) - el(T, 2) + one
    assert delta_product([T, B]) == el(T * B) - el(T) - el(B) + one
    assert delta_product([T]) == el(T) - one
    assert delta_product([T, B, C]).order == 3


def test_inclusion_exclusion_examples():
    assert inclusion_exclusion_expand([T, B]) == el(T * B) - el(T) - el(B) + one
    assert inclusion_exclusion_expand([T]) == el(T) - one
    expected = delta_product_brute([(g.a, g.b, g.c, g.d) for g in (T, B, C)])
    got = {(g.a, g.b, g.c, g.d): v for g, v in inclusion_exclusion_expand([T, B, C]).terms.items()}
    assert got == expected


def test_telescoping_examples():
    assert elliptic_telescoping(S, 2) == GroupRingElement()
    assert elliptic_telescoping(T, 3) == el(T**3) - one
    assert elliptic_telescoping(B, 2) == el(B * B) - one


def test_factorizations_track_products():
    x = delta_product([T, B, C])
    for g, _ in x.items():
        prod = IDENTITY
        for f in x.factorization(g):
            prod = prod * f
        assert prod == g


def test_parsing_round_trip():
    assert parse_element(" 4, 1, 11, 3 ") == B
    x = delta_product([T, B])
    assert parse_ring_element(x.to_text()) == x


@settings(max_examples=50, deadline=None)
@given(st.lists(gamma0_elements, min_size=1, max_size=5))
def test_delta_product_matches_inclusion_exclusion(elements):
    x = delta_product(elements)
    assert x == inclusion_exclusion_expand(elements)
    assert augmentation(x) == 0
    brute = delta_product_brute([(g.a, g.b, g.c, g.d) for g in elements])
    assert {(g.a, g.b, g.c, g.d): v for g, v in x.terms.items()} == brute


@settings(max_examples=50, deadline=None)
@given(gamma0_elements, st.integers(2, 6))
def test_telescoping(g, e):
    assert elliptic_telescoping(g, e) == el(g**e) - one


def _ring(draw_terms):
    out = GroupRingElement()
    for g, k in draw_terms:
        out = out + el(g, k)
    return out


ring_elements = st.lists(st.tuples(gamma0_elements, st.integers(-3, 3)), max_size=4).map(_ring)


@settings(max_examples=50, deadline=None)
@given(ring_elements, ring_elements, ring_elements)
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert augmentation(x * y) == augmentation(x) * augmentation(y)
    assert x * (y + z) == x * y + x * z


@settings(max_examples=50, deadline=None)
@given(gamma0_elements, gamma0_elements)
def test_group_laws(g, h):
    assert in_gamma0(g * h, 11)
    assert (g * h).inverse() == h.inverse() * g.inverse()
    assert (g * g.inverse()).is_identity()
