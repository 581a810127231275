from __future__ import annotations

from dataclasses import replace
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chenforms.chen import (
    MODULAR_CONFIG,
    QuadratureConfig,
    Word,
    compose,
    evaluate_on_chain,
    iterated_integral,
    lemma33_product_check,
    lift_path,
    parse_word,
    shuffle_check,
    shuffles,
)
from chenforms.errors import EndpointMismatch, MixedWordError, PrecisionError
from chenforms.group_algebra import B, C, T, delta_product
from chenforms.modular_letters import Letter, Polynomial, named_form
from chenforms.paths import Path, concat, line, through_basepoint

from oracles import simplex_power

ONE = Letter(Polynomial((1,)))
Z = Letter(Polynomial((1, 0)))
CUSP = Letter(named_form("cusp11"))
EIS = Letter(named_form("eis11"))


@pytest.mark.parametrize("r", range(1, 6))
def test_simplex(r):
    v = iterated_integral(line(2j, 1 + 3j), Word((ONE,) * r))
    assert abs(v.value - simplex_power(1 + 1j, r)) <= 1e-12


def test_empty_word_and_conjugate_simplex():
    assert iterated_integral(line(1j, 2j), Word()).value == 1
    d = 0.5 + 1j
    v = iterated_integral(line(1j, 1j + d), Word((ONE, ONE.conj())))
    assert abs(v.value - d * d.conjugate() / 2) < 1e-12


def test_polynomial_letters_closed_form():
    # int dz * z dz over z0 -> z1 is int (z - z0) z dz.
    z0, z1 = 1j, 1 + 2j
    v = iterated_integral(line(z0, z1), Word((ONE, Z)))
    exact = (z1**3 - z0**3) / 3 - z0 * (z1**2 - z0**2) / 2
    assert abs(v.value - exact) < 1e-12


@pytest.mark.parametrize("length", [1, 2, 3, 4])
def test_refinement_convergence_factor(length):
    word = Word((EIS, CUSP.conj(), EIS, CUSP)[:length])
    path = line(0.5j, 0.6 + 0.7j)
    errs = []
    for panels in (2, 4, 8):
        cfg = QuadratureConfig(panels, 4, 2, 1.0, adaptive=False)
        errs.append(iterated_integral(path, word, cfg).error)
    assert errs[0] / errs[1] >= 4 and errs[1] / errs[2] >= 4


def test_error_estimate_is_honest():
    path = line(0.5j, 0.6 + 0.7j)
    word = Word((EIS, CUSP))
    ref = iterated_integral(path, word).value
    coarse = iterated_integral(path, word, QuadratureConfig(4, 6, 2, 1.0, adaptive=False))
    assert abs(coarse.value - ref) <= 10 * coarse.error


def test_precision_error_on_unconverged_run():
    cfg = QuadratureConfig(1, 2, 2, 1e-14, adaptive=False)
    with pytest.raises(PrecisionError):
        iterated_integral(line(0.2j, 0.9 + 0.3j), Word((EIS, EIS)), cfg)


ALPHABET = [ONE, Z, Letter(Polynomial((0.5, -1j, 2))), Z.conj(), CUSP, CUSP.conj(), EIS, EIS.conj()]
points = st.builds(complex, st.floats(-1, 1), st.floats(1, 3))


@settings(max_examples=12, deadline=None)
@given(st.lists(st.sampled_from(ALPHABET), min_size=1, max_size=4), points, points, points)
def test_composition_law(letters, a, m, b):
    word = Word(tuple(letters))
    direct = iterated_integral(concat(line(a, m), line(m, b)), word, MODULAR_CONFIG)
    split = compose(word, line(a, m), line(m, b), MODULAR_CONFIG)
    diff = abs(direct.value - split.value)
    assert diff <= max(direct.error + split.error, 1e-15)
    assert diff <= 1e-8 * max(1.0, abs(direct.value))


def test_compose_rejects_gap():
    with pytest.raises(EndpointMismatch):
        compose(Word((ONE,)), line(1j, 2j), line(3j, 4j))


@settings(max_examples=12, deadline=None)
@given(st.lists(st.sampled_from(ALPHABET), min_size=1, max_size=3), points, points, st.floats(0.1, 0.9))
def test_reparametrization_invariance(letters, a, b, t):
    word = Word(tuple(letters))
    plain = iterated_integral(line(a, b), word, MODULAR_CONFIG)
    extra = iterated_integral(Path((a, a + t * (b - a), b)), word, MODULAR_CONFIG)
    assert abs(plain.value - extra.value) <= plain.error + extra.error + 1e-14


@settings(max_examples=10, deadline=None)
@given(st.lists(st.sampled_from([CUSP, EIS]), min_size=1, max_size=3), st.booleans(), points, points)
def test_path_independence_unmixed(letters, hol, z, x1):
    word = Word(tuple(l if hol else l.conj() for l in letters))
    x0 = 2j
    a = iterated_integral(line(x0, z), word)
    b = iterated_integral(through_basepoint(x0, z, x1), word)
    assert abs(a.value - b.value) <= 1e-8 * max(1.0, abs(a.value))


def test_mixed_word_is_path_dependent():
    word = Word((CUSP, CUSP.conj()))
    a = iterated_integral(line(0.5j, 0.5 + 0.5j), word).value
    b = iterated_integral(through_basepoint(0.5j, 0.5 + 0.5j, 0.25 + 0.3j), word).value
    assert abs(a - b) > 1e-6


def test_shuffles_count_and_product():
    u, v = Word((ONE, Z)), Word((Z.conj(),))
    assert len(shuffles(u, v)) == 3
    assert len(shuffles(Word((ONE, ONE)), Word((Z, Z)))) == 6
    for path in (line(1j, 1 + 2j), line(0.5j, -0.3 + 0.8j)):
        for u, v in ((Word((ONE,)), Word((Z,))), (Word((CUSP, EIS.conj())), Word((EIS,)))):
            lhs, rhs = shuffle_check(u, v, path)
            assert abs(lhs.value - rhs.value) <= 1e-8 * max(1.0, abs(lhs.value))


def test_chain_evaluation():
    eis = Word((EIS,))
    assert abs(evaluate_on_chain(eis, delta_product([T])).value + 10) < 1e-8
    with pytest.raises(MixedWordError):
        evaluate_on_chain(Word((CUSP, CUSP.conj())), delta_product([T, B]))
    # Canonical lifted paths make a mixed word evaluable.
    evaluate_on_chain(Word((CUSP, CUSP.conj())), delta_product([T, B]), canonical_path=True)
    assert lift_path(()) is None
    assert abs(lift_path((T, B)).end - (T * B).act(2j)) < 1e-12


def test_vanishing_and_product_law_small():
    v = evaluate_on_chain(Word((EIS, CUSP)), delta_product([T, B, C]))
    assert abs(v.value) < 1e-7
    lhs, rhs = lemma33_product_check((EIS, EIS), (T, T))
    assert abs(lhs.value - 100) < 1e-6 and abs(rhs.value - 100) < 1e-6


def test_word_helpers_and_parsing():
    w = parse_word("cusp11:hol,poly(1,0):antihol,eis11:hol")
    assert len(w) == 3 and not w.is_unmixed and w.hol_count == 2
    assert w.prefix(1) == Word((CUSP,))
    assert w.suffix(1) == Word((Z.conj(), EIS))
    assert parse_word(w.to_text()) == w
    assert w.conj().hol_count == 1
