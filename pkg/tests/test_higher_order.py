from __future__ import annotations

import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chenforms.chen import Word
from chenforms.errors import CertificateFailure, MixedWordError, SingularPeriodMatrix
from chenforms.group_algebra import B, C, GroupRingElement, T, delta_product
from chenforms.higher_order import (
    D,
    DEFAULT_Z_SAMPLES,
    HigherOrderForm,
    dual_basis_coefficients,
    hof_eval,
    index_tuples,
    kronecker_identity_residual,
    order_certificate,
    period,
    period_matrix,
    psi_image,
    section_construct,
    slash,
)
from chenforms.modular_letters import Letter, named_form

from conftest import gamma0_elements

CUSP = Letter(named_form("cusp11"))
EIS = Letter(named_form("eis11"))
LETTERS = (CUSP, CUSP.conj(), EIS)


def test_periods_under_translation():
    for z in DEFAULT_Z_SAMPLES:
        assert abs(period(EIS, T, z).value + 10) <= 1e-8
        assert abs(period(CUSP, T, z).value) <= 1e-8


def test_periods_are_independent_of_start():
    for l in (CUSP, EIS):
        for g in (B, D):
            vals = [period(l, g, z).value for z in (2j, 0.3 + 1.5j, -0.4 + 3j)]
            assert max(abs(v - vals[0]) for v in vals) < 1e-8


def test_antiholomorphic_period_is_conjugate():
    assert abs(period(CUSP.conj(), B).value - period(CUSP, B).value.conjugate()) < 1e-12


def test_hof_eval_basics():
    F = HigherOrderForm(Word((EIS, CUSP)))
    assert hof_eval(F, 2j).value == 0
    assert hof_eval(HigherOrderForm(Word()), 1 + 1j).value == 1
    with pytest.raises(MixedWordError):
        HigherOrderForm(Word((EIS, CUSP.conj())))


def test_hof_routes_agree():
    F = HigherOrderForm(Word((EIS, CUSP)))
    z = 0.3 + 1.5j
    direct = hof_eval(F, B.act(z)).value
    lifted = hof_eval(F, z, (B,)).value
    assert abs(direct - lifted) < 1e-8


def test_psi_image_examples():
    F = HigherOrderForm(Word((EIS, EIS)))
    for z in DEFAULT_Z_SAMPLES:
        assert abs(psi_image(F, (T, T), z).value - 100) <= 1e-6
    G = HigherOrderForm(Word((CUSP, EIS)))
    assert abs(psi_image(G, (T, B), 2j).value) <= 1e-6
    assert abs(G.slash_value(delta_product((T, B, C)), 0.5 + 2j).value) <= 1e-6


def test_order_certificate_passes_and_fails():
    F = HigherOrderForm(Word((CUSP,)))
    rep = order_certificate(F, (T, B, C))
    assert rep.passed and rep.order == 2 and len(rep.rows) >= 5
    # Claiming order 1 for an order-2 form fails the vanishing test.
    with pytest.raises(CertificateFailure) as exc:
        order_certificate(HigherOrderForm(Word((EIS,))), (T, B), order=1)
    assert exc.value.failures
    rep = order_certificate(lambda z: 3.0, (T, B), order=1)
    assert rep.passed


def test_period_matrix_substitute_tuple_is_nonsingular():
    P = period_matrix(LETTERS, (T, B, D))
    assert P.normalized_det > 1e-6
    assert abs(P.entries[2, 0] + 10) < 1e-8


def test_period_matrix_with_c_is_singular():
    # C = T * [[1, 0], [11, 1]] is a product of parabolic elements, so its
    # cusp-form periods vanish and its column is twice the T column.
    P = period_matrix(LETTERS, (T, B, C), check=False)
    assert np.allclose(P.entries[:, 2], 2 * P.entries[:, 0], atol=1e-8)
    with pytest.raises(SingularPeriodMatrix):
        period_matrix(LETTERS, (T, B, C))
    with pytest.raises(SingularPeriodMatrix):
        dual_basis_coefficients(P, 1)


def test_kronecker_identity_random_matrix():
    rng = np.random.default_rng(3)
    A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    for s in (1, 2, 3):
        M = dual_basis_coefficients(A, s)
        assert M.shape == (3**s, 3**s)
        assert kronecker_identity_residual(A, M, s) < 1e-10


def test_section_construct_trivial_targets():
    P = period_matrix(LETTERS, (T, B, D))
    M = dual_basis_coefficients(P, 1)
    zero = section_construct({}, M, LETTERS, 1)
    assert all(c == 0 for c in zero.coeffs.values())
    assert zero.psi((B,)) == 0
    lam = section_construct({(2,): 1.0}, M, LETTERS, 1)
    assert np.allclose([lam.coeffs[I] for I in index_tuples(3, 1)], M[2])
    for j, g in enumerate((T, B, D)):
        assert abs(lam.psi((g,)) - (1.0 if j == 2 else 0.0)) < 1e-6


def _smooth(z):
    return cmath.exp(1j * z) / (z + 1j)


def _ring(terms):
    out = GroupRingElement()
    for g, k in terms:
        out = out + GroupRingElement.from_element(g, k)
    return out


ring_elements = st.lists(st.tuples(gamma0_elements, st.integers(-2, 2)), min_size=1, max_size=3).map(_ring)


@settings(max_examples=30, deadline=None)
@given(ring_elements, ring_elements, st.floats(-1, 1), st.floats(0.5, 2))
def test_slash_is_a_right_action(x, y, re, im):
    z = complex(re, im)
    lhs = slash(_smooth, 0, x * y)(z)
    rhs = slash(slash(_smooth, 0, x), 0, y)(z)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


def test_weight_two_slash_fixes_invariant_forms():
    f = lambda z: complex(np.asarray(CUSP.values(np.array([z])))[0])
    g = slash(f, 2, GroupRingElement.from_element(B))
    assert abs(g(0.1 + 0.8j) - f(0.1 + 0.8j)) < 1e-10
