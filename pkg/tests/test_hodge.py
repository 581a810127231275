from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chenforms.chen import Word
from chenforms.errors import GradingError
from chenforms.hodge import (
    BigradedWord,
    GradedCombination,
    conj_word,
    decompose,
    exclusivity_holds,
    in_filtration,
    recombine,
    stratum_census,
)
from chenforms.modular_letters import Letter, named_form

from oracles import words_census

CUSP = Letter(named_form("cusp11"))
EIS = Letter(named_form("eis11"))
ALPHABET = [CUSP, EIS, CUSP.conj()]


def bw(*letters):
    return BigradedWord(Word(tuple(letters)))


def test_conj_examples():
    w = bw(CUSP, EIS)
    assert conj_word(w) == bw(CUSP.conj(), EIS.conj())
    assert conj_word(w).p == 0
    assert conj_word(bw(CUSP, EIS, CUSP.conj())).p == 1


def test_filtration_examples():
    w = bw(CUSP, CUSP.conj())
    assert in_filtration(w, 1) and not in_filtration(w, 2) and in_filtration(w, 0)


def test_decompose_degree_one():
    x = GradedCombination.of([(2.0, bw(CUSP)), (3j, bw(EIS.conj()))])
    parts = decompose(x, 1, 1)
    assert parts.fp_part.as_dict() == {Word((CUSP,)): 2}
    assert parts.conj_fq_part.as_dict() == {Word((EIS,)): -3j}
    assert len(parts.lower) == 0
    with pytest.raises(GradingError):
        decompose(x, 1, 2)


def test_mixed_lengths_rejected():
    with pytest.raises(GradingError):
        GradedCombination.of([(1, bw(CUSP)), (1, bw(CUSP, EIS))])


def test_census_matches_oracle():
    hol = [l.is_hol for l in ALPHABET]
    for m in range(1, 5):
        exact = stratum_census(ALPHABET, m)
        for p in range(m + 2):
            at_least = sum(c for k, c in exact.items() if k >= p)
            assert (at_least, 3**m - at_least) == words_census(hol, m, p)
    exact = stratum_census(ALPHABET, 3)
    assert exact[2] + exact[3] == 20 and sum(exact.values()) == 27


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_exclusivity_exhaustive(m):
    for p in range(m + 2):
        assert exclusivity_holds(ALPHABET, m, p)


words = st.integers(1, 4).flatmap(lambda m: st.lists(st.sampled_from(ALPHABET), min_size=m, max_size=m))


@given(words)
def test_conj_is_graded_involution(letters):
    w = BigradedWord(Word(tuple(letters)))
    c = conj_word(w)
    assert conj_word(c) == w
    assert c.m == w.m and c.p == w.m - w.p


@given(words, st.integers(1, 5))
def test_filtration_nesting(letters, p):
    w = BigradedWord(Word(tuple(letters)))
    if in_filtration(w, p):
        assert in_filtration(w, p - 1)


@settings(max_examples=50)
@given(
    st.integers(1, 4).flatmap(
        lambda m: st.lists(
            st.tuples(
                st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
                st.lists(st.sampled_from(ALPHABET), min_size=m, max_size=m),
            ),
            min_size=1,
            max_size=6,
        )
    ),
    st.integers(0, 5),
)
def test_decompose_recombine_identity(terms, p):
    x = GradedCombination.of([(c, BigradedWord(Word(tuple(ls)))) for c, ls in terms])
    p = min(p, x.m + 1)
    parts = decompose(x, p, x.m + 1 - p)
    assert recombine(parts).as_dict() == x.as_dict()
    assert all(w.p >= p for _, w in parts.fp_part.terms)
    assert all(w.p >= x.m + 1 - p for _, w in parts.conj_fq_part.terms)
