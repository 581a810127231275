"""Word-level bookkeeping for the weight and Hodge-type filtrations.

A word of length m indexes a class in Gr_m of the weight filtration; its
Hodge level is the number of holomorphic letters.  For p + q = m + 1 every
word has either at least p holomorphic letters or at least q antiholomorphic
ones, never both, which is what splits Gr_m into F^p plus the conjugate of F^q.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, NamedTuple, Sequence

from .chen import Word
from .errors import GradingError
from .modular_letters import Letter

__all__ = [
    "BigradedWord",
    "GradedCombination",
    "Decomposition",
    "conj_word",
    "in_filtration",
    "decompose",
    "recombine",
    "all_words",
    "stratum_census",
    "exclusivity_holds",
]


@dataclass(frozen=True)
class BigradedWord:
    word: Word

    @property
    def m(self) -> int:
        return len(self.word)

    @property
    def p(self) -> int:
        return self.word.hol_count

    def __str__(self):
        return f"[{self.word}](m={self.m},p={self.p})"


@dataclass(frozen=True)
class GradedCombination:
    """Homogeneous combination sum c_i [word_i], all words of length ``m``."""

    m: int
    terms: tuple[tuple[complex, BigradedWord], ...] = ()

    def __post_init__(self):
        for _, w in self.terms:
            if w.m != self.m:
                raise GradingError(f"word {w} does not have length {self.m}")

    @classmethod
    def of(cls, terms: Iterable[tuple[complex, BigradedWord]]) -> GradedCombination:
        terms = tuple((complex(c), w) for c, w in terms)
        if not terms:
            raise GradingError("cannot infer m from an empty combination")
        return cls(terms[0][1].m, terms)

    def as_dict(self) -> dict[Word, complex]:
        out: dict[Word, complex] = {}
        for c, w in self.terms:
            out[w.word] = out.get(w.word, 0j) + c
        return out

    def conj(self) -> GradedCombination:
        return GradedCombination(self.m, tuple((c.conjugate(), conj_word(w)) for c, w in self.terms))

    def __add__(self, other: GradedCombination) -> GradedCombination:
        if other.m != self.m:
            raise GradingError("cannot add combinations of different weight")
        return GradedCombination(self.m, self.terms + other.terms)

    def __len__(self):
        return len(self.terms)


class Decomposition(NamedTuple):
    fp_part: GradedCombination
    conj_fq_part: GradedCombination
    # Lower-weight remainder; empty at the graded level.
    lower: GradedCombination


def conj_word(w: BigradedWord) -> BigradedWord:
    return BigradedWord(w.word.conj())


def in_filtration(w: BigradedWord, p: int) -> bool:
    if p < 0:
        raise ValueError("p must be >= 0")
    return w.p >= p


def decompose(x: GradedCombination, p: int, q: int) -> Decomposition:
    """Split x into an F^p part and the conjugate of an F^q part, p + q = m + 1.

    ``conj_fq_part`` stores conjugated terms, so each of its words has at least
    q holomorphic letters and ``fp_part + conj(conj_fq_part)`` is x again.
    """
    if p + q != x.m + 1:
        raise GradingError(f"need p + q = m + 1, got p={p}, q={q}, m={x.m}")
    if p < 0 or q < 0:
        raise GradingError("p and q must be non-negative")
    hi, lo = [], []
    for c, w in x.terms:
        if in_filtration(w, p):
            hi.append((c, w))
        else:
            lo.append((c.conjugate(), conj_word(w)))
    return Decomposition(
        GradedCombination(x.m, tuple(hi)),
        GradedCombination(x.m, tuple(lo)),
        GradedCombination(x.m - 1 if x.m > 0 else 0, ()),
    )


def recombine(parts: Decomposition) -> GradedCombination:
    return parts.fp_part + parts.conj_fq_part.conj()


def all_words(alphabet: Sequence[Letter], m: int) -> list[BigradedWord]:
    return [BigradedWord(Word(tuple(ls))) for ls in product(alphabet, repeat=m)]


def stratum_census(alphabet: Sequence[Letter], m: int) -> dict[int, int]:
    """Number of words of length m with exactly p holomorphic letters, per p."""
    out = {p: 0 for p in range(m + 1)}
    for w in all_words(alphabet, m):
        out[w.p] += 1
    return out


def exclusivity_holds(alphabet: Sequence[Letter], m: int, p: int) -> bool:
    """Every word is in exactly one of F^p and conj(F^q), q = m + 1 - p."""
    q = m + 1 - p
    for w in all_words(alphabet, m):
        a = in_filtration(w, p)
        b = in_filtration(conj_word(w), q)
        if a == b:
            return False
    return True
