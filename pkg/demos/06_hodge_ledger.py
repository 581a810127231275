"""
Word-level Hodge bookkeeping
============================

For p + q = m + 1 every word of length m has at least p holomorphic letters
or at least q antiholomorphic ones, never both, so a combination splits
uniquely into an F^p part and the conjugate of an F^q part.
"""
from chenforms import Letter, named_form
from chenforms.hodge import GradedCombination, all_words, decompose, exclusivity_holds, recombine, stratum_census

cusp, eis = Letter(named_form("cusp11")), Letter(named_form("eis11"))
alphabet = [cusp, eis, cusp.conj()]

census = stratum_census(alphabet, 3)
print("words of length 3 by holomorphic count:", census)
print("at least two holomorphic letters:", census[2] + census[3], "of", sum(census.values()))

print(all(exclusivity_holds(alphabet, m, p) for m in range(1, 5) for p in range(m + 2)))

words = all_words(alphabet, 2)
x = GradedCombination(2, tuple((complex(k, 1), w) for k, w in enumerate(words)))
parts = decompose(x, 1, 2)
print(len(parts.fp_part), "terms in F^1,", len(parts.conj_fq_part), "in conj F^2")
print("recombined:", recombine(parts).as_dict() == x.as_dict())
