"""
Iterated integrals along paths
==============================

Simplex volumes as a sanity check, then the composition and shuffle laws
for words mixing holomorphic and antiholomorphic modular letters.
"""
from math import factorial

from chenforms import Letter, Polynomial, Word, compose, iterated_integral, line, named_form
from chenforms.chen import MODULAR_CONFIG, shuffle_check

one = Letter(Polynomial((1,)))
for r in range(1, 6):
    v = iterated_integral(line(2j, 1 + 3j), Word((one,) * r))
    print(r, v.value, abs(v.value - (1 + 1j) ** r / factorial(r)))

cusp, eis = Letter(named_form("cusp11")), Letter(named_form("eis11"))
word = Word((cusp, eis.conj(), eis))
a, b = line(0.5j, 0.4 + 1.1j), line(0.4 + 1.1j, -0.2 + 0.8j)
whole = iterated_integral(a + b, word, MODULAR_CONFIG)
split = compose(word, a, b, MODULAR_CONFIG)
print("composition law:", whole.value, split.value, "estimate", whole.error + split.error)

lhs, rhs = shuffle_check(Word((cusp,)), Word((eis.conj(), eis)), a)
print("shuffle product:", abs(lhs.value - rhs.value))
