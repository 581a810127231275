from __future__ import annotations

from hypothesis import strategies as st

from chenforms.group_algebra import B, C, IDENTITY, T
from chenforms.higher_order import D

GENERATORS = (T, B, C, D)


def _product(indices):
    g = IDENTITY
    for i, inv in indices:
        h = GENERATORS[i]
        g = g * (h.inverse() if inv else h)
    return g


# Random elements of Gamma_0(11) as short words in sample generators and inverses.
gamma0_elements = st.lists(
    st.tuples(st.integers(0, len(GENERATORS) - 1), st.booleans()), min_size=1, max_size=4
).map(_product)
