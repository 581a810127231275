"""Independent brute-force oracles used to freeze expected values.

Nothing here imports from ``chenforms``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial


def eta_square_brute(order: int) -> list[int]:
    """Coefficients of q * prod (1-q^n)^2 (1-q^{11n})^2 by enumerating exponents.

    Each factor (1 - q^k) contributes either 1 or -q^k; we enumerate all
    multisets of chosen factors whose exponents sum to at most ``order - 1``.
    """
    factors = []
    for n in range(1, order + 1):
        factors += [n, n]
        if 11 * n <= order:
            factors += [11 * n, 11 * n]
    coeffs = [0] * (order + 1)

    def walk(i: int, degree: int, sign: int) -> None:
        if i == len(factors):
            if degree + 1 <= order:
                coeffs[degree + 1] += sign
            return
        walk(i + 1, degree, sign)
        if degree + factors[i] + 1 <= order:
            walk(i + 1, degree + factors[i], -sign)

    walk(0, 0, 1)
    return coeffs


def sigma1_brute(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


def eisenstein_brute(level: int, order: int) -> list[int]:
    out = [1 - level]
    for n in range(1, order + 1):
        inner = sigma1_brute(n // level) if n % level == 0 else 0
        out.append(-24 * (sigma1_brute(n) - level * inner))
    return out


def simplex_power(length: complex, r: int) -> complex:
    return length**r / factorial(r)


def matmul2(x, y):
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


def normalize2(m):
    a, b, c, d = m
    if c < 0 or (c == 0 and a < 0):
        return (-a, -b, -c, -d)
    return m


def convolve_brute(x: dict, y: dict) -> dict:
    """Group-ring product on dicts keyed by normalized 4-tuples."""
    out: dict = {}
    for g, cg in x.items():
        for h, ch in y.items():
            k = normalize2(matmul2(g, h))
            out[k] = out.get(k, 0) + cg * ch
    return {k: v for k, v in out.items() if v != 0}


def delta_product_brute(mats) -> dict:
    one = (1, 0, 0, 1)
    acc = {one: 1}
    for m in mats:
        m = normalize2(m)
        factor = {m: 1}
        factor[one] = factor.get(one, 0) - 1
        factor = {k: v for k, v in factor.items() if v != 0}
        acc = convolve_brute(acc, factor)
    return acc


def words_census(alphabet_hol: list[bool], m: int, p: int) -> tuple[int, int]:
    """Count words of length m with at least p holomorphic letters, and the rest."""
    hi = lo = 0
    for w in product(alphabet_hol, repeat=m):
        if sum(w) >= p:
            hi += 1
        else:
            lo += 1
    return hi, lo
