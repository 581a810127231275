"""Weight-2 forms on Gamma_0(N) as truncated q-expansions, and the 1-form letters.

A form is evaluated anywhere in the upper half-plane by first moving the point
to the highest point of its Gamma_0(N)-orbit (:func:`height_lift`), where the
q-series converges quickly, and then applying the weight-2 automorphy factor.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import DomainError, PrecisionError, ReductionError
from .group_algebra import GroupElement, make_element

__all__ = [
    "QExpansion",
    "Polynomial",
    "Orientation",
    "Letter",
    "eta_square_product",
    "eisenstein_level",
    "sigma1",
    "height_lift",
    "eval_form",
    "letter_pullback",
    "named_form",
    "parse_letter",
    "DEFAULT_TRUNCATION",
]

DEFAULT_TRUNCATION = 400
DEFAULT_TAIL_CONSTANT = 300.0
MIN_LIFT_HEIGHT = 0.05
# Roughly 1/(N*y) lattice rows are scanned per point; cap that work.
_LIFT_ROW_CAP = 200_000


@dataclass(frozen=True, eq=False)
class QExpansion:
    """Truncated Fourier expansion sum_{n<=T} a_n q^n of a weight-2 form.

    ``tail_constant`` C asserts |a_n| <= C n^2 beyond the truncation; it is
    what the evaluation error bound is built from.
    """

    coefficients: tuple[int, ...]
    level: int
    name: str = ""
    weight: int = 2
    tail_constant: float = DEFAULT_TAIL_CONSTANT
    min_height: float = MIN_LIFT_HEIGHT
    _array: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.coefficients) < 2:
            raise ValueError("truncation must be at least 1")
        arr = np.array([complex(a) for a in self.coefficients])
        arr.setflags(write=False)
        object.__setattr__(self, "_array", arr)

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> int:
        return self.coefficients[n]

    def _key(self):
        return (self.name, self.level, self.weight, self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self):
        return hash((self.name, self.level, self.truncation))

    def __repr__(self):
        return f"QExpansion({self.name or '?'}, level={self.level}, T={self.truncation})"

    def tail_bound(self, height, terms: int | None = None):
        """Upper bound for |sum_{n>terms} a_n q^n| at Im w = height."""
        m = self.truncation if terms is None else terms
        r = np.exp(-2 * np.pi * np.asarray(height, dtype=float))
        return self.tail_constant * _n2_tail(m, r)

    def series(self, w, tol: float):
        """Sum a_n exp(2 pi i n w) for already-lifted points ``w``."""
        w = np.asarray(w, dtype=complex)
        heights = w.imag
        out = np.empty_like(w)
        if w.size == 0:
            return out
        need = _terms_needed(self, heights, tol)
        # Horner in groups sharing a term count.
        for m in np.unique(need):
            sel = need == m
            q = np.exp(2j * np.pi * w[sel])
            acc = np.zeros_like(q)
            for a in self._array[m::-1]:
                acc = acc * q + a
            out[sel] = acc
        return out


def _n2_tail(m: int, r):
    """sum_{n > m} n^2 r^n in closed form."""
    a = m + 1
    one_r = 1.0 - r
    return r**a * (a * a / one_r + 2 * a * r / one_r**2 + r * (1 + r) / one_r**3)


def _terms_needed(f: QExpansion, heights, tol: float):
    heights = np.asarray(heights, dtype=float)
    low = heights.min()
    if low < f.min_height:
        raise PrecisionError(
            f"lifted height {low:.4g} is below the minimum {f.min_height} for {f.name or 'form'}"
        )
    if np.any(f.tail_bound(heights) > tol):
        raise PrecisionError(
            f"truncation T={f.truncation} cannot meet tol={tol:g} at height {low:.4g}"
        )
    # Bucket heights so that each group gets a term count valid for its lowest point.
    grid = np.array([f.min_height * 2.0**k for k in range(12)] + [np.inf])
    need = np.empty(heights.shape, dtype=int)
    for lo, hi in zip(grid[:-1], grid[1:]):
        sel = (heights >= lo) & (heights < hi)
        if not np.any(sel):
            continue
        m = _min_terms(f, float(heights[sel].min()), tol)
        need[sel] = m
    return need


@lru_cache(maxsize=1024)
def _min_terms_cached(tail_constant: float, truncation: int, height: float, tol: float) -> int:
    r = math.exp(-2 * math.pi * height)
    lo, hi = 0, truncation
    while lo < hi:
        mid = (lo + hi) // 2
        if tail_constant * _n2_tail(mid, r) <= tol:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _min_terms(f: QExpansion, height: float, tol: float) -> int:
    return _min_terms_cached(f.tail_constant, f.truncation, height, tol)


@lru_cache(maxsize=None)
def eta_square_product(terms: int) -> QExpansion:
    """q prod_{n>=1} (1 - q^n)^2 (1 - q^{11n})^2, the level-11 cusp form."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    poly = [0] * (terms + 1)
    poly[0] = 1
    factors = []
    for n in range(1, terms + 1):
        factors += [n, n]
        if 11 * n <= terms:
            factors += [11 * n, 11 * n]
    for k in factors:
        # multiply by (1 - q^k), truncated
        for i in range(terms, k - 1, -1):
            poly[i] -= poly[i - k]
    coeffs = [0] + poly[:terms]
    return QExpansion(tuple(coeffs), level=11, name="cusp11")


def sigma1(n: int) -> int:
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d
            if d * d != n:
                total += n // d
        d += 1
    return total


@lru_cache(maxsize=None)
def eisenstein_level(level: int, terms: int) -> QExpansion:
    """E_2(z) - N E_2(Nz): holomorphic weight-2 Eisenstein series on Gamma_0(N)."""
    if level < 2:
        raise ValueError("level must be >= 2")
    if terms < 1:
        raise ValueError("terms must be >= 1")
    coeffs = [1 - level]
    for n in range(1, terms + 1):
        inner = sigma1(n // level) if n % level == 0 else 0
        coeffs.append(-24 * (sigma1(n) - level * inner))
    return QExpansion(tuple(coeffs), level=level, name=f"eis{level}")


def named_form(name: str, terms: int = DEFAULT_TRUNCATION) -> QExpansion:
    if name == "cusp11":
        return eta_square_product(terms)
    if name == "eis11":
        return eisenstein_level(11, terms)
    raise KeyError(f"unknown form {name!r}; known: cusp11, eis11")


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _best_bottom_row(z: complex, level: int) -> tuple[int, int]:
    """Coprime (c, d) with level | c minimizing |cz + d| (identity on ties)."""
    x, y = z.real, z.imag
    best = 1.0
    best_cd = (0, 1)
    k = 1
    while level * k * y < best:
        if k > _LIFT_ROW_CAP:
            raise ReductionError(f"height lift did not terminate for z={z!r}")
        c = level * k
        slack = best * best - (c * y) ** 2
        if slack > 0:
            r = math.sqrt(slack)
            centre = -c * x
            for d in range(math.ceil(centre - r), math.floor(centre + r) + 1):
                val = math.hypot(c * x + d, c * y)
                if val < best and math.gcd(c, d) == 1:
                    best, best_cd = val, (c, d)
        k += 1
    return best_cd


def height_lift(z: complex, level: int) -> tuple[GroupElement, complex]:
    """Return (g, g z) with g in Gamma_0(level) and Im(g z) maximal on the orbit.

    The real part of the result is put in [-1/2, 1/2).
    """
    z = complex(z)
    if not z.imag > 0:
        raise DomainError(f"{z!r} is not in the upper half-plane")
    c, d = _best_bottom_row(z, level)
    if c == 0:
        g = make_element(1, 0, 0, 1)
    else:
        _, x, yy = _egcd(d, c)
        # x*d + yy*c = 1  ->  a = x, b = -yy
        g = make_element(x, -yy, c, d)
    w = g.act(z)
    shift = math.floor(w.real + 0.5)
    if shift:
        g = make_element(1, -shift, 0, 1) * g
        w = g.act(z)
    return g, w


def _lift_many(z: np.ndarray, level: int):
    """Vectorized height lift; returns (c, d, w) arrays."""
    z = np.asarray(z, dtype=complex)
    if np.any(~(z.imag > 0)):
        raise DomainError("points must lie in the upper half-plane")
    c = np.zeros(z.shape)
    d = np.ones(z.shape)
    w = z - np.floor(z.real + 0.5)
    low = np.nonzero(z.imag < 1.0 / level)[0]
    for i in low:
        g, wi = height_lift(complex(z[i]), level)
        c[i], d[i], w[i] = g.c, g.d, wi
    return c, d, w


def eval_form(f: QExpansion, z, tol: float = 1e-12):
    """Value of f at z (scalar or array), with truncation error at most ``tol``."""
    scalar = np.ndim(z) == 0
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    c, d, w = _lift_many(zz, f.level)
    vals = f.series(w, tol) * (c * zz + d) ** (-f.weight)
    return complex(vals[0]) if scalar else vals


@dataclass(frozen=True)
class Polynomial:
    """p(z) with coefficients listed from the highest degree down."""

    coefficients: tuple[complex, ...]

    def __call__(self, z):
        return np.polyval(np.array(self.coefficients, dtype=complex), z)

    @property
    def name(self) -> str:
        return "poly(" + ",".join(_fmt_num(c) for c in self.coefficients) + ")"


def _fmt_num(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        r = c.real
        return str(int(r)) if r == int(r) else repr(r)
    return repr(c).strip("()")


class Orientation(enum.Enum):
    HOL = "hol"
    ANTIHOL = "antihol"

    def flipped(self) -> Orientation:
        return Orientation.ANTIHOL if self is Orientation.HOL else Orientation.HOL


Source = Union[QExpansion, Polynomial]


@dataclass(frozen=True)
class Letter:
    """A 1-form: f(z) dz when holomorphic, conj(f(z)) d(conj z) otherwise."""

    source: Source
    orientation: Orientation = Orientation.HOL

    @property
    def is_hol(self) -> bool:
        return self.orientation is Orientation.HOL

    def conj(self) -> Letter:
        return Letter(self.source, self.orientation.flipped())

    def values(self, z, tol: float = 1e-13):
        """f(z) at the points z (no conjugation applied)."""
        if isinstance(self.source, QExpansion):
            return eval_form(self.source, np.asarray(z, dtype=complex), tol)
        return np.asarray(self.source(np.asarray(z, dtype=complex)), dtype=complex)

    def pullback(self, z0: complex, z1: complex, t, tol: float = 1e-13):
        """Coefficient of dt for the letter along z(t) = z0 + t (z1 - z0)."""
        t = np.asarray(t, dtype=float)
        vals = self.values(z0 + t * (z1 - z0), tol) * (z1 - z0)
        return vals if self.is_hol else np.conj(vals)

    def to_text(self) -> str:
        return f"{self.source.name}:{self.orientation.value}"

    def __str__(self):
        return self.to_text()


def letter_pullback(l: Letter, z0: complex, z1: complex, t: float, tol: float = 1e-13) -> complex:
    return complex(l.pullback(complex(z0), complex(z1), np.array([t]), tol)[0])


def parse_letter(text: str, terms: int = DEFAULT_TRUNCATION) -> Letter:
    """Parse "cusp11:hol", "eis11:antihol", "poly(1,0):hol" (p(z) = z)."""
    text = text.strip()
    name, sep, orient = text.rpartition(":")
    if not sep:
        name, orient = text, "hol"
    try:
        orientation = Orientation(orient.strip().lower())
    except ValueError:
        raise ValueError(f"bad orientation in {text!r}") from None
    name = name.strip()
    if name.startswith("poly(") and name.endswith(")"):
        body = name[5:-1]
        coeffs = tuple(complex(p.strip().replace(" ", "")) for p in body.split(",") if p.strip())
        if not coeffs:
            raise ValueError(f"empty polynomial in {text!r}")
        return Letter(Polynomial(coeffs), orientation)
    return Letter(named_form(name, terms), orientation)
