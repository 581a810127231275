"""Higher-order automorphic forms built from iterated integrals.

For an unmixed word I = (w_1, ..., w_s) of weight-2 letters,

    F_I(z) = int_{x0 -> z} w_1 ... w_s

is a weight-0 form of order s + 1: it is killed by J^(s+1), and on a product
(g_1 - 1)...(g_s - 1) it evaluates to the constant product of periods.  The
map psi therefore acts on the F_I as the s-fold Kronecker power of the period
matrix, and inverting that power gives the sections Lambda_L with
psi(Lambda_L) = Kronecker delta.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Mapping, Sequence

import numpy as np

from .chen import MODULAR_CONFIG, Estimate, QuadratureConfig, Word, iterated_integral, lift_path
from .errors import CertificateFailure, MixedWordError, SingularPeriodMatrix
from .group_algebra import IDENTITY, GroupElement, GroupRingElement, delta_product, make_element
from .modular_letters import Letter
from .paths import DEFAULT_BASEPOINT, join, line, mobius_image

__all__ = [
    "D",
    "HigherOrderForm",
    "PeriodMatrix",
    "CertificateRow",
    "CertificateReport",
    "FormalCombination",
    "hof_eval",
    "slash",
    "period",
    "psi_image",
    "order_certificate",
    "period_matrix",
    "dual_basis_coefficients",
    "kronecker_identity_residual",
    "section_construct",
    "DEFAULT_Z_SAMPLES",
]

# Third sample element of Gamma_0(11) whose cusp-form period is independent of B's.
D = make_element(2, 1, 11, 6)

DEFAULT_Z_SAMPLES = (2j, 0.5 + 2j, 3j)


@dataclass(frozen=True)
class HigherOrderForm:
    """z -> int_{x0 -> z} word, for an unmixed word."""

    word: Word
    basepoint: complex = DEFAULT_BASEPOINT
    cfg: QuadratureConfig = MODULAR_CONFIG
    refinement: int = 4

    def __post_init__(self):
        if not self.word.is_unmixed:
            raise MixedWordError(f"F_I is only built for unmixed words, got {self.word}")

    @property
    def order_tag(self) -> int:
        return len(self.word) + 1

    def __call__(self, z: complex) -> complex:
        return hof_eval(self, z).value

    def slash_value(self, x: GroupRingElement, z: complex) -> Estimate:
        """(F |_0 x)(z), each translate reached through its factorization."""
        value, error = 0j, 0.0
        for g, coeff in x.items():
            e = hof_eval(self, z, x.factorization(g))
            value += coeff * e.value
            error += abs(coeff) * e.error
        return Estimate(value, error)


def hof_eval(F: HigherOrderForm, z: complex, via: Sequence[GroupElement] | None = None) -> Estimate:
    """F(z) along line(x0, z), or, when ``via`` = (g_1, ..., g_k) is given, F(g z)
    for g = g_1...g_k along the lifted loop of g followed by g(line(x0, z)).

    Both routes give the same value because F is a homotopy functional on the
    simply connected upper half-plane; the second keeps deep points reachable
    without skimming past other cusps.
    """
    z = complex(z)
    if len(F.word) == 0:
        return Estimate(1.0 + 0j, 0.0)
    if not via:
        if z == F.basepoint:
            return Estimate(0j, 0.0)
        return iterated_integral(line(F.basepoint, z), F.word, F.cfg)
    x0 = F.basepoint
    loop = lift_path(via, x0, F.refinement)
    g = IDENTITY
    for h in via:
        g = g * h
    if z == x0:
        path = loop
    else:
        path = join(loop, mobius_image(g, line(x0, z), F.refinement))
    return iterated_integral(path, F.word, F.cfg)


def slash(f: Callable[[complex], complex], k: int, x: GroupRingElement) -> Callable[[complex], complex]:
    """(f|_k x)(z) = sum_g coeff (cz + d)^(-k) f(g z)."""
    terms = x.items()

    def slashed(z: complex) -> complex:
        z = complex(z)
        total = 0j
        for g, coeff in terms:
            total += coeff * g.automorphy(z) ** (-k) * f(g.act(z))
        return total

    return slashed


def period(l: Letter, g: GroupElement, z: complex = DEFAULT_BASEPOINT, cfg: QuadratureConfig | None = None) -> Estimate:
    """int_{z -> g z} l; independent of z for closed invariant letters."""
    z = complex(z)
    return iterated_integral(line(z, g.act(z)), Word((l,)), cfg or MODULAR_CONFIG)


def psi_image(F: HigherOrderForm, elements: Sequence[GroupElement], z: complex) -> Estimate:
    """(F |_0 (g_1 - 1)...(g_s - 1))(z)."""
    if len(elements) == 0:
        return hof_eval(F, z)
    return F.slash_value(delta_product(elements), z)


@dataclass(frozen=True)
class CertificateRow:
    check: str
    elements: tuple[GroupElement, ...]
    z: complex
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


@dataclass
class CertificateReport:
    order: int
    rows: list[CertificateRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def failures(self) -> list[CertificateRow]:
        return [r for r in self.rows if not r.passed]

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.rows), default=0.0)


def _sample_tuples(elements, length, count, seed):
    all_tuples = list(product(elements, repeat=length))
    if count is None or count >= len(all_tuples):
        return all_tuples
    rng = np.random.default_rng(seed)
    idx = sorted(rng.choice(len(all_tuples), size=count, replace=False))
    return [all_tuples[i] for i in idx]


def order_certificate(
    form,
    elements: Sequence[GroupElement],
    z_samples: Sequence[complex] = DEFAULT_Z_SAMPLES,
    tol: float = 1e-6,
    *,
    order: int | None = None,
    max_tuples: int | None = 5,
    seed: int = 0,
    raise_on_failure: bool = True,
) -> CertificateReport:
    """Check on samples that ``form`` is killed by J^order and has constant psi-image.

    ``form`` is a :class:`HigherOrderForm` (order = word length + 1) or any
    callable of one complex argument together with an explicit ``order``.
    """
    if isinstance(form, HigherOrderForm):
        order = form.order_tag if order is None else order
        evaluate = lambda x, z: form.slash_value(x, z).value
    else:
        if order is None:
            raise ValueError("order is required for a plain callable")
        evaluate = lambda x, z: slash(form, 0, x)(z)
    report = CertificateReport(order)
    for tup in _sample_tuples(elements, order, max_tuples, seed):
        x = delta_product(tup)
        for z in z_samples:
            res = abs(evaluate(x, z))
            report.rows.append(CertificateRow("vanish", tuple(tup), complex(z), res, tol))
    if order >= 2:
        for tup in _sample_tuples(elements, order - 1, max_tuples, seed + 1):
            x = delta_product(tup)
            vals = [evaluate(x, z) for z in z_samples]
            spread = max(abs(v - vals[0]) for v in vals)
            report.rows.append(CertificateRow("constant", tuple(tup), complex(z_samples[0]), spread, tol))
    if raise_on_failure and not report.passed:
        bad = [(r.elements, r.z, r.residual) for r in report.failures]
        raise CertificateFailure(f"{len(bad)} certificate checks failed", bad)
    return report


@dataclass(frozen=True)
class PeriodMatrix:
    """entries[r][j] = period of letter r along element j."""

    letters: tuple[Letter, ...]
    elements: tuple[GroupElement, ...]
    entries: np.ndarray
    condition_estimate: float
    errors: np.ndarray | None = None

    @property
    def normalized_det(self) -> float:
        """|det| after scaling every row to unit 2-norm."""
        rows = self.entries / np.linalg.norm(self.entries, axis=1, keepdims=True)
        return float(abs(np.linalg.det(rows)))

    def inverse(self) -> np.ndarray:
        return np.linalg.inv(self.entries)


def period_matrix(
    letters: Sequence[Letter],
    elements: Sequence[GroupElement],
    z: complex = DEFAULT_BASEPOINT,
    cfg: QuadratureConfig | None = None,
    *,
    max_condition: float = 1e8,
    check: bool = True,
) -> PeriodMatrix:
    """Fill the period matrix; raise SingularPeriodMatrix when badly conditioned.

    Antiholomorphic letters reuse the holomorphic period of the same form.
    """
    cfg = cfg or MODULAR_CONFIG
    P = np.empty((len(letters), len(elements)), dtype=complex)
    E = np.empty(P.shape)
    for j, g in enumerate(elements):
        for r, l in enumerate(letters):
            est = period(l, g, z, cfg)
            P[r, j], E[r, j] = est.value, est.error
    if P.shape[0] == P.shape[1] and P.size:
        cond = float(np.linalg.cond(P))
    else:
        cond = float("inf")
    pm = PeriodMatrix(tuple(letters), tuple(elements), P, cond, E)
    if check and not cond <= max_condition:
        raise SingularPeriodMatrix(
            f"period matrix condition estimate {cond:.3g} exceeds {max_condition:g}"
        )
    return pm


def _kron_power(A: np.ndarray, s: int) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for _ in range(s):
        out = np.kron(out, A)
    return out


def dual_basis_coefficients(P: PeriodMatrix | np.ndarray, s: int, *, max_condition: float = 1e8) -> np.ndarray:
    """(P^-1)^{(x) s}: row L holds the coefficients of Lambda_L in the F_I basis.

    Rows and columns are indexed by s-tuples in lexicographic order, matching
    ``itertools.product(range(rank), repeat=s)``.
    """
    A = P.entries if isinstance(P, PeriodMatrix) else np.asarray(P, dtype=complex)
    if A.shape[0] != A.shape[1]:
        raise SingularPeriodMatrix("period matrix must be square")
    if not np.linalg.cond(A) <= max_condition:
        raise SingularPeriodMatrix("period matrix is numerically singular")
    return _kron_power(np.linalg.inv(A), s)


def kronecker_identity_residual(P: PeriodMatrix | np.ndarray, M: np.ndarray, s: int) -> float:
    A = P.entries if isinstance(P, PeriodMatrix) else np.asarray(P, dtype=complex)
    prod_ = _kron_power(A, s) @ M
    return float(np.max(np.abs(prod_ - np.eye(prod_.shape[0]))))


def index_tuples(rank: int, s: int) -> list[tuple[int, ...]]:
    return list(product(range(rank), repeat=s))


@dataclass
class FormalCombination:
    """sum_I coeffs[I] F_I over index tuples I into ``letters``.

    psi-images of unmixed F_I come from the integrator; for mixed I they come
    from the product of periods, which does not depend on the correction forms.
    """

    letters: tuple[Letter, ...]
    s: int
    coeffs: dict[tuple[int, ...], complex]
    basepoint: complex = DEFAULT_BASEPOINT
    cfg: QuadratureConfig = MODULAR_CONFIG

    def word(self, I: tuple[int, ...]) -> Word:
        return Word(tuple(self.letters[i] for i in I))

    def psi(
        self,
        elements: Sequence[GroupElement],
        z: complex = DEFAULT_BASEPOINT,
        periods: Mapping[tuple[int, GroupElement], complex] | None = None,
    ) -> complex:
        """psi-image at the element tuple ``elements``."""
        periods = dict(periods or {})
        total = 0j
        for I, c in self.coeffs.items():
            if c == 0:
                continue
            word = self.word(I)
            if word.is_unmixed:
                F = HigherOrderForm(word, self.basepoint, self.cfg)
                val = psi_image(F, elements, z).value
            else:
                val = 1.0 + 0j
                for i, g in zip(I, elements):
                    key = (i, g)
                    if key not in periods:
                        periods[key] = period(self.letters[i], g, self.basepoint, self.cfg).value
                    val *= periods[key]
            total += c * val
        return total


def section_construct(
    targets: Mapping[tuple[int, ...], complex],
    M: np.ndarray,
    letters: Sequence[Letter],
    s: int,
    basepoint: complex = DEFAULT_BASEPOINT,
    cfg: QuadratureConfig = MODULAR_CONFIG,
) -> FormalCombination:
    """sum_L targets[L] Lambda_L, expanded in the F_I basis."""
    idx = index_tuples(len(letters), s)
    pos = {I: n for n, I in enumerate(idx)}
    c = np.zeros(len(idx), dtype=complex)
    for L, v in targets.items():
        c[pos[tuple(L)]] = v
    coeffs = c @ M
    return FormalCombination(
        tuple(letters), s, {I: complex(coeffs[n]) for n, I in enumerate(idx)}, basepoint, cfg
    )
