"""Numerical verification runs, one row per sub-check.

Each ``check_*`` function returns a list of :class:`CheckResult`; the CLI
prints them as TSV and sets its exit code from them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable

import numpy as np

from .chen import (
    QuadratureConfig,
    Word,
    compose,
    evaluate_on_chain,
    iterated_integral,
    lemma33_product_check,
    shuffle_check,
)
from .group_algebra import GroupElement, delta_product, make_element
from .higher_order import (
    DEFAULT_Z_SAMPLES,
    HigherOrderForm,
    dual_basis_coefficients,
    index_tuples,
    kronecker_identity_residual,
    order_certificate,
    period,
    period_matrix,
    psi_image,
    section_construct,
)
from .hodge import (
    GradedCombination,
    all_words,
    decompose,
    exclusivity_holds,
    recombine,
    stratum_census,
)
from .modular_letters import Letter, Orientation, Polynomial, eval_form, named_form
from .paths import concat, line

__all__ = ["CheckResult", "RunContext", "CHECKS", "run_check", "format_number", "format_complex"]


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def to_tsv(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.check_id}\t{format_number(self.residual)}\t{format_number(self.tolerance)}\t{status}"


def format_number(x: float) -> str:
    return f"{float(x):.15g}"


def format_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.15g},{z.imag:.15g}"


@dataclass
class RunContext:
    """What a verification run needs: forms, group elements, base point, quadrature."""

    terms: int = 400
    tol: float = 1e-8
    panels: int = 8
    nodes: int = 16
    basepoint: complex = 2j
    elements: tuple[GroupElement, ...] = ()
    z_samples: tuple[complex, ...] = DEFAULT_Z_SAMPLES
    extra: list[str] = field(default_factory=list)

    @property
    def cfg(self) -> QuadratureConfig:
        return QuadratureConfig(self.panels, self.nodes, 3, self.tol)

    def letter(self, name: str, hol: bool = True) -> Letter:
        return Letter(named_form(name, self.terms), Orientation.HOL if hol else Orientation.ANTIHOL)

    @property
    def cusp(self) -> Letter:
        return self.letter("cusp11")

    @property
    def eis(self) -> Letter:
        return self.letter("eis11")

    def name(self, g: GroupElement) -> str:
        return _element_name(g)


_NAMES = {
    (1, 1, 0, 1): "T",
    (4, 1, 11, 3): "B",
    (12, 1, 11, 1): "C",
    (2, 1, 11, 6): "D",
}


def _element_name(g: GroupElement) -> str:
    return _NAMES.get((g.a, g.b, g.c, g.d), f"[{g.to_text()}]")


def _tname(tup) -> str:
    return "".join(_element_name(g) for g in tup)


def _wname(word: Word) -> str:
    parts = []
    for l in word:
        src = getattr(l.source, "name", "?")
        parts.append(src.replace("11", "") + ("" if l.is_hol else "*"))
    return "(" + ",".join(parts) + ")"


def _unmixed_words(ctx: RunContext, length: int) -> list[Word]:
    out = []
    for hol in (True, False):
        alphabet = [ctx.letter("cusp11", hol), ctx.letter("eis11", hol)]
        out += [Word(ls) for ls in product(alphabet, repeat=length)]
    return out


def check_lemma33(ctx: RunContext, max_s: int = 3, product_max_s: int = 2) -> list[CheckResult]:
    rows = []
    cfg = ctx.cfg
    for s in range(2, max_s + 1):
        for r in range(1, s):
            for word in _unmixed_words(ctx, r):
                for tup in product(ctx.elements, repeat=s):
                    v = evaluate_on_chain(word, delta_product(tup), ctx.basepoint, cfg)
                    rows.append(CheckResult(f"lemma33.vanish{_wname(word)}{_tname(tup)}", abs(v.value), 1e-7))
    for s in range(1, product_max_s + 1):
        for word in _unmixed_words(ctx, s):
            for tup in product(ctx.elements, repeat=s):
                lhs, rhs = lemma33_product_check(word.letters, tup, ctx.basepoint, cfg)
                rows.append(CheckResult(f"lemma33.product{_wname(word)}{_tname(tup)}", abs(lhs.value - rhs.value), 1e-6))
    return rows


def composition_cases(ctx: RunContext, count: int = 10, seed: int = 7):
    """Deterministic random (word, alpha, beta) cases, words of length <= 4, mixed allowed."""
    rng = np.random.default_rng(seed)
    alphabet = [
        Letter(Polynomial((1,))),
        Letter(Polynomial((1, 0))),
        Letter(Polynomial((0.5, -1j, 2))),
        ctx.letter("cusp11", True),
        ctx.letter("cusp11", False),
        ctx.letter("eis11", True),
        ctx.letter("eis11", False),
        Letter(Polynomial((1, 0)), Orientation.ANTIHOL),
    ]
    cases = []
    for _ in range(count):
        length = int(rng.integers(1, 5))
        word = Word(tuple(alphabet[i] for i in rng.integers(0, len(alphabet), size=length)))
        z0 = complex(rng.uniform(-1, 1), rng.uniform(1.0, 3.0))
        z1 = complex(rng.uniform(-1, 1), rng.uniform(1.0, 3.0))
        zm = complex(rng.uniform(-1, 1), rng.uniform(1.0, 3.0))
        cases.append((word, line(z0, zm), line(zm, z1)))
    return cases


def check_lemma34(ctx: RunContext) -> list[CheckResult]:
    rows = []
    cfg = ctx.cfg
    cases = composition_cases(ctx)
    cases.append((Word((ctx.cusp, ctx.cusp.conj())), line(2j, 1 + 2j), line(1 + 2j, 1 + 3j)))
    for k, (word, a, b) in enumerate(cases):
        direct = iterated_integral(concat(a, b), word, cfg)
        split = compose(word, a, b, cfg)
        diff = abs(direct.value - split.value)
        # Within the summed error estimates and never worse than 1e-8 relative.
        tol = min(max(direct.error + split.error, 1e-15), 1e-8 * max(1.0, abs(direct.value)))
        rows.append(CheckResult(f"lemma34.case{k}{_wname(word)}", diff, tol))
    return rows


def check_shuffle(ctx: RunContext) -> list[CheckResult]:
    rows = []
    cfg = ctx.cfg
    one, z = Letter(Polynomial((1,))), Letter(Polynomial((1, 0)))
    p = line(2j, 1 + 2j)
    cases = [
        ("dz|dz", Word((one,)), Word((one,)), line(2j, 1 + 3j)),
        ("dz|dzdz", Word((one,)), Word((one, one)), line(2j, 1 + 3j)),
        ("z|dz,z", Word((z,)), Word((one, z)), line(2j, 1 + 3j)),
        ("cusp|eis", Word((ctx.cusp,)), Word((ctx.eis,)), p),
        ("cusp,eis*|eis", Word((ctx.cusp, ctx.eis.conj())), Word((ctx.eis,)), p),
        ("eis,cusp|cusp*,eis", Word((ctx.eis, ctx.cusp)), Word((ctx.cusp.conj(), ctx.eis)), p),
    ]
    for name, u, v, path in cases:
        a, b = shuffle_check(u, v, path, cfg)
        rows.append(CheckResult(f"shuffle.{name}", abs(a.value - b.value), 1e-8 * max(1.0, abs(a.value))))
    return rows


def check_mainlem(ctx: RunContext, max_s: int = 2) -> list[CheckResult]:
    rows = []
    cfg = ctx.cfg
    periods = {}
    for s in range(1, max_s + 1):
        alphabet = [ctx.cusp, ctx.eis]
        for word in (Word(ls) for ls in product(alphabet, repeat=s)):
            F = HigherOrderForm(word, ctx.basepoint, cfg)
            for tup in product(ctx.elements, repeat=s):
                expected = 1.0 + 0j
                for l, g in zip(word, tup):
                    key = (l, g)
                    if key not in periods:
                        periods[key] = period(l, g, ctx.basepoint, cfg).value
                    expected *= periods[key]
                vals = [psi_image(F, tup, z).value for z in ctx.z_samples]
                spread = max(abs(v - vals[0]) for v in vals)
                dev = max(abs(v - expected) for v in vals)
                tag = f"{_wname(word)}{_tname(tup)}"
                rows.append(CheckResult(f"mainlem.constant{tag}", spread, 1e-6))
                rows.append(CheckResult(f"mainlem.product{tag}", dev, 1e-6))
    return rows


def check_invariance(ctx: RunContext) -> list[CheckResult]:
    rows = []
    tol = 1e-9
    gammas = [make_element(4, 1, 11, 3), make_element(12, 1, 11, 1), make_element(2, 1, 11, 6),
              make_element(1, 1, 0, 1), make_element(5, 4, 11, 9)]
    zs = [0.5j + 0.1, 0.7 + 0.9j, -0.3 + 1.2j, 2j, 0.25 + 0.6j]
    for name in ("cusp11", "eis11"):
        f = named_form(name, ctx.terms)
        for g in gammas:
            for z in zs:
                lhs = eval_form(f, g.act(z), tol) * g.automorphy(z) ** -2
                rhs = eval_form(f, z, tol)
                rows.append(CheckResult(f"invariance.{name}.{_element_name(g)}.{format_complex(z)}", abs(lhs - rhs), 10 * tol))
    return rows


def check_dualbasis(ctx: RunContext, max_s: int = 2) -> list[CheckResult]:
    rows = []
    cfg = ctx.cfg
    letters = (ctx.cusp, ctx.cusp.conj(), ctx.eis)
    elements = tuple(ctx.elements)
    P = period_matrix(letters, elements, ctx.basepoint, cfg, check=False)
    # Shortfall below the 1e-6 floor on the row-normalized determinant.
    rows.append(CheckResult("dualbasis.det", max(0.0, 1e-6 - P.normalized_det), 0.0))
    for s in range(1, 4):
        M = dual_basis_coefficients(P, s)
        rows.append(CheckResult(f"dualbasis.kron.s{s}", kronecker_identity_residual(P, M, s), 1e-10))
    periods = {(r, g): P.entries[r, j] for r in range(3) for j, g in enumerate(elements)}
    for s in range(1, max_s + 1):
        M = dual_basis_coefficients(P, s)
        idx = index_tuples(len(letters), s)
        worst = 0.0
        for n, L in enumerate(idx):
            Lambda = section_construct({L: 1.0}, M, letters, s, ctx.basepoint, cfg)
            for J in idx:
                got = Lambda.psi(tuple(elements[j] for j in J), ctx.basepoint, periods)
                worst = max(worst, abs(got - (1.0 if J == L else 0.0)))
        rows.append(CheckResult(f"dualbasis.endtoend.s{s}", worst, 1e-5))
    return rows


def check_hodge(ctx: RunContext, max_m: int = 4) -> list[CheckResult]:
    rows = []
    alphabet = [ctx.cusp, ctx.eis, ctx.cusp.conj()]
    census = stratum_census(alphabet, 3)
    # Size of F^p among words of length m: words with at least p holomorphic letters.
    ctx.extra.append("m\tp\tcount\ttotal")
    for m in range(1, max_m + 1):
        exact = stratum_census(alphabet, m)
        total = sum(exact.values())
        for p in range(m + 1):
            ctx.extra.append(f"{m}\t{p}\t{sum(c for k, c in exact.items() if k >= p)}\t{total}")
    at_least_two = sum(c for p, c in census.items() if p >= 2)
    rows.append(CheckResult("hodge.census.m3.p2", abs(at_least_two - 20) + abs(sum(census.values()) - 27), 0.0))
    rng = np.random.default_rng(11)
    for m in range(1, max_m + 1):
        words = all_words(alphabet, m)
        coeffs = rng.normal(size=len(words)) + 1j * rng.normal(size=len(words))
        x = GradedCombination(m, tuple((complex(c), w) for c, w in zip(coeffs, words)))
        for p in range(0, m + 2):
            q = m + 1 - p
            bad = 0 if exclusivity_holds(alphabet, m, p) else 1
            rows.append(CheckResult(f"hodge.exclusive.m{m}.p{p}", bad, 0.0))
            back = recombine(decompose(x, p, q)).as_dict()
            orig = x.as_dict()
            mismatch = sum(1 for k in orig if back.get(k) != orig[k]) + len(set(back) - set(orig))
            rows.append(CheckResult(f"hodge.reconstruct.m{m}.p{p}", mismatch, 0.0))
    return rows


def check_ordercert(ctx: RunContext) -> list[CheckResult]:
    rows = []
    cfg = ctx.cfg
    for s in (1, 2):
        for ls in product([ctx.cusp, ctx.eis], repeat=s):
            word = Word(ls)
            F = HigherOrderForm(word, ctx.basepoint, cfg)
            rep = order_certificate(F, ctx.elements, ctx.z_samples, 1e-6, max_tuples=5, raise_on_failure=False)
            for row in rep.rows:
                rows.append(CheckResult(
                    f"ordercert.{row.check}{_wname(word)}{_tname(row.elements)}@{format_complex(row.z)}",
                    row.residual, row.tolerance))
    return rows


CHECKS: dict[str, Callable[[RunContext], list[CheckResult]]] = {
    "lemma33": check_lemma33,
    "lemma34": check_lemma34,
    "shuffle": check_shuffle,
    "mainlem": check_mainlem,
    "invariance": check_invariance,
    "dualbasis": check_dualbasis,
    "hodge": check_hodge,
    "ordercert": check_ordercert,
}


def run_check(name: str, ctx: RunContext) -> list[CheckResult]:
    return CHECKS[name](ctx)
