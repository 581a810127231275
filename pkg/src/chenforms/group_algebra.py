"""Exact PSL2(Z) arithmetic and the integral group ring Z[Gamma].

Elements are stored as sign-normalized integer matrices, so equality in
PSL2(Z) is plain tuple equality.  Group-ring elements are finite integer
combinations; products of ring elements remember an ordered factorization of
every group element they produce, which the iterated-integral code uses to
build lifted loops.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import DeterminantError

__all__ = [
    "GroupElement",
    "GroupRingElement",
    "GroupData",
    "IDENTITY",
    "T",
    "S",
    "B",
    "C",
    "make_element",
    "in_gamma0",
    "augmentation",
    "delta_product",
    "inclusion_exclusion_expand",
    "elliptic_telescoping",
    "parse_element",
    "parse_ring_element",
]


@dataclass(frozen=True, order=True)
class GroupElement:
    """A matrix [[a, b], [c, d]] of determinant 1 modulo +-1.

    Construct through :func:`make_element`, which checks the determinant and
    picks the representative with ``c > 0`` or ``c == 0 and a > 0``.
    """

    a: int
    b: int
    c: int
    d: int

    def __mul__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return _normalized(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __pow__(self, n: int) -> GroupElement:
        base = self if n >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(n)):
            out = out * base
        return out

    def inverse(self) -> GroupElement:
        return _normalized(self.d, -self.b, -self.c, self.a)

    def act(self, z):
        """Mobius action z -> (az + b)/(cz + d); works on numpy arrays too."""
        return (self.a * z + self.b) / (self.c * z + self.d)

    def automorphy(self, z):
        """The factor cz + d."""
        return self.c * z + self.d

    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def to_text(self) -> str:
        return f"{self.a},{self.b},{self.c},{self.d}"

    def __str__(self) -> str:
        return self.to_text()


def _normalized(a: int, b: int, c: int, d: int) -> GroupElement:
    if c < 0 or (c == 0 and a < 0):
        a, b, c, d = -a, -b, -c, -d
    return GroupElement(a, b, c, d)


def make_element(a: int, b: int, c: int, d: int) -> GroupElement:
    a, b, c, d = int(a), int(b), int(c), int(d)
    if a * d - b * c != 1:
        raise DeterminantError(f"det({a},{b},{c},{d}) = {a * d - b * c}, expected 1")
    return _normalized(a, b, c, d)


IDENTITY = GroupElement(1, 0, 0, 1)
T = make_element(1, 1, 0, 1)
S = make_element(0, -1, 1, 0)
# Sample elements of Gamma_0(11) used throughout as the surrogate generator tuple.
B = make_element(4, 1, 11, 3)
C = make_element(12, 1, 11, 1)


def in_gamma0(g: GroupElement, level: int) -> bool:
    if level < 1:
        raise ValueError("level must be >= 1")
    return g.c % level == 0


@dataclass(frozen=True)
class GroupData:
    """Signature data of a Fuchsian group: genus, cusps, elliptic points."""

    genus: int
    cusp_count: int
    elliptic_count: int = 0

    def __post_init__(self):
        if self.elliptic_count != 0:
            raise ValueError("only groups without elliptic elements are supported")
        if self.rank < 1:
            raise ValueError("rank 2g + c - 1 must be at least 1")

    @property
    def rank(self) -> int:
        return 2 * self.genus + self.cusp_count - 1


GAMMA0_11 = GroupData(genus=1, cusp_count=2)


@dataclass(frozen=True, eq=False)
class GroupRingElement:
    """Finite integer combination of group elements.

    ``terms`` never holds zero coefficients.  ``factorizations`` maps some of
    the group elements to an ordered tuple of factors whose product is that
    element; it is bookkeeping only and does not take part in equality.
    ``order`` is the J-adic order guaranteed by construction (0 if unknown).
    """

    terms: Mapping[GroupElement, int] = field(default_factory=dict)
    factorizations: Mapping[GroupElement, tuple[GroupElement, ...]] = field(
        default_factory=dict, repr=False
    )
    order: int = 0

    def __post_init__(self):
        clean = {g: int(v) for g, v in self.terms.items() if v != 0}
        object.__setattr__(self, "terms", clean)
        facts = {g: tuple(f) for g, f in self.factorizations.items() if g in clean}
        object.__setattr__(self, "factorizations", facts)

    @classmethod
    def from_element(cls, g: GroupElement, coeff: int = 1) -> GroupRingElement:
        return cls({g: coeff}, {g: (g,)})

    @classmethod
    def one(cls) -> GroupRingElement:
        return cls({IDENTITY: 1}, {IDENTITY: ()})

    def factorization(self, g: GroupElement) -> tuple[GroupElement, ...]:
        if g in self.factorizations:
            return self.factorizations[g]
        return () if g.is_identity() else (g,)

    def items(self):
        """Terms in a fixed order (sorted by matrix entries)."""
        return sorted(self.terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        terms = dict(self.terms)
        for g, v in other.terms.items():
            terms[g] = terms.get(g, 0) + v
        facts = {**other.factorizations, **self.factorizations}
        return GroupRingElement(terms, facts, min(self.order, other.order))

    def __neg__(self) -> GroupRingElement:
        return GroupRingElement({g: -v for g, v in self.terms.items()}, self.factorizations, self.order)

    def __sub__(self, other: GroupRingElement) -> GroupRingElement:
        return self + (-other)

    def scale(self, k: int) -> GroupRingElement:
        return GroupRingElement({g: k * v for g, v in self.terms.items()}, self.factorizations, self.order)

    def __mul__(self, other: GroupRingElement) -> GroupRingElement:
        if isinstance(other, int):
            return self.scale(other)
        terms: dict[GroupElement, int] = {}
        facts: dict[GroupElement, tuple[GroupElement, ...]] = {}
        for g, cg in self.items():
            fg = self.factorization(g)
            for h, ch in other.items():
                gh = g * h
                terms[gh] = terms.get(gh, 0) + cg * ch
                facts.setdefault(gh, fg + other.factorization(h))
        return GroupRingElement(terms, facts, self.order + other.order)

    __rmul__ = scale

    def to_text(self) -> str:
        return "\n".join(f"{v} * {g.to_text()}" for g, v in self.items())

    def __repr__(self) -> str:
        body = " + ".join(f"{v}*[{g}]" for g, v in self.items()) or "0"
        return f"GroupRingElement({body})"


def augmentation(x: GroupRingElement) -> int:
    return sum(x.terms.values())


def _minus_one(g: GroupElement) -> GroupRingElement:
    return GroupRingElement.from_element(g) - GroupRingElement.one()


def delta_product(elements: Sequence[GroupElement]) -> GroupRingElement:
    """The product (g_1 - 1)(g_2 - 1)...(g_s - 1), tagged with order s."""
    if len(elements) < 1:
        raise ValueError("need at least one element")
    acc = GroupRingElement.one()
    for g in elements:
        acc = acc * _minus_one(g)
    return GroupRingElement(acc.terms, acc.factorizations, len(elements))


def inclusion_exclusion_expand(elements: Sequence[GroupElement]) -> GroupRingElement:
    """Sum over subsets S of (-1)^(s-|S|) times the ordered product over S.

    Built without any ring multiplication, so it is an independent route to
    the same element as :func:`delta_product`.
    """
    s = len(elements)
    if s < 1:
        raise ValueError("need at least one element")
    terms: dict[GroupElement, int] = {}
    facts: dict[GroupElement, tuple[GroupElement, ...]] = {}
    for size in range(s + 1):
        sign = -1 if (s - size) % 2 else 1
        for idx in combinations(range(s), size):
            prod = IDENTITY
            for i in idx:
                prod = prod * elements[i]
            terms[prod] = terms.get(prod, 0) + sign
            facts.setdefault(prod, tuple(elements[i] for i in idx))
    return GroupRingElement(terms, facts, s)


def elliptic_telescoping(g: GroupElement, e: int) -> GroupRingElement:
    """(1 + g + ... + g^(e-1)) (g - 1); equals g^e - 1 for every g."""
    if e < 2:
        raise ValueError("e must be >= 2")
    geometric = GroupRingElement({}, {})
    power = IDENTITY
    for _ in range(e):
        geometric = geometric + GroupRingElement.from_element(power)
        power = power * g
    return geometric * _minus_one(g)


def parse_element(text: str) -> GroupElement:
    parts = [p.strip() for p in text.strip().split(",")]
    if len(parts) != 4:
        raise ValueError(f"expected 'a,b,c,d', got {text!r}")
    return make_element(*(int(p) for p in parts))


def parse_ring_element(text: str) -> GroupRingElement:
    out = GroupRingElement({}, {})
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        coeff, _, elem = line.partition("*")
        out = out + GroupRingElement.from_element(parse_element(elem), int(coeff))
    return out


def elements_from_lines(lines: Iterable[str]) -> list[GroupElement]:
    out = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_element(line))
    return out
