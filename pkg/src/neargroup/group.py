"""Finite abelian groups, bicharacters, and the braidability obstruction.

Groups are products of cyclic factors; elements are exponent vectors
reduced componentwise.  A bicharacter is stored as a gram matrix of
integer exponents on the generators: entry (i, j) encodes
chi(g_i, g_j) = zeta_d^{B[i][j]} with d = gcd of the two factor orders.
For elementary abelian 2-groups this is a symmetric 0/1 matrix over the
two-element field and chi(g, h) = (-1)^(g^T B h).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .cyclo import CycloNum


class NotElementary2(ValueError):
    """Operation requires every invariant factor to equal 2."""


@dataclass(frozen=True)
class GroupSpec:
    """Product of cyclic groups of the given orders."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(f) for f in self.invariant_factors)
        if not factors or any(f < 2 for f in factors):
            raise ValueError(f"invariant factors must all be >= 2, got {factors}")
        object.__setattr__(self, "invariant_factors", factors)

    @property
    def order(self) -> int:
        n = 1
        for f in self.invariant_factors:
            n *= f
        return n

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def is_elementary_2(self) -> bool:
        return all(f == 2 for f in self.invariant_factors)

    def identity(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def generator(self, i: int) -> GroupElement:
        exps = [0] * self.rank
        exps[i] = 1
        return GroupElement(self, tuple(exps))

    def element(self, exponents) -> GroupElement:
        return GroupElement(self, tuple(exponents))

    def elements(self) -> tuple[GroupElement, ...]:
        """All elements in lexicographic exponent-vector order."""
        return tuple(GroupElement(self, exps) for exps in
                     itertools.product(*[range(f) for f in self.invariant_factors]))

    def to_json(self) -> dict:
        return {"factors": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, obj: dict) -> GroupSpec:
        return cls(tuple(obj["factors"]))

    @classmethod
    def elementary_2(cls, rank: int) -> GroupSpec:
        return cls((2,) * rank)


class GroupElement:
    """Exponent vector, one residue per invariant factor."""

    __slots__ = ("spec", "exponents", "_hash")

    def __init__(self, spec: GroupSpec, exponents: tuple[int, ...]) -> None:
        if len(exponents) != spec.rank:
            raise ValueError("exponent vector length does not match the group rank")
        self.spec = spec
        self.exponents = tuple(e % f for e, f in zip(exponents, spec.invariant_factors))
        self._hash = None

    def __mul__(self, other: GroupElement) -> GroupElement:
        if self.spec != other.spec:
            raise ValueError("elements of different groups")
        return GroupElement(self.spec, tuple(a + b for a, b in
                                             zip(self.exponents, other.exponents)))

    def inverse(self) -> GroupElement:
        return GroupElement(self.spec, tuple(-e for e in self.exponents))

    def order(self) -> int:
        return lcm(*(f // gcd(e, f) for e, f in
                     zip(self.exponents, self.spec.invariant_factors)))

    @property
    def is_identity(self) -> bool:
        return not any(self.exponents)

    def decompose(self) -> tuple[int, ...]:
        """Indices of the generators appearing in this element, increasing.

        Only meaningful when each generator appears at most once, i.e. for
        elementary abelian 2-groups.
        """
        if not self.spec.is_elementary_2:
            raise NotElementary2("generator decomposition needs an elementary 2-group")
        return tuple(i for i, e in enumerate(self.exponents) if e)

    def __eq__(self, other):
        return (isinstance(other, GroupElement)
                and self.spec == other.spec
                and self.exponents == other.exponents)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.spec.invariant_factors, self.exponents))
        return h

    def __repr__(self):
        return f"GroupElement{self.exponents}"

    def key(self) -> str:
        return "".join(str(e) for e in self.exponents)


@dataclass(frozen=True)
class Bicharacter:
    """Bilinear form on a finite abelian group, written multiplicatively."""

    group: GroupSpec
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.group.rank
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        if len(gram) != n or any(len(row) != n for row in gram):
            raise ValueError("gram matrix shape does not match the group rank")
        object.__setattr__(self, "gram", gram)

    def _entry_order(self, i: int, j: int) -> int:
        f = self.group.invariant_factors
        return gcd(f[i], f[j])

    @property
    def natural_conductor(self) -> int:
        """Smallest even conductor containing every value of the form."""
        n = self.group.rank
        d = lcm(2, *(self._entry_order(i, j) for i in range(n) for j in range(n)))
        return d

    def eval_fraction(self, g: GroupElement, h: GroupElement) -> Fraction:
        """The value as an exponent: chi(g, h) = e^(2*pi*i*q) with q in [0, 1)."""
        total = Fraction(0)
        for i, gi in enumerate(g.exponents):
            if gi:
                row = self.gram[i]
                for j, hj in enumerate(h.exponents):
                    if hj and row[j]:
                        total += Fraction(gi * hj * row[j], self._entry_order(i, j))
        return total % 1

    def eval(self, g: GroupElement, h: GroupElement, conductor: int | None = None) -> CycloNum:
        if conductor is None:
            conductor = self.natural_conductor
        q = self.eval_fraction(g, h)
        scaled = q * conductor
        if scaled.denominator != 1:
            raise ValueError(
                f"form value of order {q.denominator} does not embed in conductor {conductor}")
        return CycloNum.root(conductor, int(scaled))

    def eval_sign(self, g: GroupElement, h: GroupElement) -> int:
        """+1/-1 evaluation; valid only for elementary abelian 2-groups."""
        total = 0
        for i, gi in enumerate(g.exponents):
            if gi:
                row = self.gram[i]
                for j, hj in enumerate(h.exponents):
                    if hj:
                        total += row[j]
        return -1 if total % 2 else 1

    @property
    def is_symmetric(self) -> bool:
        n = self.group.rank
        return all(self.gram[i][j] % self._entry_order(i, j)
                   == self.gram[j][i] % self._entry_order(i, j)
                   for i in range(n) for j in range(n))

    def kernel(self) -> tuple[GroupElement, ...]:
        """Elements g with chi(g, h) = 1 for every h, by exhaustive scan."""
        elements = self.group.elements()
        return tuple(g for g in elements
                     if all(self.eval_fraction(g, h) == 0 for h in elements))

    @property
    def is_nondegenerate(self) -> bool:
        return len(self.kernel()) == 1

    @property
    def is_diag_trivial(self) -> bool:
        return all(self.eval_fraction(g, g) == 0 for g in self.group.elements())

    def to_json(self) -> dict:
        return {"gram": [list(row) for row in self.gram]}

    @classmethod
    def from_json(cls, group: GroupSpec, obj: dict) -> Bicharacter:
        return cls(group, tuple(tuple(row) for row in obj["gram"]))


@dataclass(frozen=True)
class FormChecks:
    symmetric: bool
    nondegenerate: bool
    diag_trivial: bool


def chi_eval(chi: Bicharacter, g: GroupElement, h: GroupElement,
             conductor: int | None = None) -> CycloNum:
    return chi.eval(g, h, conductor)


def form_checks(chi: Bicharacter) -> FormChecks:
    return FormChecks(chi.is_symmetric, chi.is_nondegenerate, chi.is_diag_trivial)


def _invertible_mod2(rows: list[list[int]]) -> bool:
    n = len(rows)
    m = [row[:] for row in rows]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return False
        m[col], m[pivot] = m[pivot], m[col]
        for r in range(n):
            if r != col and m[r][col]:
                m[r] = [(a + b) % 2 for a, b in zip(m[r], m[col])]
    return True


def enumerate_forms(rank: int) -> tuple[Bicharacter, ...]:
    """All symmetric nondegenerate bicharacters on (Z/2)^rank.

    Scans every symmetric 0/1 matrix (2^(rank*(rank+1)/2) candidates, upper
    triangle bits in row-major order) and keeps the invertible ones, so the
    output order is deterministic.
    """
    if rank < 1:
        raise ValueError("rank must be at least 1")
    if rank > 4:
        raise ValueError("form enumeration is desk scale: rank <= 4")
    group = GroupSpec.elementary_2(rank)
    positions = [(i, j) for i in range(rank) for j in range(i, rank)]
    forms = []
    for bits in itertools.product((0, 1), repeat=len(positions)):
        rows = [[0] * rank for _ in range(rank)]
        for (i, j), b in zip(positions, bits):
            rows[i][j] = rows[j][i] = b
        if _invertible_mod2(rows):
            forms.append(Bicharacter(group, tuple(tuple(r) for r in rows)))
    return tuple(forms)


def hyperbolic_form(rank: int) -> Bicharacter:
    """Antidiagonal 2x2 blocks; diag-trivial, even rank only."""
    if rank % 2:
        raise ValueError("hyperbolic form needs even rank")
    rows = [[0] * rank for _ in range(rank)]
    for k in range(0, rank, 2):
        rows[k][k + 1] = rows[k + 1][k] = 1
    return Bicharacter(GroupSpec.elementary_2(rank), tuple(tuple(r) for r in rows))


def diagonal_form(rank: int) -> Bicharacter:
    """Identity gram matrix."""
    rows = [[1 if i == j else 0 for j in range(rank)] for i in range(rank)]
    return Bicharacter(GroupSpec.elementary_2(rank), tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class ObstructionWitness:
    element: GroupElement
    order: int
    case: str  # "odd-order" or "even-order"
    lines: tuple[str, ...]


@dataclass(frozen=True)
class BraidabilityReport:
    braidable: bool
    witness: ObstructionWitness | None


def braidability_obstruction(spec: GroupSpec) -> BraidabilityReport:
    """Decide whether a near-group category over this group can be braided.

    Possible exactly when every element has order 2.  Otherwise produce a
    witness element whose existence forces any {+1,-1}-valued form to be
    degenerate: braided commutativity on the invertibles makes the form
    equal its own inverse, and then an element of order 2n+1 lies in the
    radical itself, while for an element of order 2n with n > 1 its square
    is a nontrivial radical element.
    """
    if spec.is_elementary_2:
        return BraidabilityReport(True, None)
    elements = spec.elements()
    odd = next((g for g in elements if g.order() > 1 and g.order() % 2 == 1), None)
    if odd is not None:
        k = odd.order()
        lines = (
            f"a = {odd.exponents} has odd order {k}",
            "a braiding forces chi(a,b) = chi(b,a)^(-1) = chi(a,b)^(-1), so chi is {+1,-1}-valued",
            f"chi(a,b)^{k} = chi(a^{k},b) = 1 and chi(a,b)^2 = 1 give chi(a,b) = 1 for every b",
            "hence a is a nontrivial radical element and chi is degenerate",
        )
        return BraidabilityReport(False, ObstructionWitness(odd, k, "odd-order", lines))
    even = next(g for g in elements if g.order() > 2)
    k = even.order()
    square = even * even
    lines = (
        f"a = {even.exponents} has order {k} > 2, so a^2 = {square.exponents} != identity",
        "a braiding forces chi to be {+1,-1}-valued",
        "chi(a^2,b) = chi(a,b)^2 = 1 for every b",
        "hence a^2 is a nontrivial radical element and chi is degenerate",
    )
    return BraidabilityReport(False, ObstructionWitness(even, k, "even-order", lines))
