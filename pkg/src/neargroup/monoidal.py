"""Near-group monoidal data in a fixed normal basis.

Simples are the group elements plus one noninvertible object m with
m*m = sum of all group elements.  Fusion is multiplicity free, so a
summand of an iterated product is labelled by a fusion tree: leaves are
the tensor factors and every internal node carries the simple it fuses
to.  Objects here are binary trees (nested 2-tuples of Simple); their
ordered summand expansion fixes row/column order for every matrix.

Associators come from the normal-basis table: trivial on triples of
invertibles, chi twists when an invertible passes the noninvertible,
and the full tau-scaled character matrix on (m, m, m).  The pentagon
verifier composes the five coherence morphisms along both paths of the
pentagon for every quadruple of simples and demands exact equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclo import (
    CycloNum,
    conductor_for_group_order,
    sqrt_group_order,
    validate_conductor,
)
from .group import Bicharacter, GroupElement, GroupSpec


class Simple:
    """A simple object: a group element, or the noninvertible m (g is None)."""

    __slots__ = ("g", "_hash")

    def __init__(self, g: GroupElement | None) -> None:
        self.g = g
        self._hash = hash(("m",)) if g is None else hash(g)

    @property
    def is_m(self) -> bool:
        return self.g is None

    def __eq__(self, other):
        return isinstance(other, Simple) and self.g == other.g

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "m" if self.g is None else f"s{self.g.exponents}"


M_SIMPLE = Simple(None)

# An object expression is a tree: either a Simple (leaf) or a pair of trees.
# A summand label mirrors the tree: the Simple itself at a leaf, and
# (left_label, right_label, total_simple) at a node.


def label_total(label) -> Simple:
    return label if isinstance(label, Simple) else label[2]


class MonoidalData:
    """A near-group category presented by (group, chi, tau) in a normal basis."""

    def __init__(self, group: GroupSpec, chi: Bicharacter, tau_sign: int,
                 conductor: int | None = None) -> None:
        if chi.group != group:
            raise ValueError("bicharacter is defined on a different group")
        if not chi.is_symmetric:
            raise ValueError("bicharacter must be symmetric")
        if not chi.is_nondegenerate:
            raise ValueError("bicharacter must be nondegenerate")
        if tau_sign not in (1, -1):
            raise ValueError("tau_sign must be +1 or -1")
        if conductor is None:
            conductor = conductor_for_group_order(group.order)
        validate_conductor(conductor)
        self.group = group
        self.chi = chi
        self.tau_sign = tau_sign
        self.conductor = conductor
        self.tau = tau_sign * sqrt_group_order(conductor, group.order).inverse()
        assert self.tau * self.tau * group.order == CycloNum.one(conductor)
        self.elements = group.elements()
        self.group_simples = tuple(Simple(g) for g in self.elements)
        self.simples = self.group_simples + (M_SIMPLE,)
        self.one = CycloNum.one(conductor)
        m = conductor
        self.chi_val = {}
        self.chi_inv = {}
        self.tau_chi_inv = {}
        self.tau_chi = {}
        for a in self.elements:
            for b in self.elements:
                v = chi.eval(a, b, m)
                vinv = v.inverse()
                self.chi_val[a, b] = v
                self.chi_inv[a, b] = vinv
                self.tau_chi_inv[a, b] = self.tau * vinv
                self.tau_chi[a, b] = self.tau * v
        self._expansion_cache: dict = {}
        self._assoc_cache: dict = {}
        self._assoc_inv_cache: dict = {}

    # -- fusion ---------------------------------------------------------

    def fusion_simples(self, x: Simple, y: Simple) -> tuple[Simple, ...]:
        """Ordered simple summands of x*y (multiplicity free)."""
        if x.is_m:
            return self.group_simples if y.is_m else (M_SIMPLE,)
        if y.is_m:
            return (M_SIMPLE,)
        return (Simple(x.g * y.g),)

    def expansion(self, tree) -> tuple:
        """Ordered summand labels of an iterated product, flattened left to right."""
        if isinstance(tree, Simple):
            return (tree,)
        cached = self._expansion_cache.get(tree)
        if cached is None:
            left, right = tree
            cached = tuple((p, q, t)
                           for p in self.expansion(left)
                           for q in self.expansion(right)
                           for t in self.fusion_simples(label_total(p), label_total(q)))
            self._expansion_cache[tree] = cached
        return cached

    def to_json(self) -> dict:
        return {"group": self.group.to_json(),
                "gram": self.chi.to_json()["gram"],
                "tau_sign": self.tau_sign,
                "conductor": self.conductor}

    @classmethod
    def from_json(cls, obj: dict) -> MonoidalData:
        group = GroupSpec.from_json(obj["group"])
        chi = Bicharacter.from_json(group, {"gram": obj["gram"]})
        return cls(group, chi, obj["tau_sign"], obj.get("conductor"))


def build_monoidal(group: GroupSpec, chi: Bicharacter, tau_sign: int) -> MonoidalData:
    return MonoidalData(group, chi, tau_sign)


def fusion_product(cat: MonoidalData, x: Simple, y: Simple) -> dict[Simple, int]:
    """Multiplicity vector of x*y over the simples, in lexicographic order."""
    out = {}
    for s in cat.fusion_simples(x, y):
        out[s] = out.get(s, 0) + 1
    return out


class BlockMatrix:
    """Morphism between ordered summand decompositions.

    rows[i] maps source index j to the (nonzero) coefficient of target
    summand i; zero entries are never stored, so dict equality is exact
    equality of matrices.
    """

    __slots__ = ("source", "target", "rows")

    def __init__(self, source: tuple, target: tuple, rows) -> None:
        self.source = source
        self.target = target
        self.rows = tuple(rows)
        if len(self.rows) != len(target):
            raise ValueError("row count does not match target basis length")

    @classmethod
    def identity(cls, basis: tuple, one: CycloNum) -> BlockMatrix:
        return cls(basis, basis, tuple({i: one} for i in range(len(basis))))

    def entry(self, i: int, j: int):
        return self.rows[i].get(j)

    def dense(self, zero: CycloNum) -> list[list[CycloNum]]:
        n = len(self.source)
        return [[self.rows[i].get(j, zero) for j in range(n)] for i in range(len(self.rows))]

    def __matmul__(self, other: BlockMatrix) -> BlockMatrix:
        """self composed after other (matrix product self * other)."""
        if other.target != self.source:
            raise ValueError("inner bases do not match")
        out = []
        for arow in self.rows:
            acc: dict = {}
            for k, a in arow.items():
                for j, b in other.rows[k].items():
                    prod = a * b
                    cur = acc.get(j)
                    acc[j] = prod if cur is None else cur + prod
            out.append({j: v for j, v in acc.items() if not v.is_zero()})
        return BlockMatrix(other.source, self.target, out)

    def __eq__(self, other):
        return (isinstance(other, BlockMatrix)
                and self.source == other.source
                and self.target == other.target
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.source, self.target,
                     tuple(tuple(sorted(r.items())) for r in self.rows)))

    def is_identity(self, one: CycloNum) -> bool:
        if self.source != self.target:
            return False
        return all(row == {i: one} for i, row in enumerate(self.rows))

    def determinant(self, cat: MonoidalData) -> CycloNum:
        if len(self.source) != len(self.target):
            raise ValueError("determinant of a non-square matrix")
        n = len(self.source)
        zero = CycloNum.zero(cat.conductor)
        m = [[self.rows[i].get(j, zero) for j in range(n)] for i in range(n)]
        det = cat.one
        for col in range(n):
            pivot = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
            if pivot is None:
                return zero
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            det = det * m[col][col]
            inv = m[col][col].inverse()
            for r in range(col + 1, n):
                if not m[r][col].is_zero():
                    factor = m[r][col] * inv
                    m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
        return det

    def __repr__(self):
        return f"BlockMatrix({len(self.target)}x{len(self.source)})"


def _simple_assoc_entries(cat: MonoidalData, x: Simple, y: Simple, z: Simple,
                          inverse: bool):
    """Channel-level entries of the normal-basis associator on a simple triple.

    Returns triples (target_channel, source_channel, coeff) where a source
    channel is (s, t) with s in x*y, t in s*z, and a target channel is
    (u, t') with u in y*z, t' in x*u.  For the inverse morphism the roles
    of the channel lists are swapped by the caller.
    """
    one = cat.one
    if not x.is_m and not y.is_m and not z.is_m:
        xy = Simple(x.g * y.g)
        yz = Simple(y.g * z.g)
        t = Simple(x.g * y.g * z.g)
        return [((yz, t), (xy, t), one)]
    if not x.is_m and not y.is_m:  # (a, b, m)
        return [((M_SIMPLE, M_SIMPLE), (Simple(x.g * y.g), M_SIMPLE), one)]
    if not x.is_m and not z.is_m:  # (a, m, b)
        coeff = cat.chi_inv[x.g, z.g] if inverse else cat.chi_val[x.g, z.g]
        return [((M_SIMPLE, M_SIMPLE), (M_SIMPLE, M_SIMPLE), coeff)]
    if not y.is_m and not z.is_m:  # (m, a, b)
        return [((Simple(y.g * z.g), M_SIMPLE), (M_SIMPLE, M_SIMPLE), one)]
    if not x.is_m:  # (a, m, m)
        a = x.g
        return [((Simple(b), Simple(a * b)), (M_SIMPLE, Simple(a * b)), one)
                for b in cat.elements]
    if not y.is_m:  # (m, a, m)
        a = y.g
        entries = []
        for b in cat.elements:
            coeff = cat.chi_inv[a, b] if inverse else cat.chi_val[a, b]
            entries.append(((M_SIMPLE, Simple(b)), (M_SIMPLE, Simple(b)), coeff))
        return entries
    if not z.is_m:  # (m, m, a)
        a = z.g
        return [((M_SIMPLE, Simple(b * a)), (Simple(b), Simple(b * a)), one)
                for b in cat.elements]
    # (m, m, m): full tau-scaled character matrix
    table = cat.tau_chi if inverse else cat.tau_chi_inv
    return [((Simple(b), M_SIMPLE), (Simple(a), M_SIMPLE), table[a, b])
            for a in cat.elements for b in cat.elements]


def _node(x, y):
    return (x, y)


def associator_morphism(cat: MonoidalData, x, y, z) -> BlockMatrix:
    """Associator (x y) z -> x (y z) for object trees, blockwise over summands."""
    key = (x, y, z)
    cached = cat._assoc_cache.get(key)
    if cached is not None:
        return cached
    mat = _build_associator(cat, x, y, z, inverse=False)
    cat._assoc_cache[key] = mat
    return mat


def associator_inverse_morphism(cat: MonoidalData, x, y, z) -> BlockMatrix:
    """Inverse associator x (y z) -> (x y) z; on (m,m,m) it is (tau*chi(a,b))."""
    key = (x, y, z)
    cached = cat._assoc_inv_cache.get(key)
    if cached is not None:
        return cached
    mat = _build_associator(cat, x, y, z, inverse=True)
    cat._assoc_inv_cache[key] = mat
    return mat


def _build_associator(cat: MonoidalData, x, y, z, inverse: bool) -> BlockMatrix:
    left_tree = _node(_node(x, y), z)
    right_tree = _node(x, _node(y, z))
    left = cat.expansion(left_tree)
    right = cat.expansion(right_tree)
    source, target = (right, left) if inverse else (left, right)
    src_pos = {label: i for i, label in enumerate(source)}
    tgt_pos = {label: i for i, label in enumerate(target)}
    rows = [dict() for _ in target]
    for lx in cat.expansion(x):
        for ly in cat.expansion(y):
            for lz in cat.expansion(z):
                sx, sy, sz = label_total(lx), label_total(ly), label_total(lz)
                for tgt_ch, src_ch, coeff in _simple_assoc_entries(cat, sx, sy, sz, inverse):
                    s, t = src_ch
                    u, t2 = tgt_ch
                    left_label = ((lx, ly, s), lz, t)
                    right_label = (lx, (ly, lz, u), t2)
                    if inverse:
                        i = tgt_pos[left_label]
                        j = src_pos[right_label]
                    else:
                        i = tgt_pos[right_label]
                        j = src_pos[left_label]
                    rows[i][j] = coeff
    return BlockMatrix(source, target, rows)


def associator_blocks(cat: MonoidalData, x: Simple, y: Simple, z: Simple) -> BlockMatrix:
    """The normal-basis associator on a triple of simples."""
    return associator_morphism(cat, x, y, z)


def identity_morphism(cat: MonoidalData, tree) -> BlockMatrix:
    return BlockMatrix.identity(cat.expansion(tree), cat.one)


def tensor_morphism(cat: MonoidalData, f: BlockMatrix, g: BlockMatrix) -> BlockMatrix:
    """f tensor g, acting as identity on each shared fusion channel."""
    source = tuple((p, q, t)
                   for p in f.source for q in g.source
                   for t in cat.fusion_simples(label_total(p), label_total(q)))
    target = tuple((p, q, t)
                   for p in f.target for q in g.target
                   for t in cat.fusion_simples(label_total(p), label_total(q)))
    tgt_pos = {label: i for i, label in enumerate(target)}
    src_pos = {label: i for i, label in enumerate(source)}
    rows = [dict() for _ in target]
    for i2, frow in enumerate(f.rows):
        p2 = f.target[i2]
        for i1, a in frow.items():
            p1 = f.source[i1]
            if label_total(p1) != label_total(p2):
                raise ValueError("tensor factor does not preserve simple summand types")
            for j2, grow in enumerate(g.rows):
                q2 = g.target[j2]
                for j1, b in grow.items():
                    q1 = g.source[j1]
                    if label_total(q1) != label_total(q2):
                        raise ValueError("tensor factor does not preserve simple summand types")
                    coeff = a * b
                    for t in cat.fusion_simples(label_total(p1), label_total(q1)):
                        i = tgt_pos[(p2, q2, t)]
                        j = src_pos[(p1, q1, t)]
                        rows[i][j] = coeff
    return BlockMatrix(source, target, rows)


@dataclass
class PentagonFailure:
    quadruple: tuple
    lhs: BlockMatrix
    rhs: BlockMatrix


@dataclass
class PentagonReport:
    ok: bool
    checked: int
    failure: PentagonFailure | None
    mmm_inverse_ok: bool

    def summary(self) -> str:
        if self.ok:
            return f"pentagon: PASS ({self.checked} quadruples)"
        if self.failure is not None:
            return f"pentagon: FAIL at {self.failure.quadruple}"
        return "pentagon: FAIL (alpha_mmm inverse identity)"


def verify_pentagon(cat: MonoidalData) -> PentagonReport:
    """Compose both pentagon paths for every quadruple of simples.

    Stops at the first failing quadruple, reporting both composite
    matrices.  Also certifies that the displayed inverse of the
    (m, m, m) associator really is a two-sided inverse.
    """
    if cat.group.order > 16:
        raise ValueError("pentagon verification is desk scale: |G| <= 16")
    a_mmm = associator_morphism(cat, M_SIMPLE, M_SIMPLE, M_SIMPLE)
    a_mmm_inv = associator_inverse_morphism(cat, M_SIMPLE, M_SIMPLE, M_SIMPLE)
    mmm_ok = ((a_mmm @ a_mmm_inv).is_identity(cat.one)
              and (a_mmm_inv @ a_mmm).is_identity(cat.one))
    checked = 0
    for w in cat.simples:
        for x in cat.simples:
            for y in cat.simples:
                for z in cat.simples:
                    f1 = tensor_morphism(cat, associator_morphism(cat, w, x, y),
                                         identity_morphism(cat, z))
                    f2 = associator_morphism(cat, w, _node(x, y), z)
                    f3 = tensor_morphism(cat, identity_morphism(cat, w),
                                         associator_morphism(cat, x, y, z))
                    lhs = f3 @ (f2 @ f1)
                    g1 = associator_morphism(cat, _node(w, x), y, z)
                    g2 = associator_morphism(cat, w, x, _node(y, z))
                    rhs = g2 @ g1
                    checked += 1
                    if lhs != rhs:
                        return PentagonReport(False, checked,
                                              PentagonFailure((w, x, y, z), lhs, rhs),
                                              mmm_ok)
    return PentagonReport(mmm_ok, checked, None, mmm_ok)
