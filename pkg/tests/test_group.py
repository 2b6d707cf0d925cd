import itertools

import pytest

from neargroup.cyclo import CycloNum
from neargroup.group import (
    Bicharacter,
    GroupSpec,
    NotElementary2,
    braidability_obstruction,
    chi_eval,
    diagonal_form,
    enumerate_forms,
    form_checks,
    hyperbolic_form,
)

Z2 = GroupSpec((2,))
Z2Z2 = GroupSpec((2, 2))


def det_mod2(rows):
    # independent invertibility oracle: Leibniz expansion over permutations
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        term = 1
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total % 2


# --------------------------------------------------------------- element ops

def test_mod2_multiplication():
    g = Z2Z2.element((1, 0))
    h = Z2Z2.element((1, 1))
    assert (g * h).exponents == (0, 1)


def test_decompose():
    g = GroupSpec((2, 2, 2)).element((1, 0, 1))
    assert g.decompose() == (0, 2)
    with pytest.raises(NotElementary2):
        GroupSpec((4,)).element((1,)).decompose()


def test_enumerate_lexicographic():
    elements = Z2Z2.elements()
    assert [e.exponents for e in elements] == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_inverse_and_order():
    g = GroupSpec((4,)).element((3,))
    assert g.inverse().exponents == (1,)
    assert g.order() == 4
    assert GroupSpec((4,)).element((2,)).order() == 2
    assert GroupSpec((2, 3)).element((1, 1)).order() == 6
    assert Z2.identity().order() == 1


# --------------------------------------------------------------- evaluation

def test_chi_identity_row_trivial():
    chi = Bicharacter(Z2, ((1,),))
    one = Z2.identity()
    g = Z2.element((1,))
    for h in (one, g):
        assert chi_eval(chi, one, h) == CycloNum.one(2)


def test_chi_on_z2():
    chi = Bicharacter(Z2, ((1,),))
    g = Z2.element((1,))
    assert chi_eval(chi, g, g) == CycloNum.from_rational(2, -1)
    assert chi.eval_sign(g, g) == -1


def test_chi_hyperbolic():
    chi = hyperbolic_form(2)
    g1, g2 = Z2Z2.generator(0), Z2Z2.generator(1)
    assert chi.eval_sign(g1, g1) == 1
    assert chi.eval_sign(g1, g2) == -1
    assert chi.eval_sign(g2, g2) == 1


def test_chi_eval_in_bigger_conductor():
    chi = Bicharacter(Z2, ((1,),))
    g = Z2.element((1,))
    assert chi.eval(g, g, conductor=16) == CycloNum.root(16, 8)


def test_chi_on_z4_fourth_roots():
    chi = Bicharacter(GroupSpec((4,)), ((1,),))
    g = GroupSpec((4,)).element((1,))
    assert chi.eval(g, g, conductor=32) == CycloNum.root(32, 8)  # i
    assert chi.is_symmetric and chi.is_nondegenerate


@pytest.mark.parametrize("factors", [(2,), (2, 2), (4,), (2, 3)])
def test_bilinearity_exhaustive(factors):
    spec = GroupSpec(factors)
    gram = tuple(tuple(1 for _ in factors) for _ in factors)
    chi = Bicharacter(spec, gram)
    m = chi.natural_conductor
    for a in spec.elements():
        for b in spec.elements():
            for c in spec.elements():
                lhs = chi.eval(a * b, c, m)
                rhs = chi.eval(a, c, m) * chi.eval(b, c, m)
                assert lhs == rhs


def test_elementary2_values_square_to_one():
    for chi in enumerate_forms(2):
        for a in Z2Z2.elements():
            for b in Z2Z2.elements():
                v = chi.eval(a, b)
                assert v * v == CycloNum.one(2)


# --------------------------------------------------------------- form checks

def test_form_checks_z2():
    checks = form_checks(Bicharacter(Z2, ((1,),)))
    assert checks.symmetric and checks.nondegenerate and not checks.diag_trivial


def test_form_checks_degenerate():
    chi = Bicharacter(Z2Z2, ((0, 0), (0, 1)))
    assert not form_checks(chi).nondegenerate
    assert Z2Z2.generator(0) in chi.kernel()


def test_form_checks_hyperbolic():
    checks = form_checks(hyperbolic_form(2))
    assert checks.symmetric and checks.nondegenerate and checks.diag_trivial


# --------------------------------------------------------------- enumeration

def test_enumerate_forms_rank1():
    forms = enumerate_forms(1)
    assert len(forms) == 1
    assert forms[0].gram == ((1,),)


@pytest.mark.parametrize("rank,count", [(1, 1), (2, 4), (3, 28)])
def test_enumerate_forms_counts(rank, count):
    # frozen counts, cross-checked against the Leibniz-determinant oracle
    forms = enumerate_forms(rank)
    assert len(forms) == count
    oracle = 0
    positions = [(i, j) for i in range(rank) for j in range(i, rank)]
    for bits in itertools.product((0, 1), repeat=len(positions)):
        rows = [[0] * rank for _ in range(rank)]
        for (i, j), b in zip(positions, bits):
            rows[i][j] = rows[j][i] = b
        oracle += det_mod2(rows)
    assert oracle == count


def test_enumerated_forms_are_symmetric_nondegenerate():
    for rank in (1, 2, 3):
        for chi in enumerate_forms(rank):
            checks = form_checks(chi)
            assert checks.symmetric and checks.nondegenerate


def test_enumerate_forms_deterministic_and_bounded():
    assert [f.gram for f in enumerate_forms(2)] == [f.gram for f in enumerate_forms(2)]
    with pytest.raises(ValueError):
        enumerate_forms(5)


def test_named_forms():
    assert diagonal_form(2).gram == ((1, 0), (0, 1))
    assert hyperbolic_form(2).gram == ((0, 1), (1, 0))
    with pytest.raises(ValueError):
        hyperbolic_form(3)


# --------------------------------------------------------------- obstruction

def test_obstruction_elementary_2_groups_pass():
    assert braidability_obstruction(GroupSpec((2, 2, 2))).braidable


def test_obstruction_z3():
    report = braidability_obstruction(GroupSpec((3,)))
    assert not report.braidable
    assert report.witness.case == "odd-order"
    assert report.witness.order == 3
    assert any("radical" in line for line in report.witness.lines)


def test_obstruction_z4():
    report = braidability_obstruction(GroupSpec((4,)))
    assert not report.braidable
    assert report.witness.case == "even-order"
    assert (report.witness.element * report.witness.element).exponents != (0,)


def test_obstruction_z2_x_z4():
    report = braidability_obstruction(GroupSpec((2, 4)))
    assert not report.braidable
    assert report.witness.case == "even-order"


def test_obstruction_agrees_with_elementary_flag():
    seen = set()
    for factors in itertools.product((2, 3, 4, 5, 6, 8), repeat=2):
        spec = GroupSpec(factors)
        if spec.order > 16 or factors in seen:
            continue
        seen.add(factors)
        assert braidability_obstruction(spec).braidable == spec.is_elementary_2
    for f in (2, 3, 4, 5, 6, 7, 8, 9, 16):
        spec = GroupSpec((f,))
        assert braidability_obstruction(spec).braidable == spec.is_elementary_2


# --------------------------------------------------------------- serialization

def test_group_json_roundtrip():
    spec = GroupSpec((2, 2))
    assert GroupSpec.from_json(spec.to_json()) == spec
    chi = hyperbolic_form(2)
    assert Bicharacter.from_json(spec, chi.to_json()) == chi
