import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from enbrauer.brauer import (BrauerClassWitness, ShapeMismatch, SymBlockMatrix, a_alpha_violations,
                             alpha_class, aut_conjugation_action, build_A_alpha,
                             central_extension_decompose, check_admissible_m, chi_on_representatives,
                             chi_product, d_star_condition, dual_grouplikes, grouplike_computations,
                             grouplikes, invariance_check, random_strongly_inner, semidirect_embedding_check,
                             semidirect_mul, split_maps, sym_group_axioms, sym_group_op, sym_inverse,
                             sym_law, sym_zero, witness_of)
from enbrauer.en import build_en
from enbrauer.fields import PrimeField
from enbrauer.linalg import SingularMatrix, identity, matrix, zeros
from enbrauer.modalg import inner_decomposition, normalize_pi, strongly_inner_test

M3 = matrix([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])


def worked_example():
    l = SymBlockMatrix(3, 1, M3, matrix([[1], [0]]), matrix([[0]]))
    nn = SymBlockMatrix(3, 1, M3, matrix([[0], [1]]), matrix([[2]]))
    return l, nn


def test_worked_example_noncommutative():
    l, nn = worked_example()
    assert sym_group_op(l, nn).l[2, 2] == 6
    assert sym_group_op(nn, l).l[2, 2] == -2


def test_zero_m_is_addition():
    rng = random.Random(1)
    for _ in range(10):
        a = matrix([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
        b = matrix([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
        x = SymBlockMatrix.from_matrix(a + a.T, zeros(3, 3), 3)
        y = SymBlockMatrix.from_matrix(b + b.T, zeros(3, 3), 3)
        assert (sym_group_op(x, y).l == a + a.T + b + b.T).all()


def test_inverse_and_unit():
    l, _ = worked_example()
    zero = sym_zero(3, 1, M3)
    assert sym_group_op(l, sym_inverse(l)) == zero == sym_group_op(sym_inverse(l), l)
    assert sym_group_op(l, zero) == l


def test_shape_checks():
    with pytest.raises(ShapeMismatch):
        check_admissible_m(M3, 3, 2)
    with pytest.raises(ShapeMismatch):
        SymBlockMatrix.from_matrix(identity(3), M3, 1)
    l, _ = worked_example()
    other = SymBlockMatrix(3, 1, zeros(3, 3), matrix([[1], [0]]), matrix([[0]]))
    with pytest.raises(ShapeMismatch):
        sym_group_op(l, other)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_group_axioms(n):
    for r in range(n + 1):
        res = sym_group_axioms(n, r, samples=25, seed=n * 10 + r)
        assert res["ok"], res["violations"][:3]


def test_central_extension():
    for n, r in [(2, 1), (3, 1), (4, 2), (3, 3)]:
        res = central_extension_decompose(n, r, samples=20, seed=n + r)
        assert res["ok"], res["violations"][:3]
    full = central_extension_decompose(2, 2, samples=5)
    assert full["quotient_dim"] == 0 and full["kernel_dim"] == 3


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_sym_law_forms_agree(v):
    l = matrix([[0, 0, v[0]], [0, 0, v[1]], [v[0], v[1], v[2]]])
    nm = matrix([[0, 0, v[3]], [0, 0, v[4]], [v[3], v[4], v[5]]])
    x = SymBlockMatrix.from_matrix(l, M3, 1)
    y = SymBlockMatrix.from_matrix(nm, M3, 1)
    out = sym_group_op(x, y)
    assert (out.l == sym_law(l, nm, M3)).all()
    assert (out.l == out.l.T).all()


def test_alpha_class():
    assert alpha_class(Fraction(1, 9)) == 1
    assert alpha_class(25) == 1
    assert alpha_class(Fraction(12, 5)) == 15
    assert alpha_class(-8) == -2
    f = PrimeField(7)
    assert alpha_class(f(2)) == 1 and alpha_class(f(3)) == 3


def test_chi_representatives():
    w = chi_on_representatives(matrix([[3]]))
    assert w.data["verified"] and w.alpha == 1
    w0 = chi_on_representatives(zeros(2, 2))
    assert w0.data["verified"]
    assert strongly_inner_test(w0.data["inner"])[0]
    w1 = chi_on_representatives(matrix([[0, 1], [1, 2]]), zeros(2, 2), 1)
    assert w1.data["verified"] and not strongly_inner_test(w1.data["inner"])[0]
    assert w1.to_json() == {"alpha": "1", "L": [["0", "1"], ["1", "2"]]}


def test_chi_product_n1():
    res = chi_product(matrix([[3]]), matrix([[-5]]), check=True)
    assert res["ok"] and res["L"][0, 0] == -2


def test_split_maps():
    j, p = split_maps(1, 1)
    rep = chi_on_representatives(matrix([[2]])).representative
    e0 = j(rep)
    assert e0.h.n == 0
    assert normalize_pi(inner_decomposition(e0)).l.shape == (0, 0)
    back = j(p(e0))
    assert normalize_pi(inner_decomposition(back)).alpha == normalize_pi(inner_decomposition(e0)).alpha
    j2, p2 = split_maps(2, 1, zeros(2, 2))
    rep = chi_on_representatives(matrix([[0, 1], [1, 2]])).representative
    d = normalize_pi(inner_decomposition(j2(rep)))
    assert strongly_inner_test(d)[0] and d.l[0, 0] == 0
    with pytest.raises(ShapeMismatch):
        p2(rep)


def test_split_roundtrip_random_witness():
    rng = random.Random(6)
    j, p = split_maps(2, 1)
    base = random_strongly_inner(1, rng)
    a = witness_of(base)
    b = witness_of(j(p(base)))
    assert a.same_invariants(b)


@pytest.mark.parametrize("t", [identity(1), -identity(1), matrix([[3]]), matrix([[1, 2], [0, -1]])])
def test_a_alpha(t):
    mod = build_A_alpha(t)
    assert a_alpha_violations(mod) == []
    d = normalize_pi(inner_decomposition(mod))
    assert strongly_inner_test(d)[0]


def test_a_alpha_singular():
    with pytest.raises(SingularMatrix):
        build_A_alpha(matrix([[1, 2], [2, 4]]))


def test_grouplikes():
    for n in (1, 2):
        g = grouplike_computations(n)
        assert sorted(g["G(H)"]) == ["1", "c"]
        assert sorted(g["G(H*)"]) == ["C", "eps"]
        assert len(g["G(D)"]) == 4
        assert sorted(g["G(D*)"]) == ["(1,eps)", "(c,C)"]
        assert (g["theta"]["(c,eps)"] == -identity(n)).all()
        assert (g["theta"]["(c,C)"] == identity(n)).all()


def test_d_star_condition_labels():
    h = build_en(1)
    assert h.c in grouplikes(h)
    c = h.c
    lams = dual_grouplikes(h)
    eps = next(l for l in lams if all(l.get(i, 0) == e for i, e in enumerate(h.eps)))
    big_c = next(l for l in lams if l is not eps)
    assert d_star_condition(h, c, big_c)
    assert not d_star_condition(h, c, eps)


def test_aut_conjugation():
    l = matrix([[1, 2], [2, -1]])
    assert (aut_conjugation_action(identity(2), l) == l).all()
    assert (aut_conjugation_action(-identity(2), l) == l).all()
    assert aut_conjugation_action(matrix([[2]]), matrix([[3]]), verify=True)[0, 0] == 12
    t = matrix([[1, 1], [0, 2]])
    assert (aut_conjugation_action(t, l, verify=True) == t.dot(l).dot(t.T)).all()
    t2 = matrix([[0, 1], [1, 1]])
    lhs = aut_conjugation_action(t.dot(t2), l)
    assert (lhs == aut_conjugation_action(t, aut_conjugation_action(t2, l))).all()


def test_semidirect():
    one = identity(1)
    t, l = semidirect_mul((one, zeros(1, 1)), (one, matrix([[4]])))
    assert l[0, 0] == 4
    pairs = [(matrix([[2]]), matrix([[1]])), (matrix([[-1]]), matrix([[3]])), (one, zeros(1, 1))]
    res = semidirect_embedding_check(pairs)
    assert res["ok"], res["violations"]


def test_invariance_n1():
    rng = random.Random(9)
    for r in (zeros(1, 1), matrix([[5]])):
        res = invariance_check(matrix([[2]]), random_strongly_inner(1, rng), r)
        assert res["ok"] and res["after"].l[0, 0] == 2


def test_witness_compare_modulo_squares():
    a = BrauerClassWitness(Fraction(1, 9), matrix([[2]]))
    b = BrauerClassWitness(Fraction(1), matrix([[2]]))
    c = BrauerClassWitness(Fraction(2), matrix([[2]]))
    assert a.same_invariants(b) and not a.same_invariants(c)
