import random
from fractions import Fraction

import numpy as np
import pytest

from enbrauer.algebra import Algebra, group_algebra_z2
from enbrauer.en import build_en, hopf_automorphism
from enbrauer.linalg import identity, matrix, zeros
from enbrauer.modalg import (InnerActionData, ModuleAlgebra, NoInnerImplementation, a_sigma,
                             action_from_coaction, azumaya_check, braided_product, build_clifford,
                             check_comodule_algebra, check_module_algebra, clifford_module,
                             coaction_from_action, h_opposite, induced_subalgebra, inner_decomposition,
                             inner_module, invariants, lambda_iso, normalize_pi, strongly_inner_module,
                             strongly_inner_test, trivial_module)
from enbrauer.rmatrix import build_R
from enbrauer.twisting import build_sigma


def R0(n):
    return build_R(n, zeros(n, n)).r


def ground(m):
    F = m.alg.field
    return trivial_module(Algebra.from_mult(F, ["1"], {(0, 0): {0: F.one}}, {0: F.one}), m.h)


def end_elem(m):
    n = m.shape[0]
    return {a * n + b: m[a, b] for a in range(n) for b in range(n) if m[a, b] != 0}


def test_clifford_l0_is_en():
    cl = build_clifford(2, zeros(2, 2))
    assert cl.alg.table == build_en(2).alg.table


def test_clifford_relations():
    cl = build_clifford(1, identity(1))
    A = cl.alg
    u, v = cl.u, cl.v(1)
    assert A.mul(u, u) == A.one and A.mul(v, v) == A.one
    assert A.mul(u, v) == {k: -c for k, c in A.mul(v, u).items()}
    cl = build_clifford(2, matrix([[0, 1], [1, 0]]))
    A = cl.alg
    v1, v2 = cl.v(1), cl.v(2)
    v12 = A.mul(v1, v2)
    assert A.mul(A.mul(v1, v2), A.one) == v12
    anti = {k: A.mul(v1, v2).get(k, 0) + A.mul(v2, v1).get(k, 0) for k in range(A.dim)}
    assert {k: c for k, c in anti.items() if c} == {0: 2}
    assert A.mul(v12, v12) == {k: 2 * c for k, c in v12.items()}
    assert A.check_associative() == []


def test_clifford_comodule_algebra():
    cl = build_clifford(2, matrix([[1, 2], [2, -1]]))
    assert check_comodule_algebra(cl.alg, cl.h, cl.coaction, op=True) == []


def test_module_algebra_checker():
    h = build_en(1)
    g = group_algebra_z2()
    assert check_module_algebra(trivial_module(g.alg, h)) == []
    # c acts by 2 on the basis, x by zero
    action = [[{j: g.field(2 if i == 1 else 1)} if i < 2 else {} for j in range(2)] for i in range(h.dim)]
    bad = check_module_algebra(ModuleAlgebra(g.alg, h, action))
    assert any("h = c" in b or "(c," in b for b in bad)


def test_induced_action_on_clifford():
    a = matrix([[1, 2], [-3, 4]])
    m = clifford_module(2, matrix([[1, 0], [0, 3]]), a)
    assert check_module_algebra(m) == []
    cl, h = m.clifford, m.h
    assert m.act(h.index(1, ()), cl.u) == {cl.index(1, ()): -1}
    for i in (1, 2):
        assert m.act(h.index(1, ()), cl.v(i)) == {cl.index(0, (i,)): -1}
        for j in (1, 2):
            assert m.act(h.index(0, (j,)), cl.v(i)) == {0: a[j - 1, i - 1]}


def test_round_trip_is_alpha_a_squared():
    a = matrix([[1, 2], [-1, 3]])
    m = clifford_module(2, matrix([[1, 0], [0, 2]]), a)
    h = m.h
    co = coaction_from_action(m, build_R(2, a).r)
    back = action_from_coaction(m.alg, h, co, m.r.form)
    psi = hopf_automorphism(a.dot(a), h)
    for i in range(h.dim):
        for j in range(m.dim):
            assert back.act(i, m.alg.basis(j)) == m.act_el(psi.images[i], m.alg.basis(j))
    m0 = clifford_module(1, matrix([[5]]))
    back0 = action_from_coaction(m0.alg, m0.h, coaction_from_action(m0, R0(1)), m0.r.form)
    assert back0.action == m0.action


def test_super_tensor_sign():
    ma, mb = clifford_module(1, matrix([[2]])), clifford_module(1, matrix([[-1]]))
    p = braided_product(ma, mb, R0(1))
    assert check_module_algebra(p) == [] and p.alg.check_associative() == []
    h, d = ma.h, mb.dim
    ci = h.index(1, ())

    def parity(m, k):
        return 0 if m.act(ci, m.alg.basis(k)) == m.alg.basis(k) else 1

    for i in range(ma.dim):
        for j in range(d):
            lhs = p.alg.mul(p.alg.basis(j), p.alg.basis(i * d))
            sign = (-1) ** (parity(ma, i) * parity(mb, j))
            assert lhs == {i * d + j: sign}


def test_braided_product_with_trivial():
    ma = clifford_module(1, matrix([[3]]))
    p = braided_product(ma, ground(ma), R0(1))
    assert p.alg.table == ma.alg.table and p.action == ma.action


def test_azumaya_examples():
    h = build_en(1)
    assert azumaya_check(clifford_module(1, matrix([[2]])), R0(1))["azumaya"]
    end = strongly_inner_module(h, {1: matrix([[1, 0], [0, -1]]), 2: matrix([[0, 1], [0, 0]])})
    assert azumaya_check(end.as_module_algebra(), R0(1))["azumaya"]
    res = azumaya_check(trivial_module(group_algebra_z2().alg, h), R0(1))
    assert not res["azumaya"] and res["F_rank"] < res["dim2"]
    bar = h_opposite(clifford_module(1, matrix([[2]])), R0(1))
    assert bar.alg.check_associative() == []


def test_lambda_iso():
    h = build_en(1)
    a = clifford_module(1, matrix([[2]]))
    pi = {i: h.alg.left_matrix(h.basis(i)) for i in (1, 2)}
    b = strongly_inner_module(h, pi)
    bm = b.as_module_algebra()
    f = {k: end_elem(b.f[k][0]) for k in (0, 1)}
    res = lambda_iso(a, bm, R0(1), f)
    assert res["bijective"] and res["violations"] == []
    f[1] = end_elem(2 * b.f[1][0])
    assert lambda_iso(a, bm, R0(1), f)["violations"]


def test_lambda_with_trivial_factor_is_identity():
    a = clifford_module(1, matrix([[2]]))
    one = a.alg.field.one
    res = lambda_iso(a, ground(a), R0(1), {0: {0: one}, 1: {0: one}})
    assert (res["matrix"] == identity(a.dim)).all()


def test_trivial_action_decomposition():
    h = build_en(1)
    mod = strongly_inner_module(h, {1: identity(2), 2: zeros(2, 2)})
    d = inner_decomposition(mod)
    assert d.alpha == 1 and d.mu == [0] and d.l[0, 0] == 0
    assert (d.u == identity(2)).all() and (d.w[0] == 0).all()
    assert strongly_inner_test(d)[0]
    ind = induced_subalgebra(d, mod)
    assert ind["dim"] == 1 and ind["kernel_dim"] == 3


def test_a_sigma_trivial_and_generator_squares():
    h = build_en(1)
    triv = a_sigma(build_sigma(1, zeros(1, 1)))
    alpha, l = invariants(triv)
    assert alpha == 1 and l[0, 0] == 0
    s = build_sigma(2, matrix([[2, 1], [1, -3]]))
    mod = a_sigma(s)
    f, hh = mod.f_map, mod.h
    for j in (1, 2):
        x = hh.index(0, (j,))
        assert (f[x].dot(f[x]) == s(x, x) * identity(hh.dim)).all()


@pytest.mark.parametrize("l", [matrix([[3]]), matrix([[-2]]), matrix([[1, 2], [2, 0]])])
def test_a_sigma_recovers_l(l):
    n = l.shape[0]
    mod = a_sigma(build_sigma(n, -l))
    d = normalize_pi(inner_decomposition(mod))
    assert d.alpha == 1 and (d.l == l).all()
    assert not strongly_inner_test(d)[0]


def test_induced_subalgebra_table():
    mod = a_sigma(build_sigma(1, matrix([[-3]])))
    d = normalize_pi(inner_decomposition(mod))
    ind = induced_subalgebra(d, mod)
    assert ind["dim"] == 4 and ind["kernel_dim"] == 0
    u, w = d.u, d.w[0]
    t = ind["action"]
    assert (u.dot(u) == identity(4)).all() and (w.dot(w) == 3 * identity(4)).all()
    assert (t[("c", "u")] == u).all()
    assert (t[("x1", "u")] == -2 * u.dot(w)).all()
    assert (t[("c", "w1")] == -w).all()
    assert (t[("x1", "w1")] == -6 * identity(4)).all()


def test_normalize_pi_example():
    u = matrix([[1, 0], [0, -1]])
    w = matrix([[1, 2], [3, -1]])
    d = InnerActionData(u, [w], Fraction(1), [Fraction(1)], matrix([[7]]), build_en(0).field)
    assert d.relation_violations() == []
    nd = normalize_pi(d)
    assert nd.mu == [0] and nd.l[0, 0] == 6
    assert (nd.w[0] == matrix([[0, 2], [3, 0]])).all()
    again = normalize_pi(nd)
    assert again.l[0, 0] == 6 and (again.w[0] == nd.w[0]).all()


def test_normalized_l_independent_of_scale():
    rng = random.Random(4)
    u = matrix([[1, 0], [0, -1]])
    w = matrix([[1, 2], [3, -1]])
    F = build_en(0).field
    for _ in range(5):
        t = Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
        d = InnerActionData(t * u, [w], t * t, [t], matrix([[7]]), F)
        assert d.relation_violations() == []
        assert normalize_pi(d).l[0, 0] == 6


def test_strongly_inner_examples():
    F = build_en(0).field
    u = matrix([[2, 0], [0, -2]])
    w = matrix([[1, 1], [0, -1]])
    d = InnerActionData(u, [w], Fraction(4), [Fraction(2)], matrix([[1]]), F)
    assert d.relation_violations() == []
    ok, pi = strongly_inner_test(d)
    assert ok and (pi[1] == matrix([[1, 0], [0, -1]])).all()
    d = InnerActionData(matrix([[1, 0], [0, -1]]), [matrix([[0, 1], [1, 0]])], Fraction(1),
                        [Fraction(0)], matrix([[1]]), F)
    assert d.relation_violations() == []
    assert strongly_inner_test(d) == (False, None)


def test_inner_module_regular_clifford():
    l = matrix([[1, 2], [2, -1]])
    cl = build_clifford(2, l)
    A = cl.alg
    mod = inner_module(cl.h, A.left_matrix(cl.u), [A.left_matrix(cl.v(j)) for j in (1, 2)])
    alpha, got = invariants(mod)
    assert alpha == 1 and (got == l).all()
    assert check_module_algebra(mod.as_module_algebra()) == []


def test_inner_module_rejects_bad_data():
    h = build_en(1)
    with pytest.raises(NoInnerImplementation):
        inner_module(h, matrix([[1, 0], [0, -1]]), [matrix([[1, 0], [0, 0]])])
