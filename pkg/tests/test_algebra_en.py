import random
from fractions import Fraction

import numpy as np
import pytest

from enbrauer.algebra import (BilinearForm, Hopf, NotInvertible, check_hopf_axioms, convolution,
                              convolution_inverse, counit_form, group_algebra_z2, tensor_algebra,
                              tensor_mul)
from enbrauer.en import build_en, duality_iso, hopf_automorphism
from enbrauer.fields import PrimeField
from enbrauer.linalg import identity, matrix
from enbrauer.rmatrix import build_r


def test_tensor_algebra_e1():
    h = build_en(1)
    t = tensor_algebra(h.alg, h.alg)
    assert t.dim == 16
    xc = {h.index(0, (1,)) * h.dim + 1: 1}
    assert t.mul(xc, xc) == {}
    assert not t.check_associative()


def test_hopf_axioms_small():
    assert check_hopf_axioms(group_algebra_z2()) == []
    for n in range(4):
        h = build_en(n)
        assert h.dim == 2 ** (n + 1)
        assert check_hopf_axioms(h) == []


def test_hopf_axioms_e4():
    assert check_hopf_axioms(build_en(4)) == []


def test_corrupted_antipode_reported():
    h = build_en(1)
    x = h.index(0, (1,))
    anti = [dict(s) for s in h.antipode]
    anti[x] = {x: h.field.one}
    bad = check_hopf_axioms(Hopf(h.alg, h.delta, h.eps, anti, name="bad"))
    assert any("antipode" in b for b in bad)


def test_en_relations():
    h = build_en(2)
    assert h.mul(h.x(1), h.elem(1, (2,))) == h.elem(1, (1, 2), -1)
    for i in (1, 2):
        assert h.S(h.S(h.x(i))) == {h.index(0, (i,)): -1}
    assert h.mul(h.c, h.c) == h.alg.one
    assert h.mul(h.x(1), h.x(1)) == {}
    assert build_en(0).dim == 2


def test_hopf_json_roundtrip():
    h = build_en(2)
    back = Hopf.from_json(h.to_json())
    assert back.alg.same_structure(h.alg)
    assert back.delta == h.delta and back.antipode == h.antipode


def test_convolution_examples():
    h = build_en(1)
    e = counit_form(h)
    x = h.index(0, (1,))
    f = BilinearForm(h, {(x, x): Fraction(1)})
    assert convolution(f, f)(x, x) == 0
    assert convolution(f, e) == f and convolution(e, f) == f
    assert convolution_inverse(e) == e
    with pytest.raises(NotInvertible):
        convolution_inverse(BilinearForm(h, {}))


def test_r0_is_an_involution():
    for n in (1, 2):
        r0 = build_r(n, np.zeros((n, n), dtype=object) + Fraction(0)).form
        assert convolution(r0, r0) == counit_form(r0.hopf)
        assert convolution_inverse(r0) == r0


def test_convolution_associative_random():
    rng = random.Random(3)
    h = build_en(1)
    forms = [BilinearForm(h, {(i, j): Fraction(rng.randint(-2, 2)) for i in range(4) for j in range(4)})
             for _ in range(3)]
    f, g, k = forms
    assert convolution(convolution(f, g), k) == convolution(f, convolution(g, k))


def test_convolution_inverse_random():
    h = build_en(2)
    r = build_r(2, matrix([[1, 2], [-3, 5]])).form
    inv = convolution_inverse(r)
    assert convolution(r, inv) == counit_form(h) == convolution(inv, r)


def test_duality_iso():
    for n in (0, 1, 2):
        assert duality_iso(n).check() == []
    phi = duality_iso(2)
    h = phi.h
    assert phi(h.alg.one) == {0: 1, 1: 1}
    assert phi.dual.mul(phi(h.c), phi(h.c)) == phi(h.alg.one)
    x12 = h.elem(0, (1, 2))
    assert phi(x12) == phi.dual.mul(phi(h.x(1)), phi(h.x(2)))
    assert phi.inv(phi(x12)) == x12


def test_hopf_automorphism_examples():
    h = build_en(2)
    ident = hopf_automorphism(identity(2), h)
    assert all(ident.images[i] == h.basis(i) for i in range(h.dim))
    neg = hopf_automorphism(-identity(2), h)
    assert neg(h.x(1)) == {h.index(0, (1,)): -1}
    assert neg(h.c) == h.c
    swap = hopf_automorphism(matrix([[0, 1], [1, 0]]), h)
    assert swap(h.x(1)) == h.x(2)
    assert swap(h.elem(0, (1, 2))) == h.elem(0, (1, 2), -1)
    assert swap.check() == []


def test_automorphism_composition_convention():
    h = build_en(2)
    t, s = matrix([[1, 2], [0, 1]]), matrix([[3, 0], [1, 1]])
    at, as_ = hopf_automorphism(t, h), hopf_automorphism(s, h)
    ast = hopf_automorphism(s.dot(t), h)
    for i in range(h.dim):
        assert at(as_.images[i]) == ast.images[i]


def test_en_over_prime_field():
    f = PrimeField(5)
    h = build_en(2, f)
    assert check_hopf_axioms(h) == []
    assert duality_iso(2, f).check() == []
