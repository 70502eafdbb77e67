"""
The Hopf algebras E(n): generators c, x_1..x_n with c^2 = 1, x_i^2 = 0 and
c, x_i pairwise anticommuting; Delta(c) = c (x) c, Delta(x_i) = 1 (x) x_i +
x_i (x) c, S(c) = c, S(x_i) = c x_i.

Basis monomials are c^a x_P with P a strictly increasing index tuple. The
index of c^a x_P is ``2 * pos(P) + a`` where subsets are ordered by size
and then lexicographically, so {1, c} is the leading block.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .algebra import Algebra, Hopf, dual_hopf, vacc, tensor_mul
from .fields import QQ, Field
from .linalg import SingularMatrix, is_invertible


@lru_cache(maxsize=None)
def subsets(n: int) -> tuple:
    out = []
    for s in range(n + 1):
        out.extend(itertools.combinations(range(1, n + 1), s))
    return tuple(out)


@lru_cache(maxsize=None)
def subset_pos(n: int) -> dict:
    return {p: i for i, p in enumerate(subsets(n))}


def monomial_label(a: int, p: tuple) -> str:
    s = ("c" if a else "") + "".join("x%d" % i for i in p)
    return s or "1"


def merge_sign(p: tuple, q: tuple):
    """Sign and support of x_P x_Q, or (0, None) when they overlap."""
    if set(p) & set(q):
        return 0, None
    inv = sum(1 for a in p for b in q if a > b)
    return (-1) ** inv, tuple(sorted(p + q))


def mono_mul(a: int, p: tuple, b: int, q: tuple):
    """(c^a x_P)(c^b x_Q) = sign * c^(a+b) x_(P u Q)."""
    s, r = merge_sign(p, q)
    if s == 0:
        return 0, None, None
    if b and len(p) % 2:
        s = -s
    return s, (a + b) % 2, r


class EnHopf(Hopf):
    """E(n) with helpers to move between indices and monomials."""

    def __init__(self, n: int, field: Field = QQ):
        if n < 0:
            raise ValueError("n must be nonnegative")
        self.n = n
        subs = subsets(n)
        pos = subset_pos(n)
        self.monomials = [(a, p) for p in subs for a in (0, 1)]
        d = len(self.monomials)
        one = field.one
        idx = lambda a, p: 2 * pos[p] + a  # noqa: E731
        self._idx = idx
        mult = {}
        for i, (a, p) in enumerate(self.monomials):
            for j, (b, q) in enumerate(self.monomials):
                s, c, r = mono_mul(a, p, b, q)
                if s:
                    mult[(i, j)] = {idx(c, r): field(s)}
        labels = [monomial_label(a, p) for a, p in self.monomials]
        alg = Algebra.from_mult(field, labels, mult, {0: one})
        pair = (alg, alg)
        # coproduct on generators, then multiplicatively
        dc = {(1, 1): one}
        dx = {i: {(0, idx(0, (i,))): one, (idx(0, (i,)), 1): one} for i in range(1, n + 1)}
        delta = []
        eps = []
        antipode = []
        for a, p in self.monomials:
            d_el = {(0, 0): one}
            if a:
                d_el = tensor_mul(pair, d_el, dc)
            for i in p:
                d_el = tensor_mul(pair, d_el, dx[i])
            delta.append(d_el)
            eps.append(one if not p else field.zero)
        super().__init__(alg, delta, eps, [{}] * d, name="E(%d)" % n)
        for a, p in self.monomials:
            # S is an anti-homomorphism: S(c^a x_P) = S(x_ps)...S(x_p1) S(c)^a
            s_el = {0: one}
            for i in reversed(p):
                s_el = alg.mul(s_el, {idx(1, (i,)): one})
            if a:
                s_el = alg.mul(s_el, {1: one})
            antipode.append(s_el)
        self.antipode = antipode

    def index(self, a: int, p) -> int:
        return self._idx(a % 2, tuple(p))

    def elem(self, a: int, p=(), coef=1) -> dict:
        """The element coef * c^a x_P, with P in any order (sign applied)."""
        p = tuple(p)
        s, r = 1, ()
        for i in p:
            t, r = merge_sign(r, (i,))
            if t == 0:
                return {}
            s *= t
        return {self.index(a, r): self.field(s * coef)}

    @property
    def c(self) -> dict:
        return self.elem(1)

    def x(self, i: int) -> dict:
        return self.elem(0, (i,))

    def label(self, i) -> str:
        return self.labels[i]


@lru_cache(maxsize=None)
def _build_cached(n, field):
    return EnHopf(n, field)


def build_en(n: int, field: Field = QQ) -> EnHopf:
    """E(n) as a Hopf algebra of dimension 2^(n+1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _build_cached(n, field)


# -- self-duality -----------------------------------------------------------

class DualityIso:
    """phi: E(n) -> E(n)^* with phi(1) = 1*+c*, phi(c) = 1*-c*,
    phi(x_j) = x_j* + (c x_j)*, extended multiplicatively."""

    def __init__(self, h: EnHopf):
        self.h = h
        self.dual = dual_hopf(h)
        f = h.field
        one = f.one
        dual_alg = self.dual.alg
        gens_c = {h.index(0, ()): one, h.index(1, ()): -one}
        images = []
        for a, p in h.monomials:
            img = dual_alg.one
            if a:
                img = dual_alg.mul(img, gens_c)
            for i in p:
                img = dual_alg.mul(img, {h.index(0, (i,)): one, h.index(1, (i,)): one})
            images.append(img)
        self.images = images
        self.matrix = h.matrix_of(images)
        from .linalg import inverse
        self.inverse_matrix = inverse(self.matrix)

    def __call__(self, x: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for k, c in self.images[i].items():
                vacc(out, k, a * c)
        return out

    def inv(self, f: dict) -> dict:
        d = self.h.dim
        m = self.inverse_matrix
        out: dict = {}
        for k, a in f.items():
            for j in range(d):
                if m[j, k] != 0:
                    vacc(out, j, a * m[j, k])
        return out

    def check(self) -> list[str]:
        """Verify phi is a Hopf algebra isomorphism onto the dual."""
        h, dual = self.h, self.dual
        bad = []
        lab = h.labels
        for i in range(h.dim):
            for j in range(h.dim):
                lhs = self(h.mul(h.basis(i), h.basis(j)))
                rhs = dual.mul(self.images[i], self.images[j])
                if lhs != rhs:
                    bad.append("phi not multiplicative at (%s, %s)" % (lab[i], lab[j]))
        for i in range(h.dim):
            lhs: dict = {}
            for (j, k), c in h.delta[i].items():
                for a, ca in self.images[j].items():
                    for b, cb in self.images[k].items():
                        vacc(lhs, (a, b), c * ca * cb)
            if lhs != dual.Delta(self.images[i]):
                bad.append("phi does not commute with Delta at %s" % lab[i])
            if dual.counit(self.images[i]) != h.eps[i]:
                bad.append("phi does not preserve counit at %s" % lab[i])
            if self(h.S(h.basis(i))) != dual.S(self.images[i]):
                bad.append("phi does not commute with S at %s" % lab[i])
        return bad


def duality_iso(n: int, field: Field = QQ) -> DualityIso:
    return DualityIso(build_en(n, field))


# -- Hopf automorphisms -----------------------------------------------------

class HopfAutomorphism:
    """alpha_T: c -> c, x_i -> sum_j t_ij x_j.

    Composition: alpha_T o alpha_S = alpha_(S T) (checked on generators in
    the tests), i.e. T -> alpha_T is an anti-isomorphism onto Aut_Hopf.
    """

    def __init__(self, h: EnHopf, t):
        t = np.asarray(t)
        if t.shape != (h.n, h.n):
            raise ValueError("T must be %dx%d" % (h.n, h.n))
        if not is_invertible(t):
            raise SingularMatrix("T is not invertible")
        self.h = h
        self.t = t
        f = h.field
        alg = h.alg
        gx = {i: {h.index(0, (j,)): f(t[i - 1, j - 1]) for j in range(1, h.n + 1)
                  if t[i - 1, j - 1] != 0} for i in range(1, h.n + 1)}
        images = []
        for a, p in h.monomials:
            img = alg.one
            if a:
                img = alg.mul(img, h.c)
            for i in p:
                img = alg.mul(img, gx[i])
            images.append(img)
        self.images = images
        self.matrix = h.matrix_of(images)

    def __call__(self, x: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for k, c in self.images[i].items():
                vacc(out, k, a * c)
        return out

    def check(self) -> list[str]:
        """Hopf map checks: multiplicative, commutes with Delta, eps and S."""
        h = self.h
        bad = []
        for i in range(h.dim):
            for j in range(h.dim):
                if self(h.mul(h.basis(i), h.basis(j))) != h.mul(self.images[i], self.images[j]):
                    bad.append("alpha not multiplicative at (%s, %s)" % (h.labels[i], h.labels[j]))
            lhs: dict = {}
            for (j, k), c in h.delta[i].items():
                for a, ca in self.images[j].items():
                    for b, cb in self.images[k].items():
                        vacc(lhs, (a, b), c * ca * cb)
            if lhs != h.Delta(self.images[i]):
                bad.append("alpha does not commute with Delta at %s" % h.labels[i])
            if h.counit(self.images[i]) != h.eps[i]:
                bad.append("alpha does not preserve eps at %s" % h.labels[i])
            if self(h.S(h.basis(i))) != h.S(self.images[i]):
                bad.append("alpha does not commute with S at %s" % h.labels[i])
        return bad


def hopf_automorphism(t, h: EnHopf | None = None) -> HopfAutomorphism:
    t = np.asarray(t)
    if h is None:
        from .linalg import matrix_field
        h = build_en(t.shape[0], matrix_field(t))
    return HopfAutomorphism(h, t)
