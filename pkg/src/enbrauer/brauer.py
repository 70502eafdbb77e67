"""
Invariants of Brauer classes over E(n): the group (Sym_{M,n,r}(k), (+)) of
blocked symmetric matrices, the kernel map chi checked on representatives,
the split maps j*, p*, and the automorphism part (A_alpha, grouplikes of the
Drinfeld double, the conjugation action L -> T L T^t).

Classes are never represented abstractly. A witness is a concrete module
algebra together with the invariants (alpha, L) read off from it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .algebra import Algebra, dual_hopf, vacc
from .en import EnHopf, build_en
from .fields import QQ, Field
from .linalg import (DimensionMismatch, NoSolution, SingularMatrix, identity, inverse, is_invertible,
                     is_skew, is_symmetric, is_zero, matrix, matrix_field, solve, zeros)
from .modalg import (EndModule, ModuleAlgebra, braided_end, check_comodule_algebra, check_module_algebra,
                     inner_decomposition, normalize_pi, strongly_inner_module, strongly_inner_test, a_sigma)
from .rmatrix import build_R
from .twisting import build_sigma


class ShapeMismatch(DimensionMismatch):
    pass


def _eq(a, b) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


# -- (Sym_{M,n,r}(k), (+)) --------------------------------------------------

def check_admissible_m(m, n: int, r: int):
    m = np.asarray(m, dtype=object)
    if m.shape != (n, n):
        raise ShapeMismatch("M must be %dx%d" % (n, n))
    if not is_skew(m):
        raise ShapeMismatch("M must be skew symmetric")
    if any(x != 0 for x in m[n - r:, :].flat) or any(x != 0 for x in m[:, n - r:].flat):
        raise ShapeMismatch("the last %d rows and columns of M must vanish" % r)
    return m


@dataclass
class SymBlockMatrix:
    """L = [[0, l1], [l1^t, l2]] with a zero (n-r)x(n-r) corner, plus the
    skew M it is multiplied with."""

    n: int
    r: int
    m: np.ndarray
    l1: np.ndarray
    l2: np.ndarray

    def __post_init__(self):
        n, r = self.n, self.r
        if not 0 <= r <= n:
            raise ShapeMismatch("need 0 <= r <= n")
        self.m = check_admissible_m(self.m, n, r)
        self.l1 = np.asarray(self.l1, dtype=object).reshape(n - r, r)
        self.l2 = np.asarray(self.l2, dtype=object).reshape(r, r)
        if not is_symmetric(self.l2):
            raise ShapeMismatch("l2 must be symmetric")

    @property
    def field(self) -> Field:
        return matrix_field(self.m)

    @property
    def l(self) -> np.ndarray:
        n, r = self.n, self.r
        out = zeros(n, n, self.field)
        out[:n - r, n - r:] = self.l1
        out[n - r:, :n - r] = self.l1.T
        out[n - r:, n - r:] = self.l2
        return out

    @classmethod
    def from_matrix(cls, l, m, r: int):
        l = np.asarray(l, dtype=object)
        m = np.asarray(m, dtype=object)
        n = l.shape[0]
        if l.shape != (n, n) or not is_symmetric(l):
            raise ShapeMismatch("L must be a symmetric square matrix")
        if any(x != 0 for x in l[:n - r, :n - r].flat):
            raise ShapeMismatch("the top-left %dx%d block of L must vanish" % (n - r, n - r))
        return cls(n, r, m, l[:n - r, n - r:], l[n - r:, n - r:])

    def with_l(self, l) -> "SymBlockMatrix":
        return SymBlockMatrix.from_matrix(l, self.m, self.r)

    def __eq__(self, other):
        return (self.n, self.r) == (other.n, other.r) and _eq(self.m, other.m) and _eq(self.l, other.l)

    def to_json(self) -> dict:
        f = self.field
        s = lambda a: [[f.to_str(x) for x in row] for row in a]  # noqa: E731
        return {"n": self.n, "r": self.r, "M": s(self.m), "L": s(self.l)}


def sym_law(l, nm, m) -> np.ndarray:
    """L (+) N = L + N - 2 NML + 2 LMN."""
    l, nm, m = (np.asarray(x, dtype=object) for x in (l, nm, m))
    return l + nm - 2 * nm.dot(m).dot(l) + 2 * l.dot(m).dot(nm)


def sym_law_transposed(l, nm, m) -> np.ndarray:
    """The other displayed form, L + N - 2 NML - 2 (NML)^t."""
    l, nm, m = (np.asarray(x, dtype=object) for x in (l, nm, m))
    t = nm.dot(m).dot(l)
    return l + nm - 2 * t - 2 * t.T


def sym_group_op(x: SymBlockMatrix, y: SymBlockMatrix) -> SymBlockMatrix:
    if (x.n, x.r) != (y.n, y.r) or not _eq(x.m, y.m):
        raise ShapeMismatch("operands need the same (n, r, M)")
    out = sym_law(x.l, y.l, x.m)
    if not _eq(out, sym_law_transposed(x.l, y.l, x.m)):
        raise AssertionError("the two forms of the group law disagree")
    return x.with_l(out)


def sym_inverse(x: SymBlockMatrix) -> SymBlockMatrix:
    return x.with_l(-x.l)


def sym_zero(n, r, m) -> SymBlockMatrix:
    m = np.asarray(m, dtype=object)
    return SymBlockMatrix.from_matrix(zeros(n, n, matrix_field(m)), m, r)


def random_admissible_m(n, r, rng: random.Random, field: Field = QQ) -> np.ndarray:
    m = zeros(n, n, field)
    for i in range(n - r):
        for j in range(i + 1, n - r):
            v = field.random(rng)
            m[i, j], m[j, i] = v, -v
    return m


def random_sym_block(n, r, m, rng: random.Random, field: Field = QQ) -> SymBlockMatrix:
    l1 = np.empty((n - r, r), dtype=object)
    for idx in np.ndindex(l1.shape):
        l1[idx] = field.random(rng)
    l2 = zeros(r, r, field)
    for i in range(r):
        for j in range(i, r):
            l2[i, j] = l2[j, i] = field.random(rng)
    return SymBlockMatrix(n, r, m, l1, l2)


def sym_group_axioms(n, r, m=None, samples=100, seed=0, field: Field = QQ) -> dict:
    """Associativity, unit and inverses on seeded random elements; the
    associativity check also records M T M = 0 for every sampled T."""
    rng = random.Random(seed)
    if m is None:
        m = random_admissible_m(n, r, rng, field)
    m = check_admissible_m(m, n, r)
    zero = sym_zero(n, r, m)
    bad = []
    for k in range(samples):
        a, b, c = (random_sym_block(n, r, m, rng, field) for _ in range(3))
        if sym_group_op(sym_group_op(a, b), c) != sym_group_op(a, sym_group_op(b, c)):
            bad.append("associativity fails at sample %d" % k)
        if not is_zero(m.dot(a.l).dot(m)):
            bad.append("M T M != 0 at sample %d" % k)
        if sym_group_op(a, zero) != a or sym_group_op(zero, a) != a:
            bad.append("0 is not a unit at sample %d" % k)
        if sym_group_op(a, sym_inverse(a)) != zero or sym_group_op(sym_inverse(a), a) != zero:
            bad.append("-L is not an inverse at sample %d" % k)
    return {"n": n, "r": r, "samples": samples, "violations": bad, "ok": not bad}


def pair_product(x: SymBlockMatrix, y: SymBlockMatrix):
    """(L1, L2)(+)(N1, N2) = (L1 + N1, L2 + N2 - 2 N1^t M' L1 + 2 L1^t M' N1)."""
    n, r = x.n, x.r
    mp = x.m[:n - r, :n - r]
    l2 = x.l2 + y.l2 - 2 * y.l1.T.dot(mp).dot(x.l1) + 2 * x.l1.T.dot(mp).dot(y.l1)
    return x.l1 + y.l1, l2


def central_extension_decompose(n, r, m=None, samples=50, seed=0, field: Field = QQ) -> dict:
    """Kernel {(0, S)} ~ (Sym_r, +), quotient (L1, L2) -> L1 onto M_{n-r,r}(k).

    Checks centrality of kernel elements against sampled elements, that the
    projection is additive, and that the pair form of the product agrees
    with the matrix form.
    """
    rng = random.Random(seed)
    if m is None:
        m = random_admissible_m(n, r, rng, field)
    m = check_admissible_m(m, n, r)
    bad = []
    for k in range(samples):
        a = random_sym_block(n, r, m, rng, field)
        b = random_sym_block(n, r, m, rng, field)
        s = random_sym_block(n, r, m, rng, field)
        s = SymBlockMatrix(n, r, m, zeros(n - r, r, field), s.l2)
        if sym_group_op(s, a) != sym_group_op(a, s):
            bad.append("(0, S) is not central at sample %d" % k)
        if not _eq(sym_group_op(s, a).l2, a.l2 + s.l2):
            bad.append("(0, S)(+)(L1, L2) != (L1, L2 + S) at sample %d" % k)
        ab = sym_group_op(a, b)
        if not _eq(ab.l1, a.l1 + b.l1):
            bad.append("projection to L1 is not additive at sample %d" % k)
        p1, p2 = pair_product(a, b)
        if not _eq(p1, ab.l1) or not _eq(p2, ab.l2):
            bad.append("pair form disagrees with the matrix law at sample %d" % k)
        # the commutator lands in the kernel
        comm = sym_group_op(sym_group_op(a, b), sym_inverse(sym_group_op(b, a)))
        if any(x != 0 for x in comm.l1.flat):
            bad.append("commutator not in the kernel at sample %d" % k)
    return {"n": n, "r": r, "kernel": "Sym_%d(k)" % r, "kernel_dim": r * (r + 1) // 2,
            "quotient": "M_{%d,%d}(k)" % (n - r, r), "quotient_dim": (n - r) * r,
            "samples": samples, "violations": bad, "ok": not bad}


# -- chi on representatives --------------------------------------------------

@dataclass
class BrauerClassWitness:
    alpha: object
    l: np.ndarray
    representative: object = None
    data: dict = dc_field(default_factory=dict)

    def same_invariants(self, other) -> bool:
        """alpha only matters up to squares (u -> t u sends alpha to t^2 alpha)."""
        return alpha_class(self.alpha) == alpha_class(other.alpha) and _eq(self.l, other.l)

    def to_json(self) -> dict:
        f = matrix_field(self.l) if self.l.size else QQ
        return {"alpha": f.to_str(self.alpha), "L": [[f.to_str(x) for x in row] for row in self.l]}


def alpha_class(alpha, field: Field | None = None):
    """Canonical representative of alpha in k^*/k^*2: the squarefree integer
    over Q, 1 or the least nonsquare over F_p."""
    if field is None:
        from .fields import field_of
        field = field_of(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    if field.char:
        if field.is_square(alpha):
            return field.one
        return next(field(v) for v in range(2, field.char) if not field.is_square(field(v)))
    a = Fraction(alpha)
    m = a.numerator * a.denominator
    sign = -1 if m < 0 else 1
    m = abs(m)
    out, d = 1, 2
    while d * d <= m:
        while m % (d * d) == 0:
            m //= d * d
        if m % d == 0:
            out *= d
            m //= d
        d += 1
    return Fraction(sign * out * m)


def witness_of(mod: EndModule, check: bool = True) -> BrauerClassWitness:
    d = normalize_pi(inner_decomposition(mod, check=check))
    bad = d.relation_violations()
    if bad:
        raise AssertionError(bad[0])
    return BrauerClassWitness(d.alpha, d.l, mod, {"inner": d})


def _sym_matrix(l):
    l = np.asarray(l, dtype=object)
    if l.ndim != 2 or l.shape[0] != l.shape[1] or not is_symmetric(l):
        raise ShapeMismatch("L must be a symmetric square matrix")
    return l


def chi_on_representatives(l, m=None, r=None, check: bool = True) -> BrauerClassWitness:
    """A^sigma with sigma = build_sigma(n, -L); its invariants must be (1, L)."""
    l = _sym_matrix(l)
    n = l.shape[0]
    if m is not None and r is not None:
        SymBlockMatrix.from_matrix(l, m, r)
    mod = a_sigma(build_sigma(n, -l))
    w = witness_of(mod, check=check)
    w.data["verified"] = w.alpha == 1 and _eq(w.l, l)
    return w


def chi_product(l, l2, m=None, check: bool = False) -> dict:
    """Invariants of A^sigma # A^sigma' under R_M against L (+) L'."""
    l, l2 = _sym_matrix(l), _sym_matrix(l2)
    n = l.shape[0]
    f = matrix_field(l)
    if m is None:
        m = zeros(n, n, f)
    m = np.asarray(m, dtype=object)
    if not is_skew(m):
        raise ShapeMismatch("M must be skew symmetric")
    a = a_sigma(build_sigma(n, -l), verify=False)
    b = a_sigma(build_sigma(n, -l2), verify=False)
    prod = braided_end(a, b, build_R(n, m, f).r)
    w = witness_of(prod, check=check)
    expected = sym_law(l, l2, m)
    return {"alpha": w.alpha, "L": w.l, "expected": expected,
            "ok": w.alpha == 1 and _eq(w.l, expected), "witness": w}


def chi_product_check(l, l2, m=None, check: bool = False) -> bool:
    return chi_product(l, l2, m, check)["ok"]


# -- split maps ---------------------------------------------------------------

def _restrict(mod: EndModule, k: int) -> EndModule:
    h = mod.h
    hk = build_en(k, h.field)
    gen_terms = {hk.index(1, ()): mod.gen_terms[h.index(1, ())]}
    for i in range(1, k + 1):
        gen_terms[hk.index(0, (i,))] = mod.gen_terms[h.index(0, (i,))]
    out = EndModule(hk, mod.dims, mod.field, gen_terms, "j*(%s)" % mod.name)
    if mod.f is not None:
        out.f = {hk.index(a, p): mod.f[h.index(a, p)] for a, p in hk.monomials
                 if h.index(a, p) in mod.f}
    return out


def _inflate(mod: EndModule, n: int) -> EndModule:
    hk = mod.h
    h = build_en(n, hk.field)
    gen_terms = {h.index(1, ()): mod.gen_terms[hk.index(1, ())]}
    for i in range(1, n + 1):
        gen_terms[h.index(0, (i,))] = mod.gen_terms[hk.index(0, (i,))] if i <= hk.n else []
    out = EndModule(h, mod.dims, mod.field, gen_terms, "p*(%s)" % mod.name)
    if mod.f is not None:
        out.f = {h.index(a, p): v for (a, p), v in
                 ((hk.monomials[i], v) for i, v in mod.f.items())}
    return out


def split_maps(n: int, r: int, m=None):
    """(j*, p*): restriction to E(n-r) = <c, x_1..x_{n-r}> and inflation
    back with x_{n-r+1}..x_n acting as zero."""
    if not 0 <= r <= n:
        raise ShapeMismatch("need 0 <= r <= n")
    if m is not None:
        check_admissible_m(m, n, r)

    def j_star(mod: EndModule) -> EndModule:
        if mod.h.n != n:
            raise ShapeMismatch("j* expects an E(%d) witness" % n)
        return _restrict(mod, n - r)

    def p_star(mod: EndModule) -> EndModule:
        if mod.h.n != n - r:
            raise ShapeMismatch("p* expects an E(%d) witness" % (n - r))
        return _inflate(mod, n)

    return j_star, p_star


# -- automorphisms: A_alpha ----------------------------------------------------

def _aut_images(h: EnHopf, t) -> list:
    from .en import HopfAutomorphism
    return HopfAutomorphism(h, t).images


def h_alpha_action(h: EnHopf, t) -> dict:
    """Matrices of m -> h . m = sum alpha(h2) m S^-1(h1) on H, for c and x_i."""
    alpha = _aut_images(h, t)
    sinv = h.antipode_inverse
    d, f = h.dim, h.field
    out = {}
    gens = [h.index(1, ())] + [h.index(0, (i,)) for i in range(1, h.n + 1)]
    for g in gens:
        mat = zeros(d, d, f)
        for m in range(d):
            for (g1, g2), c in h.delta[g].items():
                left = h.mul(alpha[g2], h.basis(m))
                for k, v in h.mul(left, sinv[g1]).items():
                    mat[k, m] += c * v
        out[g] = mat
    return out


def _end_index(i, j, d):
    return i * d + j


def a_alpha_coaction(h: EnHopf) -> list:
    """rho(f)(m) = sum f(m0)0 (x) S^-1(m1) f(m0)1 on End(H) (basis E_ij -> i*d + j),
    H_alpha being H with the coaction Delta."""
    d = h.dim
    sinv = h.antipode_inverse
    out = []
    for i in range(d):
        for j in range(d):
            rho: dict = {}
            # E_ij sends e_j to e_i; m = e_k with m0 = e_j
            for k in range(d):
                for (k0, k1), c in h.delta[k].items():
                    if k0 != j:
                        continue
                    for (i0, i1), c2 in h.delta[i].items():
                        for s, v in h.mul(sinv[k1], h.basis(i1)).items():
                            vacc(rho, (_end_index(i0, k, d), s), c * c2 * v)
            out.append(rho)
    return out


def build_A_alpha(t, h: EnHopf | None = None, with_algebra: bool = True):
    """A_alpha = End(H_alpha) for alpha = alpha_T, as an EndModule (strongly
    inner: h . m is a representation) and, optionally, as a ModuleAlgebra
    carrying the comodule structure."""
    t = np.asarray(t, dtype=object)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ShapeMismatch("T must be square")
    if not is_invertible(t):
        raise SingularMatrix("T is not invertible")
    h = h or build_en(t.shape[0], matrix_field(t))
    mod = strongly_inner_module(h, h_alpha_action(h, t), h.field, name="A_alpha")
    mod.t = t
    if with_algebra:
        ma = mod.as_module_algebra()
        ma.coaction = a_alpha_coaction(h)
        mod.module_algebra = ma
    return mod


def a_alpha_violations(mod: EndModule) -> list[str]:
    ma = mod.module_algebra
    return check_module_algebra(ma) + check_comodule_algebra(ma.alg, ma.h, ma.coaction, op=True)


# -- grouplikes of D(E(n)) and theta ------------------------------------------

def _rational_roots(coefs: list, field: Field) -> list:
    """Roots in the field of sum coefs[k] x^k."""
    while coefs and coefs[-1] == 0:
        coefs.pop()
    roots = []
    if not coefs:
        return roots
    if field.char:
        p = field.char
        if p > 200000:
            raise ValueError("root search over F_%d is not supported" % p)
        for v in range(p):
            x = field(v)
            acc = field.zero
            for c in reversed(coefs):
                acc = acc * x + c
            if acc == 0:
                roots.append(x)
        return roots
    if coefs[0] == 0:
        roots.append(Fraction(0))
        while coefs and coefs[0] == 0:
            coefs.pop(0)
    den = 1
    for c in coefs:
        den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in coefs]
    a0, an = abs(ints[0]), abs(ints[-1])
    divs = lambda x: [d for d in range(1, x + 1) if x % d == 0]  # noqa: E731
    for p in divs(a0):
        for q in divs(an):
            for s in (1, -1):
                x = Fraction(s * p, q)
                if x in roots:
                    continue
                if sum(c * x ** k for k, c in enumerate(ints)) == 0:
                    roots.append(x)
    return roots


def minimal_polynomial(alg: Algebra, x: dict) -> list:
    """Coefficients (constant first) of the monic minimal polynomial of x."""
    f = alg.field
    powers = [alg.one]
    while True:
        nxt = alg.mul(powers[-1], x)
        a = zeros(alg.dim, len(powers), f)
        for k, p in enumerate(powers):
            for i, v in p.items():
                a[i, k] = v
        b = [nxt.get(i, f.zero) for i in range(alg.dim)]
        try:
            sol = solve(a, b)
        except NoSolution:
            powers.append(nxt)
            continue
        return [-s for s in sol] + [f.one]


def algebra_characters(alg: Algebra) -> list[dict]:
    """All algebra maps alg -> k, as {basis index: value}.

    chi is a common left eigenvector: chi(a e_j) = chi(a) chi(e_j). Candidate
    values of chi(e_a) are roots of the minimal polynomial of e_a; the joint
    eigenspaces are intersected branch by branch.
    """
    f = alg.field
    d = alg.dim
    branches = [identity(d, f)]  # columns span the candidate functionals
    for a in range(d):
        ea = alg.basis(a)
        cands = _rational_roots(minimal_polynomial(alg, ea), f)
        # T[j, k]: coefficient of e_k in e_a e_j
        t = zeros(d, d, f)
        for j in range(d):
            for k, v in alg.mul(ea, alg.basis(j)).items():
                t[j, k] = v
        new = []
        for basis in branches:
            for lam in cands:
                # functionals chi = basis . y with (T - lam) chi = 0
                lhs = (t - lam * identity(d, f)).dot(basis)
                from .linalg import kernel
                ker = kernel(lhs)
                if ker:
                    new.append(basis.dot(np.column_stack(ker)))
        branches = new
    out = []
    unit = alg.one
    for basis in branches:
        # normalise chi(1) = 1
        row = zeros(1, d, f)
        for i, v in unit.items():
            row[0, i] = v
        val = row.dot(basis)[0]
        k = next((i for i, v in enumerate(val) if v != 0), None)
        if k is None:
            continue
        chi = basis[:, k] * (1 / f(val[k]))
        cand = {i: v for i, v in enumerate(chi) if v != 0}
        if cand not in out:
            out.append(cand)
    return out


def grouplikes(h) -> list[dict]:
    """G(H): elements with Delta g = g (x) g and eps(g) = 1, as characters of H*."""
    dual = dual_hopf(h)
    out = []
    for chi in algebra_characters(dual.alg):
        g = {i: v for i, v in chi.items()}
        if h.Delta(g) != _tensor_square(g) or h.counit(g) != 1:
            raise AssertionError("character of H* is not grouplike")
        out.append(g)
    return sorted(out, key=lambda g: sorted(g.items()))


def _tensor_square(g: dict) -> dict:
    return {(i, j): a * b for i, a in g.items() for j, b in g.items()}


def dual_grouplikes(h) -> list[dict]:
    """G(H^*): the characters of H, as functionals {i: lambda(e_i)}."""
    return sorted(algebra_characters(h.alg), key=lambda g: sorted(g.items()))


def functional_label(h, lam: dict) -> str:
    if all(lam.get(i, 0) == h.eps[i] for i in range(h.dim)):
        return "eps"
    c = h.index(1, ()) if isinstance(h, EnHopf) else None
    if c is not None and lam == {0: h.field.one, c: -h.field.one}:
        return "C"
    return " + ".join("(%s)%s*" % (v, h.labels[i]) for i, v in sorted(lam.items()))


def element_label(h, g: dict) -> str:
    if len(g) == 1:
        (i, v), = g.items()
        if v == 1:
            return h.labels[i]
    return " + ".join("(%s)%s" % (v, h.labels[i]) for i, v in sorted(g.items()))


def _eval(lam: dict, x: dict):
    return sum((v * lam.get(i, 0) for i, v in x.items()), 0)


def d_star_condition(h, g: dict, lam: dict) -> bool:
    """sum g h1 lambda(h2) = sum h2 g lambda(h1) for every basis h."""
    for i in range(h.dim):
        lhs: dict = {}
        rhs: dict = {}
        for (a, b), c in h.delta[i].items():
            v = lam.get(b, 0)
            if v != 0:
                for k, x in h.mul(g, h.basis(a)).items():
                    vacc(lhs, k, c * v * x)
            v = lam.get(a, 0)
            if v != 0:
                for k, x in h.mul(h.basis(b), g).items():
                    vacc(rhs, k, c * v * x)
        if lhs != rhs:
            return False
    return True


def theta_map(h, g: dict, lam: dict) -> list[dict]:
    """theta(g, lambda)(e_i) = sum lambda(h1) g h2 g^-1 lambda^-1(h3), lambda^-1 = lambda o S."""
    ginv = h.S(g)
    laminv = {}
    for i in range(h.dim):
        v = _eval(lam, h.antipode[i])
        if v != 0:
            laminv[i] = v
    images = []
    for i in range(h.dim):
        out: dict = {}
        for (a, b, c3), c in h.delta2[i].items():
            v = lam.get(a, 0) * laminv.get(c3, 0)
            if v == 0:
                continue
            for k, x in h.mul(h.mul(g, h.basis(b)), ginv).items():
                vacc(out, k, c * v * x)
        images.append(out)
    return images


def theta_matrix(h: EnHopf, g: dict, lam: dict) -> np.ndarray:
    """T with theta(g, lambda)(x_i) = sum_j t_ij x_j (and c fixed)."""
    images = theta_map(h, g, lam)
    f = h.field
    c = h.index(1, ())
    if images[c] != {c: f.one}:
        raise AssertionError("theta does not fix c")
    t = zeros(h.n, h.n, f)
    xs = {h.index(0, (j,)): j for j in range(1, h.n + 1)}
    for i in range(1, h.n + 1):
        img = images[h.index(0, (i,))]
        for k, v in img.items():
            if k not in xs:
                raise AssertionError("theta(x_%d) leaves the span of the x_j" % i)
            t[i - 1, xs[k] - 1] = v
    return t


def grouplike_computations(n: int, field: Field = QQ) -> dict:
    h = build_en(n, field)
    gs = grouplikes(h)
    lams = dual_grouplikes(h)
    pairs = [(g, lam) for g in gs for lam in lams]
    label = lambda p: "(%s,%s)" % (element_label(h, p[0]), functional_label(h, p[1]))  # noqa: E731
    d_star = [p for p in pairs if d_star_condition(h, *p)]
    theta = {label(p): theta_matrix(h, *p) for p in pairs}
    return {
        "G(H)": [element_label(h, g) for g in gs],
        "G(H*)": [functional_label(h, lam) for lam in lams],
        "G(D)": [label(p) for p in pairs],
        "G(D*)": [label(p) for p in d_star],
        "theta": theta,
    }


# -- the conjugation action and the semidirect product -------------------------

def aut_twist(mod: EndModule, t) -> EndModule:
    """B(alpha_T): same algebra, h ._alpha b = alpha_T(h) . b."""
    h = mod.h
    t = np.asarray(t, dtype=object)
    gen_terms = {h.index(1, ()): mod.gen_terms[h.index(1, ())]}
    for i in range(1, h.n + 1):
        terms = []
        for j in range(1, h.n + 1):
            s = t[i - 1, j - 1]
            if s != 0:
                terms.extend((s * c, p, q) for c, p, q in mod.gen_terms[h.index(0, (j,))])
        gen_terms[h.index(0, (i,))] = terms
    out = EndModule(h, mod.dims, mod.field, gen_terms, "%s(T)" % mod.name)
    if mod.f is not None:
        out.f = {k: v for k, v in mod.f.items() if k in (h.index(0, ()), h.index(1, ()))}
    return out


def aut_conjugation_action(t, l, verify: bool = False):
    """T L T^t. With ``verify`` the twisted representative A^L(T) is built and
    decomposed; its w'_i must be sum_j t_ij w_j and its L must be T L T^t."""
    t = np.asarray(t, dtype=object)
    l = _sym_matrix(l)
    if t.shape != l.shape:
        raise ShapeMismatch("T and L must have the same size")
    if not is_invertible(t):
        raise SingularMatrix("T is not invertible")
    out = t.dot(l).dot(t.T)
    if verify:
        n = l.shape[0]
        base = a_sigma(build_sigma(n, -l), verify=False)
        d0 = normalize_pi(inner_decomposition(base))
        d1 = normalize_pi(inner_decomposition(aut_twist(base, t)))
        if not _eq(d1.u, d0.u):
            raise AssertionError("the c-action changed under the twist")
        for i in range(n):
            expect = sum((t[i, j] * d0.w[j] for j in range(n)), 0 * d0.w[0])
            if not _eq(d1.w[i], expect):
                raise AssertionError("w'_%d != sum_j t_ij w_j" % (i + 1))
        if d1.alpha != 1 or not _eq(d1.l, out):
            raise AssertionError("A^L(T) does not have invariants T L T^t")
    return out


def semidirect_mul(x, y):
    """(T, L)(T', L') = (T T', L + T L' T^t), T taken modulo +-Id."""
    (t, l), (t2, l2) = x, y
    t, t2 = np.asarray(t, dtype=object), np.asarray(t2, dtype=object)
    return t.dot(t2), np.asarray(l, dtype=object) + t.dot(np.asarray(l2, dtype=object)).dot(t.T)


def same_class(t, t2) -> bool:
    return _eq(t, t2) or _eq(t, -np.asarray(t2, dtype=object))


def semidirect_witness(x, y) -> BrauerClassWitness:
    """Representative of the Sym part of x.y: A^L # A^L'(T) under R_0."""
    (t, l), (_, l2) = x, y
    l, l2 = _sym_matrix(l), _sym_matrix(l2)
    n = l.shape[0]
    f = matrix_field(l)
    a = a_sigma(build_sigma(n, -l), verify=False)
    b = aut_twist(a_sigma(build_sigma(n, -l2), verify=False), t)
    return witness_of(braided_end(a, b, build_R(n, zeros(n, n, f), f).r), check=False)


def _sym_basis(n, field):
    out = []
    for i in range(n):
        for j in range(i, n):
            e = zeros(n, n, field)
            e[i, j] = e[j, i] = field.one
            out.append(e)
    return out


def acts_trivially(t) -> bool:
    t = np.asarray(t, dtype=object)
    n = t.shape[0]
    return all(_eq(t.dot(e).dot(t.T), e) for e in _sym_basis(n, matrix_field(t)))


def semidirect_embedding_check(pairs, witnesses: bool = True) -> dict:
    """Semidirect law on consecutive pairs (checked against representatives
    when ``witnesses``), the conjugation identity (T,0)(Id,L)(T^-1,0) =
    (Id, T L T^t), and the injectivity probe: trivial invariants (L = 0 and
    T acting trivially on Sym_n) happen exactly for (+-Id, 0)."""
    bad = []
    pairs = [(np.asarray(t, dtype=object), _sym_matrix(l)) for t, l in pairs]
    for x, y in zip(pairs, pairs[1:]):
        t, l = semidirect_mul(x, y)
        if witnesses:
            w = semidirect_witness(x, y)
            if w.alpha != 1 or not _eq(w.l, l):
                bad.append("representative of the product has L = %s, law gives %s"
                           % (w.l.tolist(), l.tolist()))
    for t, l in pairs:
        n = t.shape[0]
        f = matrix_field(t)
        one, z = identity(n, f), zeros(n, n, f)
        tt, ll = semidirect_mul(semidirect_mul((t, z), (one, l)), (inverse(t), z))
        if not _eq(tt, one) or not _eq(ll, aut_conjugation_action(t, l)):
            bad.append("(T,0)(Id,L)(T^-1,0) != (Id, T L T^t)")
        trivial = is_zero(l) and acts_trivially(t)
        if trivial != (is_zero(l) and same_class(t, one)):
            bad.append("injectivity probe fails at T = %s, L = %s" % (t.tolist(), l.tolist()))
    return {"pairs": len(pairs), "violations": bad, "ok": not bad}


# -- invariance under strongly inner factors ------------------------------------

def random_strongly_inner(n: int, rng: random.Random, field: Field = QQ) -> EndModule:
    """End(k^2) with pi(c) = g diag(1, -1) g^-1 and pi(x_i) = a_i g E_12 g^-1
    for seeded a_i and an invertible g."""
    h = build_en(n, field)
    while True:
        g = matrix([[field.random(rng) for _ in range(2)] for _ in range(2)], field)
        if is_invertible(g):
            break
    gi = inverse(g)
    images = {h.index(1, ()): g.dot(matrix([[1, 0], [0, -1]], field)).dot(gi)}
    for i in range(1, n + 1):
        images[h.index(0, (i,))] = g.dot(matrix([[0, field.random(rng)], [0, 0]], field)).dot(gi)
    return strongly_inner_module(h, images, field, name="End(P)")


def invariance_check(l, p: EndModule, r_matrix=None) -> dict:
    """(alpha, L) of A^sigma and of A^sigma # End(P) under R_A (A = 0 when omitted)."""
    l = _sym_matrix(l)
    n = l.shape[0]
    f = matrix_field(l)
    if r_matrix is None:
        r_matrix = zeros(n, n, f)
    a = a_sigma(build_sigma(n, -l), verify=False)
    before = witness_of(a)
    after = witness_of(braided_end(a, p, build_R(n, r_matrix, f).r))
    return {"before": before, "after": after, "ok": before.same_invariants(after)}
