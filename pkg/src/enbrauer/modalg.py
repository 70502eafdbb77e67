"""
E(n)-module algebras: Clifford algebras, actions induced by (co)quasi-triangular
structures, braided products, the H-opposite and Azumaya maps, and the
inner-action data (u, w_i; alpha, mu, L) of a module algebra End(V).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .algebra import Algebra, BilinearForm, Hopf, convolution_inverse, tensor_mul, vacc, vadd, vscale
from .en import EnHopf, build_en, subset_pos, subsets
from .fields import QQ
from .linalg import (LinAlgError, NotSymmetric, SparseSystem, inverse, is_symmetric, matrix_field,
                     rank, zeros)


class NoInnerImplementation(LinAlgError):
    pass


class NotStronglyInner(LinAlgError):
    pass


def _apply(images, x: dict) -> dict:
    """Linear map given by basis images."""
    out: dict = {}
    for i, a in x.items():
        for k, c in images[i].items():
            vacc(out, k, a * c)
    return out


class ModuleAlgebra:
    """An algebra with a left H-action and, optionally, a right H-coaction.

    ``action[h][a]`` is the image of basis a under basis h; ``coaction[a]`` is
    ``{(a0, h1): coef}``.
    """

    def __init__(self, alg: Algebra, h: Hopf, action, coaction=None, name="A"):
        self.alg = alg
        self.h = h
        self.action = action
        self.coaction = coaction
        self.name = name

    @property
    def dim(self):
        return self.alg.dim

    def act(self, hi: int, x: dict) -> dict:
        return _apply(self.action[hi], x)

    def act_el(self, hx: dict, x: dict) -> dict:
        out: dict = {}
        for hi, a in hx.items():
            for k, c in self.act(hi, x).items():
                vacc(out, k, a * c)
        return out

    def action_matrix(self, hi: int) -> np.ndarray:
        m = zeros(self.dim, self.dim, self.alg.field)
        for j, img in enumerate(self.action[hi]):
            for k, c in img.items():
                m[k, j] = c
        return m

    def with_action(self, action, name=None):
        return ModuleAlgebra(self.alg, self.h, action, self.coaction, name or self.name)


def trivial_module(alg: Algebra, h: Hopf, name="A") -> ModuleAlgebra:
    action = [[{j: h.eps[i]} if h.eps[i] != 0 else {} for j in range(alg.dim)]
              for i in range(h.dim)]
    coaction = [{(j, h.unit_index): alg.field.one} for j in range(alg.dim)]
    return ModuleAlgebra(alg, h, action, coaction, name)


def check_module_algebra(m: ModuleAlgebra) -> list[str]:
    """Exhaustive module-algebra axioms on basis elements."""
    h, alg = m.h, m.alg
    bad = []
    one = alg.one
    for hi in range(h.dim):
        if m.act(hi, one) != vscale(one, h.eps[hi]):
            bad.append("h . 1 != eps(h) 1 at h = %s" % h.labels[hi])
    for hi in range(h.dim):
        for hj in range(h.dim):
            prod = h.mul(h.basis(hi), h.basis(hj))
            for a in range(alg.dim):
                if m.act_el(prod, alg.basis(a)) != m.act(hi, m.act(hj, alg.basis(a))):
                    bad.append("(hl) . a != h . (l . a) at (%s, %s, %s)"
                               % (h.labels[hi], h.labels[hj], alg.labels[a]))
    for hi in range(h.dim):
        for a in range(alg.dim):
            for b in range(alg.dim):
                lhs = m.act(hi, alg.mul(alg.basis(a), alg.basis(b)))
                rhs: dict = {}
                for (h1, h2), c in h.delta[hi].items():
                    t = alg.mul(m.act(h1, alg.basis(a)), m.act(h2, alg.basis(b)))
                    for k, v in t.items():
                        vacc(rhs, k, c * v)
                if lhs != rhs:
                    bad.append("h . (ab) != (h1 . a)(h2 . b) at (%s, %s, %s)"
                               % (h.labels[hi], alg.labels[a], alg.labels[b]))
    return bad


def opposite(alg: Algebra) -> Algebra:
    d = alg.dim
    table = [[alg.table[j][i] for j in range(d)] for i in range(d)]
    return Algebra(alg.field, alg.labels, table, alg.unit)


def check_comodule_algebra(alg: Algebra, h: Hopf, coaction, op: bool = True) -> list[str]:
    """Right comodule algebra axioms for ``coaction[a] = {(a0, h1): c}``.

    With ``op`` (the default) rho is multiplicative into A (x) H^op, i.e.
    rho(ab) = a0 b0 (x) b1 a1; this is the structure carried by Yetter-Drinfeld
    module algebras here.
    """
    bad = []
    pair = (alg, opposite(h.alg) if op else h.alg)
    for a in range(alg.dim):
        # (rho (x) id) rho = (id (x) Delta) rho
        lhs: dict = {}
        for (a0, h1), c in coaction[a].items():
            for (b0, g1), c2 in coaction[a0].items():
                vacc(lhs, (b0, g1, h1), c * c2)
        rhs: dict = {}
        for (a0, h1), c in coaction[a].items():
            for (g1, g2), c2 in h.delta[h1].items():
                vacc(rhs, (a0, g1, g2), c * c2)
        if lhs != rhs:
            bad.append("coassociativity fails at %s" % alg.labels[a])
        back: dict = {}
        for (a0, h1), c in coaction[a].items():
            if h.eps[h1] != 0:
                vacc(back, a0, c * h.eps[h1])
        if back != alg.basis(a):
            bad.append("counit fails at %s" % alg.labels[a])
    for a in range(alg.dim):
        for b in range(alg.dim):
            lhs = _apply_co(coaction, alg.mul(alg.basis(a), alg.basis(b)))
            rhs = tensor_mul(pair, coaction[a], coaction[b])
            if lhs != rhs:
                bad.append("rho not multiplicative at (%s, %s)" % (alg.labels[a], alg.labels[b]))
    unit = _apply_co(coaction, alg.one)
    if unit != {(k, h.unit_index): c for k, c in alg.one.items()}:
        bad.append("rho(1) != 1 (x) 1")
    return bad


def _apply_co(coaction, x: dict) -> dict:
    out: dict = {}
    for i, a in x.items():
        for k, c in coaction[i].items():
            vacc(out, k, a * c)
    return out


# -- Clifford algebras ------------------------------------------------------

class CliffordAlgebra:
    """Cl(alpha, mu, L): generators u = g_0, v_i = g_i with
    g_i g_j + g_j g_i = 2 b_ij for the Gram matrix b = [[alpha, mu^t], [mu, L]].

    Basis u^a v_P indexed like E(n) (2 * pos(P) + a). For alpha = 1, mu = 0
    this is Cl(L) with u^2 = 1, u v_i = -v_i u, v_j^2 = l_jj.
    """

    def __init__(self, n: int, l, alpha=1, mu=None, field=None):
        l = np.asarray(l) if n else np.empty((0, 0), dtype=object)
        if field is None:
            field = matrix_field(l) if l.size else QQ
        if l.shape != (n, n) or not is_symmetric(l):
            raise NotSymmetric("Cl(L) needs a symmetric n x n matrix")
        self.n = n
        self.field = field
        self.l = np.array([[field(x) for x in row] for row in l], dtype=object).reshape(n, n)
        self.alpha = field(alpha)
        self.mu = [field(x) for x in (mu if mu is not None else [0] * n)]
        b = zeros(n + 1, n + 1, field)
        b[0, 0] = self.alpha
        for i in range(n):
            b[0, i + 1] = b[i + 1, 0] = self.mu[i]
            for j in range(n):
                b[i + 1, j + 1] = self.l[i, j]
        self.gram = b
        subs = subsets(n)
        pos = subset_pos(n)
        self.monomials = [(a, p) for p in subs for a in (0, 1)]
        self._index = lambda a, p: 2 * pos[tuple(p)] + a  # noqa: E731
        labels = [(("u" if a else "") + "".join("v%d" % i for i in p)) or "1"
                  for a, p in self.monomials]
        mult = {}
        for i, (a, p) in enumerate(self.monomials):
            for j, (b2, q) in enumerate(self.monomials):
                word = ((0,) if b2 else ()) + tuple(q)
                x = {self._key(a, p): field.one}
                for g in word:
                    x = self._times_gen(x, g)
                mult[(i, j)] = {self._from_key(k): c for k, c in x.items() if c != 0}
        self.alg = Algebra.from_mult(field, labels, mult, {0: field.one})
        self.coaction = None

    @staticmethod
    def _key(a, p):
        return ((0,) if a else ()) + tuple(p)

    def _from_key(self, s: tuple) -> int:
        if s and s[0] == 0:
            return self._index(1, s[1:])
        return self._index(0, s)

    def _times_gen(self, x: dict, g: int) -> dict:
        out: dict = {}
        for s, c in x.items():
            for t, v in self._mono_gen(s, g).items():
                vacc(out, t, c * v)
        return out

    @lru_cache(maxsize=None)
    def _mono_gen_cached(self, s, g):
        return self._mono_gen_raw(s, g)

    def _mono_gen(self, s: tuple, g: int) -> dict:
        return self._mono_gen_cached(s, g)

    def _mono_gen_raw(self, s: tuple, g: int) -> dict:
        """e_S g, with S strictly increasing, in normal form."""
        if not s:
            return {(g,): self.field.one}
        last, rest = s[-1], s[:-1]
        if last < g:
            return {s + (g,): self.field.one}
        if last == g:
            return {rest: self.gram[g, g]} if self.gram[g, g] != 0 else {}
        # e_rest (g_last g) = e_rest (2 b - g g_last)
        out: dict = {}
        b = self.gram[last, g]
        if b != 0:
            out[rest] = 2 * b
        for t, c in self._mono_gen(rest, g).items():
            for t2, c2 in self._mono_gen(t, last).items():
                vacc(out, t2, -c * c2)
        return out

    def __hash__(self):
        return id(self)

    @property
    def u(self) -> dict:
        return {self._index(1, ()): self.field.one}

    def v(self, i: int) -> dict:
        return {self._index(0, (i,)): self.field.one}

    def index(self, a, p) -> int:
        return self._index(a, p)


def build_clifford(n: int, l, alpha=1, mu=None, field=None, h: EnHopf | None = None,
                   op: bool = True) -> CliffordAlgebra:
    """Cl(L) (or Cl(alpha, mu, L)); for alpha = 1, mu = 0 also attaches the
    comodule structure rho(u) = u (x) c, rho(v_j) = 1 (x) x_j + v_j (x) c,
    extended multiplicatively into A (x) H^op (or A (x) H when ``op`` is
    false; the generator values satisfy the relations either way)."""
    cl = CliffordAlgebra(n, l, alpha, mu, field)
    if cl.alpha == 1 and all(x == 0 for x in cl.mu):
        h = h or build_en(n, cl.field)
        cl.h = h
        cl.coaction = clifford_coaction(cl, h, op)
    return cl


def clifford_coaction(cl: CliffordAlgebra, h: EnHopf, op: bool = True) -> list[dict]:
    one = cl.field.one
    pair = (cl.alg, opposite(h.alg) if op else h.alg)
    rho_u = {(cl.index(1, ()), h.index(1, ())): one}
    rho_v = {i: {(0, h.index(0, (i,))): one, (cl.index(0, (i,)), h.index(1, ())): one}
             for i in range(1, cl.n + 1)}
    out = []
    for a, p in cl.monomials:
        x = {(0, 0): one}
        if a:
            x = tensor_mul(pair, x, rho_u)
        for i in p:
            x = tensor_mul(pair, x, rho_v[i])
        out.append(x)
    return out


# -- actions induced by (co)quasi-triangular structures ---------------------

def action_from_coaction(alg: Algebra, h: Hopf, coaction, r: BilinearForm, name="A") -> ModuleAlgebra:
    """h . a = sum r(h (x) a1) a0."""
    action = []
    for hi in range(h.dim):
        row = []
        for a in range(alg.dim):
            out: dict = {}
            for (a0, a1), c in coaction[a].items():
                v = r(hi, a1)
                if v != 0:
                    vacc(out, a0, c * v)
            row.append(out)
        action.append(row)
    return ModuleAlgebra(alg, h, action, coaction, name)


def coaction_from_action(m: ModuleAlgebra, rmat: dict) -> list[dict]:
    """rho(a) = sum (R2 . a) (x) R1, into A (x) H^op."""
    out = []
    for a in range(m.dim):
        x: dict = {}
        for (r1, r2), c in rmat.items():
            for k, v in m.act(r2, m.alg.basis(a)).items():
                vacc(x, (k, r1), c * v)
        out.append(x)
    return out


def clifford_module(n: int, l, a=None, field=None) -> ModuleAlgebra:
    """Cl(L) with the coaction of its generators and the action induced by r_A
    (A = 0 when omitted)."""
    from .rmatrix import build_r
    cl = build_clifford(n, l, field=field)
    if a is None:
        a = zeros(n, n, cl.field)
    r = build_r(n, a, cl.field)
    m = action_from_coaction(cl.alg, cl.h, cl.coaction, r.form, "Cl(L)")
    m.clifford = cl
    m.r = r
    return m


# -- braided products, H-opposite, Azumaya maps (structure constants) -------

def braided_product(a: ModuleAlgebra, b: ModuleAlgebra, rmat: dict, name=None) -> ModuleAlgebra:
    """A # B with (a # b)(a' # b') = sum a (R2 . a') # (R1 . b) b' and the
    diagonal action; basis index i * dim B + j."""
    if a.h is not b.h:
        raise ValueError("module algebras over different Hopf algebras")
    h = a.h
    A, B = a.alg, b.alg
    dA, dB = A.dim, B.dim
    mult = {}
    for i in range(dA):
        for j in range(dB):
            for i2 in range(dA):
                # R2 . a' and R1 . b for every term of R
                for j2 in range(dB):
                    out: dict = {}
                    for (r1, r2), c in rmat.items():
                        left = A.mul(A.basis(i), a.act(r2, A.basis(i2)))
                        if not left:
                            continue
                        right = B.mul(b.act(r1, B.basis(j)), B.basis(j2))
                        for k, x in left.items():
                            for m, y in right.items():
                                vacc(out, k * dB + m, c * x * y)
                    if out:
                        mult[(i * dB + j, i2 * dB + j2)] = out
    labels = ["%s#%s" % (x, y) for x in A.labels for y in B.labels]
    unit = {k1 * dB + k2: c1 * c2 for k1, c1 in A.unit.items() for k2, c2 in B.unit.items()}
    alg = Algebra.from_mult(A.field, labels, mult, unit)
    action = []
    for hi in range(h.dim):
        row = []
        for i in range(dA):
            for j in range(dB):
                out = {}
                for (h1, h2), c in h.delta[hi].items():
                    for k, x in a.act(h1, A.basis(i)).items():
                        for m, y in b.act(h2, B.basis(j)).items():
                            vacc(out, k * dB + m, c * x * y)
                row.append(out)
        action.append(row)
    return ModuleAlgebra(alg, h, action, None, name or "%s#%s" % (a.name, b.name))


def h_opposite(a: ModuleAlgebra, rmat: dict) -> ModuleAlgebra:
    """Same module, product a . a' = sum (R2 . a')(R1 . a)."""
    A = a.alg
    mult = {}
    for i in range(A.dim):
        for j in range(A.dim):
            out: dict = {}
            for (r1, r2), c in rmat.items():
                t = A.mul(a.act(r2, A.basis(j)), a.act(r1, A.basis(i)))
                for k, x in t.items():
                    vacc(out, k, c * x)
            if out:
                mult[(i, j)] = out
    alg = Algebra.from_mult(A.field, A.labels, mult, A.unit)
    return ModuleAlgebra(alg, a.h, a.action, None, a.name + "-bar")


def azumaya_maps(a: ModuleAlgebra, rmat: dict):
    """Matrices of F: A # Abar -> End(A) and G: Abar # A -> End(A)^op.

    F(a # b)(c) = sum a (R2 . c)(R1 . b),  G(a # b)(c) = sum (R2 . a)(R1 . c) b.
    Column i * d + j is the image of e_i # e_j flattened as End(A) entries
    (row k, column m) -> k * d + m.
    """
    A = a.alg
    d = A.dim
    f = zeros(d * d, d * d, A.field)
    g = zeros(d * d, d * d, A.field)
    for i in range(d):
        for j in range(d):
            col = i * d + j
            for m in range(d):
                for (r1, r2), c in rmat.items():
                    t = A.mul(A.mul(A.basis(i), a.act(r2, A.basis(m))), a.act(r1, A.basis(j)))
                    for k, x in t.items():
                        f[k * d + m, col] += c * x
                    t = A.mul(A.mul(a.act(r2, A.basis(i)), a.act(r1, A.basis(m))), A.basis(j))
                    for k, x in t.items():
                        g[k * d + m, col] += c * x
    return f, g


def azumaya_check(a: ModuleAlgebra, rmat: dict) -> dict:
    f, g = azumaya_maps(a, rmat)
    d2 = a.dim ** 2
    rf, rg = rank(f), rank(g)
    return {"F_rank": rf, "G_rank": rg, "dim2": d2, "azumaya": rf == d2 and rg == d2}


# -- actions on End(V) as sums of sandwiches --------------------------------
#
# An action on End(V), V = V_1 (x) ... (x) V_m, is stored per basis element h
# as a list of terms (coef, P, Q) meaning h -> X |-> sum coef P X Q, where P
# and Q are tuples of factor matrices (Kronecker products). Composition and
# tensoring stay factor-wise, so nothing of size dim(V)^2 is ever formed
# unless asked for.

def _kron(factors):
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def _fmul(p, q):
    return tuple(x.dot(y) for x, y in zip(p, q))


def _ident(dims, field):
    out = []
    for d in dims:
        m = zeros(d, d, field)
        for i in range(d):
            m[i, i] = field.one
        out.append(m)
    return tuple(out)


def compose_terms(outer, inner):
    """Terms of X |-> outer(inner(X))."""
    return [(c1 * c2, _fmul(p1, p2), _fmul(q2, q1)) for c1, p1, q1 in outer for c2, p2, q2 in inner]


class EndModule:
    """End(V) with an H-action given by sandwich terms on generators.

    ``gen_terms`` maps basis indices of c and each x_i to term lists; other
    basis elements act through monomials in the generators. ``f`` optionally
    holds an algebra map implementing the action on a sub Hopf algebra
    (index -> tuple of factor matrices) for the Lambda construction.
    """

    def __init__(self, h: EnHopf, dims, field, gen_terms: dict, name="End(V)"):
        self.h = h
        self.dims = tuple(dims)
        self.N = int(np.prod(self.dims))
        self.field = field
        self.gen_terms = gen_terms
        self.name = name
        self.f = None
        self._cache = {}

    def terms(self, hi: int):
        """Terms for the basis element c^a x_P (a product of generators)."""
        if hi in self._cache:
            return self._cache[hi]
        h = self.h
        a, p = h.monomials[hi]
        t = [(self.field.one, _ident(self.dims, self.field), _ident(self.dims, self.field))]
        gens = ([h.index(1, ())] if a else []) + [h.index(0, (i,)) for i in p]
        for g in reversed(gens):
            t = compose_terms(self.gen_terms[g], t)
        self._cache[hi] = t
        return t

    def act(self, hi: int, x: np.ndarray) -> np.ndarray:
        out = zeros(self.N, self.N, self.field)
        for c, p, q in self.terms(hi):
            out = out + c * (_kron(p).dot(x).dot(_kron(q)))
        return out

    def act_on_unit_column(self, hi: int, i: int, j: int = 0) -> np.ndarray:
        """h . E_ij without forming full products."""
        out = zeros(self.N, self.N, self.field)
        for c, p, q in self.terms(hi):
            col = _kron([f[:, k] for f, k in zip(p, _split(i, self.dims))])
            row = _kron([f[k, :] for f, k in zip(q, _split(j, self.dims))])
            out = out + np.outer(c * col, row)
        return out

    def unit_column_times(self, hi: int, i: int, j: int, v) -> np.ndarray:
        """(h . E_ij) v for a vector v, or column v of h . E_ij when v is an int."""
        out = zeros(self.N, 1, self.field)[:, 0]
        for c, p, q in self.terms(hi):
            row = _kron([f[k, :] for f, k in zip(q, _split(j, self.dims))])
            s = row[v] if isinstance(v, (int, np.integer)) else row.dot(v)
            if s == 0:
                continue
            col = _kron([f[:, k] for f, k in zip(p, _split(i, self.dims))])
            out = out + (c * s) * col
        return out

    def as_module_algebra(self) -> ModuleAlgebra:
        """Structure constants of End(V) (basis E_ij -> i * N + j) with the
        action; only sensible for small N."""
        N, f = self.N, self.field
        mult = {}
        for i in range(N):
            for j in range(N):
                for k in range(N):
                    mult[(i * N + j, j * N + k)] = {i * N + k: f.one}
        labels = ["E%d_%d" % (i, j) for i in range(N) for j in range(N)]
        alg = Algebra.from_mult(f, labels, mult, {i * N + i: f.one for i in range(N)})
        action = []
        for hi in range(self.h.dim):
            row = []
            for i in range(N):
                for j in range(N):
                    img = self.act_on_unit_column(hi, i, j)
                    row.append({a * N + b: img[a, b] for a in range(N) for b in range(N)
                                if img[a, b] != 0})
            action.append(row)
        return ModuleAlgebra(alg, self.h, action, None, self.name)


def _split(i: int, dims) -> list:
    out = []
    for d in reversed(dims):
        out.append(i % d)
        i //= d
    return out[::-1]


def _as_matrix(x) -> np.ndarray:
    return np.asarray(x, dtype=object)


def strongly_inner_module(h: EnHopf, images: dict, field=None, name="End(P)") -> EndModule:
    """End(P) with h . X = sum pi(h1) X pi(S h2) for the algebra map pi given
    on generators (index -> matrix); pi is extended multiplicatively and
    checked against the E(n) relations."""
    gens = [h.index(1, ())] + [h.index(0, (i,)) for i in range(1, h.n + 1)]
    first = _as_matrix(images[gens[0]])
    field = field or matrix_field(first)
    N = first.shape[0]
    pi = _extend_multiplicatively(h, {g: _as_matrix(images[g]) for g in gens}, N, field)
    check = _algebra_map_violations(h, pi)
    if check:
        raise NotStronglyInner(check[0])
    s = h.antipode
    gen_terms = {}
    for g in gens:
        t = []
        for (g1, g2), c in h.delta[g].items():
            q = zeros(N, N, field)
            for k, v in s[g2].items():
                q = q + v * pi[k]
            t.append((c, (pi[g1],), (q,)))
        gen_terms[g] = t
    mod = EndModule(h, (N,), field, gen_terms, name)
    mod.f = {i: (pi[i],) for i in range(h.dim)}
    mod.pi = pi
    return mod


def inner_module(h: EnHopf, u, ws, field=None, name="End(V)") -> EndModule:
    """End(V) with c -> a = u a u^-1 and x_i -> a = w_i (c -> a) - a w_i.

    This is a module algebra when u^2, w_i u + u w_i and w_i w_j + w_j w_i are
    scalars with u w_i + w_i u = 0 (the relations are checked)."""
    u = _as_matrix(u)
    ws = [_as_matrix(w) for w in ws]
    field = field or matrix_field(u)
    N = u.shape[0]
    uinv = inverse(u)
    one = zeros(N, N, field)
    for i in range(N):
        one[i, i] = field.one
    d = InnerActionData(u, ws, u.dot(u)[0, 0], [field.zero] * len(ws),
                        np.array([[(a.dot(b) + b.dot(a))[0, 0] / 2 for b in ws] for a in ws], dtype=object)
                        .reshape(len(ws), len(ws)), field)
    bad = d.relation_violations()
    if bad:
        raise NoInnerImplementation(bad[0])
    gen_terms = {h.index(1, ()): [(field.one, (u,), (uinv,))]}
    for i, w in enumerate(ws, 1):
        gen_terms[h.index(0, (i,))] = [(field.one, (w.dot(u),), (uinv,)), (-field.one, (one,), (w,))]
    return EndModule(h, (N,), field, gen_terms, name)


def _extend_multiplicatively(h: EnHopf, gen_images: dict, N, field) -> list:
    one = zeros(N, N, field)
    for i in range(N):
        one[i, i] = field.one
    out = []
    for a, p in h.monomials:
        m = one
        if a:
            m = m.dot(gen_images[h.index(1, ())])
        for i in p:
            m = m.dot(gen_images[h.index(0, (i,))])
        out.append(m)
    return out


def _algebra_map_violations(h: EnHopf, images: list) -> list[str]:
    bad = []
    for i in range(h.dim):
        for j in range(h.dim):
            lhs = images[i].dot(images[j])
            rhs = None
            for k, c in h.mul(h.basis(i), h.basis(j)).items():
                rhs = c * images[k] if rhs is None else rhs + c * images[k]
            if rhs is None:
                rhs = 0 * lhs
            if not all(x == y for x, y in zip(lhs.flat, rhs.flat)):
                bad.append("not multiplicative at (%s, %s)" % (h.labels[i], h.labels[j]))
    return bad


# -- A^sigma on End(E(n)) ---------------------------------------------------

def sigma_regular_map(sigma: BilinearForm) -> list:
    """f(h)(a) = sum sigma(h1 (x) a1) h2 a2, as matrices on the basis of H."""
    h = sigma.hopf
    d, field = h.dim, h.field
    out = []
    for hi in range(d):
        m = zeros(d, d, field)
        for a in range(d):
            for (h1, h2), c in h.delta[hi].items():
                for (a1, a2), c2 in h.delta[a].items():
                    v = sigma(h1, a1)
                    if v == 0:
                        continue
                    for k, x in h.mul(h.basis(h2), h.basis(a2)).items():
                        m[k, a] += c * c2 * v * x
        out.append(m)
    return out


def a_sigma(sigma, sigma_inv: BilinearForm | None = None, verify: bool = True) -> EndModule:
    """End(E(n)) with h -> F = sum f(h1) F f^-1(h2), where
    f^-1(h) = sum sigma^-1(S h2 (x) h3) f(S h1)."""
    form = getattr(sigma, "form", sigma)
    h = form.hopf
    field = h.field
    d = h.dim
    if sigma_inv is None:
        sigma_inv = convolution_inverse(form)
    f = sigma_regular_map(form)
    s = h.antipode
    finv = []
    for hi in range(d):
        m = zeros(d, d, field)
        for (h1, h2, h3), c in h.delta2[hi].items():
            for k2, v2 in s[h2].items():
                w = sigma_inv(k2, h3)
                if w == 0:
                    continue
                for k1, v1 in s[h1].items():
                    m = m + (c * v2 * w * v1) * f[k1]
        finv.append(m)
    gens = [h.index(1, ())] + [h.index(0, (i,)) for i in range(1, h.n + 1)]
    gen_terms = {g: [(c, (f[g1],), (finv[g2],)) for (g1, g2), c in h.delta[g].items()] for g in gens}
    mod = EndModule(h, (d,), field, gen_terms, "A^sigma")
    mod.f_map = f
    mod.f_inv = finv
    mod.sigma = form
    # f restricted to the group algebra of c is an algebra map (sigma(c (x) c) = 1)
    mod.f = {h.index(0, ()): (f[h.index(0, ())],), h.index(1, ()): (f[h.index(1, ())],)}
    if verify:
        bad = a_sigma_violations(mod)
        if bad:
            raise AssertionError(bad[0])
    return mod


def a_sigma_violations(mod: EndModule) -> list[str]:
    """Convolution inverse, f(h) f(l) = sum sigma(h1 (x) l1) f(h2 l2), on all basis pairs."""
    h, f, finv, sigma = mod.h, mod.f_map, mod.f_inv, mod.sigma
    d = h.dim
    bad = []
    for hi in range(d):
        acc = zeros(d, d, h.field)
        acc2 = zeros(d, d, h.field)
        for (h1, h2), c in h.delta[hi].items():
            acc = acc + c * f[h1].dot(finv[h2])
            acc2 = acc2 + c * finv[h1].dot(f[h2])
        for m in (acc, acc2):
            for i in range(d):
                for j in range(d):
                    if m[i, j] != (h.eps[hi] if i == j else 0):
                        bad.append("f^-1 is not a convolution inverse at %s" % h.labels[hi])
                        break
                else:
                    continue
                break
    for hi in range(d):
        for li in range(d):
            lhs = f[hi].dot(f[li])
            rhs = zeros(d, d, h.field)
            for (h1, h2), a in h.delta[hi].items():
                for (l1, l2), b in h.delta[li].items():
                    v = sigma(h1, l1)
                    if v == 0:
                        continue
                    for k, x in h.mul(h.basis(h2), h.basis(l2)).items():
                        rhs = rhs + (a * b * v * x) * f[k]
            if any(x != y for x, y in zip(lhs.flat, rhs.flat)):
                bad.append("f(h) f(l) != sum sigma(h1 (x) l1) f(h2 l2) at (%s, %s)"
                           % (h.labels[hi], h.labels[li]))
    return bad


# -- inner decomposition ----------------------------------------------------

class InnerActionData:
    def __init__(self, u, w, alpha, mu, l, field):
        self.u = u
        self.w = w
        self.alpha = alpha
        self.mu = mu
        self.l = l
        self.field = field

    def __repr__(self):
        return "InnerActionData(alpha=%s, mu=%s, L=%s)" % (self.alpha, self.mu, self.l.tolist())

    def relation_violations(self) -> list[str]:
        u, w, f = self.u, self.w, self.field
        n = len(w)
        bad = []
        if not _is_scalar(u.dot(u), self.alpha):
            bad.append("u^2 != alpha")
        for i in range(n):
            if not _is_scalar(w[i].dot(u) + u.dot(w[i]), 2 * self.mu[i]):
                bad.append("w_%d u + u w_%d != 2 mu_%d" % (i + 1, i + 1, i + 1))
            for j in range(n):
                if not _is_scalar(w[i].dot(w[j]) + w[j].dot(w[i]), 2 * self.l[i, j]):
                    bad.append("w_%d w_%d + w_%d w_%d != 2 l" % (i + 1, j + 1, j + 1, i + 1))
        return bad


def _is_scalar(m, s) -> bool:
    n = m.shape[0]
    return all(m[i, j] == (s if i == j else 0) for i in range(n) for j in range(n))


def _scalar_of(m, what):
    s = m[0, 0]
    if not _is_scalar(m, s):
        raise NoInnerImplementation("%s is not a scalar matrix" % what)
    return s


def _outer(col, row):
    return np.outer(col, row)


def inner_decomposition(mod: EndModule, check: bool = True) -> InnerActionData:
    """u and w_i with c -> a = u a u^-1 and x_i -> a = w_i (c -> a) - a w_i.

    u: column i of u is column p of (c -> E_i0) for the first p that gives a
    nonzero matrix (then u is a nonzero multiple of the implementing element),
    scaled so that its first nonzero entry (row-major) is 1.
    w_i: z = w_i u implements a -> (x_i -> a) u as an inner derivation; with
    column i of z read from column 0 of (x_i -> E_i0) u, w_i = z u^-1.

    The checks compare both sides on E_i0 and E_0i, which generate End(V);
    since the right hand sides are rank one these are cheap.
    """
    h, N, field = mod.h, mod.N, mod.field
    ci = h.index(1, ())
    # c -> E_i0 = u[:, i] uinv[0, :], so the usable column p is the same for all i
    first = mod.act_on_unit_column(ci, 0, 0)
    p = next((k for k in range(N) if any(x != 0 for x in first[:, k])), None)
    if p is None:
        raise NoInnerImplementation("c acts as zero")
    u = zeros(N, N, field)
    for i in range(N):
        u[:, i] = mod.unit_column_times(ci, i, 0, p)
    lead = next((x for x in u.flat if x != 0), None)
    if lead is None:
        raise NoInnerImplementation("c acts as zero")
    u = u * (1 / field(lead))
    try:
        uinv = inverse(u)
    except LinAlgError:
        raise NoInnerImplementation("candidate u is singular") from None
    unit = zeros(N, 1, field)[:, 0]
    if check:
        for i in range(N):
            e = unit.copy()
            e[i] = field.one
            if not _same(mod.act_on_unit_column(ci, i, 0), _outer(u[:, i], uinv[0, :])):
                raise NoInnerImplementation("c does not act by conjugation with u")
            if not _same(mod.act_on_unit_column(ci, 0, i), _outer(u[:, 0], uinv[i, :])):
                raise NoInnerImplementation("c does not act by conjugation with u")
    alpha = _scalar_of(u.dot(u), "u^2")
    w = []
    for k in range(1, h.n + 1):
        xi = h.index(0, (k,))
        z = zeros(N, N, field)
        for i in range(N):
            z[:, i] = mod.unit_column_times(xi, i, 0, u[:, 0])
        wk = z.dot(uinv)
        if check:
            wu = wk.dot(u)
            for i in range(N):
                e = unit.copy()
                e[i] = field.one
                rhs = _outer(wu[:, i], uinv[0, :]) - _outer(e, wk[0, :])
                if not _same(mod.act_on_unit_column(xi, i, 0), rhs):
                    raise NoInnerImplementation("x_%d is not implemented by w_%d" % (k, k))
                e0 = unit.copy()
                e0[0] = field.one
                rhs = _outer(wu[:, 0], uinv[i, :]) - _outer(e0, wk[i, :])
                if not _same(mod.act_on_unit_column(xi, 0, i), rhs):
                    raise NoInnerImplementation("x_%d is not implemented by w_%d" % (k, k))
        w.append(wk)
    n = h.n
    mu = [_scalar_of(w[i].dot(u) + u.dot(w[i]), "w u + u w") / 2 for i in range(n)]
    l = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            l[i, j] = _scalar_of(w[i].dot(w[j]) + w[j].dot(w[i]), "w_i w_j + w_j w_i") / 2
    return InnerActionData(u, w, alpha, mu, l, field)


def _same(a, b) -> bool:
    return all(x == y for x, y in zip(a.flat, b.flat))


def normalize_pi(d: InnerActionData) -> InnerActionData:
    """w_j -> w_j - mu_j alpha^-1 u, after which mu = 0."""
    ainv = 1 / d.field(d.alpha)
    w = [wj - (mj * ainv) * d.u for wj, mj in zip(d.w, d.mu)]
    n = len(w)
    l = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            l[i, j] = _scalar_of(w[i].dot(w[j]) + w[j].dot(w[i]), "w_i w_j + w_j w_i") / 2
    return InnerActionData(d.u, w, d.alpha, [d.field.zero] * n, l, d.field)


def invariants(mod: EndModule) -> tuple:
    """(alpha, L) after normalizing mu to zero."""
    d = normalize_pi(inner_decomposition(mod))
    return d.alpha, d.l


def strongly_inner_test(d: InnerActionData, h: EnHopf | None = None):
    """(alpha a square) and rank [[alpha, mu^t], [mu, L]] == 1.

    Returns (flag, pi) where pi (when flag) is the algebra map
    pi(c) = t u, pi(x_j) = -(w_j + s_j u) pi(c)^-1 ... expressed on generators,
    with t^2 alpha = 1 and s_j = -mu_j / alpha; it is checked against the E(n)
    relations.
    """
    f = d.field
    n = len(d.w)
    m = zeros(n + 1, n + 1, f)
    m[0, 0] = d.alpha
    for i in range(n):
        m[0, i + 1] = m[i + 1, 0] = d.mu[i]
        for j in range(n):
            m[i + 1, j + 1] = d.l[i, j]
    sq = f.is_square(1 / f(d.alpha))
    flag = sq and rank(m) == 1
    if not flag:
        return False, None
    t = f.sqrt(1 / f(d.alpha))
    pc = t * d.u
    pcinv = inverse(pc)
    ainv = 1 / f(d.alpha)
    # pi(x_j) = w'_j pi(c) with w'_j = w_j - mu_j alpha^-1 u; check E(n) relations
    images = {}
    h = h or build_en(n, f)
    images[h.index(1, ())] = pc
    for j in range(n):
        wj = d.w[j] - (d.mu[j] * ainv) * d.u
        images[h.index(0, (j + 1,))] = wj.dot(pc)
    pi = _extend_multiplicatively(h, images, d.u.shape[0], f)
    bad = _algebra_map_violations(h, pi)
    if bad:
        raise AssertionError("strongly inner datum does not give an algebra map: " + bad[0])
    return True, pi


def induced_subalgebra(d: InnerActionData, mod: EndModule | None = None) -> dict:
    """Ind(A): the span of the products u^a w_P inside End(V).

    Returns the dimension, the basis matrices, the kernel dimension of the
    natural map Cl(alpha, mu, L) -> Ind(A), and (with ``mod``) the action table
    on u and the w_j.
    """
    f = d.field
    n = len(d.w)
    cl = CliffordAlgebra(n, d.l, d.alpha, d.mu, f)
    N = d.u.shape[0]
    one = zeros(N, N, f)
    for i in range(N):
        one[i, i] = f.one
    images = []
    for a, p in cl.monomials:
        m = one
        if a:
            m = m.dot(d.u)
        for i in p:
            m = m.dot(d.w[i - 1])
        images.append(m)
    mat = np.empty((N * N, len(images)), dtype=object)
    for k, m in enumerate(images):
        mat[:, k] = m.reshape(-1)
    r = rank(mat)
    out = {"dim": r, "clifford_dim": cl.alg.dim, "kernel_dim": cl.alg.dim - r,
           "basis": images, "clifford": cl}
    if mod is not None:
        h = mod.h
        table = {}
        gens = {"u": d.u}
        for j in range(n):
            gens["w%d" % (j + 1)] = d.w[j]
        for hl, hi in [("c", h.index(1, ()))] + [("x%d" % j, h.index(0, (j,))) for j in range(1, n + 1)]:
            for gl, g in gens.items():
                table[(hl, gl)] = mod.act(hi, g)
        out["action"] = table
    return out


# -- Lambda: A (x) B -> A # B ----------------------------------------------

def lambda_iso(a: ModuleAlgebra, b: ModuleAlgebra, rmat: dict, f_images: dict) -> dict:
    """Lambda(a (x) b) = sum (R2 . a) # f(R1) b, where f (index -> element of
    B) is an algebra map implementing the action of the first legs of R on B.

    Returns the matrix of Lambda (columns are images of e_i (x) e_j), whether
    it is bijective, and the multiplicativity violations against the braided
    product (exhaustive on basis pairs).
    """
    A, B = a.alg, b.alg
    dA, dB = A.dim, B.dim
    for (r1, _r2) in rmat:
        if r1 not in f_images:
            raise NotStronglyInner("f is not given on the leg %s of R" % a.h.labels[r1])
    lam = zeros(dA * dB, dA * dB, A.field)
    images = []
    for i in range(dA):
        for j in range(dB):
            out: dict = {}
            for (r1, r2), c in rmat.items():
                left = a.act(r2, A.basis(i))
                right = B.mul(f_images[r1], B.basis(j))
                for k, x in left.items():
                    for m, y in right.items():
                        vacc(out, k * dB + m, c * x * y)
            images.append(out)
            for k, v in out.items():
                lam[k, i * dB + j] = v
    prod = braided_product(a, b, rmat)
    bad = []
    for i in range(dA):
        for j in range(dB):
            for i2 in range(dA):
                for j2 in range(dB):
                    x = {}
                    for k, v in A.mul(A.basis(i), A.basis(i2)).items():
                        for m, w in B.mul(B.basis(j), B.basis(j2)).items():
                            vacc(x, k * dB + m, v * w)
                    lhs = _apply(images, x)
                    rhs = prod.alg.mul(images[i * dB + j], images[i2 * dB + j2])
                    if lhs != rhs:
                        bad.append("Lambda not multiplicative at (%s (x) %s, %s (x) %s)"
                                   % (A.labels[i], B.labels[j], A.labels[i2], B.labels[j2]))
    return {"matrix": lam, "bijective": rank(lam) == dA * dB, "violations": bad, "product": prod}


def braided_end(a: EndModule, b: EndModule, rmat: dict, name=None) -> EndModule:
    """A # B realized on End(V (x) W) through Lambda, for A = End(V) and
    B = End(W) whose action on the first legs of R is implemented by the
    algebra map ``b.f``. The action of h on End(V (x) W) is
    Lambda^-1 o (diagonal action) o Lambda."""
    if b.f is None:
        raise NotStronglyInner("B carries no implementing algebra map")
    h = a.h
    field = a.field
    idB = _ident(b.dims, field)
    s = h.antipode
    lam, laminv = [], []
    for (r1, r2), c in rmat.items():
        if r1 not in b.f:
            raise NotStronglyInner("f is not given on the leg %s of R" % h.labels[r1])
        for ca, pa, qa in a.terms(r2):
            lam.append((c * ca, pa + b.f[r1], qa + idB))
            for k, v in s[r1].items():
                if k not in b.f:
                    raise NotStronglyInner("f is not given on %s" % h.labels[k])
                laminv.append((c * ca * v, pa + b.f[k], qa + idB))
    lam, laminv = _prune(lam), _prune(laminv)
    gen_terms = {}
    for g in a.gen_terms:
        diag = []
        for (g1, g2), c in h.delta[g].items():
            for ca, pa, qa in a.terms(g1):
                for cb, pb, qb in b.terms(g2):
                    diag.append((c * ca * cb, pa + pb, qa + qb))
        gen_terms[g] = _prune(compose_terms(laminv, _prune(compose_terms(_prune(diag), lam))))
    return EndModule(h, a.dims + b.dims, field, gen_terms, name or "%s#%s" % (a.name, b.name))


def _prune(terms):
    """Merge terms with identical factors and drop zero coefficients."""
    merged: dict = {}
    order = []
    for c, p, q in terms:
        key = tuple(tuple(m.flat) for m in p) + tuple(tuple(m.flat) for m in q)
        if key in merged:
            merged[key][0] += c
        else:
            merged[key] = [c, p, q]
            order.append(key)
    return [(merged[k][0], merged[k][1], merged[k][2]) for k in order if merged[k][0] != 0]
