"""
Lazy 2-cocycles on E(n), Doi twisting, and the orbit classification of
coquasi-triangular structures.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import (Algebra, BilinearForm, Hopf, convolution, convolution_inverse,
                      counit_form, vacc)
from .en import EnHopf, build_en, subsets
from .linalg import (NotSymmetric, SparseSystem, equal, identity, inverse, is_skew,
                     is_symmetric, matrix_field, skew_canonical_form, J)
from .rmatrix import CoQTStructure, build_r


# -- checkers ---------------------------------------------------------------

def _products(h: Hopf):
    d = h.dim
    return [[h.mul(h.basis(i), h.basis(j)) for j in range(d)] for i in range(d)]


def check_cocycle(sigma: BilinearForm, normalized: bool = True) -> list[str]:
    """Left 2-cocycle identity on all basis triples:
    sigma(g1 (x) h1) sigma(g2 h2 (x) m) = sigma(h1 (x) m1) sigma(g (x) h2 m2)."""
    h = sigma.hopf
    d = h.dim
    lab = h.labels
    prods = _products(h)
    sv = sigma.values
    zero = h.field.zero
    bad = []
    # sigma(x (x) m) for x given as an element
    def on(x: dict, m: int):
        s = zero
        for k, c in x.items():
            v = sv.get((k, m))
            if v is not None:
                s = s + c * v
        return s

    def on2(g: int, x: dict):
        s = zero
        for k, c in x.items():
            v = sv.get((g, k))
            if v is not None:
                s = s + c * v
        return s

    for g in range(d):
        for hh in range(d):
            left_terms = []
            for (g1, g2), a in h.delta[g].items():
                for (h1, h2), b in h.delta[hh].items():
                    v = sv.get((g1, h1))
                    if v is not None:
                        left_terms.append((a * b * v, prods[g2][h2]))
            for m in range(d):
                lhs = zero
                for c, x in left_terms:
                    lhs = lhs + c * on(x, m)
                rhs = zero
                for (h1, h2), a in h.delta[hh].items():
                    for (m1, m2), b in h.delta[m].items():
                        v = sv.get((h1, m1))
                        if v is not None:
                            rhs = rhs + a * b * v * on2(g, prods[h2][m2])
                if lhs != rhs:
                    bad.append("cocycle identity fails at (%s, %s, %s)" % (lab[g], lab[hh], lab[m]))
    if normalized:
        for i in range(d):
            if sigma(i, h.unit_index) != h.eps[i] or sigma(h.unit_index, i) != h.eps[i]:
                bad.append("not normalized at %s" % lab[i])
    return bad


def check_lazy(sigma: BilinearForm) -> list[str]:
    """sigma(h1 (x) l1) h2 l2 = h1 l1 sigma(h2 (x) l2) on all basis pairs."""
    h = sigma.hopf
    d = h.dim
    prods = _products(h)
    bad = []
    for i in range(d):
        for j in range(d):
            lhs: dict = {}
            rhs: dict = {}
            for (i1, i2), a in h.delta[i].items():
                for (j1, j2), b in h.delta[j].items():
                    v = sigma(i1, j1)
                    if v != 0:
                        for k, c in prods[i2][j2].items():
                            vacc(lhs, k, a * b * v * c)
                    v = sigma(i2, j2)
                    if v != 0:
                        for k, c in prods[i1][j1].items():
                            vacc(rhs, k, a * b * v * c)
            if lhs != rhs:
                bad.append("laziness fails at (%s, %s)" % (h.labels[i], h.labels[j]))
    return bad


# -- construction -----------------------------------------------------------

@dataclass
class LazyCocycle:
    h: EnHopf
    form: BilinearForm
    m: np.ndarray | None = None  # upper triangular parameters (omega)
    l: np.ndarray | None = None  # symmetric parameters (sigma)

    def __call__(self, i, j):
        return self.form(i, j)

    def generator_matrix(self) -> np.ndarray:
        h = self.h
        out = np.empty((h.n, h.n), dtype=object)
        for i in range(1, h.n + 1):
            for j in range(1, h.n + 1):
                out[i - 1, j - 1] = self.form(h.index(0, (i,)), h.index(0, (j,)))
        return out

    @property
    def inverse(self) -> BilinearForm:
        if not hasattr(self, "_inv"):
            self._inv = convolution_inverse(self.form)
        return self._inv


def _upper(m, n, field):
    m = np.asarray(m)
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = field(m[i, j]) if i <= j else field.zero
    return out


def build_omega(n: int, m, field=None) -> LazyCocycle:
    """The normalized lazy cocycle omega(M) with omega(x_i (x) x_j) = m_ij for
    i <= j and 0 for i > j; entries of ``m`` below the diagonal are ignored.

    Values: omega(c^a x_P (x) c^b x_Q) = (-1)^(b|P|) omega(x_P (x) x_Q), zero
    unless |P| = |Q|, and for P = (i, P') with i < min P'
        omega(x_P (x) x_Q) = sum_j (-1)^(|Q|-j) m_(i q_j) omega(x_P' (x) x_(Q - q_j)).
    """
    m = np.asarray(m)
    if field is None:
        field = matrix_field(m) if m.size else build_en(0).field
    h = build_en(n, field)
    mu = _upper(m, n, field)

    @lru_cache(maxsize=None)
    def base(p: tuple, q: tuple):
        if len(p) != len(q):
            return field.zero
        if not p:
            return field.one
        i, rest = p[0], p[1:]
        total = field.zero
        for j, qj in enumerate(q, start=1):
            sub = q[:j - 1] + q[j:]
            total = total + (-1) ** (len(q) - j) * mu[i - 1, qj - 1] * base(rest, sub)
        return total

    vals = {}
    for i, (a, p) in enumerate(h.monomials):
        for j, (b, q) in enumerate(h.monomials):
            v = base(p, q)
            if v != 0:
                vals[(i, j)] = v * (-1) ** (b * len(p))
    return LazyCocycle(h, BilinearForm(h, vals), m=mu)


def theta_twist(sigma: BilinearForm, theta: dict) -> BilinearForm:
    """sigma^theta(h (x) l) = theta(h1) theta(l1) sigma(h2 (x) l2) theta^-1(h3 l3).

    ``theta`` is a functional on H given as {basis index: value}."""
    h = sigma.hopf
    theta_inv = functional_inverse(h, theta)
    prods = _products(h)
    d2 = h.delta2
    vals = {}
    for i in range(h.dim):
        for j in range(h.dim):
            s = h.field.zero
            for (i1, i2, i3), a in d2[i].items():
                t1 = theta.get(i1)
                if t1 is None:
                    continue
                for (j1, j2, j3), b in d2[j].items():
                    t2 = theta.get(j1)
                    if t2 is None:
                        continue
                    v = sigma(i2, j2)
                    if v == 0:
                        continue
                    ti = sum((c * theta_inv.get(k, 0) for k, c in prods[i3][j3].items()), h.field.zero)
                    s = s + a * b * t1 * t2 * v * ti
            if s != 0:
                vals[(i, j)] = s
    return BilinearForm(h, vals)


def functional_inverse(h: Hopf, theta: dict) -> dict:
    """Convolution inverse in H^* by exact linear solve."""
    d = h.dim
    sys = SparseSystem(d, h.field)
    for i in range(d):
        row: dict = {}
        for (i1, i2), a in h.delta[i].items():
            t = theta.get(i1)
            if t is not None:
                vacc(row, i2, a * t)
        sys.add(row, h.eps[i])
    x = sys.solution()
    return {k: v for k, v in enumerate(x) if v != 0}


def build_sigma(n: int, l, field=None) -> LazyCocycle:
    """The lazy cocycle sigma(L) with sigma(x_i (x) x_j) = l_ij, L symmetric.

    Built as omega(M)^theta with M = diag(L) + 2 * (strict upper part of L)
    and theta = eps + sum_(i<j) l_ij phi(x_i x_j), where
    phi(x_i x_j) = (x_i x_j)^* + (c x_i x_j)^* is central in E(n)^*.
    The functional (x_i x_j)^* alone is not central once n >= 3 and its twist
    is then not lazy.
    """
    l = np.asarray(l)
    if field is None:
        field = matrix_field(l) if l.size else build_en(0).field
    if l.shape != (n, n) or not is_symmetric(l):
        raise NotSymmetric("sigma(L) needs a symmetric n x n matrix")
    m = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            m[i, j] = field(l[i, j]) * (2 if i < j else 1)
    om = build_omega(n, m, field)
    h = om.h
    theta = {k: e for k, e in enumerate(h.eps) if e != 0}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            v = field(l[i - 1, j - 1])
            if v != 0:
                vacc(theta, h.index(0, (i, j)), v)
                vacc(theta, h.index(1, (i, j)), v)
    form = theta_twist(om.form, theta)
    return LazyCocycle(h, form, m=om.m, l=np.array(l, dtype=object))


def cocycle_oracle(h: EnHopf, pinned_rows: dict) -> BilinearForm:
    """Solve the 2-cocycle identity as a linear system.

    ``pinned_rows`` fixes sigma(g (x) y) for the algebra generators g (c and
    the x_i) and all basis y; with those known and sigma normalized, the
    identity with g a generator is linear in the remaining unknowns. Raises
    NoSolution when the pinned values admit no cocycle, and ValueError when
    the solution is not unique.
    """
    d = h.dim
    prods = _products(h)
    u = h.unit_index
    gens = [h.index(1, ())] + [h.index(0, (i,)) for i in range(1, h.n + 1)]
    known: dict = {}
    for i in range(d):
        known[(u, i)] = h.eps[i]
        known[(i, u)] = h.eps[i]
    for g in gens:
        for y in range(d):
            if (g, y) in known and known[(g, y)] != pinned_rows.get((g, y), 0):
                raise ValueError("pinned value contradicts normalization at %s" % ((g, y),))
            known[(g, y)] = h.field(pinned_rows.get((g, y), 0))
    unknown = [(i, j) for i in range(d) for j in range(d) if (i, j) not in known]
    col = {k: c for c, k in enumerate(unknown)}
    sys = SparseSystem(len(unknown), h.field)

    def add_term(row, const, key, coef):
        # coef * sigma(key); known values move to the right-hand side
        if key in known:
            return const - coef * known[key]
        vacc(row, col[key], coef)
        return const

    for g in gens:
        for hh in range(d):
            for m in range(d):
                row: dict = {}
                const = h.field.zero
                # left side: sigma(g1 (x) h1) sigma(g2 h2 (x) m); g1 in {1, c, x_i}
                for (g1, g2), a in h.delta[g].items():
                    for (h1, h2), b in h.delta[hh].items():
                        s1 = known.get((g1, h1))
                        if s1 is None:
                            raise AssertionError("generator row not pinned")
                        if s1 == 0:
                            continue
                        for k, c in prods[g2][h2].items():
                            const = add_term(row, const, (k, m), a * b * c * s1)
                # right side: sigma(h1 (x) m1) sigma(g (x) h2 m2)
                for (h1, h2), a in h.delta[hh].items():
                    for (m1, m2), b in h.delta[m].items():
                        s2 = h.field.zero
                        for k, c in prods[h2][m2].items():
                            s2 = s2 + c * known[(g, k)]
                        if s2 == 0:
                            continue
                        const = add_term(row, const, (h1, m1), -a * b * s2)
                sys.add(row, const)
    x = sys.solution()
    if sys.rank < len(unknown):
        raise ValueError("cocycle not determined by the pinned rows (%d free)"
                         % (len(unknown) - sys.rank))
    vals = dict(known)
    for k, c in col.items():
        vals[k] = x[c]
    return BilinearForm(h, vals)


def generator_rows(sigma: BilinearForm) -> dict:
    h = sigma.hopf
    gens = [h.index(1, ())] + [h.index(0, (i,)) for i in range(1, h.n + 1)]
    return {(g, y): sigma(g, y) for g in gens for y in range(h.dim) if sigma(g, y) != 0}


def omega_generator_rows(h: EnHopf, m) -> dict:
    """sigma(g (x) y) for generators g, read off the listed values for omega(M):
    sigma(c (x) c^b) = 1, sigma(c (x) c^b x_Q) = 0 for Q nonempty,
    sigma(x_i (x) x_j) = m_ij (i <= j), sigma(x_i (x) c x_j) = -sigma(x_i (x) x_j),
    everything else in these rows zero."""
    f = h.field
    rows = {(h.index(1, ()), h.index(0, ())): f.one, (h.index(1, ()), h.index(1, ())): f.one}
    for i in range(1, h.n + 1):
        for j in range(i, h.n + 1):
            v = f(m[i - 1, j - 1])
            rows[(h.index(0, (i,)), h.index(0, (j,)))] = v
            rows[(h.index(0, (i,)), h.index(1, (j,)))] = -v
    return rows


def coboundary(h: Hopf, theta: dict) -> BilinearForm:
    """The cocycle (eps (x) eps)^theta cohomologous to the trivial one."""
    return theta_twist(counit_form(h), theta)


def non_lazy_example(n: int = 1, field=None) -> BilinearForm:
    """A normalized 2-cocycle that is not lazy: the coboundary of
    theta = eps + x_1^*. Its Doi twist changes the product of E(n)."""
    h = build_en(n, field) if field is not None else build_en(n)
    if n < 1:
        raise ValueError("E(0) has only lazy cocycles of this shape")
    theta = {k: e for k, e in enumerate(h.eps) if e != 0}
    theta[h.index(0, (1,))] = h.field.one
    return coboundary(h, theta)


# -- Doi twist --------------------------------------------------------------

def twisted_product(sigma: BilinearForm, sigma_inv: BilinearForm | None = None) -> Algebra:
    """Multiplication table of H^sigma:
    h ._sigma l = sigma(h1 (x) l1) h2 l2 sigma^-1(h3 (x) l3)."""
    h = sigma.hopf
    if sigma_inv is None:
        sigma_inv = convolution_inverse(sigma)
    prods = _products(h)
    d2 = h.delta2
    mult = {}
    for i in range(h.dim):
        for j in range(h.dim):
            out: dict = {}
            for (i1, i2, i3), a in d2[i].items():
                for (j1, j2, j3), b in d2[j].items():
                    v = sigma(i1, j1)
                    if v == 0:
                        continue
                    w = sigma_inv(i3, j3)
                    if w == 0:
                        continue
                    for k, c in prods[i2][j2].items():
                        vacc(out, k, a * b * v * w * c)
            if out:
                mult[(i, j)] = out
    return Algebra.from_mult(h.field, h.labels, mult, h.alg.unit)


# -- action on coquasi-triangular structures --------------------------------

def act_on_form(sigma: BilinearForm, r: BilinearForm, sigma_inv=None) -> BilinearForm:
    """sigma . r = (sigma tau) * r * sigma^-1."""
    if sigma_inv is None:
        sigma_inv = convolution_inverse(sigma)
    return convolution(convolution(sigma.flip(), r), sigma_inv)


def act_on_r(sigma: LazyCocycle, r: CoQTStructure, verify: bool = True) -> CoQTStructure:
    """Returns r_B with B = A - Lambda, Lambda_ij = sigma(x_i (x) x_j) + sigma(x_j (x) x_i).

    With ``verify`` the result is checked against the convolution
    (sigma tau) * r * sigma^-1 on all basis pairs."""
    h = r.h
    g = sigma.generator_matrix()
    b = r.a - (g + g.T)
    out = build_r(h.n, b, h.field)
    if verify:
        direct = act_on_form(sigma.form, r.form, sigma.inverse)
        if direct != out.form:
            raise AssertionError("sigma . r_A differs from r_B on some basis pair")
    return out


def zl_orbit_equivalent(a, b, with_witness: bool = False):
    """r_A and r_B lie in one Z_L orbit iff A - B is symmetric.

    With ``with_witness`` returns (flag, sigma) where sigma = sigma((A-B)/2)
    satisfies sigma . r_A = r_B (checked)."""
    a, b = np.asarray(a), np.asarray(b)
    diff = a - b
    ok = is_symmetric(diff)
    if not with_witness:
        return ok
    if not ok:
        return False, None
    field = matrix_field(a) if a.size else build_en(0).field
    n = a.shape[0]
    w = build_sigma(n, diff / field(2), field)
    ra = build_r(n, a, field)
    rb = act_on_r(w, ra)
    if not equal(rb.a, b):
        raise AssertionError("witness does not carry r_A to r_B")
    return True, w


@dataclass
class OrbitLabel:
    l: int
    t: np.ndarray
    sym_remainder: np.ndarray

    def verify(self, a) -> bool:
        a = np.asarray(a)
        n = a.shape[0]
        field = matrix_field(a) if a.size else build_en(0).field
        c = self.t.T @ J(n, self.l, field) @ self.t
        return is_symmetric(c - a) and equal(c - a, self.sym_remainder)


def h_orbit_label(a) -> OrbitLabel:
    """Orbit of r_A under lazy cocycles and Hopf automorphisms: the canonical
    form J_l of the skew part of A, with T such that T^t J_l T - A is symmetric."""
    a = np.asarray(a)
    n = a.shape[0]
    field = matrix_field(a) if a.size else build_en(0).field
    skew = (a - a.T) / field(2) if n else a
    l, t = skew_canonical_form(skew)
    rem = t.T @ J(n, l, field) @ t - a
    return OrbitLabel(l, t, rem)
