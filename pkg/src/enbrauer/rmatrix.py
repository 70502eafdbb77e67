"""
Quasi-triangular structures R_A on E(n) and their dual coquasi-triangular
forms r_A.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import BilinearForm, convolution, convolution_inverse, counit_form, tensor_mul, vacc, vadd
from .en import EnHopf, build_en, duality_iso, subsets
from .linalg import DimensionMismatch, is_symmetric, matrix_field


def perm_sign(perm) -> int:
    s = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s


def signed_minor_sum(a, p: tuple, f: tuple):
    """sum over eta in S_s of sign(eta) a_{p1, f_eta(1)} ... a_{ps, f_eta(s)}."""
    if not p:
        return 1
    total = 0
    for eta in itertools.permutations(range(len(p))):
        term = perm_sign(eta)
        for k, e in enumerate(eta):
            term = term * a[p[k] - 1, f[e] - 1]
            if term == 0:
                break
        total = total + term
    return total


def _check_square(h: EnHopf, a):
    a = np.asarray(a)
    if a.shape != (h.n, h.n):
        raise DimensionMismatch("matrix must be %dx%d for E(%d)" % (h.n, h.n, h.n))
    return a


@dataclass
class QTStructure:
    h: EnHopf
    a: np.ndarray
    r: dict  # {(i, j): coef} in E(n) (x) E(n)

    def coefficient(self, i, j):
        return self.r.get((i, j), self.h.field.zero)

    def recover_matrix(self) -> np.ndarray:
        """a_ij as twice the coefficient of x_i (x) c x_j."""
        h = self.h
        out = np.empty((h.n, h.n), dtype=object)
        for i in range(1, h.n + 1):
            for j in range(1, h.n + 1):
                out[i - 1, j - 1] = 2 * self.coefficient(h.index(0, (i,)), h.index(1, (j,)))
        return out


def build_R(n: int, a, field=None) -> QTStructure:
    """R_A by direct evaluation of the sum over P, F and permutations eta."""
    a = np.asarray(a)
    if field is None:
        field = matrix_field(a) if a.size else build_en(0).field
    h = build_en(n, field)
    a = _check_square(h, a)
    half = 1 / field(2)
    r: dict = {}
    subs = subsets(n)
    for p in subs:
        s = len(p)
        sgn = (-1) ** (s * (s - 1) // 2)
        for f in subs:
            if len(f) != s:
                continue
            coef = signed_minor_sum(a, p, f)
            if coef == 0:
                continue
            coef = field(coef) * sgn * half
            xp, cxp = h.index(0, p), h.index(1, p)
            t0, t1 = h.index(s, f), h.index(s + 1, f)
            vacc(r, (xp, t0), coef)
            vacc(r, (cxp, t0), coef)
            vacc(r, (xp, t1), coef)
            vacc(r, (cxp, t1), -coef)
    return QTStructure(h, a, r)


def R_from_tensor(h: EnHopf, r: dict) -> QTStructure:
    """Wrap an arbitrary element of E(n) (x) E(n) for checking."""
    return QTStructure(h, None, dict(r))


# -- tensor helpers ---------------------------------------------------------

def _embed(r: dict, slots) -> dict:
    """R_{ij} inside the triple tensor, e.g. slots=(0, 2) for R_13."""
    out = {}
    for (a, b), v in r.items():
        key = [0, 0, 0]
        key[slots[0]], key[slots[1]] = a, b
        out[tuple(key)] = v
    return out


def flip(r: dict) -> dict:
    return {(b, a): v for (a, b), v in r.items()}


def check_qt(q: QTStructure, yang_baxter: bool = True) -> list[str]:
    """Exhaustive check of the quasi-triangular axioms (plus Yang-Baxter)."""
    h = q.h
    alg = h.alg
    pair = (alg, alg)
    trip = (alg, alg, alg)
    r = q.r
    bad = []
    # (Delta (x) id) R = R13 R23
    lhs: dict = {}
    for (a, b), v in r.items():
        for (a1, a2), c in h.delta[a].items():
            vacc(lhs, (a1, a2, b), v * c)
    if lhs != tensor_mul(trip, _embed(r, (0, 2)), _embed(r, (1, 2))):
        bad.append("hexagon (Delta (x) id)R = R13 R23 fails")
    # (id (x) Delta) R = R13 R12
    lhs = {}
    for (a, b), v in r.items():
        for (b1, b2), c in h.delta[b].items():
            vacc(lhs, (a, b1, b2), v * c)
    if lhs != tensor_mul(trip, _embed(r, (0, 2)), _embed(r, (0, 1))):
        bad.append("hexagon (id (x) Delta)R = R13 R12 fails")
    # R Delta(h) = Delta^op(h) R
    for i in range(h.dim):
        if tensor_mul(pair, r, h.delta[i]) != tensor_mul(pair, flip(h.delta[i]), r):
            bad.append("intertwiner R Delta(h) = Delta^op(h) R fails at h = %s" % h.labels[i])
    # invertibility, with (S (x) id)(R) as the candidate inverse
    rinv = s_tensor_id(h, r)
    one = {(0, 0): h.field.one}
    if tensor_mul(pair, r, rinv) != one or tensor_mul(pair, rinv, r) != one:
        bad.append("R is not invertible with inverse (S (x) id)(R)")
    if yang_baxter and not bad:
        r12, r13, r23 = _embed(r, (0, 1)), _embed(r, (0, 2)), _embed(r, (1, 2))
        lhs = tensor_mul(trip, tensor_mul(trip, r12, r13), r23)
        rhs = tensor_mul(trip, tensor_mul(trip, r23, r13), r12)
        if lhs != rhs:
            bad.append("quantum Yang-Baxter equation fails")
    return bad


def s_tensor_id(h: EnHopf, r: dict) -> dict:
    out: dict = {}
    for (a, b), v in r.items():
        for k, c in h.antipode[a].items():
            vacc(out, (k, b), v * c)
    return out


def is_triangular(q: QTStructure) -> bool:
    """tau(R) R == 1 (x) 1."""
    h = q.h
    pair = (h.alg, h.alg)
    return tensor_mul(pair, flip(q.r), q.r) == {(0, 0): h.field.one}


# -- coquasi-triangular forms -----------------------------------------------

@dataclass
class CoQTStructure:
    h: EnHopf
    a: np.ndarray
    form: BilinearForm

    def generator_matrix(self) -> np.ndarray:
        h = self.h
        out = np.empty((h.n, h.n), dtype=object)
        for i in range(1, h.n + 1):
            for j in range(1, h.n + 1):
                out[i - 1, j - 1] = self.form(h.index(0, (i,)), h.index(0, (j,)))
        return out


def transport_R(q: QTStructure) -> BilinearForm:
    """r = (phi (x) phi)(R) as a bilinear form on E(n)."""
    h = q.h
    phi = duality_iso(h.n, h.field)
    vals: dict = {}
    for (a, b), v in q.r.items():
        for i, ca in phi.images[a].items():
            for j, cb in phi.images[b].items():
                vacc(vals, (i, j), v * ca * cb)
    return BilinearForm(h, vals)


def r_display(n: int, a, field=None) -> BilinearForm:
    """r_A from the closed dual-basis formula (with the (-1)^|P| signs)."""
    a = np.asarray(a)
    if field is None:
        field = matrix_field(a) if a.size else build_en(0).field
    h = build_en(n, field)
    a = _check_square(h, a)
    vals: dict = {}
    subs = subsets(n)
    for p in subs:
        s = len(p)
        sgn = (-1) ** (s * (s - 1) // 2)
        for f in subs:
            if len(f) != s:
                continue
            coef = signed_minor_sum(a, p, f)
            if coef == 0:
                continue
            coef = field(coef) * sgn
            par = (-1) ** s
            vacc(vals, (h.index(0, p), h.index(0, f)), coef)
            vacc(vals, (h.index(1, p), h.index(0, f)), coef)
            vacc(vals, (h.index(0, p), h.index(1, f)), par * coef)
            vacc(vals, (h.index(1, p), h.index(1, f)), -par * coef)
    return BilinearForm(h, vals)


class TransportMismatch(AssertionError):
    pass


def build_r(n: int, a, field=None, strict: bool = False) -> CoQTStructure:
    """r_A built by transporting R_A through phi (x) phi.

    The closed formula is evaluated too; disagreements are recorded in
    ``findings`` (transport is taken as ground truth).
    """
    q = build_R(n, a, field)
    form = transport_R(q)
    disp = r_display(n, q.a, q.h.field)
    out = CoQTStructure(q.h, q.a, form)
    out.findings = display_mismatches(form, disp)
    if strict and out.findings:
        raise TransportMismatch("; ".join(out.findings[:5]))
    return out


def display_mismatches(transported: BilinearForm, displayed: BilinearForm) -> list[str]:
    h = transported.hopf
    bad = []
    for i in range(h.dim):
        for j in range(h.dim):
            if transported(i, j) != displayed(i, j):
                bad.append("r(%s (x) %s): transport %s, closed formula %s"
                           % (h.labels[i], h.labels[j], transported(i, j), displayed(i, j)))
    return bad


def check_coqt(r: BilinearForm) -> list[str]:
    """Coquasi-triangularity of a bilinear form, on all basis elements.

    Conventions (those carried by the dual of a quasi-triangular R under
    phi (x) phi):
        r(hl (x) m) = r(h (x) m_1) r(l (x) m_2)
        r(h (x) lm) = r(h_1 (x) m) r(h_2 (x) l)
        r(h_1 (x) l_1) h_2 l_2 = l_1 h_1 r(h_2 (x) l_2)
    plus convolution invertibility.
    """
    h = r.hopf
    alg = h.alg
    d = h.dim
    lab = h.labels
    bad = []
    prods = [[alg.mul(h.basis(i), h.basis(j)) for j in range(d)] for i in range(d)]
    for i in range(d):
        for j in range(d):
            hl = prods[i][j]
            for m in range(d):
                lhs = sum((c * r(k, m) for k, c in hl.items()), h.field.zero)
                rhs = h.field.zero
                for (m1, m2), c in h.delta[m].items():
                    rhs = rhs + c * r(i, m1) * r(j, m2)
                if lhs != rhs:
                    bad.append("r(hl (x) m) = r(h (x) m1) r(l (x) m2) fails at (%s, %s, %s)"
                               % (lab[i], lab[j], lab[m]))
                lhs = sum((c * r(m, k) for k, c in hl.items()), h.field.zero)
                rhs = h.field.zero
                for (m1, m2), c in h.delta[m].items():
                    rhs = rhs + c * r(m1, j) * r(m2, i)
                if lhs != rhs:
                    bad.append("r(h (x) lm) = r(h1 (x) m) r(h2 (x) l) fails at (%s, %s, %s)"
                               % (lab[m], lab[i], lab[j]))
    for i in range(d):
        for j in range(d):
            lhs: dict = {}
            rhs: dict = {}
            for (i1, i2), a in h.delta[i].items():
                for (j1, j2), b in h.delta[j].items():
                    v = r(i1, j1)
                    if v != 0:
                        for k, c in prods[i2][j2].items():
                            vacc(lhs, k, a * b * v * c)
                    v = r(i2, j2)
                    if v != 0:
                        for k, c in prods[j1][i1].items():
                            vacc(rhs, k, a * b * v * c)
            if lhs != rhs:
                bad.append("intertwiner r(h1 (x) l1) h2 l2 = l1 h1 r(h2 (x) l2) fails at (%s, %s)"
                           % (lab[i], lab[j]))
    try:
        convolution_inverse(r)
    except ValueError:
        bad.append("r is not convolution invertible")
    return bad


def is_cotriangular(r: BilinearForm) -> bool:
    """(r tau) * r == eps (x) eps."""
    return convolution(r.flip(), r) == counit_form(r.hopf)
