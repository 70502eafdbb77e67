"""
Finite-dimensional structure-constant algebras, coalgebras and Hopf algebras.

Elements are sparse dicts ``{basis index: coefficient}``; elements of
tensor powers are dicts keyed by index tuples. Zero coefficients are never
stored.
"""

from __future__ import annotations

import itertools
import json
from functools import cached_property

import numpy as np

from .fields import QQ, Field, FieldMismatch, PrimeField, parse_field
from .linalg import SparseSystem


class DomainMismatch(ValueError):
    pass


class NotInvertible(ValueError):
    pass


# -- sparse vector helpers --------------------------------------------------

def vadd(x: dict, y: dict, s=1) -> dict:
    out = dict(x)
    for k, v in y.items():
        nv = out.get(k, 0) + s * v
        if nv == 0:
            out.pop(k, None)
        else:
            out[k] = nv
    return out


def vscale(x: dict, s) -> dict:
    if s == 0:
        return {}
    return {k: s * v for k, v in x.items()}


def vacc(out: dict, k, v):
    """In-place ``out[k] += v``, dropping zeros."""
    nv = out.get(k, 0) + v
    if nv == 0:
        out.pop(k, None)
    else:
        out[k] = nv


def vsum(items) -> dict:
    out: dict = {}
    for k, v in items:
        vacc(out, k, v)
    return out


# -- algebras ---------------------------------------------------------------

class Algebra:
    """Associative unital algebra given by structure constants.

    ``table[i][j]`` is a tuple of ``(k, c)`` with e_i e_j = sum c e_k.
    """

    def __init__(self, field: Field, labels, table, unit: dict):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.table = table
        self.unit = {k: v for k, v in unit.items() if v != 0}

    @classmethod
    def from_mult(cls, field, labels, mult: dict, unit: dict):
        """``mult`` maps ``(i, j)`` to a dict ``{k: c}``."""
        d = len(labels)
        table = [[() for _ in range(d)] for _ in range(d)]
        for (i, j), terms in mult.items():
            table[i][j] = tuple((k, field(c)) for k, c in terms.items() if c != 0)
        return cls(field, labels, table, unit)

    def basis(self, i) -> dict:
        return {i: self.field.one}

    @property
    def one(self) -> dict:
        return dict(self.unit)

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        table = self.table
        for i, a in x.items():
            row = table[i]
            for j, b in y.items():
                ab = a * b
                for k, c in row[j]:
                    vacc(out, k, ab * c)
        return out

    def mul_many(self, *xs) -> dict:
        out = self.one
        for x in xs:
            out = self.mul(out, x)
        return out

    def left_matrix(self, x: dict) -> np.ndarray:
        """Matrix of left multiplication by x (columns are images of e_j)."""
        m = np.empty((self.dim, self.dim), dtype=object)
        m.fill(self.field.zero)
        for j in range(self.dim):
            for k, c in self.mul(x, self.basis(j)).items():
                m[k, j] = c
        return m

    def check_associative(self) -> list[str]:
        bad = []
        d = self.dim
        for i in range(d):
            ei = self.basis(i)
            for j in range(d):
                eij = self.mul(ei, self.basis(j))
                for k in range(d):
                    ek = self.basis(k)
                    if self.mul(eij, ek) != self.mul(ei, self.mul(self.basis(j), ek)):
                        bad.append("associativity fails at (%s, %s, %s)"
                                   % (self.labels[i], self.labels[j], self.labels[k]))
        return bad

    def check_unit(self) -> list[str]:
        bad = []
        for i in range(self.dim):
            e = self.basis(i)
            if self.mul(self.unit, e) != e or self.mul(e, self.unit) != e:
                bad.append("unit fails at %s" % self.labels[i])
        return bad

    def mult_dict(self) -> dict:
        return {(i, j): dict(self.table[i][j]) for i in range(self.dim)
                for j in range(self.dim) if self.table[i][j]}

    def same_structure(self, other: "Algebra") -> bool:
        return (self.dim == other.dim and self.mult_dict() == other.mult_dict()
                and self.unit == other.unit)

    # JSON: {"dim", "labels", "mult": [[i, j, k, "p/q"], ...]}
    def to_json(self) -> dict:
        f = self.field
        out = {"dim": self.dim, "labels": [str(x) for x in self.labels],
               "mult": [[i, j, k, f.to_str(c)]
                        for i in range(self.dim) for j in range(self.dim)
                        for k, c in self.table[i][j]],
               "unit": [[k, f.to_str(c)] for k, c in sorted(self.unit.items())],
               "field": f.name.lower() if isinstance(f, PrimeField) else "q"}
        if isinstance(f, PrimeField):
            out["field"] = "p%d" % f.char
        return out

    @classmethod
    def from_json(cls, obj) -> "Algebra":
        if isinstance(obj, str):
            obj = json.loads(obj)
        field = parse_field(obj.get("field", "q"))
        d = int(obj["dim"])
        labels = obj.get("labels") or [str(i) for i in range(d)]
        mult: dict = {}
        for i, j, k, c in obj["mult"]:
            mult.setdefault((i, j), {})[k] = field(c)
        unit = {int(k): field(c) for k, c in obj.get("unit", [[0, "1"]])}
        return cls.from_mult(field, labels, mult, unit)


def tensor_algebra(a: Algebra, b: Algebra) -> Algebra:
    """Ordinary tensor product; basis index ``i * b.dim + j``, no signs."""
    if a.field != b.field:
        raise FieldMismatch("tensor product of algebras over different fields")
    db = b.dim
    labels = ["%s|%s" % (x, y) for x in a.labels for y in b.labels]
    table = []
    for i1 in range(a.dim):
        for j1 in range(db):
            row = []
            for i2 in range(a.dim):
                for j2 in range(db):
                    terms: dict = {}
                    for k1, c1 in a.table[i1][i2]:
                        for k2, c2 in b.table[j1][j2]:
                            vacc(terms, k1 * db + k2, c1 * c2)
                    row.append(tuple(terms.items()))
            table.append(row)
    unit = {k1 * db + k2: c1 * c2 for k1, c1 in a.unit.items() for k2, c2 in b.unit.items()}
    return Algebra(a.field, labels, table, unit)


def tensor_mul(algs, x: dict, y: dict) -> dict:
    """Componentwise product in A_1 (x) ... (x) A_m of tuple-keyed elements."""
    out: dict = {}
    m = len(algs)
    tables = [a.table for a in algs]
    for kx, a in x.items():
        for ky, b in y.items():
            parts = [tables[t][kx[t]][ky[t]] for t in range(m)]
            if not all(parts):
                continue
            ab = a * b
            for combo in itertools.product(*parts):
                c = ab
                key = []
                for k, v in combo:
                    c = c * v
                    key.append(k)
                vacc(out, tuple(key), c)
    return out


# -- Hopf algebras ----------------------------------------------------------

class Hopf:
    """Hopf algebra given by an algebra plus sparse coproduct, counit, antipode.

    ``delta[i]`` is ``{(j, k): c}``, ``eps[i]`` a scalar, ``antipode[i]`` a
    dict ``{j: c}``.
    """

    def __init__(self, alg: Algebra, delta, eps, antipode, name="H"):
        self.alg = alg
        self.field = alg.field
        self.dim = alg.dim
        self.delta = [dict(d) for d in delta]
        self.eps = list(eps)
        self.antipode = [dict(s) for s in antipode]
        self.name = name

    @property
    def labels(self):
        return self.alg.labels

    def mul(self, x, y):
        return self.alg.mul(x, y)

    def basis(self, i):
        return self.alg.basis(i)

    def Delta(self, x: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for k, c in self.delta[i].items():
                vacc(out, k, a * c)
        return out

    def counit(self, x: dict):
        s = self.field.zero
        for i, a in x.items():
            s = s + a * self.eps[i]
        return s

    def S(self, x: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for k, c in self.antipode[i].items():
                vacc(out, k, a * c)
        return out

    @cached_property
    def delta2(self) -> list[dict]:
        """Iterated coproduct (Delta (x) id) Delta on basis elements."""
        out = []
        for i in range(self.dim):
            d: dict = {}
            for (j, k), c in self.delta[i].items():
                for (j1, j2), c2 in self.delta[j].items():
                    vacc(d, (j1, j2, k), c * c2)
            out.append(d)
        return out

    @cached_property
    def antipode_inverse(self) -> list[dict]:
        from .linalg import inverse
        m = self.matrix_of(self.antipode)
        inv = inverse(m)
        return [{k: inv[k, j] for k in range(self.dim) if inv[k, j] != 0} for j in range(self.dim)]

    def matrix_of(self, images) -> np.ndarray:
        m = np.empty((self.dim, self.dim), dtype=object)
        m.fill(self.field.zero)
        for j, img in enumerate(images):
            for k, c in img.items():
                m[k, j] = c
        return m

    @cached_property
    def unit_index(self) -> int:
        (k, c), = self.alg.unit.items()
        return k

    def grouplike_index(self, i) -> bool:
        return self.delta[i] == {(i, i): self.field.one}

    # JSON: the algebra plus "delta": [[i, j, k, c]], "counit": [c_i], "antipode": [[i, j, c]]
    def to_json(self) -> dict:
        f = self.field
        return {"name": self.name, "algebra": self.alg.to_json(),
                "delta": [[i, j, k, f.to_str(c)] for i, d in enumerate(self.delta)
                          for (j, k), c in sorted(d.items())],
                "counit": [f.to_str(c) for c in self.eps],
                "antipode": [[i, j, f.to_str(c)] for i, s in enumerate(self.antipode)
                             for j, c in sorted(s.items())]}

    @classmethod
    def from_json(cls, obj) -> "Hopf":
        if isinstance(obj, str):
            obj = json.loads(obj)
        alg = Algebra.from_json(obj["algebra"])
        f = alg.field
        delta = [{} for _ in range(alg.dim)]
        for i, j, k, c in obj["delta"]:
            delta[i][(j, k)] = f(c)
        antipode = [{} for _ in range(alg.dim)]
        for i, j, c in obj["antipode"]:
            antipode[i][j] = f(c)
        return cls(alg, delta, [f(c) for c in obj["counit"]], antipode, obj.get("name", "H"))


def check_hopf_axioms(h: Hopf) -> list[str]:
    """Exhaustive check of all Hopf algebra axioms on basis elements."""
    bad = []
    alg = h.alg
    lab = h.labels
    bad += alg.check_unit()
    bad += alg.check_associative()
    d = h.dim
    pair = (alg, alg)
    for i in range(d):
        # coassociativity
        left: dict = {}
        right: dict = {}
        for (j, k), c in h.delta[i].items():
            for (a, b), c2 in h.delta[j].items():
                vacc(left, (a, b, k), c * c2)
            for (a, b), c2 in h.delta[k].items():
                vacc(right, (j, a, b), c * c2)
        if left != right:
            bad.append("coassociativity fails at %s" % lab[i])
        # counit
        lc: dict = {}
        rc: dict = {}
        for (j, k), c in h.delta[i].items():
            if h.eps[j] != 0:
                vacc(lc, k, c * h.eps[j])
            if h.eps[k] != 0:
                vacc(rc, j, c * h.eps[k])
        e = h.basis(i)
        if lc != e or rc != e:
            bad.append("counit fails at %s" % lab[i])
        # antipode
        eta = vscale(alg.one, h.eps[i])
        sl: dict = {}
        sr: dict = {}
        for (j, k), c in h.delta[i].items():
            sl = vadd(sl, vscale(alg.mul(h.S(h.basis(j)), h.basis(k)), c))
            sr = vadd(sr, vscale(alg.mul(h.basis(j), h.S(h.basis(k))), c))
        if sl != eta:
            bad.append("antipode axiom m(S (x) id)Delta fails at %s" % lab[i])
        if sr != eta:
            bad.append("antipode axiom m(id (x) S)Delta fails at %s" % lab[i])
    # Delta and eps are algebra maps
    for i in range(d):
        for j in range(d):
            prod = alg.mul(h.basis(i), h.basis(j))
            if h.Delta(prod) != tensor_mul(pair, h.delta[i], h.delta[j]):
                bad.append("Delta not multiplicative at (%s, %s)" % (lab[i], lab[j]))
            if h.counit(prod) != h.eps[i] * h.eps[j]:
                bad.append("eps not multiplicative at (%s, %s)" % (lab[i], lab[j]))
    one = alg.one
    if h.Delta(one) != {(k, k2): a * b for k, a in one.items() for k2, b in one.items()}:
        bad.append("Delta(1) != 1 (x) 1")
    if h.counit(one) != 1:
        bad.append("eps(1) != 1")
    return bad


def group_algebra_z2(field: Field = QQ) -> Hopf:
    """k[Z_2] with basis (1, g)."""
    one = field.one
    alg = Algebra.from_mult(field, ["1", "g"],
                            {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}, (1, 1): {0: one}},
                            {0: one})
    return Hopf(alg, [{(0, 0): one}, {(1, 1): one}], [one, one], [{0: one}, {1: one}], name="kZ2")


def dual_hopf(h: Hopf) -> Hopf:
    """The dual Hopf algebra on the dual basis e_i^*.

    Product is convolution (f g)(x) = f(x_1) g(x_2); coproduct is dual to
    multiplication.
    """
    f = h.field
    d = h.dim
    mult: dict = {}
    for k in range(d):
        for (i, j), c in h.delta[k].items():
            mult.setdefault((i, j), {})[k] = c
    unit = {k: h.eps[k] for k in range(d) if h.eps[k] != 0}
    labels = ["%s*" % x for x in h.labels]
    alg = Algebra.from_mult(f, labels, mult, unit)
    delta: list[dict] = [dict() for _ in range(d)]
    for i in range(d):
        for j in range(d):
            for k, c in h.alg.table[i][j]:
                delta[k][(i, j)] = c
    eps = [h.alg.unit.get(k, f.zero) for k in range(d)]
    antipode = [dict() for _ in range(d)]
    for j in range(d):
        for k, c in h.antipode[j].items():
            # (S* e_k^*)(e_j) = e_k^*(S e_j)
            antipode[k][j] = c
    return Hopf(alg, delta, eps, antipode, name=h.name + "*")


# -- bilinear functionals and convolution ----------------------------------

class BilinearForm:
    """Bilinear map H (x) H -> k, stored sparsely on basis pairs."""

    def __init__(self, hopf: Hopf, values: dict | None = None):
        self.hopf = hopf
        self.values = {k: v for k, v in (values or {}).items() if v != 0}

    def __call__(self, i, j):
        return self.values.get((i, j), self.hopf.field.zero)

    def on(self, x: dict, y: dict):
        s = self.hopf.field.zero
        for i, a in x.items():
            for j, b in y.items():
                v = self.values.get((i, j))
                if v is not None:
                    s = s + a * b * v
        return s

    def on_tensor(self, t: dict):
        s = self.hopf.field.zero
        for (i, j), a in t.items():
            v = self.values.get((i, j))
            if v is not None:
                s = s + a * v
        return s

    def matrix(self) -> np.ndarray:
        d = self.hopf.dim
        m = np.empty((d, d), dtype=object)
        m.fill(self.hopf.field.zero)
        for (i, j), v in self.values.items():
            m[i, j] = v
        return m

    def flip(self) -> "BilinearForm":
        return BilinearForm(self.hopf, {(j, i): v for (i, j), v in self.values.items()})

    def __eq__(self, other):
        return isinstance(other, BilinearForm) and self.values == other.values

    def __add__(self, other):
        return BilinearForm(self.hopf, vadd(self.values, other.values))

    def __sub__(self, other):
        return BilinearForm(self.hopf, vadd(self.values, other.values, -1))

    def scaled(self, s):
        return BilinearForm(self.hopf, vscale(self.values, s))

    def __repr__(self):
        lab = self.hopf.labels
        items = ", ".join("%s|%s: %s" % (lab[i], lab[j], v) for (i, j), v in sorted(self.values.items()))
        return "BilinearForm({%s})" % items

    def __mul__(self, other):
        return convolution(self, other)


def counit_form(h: Hopf) -> BilinearForm:
    """eps (x) eps, the unit for convolution."""
    return BilinearForm(h, {(i, j): h.eps[i] * h.eps[j] for i in range(h.dim)
                            for j in range(h.dim) if h.eps[i] != 0 and h.eps[j] != 0})


def convolution(f: BilinearForm, g: BilinearForm) -> BilinearForm:
    """(f * g)(h (x) l) = sum f(h_1 (x) l_1) g(h_2 (x) l_2)."""
    if f.hopf is not g.hopf:
        raise DomainMismatch("convolution of forms on different Hopf algebras")
    h = f.hopf
    fv, gv = f.values, g.values
    out = {}
    for i in range(h.dim):
        di = h.delta[i]
        for j in range(h.dim):
            dj = h.delta[j]
            s = 0
            for (i1, i2), a in di.items():
                for (j1, j2), b in dj.items():
                    x = fv.get((i1, j1))
                    if x is None:
                        continue
                    y = gv.get((i2, j2))
                    if y is None:
                        continue
                    s = s + a * b * x * y
            if s != 0:
                out[(i, j)] = s
    return BilinearForm(h, out)


def convolution_inverse(f: BilinearForm) -> BilinearForm:
    """Solve f * g = eps (x) eps exactly; checks g * f too."""
    h = f.hopf
    d = h.dim
    fv = f.values
    idx = lambda i, j: i * d + j  # noqa: E731
    sys = SparseSystem(d * d, h.field)
    unit = counit_form(h)
    for i in range(d):
        for j in range(d):
            row: dict = {}
            for (i1, i2), a in h.delta[i].items():
                for (j1, j2), b in h.delta[j].items():
                    x = fv.get((i1, j1))
                    if x is not None:
                        vacc(row, idx(i2, j2), a * b * x)
            sys.add(row, unit(i, j))
            if sys.inconsistent:
                raise NotInvertible("form is not convolution invertible")
    if sys.rank < d * d:
        raise NotInvertible("convolution inverse not unique; form is not invertible")
    x = sys.solution()
    g = BilinearForm(h, {(i, j): x[idx(i, j)] for i in range(d) for j in range(d)})
    if convolution(g, f) != unit:
        raise NotInvertible("left and right convolution inverses differ")
    return g
