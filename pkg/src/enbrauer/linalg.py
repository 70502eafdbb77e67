"""
Exact linear algebra on numpy object arrays.

Matrices hold ``Fraction`` or ``Fp`` entries. Nothing here ever rounds;
every zero test is a structural equality.
"""

from __future__ import annotations

import json

import numpy as np

from .fields import QQ, Field, Fp, PrimeField, field_of


class LinAlgError(ValueError):
    pass


class NoSolution(LinAlgError):
    pass


class DimensionMismatch(LinAlgError):
    pass


class SingularMatrix(LinAlgError):
    pass


class NotSkewSymmetric(LinAlgError):
    pass


class NotSymmetric(LinAlgError):
    pass


def matrix(rows, field: Field = QQ) -> np.ndarray:
    rows = [list(r) for r in rows]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    m = np.empty((nr, nc), dtype=object)
    for i, r in enumerate(rows):
        if len(r) != nc:
            raise DimensionMismatch("ragged matrix")
        for j, x in enumerate(r):
            m[i, j] = field(x)
    return m


def zeros(nr, nc=None, field: Field = QQ) -> np.ndarray:
    nc = nr if nc is None else nc
    m = np.empty((nr, nc), dtype=object)
    m.fill(field.zero)
    return m


def identity(n, field: Field = QQ) -> np.ndarray:
    m = zeros(n, n, field)
    for i in range(n):
        m[i, i] = field.one
    return m


def matrix_field(m) -> Field:
    for x in np.asarray(m).flat:
        return field_of(x)
    return QQ


def is_zero(m) -> bool:
    return all(x == 0 for x in np.asarray(m).flat)


def equal(a, b) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def is_symmetric(m) -> bool:
    return m.shape[0] == m.shape[1] and equal(m, m.T)


def is_skew(m) -> bool:
    return m.shape[0] == m.shape[1] and is_zero(m + m.T)


def rank(m) -> int:
    """Rank by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in np.asarray(m)]
    if not a or not a[0]:
        return 0
    nr, nc = len(a), len(a[0])
    prev = 1
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nr):
            aic = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, nc):
                # exact division: the Bareiss quotient is integral over Z
                row_i[j] = (p * row_i[j] - aic * row_r[j]) / prev
            row_i[c] = 0 * p
        prev = p
        r += 1
        if r == nr:
            break
    return r


class SparseSystem:
    """Incremental row echelon form for sparse linear systems.

    Rows are ``{column: coefficient}`` dicts. Each stored pivot row has its
    pivot at its smallest column, normalised to one.
    """

    def __init__(self, ncols: int, field: Field = QQ):
        self.ncols = ncols
        self.field = field
        self.pivots: dict[int, tuple[dict, object]] = {}
        self.inconsistent = False

    def reduce(self, row: dict, b):
        row = {c: v for c, v in row.items() if v != 0}
        pivots = self.pivots
        done: set = set()
        while True:
            cands = [c for c in row if c in pivots and c not in done]
            if not cands:
                break
            c = min(cands)
            f = row[c]
            prow, pb = pivots[c]
            for j, v in prow.items():
                nv = row.get(j, 0) - f * v
                if nv == 0:
                    row.pop(j, None)
                else:
                    row[j] = nv
            b = b - f * pb
            done.add(c)
        return row, b

    def add(self, row: dict, b=0) -> bool:
        """Add an equation; returns True when it raised the rank."""
        row, b = self.reduce(row, b)
        if not row:
            if b != 0:
                self.inconsistent = True
            return False
        c = min(row)
        inv = 1 / self.field(row[c])
        self.pivots[c] = ({j: v * inv for j, v in row.items()}, b * inv)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.pivots]

    def solution(self) -> list:
        if self.inconsistent:
            raise NoSolution("inconsistent linear system")
        zero = self.field.zero
        x = [zero] * self.ncols
        for c in sorted(self.pivots, reverse=True):
            prow, b = self.pivots[c]
            s = b
            for j, v in prow.items():
                if j != c:
                    s = s - v * x[j]
            x[c] = s
        return x

    def kernel(self) -> list[list]:
        """Basis of the solution space of the homogeneous system."""
        zero, one = self.field.zero, self.field.one
        basis = []
        for fc in self.free_columns():
            x = [zero] * self.ncols
            x[fc] = one
            for c in sorted(self.pivots, reverse=True):
                prow, _ = self.pivots[c]
                s = zero
                for j, v in prow.items():
                    if j != c:
                        s = s - v * x[j]
                x[c] = s
            basis.append(x)
        return basis


def _rows_of(a) -> list[dict]:
    return [{j: x for j, x in enumerate(r) if x != 0} for r in np.asarray(a)]


def solve(a, b) -> np.ndarray:
    """Exact solution of a x = b (one particular solution)."""
    a = np.asarray(a)
    b = list(np.asarray(b).flat)
    if a.shape[0] != len(b):
        raise DimensionMismatch("a is %dx%d but b has length %d" % (a.shape + (len(b),)))
    field = matrix_field(a) if a.size else QQ
    sys = SparseSystem(a.shape[1], field)
    for row, bi in zip(_rows_of(a), b):
        sys.add(row, field(bi))
    out = np.empty(a.shape[1], dtype=object)
    out[:] = sys.solution()
    return out


def solve_linear(a, b):
    """Like :func:`solve` but returns None when there is no solution."""
    try:
        return solve(a, b)
    except NoSolution:
        return None


def kernel(a) -> list[np.ndarray]:
    a = np.asarray(a)
    field = matrix_field(a)
    sys = SparseSystem(a.shape[1], field)
    for row in _rows_of(a):
        sys.add(row, field.zero)
    out = []
    for v in sys.kernel():
        arr = np.empty(len(v), dtype=object)
        arr[:] = v
        out.append(arr)
    return out


def inverse(a) -> np.ndarray:
    a = np.asarray(a)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionMismatch("inverse of a non-square matrix")
    field = matrix_field(a)
    aug = np.concatenate([a, identity(n, field)], axis=1)
    m = [list(r) for r in aug]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / field(m[c][c])
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        out[i, :] = m[i][n:]
    return out


def is_invertible(a) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(a) == a.shape[0]


def J(n: int, l: int, field: Field = QQ) -> np.ndarray:
    """The standard alternating matrix with an l x l identity block."""
    if not 0 <= 2 * l <= n:
        raise DimensionMismatch("need 0 <= 2l <= n")
    m = zeros(n, n, field)
    for i in range(l):
        m[i, l + i] = field.one
        m[l + i, i] = -field.one
    return m


def skew_canonical_form(a):
    """Congruence normal form of an alternating matrix.

    Returns ``(l, t)`` with ``t`` invertible and ``t.T @ J(n, l) @ t == a``.
    """
    a = np.asarray(a)
    n = a.shape[0]
    if a.shape != (n, n) or not is_skew(a):
        raise NotSkewSymmetric("matrix is not skew-symmetric")
    field = matrix_field(a) if n else QQ
    # rows of p are the new basis vectors; p a p^T is the form in that basis
    p = identity(n, field)
    remaining = list(range(n))
    pairs = []
    while True:
        b = p @ a @ p.T
        hit = next(((i, j) for i in remaining for j in remaining if i < j and b[i, j] != 0), None)
        if hit is None:
            break
        e, f = hit
        p[f, :] = p[f, :] / b[e, f]
        b = p @ a @ p.T
        for k in remaining:
            if k in (e, f):
                continue
            bke, bkf = b[k, e], b[k, f]
            if bke != 0 or bkf != 0:
                p[k, :] = p[k, :] - bkf * p[e, :] + bke * p[f, :]
        remaining = [k for k in remaining if k not in (e, f)]
        pairs.append((e, f))
    l = len(pairs)
    order = [e for e, _ in pairs] + [f for _, f in pairs] + remaining
    p = p[order, :]
    jl = J(n, l, field)
    assert equal(p @ a @ p.T, jl)
    t = inverse(p).T
    return l, t


# -- JSON ------------------------------------------------------------------

def to_json(m) -> dict:
    m = np.asarray(m)
    field = matrix_field(m) if m.size else QQ
    if isinstance(field, PrimeField):
        return {"mod": field.char, "entries": [[int(field(x).v) for x in r] for r in m]}
    return {"rows": m.shape[0], "cols": m.shape[1],
            "entries": [[str(QQ(x)) for x in r] for r in m]}


def from_json(obj, field: Field | None = None) -> np.ndarray:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if isinstance(obj, list):
        return matrix(obj, field or QQ)
    if "mod" in obj:
        f = PrimeField(int(obj["mod"]))
        if field is not None and field != f:
            raise LinAlgError("matrix is over %s, expected %s" % (f, field))
        return matrix(obj["entries"], f)
    ents = obj["entries"]
    m = matrix(ents, field or QQ) if ents else zeros(obj.get("rows", 0), obj.get("cols", 0), field or QQ)
    if "rows" in obj and m.shape[0] != obj["rows"]:
        raise DimensionMismatch("row count does not match entries")
    if "cols" in obj and ents and m.shape[1] != obj["cols"]:
        raise DimensionMismatch("column count does not match entries")
    return m

