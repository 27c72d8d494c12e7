"""Dense exact linear algebra over a Field.

Matrices are lists of rows; rows are lists of field elements.  Everything
is deterministic: pivots are always the first nonzero entry in scan order,
so repeated runs give identical bases.
"""

from __future__ import annotations

from .fields import Field


def zeros(field: Field, m: int, n: int) -> list[list]:
    z = field.zero
    return [[z] * n for _ in range(m)]


def identity(field: Field, n: int) -> list[list]:
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def mat_mul(field: Field, a: list[list], b: list[list]) -> list[list]:
    if a and b and len(a[0]) != len(b):
        raise ValueError("shape mismatch")
    rows, inner = len(a), len(b)
    cols = len(b[0]) if b else 0
    out = zeros(field, rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if not c:
                continue
            bk = b[k]
            for j in range(cols):
                if bk[j]:
                    oi[j] = field.add(oi[j], field.mul(c, bk[j]))
    return out


def mat_vec(field: Field, a: list[list], v: list) -> list:
    out = [field.zero] * len(a)
    for i, row in enumerate(a):
        s = field.zero
        for x, y in zip(row, v):
            if x and y:
                s = field.add(s, field.mul(x, y))
        out[i] = s
    return out


def mat_add(field: Field, a: list[list], b: list[list]) -> list[list]:
    return [[field.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(field: Field, c, a: list[list]) -> list[list]:
    return [[field.mul(c, x) for x in row] for row in a]


def transpose(a: list[list]) -> list[list]:
    return [list(col) for col in zip(*a)] if a else []


def rref(field: Field, mat: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rref matrix, pivot column list)."""
    a = [row[:] for row in mat]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = field.inv(a[r][c])
        a[r] = [field.mul(inv, x) for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(field: Field, mat: list[list]) -> int:
    return len(rref(field, mat)[1])


def nullspace(field: Field, mat: list[list], ncols: int | None = None) -> list[list]:
    """Basis of the right kernel, one vector per free column, in column order."""
    cols = ncols if ncols is not None else (len(mat[0]) if mat else 0)
    if not mat:
        return [[field.one if i == j else field.zero for i in range(cols)]
                for j in range(cols)]
    r, pivots = rref(field, mat)
    pivset = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = [field.zero] * cols
        v[free] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(r[i][free])
        basis.append(v)
    return basis


def solve(field: Field, mat: list[list], rhs: list) -> list | None:
    """One solution of mat @ x = rhs, or None if inconsistent."""
    cols = len(mat[0]) if mat else 0
    if not mat:
        return [field.zero] * cols if all(not b for b in rhs) else None
    aug = [row[:] + [b] for row, b in zip(mat, rhs)]
    r, pivots = rref(field, aug)
    if cols in pivots:
        return None
    x = [field.zero] * cols
    for i, pc in enumerate(pivots):
        x[pc] = r[i][cols]
    return x


def solve_many(field: Field, mat: list[list], rhs_cols: list[list]) -> list[list] | None:
    """Solve mat @ X = B columnwise; B given as list of columns."""
    out = []
    for col in rhs_cols:
        x = solve(field, mat, col)
        if x is None:
            return None
        out.append(x)
    return out


def column_space(field: Field, cols: list[list]) -> list[list]:
    """Subset of the given vectors forming a basis of their span (greedy)."""
    basis: list[list] = []
    echelon: list[list] = []
    for v in cols:
        if _reduce_against(field, echelon, v) is not None:
            basis.append(v)
    return basis


def _reduce_against(field: Field, echelon: list[list], v: list) -> list | None:
    """Reduce v against an internal echelon list; append and return residue if
    independent, else return None.  Mutates `echelon`."""
    w = v[:]
    for e in echelon:
        lead = next(i for i, x in enumerate(e) if x)
        if w[lead]:
            f = field.div(w[lead], e[lead])
            w = [field.sub(a, field.mul(f, b)) for a, b in zip(w, e)]
    if any(w):
        echelon.append(w)
        return w
    return None


def extend_basis(field: Field, have: list[list], candidates: list[list]) -> list[list]:
    """Vectors from `candidates` extending span(have), greedily in order."""
    echelon: list[list] = []
    for v in have:
        _reduce_against(field, echelon, v)
    added = []
    for v in candidates:
        if _reduce_against(field, echelon, v) is not None:
            added.append(v)
    return added


def in_span(field: Field, vecs: list[list], v: list) -> bool:
    if not vecs:
        return not any(v)
    mat = transpose(vecs)
    return solve(field, mat, v) is not None


def coords_in_basis(field: Field, basis: list[list], v: list) -> list | None:
    """Coordinates of v in the given basis (vectors as rows), or None."""
    if not basis:
        return [] if not any(v) else None
    return solve(field, transpose(basis), v)
