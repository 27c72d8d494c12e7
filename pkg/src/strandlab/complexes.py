"""Complexes of graded free modules: minimal free resolutions, Betti
tables, graded slices, chain-map lifting.

A complex is F_0 <- F_1 <- ... <- F_len; diffs[i] is the matrix of
F_{i+1} -> F_i, with rows indexed by generators of F_i and columns by
generators of F_{i+1}.  All entries are homogeneous.
"""

from __future__ import annotations

from .grading import Multidegree, deg_add, deg_sub, format_degree, \
    monomials_of_degree
from .groebner import ModulePresentation, SchreyerOrder, buchberger, \
    elem_lead, elem_to_polys, syzygies, POTOrder
from .linalg import mat_vec, rank, solve
from .poly import Poly, PolyRing


class GradedComplex:
    def __init__(self, ring: PolyRing, degrees: list[list[Multidegree]],
                 diffs: list[list[list[Poly]]]):
        self.ring = ring
        self.degrees = [list(d) for d in degrees]
        self.diffs = diffs
        if len(diffs) != max(len(degrees) - 1, 0):
            raise ValueError("differential count mismatch")

    @property
    def length(self) -> int:
        return len(self.degrees) - 1

    def rank_of(self, i: int) -> int:
        return len(self.degrees[i]) if 0 <= i < len(self.degrees) else 0

    # -- sanity ----------------------------------------------------------
    def check_homogeneous(self):
        for i, d in enumerate(self.diffs):
            for r, row in enumerate(d):
                for c, p in enumerate(row):
                    if not p:
                        continue
                    want = deg_sub(self.degrees[i + 1][c], self.degrees[i][r])
                    if p.degree() != want:
                        raise AssertionError(
                            f"entry ({r},{c}) of d_{i + 1} has degree {p.degree()}, "
                            f"expected {want}")

    def check_complex(self):
        for i in range(len(self.diffs) - 1):
            prod = _poly_mat_mul(self.ring, self.diffs[i], self.diffs[i + 1])
            for row in prod:
                for p in row:
                    if p:
                        raise AssertionError(f"d_{i + 1} d_{i + 2} != 0")

    def is_minimal(self) -> bool:
        return all(not p.constant_term()
                   for d in self.diffs for row in d for p in row)

    def is_strongly_linear(self) -> bool:
        """Every differential entry is a k-linear combination of variables."""
        return all(p.is_linear_form()
                   for d in self.diffs for row in d for p in row)

    # -- graded slices ---------------------------------------------------
    def module_basis(self, i: int, a: Multidegree) -> list[tuple[int, tuple[int, ...]]]:
        out = []
        for c, d in enumerate(self.degrees[i]):
            for u in monomials_of_degree(deg_sub(a, d), self.ring.spec):
                out.append((c, u))
        return out

    def slice_matrix(self, i: int, a: Multidegree) -> list[list]:
        """k-matrix of (F_{i+1})_a -> (F_i)_a in monomial bases."""
        return slice_map(self.ring, self.degrees[i], self.degrees[i + 1],
                         self.diffs[i], a)

    def homology_dims(self, a: Multidegree) -> list[int]:
        """Dimensions of homology at F_0 .. F_len in degree a (at F_0 this is
        coker d_1; at F_len, ker d_len)."""
        dims = [len(self.module_basis(i, a)) for i in range(len(self.degrees))]
        rks = [rank(self.ring.field, self.slice_matrix(i, a))
               for i in range(len(self.diffs))]
        out = []
        for i in range(len(self.degrees)):
            rin = rks[i] if i < len(rks) else 0
            rout = rks[i - 1] if i > 0 else 0
            out.append(dims[i] - rin - rout)
        return out

    # -- betti -----------------------------------------------------------
    def betti(self) -> dict[tuple[int, Multidegree], int]:
        table: dict[tuple[int, Multidegree], int] = {}
        for i, degs in enumerate(self.degrees):
            for a in degs:
                table[(i, a)] = table.get((i, a), 0) + 1
        return table

    def betti_lines(self) -> list[str]:
        spec = self.ring.spec
        items = sorted(self.betti().items(),
                       key=lambda kv: (kv[0][0], spec.weight(kv[0][1]), kv[0][1]))
        return [f"{i}\t{format_degree(a)}\t{n}" for (i, a), n in items]

    def betti_grid(self) -> list[str]:
        """Betti numbers collapsed along theta, Macaulay-style: row rho lists
        sum of ranks with theta(a) - i = rho, one column per homological
        degree."""
        spec = self.ring.spec
        grid: dict[tuple[int, int], int] = {}
        for (i, a), n in self.betti().items():
            key = (spec.weight(a) - i, i)
            grid[key] = grid.get(key, 0) + n
        if not grid:
            return []
        rhos = range(min(k[0] for k in grid), max(k[0] for k in grid) + 1)
        cols = range(0, self.length + 1)
        width = max(len(str(v)) for v in grid.values())
        lines = []
        for rho in rhos:
            cells = [str(grid[(rho, i)]) if (rho, i) in grid else "."
                     for i in cols]
            lines.append(f"{rho}: " + " ".join(c.rjust(width) for c in cells))
        return lines


def _poly_mat_mul(ring: PolyRing, a, b) -> list[list[Poly]]:
    rows, cols = len(a), (len(b[0]) if b else 0)
    inner = len(b)
    out = [[ring.zero() for _ in range(cols)] for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            p = a[i][k]
            if not p:
                continue
            for j in range(cols):
                if b[k][j]:
                    out[i][j] = out[i][j] + p * b[k][j]
    return out


def slice_map(ring: PolyRing, tgt_degs: list[Multidegree],
              src_degs: list[Multidegree], mat: list[list[Poly]],
              a: Multidegree) -> list[list]:
    """Degree-a slice of a matrix of polynomials, in monomial bases sorted
    by (component, lex)."""
    f = ring.field
    spec = ring.spec
    tgt = []
    tindex = {}
    for c, d in enumerate(tgt_degs):
        for u in monomials_of_degree(deg_sub(a, d), spec):
            tindex[(c, u)] = len(tgt)
            tgt.append((c, u))
    src = [(c, u) for c, d in enumerate(src_degs)
           for u in monomials_of_degree(deg_sub(a, d), spec)]
    out = [[f.zero] * len(src) for _ in range(len(tgt))]
    for j, (c, u) in enumerate(src):
        for r in range(len(tgt_degs)):
            p = mat[r][c]
            for v, coeff in p.terms.items():
                w = tuple(x + y for x, y in zip(u, v))
                i = tindex[(r, w)]
                out[i][j] = f.add(out[i][j], coeff)
    return out


# ---------------------------------------------------------------------------
# resolutions

def free_resolution(M: ModulePresentation, max_length: int | None = None) -> GradedComplex:
    """Minimal free resolution of M, computed by iterated syzygies on a
    Groebner basis (Schreyer orders) and minimized at the end."""
    ring = M.ring
    degrees: list[list[Multidegree]] = [list(M.gen_degrees)]
    diffs: list[list[list[Poly]]] = []
    gb = M.groebner()
    cap = max_length if max_length is not None else ring.nvars + 1
    level = 0
    while gb.elements and level < cap:
        cols = [elem_to_polys(ring, len(degrees[-1]), g) for g in gb.elements]
        diffs.append([[cols[j][r] for j in range(len(cols))]
                      for r in range(len(degrees[-1]))])
        degrees.append(gb.element_degrees())
        gb = syzygies(gb)
        level += 1
    cx = GradedComplex(ring, degrees, diffs)
    minimize(cx)
    return cx


def minimize(cx: GradedComplex):
    """Cancel unit entries in place until the complex is minimal."""
    f = cx.ring.field
    while True:
        hit = None
        for k, d in enumerate(cx.diffs):
            for i, row in enumerate(d):
                for j, p in enumerate(row):
                    if p.is_constant() and p:
                        hit = (k, i, j)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            break
        k, i, j = hit
        d = cx.diffs[k]
        u = d[i][j].constant_term()
        uinv = f.inv(u)
        nrows, ncols = len(d), len(d[0])
        newd = []
        for r in range(nrows):
            if r == i:
                continue
            newrow = []
            for c in range(ncols):
                if c == j:
                    continue
                newrow.append(d[r][c] - (d[r][j] * d[i][c]).scale(uinv))
            newd.append(newrow)
        cx.diffs[k] = newd
        if k + 1 < len(cx.diffs):
            cx.diffs[k + 1] = [row for r, row in enumerate(cx.diffs[k + 1]) if r != j]
        if k > 0:
            cx.diffs[k - 1] = [[p for c, p in enumerate(row) if c != i]
                               for row in cx.diffs[k - 1]]
        del cx.degrees[k][i]
        del cx.degrees[k + 1][j]
    # drop empty top terms
    while len(cx.degrees) > 1 and not cx.degrees[-1]:
        cx.degrees.pop()
        cx.diffs.pop()


# ---------------------------------------------------------------------------
# chain maps

def apply_matrix(ring: PolyRing, mat: list[list[Poly]], col: list[Poly]) -> list[Poly]:
    out = []
    for row in mat:
        s = ring.zero()
        for p, q in zip(row, col):
            if p and q:
                s = s + p * q
        out.append(s)
    return out


def lift_chain_map(F: GradedComplex, G: GradedComplex,
                   phi0: list[list[Poly]]) -> list[list[list[Poly]]] | None:
    """Lift phi0 : F_0 -> G_0 to a chain map phi_i : F_i -> G_i, solving
    d^G phi_{i+1} = phi_i d^F degreewise.  Returns None if some lift fails."""
    ring = F.ring
    f = ring.field
    phis = [phi0]
    for i in range(min(F.length, G.length)):
        phi = phis[-1]
        cols: list[list[Poly]] = []
        for c in range(F.rank_of(i + 1)):
            a = F.degrees[i + 1][c]
            target = apply_matrix(ring, phi, [F.diffs[i][r][c]
                                              for r in range(F.rank_of(i))])
            gbasis = [(gc, u) for gc, d in enumerate(G.degrees[i])
                      for u in monomials_of_degree(deg_sub(a, d), ring.spec)]
            gindex = {m: k for k, m in enumerate(gbasis)}
            rhs = [f.zero] * len(gbasis)
            for gc, p in enumerate(target):
                for u, cf in p.terms.items():
                    rhs[gindex[(gc, u)]] = f.add(rhs[gindex[(gc, u)]], cf)
            mat = slice_map(ring, G.degrees[i], G.degrees[i + 1], G.diffs[i], a)
            x = solve(f, mat, rhs)
            if x is None:
                return None
            src = [(gc, u) for gc, d in enumerate(G.degrees[i + 1])
                   for u in monomials_of_degree(deg_sub(a, d), ring.spec)]
            col = [ring.zero() for _ in range(G.rank_of(i + 1))]
            for k, (gc, u) in enumerate(src):
                if x[k]:
                    col[gc] = col[gc] + ring.monomial(u, x[k])
            cols.append(col)
        phis.append([[cols[c][r] for c in range(len(cols))]
                     for r in range(G.rank_of(i + 1))])
    return phis


def is_quasi_split_sub(phis: list[list[list[Poly]]], field) -> bool:
    """True iff each phi_i is injective with free cokernel after reducing
    modulo the maximal ideal (constant terms have full column rank)."""
    for phi in phis:
        ncols = len(phi[0]) if phi else 0
        if ncols == 0:
            continue
        const = [[p.constant_term() for p in row] for row in phi]
        if rank(field, const) < ncols:
            return False
    return True
