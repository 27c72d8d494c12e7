"""The adjoint functor pair between differential E-modules and complexes
of graded S-modules, kernel modules K_a(M), strongly linear strands and
parts, the unit/counit maps, and resolution via homological perturbation.

Windowing: all constructions on the E-side carry a theta-cap.  The
differentials preserve the total A-degree b of a piece (b; j), and a piece
is complete whenever every A-degree a <= b has been enumerated, so pieces
with theta(b) <= cap are computed exactly and the rest are dropped.
"""

from __future__ import annotations

from .complexes import GradedComplex, slice_map
from .exterior import DifferentialEModule, EModule, HomologyData, mult_sign, \
    sub_emodule, subset_sign, with_zero_differential
from .grading import Multidegree, deg_add, deg_sub, effective_degrees_up_to, \
    monomials_of_degree
from .groebner import ModulePresentation, minimal_effective_degrees
from .linalg import mat_vec, nullspace, rank, zeros
from .poly import Poly, PolyRing


def presentation_top(M: ModulePresentation) -> int:
    """Largest theta-weight among the generators and relation entries."""
    spec = M.ring.spec
    top = max(spec.weight(d) for d in M.gen_degrees)
    for rel in M.relations:
        for (c, u) in rel:
            w = spec.weight(spec.exponent_degree(u)) \
                + spec.weight(M.gen_degrees[c])
            top = max(top, w)
    return top


def default_cap(M: ModulePresentation, length: int | None = None) -> int:
    """theta-cap large enough that homological degrees <= length are exact.
    Heuristic: syzygy degrees are assumed to grow by at most one variable
    weight per homological step above the presentation degrees."""
    if length is None:
        length = M.ring.nvars + 1
    return presentation_top(M) + (length + 1) * max(M.ring.spec.var_weights)


# ---------------------------------------------------------------------------
# the functor into complexes of free modules

def _l_layout(D: EModule):
    """Group pieces by auxiliary degree; per degree, sort by (weight, lex).
    Returns (jmax, keys_by_j, offsets, gen_degrees_by_j)."""
    spec = D.spec
    if any(j < 0 for (_, j) in D.pieces):
        raise ValueError("negative auxiliary degrees not supported here")
    jmax = D.top_aux() if D.pieces else 0
    keys_by_j: list[list] = [[] for _ in range(jmax + 1)]
    for key in D.pieces:
        keys_by_j[key[1]].append(key)
    for lst in keys_by_j:
        lst.sort(key=lambda k: (spec.weight(k[0]), k[0]))
    offsets: dict = {}
    gens: list[list[Multidegree]] = []
    for j, lst in enumerate(keys_by_j):
        degs: list[Multidegree] = []
        for key in lst:
            offsets[key] = (j, len(degs))
            degs.extend([key[0]] * D.dim(key))
        gens.append(degs)
    return jmax, keys_by_j, offsets, gens


def functor_L(D: EModule | DifferentialEModule) -> GradedComplex:
    """The complex with j-th term ⊕_a S(-a) ⊗ D_(a;j) and differential
    s⊗d -> Σ x_i s ⊗ e_i d - s ⊗ ∂(d)."""
    ring = D.ring
    f = ring.field
    jmax, keys_by_j, offsets, gens = _l_layout(D)
    diffs = []
    for j in range(1, jmax + 1):
        rows, cols = len(gens[j - 1]), len(gens[j])
        mat = [[ring.zero() for _ in range(cols)] for _ in range(rows)]
        sign = f.of(-1 if j % 2 else 1)
        for key in keys_by_j[j]:
            _, coff = offsets[key]
            for i in range(ring.nvars):
                tkey = D.action_target(i, key)
                if tkey not in offsets or offsets[tkey][0] != j - 1:
                    continue
                _, roff = offsets[tkey]
                act = D.action(i, key)
                xi = ring.gen(i)
                for r in range(len(act)):
                    for c in range(len(act[0])):
                        if act[r][c]:
                            mat[roff + r][coff + c] = (
                                mat[roff + r][coff + c]
                                + xi.scale(f.mul(sign, act[r][c])))
            if isinstance(D, DifferentialEModule):
                tkey = (key[0], j - 1)
                if tkey in offsets:
                    _, roff = offsets[tkey]
                    dm = D.diff(key)
                    for r in range(len(dm)):
                        for c in range(len(dm[0])):
                            if dm[r][c]:
                                mat[roff + r][coff + c] = (
                                    mat[roff + r][coff + c]
                                    + ring.constant(f.neg(dm[r][c])))
        diffs.append(mat)
    return GradedComplex(ring, gens, diffs)


def functor_L_map(Dsrc: EModule, Dtgt: EModule, psi: dict) -> list[list[list[Poly]]]:
    """Chain map L(psi): L(Dsrc) -> L(Dtgt) induced by a degree-(0;0)
    E-module map given piecewise by the matrices in psi."""
    ring = Dsrc.ring
    js, ks, offs_s, gens_s = _l_layout(Dsrc)
    jt, kt, offs_t, gens_t = _l_layout(Dtgt)
    jmax = max(js, jt)
    out = []
    for j in range(jmax + 1):
        rows = len(gens_t[j]) if j <= jt else 0
        cols = len(gens_s[j]) if j <= js else 0
        mat = [[ring.zero() for _ in range(cols)] for _ in range(rows)]
        if j <= js:
            for key in ks[j]:
                m = psi.get(key)
                if m is None or key not in offs_t:
                    continue
                _, coff = offs_s[key]
                _, roff = offs_t[key]
                for r in range(len(m)):
                    for c in range(len(m[0])):
                        if m[r][c]:
                            mat[roff + r][coff + c] = ring.constant(m[r][c])
        out.append(mat)
    return out


# ---------------------------------------------------------------------------
# the functor into differential E-modules

class _ModuleSource:
    """Adapter presenting a module as a complex concentrated in degree 0."""

    def __init__(self, M: ModulePresentation):
        self.M = M
        self.ring = M.ring

    def hom_degrees(self):
        return [0]

    def degrees_at(self, j, cap):
        spec = self.ring.spec
        out = set()
        for d in self.M.gen_degrees:
            out.update(effective_degrees_up_to(spec, cap, base=d))
        return sorted(out, key=lambda a: (spec.weight(a), a))

    def basis(self, j, a):
        return self.M.graded_piece(a).monomials

    def mult_column(self, j, a, m_idx, i):
        return [row[m_idx] for row in self.M.multiplication_map(a, i)]

    def diff_column(self, j, a, m_idx):
        return None


class _ComplexSource:
    """Adapter for a complex of free modules (bases = monomials)."""

    def __init__(self, C: GradedComplex):
        self.C = C
        self.ring = C.ring
        self._slices: dict = {}

    def hom_degrees(self):
        return list(range(self.C.length + 1))

    def degrees_at(self, j, cap):
        spec = self.ring.spec
        out = set()
        for d in self.C.degrees[j]:
            out.update(effective_degrees_up_to(spec, cap, base=d))
        return sorted(out, key=lambda a: (spec.weight(a), a))

    def basis(self, j, a):
        return self.C.module_basis(j, a)

    def mult_column(self, j, a, m_idx, i):
        comp, u = self.basis(j, a)[m_idx]
        v = list(u)
        v[i] += 1
        tgt = self.basis(j, deg_add(a, self.ring.spec.var_degrees[i]))
        f = self.ring.field
        col = [f.zero] * len(tgt)
        col[tgt.index((comp, tuple(v)))] = f.one
        return col

    def diff_column(self, j, a, m_idx):
        if j == 0:
            return None
        if (j, a) not in self._slices:
            self._slices[(j, a)] = slice_map(
                self.ring, self.C.degrees[j - 1], self.C.degrees[j],
                self.C.diffs[j - 1], a)
        sl = self._slices[(j, a)]
        return [row[m_idx] for row in sl]


class RData(DifferentialEModule):
    """functor_R output: a windowed differential E-module whose basis labels
    are (j, a, m_idx, I): homological degree, A-degree of the S-side basis
    element, its index, and the exterior subset."""

    def __init__(self, ring, pieces, actions, diffs, cap, source):
        super().__init__(ring, pieces, actions, diffs)
        self.cap = cap
        self.source = source


def functor_R(C, cap: int) -> RData:
    """R(C): ⊕_j ⊕_a (C_j)_a ⊗ ω(-a; -j), with the differential
    c⊗f -> (-1)^j Σ x_i c ⊗ e_i f + ∂_C(c) ⊗ f, windowed at theta <= cap."""
    src = _ModuleSource(C) if isinstance(C, ModulePresentation) else _ComplexSource(C)
    ring = src.ring
    spec = ring.spec
    f = ring.field
    n = ring.nvars
    import itertools
    subsets = [frozenset(c) for size in range(n + 1)
               for c in itertools.combinations(range(n), size)]
    comp_deg = {}
    for I in subsets:
        a = spec.zero
        for i in range(n):
            if i not in I:
                a = deg_add(a, spec.var_degrees[i])
        comp_deg[I] = a

    pieces: dict = {}
    for j in src.hom_degrees():
        for a in src.degrees_at(j, cap):
            basis = src.basis(j, a)
            if not basis:
                continue
            for I in subsets:
                b = deg_add(a, comp_deg[I])
                if spec.weight(b) > cap:
                    continue
                key = (b, j + (n - len(I)))
                lst = pieces.setdefault(key, [])
                for m_idx in range(len(basis)):
                    lst.append((j, a, m_idx, I))
    index = {key: {lab: p for p, lab in enumerate(labs)}
             for key, labs in pieces.items()}

    actions: dict = {}
    diffs: dict = {}
    full = frozenset(range(n))
    for key, labs in pieces.items():
        b, J = key
        # right e_i-action: on the omega factor only
        for i in range(n):
            tkey = (deg_sub(b, spec.var_degrees[i]), J - 1)
            tindex = index.get(tkey)
            if tindex is None:
                continue
            mat = zeros(f, len(pieces[tkey]), len(labs))
            nonzero = False
            for col, (j, a, m_idx, I) in enumerate(labs):
                s = mult_sign(I, i)
                if s:
                    mat[tindex[(j, a, m_idx, I | {i})]][col] = f.of(s)
                    nonzero = True
            if nonzero:
                actions[(i, key)] = mat
        # differential
        tkey = (b, J - 1)
        tindex = index.get(tkey)
        if tindex is None:
            continue
        mat = zeros(f, len(pieces[tkey]), len(labs))
        nonzero = False
        for col, (j, a, m_idx, I) in enumerate(labs):
            csize = n - len(I)
            for i in range(n):
                s = mult_sign(I, i)
                if not s:
                    continue
                # (-1)^j from the formula, (-1)^{|I^c|} from the left action
                if (csize + j) % 2:
                    s = -s
                a2 = deg_add(a, spec.var_degrees[i])
                mc = src.mult_column(j, a, m_idx, i)
                for m2, cval in enumerate(mc):
                    if cval:
                        r = tindex[(j, a2, m2, I | {i})]
                        mat[r][col] = f.add(mat[r][col], f.mul(f.of(s), cval))
                        nonzero = True
            dc = src.diff_column(j, a, m_idx)
            if dc is not None:
                for m2, cval in enumerate(dc):
                    if cval:
                        r = tindex[(j - 1, a, m2, I)]
                        mat[r][col] = f.add(mat[r][col], cval)
                        nonzero = True
        if nonzero:
            diffs[key] = mat
    return RData(ring, pieces, actions, diffs, cap, src)


# ---------------------------------------------------------------------------
# the kernel module K_a(M)

class KernelData:
    def __init__(self, K: EModule, inclusion: dict, T: EModule, a: Multidegree):
        self.K = K
        self.inclusion = inclusion  # key -> list of vectors in T coordinates
        self.T = T                  # M_a ⊗ omega, labels (m_idx, I)
        self.a = a


def _tensor_with_omega(M: ModulePresentation, a: Multidegree) -> EModule:
    """M_a ⊗ ω as a right E-module; basis labels (m_idx, I)."""
    from .exterior import omega_E
    ring = M.ring
    f = ring.field
    w = omega_E(ring)
    dim = M.dim(a)
    pieces: dict = {}
    for (wa, j), labels in w.pieces.items():
        key = (deg_add(a, wa), j)
        pieces[key] = [(m, I) for m in range(dim) for I in labels]
    index = {key: {lab: p for p, lab in enumerate(labs)}
             for key, labs in pieces.items()}
    actions: dict = {}
    spec = ring.spec
    for key, labs in pieces.items():
        for i in range(ring.nvars):
            tkey = (deg_sub(key[0], spec.var_degrees[i]), key[1] - 1)
            tindex = index.get(tkey)
            if tindex is None:
                continue
            mat = zeros(f, len(pieces[tkey]), len(labs))
            nonzero = False
            for col, (m, I) in enumerate(labs):
                s = mult_sign(I, i)
                if s:
                    mat[tindex[(m, I | {i})]][col] = f.of(s)
                    nonzero = True
            if nonzero:
                actions[(i, key)] = mat
    return EModule(ring, pieces, actions)


def kernel_K_data(M: ModulePresentation, a: Multidegree) -> KernelData:
    """K_a(M) = ker(M_a ⊗ ω -> R(M)), computed exactly (only the n+1 graded
    pieces M_{a + deg x_i} are needed)."""
    ring = M.ring
    spec = ring.spec
    f = ring.field
    n = ring.nvars
    if M.dim(a) == 0:
        raise ValueError(f"M has no elements in degree {a}")
    T = _tensor_with_omega(M, a)
    mults = [M.multiplication_map(a, i) for i in range(n)]
    subspaces: dict = {}
    for key, labs in T.pieces.items():
        # rows of the map into R(M), indexed by (i's target degree, m', I')
        rows: dict = {}
        entries: list[tuple[int, int, object]] = []  # (row, col, value)
        for col, (m, I) in enumerate(labs):
            csize = n - len(I)
            for i in range(n):
                s = mult_sign(I, i)
                if not s:
                    continue
                if csize % 2:
                    s = -s
                col_m = [row[m] for row in mults[i]]
                tdeg = deg_add(a, spec.var_degrees[i])
                for m2, cval in enumerate(col_m):
                    if cval:
                        lab = (tdeg, m2, I | {i})
                        r = rows.setdefault(lab, len(rows))
                        entries.append((r, col, f.mul(f.of(s), cval)))
        mat = zeros(f, len(rows), len(labs))
        for r, c, v in entries:
            mat[r][c] = f.add(mat[r][c], v)
        vecs = nullspace(f, mat, ncols=len(labs))
        if vecs:
            subspaces[key] = vecs
    K, incl = sub_emodule(T, subspaces)
    return KernelData(K, incl, T, a)


def kernel_K(M: ModulePresentation, a: Multidegree) -> EModule:
    return kernel_K_data(M, a).K


# ---------------------------------------------------------------------------
# strands

def resolve_strand_degree(M: ModulePresentation, a: Multidegree | None) -> Multidegree:
    mins = minimal_effective_degrees(M)
    if a is None:
        if len(mins) != 1:
            raise ValueError(f"no unique minimal effective degree; minima are {mins}")
        return mins[0]
    if a not in mins:
        raise ValueError(f"{a} is not minimal in Eff(M); minima are {mins}")
    return a


def strongly_linear_strand(M: ModulePresentation, a: Multidegree | None = None) -> GradedComplex:
    """L(K_a(M)): the a-strongly linear strand of the minimal free
    resolution of M."""
    a = resolve_strand_degree(M, a)
    return functor_L(with_zero_differential(kernel_K(M, a)))


def strand_phi0(M: ModulePresentation, data: KernelData,
                F: GradedComplex) -> list[list[Poly]]:
    """Augmentation-compatible map strand_0 -> F_0: each strand generator
    (an element of M_a ⊗ socle ≅ M_a) is sent to the canonical monomial lift
    of that element of M_a."""
    ring = M.ring
    a = data.a
    full = frozenset(range(ring.nvars))
    key = (a, 0)
    piece_labels = data.T.pieces.get(key, [])
    std = M.graded_piece(a).monomials
    cols = []
    for v in data.inclusion.get(key, []):
        col = [ring.zero() for _ in range(len(F.degrees[0]))]
        for p, (m, I) in enumerate(piece_labels):
            if not v[p]:
                continue
            if I != full:
                raise AssertionError("strand generator is not in the socle part")
            comp, u = std[m]
            col[comp] = col[comp] + ring.monomial(u, v[p])
        cols.append(col)
    return [[cols[c][r] for c in range(len(cols))] for r in range(len(F.degrees[0]))]


def strongly_linear_part(F: GradedComplex, cap: int) -> GradedComplex:
    """L(H(R(F))): erase every non-linear term of the differentials of a
    minimal complex, windowed at theta <= cap."""
    D = functor_R(F, cap)
    H = HomologyData(D).module()
    return functor_L(with_zero_differential(H))


# ---------------------------------------------------------------------------
# unit and counit

def unit_map(D: EModule | DifferentialEModule, cap: int):
    """The unit D -> RL(D).  Returns (L(D), RL, eta) where eta maps each
    piece of D into the same-degree piece of RL by the explicit formula
    d -> Σ_J ±(d·e_J) ⊗ e_J*."""
    import itertools
    ring = D.ring
    f = ring.field
    n = ring.nvars
    L = functor_L(D if isinstance(D, DifferentialEModule) else with_zero_differential(D))
    RL = functor_R(L, cap)
    _, _, offsets, gens = _l_layout(D)
    index = {key: {lab: p for p, lab in enumerate(labs)}
             for key, labs in RL.pieces.items()}
    zero_exp = (0,) * n
    eta: dict = {}
    full = frozenset(range(n))
    for key in D.pieces:
        b0, l0 = key
        if key not in RL.pieces:
            continue
        cols = []
        for p in range(D.dim(key)):
            vec = [f.zero] * len(RL.pieces[key])
            # component for each subset J: (±) (v e_J) ⊗ e_{J^c}-dual
            for size in range(n + 1):
                for combo in itertools.combinations(range(n), size):
                    J = frozenset(combo)
                    jt = l0 - size
                    if jt < 0:
                        continue
                    # v e_J in the piece at (b0 - sigma_J, jt)
                    v = [f.zero] * D.dim(key)
                    v[p] = f.one
                    ckey = key
                    ok = True
                    for i in sorted(J):
                        act = D.action(i, ckey)
                        v = mat_vec(f, act, v)
                        ckey = D.action_target(i, ckey)
                        if not any(v):
                            ok = False
                            break
                    if not ok:
                        continue
                    sgn = subset_sign(full - J, J)
                    if jt % 2:
                        sgn = -sgn
                    if ckey not in offsets:
                        continue
                    jterm, off = offsets[ckey]
                    # L-basis element: generator (off + idx) of L_{jterm},
                    # S-monomial 1, omega part e_{J^c}
                    for idx, c in enumerate(v):
                        if not c:
                            continue
                        mlab = _l_monomial_index(L, jterm, ckey[0], off + idx, zero_exp)
                        lab = (jterm, ckey[0], mlab, full - J)
                        r = index[key][lab]
                        vec[r] = f.add(vec[r], f.mul(f.of(sgn), c))
            cols.append(vec)
        eta[key] = [[cols[c][r] for c in range(len(cols))]
                    for r in range(len(RL.pieces[key]))]
    return L, RL, eta


def _l_monomial_index(L: GradedComplex, j: int, a: Multidegree,
                      gen: int, u: tuple) -> int:
    """Index of the monomial x^u on generator `gen` in the sorted basis of
    (L_j)_a used by functor_R's complex adapter."""
    basis = L.module_basis(j, a)
    return basis.index((gen, u))


def counit_matrices(C: GradedComplex, R: RData, LR: GradedComplex) -> list[list[list[Poly]]]:
    """The counit LR(C) -> C: project onto the labels with omega-degree
    (0;0) and j = i, then apply the S-action times (-1)^i."""
    ring = C.ring
    f = ring.field
    n = ring.nvars
    full = frozenset(range(n))
    _, keys_by_j, offsets, gens = _l_layout(R)
    out = []
    for i in range(LR.length + 1):
        rows = len(C.degrees[i]) if i <= C.length else 0
        cols = len(LR.degrees[i])
        mat = [[ring.zero() for _ in range(cols)] for _ in range(rows)]
        sign = f.of(-1 if i % 2 else 1)
        col = 0
        for key in keys_by_j[i] if i < len(keys_by_j) else []:
            for (j, a, m_idx, I) in R.pieces[key]:
                if j == i and I == full:
                    comp, u = R.source.basis(j, a)[m_idx]
                    mat[comp][col] = mat[comp][col] + ring.monomial(u, sign)
                col += 1
        out.append(mat)
    return out


def counit(C: GradedComplex, cap: int):
    """Returns (R(C), LR(C), eps matrices)."""
    R = functor_R(C, cap)
    LR = functor_L(R)
    return R, LR, counit_matrices(C, R, LR)


# ---------------------------------------------------------------------------
# contraction and perturbation

class Contraction:
    """Per-piece contraction data for L-bar(D) onto L-bar(H(D)): constant
    matrices iota (H -> piece), pi (piece -> H), and h (piece -> the piece
    one auxiliary degree up)."""

    def __init__(self, D: DifferentialEModule):
        from .linalg import extend_basis, rref, solve, transpose
        self.D = D
        f = D.ring.field
        self.iota: dict = {}
        self.pi: dict = {}
        self.h: dict = {}
        split: dict = {}
        for key in D.pieces:
            a, j = key
            dim = D.dim(key)
            Z = nullspace(f, D.diff(key), ncols=dim)
            up = (a, j + 1)
            B: list[list] = []
            if D.dim(up):
                dmat = D.diff(up)
                B = extend_basis(f, [], [[dmat[r][c] for r in range(dim)]
                                         for c in range(D.dim(up))])
            H = extend_basis(f, B, Z)
            std = [[f.one if r == c else f.zero for r in range(dim)]
                   for c in range(dim)]
            Lv = extend_basis(f, B + H, std)
            split[key] = (B, H, Lv)
        from .linalg import coords_in_basis
        for key, (B, H, Lv) in split.items():
            a, j = key
            dim = D.dim(key)
            basis = B + H + Lv
            # coordinates in the split basis, as rows of the inverse matrix
            inv_rows = []
            for r in range(dim):
                e = [f.one if c == r else f.zero for c in range(dim)]
                inv_rows.append(coords_in_basis(f, basis, e))
            # pi: class coordinates (the H block)
            nb = len(B)
            self.pi[key] = [[inv_rows[r][nb + hh] for r in range(dim)]
                            for hh in range(len(H))]
            self.iota[key] = [[H[hh][r] for hh in range(len(H))]
                              for r in range(dim)]
            # h: piece -> (a, j+1); sends B-part back through g^{-1} = (-del)|_L
            up = (a, j + 1)
            if D.dim(up) and B:
                _, Hu, Lu = split[up]
                dmat = D.diff(up)
                # g maps span(Lu) isomorphically onto span(B); solve g(w) = b
                gcols = [[f.neg(x) for x in mat_vec(f, dmat, w)] for w in Lu]
                hmat = zeros(f, D.dim(up), dim)
                for r in range(dim):
                    bpart = inv_rows[r][:nb]
                    # the B-component of e_r as a vector
                    bv = [f.zero] * dim
                    for bi, cval in enumerate(bpart):
                        if cval:
                            for t in range(dim):
                                bv[t] = f.add(bv[t], f.mul(cval, B[bi][t]))
                    if not any(bv):
                        continue
                    from .linalg import solve as lsolve, transpose as ltr
                    x = lsolve(f, ltr(gcols), bv)
                    for li, cval in enumerate(x):
                        if cval:
                            for t in range(D.dim(up)):
                                hmat[t][r] = f.add(hmat[t][r],
                                                   f.mul(cval, Lu[li][t]))
                self.h[key] = hmat

    def h_at(self, key):
        m = self.h.get(key)
        if m is not None:
            return m
        a, j = key
        return zeros(self.D.ring.field, self.D.dim((a, j + 1)), self.D.dim(key))


def perturbation_resolution(M: ModulePresentation, cap: int | None = None,
                            length: int | None = None) -> GradedComplex:
    """Minimal free resolution built as a perturbation of L(H(R(M))): the
    differential is Σ_{i>=1} (-1)^{i-1} π (∂' h)^{i-1} ∂' ι, with ∂' left
    multiplication by Σ x_i ⊗ e_i."""
    ring = M.ring
    f = ring.field
    spec = ring.spec
    if length is None:
        length = ring.nvars + 1
    if cap is None:
        cap = default_cap(M, length)
    D = functor_R(M, cap)
    con = Contraction(D)
    hd = HomologyData(D)
    H = hd.module()
    jmax, keys_by_j, offsets, gens = _l_layout(H)
    top = presentation_top(M)
    maxw = max(spec.var_weights)
    unreliable = [j for j in range(min(jmax, length) + 1)
                  if top + (j + 1) * maxw > cap]
    if unreliable:
        raise ValueError(f"window too small; unreliable homological degrees {unreliable}")

    def apply_dprime(state: dict) -> dict:
        out: dict = {}
        for (key, u), v in state.items():
            b, j = key
            sign = f.of(-1 if j % 2 else 1)
            for i in range(ring.nvars):
                tkey = D.action_target(i, key)
                if tkey not in D.pieces:
                    continue
                w = mat_vec(f, D.action(i, key), v)
                if not any(w):
                    continue
                u2 = list(u)
                u2[i] += 1
                slot = (tkey, tuple(u2))
                cur = out.get(slot)
                if cur is None:
                    out[slot] = [f.mul(sign, x) for x in w]
                else:
                    out[slot] = [f.add(a_, f.mul(sign, x)) for a_, x in zip(cur, w)]
        return {k: v for k, v in out.items() if any(v)}

    def apply_h(state: dict) -> dict:
        out: dict = {}
        for (key, u), v in state.items():
            w = mat_vec(f, con.h_at(key), v)
            if any(w):
                a, j = key
                out[((a, j + 1), u)] = w
        return out

    diffs = []
    for j in range(1, jmax + 1):
        rows, cols = len(gens[j - 1]), len(gens[j])
        mat = [[ring.zero() for _ in range(cols)] for _ in range(rows)]
        col = 0
        for key in keys_by_j[j]:
            reps = hd.reps[key]
            for p in range(len(reps)):
                # iota: the chosen cycle representative
                state = {(key, (0,) * ring.nvars): list(reps[p])}
                term = 1
                while state:
                    state = apply_dprime(state)
                    sign = f.of(1 if term % 2 else -1)
                    # project with pi
                    for (skey, u), v in state.items():
                        pv = mat_vec(f, con.pi.get(skey, []), v) if skey in con.pi else []
                        if pv and any(pv):
                            jt, roff = offsets[skey]
                            for r, cval in enumerate(pv):
                                if cval:
                                    mat[roff + r][col] = (
                                        mat[roff + r][col]
                                        + ring.monomial(u, f.mul(sign, cval)))
                    state = apply_h(state)
                    term += 1
                col += 1
        diffs.append(mat)
    return GradedComplex(ring, gens, diffs)
