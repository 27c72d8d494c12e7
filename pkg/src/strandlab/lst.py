"""The linear syzygy bound: strand length, the rank-one linear syzygy
variety R_a(M) and its dimension, and restriction of scalars.

The incidence variety {(c, y) : (Σ c_i x_i)·(Σ y_j m_j) = 0} fibers over
c-space with fiber dimension t - rank A(c), where A(c) stacks the blocks
c_i·X_i (X_i = multiplication by x_i on M_a).  Every minor of A(c) is a
monomial in c times a constant, so the rank strata are unions of coordinate
subspaces and their dimensions reduce to monomial-ideal Krull dimensions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .grading import GradingSpec, Multidegree, deg_add, deg_sub, \
    effective_degrees_up_to, monomials_of_degree
from .groebner import ModulePresentation, krull_dim
from .complexes import GradedComplex
from .linalg import nullspace, rank
from .poly import PolyRing


def strand_length(L: GradedComplex) -> int:
    """Largest homological degree with a nonzero term."""
    top = 0
    for i in range(len(L.degrees)):
        if L.degrees[i]:
            top = i
    return top


def _mult_blocks(M: ModulePresentation, a: Multidegree):
    return [M.multiplication_map(a, i) for i in range(M.ring.nvars)]


def _minor_profiles(field, blocks, size: int):
    """Monomial generators (as exponent profiles over the c-variables) of
    the ideal of (size)-minors of A(c): a profile (k_0..k_n) occurs iff some
    row selection with k_i rows from block i is linearly independent."""
    rows = []
    for i, X in enumerate(blocks):
        for r in X:
            rows.append((i, r))
    found: set[tuple[int, ...]] = set()
    n = len(blocks)
    for combo in itertools.combinations(range(len(rows)), size):
        profile = [0] * n
        for idx in combo:
            profile[rows[idx][0]] += 1
        prof = tuple(profile)
        if prof in found:
            continue
        if rank(field, [rows[idx][1] for idx in combo]) == size:
            found.add(prof)
    # minimal profiles suffice (divisibility)
    mins = [p for p in sorted(found)
            if not any(q != p and all(x <= y for x, y in zip(q, p)) for q in found)]
    return mins


def _c_ring(field, n: int) -> PolyRing:
    spec = GradingSpec(1, tuple(((1,),) * n), (1,))
    return PolyRing(field, spec, names=[f"c{i}" for i in range(n)])


def rank_one_syzygy_dim(M: ModulePresentation, a: Multidegree) -> int:
    """Dimension of R_a(M) = {w ⊗ m : wm = 0}: stratify the incidence
    variety by rank of A(c) and subtract one for the scaling along the
    product map.  Components with w = 0 or m = 0 are excluded."""
    field = M.ring.field
    n = M.ring.nvars
    t = M.dim(a)
    if t == 0:
        return 0
    blocks = _mult_blocks(M, a)
    cring = _c_ring(field, n)
    best = None
    for rho in range(t):
        profiles = _minor_profiles(field, blocks, rho + 1)
        gens = [cring.monomial(p) for p in profiles]
        d = krull_dim(cring, gens)  # dim of the rank <= rho stratum
        if d >= 1:  # must contain a nonzero c
            val = d + (t - rho)
            if best is None or val > best:
                best = val
    if best is None:
        return 0
    return max(best - 1, 0)


def incidence_ideal(M: ModulePresentation, a: Multidegree):
    """The bilinear equations of the incidence variety in k[c, y], graded so
    that the c's have degree (1,0) and the y's (0,1)."""
    field = M.ring.field
    n = M.ring.nvars
    t = M.dim(a)
    degs = tuple([(1, 0)] * n + [(0, 1)] * t)
    ring = PolyRing(field, GradingSpec(2, degs, (1, 1)),
                    names=[f"c{i}" for i in range(n)] + [f"y{j}" for j in range(t)])
    gens = []
    for i, X in enumerate(_mult_blocks(M, a)):
        for row in X:
            p = ring.zero()
            for j, cval in enumerate(row):
                if cval:
                    u = [0] * (n + t)
                    u[i] = 1
                    u[n + j] = 1
                    p = p + ring.monomial(tuple(u), cval)
            if p:
                gens.append(p)
    return ring, gens


def rank_one_dim_bruteforce(M: ModulePresentation, a: Multidegree) -> int:
    """Exhaustive cross-check over the (small, finite) ground field: compute
    the rank strata pointwise and read off coordinate-subspace dimensions."""
    field = M.ring.field
    q = field.p
    if q is None or q > 7:
        raise ValueError("brute force needs a small prime field")
    n = M.ring.nvars
    t = M.dim(a)
    if t == 0:
        return 0
    blocks = _mult_blocks(M, a)
    best = None
    strata: dict[int, list] = {}
    for c in itertools.product(range(q), repeat=n):
        A = []
        for i, X in enumerate(blocks):
            for row in X:
                A.append([field.mul(c[i], x) for x in row])
        strata.setdefault(rank(field, A), []).append(c)
    for rho in range(t):
        pts = [p for r, ps in strata.items() if r <= rho for p in ps]
        if len(pts) <= 1:
            continue
        # dim of a union of coordinate subspaces = largest T with the
        # projection onto the T-coordinates surjective
        d = 0
        for size in range(n, 0, -1):
            hit = False
            for T in itertools.combinations(range(n), size):
                proj = {tuple(p[i] for i in T) for p in pts}
                if len(proj) == q ** size:
                    hit = True
                    break
            if hit:
                d = size
                break
        if d >= 1:
            val = d + (t - rho)
            if best is None or val > best:
                best = val
    if best is None:
        return 0
    return max(best - 1, 0)


@dataclass
class LstReport:
    degree: Multidegree
    strand_length: int
    dim_Ma: int
    dim_R: int
    bound: int
    holds: bool


def lst_check(M: ModulePresentation, a: Multidegree | None = None) -> LstReport:
    """Verify the linear syzygy bound: strand length <= max(dim M_a - 1,
    dim R_a(M))."""
    from .bgg import kernel_K, resolve_strand_degree
    a = resolve_strand_degree(M, a)
    K = kernel_K(M, a)
    slen = K.top_aux()
    dim_ma = M.dim(a)
    dim_r = rank_one_syzygy_dim(M, a)
    bound = max(dim_ma - 1, dim_r)
    return LstReport(a, slen, dim_ma, dim_r, bound, slen <= bound)


# ---------------------------------------------------------------------------
# restriction of scalars

def restrict_scalars(M: ModulePresentation, I, cap: int | None = None) -> ModulePresentation:
    """M as a module over S_I = k[x_i : i in I], presented up to a theta
    window (the restriction need not be finitely generated over S_I)."""
    ring = M.ring
    spec = ring.spec
    f = ring.field
    I = sorted(set(I))
    if not I:
        raise ValueError("I must be nonempty")
    comp = [i for i in range(ring.nvars) if i not in I]
    if cap is None:
        cap = max(spec.weight(d) for d in M.gen_degrees) \
            + (len(I) + 2) * max(spec.var_weights)
    sub_spec = GradingSpec(spec.r, tuple(spec.var_degrees[i] for i in I), spec.theta)
    sub_ring = PolyRing(f, sub_spec, names=[ring.names[i] for i in I])

    # generators: x^v g_c for v supported off I, theta-bounded
    gens: list[tuple[int, tuple[int, ...]]] = []
    gen_degs: list[Multidegree] = []
    for c, d in enumerate(M.gen_degrees):
        # enumerate exponent vectors on the complement variables
        def rec(pos, v, w):
            if pos == len(comp):
                gens.append((c, tuple(v)))
                gen_degs.append(deg_add(d, spec.exponent_degree(tuple(v))))
                return
            i = comp[pos]
            e = 0
            while w + e * spec.var_weights[i] <= cap:
                v[i] = e
                rec(pos + 1, v, w + e * spec.var_weights[i])
                e += 1
            v[i] = 0
        rec(0, [0] * ring.nvars, spec.weight(d))

    # relations: degreewise kernels of the evaluation into M
    relations: list[dict] = []
    degrees = set()
    for d in gen_degs:
        degrees.update(effective_degrees_up_to(sub_spec, cap, base=d))
    for adeg in sorted(degrees, key=lambda x: (spec.weight(x), x)):
        cols = []  # (generator index, sub-ring exponent, coords in M_adeg)
        piece = M.graded_piece(adeg)
        for gi, (c, v) in enumerate(gens):
            rem = deg_sub(adeg, gen_degs[gi])
            for u_sub in monomials_of_degree(rem, sub_spec):
                u_full = list(v)
                for pos, i in enumerate(I):
                    u_full[i] += u_sub[pos]
                vec = piece.coords({(c, tuple(u_full)): f.one})
                cols.append((gi, u_sub, vec))
        if not cols:
            continue
        mat = [[col[2][r] for col in cols] for r in range(piece.dim)]
        for ker in nullspace(f, mat, ncols=len(cols)):
            rel: dict = {}
            for (gi, u_sub, _), cval in zip(cols, ker):
                if cval:
                    rel[(gi, u_sub)] = cval
            if rel:
                relations.append(rel)
    MI = ModulePresentation(sub_ring, gen_degs, relations)
    MI.restriction_labels = gens  # (original generator, complement exponent)
    MI.restriction_vars = I
    return MI


def restriction_piece_map(M: ModulePresentation, MI: ModulePresentation,
                          a: Multidegree) -> list[list]:
    """Matrix of the identification (M_I)_a -> M_a, columns indexed by the
    standard monomial basis of the restricted presentation at degree a."""
    f = M.ring.field
    I = MI.restriction_vars
    piece = M.graded_piece(a)
    cols = []
    for c, u_sub in MI.graded_piece(a).monomials:
        orig_c, v = MI.restriction_labels[c]
        u_full = list(v)
        for pos, i in enumerate(I):
            u_full[i] += u_sub[pos]
        cols.append(piece.coords({(orig_c, tuple(u_full)): f.one}))
    return [[cols[c][r] for c in range(len(cols))] for r in range(piece.dim)]


def omega_embedding_sign(J: frozenset, C: frozenset) -> int:
    """Sign in the inclusion omega_{E_I} -> omega_E sending e_J (J within I)
    to sign * e_{J u C}, where C is the complement of I."""
    s = sum(1 for j in J for c in C if c > j)
    return -1 if s % 2 else 1
