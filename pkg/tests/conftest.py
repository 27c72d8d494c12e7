import os
import random

import pytest

from strandlab.fields import Field
from strandlab.grading import GradingSpec
from strandlab.groebner import ModulePresentation
from strandlab.poly import PolyRing

FIELD = Field(32003)
FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def std_ring(nvars, weights=None, field=FIELD):
    """Z-graded ring with the given variable weights (default all 1)."""
    weights = weights or [1] * nvars
    spec = GradingSpec(1, tuple((w,) for w in weights), (1,))
    return PolyRing(field, spec)


def maximal_module(field=FIELD):
    """S = k[x0,x1,x2], deg = 1,1,2; M = S/(x0, x1^2, x2)."""
    S = std_ring(3, [1, 1, 2], field)
    return ModulePresentation.quotient_by_ideal(
        S, [S.parse("x0"), S.parse("x1^2"), S.parse("x2")])


def hirzebruch_module(field=FIELD):
    """Cox ring of the third Hirzebruch surface; M = S/(x2, x3 - x0^3*x1)."""
    spec = GradingSpec(2, ((1, 0), (-3, 1), (1, 0), (0, 1)), (1, 4))
    S = PolyRing(field, spec)
    return ModulePresentation.quotient_by_ideal(
        S, [S.parse("x2"), S.parse("x3") - S.parse("x0^3*x1")])


def point_module(field=FIELD):
    """The residue field over standard-graded k[x0,x1,x2]."""
    S = std_ring(3, field=field)
    return ModulePresentation.quotient_by_ideal(
        S, [S.parse("x0"), S.parse("x1"), S.parse("x2")])


def p11122_module(field=FIELD):
    """Canonical module of the P(1,1,1,2,2) curve, from the checked-in
    fixture presentation."""
    from strandlab.cli import parse_problem_file
    if field is not FIELD:
        pytest.skip("fixture presentation is stored over GF(32003)")
    _, M, _ = parse_problem_file(fixture_path("p11122_canonical.txt"))
    return M


def two_degrees_module(field=FIELD):
    """M = S/(x) + S(-1)/(x) over S = k[x]."""
    S = std_ring(1, field=field)
    one = S.field.one
    return ModulePresentation(S, [(0,), (1,)],
                              [{(0, (1,)): one}, {(1, (1,)): one}])


def random_monomial_module(seed, field=FIELD):
    """Seeded random monomial-ideal quotient: n <= 3 variables with small
    weights, generators of theta-degree <= 6."""
    rng = random.Random(seed)
    nvars = rng.randint(1, 3)
    weights = [rng.choice([1, 1, 2]) for _ in range(nvars)]
    S = std_ring(nvars, weights, field)
    ngens = rng.randint(1, 4)
    gens = []
    for _ in range(ngens):
        u = [0] * nvars
        w = 0
        for _ in range(rng.randint(1, 4)):
            i = rng.randrange(nvars)
            if w + weights[i] > 6:
                continue
            u[i] += 1
            w += weights[i]
        if any(u):
            gens.append(S.monomial(tuple(u)))
    if not gens:
        gens = [S.monomial(tuple([1] + [0] * (nvars - 1)))]
    return ModulePresentation.quotient_by_ideal(S, gens)


RANDOM_SEEDS = list(range(10))


def corpus(field=FIELD, include_p11122=True):
    """The full test corpus as (name, module) pairs."""
    out = [
        ("maximal", maximal_module(field)),
        ("hirzebruch", hirzebruch_module(field)),
        ("point", point_module(field)),
    ]
    if include_p11122:
        out.append(("p11122", p11122_module(field)))
    for s in RANDOM_SEEDS:
        out.append((f"random{s}", random_monomial_module(s, field)))
    return out


def small_corpus(field=FIELD):
    """Corpus without the expensive curve example."""
    return corpus(field, include_p11122=False)


# ---------------------------------------------------------------------------
# adjunction checks shared by test_bgg and test_acceptance

def check_unit(D, cap):
    """eta : D -> RL(D) is an injective quasi-isomorphism of differential
    E-modules.  D is an EModule treated with zero differential.  Returns the
    (L, RL, eta) triple for further use."""
    from strandlab.bgg import unit_map
    from strandlab.exterior import HomologyData
    from strandlab.linalg import mat_mul, mat_vec, rank
    f = D.ring.field
    L, RL, eta = unit_map(D, cap)
    spec = D.ring.spec
    kept = [k for k in D.pieces if spec.weight(k[0]) <= cap]
    # chain map: d_RL . eta = 0 (D has zero differential)
    for key in kept:
        m = eta.get(key)
        assert m is not None, f"eta missing at {key}"
        prod = mat_mul(f, RL.diff(key), m)
        assert not any(any(row) for row in prod), f"eta not a chain map at {key}"
        # injective
        cols = [[m[r][c] for r in range(len(m))] for c in range(D.dim(key))]
        assert rank(f, [list(r) for r in zip(*cols)]) == D.dim(key), \
            f"eta not injective at {key}"
        # E-linear
        for i in range(D.ring.nvars):
            tkey = D.action_target(i, key)
            if tkey[1] < 0 or spec.weight(tkey[0]) > cap:
                continue
            lhs = mat_mul(f, RL.action(i, key), m)
            if D.dim(tkey):
                rhs = mat_mul(f, eta[tkey], D.action(i, key))
            else:
                rhs = [[f.zero] * D.dim(key) for _ in range(RL.dim(tkey))]
            assert lhs == rhs, f"eta not E-linear at {key}, e_{i}"
    # quasi-isomorphism: homology of RL matches D on all kept keys, and the
    # classes of the eta images are independent
    H = HomologyData(RL)
    for key in RL.pieces:
        if spec.weight(key[0]) > cap:
            continue
        hdim = len(H.reps.get(key, []))
        assert hdim == D.dim(key), \
            f"H(RL) has dim {hdim} at {key}, expected {D.dim(key)}"
    for key in kept:
        m = eta[key]
        classes = []
        for c in range(D.dim(key)):
            v = [m[r][c] for r in range(len(m))]
            classes.append(H.classify(key, v))
        if classes:
            assert rank(f, classes) == len(classes), \
                f"eta not injective on homology at {key}"
    return L, RL, eta


def check_counit(M, C, cap, max_slice=500):
    """eps : LR(C) -> C is a surjective chain map whose mapping cone is exact
    on theta-degrees <= cap.  When M is given, C is its resolution and
    homology is compared against M; otherwise against C itself.  Degrees
    whose graded slices exceed max_slice columns are skipped (the check is
    cubic in the slice size)."""
    from strandlab.bgg import counit
    from strandlab.complexes import _poly_mat_mul
    from strandlab.grading import effective_degrees_up_to
    from strandlab.linalg import rank
    f = C.ring.field
    spec = C.ring.spec
    R, LR, eps = counit(C, cap)
    # chain map
    for i in range(min(C.length, LR.length)):
        lhs = _poly_mat_mul(C.ring, eps[i], LR.diffs[i])
        rhs = _poly_mat_mul(C.ring, C.diffs[i], eps[i + 1])
        assert lhs == rhs, f"eps not a chain map at level {i}"
    # surjective: the constant part hits every generator of C_i
    for i in range(C.length + 1):
        const = [[p.constant_term() for p in row] for row in eps[i]]
        assert rank(f, const) == len(C.degrees[i]), f"eps not surjective at {i}"
    # quasi-isomorphism on the window
    degs = set()
    base_degs = M.gen_degrees if M is not None else C.degrees[0]
    for d in base_degs:
        degs.update(effective_degrees_up_to(spec, cap, base=d))
    checked = 0
    for a in sorted(degs, key=lambda x: (spec.weight(x), x)):
        if max(len(LR.module_basis(i, a))
               for i in range(LR.length + 1)) > max_slice:
            continue
        h = LR.homology_dims(a)
        want = ([M.dim(a)] + [0] * LR.length) if M is not None \
            else C.homology_dims(a) + [0] * (LR.length - C.length)
        assert h == want, (a, h, want)
        checked += 1
    assert checked > 0
    return R, LR, eps


def check_restricted_kernel_identity(M, a, I):
    """K_a(M_I) equals the submodule of K_a(M) annihilated by the e_i with
    i not in I, under the omega_{E_I} -> omega_E embedding."""
    from strandlab.bgg import kernel_K_data
    from strandlab.exterior import submodule_annihilated_by
    from strandlab.linalg import in_span, mat_vec
    from strandlab.lst import omega_embedding_sign, restrict_scalars, \
        restriction_piece_map
    f = M.ring.field
    C = frozenset(range(M.ring.nvars)) - set(I)
    spec = M.ring.spec
    cap = spec.weight(a) + 2 * max(spec.var_weights)
    MI = restrict_scalars(M, I, cap=cap)
    KD = kernel_K_data(M, a)
    ann = submodule_annihilated_by(KD.K, I)
    KI_D = kernel_K_data(MI, a)
    dims_ann = {k: ann.dim(k) for k in ann.keys()}
    dims_KI = {k: KI_D.K.dim(k) for k in KI_D.K.keys()}
    assert dims_ann == dims_KI, (I, dims_ann, dims_KI)
    phi = restriction_piece_map(M, MI, a)
    for key, vecs in KI_D.inclusion.items():
        tilabels = KI_D.T.pieces[key]
        tlabels = KD.T.pieces.get(key, [])
        tindex = {lab: p for p, lab in enumerate(tlabels)}
        for v in vecs:
            w = [f.zero] * len(tlabels)
            for p, cval in enumerate(v):
                if not cval:
                    continue
                m_idx, Jloc = tilabels[p]
                J = frozenset(sorted(I)[j] for j in Jloc)
                s = omega_embedding_sign(J, C)
                for r in range(len(phi)):
                    mc = phi[r][m_idx]
                    if mc:
                        idx = tindex[(r, J | C)]
                        w[idx] = f.add(w[idx], f.mul(f.of(s), f.mul(mc, cval)))
            assert in_span(f, KD.inclusion.get(key, []), w), (I, key)
            for i in C:
                img = mat_vec(f, KD.T.action(i, key), w)
                assert not any(img), (I, key, i)


def check_triangle(D, cap):
    """eps_{L(D)} . L(eta_D) = identity on L(D)."""
    from strandlab.bgg import counit_matrices, functor_L, functor_L_map, unit_map
    from strandlab.complexes import _poly_mat_mul
    L, RL, eta = unit_map(D, cap)
    Leta = functor_L_map(D, RL, eta)
    eps = counit_matrices(L, RL, functor_L(RL))
    ring = D.ring
    for i in range(L.length + 1):
        comp = _poly_mat_mul(ring, eps[i], Leta[i]) if i < len(Leta) else []
        n = L.rank_of(i)
        for r in range(n):
            for c in range(n):
                want = ring.one() if r == c else ring.zero()
                assert comp[r][c] == want, f"triangle identity fails at {i}"
