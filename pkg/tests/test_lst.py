import pytest

from strandlab.bgg import kernel_K_data, strongly_linear_strand
from strandlab.fields import Field
from strandlab.groebner import ModulePresentation
from strandlab.lst import incidence_ideal, lst_check, omega_embedding_sign, \
    rank_one_dim_bruteforce, rank_one_syzygy_dim, restrict_scalars, \
    restriction_piece_map, strand_length

from conftest import FIELD, check_restricted_kernel_identity, hirzebruch_module, \
    maximal_module, point_module, random_monomial_module, std_ring, \
    two_degrees_module


def test_strand_length():
    L = strongly_linear_strand(maximal_module())
    assert strand_length(L) == 2
    L = strongly_linear_strand(point_module())
    assert strand_length(L) == 3


def test_rank_one_dim_known_values():
    # k over k[x0..x2]: every w (x) m is a syzygy, dim = n+1 = 3
    assert rank_one_syzygy_dim(point_module(), (0,)) == 3
    # maximal example: A(c) drops rank on the plane c1 = 0
    assert rank_one_syzygy_dim(maximal_module(), (0,)) == 2
    # Hirzebruch: only the x2-line survives
    assert rank_one_syzygy_dim(hirzebruch_module(), (0, 0)) == 1


def test_rank_one_dim_no_syzygies():
    # free module: wm = 0 forces w = 0 or m = 0
    S = std_ring(2)
    M = ModulePresentation.free_module(S, [(0,)])
    assert rank_one_syzygy_dim(M, (0,)) == 0


@pytest.mark.parametrize("q", [3, 5])
def test_bruteforce_agrees(q):
    # every corpus instance with <= 6 total coordinates, over small fields
    f = Field(q)
    mods = [("point", point_module(f), (0,)),
            ("maximal", maximal_module(f), (0,)),
            ("hirzebruch", hirzebruch_module(f), (0, 0)),
            ("two_degrees", two_degrees_module(f), (0,))]
    for s in range(10):
        M = random_monomial_module(s, f)
        if not M.is_zero_module():
            mods.append((f"random{s}", M, (0,) * M.ring.spec.r))
    for name, M, a in mods:
        n = M.ring.nvars
        t = M.dim(a)
        if n * t > 6 or t == 0:
            continue
        assert rank_one_syzygy_dim(M, a) == rank_one_dim_bruteforce(M, a), name


def test_incidence_ideal_bidegree():
    ring, gens = incidence_ideal(maximal_module(), (0,))
    assert gens  # x1 acts nontrivially
    for g in gens:
        assert g.is_homogeneous()
        assert g.degree() == (1, 1)


def test_lst_check_reports():
    rep = lst_check(point_module())
    assert rep.strand_length == 3 and rep.bound == 3 and rep.holds
    rep = lst_check(maximal_module())
    assert rep.strand_length == 2 and rep.dim_Ma == 1 and rep.dim_R == 2
    assert rep.holds
    rep = lst_check(hirzebruch_module(), (0, 0))
    assert rep.strand_length == 1 and rep.bound == 1 and rep.holds


def test_restrict_scalars_dimensions():
    # restriction does not change graded pieces (within the window)
    M = maximal_module()
    for I in ([0], [1], [0, 1], [1, 2], [0, 1, 2]):
        MI = restrict_scalars(M, I)
        for d in range(4):
            assert MI.dim((d,)) == M.dim((d,)), (I, d)


def test_restriction_piece_map_iso():
    from strandlab.linalg import rank
    M = maximal_module()
    MI = restrict_scalars(M, [1, 2])
    for d in range(3):
        mat = restriction_piece_map(M, MI, (d,))
        assert rank(FIELD, mat) == M.dim((d,))


def test_omega_embedding_sign():
    assert omega_embedding_sign(frozenset(), frozenset({2})) == 1
    # one inversion: c=2 > j=0
    assert omega_embedding_sign(frozenset({0}), frozenset({2})) == -1
    assert omega_embedding_sign(frozenset({2}), frozenset({1})) == 1
    assert omega_embedding_sign(frozenset({0, 1}), frozenset({2})) == 1


def test_restricted_kernel_identity_maximal():
    M = maximal_module()
    for I in ([0], [1], [2], [0, 1], [0, 2], [1, 2], [0, 1, 2]):
        check_restricted_kernel_identity(M, (0,), I)


def test_restricted_length_inequality():
    M = maximal_module()
    a = (0,)
    full_len = kernel_K_data(M, a).K.top_aux()
    for I in ([0, 1], [0, 2], [1, 2], [0], [1], [2]):
        c = M.ring.nvars - len(I)
        spec = M.ring.spec
        cap = spec.weight(a) + 2 * max(spec.var_weights)
        MI = restrict_scalars(M, I, cap=cap)
        sub_len = kernel_K_data(MI, a).K.top_aux()
        assert full_len <= sub_len + c, (I, full_len, sub_len)
