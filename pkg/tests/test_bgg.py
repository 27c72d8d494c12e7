import pytest

from strandlab.bgg import counit, default_cap, functor_L, functor_R, kernel_K, \
    kernel_K_data, perturbation_resolution, resolve_strand_degree, \
    strand_phi0, strongly_linear_part, strongly_linear_strand, unit_map
from strandlab.complexes import GradedComplex, free_resolution, \
    is_quasi_split_sub, lift_chain_map, _poly_mat_mul
from strandlab.exterior import omega_E, with_zero_differential
from strandlab.groebner import ModulePresentation

from conftest import FIELD, check_counit, check_triangle, check_unit, \
    hirzebruch_module, maximal_module, point_module, random_monomial_module, \
    std_ring, two_degrees_module


def test_functor_L_of_omega_is_koszul():
    # L(omega) is the Koszul complex on the variables
    S = std_ring(3)
    L = functor_L(with_zero_differential(omega_E(S)))
    assert [L.rank_of(i) for i in range(4)] == [1, 3, 3, 1]
    L.check_homogeneous()
    L.check_complex()
    assert L.is_strongly_linear()
    assert L.is_minimal()
    # it resolves k
    h = L.homology_dims((0,))
    assert h == [1, 0, 0, 0]
    for d in range(1, 4):
        assert all(x == 0 for x in L.homology_dims((d,)))


@pytest.mark.parametrize("make", [maximal_module, hirzebruch_module,
                                  point_module])
def test_functor_R_is_differential_module(make):
    M = make()
    D = functor_R(M, default_cap(M))
    D.check_differential()
    D.check_anticommute()


def test_functor_R_of_complex_squares_to_zero():
    S = std_ring(2)
    C = GradedComplex(S, [[(0,)], [(1,)]], [[[S.parse("x0")]]])
    D = functor_R(C, 6)
    D.check_differential()


def test_kernel_of_free_module_is_socle():
    S = std_ring(3)
    M = ModulePresentation.free_module(S, [S.spec.zero])
    K = kernel_K(M, S.spec.zero)
    assert K.total_dim() == 1
    assert list(K.pieces) == [(S.spec.zero, 0)]


def test_kernel_of_residue_field_is_omega():
    M = point_module()
    K = kernel_K(M, (0,))
    w = omega_E(M.ring)
    assert K.total_dim() == w.total_dim() == 8
    for key in w.pieces:
        assert K.dim(key) == w.dim(key)


def test_strand_maximal_example():
    M = maximal_module()
    L = strongly_linear_strand(M)
    assert L.betti() == {(0, (0,)): 1, (1, (1,)): 1, (1, (2,)): 1,
                         (2, (3,)): 1}
    assert L.is_strongly_linear()
    L.check_homogeneous()
    L.check_complex()
    # entries match the displayed strand up to sign: d1 = [x0, x2],
    # d2 = [x2; -x0]
    d1 = [p for row in L.diffs[0] for p in row]
    assert sorted(str(p).lstrip("-") for p in d1) == ["x0", "x2"]
    d2 = [row[0] for row in L.diffs[1]]
    assert sorted(str(p).lstrip("-") for p in d2) == ["x0", "x2"]
    prod = _poly_mat_mul(L.ring, L.diffs[0], L.diffs[1])
    assert all(not p for row in prod for p in row)


def test_strand_direct_sum_example():
    # M = S/(x) + S(-1)/(x) over k[x]: resolution is strongly linear of
    # rank 2, but the strand at the unique minimal degree 0 is S <- S(-1)
    M = two_degrees_module()
    L = strongly_linear_strand(M)
    assert L.betti() == {(0, (0,)): 1, (1, (1,)): 1}
    assert str(L.diffs[0][0][0]).lstrip("-") == "x0"


def test_strand_hirzebruch():
    M = hirzebruch_module()
    L = strongly_linear_strand(M, (0, 0))
    assert L.betti() == {(0, (0, 0)): 1, (1, (1, 0)): 1}
    assert str(L.diffs[0][0][0]).lstrip("-") == "x2"


def test_resolve_strand_degree_errors():
    M = maximal_module()
    with pytest.raises(ValueError):
        resolve_strand_degree(M, (1,))
    S = std_ring(2)
    from strandlab.grading import GradingSpec
    from strandlab.poly import PolyRing
    R = PolyRing(FIELD, GradingSpec(2, ((1, 0), (0, 1)), (1, 1)))
    N = ModulePresentation.free_module(R, [(1, 0), (0, 1)])
    with pytest.raises(ValueError):
        resolve_strand_degree(N, None)  # two minimal degrees


def test_strand_embeds_quasi_split():
    M = maximal_module()
    F = free_resolution(M)
    data = kernel_K_data(M, (0,))
    L = functor_L(with_zero_differential(data.K))
    phi0 = strand_phi0(M, data, F)
    phis = lift_chain_map(L, F, phi0)
    assert phis is not None
    assert is_quasi_split_sub(phis, FIELD)
    for i in range(L.length):
        lhs = _poly_mat_mul(F.ring, phis[i], L.diffs[i])
        rhs = _poly_mat_mul(F.ring, F.diffs[i], phis[i + 1])
        assert lhs == rhs


def test_linear_part_hirzebruch():
    M = hirzebruch_module()
    F = free_resolution(M)
    LP = strongly_linear_part(F, 8)
    assert [LP.rank_of(i) for i in range(3)] == [1, 2, 1]
    LP.check_homogeneous()
    LP.check_complex()
    assert LP.is_strongly_linear()
    d1 = sorted(str(p).lstrip("-") for row in LP.diffs[0] for p in row)
    d2 = sorted(str(p).lstrip("-") for row in LP.diffs[1] for p in row)
    assert d1 == ["x2", "x3"]
    assert d2 == ["x2", "x3"]


def test_linear_part_of_linear_resolution_is_itself():
    M = point_module()
    F = free_resolution(M)
    LP = strongly_linear_part(F, 8)
    assert LP.betti() == F.betti()


@pytest.mark.parametrize("make", [maximal_module, point_module,
                                  hirzebruch_module])
def test_perturbation_matches_resolution(make):
    M = make()
    F = free_resolution(M)
    P = perturbation_resolution(M)
    assert P.betti() == F.betti()
    P.check_homogeneous()
    P.check_complex()
    assert P.is_minimal()


def test_perturbation_window_too_small():
    M = point_module()
    with pytest.raises(ValueError):
        perturbation_resolution(M, cap=2, length=3)


def test_unit_on_kernel_module():
    M = maximal_module()
    K = kernel_K(M, (0,))
    check_unit(K, 8)


def test_counit_on_resolution():
    M = maximal_module()
    F = free_resolution(M)
    check_counit(M, F, 8)


def test_triangle_identity():
    M = maximal_module()
    K = kernel_K(M, (0,))
    check_triangle(K, 10)


@pytest.mark.parametrize("seed", range(3))
def test_random_module_pipeline(seed):
    M = random_monomial_module(seed)
    if M.is_zero_module():
        return
    D = functor_R(M, default_cap(M))
    D.check_differential()
    L = strongly_linear_strand(M)
    L.check_homogeneous()
    L.check_complex()
    assert L.is_strongly_linear()
