import pytest
from hypothesis import given
from hypothesis import strategies as st

from blocktoeplitz import (
    INF,
    BlockToeplitz,
    Diagonal,
    Matrix,
    Polynomial,
    Schur,
    closure_check,
    fab_basis,
    gr,
    kernel_condition,
    reshuffle,
    schur_S_basis,
)
from blocktoeplitz.casestudies import coordinate_circulant_algebra, diagonal_case, nilpotent_A_basis, nilpotent_case, schur_case
from conftest import gaussians, sparse_gaussians

alphas = st.one_of(st.just(INF), gaussians)


# -- reshuffle --------------------------------------------------------------


def test_reshuffle_examples():
    assert reshuffle(2, 2).mapping == (0, 2, 1, 3)
    assert reshuffle(1, 4).mapping == (0, 1, 2, 3)
    assert reshuffle(4, 1).mapping == (0, 1, 2, 3)
    with pytest.raises(ValueError):
        reshuffle(0, 2)


def test_reshuffle_matrix_is_permutation():
    P = reshuffle(3, 2).matrix()
    assert P @ P.T == Matrix.identity(6)
    assert reshuffle(3, 2).inverse().matrix() == P.T


@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_reshuffle_block_diagonalizes(n, d, data):
    t = BlockToeplitz(n, d, [Matrix.diag([data.draw(sparse_gaussians) for _ in range(d)])
                             for _ in range(2 * n - 1)])
    perm = reshuffle(n, d)
    P = perm.matrix()
    conj = P.T @ t.to_dense() @ P
    assert conj == perm.conjugate(t.to_dense())
    blocks = perm.diagonal_blocks(t)
    assert blocks is not None and len(blocks) == d
    for k, b in enumerate(blocks):
        assert b.n == n and all(b.coeff(j) == t.block(j)[k, k] for j in range(-n + 1, n))
        assert conj.block(k * n, k * n, n, n) == b.to_dense()


def test_reshuffle_rejects_full_blocks():
    t = BlockToeplitz.from_mapping(2, 2, {0: Matrix([[1, 1], [0, 1]])})
    assert reshuffle(2, 2).diagonal_blocks(t) is None


# -- diagonal entries -------------------------------------------------------


def test_all_ones_inside_block_circulants():
    rep = diagonal_case(3, 2, [1, 1])
    assert rep.verified
    assert fab_basis(Diagonal(2), Matrix.identity(2), Matrix.identity(2), 3).basis.contains_space(
        coordinate_circulant_algebra(3, [1, 1]).basis)


def test_zero_and_infinity():
    rep = diagonal_case(3, 2, [0, INF])
    assert rep.verified and rep.status("kernel_condition") == "verified"
    assert "A=[['0', '0'], ['0', '1']] B=[['1', '0'], ['0', '0']]" in next(
        s.detail for s in rep.subclaims if s.name == "kernel_condition")


def test_scalar_specialization():
    assert diagonal_case(4, 1, [gr("2i")]).verified
    assert diagonal_case(1, 2, [INF, 3]).verified


def test_wrong_alpha_count():
    with pytest.raises(ValueError):
        diagonal_case(2, 3, [1])


@given(st.integers(1, 4), st.lists(alphas, min_size=1, max_size=3), st.integers(0, 1000))
def test_diagonal_case_random(n, avec, seed):
    rep = diagonal_case(n, len(avec), avec, seed=seed)
    assert rep.verified, [(s.name, s.status, s.detail) for s in rep.subclaims]


# -- Schur entries ----------------------------------------------------------


@pytest.mark.parametrize("n, sigma, tau, dim", [(2, 1, 1, 4), (1, 1, 2, 3), (1, 2, 2, 5), (3, 1, 2, 11), (2, 2, 2, 13)])
def test_schur_S_dimension(n, sigma, tau, dim):
    # 1 + st free entries on the diagonal block, st on each of the 2(n-1) others
    assert schur_S_basis(n, sigma, tau).dim == dim


@pytest.mark.parametrize("n, sigma, tau", [(2, 2, 2), (3, 1, 2), (2, 1, 3)])
def test_S_products_vanish_pairwise(n, sigma, tau):
    S = schur_S_basis(n, sigma, tau)
    for t in S.members():
        for u in S.members():
            for p in range(1, n):
                for q in range(1, n):
                    assert (t.block(p) @ u.block(q - n)).is_zero()
                    assert (t.block(p - n) @ u.block(q)).is_zero()
    assert closure_check(S)


@pytest.mark.parametrize("n, sigma, tau", [(2, 1, 2), (3, 1, 2), (2, 2, 1), (3, 2, 2), (2, 2, 2)])
def test_schur_case_verified(n, sigma, tau):
    rep = schur_case(n, sigma, tau)
    assert rep.verified and all(s.status == "verified" for s in rep.subclaims)
    assert rep.dims["S"] == rep.dims["expected_S"] == rep.dims["fab"]


def test_schur_representing_pair_violates_kernel_condition():
    A = Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    B = Matrix([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    assert not kernel_condition(A, B)
    assert fab_basis(Schur(1, 2), A, B, 3).basis == schur_S_basis(3, 1, 2).basis


def test_schur_one_one_defers_to_nilpotent_case():
    rep = schur_case(2, 1, 1)
    sub = next(s for s in rep.subclaims if s.name == "representation")
    assert sub.status == "skipped" and sub.report is not None and sub.report.verified
    assert rep.verified


def test_schur_single_block():
    rep = schur_case(1, 1, 2)
    assert rep.verified and rep.status("representation") == "skipped"


# -- nilpotent generator ----------------------------------------------------


def test_nilpotent_dimensions():
    rep = nilpotent_case(2)
    assert rep.verified
    assert rep.dims["A"] == 4 and rep.dims["entry_space"] == 6


def test_nilpotent_larger():
    rep = nilpotent_case(3)
    assert rep.verified and rep.dims["A"] == 6
    assert rep.status("poly_invertibility_spot_check") == "verified"


def test_nilpotent_witness_is_outside_algebra():
    n = 3
    M = Matrix([[0, 1], [0, 0]])
    A = nilpotent_A_basis(n)
    a, b = gr(2), gr(-1)
    t = BlockToeplitz.from_mapping(n, 2, {1: Matrix.identity(2) * b, 1 - n: Matrix.identity(2) * a})
    fam = fab_basis(Polynomial(M), M * a, M * b, n)
    assert fam.contains(t) and not A.contains(t)


def test_nilpotent_needs_two_blocks():
    with pytest.raises(ValueError):
        nilpotent_case(1)
