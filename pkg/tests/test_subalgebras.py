import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from blocktoeplitz import (
    INF,
    Circulant,
    Diagonal,
    Explicit,
    Matrix,
    NotCommutative,
    Poly,
    Polynomial,
    Schur,
    algebra_basis,
    basis_matrices,
    commutant_in_Md,
    companion,
    gr,
    inverse_closed_check,
    is_commutative,
    is_maximal_commutative,
    schur_element,
)
from blocktoeplitz.subalgebras import describe
from conftest import gaussians, matrices
from test_linalg import to_sp

NIL = Matrix([[0, 1], [0, 0]])


def commutant_dim_oracle(mats, d):
    """Dimension of the commutant via a symbolic solve in sympy."""
    xs = sp.symbols(f"x0:{d * d}")
    X = sp.Matrix(d, d, xs)
    eqs = []
    for m in mats:
        b = to_sp(m)
        eqs += list(X * b - b * X)
    if not eqs:
        return d * d
    jac = sp.Matrix([[sp.diff(e, v) for v in xs] for e in eqs])
    return d * d - jac.rank()


CATALOGUE = [
    Diagonal(1), Diagonal(2), Diagonal(3),
    Circulant(2), Circulant(3, gr("2i")), Circulant(3, INF), Circulant(4, 0),
    Schur(1, 1), Schur(1, 2), Schur(2, 1), Schur(2, 2),
    Polynomial(NIL), Polynomial(companion(Poly([-1, -1, 1]))), Polynomial(companion(Poly([0, 1, -2, 1]))),
]


def test_dimensions():
    assert algebra_basis(Diagonal(2)).dim == 2
    assert algebra_basis(Schur(1, 2)).dim == 3
    assert algebra_basis(Schur(2, 3)).dim == 7
    p = algebra_basis(Polynomial(NIL))
    assert p.dim == 2
    assert NIL.vec() in p and Matrix.identity(2).vec() in p


def test_commutant_examples():
    full = algebra_basis(Explicit(2, [Matrix.identity(2)]))
    assert commutant_in_Md(full, 2).dim == 4
    diag = algebra_basis(Diagonal(2))
    assert commutant_in_Md(diag, 2) == diag
    poly = algebra_basis(Polynomial(NIL))
    assert commutant_in_Md(poly, 2) == poly


@pytest.mark.parametrize("spec", CATALOGUE, ids=describe)
def test_catalogue_commutant_matches_oracle(spec):
    basis = algebra_basis(spec)
    mats = basis_matrices(basis, spec.d)
    comm = commutant_in_Md(basis, spec.d)
    assert comm.dim == commutant_dim_oracle(mats, spec.d)
    assert commutant_in_Md(comm, spec.d) == comm


@pytest.mark.parametrize("spec", CATALOGUE, ids=describe)
def test_catalogue_is_maximal_commutative(spec):
    basis = algebra_basis(spec)
    assert is_commutative(basis_matrices(basis, spec.d)) is None
    assert is_maximal_commutative(basis, spec.d)


@pytest.mark.parametrize("spec", CATALOGUE, ids=describe)
def test_catalogue_inverse_closed(spec):
    res = inverse_closed_check(algebra_basis(spec), spec.d, samples=10, seed=3)
    assert res and res.tested == 10


def test_non_maximal_span():
    # commutant of span{I, E11} in M_3 is diag(x, M_2): dimension 5 (sympy)
    b = algebra_basis(Explicit(3, [Matrix.identity(3), Matrix.unit(3, 3, 0, 0)]))
    assert commutant_in_Md(b, 3).dim == 5
    assert not is_maximal_commutative(b, 3)


def test_noncommutative_span_raises():
    b = algebra_basis(Explicit(2, [NIL, NIL.T]))
    with pytest.raises(NotCommutative):
        is_maximal_commutative(b, 2)


def test_derogatory_polynomial_algebra_not_maximal():
    assert not is_maximal_commutative(algebra_basis(Polynomial(Matrix.diag([1, 1, 2]))), 3)


def test_unbalanced_schur_also_equals_commutant():
    # with |sigma - tau| > 1 the algebra is still its own commutant
    for s, t in [(1, 3), (3, 1), (1, 4)]:
        basis = algebra_basis(Schur(s, t))
        assert commutant_dim_oracle(basis_matrices(basis, s + t), s + t) == 1 + s * t
        assert is_maximal_commutative(basis, s + t)


def test_non_inverse_closed_span():
    # (I + N)^-1 = I - N + N^2 leaves span{I, N} when N^2 != 0
    odd = algebra_basis(Explicit(3, [Matrix.identity(3), Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])]))
    res = inverse_closed_check(odd, 3, samples=10)
    assert not res and res.witness is not None


@given(st.sampled_from([(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)]), gaussians, st.data())
def test_schur_invertible_iff_lambda_nonzero(shape, lam, data):
    s, t = shape
    x = data.draw(matrices(s, t))
    m = schur_element(s, t, lam, x)
    assert (to_sp(m).det() != 0) == bool(lam)
    assert m.vec() in algebra_basis(Schur(s, t))


def test_bad_specs():
    with pytest.raises(ValueError):
        Schur(0, 2)
    with pytest.raises(ValueError):
        Polynomial(Matrix([[1, 2]]))
    with pytest.raises(ValueError):
        schur_element(1, 2, 1, Matrix([[1]]))
