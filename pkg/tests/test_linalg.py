import itertools

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from blocktoeplitz import (
    GaussianRational,
    Matrix,
    NotInvertible,
    Poly,
    Subspace,
    char_polynomial,
    companion,
    det,
    gr,
    inverse,
    is_nonderogatory,
    kernel_basis,
    minimal_polynomial,
    poly_gcd,
    rref,
)
from conftest import matrices, square_matrices
from test_exactfield import to_sympy

x = sp.symbols("x")


def to_sp(m: Matrix) -> sp.Matrix:
    return sp.Matrix(m.nrows, m.ncols, lambda i, j: to_sympy(m[i, j]))


def poly_to_sp(p: Poly):
    return sp.expand(sum(to_sympy(c) * x ** k for k, c in enumerate(p.coeffs)))


def cofactor_det(rows):
    """Laplace expansion: an oracle independent of elimination."""
    if not rows:
        return 1
    return sum((-1) ** j * rows[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in rows[1:]])
               for j in range(len(rows)) if rows[0][j])


# -- examples ---------------------------------------------------------------


def test_rref_examples():
    assert rref(Matrix.zeros(2))[2] == 0
    red, piv, rank = rref(Matrix([[1, 2], [2, 4]]))
    assert red == Matrix([[1, 2], [0, 0]]) and piv == [0] and rank == 1
    assert rref(Matrix([[0, 1], [1, 0]]))[0] == Matrix.identity(2)


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(3)).dim == 0
    assert kernel_basis(Matrix.zeros(2)).dim == 2
    # sympy nullspace of [[1,2],[2,4]] is (-2, 1)
    assert kernel_basis(Matrix([[1, 2], [2, 4]])) == Subspace(2, [(-2, 1)])


def test_inverse_examples():
    assert inverse(Matrix([[1, 1], [0, 1]])) == Matrix([[1, -1], [0, 1]])
    with pytest.raises(NotInvertible):
        inverse(Matrix.zeros(2))
    assert inverse(Matrix.diag([2, gr("i")])) == Matrix.diag([gr("1/2"), gr("-i")])
    with pytest.raises(ValueError):
        inverse(Matrix([[1, 2]]))


def test_subspace_examples():
    assert Subspace(2, [(1, 0)]) == Subspace(2, [(2, 0)])
    a = Subspace(3, [(1, 0, 0), (0, 1, 0)])
    b = Subspace(3, [(0, 1, 0), (0, 0, 1)])
    assert a & b == Subspace(3, [(0, 1, 0)])
    assert (a + b).dim == 3
    assert (2, 2) in Subspace(2, [(1, 1)])
    assert (1, 2) not in Subspace(2, [(1, 1)])


def test_polynomial_examples():
    nil = Matrix([[0, 1], [0, 0]])
    assert minimal_polynomial(nil) == Poly([0, 0, 1]) == char_polynomial(nil)
    assert is_nonderogatory(nil)
    eye = Matrix.identity(2)
    assert minimal_polynomial(eye) == Poly([-1, 1])
    assert char_polynomial(eye) == Poly([1, -2, 1])
    assert not is_nonderogatory(eye)
    assert is_nonderogatory(companion(Poly([-1, -1, 1])))


def test_gcd_examples():
    assert poly_gcd(Poly([0, 0, 1]), Poly([0, 1])) == Poly([0, 1])
    assert poly_gcd(Poly([-1, 0, 1]), Poly([-1, 1])) == Poly([-1, 1])
    # sympy.gcd(x**2 + 1, x + 1) == 1
    assert poly_gcd(Poly([1, 0, 1]), Poly([1, 1])) == Poly([1])
    with pytest.raises(ValueError):
        poly_gcd(Poly([]), Poly([0]))


def test_companion_has_given_char_poly():
    p = Poly([6, -5, -2, 1])
    assert char_polynomial(companion(p)) == p == minimal_polynomial(companion(p))


def test_poly_arithmetic():
    p, q = Poly([1, 2, 3]), Poly([-1, 1])
    quo, rem = divmod(p, q)
    assert quo * q + rem == p and rem.degree < q.degree
    assert Poly([0, 0]).degree == -1
    assert p(2) == 1 + 4 + 12


# -- properties -------------------------------------------------------------


@given(matrices())
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert m.rank() + k.dim == m.ncols
    for v in k.vectors:
        assert m @ Matrix.from_vec(v, m.ncols, 1) == Matrix.zeros(m.nrows, 1)


@given(matrices(max_size=3))
def test_rref_matches_sympy(m):
    red, piv, rank = rref(m)
    ref, ref_piv = to_sp(m).rref()
    assert to_sp(red) == ref and tuple(piv) == ref_piv and rank == len(ref_piv)


@given(square_matrices(max_size=4))
def test_det_against_cofactor_expansion(m):
    assert det(m) == cofactor_det([list(r) for r in m.rows()])


@given(square_matrices(max_size=4))
def test_inverse_two_sided(m):
    try:
        minv = inverse(m)
    except NotInvertible:
        assert det(m) == 0
        return
    eye = Matrix.identity(m.nrows)
    assert m @ minv == eye and minv @ m == eye


@given(square_matrices(max_size=4))
def test_cayley_hamilton_and_minimal(m):
    zero = Matrix.zeros(m.nrows)
    mp, cp = minimal_polynomial(m), char_polynomial(m)
    assert mp(m) == zero and cp(m) == zero
    assert (cp % mp).is_zero()
    assert mp.lead == 1 and cp.degree == m.nrows


@given(square_matrices(max_size=3))
def test_char_poly_matches_sympy(m):
    assert poly_to_sp(char_polynomial(m)) == sp.expand(to_sp(m).charpoly(x).as_expr())


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=0, max_size=2))
def test_gcd_matches_sympy(a, b, common):
    p = Poly(a)
    q = Poly(b)
    for r in common:
        p, q = p * Poly([-r, 1]), q * Poly([-r, 1])
    if p.is_zero() and q.is_zero():
        return
    g = poly_gcd(p, q)
    ref = sp.Poly(sp.gcd(poly_to_sp(p), poly_to_sp(q)), x)
    assert poly_to_sp(g) == sp.expand(ref.monic().as_expr())


@given(st.lists(st.tuples(*[st.integers(-2, 2)] * 3), min_size=1, max_size=3),
       st.lists(st.tuples(*[st.integers(-2, 2)] * 3), min_size=1, max_size=3))
def test_intersection_and_sum_dimensions(av, bv):
    a, b = Subspace(3, av), Subspace(3, bv)
    assert (a + b).dim + (a & b).dim == a.dim + b.dim
    assert (a & b) <= a and (a & b) <= b and a <= a + b


@given(st.lists(st.tuples(*[st.integers(-2, 2)] * 3), min_size=1, max_size=3), st.integers(1, 5))
def test_subspace_equality_invariant_under_basis_change(vecs, k):
    s = Subspace(3, vecs)
    shuffled = list(itertools.permutations(vecs))[k % len(list(itertools.permutations(vecs)))]
    mixed = [tuple(GaussianRational(c) * k for c in v) for v in shuffled]
    if len(mixed) > 1:
        mixed[0] = tuple(p + q for p, q in zip(mixed[0], mixed[1]))
    assert Subspace(3, mixed) == s and hash(Subspace(3, mixed)) == hash(s)
