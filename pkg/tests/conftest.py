from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from blocktoeplitz import BlockToeplitz, GaussianRational, Matrix

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_int = st.integers(-4, 4)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gaussians = st.builds(GaussianRational, rationals, rationals)
sparse_gaussians = st.one_of(st.just(GaussianRational(0)), gaussians, st.builds(GaussianRational, small_int))
nonzero_gaussians = gaussians.filter(bool)


@st.composite
def matrices(draw, rows=None, cols=None, max_size=4, entries=sparse_gaussians):
    r = draw(st.integers(1, max_size)) if rows is None else rows
    c = draw(st.integers(1, max_size)) if cols is None else cols
    return Matrix([[draw(entries) for _ in range(c)] for _ in range(r)])


@st.composite
def square_matrices(draw, max_size=4, entries=sparse_gaussians):
    n = draw(st.integers(1, max_size))
    return draw(matrices(n, n, entries=entries))


@st.composite
def block_toeplitz(draw, n=None, d=None, entries=sparse_gaussians):
    n = draw(st.integers(1, 4)) if n is None else n
    d = draw(st.integers(1, 3)) if d is None else d
    return BlockToeplitz(n, d, [draw(matrices(d, d, entries=entries)) for _ in range(2 * n - 1)])


@st.composite
def block_toeplitz_pairs(draw):
    n = draw(st.integers(1, 4))
    d = draw(st.integers(1, 3))
    return draw(block_toeplitz(n, d)), draw(block_toeplitz(n, d))
