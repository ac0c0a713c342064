"""When is a product of block Toeplitz matrices again block Toeplitz?

Walks through the block product condition, a two-by-two counterexample and
the circulant algebras, where products always stay Toeplitz.
"""
from blocktoeplitz import (
    INF,
    BlockToeplitz,
    bt_multiply,
    circulant_basis,
    find_alpha,
    format_alpha,
    gr,
    inverse,
    product_condition,
)

# %% A lower and an upper shift: their product is diag(0, 1), not Toeplitz.
t = BlockToeplitz.scalar(2, {1: 1})
u = BlockToeplitz.scalar(2, {-1: 1})
dense, structured = bt_multiply(t, u)
print("lower @ upper =", dense.tolist())
print("product condition:", product_condition(t, u), "| Toeplitz product:", structured is not None)

# %% Upper triangular Toeplitz matrices form an algebra (parameter inf).
a = BlockToeplitz.scalar(3, {0: 1, -1: 2, -2: 3})
b = BlockToeplitz.scalar(3, {0: gr("i"), -1: -1})
_, ab = bt_multiply(a, b)
print("\nupper @ upper stays Toeplitz:", ab is not None, "alpha =", format_alpha(find_alpha(ab)))

# %% A circulant with parameter 3: t_{j-n} = 3 t_j.
c = BlockToeplitz.scalar(3, {0: 2, 1: 1, 2: -1, -2: 3, -1: -3})
alpha = find_alpha(c)
print("\nrecovered parameter:", format_alpha(alpha))
cinv = BlockToeplitz.from_dense(inverse(c.to_dense()), 3, 1)
print("inverse is Toeplitz:", cinv is not None)
print("inverse in the same circulant algebra:", cinv.vec() in circulant_basis(3, alpha))
for j in range(-2, 3):
    print(f"  t_{j:+d} of inverse = {cinv.coeff(j)}")

# %% Every circulant algebra has dimension n.
for p in (0, 1, gr("1+i"), INF):
    print(f"dim circulant(n=5, alpha={format_alpha(p)}) = {circulant_basis(5, p).dim}")
