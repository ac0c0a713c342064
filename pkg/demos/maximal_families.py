"""Families F_(A,B) of block Toeplitz matrices with entries in a fixed algebra.

Builds a few families, checks that they are commutative algebras and asks
the certificate whether they are maximal.
"""
from blocktoeplitz import (
    BlockToeplitz,
    Circulant,
    Diagonal,
    Explicit,
    Matrix,
    Schur,
    closure_check,
    derive_AB,
    describe,
    entry_extension_witness,
    fab_basis,
    gr,
    kernel_condition,
    maximality_certificate,
)

I2, Z2 = Matrix.identity(2), Matrix.zeros(2)

# %% Diagonal entries with A = B = I: coordinatewise block circulants.
f = fab_basis(Diagonal(2), I2, I2, 3)
print("block circulants over diagonals: dim", f.dim, "| closed:", closure_check(f))
rep = maximality_certificate(f)
print("  verdict:", rep.verdict, "| relative commutant dim:", rep.commutant_dim)

# %% A twisted pair satisfying the kernel condition.
A, B = Matrix.diag([1, 0]), Matrix.diag([gr(2), 1])
print("\nkernel condition for A=diag(1,0), B=diag(2,1):", kernel_condition(A, B))
g = fab_basis(Diagonal(2), A, B, 4)
print("  dim", g.dim, "| verdict:", maximality_certificate(g).verdict)

# %% Circulant and Schur entry algebras behave the same way.
for entry, a, b in [(Circulant(3, -1), Matrix.identity(3), Matrix.identity(3) * 2),
                    (Schur(1, 2), Matrix.identity(3), Matrix([[0, 1, 1], [0, 0, 0], [0, 0, 0]]))]:
    h = fab_basis(entry, a, b, 2)
    print(f"\n{describe(entry)}: dim {h.dim}, verdict {maximality_certificate(h).verdict}")

# %% Scalar entries are not maximal: diagonal blocks extend the family.
s = fab_basis(Explicit(2, [I2]), I2, I2, 2)
rep = maximality_certificate(s)
print("\nscalar entries: dim", s.dim, "| verdict:", rep.verdict, "| extension dim:", rep.extension_dim)
w = entry_extension_witness(s, Diagonal(2))
print("  a diagonal-entry member outside it, blocks:", [w.block(j).tolist() for j in (-1, 0, 1)])

# %% Recovering (A, B) from a member with an invertible off-diagonal block.
d12 = Matrix.diag([1, 2])
t = BlockToeplitz.from_mapping(3, 2, {0: I2, 1: d12, -2: d12 * 3})
A, B = derive_AB(t, Diagonal(2))
print("\nderived A =", A.tolist(), "B =", B.tolist())
print("  t lies in F_(A,B):", fab_basis(Diagonal(2), A, B, 3).contains(t))
