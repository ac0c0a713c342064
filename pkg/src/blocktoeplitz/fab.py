"""The families ``F_{A,B}`` of block Toeplitz matrices over an entry algebra.

For an entry algebra ``E`` in ``M_{d x d}`` and ``A, B`` commuting with
``E``, ``F_{A,B}`` is the set of ``n x n`` block Toeplitz matrices whose
blocks lie in ``E`` and satisfy ``A T_j = B T_{j-n}`` for ``j = 1..n-1``.

This module builds these families exactly, checks closure under products,
and certifies maximality among commutative algebras of block Toeplitz
matrices through a single kernel computation (the relative commutant),
falling back to a bounded extension search when the certificate does not
collapse.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .exactfield import ONE, ZERO
from .linalg import Echelon, Matrix, NotInvertible, Subspace, _sparse, inverse, kernel_basis, solve_kernel
from . import sampling
from .subalgebras import AlgebraSpec, algebra_basis, basis_matrices
from .toeplitz import BlockToeplitz, toeplitz_product

__all__ = [
    "ToeplitzFamily",
    "FabFamily",
    "MaximalityReport",
    "NotInCommutant",
    "ClosureError",
    "kernel_condition",
    "joint_annihilator_zero",
    "joint_annihilator",
    "fab_basis",
    "entry_space",
    "closure_failure",
    "closure_check",
    "j_matrix",
    "relative_commutant_toeplitz",
    "maximality_certificate",
    "derive_AB",
    "entry_extension_witness",
]


class NotInCommutant(ValueError):
    """``A`` or ``B`` fails to commute with the entry algebra."""


class ClosureError(ValueError):
    """A family is not closed under multiplication (names the product)."""


@dataclass
class ToeplitzFamily:
    """A linear space of ``n x n`` block Toeplitz matrices with ``d x d`` blocks."""
    n: int
    d: int
    basis: Subspace

    @classmethod
    def span(cls, members: Iterable[BlockToeplitz], n: int, d: int) -> ToeplitzFamily:
        return cls(n, d, Subspace(BlockToeplitz.coeff_dim(n, d), (m.vec() for m in members)))

    @property
    def dim(self) -> int:
        return self.basis.dim

    def members(self) -> list[BlockToeplitz]:
        return [BlockToeplitz.from_vec(v, self.n, self.d) for v in self.basis.vectors]

    def contains(self, t: BlockToeplitz) -> bool:
        return self.basis.contains(t.vec())

    def __contains__(self, t):
        return self.contains(t)


@dataclass
class FabFamily(ToeplitzFamily):
    entry: AlgebraSpec = None
    A: Matrix = None
    B: Matrix = None


def kernel_condition(A: Matrix, B: Matrix) -> bool:
    """``Ker A & Ker B == {0}``, via the kernel of the stacked matrix ``[A; B]``."""
    if not A.is_square or A.shape != B.shape:
        raise ValueError(f"A and B must be square of equal size, got {A.shape} and {B.shape}")
    return kernel_basis(Matrix(A.rows() + B.rows())).dim == 0


def joint_annihilator(A: Matrix, B: Matrix) -> Subspace:
    """All ``d x d`` matrices ``T`` with ``A T = B T = 0``."""
    d = A.nrows
    rows = []
    for M in (A, B):
        # (M T)[r, c] = sum_k M[r, k] T[k, c]
        for r in range(d):
            for c in range(d):
                eq = {k * d + c: M[r, k] for k in range(d) if M[r, k]}
                if eq:
                    rows.append(eq)
    return solve_kernel(rows, d * d)


def joint_annihilator_zero(A: Matrix, B: Matrix, T: Matrix) -> bool:
    """``A T = B T = 0  implies  T = 0`` for this particular ``T``."""
    if (A @ T).is_zero() and (B @ T).is_zero():
        return T.is_zero()
    return True


def _check_commutant(entry_mats: list[Matrix], name: str, X: Matrix):
    for E in entry_mats:
        if X @ E != E @ X:
            raise NotInCommutant(f"{name} does not commute with the entry algebra")


def entry_space(entry: AlgebraSpec, n: int) -> ToeplitzFamily:
    """All block Toeplitz matrices with every block in the entry algebra."""
    d = entry.d
    dd = d * d
    vecs = []
    for v in algebra_basis(entry).sparse_vectors():
        for j in range(2 * n - 1):
            vecs.append({j * dd + k: x for k, x in v.items()})
    return ToeplitzFamily(n, d, Subspace._from_sparse((2 * n - 1) * dd, vecs))


def fab_basis(entry: AlgebraSpec, A: Matrix, B: Matrix, n: int) -> FabFamily:
    """Exact basis of ``F_{A,B}`` over ``entry`` at block order ``n``."""
    d = entry.d
    if A.shape != (d, d) or B.shape != (d, d):
        raise ValueError(f"A and B must be {d}x{d}")
    if n < 1:
        raise ValueError("n must be positive")
    ebasis = algebra_basis(entry)
    emats = basis_matrices(ebasis, d)
    _check_commutant(emats, "A", A)
    _check_commutant(emats, "B", B)
    m = len(emats)
    a_e = [A @ E for E in emats]
    b_e = [B @ E for E in emats]

    def var(j, k):
        return (j + n - 1) * m + k

    rows = []
    for j in range(1, n):
        for r in range(d):
            for c in range(d):
                eq = {}
                for k in range(m):
                    x, y = a_e[k][r, c], b_e[k][r, c]
                    if x:
                        eq[var(j, k)] = x
                    if y:
                        eq[var(j - n, k)] = -y
                if eq:
                    rows.append(eq)
    coeffs = solve_kernel(rows, (2 * n - 1) * m)
    evecs = ebasis.sparse_vectors()
    dd = d * d
    out = []
    for cv in coeffs.sparse_vectors():
        v: dict = {}
        for idx, c in cv.items():
            slot, k = divmod(idx, m)
            for pos, x in evecs[k].items():
                key = slot * dd + pos
                nv = v.get(key, ZERO) + c * x
                if nv:
                    v[key] = nv
                else:
                    v.pop(key, None)
        out.append(v)
    basis = Subspace._from_sparse((2 * n - 1) * dd, out)
    return FabFamily(n, d, basis, entry, A, B)


def closure_failure(f: ToeplitzFamily) -> str | None:
    """Describe the first basis product that breaks closure or commutativity."""
    members = f.members()
    for i, t in enumerate(members):
        for j in range(i, len(members)):
            u = members[j]
            tu = toeplitz_product(t, u)
            if tu is None:
                return f"product of basis members {i} and {j} is not block Toeplitz"
            if not f.basis.contains(tu.vec()):
                return f"product of basis members {i} and {j} leaves the family"
            if i != j:
                ut = toeplitz_product(u, t)
                if ut != tu:
                    return f"basis members {i} and {j} do not commute"
    return None


def closure_check(f: ToeplitzFamily) -> bool:
    """Whether ``f`` is a commutative algebra inside the block Toeplitz space."""
    return closure_failure(f) is None


def j_matrix(A: Matrix, B: Matrix, n: int) -> BlockToeplitz:
    """Block Toeplitz with ``T_1 = B``, ``T_{1-n} = A``, all other blocks zero."""
    if n < 2:
        raise ValueError("j_matrix needs n >= 2")
    if A.shape != B.shape:
        raise ValueError("A and B must have equal shape")
    return BlockToeplitz.from_mapping(n, A.nrows, {1: B, 1 - n: A})


def _product_rows(F: BlockToeplitz):
    """Linear forms of ``X F`` and ``F X`` in the coefficients of ``X``.

    Returns two dicts keyed by ``(p, q, a, b)`` (block row, block column,
    row and column inside the block) mapping to sparse coefficient rows.
    """
    n, d = F.n, F.d
    fb = {j: F.block(j) for j in range(-n + 1, n)}
    nz = {j for j, b in fb.items() if not b.is_zero()}
    xf, fx = {}, {}
    for p in range(n):
        for q in range(n):
            for a in range(d):
                for b in range(d):
                    e1, e2 = {}, {}
                    for j in range(-n + 1, n):
                        s = p - j
                        if 0 <= s < n and s - q in nz:
                            blk = fb[s - q]
                            for c in range(d):
                                x = blk[c, b]
                                if x:
                                    e1[BlockToeplitz.coeff_index(n, d, j, a, c)] = x
                        s = q + j
                        if 0 <= s < n and p - s in nz:
                            blk = fb[p - s]
                            for r in range(d):
                                x = blk[a, r]
                                if x:
                                    e2[BlockToeplitz.coeff_index(n, d, j, r, b)] = x
                    xf[p, q, a, b] = e1
                    fx[p, q, a, b] = e2
    return xf, fx


def _diff(e1: dict, e2: dict) -> dict:
    out = dict(e1)
    for k, x in e2.items():
        nv = out.get(k, ZERO) - x
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _relcomm_rows(F: BlockToeplitz) -> list[dict]:
    n, d = F.n, F.d
    xf, fx = _product_rows(F)
    rows = []
    for key, e1 in xf.items():
        r = _diff(e1, fx[key])
        if r:
            rows.append(r)
    for p in range(n - 1):
        for q in range(n - 1):
            for a in range(d):
                for b in range(d):
                    r = _diff(xf[p, q, a, b], xf[p + 1, q + 1, a, b])
                    if r:
                        rows.append(r)
    return rows


def relative_commutant_toeplitz(f: ToeplitzFamily) -> Subspace:
    """Block Toeplitz ``X`` with ``X F = F X`` and ``X F`` block Toeplitz for all ``F`` in ``f``.

    Any commutative algebra of block Toeplitz matrices containing ``f`` lies
    in this space.  Constraints are added member by member; once the rank
    leaves room for exactly ``f`` and the kernel equals ``f``, the remaining
    members cannot shrink it further and are skipped.
    """
    N = BlockToeplitz.coeff_dim(f.n, f.d)
    target = N - f.dim
    ech = Echelon(N)
    members = f.members()
    for i, F in enumerate(members):
        for r in _relcomm_rows(F):
            ech.add(r)
        if ech.rank >= target:
            ker = Subspace._from_sparse(N, ech.kernel_rows())
            if ker == f.basis or i == len(members) - 1:
                return ker
    return Subspace._from_sparse(N, ech.kernel_rows())


@dataclass
class MaximalityReport:
    verdict: str  # "maximal" | "not_maximal" | "inconclusive"
    family_dim: int
    commutant_dim: int
    witness: BlockToeplitz | None = None
    extension_dim: int | None = None
    commutant: Subspace | None = field(default=None, repr=False)
    search_depth: int = 3

    @property
    def is_maximal(self) -> bool:
        return self.verdict == "maximal"


def _grow_algebra(gens: list[BlockToeplitz], n: int, d: int, depth: int):
    """Span of ``gens`` closed under products, or ``None`` if it leaves the
    block Toeplitz space or does not stabilize within ``depth`` rounds."""
    N = BlockToeplitz.coeff_dim(n, d)
    ech = Echelon(N)
    members = []
    for g in gens:
        if ech.add(_sparse(g.vec())):
            members.append(g)
    frontier = list(members)
    for _ in range(depth):
        new = []
        for a in members:
            for b in frontier:
                for x, y in ((a, b), (b, a)):
                    p = toeplitz_product(x, y)
                    if p is None:
                        return None
                    if ech.add(_sparse(p.vec())):
                        new.append(p)
        if not new:
            return ToeplitzFamily(n, d, Subspace._from_echelon(ech))
        members.extend(new)
        frontier = new
    return None


def maximality_certificate(f: ToeplitzFamily, search_depth: int = 3, seed: int = 0,
                           random_candidates: int = 4) -> MaximalityReport:
    """Decide maximality of ``f`` among commutative algebras of block Toeplitz matrices.

    ``maximal`` is returned only when the relative commutant collapses to
    ``f``.  Otherwise candidates from the relative commutant are extended
    to the algebra they generate with ``f``; a strictly larger commutative
    algebra yields ``not_maximal`` with the candidate as witness, and no
    witness yields ``inconclusive``.
    """
    bad = closure_failure(f)
    if bad is not None:
        raise ClosureError(bad)
    rc = relative_commutant_toeplitz(f)
    report = dict(family_dim=f.dim, commutant_dim=rc.dim, commutant=rc, search_depth=search_depth)
    if rc == f.basis:
        return MaximalityReport("maximal", **report)

    n, d = f.n, f.d
    candidates = [v for v in rc.sparse_vectors() if f.basis.reduce(v)]
    rng = sampling.rng_for(seed, "extension", n, d, f.dim)
    for _ in range(random_candidates):
        v = _sparse(sampling.member(rng, rc))
        if f.basis.reduce(v):
            candidates.append(v)
    fmembers = f.members()
    N = BlockToeplitz.coeff_dim(n, d)
    for v in candidates:
        x = BlockToeplitz.from_vec([v.get(k, ZERO) for k in range(N)], n, d)
        ext = _grow_algebra(fmembers + [x], n, d, search_depth)
        if ext is None or ext.dim <= f.dim:
            continue
        # re-verify the extension before reporting it
        if closure_check(ext) and ext.basis.contains_space(f.basis):
            return MaximalityReport("not_maximal", witness=x, extension_dim=ext.dim, **report)
    return MaximalityReport("inconclusive", **report)


def derive_AB(t: BlockToeplitz, entry: AlgebraSpec) -> tuple[Matrix, Matrix] | None:
    """A pair ``(A, B)`` with the algebra generated around ``t`` inside ``F_{A,B}``.

    Looks for ``r != 0`` with ``T_r`` invertible.  Closure of ``T U`` in the
    block Toeplitz space forces ``T_r U_{q-n} = T_{r-n} U_q`` for ``r > 0``,
    i.e. ``(T_r^{-1} T_{r-n}) U_q = U_{q-n}``, giving ``A = T_r^{-1} T_{r-n}``
    and ``B = I``.  For ``r < 0`` the relation is
    ``T_{r+n} U_{q-n} = T_r U_q``, giving ``A = I`` and
    ``B = T_r^{-1} T_{r+n}``.  Returns ``None`` if no off-diagonal block is
    invertible.
    """
    n, d = t.n, t.d
    ebasis = algebra_basis(entry)
    for j in range(-n + 1, n):
        if not ebasis.contains(t.block(j).vec()):
            raise ValueError(f"block {j} is not in the entry algebra")
    eye = Matrix.identity(d)
    for r in list(range(1, n)) + [-k for k in range(1, n)]:
        try:
            tinv = inverse(t.block(r))
        except NotInvertible:
            continue
        if r > 0:
            return tinv @ t.block(r - n), eye
        return eye, tinv @ t.block(r + n)
    return None


def entry_extension_witness(f: FabFamily, larger: AlgebraSpec) -> BlockToeplitz | None:
    """A member of ``F_{A,B}`` over ``larger`` that is not in ``f``.

    ``larger`` must contain ``f.entry``; returns ``None`` when both families
    coincide.
    """
    if not algebra_basis(larger).contains_space(algebra_basis(f.entry)):
        raise ValueError("larger entry algebra does not contain the original one")
    big = fab_basis(larger, f.A, f.B, f.n)
    for t in big.members():
        if not f.contains(t):
            return t
    return None
