"""Block Toeplitz matrices and the generalized circulants.

A :class:`BlockToeplitz` of block order ``n`` and block size ``d`` is stored
as its ``2n-1`` defining blocks ``T_j``, ``j = -(n-1) .. n-1``, kept in a
flat tuple at offset ``j + n - 1``.  The dense ``nd x nd`` expansion has
block ``(p, q)`` equal to ``T_{p-q}``.

The coefficient vector of a block Toeplitz matrix (``vec``) is the
concatenation of the row-major vectorizations of its blocks in that same
order; all subspaces of block Toeplitz matrices live in this
``(2n-1) d^2``-dimensional space.
"""
from __future__ import annotations

from typing import Mapping, Sequence

from .exactfield import ONE, ZERO, GaussianRational, format_gr, gr
from .linalg import Matrix, Subspace

__all__ = [
    "BlockToeplitz",
    "INF",
    "ALL_ALPHAS",
    "parse_alpha",
    "format_alpha",
    "product_condition",
    "bt_multiply",
    "toeplitz_product",
    "circulant_generators",
    "circulant_basis",
    "in_circulant",
    "find_alpha",
]


class _Infinity:
    """The point at infinity of the circulant parameter (upper triangular)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class _AllAlphas:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ALL_ALPHAS"


#: returned by :func:`find_alpha` for diagonal inputs, which lie in every circulant algebra
ALL_ALPHAS = _AllAlphas()


def parse_alpha(value):
    if value is INF or (isinstance(value, str) and value.lower() in ("inf", "infinity", "oo")):
        return INF
    return gr(value)


def format_alpha(alpha) -> str:
    return "inf" if alpha is INF else format_gr(alpha)


class BlockToeplitz:
    __slots__ = ("n", "d", "blocks")

    def __init__(self, n: int, d: int, blocks: Sequence[Matrix]):
        if n < 1 or d < 1:
            raise ValueError("block order and block size must be positive")
        blocks = tuple(blocks)
        if len(blocks) != 2 * n - 1:
            raise ValueError(f"expected {2 * n - 1} blocks, got {len(blocks)}")
        for b in blocks:
            if b.shape != (d, d):
                raise ValueError(f"block of shape {b.shape}, expected {(d, d)}")
        self.n, self.d, self.blocks = n, d, blocks

    # -- constructors -------------------------------------------------
    @classmethod
    def from_mapping(cls, n: int, d: int, blocks: Mapping[int, Matrix]) -> BlockToeplitz:
        """Blocks given as ``{j: T_j}``; missing indices are zero."""
        zero = Matrix.zeros(d, d)
        out = [zero] * (2 * n - 1)
        for j, b in blocks.items():
            if not -n < j < n:
                raise ValueError(f"block index {j} out of range for n={n}")
            out[j + n - 1] = b
        return cls(n, d, out)

    @classmethod
    def scalar(cls, n: int, coeffs: Mapping[int, object]) -> BlockToeplitz:
        """Scalar Toeplitz matrix from ``{j: t_j}``."""
        return cls.from_mapping(n, 1, {j: Matrix([[c]]) for j, c in coeffs.items()})

    @classmethod
    def identity(cls, n: int, d: int) -> BlockToeplitz:
        return cls.from_mapping(n, d, {0: Matrix.identity(d)})

    @classmethod
    def zeros(cls, n: int, d: int) -> BlockToeplitz:
        return cls.from_mapping(n, d, {})

    @classmethod
    def block_diagonal(cls, n: int, u: Matrix) -> BlockToeplitz:
        """``diag(U, U, ..., U)``."""
        return cls.from_mapping(n, u.nrows, {0: u})

    @classmethod
    def from_vec(cls, vec: Sequence, n: int, d: int) -> BlockToeplitz:
        dd = d * d
        if len(vec) != (2 * n - 1) * dd:
            raise ValueError("coefficient vector has the wrong length")
        return cls(n, d, [Matrix.from_vec(vec[k * dd:(k + 1) * dd], d, d) for k in range(2 * n - 1)])

    @staticmethod
    def coeff_dim(n: int, d: int) -> int:
        return (2 * n - 1) * d * d

    @staticmethod
    def coeff_index(n: int, d: int, j: int, r: int, c: int) -> int:
        return (j + n - 1) * d * d + r * d + c

    # -- access -------------------------------------------------------
    def block(self, j: int) -> Matrix:
        if not -self.n < j < self.n:
            raise IndexError(f"block index {j} out of range")
        return self.blocks[j + self.n - 1]

    def coeff(self, j: int) -> GaussianRational:
        """Scalar coefficient ``t_j`` (``d == 1`` only)."""
        if self.d != 1:
            raise ValueError("coeff() is defined for scalar Toeplitz matrices")
        return self.block(j)[0, 0]

    def vec(self) -> tuple:
        return tuple(x for b in self.blocks for x in b.vec())

    def to_dense(self) -> Matrix:
        n = self.n
        return Matrix.from_blocks([[self.block(p - q) for q in range(n)] for p in range(n)])

    @classmethod
    def from_dense(cls, m: Matrix, n: int, d: int) -> BlockToeplitz | None:
        """Read off the blocks of ``m``; ``None`` if ``m`` is not block Toeplitz."""
        if m.shape != (n * d, n * d):
            raise ValueError(f"matrix of shape {m.shape} is not {n * d}x{n * d}")
        blocks = {}
        for p in range(n):
            for q in range(n):
                b = m.block(p * d, q * d, d, d)
                j = p - q
                if j in blocks:
                    if blocks[j] != b:
                        return None
                else:
                    blocks[j] = b
        return cls.from_mapping(n, d, blocks)

    def is_block_diagonal(self) -> bool:
        return all(self.block(j).is_zero() for j in range(-self.n + 1, self.n) if j)

    # -- linear structure ---------------------------------------------
    def _check(self, other: BlockToeplitz):
        if not isinstance(other, BlockToeplitz) or (self.n, self.d) != (other.n, other.d):
            raise ValueError("block Toeplitz shape mismatch")

    def __add__(self, other):
        self._check(other)
        return BlockToeplitz(self.n, self.d, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        self._check(other)
        return BlockToeplitz(self.n, self.d, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return BlockToeplitz(self.n, self.d, [-a for a in self.blocks])

    def __mul__(self, scalar):
        return BlockToeplitz(self.n, self.d, [a * scalar for a in self.blocks])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BlockToeplitz):
            return NotImplemented
        return (self.n, self.d, self.blocks) == (other.n, other.d, other.blocks)

    def __hash__(self):
        return hash((self.n, self.d, self.blocks))

    def __repr__(self):
        return f"BlockToeplitz(n={self.n}, d={self.d})"


def _check_pair(t: BlockToeplitz, u: BlockToeplitz):
    if (t.n, t.d) != (u.n, u.d):
        raise ValueError(f"shape mismatch: (n={t.n}, d={t.d}) vs (n={u.n}, d={u.d})")


def product_condition(t: BlockToeplitz, u: BlockToeplitz) -> bool:
    """Whether ``t @ u`` is block Toeplitz.

    Checks ``T_p U_{q-n} == T_{p-n} U_q`` for all ``p, q = 1..n-1``.
    """
    _check_pair(t, u)
    n = t.n
    for p in range(1, n):
        tp, tpn = t.block(p), t.block(p - n)
        tp_zero, tpn_zero = tp.is_zero(), tpn.is_zero()
        if tp_zero and tpn_zero:
            continue
        for q in range(1, n):
            left = Matrix.zeros(t.d, t.d) if tp_zero else tp @ u.block(q - n)
            right = Matrix.zeros(t.d, t.d) if tpn_zero else tpn @ u.block(q)
            if left != right:
                return False
    return True


def bt_multiply(t: BlockToeplitz, u: BlockToeplitz) -> tuple[Matrix, BlockToeplitz | None]:
    """Dense product and, when it is block Toeplitz, its structured form."""
    _check_pair(t, u)
    dense = t.to_dense() @ u.to_dense()
    return dense, BlockToeplitz.from_dense(dense, t.n, t.d)


def toeplitz_product(t: BlockToeplitz, u: BlockToeplitz) -> BlockToeplitz | None:
    """Structured product computed blockwise; ``None`` if not block Toeplitz.

    Uses the product condition, then assembles the first block column and
    first block row of ``t @ u``.
    """
    if not product_condition(t, u):
        return None
    n, d = t.n, t.d
    zero = Matrix.zeros(d, d)
    blocks = {}
    for i in range(n):
        acc = zero
        for k in range(n):
            a, b = t.block(i - k), u.block(k)
            if not a.is_zero() and not b.is_zero():
                acc = acc + a @ b
        blocks[i] = acc
    for j in range(1, n):
        acc = zero
        for k in range(n):
            a, b = t.block(-k), u.block(k - j)
            if not a.is_zero() and not b.is_zero():
                acc = acc + a @ b
        blocks[-j] = acc
    return BlockToeplitz.from_mapping(n, d, blocks)


# ---------------------------------------------------------------------------
# generalized circulants


def circulant_generators(n: int, alpha) -> list[BlockToeplitz]:
    """Basis of the circulant algebra with parameter ``alpha``.

    The identity, then for ``j = 1..n-1`` the matrix with ``t_j = 1`` and
    ``t_{j-n} = alpha`` (finite alpha), or ``t_{j-n} = 1`` alone for
    ``alpha = INF``.  Thus ``alpha = 0`` gives the lower triangular and
    ``alpha = INF`` the upper triangular Toeplitz matrices.
    """
    if n < 1:
        raise ValueError("n must be positive")
    alpha = parse_alpha(alpha)
    gens = [BlockToeplitz.scalar(n, {0: ONE})]
    for j in range(1, n):
        if alpha is INF:
            gens.append(BlockToeplitz.scalar(n, {j - n: ONE}))
        else:
            gens.append(BlockToeplitz.scalar(n, {j: ONE, j - n: alpha}))
    return gens


def circulant_basis(n: int, alpha) -> Subspace:
    """Circulant algebra as a subspace of scalar Toeplitz coefficient vectors."""
    return Subspace(2 * n - 1, (g.vec() for g in circulant_generators(n, alpha)))


def in_circulant(t: BlockToeplitz, alpha) -> bool:
    """Membership of a scalar Toeplitz matrix in the circulant algebra."""
    alpha = parse_alpha(alpha)
    n = t.n
    for j in range(1, n):
        tj, tjn = t.coeff(j), t.coeff(j - n)
        if alpha is INF:
            if tj:
                return False
        elif tjn != alpha * tj:
            return False
    return True


def find_alpha(t: BlockToeplitz):
    """Circulant parameter of a scalar Toeplitz matrix.

    Returns :data:`ALL_ALPHAS` when ``t`` is diagonal, the unique alpha
    (a :class:`GaussianRational` or :data:`INF`) when one exists, and
    ``None`` otherwise.
    """
    if t.d != 1:
        raise ValueError("find_alpha expects a scalar Toeplitz matrix")
    n = t.n
    lower = [t.coeff(j) for j in range(1, n)]
    upper = [t.coeff(j - n) for j in range(1, n)]
    if not any(lower) and not any(upper):
        return ALL_ALPHAS
    k = next((i for i, x in enumerate(lower) if x), None)
    if k is None:
        return INF
    alpha = upper[k] / lower[k]
    if all(u == alpha * lo for lo, u in zip(lower, upper)):
        return alpha
    return None
