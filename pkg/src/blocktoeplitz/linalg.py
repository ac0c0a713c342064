"""Dense exact linear algebra over Q(i).

Everything here is exact: row reduction, kernels, inverses, subspace
calculus and the polynomial invariants (minimal and characteristic
polynomials) of square matrices.

Matrices are vectorized row-major throughout the package; a subspace of
``M_{r x c}`` is a :class:`Subspace` of ambient dimension ``r*c``.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .exactfield import ONE, ZERO, GaussianRational, format_gr, gr

__all__ = [
    "Matrix",
    "Subspace",
    "Poly",
    "NotInvertible",
    "Echelon",
    "rref",
    "kernel_basis",
    "inverse",
    "det",
    "minimal_polynomial",
    "char_polynomial",
    "is_nonderogatory",
    "poly_gcd",
    "companion",
]


class NotInvertible(ArithmeticError):
    """Raised by :func:`inverse` for a singular matrix."""


class Matrix:
    """Immutable dense matrix of :class:`GaussianRational` entries."""

    __slots__ = ("nrows", "ncols", "_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable] = (), ncols: int | None = None):
        data = tuple(tuple(gr(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        self.nrows = len(data)
        self.ncols = ncols
        self._rows = data
        self._hash = None

    @classmethod
    def _wrap(cls, rows: tuple, nrows: int, ncols: int) -> Matrix:
        m = object.__new__(cls)
        m.nrows, m.ncols, m._rows, m._hash = nrows, ncols, rows, None
        return m

    # -- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> Matrix:
        ncols = nrows if ncols is None else ncols
        row = (ZERO,) * ncols
        return cls._wrap((row,) * nrows, nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls.diag([ONE] * n)

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        vals = [gr(v) for v in values]
        n = len(vals)
        rows = tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n))
        return cls._wrap(rows, n, n)

    @classmethod
    def unit(cls, nrows: int, ncols: int, i: int, j: int) -> Matrix:
        rows = [[ZERO] * ncols for _ in range(nrows)]
        rows[i][j] = ONE
        return cls._wrap(tuple(map(tuple, rows)), nrows, ncols)

    @classmethod
    def from_vec(cls, vec: Sequence, nrows: int, ncols: int) -> Matrix:
        if len(vec) != nrows * ncols:
            raise ValueError(f"vector of length {len(vec)} cannot fill {nrows}x{ncols}")
        vals = [gr(x) for x in vec]
        return cls._wrap(tuple(tuple(vals[i * ncols:(i + 1) * ncols]) for i in range(nrows)), nrows, ncols)

    @classmethod
    def from_blocks(cls, grid: Sequence[Sequence[Matrix]]) -> Matrix:
        rows = []
        for brow in grid:
            h = brow[0].nrows
            for r in range(h):
                rows.append(tuple(x for blk in brow for x in blk._rows[r]))
        ncols = len(rows[0]) if rows else 0
        return cls._wrap(tuple(rows), len(rows), ncols)

    # -- access -------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def rows(self) -> tuple:
        return self._rows

    def vec(self) -> tuple:
        """Row-major flattening."""
        return tuple(x for row in self._rows for x in row)

    def block(self, i: int, j: int, h: int, w: int) -> Matrix:
        return Matrix._wrap(tuple(r[j:j + w] for r in self._rows[i:i + h]), h, w)

    def tolist(self) -> list:
        return [[format_gr(x) for x in row] for row in self._rows]

    @property
    def T(self) -> Matrix:
        return Matrix._wrap(tuple(zip(*self._rows)) if self.nrows else (), self.ncols, self.nrows)

    def trace(self) -> GaussianRational:
        s = ZERO
        for i in range(min(self.shape)):
            s = s + self._rows[i][i]
        return s

    def is_zero(self) -> bool:
        return not any(x for row in self._rows for x in row)

    def rank(self) -> int:
        return rref(self)[2]

    # -- arithmetic ---------------------------------------------------
    def _check_same(self, other):
        if not isinstance(other, Matrix):
            return False
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return True

    def __add__(self, other):
        if not self._check_same(other):
            return NotImplemented
        return Matrix._wrap(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
                            self.nrows, self.ncols)

    def __sub__(self, other):
        if not self._check_same(other):
            return NotImplemented
        return Matrix._wrap(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
                            self.nrows, self.ncols)

    def __neg__(self):
        return Matrix._wrap(tuple(tuple(-a for a in r) for r in self._rows), self.nrows, self.ncols)

    def __mul__(self, scalar):
        if isinstance(scalar, Matrix):
            raise TypeError("use @ for matrix products")
        c = gr(scalar)
        if not c:
            return Matrix.zeros(self.nrows, self.ncols)
        return Matrix._wrap(tuple(tuple(c * a if a else ZERO for a in r) for r in self._rows), self.nrows, self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other._rows
        w = other.ncols
        out = []
        for row in self._rows:
            acc = [ZERO] * w
            for k, a in enumerate(row):
                if not a:
                    continue
                brow = orows[k]
                for j in range(w):
                    b = brow[j]
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return Matrix._wrap(tuple(out), self.nrows, w)

    def __pow__(self, k: int):
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        result, base = Matrix.identity(self.nrows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self._rows))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.tolist()!r})"


# ---------------------------------------------------------------------------
# row reduction on sparse rows (dict: column -> nonzero entry)


def _axpy(v: dict, coef, row: dict) -> None:
    # v -= coef * row, in place, dropping zeros
    for k, x in row.items():
        nv = v.get(k)
        nv = -(coef * x) if nv is None else nv - coef * x
        if nv:
            v[k] = nv
        else:
            del v[k]


class Echelon:
    """Incrementally maintained reduced row-echelon form.

    Rows are sparse dicts.  Every stored row has a unit pivot and zeros in
    all other pivot columns, so reducing a new vector never disturbs
    pivots it has already cleared.
    """

    __slots__ = ("ncols", "pivots")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        piv = self.pivots
        for c in [c for c in v if c in piv]:
            coef = v.get(c)
            if coef:
                _axpy(v, coef, piv[c])
        return v

    def add(self, v: dict) -> bool:
        """Add a row; return True if it increased the rank."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = r[p].inverse()
        if inv != ONE:
            r = {k: x * inv for k, x in r.items()}
        r[p] = ONE
        for row in self.pivots.values():
            coef = row.get(p)
            if coef:
                _axpy(row, coef, r)
        self.pivots[p] = r
        return True

    def sorted_rows(self) -> list[tuple[int, dict]]:
        return sorted(self.pivots.items())

    def kernel_rows(self) -> list[dict]:
        """Sparse kernel vectors, one per free column."""
        piv = self.pivots
        out = []
        for f in range(self.ncols):
            if f in piv:
                continue
            v = {f: ONE}
            for p, row in piv.items():
                x = row.get(f)
                if x:
                    v[p] = -x
            out.append(v)
        return out

    def copy(self) -> Echelon:
        e = Echelon(self.ncols)
        e.pivots = {p: dict(r) for p, r in self.pivots.items()}
        return e


def _sparse(seq) -> dict:
    return {k: x for k, x in enumerate(seq) if x}


def _dense(v: dict, n: int) -> tuple:
    out = [ZERO] * n
    for k, x in v.items():
        out[k] = x
    return tuple(out)


def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row-echelon form, pivot columns and rank."""
    e = Echelon(m.ncols)
    for row in m.rows():
        e.add(_sparse(row))
    rows = [_dense(r, m.ncols) for _, r in e.sorted_rows()]
    pivots = sorted(e.pivots)
    rows.extend([(ZERO,) * m.ncols] * (m.nrows - len(rows)))
    return Matrix._wrap(tuple(rows), m.nrows, m.ncols), pivots, len(pivots)


def kernel_basis(m: Matrix) -> Subspace:
    """Right null space ``{v : m v = 0}`` as a canonical subspace."""
    e = Echelon(m.ncols)
    for row in m.rows():
        e.add(_sparse(row))
    return Subspace._from_sparse(m.ncols, e.kernel_rows())


def solve_kernel(rows: Iterable[dict], ncols: int) -> Subspace:
    """Kernel of a system given as sparse equation rows."""
    e = Echelon(ncols)
    for r in rows:
        if r:
            e.add(r)
    return Subspace._from_sparse(ncols, e.kernel_rows())


def inverse(m: Matrix) -> Matrix:
    """Exact two-sided inverse; raises :class:`NotInvertible` if singular."""
    if not m.is_square:
        raise ValueError(f"inverse of non-square {m.shape} matrix")
    n = m.nrows
    a = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m.rows())]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise NotInvertible("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv if x else ZERO for x in a[col]]
        for r in range(n):
            f = a[r][col]
            if r != col and f:
                pr = a[col]
                a[r] = [x - f * y if y else x for x, y in zip(a[r], pr)]
    return Matrix._wrap(tuple(tuple(row[n:]) for row in a), n, n)


def det(m: Matrix) -> GaussianRational:
    if not m.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    a = [list(r) for r in m.rows()]
    result = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        p = a[col][col]
        result = result * p
        inv = p.inverse()
        for r in range(col + 1, n):
            f = a[r][col]
            if f:
                f = f * inv
                a[r] = [x - f * y if y else x for x, y in zip(a[r], a[col])]
    return result


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """A linear subspace of ``Q(i)^ambient_dim`` in canonical RREF basis.

    Two subspaces are equal exactly when their canonical bases coincide,
    so ``==`` is structural.
    """

    __slots__ = ("ambient_dim", "_ech", "_vectors")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        self.ambient_dim = ambient_dim
        self._ech = Echelon(ambient_dim)
        self._vectors = None
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            self._ech.add(_sparse([gr(x) for x in v]))

    @classmethod
    def _from_sparse(cls, ambient_dim: int, rows: Iterable[dict]) -> Subspace:
        s = cls(ambient_dim)
        for r in rows:
            s._ech.add(r)
        return s

    @classmethod
    def _from_echelon(cls, ech: Echelon) -> Subspace:
        s = cls(ech.ncols)
        s._ech = ech
        return s

    @classmethod
    def span_matrices(cls, mats: Iterable[Matrix], nrows: int, ncols: int) -> Subspace:
        return cls._from_sparse(nrows * ncols, (_sparse(m.vec()) for m in mats))

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls._from_sparse(n, ({k: ONE} for k in range(n)))

    @property
    def dim(self) -> int:
        return self._ech.rank

    def __len__(self):
        return self.dim

    @property
    def pivots(self) -> list[int]:
        return sorted(self._ech.pivots)

    @property
    def vectors(self) -> tuple[tuple, ...]:
        if self._vectors is None:
            self._vectors = tuple(_dense(r, self.ambient_dim) for _, r in self._ech.sorted_rows())
        return self._vectors

    def sparse_vectors(self) -> list[dict]:
        return [r for _, r in self._ech.sorted_rows()]

    def _check(self, other: Subspace):
        if not isinstance(other, Subspace):
            raise TypeError("expected a Subspace")
        if other.ambient_dim != self.ambient_dim:
            raise ValueError(f"ambient dimension mismatch {self.ambient_dim} vs {other.ambient_dim}")

    def reduce(self, v) -> dict:
        """Remainder of ``v`` modulo the subspace (sparse)."""
        if not isinstance(v, dict):
            if len(v) != self.ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
            v = _sparse([gr(x) for x in v])
        return self._ech.reduce(v)

    def contains(self, v) -> bool:
        return not self.reduce(v)

    __contains__ = contains

    def contains_space(self, other: Subspace) -> bool:
        self._check(other)
        return all(self.contains(r) for r in other.sparse_vectors())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        self._check(other)
        return self.vectors == other.vectors

    def __hash__(self):
        return hash((self.ambient_dim, self.vectors))

    def __le__(self, other: Subspace) -> bool:
        return other.contains_space(self)

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        e = self._ech.copy()
        for r in other.sparse_vectors():
            e.add(r)
        return Subspace._from_echelon(e)

    def annihilator(self) -> Subspace:
        """``{y : sum_k y_k v_k = 0 for every v in self}`` (bilinear, no conjugation)."""
        return Subspace._from_sparse(self.ambient_dim, self._ech.kernel_rows())

    def __and__(self, other: Subspace) -> Subspace:
        self._check(other)
        # U & W = kernel of the stacked annihilator equations
        rows = self.annihilator().sparse_vectors() + other.annihilator().sparse_vectors()
        return solve_kernel(rows, self.ambient_dim)

    intersection = __and__
    sum = __add__

    def complement_basis(self) -> list[dict]:
        """Unit vectors on the non-pivot columns (spans a complement)."""
        piv = self._ech.pivots
        return [{k: ONE} for k in range(self.ambient_dim) if k not in piv]

    def combination(self, coeffs: Sequence) -> tuple:
        """Dense vector ``sum coeffs[i] * basis[i]``."""
        acc: dict = {}
        for c, r in zip(coeffs, self.sparse_vectors()):
            c = gr(c)
            if c:
                _axpy(acc, -c, r)
        return _dense(acc, self.ambient_dim)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Univariate polynomial over Q(i), coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [gr(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        inv = self.lead.inverse()
        return Poly(c * inv for c in self.coeffs)

    def __add__(self, other):
        other = other if isinstance(other, Poly) else Poly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = other if isinstance(other, Poly) else Poly([other])
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = gr(other)
            return Poly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: Poly):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = other.lead.inverse()
        quot = [ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            if c:
                quot[k] = c
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __call__(self, x):
        """Evaluate at a scalar or a square :class:`Matrix` (Horner)."""
        if isinstance(x, Matrix):
            n = x.nrows
            acc = Matrix.zeros(n, n)
            eye = Matrix.identity(n)
            for c in reversed(self.coeffs):
                acc = acc @ x + eye * c
            return acc
        x = gr(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[format_gr(c) for c in self.coeffs]})"


def _krylov_columns(m: Matrix, k: int) -> list[tuple]:
    out, p = [], Matrix.identity(m.nrows)
    for _ in range(k + 1):
        out.append(p.vec())
        p = p @ m
    return out


def minimal_polynomial(m: Matrix) -> Poly:
    """Monic least-degree annihilating polynomial.

    Found as the first linear dependency among ``I, m, m^2, ...``.
    """
    if not m.is_square:
        raise ValueError("minimal polynomial of a non-square matrix")
    n = m.nrows
    powers = [Matrix.identity(n).vec()]
    p = Matrix.identity(n)
    span = Echelon(n * n)
    span.add(_sparse(powers[0]))
    for k in range(1, n + 1):
        p = p @ m
        v = _sparse(p.vec())
        if span.add(v):
            powers.append(p.vec())
            continue
        # dependency: columns are vec(m^0..m^k)
        cols = powers + [p.vec()]
        system = Matrix([[c[r] for c in cols] for r in range(n * n)])
        ker = kernel_basis(system).vectors
        assert len(ker) == 1
        return Poly(ker[0]).monic()
    raise AssertionError("no dependency found up to degree n")  # Cayley-Hamilton


def char_polynomial(m: Matrix) -> Poly:
    """``det(x I - m)`` via the Faddeev-LeVerrier recursion.

    The recursion only divides by the integers ``1..n``, so it is exact
    over Q(i).
    """
    if not m.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.nrows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    eye = Matrix.identity(n)
    mk = Matrix.zeros(n, n)
    for k in range(1, n + 1):
        mk = m @ mk + eye * coeffs[n - k + 1]
        coeffs[n - k] = -(m @ mk).trace() / k
    return Poly(coeffs)


def is_nonderogatory(m: Matrix) -> bool:
    return minimal_polynomial(m) == char_polynomial(m)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def companion(p: Poly) -> Matrix:
    """Companion matrix of a monic polynomial (nonderogatory by construction)."""
    p = p.monic()
    k = p.degree
    if k < 1:
        raise ValueError("companion matrix needs degree >= 1")
    rows = [[ZERO] * k for _ in range(k)]
    for i in range(1, k):
        rows[i][i - 1] = ONE
    for i in range(k):
        rows[i][k - 1] = -p.coeffs[i]
    return Matrix(rows)
