"""Maximal commutative subalgebras of ``M_{d x d}`` and commutants.

Entry algebras are described by an :data:`AlgebraSpec`: one of
:class:`Diagonal`, :class:`Circulant`, :class:`Schur`, :class:`Polynomial`
or :class:`Explicit`.  :func:`algebra_basis` turns a spec into a
:class:`~blocktoeplitz.linalg.Subspace` of the ``d^2``-dimensional space of
row-major vectorized matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .exactfield import ONE, ZERO
from .linalg import Matrix, NotInvertible, Subspace, inverse, minimal_polynomial, solve_kernel
from . import sampling
from .toeplitz import circulant_generators, format_alpha, parse_alpha

__all__ = [
    "Diagonal",
    "Circulant",
    "Schur",
    "Polynomial",
    "Explicit",
    "AlgebraSpec",
    "describe",
    "NotCommutative",
    "algebra_basis",
    "basis_matrices",
    "schur_element",
    "commutant_in_Md",
    "is_commutative",
    "is_maximal_commutative",
    "inverse_closed_check",
    "InverseClosedResult",
]


class NotCommutative(ValueError):
    """The given span contains two non-commuting elements."""

    def __init__(self, a: Matrix, b: Matrix):
        self.pair = (a, b)
        super().__init__("span is not commutative")


@dataclass(frozen=True)
class Diagonal:
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("Diagonal: d must be positive")


@dataclass(frozen=True)
class Circulant:
    """The circulant algebra of ``n x n`` scalar Toeplitz matrices, as entries."""
    n: int
    alpha: object = ONE

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("Circulant: n must be positive")
        object.__setattr__(self, "alpha", parse_alpha(self.alpha))

    @property
    def d(self) -> int:
        return self.n


@dataclass(frozen=True)
class Schur:
    """Matrices ``[[lam I_sigma, X], [0, lam I_tau]]``."""
    sigma: int
    tau: int

    def __post_init__(self):
        if self.sigma < 1 or self.tau < 1:
            raise ValueError("Schur: sigma and tau must be at least 1")

    @property
    def d(self) -> int:
        return self.sigma + self.tau


@dataclass(frozen=True)
class Polynomial:
    """The algebra generated by a square matrix ``M``."""
    M: Matrix

    def __post_init__(self):
        if not self.M.is_square or self.M.nrows < 1:
            raise ValueError("Polynomial: M must be a nonempty square matrix")

    @property
    def d(self) -> int:
        return self.M.nrows


@dataclass(frozen=True)
class Explicit:
    """An algebra given by a spanning set of ``d x d`` matrices."""
    d: int
    basis: Subspace = field(compare=True)

    def __post_init__(self):
        if not isinstance(self.basis, Subspace):
            mats = list(self.basis)
            object.__setattr__(self, "basis", Subspace.span_matrices(mats, self.d, self.d))
        if self.basis.ambient_dim != self.d * self.d:
            raise ValueError("Explicit: basis ambient dimension must be d*d")


AlgebraSpec = Union[Diagonal, Circulant, Schur, Polynomial, Explicit]


def describe(spec: AlgebraSpec) -> str:
    if isinstance(spec, Diagonal):
        return f"Diagonal({spec.d})"
    if isinstance(spec, Circulant):
        return f"Circulant(n={spec.n}, alpha={format_alpha(spec.alpha)})"
    if isinstance(spec, Schur):
        return f"Schur({spec.sigma},{spec.tau})"
    if isinstance(spec, Polynomial):
        return f"Polynomial(M={spec.M.tolist()})"
    return f"Explicit(d={spec.d}, dim={spec.basis.dim})"


def schur_element(sigma: int, tau: int, lam, x: Matrix) -> Matrix:
    """Embed ``(lam, X)`` as ``[[lam I_sigma, X], [0, lam I_tau]]``."""
    if x.shape != (sigma, tau):
        raise ValueError(f"X must be {sigma}x{tau}")
    lam_s, lam_t = Matrix.identity(sigma) * lam, Matrix.identity(tau) * lam
    return Matrix.from_blocks([[lam_s, x], [Matrix.zeros(tau, sigma), lam_t]])


def algebra_basis(spec: AlgebraSpec) -> Subspace:
    """Canonical basis of the entry algebra in vectorized ``M_{d x d}``."""
    d = spec.d
    if isinstance(spec, Diagonal):
        mats = [Matrix.unit(d, d, k, k) for k in range(d)]
    elif isinstance(spec, Circulant):
        mats = [g.to_dense() for g in circulant_generators(spec.n, spec.alpha)]
    elif isinstance(spec, Schur):
        s = spec.sigma
        mats = [Matrix.identity(d)]
        mats += [Matrix.unit(d, d, i, s + j) for i in range(s) for j in range(spec.tau)]
    elif isinstance(spec, Polynomial):
        delta = minimal_polynomial(spec.M).degree
        mats = [spec.M ** k for k in range(delta)]
    elif isinstance(spec, Explicit):
        return spec.basis
    else:
        raise TypeError(f"not an algebra spec: {spec!r}")
    return Subspace.span_matrices(mats, d, d)


def basis_matrices(space: Subspace, d: int) -> list[Matrix]:
    return [Matrix.from_vec(v, d, d) for v in space.vectors]


def _commutator_rows(b: Matrix) -> list[dict]:
    # rows of the linear map X -> X b - b X, variable X[i, j] at index i*d + j
    d = b.nrows
    rows = []
    for r in range(d):
        for c in range(d):
            eq: dict = {}
            for k in range(d):
                x = b[k, c]
                if x:
                    idx = r * d + k
                    eq[idx] = eq.get(idx, ZERO) + x
                y = b[r, k]
                if y:
                    idx = k * d + c
                    eq[idx] = eq.get(idx, ZERO) - y
            eq = {k: v for k, v in eq.items() if v}
            if eq:
                rows.append(eq)
    return rows


def commutant_in_Md(basis: Subspace, d: int) -> Subspace:
    """All ``d x d`` matrices commuting with every element of the span."""
    if basis.ambient_dim != d * d:
        raise ValueError("basis does not live in M_{d x d}")
    rows = []
    for b in basis_matrices(basis, d):
        rows.extend(_commutator_rows(b))
    return solve_kernel(rows, d * d)


def is_commutative(mats: list[Matrix]) -> tuple[Matrix, Matrix] | None:
    """First non-commuting pair, or ``None`` when all pairs commute."""
    for i, a in enumerate(mats):
        for b in mats[i + 1:]:
            if a @ b != b @ a:
                return a, b
    return None


def is_maximal_commutative(basis: Subspace, d: int) -> bool:
    """Whether the (commutative) span equals its own commutant.

    Raises :class:`NotCommutative` if the span is not commutative.
    """
    bad = is_commutative(basis_matrices(basis, d))
    if bad is not None:
        raise NotCommutative(*bad)
    return commutant_in_Md(basis, d) == basis


@dataclass
class InverseClosedResult:
    ok: bool
    tested: int
    witness: Matrix | None = None

    def __bool__(self):
        return self.ok


def inverse_closed_check(basis: Subspace, d: int, samples: int = 20, seed: int = 0,
                         gaussian: bool = True) -> InverseClosedResult:
    """Sample invertible members and check their inverses stay in the span.

    Stops at the first member whose inverse leaves the span and returns it
    as the witness.
    """
    rng = sampling.rng_for(seed, "inverse_closed", d, basis.dim)
    tested = 0
    for _ in range(samples * 20):
        if tested >= samples:
            break
        m = Matrix.from_vec(sampling.member(rng, basis, gaussian=gaussian, fractions=True), d, d)
        try:
            minv = inverse(m)
        except NotInvertible:
            continue
        tested += 1
        if not basis.contains(minv.vec()):
            return InverseClosedResult(False, tested, m)
    return InverseClosedResult(True, tested)
