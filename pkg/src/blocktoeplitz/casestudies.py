"""Concrete verifications for diagonal, Schur and nilpotent entry algebras.

Each ``*_case`` function runs a battery of exact checks at a fixed size
and returns a :class:`CaseReport` whose sub-claims record what was
checked, the dimensions involved and, for any refutation, a witness that
has been re-checked before emission.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .exactfield import ONE, ZERO, gr
from .linalg import Matrix, NotInvertible, Poly, Subspace, inverse, minimal_polynomial, poly_gcd, solve_kernel
from . import sampling
from .fab import (
    ToeplitzFamily,
    closure_check,
    closure_failure,
    entry_space,
    fab_basis,
    kernel_condition,
    maximality_certificate,
    relative_commutant_toeplitz,
)
from .subalgebras import Diagonal, Polynomial, Schur, algebra_basis, basis_matrices, schur_element
from .toeplitz import ALL_ALPHAS, INF, BlockToeplitz, circulant_generators, find_alpha, format_alpha, parse_alpha

__all__ = [
    "ReshufflePermutation",
    "SubClaim",
    "CaseReport",
    "reshuffle",
    "diagonal_case",
    "schur_S_basis",
    "schur_case",
    "nilpotent_matrix",
    "nilpotent_A_basis",
    "nilpotent_case",
]


@dataclass(frozen=True)
class ReshufflePermutation:
    """Relabels position ``(block p, coordinate k)`` as ``(coordinate k, block p)``.

    ``mapping[p*d + k] == k*n + p``.
    """
    n: int
    d: int
    mapping: tuple

    def inverse(self) -> ReshufflePermutation:
        return reshuffle(self.d, self.n)

    def matrix(self) -> Matrix:
        """Permutation matrix ``P`` whose column ``mapping[i]`` is ``e_i``."""
        size = self.n * self.d
        rows = [[ZERO] * size for _ in range(size)]
        for old, new in enumerate(self.mapping):
            rows[old][new] = ONE
        return Matrix(rows)

    def conjugate(self, m: Matrix) -> Matrix:
        """``P^{-1} m P``."""
        old_of = [0] * len(self.mapping)
        for old, new in enumerate(self.mapping):
            old_of[new] = old
        return Matrix([[m[old_of[a], old_of[b]] for b in range(len(old_of))] for a in range(len(old_of))])

    def diagonal_blocks(self, t: BlockToeplitz) -> list[BlockToeplitz] | None:
        """The ``d`` scalar Toeplitz blocks of the conjugated matrix, or ``None``
        if the conjugate is not block diagonal with Toeplitz blocks."""
        n, d = self.n, self.d
        c = self.conjugate(t.to_dense())
        out = []
        for k in range(d):
            for k2 in range(d):
                if k2 != k and not c.block(k * n, k2 * n, n, n).is_zero():
                    return None
            blk = BlockToeplitz.from_dense(c.block(k * n, k * n, n, n), n, 1)
            if blk is None:
                return None
            out.append(blk)
        return out


def reshuffle(n: int, d: int) -> ReshufflePermutation:
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    return ReshufflePermutation(n, d, tuple(k * n + p for p in range(n) for k in range(d)))


@dataclass
class SubClaim:
    name: str
    status: str  # "verified" | "refuted" | "skipped"
    detail: str = ""
    witness: BlockToeplitz | None = None
    report: "CaseReport | None" = None


@dataclass
class CaseReport:
    claim: str
    subclaims: list = field(default_factory=list)
    dims: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "", witness=None) -> bool:
        self.subclaims.append(SubClaim(name, "verified" if ok else "refuted", detail, witness))
        return ok

    @property
    def verdict(self) -> str:
        return "refuted" if any(s.status == "refuted" for s in self.subclaims) else "verified"

    @property
    def verified(self) -> bool:
        return self.verdict == "verified"

    @property
    def witness(self) -> BlockToeplitz | None:
        return next((s.witness for s in self.subclaims if s.status == "refuted" and s.witness), None)

    def status(self, name: str) -> str:
        return next(s.status for s in self.subclaims if s.name == name)


def _membership_pair_space(entry_mats: list[Matrix], witnesses: list[BlockToeplitz]) -> Subspace:
    """Coefficient pairs ``(A, B)`` over the entry basis with every witness in ``F_{A,B}``.

    Unknowns are ``alpha_1..alpha_m`` (for ``A``) followed by ``beta_1..beta_m``
    (for ``B``); each witness contributes ``A W_j - B W_{j-n} = 0``.
    """
    m = len(entry_mats)
    rows = []
    for w in witnesses:
        n, d = w.n, w.d
        for j in range(1, n):
            left = [E @ w.block(j) for E in entry_mats]
            right = [E @ w.block(j - n) for E in entry_mats]
            for r in range(d):
                for c in range(d):
                    eq = {}
                    for k in range(m):
                        if left[k][r, c]:
                            eq[k] = left[k][r, c]
                        if right[k][r, c]:
                            eq[m + k] = -right[k][r, c]
                    if eq:
                        rows.append(eq)
    return solve_kernel(rows, 2 * m)


def _split_pair(v: tuple, entry_mats: list[Matrix]) -> tuple[Matrix, Matrix]:
    m = len(entry_mats)
    d = entry_mats[0].nrows
    A, B = Matrix.zeros(d, d), Matrix.zeros(d, d)
    for k, E in enumerate(entry_mats):
        if v[k]:
            A = A + E * v[k]
        if v[m + k]:
            B = B + E * v[m + k]
    return A, B


# ---------------------------------------------------------------------------
# diagonal entries


def _diag_ab(alphas):
    a, b = [], []
    for alpha in alphas:
        if alpha is INF:
            a.append(ONE)
            b.append(ZERO)
        else:
            a.append(alpha)
            b.append(ONE)
    return Matrix.diag(a), Matrix.diag(b)


def coordinate_circulant_algebra(n: int, alphas) -> ToeplitzFamily:
    """Diagonal-entry block Toeplitz matrices whose k-th coordinate lies in
    the circulant algebra with parameter ``alphas[k]``."""
    d = len(alphas)
    members = []
    for k, alpha in enumerate(alphas):
        ekk = Matrix.unit(d, d, k, k)
        for g in circulant_generators(n, alpha):
            members.append(BlockToeplitz.from_mapping(n, d, {j: ekk * g.coeff(j) for j in range(-n + 1, n)}))
    return ToeplitzFamily.span(members, n, d)


def diagonal_case(n: int, d: int, alphas, seed: int = 0) -> CaseReport:
    """Coordinatewise circulant algebra sits inside ``F_{A,B}`` over the diagonals."""
    alphas = [parse_alpha(a) for a in alphas]
    if len(alphas) != d:
        raise ValueError(f"need {d} circulant parameters, got {len(alphas)}")
    rep = CaseReport(f"diagonal entries n={n} d={d} alphas=({', '.join(format_alpha(a) for a in alphas)})")
    alg = coordinate_circulant_algebra(n, alphas)
    rep.add("algebra", closure_check(alg), "coordinatewise circulant algebra is a commutative algebra")

    # the reshuffle reads the circulant parameter back off each coordinate
    perm = reshuffle(n, d)
    rng = sampling.rng_for(seed, "diagonal_case", n, d)
    # nonzero coefficients on the canonical basis so no coordinate degenerates to a scalar
    coeffs = [sampling.nonzero_scalar(rng, gaussian=True) for _ in range(alg.dim)]
    generic = BlockToeplitz.from_vec(alg.basis.combination(coeffs), n, d)
    blocks = perm.diagonal_blocks(generic)
    recovered = None if blocks is None else [find_alpha(b) for b in blocks]
    expected = [ALL_ALPHAS if n == 1 else a for a in alphas]
    rep.add("alpha_recovery", recovered == expected,
            "reshuffled coordinate blocks: " + ("not block diagonal" if recovered is None else
                                                 ", ".join(repr(r) if r is ALL_ALPHAS or r is None
                                                           else format_alpha(r) for r in recovered)))

    A, B = _diag_ab(alphas)
    rep.add("kernel_condition", kernel_condition(A, B), f"A={A.tolist()} B={B.tolist()}")
    fam = fab_basis(Diagonal(d), A, B, n)
    inside = fam.basis.contains_space(alg.basis)
    rep.add("containment", inside, "algebra is contained in F_{A,B}")
    rep.add("equality", fam.basis == alg.basis, "algebra coincides with F_{A,B}")
    rep.dims = {"algebra": alg.dim, "fab": fam.dim, "ambient": BlockToeplitz.coeff_dim(n, d)}
    return rep


# ---------------------------------------------------------------------------
# Schur entries


def _schur_nilpotent_part(sigma: int, tau: int) -> list[Matrix]:
    d = sigma + tau
    return [Matrix.unit(d, d, i, sigma + j) for i in range(sigma) for j in range(tau)]


def schur_S_basis(n: int, sigma: int, tau: int) -> ToeplitzFamily:
    """Block Toeplitz matrices with Schur entries and noninvertible off-diagonal blocks."""
    if sigma < 1 or tau < 1:
        raise ValueError("sigma and tau must be at least 1")
    d = sigma + tau
    nil = _schur_nilpotent_part(sigma, tau)
    members = [BlockToeplitz.from_mapping(n, d, {0: E}) for E in [Matrix.identity(d)] + nil]
    for j in range(-n + 1, n):
        if j:
            members.extend(BlockToeplitz.from_mapping(n, d, {j: E}) for E in nil)
    return ToeplitzFamily.span(members, n, d)


def _vanishing_products(f: ToeplitzFamily) -> bool:
    # both sides of the product condition are zero for every pair
    members = f.members()
    n = f.n
    for t in members:
        for u in members:
            for p in range(1, n):
                for q in range(1, n):
                    if not (t.block(p) @ u.block(q - n)).is_zero():
                        return False
                    if not (t.block(p - n) @ u.block(q)).is_zero():
                        return False
    return True


def schur_case(n: int, sigma: int, tau: int, search_depth: int = 3, seed: int = 0) -> CaseReport:
    """Closure, maximality and (non)representability of the Schur algebra family."""
    d = sigma + tau
    rep = CaseReport(f"schur entries n={n} sigma={sigma} tau={tau}")
    S = schur_S_basis(n, sigma, tau)
    rep.dims = {"S": S.dim, "expected_S": 1 + sigma * tau + 2 * (n - 1) * sigma * tau,
                "ambient": BlockToeplitz.coeff_dim(n, d)}

    rep.add("closure", _vanishing_products(S) and closure_check(S),
            "both sides of the product condition vanish; products stay in S")

    bad = closure_failure(S)
    if bad is None:
        cert = maximality_certificate(S, search_depth=search_depth, seed=seed)
        rep.dims["relative_commutant"] = cert.commutant_dim
        rep.add("maximal", cert.is_maximal, f"certificate verdict: {cert.verdict}", cert.witness)
    else:
        rep.add("maximal", False, bad)

    if sigma * tau < 2:
        note = ("representation needs two independent sigma x tau matrices; for sigma=tau=1 the "
                "Schur algebra is the algebra of a 2x2 nilpotent, handled by the nilpotent case")
        rep.notes.append(note)
        sub = SubClaim("representation", "skipped", note)
        if n >= 2:
            sub.report = nilpotent_case(n, search_depth=search_depth, seed=seed)
        rep.subclaims.append(sub)
        return rep
    if n < 2:
        note = "n=1 imposes no relation between blocks; every pair (A, B) represents S"
        rep.notes.append(note)
        rep.subclaims.append(SubClaim("representation", "skipped", note))
        return rep

    # S = F_{A,B} with strictly upper A, B built from independent X, Y
    X = Matrix.unit(sigma, tau, 0, 0)
    Y = Matrix.unit(sigma, tau, 0, 1) if tau > 1 else Matrix.unit(sigma, tau, 1, 0)
    A, B = schur_element(sigma, tau, 0, X), schur_element(sigma, tau, 0, Y)
    fam = fab_basis(Schur(sigma, tau), A, B, n)
    rep.dims["fab"] = fam.dim
    rep.add("representation", fam.basis == S.basis, "S equals F_{A,B} for strictly upper A, B")
    rep.add("kernel_condition_fails", not kernel_condition(A, B),
            "the representing A, B violate the kernel condition")

    # no representation with the kernel condition: witnesses force lam = mu = 0
    emats = basis_matrices(algebra_basis(Schur(sigma, tau)), d)
    Z = _schur_nilpotent_part(sigma, tau)[0]
    w_pos = BlockToeplitz.from_mapping(n, d, {1: Z})
    w_neg = BlockToeplitz.from_mapping(n, d, {1 - n: Z})
    pairs = _membership_pair_space(emats, [w_pos, w_neg])
    ok = n >= 2 and S.contains(w_pos) and S.contains(w_neg)
    e0 = Matrix.unit(d, 1, 0, 0)
    for v in pairs.vectors:
        Av, Bv = _split_pair(v, emats)
        ok = ok and not Av[0, 0] and not Bv[0, 0]
        ok = ok and (Av @ e0).is_zero() and (Bv @ e0).is_zero()
    rep.dims["witness_pair_space"] = pairs.dim
    rep.add("no_kernel_condition_representation", ok,
            "witnesses force lam = mu = 0, so e_1 lies in Ker A & Ker B")
    return rep


# ---------------------------------------------------------------------------
# nilpotent generator


def nilpotent_matrix() -> Matrix:
    """The 2x2 nilpotent ``E_12`` (nonderogatory, squares to zero)."""
    return Matrix([[0, 1], [0, 0]])


def nilpotent_A_basis(n: int) -> ToeplitzFamily:
    """Block Toeplitz matrices over ``P(M)`` with noninvertible off-diagonal blocks."""
    M = nilpotent_matrix()
    members = [BlockToeplitz.from_mapping(n, 2, {0: Matrix.identity(2)}), BlockToeplitz.from_mapping(n, 2, {0: M})]
    members += [BlockToeplitz.from_mapping(n, 2, {j: M}) for j in range(-n + 1, n) if j]
    return ToeplitzFamily.span(members, n, 2)


def nilpotent_case(n: int, search_depth: int = 3, seed: int = 0, samples: int = 6) -> CaseReport:
    """The maximal commutative algebra over ``P(M)``, ``M^2 = 0``, that is not an ``F_{A,B}``."""
    if n < 2:
        raise ValueError("nilpotent case needs n >= 2")
    M = nilpotent_matrix()
    eye = Matrix.identity(2)
    spec = Polynomial(M)
    rep = CaseReport(f"nilpotent entries n={n}")
    alg = nilpotent_A_basis(n)
    full = entry_space(spec, n)
    rep.dims = {"A": alg.dim, "expected_A": 2 + 2 * (n - 1), "entry_space": full.dim,
                "ambient": BlockToeplitz.coeff_dim(n, 2)}

    rep.add("poly_invertibility_spot_check",
            _poly_invertibility_agrees(Poly([0, 1]), M) and _poly_invertibility_agrees(Poly([1, 1]), M)
            and poly_gcd(Poly([0, 1]), minimal_polynomial(M)) == Poly([0, 1])
            and poly_gcd(Poly([1, 1]), minimal_polynomial(M)) == Poly([1]),
            "p(x)=x gives a noninvertible entry, p(x)=x+1 an invertible one")

    rep.add("algebra", closure_check(alg), "A is a commutative algebra")

    # the two proof witnesses: negative blocks M, or positive blocks M
    w_neg = BlockToeplitz.from_mapping(n, 2, {p - n: M for p in range(1, n)})
    w_pos = BlockToeplitz.from_mapping(n, 2, {p: M for p in range(1, n)})
    forcing = ToeplitzFamily.span([BlockToeplitz.block_diagonal(n, eye), BlockToeplitz.block_diagonal(n, M),
                                   w_neg, w_pos], n, 2)
    forced = relative_commutant_toeplitz(forcing)
    rep.dims["witness_commutant"] = forced.dim
    rep.add("maximal_via_witnesses", forced == alg.basis,
            "X commuting with diag(I), diag(M) and both witnesses, with Toeplitz products, lies in A")
    cert = maximality_certificate(alg, search_depth=search_depth, seed=seed)
    rep.add("maximal_certificate", cert.is_maximal, f"certificate verdict: {cert.verdict}", cert.witness)

    # representation attempts: witnesses force A M = B M = 0
    emats = basis_matrices(algebra_basis(spec), 2)
    pairs = _membership_pair_space(emats, [w_neg, w_pos])
    forced_ok = True
    for v in pairs.vectors:
        Av, Bv = _split_pair(v, emats)
        forced_ok = forced_ok and (Av @ M).is_zero() and (Bv @ M).is_zero()
    rep.dims["witness_pair_space"] = pairs.dim
    rep.add("witnesses_force_AM_BM_zero", forced_ok, "every admissible pair has A = aM, B = bM")

    zero_fam = fab_basis(spec, Matrix.zeros(2), Matrix.zeros(2), n)
    rep.add("zero_pair_gives_full_space", zero_fam.basis == full.basis and full.dim != alg.dim,
            f"F_(0,0) has dimension {zero_fam.dim}, A has {alg.dim}")

    rng = sampling.rng_for(seed, "nilpotent_case", n)
    ab = [(1, 0), (0, 1), (1, 1)]
    while len(ab) < samples:
        a, b = sampling.scalar(rng, gaussian=True), sampling.scalar(rng, gaussian=True)
        if a or b:
            ab.append((a, b))
    ok, bad_witness = True, None
    for a, b in ab:
        a, b = gr(a), gr(b)
        fam = fab_basis(spec, M * a, M * b, n)
        for j in range(1, n):
            t = BlockToeplitz.from_mapping(n, 2, {j: eye * b, j - n: eye * a})
            if not fam.contains(t) or alg.contains(t):
                ok, bad_witness = False, t
    rep.add("nonzero_pair_witness", ok,
            f"T_j = bI, T_(j-n) = aI lies in F_(aM,bM) but not in A, for {len(ab)} pairs (a, b)",
            bad_witness)
    rep.notes.append("witness uses T_j = bI and T_(j-n) = aI, the indexing that satisfies A T_j = B T_(j-n)")
    return rep


def _poly_invertibility_agrees(p: Poly, M: Matrix) -> bool:
    pm = p(M)
    try:
        inverse(pm)
        invertible = True
    except NotInvertible:
        invertible = False
    coprime = poly_gcd(p, minimal_polynomial(M)) == Poly([1])
    return invertible == coprime == (pm.rank() == M.nrows)
