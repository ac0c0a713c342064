"""JSON codecs for matrices, block Toeplitz matrices, specs and reports.

Scalars are strings in the ``parse_gr`` grammar (plain JSON integers are
accepted on input).  A matrix is a row-major nested array; a block
Toeplitz matrix is ``{"n", "d", "blocks"}`` with blocks listed for
``j = -(n-1) .. n-1``.
"""
from __future__ import annotations

from .exactfield import ParseError, format_gr, gr
from .linalg import Matrix, Subspace
from .subalgebras import Circulant, Diagonal, Explicit, Polynomial, Schur
from .toeplitz import INF, BlockToeplitz, format_alpha, parse_alpha


class SchemaError(ValueError):
    """Input JSON does not match the expected schema; ``field`` names the culprit."""

    def __init__(self, field: str, reason: str):
        self.field = field
        super().__init__(f"{field}: {reason}")


def scalar_from_json(obj, where: str):
    if isinstance(obj, bool) or not isinstance(obj, (str, int)):
        raise SchemaError(where, f"expected a scalar string, got {obj!r}")
    try:
        return gr(obj)
    except ParseError as exc:
        raise SchemaError(where, str(exc)) from None


def matrix_to_json(m: Matrix) -> list:
    return m.tolist()


def matrix_from_json(obj, where: str = "matrix", shape: tuple[int, int] | None = None) -> Matrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise SchemaError(where, "expected a non-empty array of rows")
    width = len(obj[0])
    if any(len(r) != width for r in obj):
        raise SchemaError(where, "rows have different lengths")
    m = Matrix([[scalar_from_json(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(obj)])
    if shape is not None and m.shape != shape:
        raise SchemaError(where, f"expected shape {shape}, got {m.shape}")
    return m


def _int_field(obj: dict, key: str, where: str, minimum: int = 1) -> int:
    v = obj.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{where}.{key}", "expected an integer")
    if v < minimum:
        raise SchemaError(f"{where}.{key}", f"must be at least {minimum}")
    return v


def _require_object(obj, where: str) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError(where, "expected an object")
    return obj


def bt_to_json(t: BlockToeplitz | None):
    if t is None:
        return None
    return {"n": t.n, "d": t.d, "blocks": [b.tolist() for b in t.blocks]}


def bt_from_json(obj, where: str = "toeplitz") -> BlockToeplitz:
    obj = _require_object(obj, where)
    n = _int_field(obj, "n", where)
    d = _int_field(obj, "d", where)
    blocks = obj.get("blocks")
    if not isinstance(blocks, list) or len(blocks) != 2 * n - 1:
        raise SchemaError(f"{where}.blocks", f"expected {2 * n - 1} blocks")
    return BlockToeplitz(n, d, [matrix_from_json(b, f"{where}.blocks[{k}]", (d, d)) for k, b in enumerate(blocks)])


def spec_to_json(spec) -> dict:
    if isinstance(spec, Diagonal):
        return {"kind": "diagonal", "d": spec.d}
    if isinstance(spec, Circulant):
        return {"kind": "circulant", "n": spec.n, "alpha": format_alpha(spec.alpha)}
    if isinstance(spec, Schur):
        return {"kind": "schur", "sigma": spec.sigma, "tau": spec.tau}
    if isinstance(spec, Polynomial):
        return {"kind": "poly", "M": spec.M.tolist()}
    if isinstance(spec, Explicit):
        return {"kind": "explicit", "d": spec.d,
                "basis": [Matrix.from_vec(v, spec.d, spec.d).tolist() for v in spec.basis.vectors]}
    raise TypeError(f"not an algebra spec: {spec!r}")


def spec_from_json(obj, where: str = "entry"):
    obj = _require_object(obj, where)
    kind = obj.get("kind")
    if kind == "diagonal":
        return Diagonal(_int_field(obj, "d", where))
    if kind == "circulant":
        n = _int_field(obj, "n", where)
        alpha = obj.get("alpha", "1")
        try:
            return Circulant(n, parse_alpha(alpha) if isinstance(alpha, str) else scalar_from_json(alpha, where))
        except ParseError as exc:
            raise SchemaError(f"{where}.alpha", str(exc)) from None
    if kind == "schur":
        return Schur(_int_field(obj, "sigma", where), _int_field(obj, "tau", where))
    if kind == "poly":
        M = matrix_from_json(obj.get("M"), f"{where}.M")
        if not M.is_square:
            raise SchemaError(f"{where}.M", "must be square")
        return Polynomial(M)
    if kind == "explicit":
        d = _int_field(obj, "d", where)
        basis = obj.get("basis")
        if not isinstance(basis, list) or not basis:
            raise SchemaError(f"{where}.basis", "expected a non-empty array of matrices")
        mats = [matrix_from_json(b, f"{where}.basis[{k}]", (d, d)) for k, b in enumerate(basis)]
        return Explicit(d, Subspace.span_matrices(mats, d, d))
    raise SchemaError(f"{where}.kind", f"unknown algebra kind {kind!r}")


def subspace_to_json(space: Subspace) -> dict:
    return {"ambient_dim": space.ambient_dim, "dim": space.dim,
            "vectors": [[format_gr(x) for x in v] for v in space.vectors]}


def family_to_json(f) -> dict:
    out = {"n": f.n, "d": f.d, "dim": f.dim, "basis": [bt_to_json(m) for m in f.members()]}
    if getattr(f, "entry", None) is not None:
        out.update(entry=spec_to_json(f.entry), A=f.A.tolist(), B=f.B.tolist())
    return out


def maximality_to_json(r) -> dict:
    return {"verdict": r.verdict, "family_dim": r.family_dim, "commutant_dim": r.commutant_dim,
            "witness": bt_to_json(r.witness), "extension_dim": r.extension_dim,
            "search_depth": r.search_depth}


def case_report_to_json(rep) -> dict:
    return {
        "claim": rep.claim,
        "verdict": rep.verdict,
        "witness": bt_to_json(rep.witness),
        "dims": dict(rep.dims),
        "subclaims": [
            {"name": s.name, "status": s.status, "detail": s.detail, "witness": bt_to_json(s.witness),
             **({"report": case_report_to_json(s.report)} if s.report is not None else {})}
            for s in rep.subclaims
        ],
        "notes": list(rep.notes),
    }


__all__ = [
    "SchemaError",
    "INF",
    "scalar_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "bt_to_json",
    "bt_from_json",
    "spec_to_json",
    "spec_from_json",
    "subspace_to_json",
    "family_to_json",
    "maximality_to_json",
    "case_report_to_json",
]
