"""Command-line driver: JSON in, JSON report out.

Exit status is 0 when every requested check holds, 1 when one is refuted
(the report carries a witness) and 2 on usage or input errors.  The report
goes to stdout (or ``--output``); a one-line summary goes to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import battery
from .casestudies import diagonal_case, nilpotent_case, schur_case
from .exactfield import ParseError
from .fab import (
    ClosureError,
    NotInCommutant,
    closure_failure,
    derive_AB,
    fab_basis,
    maximality_certificate,
)
from .linalg import Matrix, NotInvertible, inverse
from .serialize import (
    SchemaError,
    bt_from_json,
    bt_to_json,
    case_report_to_json,
    family_to_json,
    matrix_from_json,
    maximality_to_json,
    spec_from_json,
    spec_to_json,
    subspace_to_json,
)
from .subalgebras import (
    NotCommutative,
    algebra_basis,
    commutant_in_Md,
    describe,
    inverse_closed_check,
    is_maximal_commutative,
)
from .toeplitz import (
    ALL_ALPHAS,
    BlockToeplitz,
    bt_multiply,
    circulant_basis,
    circulant_generators,
    find_alpha,
    format_alpha,
    in_circulant,
    parse_alpha,
    product_condition,
)


class UsageError(Exception):
    pass


# -- input helpers ------------------------------------------------------------


def _load_input(args) -> dict:
    if not args.input:
        return {}
    try:
        if args.input == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.input) as fh:
                data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"--input: {exc.strerror}: {args.input}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"--input: malformed JSON ({exc.msg} at line {exc.lineno} column {exc.colno})") from None
    if not isinstance(data, dict):
        raise SchemaError("input", "expected a JSON object")
    return data


def _json_arg(text: str, flag: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: malformed JSON ({exc.msg})") from None


def _entry(args, data: dict):
    if "entry" in data:
        return spec_from_json(data["entry"])
    if not args.entry:
        raise UsageError("an entry algebra is required (--entry or 'entry' in --input)")
    kind = args.entry
    obj: dict = {"kind": kind}
    if kind == "diagonal":
        obj["d"] = args.d
    elif kind == "circulant":
        obj.update(n=args.d, alpha=args.alpha or "1")
    elif kind == "schur":
        obj.update(sigma=args.sigma, tau=args.tau)
    elif kind == "poly":
        if args.M is None:
            raise UsageError("--M is required for --entry poly")
        obj["M"] = _json_arg(args.M, "--M")
    return spec_from_json(obj, "--entry")


def _ab_matrix(value, d: int, where: str) -> Matrix:
    if isinstance(value, str) and value.strip() in ("I", "0"):
        return Matrix.identity(d) if value.strip() == "I" else Matrix.zeros(d)
    if isinstance(value, str):
        value = _json_arg(value, where)
    return matrix_from_json(value, where, (d, d))


def _block_order(args, data: dict) -> int:
    n = data.get("n", args.n)
    if n is None:
        raise UsageError("block order is required (--n or 'n' in --input)")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError("n", "must be a positive integer")
    return n


def _family(args, data: dict):
    entry = _entry(args, data)
    n = _block_order(args, data)
    a = data.get("A", args.A)
    b = data.get("B", args.B)
    if a is None or b is None:
        raise UsageError("both A and B are required (--A/--B or 'A'/'B' in --input)")
    A = _ab_matrix(a, entry.d, "A")
    B = _ab_matrix(b, entry.d, "B")
    return fab_basis(entry, A, B, n)


def _toeplitz(args, data: dict, key: str = "t") -> BlockToeplitz:
    if key in data:
        return bt_from_json(data[key], key)
    flag = getattr(args, key, None)
    if flag is None:
        raise UsageError(f"'{key}' is required (--{key} or '{key}' in --input)")
    return bt_from_json(_json_arg(flag, f"--{key}"), key)


# -- commands -----------------------------------------------------------------
# each returns (ok, report, summary)


def cmd_check_product(args, data):
    t = _toeplitz(args, data, "t")
    u = _toeplitz(args, data, "u")
    if (t.n, t.d) != (u.n, u.d):
        raise SchemaError("u", "t and u must have the same n and d")
    cond = product_condition(t, u)
    dense, prod = bt_multiply(t, u)
    report = {"product_condition": cond, "toeplitz": prod is not None, "product": bt_to_json(prod),
              "dense_product": dense.tolist()}
    if prod is None:
        return False, report, "product is not block Toeplitz"
    return True, report, "product is block Toeplitz"


def cmd_algebra(args, data):
    entry = _entry(args, data)
    basis = algebra_basis(entry)
    d = entry.d
    report = {"entry": spec_to_json(entry), "basis": subspace_to_json(basis)}
    if args.action == "basis":
        return True, report, f"{describe(entry)}: dimension {basis.dim}"
    if args.action == "commutant":
        comm = commutant_in_Md(basis, d)
        report["commutant"] = subspace_to_json(comm)
        return True, report, f"{describe(entry)}: commutant dimension {comm.dim}"
    if args.action == "maximal":
        try:
            ok = is_maximal_commutative(basis, d)
        except NotCommutative as exc:
            report.update(maximal=False, reason="not commutative",
                          witness=[m.tolist() for m in exc.pair])
            return False, report, f"{describe(entry)}: not commutative"
        comm = commutant_in_Md(basis, d)
        report.update(maximal=ok, commutant_dim=comm.dim)
        if not ok:
            extra = next(v for v in comm.vectors if not basis.contains(v))
            report["witness"] = Matrix.from_vec(extra, d, d).tolist()
        return ok, report, f"{describe(entry)}: {'maximal' if ok else 'not maximal'} commutative"
    # inverse-closed
    res = inverse_closed_check(basis, d, samples=args.samples, seed=args.seed)
    report.update(inverse_closed=res.ok, tested=res.tested,
                  witness=None if res.witness is None else res.witness.tolist())
    return res.ok, report, f"{describe(entry)}: inverse closed on {res.tested} samples" if res.ok \
        else f"{describe(entry)}: inverse leaves the algebra"


def cmd_fab(args, data):
    if args.action == "derive-ab":
        entry = _entry(args, data)
        t = _toeplitz(args, data, "t")
        if t.d != entry.d:
            raise SchemaError("t", f"block size {t.d} does not match entry algebra size {entry.d}")
        ab = derive_AB(t, entry)
        report = {"entry": spec_to_json(entry), "t": bt_to_json(t)}
        if ab is None:
            report.update(A=None, B=None, reason="no invertible off-diagonal block")
            return False, report, "no invertible off-diagonal block"
        A, B = ab
        fam = fab_basis(entry, A, B, t.n)
        report.update(A=A.tolist(), B=B.tolist(), t_in_family=fam.contains(t))
        return fam.contains(t), report, f"A={A.tolist()} B={B.tolist()}"

    fam = _family(args, data)
    report = {"family": family_to_json(fam)}
    if args.action == "build":
        return True, report, f"F_(A,B) has dimension {fam.dim}"
    bad = closure_failure(fam)
    if args.action == "closure":
        report.update(closed=bad is None, reason=bad)
        return bad is None, report, "closed commutative algebra" if bad is None else bad
    # maximality
    if bad is not None:
        report.update(verdict="not_closed", reason=bad)
        return False, report, bad
    rep = maximality_certificate(fam, search_depth=args.search_depth, seed=args.seed)
    report["maximality"] = maximality_to_json(rep)
    return rep.is_maximal, report, f"verdict {rep.verdict} (family {rep.family_dim}, relative commutant {rep.commutant_dim})"


def cmd_scalar(args, data):
    if args.action == "find-alpha":
        t = _toeplitz(args, data, "t")
        if t.d != 1:
            raise SchemaError("t.d", "find-alpha expects a scalar Toeplitz matrix (d = 1)")
        alpha = find_alpha(t)
        report = {"t": bt_to_json(t)}
        if alpha is ALL_ALPHAS:
            report["alpha"] = "all"
        elif alpha is None:
            report["alpha"] = None
        else:
            report["alpha"] = format_alpha(alpha)
        try:
            tinv = BlockToeplitz.from_dense(inverse(t.to_dense()), t.n, 1)
            report["inverse"] = bt_to_json(tinv)
            if alpha is not None and alpha is not ALL_ALPHAS:
                report["inverse_in_same_circulant"] = tinv is not None and in_circulant(tinv, alpha)
        except NotInvertible:
            report["inverse"] = None
        return alpha is not None, report, f"alpha = {report['alpha']}"
    n = _block_order(args, data)
    raw = data.get("alpha", args.alpha or "1")
    try:
        alpha = parse_alpha(raw) if isinstance(raw, str) else parse_alpha(str(raw))
    except ParseError as exc:
        raise SchemaError("alpha", str(exc)) from None
    report = {"n": n, "alpha": format_alpha(alpha),
              "generators": [bt_to_json(g) for g in circulant_generators(n, alpha)],
              "basis": subspace_to_json(circulant_basis(n, alpha))}
    return True, report, f"circulant algebra n={n} alpha={format_alpha(alpha)}"


def cmd_casestudy(args, data):
    n = _block_order(args, data)
    if args.action == "diagonal":
        alphas = data.get("alphas")
        if alphas is None:
            if args.alphas is None:
                raise UsageError("--alphas is required (comma separated, e.g. 1,inf,2i)")
            alphas = [a.strip() for a in args.alphas.split(",")]
        if not isinstance(alphas, list) or not alphas:
            raise SchemaError("alphas", "expected a non-empty list")
        try:
            parsed = [parse_alpha(str(a)) for a in alphas]
        except ParseError as exc:
            raise SchemaError("alphas", str(exc)) from None
        rep = diagonal_case(n, len(parsed), parsed, seed=args.seed)
    elif args.action == "schur":
        sigma = data.get("sigma", args.sigma)
        tau = data.get("tau", args.tau)
        if not all(isinstance(v, int) and v >= 1 for v in (sigma, tau)):
            raise UsageError("--sigma and --tau must be positive integers")
        rep = schur_case(n, sigma, tau, search_depth=args.search_depth, seed=args.seed)
    else:
        rep = nilpotent_case(n, search_depth=args.search_depth, seed=args.seed)
    report = case_report_to_json(rep)
    return rep.verified, report, f"{rep.claim}: {rep.verdict}"


def cmd_suite(args, data):
    results = battery.run_suite(args.seed, search_depth=args.search_depth)
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.id}. {r.name} ({r.elapsed:.2f}s)", file=sys.stderr)
    report = {"criteria": [r.to_json() for r in results], "passed": all(r.passed for r in results)}
    n_ok = sum(r.passed for r in results)
    return report["passed"], report, f"{n_ok}/{len(results)} criteria passed"


# -- parser -------------------------------------------------------------------


def _common(p):
    p.add_argument("--input", help="JSON input file ('-' for stdin)")
    p.add_argument("--output", help="write the JSON report here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--search-depth", type=int, default=3)


def _entry_flags(p):
    p.add_argument("--entry", choices=["diagonal", "circulant", "schur", "poly"])
    p.add_argument("--d", type=int, help="size of the entry algebra")
    p.add_argument("--alpha", help="circulant parameter (scalar or inf)")
    p.add_argument("--sigma", type=int)
    p.add_argument("--tau", type=int)
    p.add_argument("--M", help="JSON matrix generating a polynomial algebra")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blocktoeplitz",
                                     description="Exact verification of commutative block Toeplitz algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-product", help="is the product of two block Toeplitz matrices block Toeplitz?")
    _common(p)
    p.add_argument("--t", help="JSON block Toeplitz matrix")
    p.add_argument("--u", help="JSON block Toeplitz matrix")
    p.set_defaults(func=cmd_check_product)

    p = sub.add_parser("algebra", help="entry algebra catalogue")
    p.add_argument("action", choices=["basis", "maximal", "commutant", "inverse-closed"])
    _common(p)
    _entry_flags(p)
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("fab", help="families F_(A,B) over an entry algebra")
    p.add_argument("action", choices=["build", "closure", "maximality", "derive-ab"])
    _common(p)
    _entry_flags(p)
    p.add_argument("--n", type=int, help="block order")
    p.add_argument("--A", help="I, 0 or a JSON matrix")
    p.add_argument("--B", help="I, 0 or a JSON matrix")
    p.add_argument("--t", help="JSON block Toeplitz matrix (derive-ab)")
    p.set_defaults(func=cmd_fab)

    p = sub.add_parser("scalar", help="scalar Toeplitz circulant algebras")
    p.add_argument("action", choices=["find-alpha", "circulant"])
    _common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--alpha")
    p.add_argument("--t", help="JSON scalar Toeplitz matrix (n, d=1, blocks)")
    p.set_defaults(func=cmd_scalar)

    p = sub.add_parser("casestudy", help="diagonal, Schur and nilpotent entry algebras")
    p.add_argument("action", choices=["diagonal", "schur", "nilpotent"])
    _common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--alphas", help="comma separated circulant parameters, one per coordinate")
    p.add_argument("--sigma", type=int)
    p.add_argument("--tau", type=int)
    p.set_defaults(func=cmd_casestudy)

    p = sub.add_parser("suite", help="run the full seeded verification battery")
    _common(p)
    p.set_defaults(func=cmd_suite)
    return parser


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.search_depth < 0:
        print("error: --search-depth must be non-negative", file=sys.stderr)
        return 2
    try:
        data = _load_input(args)
        ok, report, summary = args.func(args, data)
    except (UsageError, SchemaError, ParseError, NotInCommutant, ClosureError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    full = {"command": " ".join(filter(None, [args.command, getattr(args, "action", None)])),
            "seed": args.seed, "search_depth": args.search_depth, "ok": ok, **report}
    text = render(full)
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: --output: {exc.strerror}: {args.output}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
