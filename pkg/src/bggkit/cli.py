"""Command-line entry point.

Exit status: 0 verdict true or success, 1 false or failed, 2 inconclusive,
3 input error.  Reports go to standard output as JSON with sorted keys.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional, Sequence

from .algebra import Algebra, AlgebraError
from .formats import (
    DocumentError, digest, export_algebra, ingest_algebra, ingest_module, ingest_polymatrix,
    load_document, render_report,
)
from .klv import KLVFormatError

EXIT_TRUE, EXIT_FALSE, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _vertex_lookup(A: Algebra, text: str):
    for v in A.vertices:
        if str(v) == text.strip():
            return v
    raise DocumentError(f"unknown vertex {text!r}; vertices are {[str(v) for v in A.vertices]}")


def _load_algebra(path: str, inputs: List[bytes]) -> Algebra:
    doc, raw = load_document(path)
    inputs.append(raw)
    return ingest_algebra(doc)


def _max_degree(args, A: Optional[Algebra]) -> int:
    if args.max_degree is not None:
        if args.max_degree < 0:
            raise DocumentError("--max-degree must be nonnegative")
        return args.max_degree
    return 2 * A.dim


def _parse_order(A: Algebra, text: Optional[str]):
    from .order import PartialOrder

    if text is None:
        return None
    pairs = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "<" not in part:
            raise DocumentError(f"order relations look like 'i<j', got {part!r}")
        i, j = part.split("<", 1)
        pairs.append((_vertex_lookup(A, i), _vertex_lookup(A, j)))
    try:
        return PartialOrder.generated_by(A.vertices, pairs)
    except ValueError as err:
        raise DocumentError(str(err)) from None


def _verdict_code(v) -> int:
    if v is True or v == "holds":
        return EXIT_TRUE
    if v is False or v == "fails":
        return EXIT_FALSE
    return EXIT_INCONCLUSIVE


def cmd_check_guichardet(args, inputs) -> tuple:
    from .guichardet import is_guichardet

    A = _load_algebra(args.algebra, inputs)
    N = _max_degree(args, A)
    v = is_guichardet(A, N)
    return {"verdict": v.is_guichardet, **v.as_dict()}, _verdict_code(v.is_guichardet), N


def cmd_check_bgg(args, inputs) -> tuple:
    from .axioms import bgg_verdict
    from .modules import verma_minus, verma_plus

    A = _load_algebra(args.algebra, inputs)
    N = _max_degree(args, A)
    order = _parse_order(A, args.order)
    family = None
    if args.family == "plus":
        from .guichardet import c_ordering

        o = order or c_ordering(A, N).order
        family = {i: verma_plus(A, o, i) for i in A.vertices}
    rep = bgg_verdict(A, family, order, N, args.condition12)
    out = rep.as_dict()
    if args.family == "plus":
        out["family"] = "verma_plus"
    out["is_bgg_algebra"] = rep.is_bgg
    return out, _verdict_code(rep.verdict), N


def _module_arg(A: Algebra, arg: str, inputs):
    from .modules import projective, simple

    if ":" in arg and arg.split(":", 1)[0] in ("simple", "projective"):
        kind, v = arg.split(":", 1)
        i = _vertex_lookup(A, v)
        return simple(A, i) if kind == "simple" else projective(A, i)
    doc, raw = load_document(arg)
    inputs.append(raw)
    return ingest_module(doc, A)


def cmd_ext(args, inputs) -> tuple:
    from .homological import ext_pattern, ext_series, min_proj_resolution, pdim_str

    A = _load_algebra(args.algebra, inputs)
    N = _max_degree(args, A)
    V = _module_arg(A, args.left, inputs)
    W = _module_arg(A, args.right, inputs)
    res = min_proj_resolution(V, N)
    s = ext_series(V, W, N, res)
    pat = ext_pattern(res, W)
    out = {
        "series": {"coeffs": list(s.coeffs), "N": N},
        "resolution": [[str(v) for v in deg] for deg in res.summands()],
        "resolution_terminated": res.terminated,
        "resolution_periodic": list(res.periodic) if res.periodic else None,
        "projective_dimension": pdim_str(res.length()),
        "exact_in_all_degrees": pat is not None,
    }
    if pat is not None:
        out["pattern"] = {"head": list(pat.head), "cycle": list(pat.cycle)}
    return out, EXIT_TRUE, N


def cmd_hyperbolic(args, inputs) -> tuple:
    from . import hyperbolic as hb
    from .axioms import matrix_dict

    n = args.n
    if n < 0:
        raise DocumentError("--n must be nonnegative")
    out = {
        "n": n,
        "indices": hb.indices(n),
        "pdim": {str(p): hb.pdim(n, p) for p in hb.indices(n)},
        "order": [[str(i), str(j)] for i, j in hb.model_order(n).strict_pairs()],
        "a": matrix_dict(hb.a_closed(n)),
        "a_inv": matrix_dict(hb.a_inv_closed(n)),
        "delta": matrix_dict(hb.delta(n)),
        "ext_LL": matrix_dict(hb.ext_LL_closed(n)),
        "resolution_shapes": {
            kind: {str(q): [list(d) for d in hb.resolution_shape(n, kind, q).degrees] for q in hb.indices(n)}
            for kind in ("verma", "simple")},
    }
    code = EXIT_TRUE
    if args.verify:
        rep = hb.verify_all(n)
        out["verification"] = rep.as_dict()
        code = EXIT_TRUE if rep.ok else EXIT_FALSE
    return out, code, None


def cmd_klv_test(args, inputs) -> tuple:
    from . import klv
    from .axioms import matrix_dict

    doc, raw = load_document(args.table)
    inputs.append(raw)
    data = klv.load_table(doc)
    N = args.max_degree if args.max_degree is not None else klv.default_degree(data)
    at = klv.build_atilde(data)
    E = klv.step_a(data, N)
    out: Dict[str, object] = {
        "name": data.name,
        "equal_rank": data.equal_rank,
        "atilde": matrix_dict(at.matrix),
        "dtilde": matrix_dict(klv.build_dtilde(data)),
        "E": matrix_dict(E),
        "warnings": at.warnings,
    }
    violations: List = []
    if args.expect:
        edoc, eraw = load_document(args.expect)
        inputs.append(eraw)
        violations = klv.step_b(E, klv.parse_expectations(edoc, data.indices))
        out["step_b"] = violations
    orders = None
    if args.orders:
        orders = [[_label(x, data.indices) for x in grp.split(",")] for grp in args.orders.split(";")]
    elif len(data.indices) > klv.MAX_AUTO_ORDERS:
        if data.order is None:
            raise DocumentError(f"more than {klv.MAX_AUTO_ORDERS} indices: pass --orders")
        orders = [data.order]
    outcome = klv.step_cd(E, N, orders)
    out["successful"] = outcome.successful
    out["orders_tried"] = len(outcome.results)
    out["factorizations"] = [
        {"order": list(r.order), "a": matrix_dict(r.factorization.a), "d": matrix_dict(r.factorization.d),
         "derived_order": [[i, j] for i, j in r.derived.strict_pairs()]}
        for r in outcome.successes()]
    out["failures"] = [r.as_dict() for r in outcome.results if r.failure is not None][:50]
    out["derived_orderings"] = [[[i, j] for i, j in o.strict_pairs()] for o in outcome.derived_orderings()]
    if data.order is not None:
        ok, _ = klv.roundtrip(data, data.order, N)
        out["roundtrip_reference_order"] = ok
    success = outcome.successful and not violations
    out["verdict"] = "test successful" if success else "test failed"
    return out, EXIT_TRUE if success else EXIT_FALSE, N


def _label(x: str, indices):
    for v in indices:
        if str(v) == x.strip():
            return v
    raise DocumentError(f"unknown index {x!r}")


def cmd_factor(args, inputs) -> tuple:
    from . import klv
    from .axioms import matrix_dict

    doc, raw = load_document(args.matrix)
    inputs.append(raw)
    E = ingest_polymatrix(doc)
    N = args.max_degree
    if N is None:
        degs = [e.degree for _, _, e in E.to_polys().entries() if not e.is_zero()]
        N = max(degs + [0])
    orders = [[_label(x, E.labels) for x in args.order.split(",")]] if args.order else None
    outcome = klv.step_cd(E, N, orders)
    out = {
        "successful": outcome.successful,
        "factorizations": [{"order": list(r.order), "a": matrix_dict(r.factorization.a),
                            "d": matrix_dict(r.factorization.d)} for r in outcome.successes()],
        "failures": [r.as_dict() for r in outcome.results if r.failure is not None][:50],
    }
    return out, EXIT_TRUE if outcome.successful else EXIT_FALSE, N


def cmd_export(args, inputs) -> tuple:
    A = _load_algebra(args.algebra, inputs)
    return {"algebra": export_algebra(A)}, EXIT_TRUE, None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bggkit", description="Homological checks for finite-dimensional algebras.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def deg(sp):
        sp.add_argument("--max-degree", type=int, default=None, help="truncation degree (default 2*dim A)")

    s = sub.add_parser("check-guichardet", help="Ext-fullness of every initial segment")
    s.add_argument("algebra")
    deg(s)
    s = sub.add_parser("check-bgg", help="highest-weight axioms 9..18")
    s.add_argument("algebra")
    s.add_argument("--order", help="relations like '1<2,2<3' (default: computed ordering)")
    s.add_argument("--family", choices=("minus", "plus"), default="minus")
    s.add_argument("--condition12", choices=("above", "below"), default="above",
                   help="side of i on which the degree-attaining index must lie")
    deg(s)
    s = sub.add_parser("ext", help="Poincare series of Ext between two modules")
    s.add_argument("algebra")
    s.add_argument("--left", required=True, help="simple:i, projective:i or a .mod file")
    s.add_argument("--right", required=True, help="simple:i, projective:i or a .mod file")
    deg(s)
    s = sub.add_parser("hyperbolic", help="closed-form model on {0..n}")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--verify", action="store_true")
    s = sub.add_parser("klv-test", help="tilde matrices and congruence factorization for a KLV table")
    s.add_argument("table")
    s.add_argument("--expect", help=".expect file of constraints")
    s.add_argument("--orders", help="candidate orders, e.g. '2,1,0;0,1,2'")
    s.add_argument("--max-degree", type=int, default=None)
    s = sub.add_parser("factor", help="congruence factorization of a symmetric polynomial matrix")
    s.add_argument("matrix")
    s.add_argument("--order", help="comma-separated linear order (default: all orders)")
    s.add_argument("--max-degree", type=int, default=None)
    s = sub.add_parser("export", help="structure constants of an algebra document")
    s.add_argument("algebra")
    return p


COMMANDS = {
    "check-guichardet": cmd_check_guichardet,
    "check-bgg": cmd_check_bgg,
    "ext": cmd_ext,
    "hyperbolic": cmd_hyperbolic,
    "klv-test": cmd_klv_test,
    "factor": cmd_factor,
    "export": cmd_export,
}


def run(argv: Sequence[str]) -> tuple:
    """``(report text, exit status)`` without touching the process streams."""
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as err:
        return render_report({"error": str(err)}), EXIT_INPUT
    inputs: List[bytes] = []
    try:
        body, code, N = COMMANDS[args.command](args, inputs)
    except (DocumentError, AlgebraError, KLVFormatError) as err:
        return render_report({"command": args.command, "error": str(err)}), EXIT_INPUT
    report = {"command": args.command, "inputs_digest": digest(inputs), "N": N, "exit_status": code}
    report.update(body)
    return render_report(report), code


def main(argv: Optional[Sequence[str]] = None) -> int:
    text, code = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    if code == EXIT_INPUT:
        sys.stderr.write(json.loads(text)["error"] + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
