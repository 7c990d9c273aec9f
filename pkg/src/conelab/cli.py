"""Command line interface.

Each subcommand parses its inputs, calls the library once and serializes
the result through jsonio, so output bytes match direct library use. Exit
codes: 0 for a positive decision or plain success, 1 for a negative
decision (the payload carries its certificate), 2 for input errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import jsonio
from .cones import (
    Wedge,
    classify,
    dual_wedge,
    extremal_rays,
    intersect_subspace,
)
from .errors import InputError
from .experiments import (
    LorentzFunctional,
    almost_all_experiment,
    counterexample_report,
    lorentz_approximation_report,
    lorentz_extendable,
)
from .extension import (
    extend_functional,
    extend_operator,
    identity_approximable,
    orthant_embedding,
)
from .linalg import RationalMatrix, Subspace
from .jsonio import dumps


def _load_payload(value: str, where: str):
    """Accept inline JSON (starts with '{' or '[') or a file path."""
    text = value
    if not value.lstrip().startswith(("{", "[")):
        try:
            with open(value, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise InputError(f"{where}: cannot read {value!r} ({exc})") from None
    return jsonio.load_json(text, where)


def _wedge_arg(value: str, where: str) -> Wedge:
    return jsonio.parse_wedge(_load_payload(value, where))


def _subspace_arg(value: str, where: str) -> Subspace:
    return jsonio.parse_subspace(_load_payload(value, where))


def _emit(args: argparse.Namespace, payload: dict, text: Optional[str] = None) -> None:
    rendered = text + "\n" if args.format == "text" and text is not None else dumps(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(rendered)
    else:
        sys.stdout.write(rendered)


def _wedge_text(w: Wedge) -> str:
    lines = [f"dim {w.ambient_dim}, {len(w.generators)} generators"]
    lines += ["  (" + ", ".join(str(e) for e in g) + ")" for g in w.generators]
    return "\n".join(lines)


def _cmd_dual(args: argparse.Namespace) -> int:
    wedge = _wedge_arg(args.input, "--in")
    dual = dual_wedge(wedge)
    _emit(args, jsonio.wedge_to_json(dual), _wedge_text(dual))
    return 0


def _cmd_rays(args: argparse.Namespace) -> int:
    wedge = _wedge_arg(args.input, "--in")
    rays = extremal_rays(wedge)
    payload = {"extremal_rays": [jsonio.vector_to_json(r) for r in rays]}
    text = "\n".join("(" + ", ".join(str(e) for e in r) + ")" for r in rays)
    _emit(args, payload, text)
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    wedge = _wedge_arg(args.input, "--in")
    shape = classify(wedge)
    text = (
        f"generating: {shape.is_generating}\nlineality_dim: {shape.lineality_dim}\n"
        f"cone: {shape.is_cone}\nsimplex: {shape.is_simplex}"
    )
    _emit(args, jsonio.wedge_class_to_json(shape), text)
    return 0


def _cmd_intersect(args: argparse.Namespace) -> int:
    wedge = _wedge_arg(args.input, "--in")
    subspace = _subspace_arg(args.subspace, "--subspace")
    result = intersect_subspace(wedge, subspace)
    _emit(args, jsonio.wedge_to_json(result), _wedge_text(result))
    return 0


def _cmd_extend_functional(args: argparse.Namespace) -> int:
    f_plus = _wedge_arg(args.cone, "--cone")
    subspace = _subspace_arg(args.subspace, "--subspace")
    f = jsonio.parse_vector(
        _load_payload(args.functional, "--functional"), "functional", subspace.dim
    )
    result = extend_functional(f, subspace, f_plus)
    payload = jsonio.functional_extension_to_json(result, f, subspace, f_plus)
    if result.extended:
        assert result.functional is not None
        text = "extended: (" + ", ".join(str(e) for e in result.functional) + ")"
    else:
        assert result.witness_ambient is not None
        text = "not extendable, witness: (" + ", ".join(
            str(e) for e in result.witness_ambient
        ) + ")"
    _emit(args, payload, text)
    return 0 if result.extended else 1


def _cmd_situation(args: argparse.Namespace) -> int:
    e_plus = _wedge_arg(args.cone, "--cone")
    embedding = orthant_embedding(e_plus)
    text = (
        f"embedding into R^{embedding.m} through {embedding.m} dual rays\n"
        + "\n".join("(" + ", ".join(str(e) for e in phi) + ")" for phi in embedding.dual_rays)
    )
    _emit(args, jsonio.embedding_to_json(embedding), text)
    return 0


def _parse_operator(args: argparse.Namespace, dim: int) -> RationalMatrix:
    if args.op == "identity":
        return RationalMatrix.identity(dim)
    matrix = jsonio.parse_matrix(_load_payload(args.op, "--op"), "operator")
    if (matrix.rows, matrix.cols) != (dim, dim):
        raise InputError(f"operator: expected a {dim}x{dim} matrix")
    return matrix


def _cmd_extend_operator(args: argparse.Namespace) -> int:
    e_plus = _wedge_arg(args.cone, "--cone")
    embedding = orthant_embedding(e_plus)
    operator = _parse_operator(args, e_plus.ambient_dim)
    result = extend_operator(operator, embedding)
    payload = jsonio.operator_extension_to_json(result, operator, embedding)
    if result.extended:
        text = "extended: operator is a nonnegative combination of rank-one tensors"
    else:
        assert result.witness is not None
        rows = ["not extendable, witness form:"]
        rows += ["  [" + " ".join(str(e) for e in r) + "]" for r in result.witness.form.entries]
        text = "\n".join(rows)
    _emit(args, payload, text)
    return 0 if result.extended else 1


def _cmd_identity_test(args: argparse.Namespace) -> int:
    e_plus = _wedge_arg(args.cone, "--cone")
    verdict = identity_approximable(e_plus)
    text = (
        f"identity approximable: {verdict.approximable}\n"
        f"simplex cone: {verdict.is_simplex}"
    )
    _emit(args, jsonio.identity_approximability_to_json(verdict), text)
    return 0 if verdict.approximable else 1


def _cmd_almost_all(args: argparse.Namespace) -> int:
    f_plus = _wedge_arg(args.cone, "--cone")
    subspace = _subspace_arg(args.subspace, "--subspace")
    report = almost_all_experiment(f_plus, subspace, args.n, args.seed)
    fraction = "undefined" if report.fraction is None else str(report.fraction)
    text = (
        f"samples: {report.samples}\nextendable: {report.extendable}\n"
        f"fraction: {fraction}\nseed: {report.seed}"
    )
    _emit(args, jsonio.almost_all_to_json(report), text)
    return 0


def _cmd_lorentz_demo(args: argparse.Namespace) -> int:
    f = LorentzFunctional(args.u, args.v)
    result = lorentz_extendable(f)
    if result.extendable:
        payload = jsonio.lorentz_extension_to_json(f, result)
        assert result.phi is not None
        text = "extendable, phi = (" + ", ".join(repr(x) for x in result.phi) + ")"
        _emit(args, payload, text)
        return 0
    report = lorentz_approximation_report(f, args.eps)
    payload = {
        "functional": jsonio.lorentz_functional_to_json(f),
        "extendable": False,
        "approximation": jsonio.lorentz_approximation_to_json(report),
    }
    text = (
        f"not extendable; {report.steps} approximating extendable functionals, "
        f"final gap {report.max_gap!r}"
    )
    _emit(args, payload, text)
    return 1


def _cmd_counterexample(args: argparse.Namespace) -> int:
    e_plus = _wedge_arg(args.cone, "--cone")
    report = counterexample_report(e_plus)
    _emit(args, jsonio.counterexample_to_json(report), report.text_block())
    return 0 if report.identity_extendable else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conelab",
        description="Exact cone duality and positive extension of functionals and operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="json")
        p.add_argument("--out", default=None, help="write output to a file instead of stdout")

    p = sub.add_parser("dual", help="dual wedge of a wedge")
    p.add_argument("--in", dest="input", required=True, help="wedge JSON (path or inline)")
    add_common(p)
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("rays", help="extremal rays of a pointed wedge")
    p.add_argument("--in", dest="input", required=True, help="wedge JSON (path or inline)")
    add_common(p)
    p.set_defaults(func=_cmd_rays)

    p = sub.add_parser("classify", help="generating / cone / simplex classification")
    p.add_argument("--in", dest="input", required=True, help="wedge JSON (path or inline)")
    add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("intersect", help="wedge intersected with a subspace, in its coordinates")
    p.add_argument("--in", dest="input", required=True, help="wedge JSON (path or inline)")
    p.add_argument("--subspace", required=True, help="subspace JSON (path or inline)")
    add_common(p)
    p.set_defaults(func=_cmd_intersect)

    p = sub.add_parser("extend-functional", help="extend a functional from a subspace")
    p.add_argument("--cone", required=True, help="ambient wedge JSON (path or inline)")
    p.add_argument("--subspace", required=True, help="subspace JSON (path or inline)")
    p.add_argument("--functional", required=True, help="coordinates JSON (path or inline)")
    add_common(p)
    p.set_defaults(func=_cmd_extend_functional)

    p = sub.add_parser("situation", help="orthant embedding of a generating pointed cone")
    p.add_argument("--cone", required=True, help="cone JSON (path or inline)")
    add_common(p)
    p.set_defaults(func=_cmd_situation)

    p = sub.add_parser("extend-operator", help="extend an operator over the orthant embedding")
    p.add_argument("--cone", required=True, help="cone JSON (path or inline)")
    p.add_argument("--op", required=True, help="'identity' or an operator matrix JSON")
    add_common(p)
    p.set_defaults(func=_cmd_extend_operator)

    p = sub.add_parser("identity-test", help="is the identity a positive rank-one sum")
    p.add_argument("--cone", required=True, help="cone JSON (path or inline)")
    add_common(p)
    p.set_defaults(func=_cmd_identity_test)

    p = sub.add_parser("almost-all", help="sampled extendability experiment")
    p.add_argument("--cone", required=True, help="ambient wedge JSON (path or inline)")
    p.add_argument("--subspace", required=True, help="subspace JSON (path or inline)")
    p.add_argument("--n", type=int, required=True, help="number of samples")
    p.add_argument("--seed", type=int, required=True, help="RNG seed (required for reproducibility)")
    add_common(p)
    p.set_defaults(func=_cmd_almost_all)

    p = sub.add_parser("lorentz-demo", help="extension and density on the Lorentz instance")
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--eps", type=float, default=1e-3, help="approximation gap when not extendable")
    add_common(p)
    p.set_defaults(func=_cmd_lorentz_demo)

    p = sub.add_parser("counterexample", help="identity-extendability report for a cone")
    p.add_argument("--cone", required=True, help="cone JSON (path or inline)")
    add_common(p)
    p.set_defaults(func=_cmd_counterexample)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
