"""Command-line interface and the JSON document formats.

Exit codes: 0 when every requested check passes, 1 when a mathematical
check fails, 2 for usage or parse errors.  Machine-readable output goes to
stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from math import comb
from pathlib import Path

from .curvature import (
    bianchi_witness,
    curvature_space,
    curvature_space_basis,
    pair_symmetry_witness,
    property1_witness,
)
from .exact_linalg import is_subspace, subspace_equal
from .isomorphism import (
    Check,
    verify_basis_independence,
    verify_bianchi_equals_ekernel,
    verify_isomorphism,
    verify_pair_symmetry_mechanism,
    verify_property1_is_weight_zero,
)
from .multilinear import ExteriorElement, TetraForm
from .sl2_action import (
    SL2Element,
    sb2_invariants,
    sl2_invariant_elements,
    sl2_invariants,
    verify_weight_zero_is_bidegree_two,
)

DEFAULT_MAX_N = 6
SUITES = ("lemma", "iso", "bianchi-ekernel", "pair-symmetry", "basis-independence")

BASIS_CHANGES = {
    "identity": SL2Element.identity(),
    "upper": SL2Element.upper(1),
    "lower": SL2Element.lower(1),
    "rotation": SL2Element.rotation(),
    "diag(2,1/2)": SL2Element.diagonal(2),
}

_RATIONAL = re.compile(r"-?\d+(/\d+)?")


class DocumentError(ValueError):
    pass


class UsageError(ValueError):
    pass


# -- documents ---------------------------------------------------------------


def format_rational(value: Fraction) -> str:
    return str(value)


def parse_rational(text, where: str) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL.fullmatch(text):
        raise DocumentError(f"{where}: value {text!r} is not an exact rational string like \"3\" or \"-1/2\"")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise DocumentError(f"{where}: zero denominator in {text!r}") from None


def _parse_n(doc, where: str) -> int:
    if not isinstance(doc, dict) or set(doc) != {"n", "entries"}:
        raise DocumentError(f"{where}: expected an object with keys 'n' and 'entries'")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError(f"{where}: 'n' must be a positive integer, got {n!r}")
    if not isinstance(doc["entries"], list):
        raise DocumentError(f"{where}: 'entries' must be a list")
    return n


def _is_index(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def form_to_document(f: TetraForm) -> dict:
    return {"n": f.n, "entries": [[*q, format_rational(v)] for q, v in f.items()]}


def form_from_document(doc, where: str = "document") -> TetraForm:
    n = _parse_n(doc, where)
    entries: dict[tuple[int, int, int, int], Fraction] = {}
    for pos, entry in enumerate(doc["entries"]):
        here = f"{where}, entry {pos}"
        if not isinstance(entry, list) or len(entry) != 5 or not all(_is_index(x) for x in entry[:4]):
            raise DocumentError(f"{here}: expected [i, j, k, l, \"value\"], got {entry!r}")
        quad = tuple(entry[:4])
        if any(not 0 <= x < n for x in quad):
            raise DocumentError(f"{here}: index out of range in {list(quad)} for n={n}")
        if quad in entries:
            raise DocumentError(f"{here}: duplicate quadruple {list(quad)}")
        entries[quad] = parse_rational(entry[4], here)
    return TetraForm.from_entries(n, entries)


def exterior_to_document(x: ExteriorElement) -> dict:
    return {"n": x.n, "entries": [[list(w), format_rational(v)] for w, v in x.items()]}


def exterior_from_document(doc, where: str = "document") -> ExteriorElement:
    n = _parse_n(doc, where)
    terms: dict[tuple[int, ...], Fraction] = {}
    for pos, entry in enumerate(doc["entries"]):
        here = f"{where}, entry {pos}"
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not isinstance(entry[0], list)
            or len(entry[0]) != 4
            or not all(_is_index(x) for x in entry[0])
        ):
            raise DocumentError(f"{here}: expected [[a, b, c, d], \"value\"], got {entry!r}")
        legs = tuple(entry[0])
        if any(not 0 <= p < 2 * n for p in legs):
            raise DocumentError(f"{here}: leg out of range in {list(legs)} for n={n}")
        if any(a >= b for a, b in zip(legs, legs[1:])):
            raise DocumentError(f"{here}: legs {list(legs)} are not strictly increasing")
        if legs in terms:
            raise DocumentError(f"{here}: duplicate legs {list(legs)}")
        terms[legs] = parse_rational(entry[1], here)
    return ExteriorElement.from_terms(n, terms)


def dumps_document(doc: dict) -> str:
    return json.dumps(doc)


def dumps_documents(docs: list[dict]) -> str:
    if not docs:
        return "[]\n"
    return "[\n" + ",\n".join("  " + dumps_document(d) for d in docs) + "\n]\n"


def load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: invalid JSON ({exc})") from None


# -- commands ----------------------------------------------------------------


def _check_n(n: int, max_n: int) -> None:
    if not 1 <= n <= max_n:
        raise UsageError(f"n must lie in 1..{max_n}, got {n} (raise the ceiling with --max-n)")


def dimension_line(n: int) -> str:
    return (
        f"R(V)={curvature_space(n).dim} sl2={sl2_invariants(n).dim} "
        f"sb2={sb2_invariants(n).dim} ambient={comb(2 * n, 4)}"
    )


def cmd_dim(args, out, err) -> int:
    _check_n(args.n, args.max_n)
    print(dimension_line(args.n), file=out)
    return 0


def check_form(f: TetraForm) -> dict:
    result = {"n": f.n}
    for name, finder in (
        ("property1", property1_witness),
        ("property2", bianchi_witness),
        ("pair_symmetry", pair_symmetry_witness),
    ):
        witness = finder(f)
        result[name] = {"passed": witness is None}
        if witness is not None:
            result[name]["witness"] = list(witness)
    result["passed"] = result["property1"]["passed"] and result["property2"]["passed"]
    return result


def cmd_check(args, out, err) -> int:
    data = load_json(args.file)
    if isinstance(data, list):
        forms = [form_from_document(doc, f"{args.file}[{pos}]") for pos, doc in enumerate(data)]
    else:
        forms = [form_from_document(data, args.file)]
    results = [check_form(f) for f in forms]
    passed = all(r["passed"] for r in results)
    print(json.dumps({"passed": passed, "documents": results}, indent=2), file=out)
    if not args.quiet:
        for pos, r in enumerate(results):
            for name in ("property1", "property2", "pair_symmetry"):
                status = "pass" if r[name]["passed"] else f"FAIL at {tuple(r[name]['witness'])}"
                print(f"form {pos}: {name}: {status}", file=err)
    return 0 if passed else 1


def cmd_basis(args, out, err) -> int:
    _check_n(args.n, args.max_n)
    if args.which == "curvature":
        docs = [form_to_document(f) for f in curvature_space_basis(args.n)]
    else:
        docs = [exterior_to_document(x) for x in sl2_invariant_elements(args.n)]
    target = Path(args.out) / f"{args.which}_n{args.n}.json"
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(dumps_documents(docs))
    except OSError as exc:
        raise UsageError(f"cannot write {target}: {exc.strerror}") from None
    print(str(target), file=out)
    if not args.quiet:
        print(f"wrote {len(docs)} {args.which} basis document(s)", file=err)
    return 0


def suite_checks(suite: str, n: int) -> list[Check]:
    if suite == "lemma":
        sb2, sl2 = sb2_invariants(n), sl2_invariants(n)
        contained = is_subspace(sl2, sb2)
        equal = subspace_equal(sb2, sl2)
        witness = None
        if not equal:
            bad = next(i for i, v in enumerate(sb2.vectors) if not sl2.contains(v))
            witness = f"sb2 basis vector #{bad} is not SL(2)-invariant"
        return [
            Check("sl2_within_sb2", contained),
            Check("sb2_equals_sl2", equal, witness),
        ]
    if suite == "iso":
        return verify_isomorphism(n).checks
    if suite == "bianchi-ekernel":
        return [
            Check("weight_zero_is_bidegree_two", verify_weight_zero_is_bidegree_two(n)),
            Check("property1_is_weight_zero", verify_property1_is_weight_zero(n)),
            Check("e_kernel_is_bianchi", verify_bianchi_equals_ekernel(n)),
        ]
    if suite == "pair-symmetry":
        return [Check("rotation_realizes_pair_swap", verify_pair_symmetry_mechanism(n))]
    if suite == "basis-independence":
        checks = []
        for name, g in BASIS_CHANGES.items():
            ok = verify_basis_independence(n, g)
            checks.append(Check(f"g={name}", ok, None if ok else f"identification changes under g={g.matrix()}"))
        return checks
    raise UsageError(f"unknown suite {suite!r}")


def cmd_verify(args, out, err) -> int:
    _check_n(args.n, args.max_n)
    names = SUITES if args.suite == "all" else (args.suite,)
    results = []
    for name in names:
        checks = suite_checks(name, args.n)
        results.append(
            {"suite": name, "passed": all(c.passed for c in checks), "checks": [c.as_dict() for c in checks]}
        )
    passed = all(r["passed"] for r in results)
    print(json.dumps({"n": args.n, "suite": args.suite, "passed": passed, "results": results}, indent=2), file=out)
    if not args.quiet:
        for r in results:
            print(f"{r['suite']}: {'PASS' if r['passed'] else 'FAIL'}", file=err)
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riemann-sl2",
        description="Exact checks relating curvature-symmetric forms to SL(2)-invariants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sized = argparse.ArgumentParser(add_help=False)
    sized.add_argument("--n", type=int, required=True, help="dimension of V")
    sized.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="ceiling on n (default %(default)s)")
    quiet = argparse.ArgumentParser(add_help=False)
    quiet.add_argument("--quiet", action="store_true", help="suppress human-readable output on stderr")

    p = sub.add_parser("dim", parents=[sized], help="print the dimensions of both sides")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("check", parents=[quiet], help="check a form document (or a list of them)")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("basis", parents=[sized, quiet], help="write a canonical basis as JSON documents")
    p.add_argument("--which", choices=("curvature", "invariants"), required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify", parents=[sized, quiet], help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except (UsageError, DocumentError) as exc:
        print(f"error: {exc}", file=err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
