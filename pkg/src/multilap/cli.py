"""Command-line front end.

Subcommands: check (validation and predicates), matrix (boundary dump),
spectrum (eigensolver and/or combinatorial prediction), decompose
(constituents), betti (per-degree reports), dirichlet (integer truncation).
Exit codes: 0 success, 1 computation mismatch, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .chain import boundary_matrix, format_boundary_matrix
from .complexes import (
    Multicomplex,
    NotDivisorClosedError,
    ParseError,
    complement_ideal_generators,
    is_strongly_stable,
    load_multicomplex,
    natural_order,
    reverse_order,
)
from .dirichlet import primes_upto, s_vector, t_vector, u2_matrix, y2_matrix
from .formula import predicted_up_spectrum
from .monomials import format_exponents
from .spectra import (
    SNAP_EPS,
    degree_report,
    spectrum_down,
    spectrum_total,
    spectrum_up,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2


class InputError(Exception):
    """User-facing input problem; maps to exit code 2."""


def _canon(obj):
    """Round floats to 12 significant digits so serialized output is stable."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    return obj


def _print_json(report: dict) -> None:
    print(json.dumps(_canon(report), sort_keys=True, indent=2))


def _fmt_num(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _fmt_seq(values) -> str:
    return " ".join(_fmt_num(v) for v in values) if len(values) else "(empty)"


def _load(args) -> Multicomplex:
    try:
        return load_multicomplex(args.file, symbolic=args.symbolic)
    except FileNotFoundError:
        raise InputError(f"no such file: {args.file}") from None
    except (ParseError, NotDivisorClosedError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _order_seq(mc: Multicomplex, name: str):
    return reverse_order(mc.ambient_dim) if name == "reverse" else natural_order(mc.ambient_dim)


def _relabel(mc: Multicomplex, seed: int | None) -> Multicomplex:
    if seed is None:
        return mc
    perm = list(range(mc.ambient_dim))
    random.Random(seed).shuffle(perm)
    return mc.relabel(perm)


# --- commands ----------------------------------------------------------------


def cmd_check(args) -> int:
    try:
        mc = load_multicomplex(args.file, symbolic=args.symbolic)
    except FileNotFoundError:
        print(f"error: no such file: {args.file}", file=sys.stderr)
        return EXIT_INVALID
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NotDivisorClosedError as exc:
        report = {
            "divisor_closed": False,
            "missing": format_exponents(exc.missing),
            "member": format_exponents(exc.member),
        }
        if args.json:
            _print_json(report)
        else:
            print("divisor_closed: no")
            print(f"witness: {report['member']} present, divisor {report['missing']} missing")
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    gens = complement_ideal_generators(mc)
    report = {
        "ambient_dim": mc.ambient_dim,
        "monomials": len(mc),
        "max_degree": mc.max_degree,
        "divisor_closed": True,
        "shifted_natural": mc.is_shifted(natural_order(mc.ambient_dim)),
        "shifted_reverse": mc.is_shifted(reverse_order(mc.ambient_dim)),
        "complement_generators": sorted(format_exponents(g) for g in gens),
        "strongly_stable_complement": is_strongly_stable(gens, mc.ambient_dim),
    }
    if args.json:
        _print_json(report)
    else:
        print(f"ambient_dim: {report['ambient_dim']}")
        print(f"monomials: {report['monomials']}")
        print(f"max_degree: {report['max_degree']}")
        print("divisor_closed: yes")
        print(f"shifted_natural: {'yes' if report['shifted_natural'] else 'no'}")
        print(f"shifted_reverse: {'yes' if report['shifted_reverse'] else 'no'}")
        stable = "yes" if report["strongly_stable_complement"] else "no"
        print(f"strongly_stable_complement: {stable}")
    return EXIT_OK


def cmd_matrix(args) -> int:
    mc = _load(args)
    if args.degree < 0:
        raise InputError("--degree must be >= 0")
    b = boundary_matrix(mc, args.degree)
    if args.json:
        _print_json(
            {
                "degree": b.degree,
                "rows": len(b.rows),
                "cols": len(b.cols),
                "entries": [list(t) for t in b.triples()],
                "row_monomials": [format_exponents(m) for m in b.rows],
                "col_monomials": [format_exponents(m) for m in b.cols],
            }
        )
    else:
        print(format_boundary_matrix(b), end="")
    return EXIT_OK


def cmd_spectrum(args) -> int:
    mc = _relabel(_load(args), args.relabel_seed)
    order = _order_seq(mc, args.order)
    if args.degree is not None:
        if args.degree < 1:
            raise InputError("--degree must be >= 1 (a chain degree)")
        degrees = [args.degree]
    else:
        degrees = list(range(1, mc.max_degree + 1))

    want_eig = args.method in ("eig", "both")
    want_formula = args.method in ("formula", "both")
    shifted = mc.is_shifted(order)
    if want_formula and not shifted and not args.force:
        print(
            f"error: complex is not shifted under the {args.order} order; "
            "use --force to compute the prediction anyway",
            file=sys.stderr,
        )
        return EXIT_INVALID

    entries = []
    mismatch = False
    for k in degrees:
        entry: dict = {"chain_degree": k, "laplacian_index": k - 1}
        if want_eig:
            up = spectrum_up(mc, k - 1)
            down = spectrum_down(mc, k - 1)
            total = spectrum_total(mc, k - 1)
            for name, spec in (("up", up), ("down", down), ("total", total)):
                entry[name] = list(spec.values)
                snapped = spec.snapped
                entry[f"{name}_snapped"] = list(snapped) if snapped is not None else None
        if want_formula:
            entry["formula"] = list(predicted_up_spectrum(mc, k, order, force=True))
            if not shifted:
                entry["formula_unverified"] = True
        if want_eig and want_formula:
            match = up.equal_up_to_zeros(entry["formula"], tol=args.tol)
            entry["match_up_to_zeros"] = match
            mismatch = mismatch or not match
        entries.append(entry)

    report = {
        "method": args.method,
        "order": args.order,
        "shifted": shifted,
        "degrees": entries,
    }
    if args.json:
        _print_json(report)
    else:
        for entry in entries:
            k = entry["chain_degree"]
            print(f"chain_degree {k} (laplacian_index {k - 1}):")
            if want_eig:
                for name in ("up", "down", "total"):
                    print(f"  {name}: {_fmt_seq(entry[name])}")
            if want_formula:
                print(f"  formula: {_fmt_seq(entry['formula'])}")
            if "match_up_to_zeros" in entry:
                print(f"  match_up_to_zeros: {'yes' if entry['match_up_to_zeros'] else 'no'}")
    return EXIT_MISMATCH if mismatch else EXIT_OK


def cmd_decompose(args) -> int:
    mc = _load(args)
    pieces = mc.constituents()
    entries = [
        {
            "root": format_exponents(p),
            "size": len(piece),
            "f_vector": list(piece.f_vector()),
        }
        for p, piece in pieces.items()
    ]
    total = [0] * (mc.max_degree + 1)
    for p, piece in pieces.items():
        shift = 2 * sum(p)
        for i, f in enumerate(piece.f_vector()):
            total[shift + i] += f
    identity_ok = tuple(total) == mc.f_vector()
    report = {
        "f_vector": list(mc.f_vector()),
        "constituents": entries,
        "f_vector_identity_ok": identity_ok,
    }
    if args.json:
        _print_json(report)
    else:
        print(f"f_vector: {_fmt_seq(report['f_vector'])}")
        for entry in entries:
            print(
                f"root [{entry['root']}]: size {entry['size']}, "
                f"f_vector {_fmt_seq(entry['f_vector'])}"
            )
        print(f"f_vector_identity_ok: {'yes' if identity_ok else 'no'}")
    return EXIT_OK if identity_ok else EXIT_MISMATCH


def cmd_betti(args) -> int:
    mc = _load(args)
    reports = []
    cross_ok = True
    for d in range(mc.max_degree + 1):
        rep = degree_report(mc, d, tol=args.tol)
        zero_mult = sum(1 for v in rep["total"] if v <= SNAP_EPS)
        rep["zero_multiplicity_ok"] = zero_mult == rep["betti"]
        cross_ok = cross_ok and rep["zero_multiplicity_ok"]
        reports.append(rep)
    report = {
        "betti": [rep["betti"] for rep in reports],
        "degrees": reports,
    }
    if args.json:
        _print_json(report)
    else:
        print(f"betti: {_fmt_seq(report['betti'])}")
        for rep in reports:
            flags = []
            flags.append("relations_ok" if rep["relations_ok"] else "RELATIONS_FAIL")
            flags.append("zero_mult_ok" if rep["zero_multiplicity_ok"] else "ZERO_MULT_FAIL")
            print(
                f"degree {rep['degree']}: betti {rep['betti']}, "
                f"total {_fmt_seq(rep['total'])} [{', '.join(flags)}]"
            )
    return EXIT_OK if cross_ok else EXIT_MISMATCH


def cmd_dirichlet(args) -> int:
    if args.N < 1:
        raise InputError("N must be >= 1")
    try:
        t = t_vector(args.N, args.k)
        s = s_vector(args.N, args.k)
        pi = len(primes_upto(args.N))
        report: dict = {
            "N": args.N,
            "k": args.k,
            "t": list(t),
            "s": list(s),
            "pi": pi,
        }
        if args.matrices:
            report["Y2"] = y2_matrix(args.N).tolist()
            report["U2"] = u2_matrix(args.N).tolist()
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.json:
        _print_json(report)
    else:
        print(f"N: {args.N}")
        print(f"k: {args.k}")
        print(f"pi: {pi}")
        print(f"t: {_fmt_seq(t)}")
        print(f"s: {_fmt_seq(s)}")
        if args.matrices:
            print("Y2:")
            for row in report["Y2"]:
                print(" ".join(str(v) for v in row))
            print("U2:")
            for row in report["U2"]:
                print(" ".join(str(v) for v in row))
    return EXIT_OK


# --- parser -------------------------------------------------------------------


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("tolerance must be > 0")
    return value


def _add_file_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("file", help="multicomplex file (exponent vectors, '#' comments)")
    sub.add_argument(
        "--symbolic", action="store_true", help="parse 'x1^2*x2' lines instead of exponent vectors"
    )
    sub.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multilap",
        description="Boundary operators and Laplacian spectra of finite multicomplexes.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check", help="validate a multicomplex and report its predicates")
    _add_file_options(p)
    p.set_defaults(func=cmd_check)

    p = subs.add_parser("matrix", help="dump one boundary matrix")
    _add_file_options(p)
    p.add_argument("--degree", type=int, required=True, help="source layer degree")
    p.set_defaults(func=cmd_matrix)

    p = subs.add_parser("spectrum", help="Laplacian spectra and/or the combinatorial prediction")
    _add_file_options(p)
    p.add_argument("--degree", type=int, help="chain degree k (default: all)")
    p.add_argument(
        "--method", choices=("eig", "formula", "both"), default="both", help="what to compute"
    )
    p.add_argument(
        "--tol", type=_positive_float, default=SNAP_EPS, help="match tolerance (default 1e-6)"
    )
    p.add_argument(
        "--order",
        choices=("natural", "reverse"),
        default="natural",
        help="variable order for the shifted check",
    )
    p.add_argument(
        "--force", action="store_true", help="compute the prediction even if not shifted"
    )
    p.add_argument(
        "--relabel-seed", type=int, default=None, help="permute variables before computing"
    )
    p.set_defaults(func=cmd_spectrum)

    p = subs.add_parser("decompose", help="square-free constituents and the f-vector identity")
    _add_file_options(p)
    p.set_defaults(func=cmd_decompose)

    p = subs.add_parser("betti", help="per-degree spectra, Betti numbers and relation checks")
    _add_file_options(p)
    p.add_argument(
        "--tol", type=_positive_float, default=SNAP_EPS, help="comparison tolerance (default 1e-6)"
    )
    p.set_defaults(func=cmd_betti)

    p = subs.add_parser("dirichlet", help="spectrum vectors of the integers up to N")
    p.add_argument("N", type=int, help="truncation bound")
    p.add_argument("--k", type=int, default=2, help="number of prime factors (default 2)")
    p.add_argument("--matrices", action="store_true", help="emit the pair matrices (k=2 view)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_dirichlet)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
