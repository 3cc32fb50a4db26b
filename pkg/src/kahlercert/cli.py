"""Command line front end: ``kahlercert {decide,verify,deform,cm}``.

Exit codes: 0 success (kahler / all checks pass), 1 negative answer
(not kahler / some check failed), 2 input or limit error, 3 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .cm_cyclic import CyclotomicAction, cm_complex_structure, cross_check_with_decider
from .documents import (
    certificate_from_document,
    certificate_to_document,
    complex_structure_to_document,
    dumps,
    group_from_document,
    group_to_document,
    read_json,
)
from .errors import DegenerateOnSegment, DocumentError, KahlerCertError, NoConvergence, OddPhi, OrderExceeded
from .kahler import DEFAULT_TOL, decide_kahler, verify_certificate
from .matgroup import DEFAULT_MAX_ORDER
from .siegel import deform_to_polarisable, perturbed_start

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
CSV_COLUMNS = ("t", "step_distance", "compat_residual", "min_gram_eigenvalue")


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, "utf-8")
    else:
        sys.stdout.write(text)


def _load_group(path, max_order=None):
    return group_from_document(read_json(path), max_order=max_order)


def cmd_decide(args) -> int:
    G = _load_group(args.input, args.max_order)
    cert = decide_kahler(G, rng_seed=args.seed, tolerance=args.tol)
    _emit(dumps(certificate_to_document(cert)), args.output)
    if cert.verification is not None and not cert.verification.ok:
        print("warning: certificate failed self-verification", file=sys.stderr)
    return EXIT_OK if cert.is_kahler else EXIT_NO


def cmd_verify(args) -> int:
    cert = certificate_from_document(read_json(args.certificate))
    G = _load_group(args.input)
    rep = verify_certificate(G, cert, tolerance=args.tol)
    print(rep.table())
    return EXIT_OK if rep.ok else EXIT_NO


def cmd_deform(args) -> int:
    G = _load_group(args.input)
    cert = decide_kahler(G, rng_seed=args.seed)
    if not cert.is_kahler:
        print(f"group is not kahler: {cert.nonexistence_witness.detail}", file=sys.stderr)
        return EXIT_NO
    if args.steps == 0:
        path = deform_to_polarisable(G, cert.J, cert.omega, steps=0)
    else:
        J0, W0 = perturbed_start(G, cert.omega, seed=args.seed)
        path = deform_to_polarisable(G, J0, W0, steps=args.steps)
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_COLUMNS)
            for row in path.rows():
                w.writerow([repr(float(x)) for x in row])
    _emit(dumps(certificate_to_document(path.certificate)), args.output)
    return EXIT_OK if path.certificate.verification.ok else EXIT_NO


def cmd_cm(args) -> int:
    try:
        action = CyclotomicAction.of_order(args.order)
    except (ValueError, OddPhi) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    G = action.group()
    J = cm_complex_structure(action)
    cert = decide_kahler(G)
    report = cross_check_with_decider(action, cert)
    doc = {
        "order": action.order,
        "cm_type": list(action.cm_type),
        "group": group_to_document(G),
        "J": complex_structure_to_document(J),
        "decider_certificate": certificate_to_document(cert),
        "cross_check": {
            "decisions_agree": report.decisions_agree,
            "signatures_agree": report.signatures_agree,
            "orientation": report.orientation,
            "cm_signature": None if report.cm_signature is None else list(report.cm_signature),
            "decider_signature": None if report.decider_signature is None else list(report.decider_signature),
            "siegel_distance": report.distance,
            "detail": report.detail,
        },
    }
    _emit(dumps(doc), args.output)
    return EXIT_OK if report.ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kahlercert", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", help="decide and certify a group")
    d.add_argument("input")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--tol", type=float, default=DEFAULT_TOL)
    d.add_argument("--max-order", type=int, default=None, help=f"closure limit (default {DEFAULT_MAX_ORDER})")
    d.add_argument("--output")
    d.set_defaults(func=cmd_decide)

    v = sub.add_parser("verify", help="re-check a certificate against a group")
    v.add_argument("certificate")
    v.add_argument("input")
    v.add_argument("--tol", type=float, default=DEFAULT_TOL)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("deform", help="deform a perturbed structure to a polarisable one")
    f.add_argument("input")
    f.add_argument("--steps", type=int, default=32)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--csv")
    f.add_argument("--output")
    f.set_defaults(func=cmd_deform)

    c = sub.add_parser("cm", help="CM structure of a cyclotomic cyclic action")
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--output")
    c.set_defaults(func=cmd_cm)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "steps", 0) < 0:
        print("error: --steps must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (DocumentError, OrderExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NoConvergence, DegenerateOnSegment) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except KahlerCertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
