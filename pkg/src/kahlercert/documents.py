"""JSON documents for group inputs and certificates.

Rationals are written as reduced ``"p/q"`` strings (``"p"`` for integers),
floats as their shortest round-trip decimal string, so that
``certificate_from_document(certificate_to_document(c)) == c``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import DocumentError
from .exactlin import RationalMatrix
from .kahler import (
    CheckResult,
    ComplexStructure,
    KahlerCertificate,
    NotFound,
    VerificationReport,
)
from .matgroup import DEFAULT_MAX_ORDER, BilinearForm, FiniteMatrixGroup, close_group

TOOL_VERSION = "0.1.0"


def load_schema(name: str) -> dict:
    text = resources.files("kahlercert").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def _validate(doc, schema: str) -> None:
    try:
        jsonschema.validate(doc, load_schema(schema))
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise DocumentError(f"{schema} document invalid at '{path}': {exc.message}") from None


def rational_to_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_matrix_to_strings(m: RationalMatrix) -> list[list[str]]:
    return [[rational_to_str(x) for x in row] for row in m.rows]


def rational_matrix_from_strings(rows) -> RationalMatrix:
    return RationalMatrix([[Fraction(x) for x in row] for row in rows])


def _int_matrix(m: RationalMatrix) -> list[list[int]]:
    if not m.is_integral():
        raise DocumentError("form matrices must be integral")
    return m.to_int_rows()


# ---------------------------------------------------------------------------
# Group input
# ---------------------------------------------------------------------------

def group_to_document(G: FiniteMatrixGroup, max_order: int | None = None) -> dict:
    doc = {
        "dimension": G.dimension,
        "generators": [g.to_int_rows() for g in G.generators],
        "name": G.name,
    }
    if max_order is not None:
        doc["max_order"] = max_order
    return doc


def parse_group_document(doc: dict) -> tuple[list[RationalMatrix], str | None, int]:
    """Validate a group document; return ``(generators, name, max_order)``."""
    _validate(doc, "group_input")
    n = doc["dimension"]
    gens = []
    for k, g in enumerate(doc["generators"]):
        if len(g) != n or any(len(r) != n for r in g):
            raise DocumentError(f"generator {k} is not {n}x{n}")
        gens.append(RationalMatrix(g))
    return gens, doc.get("name"), doc.get("max_order", DEFAULT_MAX_ORDER)


def group_from_document(doc: dict, max_order: int | None = None) -> FiniteMatrixGroup:
    gens, name, default_max = parse_group_document(doc)
    return close_group(gens, max_order=max_order or default_max, name=name)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

def complex_structure_to_document(J: ComplexStructure) -> dict:
    doc = {
        "precision": J.precision,
        "tolerance": J.tolerance,
        "entries": [[repr(float(x)) for x in row] for row in J.matrix],
    }
    if J.exact is not None:
        doc["coefficients"] = rational_matrix_to_strings(J.exact)
        doc["surd"] = J.surd
    return doc


def complex_structure_from_document(doc: dict) -> ComplexStructure:
    if doc["precision"] == "exact":
        if "coefficients" not in doc:
            raise DocumentError("exact J needs a coefficient matrix")
        return ComplexStructure.from_exact(
            rational_matrix_from_strings(doc["coefficients"]), surd=doc.get("surd", 1), tolerance=doc["tolerance"]
        )
    return ComplexStructure([[float(x) for x in row] for row in doc["entries"]], tolerance=doc["tolerance"])


def certificate_to_document(cert: KahlerCertificate, timestamp: str | None = None) -> dict:
    w = cert.nonexistence_witness
    return {
        "decision": cert.decision,
        "dimension": cert.dimension,
        "omega": None if cert.omega is None else _int_matrix(cert.omega.matrix),
        "S": None if cert.S is None else _int_matrix(cert.S.matrix),
        "J": None if cert.J is None else complex_structure_to_document(cert.J),
        "conjugator": None if cert.conjugator is None else rational_matrix_to_strings(cert.conjugator),
        "signature": None if cert.signature is None else list(cert.signature),
        "nonexistence_witness": None
        if w is None
        else {
            "kind": w.kind,
            "detail": w.detail,
            "invariant_dimension": w.invariant_dimension,
            "failure_probability_bound": w.failure_probability_bound,
        },
        "verification": []
        if cert.verification is None
        else [{"check": c.check, "residual": c.residual, "pass": c.passed} for c in cert.verification.checks],
        "provenance": {"seed": cert.seed, "tool_version": TOOL_VERSION, "timestamp": timestamp},
    }


def certificate_from_document(doc: dict) -> KahlerCertificate:
    _validate(doc, "certificate")
    w = doc["nonexistence_witness"]
    try:
        return KahlerCertificate(
            decision=doc["decision"],
            dimension=doc["dimension"],
            omega=None if doc["omega"] is None else BilinearForm(RationalMatrix(doc["omega"]), "alternating"),
            S=None if doc["S"] is None else BilinearForm(RationalMatrix(doc["S"]), "symmetric"),
            J=None if doc["J"] is None else complex_structure_from_document(doc["J"]),
            conjugator=None if doc["conjugator"] is None else rational_matrix_from_strings(doc["conjugator"]),
            signature=None if doc["signature"] is None else tuple(doc["signature"]),
            nonexistence_witness=None if w is None else NotFound(**w),
            verification=VerificationReport(
                [CheckResult(c["check"], float(c["residual"]), c["pass"]) for c in doc["verification"]]
            ),
            seed=doc["provenance"]["seed"],
        )
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not valid JSON ({exc})") from None


def write_json(path, doc: dict) -> None:
    Path(path).write_text(dumps(doc), "utf-8")
