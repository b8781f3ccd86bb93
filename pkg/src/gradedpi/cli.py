"""Command-line front end: JSON session documents in, deterministic reports out.

A session document declares a group, a subgroup, a cocycle (modulus plus
exponent matrix), a grading tuple, and optionally named polynomials and
command parameters.  Reports are key: value lines followed by a fenced
machine-readable JSON block; exit code 0 means success (or a positive
decision), 1 a negative decision for yes/no commands, 2 an input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Optional

from .algebra import (
    Presentation,
    build_algebra,
    normalize_presentation,
    presentations_equivalent,
    support,
)
from .classify import ClassificationReport, classify, verify_witness
from .cohomology import Cocycle2
from .errors import DocumentError, GradedPIError, NoWitnessError
from .grassmann import envelope_identity_check
from .groups import FiniteGroup
from .polynomials import GradedPolynomial, GradedVariable, check_identity
from .scalars import CycScalar

MACHINE_BEGIN = "--- machine ---"
MACHINE_END = "--- end machine ---"

COMMANDS = (
    "validate",
    "classify",
    "normalize",
    "equivalent",
    "identity-check",
    "witness",
    "envelope-check",
)


# -- document parsing -----------------------------------------------------------


def _need(doc: dict, key: str, where: str = "document"):
    if key not in doc:
        raise DocumentError(f"{where}: missing field '{key}'")
    return doc[key]


def parse_group(spec: Any, where: str = "group") -> FiniteGroup:
    if not isinstance(spec, dict):
        raise DocumentError(f"{where}: expected an object")
    if "table" in spec:
        try:
            return FiniteGroup.from_table(spec["table"])
        except GradedPIError as exc:
            raise DocumentError(f"{where}.table: {exc}") from exc
    construct = _need(spec, "construct", where)
    if construct == "cyclic":
        return FiniteGroup.cyclic(int(_need(spec, "n", where)))
    if construct == "dihedral":
        return FiniteGroup.dihedral(int(_need(spec, "n", where)))
    if construct == "symmetric":
        return FiniteGroup.symmetric(int(_need(spec, "n", where)))
    if construct == "product":
        factors = _need(spec, "factors", where)
        if not isinstance(factors, list) or len(factors) != 2:
            raise DocumentError(f"{where}.factors: expected a list of two group specs")
        return FiniteGroup.direct_product(
            parse_group(factors[0], f"{where}.factors[0]"),
            parse_group(factors[1], f"{where}.factors[1]"),
        )
    raise DocumentError(f"{where}.construct: unknown constructor '{construct}'")


def _resolve_element(value: Any, names: dict[str, int], group: FiniteGroup, where: str) -> int:
    if isinstance(value, str):
        if value not in names:
            raise DocumentError(f"{where}: unknown element alias '{value}'")
        value = names[value]
    if not isinstance(value, int) or not (0 <= value < group.order):
        raise DocumentError(f"{where}: element {value!r} out of range")
    return value


def parse_coefficient(value: Any, modulus: int, where: str) -> CycScalar:
    """Coefficients are rational strings ("1", "-2/3") or [[power, rational], ...]
    lists denoting sums of rational multiples of zeta^power."""
    try:
        if isinstance(value, str):
            return CycScalar.from_rational(modulus, Fraction(value))
        if isinstance(value, int):
            return CycScalar.from_rational(modulus, value)
        if isinstance(value, list):
            out = CycScalar.zero(modulus)
            for item in value:
                if not (isinstance(item, list) and len(item) == 2):
                    raise DocumentError(f"{where}: expected [power, rational] pairs")
                k = int(item[0]) % modulus
                q = Fraction(str(item[1]))
                out = out + CycScalar.from_poly(
                    modulus, [Fraction(0)] * k + [q]
                )
            return out
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: bad coefficient {value!r} ({exc})") from exc
    raise DocumentError(f"{where}: bad coefficient {value!r}")


def parse_polynomial(
    spec: Any, names: dict[str, int], group: FiniteGroup, modulus: int, where: str
) -> GradedPolynomial:
    if not isinstance(spec, dict):
        raise DocumentError(f"{where}: expected an object")
    raw_vars = _need(spec, "variables", where)
    variables = []
    for i, v in enumerate(raw_vars):
        if not isinstance(v, str) or ":" not in v or not v.startswith("x"):
            raise DocumentError(
                f"{where}.variables[{i}]: expected 'x<id>:<element>', got {v!r}"
            )
        head, _, tail = v.partition(":")
        try:
            vid = int(head[1:])
        except ValueError as exc:
            raise DocumentError(f"{where}.variables[{i}]: bad id in {v!r}") from exc
        tail_value: Any = tail
        if tail.lstrip("-").isdigit():
            tail_value = int(tail)
        degree = _resolve_element(tail_value, names, group, f"{where}.variables[{i}]")
        variables.append(GradedVariable(vid, degree))
    monos = []
    for i, m in enumerate(_need(spec, "monomials", where)):
        coeff = parse_coefficient(_need(m, "coeff", f"{where}.monomials[{i}]"), modulus, f"{where}.monomials[{i}].coeff")
        order = _need(m, "order", f"{where}.monomials[{i}]")
        monos.append((coeff, tuple(int(x) for x in order)))
    try:
        return GradedPolynomial(variables, monos)
    except GradedPIError as exc:
        raise DocumentError(f"{where}: {exc}") from exc


def serialize_coefficient(c: CycScalar) -> Any:
    if c.is_rational():
        return str(c.as_rational())
    return [[i, str(q)] for i, q in enumerate(c.coeffs) if q]


def serialize_polynomial(f: GradedPolynomial) -> dict:
    return {
        "variables": [
            f"x{v.vid}:{v.degree}" for v in sorted(f.variables, key=lambda v: v.vid)
        ],
        "monomials": [
            {"coeff": serialize_coefficient(m.coeff), "order": list(m.order)}
            for m in f.monomials
        ],
    }


def serialize_presentation(p: Presentation) -> dict:
    return {
        "subgroup": list(p.subgroup.members),
        "cocycle": {
            "modulus": p.cocycle.modulus,
            "exponents": [list(r) for r in p.cocycle.exps],
        },
        "grading": list(p.grading),
    }


class SessionDocument:
    """Validated session document; all cross-references resolved."""

    def __init__(self, raw: dict):
        if not isinstance(raw, dict):
            raise DocumentError("document: expected a JSON object")
        self.raw = raw
        self.group = parse_group(_need(raw, "group"))
        names = raw.get("names", {})
        if not isinstance(names, dict):
            raise DocumentError("names: expected an object of alias -> index")
        self.names = {str(k): int(v) for k, v in names.items()}
        for alias, idx in self.names.items():
            if not (0 <= idx < self.group.order):
                raise DocumentError(f"names.{alias}: index {idx} out of range")
        self.presentation = self._parse_presentation(raw, "")
        self.second: Optional[Presentation] = None
        if "second" in raw:
            self.second = self._parse_presentation(raw["second"], "second.")
        self.polynomials: dict[str, GradedPolynomial] = {}
        modulus = self.presentation.cocycle.modulus
        for name, spec in raw.get("polynomials", {}).items():
            self.polynomials[name] = parse_polynomial(
                spec, self.names, self.group, modulus, f"polynomials.{name}"
            )
        self.params = raw.get("params", {})
        if not isinstance(self.params, dict):
            raise DocumentError("params: expected an object")

    def _parse_presentation(self, raw: dict, prefix: str) -> Presentation:
        members = [
            _resolve_element(v, self.names, self.group, f"{prefix}subgroup[{i}]")
            for i, v in enumerate(_need(raw, "subgroup", prefix + "document"))
        ]
        try:
            subgroup = self.group.subgroup(members)
        except GradedPIError as exc:
            raise DocumentError(f"{prefix}subgroup: {exc}") from exc
        cspec = _need(raw, "cocycle", prefix + "document")
        modulus = int(_need(cspec, "modulus", prefix + "cocycle"))
        exps = _need(cspec, "exponents", prefix + "cocycle")
        try:
            cocycle = Cocycle2(subgroup, modulus, exps)
        except GradedPIError as exc:
            raise DocumentError(f"{prefix}cocycle: {exc}") from exc
        grading = [
            _resolve_element(v, self.names, self.group, f"{prefix}grading[{i}]")
            for i, v in enumerate(_need(raw, "grading", prefix + "document"))
        ]
        try:
            return Presentation(self.group, subgroup, cocycle, tuple(grading))
        except GradedPIError as exc:
            raise DocumentError(f"{prefix}presentation: {exc}") from exc

    def polynomial(self, key: str = "polynomial") -> GradedPolynomial:
        name = self.params.get(key)
        if not isinstance(name, str) or name not in self.polynomials:
            raise DocumentError(
                f"params.{key}: expected the name of a declared polynomial"
            )
        return self.polynomials[name]


# -- report assembly ------------------------------------------------------------


def _emit(lines: list[tuple[str, Any]], machine: dict) -> str:
    text = "\n".join(f"{k}: {_fmt(v)}" for k, v in lines)
    block = json.dumps(machine, indent=2, sort_keys=True)
    return f"{text}\n{MACHINE_BEGIN}\n{block}\n{MACHINE_END}\n"


def _fmt(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "undefined"
    return str(v)


def run(command: str, document: dict, threads: int = 1, max_degree: Optional[int] = None) -> tuple[str, int]:
    """Execute a command against a raw document; returns (report text, exit code)."""
    if command not in COMMANDS:
        raise DocumentError(f"unknown command '{command}'")
    doc = SessionDocument(document)
    if max_degree is not None:
        for name, poly in doc.polynomials.items():
            if poly.degree > max_degree:
                raise DocumentError(
                    f"polynomials.{name}: degree {poly.degree} exceeds --max-degree {max_degree}"
                )
    if command == "validate":
        return _cmd_validate(doc)
    if command == "classify":
        return _cmd_classify(doc)
    if command == "normalize":
        return _cmd_normalize(doc)
    if command == "equivalent":
        return _cmd_equivalent(doc)
    if command == "identity-check":
        return _cmd_identity(doc, threads)
    if command == "witness":
        return _cmd_witness(doc, threads)
    return _cmd_envelope(doc, threads)


def _cmd_validate(doc: SessionDocument) -> tuple[str, int]:
    violations = doc.presentation.cocycle.violations()
    if violations:
        first = violations[0]
        text = _emit(
            [("valid", False), ("violation", str(first))],
            {"valid": False, "violations": [str(v) for v in violations]},
        )
        return text, 2
    algebra = build_algebra(doc.presentation)
    rep = support(algebra)
    machine = {
        "valid": True,
        "dimension": algebra.dim,
        "connected": rep.connected,
        "support": sorted(rep.support),
    }
    lines = [(k, machine[k]) for k in ("valid", "dimension", "connected", "support")]
    return _emit(lines, machine), 0


def _cmd_classify(doc: SessionDocument) -> tuple[str, int]:
    report = classify(doc.presentation)
    flags = report.flags()
    lines = [(k, v) for k, v in flags.items()]
    machine = dict(flags)
    machine["normalized_presentation"] = serialize_presentation(report.presentation)
    if report.invariance_failure is not None:
        g, obstruction = report.invariance_failure
        lines.append(("invariance_failure_rep", g))
        machine["invariance_failure"] = {
            "coset_representative": g,
            "obstruction": str(obstruction),
        }
    return _emit(lines, machine), 0 if report.strongly_verbally_prime else 1


def _cmd_normalize(doc: SessionDocument) -> tuple[str, int]:
    np = normalize_presentation(doc.presentation)
    machine = {"normalized_presentation": serialize_presentation(np)}
    lines = [
        ("subgroup", list(np.subgroup.members)),
        ("grading", list(np.grading)),
    ]
    return _emit(lines, machine), 0


def _cmd_equivalent(doc: SessionDocument) -> tuple[str, int]:
    if doc.second is None:
        raise DocumentError("second: an 'equivalent' document needs a second presentation")
    verdict = presentations_equivalent(doc.presentation, doc.second)
    return _emit([("equivalent", verdict)], {"equivalent": verdict}), 0 if verdict else 1


def _cmd_identity(doc: SessionDocument, threads: int) -> tuple[str, int]:
    poly = doc.polynomial()
    algebra = build_algebra(doc.presentation)
    report = check_identity(poly, algebra, threads=threads)
    lines: list[tuple[str, Any]] = [("identity", report.identity)]
    machine: dict[str, Any] = {"identity": report.identity}
    if not report.identity:
        counter = {f"x{vid}": list(t) for vid, t in sorted(report.counterexample.items())}
        lines.append(("counterexample", json.dumps(counter, sort_keys=True)))
        machine["counterexample"] = counter
    return _emit(lines, machine), 0 if report.identity else 1


def emit_witness(report: ClassificationReport, threads: int = 1) -> dict:
    """Serialized witness pair plus verification certificate for a report.

    Polynomial-witness reports are re-verified from scratch; condition-(3)
    failures emit the algebraic obstruction certificate instead; raises
    NoWitnessError when the presentation is strongly verbally prime.
    """
    if report.strongly_verbally_prime:
        raise NoWitnessError("presentation is strongly verbally prime")
    if report.witness is None:
        if report.invariance_failure is None:
            raise NoWitnessError("report carries neither witness nor obstruction")
        g, obstruction = report.invariance_failure
        return {
            "witness": None,
            "certificate": {
                "kind": "invariance_obstruction",
                "coset_representative": g,
                "obstruction": str(obstruction),
            },
        }
    pair = report.witness
    cert = verify_witness(pair, threads=threads)
    return {
        "witness": {
            "kind": pair.kind,
            "presentation": serialize_presentation(pair.presentation),
            "f": serialize_polynomial(pair.f),
            "g": serialize_polynomial(pair.g),
            "assignment_f": {f"x{v}": list(t) for v, t in sorted(pair.assignment_f.items())},
            "assignment_g": {f"x{v}": list(t) for v, t in sorted(pair.assignment_g.items())},
        },
        "certificate": {
            "value_f": {str(list(t)): serialize_coefficient(c) for t, c in sorted(cert.value_f.items())},
            "value_g": {str(list(t)): serialize_coefficient(c) for t, c in sorted(cert.value_g.items())},
            "product_identity": cert.product_identity,
            "span_product_zero": cert.span_product_zero,
            "span_square_zero": cert.span_square_zero,
            "span_f_dim": len(cert.span_f_basis),
        },
    }


def _cmd_witness(doc: SessionDocument, threads: int) -> tuple[str, int]:
    report = classify(doc.presentation, with_witness=True)
    if report.strongly_verbally_prime:
        return (
            _emit(
                [("witness", "none"), ("reason", "presentation is strongly verbally prime")],
                {"witness": None, "strongly_verbally_prime": True},
            ),
            1,
        )
    machine = emit_witness(report, threads=threads)
    if machine["witness"] is None:
        cert = machine["certificate"]
        lines = [
            ("witness", "algebraic-certificate"),
            ("failing_representative", cert["coset_representative"]),
            ("obstruction", cert["obstruction"]),
        ]
        return _emit(lines, machine), 0
    lines = [
        ("witness", machine["witness"]["kind"]),
        ("monomials_f", len(machine["witness"]["f"]["monomials"])),
        ("monomials_g", len(machine["witness"]["g"]["monomials"])),
        ("product_identity", machine["certificate"]["product_identity"]),
        ("span_product_zero", machine["certificate"]["span_product_zero"]),
    ]
    return _emit(lines, machine), 0


def _cmd_envelope(doc: SessionDocument, threads: int) -> tuple[str, int]:
    poly = doc.polynomial()
    truncation = doc.params.get("truncation")
    if not isinstance(truncation, int) or truncation < 0:
        raise DocumentError("params.truncation: expected a nonnegative integer")
    factors = doc.group.product_factors
    if factors is None or factors[0].order != 2:
        raise DocumentError(
            "group: envelope-check needs a product group with an order-2 first factor"
        )
    for v in poly.variables:
        if v.degree >= factors[1].order:
            raise DocumentError(
                f"polynomials: degree of x{v.vid} must index the second factor "
                f"(0..{factors[1].order - 1})"
            )
    algebra = build_algebra(doc.presentation)
    report = envelope_identity_check(poly, algebra, truncation)
    lines = [("identity", report.identity), ("truncation", truncation)]
    machine: dict[str, Any] = {"identity": report.identity, "truncation": truncation}
    if not report.identity:
        machine["counterexample"] = {
            f"x{vid}": [list(key[0]), key[1]]
            for vid, key in sorted(report.counterexample.items())
        }
    return _emit(lines, machine), 0 if report.identity else 1


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="gradedpi",
        description="Graded simple algebras from presentations: validation, "
        "classification, identity checking, witnesses.",
    )
    parser.add_argument("--input", required=True, help="path to a JSON session document")
    parser.add_argument("--command", required=True, choices=COMMANDS)
    parser.add_argument("--threads", type=int, default=1, help="oracle worker count")
    parser.add_argument(
        "--max-degree", type=int, default=None, help="cap on identity-oracle degree"
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help="reserved for randomized suites; the shipped commands are deterministic",
    )
    args = parser.parse_args(argv)
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            document = json.load(fh)
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"input error: invalid JSON at line {exc.lineno}: {exc.msg}", file=sys.stderr)
        return 2
    try:
        text, code = run(
            args.command, document, threads=max(1, args.threads), max_degree=args.max_degree
        )
    except DocumentError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except GradedPIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
