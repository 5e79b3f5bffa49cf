"""Command-line surface.

One instance document in, one deterministic report out.  Exit codes:
0 every check passed, 1 a mathematical check failed (the report names it),
2 invalid input or usage.  `--json` switches to a single machine-readable
object; `--seed` is echoed in the header so sweep scripts can cite it.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import deform as deform_mod
from . import linfty, nslie, tgcs
from .errors import InvalidStructure, ToolkitError
from .exactlin import Matrix, scalar, scalar_str
from .instances import (
    InstanceDocument,
    MissingSection,
    cochain_json,
    load_instance,
    matrix_json,
    ns_json,
    parse_matrix,
    vector_json,
)
from .liealg import (
    LieAlgebra,
    Representation,
    Violation,
    ce_cohomology_dims,
    is_two_cocycle,
    validate_lie,
    validate_rep,
)
from .multilin import Cochain
from .operators import (
    check_trb,
    gauge_transform,
    r_matrix_check,
    reynolds_check,
    reynolds_from_derivation,
    shift_by_coboundary,
    trb_setup,
    witt_report,
)
from .report import CheckReport, EquationReport


class MathFailure(Exception):
    """A mathematical check failed; exit code 1 with a named report."""

    def __init__(self, name: str, witnesses: list[str]):
        super().__init__(name)
        self.name = name
        self.witnesses = witnesses


def _witness(v: Violation | None) -> list[str]:
    return [] if v is None else [v.describe()]


def _need_pass(name: str, report: CheckReport) -> None:
    if not report.ok:
        raise MathFailure(name, _witness(report.violation))


def _algebra(doc: InstanceDocument) -> LieAlgebra:
    doc.require("lie_algebra")
    out = validate_lie(doc.lie_dim, doc.brackets or {})
    if isinstance(out, Violation):
        raise MathFailure("lie_algebra", [out.describe()])
    return out


def _representation(doc: InstanceDocument, algebra: LieAlgebra) -> Representation:
    doc.require("representation")
    out = validate_rep(algebra, doc.module_dim, doc.action)
    if isinstance(out, Violation):
        raise MathFailure("representation", [out.describe()])
    return out


def _setup(doc: InstanceDocument):
    algebra = _algebra(doc)
    rep = _representation(doc, algebra)
    h = doc.cocycle_h
    if h is None:
        h = Cochain.zero(2, algebra.dim, rep.module_dim)
    closed = is_two_cocycle(algebra, rep, h)
    if not closed:
        raise MathFailure("cocycle_H", _witness(closed.violation))
    return trb_setup(algebra, rep, h)


def _operator(doc: InstanceDocument):
    doc.require("operator_T")
    return doc.operator_t


def _equation_lines(report: EquationReport) -> tuple[list[str], list[str]]:
    lines, witnesses = [], []
    for name, rep in report.equations:
        lines.append(f"{name}: {'pass' if rep.ok else 'FAIL'}")
        if not rep.ok and rep.violation is not None:
            witnesses.append(rep.violation.describe())
    return lines, witnesses


# -- command handlers ------------------------------------------------------
# each returns (verdict_ok, payload dict, human lines)


def cmd_validate(doc: InstanceDocument, args) -> tuple[bool, dict, list[str]]:
    results: dict[str, Any] = {}
    lines = []
    witnesses = []
    ok = True
    if doc.lie_dim is not None:
        out = validate_lie(doc.lie_dim, doc.brackets or {})
        good = not isinstance(out, Violation)
        results["lie_algebra"] = good
        lines.append(f"lie_algebra: {'pass' if good else 'FAIL'}")
        if not good:
            ok = False
            witnesses.append(out.describe())
        else:
            if doc.action is not None:
                rep = validate_rep(out, doc.module_dim, doc.action)
                good = not isinstance(rep, Violation)
                results["representation"] = good
                lines.append(f"representation: {'pass' if good else 'FAIL'}")
                if not good:
                    ok = False
                    witnesses.append(rep.describe())
                elif doc.cocycle_h is not None:
                    closed = is_two_cocycle(out, rep, doc.cocycle_h)
                    results["cocycle_H"] = closed.ok
                    lines.append(f"cocycle_H: {'pass' if closed.ok else 'FAIL'}")
                    if not closed.ok:
                        ok = False
                        witnesses.extend(_witness(closed.violation))
    if doc.ns is not None:
        rep = nslie.ns_check(doc.ns)
        results["ns_lie"] = rep.ok
        lines.append(f"ns_lie: {'pass' if rep.ok else 'FAIL'}")
        if not rep.ok:
            ok = False
            sub, wit = _equation_lines(rep)
            witnesses.extend(wit)
    if doc.assoc is not None:
        rep = nslie.assoc_ns_check(doc.assoc)
        results["assoc_ns"] = rep.ok
        lines.append(f"assoc_ns: {'pass' if rep.ok else 'FAIL'}")
        if not rep.ok:
            ok = False
            sub, wit = _equation_lines(rep)
            witnesses.extend(wit)
    if not results:
        raise MissingSection("nothing to validate: no recognized sections present")
    return ok, {"sections": results, "witnesses": witnesses}, lines + witnesses


def cmd_ce_cohomology(doc, args):
    algebra = _algebra(doc)
    rep = _representation(doc, algebra)
    dims = ce_cohomology_dims(algebra, rep, args.nmax)
    lines = [f"H^{n} dimension: {d}" for n, d in enumerate(dims)]
    return True, {"dimensions": dims}, lines


def cmd_check_trb(doc, args):
    setup = _setup(doc)
    t = _operator(doc)
    rep = check_trb(setup, t)
    lines = [f"twisted Rota-Baxter identity: {'pass' if rep.ok else 'FAIL'}"]
    return rep.ok, {"witnesses": _witness(rep.violation)}, lines + _witness(rep.violation)


def cmd_check_mc(doc, args):
    setup = _setup(doc)
    t = _operator(doc)
    defect = linfty.mc_defect(setup, t)
    direct = check_trb(setup, t)
    if defect.is_zero() != direct.ok:
        raise InvalidStructure("Maurer-Cartan and direct verdicts disagree; bug")
    ok = defect.is_zero()
    lines = [
        f"Maurer-Cartan defect zero: {'pass' if ok else 'FAIL'}",
        f"direct identity agrees: {'pass' if direct.ok == ok else 'FAIL'}",
    ]
    return ok, {"maurer_cartan": ok, "direct": direct.ok, "witnesses": _witness(direct.violation)}, lines


def cmd_cohomology_of_t(doc, args):
    setup = _setup(doc)
    t = _operator(doc)
    _need_pass("twisted Rota-Baxter identity", check_trb(setup, t))
    dims = linfty.cohomology_of_t_dims(setup, t, args.nmax)
    lines = [f"H^{n}_T dimension: {d}" for n, d in enumerate(dims)]
    return True, {"dimensions": dims}, lines


def cmd_check_reynolds(doc, args):
    algebra = _algebra(doc)
    doc.require("operator_T")
    r = doc.operator_t
    if r.rows != algebra.dim or r.cols != algebra.dim:
        raise InvalidStructure("Reynolds operator must be square of the algebra dimension")
    rep = reynolds_check(algebra, r)
    lines = [f"Reynolds identity: {'pass' if rep.ok else 'FAIL'}"]
    return rep.ok, {"witnesses": _witness(rep.violation)}, lines + _witness(rep.violation)


def cmd_reynolds_from_derivation(doc, args):
    algebra = _algebra(doc)
    doc.require("derivation_d")
    r = reynolds_from_derivation(algebra, doc.derivation_d)
    lines = ["Reynolds operator from the derivation series:"]
    lines += ["  " + " ".join(row) for row in matrix_json(r)]
    lines.append("Reynolds identity: pass")
    return True, {"operator": matrix_json(r)}, lines


def cmd_witt_report(doc, args):
    rows = witt_report(args.nmax)
    all_ok = all(r.ok for r in rows)
    lines = ["m n lhs rhs induced ok"]
    for r in rows:
        lines.append(
            f"{r.m} {r.n} {scalar_str(r.lhs)} {scalar_str(r.rhs)} "
            f"{scalar_str(r.induced)} {'yes' if r.ok else 'NO'}"
        )
    lines.append(f"rows: {len(rows)}  all pass: {'yes' if all_ok else 'NO'}")
    payload = {
        "rows": [
            {
                "m": r.m,
                "n": r.n,
                "lhs": scalar_str(r.lhs),
                "rhs": scalar_str(r.rhs),
                "induced": scalar_str(r.induced),
                "ok": r.ok,
            }
            for r in rows
        ]
    }
    return all_ok, payload, lines


def cmd_check_r_matrix(doc, args):
    algebra = _algebra(doc)
    doc.require("operator_T")
    psi = doc.psi if doc.psi is not None else Cochain.zero(3, algebra.dim, 1)
    verdict, dual = r_matrix_check(algebra, doc.operator_t, psi)
    lines = [f"twisted triangular r-matrix: {'pass' if verdict.ok else 'FAIL'}"]
    payload: dict[str, Any] = {"witnesses": _witness(verdict.violation)}
    if dual is not None:
        payload["dual_bracket"] = cochain_json(dual.bracket)
        lines.append("dual bracket computed; r is a morphism onto it")
    return verdict.ok, payload, lines + _witness(verdict.violation)


def cmd_check_ns(doc, args):
    doc.require("ns_lie")
    rep = nslie.ns_check(doc.ns)
    lines, witnesses = _equation_lines(rep)
    return rep.ok, {"equations": rep.verdicts(), "witnesses": witnesses}, lines + witnesses


def cmd_ns_from(doc, args):
    if args.source == "nijenhuis":
        algebra = _algebra(doc)
        doc.require("operator_N")
        ns = nslie.ns_from_nijenhuis(algebra, doc.operator_n)
    elif args.source == "assoc":
        doc.require("assoc_ns")
        ns = nslie.ns_from_assoc(doc.assoc)
    else:
        setup = _setup(doc)
        t = _operator(doc)
        ns = nslie.ns_from_trb(setup, t)
    payload = {"ns_lie": ns_json(ns)}
    lines = ["constructed NS-Lie structure:", json.dumps(payload["ns_lie"], sort_keys=True)]
    lines.append("ns_check: pass")
    return True, payload, lines


def cmd_trb_from_ns(doc, args):
    doc.require("ns_lie")
    setup, ident = nslie.trb_from_ns(doc.ns)
    payload = {
        "adjacent_bracket": cochain_json(setup.algebra.bracket),
        "cocycle_H": cochain_json(setup.cocycle),
        "operator": matrix_json(ident),
    }
    lines = [
        "adjacent Lie algebra bracket: " + json.dumps(payload["adjacent_bracket"], sort_keys=True),
        "twist: " + json.dumps(payload["cocycle_H"], sort_keys=True),
        "identity operator passes: pass",
    ]
    return True, payload, lines


def cmd_deform_check(doc, args):
    setup = _setup(doc)
    t = _operator(doc)
    doc.require("deformation")
    _need_pass("twisted Rota-Baxter identity (base)", check_trb(setup, t))
    d = deform_mod.formal_deformation(setup, t, doc.deformation)
    up_to = args.order if args.order is not None else d.order
    defects = deform_mod.deformation_equation_defects(d, up_to=up_to)
    verdicts = [dd.is_zero() for dd in defects]
    lines = [f"order {n+1} defect zero: {'pass' if v else 'FAIL'}" for n, v in enumerate(verdicts)]
    ok = all(verdicts)
    return ok, {"orders": verdicts}, lines


def cmd_nijenhuis_element(doc, args):
    setup = _setup(doc)
    t = _operator(doc)
    _need_pass("twisted Rota-Baxter identity", check_trb(setup, t))
    x = _parse_vector_flag(args.x, setup.dim)
    rep = deform_mod.nijenhuis_element_check(setup, t, x)
    lines, witnesses = _equation_lines(rep)
    return rep.ok, {"equations": rep.verdicts(), "witnesses": witnesses}, lines + witnesses


def cmd_rigidity_probe(doc, args):
    setup = _setup(doc)
    t = _operator(doc)
    _need_pass("twisted Rota-Baxter identity", check_trb(setup, t))
    report = deform_mod.rigidity_probe(setup, t, grid=args.grid)
    lines = [f"verdict: {report.verdict}"]
    for k, probe in enumerate(report.probes):
        status = "nijenhuis preimage found" if probe.nijenhuis else "no verified preimage"
        lines.append(f"cocycle {k + 1}: {status}")
    payload = {
        "verdict": report.verdict,
        "probes": [
            {
                "cocycle": vector_json(p.cocycle),
                "preimage": None if p.preimage is None else vector_json(p.preimage),
                "nijenhuis": p.nijenhuis,
            }
            for p in report.probes
        ],
    }
    return report.established, payload, lines


def cmd_check_tgcs(doc, args):
    setup = _setup(doc)
    doc.require("gcs_components")
    j = tgcs.gcs_components(setup, *doc.gcs)
    components = tgcs.tgcs_check_components(setup, j)
    direct = tgcs.tgcs_check_direct(setup, j)
    lines, witnesses = _equation_lines(components)
    lines.append(f"direct definition: {'pass' if direct.ok else 'FAIL'}")
    ok = components.ok and direct.ok
    return ok, {"equations": components.verdicts(), "direct": direct.ok, "witnesses": witnesses}, lines + witnesses


def cmd_lie_tgcs(doc, args):
    algebra = _algebra(doc)
    doc.require("lie_gcs")
    psi = doc.psi if doc.psi is not None else Cochain.zero(3, algebra.dim, 1)
    rep = tgcs.lie_tgcs_check(algebra, psi, doc.lie_gcs)
    lines, witnesses = _equation_lines(rep)
    return rep.ok, {"equations": rep.verdicts(), "witnesses": witnesses}, lines + witnesses


def cmd_gauge(doc, args):
    setup = _setup(doc)
    t = _operator(doc)
    _need_pass("twisted Rota-Baxter identity", check_trb(setup, t))
    b = _parse_matrix_flag(args.b, setup.module_dim, setup.dim, "--b")
    t_b = gauge_transform(setup, t, b)
    lines = ["gauge transform:"]
    lines += ["  " + " ".join(row) for row in matrix_json(t_b)]
    lines.append("transformed operator passes: pass")
    return True, {"operator": matrix_json(t_b)}, lines


def cmd_shift(doc, args):
    setup = _setup(doc)
    t = _operator(doc)
    _need_pass("twisted Rota-Baxter identity", check_trb(setup, t))
    h = _parse_matrix_flag(args.h, setup.module_dim, setup.dim, "--h")
    shifted, t_new = shift_by_coboundary(setup, t, h)
    lines = ["shifted twist: " + json.dumps(cochain_json(shifted.cocycle), sort_keys=True)]
    lines += ["shifted operator:"]
    lines += ["  " + " ".join(row) for row in matrix_json(t_new)]
    lines.append("shifted operator passes: pass")
    return True, {"cocycle_H": cochain_json(shifted.cocycle), "operator": matrix_json(t_new)}, lines


def _parse_vector_flag(text: str, length: int):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != length:
        raise InvalidStructure(f"--x needs {length} comma-separated rationals")
    try:
        return tuple(scalar(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidStructure(f"--x: bad scalar ({exc})") from exc


def _parse_matrix_flag(text: str, rows: int, cols: int, flag: str) -> Matrix:
    """Inline JSON rows, or a path to a JSON file holding them."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError:
        try:
            with open(text, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidStructure(f"{flag}: neither inline JSON nor a readable JSON file ({exc})")
    return parse_matrix(raw, rows, cols, flag)


COMMANDS = {
    "validate": (cmd_validate, True),
    "ce-cohomology": (cmd_ce_cohomology, True),
    "check-trb": (cmd_check_trb, True),
    "check-mc": (cmd_check_mc, True),
    "cohomology-of-t": (cmd_cohomology_of_t, True),
    "check-reynolds": (cmd_check_reynolds, True),
    "reynolds-from-derivation": (cmd_reynolds_from_derivation, True),
    "witt-report": (cmd_witt_report, False),
    "check-r-matrix": (cmd_check_r_matrix, True),
    "check-ns": (cmd_check_ns, True),
    "ns-from": (cmd_ns_from, True),
    "trb-from-ns": (cmd_trb_from_ns, True),
    "deform-check": (cmd_deform_check, True),
    "nijenhuis-element": (cmd_nijenhuis_element, True),
    "rigidity-probe": (cmd_rigidity_probe, True),
    "check-tgcs": (cmd_check_tgcs, True),
    "lie-tgcs": (cmd_lie_tgcs, True),
    "gauge": (cmd_gauge, True),
    "shift": (cmd_shift, True),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistrb",
        description="Exact verification toolkit for twisted Rota-Baxter operators on Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, needs_input: bool, head=None, **extra):
        p = sub.add_parser(name)
        if head is not None:
            p.add_argument(head[0], **head[1])
        if needs_input:
            p.add_argument("input", help="instance JSON file")
        else:
            p.add_argument("input", nargs="?", help="ignored for this command")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--seed", type=int, default=0, help="echoed in the report header")
        for flag, kwargs in extra.items():
            p.add_argument(flag, **kwargs)
        return p

    add("validate", True)
    add("ce-cohomology", True, **{"--nmax": dict(type=int, default=2)})
    add("check-trb", True)
    add("check-mc", True)
    add("cohomology-of-t", True, **{"--nmax": dict(type=int, default=2)})
    add("check-reynolds", True)
    add("reynolds-from-derivation", True)
    add("witt-report", False, **{"--nmax": dict(type=int, default=10)})
    add("check-r-matrix", True)
    add("check-ns", True)
    add("ns-from", True, head=("source", dict(choices=["nijenhuis", "assoc", "trb"])))
    add("trb-from-ns", True)
    add("deform-check", True, **{"--order": dict(type=int, default=None)})
    add("nijenhuis-element", True, **{"--x": dict(required=True, help="comma-separated rationals")})
    add("rigidity-probe", True, **{"--grid": dict(type=int, default=2)})
    add("check-tgcs", True)
    add("lie-tgcs", True)
    add("gauge", True, **{"--b": dict(required=True, help="matrix as inline JSON or a file path")})
    add("shift", True, **{"--h": dict(required=True, help="matrix as inline JSON or a file path")})
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return 2 if exc.code not in (0,) else 0
    handler, needs_input = COMMANDS[args.command]
    try:
        doc = InstanceDocument()
        if needs_input:
            if not args.input:
                print("error: this command needs an instance file", file=sys.stderr)
                return 2
            doc = load_instance(args.input)
        elif args.input:
            doc = load_instance(args.input)
        ok, payload, lines = handler(doc, args)
        verdict = "pass" if ok else "fail"
        exit_code = 0 if ok else 1
    except (MissingSection,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MathFailure as exc:
        _emit(args, "fail", {"failed_check": exc.name, "witnesses": exc.witnesses},
              [f"{exc.name}: FAIL"] + exc.witnesses)
        return 1
    except InvalidStructure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ToolkitError as exc:
        _emit(args, "fail", {"failed_check": type(exc).__name__, "witnesses": [str(exc)]},
              [f"{type(exc).__name__}: {exc}"])
        return 1
    _emit(args, verdict, payload, lines)
    return exit_code


def _emit(args, verdict: str, payload: dict, lines: list[str]) -> None:
    if getattr(args, "json", False):
        out = {
            "command": args.command,
            "seed": args.seed,
            "verdict": verdict,
        }
        out.update(payload)
        print(json.dumps(out, sort_keys=True, default=str))
    else:
        print(f"command: {args.command}")
        print(f"seed: {args.seed}")
        print(f"verdict: {verdict}")
        for line in lines:
            print(line)


if __name__ == "__main__":
    sys.exit(main())
