"""Parsing and serialization of instance documents.

One JSON document carries every section a command might need; commands pick
the sections they use and complain precisely about missing ones.  Basis
indices in files are 1-based ("[1,2]" keys, i < j for skew tables); scalars
are exact rationals written as integers or "p/q" strings.  Loading performs
shape and cross-dimension checks only; mathematical validation (Jacobi,
representation and cocycle axioms) belongs to the commands.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .errors import InvalidStructure
from .exactlin import Matrix, scalar, scalar_str
from .multilin import Bilinear, Cochain
from .nslie import AssocNs, NsLie
from .tgcs import LieGcsTriple


class MissingSection(InvalidStructure):
    """A command needs a section the document does not carry."""


def _parse_key(key: str, arity: int, dim: int, where: str) -> tuple[int, ...]:
    try:
        idx = json.loads(key)
    except json.JSONDecodeError as exc:
        raise InvalidStructure(f"{where}: bad index key {key!r}") from exc
    if not isinstance(idx, list) or len(idx) != arity:
        raise InvalidStructure(f"{where}: key {key!r} must list {arity} indices")
    for i in idx:
        if not isinstance(i, int) or not (1 <= i <= dim):
            raise InvalidStructure(f"{where}: index {i} out of range 1..{dim} in {key!r}")
    return tuple(i - 1 for i in idx)


def _parse_vector(raw: Sequence, length: int, where: str) -> tuple[Fraction, ...]:
    if not isinstance(raw, list) or len(raw) != length:
        raise InvalidStructure(f"{where}: expected a list of {length} scalars")
    try:
        return tuple(scalar(x) for x in raw)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InvalidStructure(f"{where}: bad scalar ({exc})") from exc


def parse_matrix(raw: Any, rows: int | None, cols: int | None, where: str) -> Matrix:
    if not isinstance(raw, list) or not raw or not all(isinstance(r, list) for r in raw):
        raise InvalidStructure(f"{where}: expected a list of rows")
    r, c = len(raw), len(raw[0])
    if rows is not None and r != rows:
        raise InvalidStructure(f"{where}: expected {rows} rows, got {r}")
    if cols is not None and c != cols:
        raise InvalidStructure(f"{where}: expected {cols} columns, got {c}")
    entries = []
    for row in raw:
        entries.extend(_parse_vector(row, c, where))
    return Matrix(r, c, entries)


def _parse_cochain(
    raw: Mapping, degree: int, source_dim: int, target_dim: int, where: str
) -> Cochain:
    if not isinstance(raw, Mapping):
        raise InvalidStructure(f"{where}: expected an object")
    for field, expected in (("degree", degree), ("source_dim", source_dim), ("target_dim", target_dim)):
        if field in raw and raw[field] != expected:
            raise InvalidStructure(f"{where}: {field} must be {expected}, got {raw[field]}")
    values = raw.get("values", {})
    parsed = {}
    for key, vec in values.items():
        t = _parse_key(key, degree, source_dim, where)
        if any(a >= b for a, b in zip(t, t[1:])):
            raise InvalidStructure(f"{where}: key {key!r} must be strictly increasing")
        parsed[t] = _parse_vector(vec, target_dim, f"{where}[{key}]")
    return Cochain.from_values(degree, source_dim, target_dim, parsed)


def _parse_bilinear(raw: Mapping, dim: int, where: str) -> Bilinear:
    parsed = {}
    for key, vec in raw.items():
        i, j = _parse_key(key, 2, dim, where)
        parsed[(i, j)] = _parse_vector(vec, dim, f"{where}[{key}]")
    return Bilinear.from_values(dim, dim, parsed)


@dataclass(frozen=True)
class InstanceDocument:
    """Parsed optional sections of one instance file."""

    lie_dim: int | None = None
    brackets: dict | None = None
    module_dim: int | None = None
    action: tuple[Matrix, ...] | None = None
    cocycle_h: Cochain | None = None
    operator_t: Matrix | None = None
    operator_n: Matrix | None = None
    derivation_d: Matrix | None = None
    ns: NsLie | None = None
    assoc: AssocNs | None = None
    gcs: tuple[Matrix, Matrix, Matrix, Matrix] | None = None
    lie_gcs: LieGcsTriple | None = None
    deformation: tuple[Matrix, ...] | None = None
    psi: Cochain | None = None

    def require(self, *names: str) -> None:
        pretty = {
            "lie_algebra": self.lie_dim,
            "representation": self.action,
            "operator_T": self.operator_t,
            "operator_N": self.operator_n,
            "derivation_d": self.derivation_d,
            "ns_lie": self.ns,
            "assoc_ns": self.assoc,
            "gcs_components": self.gcs,
            "lie_gcs": self.lie_gcs,
            "deformation": self.deformation,
            "psi": self.psi,
            "cocycle_H": self.cocycle_h,
        }
        missing = [n for n in names if pretty.get(n) is None]
        if missing:
            raise MissingSection(f"missing section(s): {', '.join(missing)}")


def parse_instance(data: Mapping) -> InstanceDocument:
    if not isinstance(data, Mapping):
        raise InvalidStructure("instance document must be a JSON object")
    fields: dict[str, Any] = {}

    lie = data.get("lie_algebra")
    dim = None
    if lie is not None:
        dim = lie.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise InvalidStructure("lie_algebra.dim must be a positive integer")
        table = {}
        for key, vec in lie.get("brackets", {}).items():
            i, j = _parse_key(key, 2, dim, "lie_algebra.brackets")
            table[(i, j)] = _parse_vector(vec, dim, f"lie_algebra.brackets[{key}]")
        fields["lie_dim"] = dim
        fields["brackets"] = table

    mod = data.get("module")
    m_dim = None
    if mod is not None:
        m_dim = mod.get("dim")
        if not isinstance(m_dim, int) or m_dim < 1:
            raise InvalidStructure("module.dim must be a positive integer")

    rep = data.get("representation")
    if rep is not None:
        if dim is None:
            raise InvalidStructure("representation needs a lie_algebra section")
        rep_dim = rep.get("module_dim", m_dim)
        if not isinstance(rep_dim, int) or rep_dim < 1:
            raise InvalidStructure("representation.module_dim must be a positive integer")
        if m_dim is not None and rep_dim != m_dim:
            raise InvalidStructure("module.dim and representation.module_dim disagree")
        m_dim = rep_dim
        raw_action = rep.get("action")
        if not isinstance(raw_action, list) or len(raw_action) != dim:
            raise InvalidStructure(f"representation.action must list {dim} matrices")
        fields["action"] = tuple(
            parse_matrix(a, m_dim, m_dim, f"representation.action[{k}]")
            for k, a in enumerate(raw_action)
        )
    fields["module_dim"] = m_dim

    if "cocycle_H" in data:
        if dim is None or m_dim is None:
            raise InvalidStructure("cocycle_H needs lie_algebra and a module dimension")
        fields["cocycle_h"] = _parse_cochain(data["cocycle_H"], 2, dim, m_dim, "cocycle_H")

    if "operator_T" in data:
        fields["operator_t"] = parse_matrix(data["operator_T"], dim, m_dim, "operator_T")
    if "operator_N" in data:
        fields["operator_n"] = parse_matrix(data["operator_N"], dim, dim, "operator_N")
    if "derivation_d" in data:
        fields["derivation_d"] = parse_matrix(data["derivation_d"], dim, dim, "derivation_d")

    ns = data.get("ns_lie")
    if ns is not None:
        ns_dim = ns.get("dim")
        if not isinstance(ns_dim, int) or ns_dim < 1:
            raise InvalidStructure("ns_lie.dim must be a positive integer")
        circ = _parse_bilinear(ns.get("circ", {}), ns_dim, "ns_lie.circ")
        vee_vals = {}
        for key, vec in ns.get("vee", {}).items():
            i, j = _parse_key(key, 2, ns_dim, "ns_lie.vee")
            if i >= j:
                raise InvalidStructure(f"ns_lie.vee key {key!r} must have i < j")
            vee_vals[(i, j)] = _parse_vector(vec, ns_dim, f"ns_lie.vee[{key}]")
        fields["ns"] = NsLie(ns_dim, circ, Cochain.from_values(2, ns_dim, ns_dim, vee_vals))

    assoc = data.get("assoc_ns")
    if assoc is not None:
        a_dim = assoc.get("dim")
        if not isinstance(a_dim, int) or a_dim < 1:
            raise InvalidStructure("assoc_ns.dim must be a positive integer")
        fields["assoc"] = AssocNs(
            a_dim,
            _parse_bilinear(assoc.get("prec", {}), a_dim, "assoc_ns.prec"),
            _parse_bilinear(assoc.get("succ", {}), a_dim, "assoc_ns.succ"),
            _parse_bilinear(assoc.get("box", {}), a_dim, "assoc_ns.box"),
        )

    gcs = data.get("gcs_components")
    if gcs is not None:
        if dim is None or m_dim is None:
            raise InvalidStructure("gcs_components needs lie_algebra and a module dimension")
        fields["gcs"] = (
            parse_matrix(gcs.get("N"), dim, dim, "gcs_components.N"),
            parse_matrix(gcs.get("T"), dim, m_dim, "gcs_components.T"),
            parse_matrix(gcs.get("sigma"), m_dim, dim, "gcs_components.sigma"),
            parse_matrix(gcs.get("S"), m_dim, m_dim, "gcs_components.S"),
        )

    lg = data.get("lie_gcs")
    if lg is not None:
        if dim is None:
            raise InvalidStructure("lie_gcs needs a lie_algebra section")
        fields["lie_gcs"] = LieGcsTriple(
            parse_matrix(lg.get("N"), dim, dim, "lie_gcs.N"),
            parse_matrix(lg.get("r"), dim, dim, "lie_gcs.r"),
            parse_matrix(lg.get("sigma"), dim, dim, "lie_gcs.sigma"),
        )

    defo = data.get("deformation")
    if defo is not None:
        if dim is None or m_dim is None:
            raise InvalidStructure("deformation needs lie_algebra and a module dimension")
        coeffs = defo.get("coefficients")
        if not isinstance(coeffs, list) or not coeffs:
            raise InvalidStructure("deformation.coefficients must be a nonempty list")
        order = defo.get("order", len(coeffs))
        if order != len(coeffs):
            raise InvalidStructure("deformation.order disagrees with coefficient count")
        fields["deformation"] = tuple(
            parse_matrix(c, dim, m_dim, f"deformation.coefficients[{k}]")
            for k, c in enumerate(coeffs)
        )

    if "psi" in data:
        if dim is None:
            raise InvalidStructure("psi needs a lie_algebra section")
        fields["psi"] = _parse_cochain(data["psi"], 3, dim, 1, "psi")

    return InstanceDocument(**fields)


def load_instance(path: str) -> InstanceDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidStructure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidStructure(f"{path} is not valid JSON: {exc}") from exc
    return parse_instance(data)


# -- serialization helpers ---------------------------------------------


def matrix_json(m: Matrix) -> list[list[str]]:
    return [[scalar_str(x) for x in m.row(i)] for i in range(m.rows)]


def vector_json(v) -> list[str]:
    return [scalar_str(x) for x in v]


def cochain_json(c: Cochain) -> dict:
    values = {}
    for t in c.basis_tuples():
        col = c.value_on_basis(t)
        if any(x != 0 for x in col):
            key = json.dumps([i + 1 for i in t], separators=(",", ""))
            values[key] = vector_json(col)
    return {
        "degree": c.degree,
        "source_dim": c.source_dim,
        "target_dim": c.target_dim,
        "values": values,
    }


def bilinear_json(b: Bilinear) -> dict:
    out = {}
    for i in range(b.source_dim):
        for j in range(b.source_dim):
            col = b.value_on_basis(i, j)
            if any(x != 0 for x in col):
                out[json.dumps([i + 1, j + 1], separators=(",", ""))] = vector_json(col)
    return out


def ns_json(ns: NsLie) -> dict:
    vee = {}
    for t in ns.vee.basis_tuples():
        col = ns.vee.value_on_basis(t)
        if any(x != 0 for x in col):
            vee[json.dumps([i + 1 for i in t], separators=(",", ""))] = vector_json(col)
    return {"dim": ns.dim, "circ": bilinear_json(ns.circ), "vee": vee}
