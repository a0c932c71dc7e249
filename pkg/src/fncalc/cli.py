"""Command-line interface: manifest loading, check dispatch, reports.

Manifests are JSON documents describing a chart, named objects on it
(endomorphism fields, vector-valued forms, algebroids, bundle algebroids,
semisprays) and a list of checks. Matrix convention throughout: entry
[i][j] is the coefficient of the i-th coordinate field in the image of the
j-th one. Reports are deterministic; JSON output is byte-identical across
runs for a fixed manifest and seed (timings appear only in the text format).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .algebroid import (
    AlgebroidError,
    BundleAlgebroid,
    SingularAnchorError,
    TangentAlgebroid,
    check_axioms,
    check_bundle_axioms,
    check_cohomology,
    derivation_from_algebroid,
    invertible_algebroid,
    verify_trivial_isomorphism,
)
from .calculus import (
    CalculusError,
    Chart,
    DerivationDeg1,
    KForm,
    VectorField,
    VectorValuedForm,
    nijenhuis_torsion,
)
from .scalar import ScalarError, ScalarExpr
from .structures import (
    StructureError,
    complex_algebroid,
    connection_algebroid,
    connection_from_semispray,
    d_components,
    foliation_connection,
    idempotent_algebroid,
    product_algebroid,
    semispray,
    tangent_data_for_chart,
)

__all__ = ["Manifest", "ManifestError", "load_manifest", "run_check", "emit", "main"]

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

CHECK_KINDS = (
    "torsion",
    "cohomology",
    "axioms",
    "idempotent",
    "complex",
    "product",
    "foliation",
    "tangent",
    "bundle",
    "decompose",
    "isomorphism",
)


class ManifestError(Exception):
    """Invalid manifest contents: bad syntax, shapes or unresolved names."""


@dataclass
class Manifest:
    """A fully parsed manifest; every named object is already validated."""

    path: str
    chart: Chart
    seed: int
    probe_degree: int
    points: int
    endomorphisms: dict[str, VectorValuedForm]
    forms: dict[str, VectorValuedForm]
    algebroids: dict[str, TangentAlgebroid]
    bundle_algebroids: dict[str, BundleAlgebroid]
    sprays: dict[str, VectorField]
    checks: list[dict[str, Any]] = field(default_factory=list)


@dataclass
class CheckRecord:
    """One per-check report row; ``status`` is pass/fail/error."""

    name: str
    construction: str
    status: str
    residuals: list[dict[str, str]]
    message: str = ""
    details: dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    def as_json(self) -> dict[str, Any]:
        out = {
            "construction": self.construction,
            "name": self.name,
            "residuals": self.residuals,
            "status": self.status,
        }
        if self.message:
            out["message"] = self.message
        if self.details:
            out["details"] = self.details
        return out


# ---------------------------------------------------------------------------
# Manifest loading
# ---------------------------------------------------------------------------


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise ManifestError(message)


def _parse_scalar(chart: Chart, text: Any, where: str) -> ScalarExpr:
    _expect(isinstance(text, str), f"{where}: expected an expression string")
    try:
        return chart.scalar(text)
    except ScalarError as exc:
        raise ManifestError(f"{where}: {exc}") from exc


def _parse_matrix(chart: Chart, rows: Any, where: str) -> VectorValuedForm:
    dim = chart.dim
    _expect(
        isinstance(rows, list) and len(rows) == dim,
        f"{where}: expected {dim} rows",
    )
    mat = []
    for i, row in enumerate(rows):
        _expect(
            isinstance(row, list) and len(row) == dim,
            f"{where}: row {i + 1} must have {dim} entries",
        )
        mat.append(
            [_parse_scalar(chart, e, f"{where}[{i + 1}][{j + 1}]") for j, e in enumerate(row)]
        )
    return VectorValuedForm.from_matrix(chart, mat)


def _parse_multi_index(key: str, degree: int, dim: int, where: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(p) for p in key.split(","))
    except ValueError:
        raise ManifestError(f"{where}: bad multi-index {key!r}") from None
    _expect(len(parts) == degree, f"{where}: multi-index {key!r} needs {degree} entries")
    idx = tuple(p - 1 for p in parts)
    _expect(
        all(0 <= p < dim for p in idx) and all(a < b for a, b in zip(idx, idx[1:])),
        f"{where}: multi-index {key!r} must be increasing 1-based coordinates",
    )
    return idx


def _parse_form(chart: Chart, spec: Any, where: str) -> VectorValuedForm:
    """A vector-valued form: per multi-index, one component per coordinate field."""
    _expect(isinstance(spec, dict), f"{where}: expected an object")
    degree = spec.get("degree")
    _expect(isinstance(degree, int) and degree >= 0, f"{where}: bad degree")
    entries = spec.get("entries", {})
    _expect(isinstance(entries, dict), f"{where}: entries must be an object")
    comps: list[dict[tuple[int, ...], ScalarExpr]] = [dict() for _ in range(chart.dim)]
    for key, value in entries.items():
        idx = _parse_multi_index(key, degree, chart.dim, where)
        _expect(
            isinstance(value, list) and len(value) == chart.dim,
            f"{where}: entry {key!r} needs {chart.dim} components",
        )
        for j, text in enumerate(value):
            s = _parse_scalar(chart, text, f"{where}[{key}][{j + 1}]")
            if not s.is_zero:
                comps[j][idx] = s
    return VectorValuedForm(
        chart, degree, [KForm(chart, degree, c) for c in comps]
    )


def _resolve_correction(
    chart: Chart,
    anchor: VectorValuedForm,
    spec: str,
    forms: dict[str, VectorValuedForm],
    where: str,
) -> VectorValuedForm:
    if spec in forms:
        form = forms[spec]
        _expect(form.degree == 2, f"{where}: correction {spec!r} must have degree 2")
        return form
    if spec == "auto:zero":
        return VectorValuedForm.zero(chart, 2)
    if spec == "auto:torsion":
        return -nijenhuis_torsion(anchor)
    if spec == "auto:invertible":
        try:
            return invertible_algebroid(anchor).correction
        except SingularAnchorError as exc:
            raise ManifestError(f"{where}: {exc}") from exc
    raise ManifestError(f"{where}: unknown correction {spec!r}")


def _parse_structure_key(key: str, rank: int, where: str) -> tuple[int, int, int]:
    if not (key.startswith("c[") and key.endswith("]")):
        raise ManifestError(f"{where}: structure key {key!r} must look like c[a,b,c]")
    try:
        a, b, c = (int(p) for p in key[2:-1].split(","))
    except ValueError:
        raise ManifestError(f"{where}: bad structure key {key!r}") from None
    _expect(
        all(1 <= p <= rank for p in (a, b, c)),
        f"{where}: indices in {key!r} out of range",
    )
    return a - 1, b - 1, c - 1


def _parse_bundle(chart: Chart, spec: Any, where: str) -> BundleAlgebroid:
    _expect(isinstance(spec, dict), f"{where}: expected an object")
    rank = spec.get("rank")
    _expect(isinstance(rank, int) and rank >= 1, f"{where}: bad rank")
    anchor_rows = spec.get("anchor")
    _expect(
        isinstance(anchor_rows, list) and len(anchor_rows) == rank,
        f"{where}: anchor must have {rank} rows",
    )
    anchor = []
    for a, row in enumerate(anchor_rows):
        _expect(
            isinstance(row, list) and len(row) == chart.dim,
            f"{where}: anchor row {a + 1} must have {chart.dim} entries",
        )
        anchor.append(
            [_parse_scalar(chart, e, f"{where}.anchor[{a + 1}][{i + 1}]") for i, e in enumerate(row)]
        )
    structure: dict[tuple[int, int], list[ScalarExpr]] = {}
    raw = spec.get("structure", {})
    _expect(isinstance(raw, dict), f"{where}: structure must be an object")
    for key, text in raw.items():
        a, b, c = _parse_structure_key(key, rank, where)
        value = _parse_scalar(chart, text, f"{where}.structure[{key}]")
        if a == b:
            _expect(value.is_zero, f"{where}: {key} must vanish (antisymmetry)")
            continue
        lo, hi = min(a, b), max(a, b)
        if a > b:
            value = -value
        row = structure.setdefault((lo, hi), [chart.zero] * rank)
        _expect(
            row[c].is_zero or row[c] == value,
            f"{where}: {key} conflicts with its antisymmetric partner",
        )
        row[c] = value
    try:
        return BundleAlgebroid(chart, rank, anchor, structure)
    except AlgebroidError as exc:
        raise ManifestError(f"{where}: {exc}") from exc


def load_manifest(
    path: str, *, seed: int | None = None, probe_degree: int | None = None
) -> Manifest:
    """Parse and fully resolve a manifest file; raises :class:`ManifestError`."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ManifestError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ManifestError(
            f"{path}: syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    _expect(isinstance(doc, dict), f"{path}: top level must be an object")

    chart_spec = doc.get("chart")
    _expect(isinstance(chart_spec, dict), f"{path}: missing chart object")
    coords = chart_spec.get("coords")
    _expect(
        isinstance(coords, list) and coords and all(isinstance(c, str) for c in coords),
        f"{path}: chart.coords must be a nonempty list of names",
    )
    is_complex = bool(chart_spec.get("complex", False))
    try:
        chart = Chart(tuple(coords), is_complex)
    except ScalarError as exc:
        raise ManifestError(f"{path}: {exc}") from exc

    def _int_field(name: str, default: int, override: int | None) -> int:
        if override is not None:
            return override
        value = doc.get(name, default)
        _expect(isinstance(value, int), f"{path}: {name} must be an integer")
        return value

    seed = _int_field("seed", 0, seed)
    probe_degree = _int_field("probe_degree", 2, probe_degree)
    points = _int_field("points", 5, None)

    endos = {}
    for name, rows in (doc.get("endomorphisms") or {}).items():
        endos[name] = _parse_matrix(chart, rows, f"endomorphisms.{name}")
    forms = {}
    for name, spec in (doc.get("forms") or {}).items():
        forms[name] = _parse_form(chart, spec, f"forms.{name}")
    algebroids = {}
    for name, spec in (doc.get("algebroids") or {}).items():
        where = f"algebroids.{name}"
        _expect(isinstance(spec, dict), f"{where}: expected an object")
        anchor_name = spec.get("anchor")
        _expect(anchor_name in endos, f"{where}: unknown anchor {anchor_name!r}")
        anchor = endos[anchor_name]
        correction_spec = spec.get("correction", "auto:zero")
        _expect(isinstance(correction_spec, str), f"{where}: correction must be a name")
        correction = _resolve_correction(chart, anchor, correction_spec, forms, where)
        algebroids[name] = TangentAlgebroid(anchor, correction)
    bundles = {}
    for name, spec in (doc.get("bundle_algebroids") or {}).items():
        bundles[name] = _parse_bundle(chart, spec, f"bundle_algebroids.{name}")
    sprays = {}
    if doc.get("sprays"):
        _expect(
            chart.dim % 2 == 0,
            f"{path}: sprays need an even-dimensional tangent chart",
        )
        n = chart.dim // 2
        for name, coeffs in doc["sprays"].items():
            where = f"sprays.{name}"
            _expect(
                isinstance(coeffs, list) and len(coeffs) == n,
                f"{where}: expected {n} force components",
            )
            force = [
                _parse_scalar(chart, c, f"{where}[{i + 1}]") for i, c in enumerate(coeffs)
            ]
            tc = tangent_data_for_chart(chart)
            try:
                sprays[name] = semispray(tc, force)
            except StructureError as exc:
                raise ManifestError(f"{where}: {exc}") from exc

    checks = doc.get("checks", [])
    _expect(isinstance(checks, list), f"{path}: checks must be a list")
    for k, descriptor in enumerate(checks):
        _expect(isinstance(descriptor, dict), f"{path}: checks[{k}] must be an object")
        kind = descriptor.get("kind")
        _expect(kind in CHECK_KINDS, f"{path}: checks[{k}] has unknown kind {kind!r}")

    return Manifest(
        path=path,
        chart=chart,
        seed=seed,
        probe_degree=probe_degree,
        points=points,
        endomorphisms=endos,
        forms=forms,
        algebroids=algebroids,
        bundle_algebroids=bundles,
        sprays=sprays,
        checks=checks,
    )


# ---------------------------------------------------------------------------
# Residual rendering
# ---------------------------------------------------------------------------


def _basis_label(chart: Chart, j: int) -> str:
    return f"d/d{chart.coord_names[j]}"


def _pair_label(chart: Chart, key: tuple[int, ...]) -> str:
    return "(" + ",".join(f"e_{chart.coord_names[j]}" for j in key) + ")"


def _records_vector(slot: str, label: str, v: VectorField) -> list[dict[str, str]]:
    chart = v.chart
    if v.is_zero:
        return [{"basis": label, "slot": slot, "value": "0"}]
    return [
        {"basis": f"{label}->{_basis_label(chart, j)}", "slot": slot, "value": str(c)}
        for j, c in enumerate(v.components)
        if not c.is_zero
    ]


def _records_vvf(slot: str, form: VectorValuedForm) -> list[dict[str, str]]:
    chart = form.chart
    if form.is_zero:
        return [{"basis": "", "slot": slot, "value": "0"}]
    out = []
    for j, comp in enumerate(form.components):
        for key in sorted(comp.coeffs):
            value = comp.coeffs[key]
            if value.is_zero:
                continue
            out.append(
                {
                    "basis": f"{_pair_label(chart, key)}->{_basis_label(chart, j)}",
                    "slot": slot,
                    "value": str(value),
                }
            )
    return out


def _records_labelled_vectors(
    slot: str, items: Sequence[tuple[str, VectorField]]
) -> list[dict[str, str]]:
    out = []
    for label, residual in items:
        out.extend(_records_vector(slot, label, residual))
    return out


def _records_eform(slot: str, label: str, form) -> list[dict[str, str]]:
    if form.is_zero:
        return [{"basis": label, "slot": slot, "value": "0"}]
    out = []
    for key in sorted(form.coeffs):
        value = form.coeffs[key]
        if value.is_zero:
            continue
        basis = label + "->(" + ",".join(f"s{a + 1}" for a in key) + ")"
        out.append({"basis": basis, "slot": slot, "value": str(value)})
    return out


def _records_scalar(slot: str, label: str, value: ScalarExpr) -> list[dict[str, str]]:
    return [{"basis": label, "slot": slot, "value": str(value)}]


def _axiom_records(report) -> list[dict[str, str]]:
    out = _records_labelled_vectors("jacobi", report.jacobi)
    out += _records_labelled_vectors("leibniz", report.leibniz)
    out += _records_labelled_vectors("anchor", report.anchor_morphism)
    return out


def _matrix_strings(form: VectorValuedForm) -> list[list[str]]:
    return [[str(e) for e in row] for row in form.matrix()]


def _form_fragment(form: VectorValuedForm) -> dict[str, Any]:
    chart = form.chart
    entries: dict[str, list[str]] = {}
    keys = set()
    for comp in form.components:
        keys.update(k for k, v in comp.coeffs.items() if not v.is_zero)
    for key in sorted(keys):
        entries[",".join(str(j + 1) for j in key)] = [
            str(comp.coeffs.get(key, chart.zero)) for comp in form.components
        ]
    return {"degree": form.degree, "entries": entries}


# ---------------------------------------------------------------------------
# Check dispatch
# ---------------------------------------------------------------------------


def _get_endo(manifest: Manifest, descriptor: dict[str, Any]) -> VectorValuedForm:
    name = descriptor.get("endo")
    if name not in manifest.endomorphisms:
        raise ManifestError(f"unknown endomorphism {name!r}")
    return manifest.endomorphisms[name]


def _get_algebroid(manifest: Manifest, descriptor: dict[str, Any]) -> TangentAlgebroid:
    name = descriptor.get("algebroid")
    if name not in manifest.algebroids:
        raise ManifestError(f"unknown algebroid {name!r}")
    return manifest.algebroids[name]


def _check_torsion(manifest: Manifest, d: dict[str, Any]) -> tuple[list, dict]:
    torsion = nijenhuis_torsion(_get_endo(manifest, d))
    return _records_vvf("torsion", torsion), {}


def _check_cohomology(manifest: Manifest, d: dict[str, Any]) -> tuple[list, dict]:
    alg = _get_algebroid(manifest, d)
    report = check_cohomology(DerivationDeg1(alg.anchor, alg.correction))
    records = _records_vvf("condition1", report.condition1)
    records += _records_vvf("condition2", report.condition2)
    return records, {}


def _check_axioms(manifest: Manifest, d: dict[str, Any]) -> tuple[list, dict]:
    alg = _get_algebroid(manifest, d)
    report = check_axioms(
        alg, probe_degree=manifest.probe_degree, seed=manifest.seed
    )
    return _axiom_records(report), {}


def _algebroid_records(manifest: Manifest, alg: TangentAlgebroid) -> list:
    report = check_axioms(
        alg, probe_degree=manifest.probe_degree, seed=manifest.seed
    )
    return _axiom_records(report)


def _check_idempotent(manifest: Manifest, d: dict[str, Any]) -> tuple[list, dict]:
    alg = idempotent_algebroid(_get_endo(manifest, d))
    details = {"correction": _form_fragment(alg.correction)}
    return _algebroid_records(manifest, alg), details


def _eps_of(d: dict[str, Any]) -> Fraction:
    raw = d.get("eps", 1)
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError):
            pass
    raise ManifestError(f"bad eps value {raw!r}")


def _check_complex(manifest: Manifest, d: dict[str, Any]) -> tuple[list, dict]:
    alg = complex_algebroid(_get_endo(manifest, d), _eps_of(d))
    details = {"anchor_matrix": _matrix_strings(alg.anchor)}
    return _algebroid_records(manifest, alg), details


def _check_product(manifest: Manifest, d: dict[str, Any]) -> tuple[list, dict]:
    alg = product_algebroid(_get_endo(manifest, d), _eps_of(d))
    details = {"anchor_matrix": _matrix_strings(alg.anchor)}
    return _algebroid_records(manifest, alg), details


def _check_foliation(manifest: Manifest, d: dict[str, Any]) -> tuple[list, dict]:
    data = foliation_connection(_get_endo(manifest, d))
    records = _records_labelled_vectors("bracket_table", data.bracket_table)
    d10, d2m1, d01 = d_components(_get_endo(manifest, d))
    for label, piece in (("d_{2,-1}", d2m1), ("d_{0,1}", d01)):
        report = check_cohomology(piece)
        records += _records_vvf(f"{label}.condition1", report.condition1)
        records += _records_vvf(f"{label}.condition2", report.condition2)
    details = {"curvature": _form_fragment(data.curvature)}
    return records, details


def _check_tangent(manifest: Manifest, d: dict[str, Any]) -> tuple[list, dict]:
    name = d.get("spray")
    if name not in manifest.sprays:
        raise ManifestError(f"unknown spray {name!r}")
    S = manifest.sprays[name]
    tc = tangent_data_for_chart(manifest.chart)
    gamma = connection_from_semispray(tc, S)
    alg = connection_algebroid(gamma)
    records = _algebroid_records(manifest, alg)
    details = {"connection_matrix": _matrix_strings(gamma)}
    return records, details


def _check_bundle(manifest: Manifest, d: dict[str, Any]) -> tuple[list, dict]:
    name = d.get("bundle_algebroid")
    if name not in manifest.bundle_algebroids:
        raise ManifestError(f"unknown bundle algebroid {name!r}")
    report = check_bundle_axioms(manifest.bundle_algebroids[name])
    records = []
    for label, residual in report.d2_on_coordinates:
        records.extend(_records_eform("d2_on_coordinates", label, residual))
    for label, residual in report.d2_on_covectors:
        records.extend(_records_eform("d2_on_covectors", label, residual))
    records += _records_labelled_vectors("anchor", report.anchor_morphism)
    for label, residual in report.jacobi:
        records.extend(_records_scalar("jacobi", label, residual))
    return records, {}


def _check_decompose(manifest: Manifest, d: dict[str, Any]) -> tuple[list, dict]:
    alg = _get_algebroid(manifest, d)
    derivation = derivation_from_algebroid(alg)
    records = _records_vvf("K_residual", derivation.K - alg.anchor)
    records += _records_vvf("L_residual", derivation.L - alg.correction)
    details = {
        "K_matrix": _matrix_strings(derivation.K),
        "L": _form_fragment(derivation.L),
    }
    return records, details


def _check_isomorphism(manifest: Manifest, d: dict[str, Any]) -> tuple[list, dict]:
    alg = _get_algebroid(manifest, d)
    residuals = verify_trivial_isomorphism(
        alg, seed=manifest.seed, probe_degree=manifest.probe_degree
    )
    return _records_labelled_vectors("isomorphism", residuals), {}


_DISPATCH: dict[str, Callable[[Manifest, dict[str, Any]], tuple[list, dict]]] = {
    "torsion": _check_torsion,
    "cohomology": _check_cohomology,
    "axioms": _check_axioms,
    "idempotent": _check_idempotent,
    "complex": _check_complex,
    "product": _check_product,
    "foliation": _check_foliation,
    "tangent": _check_tangent,
    "bundle": _check_bundle,
    "decompose": _check_decompose,
    "isomorphism": _check_isomorphism,
}


def _construction_label(descriptor: dict[str, Any]) -> str:
    kind = descriptor["kind"]
    for key in ("endo", "algebroid", "bundle_algebroid", "spray"):
        if key in descriptor:
            return f"{kind}:{descriptor[key]}"
    return kind


def run_check(manifest: Manifest, descriptor: dict[str, Any]) -> CheckRecord:
    """Execute one check descriptor; construction errors become status=error."""
    kind = descriptor.get("kind")
    construction = _construction_label(descriptor)
    name = descriptor.get("name", construction)
    start = time.perf_counter()
    try:
        records, details = _DISPATCH[kind](manifest, descriptor)
        status = (
            "pass" if all(r["value"] == "0" for r in records) else "fail"
        )
        record = CheckRecord(name, construction, status, records, details=details)
    except (ManifestError, CalculusError, AlgebroidError, ScalarError) as exc:
        record = CheckRecord(name, construction, "error", [], message=str(exc))
    record.elapsed = time.perf_counter() - start
    return record


# ---------------------------------------------------------------------------
# Reports and output
# ---------------------------------------------------------------------------


def _overall_status(records: Sequence[CheckRecord]) -> str:
    if any(r.status == "error" for r in records):
        return "error"
    if any(r.status == "fail" for r in records):
        return "fail"
    return "pass"


def _exit_code(status: str) -> int:
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "error": EXIT_ERROR}[status]


def emit(manifest: Manifest, records: Sequence[CheckRecord], fmt: str) -> tuple[str, int]:
    """Render the report and compute the exit code."""
    status = _overall_status(records)
    if fmt == "json":
        doc = {
            "checks": [r.as_json() for r in records],
            "format_version": 1,
            "manifest": manifest.path,
            "points": manifest.points,
            "probe_degree": manifest.probe_degree,
            "seed": manifest.seed,
            "status": status,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n", _exit_code(status)

    lines = [
        f"manifest: {manifest.path}",
        f"seed: {manifest.seed}  probe-degree: {manifest.probe_degree}  points: {manifest.points}",
        "",
        f"{'check':<28} {'construction':<24} {'status':<6} {'time':>9}",
        "-" * 72,
    ]
    for r in records:
        lines.append(
            f"{r.name:<28} {r.construction:<24} {r.status:<6} {r.elapsed * 1000:>7.1f}ms"
        )
        if r.message:
            lines.append(f"    error: {r.message}")
        for residual in r.residuals:
            if residual["value"] != "0":
                lines.append(
                    f"    {residual['slot']} {residual['basis']}: {residual['value']}"
                )
    lines += ["-" * 72, f"overall: {status}"]
    return "\n".join(lines) + "\n", _exit_code(status)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _cmd_verify(manifest: Manifest, args) -> tuple[str, int]:
    records = [run_check(manifest, d) for d in manifest.checks]
    return emit(manifest, records, args.format)


def _cmd_torsion(manifest: Manifest, args) -> tuple[str, int]:
    descriptor = {"kind": "torsion", "endo": args.endo}
    return emit(manifest, [run_check(manifest, descriptor)], args.format)


def _cmd_decompose(manifest: Manifest, args) -> tuple[str, int]:
    descriptor = {"kind": "decompose", "algebroid": args.derivation}
    return emit(manifest, [run_check(manifest, descriptor)], args.format)


def _build_algebroid(manifest: Manifest, construction: str) -> TangentAlgebroid:
    if construction in manifest.algebroids:
        return manifest.algebroids[construction]
    if ":" not in construction:
        raise ManifestError(
            f"unknown construction {construction!r}; use a named algebroid or "
            "recipe:object (recipes: idempotent, complex, product, invertible, tangent)"
        )
    recipe, _, arg = construction.partition(":")
    if recipe == "tangent":
        if arg not in manifest.sprays:
            raise ManifestError(f"unknown spray {arg!r}")
        tc = tangent_data_for_chart(manifest.chart)
        return connection_algebroid(
            connection_from_semispray(tc, manifest.sprays[arg])
        )
    if arg not in manifest.endomorphisms:
        raise ManifestError(f"unknown endomorphism {arg!r}")
    endo = manifest.endomorphisms[arg]
    if recipe == "idempotent":
        return idempotent_algebroid(endo)
    if recipe == "complex":
        return complex_algebroid(endo)
    if recipe == "product":
        return product_algebroid(endo)
    if recipe == "invertible":
        return invertible_algebroid(endo)
    raise ManifestError(f"unknown recipe {recipe!r}")


def _cmd_build(manifest: Manifest, args) -> tuple[str, int]:
    try:
        alg = _build_algebroid(manifest, args.construction)
    except (ManifestError, CalculusError, AlgebroidError, ScalarError) as exc:
        if args.format == "json":
            doc = {"error": str(exc), "status": "error"}
            return json.dumps(doc, sort_keys=True, indent=2) + "\n", EXIT_ERROR
        return f"error: {exc}\n", EXIT_ERROR
    chart = alg.chart
    fragment = {
        "algebroids": {
            args.construction: {
                "anchor_matrix": _matrix_strings(alg.anchor),
                "correction": _form_fragment(alg.correction),
            }
        },
        "chart": {
            "complex": chart.is_complexified,
            "coords": list(chart.coord_names),
        },
    }
    if args.format == "json":
        return json.dumps(fragment, sort_keys=True, indent=2) + "\n", EXIT_PASS
    lines = [f"construction: {args.construction}", "anchor:"]
    for row in _matrix_strings(alg.anchor):
        lines.append("  [" + ", ".join(row) + "]")
    lines.append("correction:")
    entries = _form_fragment(alg.correction)["entries"]
    if not entries:
        lines.append("  0")
    for key, comps in entries.items():
        lines.append(f"  ({key}): [" + ", ".join(comps) + "]")
    return "\n".join(lines) + "\n", EXIT_PASS


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fncalc",
        description=(
            "Exact verification of Lie algebroid structures built from the "
            "Froelicher-Nijenhuis calculus on a coordinate chart."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("manifest", help="path to a JSON manifest")
        p.add_argument(
            "--format", choices=("text", "json"), default="text", help="output format"
        )
        p.add_argument("--seed", type=int, default=None, help="override manifest seed")
        p.add_argument(
            "--probe-degree",
            type=int,
            default=None,
            help="override degree of randomized probe fields",
        )

    p = sub.add_parser("verify", help="run every check listed in the manifest")
    common(p)
    p = sub.add_parser("torsion", help="report the Nijenhuis torsion of an endomorphism")
    common(p)
    p.add_argument("endo", help="endomorphism name")
    p = sub.add_parser(
        "decompose", help="decompose the de Rham operator of an algebroid as L_K + i_L"
    )
    common(p)
    p.add_argument("derivation", help="algebroid whose de Rham operator to decompose")
    p = sub.add_parser(
        "build", help="build an algebroid and emit it as a manifest fragment"
    )
    common(p)
    p.add_argument(
        "construction",
        help="named algebroid or recipe:object "
        "(idempotent:N, complex:J, product:P, invertible:K, tangent:S)",
    )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        manifest = load_manifest(
            args.manifest, seed=args.seed, probe_degree=args.probe_degree
        )
    except ManifestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    command = {
        "verify": _cmd_verify,
        "torsion": _cmd_torsion,
        "decompose": _cmd_decompose,
        "build": _cmd_build,
    }[args.command]
    output, code = command(manifest, args)
    sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
