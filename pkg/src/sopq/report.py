"""Decomposition reports: assembly, JSON round trip, Markdown/LaTeX rendering,
and comparison against golden tables."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .algebra import LinearForm
from .basis_index import Signature
from .irreducibility import (
    commutant_certificate,
    generation_check,
    invariant_closure,
    ladder_certificate,
    two_piece_decomposition,
)
from .matrix import Matrix, format_scalar
from .roots import full_root_system
from .verification import Failure, TableRow
from .weights import complement_basis, full_weight_system

SCHEMA_VERSION = 1
CHECKS = ("roots", "weights", "irreducible")
# generation is checked from every s-basis element up to this d, from one element beyond
GENERATION_FULL_MAX_D = 6


@dataclass(frozen=True)
class SpaceRecord:
    coeffs: tuple[int, ...]
    basis: tuple[Matrix, ...]

    @property
    def form(self) -> LinearForm:
        return LinearForm(self.coeffs)

    @property
    def label(self) -> str:
        return self.form.label()

    @property
    def multiplicity(self) -> int:
        return len(self.basis)


@dataclass
class DecompositionReport:
    signature: Signature
    dim_so: int
    dim_s: int
    checks: list[str]
    roots: list[SpaceRecord]
    weights: list[SpaceRecord]
    root_table: list[TableRow]
    weight_table: list[TableRow]
    certificates: dict = field(default_factory=dict)
    failures: list[Failure] = field(default_factory=list)
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def root_total(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    @property
    def weight_total(self) -> int:
        return sum(w.multiplicity for w in self.weights)

    # serialization ----------------------------------------------------------

    def to_dict(self) -> dict:
        sig = self.signature
        return {
            "schema_version": self.schema_version,
            "tool_version": self.tool_version,
            "signature": {"p": sig.p, "q": sig.q, "d": sig.d, "swapped": sig.swapped},
            "dim_so": self.dim_so,
            "dim_s": self.dim_s,
            "checks": list(self.checks),
            "root_total": self.root_total,
            "weight_total": self.weight_total,
            "roots": [_space_to_dict(r) for r in self.roots],
            "weights": [_space_to_dict(w) for w in self.weights],
            "root_table": [r.to_dict() for r in self.root_table],
            "weight_table": [r.to_dict() for r in self.weight_table],
            "certificates": self.certificates,
            "failures": [f.to_dict() for f in self.failures],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DecompositionReport":
        s = data["signature"]
        sig = Signature(s["p"], s["q"], swapped=s.get("swapped", False))
        return cls(
            signature=sig,
            dim_so=data["dim_so"],
            dim_s=data["dim_s"],
            checks=list(data["checks"]),
            roots=[_space_from_dict(r) for r in data["roots"]],
            weights=[_space_from_dict(w) for w in data["weights"]],
            root_table=[TableRow(**r) for r in data["root_table"]],
            weight_table=[TableRow(**r) for r in data["weight_table"]],
            certificates=data["certificates"],
            failures=[Failure(**f) for f in data["failures"]],
            tool_version=data["tool_version"],
            schema_version=data["schema_version"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "DecompositionReport":
        return cls.from_dict(json.loads(text))


def matrix_to_rows(m: Matrix) -> list[list[str]]:
    return [[format_scalar(v) for v in row] for row in m.rows()]


def matrix_from_rows(rows: Sequence[Sequence[str]]) -> Matrix:
    return Matrix.from_rows([[Fraction(v) for v in row] for row in rows])


def _space_to_dict(r: SpaceRecord) -> dict:
    return {
        "coeffs": list(r.coeffs),
        "label": r.label,
        "multiplicity": r.multiplicity,
        "basis": [matrix_to_rows(m) for m in r.basis],
    }


def _space_from_dict(d: dict) -> SpaceRecord:
    return SpaceRecord(tuple(d["coeffs"]), tuple(matrix_from_rows(m) for m in d["basis"]))


# --- assembly ----------------------------------------------------------------------


def build_report(sig: Signature, checks: Iterable[str] = CHECKS) -> DecompositionReport:
    """Run the requested checks for one signature.

    Root and weight spaces are always assembled (they are cheap); only the
    failures of the requested checks are recorded.
    """
    checks = [c for c in CHECKS if c in set(checks)]
    roots = full_root_system(sig)
    weights = full_weight_system(sig)
    failures: list[Failure] = []
    if "roots" in checks:
        failures += roots.failures
    if "weights" in checks:
        failures += weights.failures
    if roots.total_dim + weights.total_dim != sig.d ** 2 - 1 and {"roots", "weights"} <= set(checks):
        failures.append(Failure("totals", str(sig), "root total + weight total != d^2 - 1"))
    certificates: dict = {}
    if "irreducible" in checks:
        certificates, cert_failures = _certificates(sig)
        failures += cert_failures
    return DecompositionReport(
        signature=sig,
        dim_so=sig.dim_so,
        dim_s=sig.dim_s,
        checks=checks,
        roots=[SpaceRecord(s.root.coeffs, s.basis) for s in roots.spaces],
        weights=[SpaceRecord(s.weight.coeffs, s.basis) for s in weights.spaces],
        root_table=roots.multiplicity_table,
        weight_table=weights.multiplicity_table,
        certificates=certificates,
        failures=failures,
    )


def _certificates(sig: Signature) -> tuple[dict, list[Failure]]:
    failures: list[Failure] = []
    s_basis = complement_basis(sig).basis

    closure_dims = [invariant_closure(sig, x).final_dim for x in s_basis]
    closure = {
        "seeds": len(s_basis),
        "final_dims": closure_dims,
        "target": sig.dim_s,
        "ok": all(x == sig.dim_s for x in closure_dims),
    }
    if not closure["ok"]:
        failures.append(Failure("closure", str(sig), f"min closure dim {min(closure_dims)} < {sig.dim_s}"))

    comm = commutant_certificate(sig)
    if comm.semisimple and comm.commutant_dim != 1:
        failures.append(Failure("commutant", str(sig), f"commutant dim {comm.commutant_dim} != 1"))

    if sig.q:
        lad = ladder_certificate(sig)
        ladder = lad.to_dict()
        failures += lad.failures()
    else:
        ladder = {"deferred": "q = 0: no restricted roots, ladder is empty; see closure"}

    seeds = s_basis if sig.d <= GENERATION_FULL_MAX_D else s_basis[:1]
    gen = [generation_check(sig, x) for x in seeds]
    generation = {"tested": len(gen), "of": len(s_basis), "all_generate": all(gen)}
    if not all(gen):
        failures.append(Failure("generation", str(sig), f"{gen.count(False)} elements fail to generate sl_d"))

    two = two_piece_decomposition(sig)
    failures += two.failures
    if two.s_module.verdict != "irreducible":
        failures.append(Failure("s-irreducible", str(sig), f"{two.s_module.verdict}: {two.s_module.evidence}"))

    certs = {
        "closure": closure,
        "ladder": ladder,
        "commutant": comm.to_dict(),
        "generation": generation,
        "decomposition": two.to_dict(),
    }
    return certs, failures


# --- display tables and golden comparison ----------------------------------


def _params(n: int, single: str = "x", prefix: str = "x") -> list[str]:
    return [single] if n == 1 else [f"{prefix}_{k}" for k in range(1, n + 1)]


def display_tables(report: DecompositionReport) -> dict[str, dict[str, dict[str, Matrix]]]:
    """Cells of the two display tables, each mapping a parameter name to its coefficient matrix.

    table1: "a", "m", then every nonzero root; table2: every nonzero weight, then "s_0".
    """
    q = report.signature.q
    t1: dict[str, dict[str, Matrix]] = {}
    t2: dict[str, dict[str, Matrix]] = {}
    for r in report.roots:
        if r.form.is_zero():
            a, m = r.basis[:q], r.basis[q:]
            t1["a"] = dict(zip(_params(len(a), "a_1", "a"), a)) if a else {}
            t1["m"] = dict(zip(_params(len(m)), m)) if m else {}
    for r in report.roots:
        if not r.form.is_zero():
            t1[r.label] = dict(zip(_params(r.multiplicity), r.basis))
    zero = {}
    for w in report.weights:
        if w.form.is_zero():
            zero = dict(zip(_params(w.multiplicity, "x_1"), w.basis))
        else:
            t2[w.label] = dict(zip(_params(w.multiplicity), w.basis))
    t2["s_0"] = zero
    return {"table1": t1, "table2": t2}


class GoldenFileError(Exception):
    pass


@dataclass(frozen=True)
class Mismatch:
    table: str
    cell: str
    param: str
    row: int | None = None
    col: int | None = None
    expected: str | None = None
    actual: str | None = None

    def __str__(self) -> str:
        where = f"{self.table}/{self.cell}/{self.param}"
        if self.row is None:
            return f"{where}: expected {self.expected}, got {self.actual}"
        return f"{where} ({self.row},{self.col}): expected {self.expected}, got {self.actual}"


@dataclass
class GoldenDiff:
    mismatches: list[Mismatch]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def cells(self) -> set[tuple[str, str]]:
        return {(m.table, m.cell) for m in self.mismatches}


def load_golden(path: str | Path | None = None) -> dict:
    try:
        if path is None:
            text = resources.files("sopq.data").joinpath("so42_tables.json").read_text(encoding="utf-8")
        else:
            text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise GoldenFileError(f"cannot read golden file: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GoldenFileError(f"golden file is not valid JSON: {e}") from e
    if not isinstance(data, dict) or "signature" not in data or "table1" not in data or "table2" not in data:
        raise GoldenFileError("golden file lacks signature/table1/table2")
    return data


def diff_golden(report: DecompositionReport, golden: dict | str | Path | None = None,
                corrections: list[dict] | None = None) -> GoldenDiff:
    """Entrywise comparison of the display tables against a golden file (parameters set to 1).

    Entry patches from the corrections file are applied to the golden tables first;
    pass ``corrections=[]`` to compare against the transcription as is.
    """
    from .corrections import apply_golden_patches

    if not isinstance(golden, dict):
        golden = load_golden(golden)
    golden = apply_golden_patches(golden, corrections)
    sig = report.signature
    want_sig = tuple(golden["signature"])
    if want_sig != (sig.p, sig.q):
        return GoldenDiff([Mismatch("signature", "-", "-", expected=str(want_sig), actual=str((sig.p, sig.q)))])
    tables = display_tables(report)
    out = []
    for tname in ("table1", "table2"):
        have, want = tables[tname], golden[tname]
        for cell in sorted(set(have) | set(want), key=lambda c: (c not in want, c)):
            if cell not in want or cell not in have:
                out.append(Mismatch(tname, cell, "-", expected="present" if cell in want else "absent",
                                    actual="present" if cell in have else "absent"))
                continue
            hp, wp = have[cell], want[cell]
            for param in sorted(set(hp) | set(wp)):
                if param not in hp or param not in wp:
                    out.append(Mismatch(tname, cell, param, expected="present" if param in wp else "absent",
                                        actual="present" if param in hp else "absent"))
                    continue
                expected = {(r, c): Fraction(v) for r, c, v in wp[param]}
                actual = {(r + 1, c + 1): v for (r, c), v in hp[param].items()}
                for rc in sorted(set(expected) | set(actual)):
                    e, a = expected.get(rc, Fraction(0)), actual.get(rc, Fraction(0))
                    if e != a:
                        out.append(Mismatch(tname, cell, param, rc[0], rc[1], format_scalar(e), format_scalar(a)))
    return GoldenDiff(out)


# --- rendering ------------------------------------------------------------------------


def _symbolic(params: dict[str, Matrix], d: int) -> list[list[str]]:
    """Entrywise linear combination sum_k param_k * M_k as strings."""
    cells = [[[] for _ in range(d)] for _ in range(d)]
    for name, m in params.items():
        for (r, c), v in m.items():
            cells[r][c].append((v, name))
    out = []
    for row in cells:
        out_row = []
        for terms in row:
            s = ""
            for v, name in terms:
                mag = abs(v)
                coef = "" if mag == 1 else format_scalar(mag)
                sign = "-" if v < 0 else ("+" if s else "")
                s += f"{sign}{coef}{name}"
            out_row.append(s)
        out.append(out_row)
    return out


def _latex_matrix(entries: list[list[str]], p: int) -> str:
    d = len(entries)
    cols = "c" * p + ("|" + "c" * (d - p) if d > p else "")
    lines = []
    for r, row in enumerate(entries):
        if r == p and p < d:
            lines.append(r"\hline")
        lines.append("&".join(row) + r"\\")
    return r"\left(\begin{array}{" + cols + "}\n" + "\n".join(lines) + "\n" + r"\end{array}\right)"


_LATEX_NAMES = {"a": r"\mathfrak{a}", "m": r"\mathfrak{m}", "s_0": r"\mathfrak{s}_0"}


def _latex_label(label: str) -> str:
    return _LATEX_NAMES.get(label, label)


def render_latex(report: DecompositionReport) -> str:
    sig = report.signature
    tables = display_tables(report)
    out = [f"% so{sig} decomposition, sopq {report.tool_version}"]
    for tname, caption in (("table1", f"Restricted root spaces of so{sig}"),
                           ("table2", f"Weight spaces of s for so{sig}")):
        out.append(r"\begin{table}[h]\centering")
        out.append(r"\begin{tabular}{|c|c|}\hline")
        for cell, params in tables[tname].items():
            if not params:
                continue
            if cell == "s_0":
                for name, m in params.items():
                    mat = _latex_matrix(_symbolic({name: m}, sig.d), sig.p)
                    out.append(f"${_latex_label(cell)}$ & ${mat}$" + r"\\ \hline")
            else:
                mat = _latex_matrix(_symbolic(params, sig.d), sig.p)
                out.append(f"${_latex_label(cell)}$ & ${mat}$" + r"\\ \hline")
        out.append(r"\end{tabular}")
        out.append(r"\caption{" + caption + "}")
        out.append(r"\end{table}")
    out.append(_latex_table_rows("Root multiplicities", report.root_table))
    out.append(_latex_table_rows("Weight multiplicities", report.weight_table))
    return "\n".join(out) + "\n"


def _latex_kind(kind: str) -> str:
    return kind.replace("±", r"\pm ").replace("∓", r"\mp ")


def _latex_table_rows(title: str, rows: Sequence[TableRow]) -> str:
    body = "\n".join(f"${_latex_kind(r.kind)}$ & {r.count} & {r.dim_each} & {r.total}" + r"\\" for r in rows)
    total = sum(r.total for r in rows)
    return (r"\begin{tabular}{c|c|c|c}\hline" + "\n" + r" & count & dim each & total\\ \hline" + "\n" + body
            + "\n" + r"\hline & & & " + str(total) + r"\\ \hline" + "\n" + r"\end{tabular} % " + title)


def _md_matrix(entries: list[list[str]], p: int) -> str:
    width = max((len(e) for row in entries for e in row), default=1) or 1
    lines = []
    for r, row in enumerate(entries):
        if r == p and 0 < p < len(entries):
            lines.append("-" * ((width + 1) * len(row) + 1))
        cells = [(e or ".").rjust(width) for e in row]
        lines.append(" ".join(cells[:p]) + (" | " + " ".join(cells[p:]) if p < len(row) else ""))
    return "\n".join(lines)


def render_markdown(report: DecompositionReport) -> str:
    sig = report.signature
    out = [f"# so{sig} in sl_{sig.d}", ""]
    if sig.swapped:
        out += [f"Input signature was given as ({sig.q},{sig.p}) and relabeled to {sig}.", ""]
    out += [f"- dim so(p,q) = {report.dim_so}", f"- dim s = {report.dim_s}",
            f"- root total + weight total = {report.root_total} + {report.weight_total} = "
            f"{report.root_total + report.weight_total}", f"- status: {'PASS' if report.ok else 'FAIL'}", ""]
    for title, rows in (("Root multiplicities", report.root_table), ("Weight multiplicities", report.weight_table)):
        out += [f"## {title}", "", "| type | count | dim each | total |", "|---|---|---|---|"]
        out += [f"| {r.kind} | {r.count} | {r.dim_each} | {r.total} |" for r in rows]
        out.append("")
    tables = display_tables(report)
    for tname, title in (("table1", "Root spaces"), ("table2", "Weight spaces of s")):
        out += [f"## {title}", ""]
        for cell, params in tables[tname].items():
            if not params:
                continue
            out += [f"### {cell}", "", "```", _md_matrix(_symbolic(params, sig.d), sig.p), "```", ""]
    if report.certificates:
        out += ["## Certificates", "", "```json", json.dumps(report.certificates, indent=2, ensure_ascii=False),
                "```", ""]
    if report.failures:
        out += ["## Failures", ""] + [f"- {f}" for f in report.failures] + [""]
    return "\n".join(out)
