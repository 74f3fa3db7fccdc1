"""Command-line driver: validate, compute, verify, report.

Exit codes: 0 success, 1 input or validation error, 2 verification
failure, 3 truncation cap exceeded.  All output is deterministic for a
given workspace; ``QHOM_THREADS`` is accepted (and validated) but the
engine is single-threaded, so reports are byte-identical across thread
counts.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from fractions import Fraction

from .algebra import Measuring
from .cyclic import (
    ChainOps,
    bicomplex_tot,
    chain_map,
    hochschild_complex,
    normalized_complex,
    normalized_mixed,
    tot_chain_map,
)
from .dihedral import DihedralData, dihedral_map
from .errors import (
    NotCommutative,
    ParseError,
    QhomError,
    TruncationTooLarge,
    ValidationError,
    VerificationFailure,
)
from .forms import FormsData, forms_map
from .lie import ce_data, ce_map, cl_data, cl_map, gl, gl_measuring
from .linalg import induced_on_homology, induced_on_quotient
from .products import (
    eulerian_idempotents,
    lambda_normalized_summand,
    normalized_idempotent,
    restricted_map,
)
from .suites import SUITE_IDS, CheckRecord, run_suite
from .workspace import Task, WorkspaceSpec, default_workspace, load_workspace

COMPUTE_KINDS = ("hh", "hc", "hd", "lambda", "lie", "leibniz", "forms")

F1 = Fraction(1)


def _threads() -> int:
    """Validate the thread-count variable; execution stays single-threaded."""
    raw = os.environ.get("QHOM_THREADS", "")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ValidationError(f"QHOM_THREADS must be a positive integer, got {raw!r}")
    if n < 1:
        raise ValidationError(f"QHOM_THREADS must be a positive integer, got {raw!r}")
    return n


def _workspace(path: str | None) -> WorkspaceSpec:
    return load_workspace(path) if path else default_workspace()


def _require_algebra(ws: WorkspaceSpec, name: str):
    if name not in ws.algebras:
        raise ValidationError(f"unknown algebra {name!r}")
    return ws.algebras[name]


def _require_measuring(ws: WorkspaceSpec, name: str, algebra: str) -> Measuring:
    if name not in ws.measurings:
        raise ValidationError(f"unknown measuring {name!r}")
    m = ws.measurings[name]
    if m.source.name != algebra:
        raise ValidationError(
            f"measuring {name!r} starts at {m.source.name}, not {algebra!r}"
        )
    return m


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(cells):
        return "  " + " | ".join(c.rjust(w) for c, w in zip(cells, widths))
    lines = [fmt(header), "  " + "-+-".join("-" * w for w in widths)]
    lines.extend(fmt(row) for row in rows)
    return "\n".join(lines)


def _xs(m: Measuring):
    return [({c: F1}, m.coalgebra.basis_names[c]) for c in range(m.coalgebra.dim)]


def _rank_table(m: Measuring, degrees, rank_fn, label: str) -> str:
    xs = _xs(m)
    header = ["n"] + [f"x={name}" for _, name in xs]
    rows = []
    for n in degrees:
        row = [str(n)]
        for x, _ in xs:
            row.append(str(rank_fn(x, n)))
        rows.append(row)
    return (
        f"\ninduced ranks under measuring {m.name} "
        f"({m.source.name} -> {m.target.name}) {label}\n"
        + _table(header, rows)
    )


def _compute_hh(ws: WorkspaceSpec, task: Task) -> str:
    A = _require_algebra(ws, task.algebra)
    md = task.max_degree if task.max_degree is not None else ws.caps.max_degree
    if md < 1:
        raise ValidationError("hh needs max degree at least 1")
    ops = ChainOps(A)
    hhc = hochschild_complex(ops, md)
    degrees = range(md)
    out = [
        f"Hochschild homology of {A.name}",
        f"certified degrees: n = 0..{md - 1}",
        "",
        _table(
            ["n", "dim HH_n"],
            [[str(n), str(hhc.homology(n).dim)] for n in degrees],
        ),
    ]
    if task.measuring:
        m = _require_measuring(ws, task.measuring, task.algebra)
        tops = hochschild_complex(ChainOps(m.target), md)
        def rank(x, n):
            op = chain_map(m, x, n)
            return induced_on_homology(
                op, hhc.homology(n), tops.homology(n),
                context=f"measuring {m.name} on classes at degree {n}",
            ).rank()
        out.append(_rank_table(m, degrees, rank, "on HH"))
    return "\n".join(out)


def _compute_hc(ws: WorkspaceSpec, task: Task) -> str:
    A = _require_algebra(ws, task.algebra)
    md = task.max_degree if task.max_degree is not None else ws.caps.max_degree
    if md < 2:
        raise ValidationError("hc needs max degree at least 2")
    ops = ChainOps(A)
    tot = bicomplex_tot(ops, md)
    degrees = range(md - 1)
    out = [
        f"cyclic homology of {A.name} (total complex of the cyclic bicomplex)",
        f"certified degrees: n = 0..{md - 2}",
        "",
        _table(
            ["n", "dim HC_n"],
            [[str(n), str(tot.homology(n).dim)] for n in degrees],
        ),
    ]
    if task.measuring:
        m = _require_measuring(ws, task.measuring, task.algebra)
        ttot = bicomplex_tot(ChainOps(m.target), md)
        def rank(x, n):
            op = tot_chain_map(m, x, ttot, ops, n)
            return induced_on_homology(
                op, tot.homology(n), ttot.homology(n),
                context=f"measuring {m.name} on cyclic classes at degree {n}",
            ).rank()
        out.append(_rank_table(m, degrees, rank, "on HC"))
    return "\n".join(out)


def _compute_hd(ws: WorkspaceSpec, task: Task) -> str:
    A = _require_algebra(ws, task.algebra)
    md = task.max_degree if task.max_degree is not None else ws.caps.max_degree
    if md < 1:
        raise ValidationError("hd needs max degree at least 1")
    dd = DihedralData(A, md)
    degrees = range(md)
    out = [
        f"dihedral homology of {A.name}",
        f"certified degrees: n = 0..{md - 1}",
        "",
        _table(
            ["n", "dim HD_n"],
            [[str(n), str(dd.complex.homology(n).dim)] for n in degrees],
        ),
    ]
    if task.measuring:
        m = _require_measuring(ws, task.measuring, task.algebra)
        dt = DihedralData(m.target, md)
        def rank(x, n):
            op = dihedral_map(m, x, dd, dt, n)
            return induced_on_homology(
                op, dd.complex.homology(n), dt.complex.homology(n),
                context=f"measuring {m.name} on dihedral classes at degree {n}",
            ).rank()
        out.append(_rank_table(m, degrees, rank, "on HD"))
    return "\n".join(out)


def _compute_lambda(ws: WorkspaceSpec, task: Task) -> str:
    A = _require_algebra(ws, task.algebra)
    md = task.max_degree if task.max_degree is not None else ws.caps.max_degree
    if md < 1:
        raise ValidationError("lambda needs max degree at least 1")
    if not A.commutative:
        raise NotCommutative(
            f"the lambda decomposition needs a commutative algebra, got {A.name}"
        )
    nm = normalized_mixed(ChainOps(A), md)
    e = eulerian_idempotents(A.dim, md)
    nc = normalized_complex(nm)
    summands = {
        i: lambda_normalized_summand(nm, e, i, md) for i in range(md)
    }
    header = ["n"] + [f"i={i}" for i in range(md)] + ["sum", "dim HH_n"]
    rows = []
    for n in range(md - 1):
        idxs = [0] if n == 0 else list(range(1, n + 1))
        cells, total = [], 0
        for i in range(md):
            if i in idxs:
                d = summands[i].homology(n).dim
                total += d
                cells.append(str(d))
            else:
                cells.append(".")
        rows.append([str(n)] + cells + [str(total), str(nc.homology(n).dim)])
    out = [
        f"lambda summands of Hochschild homology for {A.name}",
        f"certified degrees: n = 0..{md - 2}",
        "",
        _table(header, rows),
    ]
    if task.measuring:
        m = _require_measuring(ws, task.measuring, task.algebra)
        if not m.target.commutative:
            raise NotCommutative(
                f"the lambda decomposition needs a commutative target, got {m.target.name}"
            )
        nmt = normalized_mixed(ChainOps(m.target), md)
        et = eulerian_idempotents(m.target.dim, md)
        tsummands = {
            i: lambda_normalized_summand(nmt, et, i, md) for i in range(md)
        }
        xs = _xs(m)
        header = ["n", "i"] + [f"x={name}" for _, name in xs]
        rows = []
        for n in range(md - 1):
            idxs = [0] if n == 0 else list(range(1, n + 1))
            for i in idxs:
                row = [str(n), str(i)]
                for x, _ in xs:
                    cm = induced_on_quotient(
                        chain_map(m, x, n), nm.spaces[n], nmt.spaces[n],
                        context=f"measuring {m.name} on normalized chains at degree {n}",
                    )
                    w = normalized_idempotent(nmt, et[i][n], n) @ cm
                    v = cm @ normalized_idempotent(nm, e[i][n], n)
                    if w != v:
                        raise VerificationFailure(
                            f"measuring {m.name} does not respect summand {i} "
                            f"at degree {n}"
                        )
                    r = restricted_map(
                        cm, summands[i].bases[n], tsummands[i].bases[n],
                        context=f"measured map on summand {i} at degree {n}",
                    )
                    row.append(
                        str(
                            induced_on_homology(
                                r, summands[i].homology(n), tsummands[i].homology(n),
                                context=f"measured summand {i} classes at degree {n}",
                            ).rank()
                        )
                    )
                rows.append(row)
        out.append(
            f"\ninduced ranks under measuring {m.name} "
            f"({m.source.name} -> {m.target.name}) per summand\n"
            + _table(header, rows)
        )
    return "\n".join(out)


def _compute_lie(ws: WorkspaceSpec, task: Task) -> str:
    A = _require_algebra(ws, task.algebra)
    md = task.max_degree if task.max_degree is not None else 3
    if md < 1:
        raise ValidationError("lie needs max degree at least 1")
    if task.r not in (1, 2):
        raise ValidationError(f"matrix size r must be 1 or 2, got {task.r}")
    g = gl(A, task.r)
    ce = ce_data(g, md)
    degrees = range(md)
    out = [
        f"Lie algebra homology of gl{task.r}({A.name})",
        f"certified degrees: n = 0..{md - 1}",
        "",
        _table(
            ["n", "dim wedge^n", "dim H_n"],
            [
                [str(n), str(ce.spaces[n].dim), str(ce.complex.homology(n).dim)]
                for n in degrees
            ],
        ),
    ]
    if task.measuring:
        m = _require_measuring(ws, task.measuring, task.algebra)
        lm = gl_measuring(m, task.r)
        ct = ce_data(gl(m.target, task.r), md)
        def rank(x, n):
            op = ce_map(lm, x, ce, ct, n)
            return induced_on_homology(
                op, ce.complex.homology(n), ct.complex.homology(n),
                context=f"measuring {m.name} on Lie classes at degree {n}",
            ).rank()
        out.append(_rank_table(m, degrees, rank, "on Lie homology"))
    return "\n".join(out)


def _compute_leibniz(ws: WorkspaceSpec, task: Task) -> str:
    A = _require_algebra(ws, task.algebra)
    md = task.max_degree if task.max_degree is not None else 3
    if md < 1:
        raise ValidationError("leibniz needs max degree at least 1")
    if task.r not in (1, 2):
        raise ValidationError(f"matrix size r must be 1 or 2, got {task.r}")
    g = gl(A, task.r)
    cl = cl_data(g, md)
    degrees = range(md)
    out = [
        f"Leibniz homology of gl{task.r}({A.name})",
        f"certified degrees: n = 0..{md - 1}",
        "",
        _table(
            ["n", "dim HL_n"],
            [[str(n), str(cl.complex.homology(n).dim)] for n in degrees],
        ),
    ]
    if task.measuring:
        m = _require_measuring(ws, task.measuring, task.algebra)
        lm = gl_measuring(m, task.r)
        ct = cl_data(gl(m.target, task.r), md)
        def rank(x, n):
            op = cl_map(lm, x, n)
            return induced_on_homology(
                op, cl.complex.homology(n), ct.complex.homology(n),
                context=f"measuring {m.name} on Leibniz classes at degree {n}",
            ).rank()
        out.append(_rank_table(m, degrees, rank, "on Leibniz homology"))
    return "\n".join(out)


def _compute_forms(ws: WorkspaceSpec, task: Task) -> str:
    A = _require_algebra(ws, task.algebra)
    md = task.max_degree if task.max_degree is not None else ws.caps.max_degree
    if md < 1:
        raise ValidationError("forms needs max degree at least 1")
    fd = FormsData(A, md)
    rows = []
    for p in range(md + 1):
        drh = str(fd.de_rham_cohomology(p).dim) if p <= md - 1 else "."
        rows.append([str(p), str(fd.dims[p]), drh])
    out = [
        f"differential forms of {A.name}",
        f"certified de Rham degrees: p = 0..{md - 1}",
        "",
        _table(["p", "dim Omega^p", "dim H_dR^p"], rows),
    ]
    if task.measuring:
        m = _require_measuring(ws, task.measuring, task.algebra)
        ft = FormsData(m.target, md)
        def rank(x, p):
            return forms_map(m, fd, ft, x, p).rank()
        out.append(_rank_table(m, range(md + 1), rank, "on Omega^p"))
    return "\n".join(out)


_COMPUTE = {
    "hh": _compute_hh,
    "hc": _compute_hc,
    "hd": _compute_hd,
    "lambda": _compute_lambda,
    "lie": _compute_lie,
    "leibniz": _compute_leibniz,
    "forms": _compute_forms,
}


def run_compute(ws: WorkspaceSpec, task: Task) -> str:
    """Format the table for one compute task (raises on invalid input)."""
    if task.what not in _COMPUTE:
        raise ValidationError(
            f"unknown compute kind {task.what!r}; expected one of "
            + ", ".join(COMPUTE_KINDS)
        )
    return _COMPUTE[task.what](ws, task)


def run_verify(ws: WorkspaceSpec, suite: str, *, measuring: str | None = None,
               max_degree: int | None = None) -> list[CheckRecord]:
    """Run a suite (or all) and return its records in report order."""
    return run_suite(ws, suite, measuring=measuring, max_degree=max_degree)


def _summary(records: list[CheckRecord]) -> str:
    npass = sum(1 for r in records if r.status == "pass")
    nfail = sum(1 for r in records if r.status == "fail")
    nskip = sum(1 for r in records if r.status == "skipped-by-truncation")
    return f"total: {npass} pass, {nfail} fail, {nskip} skipped-by-truncation"


def format_records(records: list[CheckRecord]) -> str:
    lines = []
    for r in records:
        tag = {"pass": "pass", "fail": "FAIL", "skipped-by-truncation": "skip"}[r.status]
        line = f"{tag} {r.anchor} {r.check} | {r.subjects} | {r.degrees}"
        if r.witness:
            line += f" | {r.witness}"
        lines.append(line)
    lines.append(_summary(records))
    return "\n".join(lines)


def records_markdown(records: list[CheckRecord]) -> str:
    def esc(s: str) -> str:
        return s.replace("|", "\\|")
    lines = [
        "# Verification report",
        "",
        "| status | suite | check | subjects | degrees | witness |",
        "| --- | --- | --- | --- | --- | --- |",
    ]
    for r in records:
        lines.append(
            f"| {r.status} | {r.anchor} | {esc(r.check)} | {esc(r.subjects)} "
            f"| {esc(r.degrees)} | {esc(r.witness)} |"
        )
    lines.extend(["", _summary(records), ""])
    return "\n".join(lines)


def records_csv(records: list[CheckRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["status", "suite", "check", "subjects", "degrees", "witness"])
    for r in records:
        w.writerow([r.status, r.anchor, r.check, r.subjects, r.degrees, r.witness])
    return buf.getvalue()


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qhom",
        description="exact homology tables and diagram verification over Q",
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="validate a workspace document")
    v.add_argument("file")

    c = sub.add_parser("compute", help="print a homology or forms table")
    c.add_argument("what", choices=COMPUTE_KINDS)
    c.add_argument("--algebra", required=True)
    c.add_argument("--measuring", default="")
    c.add_argument("--max-degree", type=int, default=None)
    c.add_argument("--r", type=int, default=1)
    c.add_argument("--workspace", default=None)

    y = sub.add_parser("verify", help="run a verification suite")
    y.add_argument("--suite", required=True)
    y.add_argument("--measuring", default=None)
    y.add_argument("--max-degree", type=int, default=None)
    y.add_argument("--workspace", default=None)

    r = sub.add_parser("report", help="write the full verification report")
    r.add_argument("--format", required=True, choices=("md", "csv"))
    r.add_argument("--out", required=True)
    r.add_argument("--measuring", default=None)
    r.add_argument("--max-degree", type=int, default=None)
    r.add_argument("--workspace", default=None)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        _threads()
        if args.command == "validate":
            ws = load_workspace(args.file)
            print(
                f"workspace valid: {len(ws.algebras)} algebras, "
                f"{len(ws.coalgebras)} coalgebras, {len(ws.measurings)} measurings, "
                f"{len(ws.tasks)} tasks"
            )
            return 0
        if args.command == "compute":
            ws = _workspace(args.workspace)
            task = Task(
                kind="compute", what=args.what, algebra=args.algebra,
                measuring=args.measuring, max_degree=args.max_degree, r=args.r,
            )
            print(run_compute(ws, task))
            return 0
        if args.command == "verify":
            ws = _workspace(args.workspace)
            records = run_verify(
                ws, args.suite, measuring=args.measuring, max_degree=args.max_degree
            )
            print(format_records(records))
            return 2 if any(r.status == "fail" for r in records) else 0
        ws = _workspace(args.workspace)
        records = run_verify(
            ws, "all", measuring=args.measuring, max_degree=args.max_degree
        )
        text = records_markdown(records) if args.format == "md" else records_csv(records)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out} ({_summary(records)})")
        return 2 if any(r.status == "fail" for r in records) else 0
    except (ParseError, ValidationError) as exc:
        print(f"qhom: error: {exc}", file=sys.stderr)
        return 1
    except TruncationTooLarge as exc:
        print(f"qhom: truncation: {exc}", file=sys.stderr)
        return 3
    except VerificationFailure as exc:
        print(f"qhom: verification failure: {exc}", file=sys.stderr)
        return 2
    except QhomError as exc:
        print(f"qhom: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
