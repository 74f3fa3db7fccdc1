"""Workspace documents: algebras, coalgebras, measurings, and tasks as JSON.

A workspace is a single UTF-8 JSON document.  Rational entries are written
as strings "p/q" (integers may omit the denominator); plain JSON integers
are accepted on input, floats are not.  Matrices are row-major nested
lists.  Multiplication tables are indexed ``mult[i][j][k]``: the
coefficient of ``e_k`` in ``e_i * e_j``; comultiplication tables are
``comult[i][j][k]``: the coefficient of ``e_j (x) e_k`` in ``delta(e_i)``.

``load_workspace`` parses and then validates every object up front, so a
loaded workspace is ready for computation.  Structural problems with the
document (bad JSON, missing fields, malformed rationals) raise
``ParseError``; failed mathematical invariants (associativity,
coassociativity, the measuring law, dangling references) raise
``ValidationError``.  Both carry the location of the offending entry.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .algebra import Algebra, Coalgebra, Measuring
from .cyclic import DIM_CAP
from .errors import ParseError, ValidationError
from .linalg import QMat

COMPUTE_KINDS = ("hh", "hc", "hd", "lambda", "lie", "leibniz", "forms")


# ------------------------------------------------------------ value parsing


def _frac(value, loc: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"{loc}: rationals must be strings 'p/q' or integers, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{loc}: not a rational 'p/q': {value!r}") from exc
    raise ParseError(f"{loc}: rationals must be strings 'p/q' or integers, got {value!r}")


def _get(obj: dict, key: str, loc: str, *, default=None, required: bool = True):
    if key not in obj:
        if required:
            raise ParseError(f"{loc}: missing field {key!r}")
        return default
    return obj[key]


def _str_field(obj: dict, key: str, loc: str) -> str:
    v = _get(obj, key, loc)
    if not isinstance(v, str) or not v:
        raise ParseError(f"{loc}.{key}: expected a nonempty string")
    return v


def _int_field(obj: dict, key: str, loc: str, *, default=None, required=True) -> int:
    v = _get(obj, key, loc, default=default, required=required)
    if v is default and not required:
        return default
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{loc}.{key}: expected an integer")
    return v


def _list_field(obj: dict, key: str, loc: str, *, required=True) -> list:
    v = _get(obj, key, loc, default=[], required=required)
    if not isinstance(v, list):
        raise ParseError(f"{loc}.{key}: expected a list")
    return v


def _frac_list(value, length: int, loc: str) -> list[Fraction]:
    if not isinstance(value, list) or len(value) != length:
        raise ParseError(f"{loc}: expected a list of {length} rationals")
    return [_frac(v, f"{loc}[{k}]") for k, v in enumerate(value)]


def _mat_from_rows(rows, nrows: int, ncols: int, loc: str) -> QMat:
    if not isinstance(rows, list) or len(rows) != nrows:
        raise ParseError(f"{loc}: expected a matrix with {nrows} rows")
    cols: list[dict] = [dict() for _ in range(ncols)]
    for i, row in enumerate(rows):
        vals = _frac_list(row, ncols, f"{loc}[{i}]")
        for j, v in enumerate(vals):
            if v:
                cols[j][i] = v
    return QMat(nrows, ncols, cols)


def _mat_to_rows(M: QMat) -> list[list[str]]:
    rows = [["0"] * M.ncols for _ in range(M.nrows)]
    for j, col in enumerate(M.cols):
        for i, v in col.items():
            rows[i][j] = str(v)
    return rows


def _table_from_json(tab, dim: int, loc: str) -> list[list[list[Fraction]]]:
    if not isinstance(tab, list) or len(tab) != dim:
        raise ParseError(f"{loc}: expected a {dim}x{dim} table of coefficient vectors")
    out = []
    for i, row in enumerate(tab):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"{loc}[{i}]: expected {dim} coefficient vectors")
        out.append([_frac_list(row[j], dim, f"{loc}[{i}][{j}]") for j in range(dim)])
    return out


def _table_to_json(tab) -> list:
    return [[[str(c) for c in vec] for vec in row] for row in tab]


# ----------------------------------------------------------------- documents


@dataclass
class Caps:
    """Workspace-level truncation caps."""

    max_degree: int = 4
    max_dim: int = DIM_CAP


@dataclass
class Task:
    """One entry of the ordered task list."""

    kind: str
    what: str = ""
    algebra: str = ""
    measuring: str = ""
    suite: str = ""
    max_degree: int | None = None
    r: int = 1


@dataclass
class WorkspaceSpec:
    """A validated workspace: named objects plus caps and tasks."""

    algebras: dict[str, Algebra] = field(default_factory=dict)
    coalgebras: dict[str, Coalgebra] = field(default_factory=dict)
    measurings: dict[str, Measuring] = field(default_factory=dict)
    caps: Caps = field(default_factory=Caps)
    tasks: list[Task] = field(default_factory=list)


# ------------------------------------------------------------------ loading


def _load_algebra(obj: dict, loc: str) -> Algebra:
    name = _str_field(obj, "name", loc)
    dim = _int_field(obj, "dim", loc)
    if dim < 1:
        raise ParseError(f"{loc}.dim: must be positive")
    mult = _table_from_json(_get(obj, "mult", loc), dim, f"{loc}.mult")
    unit = _frac_list(_get(obj, "unit", loc), dim, f"{loc}.unit")
    commutative = bool(_get(obj, "commutative", loc, default=False, required=False))
    basis = _list_field(obj, "basis", loc, required=False)
    if basis and (len(basis) != dim or not all(isinstance(b, str) for b in basis)):
        raise ParseError(f"{loc}.basis: expected {dim} strings")
    inv_rows = _get(obj, "involution", loc, default=None, required=False)
    involution = None
    if inv_rows is not None:
        involution = _mat_from_rows(inv_rows, dim, dim, f"{loc}.involution")
    A = Algebra(
        name=name,
        dim=dim,
        mult=mult,
        unit=unit,
        commutative=commutative,
        involution=involution,
        basis_names=list(basis),
    )
    try:
        A.validate()
    except ValidationError as exc:
        raise ValidationError(f"{loc} ({name}): {exc}") from exc
    return A


def _load_coalgebra(obj: dict, loc: str) -> Coalgebra:
    name = _str_field(obj, "name", loc)
    dim = _int_field(obj, "dim", loc)
    if dim < 1:
        raise ParseError(f"{loc}.dim: must be positive")
    comult = _table_from_json(_get(obj, "comult", loc), dim, f"{loc}.comult")
    counit = _frac_list(_get(obj, "counit", loc), dim, f"{loc}.counit")
    cocommutative = bool(_get(obj, "cocommutative", loc, default=False, required=False))
    basis = _list_field(obj, "basis", loc, required=False)
    if basis and (len(basis) != dim or not all(isinstance(b, str) for b in basis)):
        raise ParseError(f"{loc}.basis: expected {dim} strings")
    C = Coalgebra(
        name=name,
        dim=dim,
        comult=comult,
        counit=counit,
        cocommutative=cocommutative,
        basis_names=list(basis),
    )
    try:
        C.validate()
    except ValidationError as exc:
        raise ValidationError(f"{loc} ({name}): {exc}") from exc
    return C


def _load_measuring(obj: dict, loc: str, ws: WorkspaceSpec) -> Measuring:
    name = _str_field(obj, "name", loc)
    cname = _str_field(obj, "coalgebra", loc)
    sname = _str_field(obj, "source", loc)
    tname = _str_field(obj, "target", loc)
    if cname not in ws.coalgebras:
        raise ValidationError(f"{loc} ({name}): unknown coalgebra {cname!r}")
    if sname not in ws.algebras:
        raise ValidationError(f"{loc} ({name}): unknown source algebra {sname!r}")
    if tname not in ws.algebras:
        raise ValidationError(f"{loc} ({name}): unknown target algebra {tname!r}")
    C = ws.coalgebras[cname]
    src = ws.algebras[sname]
    tgt = ws.algebras[tname]
    phi_rows = _list_field(obj, "phi", loc)
    if len(phi_rows) != C.dim:
        raise ParseError(f"{loc}.phi: expected {C.dim} matrices, one per coalgebra basis element")
    phi = [
        _mat_from_rows(phi_rows[c], tgt.dim, src.dim, f"{loc}.phi[{c}]")
        for c in range(C.dim)
    ]
    m = Measuring(name=name, coalgebra=C, source=src, target=tgt, phi=phi)
    try:
        m.validate()
    except ValidationError as exc:
        raise ValidationError(f"{loc} ({name}): {exc}") from exc
    return m


def _load_task(obj: dict, loc: str, ws: WorkspaceSpec) -> Task:
    kind = _str_field(obj, "kind", loc)
    if kind not in ("compute", "verify"):
        raise ParseError(f"{loc}.kind: expected 'compute' or 'verify', got {kind!r}")
    max_degree = _int_field(obj, "maxDegree", loc, default=None, required=False)
    if max_degree is not None and max_degree < 0:
        raise ParseError(f"{loc}.maxDegree: must be nonnegative")
    task = Task(kind=kind, max_degree=max_degree)
    if kind == "compute":
        task.what = _str_field(obj, "what", loc)
        if task.what not in COMPUTE_KINDS:
            raise ParseError(
                f"{loc}.what: expected one of {', '.join(COMPUTE_KINDS)}, got {task.what!r}"
            )
        task.algebra = _str_field(obj, "algebra", loc)
        if task.algebra not in ws.algebras:
            raise ValidationError(f"{loc}: unknown algebra {task.algebra!r}")
        task.r = _int_field(obj, "r", loc, default=1, required=False)
        if task.r < 1:
            raise ParseError(f"{loc}.r: must be positive")
    else:
        task.suite = _str_field(obj, "suite", loc)
        from .suites import SUITE_IDS

        if task.suite != "all" and task.suite not in SUITE_IDS:
            raise ValidationError(f"{loc}: unknown suite {task.suite!r}")
    mref = _get(obj, "measuring", loc, default="", required=False)
    if mref:
        if not isinstance(mref, str):
            raise ParseError(f"{loc}.measuring: expected a string")
        if mref not in ws.measurings:
            raise ValidationError(f"{loc}: unknown measuring {mref!r}")
        task.measuring = mref
    return task


def loads_workspace(text: str, where: str = "<workspace>") -> WorkspaceSpec:
    """Parse and validate a workspace document from a string."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}: malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: the top level must be an object")
    ws = WorkspaceSpec()
    caps = _get(doc, "caps", where, default={}, required=False)
    if not isinstance(caps, dict):
        raise ParseError(f"{where}.caps: expected an object")
    ws.caps = Caps(
        max_degree=_int_field(caps, "maxDegree", f"{where}.caps", default=4, required=False),
        max_dim=_int_field(caps, "maxDim", f"{where}.caps", default=DIM_CAP, required=False),
    )
    if ws.caps.max_degree < 1 or ws.caps.max_dim < 1:
        raise ValidationError(f"{where}.caps: caps must be positive")
    for i, obj in enumerate(_list_field(doc, "algebras", where, required=False)):
        loc = f"{where}.algebras[{i}]"
        if not isinstance(obj, dict):
            raise ParseError(f"{loc}: expected an object")
        A = _load_algebra(obj, loc)
        if A.name in ws.algebras:
            raise ValidationError(f"{loc}: duplicate algebra name {A.name!r}")
        ws.algebras[A.name] = A
    for i, obj in enumerate(_list_field(doc, "coalgebras", where, required=False)):
        loc = f"{where}.coalgebras[{i}]"
        if not isinstance(obj, dict):
            raise ParseError(f"{loc}: expected an object")
        C = _load_coalgebra(obj, loc)
        if C.name in ws.coalgebras:
            raise ValidationError(f"{loc}: duplicate coalgebra name {C.name!r}")
        ws.coalgebras[C.name] = C
    for i, obj in enumerate(_list_field(doc, "measurings", where, required=False)):
        loc = f"{where}.measurings[{i}]"
        if not isinstance(obj, dict):
            raise ParseError(f"{loc}: expected an object")
        m = _load_measuring(obj, loc, ws)
        if m.name in ws.measurings:
            raise ValidationError(f"{loc}: duplicate measuring name {m.name!r}")
        ws.measurings[m.name] = m
    for i, obj in enumerate(_list_field(doc, "tasks", where, required=False)):
        loc = f"{where}.tasks[{i}]"
        if not isinstance(obj, dict):
            raise ParseError(f"{loc}: expected an object")
        ws.tasks.append(_load_task(obj, loc, ws))
    return ws


def load_workspace(path: str) -> WorkspaceSpec:
    """Load and validate the workspace document at ``path``."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read: {exc}") from exc
    return loads_workspace(text, where=path)


# ------------------------------------------------------------------ dumping


def _algebra_to_json(A: Algebra) -> dict:
    obj = {
        "name": A.name,
        "dim": A.dim,
        "basis": list(A.basis_names),
        "mult": _table_to_json(A.mult),
        "unit": [str(c) for c in A.unit],
        "commutative": A.commutative,
    }
    if A.involution is not None:
        obj["involution"] = _mat_to_rows(A.involution)
    return obj


def _coalgebra_to_json(C: Coalgebra) -> dict:
    return {
        "name": C.name,
        "dim": C.dim,
        "basis": list(C.basis_names),
        "comult": _table_to_json(C.comult),
        "counit": [str(c) for c in C.counit],
        "cocommutative": C.cocommutative,
    }


def _measuring_to_json(m: Measuring) -> dict:
    return {
        "name": m.name,
        "coalgebra": m.coalgebra.name,
        "source": m.source.name,
        "target": m.target.name,
        "phi": [_mat_to_rows(M) for M in m.phi],
    }


def _task_to_json(t: Task) -> dict:
    obj: dict = {"kind": t.kind}
    if t.kind == "compute":
        obj["what"] = t.what
        obj["algebra"] = t.algebra
        if t.r != 1:
            obj["r"] = t.r
    else:
        obj["suite"] = t.suite
    if t.measuring:
        obj["measuring"] = t.measuring
    if t.max_degree is not None:
        obj["maxDegree"] = t.max_degree
    return obj


def dumps_workspace(ws: WorkspaceSpec) -> str:
    """Serialize a workspace deterministically (insertion order, 2-space indent)."""
    doc = {
        "caps": {"maxDegree": ws.caps.max_degree, "maxDim": ws.caps.max_dim},
        "algebras": [_algebra_to_json(A) for A in ws.algebras.values()],
        "coalgebras": [_coalgebra_to_json(C) for C in ws.coalgebras.values()],
        "measurings": [_measuring_to_json(m) for m in ws.measurings.values()],
        "tasks": [_task_to_json(t) for t in ws.tasks],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def default_workspace() -> WorkspaceSpec:
    """The bundled corpus, loaded and validated."""
    text = resources.files("qhom").joinpath("data/corpus.json").read_text(encoding="utf-8")
    return loads_workspace(text, where="corpus.json")
