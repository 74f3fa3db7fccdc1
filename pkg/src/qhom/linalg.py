"""Exact linear algebra over the rationals.

Matrices are sparse, column-major: column ``j`` is a dict ``{row: value}``
with no zero values stored.  Elimination is deterministic everywhere: columns
are processed left to right and pivots take the smallest available row index,
so ranks, kernels, and chosen subquotient representatives are reproducible
bit for bit across runs and platforms.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CompositionNotZero, NotAChainMapOnClasses, RelationNotPreserved

Scalar = Fraction


def _axpy(dst: dict, c: Fraction, src: dict) -> None:
    """dst += c * src, dropping entries that cancel to zero."""
    for i, v in src.items():
        w = dst.get(i, 0) + c * v
        if w:
            dst[i] = w
        else:
            dst.pop(i, None)


def _vec_scale(c: Fraction, src: dict) -> dict:
    return {i: c * v for i, v in src.items()}


class QMat:
    """Sparse matrix over Q with explicit shape."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: list[dict] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [dict() for _ in range(ncols)]
        if len(self.cols) != ncols:
            raise ValueError("column count mismatch")

    # ------------------------------------------------------------ builders

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "QMat":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "QMat":
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def from_rows(cls, rows: list[list]) -> "QMat":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, x in enumerate(row):
                v = Fraction(x)
                if v:
                    cols[j][i] = v
        return cls(nrows, ncols, cols)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: dict) -> "QMat":
        """Build from {(row, col): value}."""
        cols = [dict() for _ in range(ncols)]
        for (i, j), x in entries.items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValueError(f"entry ({i}, {j}) out of range")
            v = Fraction(x)
            if v:
                cols[j][i] = cols[j].get(i, Fraction(0)) + v
        for col in cols:
            for i in [i for i, v in col.items() if not v]:
                del col[i]
        return cls(nrows, ncols, cols)

    @classmethod
    def from_cols(cls, nrows: int, cols: list[dict]) -> "QMat":
        clean = [{i: Fraction(v) for i, v in col.items() if v} for col in cols]
        for col in clean:
            for i in col:
                if not 0 <= i < nrows:
                    raise ValueError(f"row index {i} out of range 0..{nrows - 1}")
        return cls(nrows, len(clean), clean)

    @classmethod
    def column(cls, nrows: int, vec: dict) -> "QMat":
        return cls.from_cols(nrows, [vec])

    @classmethod
    def hstack(cls, mats: list["QMat"]) -> "QMat":
        if not mats:
            raise ValueError("hstack needs at least one matrix")
        nrows = mats[0].nrows
        cols = []
        for m in mats:
            if m.nrows != nrows:
                raise ValueError("hstack: row counts differ")
            cols.extend(dict(c) for c in m.cols)
        return cls(nrows, len(cols), cols)

    @classmethod
    def vstack(cls, mats: list["QMat"]) -> "QMat":
        if not mats:
            raise ValueError("vstack needs at least one matrix")
        ncols = mats[0].ncols
        nrows = 0
        cols = [dict() for _ in range(ncols)]
        for m in mats:
            if m.ncols != ncols:
                raise ValueError("vstack: column counts differ")
            for j in range(ncols):
                for i, v in m.cols[j].items():
                    cols[j][i + nrows] = v
            nrows += m.nrows
        return cls(nrows, ncols, cols)

    @classmethod
    def block_diag(cls, mats: list["QMat"]) -> "QMat":
        nrows = sum(m.nrows for m in mats)
        cols = []
        roff = 0
        for m in mats:
            for c in m.cols:
                cols.append({i + roff: v for i, v in c.items()})
            roff += m.nrows
        return cls(nrows, len(cols), cols)

    # ------------------------------------------------------------- access

    def entry(self, i: int, j: int) -> Fraction:
        return self.cols[j].get(i, Fraction(0))

    def add_entry(self, i: int, j: int, v) -> None:
        if not 0 <= i < self.nrows or not 0 <= j < self.ncols:
            raise ValueError("entry out of range")
        w = self.cols[j].get(i, 0) + Fraction(v)
        if w:
            self.cols[j][i] = w
        else:
            self.cols[j].pop(i, None)

    def col(self, j: int) -> dict:
        return dict(self.cols[j])

    def to_rows(self) -> list[list[Fraction]]:
        rows = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                rows[i][j] = v
        return rows

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMat):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(a == b for a, b in zip(self.cols, other.cols))
        )

    def __hash__(self):
        raise TypeError("QMat is not hashable")

    def __repr__(self) -> str:
        return f"QMat({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # ---------------------------------------------------------- arithmetic

    def __add__(self, other: "QMat") -> "QMat":
        self._shape_match(other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            _axpy(c, Fraction(1), b)
            cols.append(c)
        return QMat(self.nrows, self.ncols, cols)

    def __sub__(self, other: "QMat") -> "QMat":
        self._shape_match(other)
        cols = []
        for a, b in zip(self.cols, other.cols):
            c = dict(a)
            _axpy(c, Fraction(-1), b)
            cols.append(c)
        return QMat(self.nrows, self.ncols, cols)

    def __neg__(self) -> "QMat":
        return self.scale(Fraction(-1))

    def scale(self, c) -> "QMat":
        c = Fraction(c)
        if not c:
            return QMat.zero(self.nrows, self.ncols)
        return QMat(self.nrows, self.ncols, [_vec_scale(c, col) for col in self.cols])

    def _shape_match(self, other: "QMat") -> None:
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError(
                f"shape mismatch: {self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}"
            )

    def apply(self, vec: dict) -> dict:
        """Matrix times sparse vector."""
        out: dict = {}
        for k, v in vec.items():
            if v:
                _axpy(out, v, self.cols[k])
        return out

    def __matmul__(self, other: "QMat") -> "QMat":
        if self.ncols != other.nrows:
            raise ValueError(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        cols = [self.apply(c) for c in other.cols]
        return QMat(self.nrows, other.ncols, cols)

    def transpose(self) -> "QMat":
        cols = [dict() for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                cols[i][j] = v
        return QMat(self.ncols, self.nrows, cols)

    def kron(self, other: "QMat") -> "QMat":
        """Kronecker product; row/column index of the left factor varies slowest."""
        cols = []
        for ca in self.cols:
            for cb in other.cols:
                col = {}
                for ia, va in ca.items():
                    base = ia * other.nrows
                    for ib, vb in cb.items():
                        col[base + ib] = va * vb
                cols.append(col)
        return QMat(self.nrows * other.nrows, self.ncols * other.ncols, cols)

    # --------------------------------------------------------- elimination

    def column_echelon(self) -> list[tuple[int, dict]]:
        """Fully reduced column echelon basis of the column space.

        Returns ``[(pivot_row, vector)]`` sorted by pivot row; each vector has
        a 1 at its pivot and zeros at every other pivot row.
        """
        return _echelon_insert_all([dict(c) for c in self.cols])

    def rank(self) -> int:
        return len(self.column_echelon())

    def image_basis(self) -> "QMat":
        ech = self.column_echelon()
        return QMat(self.nrows, len(ech), [vec for _, vec in ech])

    def kernel_basis(self) -> "QMat":
        """Columns spanning the kernel, from deterministic row reduction."""
        if self.nrows == 0:
            return QMat.identity(self.ncols)
        rows = self.transpose().cols  # row i of self as a dict over columns
        work = [dict(r) for r in rows]
        pivots: list[tuple[int, int]] = []  # (pivot_col, work_index)
        used: set[int] = set()
        for col in range(self.ncols):
            sel = None
            for idx in range(len(work)):
                if idx not in used and work[idx].get(col):
                    sel = idx
                    break
            if sel is None:
                continue
            piv = work[sel]
            c = piv[col]
            if c != 1:
                for k in list(piv):
                    piv[k] /= c
            for idx in range(len(work)):
                if idx != sel:
                    f = work[idx].get(col)
                    if f:
                        _axpy(work[idx], -f, piv)
            pivots.append((col, sel))
            used.add(sel)
        pivot_cols = {c for c, _ in pivots}
        basis = []
        for free in range(self.ncols):
            if free in pivot_cols:
                continue
            v = {free: Fraction(1)}
            for pcol, idx in pivots:
                x = work[idx].get(free)
                if x:
                    v[pcol] = -x
            basis.append(v)
        return QMat(self.ncols, len(basis), basis)

    def solve(self, rhs: "QMat") -> "QMat":
        """X with ``self @ X == rhs``; raises ValueError if inconsistent."""
        if rhs.nrows != self.nrows:
            raise ValueError("solve: row counts differ")
        ech: list[tuple[int, dict, dict]] = []  # (pivot, vec, expansion over self's columns)
        for j in range(self.ncols):
            vec = dict(self.cols[j])
            coeffs = {j: Fraction(1)}
            _ech_reduce_tracked(vec, coeffs, ech)
            piv = min(vec) if vec else None
            if piv is None:
                continue
            c = vec[piv]
            if c != 1:
                for k in list(vec):
                    vec[k] /= c
                for k in list(coeffs):
                    coeffs[k] /= c
            for p, v2, c2 in ech:
                f = v2.get(piv)
                if f:
                    _axpy(v2, -f, vec)
                    _axpy(c2, -f, coeffs)
            ech.append((piv, vec, coeffs))
            ech.sort(key=lambda t: t[0])
        xcols = []
        for j in range(rhs.ncols):
            vec = dict(rhs.cols[j])
            acc: dict = {}
            for p, v2, c2 in ech:
                f = vec.get(p)
                if f:
                    _axpy(vec, -f, v2)
                    _axpy(acc, f, c2)
            if vec:
                raise ValueError(f"solve: column {j} of the right-hand side is not in the image")
            xcols.append(acc)
        return QMat(self.ncols, rhs.ncols, xcols)


def _ech_reduce(vec: dict, ech: list[tuple[int, dict]]) -> None:
    for p, u in ech:
        c = vec.get(p)
        if c:
            _axpy(vec, -c, u)


def _ech_reduce_tracked(vec: dict, coeffs: dict, ech: list[tuple[int, dict, dict]]) -> None:
    for p, u, cu in ech:
        c = vec.get(p)
        if c:
            _axpy(vec, -c, u)
            _axpy(coeffs, -c, cu)


def _echelon_insert(ech: list[tuple[int, dict]], vec: dict) -> bool:
    """Insert vec into a fully reduced echelon list; True if it added a pivot."""
    w = dict(vec)
    _ech_reduce(w, ech)
    if not w:
        return False
    piv = min(w)
    c = w[piv]
    if c != 1:
        for k in list(w):
            w[k] /= c
    for idx, (p, u) in enumerate(ech):
        f = u.get(piv)
        if f:
            u2 = dict(u)
            _axpy(u2, -f, w)
            ech[idx] = (p, u2)
    ech.append((piv, w))
    ech.sort(key=lambda t: t[0])
    return True


def _echelon_insert_all(cols: list[dict]) -> list[tuple[int, dict]]:
    ech: list[tuple[int, dict]] = []
    for c in cols:
        _echelon_insert(ech, c)
    return ech


class Subquotient:
    """A subquotient Z/B of an ambient Q^d with deterministic representatives.

    ``cycle_basis`` columns span Z, ``boundary_basis`` columns span B, and B
    must lie inside Z.  Representatives are taken from the cycle basis in
    order: the first columns that stay independent modulo B (reduced and
    pivot-normalized) become the class representatives.
    """

    def __init__(self, ambient_dim: int, cycle_basis: QMat, boundary_basis: QMat):
        if cycle_basis.nrows != ambient_dim or boundary_basis.nrows != ambient_dim:
            raise ValueError("basis matrices must live in the ambient space")
        self.ambient_dim = ambient_dim
        self._b_ech = _echelon_insert_all([dict(c) for c in boundary_basis.cols])
        z_ech = _echelon_insert_all([dict(c) for c in cycle_basis.cols])
        for bc in boundary_basis.cols:
            w = dict(bc)
            _ech_reduce(w, z_ech)
            if w:
                raise ValueError("boundary basis is not contained in the cycle space")
        # combined echelon with expansion coefficients over representatives
        self._ech: list[tuple[int, dict, dict]] = [
            (p, dict(u), {}) for p, u in self._b_ech
        ]
        self.representatives: list[dict] = []
        for c in cycle_basis.cols:
            vec = dict(c)
            coeffs: dict = {}
            _ech_reduce_tracked(vec, coeffs, self._ech)
            if not vec:
                continue
            piv = min(vec)
            cf = vec[piv]
            if cf != 1:
                for k in list(vec):
                    vec[k] /= cf
            rep_index = len(self.representatives)
            self.representatives.append(dict(vec))
            coeffs = {rep_index: Fraction(1)}
            for idx, (p, u, cu) in enumerate(self._ech):
                f = u.get(piv)
                if f:
                    u2, cu2 = dict(u), dict(cu)
                    _axpy(u2, -f, vec)
                    _axpy(cu2, -f, coeffs)
                    self._ech[idx] = (p, u2, cu2)
            self._ech.append((piv, vec, coeffs))
            self._ech.sort(key=lambda t: t[0])

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def contains_cycle(self, vec: dict) -> bool:
        w = dict(vec)
        for p, u, _ in self._ech:
            c = w.get(p)
            if c:
                _axpy(w, -c, u)
        return not w

    def is_boundary(self, vec: dict) -> bool:
        w = dict(vec)
        _ech_reduce(w, self._b_ech)
        return not w

    def class_coords(self, vec: dict) -> list[Fraction]:
        """Coordinates of [vec] over the representatives; ValueError if vec is not a cycle."""
        w = dict(vec)
        acc: dict = {}
        for p, u, cu in self._ech:
            c = w.get(p)
            if c:
                _axpy(w, -c, u)
                _axpy(acc, c, cu)
        if w:
            raise ValueError("vector is not in the cycle space")
        return [acc.get(i, Fraction(0)) for i in range(self.dim)]

    def class_matrix(self, vecs: QMat) -> QMat:
        """Matrix of classes of the given columns over the representatives."""
        cols = []
        for c in vecs.cols:
            coords = self.class_coords(c)
            cols.append({i: v for i, v in enumerate(coords) if v})
        return QMat(self.dim, vecs.ncols, cols)


def homology(bn: QMat, bnp1: QMat, *, context: str = "") -> Subquotient:
    """ker(bn)/im(bnp1); raises CompositionNotZero if bn o bnp1 != 0."""
    if bn.ncols != bnp1.nrows:
        raise ValueError("boundary maps are not composable")
    comp = bn @ bnp1
    if not comp.is_zero():
        j = next(j for j, c in enumerate(comp.cols) if c)
        where = f" in {context}" if context else ""
        raise CompositionNotZero(
            f"d o d != 0{where}: column {j} of the composite is nonzero"
        )
    return Subquotient(bn.ncols, bn.kernel_basis(), bnp1.image_basis())


def induced_on_homology(
    op: QMat, src: Subquotient, tgt: Subquotient, *, context: str = ""
) -> QMat:
    """Matrix induced on subquotients by op, checking cycle and boundary preservation."""
    if op.ncols != src.ambient_dim or op.nrows != tgt.ambient_dim:
        raise ValueError("operator shape does not match the subquotients")
    where = f" in {context}" if context else ""
    for k, rep in enumerate(src.representatives):
        if not tgt.contains_cycle(op.apply(rep)):
            raise NotAChainMapOnClasses(
                f"image of cycle representative {k} is not a cycle{where}"
            )
    for p, u in src._b_ech:
        if not tgt.is_boundary(op.apply(u)):
            raise NotAChainMapOnClasses(
                f"image of a boundary (pivot row {p}) is not a boundary{where}"
            )
    cols = []
    for rep in src.representatives:
        coords = tgt.class_coords(op.apply(rep))
        cols.append({i: v for i, v in enumerate(coords) if v})
    return QMat(tgt.dim, src.dim, cols)


class QuotientSpace:
    """Q^d modulo the span of relation columns, with canonical projection.

    Representatives are the coordinate vectors at non-pivot rows of the fully
    reduced relation echelon, so projection and section are deterministic.
    ``section @ project`` is the identity on the quotient.
    """

    def __init__(self, ambient_dim: int, relations: QMat):
        if relations.nrows != ambient_dim:
            raise ValueError("relations must live in the ambient space")
        self.ambient_dim = ambient_dim
        self._ech = _echelon_insert_all([dict(c) for c in relations.cols])
        pivots = {p for p, _ in self._ech}
        self.free = [i for i in range(ambient_dim) if i not in pivots]
        self._free_pos = {r: k for k, r in enumerate(self.free)}

    @property
    def dim(self) -> int:
        return len(self.free)

    def reduce(self, vec: dict) -> dict:
        """Canonical representative of vec modulo the relations."""
        w = dict(vec)
        _ech_reduce(w, self._ech)
        return w

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def project_vec(self, vec: dict) -> dict:
        w = self.reduce(vec)
        return {self._free_pos[i]: v for i, v in w.items()}

    def project(self) -> QMat:
        cols = []
        for j in range(self.ambient_dim):
            cols.append(self.project_vec({j: Fraction(1)}))
        return QMat(self.dim, self.ambient_dim, cols)

    def section(self) -> QMat:
        cols = [{r: Fraction(1)} for r in self.free]
        return QMat(self.ambient_dim, self.dim, cols)

    def relation_columns(self) -> QMat:
        return QMat(self.ambient_dim, len(self._ech), [dict(u) for _, u in self._ech])


def induced_on_quotient(
    op: QMat, src: QuotientSpace, tgt: QuotientSpace, *, context: str = ""
) -> QMat:
    """Matrix induced on quotients by op, checking that relations map to relations."""
    if op.ncols != src.ambient_dim or op.nrows != tgt.ambient_dim:
        raise ValueError("operator shape does not match the quotients")
    where = f" in {context}" if context else ""
    for p, u in src._ech:
        if not tgt.contains(op.apply(u)):
            raise RelationNotPreserved(
                f"image of a relation (pivot row {p}) is not a relation{where}"
            )
    cols = []
    for r in src.free:
        cols.append(tgt.project_vec(op.apply({r: Fraction(1)})))
    return QMat(tgt.dim, src.dim, cols)
