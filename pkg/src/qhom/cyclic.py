"""Hochschild and cyclic chain complexes over Q.

The chain space in degree ``n`` is ``C_n(A) = A^(x)(n+1)`` with basis words
``(w_0, ..., w_n)`` indexed so that slot 0 varies slowest (matching
``QMat.kron``).  Operators follow the simplicial-cyclic conventions:

    d_i(a_0, ..., a_p) = (a_0, ..., a_i a_{i+1}, ..., a_p)   for 0 <= i < p
    d_p(a_0, ..., a_p) = (a_p a_0, a_1, ..., a_{p-1})
    s_j inserts the unit after slot j
    t_p(a_0, ..., a_p) = (-1)^p (a_p, a_0, ..., a_{p-1})

with ``b`` the alternating face sum, ``b'`` the sum without the last face,
``h`` the extra degeneracy (unit in front), ``N`` the cyclic norm, and the
degree-raising operator ``B = (1 - t) h N``.

Cyclic homology is computed three ways that must agree: the total complex of
the first-quadrant (b, b') bicomplex, the normalized mixed (b, B) total
complex, and the quotient complex by the cyclic action.  Chain spaces larger
than ``DIM_CAP`` raise ``TruncationTooLarge``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, Measuring
from .errors import NotCocommutative, TruncationTooLarge
from .linalg import (
    QMat,
    QuotientSpace,
    Subquotient,
    homology,
    induced_on_homology,
    induced_on_quotient,
)

DIM_CAP = 5000

F1 = Fraction(1)


def check_dim(dim: int, what: str) -> int:
    if dim > DIM_CAP:
        raise TruncationTooLarge(
            f"{what} has dimension {dim}, above the cap {DIM_CAP}; "
            "reduce the degree or the algebra size"
        )
    return dim


class ChainOps:
    """Cached simplicial-cyclic operators for one algebra."""

    def __init__(self, A: Algebra):
        self.A = A
        self._cache: dict = {}

    def dim(self, n: int) -> int:
        return check_dim(self.A.dim ** (n + 1), f"C_{n}({self.A.name})")

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def face(self, n: int, i: int) -> QMat:
        """d_i: C_n -> C_{n-1}."""
        if not 0 <= i <= n:
            raise ValueError(f"face index {i} out of range for degree {n}")
        return self._memo(("d", n, i), lambda: self._build_face(n, i))

    def _build_face(self, n: int, i: int) -> QMat:
        d = self.A.dim
        self.dim(n)
        if i < n:
            M = self.A.mult_matrix()
            left = QMat.identity(d**i)
            right = QMat.identity(d ** (n - 1 - i))
            return left.kron(M).kron(right)
        return self.face(n, 0) @ self.rotation(n)

    def rotation(self, n: int) -> QMat:
        """Unsigned cyclic shift (a_0, ..., a_n) -> (a_n, a_0, ..., a_{n-1})."""
        return self._memo(("rot", n), lambda: self._build_rotation(n))

    def _build_rotation(self, n: int) -> QMat:
        d = self.A.dim
        size = self.dim(n)
        top = d**n
        cols = []
        for c in range(size):
            cols.append({(c % d) * top + c // d: F1})
        return QMat(size, size, cols)

    def cyclic(self, n: int) -> QMat:
        """t_n = (-1)^n times the cyclic shift."""
        rot = self.rotation(n)
        return rot if n % 2 == 0 else -rot

    def degeneracy(self, n: int, j: int) -> QMat:
        """s_j: C_n -> C_{n+1}, unit inserted after slot j."""
        if not 0 <= j <= n:
            raise ValueError(f"degeneracy index {j} out of range for degree {n}")

        def build():
            d = self.A.dim
            self.dim(n + 1)
            u = self.A.unit_matrix()
            left = QMat.identity(d ** (j + 1))
            right = QMat.identity(d ** (n - j))
            return left.kron(u).kron(right)

        return self._memo(("s", n, j), build)

    def extra_degeneracy(self, n: int) -> QMat:
        """h: C_n -> C_{n+1}, unit prepended; b'h + hb' = 1."""

        def build():
            self.dim(n + 1)
            u = self.A.unit_matrix()
            return u.kron(QMat.identity(self.A.dim ** (n + 1)))

        return self._memo(("h", n), build)

    def boundary(self, n: int) -> QMat:
        """Hochschild boundary b: C_n -> C_{n-1}."""

        def build():
            if n == 0:
                return QMat.zero(0, self.dim(0))
            out = self.face(n, 0)
            for i in range(1, n + 1):
                term = self.face(n, i)
                out = out + term if i % 2 == 0 else out - term
            return out

        return self._memo(("b", n), build)

    def bar_boundary(self, n: int) -> QMat:
        """b': C_n -> C_{n-1}, the face sum without the wrap-around face."""

        def build():
            if n == 0:
                return QMat.zero(0, self.dim(0))
            out = self.face(n, 0)
            for i in range(1, n):
                term = self.face(n, i)
                out = out + term if i % 2 == 0 else out - term
            return out

        return self._memo(("bp", n), build)

    def norm(self, n: int) -> QMat:
        """N = 1 + t + ... + t^n on C_n."""

        def build():
            t = self.cyclic(n)
            out = QMat.identity(self.dim(n))
            acc = QMat.identity(self.dim(n))
            for _ in range(n):
                acc = t @ acc
                out = out + acc
            return out

        return self._memo(("N", n), build)

    def connes_B(self, n: int) -> QMat:
        """B = (1 - t) h N: C_n -> C_{n+1}."""

        def build():
            one = QMat.identity(self.dim(n + 1))
            t1 = self.cyclic(n + 1)
            return (one - t1) @ self.extra_degeneracy(n) @ self.norm(n)

        return self._memo(("B", n), build)


# ----------------------------------------------------------------- complexes


@dataclass
class ChainComplex:
    """A nonnegatively graded chain complex given by boundary matrices.

    ``diff[n]`` maps degree n to degree n-1 and is available for
    1 <= n <= top; homology at n is computable for n <= top - 1.
    """

    name: str
    dims: list[int]
    diff: dict[int, QMat]
    top: int
    bases: list[QMat] | None = field(default=None, repr=False)
    _hom: dict = field(default_factory=dict, repr=False)

    def homology(self, n: int) -> Subquotient:
        if not 0 <= n <= self.top - 1:
            raise TruncationTooLarge(
                f"homology of {self.name} at degree {n} needs boundaries up to "
                f"degree {n + 1}, but the complex was built to degree {self.top}"
            )
        if n not in self._hom:
            bn = self.diff[n] if n >= 1 else QMat.zero(0, self.dims[n])
            self._hom[n] = homology(bn, self.diff[n + 1], context=f"{self.name} at degree {n}")
        return self._hom[n]

    def homology_dims(self, upto: int) -> list[int]:
        return [self.homology(n).dim for n in range(upto + 1)]


@dataclass
class QuotientComplex(ChainComplex):
    """A chain complex of quotient spaces, remembering the quotient data."""

    spaces: list[QuotientSpace] = field(default_factory=list)


def hochschild_complex(ops: ChainOps, top: int) -> ChainComplex:
    """(C_*, b) up to degree top."""
    dims = [ops.dim(n) for n in range(top + 1)]
    diff = {n: ops.boundary(n) for n in range(1, top + 1)}
    return ChainComplex(f"Hochschild({ops.A.name})", dims, diff, top)


# ------------------------------------------------- cyclic bicomplex total


@dataclass
class TotComplex(ChainComplex):
    """Total complex with per-degree block offsets (block p has degree n - p)."""

    offsets: list[list[int]] = field(default_factory=list)

    def block_offset(self, n: int, p: int) -> int:
        return self.offsets[n][p]


def bicomplex_tot(ops: ChainOps, top: int) -> TotComplex:
    """Total complex of the first-quadrant cyclic bicomplex.

    Column p carries C_{n-p} in total degree n; even columns use b and the
    horizontal map 1 - t into them, odd columns use -b' and the horizontal
    norm N into them.
    """
    A = ops.A
    dims = []
    offsets = []
    for n in range(top + 1):
        offs = [0]
        for p in range(n + 1):
            offs.append(offs[-1] + A.dim ** (n - p + 1))
        check_dim(offs[-1], f"Tot_{n}(CC({A.name}))")
        dims.append(offs[-1])
        offsets.append(offs[:-1])
    diff = {}
    for n in range(1, top + 1):
        D = QMat.zero(dims[n - 1], dims[n])
        for p in range(n + 1):
            q = n - p
            # vertical: column p, degree q -> q - 1
            if q >= 1:
                V = ops.boundary(q) if p % 2 == 0 else -ops.bar_boundary(q)
                _emplace(D, V, offsets[n - 1][p], offsets[n][p])
            # horizontal: column p -> p - 1, degree q stays
            if p >= 1:
                H = (
                    QMat.identity(ops.dim(q)) - ops.cyclic(q)
                    if p % 2 == 1
                    else ops.norm(q)
                )
                _emplace(D, H, offsets[n - 1][p - 1], offsets[n][p])
        diff[n] = D
    return TotComplex(f"Tot(CC({A.name}))", dims, diff, top, offsets=offsets)


def _emplace(D: QMat, block: QMat, row_off: int, col_off: int) -> None:
    for j, col in enumerate(block.cols):
        if col:
            dst = D.cols[col_off + j]
            for i, v in col.items():
                w = dst.get(row_off + i, 0) + v
                if w:
                    dst[row_off + i] = w
                else:
                    dst.pop(row_off + i, None)


# ------------------------------------------------------- quotient complexes


def tilde_complex(ops: ChainOps, top: int) -> QuotientComplex:
    """C-tilde: C_n modulo im(1 - t_n), with the induced b."""
    A = ops.A
    spaces = []
    for n in range(top + 1):
        one = QMat.identity(ops.dim(n))
        spaces.append(QuotientSpace(ops.dim(n), one - ops.cyclic(n)))
    diff = {}
    for n in range(1, top + 1):
        diff[n] = induced_on_quotient(
            ops.boundary(n),
            spaces[n],
            spaces[n - 1],
            context=f"b on C-tilde({A.name}) at degree {n}",
        )
    dims = [s.dim for s in spaces]
    return QuotientComplex(f"C-tilde({A.name})", dims, diff, top, spaces=spaces)


def normalized_spaces(ops: ChainOps, top: int) -> list[QuotientSpace]:
    """C-bar_n = C_n modulo the span of all degeneracy images."""
    spaces = []
    for n in range(top + 1):
        if n == 0:
            spaces.append(QuotientSpace(ops.dim(0), QMat.zero(ops.dim(0), 0)))
            continue
        rels = QMat.hstack([ops.degeneracy(n - 1, j) for j in range(n)])
        spaces.append(QuotientSpace(ops.dim(n), rels))
    return spaces


@dataclass
class NormalizedMixed:
    """Normalized chains with the induced b-bar and B-bar (a mixed complex)."""

    ops: ChainOps
    top: int
    spaces: list[QuotientSpace]
    bbar: dict[int, QMat]
    Bbar: dict[int, QMat]

    def dims(self) -> list[int]:
        return [s.dim for s in self.spaces]


def normalized_mixed(ops: ChainOps, top: int) -> NormalizedMixed:
    A = ops.A
    spaces = normalized_spaces(ops, top)
    bbar = {}
    Bbar = {}
    for n in range(1, top + 1):
        bbar[n] = induced_on_quotient(
            ops.boundary(n),
            spaces[n],
            spaces[n - 1],
            context=f"b on normalized chains of {A.name} at degree {n}",
        )
    for n in range(top):
        Bbar[n] = induced_on_quotient(
            ops.connes_B(n),
            spaces[n],
            spaces[n + 1],
            context=f"B on normalized chains of {A.name} at degree {n}",
        )
    return NormalizedMixed(ops, top, spaces, bbar, Bbar)


def normalized_complex(nm: NormalizedMixed) -> QuotientComplex:
    """(C-bar_*, b-bar): computes Hochschild homology."""
    dims = nm.dims()
    return QuotientComplex(
        f"normalized({nm.ops.A.name})", dims, dict(nm.bbar), nm.top, spaces=nm.spaces
    )


def mixed_tot(nm: NormalizedMixed, top: int) -> TotComplex:
    """Total complex of the (b-bar, B-bar) mixed complex.

    Slot j of total degree n carries C-bar_{n-2j}; the differential is
    b-bar within a slot plus B-bar from slot j to slot j - 1.
    """
    if top > nm.top:
        raise TruncationTooLarge(
            f"mixed total degree {top} needs normalized chains to degree {top}, "
            f"built only to {nm.top}"
        )
    dims = []
    offsets = []
    nd = nm.dims()
    for n in range(top + 1):
        offs = [0]
        for j in range(n // 2 + 1):
            offs.append(offs[-1] + nd[n - 2 * j])
        check_dim(offs[-1], f"mixed Tot_{n}({nm.ops.A.name})")
        dims.append(offs[-1])
        offsets.append(offs[:-1])
    diff = {}
    for n in range(1, top + 1):
        D = QMat.zero(dims[n - 1], dims[n])
        for j in range(n // 2 + 1):
            q = n - 2 * j
            if q >= 1:
                _emplace(D, nm.bbar[q], offsets[n - 1][j], offsets[n][j])
            if j >= 1:
                _emplace(D, nm.Bbar[q], offsets[n - 1][j - 1], offsets[n][j])
        diff[n] = D
    return TotComplex(f"mixedTot({nm.ops.A.name})", dims, diff, top, offsets=offsets)


# ------------------------------------------------------------ measured maps


def require_cocommutative(m: Measuring, what: str) -> None:
    if not m.coalgebra.cocommutative:
        raise NotCocommutative(
            f"{what} needs a cocommutative coalgebra, but {m.coalgebra.name} "
            "is not flagged cocommutative"
        )


def chain_map(m: Measuring, x: dict, n: int) -> QMat:
    """C_n^Phi(x): C_n(source) -> C_n(target), slotwise Sweedler application."""
    dA = m.source.dim
    dB = m.target.dim
    check_dim(dA ** (n + 1), f"C_{n}({m.source.name})")
    check_dim(dB ** (n + 1), f"C_{n}({m.target.name})")
    out = QMat.zero(dB ** (n + 1), dA ** (n + 1))
    for legs, c in m.coalgebra.delta_power(x, n).items():
        term = m.phi[legs[0]]
        for s in range(1, n + 1):
            term = term.kron(m.phi[legs[s]])
        out = out + term.scale(c)
    return out


def chain_map_grouplike(m: Measuring, n: int) -> QMat:
    """Convenience: the chain map of the first coalgebra basis element."""
    return chain_map(m, {0: F1}, n)


def tot_chain_map(m: Measuring, x: dict, tot: TotComplex, src_ops: ChainOps, n: int) -> QMat:
    """Block-diagonal action of C^Phi(x) on a bicomplex total degree."""
    blocks = [chain_map(m, x, n - p) for p in range(n + 1)]
    return QMat.block_diag(blocks)


def mixed_chain_map(
    m: Measuring,
    x: dict,
    src: NormalizedMixed,
    tgt: NormalizedMixed,
    n: int,
) -> QMat:
    """Action on mixed total degree n through the normalized quotients."""
    blocks = []
    for j in range(n // 2 + 1):
        q = n - 2 * j
        blocks.append(
            induced_on_quotient(
                chain_map(m, x, q),
                src.spaces[q],
                tgt.spaces[q],
                context=f"measuring {m.name} on normalized chains at degree {q}",
            )
        )
    return QMat.block_diag(blocks)


# ------------------------------------------------------------------ S, B, I


def sbi_include(ops: ChainOps, tot: TotComplex, n: int) -> QMat:
    """I: C_n -> Tot_n, inclusion of column 0."""
    out = QMat.zero(tot.dims[n], ops.dim(n))
    _emplace(out, QMat.identity(ops.dim(n)), tot.block_offset(n, 0), 0)
    return out


def sbi_periodicity(tot: TotComplex, n: int) -> QMat:
    """S: Tot_n -> Tot_{n-2}, drop the first two columns."""
    if n < 2:
        raise ValueError("S needs total degree at least 2")
    out = QMat.zero(tot.dims[n - 2], tot.dims[n])
    off = tot.block_offset(n, 2)
    _emplace(out, QMat.identity(tot.dims[n - 2]), 0, off)
    return out


def sbi_connecting(ops: ChainOps, tot: TotComplex, n: int) -> QMat:
    """The connecting map Tot_{n-2} -> C_{n-1}, y -> B applied to column 0 of y."""
    proj = QMat.zero(ops.dim(n - 2), tot.dims[n - 2])
    _emplace(proj, QMat.identity(ops.dim(n - 2)), 0, tot.block_offset(n - 2, 0))
    return ops.connes_B(n - 2) @ proj


def mixed_include(nm: NormalizedMixed, mt: TotComplex, n: int) -> QMat:
    """I: C-bar_n -> mixed Tot_n, inclusion of slot 0."""
    d = nm.dims()[n]
    out = QMat.zero(mt.dims[n], d)
    _emplace(out, QMat.identity(d), mt.block_offset(n, 0), 0)
    return out


def mixed_periodicity(mt: TotComplex, n: int) -> QMat:
    """S: mixed Tot_n -> mixed Tot_{n-2}, drop slot 0."""
    if n < 2:
        raise ValueError("S needs total degree at least 2")
    out = QMat.zero(mt.dims[n - 2], mt.dims[n])
    off = mt.block_offset(n, 1)
    _emplace(out, QMat.identity(mt.dims[n - 2]), 0, off)
    return out


def mixed_connecting(nm: NormalizedMixed, mt: TotComplex, n: int) -> QMat:
    """Connecting mixed Tot_{n-2} -> C-bar_{n-1}: B-bar on slot 0."""
    d = nm.dims()[n - 2]
    proj = QMat.zero(d, mt.dims[n - 2])
    _emplace(proj, QMat.identity(d), 0, mt.block_offset(n - 2, 0))
    return nm.Bbar[n - 2] @ proj
